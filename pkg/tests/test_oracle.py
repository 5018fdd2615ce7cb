import json
import math

import numpy as np

from pkratzer.matrix_elements import OperatorTag, basis_me_r, basis_me_rddr, basis_overlap
from pkratzer.model import MoleculeSpec, Potential
from pkratzer.oracle import (DIVERGENCE_NOTE, CheckResult, QuadratureSpec, ValidationReport, check_normalization, check_orthogonality, cutoff_radius,
                             full_validation, integrate, me_numeric)

from .base import KratzerTestCase, synthetic_context


class TestQuadrature(KratzerTestCase):
    """Tests pkratzer's composite Gauss–Legendre rule"""

    def test_known_integrals(self):
        spec = QuadratureSpec()
        self.assertAlmostEqual(1.0, integrate(lambda r: np.exp(-r), spec, 1.0), delta=1e-12)
        self.assertAlmostEqual(6.0, integrate(lambda r: r ** 3 * np.exp(-r), spec, 1.0), delta=1e-9)
        self.assertAlmostEqual(1 / 3, integrate(lambda r: r ** 2, QuadratureSpec(panels=1, points_per_panel=3), 1.0, 1.0), delta=1e-14)

    def test_scale(self):
        self.assertAlmostEqual(0.5, integrate(lambda r: np.exp(-2 * r), QuadratureSpec(), 2.0), delta=1e-12)

    def test_cutoff(self):
        spec = QuadratureSpec()
        self.assertEqual(max(40.0, 3 + 40 * math.sqrt(3)), cutoff_radius(spec, 1.0))
        self.assertAlmostEqual((2 * 212.0 + 7 + 40 * math.sqrt(2 * 212.0 + 7)) / 374.7, cutoff_radius(spec, 374.7, 212.0, 2), delta=1e-12)

    def test_non_finite(self):
        with self.assertRaises(ValueError):
            integrate(lambda r: 1 / (r - r), QuadratureSpec(panels=4), 1.0)

    def test_bad_spec(self):
        for kwargs in ({"r_max_scale": 0.0}, {"panels": 0}, {"points_per_panel": 0}):
            with self.subTest(**kwargs), self.assertRaises(ValueError):
                QuadratureSpec(**kwargs)

    def test_refined(self):
        spec = QuadratureSpec(panels=100)
        self.assertEqual(QuadratureSpec(panels=200), spec.refined())

        ctx = self.context(self.co, 3, 0)
        self.assertAlmostEqual(check_normalization(3, 0, ctx).computed, check_normalization(3, 0, ctx, QuadratureSpec().refined()).computed, delta=1e-10)


class TestOracleChecks(KratzerTestCase):
    """Tests pkratzer's quadrature checks of the closed forms"""

    def test_normalization(self):
        for ctx in (self.context(self.co, 0, 0), self.context(self.no, 0, 2), synthetic_context(0)):
            for n in range(9):
                with self.subTest(beta=ctx.beta, n=n):
                    result = check_normalization(n, ctx.ell, ctx)
                    self.assertTrue(result.passed, result)
                    self.assertEqual(1.0, result.expected)

    def test_overlaps(self):
        for ctx in (self.context(self.co, 0, 0), synthetic_context(0)):
            for n in range(9):
                for m in range(n):
                    with self.subTest(beta=ctx.beta, m=m, n=n):
                        result = check_orthogonality(m, n, 0, ctx)
                        self.assertTrue(result.passed, result)
                        self.assertEqual(basis_overlap(m, n, ctx.beta), result.expected)

    def test_neighbours_overlap(self):
        result = check_orthogonality(0, 1, 0, synthetic_context(0, 0.0))
        self.assertAlmostEqual(-0.5, result.computed, delta=1e-10)

    def test_matrix_elements(self):
        for ctx in (self.context(self.co, 0, 1), synthetic_context(0, 1.5, 0.8)):
            beta, xi = ctx.beta, ctx.xi_physical
            for n in range(4):
                for m in range(max(n - 2, 0), n + 3):
                    with self.subTest(beta=beta, m=m, n=n):
                        expected_r, expected_rddr = basis_me_r(m, n, beta, xi), basis_me_rddr(m, n, beta)
                        self.assertAlmostEqual(expected_r, me_numeric(OperatorTag.R, m, n, ctx.ell, ctx), delta=1e-8 * max(abs(expected_r), 1 / xi))
                        self.assertAlmostEqual(expected_rddr, me_numeric(OperatorTag.R_DDR, m, n, ctx.ell, ctx), delta=1e-8 * max(abs(expected_rddr), 1.0))

    def test_wrong_ell(self):
        with self.assertRaises(ValueError):
            check_normalization(0, 1, synthetic_context(0))


class TestReport(KratzerTestCase):
    """Tests pkratzer's validation reports"""

    def test_compare(self):
        r = CheckResult.compare(1.1, 1.0, 0.2)
        self.assertTrue(r.passed)
        self.assertAlmostEqual(0.1, r.abs_err, delta=1e-15)
        self.assertAlmostEqual(0.1, r.rel_err, delta=1e-15)

        self.assertFalse(CheckResult.compare(2.0, -4.0, 1.0, relative=True).passed)
        self.assertTrue(CheckResult.compare(-3.0, -4.0, 0.25, relative=True).passed)
        self.assertEqual(1e-3, CheckResult.compare(1e-3, 0.0, 1.0, relative=True).rel_err)
        self.assertFalse(CheckResult.compare(float("nan"), 0.0, 1.0).passed)

    def test_report(self):
        report = ValidationReport()
        report.check("a", 1.0, 1.0, 0.0)
        report.check("b", 2.0, 1.0, 0.5, informational=True, note=DIVERGENCE_NOTE)
        self.assertTrue(report.passed)
        self.assertListEqual([], report.failures())

        report.check("c", 2.0, 1.0, 0.5)
        self.assertFalse(report.passed)
        self.assertListEqual(["c"], report.failures())
        self.assertEqual(3, len(report))

        with self.assertRaises(ValueError):
            report.check("a", 0.0, 0.0, 0.0)

    def test_extend(self):
        inner, outer = ValidationReport(), ValidationReport()
        inner.check("x", 1.0, 1.0, 0.0)
        outer.extend(inner, "CO/kratzer/")
        outer.extend(inner, "NO/kratzer/")
        self.assertListEqual(["CO/kratzer/x", "NO/kratzer/x"], list(outer.entries))

    def test_renderings(self):
        report = ValidationReport()
        report.check("a", 0.1, 0.1, 1e-12)
        report.check("b", 3.0, 1.0, 0.5, relative=True, informational=True, note=DIVERGENCE_NOTE)

        doc = json.loads(report.to_json())
        self.assertTrue(doc["passed"])
        self.assertDictEqual({"checks": 2, "failed": 0, "informational": 1}, doc["summary"])
        self.assertListEqual(["a", "b"], [c["name"] for c in doc["checks"]])
        self.assertEqual("0.1", doc["checks"][0]["computed"])
        self.assertEqual("2", doc["checks"][1]["rel_err"])
        self.assertEqual(DIVERGENCE_NOTE, doc["checks"][1]["note"])

        lines = report.as_table().to_csv().splitlines()
        self.assertEqual("name,computed,expected,abs_err,rel_err,tolerance,relative,passed,informational,note", lines[0])
        self.assertEqual(f"b,3,1,2,2,0.5,true,false,true,{DIVERGENCE_NOTE}", lines[2])


class TestFullValidation(KratzerTestCase):
    """Tests pkratzer's end-to-end validation runs"""

    def test_small_run(self):
        for potential in Potential:
            with self.subTest(potential=potential):
                with self.assertLogs("pkratzer.oracle", "INFO"):
                    report = full_validation(self.co, potential, 1, 0)

                self.assertTrue(report.passed, report.failures())
                for name in ("potential.minimum", "normalization[n=0,l=0]", "overlap[m=0,n=1,l=0]", "ladder[n=1,l=0].lower", "algebra[n=1,l=0].commutator_lower_raise",
                             "me_r[m=0,n=1,l=0]", "gamma_sum[m=1,n=1,l=0]", "table_row[n=1,l=0].shift_invariance", "published_row[n=1,l=0].gamma2"):
                    self.assertIn(name, report.entries)

                for name in ("overlap[m=0,n=1,l=0].kronecker_claim", "me_r[m=0,n=1,l=0].printed", "me_rddr[m=1,n=1,l=0].printed"):
                    self.assertTrue(report.entries[name].informational)
                    self.assertEqual(DIVERGENCE_NOTE, report.entries[name].note)

    def test_custom_molecule(self):
        report = full_validation(self.registry.get("NO"), Potential.KRATZER, 2, 1)
        self.assertTrue(report.passed, report.failures())

        report = full_validation(MoleculeSpec("NO", 8.0, 1.15, 7.47), Potential.KRATZER, 1, 0)
        self.assertTrue(report.passed, report.failures())
        self.assertFalse(any(name.startswith("published_") for name in report.entries))
