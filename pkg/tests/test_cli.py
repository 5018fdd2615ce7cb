import csv
import io
import json

from pathlib import Path
from tempfile import TemporaryDirectory

from typer.testing import CliRunner

from pkratzer.cli import app, cmd_matrix_elements, cmd_spectrum
from pkratzer.model import Potential

from .base import KratzerTestCase, res_path


def _rows(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


class TestCommands(KratzerTestCase):
    """Tests pkratzer's command-line interface"""

    @classmethod
    def setUpClass(cls) -> None:
        super().setUpClass()
        cls.runner = CliRunner()

    def invoke(self, *args: str, code: int = 0):
        result = self.runner.invoke(app, list(args))
        self.assertEqual(code, result.exit_code, result.output)
        return result

    def test_spectrum(self):
        rows = _rows(self.invoke("spectrum", "-m", "CO").output)
        self.assertEqual(21, len(rows))
        self.assertListEqual(["n", "ell", "energy_ev"], list(rows[0]))
        self.assertAlmostEqual(-10.79431534387622, float(rows[0]["energy_ev"]), delta=1e-5)

    def test_formats_agree(self):
        text = self.invoke("spectrum", "-m", "NO", "-p", "modified-kratzer").output
        doc = json.loads(self.invoke("spectrum", "-m", "NO", "-p", "modified-kratzer", "-f", "json").output)

        self.assertListEqual(["n", "ell", "energy_ev"], doc["header"])
        self.assertListEqual(_rows(text), doc["rows"])

        last = doc["rows"][-1]
        self.assertEqual(("5", "5"), (last["n"], last["ell"]))
        self.assertAlmostEqual(0.4409126855642622, float(last["energy_ev"]), delta=1e-5)

    def test_spectrum_options(self):
        self.assertEqual(36, len(_rows(self.invoke("spectrum", "--all-ell").output)))
        self.assertEqual(3, len(_rows(self.invoke("spectrum", "--n-max", "2", "--ell-max", "0").output)))

        rows = _rows(self.invoke("spectrum", "--compare").output)
        self.assertListEqual(["n", "ell", "energy_ev", "factorization_ev", "exact_quantization_ev", "asymptotic_iteration_ev"], list(rows[0]))
        self.assertTrue(all(r["factorization_ev"] for r in rows))
        self.assertAlmostEqual(float(rows[0]["factorization_ev"]), float(rows[0]["energy_ev"]), delta=1e-5)

        header = _rows(self.invoke("spectrum", "-p", "modified-kratzer", "--compare").output)[0]
        self.assertIn("nikiforov_uvarov_ev", header)

    def test_matrix_elements(self):
        text = self.invoke("matrix-elements", "-m", "CO").output
        rows = _rows(text)
        self.assertEqual(20, len(rows))
        self.assertListEqual(["n", "ell", "r_elem", "rddr_elem", "gamma1", "gamma2"], list(rows[0]))
        self.assertEqual(("1", "0"), (rows[0]["n"], rows[0]["ell"]))
        self.assertAlmostEqual(-0.476149, float(rows[0]["r_elem"]), delta=2e-4)

        self.assertEqual(text, self.invoke("matrix-elements", "-m", "CO", "-p", "modified-kratzer").output)

    def test_bad_arguments(self):
        for args in (("spectrum", "-m", "XeF"), ("spectrum", "--n-max", "51"), ("spectrum", "--ell-max", "-1"), ("matrix-elements", "--n-max", "0"),
                     ("spectrum", "-p", "morse"), ("spectrum", "-f", "xml"), ("potential-curve", "--r-min", "0"), ("potential-curve", "--r-min", "3", "--r-max", "2"),
                     ("spectrum", "-c", str(res_path("missing-key"))), ("spectrum", "-c", str(res_path("does-not-exist"))),
                     ("spectrum", "-c", str(res_path("molecules-not-list"))), ("spectrum", "-c", str(res_path("infinite-dissociation")))):
            with self.subTest(args=args):
                self.invoke(*args, code=2)

    def test_config(self):
        path = str(res_path("custom-molecules"))
        rows = _rows(self.invoke("spectrum", "-c", path, "-m", "h2", "--n-max", "1").output)
        self.assertEqual(3, len(rows))
        self.assertTrue(all(float(r["energy_ev"]) < 0 for r in rows))

        rows = _rows(self.invoke("spectrum", "-c", path, "-m", "HCl", "--compare", "--n-max", "0").output)
        self.assertEqual("", rows[0]["factorization_ev"])

    def test_potential_curve(self):
        rows = _rows(self.invoke("potential-curve", "-m", "CO", "--r-min", "1.1282", "--r-max", "3", "--samples", "3").output)
        self.assertEqual(3, len(rows))
        self.assertListEqual(["r_angstrom", "v_ev"], list(rows[0]))
        self.assertEqual("1.1282", rows[0]["r_angstrom"])
        self.assertAlmostEqual(-self.co.d0, float(rows[0]["v_ev"]), delta=1e-12)

        rows = _rows(self.invoke("potential-curve", "-m", "CO", "-p", "modified-kratzer", "--r-min", "1.1282", "--samples", "2").output)
        self.assertAlmostEqual(0.0, float(rows[0]["v_ev"]), delta=1e-12)

    def test_validate(self):
        doc = json.loads(self.invoke("validate", "-m", "CO", "--n-max", "1", "--ell-max", "0").output)
        self.assertTrue(doc["passed"])
        self.assertEqual(0, doc["summary"]["failed"])
        self.assertGreater(doc["summary"]["informational"], 0)

        names = [c["name"] for c in doc["checks"]]
        self.assertIn("CO/kratzer/potential.minimum", names)
        self.assertIn("CO/modified-kratzer/published_energy[n=0,l=0]", names)

        rows = _rows(self.invoke("validate", "-m", "NO", "--n-max", "0", "--ell-max", "0", "-f", "csv").output)
        self.assertTrue(all(r["name"].startswith("NO/") for r in rows))
        self.assertTrue(all(r["passed"] == "true" or r["informational"] == "true" for r in rows))

    def validate_to_file(self, *args: str, code: int = 0) -> dict:
        with TemporaryDirectory() as d:
            out = Path(d) / "report.json"
            self.invoke("validate", "-o", str(out), *args, code=code)
            return json.loads(out.read_text())

    def test_validate_full_range(self):
        doc = self.validate_to_file("--n-max", "5", "--ell-max", "5")
        self.assertTrue(doc["passed"])
        self.assertEqual(0, doc["summary"]["failed"])

        names = [c["name"] for c in doc["checks"]]
        for m in ("CO", "NO"):
            for potential in Potential:
                self.assertIn(f"{m}/{potential.value}/normalization[n=5,l=5]", names)

    def test_validate_failure(self):
        doc = self.validate_to_file("-m", "CO", "--n-max", "2", "--ell-max", "0", "--panels", "1", "--points", "2", code=1)
        self.assertFalse(doc["passed"])
        self.assertGreater(doc["summary"]["failed"], 0)

    def test_out(self):
        expected = self.invoke("spectrum", "-m", "NO", "-f", "json").output

        with TemporaryDirectory() as d:
            out = Path(d) / "spectrum.json"
            result = self.invoke("spectrum", "-m", "NO", "-f", "json", "-o", str(out))
            self.assertEqual("", result.output)
            self.assertEqual(expected, out.read_text())


class TestTableBuilders(KratzerTestCase):
    """Tests pkratzer's table builders behind the command-line interface"""

    def test_spectrum_ranges(self):
        with self.assertRaises(ValueError):
            cmd_spectrum(self.co, Potential.KRATZER, 51, 0)

        with self.assertRaises(ValueError):
            cmd_matrix_elements(self.co, Potential.KRATZER, 0, 0)

    def test_row_order(self):
        t = cmd_spectrum(self.co, Potential.KRATZER, 2, 1, all_ell=True)
        self.assertListEqual([["0", "0"], ["0", "1"], ["1", "0"], ["1", "1"], ["2", "0"], ["2", "1"]], [r[:2] for r in t.rows])
