import numpy as np

from pkratzer.ladder import (AlgebraReport, Direction, apply_ladder, casimir_eigenvalue, discrete_series_coeffs, ladder_coeffs, ladder_residual, radial_grid,
                             verify_algebra)
from pkratzer.wavefunction import RadialWavefunction, eval_radial

from .base import KratzerTestCase


class TestCoefficients(KratzerTestCase):
    """Tests pkratzer's ladder coefficients"""

    def test_centrifugal_only(self):
        for n in range(10):
            with self.subTest(n=n):
                self.assertAlmostEqual(n + 2, ladder_coeffs(n, 0.0).ell_plus, delta=1e-12)

    def test_ground_state(self):
        for beta in (0.0, 1.5, 212.36):
            self.assertEqual(0.0, ladder_coeffs(0, beta).ell_minus)

    def test_small_values(self):
        c = ladder_coeffs(1, 0.0)
        self.assertAlmostEqual(1.0, c.ell_minus, delta=1e-15)
        self.assertAlmostEqual(3.0, c.ell_plus, delta=1e-15)
        self.assertEqual(c.ell_plus, c.for_direction(Direction.RAISE))
        self.assertEqual(c.ell_minus, c.for_direction(Direction.LOWER))

    def test_discrete_series(self):
        for beta in (0.0, 2.0, 212.36276):
            c = casimir_eigenvalue(beta)
            self.assertLess(discrete_series_coeffs(beta + 1, c).ell_minus, 1e-5)
            for n in range(1, 8):
                with self.subTest(beta=beta, n=n):
                    expected, actual = ladder_coeffs(n, beta), discrete_series_coeffs(n + beta + 1, c)
                    self.assertAlmostEqual(expected.ell_minus, actual.ell_minus, delta=1e-9 * expected.ell_minus)
                    self.assertAlmostEqual(expected.ell_plus, actual.ell_plus, delta=1e-9 * expected.ell_plus)

    def test_bad_input(self):
        with self.assertRaises(ValueError):
            ladder_coeffs(-1, 1.0)


class TestLadderAction(KratzerTestCase):
    """Tests pkratzer's ladder operators on radial functions"""

    def test_closed_form(self):
        w = RadialWavefunction.for_basis(0, 0, 0.0, 1.0)
        r = np.linspace(0.1, 20, 200)
        action = apply_ladder(Direction.RAISE, w, r)
        self.assertEqual((0, 1), (action.source_n, action.target_n))
        self.assertTrue(np.array_equal(r, action.grid))
        self.assertAllClose(2 * eval_radial(w.with_n(1), r), action.values, rtol=1e-12, atol=1e-13)

    def test_synthetic(self):
        for beta in (0.0, 0.5, 2.0, 10.0):
            for n in range(8):
                w = RadialWavefunction.for_basis(n, 0, beta, 1.0)
                r = radial_grid(w)
                for direction in Direction:
                    if n == 0 and direction is Direction.LOWER:
                        continue

                    with self.subTest(beta=beta, n=n, direction=direction):
                        self.assertLessEqual(ladder_residual(direction, w, r), 1e-8)

    def test_molecules(self):
        for m in self.registry:
            for ell in (0, 3):
                for n in range(1, 6):
                    w = RadialWavefunction.from_context(self.context(m, n, ell))
                    for direction in Direction:
                        with self.subTest(molecule=m.name, ell=ell, n=n, direction=direction):
                            self.assertLessEqual(ladder_residual(direction, w, radial_grid(w)), 1e-8)

    def test_lowering_ground_state(self):
        for w in (RadialWavefunction.for_basis(0, 0, 2.0, 1.0), RadialWavefunction.from_context(self.context(self.co, 0, 0))):
            with self.subTest(beta=w.beta):
                r = radial_grid(w)
                action = apply_ladder(Direction.LOWER, w, r)
                self.assertEqual(-1, action.target_n)
                self.assertLessEqual(ladder_residual(Direction.LOWER, w, r), 1e-10)


class TestAlgebra(KratzerTestCase):
    """Tests pkratzer's SU(1,1) algebra checks"""

    _IDENTITIES = {"ladder_lower", "ladder_raise", "commutator_l0_lower", "commutator_l0_raise", "commutator_lower_raise", "casimir_lower_after_raise",
                   "casimir_raise_after_lower", "hermitian_x_y", "hermitian_y_z", "hermitian_z_x", "commutator_scalar", "discrete_series_coefficients"}

    def test_synthetic(self):
        for beta in (0.0, 1.0, 3.5):
            for n in range(1, 6):
                with self.subTest(beta=beta, n=n):
                    report = verify_algebra(RadialWavefunction.for_basis(n, 0, beta, 1.0))
                    self.assertSetEqual(self._IDENTITIES, set(report.residuals))
                    self.assertTrue(report.passed, report.failures())
                    self.assertListEqual([], report.failures())

    def test_molecules(self):
        for m in self.registry:
            for ell in range(4):
                for n in range(1, 6):
                    with self.subTest(molecule=m.name, ell=ell, n=n):
                        report = verify_algebra(RadialWavefunction.from_context(self.context(m, n, ell)))
                        self.assertEqual(n, report.n)
                        self.assertTrue(report.passed, report.failures())

    def test_custom_grid(self):
        w = RadialWavefunction.for_basis(2, 0, 1.0, 2.0)
        self.assertTrue(verify_algebra(w, np.linspace(0.05, 15, 300)).passed)

    def test_report(self):
        report = AlgebraReport(1, 1e-7, {"a": 1e-9, "b": 1e-3, "c": float("nan")})
        self.assertFalse(report.passed)
        self.assertListEqual(["b", "c"], report.failures())
        self.assertTrue(AlgebraReport(1, 1e-7, {"a": 0.0}).passed)

    def test_failure_is_logged(self):
        with self.assertLogs("pkratzer.ladder", "WARNING"):
            self.assertFalse(verify_algebra(RadialWavefunction.for_basis(1, 0, 1.0, 1.0), tolerance=-1.0).passed)

    def test_ground_state_rejected(self):
        with self.assertRaises(ValueError):
            verify_algebra(RadialWavefunction.for_basis(0, 0, 1.0, 1.0))
