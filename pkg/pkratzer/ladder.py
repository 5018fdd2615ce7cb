"""SU(1,1) ladder operators acting on radial wavefunctions at a fixed radial scale"""

from __future__ import annotations

import logging
import math

from dataclasses import dataclass, field
from enum import IntEnum
from typing import Optional

import numpy as np

from .utils import relative_sup, require_quantum_number
from .wavefunction import RadialWavefunction, eval_radial, eval_radial_derivative, eval_radial_second_derivative

DEFAULT_TOLERANCE = 1e-7

log = logging.getLogger(__name__)


class Direction(IntEnum):
    """Which way a ladder operator moves the radial quantum number"""
    LOWER = -1
    RAISE = 1


@dataclass(frozen=True)
class LadderCoefficients:
    """The factors in L̂₋R_n = ℓ₋·R_{n−1} and L̂₊R_n = ℓ₊·R_{n+1}"""
    ell_minus: float
    ell_plus: float

    def for_direction(self, direction: Direction) -> float:
        """Picks the coefficient matching `direction`.

        Args:
            direction (Direction): The direction.

        Returns:
            float: ℓ₋ or ℓ₊
        """
        return self.ell_plus if direction is Direction.RAISE else self.ell_minus


@dataclass(frozen=True)
class OperatorAction:
    """A ladder operator applied to a radial function, sampled on a grid"""
    grid: np.ndarray
    values: np.ndarray
    source_n: int
    target_n: int


@dataclass(frozen=True)
class AlgebraReport:
    """Named relative residuals of the algebra identities for one state"""
    n: int
    tolerance: float
    residuals: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """True if every residual is within tolerance"""
        return all(v <= self.tolerance for v in self.residuals.values())

    def failures(self) -> list[str]:
        """Gets the names of the identities whose residuals exceed the tolerance.

        Returns:
            list[str]: The failing identities, in report order.
        """
        return [k for k, v in self.residuals.items() if not v <= self.tolerance]


def ladder_coeffs(n: int, beta: float) -> LadderCoefficients:
    """Computes ℓ₋ = √(n(n+β)(n+2β+1)/(n+β+1)) and ℓ₊ = √((n+1)(n+β+2)(n+2β+2)/(n+β+1)).

    Args:
        n (int): The radial quantum number.
        beta (float): The effective angular momentum.

    Returns:
        LadderCoefficients: The coefficients.  `ell_minus` is exactly 0 at n = 0.
    """
    n = require_quantum_number("n", n)
    k = n + beta + 1

    return LadderCoefficients(math.sqrt(n * (n + beta) * (n + 2 * beta + 1) / k), math.sqrt((n + 1) * (n + beta + 2) * (n + 2 * beta + 2) / k))


def discrete_series_coeffs(k: float, casimir: float) -> LadderCoefficients:
    """Computes the ladder coefficients from the L̂₀ eigenvalue k and the Casimir value alone, √((k∓1)(k(k∓1) − C)/k).  With k = n+β+1 and C = β(β+1) these coincide with `ladder_coeffs`.

    Args:
        k (float): The L̂₀ eigenvalue.
        casimir (float): The Casimir eigenvalue.

    Returns:
        LadderCoefficients: The coefficients.
    """
    return LadderCoefficients(math.sqrt(max(0.0, (k - 1) * (k * (k - 1) - casimir) / k)), math.sqrt((k + 1) * (k * (k + 1) - casimir) / k))


def casimir_eigenvalue(beta: float) -> float:
    """The Casimir eigenvalue β(β+1), shared by every state of one ℓ"""
    return beta * (beta + 1)


def radial_grid(w: RadialWavefunction, points: int = 401) -> np.ndarray:
    """Builds a grid of strictly positive radii covering the region where `w` is not negligible.

    Args:
        w (RadialWavefunction): The state.
        points (int, optional): The number of grid points. Defaults to 401.

    Returns:
        np.ndarray: The radii, in Å.
    """
    p = 2 * w.beta + 2 * w.n + 3
    return np.linspace(max(p - 8 * math.sqrt(p) - 1, 1e-3), p + 8 * math.sqrt(p) + 10, points) / w.xi


##################################################################################################
####################################### O P E R A T O R S ########################################
##################################################################################################


@dataclass(frozen=True)
class _Jet:
    """A function known through its value and up to two derivatives, labelled with the eigenvalue of n̂"""
    n: int
    f: np.ndarray
    d1: Optional[np.ndarray]
    d2: Optional[np.ndarray]


def _step(j: _Jet, direction: Direction, r: np.ndarray, beta: float, xi: float) -> _Jet:
    """Applies L̂∓ = ∓r·d/dr − ξr/2 + n̂ + β (+2 when raising) to a jet, losing one derivative order"""
    if j.d1 is None:
        raise RuntimeError("ladder operators composed beyond the available derivative order")

    s = int(direction)
    c = j.n + beta + (2 if direction is Direction.RAISE else 0) - xi * r / 2
    g = s * r * j.d1 + c * j.f
    dg = None if j.d2 is None else s * (j.d1 + r * j.d2) - xi / 2 * j.f + c * j.d1

    return _Jet(j.n + s, g, dg, None)


class _Superposition:
    """A linear combination of jets with complex coefficients, tracked as separate real and imaginary parts"""

    def __init__(self, terms: list[tuple[_Jet, float, float]], r: np.ndarray, beta: float, xi: float) -> None:
        self.terms = terms
        self.r = r
        self.beta = beta
        self.xi = xi

    @staticmethod
    def of(w: RadialWavefunction, r: np.ndarray) -> _Superposition:
        jet = _Jet(w.n, eval_radial(w, r), eval_radial_derivative(w, r), eval_radial_second_derivative(w, r))
        return _Superposition([(jet, 1.0, 0.0)], r, w.beta, w.xi)

    def _derive(self, terms: list[tuple[_Jet, float, float]]) -> _Superposition:
        return _Superposition(terms, self.r, self.beta, self.xi)

    def __add__(self, other: _Superposition) -> _Superposition:
        return self._derive(self.terms + other.terms)

    def __sub__(self, other: _Superposition) -> _Superposition:
        return self + other.scaled(-1.0)

    def scaled(self, re: float, im: float = 0.0) -> _Superposition:
        """Multiplies by the complex number re + i·im"""
        return self._derive([(j, a * re - b * im, a * im + b * re) for j, a, b in self.terms])

    def step(self, direction: Direction) -> _Superposition:
        return self._derive([(_step(j, direction, self.r, self.beta, self.xi), a, b) for j, a, b in self.terms])

    def l0(self) -> _Superposition:
        return self._derive([(j, a * (k := j.n + self.beta + 1), b * k) for j, a, b in self.terms])

    def lx(self) -> _Superposition:
        return (self.step(Direction.RAISE) + self.step(Direction.LOWER)).scaled(0.5)

    def ly(self) -> _Superposition:
        return (self.step(Direction.RAISE) - self.step(Direction.LOWER)).scaled(0.0, -0.5)

    def collapse(self) -> tuple[np.ndarray, np.ndarray]:
        """Sums the terms on the grid, returning the (real, imaginary) sample arrays"""
        re, im = np.zeros_like(self.r), np.zeros_like(self.r)
        for j, a, b in self.terms:
            re += a * j.f
            im += b * j.f

        return re, im


def _residual(lhs: _Superposition, rhs: _Superposition, fallback: np.ndarray) -> float:
    (lr, li), (rr, ri) = lhs.collapse(), rhs.collapse()
    return relative_sup(np.concatenate((lr - rr, li - ri)), np.concatenate((rr, ri)), fallback)


def apply_ladder(direction: Direction, state: RadialWavefunction, grid: np.ndarray) -> OperatorAction:
    """Applies L̂₊ or L̂₋ to a radial function, holding ξ at the state's value.

    Args:
        direction (Direction): Which operator to apply.
        state (RadialWavefunction): The state to act on.
        grid (np.ndarray): Strictly positive radii to sample the result on, in Å.

    Returns:
        OperatorAction: The sampled result.
    """
    r = np.asarray(grid, dtype=float)
    jet = _step(_Jet(state.n, eval_radial(state, r), eval_radial_derivative(state, r), None), direction, r, state.beta, state.xi)

    return OperatorAction(r, jet.f, state.n, jet.n)


def ladder_residual(direction: Direction, state: RadialWavefunction, grid: np.ndarray) -> float:
    """Measures how far L̂∓R_n is from ℓ∓·R_{n∓1} on `grid`, relative to the size of the target.  Lowering R_0 must give 0, measured relative to the size of R_0.

    Args:
        direction (Direction): Which operator to check.
        state (RadialWavefunction): The state to act on.
        grid (np.ndarray): Strictly positive radii, in Å.

    Returns:
        float: The relative sup-norm residual.
    """
    action = apply_ladder(direction, state, grid)

    if action.target_n < 0:
        expected = np.zeros_like(action.values)
    else:
        expected = ladder_coeffs(state.n, state.beta).for_direction(direction) * eval_radial(state.with_n(action.target_n), action.grid)

    return relative_sup(action.values - expected, expected, eval_radial(state, action.grid))


def verify_algebra(state: RadialWavefunction, grid: np.ndarray = None, tolerance: float = DEFAULT_TOLERANCE) -> AlgebraReport:
    """Checks the SU(1,1) relations on one state.  The state is taken as a full wavefunction, so β, ξ and n come from `state` rather than a separate spectral context; use `RadialWavefunction.from_context` to check a molecular state.  Ladder residuals confirm that L̂∓R_n is proportional to R_{n∓1}, which is also what makes L̂∓R_n an L̂₀ eigenfunction with eigenvalue n+β+1∓1.  The commutators, both Casimir orderings and the Hermitian combinations are then evaluated as functions on the grid, and the scalar coefficient identities are evaluated directly.

    Args:
        state (RadialWavefunction): The state, with n ≥ 1.
        grid (np.ndarray, optional): Strictly positive radii, in Å.  If None, `radial_grid(state)` is used. Defaults to None.
        tolerance (float, optional): The largest acceptable relative residual. Defaults to DEFAULT_TOLERANCE.

    Raises:
        ValueError: If `state.n` is 0.

    Returns:
        AlgebraReport: The residuals of every identity.
    """
    if state.n < 1:
        raise ValueError(f"algebra checks need a state with n >= 1, got n = {state.n}")

    r = radial_grid(state) if grid is None else np.asarray(grid, dtype=float)
    s = _Superposition.of(state, r)
    f = eval_radial(state, r)
    n, beta = state.n, state.beta
    k = n + beta + 1
    c = casimir_eigenvalue(beta)

    lower, upper = s.step(Direction.LOWER), s.step(Direction.RAISE)

    residuals = {
        "ladder_lower": ladder_residual(Direction.LOWER, state, r),
        "ladder_raise": ladder_residual(Direction.RAISE, state, r),
        "commutator_l0_lower": _residual(lower.l0() - s.l0().step(Direction.LOWER), lower.scaled(-1.0), f),
        "commutator_l0_raise": _residual(upper.l0() - s.l0().step(Direction.RAISE), upper, f),
        "commutator_lower_raise": _residual(upper.step(Direction.LOWER) - lower.step(Direction.RAISE), s.l0().scaled(2.0), f),
        "casimir_lower_after_raise": _residual(s.l0().l0() + s.l0() - upper.step(Direction.LOWER), s.scaled(c), f),
        "casimir_raise_after_lower": _residual(s.l0().l0() - s.l0() - lower.step(Direction.RAISE), s.scaled(c), f),
        "hermitian_x_y": _residual(s.ly().lx() - s.lx().ly(), s.l0().scaled(0.0, -1.0), f),
        "hermitian_y_z": _residual(s.l0().ly() - s.ly().l0(), s.lx().scaled(0.0, 1.0), f),
        "hermitian_z_x": _residual(s.lx().l0() - s.l0().lx(), s.ly().scaled(0.0, 1.0), f),
    }

    here, below, above = ladder_coeffs(n, beta), ladder_coeffs(n - 1, beta), ladder_coeffs(n + 1, beta)
    residuals["commutator_scalar"] = abs(here.ell_plus * above.ell_minus - here.ell_minus * below.ell_plus - 2 * k) / (2 * k)

    series = discrete_series_coeffs(k, c)
    residuals["discrete_series_coefficients"] = max(abs(series.ell_minus - here.ell_minus) / here.ell_minus, abs(series.ell_plus - here.ell_plus) / here.ell_plus)

    report = AlgebraReport(n, tolerance, residuals)
    log.debug("algebra residuals for n=%d, beta=%.15g: %s", n, beta, residuals)

    if not report.passed:
        log.warning("Algebra identities %s exceed tolerance %g for n=%d", report.failures(), tolerance, n)

    return report
