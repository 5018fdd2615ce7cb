"""Generalized Laguerre polynomials and the normalized radial wavefunctions built from them"""

from __future__ import annotations

import logging
import math

from dataclasses import dataclass

import numpy as np

from scipy.special import binom, gammaln

from .spectrum import SpectralContext
from .utils import ArrayLike, require_quantum_number, signed_exp, unwrap

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LaguerreEval:
    """L_n^α and its first derivative, sampled on the same points"""
    value: ArrayLike
    derivative_value: ArrayLike


def _laguerre_pair(n: int, alpha: float, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Runs the upward three-term recurrence and returns (L_n, L_{n-1}).  L_{-1} is taken as 0."""
    prev, cur = np.zeros_like(x), np.ones_like(x)

    for k in range(n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)

    return cur, prev


def laguerre(n: int, alpha: float, x: ArrayLike) -> LaguerreEval:
    """Evaluates the generalized Laguerre polynomial L_n^α and its derivative.  Values come from the three-term recurrence (k+1)L_{k+1} = (2k+1+α−x)L_k − (k+α)L_{k−1}, and the derivative from x·L' = n·L_n − (n+α)·L_{n−1}, with the limit L'(0) = −C(n+α, n−1) at the origin.

    Args:
        n (int): The degree.
        alpha (float): The order, α > −1.
        x (ArrayLike): The point or points to evaluate at.

    Raises:
        ValueError: If `alpha` is not greater than −1.

    Returns:
        LaguerreEval: The values and derivatives, as `float`s if `x` was a scalar.
    """
    n = require_quantum_number("n", n)
    if not alpha > -1:
        raise ValueError(f"Laguerre order must exceed -1, got alpha = {alpha}")

    xs = np.asarray(x, dtype=float)
    value, lower = _laguerre_pair(n, alpha, xs)

    if n == 0:
        derivative = np.zeros_like(xs)
    else:
        at_origin = xs == 0
        with np.errstate(divide="ignore", invalid="ignore"):
            derivative = (n * value - (n + alpha) * lower) / xs
        derivative = np.where(at_origin, -binom(n + alpha, n - 1), derivative)

    return LaguerreEval(unwrap(value, x), unwrap(derivative, x))


def laguerre_x_derivative(n: int, alpha: float, x: ArrayLike, upper: bool = False) -> ArrayLike:
    """Evaluates x·dL_n^α/dx through one of the two recurrence branches, x·L' = n·L_n − (n+α)·L_{n−1} or x·L' = (n+1)·L_{n+1} − (n+α+1−x)·L_n.

    Args:
        n (int): The degree.
        alpha (float): The order, α > −1.
        x (ArrayLike): The point or points to evaluate at.
        upper (bool, optional): Set True to use the branch through L_{n+1}. Defaults to False.

    Returns:
        ArrayLike: x·L'(x)
    """
    n = require_quantum_number("n", n)
    xs = np.asarray(x, dtype=float)

    if upper:
        above, value = _laguerre_pair(n + 1, alpha, xs)
        out = (n + 1) * above - (n + alpha + 1 - xs) * value
    else:
        value, below = _laguerre_pair(n, alpha, xs)
        out = n * value - (n + alpha) * below

    return unwrap(out, x)


def laguerre_second_derivative(n: int, alpha: float, x: ArrayLike) -> ArrayLike:
    """Evaluates d²L_n^α/dx² through the shifted-index identity d²/dx² L_n^α = L_{n−2}^{α+2}.

    Args:
        n (int): The degree.
        alpha (float): The order, α > −1.
        x (ArrayLike): The point or points to evaluate at.

    Returns:
        ArrayLike: The second derivative.
    """
    n = require_quantum_number("n", n)
    xs = np.asarray(x, dtype=float)

    return unwrap(np.zeros_like(xs) if n < 2 else _laguerre_pair(n - 2, alpha + 2, xs)[0], x)


def log_normalization(n: int, beta: float, xi: float) -> float:
    """Computes ln N for the radial function N·e^{−ξr/2}·r^β·L_n^{2β+1}(ξr), where N² = ξ^{2β+3}·n!/(2(n+β+1)·Γ(n+2β+2)).  Everything stays in log space, so β in the hundreds is fine.

    Args:
        n (int): The radial quantum number.
        beta (float): The effective angular momentum, β ≥ 0.
        xi (float): The radial scale, ξ > 0.

    Raises:
        ValueError: If `xi` is not positive.

    Returns:
        float: ln N
    """
    n = require_quantum_number("n", n)
    if not xi > 0:
        raise ValueError(f"the radial scale must be positive, got xi = {xi}")

    return 0.5 * ((2 * beta + 3) * math.log(xi) - math.log(2) + gammaln(n + 1) - math.log(n + beta + 1) - gammaln(n + 2 * beta + 2))


@dataclass(frozen=True)
class RadialWavefunction:
    """A normalized radial wavefunction R_n(r) = N·e^{−ξr/2}·r^β·L_n^{2β+1}(ξr).  ξ is carried explicitly so that states sharing one ξ (a fixed basis) and states at their own physical ξ can both be represented."""

    n: int
    ell: int
    beta: float
    xi: float
    log_norm: float

    @property
    def alpha(self) -> float:
        """The Laguerre order, 2β+1"""
        return 2 * self.beta + 1

    @staticmethod
    def for_basis(n: int, ell: int, beta: float, xi: float) -> RadialWavefunction:
        """Creates the radial function with quantum number `n` at a given, fixed radial scale.

        Args:
            n (int): The radial quantum number.
            ell (int): The angular momentum quantum number.
            beta (float): The effective angular momentum.
            xi (float): The radial scale, in Å⁻¹.

        Returns:
            RadialWavefunction: The new wavefunction.
        """
        return RadialWavefunction(n, ell, beta, xi, log_normalization(n, beta, xi))

    @staticmethod
    def from_context(ctx: SpectralContext) -> RadialWavefunction:
        """Creates the physical radial wavefunction of a bound state.

        Args:
            ctx (SpectralContext): The bound state.

        Returns:
            RadialWavefunction: The new wavefunction, at the state's own physical radial scale.
        """
        return RadialWavefunction.for_basis(ctx.n, ctx.ell, ctx.beta, ctx.xi_physical)

    def with_n(self, n: int) -> RadialWavefunction:
        """Creates the function with radial quantum number `n` sharing this function's β and ξ.

        Args:
            n (int): The new radial quantum number.

        Returns:
            RadialWavefunction: The new wavefunction.
        """
        return RadialWavefunction.for_basis(n, self.ell, self.beta, self.xi)


def _log_prefactor(w: RadialWavefunction, r: np.ndarray) -> np.ndarray:
    """ln(N·r^β·e^{−ξr/2}), with r^0 read as 1 at the origin"""
    if w.beta == 0:
        log_power = np.zeros_like(r)
    else:
        with np.errstate(divide="ignore"):
            log_power = w.beta * np.log(r)

    return w.log_norm + log_power - w.xi * r / 2


def _radii(r: ArrayLike, strict: bool) -> np.ndarray:
    rs = np.asarray(r, dtype=float)
    if np.any(rs < 0) or (strict and np.any(rs == 0)):
        raise ValueError(f"radii must be {'strictly positive' if strict else 'non-negative'}, got r = {np.min(rs)!r}")

    return rs


def eval_radial(w: RadialWavefunction, r: ArrayLike) -> ArrayLike:
    """Evaluates R_n(r).

    Args:
        w (RadialWavefunction): The wavefunction.
        r (ArrayLike): The radius or radii, in Å.

    Raises:
        ValueError: If any radius is negative.

    Returns:
        ArrayLike: R_n(r)
    """
    rs = _radii(r, False)
    return unwrap(signed_exp(_log_prefactor(w, rs), laguerre(w.n, w.alpha, w.xi * rs).value), r)


def eval_radial_derivative(w: RadialWavefunction, r: ArrayLike) -> ArrayLike:
    """Evaluates dR_n/dr = (β/r − ξ/2)·R_n(r) + N·r^β·e^{−ξr/2}·ξ·L'(ξr).

    Args:
        w (RadialWavefunction): The wavefunction.
        r (ArrayLike): The radius or radii, in Å.

    Raises:
        ValueError: If any radius is not strictly positive.

    Returns:
        ArrayLike: R_n'(r)
    """
    rs = _radii(r, True)
    lag = laguerre(w.n, w.alpha, w.xi * rs)

    return unwrap(signed_exp(_log_prefactor(w, rs), (w.beta / rs - w.xi / 2) * lag.value + w.xi * lag.derivative_value), r)


def eval_radial_second_derivative(w: RadialWavefunction, r: ArrayLike) -> ArrayLike:
    """Evaluates d²R_n/dr².

    Args:
        w (RadialWavefunction): The wavefunction.
        r (ArrayLike): The radius or radii, in Å.

    Raises:
        ValueError: If any radius is not strictly positive.

    Returns:
        ArrayLike: R_n''(r)
    """
    rs = _radii(r, True)
    x = w.xi * rs
    lag = laguerre(w.n, w.alpha, x)
    u = w.beta / rs - w.xi / 2

    factor = (u ** 2 - w.beta / rs ** 2) * lag.value + 2 * u * w.xi * lag.derivative_value + w.xi ** 2 * laguerre_second_derivative(w.n, w.alpha, x)
    return unwrap(signed_exp(_log_prefactor(w, rs), factor), r)
