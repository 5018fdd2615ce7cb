"""Closed-form bound-state spectrum of the generalized Kratzer potential"""

import logging
import math

from dataclasses import dataclass

from .model import PhysicalConstants, PotentialParams
from .utils import require_quantum_number

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpectralContext:
    """Everything about one bound state (n, ℓ) that the wavefunction, ladder and matrix-element code needs."""

    n: int
    ell: int
    beta: float
    """Effective angular momentum, the non-negative root of β(β+1) = 2μb/ħ² + ℓ(ℓ+1)"""

    alpha_quant: float
    """n + β + 1, the quantization condition on the bound state"""

    xi_printed: float
    """The radial scale with the sign convention of the published tables, 2μa/(ħ²(n+β+1)).  Negative for bound states."""

    xi_physical: float
    """The radial scale used to build wavefunctions, −xi_printed.  Positive for bound states."""

    energy: float
    """Bound-state energy, in eV"""

    gamma_scale: float
    """The square of the physical radial scale, in Å⁻²"""

    mu_ev: float

    binding_scale: float
    """2μa/ħ², in Å⁻¹.  Negative for bound states."""

    @property
    def k(self) -> float:
        """Alias of `alpha_quant`, the principal-like quantum number n + β + 1"""
        return self.alpha_quant


def beta_ell(p: PotentialParams, mu_ev: float, ell: int, k: PhysicalConstants = PhysicalConstants()) -> float:
    """Computes the effective angular momentum β, the non-negative root of β(β+1) = 2μb/ħ² + ℓ(ℓ+1).

    Args:
        p (PotentialParams): The potential.
        mu_ev (float): The reduced mass as a rest energy, in eV.
        ell (int): The angular momentum quantum number.
        k (PhysicalConstants, optional): The unit conventions to use. Defaults to PhysicalConstants().

    Raises:
        ValueError: If the discriminant (2ℓ+1)² + 8μb/ħ² is negative, i.e. `b` is too repulsive-negative for a real β.

    Returns:
        float: β
    """
    ell = require_quantum_number("ell", ell)

    if (disc := (2 * ell + 1) ** 2 + 8 * mu_ev * p.b / k.hbar_c_sq) < 0:
        raise ValueError(f"no real effective angular momentum for b = {p.b} and ell = {ell}, discriminant is {disc}")

    return 0.5 * (-1 + math.sqrt(disc))


def energy(p: PotentialParams, mu_ev: float, n: int, ell: int, k: PhysicalConstants = PhysicalConstants()) -> float:
    """Computes the bound-state energy E = −μa²/(2ħ²(n+β+1)²) + c.

    Args:
        p (PotentialParams): The potential.
        mu_ev (float): The reduced mass as a rest energy, in eV.
        n (int): The radial quantum number.
        ell (int): The angular momentum quantum number.
        k (PhysicalConstants, optional): The unit conventions to use. Defaults to PhysicalConstants().

    Raises:
        ValueError: If `p` has no bound states (`a ≥ 0`), which would need continuum states.

    Returns:
        float: The energy, in eV.
    """
    n = require_quantum_number("n", n)
    if not p.is_binding:
        raise ValueError(f"continuum states are unsupported, a = {p.a} must be negative for bound states")

    return -mu_ev * p.a ** 2 / (2 * k.hbar_c_sq * (n + beta_ell(p, mu_ev, ell, k) + 1) ** 2) + p.c


def spectral_context(p: PotentialParams, mu_ev: float, n: int, ell: int, k: PhysicalConstants = PhysicalConstants()) -> SpectralContext:
    """Bundles the derived quantities of state (n, ℓ).

    Args:
        p (PotentialParams): The potential.
        mu_ev (float): The reduced mass as a rest energy, in eV.
        n (int): The radial quantum number.
        ell (int): The angular momentum quantum number.
        k (PhysicalConstants, optional): The unit conventions to use. Defaults to PhysicalConstants().

    Raises:
        ValueError: If `p` has no bound states, or β is not real.

    Returns:
        SpectralContext: The derived quantities.
    """
    e = energy(p, mu_ev, n, ell, k)
    beta = beta_ell(p, mu_ev, ell, k)
    binding_scale = 2 * mu_ev * p.a / k.hbar_c_sq
    alpha_quant = n + beta + 1
    xi_printed = binding_scale / alpha_quant

    log.debug("state (%d, %d): beta=%.15g, xi=%.15g, E=%.15g", n, ell, beta, -xi_printed, e)

    return SpectralContext(n, ell, beta, alpha_quant, xi_printed, -xi_printed, e, xi_printed ** 2, mu_ev, binding_scale)


def xi_from_energy(ctx: SpectralContext, p: PotentialParams, k: PhysicalConstants = PhysicalConstants()) -> float:
    """Recovers the radial scale from the energy alone, √(−8μ(E−c))/ħ.  For a consistent context this equals `ctx.xi_physical`.

    Args:
        ctx (SpectralContext): The state.
        p (PotentialParams): The potential `ctx` was built from.
        k (PhysicalConstants, optional): The unit conventions to use. Defaults to PhysicalConstants().

    Returns:
        float: The radial scale, in Å⁻¹.
    """
    return math.sqrt(-8 * ctx.mu_ev * (ctx.energy - p.c)) / k.hbar_c
