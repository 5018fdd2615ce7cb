"""Closed-form tridiagonal matrix elements of r and r·d/dr, and the Γ combinations built from them"""

import logging
import math

from dataclasses import dataclass
from enum import Enum

from .ladder import ladder_coeffs
from .spectrum import SpectralContext
from .utils import require_quantum_number

log = logging.getLogger(__name__)


class OperatorTag(str, Enum):
    """The operators whose matrix elements are tabulated"""
    R = "r"
    R_DDR = "r_ddr"


class GammaKind(str, Enum):
    """Which combination of ξ·r and r·d/dr a Γ element is built from"""
    SUM = "sum"
    DIFFERENCE = "difference"


@dataclass(frozen=True)
class TridiagonalElement:
    """One matrix element ⟨R_m|op|R_n⟩"""
    m: int
    n: int
    value: float
    operator_tag: OperatorTag


@dataclass(frozen=True)
class MatrixElementRow:
    """One row of the matrix-element table for state (n, ℓ)"""
    n: int
    ell: int
    r_elem: float
    rddr_elem: float
    gamma1: float
    gamma2: float


def _check_indices(m: int, n: int) -> tuple[int, int]:
    return require_quantum_number("m", m), require_quantum_number("n", n)


def me_r(m: int, n: int, ctx: SpectralContext) -> TridiagonalElement:
    """Computes ⟨R_m|r|R_n⟩ in the tridiagonal form (n+β+1)/ξ on the diagonal and −ℓ±/ξ next to it, with ℓ± taken at `n` and ξ the signed scale `ctx.xi_printed`.

    Args:
        m (int): The bra quantum number.
        n (int): The ket quantum number.
        ctx (SpectralContext): Supplies β and ξ.

    Returns:
        TridiagonalElement: The element.  Zero when |m−n| > 1.
    """
    m, n = _check_indices(m, n)
    xi = ctx.xi_printed
    coeffs = ladder_coeffs(n, ctx.beta)

    if m == n:
        value = (n + ctx.beta + 1) / xi
    elif m == n + 1:
        value = -coeffs.ell_plus / xi
    elif m == n - 1:
        value = -coeffs.ell_minus / xi
    else:
        value = 0.0

    return TridiagonalElement(m, n, value, OperatorTag.R)


def me_rddr(m: int, n: int, ctx: SpectralContext) -> TridiagonalElement:
    """Computes ⟨R_m|r·d/dr|R_n⟩ in the tridiagonal form −1 on the diagonal, ℓ₊/2 above and −ℓ₋/2 below.

    Args:
        m (int): The bra quantum number.
        n (int): The ket quantum number.
        ctx (SpectralContext): Supplies β.

    Returns:
        TridiagonalElement: The element.  Zero when |m−n| > 1.
    """
    m, n = _check_indices(m, n)
    coeffs = ladder_coeffs(n, ctx.beta)

    if m == n:
        value = -1.0
    elif m == n + 1:
        value = coeffs.ell_plus / 2
    elif m == n - 1:
        value = -coeffs.ell_minus / 2
    else:
        value = 0.0

    return TridiagonalElement(m, n, value, OperatorTag.R_DDR)


def shifted_radicals(n: int, beta: float) -> tuple[float, float]:
    """Computes the radicals appearing in the matrix-element table, P₊ = ℓ₊(n+1) = √((n+2)(n+β+3)(n+2β+3)/(n+β+2)) and P₋ = ℓ₋(n−1) = √((n−1)(n+β−1)(n+2β)/(n+β)).

    Args:
        n (int): The radial quantum number, n ≥ 1.
        beta (float): The effective angular momentum.

    Returns:
        tuple[float, float]: (P₊, P₋).  P₋ is exactly 0 at n = 1.
    """
    return ladder_coeffs(n + 1, beta).ell_plus, ladder_coeffs(n - 1, beta).ell_minus


def table_row(n: int, ell: int, ctx: SpectralContext) -> MatrixElementRow:
    """Builds one row of the matrix-element table: ⟨r⟩ = (n+β+1 − P₊ − P₋)/ξ, ⟨r·d/dr⟩ = P₊/2 − P₋/2 − 1, Γ₁ = ξ⟨r⟩ + ⟨r·d/dr⟩ = n+β − P₊/2 − 3P₋/2 and Γ₂ = ξ⟨r⟩ − ⟨r·d/dr⟩ = n+β+2 − 3P₊/2 − P₋/2, with ξ the signed scale `ctx.xi_printed`.

    Args:
        n (int): The radial quantum number, n ≥ 1.
        ell (int): The angular momentum quantum number.
        ctx (SpectralContext): The context of state (n, ℓ).

    Raises:
        ValueError: If `n` is 0, or `ctx` belongs to a different state.

    Returns:
        MatrixElementRow: The row.
    """
    if require_quantum_number("n", n) < 1:
        raise ValueError("the matrix-element table starts at n = 1")

    if (ctx.n, ctx.ell) != (n, ell):
        raise ValueError(f"context describes state ({ctx.n}, {ctx.ell}), not ({n}, {ell})")

    p_plus, p_minus = shifted_radicals(n, ctx.beta)
    k = n + ctx.beta + 1

    return MatrixElementRow(n, ell, (k - p_plus - p_minus) / ctx.xi_printed, p_plus / 2 - p_minus / 2 - 1,
                            k - 1 - p_plus / 2 - 3 * p_minus / 2, k + 1 - 3 * p_plus / 2 - p_minus / 2)


def gamma_offdiagonal(kind: GammaKind, m: int, n: int, ctx: SpectralContext) -> float:
    """Computes the tridiagonal Γ elements, ξ·me_r ± me_rddr entry by entry.  For the sum: n+β on the diagonal, −ℓ₊/2 above and −3ℓ₋/2 below.  For the difference: n+β+2 on the diagonal, −3ℓ₊/2 above and −ℓ₋/2 below.

    Args:
        kind (GammaKind): Which combination to build.
        m (int): The bra quantum number.
        n (int): The ket quantum number.
        ctx (SpectralContext): Supplies β.

    Raises:
        ValueError: If |m−n| > 1.

    Returns:
        float: The element.
    """
    m, n = _check_indices(m, n)
    if abs(m - n) > 1:
        raise ValueError(f"Gamma elements are tridiagonal, |m - n| = {abs(m - n)} is out of range")

    coeffs = ladder_coeffs(n, ctx.beta)
    sign = 1 if kind is GammaKind.SUM else -1

    if m == n:
        return n + ctx.beta + 1 - sign
    elif m == n + 1:
        return -(1 - sign / 2) * coeffs.ell_plus

    return -(1 + sign / 2) * coeffs.ell_minus


##################################################################################################
######################### F I X E D   S C A L E   G R A M   M A T R I X ##########################
##################################################################################################


def basis_overlap(m: int, n: int, beta: float) -> float:
    """Computes the exact overlap ∫R_m·R_n·r²dr of two functions sharing one radial scale.  These vanish for |m−n| ≥ 2, while neighbours overlap by −√(j(j+2β+1)/(4(j+β)(j+β+1))) with j = max(m, n).

    Args:
        m (int): The bra quantum number.
        n (int): The ket quantum number.
        beta (float): The effective angular momentum.

    Returns:
        float: The overlap.  Independent of the radial scale itself.
    """
    if m < 0 or n < 0:
        return 0.0

    if m == n:
        return 1.0

    if abs(m - n) == 1:
        j = max(m, n)
        return -math.sqrt(j * (j + 2 * beta + 1) / (4 * (j + beta) * (j + beta + 1)))

    return 0.0


def basis_me_r(m: int, n: int, beta: float, xi: float) -> float:
    """Computes ∫R_m·r·R_n·r²dr for functions sharing the radial scale `xi`, by resolving r = (2L̂₀ − L̂₊ − L̂₋)/ξ and projecting the ladder images onto R_m with `basis_overlap`.

    Args:
        m (int): The bra quantum number.
        n (int): The ket quantum number.
        beta (float): The effective angular momentum.
        xi (float): The shared radial scale, ξ > 0.

    Returns:
        float: The matrix element, in Å.
    """
    m, n = _check_indices(m, n)
    coeffs = ladder_coeffs(n, beta)

    return (2 * (n + beta + 1) * basis_overlap(m, n, beta) - coeffs.ell_plus * basis_overlap(m, n + 1, beta) - coeffs.ell_minus * basis_overlap(m, n - 1, beta)) / xi


def basis_me_rddr(m: int, n: int, beta: float) -> float:
    """Computes ∫R_m·r·R_n'·r²dr for functions sharing one radial scale, by resolving r·d/dr = (L̂₊ − L̂₋)/2 − 1.

    Args:
        m (int): The bra quantum number.
        n (int): The ket quantum number.
        beta (float): The effective angular momentum.

    Returns:
        float: The matrix element.
    """
    m, n = _check_indices(m, n)
    coeffs = ladder_coeffs(n, beta)

    return (coeffs.ell_plus * basis_overlap(m, n + 1, beta) - coeffs.ell_minus * basis_overlap(m, n - 1, beta)) / 2 - basis_overlap(m, n, beta)
