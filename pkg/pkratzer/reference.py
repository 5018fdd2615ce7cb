"""Published energy and matrix-element tables for CO and NO, shipped as package data"""

import json
import logging

from dataclasses import dataclass
from functools import cache
from importlib import resources

from .matrix_elements import MatrixElementRow
from .model import MoleculeRegistry, MoleculeSpec, PhysicalConstants, Potential

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReferenceEnergy:
    """One published energy row.  `other` holds the asymptotic iteration value for the Kratzer potential and the Nikiforov–Uvarov value for the modified Kratzer potential."""
    n: int
    ell: int
    factorization: float
    exact_quantization: float
    other: float


@cache
def _tables() -> dict:
    log.debug("Loading reference tables from package data")
    return json.loads(resources.files(__package__).joinpath("data/reference_tables.json").read_text())


def molecules_with_reference() -> list[str]:
    """Gets the names of the molecules that have published tables.

    Returns:
        list[str]: The molecule names.
    """
    return list(_tables()["matrix_elements"])


def other_method(potential: Potential) -> str:
    """Gets the name of the third method in the energy table of `potential`.

    Args:
        potential (Potential): The potential.

    Returns:
        str: The method name.
    """
    return _tables()["other_method"][potential.value]


def reference_energies(potential: Potential, molecule: str) -> dict[tuple[int, int], ReferenceEnergy]:
    """Gets the published energies of a molecule, keyed by (n, ℓ).

    Args:
        potential (Potential): The potential.
        molecule (str): The molecule name, e.g. "CO".  Case-insensitive.

    Returns:
        dict[tuple[int, int], ReferenceEnergy]: The rows, in table order.  Empty if no table exists for `molecule`.
    """
    rows = _tables()["energies"][potential.value].get(molecule.upper(), [])
    return {(n, ell): ReferenceEnergy(n, ell, *values) for n, ell, *values in rows}


def reference_matrix_elements(molecule: str) -> dict[tuple[int, int], MatrixElementRow]:
    """Gets the published matrix-element rows of a molecule, keyed by (n, ℓ).  The rows are the same for both potentials.

    Args:
        molecule (str): The molecule name, e.g. "CO".  Case-insensitive.

    Returns:
        dict[tuple[int, int], MatrixElementRow]: The rows, in table order.  Empty if no table exists for `molecule`.
    """
    rows = _tables()["matrix_elements"].get(molecule.upper(), [])
    return {(n, ell): MatrixElementRow(n, ell, *values) for n, ell, *values in rows}


def has_published_tables(molecule: MoleculeSpec, k: PhysicalConstants = PhysicalConstants()) -> bool:
    """Checks whether the published tables apply to `molecule`: it must be a built-in molecule with unchanged data, used with the default constants.

    Args:
        molecule (MoleculeSpec): The molecule.
        k (PhysicalConstants, optional): The unit conventions in use. Defaults to PhysicalConstants().

    Returns:
        bool: True if computed values can be compared against the published tables.
    """
    builtin = MoleculeRegistry.builtin()
    return molecule.name.upper() in molecules_with_reference() and molecule.name in builtin and builtin.get(molecule.name) == molecule and k == PhysicalConstants()
