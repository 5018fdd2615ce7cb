"""Physical constants, the molecule registry, and the generalized Kratzer potential family"""

from __future__ import annotations

import json
import logging
import math

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Union

import numpy as np

from .utils import ArrayLike, unwrap

HBAR_C = 1973.29
AMU_TO_EV = 9.31494028e8

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PhysicalConstants:
    """Unit conventions shared by every spectral formula.  Energies are in eV, lengths in Å, and masses enter as rest energies (μc² in eV)."""

    hbar_c: float = HBAR_C
    """ħc in eV·Å"""

    amu_to_ev: float = AMU_TO_EV
    """Rest energy of one atomic mass unit, in eV"""

    def __post_init__(self) -> None:
        if not all(math.isfinite(v) and v > 0 for v in (self.hbar_c, self.amu_to_ev)):
            raise ValueError(f"physical constants must be finite and strictly positive, got hbar_c={self.hbar_c}, amu_to_ev={self.amu_to_ev}")

    @property
    def hbar_c_sq(self) -> float:
        """(ħc)², in eV²·Å²"""
        return self.hbar_c ** 2


@dataclass(frozen=True)
class MoleculeSpec:
    """Spectroscopic data describing one diatomic molecule."""

    name: str
    d0: float
    """Dissociation energy, in eV"""

    r0: float
    """Equilibrium bond length, in Å"""

    mu_amu: float
    """Reduced mass, in amu"""

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("a molecule must have a non-empty name")

        for field, value in (("d0", self.d0), ("r0", self.r0), ("mu_amu", self.mu_amu)):
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{self.name}: {field} must be finite and strictly positive, got {value}")

    def mu_energy(self, k: PhysicalConstants = PhysicalConstants()) -> float:
        """Converts the reduced mass of this molecule to a rest energy.

        Args:
            k (PhysicalConstants, optional): The unit conventions to use. Defaults to PhysicalConstants().

        Returns:
            float: μc², in eV.
        """
        return self.mu_amu * k.amu_to_ev


@dataclass(frozen=True)
class PotentialParams:
    """Coefficients of V(r) = a/r + b/r² + c.  Bound states exist only for `a < 0`; `b` should be non-negative."""

    a: float
    b: float
    c: float

    @property
    def is_binding(self) -> bool:
        """True if the Coulomb-like term is attractive, i.e. if this potential supports bound states"""
        return self.a < 0


class Potential(str, Enum):
    """The members of the Kratzer family which can be built from a `MoleculeSpec`"""
    KRATZER = "kratzer"
    MODIFIED_KRATZER = "modified-kratzer"

    def params(self, m: MoleculeSpec) -> PotentialParams:
        """Builds the coefficients of this potential for molecule `m`.

        Args:
            m (MoleculeSpec): The molecule to use.

        Returns:
            PotentialParams: The potential coefficients.
        """
        return kratzer_params(m) if self is Potential.KRATZER else modified_kratzer_params(m)


def kratzer_params(m: MoleculeSpec) -> PotentialParams:
    """Builds the Kratzer potential V(r) = −2D₀r₀/r + D₀r₀²/r², whose minimum is −D₀ at r₀.

    Args:
        m (MoleculeSpec): The molecule to use.

    Returns:
        PotentialParams: The potential coefficients.
    """
    return PotentialParams(-2 * m.d0 * m.r0, m.d0 * m.r0 ** 2, 0.0)


def modified_kratzer_params(m: MoleculeSpec) -> PotentialParams:
    """Builds the modified Kratzer potential, the Kratzer potential shifted up by D₀ so that its minimum is 0 at r₀.

    Args:
        m (MoleculeSpec): The molecule to use.

    Returns:
        PotentialParams: The potential coefficients.
    """
    return PotentialParams(-2 * m.d0 * m.r0, m.d0 * m.r0 ** 2, m.d0)


def evaluate_potential(p: PotentialParams, r: ArrayLike) -> ArrayLike:
    """Evaluates V(r) = a/r + b/r² + c.

    Args:
        p (PotentialParams): The potential to evaluate.
        r (ArrayLike): The radius or radii to evaluate at, in Å.

    Raises:
        ValueError: If any radius is not strictly positive.

    Returns:
        ArrayLike: V(r) in eV, a `float` if `r` was a scalar.
    """
    if np.any((x := np.asarray(r, dtype=float)) <= 0):
        raise ValueError(f"the potential is only defined for r > 0, got r = {np.min(x)!r}")

    return unwrap(p.a / x + p.b / x ** 2 + p.c, r)


##################################################################################################
############################### M O L E C U L E   R E G I S T R Y ################################
##################################################################################################


class MoleculeRegistry:
    """A case-insensitive collection of named molecules"""

    def __init__(self, molecules: Iterable[MoleculeSpec] = ()) -> None:
        """Creates a new MoleculeRegistry.

        Args:
            molecules (Iterable[MoleculeSpec], optional): The molecules to start with. Defaults to ().
        """
        self._m: dict[str, MoleculeSpec] = {}

        for m in molecules:
            self.add(m)

    def __contains__(self, name: str) -> bool:
        return name.upper() in self._m

    def __iter__(self) -> Iterator[MoleculeSpec]:
        return iter(self._m.values())

    def __len__(self) -> int:
        return len(self._m)

    @property
    def names(self) -> list[str]:
        """The names of the molecules in this registry, in insertion order"""
        return [m.name for m in self._m.values()]

    def add(self, m: MoleculeSpec) -> None:
        """Adds a molecule to this registry, replacing any molecule of the same name.

        Args:
            m (MoleculeSpec): The molecule to add.
        """
        if (key := m.name.upper()) in self._m:
            log.warning("Molecule '%s' replaces an existing registry entry", m.name)

        self._m[key] = m

    def get(self, name: str) -> MoleculeSpec:
        """Looks up a molecule by name, ignoring case.

        Args:
            name (str): The name of the molecule.

        Raises:
            ValueError: If no molecule is registered under `name`.

        Returns:
            MoleculeSpec: The molecule.
        """
        if (m := self._m.get(name.upper())) is None:
            raise ValueError(f"unknown molecule '{name}', known molecules are: {', '.join(self.names)}")

        return m

    @staticmethod
    def builtin() -> MoleculeRegistry:
        """Creates a registry holding the built-in molecules, CO and NO.

        Returns:
            MoleculeRegistry: A new registry.
        """
        return MoleculeRegistry([MoleculeSpec("CO", 10.84514471, 1.1282, 6.860586),
                                 MoleculeSpec("NO", 8.043782568, 1.1508, 7.468441)])


def _molecule_from_json(e: dict, source: Path) -> MoleculeSpec:
    try:
        return MoleculeSpec(str(e["name"]), float(e["d0_ev"]), float(e["r0_angstrom"]), float(e["mu_amu"]))
    except KeyError as err:
        raise ValueError(f"{source}: molecule entry is missing required key {err}") from err
    except (TypeError, ValueError) as err:
        raise ValueError(f"{source}: malformed molecule entry {e!r}: {err}") from err


def load_config(path: Union[Path, str], registry: MoleculeRegistry = None) -> tuple[MoleculeRegistry, PhysicalConstants]:
    """Reads a JSON config file holding custom molecules and, optionally, overridden physical constants.  The file is either a single molecule object or an object with a `"molecules"` list.  Molecule objects have the keys `name`, `d0_ev`, `r0_angstrom` and `mu_amu`.  The optional top-level keys `hbar_c_ev_angstrom` and `amu_to_ev` override the default constants.

    Args:
        path (Union[Path, str]): The config file to read.
        registry (MoleculeRegistry, optional): The registry to extend.  If None, a new registry holding the built-in molecules is extended. Defaults to None.

    Raises:
        ValueError: If the file is not valid JSON, has a `"molecules"` value that is not a list, or describes an invalid molecule.

    Returns:
        tuple[MoleculeRegistry, PhysicalConstants]: The extended registry and the constants to use.
    """
    path = Path(path)

    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise ValueError(f"{path} is not valid JSON: {e}") from e

    if not isinstance(raw, dict):
        raise ValueError(f"{path}: expected a JSON object at the top level")

    if registry is None:
        registry = MoleculeRegistry.builtin()

    entries = [raw] if "name" in raw else raw.get("molecules", [])
    if not isinstance(entries, list):
        raise ValueError(f"{path}: \"molecules\" must be a list, got {type(entries).__name__}")

    for e in entries:
        registry.add(_molecule_from_json(e, path))

    try:
        k = PhysicalConstants(float(raw.get("hbar_c_ev_angstrom", HBAR_C)), float(raw.get("amu_to_ev", AMU_TO_EV)))
    except (TypeError, ValueError) as e:
        raise ValueError(f"{path}: invalid physical constant override: {e}") from e

    log.info("Loaded %d molecule(s) from '%s'", len(entries), path)
    log.debug("Constants in effect: %s", k)

    return registry, k
