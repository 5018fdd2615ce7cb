"""Command-line interface: spectra, matrix-element tables, potential curves and validation runs"""

import logging

from enum import Enum
from pathlib import Path
from typing import Optional

import numpy as np
import typer

from .matrix_elements import table_row
from .model import MoleculeRegistry, MoleculeSpec, PhysicalConstants, Potential, evaluate_potential, load_config
from .oracle import QuadratureSpec, ValidationReport, full_validation
from .reference import has_published_tables, other_method, reference_energies
from .spectrum import energy, spectral_context
from .utils import OutputTable

MAX_QUANTUM_NUMBER = 50

log = logging.getLogger(__name__)

app = typer.Typer(name="pkratzer", help="Bound states, ladder operators and matrix elements of the generalized Kratzer potential.", add_completion=False, no_args_is_help=True)


class OutputFormat(str, Enum):
    """Encodings for command output"""
    CSV = "csv"
    JSON = "json"


def _ell_values(n: int, ell_max: int, all_ell: bool) -> range:
    return range((ell_max if all_ell else min(n, ell_max)) + 1)


def _check_range(name: str, value: int, low: int = 0) -> None:
    if not low <= value <= MAX_QUANTUM_NUMBER:
        raise ValueError(f"{name} must lie in [{low}, {MAX_QUANTUM_NUMBER}], got {value}")


##################################################################################################
################################## T A B L E   B U I L D E R S ###################################
##################################################################################################


def cmd_spectrum(molecule: MoleculeSpec, potential: Potential, n_max: int, ell_max: int, k: PhysicalConstants = PhysicalConstants(), all_ell: bool = False, compare: bool = False) -> OutputTable:
    """Tabulates bound-state energies.  By default ℓ runs up to min(n, ell_max) for each n, as in the published tables.

    Args:
        molecule (MoleculeSpec): The molecule.
        potential (Potential): The potential.
        n_max (int): The largest radial quantum number, at most `MAX_QUANTUM_NUMBER`.
        ell_max (int): The largest angular momentum quantum number, at most `MAX_QUANTUM_NUMBER`.
        k (PhysicalConstants, optional): The unit conventions to use. Defaults to PhysicalConstants().
        all_ell (bool, optional): Set True to let ℓ run up to `ell_max` for every n. Defaults to False.
        compare (bool, optional): Set True to add the published values next to each energy.  Cells stay empty where nothing was published. Defaults to False.

    Raises:
        ValueError: If `n_max` or `ell_max` is out of range.

    Returns:
        OutputTable: Columns n, ell, energy_ev, plus the comparison columns if requested.
    """
    _check_range("n_max", n_max)
    _check_range("ell_max", ell_max)

    p = potential.params(molecule)
    mu = molecule.mu_energy(k)
    published = reference_energies(potential, molecule.name) if compare and has_published_tables(molecule, k) else {}

    t = OutputTable(["n", "ell", "energy_ev"] + (["factorization_ev", "exact_quantization_ev", f"{other_method(potential)}_ev"] if compare else []))
    for n in range(n_max + 1):
        for ell in _ell_values(n, ell_max, all_ell):
            cells = [n, ell, energy(p, mu, n, ell, k)]
            if compare:
                cells += [e.factorization, e.exact_quantization, e.other] if (e := published.get((n, ell))) else [""] * 3

            t.append(*cells)

    log.info("Tabulated %d energies for %s (%s)", len(t.rows), molecule.name, potential.value)
    return t


def cmd_matrix_elements(molecule: MoleculeSpec, potential: Potential, n_max: int, ell_max: int, k: PhysicalConstants = PhysicalConstants(), all_ell: bool = False) -> OutputTable:
    """Tabulates the matrix-element rows for 1 ≤ n ≤ n_max.  The rows do not depend on the constant shift of the potential, so both potentials give identical tables.

    Args:
        molecule (MoleculeSpec): The molecule.
        potential (Potential): The potential.
        n_max (int): The largest radial quantum number, between 1 and `MAX_QUANTUM_NUMBER`.
        ell_max (int): The largest angular momentum quantum number, at most `MAX_QUANTUM_NUMBER`.
        k (PhysicalConstants, optional): The unit conventions to use. Defaults to PhysicalConstants().
        all_ell (bool, optional): Set True to let ℓ run up to `ell_max` for every n. Defaults to False.

    Raises:
        ValueError: If `n_max` or `ell_max` is out of range.

    Returns:
        OutputTable: Columns n, ell, r_elem, rddr_elem, gamma1, gamma2.
    """
    _check_range("n_max", n_max, 1)
    _check_range("ell_max", ell_max)

    p = potential.params(molecule)
    mu = molecule.mu_energy(k)

    t = OutputTable(["n", "ell", "r_elem", "rddr_elem", "gamma1", "gamma2"])
    for n in range(1, n_max + 1):
        for ell in _ell_values(n, ell_max, all_ell):
            row = table_row(n, ell, spectral_context(p, mu, n, ell, k))
            t.append(n, ell, row.r_elem, row.rddr_elem, row.gamma1, row.gamma2)

    log.info("Tabulated %d matrix-element rows for %s", len(t.rows), molecule.name)
    return t


def cmd_potential_curve(molecule: MoleculeSpec, potential: Potential, r_min: float, r_max: float, samples: int) -> OutputTable:
    """Samples the potential on an evenly spaced grid.

    Args:
        molecule (MoleculeSpec): The molecule.
        potential (Potential): The potential.
        r_min (float): The first radius, in Å.  Must be positive.
        r_max (float): The last radius, in Å.  Must exceed `r_min`.
        samples (int): The number of radii, at least 2.

    Raises:
        ValueError: If the grid is empty or reaches r ≤ 0.

    Returns:
        OutputTable: Columns r_angstrom, v_ev.
    """
    if not 0 < r_min < r_max or samples < 2:
        raise ValueError(f"need 0 < r_min < r_max and at least 2 samples, got r_min={r_min}, r_max={r_max}, samples={samples}")

    r = np.linspace(r_min, r_max, samples)
    t = OutputTable(["r_angstrom", "v_ev"])
    for x, v in zip(r, evaluate_potential(potential.params(molecule), r)):
        t.append(x, v)

    return t


def cmd_validate(molecules: list[MoleculeSpec], n_max: int, ell_max: int, spec: QuadratureSpec = QuadratureSpec(), k: PhysicalConstants = PhysicalConstants()) -> ValidationReport:
    """Runs the full validation for every molecule under both potentials.

    Args:
        molecules (list[MoleculeSpec]): The molecules to validate.
        n_max (int): The largest radial quantum number to check.
        ell_max (int): The largest angular momentum quantum number to check.
        spec (QuadratureSpec, optional): The quadrature settings. Defaults to QuadratureSpec().
        k (PhysicalConstants, optional): The unit conventions to use. Defaults to PhysicalConstants().

    Raises:
        ValueError: If `n_max` or `ell_max` is out of range.

    Returns:
        ValidationReport: The merged report, with check names prefixed by molecule and potential.
    """
    _check_range("n_max", n_max)
    _check_range("ell_max", ell_max)

    report = ValidationReport()
    for m in molecules:
        for potential in Potential:
            report.extend(full_validation(m, potential, n_max, ell_max, spec, k), f"{m.name}/{potential.value}/")

    return report


##################################################################################################
######################################## C O M M A N D S #########################################
##################################################################################################


def _setup(config: Optional[Path], verbose: bool) -> tuple[MoleculeRegistry, PhysicalConstants]:
    """Configures logging and loads the molecule registry"""
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")

    if config is None:
        return MoleculeRegistry.builtin(), PhysicalConstants()

    try:
        return load_config(config)
    except (OSError, ValueError) as e:
        raise typer.BadParameter(str(e), param_hint="--config") from e


def _molecule(registry: MoleculeRegistry, name: str) -> MoleculeSpec:
    try:
        return registry.get(name)
    except ValueError as e:
        raise typer.BadParameter(str(e), param_hint="--molecule") from e


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        typer.echo(text, nl=False)
    else:
        out.write_text(text)
        log.info("Wrote output to '%s'", out)


_CONFIG = typer.Option(None, "--config", "-c", help="JSON file with custom molecules and constant overrides.", dir_okay=False)
_VERBOSE = typer.Option(False, "--verbose", "-v", help="Log debug output to stderr.")
_OUT = typer.Option(None, "--out", "-o", help="Write output to this file instead of stdout.", dir_okay=False)
_FORMAT = typer.Option(OutputFormat.CSV, "--format", "-f", help="Output encoding.")
_MOLECULE = typer.Option("CO", "--molecule", "-m", help="Molecule name from the registry.")
_POTENTIAL = typer.Option(Potential.KRATZER, "--potential", "-p", help="Member of the Kratzer family.")
_ALL_ELL = typer.Option(False, "--all-ell", help="Let l run up to --ell-max for every n instead of stopping at n.")


@app.command("spectrum")
def spectrum_command(molecule: str = _MOLECULE,
                     potential: Potential = _POTENTIAL,
                     n_max: int = typer.Option(5, "--n-max", min=0, max=MAX_QUANTUM_NUMBER, help="Largest radial quantum number."),
                     ell_max: int = typer.Option(5, "--ell-max", min=0, max=MAX_QUANTUM_NUMBER, help="Largest angular momentum quantum number."),
                     all_ell: bool = _ALL_ELL,
                     compare: bool = typer.Option(False, "--compare", help="Add the published energies next to the computed ones."),
                     fmt: OutputFormat = _FORMAT,
                     out: Optional[Path] = _OUT,
                     config: Optional[Path] = _CONFIG,
                     verbose: bool = _VERBOSE) -> None:
    """Print bound-state energies E(n, l) in eV."""
    registry, k = _setup(config, verbose)
    _emit(cmd_spectrum(_molecule(registry, molecule), potential, n_max, ell_max, k, all_ell, compare).render(fmt.value), out)


@app.command("matrix-elements")
def matrix_elements_command(molecule: str = _MOLECULE,
                            potential: Potential = _POTENTIAL,
                            n_max: int = typer.Option(5, "--n-max", min=1, max=MAX_QUANTUM_NUMBER, help="Largest radial quantum number."),
                            ell_max: int = typer.Option(5, "--ell-max", min=0, max=MAX_QUANTUM_NUMBER, help="Largest angular momentum quantum number."),
                            all_ell: bool = _ALL_ELL,
                            fmt: OutputFormat = _FORMAT,
                            out: Optional[Path] = _OUT,
                            config: Optional[Path] = _CONFIG,
                            verbose: bool = _VERBOSE) -> None:
    """Print the matrix elements of r and r d/dr, and the Gamma combinations, for n >= 1."""
    registry, k = _setup(config, verbose)
    _emit(cmd_matrix_elements(_molecule(registry, molecule), potential, n_max, ell_max, k, all_ell).render(fmt.value), out)


@app.command("potential-curve")
def potential_curve_command(molecule: str = _MOLECULE,
                            potential: Potential = _POTENTIAL,
                            r_min: float = typer.Option(0.5, "--r-min", help="First radius, in angstrom."),
                            r_max: float = typer.Option(5.0, "--r-max", help="Last radius, in angstrom."),
                            samples: int = typer.Option(200, "--samples", min=2, help="Number of radii."),
                            fmt: OutputFormat = _FORMAT,
                            out: Optional[Path] = _OUT,
                            config: Optional[Path] = _CONFIG,
                            verbose: bool = _VERBOSE) -> None:
    """Print the potential V(r) in eV on an evenly spaced grid."""
    registry, _ = _setup(config, verbose)
    try:
        table = cmd_potential_curve(_molecule(registry, molecule), potential, r_min, r_max, samples)
    except ValueError as e:
        raise typer.BadParameter(str(e), param_hint="--r-min/--r-max") from e

    _emit(table.render(fmt.value), out)


@app.command("validate")
def validate_command(molecule: str = typer.Option("all", "--molecule", "-m", help="Molecule name from the registry, or 'all'."),
                     n_max: int = typer.Option(5, "--n-max", min=0, max=MAX_QUANTUM_NUMBER, help="Largest radial quantum number."),
                     ell_max: int = typer.Option(5, "--ell-max", min=0, max=MAX_QUANTUM_NUMBER, help="Largest angular momentum quantum number."),
                     panels: int = typer.Option(512, "--panels", min=1, help="Quadrature panels."),
                     points: int = typer.Option(15, "--points", min=1, help="Gauss-Legendre nodes per panel."),
                     fmt: OutputFormat = typer.Option(OutputFormat.JSON, "--format", "-f", help="Output encoding."),
                     out: Optional[Path] = _OUT,
                     config: Optional[Path] = _CONFIG,
                     verbose: bool = _VERBOSE) -> None:
    """Check the closed forms against quadrature, the operator algebra and the published tables.  Exits with status 1 if any check fails."""
    registry, k = _setup(config, verbose)
    molecules = list(registry) if molecule.lower() == "all" else [_molecule(registry, molecule)]

    report = cmd_validate(molecules, n_max, ell_max, QuadratureSpec(panels=panels, points_per_panel=points), k)
    _emit(report.to_json() if fmt is OutputFormat.JSON else report.as_table().to_csv(), out)

    if not report.passed:
        log.error("%d check(s) failed", len(report.failures()))
        raise typer.Exit(code=1)
