"""Ensemble parameters, Dicke-subspace spectrum, ladder coefficients, and
the Gibbs steady state.

An ensemble of N identical two-level emitters, packed well inside the
emission wavelength, is restricted to the symmetric (Dicke) subspace
spanned by |n>, n = 0..N, where n counts excited emitters.  Code units fix
omega0 = hbar = k_B = 1 and Gamma(omega0) = 1, so everything here is
dimensionless: eta is the static dipole-dipole coupling in units of the
transition frequency and x = hbar*omega0/(k_B*T) the inverse temperature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    EtaOutOfRange,
    NonPositiveX,
    SingleAtomWithCoupling,
    ZeroAtoms,
)

__all__ = [
    "EnsembleParams",
    "DickeSpectrum",
    "LadderCoeffs",
    "ThermalState",
    "validate_params",
    "build_spectrum",
    "ladder_coefficients",
    "thermal_state",
]


@dataclass(frozen=True)
class EnsembleParams:
    """Physical parameters of the emitter ensemble (dimensionless).

    n_atoms : number of emitters N
    eta     : dipole-dipole coupling over the transition frequency
    x       : inverse temperature hbar*omega0/(k_B*T)

    The admissible coupling window -(N-1)/(N+1) < eta < 1 keeps every
    collective transition frequency positive; for N = 1 the per-pair
    coupling eta/(N-1) is undefined, so only eta = 0 is accepted.
    """

    n_atoms: int
    eta: float = 0.0
    x: float = 1.0

    def __post_init__(self) -> None:
        n = self.n_atoms
        if n < 1:
            raise ZeroAtoms(f"atom count must be at least 1, got {n}")
        if not math.isfinite(self.x) or self.x <= 0.0:
            raise NonPositiveX(f"x must be positive and finite, got {self.x}")
        if not math.isfinite(self.eta):
            raise EtaOutOfRange(f"eta must be finite, got {self.eta}")
        if n == 1:
            if self.eta != 0.0:
                raise SingleAtomWithCoupling(
                    "a single emitter has no dipole-dipole partner; eta must be 0"
                )
            return
        lower = -(n - 1) / (n + 1)
        if abs(self.eta) >= 1.0 or self.eta <= lower:
            raise EtaOutOfRange(
                f"eta must satisfy {lower:.6g} < eta < 1 for N={n}, got {self.eta}"
            )

    @property
    def delta_tilde(self) -> float:
        """Per-pair coupling eta/(N-1); defined as 0 for a single emitter."""
        if self.n_atoms == 1:
            return 0.0
        return self.eta / (self.n_atoms - 1)

    @property
    def omega_bar(self) -> float:
        """Shifted transition frequency 1 + delta_tilde."""
        return 1.0 + self.delta_tilde


def validate_params(n_atoms: int, eta: float = 0.0, x: float = 1.0) -> EnsembleParams:
    """Coerce raw values and return validated ensemble parameters."""
    n = int(n_atoms)
    if n != n_atoms:
        raise ValueError(f"atom count must be an integer, got {n_atoms!r}")
    return EnsembleParams(n, float(eta), float(x))


@dataclass(frozen=True)
class DickeSpectrum:
    """Collective energies E_n and transition frequencies omega_m, n,m = 0..N."""

    energies: np.ndarray
    frequencies: np.ndarray

    @property
    def dim(self) -> int:
        return self.energies.size


def build_spectrum(params: EnsembleParams) -> DickeSpectrum:
    """Closed-form spectrum of the collective Hamiltonian on the Dicke ladder.

        E_n     = omega_bar*(n - N/2) - delta_tilde*n*(N - n + 1)
        omega_m = omega_bar + 2*delta_tilde*(m - N/2)

    Both arrays have length N + 1.  Consecutive spacings obey
    E_{n+1} - E_n = omega_n, which ties the Gibbs weights to the
    level-dependent transition frequencies.  No diagonalization is involved;
    the Hamiltonian is diagonal in this basis.
    """
    big_n = params.n_atoms
    dt = params.delta_tilde
    wb = params.omega_bar
    n = np.arange(big_n + 1, dtype=float)
    energies = wb * (n - big_n / 2.0) - dt * n * (big_n - n + 1.0)
    frequencies = wb + 2.0 * dt * (n - big_n / 2.0)
    energies.setflags(write=False)
    frequencies.setflags(write=False)
    return DickeSpectrum(energies=energies, frequencies=frequencies)


@dataclass(frozen=True)
class LadderCoeffs:
    """Matrix elements of the collective ladder operators on |n>.

    lowering[n] = sqrt(n*(N-n+1))   for S-|n> -> |n-1>
    raising[n]  = sqrt((N-n)*(n+1)) for S+|n> -> |n+1>
    """

    lowering: np.ndarray
    raising: np.ndarray


def ladder_coefficients(n_atoms: int) -> LadderCoeffs:
    """Ladder coefficients for N emitters; raising[n] == lowering[n+1]."""
    if n_atoms < 1:
        raise ZeroAtoms(f"atom count must be at least 1, got {n_atoms}")
    n = np.arange(n_atoms + 1, dtype=float)
    lowering = np.sqrt(n * (n_atoms - n + 1.0))
    raising = np.sqrt((n_atoms - n) * (n + 1.0))
    lowering.setflags(write=False)
    raising.setflags(write=False)
    return LadderCoeffs(lowering=lowering, raising=raising)


@dataclass(frozen=True)
class ThermalState:
    """Gibbs populations over the Dicke ladder, kept in the log domain.

    log_weights[n] = -x*E_n shifted so the largest entry is exactly 0;
    log_z is the log of the partition sum of the shifted weights.  The
    shift cancels in every ratio, so populations and correlators never
    see it.
    """

    log_weights: np.ndarray
    populations: np.ndarray
    log_z: float

    @property
    def dim(self) -> int:
        return self.populations.size


def thermal_state(params: EnsembleParams, spectrum: DickeSpectrum | None = None) -> ThermalState:
    """Gibbs steady state p_n proportional to exp(-x*E_n).

    The weights are shifted by the ground-level weight before
    exponentiation, so arbitrarily cold ensembles stay representable;
    normalization uses compensated summation.  Detailed balance
    p_{n+1}/p_n = exp(-x*(E_{n+1}-E_n)) holds at the level of the stored
    log weights.
    """
    spec = build_spectrum(params) if spectrum is None else spectrum
    energies = spec.energies
    log_weights = -params.x * (energies - energies.min())
    weights = np.exp(log_weights)
    z = math.fsum(weights)
    populations = weights / z
    log_weights.setflags(write=False)
    populations.setflags(write=False)
    return ThermalState(log_weights=log_weights, populations=populations, log_z=math.log(z))
