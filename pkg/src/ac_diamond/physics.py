"""Physical constants, NV ground-state parameters, spin operators and qubit rotations.

Basis convention used throughout the package: amplitude vectors and operator
matrices are indexed by ascending magnetic quantum number, i.e. (|-1>, |0>, |+1>)
for spin-1 and (|-1/2>, |+1/2>) for spin-1/2.  The NV qubit lives on the
{|0>, |1>} subspace (indices 1 and 2 of a spin-1 vector).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class PhysicalConstants:
    """SI constants. ``h`` is exact in the 2019 SI; ``hbar`` is derived from it
    so that h = 2*pi*hbar holds to rounding."""

    h: float = 6.62607015e-34        # Planck constant, J*s
    mu_B: float = 9.2740100783e-24   # Bohr magneton, J/T
    c: float = 299792458.0           # speed of light, m/s
    hbar: float = field(default=6.62607015e-34 / TWO_PI)

    def __post_init__(self):
        for name in ("h", "mu_B", "c", "hbar"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"constant {name} must be strictly positive")
        if abs(self.h - TWO_PI * self.hbar) > 1e-12 * self.h:
            raise ValueError("h and hbar are inconsistent (h != 2*pi*hbar)")


CODATA = PhysicalConstants()


@dataclass(frozen=True)
class NVParameters:
    """NV ground-state parameters.

    D and the Stark coefficient are ordinary frequencies; Hamiltonians multiply
    them by h, not hbar.
    """

    D: float = 2.88e9        # zero-field splitting, Hz
    g: float = 2.0           # gyromagnetic factor
    R2E: float = 20.0        # ground-state Stark coefficient, Hz/(V/cm)
    T2: float = 1.8e-3       # homogeneous dephasing time, s
    B_z: float = 0.0         # axial magnetic field, T

    def __post_init__(self):
        if self.D <= 0.0:
            raise ValueError("zero-field splitting D must be positive")
        if self.T2 <= 0.0:
            raise ValueError("dephasing time T2 must be positive")
        if self.g <= 0.0:
            raise ValueError("gyromagnetic factor g must be positive")
        if self.B_z < 0.0:
            raise ValueError("axial field B_z must be non-negative")
        if self.R2E < 0.0:
            raise ValueError("Stark coefficient R2E must be non-negative")


@dataclass(frozen=True)
class SpinOperators:
    """Angular-momentum matrices Sx, Sy, Sz in units of hbar, ascending-m basis."""

    dimension: int
    Sx: np.ndarray
    Sy: np.ndarray
    Sz: np.ndarray

    @property
    def spin(self) -> float:
        return (self.dimension - 1) / 2.0

    @property
    def m_values(self) -> np.ndarray:
        return np.arange(self.dimension) - self.spin

    def vector(self) -> np.ndarray:
        """Stacked (3, dim, dim) array (Sx, Sy, Sz) for vectorised contractions."""
        return np.stack([self.Sx, self.Sy, self.Sz])


def spin_operators(dimension: int) -> SpinOperators:
    """Standard spin matrices for spin-1/2 (dimension=2) or spin-1 (dimension=3).

    Built from the ladder operators in the Sz eigenbasis ordered by ascending m,
    so Sz = diag(m) with m = -s..+s.
    """
    if dimension not in (2, 3):
        raise ValueError(f"unsupported spin dimension {dimension}; expected 2 or 3")
    s = (dimension - 1) / 2.0
    m = np.arange(dimension) - s
    sz = np.diag(m).astype(complex)
    # (S+)_{m+1,m} = sqrt(s(s+1) - m(m+1))
    raising = np.zeros((dimension, dimension), dtype=complex)
    for k in range(dimension - 1):
        raising[k + 1, k] = np.sqrt(s * (s + 1) - m[k] * (m[k] + 1))
    sx = (raising + raising.conj().T) / 2.0
    sy = (raising - raising.conj().T) / 2j
    return SpinOperators(dimension=dimension, Sx=sx, Sy=sy, Sz=sz)


SPIN_HALF = spin_operators(2)
SPIN_ONE = spin_operators(3)


@dataclass(frozen=True)
class SpinState:
    """Normalized complex amplitudes over the ascending-m basis."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size not in (2, 3):
            raise ValueError("amplitudes must be a complex vector of length 2 or 3")
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > 1e-12:
            raise ValueError(f"state is not normalized: |psi|^2 = {norm_sq!r}")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def ground(cls) -> "SpinState":
        """The optically pumped |0> state of the spin-1 ground triplet."""
        return cls(np.array([0.0, 1.0, 0.0], dtype=complex))

    def population(self, m: int) -> float:
        """Population of the Sz eigenstate with magnetic quantum number m."""
        idx = {-1: 0, 0: 1, 1: 2}[m]
        return float(np.abs(self.amplitudes[idx]) ** 2)


@dataclass(frozen=True)
class QubitRotation:
    """Rabi rotation by angle theta about the equatorial axis set by phase phi,
    acting on the {|0>, |1>} subspace only."""

    theta: float
    phi: float = 0.0


def rotation_matrix(rot: QubitRotation) -> np.ndarray:
    """2x2 unitary of the rotation on the (|0>, |1>) pair."""
    c = np.cos(rot.theta / 2.0)
    s = np.sin(rot.theta / 2.0)
    return np.array(
        [
            [c, -1j * np.exp(-1j * rot.phi) * s],
            [-1j * np.exp(1j * rot.phi) * s, c],
        ]
    )


def apply_rotation(state: SpinState, rot: QubitRotation) -> SpinState:
    """Apply a qubit Rabi pulse; the |-1> amplitude is untouched."""
    amps = state.amplitudes.copy()
    if amps.size != 3:
        raise ValueError("qubit rotations act on spin-1 states")
    amps[1:] = rotation_matrix(rot) @ amps[1:]
    return SpinState(amps)


def ground_state_hamiltonian(
    params: NVParameters, constants: PhysicalConstants = CODATA
) -> np.ndarray:
    """NV ground-state spin Hamiltonian in joules, ascending-m basis.

    H = h*D*(Sz^2 - (2/3) I) + g*mu_B*B_z*Sz, which places |+-1> a spectroscopic
    splitting D above |0> at zero field and splits them linearly in B_z.
    """
    ops = SPIN_ONE
    sz = ops.Sz
    zfs = constants.h * params.D * (sz @ sz - (2.0 / 3.0) * np.eye(3))
    zeeman = params.g * constants.mu_B * params.B_z * sz
    return zfs + zeeman


def transition_energies(hamiltonian: np.ndarray) -> tuple[float, float]:
    """Diagonal level energies of (|-1>, |+1>) relative to |0>, in joules."""
    diag = np.real(np.diag(hamiltonian))
    return float(diag[0] - diag[1]), float(diag[2] - diag[1])
