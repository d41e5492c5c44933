"""Three-qubit state families and density matrices.

Basis convention used across the package: computational basis states
|abc> are indexed big-endian, player A owning the leftmost qubit, so
index i has bit pattern (a, b, c) = ((i >> 2) & 1, (i >> 1) & 1, i & 1).
Bit value 0 is the +1 eigenvalue of the local sigma_z observable (read
as "cooperate"), bit value 1 the -1 eigenvalue ("defect").
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidDensityError, NormalizationError, RangeError, ShapeError

NORMALIZATION_TOL = 1e-9
HERMITICITY_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10

BASIS_LABELS = ("000", "001", "010", "011", "100", "101", "110", "111")

PLAYERS = ("A", "B", "C")


def basis_bit(index: int, player: str) -> int:
    """Bit of basis state `index` belonging to `player` ("A", "B" or "C")."""
    shift = 2 - PLAYERS.index(player)
    return (index >> shift) & 1


def _as_complex_vector(values, length: int, what: str) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128)
    if arr.shape != (length,):
        raise ShapeError(f"{what} must have shape ({length},), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ShapeError(f"{what} contains non-finite entries")
    return arr


def _as_real_vector(values, length: int, what: str) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    if arr.shape != (length,):
        raise ShapeError(f"{what} must have shape ({length},), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ShapeError(f"{what} contains non-finite entries")
    return arr


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class PureState:
    """Normalized amplitude vector over the eight basis states."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _as_complex_vector(self.amplitudes, 8, "amplitudes")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > NORMALIZATION_TOL:
            raise NormalizationError(
                f"amplitude norm squared is {norm!r}, not 1 within {NORMALIZATION_TOL}"
            )
        object.__setattr__(self, "amplitudes", _freeze(amps))

    def probabilities(self) -> np.ndarray:
        """Basis-outcome probabilities |c_i|^2, indexed as in BASIS_LABELS."""
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True)
class DiagonalMixedState:
    """Classical mixture of the eight basis states."""

    weights: np.ndarray

    def __post_init__(self):
        w = _as_real_vector(self.weights, 8, "weights")
        if np.any(w < -1e-12) or np.any(w > 1 + 1e-12):
            raise RangeError("mixture weights must lie in [0, 1]")
        total = float(np.sum(w))
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise NormalizationError(
                f"mixture weights sum to {total!r}, not 1 within {NORMALIZATION_TOL}"
            )
        object.__setattr__(self, "weights", _freeze(w))


@dataclass(frozen=True)
class ProductStateAngles:
    """Bloch angles (theta, phi) plus a global phase delta per qubit.

    theta_i lies in [0, pi]; phi_i and delta_i lie in [0, 2*pi). The
    delta phases multiply whole single-qubit states and therefore drop
    out of every probability; they are carried so callers can confirm
    that invariance.
    """

    theta: np.ndarray
    phi: np.ndarray
    delta: np.ndarray

    def __post_init__(self):
        theta = _as_real_vector(self.theta, 3, "theta")
        phi = _as_real_vector(self.phi, 3, "phi")
        delta = _as_real_vector(self.delta, 3, "delta")
        slack = 1e-12
        if np.any(theta < -slack) or np.any(theta > np.pi + slack):
            raise RangeError("theta angles must lie in [0, pi]")
        for name, arr in (("phi", phi), ("delta", delta)):
            if np.any(arr < -slack) or np.any(arr >= 2 * np.pi + slack):
                raise RangeError(f"{name} angles must lie in [0, 2*pi)")
        object.__setattr__(self, "theta", _freeze(theta))
        object.__setattr__(self, "phi", _freeze(phi))
        object.__setattr__(self, "delta", _freeze(delta))


@dataclass(frozen=True)
class DensityMatrix:
    """8x8 density operator: hermitian, unit trace, positive semidefinite."""

    matrix: np.ndarray

    def __post_init__(self):
        rho = np.array(self.matrix, dtype=np.complex128)
        if rho.shape != (8, 8):
            raise ShapeError(f"density matrix must be 8x8, got {rho.shape}")
        if not np.all(np.isfinite(rho)):
            raise ShapeError("density matrix contains non-finite entries")
        herm_defect = float(np.max(np.abs(rho - rho.conj().T)))
        if herm_defect > HERMITICITY_TOL:
            raise InvalidDensityError(
                f"matrix is not hermitian: max defect {herm_defect!r}"
            )
        trace = complex(np.trace(rho))
        if abs(trace - 1.0) > NORMALIZATION_TOL:
            raise InvalidDensityError(f"trace is {trace!r}, not 1")
        eigmin = float(np.linalg.eigvalsh(rho)[0])
        if eigmin < EIGENVALUE_FLOOR:
            raise InvalidDensityError(
                f"matrix is not positive semidefinite: min eigenvalue {eigmin!r}"
            )
        object.__setattr__(self, "matrix", _freeze(rho))

    def diagonal(self) -> np.ndarray:
        """Real diagonal (basis-outcome distribution)."""
        return self.matrix.diagonal().real.copy()


def density_from_pure(state: PureState) -> DensityMatrix:
    """Rank-one projector |psi><psi| of a pure state."""
    amps = state.amplitudes
    return DensityMatrix(np.outer(amps, amps.conj()))


def density_from_mixed(state: DiagonalMixedState) -> DensityMatrix:
    """Diagonal density matrix of a basis-state mixture."""
    return DensityMatrix(np.diag(state.weights.astype(np.complex128)))


def product_state(angles: ProductStateAngles) -> PureState:
    """Tensor product of three single-qubit states from Bloch angles.

    Each qubit contributes e^{i delta} (cos(theta/2) |0> +
    e^{i phi} sin(theta/2) |1>); the three factors combine by Kronecker
    product in player order A, B, C.
    """
    factors = []
    for theta, phi, delta in zip(angles.theta, angles.phi, angles.delta):
        phase = np.exp(1j * delta)
        factors.append(
            phase
            * np.array(
                [np.cos(theta / 2.0), np.exp(1j * phi) * np.sin(theta / 2.0)],
                dtype=np.complex128,
            )
        )
    amps = np.kron(np.kron(factors[0], factors[1]), factors[2])
    return PureState(amps)


def ghz(a: complex, b: complex) -> PureState:
    """Superposition a|000> + b|111>."""
    if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > NORMALIZATION_TOL:
        raise NormalizationError("|a|^2 + |b|^2 must equal 1")
    amps = np.zeros(8, dtype=np.complex128)
    amps[0] = a
    amps[7] = b
    return PureState(amps)


def w_state(c2: complex, c3: complex, c5: complex) -> PureState:
    """Superposition of the single-excitation states |001>, |010>, |100>."""
    amps = np.zeros(8, dtype=np.complex128)
    amps[1] = c2
    amps[2] = c3
    amps[4] = c5
    return PureState(amps)


def pd_state(c4: complex, c6: complex, c7: complex) -> PureState:
    """Superposition of the double-excitation states |011>, |101>, |110>."""
    amps = np.zeros(8, dtype=np.complex128)
    amps[3] = c4
    amps[5] = c6
    amps[6] = c7
    return PureState(amps)
