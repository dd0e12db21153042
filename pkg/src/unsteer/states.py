"""Two-qubit Bell-diagonal states: construction, spectra, separability,
geometric discord, and a product-preserving canonical form.

All operators are dense 2x2 or 4x4 complex arrays; everything here is a pure
function of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonUnitDirection, UnphysicalParams

ComplexMatrix = np.ndarray
"""Dense complex matrix (2x2 or 4x4)."""

DensityMatrix = np.ndarray
"""Hermitian, unit-trace, positive-semidefinite complex matrix."""

# Tolerances: Hermiticity/trace at 1e-12, eigenvalue floor at -1e-10 to absorb
# floating-point noise in user-supplied triples.
ATOL_MATRIX = 1e-12
ATOL_EIG = 1e-10

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


@dataclass(frozen=True)
class BellDiagonalParams:
    """Diagonal correlation triple (c1, c2, c3) of a Bell-diagonal state.

    A plain value: construction does not enforce physicality, because
    estimated triples (e.g. from a two-setting box) may legitimately fall
    outside the state tetrahedron.  Call validate() where physicality is
    required.
    """

    c1: float
    c2: float
    c3: float

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3], dtype=float)

    def validate(self, atol: float = ATOL_EIG) -> "BellDiagonalParams":
        """Return self if all four eigenvalues are >= -atol, else raise.

        Raises:
            UnphysicalParams: naming the offending eigenvalue.
        """
        lam = bd_eigenvalues(self)
        labels = ("lambda_00", "lambda_01", "lambda_10", "lambda_11")
        k = int(np.argmin(lam))
        if lam[k] < -atol:
            raise UnphysicalParams(
                f"triple ({self.c1}, {self.c2}, {self.c3}) is unphysical: "
                f"{labels[k]} = {lam[k]:.6g} < 0"
            )
        return self


@dataclass(frozen=True)
class Projector:
    """Rank-1 qubit projector onto outcome `outcome` of the observable n.sigma."""

    direction: np.ndarray  # unit 3-vector
    outcome: int  # 0 or 1; outcome b carries eigenvalue (-1)^b


@dataclass(frozen=True)
class CanonicalFormRecord:
    """Original and canonical triples plus the transform steps between them.

    transform steps are ("permute", (i, j, k)) — reorder components — and
    ("flip", (i, j)) — negate components i and j together.  Both preserve the
    product c1*c2*c3, mirroring what local unitaries can do to the
    correlation matrix.
    """

    original: BellDiagonalParams
    canonical: BellDiagonalParams
    transform: tuple


def bell_state(a: int, b: int) -> np.ndarray:
    """Bell state vector (|0,b> + (-1)^a |1, 1-b>)/sqrt(2).

    Args:
        a, b: bits selecting the phase and parity.

    Returns:
        Length-4 complex unit vector in the computational basis.
    """
    if a not in (0, 1) or b not in (0, 1):
        raise ValueError("a and b must be bits")
    vec = np.zeros(4, dtype=complex)
    vec[b] = 1.0
    vec[2 + (1 - b)] = (-1.0) ** a
    return vec / np.sqrt(2.0)


def bd_eigenvalues(params: BellDiagonalParams) -> np.ndarray:
    """Eigenvalues (lambda_00, lambda_01, lambda_10, lambda_11).

    lambda_ab = (1 + (-1)^a c1 - (-1)^(a+b) c2 + (-1)^b c3) / 4.  Unphysical
    triples simply yield negative entries; no validation here.
    """
    c1, c2, c3 = params.c1, params.c2, params.c3
    return np.array(
        [
            (1.0 + c1 - c2 + c3) / 4.0,
            (1.0 + c1 + c2 - c3) / 4.0,
            (1.0 - c1 + c2 + c3) / 4.0,
            (1.0 - c1 - c2 - c3) / 4.0,
        ]
    )


def bell_diagonal(params: BellDiagonalParams) -> DensityMatrix:
    """Density matrix (1/4)(I (x) I + sum_i c_i sigma_i (x) sigma_i).

    Raises:
        UnphysicalParams: when any eigenvalue is below -1e-10.
    """
    params.validate()
    rho = np.kron(IDENTITY_2, IDENTITY_2).astype(complex)
    for c, sigma in zip(params.as_array(), PAULIS):
        rho = rho + c * np.kron(sigma, sigma)
    return rho / 4.0


def geometric_discord(params: BellDiagonalParams) -> float:
    """Geometric discord (c2'^2 + c3'^2)/2 of the canonical form."""
    cf = canonical_form(params).canonical
    return (cf.c2 ** 2 + cf.c3 ** 2) / 2.0


def is_separable_bd(params: BellDiagonalParams) -> bool:
    """Separability of a physical Bell-diagonal state.

    True iff the largest eigenvalue is at most 1/2 (within 1e-12).

    Raises:
        UnphysicalParams: for unphysical triples.
    """
    params.validate()
    return float(bd_eigenvalues(params).max()) <= 0.5 + 1e-12


def canonical_form(params: BellDiagonalParams) -> CanonicalFormRecord:
    """Sort the triple by |c| descending and make c1, c2 >= 0.

    Only component permutations and paired sign flips are used, so the
    product c1*c2*c3 is preserved exactly; in particular the sign of c3' is
    fixed by the sign of the original product and is not forced negative.
    """
    values = [params.c1, params.c2, params.c3]
    steps: list[tuple] = []

    order = sorted(range(3), key=lambda i: (-abs(values[i]), i))
    if order != [0, 1, 2]:
        values = [values[i] for i in order]
        steps.append(("permute", tuple(order)))

    if values[0] < 0.0 and values[1] < 0.0:
        values[0], values[1] = -values[0], -values[1]
        steps.append(("flip", (0, 1)))
    elif values[0] < 0.0:
        values[0], values[2] = -values[0], -values[2]
        steps.append(("flip", (0, 2)))
    elif values[1] < 0.0:
        values[1], values[2] = -values[1], -values[2]
        steps.append(("flip", (1, 2)))

    canonical = BellDiagonalParams(*(v + 0.0 for v in values))
    return CanonicalFormRecord(params, canonical, tuple(steps))


def apply_canonical_transform(params: BellDiagonalParams, transform) -> BellDiagonalParams:
    """Replay canonical_form transform steps on a triple."""
    values = [params.c1, params.c2, params.c3]
    for kind, arg in transform:
        if kind == "permute":
            values = [values[i] for i in arg]
        elif kind == "flip":
            i, j = arg
            values[i], values[j] = -values[i], -values[j]
        else:
            raise ValueError(f"unknown transform step {kind!r}")
    return BellDiagonalParams(*(v + 0.0 for v in values))


def projector_matrix(p: Projector) -> ComplexMatrix:
    """(I + (-1)^outcome n.sigma)/2 for a unit direction n.

    Raises:
        NonUnitDirection: when |n| deviates from 1 by more than 1e-12.
    """
    direction = np.asarray(p.direction, dtype=float)
    if abs(np.linalg.norm(direction) - 1.0) > ATOL_MATRIX:
        raise NonUnitDirection(f"direction {direction} has norm {np.linalg.norm(direction)!r}")
    n_sigma = sum(n_i * sigma for n_i, sigma in zip(direction, PAULIS))
    return (IDENTITY_2 + (-1.0) ** (p.outcome % 2) * n_sigma) / 2.0


def state_from_bloch(r: np.ndarray) -> DensityMatrix:
    """Qubit state (I + r.sigma)/2; positive-semidefinite iff |r| <= 1."""
    r = np.asarray(r, dtype=float)
    return (IDENTITY_2 + sum(r_i * sigma for r_i, sigma in zip(r, PAULIS))) / 2.0


def partial_transpose(rho: ComplexMatrix, subsystem: int = 1) -> ComplexMatrix:
    """Partial transpose of a two-qubit operator over one subsystem."""
    r = np.asarray(rho).reshape(2, 2, 2, 2)
    if subsystem == 0:
        r = r.transpose(2, 1, 0, 3)
    elif subsystem == 1:
        r = r.transpose(0, 3, 2, 1)
    else:
        raise ValueError("subsystem must be 0 or 1")
    return r.reshape(4, 4)


def is_ppt(rho: ComplexMatrix, atol: float = ATOL_EIG) -> bool:
    """Whether the partial transpose of rho is positive semidefinite.

    For two qubits this decides separability.
    """
    eigs = np.linalg.eigvalsh(partial_transpose(rho))
    return float(eigs.min()) >= -atol


def assert_density_matrix(rho: ComplexMatrix, atol: float = ATOL_MATRIX) -> None:
    """Raise AssertionError unless rho is Hermitian, unit-trace, and PSD."""
    rho = np.asarray(rho)
    assert np.allclose(rho, rho.conj().T, atol=atol), "not Hermitian"
    assert abs(np.trace(rho).real - 1.0) <= atol, "trace differs from 1"
    assert float(np.linalg.eigvalsh(rho).min()) >= -ATOL_EIG, "negative eigenvalue"
