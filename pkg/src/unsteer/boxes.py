"""Joint probability boxes: construction from states and measurements,
deterministic response tables, assemblages, correlators, and the linear
steering witness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    InvalidBox,
    OutOfRange,
)
from .states import (
    BellDiagonalParams,
    ComplexMatrix,
    DensityMatrix,
    IDENTITY_2,
    Projector,
    projector_matrix,
)

ATOL_BOX = 1e-12

_AXES = np.eye(3)


@dataclass(frozen=True)
class MeasurementSet:
    """n projective qubit observables given as Bloch directions.

    Outcome b of a measurement along n-hat carries eigenvalue (-1)^b.  An
    outcome relabeling (b -> 1-b) is represented by negating the direction,
    so the flip convention is recorded in the set itself rather than assumed
    globally.
    """

    directions: np.ndarray  # shape (n, 3)

    def __post_init__(self):
        dirs = np.atleast_2d(np.asarray(self.directions, dtype=float))
        object.__setattr__(self, "directions", dirs)
        norms = np.linalg.norm(dirs, axis=1)
        if not np.allclose(norms, 1.0, atol=ATOL_BOX):
            raise DimensionMismatch(f"measurement directions must be unit vectors, norms {norms}")

    @property
    def n(self) -> int:
        return self.directions.shape[0]

    def is_mub(self, atol: float = 1e-9) -> bool:
        """Pairwise orthogonality of the directions (qubit MUB condition)."""
        g = self.directions @ self.directions.T
        return bool(np.all(np.abs(g - np.eye(self.n)) <= atol))


def pauli_axes(n: int) -> MeasurementSet:
    """The aligned Pauli set: x-hat, y-hat (and z-hat for n = 3)."""
    if n not in (2, 3):
        raise OutOfRange(f"n must be 2 or 3, got {n}")
    return MeasurementSet(_AXES[:n].copy())


@dataclass(frozen=True)
class Box:
    """Binary-outcome joint conditional probability table p[x][y][a][b].

    Invariants (checked by validate): entries in [0,1], each p(.|xy)
    normalized, and no-signaling in both directions, all at 1e-12.
    """

    n: int
    p: np.ndarray  # shape (n, n, 2, 2)

    def __post_init__(self):
        object.__setattr__(self, "p", np.asarray(self.p, dtype=float))

    def validate(self, atol: float = ATOL_BOX) -> "Box":
        """Return self if all Box invariants hold.

        Raises:
            InvalidBox: naming the violated constraint.
        """
        if self.n not in (2, 3):
            raise InvalidBox(f"settings_per_side must be 2 or 3, got {self.n}")
        if self.p.shape != (self.n, self.n, 2, 2):
            raise InvalidBox(f"table shape {self.p.shape} != {(self.n, self.n, 2, 2)}")
        if self.p.min() < -atol or self.p.max() > 1.0 + atol:
            raise InvalidBox(
                f"entry out of [0,1]: min {self.p.min():.3g}, max {self.p.max():.3g}"
            )
        totals = self.p.sum(axis=(2, 3))
        if not np.allclose(totals, 1.0, atol=atol):
            bad = np.unravel_index(np.argmax(np.abs(totals - 1.0)), totals.shape)
            raise InvalidBox(f"normalization violated at (x,y)={bad}: sum={totals[bad]!r}")
        alice = self.p.sum(axis=3)  # p(a|x) as seen with each y
        if np.abs(alice - alice[:, :1, :]).max() > atol:
            raise InvalidBox("no-signaling violated: Alice marginal depends on y")
        bob = self.p.sum(axis=2)  # p(b|y) as seen with each x
        if np.abs(bob - bob[:1, :, :]).max() > atol:
            raise InvalidBox("no-signaling violated: Bob marginal depends on x")
        return self

    def alice_marginal(self) -> np.ndarray:
        """p(a|x), shape (n, 2)."""
        return self.p.sum(axis=3)[:, 0, :]

    def bob_marginal(self) -> np.ndarray:
        """p(b|y), shape (n, 2)."""
        return self.p.sum(axis=2)[0, :, :]


@dataclass(frozen=True)
class Assemblage:
    """Unnormalized conditional Bob states sigma[a][x], shape (2, n, 2, 2)."""

    sigma: np.ndarray

    def validate(self, atol: float = ATOL_BOX) -> "Assemblage":
        sig = np.asarray(self.sigma)
        reduced = sig.sum(axis=0)  # (n, 2, 2)
        if np.abs(reduced - reduced[:1]).max() > atol:
            raise InvalidBox("assemblage signals: sum_a sigma(a|x) depends on x")
        traces = np.einsum("axii->x", sig).real
        if not np.allclose(traces, 1.0, atol=atol):
            raise InvalidBox(f"assemblage traces sum to {traces}, expected 1")
        for a in range(sig.shape[0]):
            for x in range(sig.shape[1]):
                if float(np.linalg.eigvalsh(sig[a, x]).min()) < -1e-10:
                    raise InvalidBox(f"sigma({a}|{x}) is not positive semidefinite")
        return self


def box_from_state(rho: DensityMatrix, alice: MeasurementSet, bob: MeasurementSet) -> Box:
    """Born-rule box p(ab|xy) = Tr[(Pi_a^x (x) Pi_b^y) rho].

    Raises:
        DimensionMismatch: when rho is not 4x4 or the sets differ in length.
    """
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise DimensionMismatch(f"state must be 4x4, got {rho.shape}")
    if alice.n != bob.n:
        raise DimensionMismatch(f"setting counts differ: {alice.n} vs {bob.n}")
    n = alice.n
    proj_a = [[projector_matrix(Projector(alice.directions[x], a)) for a in (0, 1)] for x in range(n)]
    proj_b = [[projector_matrix(Projector(bob.directions[y], b)) for b in (0, 1)] for y in range(n)]
    p = np.empty((n, n, 2, 2))
    for x in range(n):
        for y in range(n):
            for a in (0, 1):
                for b in (0, 1):
                    p[x, y, a, b] = np.trace(np.kron(proj_a[x][a], proj_b[y][b]) @ rho).real
    return Box(n, p).validate()


def white_noise_bb84(v: float) -> Box:
    """The white-noise family p(ab|xy) = (1 + (-1)^(a+b+xy) delta_xy V)/4, n = 2.

    Raises:
        OutOfRange: unless 0 <= V <= 1.
    """
    if not 0.0 <= v <= 1.0:
        raise OutOfRange(f"V must lie in [0, 1], got {v}")
    p = np.empty((2, 2, 2, 2))
    for x, y, a, b in itertools.product((0, 1), repeat=4):
        p[x, y, a, b] = (1.0 + (-1.0) ** (a + b + x * y) * (1.0 if x == y else 0.0) * v) / 4.0
    return Box(2, p)


@dataclass(frozen=True)
class DeterministicBox:
    """Affine single-party strategy a = alpha * x XOR beta (bits)."""

    alpha: int
    beta: int

    def table(self, n: int = 2) -> np.ndarray:
        return deterministic_box(self.alpha, self.beta, n)


def deterministic_box(alpha: int, beta: int, n: int = 2) -> np.ndarray:
    """Single-party response table P(a|x) = 1 iff a = alpha*x XOR beta.

    The affine parametrization covers exactly the four n = 2 deterministic
    boxes; the full 2^n-strategy enumeration used by the model search lives
    in deterministic_strategies.

    Returns:
        Array of shape (n, 2).
    """
    table = np.zeros((n, 2))
    for x in range(n):
        table[x, (alpha * x + beta) % 2] = 1.0
    return table


def deterministic_strategies(n: int) -> tuple[tuple[int, ...], ...]:
    """All 2^n deterministic outcome assignments x -> a, lexicographic."""
    return tuple(itertools.product((0, 1), repeat=n))


def strategy_table(strategy: tuple[int, ...]) -> np.ndarray:
    """Response table (n, 2) of a deterministic strategy."""
    n = len(strategy)
    table = np.zeros((n, 2))
    for x, a in enumerate(strategy):
        table[x, a] = 1.0
    return table


def assemblage_from_state(rho: DensityMatrix, alice: MeasurementSet) -> Assemblage:
    """sigma(a|x) = Tr_A[(Pi_a^x (x) I) rho].

    Raises:
        DimensionMismatch: when rho is not 4x4.
    """
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise DimensionMismatch(f"state must be 4x4, got {rho.shape}")
    n = alice.n
    sigma = np.empty((2, n, 2, 2), dtype=complex)
    for x in range(n):
        for a in (0, 1):
            op = np.kron(projector_matrix(Projector(alice.directions[x], a)), IDENTITY_2) @ rho
            sigma[a, x] = op.reshape(2, 2, 2, 2).trace(axis1=0, axis2=2)
    return Assemblage(sigma).validate()


def correlator(box: Box, x: int, y: int) -> float:
    """Two-point correlator sum_ab (-1)^(a+b) p(ab|xy).

    Raises:
        IndexOutOfRange: for invalid setting indices.
    """
    if not (0 <= x < box.n and 0 <= y < box.n):
        raise IndexOutOfRange(f"(x, y) = ({x}, {y}) outside n = {box.n}")
    signs = np.array([[1.0, -1.0], [-1.0, 1.0]])
    return float((box.p[x, y] * signs).sum())


def correlator_matrix(box: Box) -> np.ndarray:
    """All correlators as an (n, n) matrix."""
    return np.array([[correlator(box, x, y) for y in range(box.n)] for x in range(box.n)])


def steering_functional(box: Box, n: int) -> float:
    """(1/sqrt(n)) sum_k |<A_k B_k>| — the linear witness maximized over Bob
    outcome relabelings; a value above 1 certifies steerability.
    """
    if box.n != n:
        raise DimensionMismatch(f"box has {box.n} settings per side, asked for n = {n}")
    diag = [abs(correlator(box, k, k)) for k in range(n)]
    return float(sum(diag) / np.sqrt(n))


def estimate_params_from_box(box: Box) -> BellDiagonalParams:
    """Read (c1, c2[, c3]) off the diagonal correlators of an aligned-Pauli box.

    For n = 2 the third component is unobserved and reported as 0; the
    returned triple is deliberately unvalidated (it may be unphysical even
    when the source state was physical).
    """
    c = [correlator(box, i, i) for i in range(box.n)]
    while len(c) < 3:
        c.append(0.0)
    return BellDiagonalParams(c[0], c[1], c[2])


def box_to_json_dict(box: Box) -> dict:
    """JSON form {"n": ..., "p": nested lists indexed [x][y][a][b]}."""
    return {"n": box.n, "p": box.p.tolist()}


def box_from_json_dict(data: dict) -> Box:
    """Parse and fully validate a box from its JSON form.

    Raises:
        InvalidBox: with a diagnostic naming the violated constraint.
    """
    if not isinstance(data, dict) or "n" not in data or "p" not in data:
        raise InvalidBox('box JSON must be an object with keys "n" and "p"')
    n = data["n"]
    if n not in (2, 3):
        raise InvalidBox(f'"n" must be 2 or 3, got {n!r}')
    try:
        p = np.asarray(data["p"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidBox(f'"p" is not a numeric array: {exc}') from exc
    if p.shape != (n, n, 2, 2):
        raise InvalidBox(f'"p" has shape {p.shape}, expected {(n, n, 2, 2)}')
    return Box(int(n), p).validate()
