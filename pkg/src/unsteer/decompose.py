"""Convex splits, hidden-state models, and bounded-dimension simulability.

This module carries the package's core mathematics: steering cost and
Schroedinger strength of the white-noise family, canonical two- and
three-setting splits of Bell-diagonal states and their boxes, the explicit
d=2 and d=4 hidden-state model constructions, and an enumerative feasibility
search that certifies when a box cannot be simulated classically at a given
hidden-variable dimension.

Soundness policy of the search: a case is rejected only with a reason that is
an actual proof — a nonzero linear residual, a unique solution violating the
weight/Bloch cones, or a model-universal obstruction derived from the
correlator matrix (rank, diagonal norm, or row norm).  Whenever a case cannot
be proved infeasible and no model is found, the trace says so and downstream
certification returns UNDECIDED rather than overclaiming.

Three facts the search leans on (all exercised by the test suite):

* With uniform Alice marginals, the correlator matrix of any d-class model
  has rank at most d - 1: the class correlation vectors sum to zero, which
  collapses one of the d dyads.
* With orthonormal Bob directions, any model of any dimension satisfies
  sum_y C(y, y)^2 <= 1 (Cauchy-Schwarz over the hidden variable).
* At the top dimension d = 2^n every model, stochastic Alice included,
  coarse-grains onto deterministic Alice classes (Bloch vectors mix
  convexly), so the all-distinct assignment alone decides feasibility.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .boxes import (
    Box,
    MeasurementSet,
    box_from_state,
    correlator_matrix,
    deterministic_strategies,
    pauli_axes,
    steering_functional,
    strategy_table,
    white_noise_bb84,
)
from .errors import (
    DimensionMismatch,
    InvalidModel,
    OutOfRange,
    PhaseDomainError,
    PreconditionViolated,
)
from .states import BellDiagonalParams, bell_diagonal, canonical_form

SQRT2 = float(np.sqrt(2.0))

WEIGHT_SLACK = 1e-10
BLOCH_SLACK = 1e-10
DEFAULT_TOL = 1e-9

WITNESSED_STEERABLE = "WITNESSED_STEERABLE"
SUPERUNSTEERABLE = "SUPERUNSTEERABLE"
CLASSICAL_AT_DIMENSION = "CLASSICAL_AT_DIMENSION"
UNDECIDED = "UNDECIDED"

_SOUND_CASE_REASONS = frozenset(
    {"reconstruction_residual", "negative_weight", "bloch_norm_exceeds_weight"}
)

_BETA_01 = BellDiagonalParams(1.0, 1.0, -1.0)


@dataclass(frozen=True)
class ConvexSplit:
    """weight * steerable_part + (1 - weight) * unsteerable_part.

    Parts are either both boxes or both 4x4 density matrices; for
    state-level splits the correlation triples of the parts are carried
    alongside the matrices.
    """

    weight: float
    steerable_part: object
    unsteerable_part: object
    steerable_params: BellDiagonalParams | None = None
    unsteerable_params: BellDiagonalParams | None = None

    def reconstruct(self):
        """The convex combination, in the same representation as the parts."""
        w = self.weight
        if isinstance(self.steerable_part, Box):
            p = w * self.steerable_part.p + (1.0 - w) * self.unsteerable_part.p
            return Box(self.steerable_part.n, p)
        return w * np.asarray(self.steerable_part) + (1.0 - w) * np.asarray(
            self.unsteerable_part
        )


@dataclass(frozen=True)
class LhvLhsModel:
    """Shared randomness lambda, Alice response tables, Bob hidden qubits.

    weights: (d,) nonnegative, summing to 1.
    alice_tables: (d, n, 2) row-stochastic P(a | x, lambda).
    bob_states: (d, 3) Bloch vectors of norm <= 1.
    bob_directions: the n Bob observables the model is expressed in.
    """

    dimension: int
    weights: np.ndarray
    alice_tables: np.ndarray
    bob_states: np.ndarray
    bob_directions: MeasurementSet

    def reconstruct_box(self) -> Box:
        """p(ab|xy) = sum_l w_l P(a|x,l) (1 + (-1)^b <r_l, dir_y>) / 2."""
        dirs = self.bob_directions.directions
        overlaps = np.asarray(self.bob_states, dtype=float) @ dirs.T  # (d, n)
        bob = np.stack([(1.0 + overlaps) / 2.0, (1.0 - overlaps) / 2.0], axis=-1)
        p = np.einsum(
            "l,lxa,lyb->xyab",
            np.asarray(self.weights, dtype=float),
            np.asarray(self.alice_tables, dtype=float),
            bob,
        )
        return Box(self.bob_directions.n, p)

    def to_json_dict(self) -> dict:
        return {
            "dimension": int(self.dimension),
            "weights": np.asarray(self.weights).tolist(),
            "alice_tables": np.asarray(self.alice_tables).tolist(),
            "bob_states": np.asarray(self.bob_states).tolist(),
            "bob_directions": self.bob_directions.directions.tolist(),
        }


@dataclass(frozen=True)
class InfeasibilityTrace:
    """Per-case rejection record of a failed bounded search.

    sound: every listed rejection is a proof.
    exhaustive: the analysis covers *all* models at this dimension, not just
    the enumerated cases; only a sound and exhaustive trace may be read as a
    certificate of infeasibility.
    """

    dimension: int
    cases: tuple[tuple[str, str], ...]
    sound: bool
    exhaustive: bool

    def to_json_list(self) -> list:
        return [{"case": c, "violated": v} for c, v in self.cases]


@dataclass(frozen=True)
class Certificate:
    """Outcome of certify_quantumness."""

    verdict: str
    d_A: int
    functional: float
    model: LhvLhsModel | None
    trace: tuple[tuple[str, str], ...]

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "d_A": int(self.d_A),
            "functional": float(self.functional),
            "model": self.model.to_json_dict() if self.model is not None else None,
            "trace": [{"case": c, "violated": v} for c, v in self.trace],
        }


# ---------------------------------------------------------------------------
# White-noise family
# ---------------------------------------------------------------------------


def steering_cost_bb84(v: float) -> float:
    """Minimal extremal-steerable weight, max(0, (sqrt(2) V - 1) / (sqrt(2) - 1)).

    Raises:
        OutOfRange: unless 0 <= V <= 1.
    """
    if not 0.0 <= v <= 1.0:
        raise OutOfRange(f"V must lie in [0, 1], got {v}")
    return max(0.0, (SQRT2 * v - 1.0) / (SQRT2 - 1.0))


def steering_cost_split_bb84(v: float) -> ConvexSplit:
    """The cost-optimal split: the V=1 box against the V=1/sqrt(2) box."""
    return ConvexSplit(
        steering_cost_bb84(v), white_noise_bb84(1.0), white_noise_bb84(1.0 / SQRT2)
    )


def schrodinger_strength_bb84(v: float) -> tuple[float, ConvexSplit]:
    """Maximal extremal-steerable weight V, with the split against white noise.

    Raises:
        OutOfRange: unless 0 <= V <= 1.
    """
    if not 0.0 <= v <= 1.0:
        raise OutOfRange(f"V must lie in [0, 1], got {v}")
    return v, ConvexSplit(v, white_noise_bb84(1.0), white_noise_bb84(0.0))


# ---------------------------------------------------------------------------
# Canonical Bell-diagonal splits
# ---------------------------------------------------------------------------


def _require_canonical(params: BellDiagonalParams, atol: float = 1e-12) -> None:
    c1, c2, c3 = params.c1, params.c2, params.c3
    if c1 < -atol or c2 < -atol:
        raise PreconditionViolated(
            f"canonical triple needs c1, c2 >= 0, got ({c1}, {c2}, {c3})"
        )
    if not (c1 >= c2 - atol and c2 >= abs(c3) - atol):
        raise PreconditionViolated(
            f"canonical triple needs c1 >= c2 >= |c3|, got ({c1}, {c2}, {c3})"
        )


def schrodinger_strength_bd(params: BellDiagonalParams, n: int) -> float:
    """Schroedinger strength |c2'| (n=2) or |c3'| (n=3) of the canonical form.

    Raises:
        UnphysicalParams: for unphysical triples.
        OutOfRange: for n outside {2, 3}.
    """
    params.validate()
    if n not in (2, 3):
        raise OutOfRange(f"n must be 2 or 3, got {n}")
    cf = canonical_form(params).canonical
    return abs(cf.c2) if n == 2 else abs(cf.c3)


def two_set_remainder(params: BellDiagonalParams) -> BellDiagonalParams:
    """Separable remainder triple of the two-setting split."""
    c1, c2, c3 = params.c1, params.c2, params.c3
    if c2 >= 1.0:
        return BellDiagonalParams(0.0, 0.0, 0.0)
    return BellDiagonalParams((c1 - c2) / (1.0 - c2), 0.0, (c2 + c3) / (1.0 - c2))


def three_set_remainder(params: BellDiagonalParams) -> BellDiagonalParams:
    """Separable remainder triple of the three-setting split."""
    c1, c2, c3 = params.c1, params.c2, params.c3
    if c3 <= -1.0:
        return BellDiagonalParams(0.0, 0.0, 0.0)
    return BellDiagonalParams((c1 + c3) / (1.0 + c3), (c2 + c3) / (1.0 + c3), 0.0)


def canonical_split_2set(params: BellDiagonalParams) -> ConvexSplit:
    """tau = c2 |beta_01><beta_01| + (1 - c2) rho_sep for canonical triples.

    Raises:
        PreconditionViolated: for non-canonical input.
        UnphysicalParams: for unphysical input.
    """
    _require_canonical(params)
    params.validate()
    rem = two_set_remainder(params)
    return ConvexSplit(
        params.c2,
        bell_diagonal(_BETA_01),
        bell_diagonal(rem),
        steerable_params=_BETA_01,
        unsteerable_params=rem,
    )


def canonical_split_3set(params: BellDiagonalParams) -> ConvexSplit:
    """tau = |c3| |beta_01><beta_01| + (1 - |c3|) rho_sep for canonical c3 <= 0.

    Raises:
        PreconditionViolated: for non-canonical input, or for c3 > 0 where
        the construction's remainder stops being separable.
        UnphysicalParams: for unphysical input.
    """
    _require_canonical(params)
    if params.c3 > 1e-12:
        raise PreconditionViolated(
            f"three-setting split requires c3 <= 0, got c3 = {params.c3}"
        )
    params.validate()
    rem = three_set_remainder(params)
    return ConvexSplit(
        abs(min(params.c3, 0.0)),
        bell_diagonal(_BETA_01),
        bell_diagonal(rem),
        steerable_params=_BETA_01,
        unsteerable_params=rem,
    )


def canonical_box_split(params: BellDiagonalParams, n: int) -> ConvexSplit:
    """Box-level split of the aligned-Pauli box of a canonical triple.

    Both parts are the boxes of the state-split parts under the same aligned
    measurement axes, so the convex combination reproduces the target box
    entrywise (the Born rule is linear in the state).

    Raises:
        OutOfRange: for n outside {2, 3}; preconditions as in the state splits.
    """
    if n == 2:
        state_split = canonical_split_2set(params)
    elif n == 3:
        state_split = canonical_split_3set(params)
    else:
        raise OutOfRange(f"n must be 2 or 3, got {n}")
    axes = pauli_axes(n)
    return ConvexSplit(
        state_split.weight,
        box_from_state(state_split.steerable_part, axes, axes),
        box_from_state(state_split.unsteerable_part, axes, axes),
        steerable_params=state_split.steerable_params,
        unsteerable_params=state_split.unsteerable_params,
    )


# ---------------------------------------------------------------------------
# Explicit hidden-state models
# ---------------------------------------------------------------------------


def build_lhs_model_2set(params: BellDiagonalParams) -> LhvLhsModel:
    """Two-state model reproducing the box of the two-setting remainder.

    lambda in {0, 1} with weights 1/2: Alice answers lambda deterministically
    on x = 0 and uniformly on x = 1; Bob holds the pure qubit with Bloch
    vector ((-1)^lambda c1', 0, sqrt(1 - c1'^2)) where c1' = (c1-c2)/(1-c2).

    Raises:
        PreconditionViolated: for non-canonical input.
    """
    _require_canonical(params)
    params.validate()
    c1p = two_set_remainder(params).c1
    z = float(np.sqrt(max(0.0, 1.0 - c1p * c1p)))
    alice = np.array(
        [
            [[1.0, 0.0], [0.5, 0.5]],
            [[0.0, 1.0], [0.5, 0.5]],
        ]
    )
    bob = np.array([[c1p, 0.0, z], [-c1p, 0.0, z]])
    return LhvLhsModel(2, np.array([0.5, 0.5]), alice, bob, pauli_axes(2))


def three_set_model_parameters(params: BellDiagonalParams) -> dict:
    """Geometry of the four-state model: d1, d2, f, and the phases.

    f = sqrt((1-c1)(1+c1+2 c3) - (c2+c3)^2) / (1+c3), computed in the
    algebraically identical pure-state form sqrt(1 - d1^2 - d2^2); the four
    phases are (phi0, pi+phi0, pi-phi0, -phi0) with
    sin(phi0) = (c2+c3) / sqrt((1-c1)(1+c1+2 c3)).

    Raises:
        PhaseDomainError: when the arcsine argument exceeds 1 in magnitude.
    """
    rem = three_set_remainder(params)
    d1, d2 = rem.c1, rem.c2
    denom_sq = (1.0 - params.c1) * (1.0 + params.c1 + 2.0 * params.c3)
    numer = params.c2 + params.c3
    if denom_sq > 1e-28:
        ratio = numer / float(np.sqrt(denom_sq))
        if abs(ratio) > 1.0 + 1e-12:
            raise PhaseDomainError(
                f"arcsine argument {ratio:.6g} out of [-1, 1] for triple "
                f"({params.c1}, {params.c2}, {params.c3})"
            )
        phi0 = float(np.arcsin(np.clip(ratio, -1.0, 1.0)))
    else:
        phi0 = 0.0
    f = float(np.sqrt(max(0.0, 1.0 - d1 * d1 - d2 * d2)))
    pi = float(np.pi)
    return {
        "d1": d1,
        "d2": d2,
        "f": f,
        "phi0": phi0,
        "phases": (phi0, pi + phi0, pi - phi0, -phi0),
    }


def build_lhs_model_3set(params: BellDiagonalParams) -> LhvLhsModel:
    """Four-state model reproducing the box of the three-setting remainder.

    lambda in {0..3} with weights 1/4: Alice answers the two bits of lambda
    deterministically on x in {0, 1} and uniformly on x = 2; Bob holds pure
    qubits with Bloch vectors (+-d1, +-d2, -+f) that average to zero.

    Raises:
        PreconditionViolated: for non-canonical input or c3 > 0.
        PhaseDomainError: propagated from the phase geometry.
    """
    _require_canonical(params)
    if params.c3 > 1e-12:
        raise PreconditionViolated(
            f"four-state model requires c3 <= 0, got c3 = {params.c3}"
        )
    params.validate()
    geo = three_set_model_parameters(params)
    d1, d2, f = geo["d1"], geo["d2"], geo["f"]
    alice = np.empty((4, 3, 2))
    for lam, (bit0, bit1) in enumerate(((0, 0), (0, 1), (1, 0), (1, 1))):
        alice[lam, 0] = (1.0 - bit0, float(bit0))
        alice[lam, 1] = (1.0 - bit1, float(bit1))
        alice[lam, 2] = (0.5, 0.5)
    bob = np.array(
        [
            [d1, d2, -f],
            [d1, -d2, f],
            [-d1, d2, f],
            [-d1, -d2, -f],
        ]
    )
    return LhvLhsModel(4, np.full(4, 0.25), alice, bob, pauli_axes(3))


def verify_lhv_lhs(model: LhvLhsModel, target: Box, tol: float) -> tuple[bool, float]:
    """Structural validation plus entrywise reconstruction check.

    Returns:
        (reconstructs within tol, max entrywise deviation).

    Raises:
        InvalidModel: for structural defects (negative weight, non-stochastic
        table, Bloch norm above 1) — distinct from a mere mismatch.
        DimensionMismatch: when the model and target setting counts differ.
    """
    w = np.asarray(model.weights, dtype=float)
    if w.min() < -WEIGHT_SLACK:
        raise InvalidModel(f"negative weight {w.min():.3g}")
    if abs(w.sum() - 1.0) > 1e-9:
        raise InvalidModel(f"weights sum to {w.sum()!r}, expected 1")
    tables = np.asarray(model.alice_tables, dtype=float)
    if tables.min() < -WEIGHT_SLACK:
        raise InvalidModel("negative response probability in an Alice table")
    if np.abs(tables.sum(axis=2) - 1.0).max() > 1e-9:
        raise InvalidModel("non-stochastic Alice response table")
    norms = np.linalg.norm(np.asarray(model.bob_states, dtype=float), axis=1)
    if norms.max() > 1.0 + BLOCH_SLACK:
        raise InvalidModel(f"Bloch norm {norms.max():.6g} exceeds 1")
    if model.bob_directions.n != target.n:
        raise DimensionMismatch(
            f"model has {model.bob_directions.n} settings, target has {target.n}"
        )
    deviation = float(np.abs(model.reconstruct_box().p - target.p).max())
    return deviation <= tol, deviation


# ---------------------------------------------------------------------------
# Bounded-dimension feasibility search
# ---------------------------------------------------------------------------


def _set_partitions(items: tuple, k: int):
    """Partitions of `items` into exactly k nonempty classes, emitted in
    restricted-growth-string order (deterministic; classes ordered by first
    occurrence)."""
    m = len(items)
    if k < 1 or k > m:
        return
    codes = [0] * m

    def rec(i: int, used: int):
        if i == m:
            if used == k:
                classes: list[list] = [[] for _ in range(k)]
                for item, code in zip(items, codes):
                    classes[code].append(item)
                yield tuple(tuple(c) for c in classes)
            return
        for code in range(min(used + 1, k)):
            codes[i] = code
            yield from rec(i + 1, max(used, code + 1))

    yield from rec(1, 1)


def _strategy_name(strategy: tuple[int, ...]) -> str:
    return "".join(str(bit) for bit in strategy)


def _phase1_label(assignment) -> str:
    return "deterministic:" + "+".join(_strategy_name(s) for s in assignment)


def _phase2_label(partition) -> str:
    return "grouped:" + "|".join(
        ",".join(_strategy_name(s) for s in cls) for cls in partition
    )


class _SearchContext:
    """Shared precomputation for one search call."""

    def __init__(self, box: Box, bob_dirs: MeasurementSet, tol: float):
        self.box = box
        self.n = box.n
        self.dirs = bob_dirs
        self.tol = tol
        self.strategies = deterministic_strategies(self.n)
        self.C = correlator_matrix(box)
        self.svals = np.linalg.svd(self.C, compute_uv=False)
        self.uniform_alice = np.abs(box.alice_marginal() - 0.5).max() <= 1e-9
        self.uniform_bob = np.abs(box.bob_marginal() - 0.5).max() <= 1e-9
        self.orthonormal = bob_dirs.is_mub()
        self.diag_norm = float(np.sqrt((np.diag(self.C) ** 2).sum()))
        # Per-strategy coefficient blocks (columns: q_l, then s_l in R^3) so
        # that a case's system matrix is just a column concatenation.
        rows = 4 * self.n * self.n + 1
        self.rows = rows
        d_mat = bob_dirs.directions
        self.blocks: dict[tuple, np.ndarray] = {}
        for strat in self.strategies:
            block = np.zeros((rows, 4))
            r = 0
            for x in range(self.n):
                for y in range(self.n):
                    for a in (0, 1):
                        for b in (0, 1):
                            if strat[x] == a:
                                block[r, 0] = 0.5
                                block[r, 1:4] = 0.5 * (-1.0) ** b * d_mat[y]
                            r += 1
            block[rows - 1, 0] = 1.0  # weights sum to 1
            self.blocks[strat] = block
        self.rhs = np.concatenate([box.p.reshape(-1), [1.0]])

    # -- model-universal obstructions ---------------------------------------

    def rank_obstruction(self, d: int) -> bool:
        """Uniform Alice marginals force rank(C) <= d - 1 for any d-class model."""
        if not self.uniform_alice or d > self.n:
            return False
        return bool(self.svals[d - 1] > 16.0 * self.tol)

    def norm_obstruction(self) -> bool:
        """With orthonormal directions every model obeys sum_y C(y,y)^2 <= 1."""
        return self.orthonormal and self.diag_norm > 1.0 + 8.0 * self.tol

    def row_norm_obstruction(self, d: int) -> bool:
        """At d <= 2 with uniform Alice marginals every row of C has 2-norm
        <= 1: the two class correlation functions are opposite, so each is
        bounded by min(Q_0, Q_1) <= 1/2, and the Bob states differ by at
        most 2."""
        if not self.uniform_alice or d > 2:
            return False
        return float(np.linalg.norm(self.C, axis=1).max()) > 1.0 + 8.0 * self.tol

    def universal_reason(self, d: int) -> str | None:
        if self.norm_obstruction():
            return "diagonal_correlator_norm_exceeds_one"
        if self.rank_obstruction(d):
            return "correlator_rank_exceeds_dimension"
        if self.row_norm_obstruction(d):
            return "correlator_row_norm_exceeds_one"
        return None

    # -- per-case solving ----------------------------------------------------

    def solve_phase1(self, assignment) -> tuple[LhvLhsModel | None, str]:
        """Least-squares solve of one deterministic-Alice slot assignment.

        Returns (model, "") when feasible, else (None, reason); a reason of
        "unresolved" is not a sound rejection, the others are.
        """
        d = len(assignment)
        a_mat = np.concatenate(
            [self.blocks[s][:, :1] for s in assignment]
            + [self.blocks[s][:, 1:] for s in assignment],
            axis=1,
        )
        z, _, rank, _ = np.linalg.lstsq(a_mat, self.rhs, rcond=None)
        residual = float(np.abs(a_mat @ z - self.rhs).max())
        if residual > self.tol:
            return None, "reconstruction_residual"
        model = self._model_from_solution(assignment, z)
        if model is not None:
            return model, ""
        if rank == 4 * d:
            # The solution is unique, so its cone violation is a proof.
            q = z[:d]
            s_norms = np.linalg.norm(z[d:].reshape(d, 3), axis=1)
            if q.min() < -WEIGHT_SLACK:
                return None, "negative_weight"
            if (s_norms - q).max() > BLOCH_SLACK:
                return None, "bloch_norm_exceeds_weight"
            return None, "unresolved"
        refined = self._refine(assignment, a_mat, z)
        if refined is not None:
            return refined, ""
        return None, "unresolved"

    def _model_from_solution(self, assignment, z) -> LhvLhsModel | None:
        d = len(assignment)
        q = z[:d].copy()
        s = z[d:].reshape(d, 3)
        if q.min() < -WEIGHT_SLACK:
            return None
        norms = np.linalg.norm(s, axis=1)
        if np.any(norms > q + BLOCH_SLACK):
            return None
        q = np.clip(q, 0.0, None)
        states = np.zeros((d, 3))
        for i in range(d):
            if q[i] > 1e-14:
                r = s[i] / q[i]
                nr = float(np.linalg.norm(r))
                states[i] = r / nr if nr > 1.0 else r
        tables = np.stack([strategy_table(strat) for strat in assignment])
        model = LhvLhsModel(d, q / q.sum(), tables, states, self.dirs)
        ok, _ = verify_lhv_lhs(model, self.box, self.tol)
        return model if ok else None

    def _refine(self, assignment, a_mat, z0) -> LhvLhsModel | None:
        """Minimize the worst cone violation over the solution affine space.
        Can only ever *find* models, never prove their absence."""
        d = len(assignment)
        _, sv, vt = np.linalg.svd(a_mat)
        rank = int(np.sum(sv > 1e-12 * max(float(sv[0]), 1.0)))
        null = vt[rank:]
        k = null.shape[0]
        if k == 0:
            return None

        def unpack(x):
            z = z0 + null.T @ x[:k]
            return z[:d], z[d:].reshape(d, 3), x[k]

        constraints = []
        for i in range(d):
            def weight_margin(x, i=i):
                q, _, t = unpack(x)
                return q[i] + t

            def norm_margin(x, i=i):
                q, s, t = unpack(x)
                return t + q[i] - np.sqrt(s[i] @ s[i] + 1e-18)

            constraints.append({"type": "ineq", "fun": weight_margin})
            constraints.append({"type": "ineq", "fun": norm_margin})

        q0 = z0[:d]
        s0 = z0[d:].reshape(d, 3)
        start_violation = max(
            0.0,
            float(np.max(-q0)),
            float(np.max(np.linalg.norm(s0, axis=1) - q0)),
        )
        x0 = np.zeros(k + 1)
        x0[k] = start_violation + 1e-6
        result = optimize.minimize(
            lambda x: x[k],
            x0,
            constraints=constraints,
            method="SLSQP",
            options={"maxiter": 200, "ftol": 1e-14},
        )
        z = z0 + null.T @ result.x[:k]
        return self._model_from_solution(assignment, z)

    # -- constructive feasibility lanes --------------------------------------

    def construct_product(self) -> LhvLhsModel | None:
        """d = 1: the box can only be the product of its own marginals."""
        alice = self.box.alice_marginal()
        bob = self.box.bob_marginal()
        bias = bob[:, 0] - bob[:, 1]
        r = np.linalg.lstsq(self.dirs.directions, bias, rcond=None)[0]
        nr = float(np.linalg.norm(r))
        if nr > 1.0:
            if nr > 1.0 + BLOCH_SLACK:
                return None
            r = r / nr
        model = LhvLhsModel(
            1, np.array([1.0]), alice[None, :, :], r[None, :], self.dirs
        )
        ok, _ = verify_lhv_lhs(model, self.box, self.tol)
        return model if ok else None

    def product_failure_reason(self) -> str | None:
        """Sound reason why no single-class model exists, when one is available.

        The product form is forced: any one-class model within tol of the box
        has its Alice table pinned to the Alice marginal and its Bob statistics
        pinned to the Bob marginal (both to a small multiple of tol), so a
        large enough defect in the forced candidate is a proof.  Returns None
        inside the grey zone where nothing sound can be said.
        """
        alice = self.box.alice_marginal()
        bob = self.box.bob_marginal()
        bias = bob[:, 0] - bob[:, 1]
        r = np.linalg.lstsq(self.dirs.directions, bias, rcond=None)[0]
        residual = float(np.abs(self.dirs.directions @ r - bias).max())
        if residual > 4.0 * self.tol:
            return "reconstruction_residual"
        if float(np.linalg.norm(r)) > 1.0 + BLOCH_SLACK + 8.0 * self.tol:
            return "bloch_norm_exceeds_weight"
        product = np.einsum("xa,yb->xyab", alice, bob)
        if float(np.abs(product - self.box.p).max()) > 5.0 * self.tol:
            return "reconstruction_residual"
        return None

    def construct_two_class(self) -> LhvLhsModel | None:
        """Rank-1 boxes with uniform marginals: split by the dominant
        setting's answer and mirror the Bob states across the origin."""
        if not (self.uniform_alice and self.uniform_bob):
            return None
        if self.svals.shape[0] > 1 and self.svals[1] > 16.0 * self.tol:
            return None
        if self.svals[0] <= self.tol:
            e_a = np.zeros(self.n)
            target = np.zeros(self.n)
        else:
            uu, ss, vv = np.linalg.svd(self.C)
            u = ss[0] * uu[:, 0]
            v = vv[0]
            alpha = float(np.abs(u).max())
            e_a = u / alpha
            if e_a[int(np.argmax(np.abs(u)))] < 0.0:
                e_a, v = -e_a, -v
            target = alpha * v
        r = np.linalg.lstsq(self.dirs.directions, target, rcond=None)[0]
        if float(np.linalg.norm(r)) > 1.0 + BLOCH_SLACK:
            return None
        table_a = np.stack([(1.0 + e_a) / 2.0, (1.0 - e_a) / 2.0], axis=-1)
        table_b = np.stack([(1.0 - e_a) / 2.0, (1.0 + e_a) / 2.0], axis=-1)
        model = LhvLhsModel(
            2,
            np.array([0.5, 0.5]),
            np.stack([table_a, table_b]),
            np.stack([r, -r]),
            self.dirs,
        )
        ok, _ = verify_lhv_lhs(model, self.box, self.tol)
        return model if ok else None


def search_lhs_bounded(
    box: Box, bob_dirs: MeasurementSet, d: int, tol: float = DEFAULT_TOL
) -> LhvLhsModel | InfeasibilityTrace:
    """Search for a hidden-state model of dimension at most d.

    Phase 1 assigns deterministic Alice strategies to the d slots (repeats
    allowed) and solves each assignment's linear system in the variables
    q_l = p(l) and s_l = p(l) * (Bloch vector of Bob's hidden state);
    feasibility additionally needs q_l >= 0 and |s_l| <= q_l.  Phase 2 covers
    stochastic Alice responses by grouping d' <= 2^n deterministic strategies
    into d classes sharing a Bob state each; those cases are retired by
    model-universal correlator obstructions where available, and otherwise
    reported unresolved.

    Returns:
        A verified LhvLhsModel, or an InfeasibilityTrace listing every case
        with the constraint it violates.  The trace's sound/exhaustive flags
        state exactly how much the rejection proves; boxes with non-uniform
        Alice marginals never earn an exhaustive trace at 1 < d < 2^n.

    Raises:
        InvalidBox, DimensionMismatch, OutOfRange: on malformed input.
    """
    box.validate()
    if bob_dirs.n != box.n:
        raise DimensionMismatch(
            f"box has {box.n} settings, directions have {bob_dirs.n}"
        )
    d_top = 2 ** box.n
    if not 1 <= d <= d_top:
        raise OutOfRange(f"d must lie in [1, {d_top}], got {d}")
    ctx = _SearchContext(box, bob_dirs, tol)
    universal = ctx.universal_reason(d)

    # Constructive fast lanes (every returned model has been re-verified).
    if universal is None:
        if d == 1:
            model = ctx.construct_product()
            if model is not None:
                return model
        else:
            model = ctx.construct_two_class()
            if model is not None:
                return model

    product_reason = (
        ctx.product_failure_reason() if d == 1 and universal is None else None
    )

    cases: list[tuple[tuple, str, str]] = []
    unresolved = False
    # At the top dimension the all-distinct assignment is fully general: a
    # sound rejection there retires every remaining case a fortiori.
    top_reason: str | None = None

    assignments = list(itertools.combinations_with_replacement(ctx.strategies, d))
    if d == d_top:
        assignments.sort(key=lambda a: len(set(a)) != d)
    for assignment in assignments:
        if universal is not None:
            reason = universal
        elif top_reason is not None:
            reason = top_reason
        else:
            model, reason = ctx.solve_phase1(assignment)
            if model is not None:
                return model
            if reason == "unresolved" and product_reason is not None:
                reason = product_reason
            if (
                d == d_top
                and len(set(assignment)) == d
                and reason in _SOUND_CASE_REASONS
            ):
                top_reason = reason
        if reason == "unresolved":
            unresolved = True
        cases.append(((0, assignment), _phase1_label(assignment), reason))

    for d_prime in range(d + 1, d_top + 1):
        for subset in itertools.combinations(ctx.strategies, d_prime):
            for partition in _set_partitions(subset, d):
                if universal is not None:
                    reason = universal
                elif top_reason is not None:
                    reason = top_reason
                elif product_reason is not None:
                    reason = product_reason
                else:
                    reason = "unresolved"
                if reason == "unresolved":
                    unresolved = True
                cases.append(
                    (
                        (1, d_prime, subset, partition),
                        _phase2_label(partition),
                        reason,
                    )
                )

    cases.sort(key=lambda item: item[0])
    sound = not unresolved
    exhaustive = sound and (
        universal is not None
        or top_reason is not None
        or (d == 1 and product_reason is not None)
    )
    return InfeasibilityTrace(
        d, tuple((label, reason) for _, label, reason in cases), sound, exhaustive
    )


def certify_quantumness(
    box: Box, n: int, d_A: int = 2, tol: float = DEFAULT_TOL
) -> Certificate:
    """Classify a box as witnessed-steerable, superunsteerable, classical at
    the given dimension, or undecided.

    The steering functional is evaluated first; a value above 1 + 1e-9 is a
    direct witness and no search runs.  Otherwise the bounded search runs at
    d_A: a model means CLASSICAL_AT_DIMENSION, and a sound exhaustive
    infeasibility combined with a model at the unconstrained dimension 2^n
    means SUPERUNSTEERABLE.  Anything the search cannot settle soundly is
    reported UNDECIDED, never guessed.

    Raises:
        InvalidBox, DimensionMismatch, OutOfRange: on malformed input.
    """
    box.validate()
    if box.n != n:
        raise DimensionMismatch(f"box has {box.n} settings, expected {n}")
    d_top = 2 ** n
    if not 1 <= d_A <= d_top:
        raise OutOfRange(f"d_A must lie in [1, {d_top}], got {d_A}")
    functional = steering_functional(box, n)
    if functional > 1.0 + 1e-9:
        return Certificate(WITNESSED_STEERABLE, d_A, functional, None, ())
    dirs = pauli_axes(n)
    first = search_lhs_bounded(box, dirs, d_A, tol)
    if isinstance(first, LhvLhsModel):
        return Certificate(CLASSICAL_AT_DIMENSION, d_A, functional, first, ())
    if first.sound and first.exhaustive and d_A < d_top:
        top = search_lhs_bounded(box, dirs, d_top, tol)
        if isinstance(top, LhvLhsModel):
            return Certificate(SUPERUNSTEERABLE, d_A, functional, top, first.cases)
    return Certificate(UNDECIDED, d_A, functional, None, first.cases)
