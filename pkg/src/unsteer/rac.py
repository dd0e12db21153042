"""Random access codes assisted by Bell-diagonal states.

Closed-form worst-case efficiencies for the 2->1 and 3->1 codes, an exact
Born-rule protocol simulation, a multi-start encoding optimizer, and the
grid sweeps over separable states that locate the optimal resources and the
discord/efficiency non-monotonicity witnesses.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .errors import (
    DegenerateAxis,
    DimensionMismatch,
    NonUnitDirection,
    OutOfRange,
    UnsupportedN,
)
from .states import (
    BellDiagonalParams,
    Projector,
    bell_diagonal,
    canonical_form,
    geometric_discord,
    projector_matrix,
)

_AXES = np.eye(3)

CSV_HEADER = "c1,c2,c3,separable,strength_n,efficiency_n,discord"


@dataclass(frozen=True)
class RacSpec:
    """A concrete n->1 protocol: state, encodings, and decoding convention.

    encodings: (2^n, 3) unit vectors, row index = integer value of the input
    string x (most significant bit first).  Decoding is b_i = a XOR b XOR
    decode_flips[i]; with the signed encodings built here all flips are zero,
    and axis_signs records sign(c_i') of the canonical triple for audit.
    """

    n: int
    params: BellDiagonalParams
    encodings: np.ndarray
    decode_flips: tuple[int, ...]
    axis_signs: tuple[int, ...]

    def __post_init__(self):
        enc = np.atleast_2d(np.asarray(self.encodings, dtype=float))
        object.__setattr__(self, "encodings", enc)
        if self.n not in (2, 3):
            raise UnsupportedN(f"n must be 2 or 3, got {self.n}")
        if enc.shape != (2 ** self.n, 3):
            raise DimensionMismatch(
                f"expected {2 ** self.n} encoding directions of length 3, "
                f"got shape {enc.shape}"
            )
        norms = np.linalg.norm(enc, axis=1)
        if np.abs(norms - 1.0).max() > 1e-9:
            raise NonUnitDirection(
                f"encoding directions must be unit vectors, worst norm {norms.max()!r}"
            )
        if len(self.decode_flips) != self.n:
            raise DimensionMismatch(
                f"expected {self.n} decode flips, got {len(self.decode_flips)}"
            )


@dataclass(frozen=True)
class RacResult:
    """Worst-case success probability and the per-input-per-bit table."""

    p_min: float
    table: np.ndarray  # (2^n, n), entry [x, i] = Pr(guessed bit i = x_i)


def rac_classical_bound(n: int) -> float:
    """Best classical worst-case success: 2/3 for the 2->1 code, 1/2 for 3->1.

    Raises:
        UnsupportedN: for any other n.
    """
    if n == 2:
        return 2.0 / 3.0
    if n == 3:
        return 0.5
    raise UnsupportedN(f"classical bound known for n in {{2, 3}} only, got {n}")


def rac_efficiency_bd(params: BellDiagonalParams, n: int) -> float:
    """Worst-case success (1/2)(1 + 1/sqrt(sum_i 1/c_i'^2)) of the optimal code.

    Evaluated on the canonical triple; extended by continuity to 1/2 when any
    of the first n canonical components vanishes.

    Raises:
        UnphysicalParams: for unphysical triples.
        UnsupportedN: for n outside {2, 3}.
    """
    params.validate()
    if n not in (2, 3):
        raise UnsupportedN(f"n must be 2 or 3, got {n}")
    c = canonical_form(params).canonical.as_array()[:n]
    if np.any(c == 0.0):
        return 0.5
    total = float(np.sum(1.0 / c**2))
    return 0.5 * (1.0 + 1.0 / float(np.sqrt(total)))


def _input_bits(x: int, n: int) -> tuple[int, ...]:
    return tuple((x >> (n - 1 - i)) & 1 for i in range(n))


def encoding_directions(params: BellDiagonalParams, n: int) -> np.ndarray:
    """The (2^n, 3) optimal encoding directions m(x) of the canonical triple.

    m_i(x) = (-1)^{x_i} (1/c_i') / sqrt(sum_j 1/c_j'^2) for i < n, remaining
    components zero; the signed 1/c_i' factor makes the plain a-XOR-b decoding
    correct on every axis, including a negative c_3'.

    Raises:
        DegenerateAxis: when some relevant c_i' = 0.
        UnsupportedN: for n outside {2, 3}.
    """
    params.validate()
    if n not in (2, 3):
        raise UnsupportedN(f"n must be 2 or 3, got {n}")
    c = canonical_form(params).canonical.as_array()[:n]
    if np.any(c == 0.0):
        raise DegenerateAxis(
            "encoding undefined when a relevant axis vanishes, canonical "
            f"{tuple(float(v) for v in c)}"
        )
    inv = 1.0 / c
    scale = float(np.sqrt(np.sum(inv**2)))
    out = np.zeros((2**n, 3))
    for x in range(2**n):
        bits = _input_bits(x, n)
        for i in range(n):
            out[x, i] = (-1.0) ** bits[i] * inv[i] / scale
    return out


def optimal_rac_spec(params: BellDiagonalParams, n: int) -> RacSpec:
    """RacSpec with the canonical triple and its optimal signed encodings.

    Raises:
        DegenerateAxis, UnphysicalParams, UnsupportedN: as in the parts.
    """
    params.validate()
    canon = canonical_form(params).canonical
    c = canon.as_array()
    signs = tuple(int(np.sign(c[i])) if c[i] != 0.0 else 1 for i in range(3))[:n]
    return RacSpec(
        n=n,
        params=canon,
        encodings=encoding_directions(canon, n),
        decode_flips=(0,) * n,
        axis_signs=signs,
    )


def simulate_rac(spec: RacSpec) -> RacResult:
    """Exact Born-rule evaluation of the protocol; no sampling anywhere.

    For each input x Alice measures m(x) . sigma on her half and communicates
    the outcome a; for target bit i Bob measures sigma_i, getting b, and
    guesses a XOR b XOR decode_flips[i].  The table entry is the probability
    that the guess equals x_i; P_min is its minimum.
    """
    spec.params.validate()
    rho = bell_diagonal(spec.params)
    n = spec.n
    table = np.zeros((2**n, n))
    bob_projectors = [
        [projector_matrix(Projector(_AXES[i], b)) for b in (0, 1)] for i in range(n)
    ]
    for x in range(2**n):
        bits = _input_bits(x, n)
        alice_projectors = [
            projector_matrix(Projector(np.asarray(spec.encodings[x]), a)) for a in (0, 1)
        ]
        for i in range(n):
            success = 0.0
            for a in (0, 1):
                for b in (0, 1):
                    if (a ^ b ^ spec.decode_flips[i]) == bits[i]:
                        joint = np.kron(alice_projectors[a], bob_projectors[i][b])
                        success += float(np.trace(joint @ rho).real)
            table[x, i] = success
    return RacResult(float(table.min()), table)


def _success_table_for_direction(
    c: np.ndarray, bits: tuple[int, ...], direction: np.ndarray
) -> np.ndarray:
    """Per-bit success of one input, from the correlator form of the Born rule:
    Pr(a XOR b = x_i) = (1 + (-1)^{x_i} m_i c_i) / 2."""
    n = len(bits)
    signs = np.array([(-1.0) ** bits[i] for i in range(n)])
    return (1.0 + signs * direction[:n] * c[:n]) / 2.0


def _unit_from_angles(theta: float, phi: float) -> np.ndarray:
    s = np.sin(theta)
    return np.array([s * np.cos(phi), s * np.sin(phi), np.cos(theta)])


def optimize_rac(params: BellDiagonalParams, n: int, restarts: int = 20) -> RacResult:
    """Maximize P_min over all encoding directions by multi-start local search.

    The per-input success rows depend only on that input's direction, so each
    input is optimized independently (Nelder-Mead over sphere angles, seeded
    deterministically).  The heuristic encoding, when defined, is always one
    of the starts, so the result is never worse than it beyond 1e-9.

    Raises:
        UnphysicalParams, UnsupportedN: on malformed input.
    """
    params.validate()
    if n not in (2, 3):
        raise UnsupportedN(f"n must be 2 or 3, got {n}")
    c = canonical_form(params).canonical.as_array()
    rng = np.random.default_rng(0)
    try:
        heuristic = encoding_directions(params, n)
    except DegenerateAxis:
        heuristic = None
    table = np.zeros((2**n, n))
    for x in range(2**n):
        bits = _input_bits(x, n)

        def negated_worst(angles, bits=bits):
            direction = _unit_from_angles(angles[0], angles[1])
            return -float(_success_table_for_direction(c, bits, direction).min())

        starts = []
        if heuristic is not None:
            m = heuristic[x]
            starts.append((float(np.arccos(np.clip(m[2], -1.0, 1.0))),
                           float(np.arctan2(m[1], m[0]))))
        for _ in range(max(0, restarts)):
            z = rng.normal(size=3)
            z /= np.linalg.norm(z)
            starts.append((float(np.arccos(np.clip(z[2], -1.0, 1.0))),
                           float(np.arctan2(z[1], z[0]))))
        best_value = -np.inf
        best_direction = np.array([0.0, 0.0, 1.0])
        for start in starts:
            res = optimize.minimize(
                negated_worst,
                np.asarray(start),
                method="Nelder-Mead",
                options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 600},
            )
            if -res.fun > best_value:
                best_value = -res.fun
                best_direction = _unit_from_angles(res.x[0], res.x[1])
        table[x] = _success_table_for_direction(c, bits, best_direction)
    return RacResult(float(table.min()), table)


# ---------------------------------------------------------------------------
# Separable-state sweeps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepReport:
    """Grid evaluation over physical separable canonical triples.

    Rows are emitted in deterministic order: c1 ascending, then c2, then the
    |c3| magnitude, negative sign before positive.  The argmax fields use
    strictly-greater updates in that order, so ties go to the earliest row.
    """

    n: int
    step: float
    triples: np.ndarray  # (m, 3)
    strength: np.ndarray
    efficiency: np.ndarray
    discord: np.ndarray
    strength_argmax: BellDiagonalParams
    strength_max: float
    efficiency_argmax: BellDiagonalParams
    efficiency_max: float
    witness_pair: tuple[dict, dict] | None = field(default=None)


def _separable_canonical_grid(step: float) -> np.ndarray:
    """All canonical triples on the step grid with c1 + c2 + |c3| <= 1, which
    for canonical triples is exactly 'physical and separable'."""
    m = int(round(1.0 / step))
    rows: list[tuple[float, float, float]] = []
    for i1 in range(m + 1):
        for i2 in range(i1 + 1):
            for i3 in range(i2 + 1):
                if (i1 + i2 + i3) * step > 1.0 + 1e-12:
                    break
                c1, c2, mag = i1 * step, i2 * step, i3 * step
                rows.append((c1, c2, -mag))
                if i3 > 0:
                    rows.append((c1, c2, mag))
    return np.array(rows) + 0.0  # normalize any -0.0


def _evaluate_grid_chunk(triples: np.ndarray, n: int) -> np.ndarray:
    """(strength, efficiency, discord) columns for a chunk of canonical triples."""
    c1, c2, c3 = triples[:, 0], triples[:, 1], triples[:, 2]
    strength = c2 if n == 2 else np.abs(c3)
    relevant = triples[:, :n]
    degenerate = np.any(relevant == 0.0, axis=1)
    with np.errstate(divide="ignore"):
        inv_sq = np.where(relevant == 0.0, np.inf, relevant) ** -2.0
    total = inv_sq.sum(axis=1)
    with np.errstate(divide="ignore"):
        efficiency = np.where(
            degenerate, 0.5, 0.5 * (1.0 + 1.0 / np.sqrt(total))
        )
    discord = (c2**2 + c3**2) / 2.0
    return np.stack([strength, efficiency, discord], axis=1)


def _thread_count() -> int:
    raw = os.environ.get("UNSTEER_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _find_witness_pair(
    triples: np.ndarray, efficiency: np.ndarray, discord: np.ndarray
) -> tuple[dict, dict] | None:
    """First pair (in discord order) where higher discord buys strictly lower
    efficiency — the ordering disagreement that makes the two measures
    non-monotonic in each other."""
    order = np.argsort(discord, kind="stable")
    best = order[0]
    for idx in order[1:]:
        if efficiency[idx] < efficiency[best] and discord[idx] > discord[best]:
            low = {
                "params": tuple(float(v) for v in triples[best]),
                "efficiency": float(efficiency[best]),
                "discord": float(discord[best]),
            }
            high = {
                "params": tuple(float(v) for v in triples[idx]),
                "efficiency": float(efficiency[idx]),
                "discord": float(discord[idx]),
            }
            return low, high
        if efficiency[idx] > efficiency[best]:
            best = idx
    return None


def sweep_separable_max(n: int, step: float = 0.01) -> SweepReport:
    """Evaluate strength, efficiency, and discord over all separable canonical
    grid triples and report the maximizers plus a non-monotonicity witness.

    UNSTEER_THREADS (default 1) caps a chunked thread fan-out over the grid;
    chunks are concatenated in order, so the output is identical at any
    thread count.

    Raises:
        UnsupportedN: for n outside {2, 3}.
        OutOfRange: for step outside (0, 0.1].
    """
    if n not in (2, 3):
        raise UnsupportedN(f"n must be 2 or 3, got {n}")
    if not 0.0 < step <= 0.1:
        raise OutOfRange(f"step must lie in (0, 0.1], got {step}")
    triples = _separable_canonical_grid(step)
    threads = _thread_count()
    if threads == 1 or len(triples) < 2 * threads:
        columns = _evaluate_grid_chunk(triples, n)
    else:
        chunks = np.array_split(triples, threads)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda ch: _evaluate_grid_chunk(ch, n), chunks))
        columns = np.concatenate(parts, axis=0)
    strength, efficiency, discord = columns[:, 0], columns[:, 1], columns[:, 2]
    i_strength = int(np.argmax(strength))
    i_efficiency = int(np.argmax(efficiency))
    return SweepReport(
        n=n,
        step=step,
        triples=triples,
        strength=strength,
        efficiency=efficiency,
        discord=discord,
        strength_argmax=BellDiagonalParams(*(float(v) for v in triples[i_strength])),
        strength_max=float(strength[i_strength]),
        efficiency_argmax=BellDiagonalParams(
            *(float(v) for v in triples[i_efficiency])
        ),
        efficiency_max=float(efficiency[i_efficiency]),
        witness_pair=_find_witness_pair(triples, efficiency, discord),
    )


def sweep_csv_lines(report: SweepReport) -> list[str]:
    """The sweep as CSV lines: mandatory header, 17-significant-digit floats,
    and a literal true/false separable column (the grid is separable by
    construction)."""
    lines = [CSV_HEADER]
    for row, s, e, d in zip(
        report.triples, report.strength, report.efficiency, report.discord
    ):
        lines.append(
            ",".join(
                [format(float(v) + 0.0, ".17g") for v in row]
                + ["true"]
                + [format(float(v) + 0.0, ".17g") for v in (s, e, d)]
            )
        )
    return lines
