"""An order-2 additive basis that no two-coloring splits into syndetic halves.

The set is A = [2,3] together with, for each stage k >= 1 (Q = 5^{k-1}):

    anchor  c_k = 4Q,    block  B_k = [5Q, 6Q - 1],    filler  F_k = [10Q - 1, 15Q]

Stage ranges are pairwise disjoint, so membership is decided in O(1) from
the stage index. Three finite verifications are provided:

* coverage: [4, 6 * 5^k] is contained in A_k + A_k, where A_k keeps the
  core and stages 1..k;
* rigidity: every n in J_k = [9Q, 10Q - 1] has exactly one representation
  a + b with a, b in A, namely c_k + (n - c_k) with n - c_k in B_k;
* gap witness: for any two-coloring of A, the color class missing c_k has
  no pairwise sum landing in J_k, so its sumset has a gap of length 5^{k-1}.

Sumsets are computed on boolean occupancy, either by a direct double loop
over elements (small stages) or by big-integer shift-or with doubling
smears over the interval decomposition (large stages); both are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal, Sequence

import numpy as np

from .errors import VerificationError

Kind = Literal["core", "c", "B", "F", "none"]

# Stages with more elements than this use the shift-or sumset path.
_PAIRS_MAX_ELEMENTS = 2500


def stage_anchor(k: int) -> int:
    """c_k = 4 * 5^(k-1)."""
    return 4 * 5 ** (k - 1)


def stage_block(k: int) -> tuple[int, int]:
    """B_k = [5 * 5^(k-1), 6 * 5^(k-1) - 1], inclusive endpoints."""
    q = 5 ** (k - 1)
    return 5 * q, 6 * q - 1


def stage_filler(k: int) -> tuple[int, int]:
    """F_k = [10 * 5^(k-1) - 1, 15 * 5^(k-1)], inclusive endpoints."""
    q = 5 ** (k - 1)
    return 10 * q - 1, 15 * q


def rigidity_interval(k: int) -> tuple[int, int]:
    """J_k = [9 * 5^(k-1), 10 * 5^(k-1) - 1], inclusive endpoints."""
    q = 5 ** (k - 1)
    return 9 * q, 10 * q - 1


@dataclass(frozen=True)
class StageClassification:
    """Which part of A the integer x lies in (stage is None for core/none)."""

    x: int
    kind: Kind
    stage: int | None = None

    def __bool__(self) -> bool:
        return self.kind != "none"


def classify(x: int) -> StageClassification:
    """O(1) membership: estimate the stage from log_5(x/4), then check exactly."""
    if x in (2, 3):
        return StageClassification(x=x, kind="core")
    if x < 4:
        return StageClassification(x=x, kind="none")
    # largest k with 4 * 5^(k-1) <= x; float estimate corrected by +-1 steps
    k = max(1, int((math.log2(x) - 2) / math.log2(5)) + 1)
    while stage_anchor(k + 1) <= x:
        k += 1
    while k > 1 and stage_anchor(k) > x:
        k -= 1
    if x == stage_anchor(k):
        return StageClassification(x=x, kind="c", stage=k)
    lo, hi = stage_block(k)
    if lo <= x <= hi:
        return StageClassification(x=x, kind="B", stage=k)
    lo, hi = stage_filler(k)
    if lo <= x <= hi:
        return StageClassification(x=x, kind="F", stage=k)
    return StageClassification(x=x, kind="none")


_KIND_CODES = {"none": 0, "core": 1, "c": 2, "B": 3, "F": 4}


def classify_batch(xs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized classify: returns (kind codes, stages), stage 0 for core/none.

    Codes follow _KIND_CODES. Inputs must fit in int64.
    """
    xs = np.asarray(xs, dtype=np.int64)
    kinds = np.zeros(xs.shape, dtype=np.int8)
    stages = np.zeros(xs.shape, dtype=np.int64)
    kinds[(xs == 2) | (xs == 3)] = _KIND_CODES["core"]
    big = xs >= 4
    if not np.any(big):
        return kinds, stages
    pow5 = [1]
    while 4 * pow5[-1] <= int(xs.max()):
        pow5.append(pow5[-1] * 5)
    pow5_arr = np.array(pow5, dtype=np.int64)
    # largest k with 4 * 5^(k-1) <= x  <=>  5^(k-1) <= x // 4
    k_idx = np.searchsorted(pow5_arr, xs // 4, side="right")  # = stage k
    k_idx = np.clip(k_idx, 1, len(pow5))
    q = pow5_arr[k_idx - 1]
    is_c = big & (xs == 4 * q)
    is_b = big & (5 * q <= xs) & (xs <= 6 * q - 1)
    is_f = big & (10 * q - 1 <= xs) & (xs <= 15 * q)
    kinds[is_c] = _KIND_CODES["c"]
    kinds[is_b] = _KIND_CODES["B"]
    kinds[is_f] = _KIND_CODES["F"]
    member = is_c | is_b | is_f
    stages[member] = k_idx[member]
    return kinds, stages


def stage_intervals(limit: int) -> list[tuple[int, int]]:
    """Disjoint ascending intervals whose union is A intersected with [0, limit]."""
    out: list[tuple[int, int]] = []
    if limit >= 2:
        out.append((2, min(3, limit)))
    k = 1
    while stage_anchor(k) <= limit:
        c = stage_anchor(k)
        out.append((c, c))
        for lo, hi in (stage_block(k), stage_filler(k)):
            if lo <= limit:
                out.append((lo, min(hi, limit)))
        k += 1
    return out


def enumerate_A(limit: int) -> list[int]:
    """All elements of A up to limit, ascending."""
    out: list[int] = []
    for lo, hi in stage_intervals(limit):
        out.extend(range(lo, hi + 1))
    return out


def occupancy(limit: int) -> np.ndarray:
    """Boolean membership array m with m[x] = (x in A), x = 0..limit."""
    m = np.zeros(limit + 1, dtype=bool)
    for lo, hi in stage_intervals(limit):
        m[lo : hi + 1] = True
    return m


def _occupancy_int(limit: int) -> int:
    """Membership of A up to limit as a bit mask (bit x set iff x in A)."""
    bits = 0
    for lo, hi in stage_intervals(limit):
        bits |= ((1 << (hi - lo + 1)) - 1) << lo
    return bits


def _smear(bits: int, length: int, keep: int) -> int:
    """OR of bits << s for s = 0..length-1, truncated to ``keep`` bits."""
    mask = (1 << keep) - 1
    out = bits
    covered = 1
    while covered < length:
        step = min(covered, length - covered)
        out = (out | (out << step)) & mask
        covered += step
    return out


def _sumset_bits(limit: int, intervals: Sequence[tuple[int, int]], bits: int) -> int:
    """Bit mask of {a + b : a, b set in bits, a in one of the intervals}."""
    keep = 2 * limit + 2
    out = 0
    for lo, hi in intervals:
        out |= _smear(bits, hi - lo + 1, keep) << lo
    return out


@dataclass(frozen=True)
class CoverageReport:
    k: int
    lo: int
    hi: int
    covered: bool
    first_gap: int | None
    method: str


def sumset_cover_check(
    k: int, *, method: Literal["auto", "pairs", "shift"] = "auto"
) -> CoverageReport:
    """Verify [4, 6 * 5^k] is contained in A_k + A_k; fatal if not.

    ``pairs`` walks all element pairs into an occupancy array; ``shift``
    computes the same sumset by big-integer shift-or over the interval
    decomposition of A_k. ``auto`` picks by stage size. A gap would
    contradict a proved coverage lemma, so it raises VerificationError.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    hi = 6 * 5**k
    # A_k = A truncated to stages 1..k; max element is 3 * 5^k <= hi.
    a_limit = min(hi, 15 * 5 ** (k - 1)) if k >= 1 else 3
    intervals = stage_intervals(a_limit)
    elements = enumerate_A(a_limit)
    if method == "auto":
        method = "pairs" if len(elements) <= _PAIRS_MAX_ELEMENTS else "shift"
    if method == "pairs":
        hit = bytearray(2 * a_limit + 1)
        for i, a in enumerate(elements):
            for b in elements[i:]:
                hit[a + b] = 1
        first_gap = next((x for x in range(4, hi + 1) if not hit[x]), None)
    elif method == "shift":
        bits = _sumset_bits(a_limit, intervals, _occupancy_int(a_limit))
        want = ((1 << (hi - 3)) - 1) << 4  # bits 4..hi
        missing = want & ~bits
        first_gap = (missing & -missing).bit_length() - 1 if missing else None
    else:
        raise ValueError(f"unknown method {method!r}")
    report = CoverageReport(
        k=k, lo=4, hi=hi, covered=first_gap is None, first_gap=first_gap, method=method
    )
    if not report.covered:
        raise VerificationError(
            f"sumset coverage fails at stage {k}: {first_gap} not in A_{k} + A_{k}"
        )
    return report


@dataclass(frozen=True)
class RepresentationList:
    """All ways to write n = a + b with a <= b and both in A."""

    n: int
    pairs: tuple[tuple[int, int], ...]


def representations(n: int) -> RepresentationList:
    """Exhaustive scan of a in [2, n/2] testing a in A and n - a in A."""
    if n < 4:
        raise ValueError("n must be >= 4")
    pairs = [
        (a, n - a)
        for a in range(2, n // 2 + 1)
        if classify(a) and classify(n - a)
    ]
    return RepresentationList(n=n, pairs=tuple(pairs))


@dataclass(frozen=True)
class RigidityReport:
    k: int
    interval: tuple[int, int]
    checked: int
    anchor: int


def rigidity_check(k: int) -> RigidityReport:
    """Verify every n in J_k has exactly the representation {c_k, n - c_k}.

    Counts, for every n in J_k, all pairs a <= b with a, b in A and
    a + b = n (elements above 10 * 5^(k-1) cannot occur since the smallest
    element of A is 2). Any extra or missing representation raises
    VerificationError.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    j_lo, j_hi = rigidity_interval(k)
    c = stage_anchor(k)
    b_lo, b_hi = stage_block(k)
    limit = j_hi - 2  # largest possible summand
    elements = np.flatnonzero(occupancy(limit))
    counts = np.zeros(j_hi - j_lo + 1, dtype=np.int64)
    witnesses_ok = True
    half = elements[elements <= j_hi // 2]
    lo_idx = np.searchsorted(elements, np.maximum(j_lo - half, half))
    hi_idx = np.searchsorted(elements, j_hi - half, side="right")
    for a, i0, i1 in zip(half.tolist(), lo_idx.tolist(), hi_idx.tolist()):
        if i1 <= i0:
            continue
        partners = elements[i0:i1]
        np.add.at(counts, a + partners - j_lo, 1)
        if a != c:
            witnesses_ok = False
    if not witnesses_ok:
        raise VerificationError(f"stage {k}: a representation avoids the anchor c_k")
    if not np.all(counts == 1):
        n_bad = j_lo + int(np.flatnonzero(counts != 1)[0])
        raise VerificationError(
            f"stage {k}: n = {n_bad} has {counts[n_bad - j_lo]} representations"
        )
    partners = np.arange(j_lo, j_hi + 1) - c
    if not (np.all(partners >= b_lo) and np.all(partners <= b_hi)):
        raise VerificationError(f"stage {k}: partner outside B_k")
    return RigidityReport(
        k=k, interval=(j_lo, j_hi), checked=j_hi - j_lo + 1, anchor=c
    )


@dataclass(frozen=True)
class PartitionRule:
    """A two-coloring of A, specified by the anchor colors plus a default.

    ``anchor_color`` maps the stage index k to the color (1 or 2) of c_k;
    ``default_color`` colors every non-anchor element. The gap witness only
    depends on the anchor colors, but arbitrary total rules are supported
    so batteries of random colorings can be tested. ``default_batch``, when
    present, must agree with ``default_color`` elementwise; it exists so
    large batteries stay fast.
    """

    name: str
    anchor_color: Callable[[int], int]
    default_color: Callable[[int], int]
    default_batch: Callable[[np.ndarray], np.ndarray] | None = None

    def color_of(self, x: int) -> int:
        cls = classify(x)
        if cls.kind == "c":
            return self.anchor_color(cls.stage)
        return self.default_color(x)

    def colors_for(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        if self.default_batch is not None:
            out = self.default_batch(xs).astype(np.int8)
        else:
            out = np.fromiter(
                (self.default_color(int(x)) for x in xs), dtype=np.int8, count=len(xs)
            )
        kinds, stages = classify_batch(xs)
        for i in np.flatnonzero(kinds == _KIND_CODES["c"]).tolist():
            out[i] = self.anchor_color(int(stages[i]))
        return out


def _mix(x: int, seed: int) -> int:
    """splitmix64-style integer hash, stable across runs."""
    z = (x * 0x9E3779B97F4A7C15 + seed * 0xBF58476D1CE4E5B9 + 0x94D049BB133111EB) % (
        1 << 64
    )
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) % (1 << 64)
    z ^= z >> 27
    return z


def _mix_batch(xs: np.ndarray, seed: int) -> np.ndarray:
    """Vector form of _mix (uint64 wraparound arithmetic)."""
    with np.errstate(over="ignore"):
        z = xs.astype(np.uint64) * np.uint64(0x9E3779B97F4A7C15)
        z += np.uint64((seed * 0xBF58476D1CE4E5B9 + 0x94D049BB133111EB) % (1 << 64))
        z ^= z >> np.uint64(30)
        z *= np.uint64(0xBF58476D1CE4E5B9)
        z ^= z >> np.uint64(27)
    return z


def constant_rule(color: int = 1) -> PartitionRule:
    """Every element, anchors included, gets the same color."""
    if color not in (1, 2):
        raise ValueError("color must be 1 or 2")
    return PartitionRule(
        name=f"all-c-to-{color}",
        anchor_color=lambda k: color,
        default_color=lambda x: color,
        default_batch=lambda xs: np.full(len(xs), color, dtype=np.int8),
    )


def alternating_rule() -> PartitionRule:
    """c_k gets color (k mod 2) + 1; everything else color 1."""
    return PartitionRule(
        name="alternating",
        anchor_color=lambda k: (k % 2) + 1,
        default_color=lambda x: 1,
        default_batch=lambda xs: np.ones(len(xs), dtype=np.int8),
    )


def seeded_rule(seed: int) -> PartitionRule:
    """Pseudorandom total coloring, a pure function of (seed, element)."""
    return PartitionRule(
        name=f"random:{seed}",
        anchor_color=lambda k: 1 + (_mix(stage_anchor(k), seed) & 1),
        default_color=lambda x: 1 + (_mix(x, seed) & 1),
        default_batch=lambda xs: 1 + (_mix_batch(xs, seed) & np.uint64(1)).astype(np.int8),
    )


def rule_from_name(spec: str) -> PartitionRule:
    """Parse 'all-c-to-1', 'all-c-to-2', 'alternating' or 'random:SEED'."""
    if spec in ("all-c-to-1", "all-c-to-2"):
        return constant_rule(int(spec[-1]))
    if spec == "alternating":
        return alternating_rule()
    if spec.startswith("random:"):
        return seeded_rule(int(spec.split(":", 1)[1]))
    raise ValueError(f"unknown partition rule {spec!r}")


@dataclass(frozen=True)
class GapReport:
    """A certified gap: the sumset of ``gapped_color`` misses all of J_k."""

    k: int
    rule: str
    anchor_color: int
    gapped_color: int
    interval: tuple[int, int]
    gap_length: int
    truncation: int


def gap_witness(rule: PartitionRule, k: int) -> GapReport:
    """Certify that the color class not containing c_k misses J_k entirely.

    Only elements up to 10 * 5^(k-1) can take part in a representation of a
    point of J_k (the partner would otherwise be below the minimum of A),
    so the check is finite; the truncation bound is recorded in the report.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    j_lo, j_hi = rigidity_interval(k)
    truncation = 10 * 5 ** (k - 1)
    ac = rule.anchor_color(k)
    if ac not in (1, 2):
        raise ValueError("anchor color must be 1 or 2")
    gapped = 3 - ac
    elements = np.array(enumerate_A(min(truncation, j_hi - 2)), dtype=np.int64)
    colors = rule.colors_for(elements)
    mine = elements[colors == gapped]
    if mine.size:
        occ = np.zeros(int(mine[-1]) + 1, dtype=bool)
        occ[mine] = True
        prefix = np.concatenate([[0], np.cumsum(occ)])
        half = mine[mine <= j_hi // 2]
        lo = np.clip(np.maximum(j_lo - half, half), 0, len(prefix) - 1)
        hi = np.clip(j_hi - half + 1, 0, len(prefix) - 1)
        hits = prefix[hi] - prefix[lo]
        if int(hits.sum()) != 0:
            a = int(half[np.flatnonzero(hits)[0]])
            raise VerificationError(
                f"rule {rule.name}, stage {k}: {a} + partner lands in J_{k} "
                "despite the anchor belonging to the other color"
            )
    return GapReport(
        k=k,
        rule=rule.name,
        anchor_color=ac,
        gapped_color=gapped,
        interval=(j_lo, j_hi),
        gap_length=5 ** (k - 1),
        truncation=truncation,
    )


def interval_sum_table(k: int) -> list[dict]:
    """The eight interval sums that chain together to cover [4 Q, 30 Q].

    For stage k >= 1 with Q = 5^(k-1), I = [2Q, 3Q] is inside A_k (it is the
    core [2, 3] when k = 1 and part of the previous filler when k >= 2).
    Returns, per sum, the two summand intervals and the exact resulting range.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    q = 5 ** (k - 1)
    i = (2 * q, 3 * q)
    c = (stage_anchor(k), stage_anchor(k))
    b = stage_block(k)
    f = stage_filler(k)
    pairs = [
        ("I+I", i, i),
        ("I+c", i, c),
        ("I+B", i, b),
        ("c+B", c, b),
        ("B+B", b, b),
        ("I+F", i, f),
        ("B+F", b, f),
        ("F+F", f, f),
    ]
    return [
        {
            "label": label,
            "left": x,
            "right": y,
            "sum": (x[0] + y[0], x[1] + y[1]),
        }
        for label, x, y in pairs
    ]
