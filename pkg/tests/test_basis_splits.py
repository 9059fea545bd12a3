"""Stage membership, coverage, rigidity and gap witnesses for the basis."""

import random

import numpy as np
import pytest

from erdos_trio import (
    VerificationError,
    alternating_rule,
    classify,
    classify_batch,
    constant_rule,
    enumerate_A,
    gap_witness,
    interval_sum_table,
    occupancy,
    representations,
    rigidity_check,
    rigidity_interval,
    rule_from_name,
    seeded_rule,
    stage_anchor,
    stage_block,
    stage_filler,
    sumset_cover_check,
)
from erdos_trio.basis_splits import _occupancy_int, _sumset_bits, stage_intervals

from oracles import representations_bruteforce


def test_classify_examples():
    assert classify(4).kind == "c" and classify(4).stage == 1
    assert classify(9).kind == "F" and classify(9).stage == 1
    assert classify(6).kind == "none"
    assert classify(2).kind == "core" and classify(3).kind == "core"
    assert classify(0).kind == "none" and classify(1).kind == "none"
    assert classify(20) == classify(20)  # frozen dataclass equality
    assert classify(25).kind == "B" and classify(25).stage == 2


def test_classify_stage_boundaries():
    for k in range(1, 12):
        q = 5 ** (k - 1)
        assert classify(4 * q).kind == "c"
        assert classify(4 * q + 1).kind == ("B" if k == 1 else "none")
        assert classify(5 * q - 1).kind in ("c", "none")
        assert classify(5 * q).kind == "B"
        assert classify(6 * q - 1).kind == "B"
        assert classify(6 * q).kind == "none"
        assert classify(10 * q - 2).kind == "none"
        assert classify(10 * q - 1).kind == "F"
        assert classify(15 * q).kind == "F"
        assert classify(15 * q + 1).kind == "none"
        assert classify(20 * q - 1).kind == "none"
        assert classify(20 * q).kind == "c" and classify(20 * q).stage == k + 1


def test_classify_huge_values():
    k = 200
    q = 5 ** (k - 1)
    assert classify(4 * q).stage == k
    assert classify(14 * q).kind == "F"
    assert classify(7 * q).kind == "none"


def test_enumerate_examples():
    assert enumerate_A(5) == [2, 3, 4, 5]
    assert enumerate_A(25) == [2, 3, 4, 5, 9, 10, 11, 12, 13, 14, 15, 20, 25]
    assert enumerate_A(0) == []
    assert enumerate_A(1) == []


def test_enumerate_matches_classify():
    limit = 20000
    members = set(enumerate_A(limit))
    for x in range(limit + 1):
        assert (x in members) == bool(classify(x)), x


def test_classify_batch_matches_scalar_and_occupancy():
    limit = 10**5
    xs = np.arange(limit + 1)
    kinds, stages = classify_batch(xs)
    occ = occupancy(limit)
    np.testing.assert_array_equal(kinds > 0, occ)
    rng = random.Random(3)
    for x in rng.sample(range(limit + 1), 500):
        cls = classify(x)
        code = {"none": 0, "core": 1, "c": 2, "B": 3, "F": 4}[cls.kind]
        assert kinds[x] == code
        assert stages[x] == (cls.stage or 0)


def test_classify_agrees_with_enumeration_to_1e7():
    """Membership from the stage-interval enumeration equals per-element
    classification over the full range (batch for bulk, scalar spot checks)."""
    limit = 10**7
    occ = occupancy(limit)
    for lo in range(0, limit + 1, 10**6):
        xs = np.arange(lo, min(lo + 10**6, limit + 1))
        kinds, _ = classify_batch(xs)
        np.testing.assert_array_equal(kinds > 0, occ[xs[0] : xs[-1] + 1])
    rng = random.Random(17)
    for x in rng.sample(range(limit + 1), 2000):
        assert bool(classify(x)) == bool(occ[x])


def test_representations_examples():
    assert representations(9).pairs == ((4, 5),)
    assert representations(45).pairs == ((20, 25),)
    assert representations(4).pairs == ((2, 2),)
    with pytest.raises(ValueError):
        representations(3)


def test_representations_bruteforce_oracle():
    members = set(enumerate_A(400))
    for n in range(4, 401):
        assert list(representations(n).pairs) == representations_bruteforce(n, members)


def test_interval_sum_table_ranges():
    """The eight stage sums land exactly on the ranges that chain to [4Q, 30Q]."""
    for k in range(1, 9):
        q = 5 ** (k - 1)
        table = {row["label"]: row["sum"] for row in interval_sum_table(k)}
        assert table["I+I"] == (4 * q, 6 * q)
        assert table["I+c"] == (6 * q, 7 * q)
        assert table["I+B"] == (7 * q, 9 * q - 1)
        assert table["c+B"] == (9 * q, 10 * q - 1)
        assert table["B+B"] == (10 * q, 12 * q - 2)
        assert table["I+F"] == (12 * q - 1, 18 * q)
        assert table["B+F"] == (15 * q - 1, 21 * q - 1)
        assert table["F+F"] == (20 * q - 2, 30 * q)
        # consecutive overlap: union is one interval [4q, 30q]
        spans = sorted(table.values())
        reach = spans[0][1]
        for lo, hi in spans[1:]:
            assert lo <= reach + 1
            reach = max(reach, hi)
        assert spans[0][0] == 4 * q and reach == 30 * q
        # I = [2Q, 3Q] really lies inside A_k (core for k=1, else filler k-1)
        for x in (2 * q, 2 * q + 1, 3 * q):
            cls = classify(x)
            if k == 1:
                assert cls.kind == "core" or x == 2 * q + 1 and q == 1
            else:
                assert cls.kind == "F" and cls.stage == k - 1


def test_cover_examples_and_method_agreement():
    r0 = sumset_cover_check(0)
    assert (r0.lo, r0.hi, r0.covered) == (4, 6, True)
    r1 = sumset_cover_check(1)
    assert (r1.lo, r1.hi, r1.covered) == (4, 30, True)
    for k in range(0, 5):
        pairs = sumset_cover_check(k, method="pairs")
        shift = sumset_cover_check(k, method="shift")
        assert pairs.covered and shift.covered
        assert pairs.first_gap is None and shift.first_gap is None


def test_cover_detects_gaps_on_broken_set():
    """Drop B_2 from the stage intervals: 45..49 loses its only representations."""
    limit = 15 * 5  # A_2 region
    intervals = [iv for iv in stage_intervals(limit) if iv != stage_block(2)]
    bits = 0
    for lo, hi in intervals:
        bits |= ((1 << (hi - lo + 1)) - 1) << lo
    sums = _sumset_bits(limit, intervals, bits)
    missing = {x for x in range(4, 6 * 25 + 1) if not (sums >> x) & 1}
    assert set(range(45, 50)) <= missing  # J_2 has no representation without B_2
    # sanity: the untouched set has no gap
    full = _sumset_bits(limit, stage_intervals(limit), _occupancy_int(limit))
    assert all((full >> x) & 1 for x in range(4, 151))


def test_rigidity_examples():
    r1 = rigidity_check(1)
    assert r1.interval == (9, 9) and r1.checked == 1 and r1.anchor == 4
    r2 = rigidity_check(2)
    assert r2.interval == (45, 49) and r2.checked == 5 and r2.anchor == 20
    # cross-check against the literal scan for the small stages
    for k in (1, 2, 3):
        lo, hi = rigidity_interval(k)
        c = stage_anchor(k)
        b_lo, b_hi = stage_block(k)
        for n in range(lo, hi + 1):
            pairs = representations(n).pairs
            assert pairs == ((c, n - c),)
            assert b_lo <= n - c <= b_hi


def test_gap_witness_examples():
    rep = gap_witness(constant_rule(1), 3)
    assert rep.interval == (225, 249)
    assert rep.gap_length == 25
    assert rep.gapped_color == 2
    rep = gap_witness(alternating_rule(), 4)
    assert rep.anchor_color == 1 and rep.gapped_color == 2
    for rule in (constant_rule(2), seeded_rule(5), alternating_rule()):
        rep = gap_witness(rule, 1)
        assert rep.interval == (9, 9)


def test_gap_witness_positive_control():
    """The color class holding c_k does reach J_k (constant rule, both colors)."""
    for color in (1, 2):
        rule = constant_rule(color)
        k = 3
        lo, hi = rigidity_interval(k)
        members = [x for x in enumerate_A(hi) if rule.color_of(x) == color]
        sums = {a + b for a in members for b in members if a <= b and a + b <= hi}
        assert set(range(lo, hi + 1)) <= sums


def test_gap_witness_battery_small():
    rng = random.Random(42)
    rules = [constant_rule(1), constant_rule(2), alternating_rule()] + [
        seeded_rule(rng.randrange(1 << 30)) for _ in range(10)
    ]
    for rule in rules:
        for k in range(1, 6):
            rep = gap_witness(rule, k)
            assert rep.gap_length == 5 ** (k - 1)
            assert rep.gapped_color != rule.anchor_color(k)


def test_partition_rule_batch_matches_scalar():
    xs = np.array(enumerate_A(3000), dtype=np.int64)
    for rule in (seeded_rule(1), seeded_rule(99), alternating_rule(), constant_rule(2)):
        batch = rule.colors_for(xs)
        scalar = np.array([rule.color_of(int(x)) for x in xs])
        np.testing.assert_array_equal(batch, scalar)


def test_rule_parsing():
    assert rule_from_name("all-c-to-1").name == "all-c-to-1"
    assert rule_from_name("alternating").name == "alternating"
    assert rule_from_name("random:7").name == "random:7"
    with pytest.raises(ValueError):
        rule_from_name("nope")


def test_input_validation():
    with pytest.raises(ValueError):
        sumset_cover_check(-1)
    with pytest.raises(ValueError):
        rigidity_check(0)
    with pytest.raises(ValueError):
        gap_witness(constant_rule(1), 0)
