import random

import pytest

from machch.core import CapabilityError, MalformedInputError, PreconditionError
from machch.diffsets import (
    NEITHER, PERFECT, RELAXED, DifferenceSet, build_rds, find_perfect_difference_set,
    verify_difference_set,
)
from machch.numtheory import ceil_sqrt
from oracles import lex_least_pds


def test_reference_pds_z7():
    rep = verify_difference_set(DifferenceSet(7, (0, 1, 3)))
    assert rep.level == PERFECT
    assert set(rep.counts.values()) == {1}


def test_single_element_is_neither():
    rep = verify_difference_set(DifferenceSet(2, (0,)))
    assert rep.level == NEITHER
    assert rep.missing == [1]


def test_reference_rds_z23():
    assert verify_difference_set(DifferenceSet(23, (0, 1, 2, 3, 4, 9, 14, 19))).level == RELAXED


def test_out_of_range_is_malformed():
    with pytest.raises(MalformedInputError):
        DifferenceSet(7, (0, 7))
    with pytest.raises(MalformedInputError):
        DifferenceSet(7, (1, 1))


def test_find_pds_L2_matches_reference():
    d = find_perfect_difference_set(2)
    assert d.p == 7 and d.elements == (0, 1, 3) and d.level == PERFECT


# Frozen from oracles.lex_least_pds (itertools enumeration).
@pytest.mark.parametrize("L, expected", [(3, (0, 1, 3, 9)), (5, (0, 1, 3, 8, 12, 18))])
def test_find_pds_frozen(L, expected):
    p = L * L + L + 1
    assert lex_least_pds(p, L + 1) == expected
    d = find_perfect_difference_set(L)
    assert d.elements == expected
    assert verify_difference_set(d).level == PERFECT


def test_find_pds_L8():
    d = find_perfect_difference_set(8)
    assert len(d) == 9 and d.p == 73
    assert verify_difference_set(d).level == PERFECT
    assert d.elements[:2] == (0, 1)


def test_find_pds_errors():
    with pytest.raises(PreconditionError):
        find_perfect_difference_set(4)  # 4 is a prime power but 21 is not prime
    with pytest.raises(PreconditionError):
        find_perfect_difference_set(6)
    with pytest.raises(CapabilityError, match="ceiling 11"):
        find_perfect_difference_set(17)


@pytest.mark.parametrize("L", [2, 3, 5, 8])
def test_pds_counting_identity_and_rotation_closure(L):
    d = find_perfect_difference_set(L)
    assert len(d) * (len(d) - 1) == d.p - 1
    for ell in range(d.p):
        rep = verify_difference_set(d.shifted(ell))
        assert rep.level == PERFECT


def test_build_rds_examples():
    d = build_rds(23, 5)
    assert d.elements == (0, 1, 2, 3, 4, 9, 14, 19) and len(d) == 8
    assert build_rds(4, 2).elements == (0, 1, 3)
    d = build_rds(101, 11)
    assert len(d) == 19 and len(d) ** 2 < 4 * 101
    assert d.level in (RELAXED, PERFECT)


def test_build_rds_errors():
    with pytest.raises(PreconditionError):
        build_rds(10, 1)
    with pytest.raises(PreconditionError):
        build_rds(3, 5)


def test_build_rds_size_bound_sampled():
    rng = random.Random(0)
    ps = list(range(4, 400)) + rng.sample(range(400, 10 ** 5 + 1), 30)
    for p in ps:
        d = build_rds(p, ceil_sqrt(p))
        assert len(d) ** 2 < 4 * p  # |D| < 2 sqrt(p), squared to stay in integers
        assert verify_difference_set(d).level != NEITHER


def test_rds_size_bound_full_range():
    from machch.numtheory import rds_size
    assert all(rds_size(p) ** 2 < 4 * p for p in range(4, 10 ** 5 + 1))
