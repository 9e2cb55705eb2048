import numpy as np
import pytest

from machch.core import ChMatrix, ChSequence, PreconditionError
from machch.idealmat import build_preset
from machch.machseq import (
    approximation_ratio, build_general_mach_matrix, build_mach_matrix, build_semi_mach,
    general_mach_sequence, ideal_ch, mach_matrix_to_sequence, verify_1d_mrd, verify_2d_mrd,
    verify_aligned_boxes,
)
from machch.numtheory import general_prime_for
from oracles import mrd_1d_hole, mrd_2d_hole

REF_SEMI_MACH = [
    [1, 2, 4, 0, 4, 2, 1],
    [2, 3, 5, 1, 5, 3, 2],
    [3, 4, 6, 2, 6, 4, 3],
    [4, 5, 0, 3, 0, 5, 4],
    [5, 6, 1, 4, 1, 6, 5],
    [6, 0, 2, 5, 2, 0, 6],
    [0, 1, 3, 6, 3, 1, 0],
]

REF_MACH_L2 = [
    [0, 0, 1, 3, 1, 0, 2],
    [0, 1, 2, 3, 2, 1, 0],
    [0, 1, 3, 0, 3, 1, 2],
    [1, 2, 2, 3, 0, 2, 1],
    [2, 3, 2, 1, 0, 3, 2],
    [3, 1, 0, 2, 0, 1, 3],
    [0, 1, 2, 3, 0, 1, 2],
]

REF_SEQ_HEAD = [0, 0, 1, 3, 1, 0, 2, 0, 0, 1, 3, 1, 0, 2, 0, 1, 2, 3, 2, 1, 0,
                  0, 1, 2, 3, 2, 1, 0, 0, 1, 3, 0, 3, 1, 2, 0, 1, 3, 0, 3, 1, 2]
REF_SEQ_TAIL = [3, 1, 0, 2, 0, 1, 3, 0, 1, 2, 3, 0, 1, 2, 0, 1, 2, 3, 0, 1, 2]


def test_semi_mach_p7_matches_reference():
    semi = build_semi_mach(build_preset(7))
    assert semi.tolist() == REF_SEMI_MACH
    assert semi.role == "semi_mach"


def test_semi_mach_columns_are_permutations():
    for p in (7, 13, 31):
        semi = build_semi_mach(build_preset(p))
        for j in range(p):
            assert sorted(semi.cells[:, j].tolist()) == list(range(p))


def test_semi_mach_p13_tau_split():
    semi = build_semi_mach(build_preset(13))
    assert verify_2d_mrd(semi, skip_tau_zero=True).passed
    cert = verify_2d_mrd(semi)
    assert not cert.passed
    delta, tau, _ = cert.witness
    assert delta != 0 and tau == 0


def test_semi_mach_p7_verifier_against_oracle():
    semi = build_semi_mach(build_preset(7))
    assert verify_2d_mrd(semi).witness == mrd_2d_hole(REF_SEMI_MACH, REF_SEMI_MACH, 7)
    assert mrd_2d_hole(REF_SEMI_MACH, REF_SEMI_MACH, 7, skip_tau_zero=True) is None


def test_mach_L2_matches_reference():
    c = build_mach_matrix(2)
    assert c.tolist() == REF_MACH_L2
    assert c.channel_universe == 4 and c.role == "mach"
    assert c.meta["difference_set"] == (0, 1, 3)


def test_mach_L2_complement_remap():
    c = build_mach_matrix(2)
    semi = np.array(REF_SEMI_MACH)
    cells = c.cells
    for b, ell in {2: 0, 4: 1, 5: 2, 6: 3}.items():
        assert (cells[semi == b] == ell).all()


def test_mach_L2_vertical_shift_case():
    cells = build_mach_matrix(2).cells
    p = 7
    for j in range(4):
        col = cells[:, j]
        assert any(col[i] == col[(i + 1) % p] == j for i in range(p))


@pytest.mark.parametrize("L", [2, 3])
def test_mach_full_2d_mrd_against_oracle(L):
    c = build_mach_matrix(L)
    assert verify_2d_mrd(c).passed
    assert mrd_2d_hole(c.tolist(), c.tolist(), L * L) is None


def test_mach_L5():
    c = build_mach_matrix(5)
    assert c.rows == 31 and c.channel_universe == 25
    assert verify_2d_mrd(c).passed


@pytest.mark.parametrize("L", [2, 3, 5])
def test_anchor_property(L):
    c = build_mach_matrix(L)
    n = L * L
    for i, j in c.meta["dots"]:
        assert c.cells[i, j] == j % n


def test_mach_invalid_L():
    with pytest.raises(PreconditionError):
        build_mach_matrix(4)


@pytest.mark.parametrize("N", [1, 2, 4, 7, 20])
def test_general_mach(N):
    c = build_general_mach_matrix(N)
    assert c.rows == general_prime_for(N)
    assert verify_2d_mrd(c, N).passed
    if N == 1:
        assert (c.cells == 0).all()
    if N >= 16:
        assert c.rows < 4 * N


def test_general_mach_N4_against_oracle():
    c = build_general_mach_matrix(4)
    assert mrd_2d_hole(c.tolist(), c.tolist(), 4) is None


def test_verify_2d_mrd_zero_shift_trivial():
    c = build_mach_matrix(2)
    shifted = np.roll(c.cells, 0, axis=(0, 1))
    assert set(c.cells[c.cells == shifted].tolist()) == {0, 1, 2, 3}


def test_verify_2d_mrd_rejects_non_square():
    c = ChMatrix(np.zeros((3, 4)), 1, "mach")
    with pytest.raises(PreconditionError):
        verify_2d_mrd(c)


def test_sequence_L2_matches_reference_listing():
    s = ideal_ch(2)
    assert s.period == 98 and s.channel_universe == 4
    values = s.tolist()
    assert values[:42] == REF_SEQ_HEAD
    assert values[-21:] == REF_SEQ_TAIL


def test_sequence_row_halves_repeat():
    c = build_mach_matrix(3)
    s = mach_matrix_to_sequence(c)
    p = c.rows
    v = s.tolist()
    for t in range(s.period):
        assert v[t] == c.cells[t // (2 * p), t % p]
        if t % (2 * p) < p:
            assert v[t] == v[t + p]


@pytest.mark.parametrize("L, period", [(2, 98), (3, 338), (5, 1922)])
def test_ideal_ch_periods_and_1d_mrd(L, period):
    s = ideal_ch(L)
    assert s.period == period and s.channel_universe == L * L
    assert verify_1d_mrd(s).passed
    assert verify_aligned_boxes(s, L * L + L + 1).passed


def test_1d_mrd_against_oracle_L2():
    s = ideal_ch(2)
    assert mrd_1d_hole(s.tolist(), 4) is None


def test_1d_mrd_constant_sequences():
    zeros = ChSequence(np.zeros(5), 2)
    assert verify_1d_mrd(zeros, 1).passed
    cert = verify_1d_mrd(zeros, 2)
    assert not cert.passed and cert.witness == (0, 1)


def test_1d_mrd_detects_corruption():
    s = ideal_ch(2)
    v = s.values.copy()
    # Channel 3 appears once per row in the first half; wiping it from several rows breaks something.
    v[v == 3] = 0
    cert = verify_1d_mrd(ChSequence(v, 4))
    assert not cert.passed
    assert cert.witness == mrd_1d_hole(v.tolist(), 4)


def test_general_sequence_round_trip():
    for N in (3, 10):
        s = general_mach_sequence(N)
        assert verify_1d_mrd(s, N).passed


def test_approximation_ratio():
    rep = approximation_ratio(1000)
    assert rep.usable_channels >= 1000
    assert rep.ratio == type(rep.ratio)(2 * rep.p ** 2, rep.usable_channels ** 2)
    assert 2 < float(rep.ratio) < 2.3
    big = approximation_ratio(10 ** 5)
    assert 2 < float(big.ratio) < 2.05
    assert big.ratio < rep.ratio
