"""Semi-MACH and MACH matrices, the MACH-sequence read-out (IDEAL-CH), and
their exhaustive rendezvous-diversity verifiers."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import Certification, ChMatrix, ChSequence, PreconditionError
from .diffsets import DifferenceSet, build_rds, find_perfect_difference_set
from .idealmat import IdealMatrix, build_preset
from .numtheory import ceil_sqrt, general_prime_for, is_valid_ideal_L, rds_size

DEFAULT_PRESET = "triangular"


def build_semi_mach(m: IdealMatrix) -> ChMatrix:
    """Replace each ideal-matrix column by the rotation that puts channel 0 on its dot."""
    p = m.p
    rows = np.arange(p).reshape(-1, 1)
    dot_rows = np.array([m.dot_row(j) for j in range(p)]).reshape(1, -1)
    cells = (rows - dot_rows) % p
    return ChMatrix(cells, p, "semi_mach", {"p": p, "f": m.f, "coefficients": m.coefficients})


def embed_difference_set(semi: ChMatrix, d: DifferenceSet, n_channels: int) -> np.ndarray:
    """Channel mapping: symbols in ``d`` become the column index mod N, the
    l-th symbol of the complement becomes l mod N."""
    p = semi.rows
    if d.p != p:
        raise PreconditionError(f"difference set lives in Z_{d.p}, matrix is {p}x{p}")
    remap = np.full(p, -1, dtype=np.int64)
    for ell, b in enumerate(d.complement()):
        remap[b] = ell % n_channels
    cells = remap[semi.cells]
    in_d = np.isin(semi.cells, np.array(d.elements))
    col_channel = np.broadcast_to(np.arange(p) % n_channels, (p, p))
    return np.where(in_d, col_channel, cells)


def build_mach_matrix(L: int, preset: str = DEFAULT_PRESET) -> ChMatrix:
    """(L^2, p)-MACH matrix, p = L^2 + L + 1, from an embedded perfect difference set."""
    if not is_valid_ideal_L(L):
        raise PreconditionError(f"L={L} must be a prime power with L^2+L+1 prime")
    p = L * L + L + 1
    ideal = build_preset(p, preset)
    semi = build_semi_mach(ideal)
    d = find_perfect_difference_set(L)
    n = L * L
    cells = embed_difference_set(semi, d, n)
    return ChMatrix(cells, n, "mach", {
        "L": L, "p": p, "preset": preset, "difference_set": d.elements,
        "dots": ideal.dots(), "semi": semi,
    })


def build_general_mach_matrix(n_channels: int, preset: str = DEFAULT_PRESET) -> ChMatrix:
    """(N, p)-MACH matrix for any N, using the comb relaxed difference set."""
    if n_channels < 1:
        raise PreconditionError("need at least one channel")
    p = general_prime_for(n_channels)
    ideal = build_preset(p, preset)
    semi = build_semi_mach(ideal)
    d = build_rds(p, ceil_sqrt(p))
    cells = embed_difference_set(semi, d, n_channels)
    return ChMatrix(cells, n_channels, "mach", {
        "N": n_channels, "p": p, "preset": preset, "difference_set": d.elements,
        "dots": ideal.dots(), "semi": semi,
    })


def _coverage_hole(a: np.ndarray, b_shifted: np.ndarray, n: int) -> int | None:
    """Least channel k < n with no cell where a == b_shifted == k, else None."""
    hits = a[a == b_shifted]
    present = np.zeros(n, dtype=bool)
    present[hits[hits < n]] = True
    if present.all():
        return None
    return int(np.argmin(present))


def cross_mrd(a: np.ndarray, b: np.ndarray, n: int, skip_tau_zero: bool = False) -> tuple[int, int, int] | None:
    """First (delta, tau, k) with no coincidence a[i,j] == b[i+delta, j+tau] == k."""
    p, q = a.shape
    for delta in range(p):
        for tau in range(q):
            if skip_tau_zero and tau == 0:
                continue
            shifted = np.roll(b, (-delta, -tau), axis=(0, 1))
            k = _coverage_hole(a, shifted, n)
            if k is not None:
                return delta, tau, k
    return None


def verify_2d_mrd(c: ChMatrix, n_channels: int | None = None, skip_tau_zero: bool = False) -> Certification:
    if c.rows != c.cols:
        raise PreconditionError(f"2D-MRD needs a square matrix, got {c.rows}x{c.cols}")
    n = c.channel_universe if n_channels is None else n_channels
    hole = cross_mrd(c.cells, c.cells, n, skip_tau_zero)
    name = "2d-mrd" + (" (tau != 0)" if skip_tau_zero else "")
    if hole is None:
        return Certification(True, name, detail={"p": c.rows, "N": n})
    return Certification(False, name, hole, ("delta", "tau", "k"), {"p": c.rows, "N": n})


def mach_matrix_to_sequence(c: ChMatrix, provenance: str | None = None) -> ChSequence:
    """Row-major read-out of (C | C): c(t) = C[t // 2p][t mod p], period 2p^2."""
    if c.rows != c.cols:
        raise PreconditionError("MACH read-out needs a square matrix")
    doubled = np.concatenate([c.cells, c.cells], axis=1)
    prov = provenance or f"mach-readout:p={c.rows}"
    return ChSequence(doubled.reshape(-1), c.channel_universe, prov)


def verify_1d_mrd(s: ChSequence, n_channels: int | None = None) -> Certification:
    n = s.channel_universe if n_channels is None else n_channels
    v = s.values
    for d in range(s.period):
        k = _coverage_hole(v, np.roll(v, -d), n)
        if k is not None:
            return Certification(False, "1d-mrd", (d, k), ("d", "k"), {"period": s.period, "N": n})
    return Certification(True, "1d-mrd", detail={"period": s.period, "N": n})


def verify_aligned_boxes(s: ChSequence, p: int, n_channels: int | None = None) -> Certification:
    """Check that, for every drift d, the aligned half of each 2p-wide row alone
    covers all channels.

    Write d = 2p*delta + tau.  When tau <= p the first p slots of every row of
    the shifted sequence form a box copied from C; otherwise the second p
    slots do.  Restricting coincidences to that half must still cover every
    channel.
    """
    if s.period != 2 * p * p:
        raise PreconditionError(f"expected period {2 * p * p}, got {s.period}")
    n = s.channel_universe if n_channels is None else n_channels
    v = s.values
    first_half = (np.arange(s.period) % (2 * p)) < p
    for d in range(s.period):
        tau = d % (2 * p)
        keep = first_half if tau <= p else ~first_half
        k = _coverage_hole(v[keep], np.roll(v, -d)[keep], n)
        if k is not None:
            return Certification(False, "aligned-box", (d, k), ("d", "k"), {"p": p})
    return Certification(True, "aligned-box", detail={"p": p})


def ideal_ch(L: int, preset: str = DEFAULT_PRESET) -> ChSequence:
    """IDEAL-CH: period 2(L^2+L+1)^2 over L^2 channels."""
    c = build_mach_matrix(L, preset)
    return mach_matrix_to_sequence(c, f"ideal-ch:L={L},preset={preset}")


def general_mach_sequence(n_channels: int, preset: str = DEFAULT_PRESET) -> ChSequence:
    c = build_general_mach_matrix(n_channels, preset)
    return mach_matrix_to_sequence(c, f"general-mach:N={n_channels},p={c.rows},preset={preset}")


@dataclass(frozen=True)
class RatioReport:
    n_channels: int
    p: int
    rds_size: int
    usable_channels: int
    ratio: Fraction

    @property
    def period(self) -> int:
        return 2 * self.p * self.p

    def __float__(self) -> float:
        return float(self.ratio)


def approximation_ratio(n_channels: int) -> RatioReport:
    """Parameters of the general construction and 2p^2 / (p - |D|)^2."""
    if n_channels < 1:
        raise PreconditionError("need at least one channel")
    p = general_prime_for(n_channels)
    size = rds_size(p)
    usable = p - size
    return RatioReport(n_channels, p, size, usable, Fraction(2 * p * p, usable * usable))

