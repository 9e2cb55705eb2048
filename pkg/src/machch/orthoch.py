"""Orthogonal MACH matrices c^(r)_{i,j} = (r*i + j) mod p and the ORTHO-CH sequence."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import Certification, ChMatrix, ChSequence, PreconditionError, counter_draws
from .machseq import cross_mrd
from .numtheory import is_prime, smallest_prime_geq


@dataclass(frozen=True)
class OrthoFamily:
    p: int
    members: tuple[ChMatrix, ...]

    def member(self, r: int) -> ChMatrix:
        if not 1 <= r < self.p:
            raise PreconditionError(f"member index r={r} outside [1, {self.p - 1}]")
        return self.members[r - 1]


def ortho_member(p: int, r: int) -> ChMatrix:
    i = np.arange(p).reshape(-1, 1)
    j = np.arange(p).reshape(1, -1)
    return ChMatrix((r * i + j) % p, p, "ortho_member", {"p": p, "r": r})


def build_ortho_family(p: int) -> OrthoFamily:
    if not is_prime(p):
        raise PreconditionError(f"p={p} is not prime")
    return OrthoFamily(p, tuple(ortho_member(p, r) for r in range(1, p)))


def verify_cover(a: ChMatrix, n_channels: int) -> Certification:
    """Every channel k < N appears in every column."""
    cells = a.cells
    for j in range(a.cols):
        col = set(cells[:, j].tolist())
        for k in range(n_channels):
            if k not in col:
                return Certification(False, "cover", (j, k), ("column", "k"))
    return Certification(True, "cover", detail={"N": n_channels})


def coincidence_witness(p: int, r1: int, r2: int, delta: int, tau: int, k: int) -> tuple[int, int]:
    """The constructive coincidence cell (i*, j*) for members r1 != r2.

    i* solves (r1 - r2) i = r2*delta + tau (mod p) and j* = k - r1*i* (mod p).
    """
    inv = pow((r1 - r2) % p, -1, p)
    i_star = (inv * (r2 * delta + tau)) % p
    j_star = (k - r1 * i_star) % p
    return i_star, j_star


def verify_ortho_pair(a: ChMatrix, b: ChMatrix, n_channels: int) -> Certification:
    """Exhaustive cross 2D-MRD between two members, plus the closed-form witness."""
    if a.cells.shape != b.cells.shape:
        raise PreconditionError("members must have the same order p")
    p = a.rows
    r1, r2 = a.meta.get("r"), b.meta.get("r")
    if r1 is not None and r1 == r2:
        raise PreconditionError("cross 2D-MRD is defined for distinct members only")
    hole = cross_mrd(a.cells, b.cells, n_channels)
    if hole is not None:
        return Certification(False, "ortho-pair", hole, ("delta", "tau", "k"))
    if r1 is not None and r2 is not None:
        A, B = a.cells, b.cells
        for delta in range(p):
            for tau in range(p):
                for k in range(n_channels):
                    i, j = coincidence_witness(p, r1, r2, delta, tau, k)
                    if not (A[i, j] == k == B[(i + delta) % p, (j + tau) % p]):
                        return Certification(
                            False, "ortho-pair witness", (delta, tau, k), ("delta", "tau", "k"),
                        )
    return Certification(True, "ortho-pair", detail={"p": p, "r": (r1, r2)})


def verify_family(family: OrthoFamily, n_channels: int | None = None) -> Certification:
    n = family.p if n_channels is None else n_channels
    for m in family.members:
        cert = verify_cover(m, n)
        if not cert:
            return Certification(False, "ortho-family cover", (m.meta["r"], *cert.witness),
                                 ("r", "column", "k"))
    for a in family.members:
        for b in family.members:
            if a is b:
                continue
            cert = verify_ortho_pair(a, b, n)
            if not cert:
                return Certification(False, "ortho-family pair",
                                     (a.meta["r"], b.meta["r"], *cert.witness),
                                     ("r1", "r2", "delta", "tau", "k"))
    return Certification(True, "ortho-family", detail={"p": family.p, "N": n})


def extended_matrix(p: int, r: int) -> ChMatrix:
    """(r | C^(r) | C^(r)), a p x (2p+1) matrix."""
    c = ortho_member(p, r).cells
    id_col = np.full((p, 1), r, dtype=np.int64)
    return ChMatrix(np.concatenate([id_col, c, c], axis=1), p, "ortho_extended", {"p": p, "r": r})


def _check_avail(avail: Iterable[int], n_channels: int) -> list[int]:
    chans = sorted(set(int(c) for c in avail))
    if not chans:
        raise PreconditionError("available channel set is empty")
    bad = [c for c in chans if not 0 <= c < n_channels]
    if bad:
        raise PreconditionError(f"channels {bad} outside [0, {n_channels})")
    return chans


def replace_unavailable(values: np.ndarray, avail: Sequence[int], seed: int) -> np.ndarray:
    """Per-slot independent replacement of channels outside ``avail``."""
    avail_arr = np.asarray(sorted(avail), dtype=np.int64)
    picks = avail_arr[counter_draws(seed, values.size, avail_arr.size)]
    return np.where(np.isin(values, avail_arr), values, picks)


def choose_id_channel(avail: Sequence[int], seed: int) -> int:
    candidates = [c for c in sorted(avail) if c != 0]
    return candidates[int(counter_draws(seed, 1, len(candidates), stream=1)[0])]


def ortho_ch(avail: Iterable[int], n_channels: int, seed: int = 0, r: int | None = None) -> ChSequence:
    """ORTHO-CH sequence of period (2p+1)p, p the least prime >= N.

    ``r`` forces the ID channel (it must be a nonzero available channel);
    otherwise it is drawn from ``avail - {0}`` using ``seed``.
    """
    chans = _check_avail(avail, n_channels)
    p = smallest_prime_geq(n_channels)
    period = (2 * p + 1) * p
    if chans == [0]:
        return ChSequence(np.zeros(period, dtype=np.int64), n_channels,
                          f"ortho-ch:N={n_channels},avail=0,seed={seed}")
    if r is None:
        r = choose_id_channel(chans, seed)
    elif r == 0 or r not in chans:
        raise PreconditionError(f"ID channel r={r} must be a nonzero available channel")
    raw = extended_matrix(p, r).cells.reshape(-1)
    values = replace_unavailable(raw, chans, seed)
    prov = f"ortho-ch:N={n_channels},p={p},r={r},seed={seed},replace=per-slot"
    return ChSequence(values, n_channels, prov)


def mttr_bound(n_channels: int) -> int:
    if n_channels < 1:
        raise PreconditionError("need at least one channel")
    p = smallest_prime_geq(n_channels)
    return (2 * p + 1) * p
