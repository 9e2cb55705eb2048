"""Brute-force reference implementations used only by the tests.

Deliberately naive and independent of the package's code paths: plain
Python loops, no numpy, no shared helpers.
"""
from itertools import combinations


def sieve(n):
    flags = [True] * (n + 1)
    flags[0] = flags[1] = False
    for i in range(2, int(n ** 0.5) + 1):
        if flags[i]:
            for j in range(i * i, n + 1, i):
                flags[j] = False
    return flags


def trial_division_is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def ceil_sqrt_by_counting(n):
    c = 0
    while c * c < n:
        c += 1
    return c


def general_prime_scan(N):
    p = 2
    while True:
        if trial_division_is_prime(p):
            c = ceil_sqrt_by_counting(p)
            if p - (c + p // c - 1) >= N:
                return p
        p += 1


def lex_least_pds(p, k):
    """Enumerate k-subsets containing {0, 1} in lexicographic order."""
    for rest in combinations(range(2, p), k - 2):
        d = (0, 1) + rest
        diffs = [(a - b) % p for a in d for b in d if a != b]
        if len(set(diffs)) == p - 1:
            return d
    return None


def dense_correlation(grid, delta, tau):
    p = len(grid)
    return sum(
        grid[(i + delta) % p][(j + tau) % p] * grid[i][j]
        for i in range(p) for j in range(p)
    )


def mrd_2d_hole(a, b, n, skip_tau_zero=False):
    """First (delta, tau, k) with no i, j such that a[i][j] == b[i+delta][j+tau] == k."""
    p, q = len(a), len(a[0])
    for delta in range(p):
        for tau in range(q):
            if skip_tau_zero and tau == 0:
                continue
            seen = set()
            for i in range(p):
                for j in range(q):
                    v = a[i][j]
                    if v == b[(i + delta) % p][(j + tau) % q]:
                        seen.add(v)
            for k in range(n):
                if k not in seen:
                    return delta, tau, k
    return None


def mrd_1d_hole(seq, n):
    period = len(seq)
    for d in range(period):
        seen = {seq[t] for t in range(period) if seq[t] == seq[(t + d) % period]}
        for k in range(n):
            if k not in seen:
                return d, k
    return None


def slot_by_slot(seq1, seq2, drift, horizon, common):
    """(T, {k: T_k}, T_sharp) by direct simulation, +1 convention."""
    ttr = None
    per = {k: None for k in common}
    for t in range(horizon):
        x1 = seq1[t % len(seq1)]
        x2 = seq2[(t + drift) % len(seq2)]
        if x1 == x2:
            if ttr is None:
                ttr = t + 1
            if x1 in per and per[x1] is None:
                per[x1] = t + 1
    t_sharp = None if any(v is None for v in per.values()) else max(per.values())
    return ttr, per, t_sharp
