"""Integer helpers: primality, prime powers, and the two prime-search rules
used to size the channel-hopping constructions."""
from __future__ import annotations

from math import isqrt


def is_prime(n: int) -> bool:
    """Deterministic trial division. Exact for every n this package touches."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    limit = isqrt(n)
    f = 5
    while f <= limit:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def ceil_sqrt(n: int) -> int:
    """Smallest c with c*c >= n (n >= 0), in exact integer arithmetic."""
    if n < 0:
        raise ValueError("ceil_sqrt of a negative number")
    if n == 0:
        return 0
    return isqrt(n - 1) + 1


def iroot(n: int, e: int) -> int:
    """Floor of the e-th root of n >= 0, by integer Newton iteration."""
    if n < 0 or e < 1:
        raise ValueError("iroot needs n >= 0 and e >= 1")
    if n < 2 or e == 1:
        return n
    x = 1 << ((n.bit_length() + e - 1) // e)  # upper bound on the root
    while True:
        y = ((e - 1) * x + n // x ** (e - 1)) // e
        if y >= x:
            return x
        x = y


def is_prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(q, e)`` with q prime and ``q**e == n``, or None."""
    if n < 2:
        return None
    for e in range(n.bit_length() - 1, 0, -1):
        q = iroot(n, e)
        if q >= 2 and q ** e == n and is_prime(q):
            return q, e
    return None


def smallest_prime_geq(n: int) -> int:
    p = max(n, 2)
    while not is_prime(p):
        p += 1
    return p


def rds_size(p: int, spacing: int | None = None) -> int:
    """Size of the delimiter-plus-comb relaxed difference set in Z_p."""
    d = ceil_sqrt(p) if spacing is None else spacing
    return d + p // d - 1


def general_prime_for(n_channels: int) -> int:
    """Least prime p with ``p - rds_size(p) >= n_channels``.

    This is the period parameter of the general MACH-matrix construction: the
    relaxed difference set eats ``rds_size(p)`` of the p symbols and the rest
    must cover every channel.
    """
    if n_channels < 1:
        raise ValueError("need at least one channel")
    p = n_channels + 1  # rds_size(p) >= 1, so nothing below N+1 qualifies
    while True:
        if is_prime(p) and p - rds_size(p) >= n_channels:
            return p
        p += 1


def valid_ideal_L_list(limit: int) -> list[int]:
    """All L <= limit with L a prime power and L^2 + L + 1 prime."""
    return [
        L for L in range(2, limit + 1)
        if is_prime_power(L) is not None and is_prime(L * L + L + 1)
    ]


def is_valid_ideal_L(L: int) -> bool:
    return L >= 2 and is_prime_power(L) is not None and is_prime(L * L + L + 1)
