"""Elliot-Butson ideal matrices stored as column -> function tables.

Column j of a p x p ideal matrix carries its single dot at row
``p - 1 - f[j]`` (row 0 is the top row).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Certification, PreconditionError
from .numtheory import is_prime

PRESETS = ("triangular", "pentagonal")


@dataclass(frozen=True)
class IdealMatrix:
    p: int
    f: tuple[int, ...]
    coefficients: tuple[int, int, int] | None = None

    def __post_init__(self) -> None:
        if len(self.f) != self.p or any(not 0 <= v < self.p for v in self.f):
            raise PreconditionError("f must have length p with values in [0, p)")

    def dot_row(self, j: int) -> int:
        return self.p - 1 - self.f[j % self.p]

    def dots(self) -> list[tuple[int, int]]:
        """(row, col) of every dot, column order."""
        return [(self.dot_row(j), j) for j in range(self.p)]

    def dense(self) -> np.ndarray:
        m = np.zeros((self.p, self.p), dtype=np.int64)
        for i, j in self.dots():
            m[i, j] = 1
        return m

    def render(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.dense().tolist()) + "\n"


def build_ideal_matrix(p: int, c2: int, c1: int = 0, c0: int = 0) -> IdealMatrix:
    """f(j) = (c2 j^2 + c1 j + c0) mod p with p prime and c2 != 0 mod p."""
    if not is_prime(p):
        raise PreconditionError(f"p={p} is not prime")
    if c2 % p == 0:
        raise PreconditionError("leading coefficient c2 must be nonzero mod p")
    coeffs = (c2 % p, c1 % p, c0 % p)
    f = tuple((coeffs[0] * j * j + coeffs[1] * j + coeffs[2]) % p for j in range(p))
    return IdealMatrix(p, f, coeffs)


def preset_coefficients(p: int, preset: str) -> tuple[int, int, int]:
    """Coefficients (c2, c1, c0) of the named quadratic, reduced mod p.

    triangular: j(j+1)/2;  pentagonal: j(3j-1)/2.  Both need 2 invertible.
    """
    if p < 3 or not is_prime(p):
        raise PreconditionError(f"preset {preset!r} needs an odd prime, got p={p}")
    half = pow(2, -1, p)
    if preset == "triangular":
        return half, half, 0
    if preset == "pentagonal":
        return (3 * half) % p, (-half) % p, 0
    raise PreconditionError(f"unknown preset {preset!r}; choose from {PRESETS}")


def build_preset(p: int, preset: str = "triangular") -> IdealMatrix:
    return build_ideal_matrix(p, *preset_coefficients(p, preset))


def correlation(m: IdealMatrix, delta: int, tau: int) -> int:
    """Doubly periodic autocorrelation rho(delta, tau), O(p).

    A dot at (i, j) meets a dot of the shifted pattern iff the dot of column
    j + tau sits at row i + delta, i.e. f(j + tau) == f(j) - delta (mod p).
    """
    p, f = m.p, m.f
    return sum(1 for j in range(p) if f[(j + tau) % p] == (f[j] - delta) % p)


def correlation_dense(m: IdealMatrix, delta: int, tau: int) -> int:
    """Reference O(p^2) evaluation straight from the 0/1 grid."""
    dense = m.dense()
    shifted = np.roll(dense, (-delta, -tau), axis=(0, 1))
    return int((dense * shifted).sum())


def correlation_table(m: IdealMatrix) -> np.ndarray:
    p = m.p
    f = np.array(m.f, dtype=np.int64)
    table = np.empty((p, p), dtype=np.int64)
    for tau in range(p):
        # rho(delta, tau) = #{j : f[j] - f[j+tau] == delta}
        diffs = (f - np.roll(f, -tau)) % p
        table[:, tau] = np.bincount(diffs, minlength=p)
    return table


def verify_ideal(m: IdealMatrix) -> Certification:
    p = m.p
    table = correlation_table(m)
    for delta in range(p):
        for tau in range(p):
            rho = int(table[delta, tau])
            if delta == 0 and tau == 0:
                want = p
            elif tau == 0:
                want = 0
            else:
                want = 1
            if rho != want:
                return Certification(
                    False, "ideal", (delta, tau, rho), ("delta", "tau", "rho"),
                    {"p": p},
                )
    return Certification(True, "ideal", detail={"p": p, "sum": int(table.sum())})
