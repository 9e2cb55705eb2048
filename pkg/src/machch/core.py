"""Shared value types, errors and the plain-text export formats."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

import numpy as np


class PreconditionError(ValueError):
    """An input violates the documented precondition of an operation."""


class CapabilityError(RuntimeError):
    """The request is valid but beyond what this build is configured to do."""


class MalformedInputError(ValueError):
    """Structurally broken input (out-of-range residue, unparsable file, ...)."""


_GOLDEN = np.uint64(0x9E3779B97F4A7C15)


def counter_draws(seed: int, length: int, choices: int, stream: int = 0) -> np.ndarray:
    """Uniform picks in [0, choices) where draw t depends only on (seed, stream, t).

    splitmix64 finalizer over a (seed, stream, t) counter; modulo bias is below
    2**-50 for the channel counts used here.
    """
    key = (seed * 0x632BE59BD9B4E019 + stream * 0x85EBCA77C2B2AE63) & 0xFFFFFFFFFFFFFFFF
    with np.errstate(over="ignore"):
        z = np.uint64(key) + (np.arange(1, length + 1, dtype=np.uint64) * _GOLDEN)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        z = z ^ (z >> np.uint64(31))
    return (z % np.uint64(choices)).astype(np.int64)


@dataclass(frozen=True)
class Certification:
    """Outcome of an exhaustive check.

    ``witness`` is the lexicographically least violating tuple when the check
    fails; its layout is described by ``witness_fields``.
    """

    passed: bool
    check: str
    witness: tuple[int, ...] | None = None
    witness_fields: tuple[str, ...] = ()
    detail: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def describe(self) -> str:
        if self.passed:
            return f"{self.check}: pass"
        pairs = ", ".join(f"{k}={v}" for k, v in zip(self.witness_fields, self.witness or ()))
        return f"{self.check}: FAIL at ({pairs})"


ROLES = ("semi_mach", "mach", "ortho_member", "ortho_extended")


@dataclass(frozen=True, eq=False)
class ChMatrix:
    """A matrix of channel indices.

    ``meta`` carries construction parameters (``L``, ``r``, the difference set,
    the ideal-matrix coefficients) that verifiers and tests may need.
    """

    cells: np.ndarray
    channel_universe: int
    role: str
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cells = np.asarray(self.cells, dtype=np.int64)
        if cells.ndim != 2:
            raise MalformedInputError("channel matrix must be 2-dimensional")
        if self.role not in ROLES:
            raise MalformedInputError(f"unknown role {self.role!r}")
        if cells.size and (cells.min() < 0 or cells.max() >= self.channel_universe):
            raise MalformedInputError("cell outside [0, channel_universe)")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    @property
    def rows(self) -> int:
        return self.cells.shape[0]

    @property
    def cols(self) -> int:
        return self.cells.shape[1]

    def tolist(self) -> list[list[int]]:
        return self.cells.tolist()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChMatrix):
            return NotImplemented
        return (
            self.role == other.role
            and self.channel_universe == other.channel_universe
            and np.array_equal(self.cells, other.cells)
        )


@dataclass(frozen=True, eq=False)
class ChSequence:
    values: np.ndarray
    channel_universe: int
    provenance: str = "unknown"

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.int64)
        if values.ndim != 1 or values.size == 0:
            raise MalformedInputError("sequence must be a nonempty 1-D array")
        if values.min() < 0 or values.max() >= self.channel_universe:
            raise MalformedInputError("sequence value outside [0, channel_universe)")
        if len(self.provenance.split()) != 1:
            raise MalformedInputError("provenance must be one nonempty token")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def period(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.period

    def __getitem__(self, t: int) -> int:
        return int(self.values[t % self.period])

    def tolist(self) -> list[int]:
        return self.values.tolist()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChSequence):
            return NotImplemented
        return (
            self.channel_universe == other.channel_universe
            and np.array_equal(self.values, other.values)
        )


def format_matrix(rows: Iterable[Iterable[int]]) -> str:
    """One row per line, entries space-separated."""
    return "\n".join(" ".join(str(int(v)) for v in row) for row in rows) + "\n"


def format_sequence(seq: ChSequence, per_line: int = 0) -> str:
    """Header ``period N provenance`` then the channel indices.

    ``per_line`` > 0 wraps the body (for instance at the matrix width); the
    parser does not care about line breaks in the body.
    """
    vals = [str(v) for v in seq.tolist()]
    if per_line > 0:
        body = "\n".join(" ".join(vals[i:i + per_line]) for i in range(0, len(vals), per_line))
    else:
        body = " ".join(vals)
    return f"{seq.period} {seq.channel_universe} {seq.provenance}\n{body}\n"


def parse_sequence(text: str) -> ChSequence:
    lines = text.splitlines()
    header_idx = next((i for i, ln in enumerate(lines) if ln.strip()), None)
    if header_idx is None:
        raise MalformedInputError("line 1: empty sequence file")
    header = lines[header_idx].split()
    if len(header) != 3:
        raise MalformedInputError(
            f"line {header_idx + 1}: header must be 'period N provenance', got {lines[header_idx]!r}"
        )
    try:
        period, universe = int(header[0]), int(header[1])
    except ValueError:
        raise MalformedInputError(f"line {header_idx + 1}: period and N must be integers") from None
    if period < 1 or universe < 1:
        raise MalformedInputError(f"line {header_idx + 1}: period and N must be positive")
    values: list[int] = []
    for lineno, line in enumerate(lines[header_idx + 1:], start=header_idx + 2):
        for tok in line.split():
            try:
                v = int(tok)
            except ValueError:
                raise MalformedInputError(f"line {lineno}: not an integer: {tok!r}") from None
            if not 0 <= v < universe:
                raise MalformedInputError(f"line {lineno}: channel {v} outside [0, {universe})")
            values.append(v)
    if len(values) != period:
        raise MalformedInputError(
            f"line {len(lines)}: header declares period {period} but body has {len(values)} values"
        )
    return ChSequence(np.array(values), universe, header[2])
