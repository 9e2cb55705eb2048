"""Perfect and relaxed difference sets in Z_p (lambda = 1 throughout)."""
from __future__ import annotations

from dataclasses import dataclass

from .core import CapabilityError, MalformedInputError, PreconditionError
from .numtheory import is_valid_ideal_L

PERFECT = "perfect"
RELAXED = "relaxed"
NEITHER = "neither"

DEFAULT_SEARCH_CEILING = 11


@dataclass(frozen=True)
class DifferenceSet:
    p: int
    elements: tuple[int, ...]
    level: str = NEITHER

    def __post_init__(self) -> None:
        if self.p < 1:
            raise MalformedInputError("modulus must be positive")
        for a in self.elements:
            if not 0 <= a < self.p:
                raise MalformedInputError(f"element {a} outside [0, {self.p})")
        if len(set(self.elements)) != len(self.elements):
            raise MalformedInputError("difference-set elements must be distinct")
        object.__setattr__(self, "elements", tuple(sorted(self.elements)))

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.elements

    def complement(self) -> list[int]:
        """Residues not in the set, ascending (b_0 < b_1 < ...)."""
        members = set(self.elements)
        return [x for x in range(self.p) if x not in members]

    def shifted(self, ell: int) -> DifferenceSet:
        return DifferenceSet(self.p, tuple((a + ell) % self.p for a in self.elements))


@dataclass(frozen=True)
class DifferenceReport:
    level: str
    counts: dict[int, int]  # nonzero residue -> number of ordered pairs realising it

    @property
    def missing(self) -> list[int]:
        return [ell for ell, c in self.counts.items() if c == 0]


def verify_difference_set(d: DifferenceSet) -> DifferenceReport:
    p = d.p
    counts = dict.fromkeys(range(1, p), 0)
    for a in d.elements:
        for b in d.elements:
            if a != b:
                counts[(a - b) % p] += 1
    values = counts.values()
    if p > 1 and all(c == 1 for c in values):
        level = PERFECT
    elif all(c >= 1 for c in values):
        level = RELAXED
    else:
        level = NEITHER
    return DifferenceReport(level, counts)


def certify(d: DifferenceSet) -> DifferenceSet:
    """Return a copy of ``d`` tagged with its verified level."""
    return DifferenceSet(d.p, d.elements, verify_difference_set(d).level)


def _search_pds(p: int, k: int) -> tuple[int, ...] | None:
    # Depth-first over ascending candidates; the first complete hit is
    # lexicographically least because candidates are tried in order.
    chosen = [0, 1]
    used = [False] * p
    used[1] = used[p - 1] = True

    def extend(start: int) -> bool:
        if len(chosen) == k:
            return True
        remaining = k - len(chosen)
        for x in range(start, p - remaining + 1):
            new = []
            ok = True
            for a in chosen:
                for diff in ((x - a) % p, (a - x) % p):
                    if used[diff] or diff in new:
                        ok = False
                        break
                    new.append(diff)
                if not ok:
                    break
            if not ok:
                continue
            for diff in new:
                used[diff] = True
            chosen.append(x)
            if extend(x + 1):
                return True
            chosen.pop()
            for diff in new:
                used[diff] = False
        return False

    return tuple(chosen) if extend(2) else None


def find_perfect_difference_set(L: int, ceiling: int = DEFAULT_SEARCH_CEILING) -> DifferenceSet:
    """Lexicographically least (L^2+L+1, L+1, 1) perfect difference set containing 0 and 1."""
    if not is_valid_ideal_L(L):
        raise PreconditionError(f"L={L} must be a prime power with L^2+L+1 prime")
    if L > ceiling:
        raise CapabilityError(f"L={L} exceeds the perfect-difference-set search ceiling {ceiling}")
    p = L * L + L + 1
    found = _search_pds(p, L + 1)
    if found is None:  # pragma: no cover - Singer guarantees existence
        raise CapabilityError(f"no perfect difference set found in Z_{p}")
    result = certify(DifferenceSet(p, found))
    assert result.level == PERFECT
    return result


def rds_elements(p: int, spacing: int) -> list[int]:
    head = list(range(spacing))
    comb = [m * spacing - 1 for m in range(2, p // spacing + 1)]
    return head + comb


def build_rds(p: int, spacing: int) -> DifferenceSet:
    """Delimiter block {0..spacing-1} plus a comb of period ``spacing``."""
    if spacing < 2 or p < spacing:
        raise PreconditionError(f"need spacing >= 2 and p >= spacing (p={p}, spacing={spacing})")
    d = certify(DifferenceSet(p, tuple(rds_elements(p, spacing))))
    if d.level == NEITHER:  # pragma: no cover - guaranteed by construction
        raise AssertionError(f"comb set in Z_{p} with spacing {spacing} is not relaxed")
    return d
