"""End-to-end basis inference, avoidance sets, verification and pruning."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .gen import ForbiddenTable, gen
from .mine import MinedTable, mine
from .perm import MeshPattern, Perm, contains_mask, perms_up_to

DEFAULT_CAP = 10


class LimitError(RuntimeError):
    """Raised when a brute-force computation would exceed the length cap."""


class PruneError(ValueError):
    """Raised when a basis does not describe the input at the pruning horizon."""


@dataclass
class Basis:
    """Ordered, duplicate-free list of forbidden mesh patterns plus run metadata."""

    patterns: list[MeshPattern] = field(default_factory=list)
    m: int = 0
    N: int = 0
    pruned: bool = False

    def __post_init__(self) -> None:
        self.patterns = sorted(set(self.patterns), key=MeshPattern.sort_key)

    def __iter__(self):
        return iter(self.patterns)

    def __len__(self) -> int:
        return len(self.patterns)

    def as_set(self) -> set[MeshPattern]:
        return set(self.patterns)

    @classmethod
    def from_forbidden(cls, table: ForbiddenTable) -> "Basis":
        return cls(table.mesh_patterns(), m=table.m, N=table.source_max_len)


@dataclass
class AvoidanceSet:
    n: int
    by_length: list[list[Perm]]

    def members(self) -> list[Perm]:
        return [p for level in self.by_length for p in level]

    def __contains__(self, item) -> bool:
        return item in self.by_length[len(item)] if len(item) <= self.n else False


def _by_length(perms: Iterable[Perm], n: int) -> list[list[Perm]]:
    levels: list[set[Perm]] = [set() for _ in range(n + 1)]
    for p in perms:
        if len(p) <= n:
            levels[len(p)].add(p if isinstance(p, Perm) else Perm(p))
    return [sorted(level) for level in levels]


def bisc(perms: Iterable[Perm], m: int, *, workers: int | None = None) -> Basis:
    """Mine ``perms`` for allowed patterns of length <= ``m`` and return the forbidden ones."""
    return Basis.from_forbidden(gen(mine(perms, m, workers=workers)))


def _patterns(basis: Basis | Iterable[MeshPattern]) -> list[MeshPattern]:
    return list(basis.patterns if isinstance(basis, Basis) else basis)


def avoiders(basis: Basis | Iterable[MeshPattern], n: int, *, cap: int = DEFAULT_CAP) -> AvoidanceSet:
    """All permutations of length <= ``n`` avoiding every pattern of ``basis``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > cap:
        raise LimitError(f"length {n} exceeds the cap of {cap}")
    pats = [(tuple(mp.pattern), mp.mask) for mp in _patterns(basis)]
    levels: list[list[Perm]] = [[] for _ in range(n + 1)]
    for pi in perms_up_to(n):
        if not any(contains_mask(pi, p, mask) for p, mask in pats):
            levels[len(pi)].append(pi)
    return AvoidanceSet(n, levels)


def verify_subset(perms: Iterable[Perm], basis: Basis | Iterable[MeshPattern], n: int) -> bool:
    """True when every input permutation of length <= ``n`` avoids the basis."""
    pats = [(tuple(mp.pattern), mp.mask) for mp in _patterns(basis)]
    return all(
        not any(contains_mask(pi, p, mask) for p, mask in pats)
        for pi in perms
        if len(pi) <= n
    )


def verify_equality(perms: Iterable[Perm], basis: Basis | Iterable[MeshPattern], n: int,
                    *, cap: int = DEFAULT_CAP) -> tuple[bool, Perm | None]:
    """Compare the input with the avoiders of ``basis`` up to length ``n``.

    Returns ``(ok, counterexample)`` where the counterexample is the shortest
    (then lexicographically smallest) permutation in the symmetric difference.
    """
    wanted = _by_length(perms, n)
    got = avoiders(basis, n, cap=cap).by_length
    for w, g in zip(wanted, got):
        diff = set(w) ^ set(g)
        if diff:
            return False, min(diff)
    return True, None


def prune(basis: Basis, perms: Iterable[Perm], n: int | None = None,
          *, cap: int = DEFAULT_CAP) -> Basis:
    """Greedily drop patterns whose removal keeps the avoiders equal to the input.

    Candidates are tried longest first, then in reverse lexicographic order.
    ``n`` defaults to the basis horizon ``N``.
    """
    perms = list(perms)
    if n is None:
        n = basis.N
    if n > cap:
        raise LimitError(f"length {n} exceeds the cap of {cap}")
    universe = list(perms_up_to(n))
    index = {p: i for i, p in enumerate(universe)}
    inside = 0
    for p in perms:
        if len(p) <= n:
            inside |= 1 << index[p]
    outside = ((1 << len(universe)) - 1) & ~inside

    pats = basis.patterns
    covers = []
    for mp in pats:
        p, mask = tuple(mp.pattern), mp.mask
        bits = 0
        for i, pi in enumerate(universe):
            if contains_mask(pi, p, mask):
                bits |= 1 << i
        covers.append(bits)

    union = 0
    for c in covers:
        union |= c
    if union != outside:
        raise PruneError(f"basis does not describe the input at length <= {n}")

    alive = set(range(len(pats)))
    for i in sorted(range(len(pats)), key=lambda j: pats[j].sort_key(), reverse=True):
        rest = 0
        for j in alive:
            if j != i:
                rest |= covers[j]
        if rest == outside:
            alive.discard(i)
    return Basis([pats[i] for i in alive], m=basis.m, N=basis.N, pruned=True)


def run_bisc(perms: Sequence[Perm], m: int, *, do_prune: bool = False, n: int | None = None,
             cap: int = DEFAULT_CAP, workers: int | None = None) -> Basis:
    perms = list(perms)
    basis = bisc(perms, m, workers=workers)
    if do_prune:
        basis = prune(basis, perms, basis.N if n is None else n, cap=cap)
    return basis


__all__ = [
    "AvoidanceSet",
    "Basis",
    "DEFAULT_CAP",
    "LimitError",
    "MinedTable",
    "PruneError",
    "avoiders",
    "bisc",
    "prune",
    "run_bisc",
    "verify_equality",
    "verify_subset",
]
