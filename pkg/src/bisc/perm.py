"""Permutations, mesh patterns and the containment primitives.

Shadings are handled internally as integer bitmasks over the
``(k + 1) x (k + 1)`` grid of a length-``k`` pattern.  Cell ``(col, row)``
maps to bit ``col * (k + 1) + row`` (column-major lexicographic order).
"""

from __future__ import annotations

import re
from bisect import bisect_left
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence

EPSILON_TOKENS = ("ε", "eps")

Cell = tuple[int, int]


class PatternError(ValueError):
    """Raised for malformed permutations, cells or pattern text."""


class Perm(tuple):
    """A permutation of ``1..n`` in one-line notation.

    >>> Perm((3, 2, 4, 1))
    Perm('3241')
    """

    __slots__ = ()

    def __new__(cls, values: Iterable[int] = ()) -> "Perm":
        self = super().__new__(cls, (int(v) for v in values))
        if sorted(self) != list(range(1, len(self) + 1)):
            raise PatternError(f"not a permutation of 1..{len(self)}: {tuple(self)}")
        return self

    @classmethod
    def _trusted(cls, values: Iterable[int]) -> "Perm":
        return super().__new__(cls, values)

    @classmethod
    def parse(cls, text: str) -> "Perm":
        """Parse the one-line text form: ``35241``, ``1 2 ... 10`` or ``ε``/``eps``."""
        text = text.strip()
        if text in EPSILON_TOKENS or text == "":
            return cls()
        if re.fullmatch(r"\d+", text):
            return cls(int(ch) for ch in text)
        parts = re.split(r"[\s,]+", text)
        if not all(p.isdigit() for p in parts):
            raise PatternError(f"cannot parse permutation {text!r}")
        return cls(int(p) for p in parts)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls._trusted(range(1, n + 1))

    def __repr__(self) -> str:
        return f"Perm({str(self)!r})"

    def __str__(self) -> str:
        if not self:
            return "ε"
        if len(self) <= 9:
            return "".join(map(str, self))
        return " ".join(map(str, self))

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self, 1))

    def inversions(self) -> int:
        return sum(1 for i, j in combinations(range(len(self)), 2) if self[i] > self[j])


def all_perms(n: int) -> Iterator[Perm]:
    """All permutations of length ``n`` in lexicographic order."""
    for p in permutations(range(1, n + 1)):
        yield Perm._trusted(p)


def perms_up_to(n: int) -> Iterator[Perm]:
    for length in range(n + 1):
        yield from all_perms(length)


def flatten(word: Sequence[int]) -> Perm:
    """Replace the i-th smallest letter of ``word`` with ``i``."""
    if len(set(word)) != len(word):
        raise PatternError(f"letters are not distinct: {tuple(word)}")
    ranks = {v: i for i, v in enumerate(sorted(word), 1)}
    return Perm._trusted(ranks[v] for v in word)


def subwords_le_m(pi: Sequence[int], m: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Yield ``(values, positions)`` for every subsequence of length at most ``m``.

    Positions are 0-based.  The empty subword is included.
    """
    if m < 0:
        raise PatternError("m must be non-negative")
    n = len(pi)
    for k in range(min(m, n) + 1):
        for pos in combinations(range(n), k):
            yield tuple(pi[j] for j in pos), pos


# ---------------------------------------------------------------- shadings

def full_mask(k: int) -> int:
    return (1 << ((k + 1) * (k + 1))) - 1


def cell_bit(k: int, col: int, row: int) -> int:
    if not (0 <= col <= k and 0 <= row <= k):
        raise PatternError(f"cell ({col},{row}) outside the grid of a length-{k} pattern")
    return 1 << (col * (k + 1) + row)


def cells_to_mask(k: int, cells: Iterable[Cell]) -> int:
    mask = 0
    for col, row in cells:
        mask |= cell_bit(k, col, row)
    return mask


def mask_to_cells(k: int, mask: int) -> tuple[Cell, ...]:
    side = k + 1
    out = []
    idx = 0
    while mask:
        if mask & 1:
            out.append(divmod(idx, side))
        mask >>= 1
        idx += 1
    return tuple(out)


@dataclass(frozen=True)
class MeshPattern:
    """A classical pattern together with a set of shaded cells."""

    pattern: Perm
    shading: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not isinstance(self.pattern, Perm):
            object.__setattr__(self, "pattern", Perm(self.pattern))
        cells = frozenset((int(c), int(r)) for c, r in self.shading)
        k = len(self.pattern)
        for c, r in cells:
            cell_bit(k, c, r)
        object.__setattr__(self, "shading", cells)

    @classmethod
    def from_mask(cls, pattern: Perm, mask: int) -> "MeshPattern":
        return cls(pattern, frozenset(mask_to_cells(len(pattern), mask)))

    @property
    def mask(self) -> int:
        return cells_to_mask(len(self.pattern), self.shading)

    def __len__(self) -> int:
        return len(self.pattern)

    def is_classical(self) -> bool:
        return not self.shading

    def sort_key(self) -> tuple:
        return (len(self.pattern), tuple(self.pattern), len(self.shading), self.mask)

    def __str__(self) -> str:
        if not self.shading:
            return str(self.pattern)
        cells = ", ".join(f"({c},{r})" for c, r in sorted(self.shading))
        return f"({self.pattern}, {{{cells}}})"

    @classmethod
    def parse(cls, text: str) -> "MeshPattern":
        """Parse ``(<perm>, {(<col>,<row>), ...})`` or a bare classical pattern."""
        text = text.strip()
        m = _MESH_RE.fullmatch(text)
        if m is None:
            if text.startswith("("):
                raise PatternError(f"cannot parse mesh pattern {text!r}")
            return cls(Perm.parse(text))
        perm = Perm.parse(m.group("perm"))
        body = m.group("cells").strip()
        cells = []
        if body:
            consumed = _CELL_RE.sub("", body)
            if consumed.replace(",", "").strip():
                raise PatternError(f"cannot parse shading {{{body}}}")
            cells = [(int(c), int(r)) for c, r in _CELL_RE.findall(body)]
        return cls(perm, frozenset(cells))


_MESH_RE = re.compile(r"\(\s*(?P<perm>[^,{}()]*?)\s*,\s*\{(?P<cells>[^{}]*)\}\s*\)")
_CELL_RE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


# ---------------------------------------------------------------- containment

@lru_cache(maxsize=None)
def _match_plan(pattern: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    # For pattern index i: indices (< i) of the nearest smaller / larger values, or -1.
    plan = []
    for i, v in enumerate(pattern):
        lo = hi = -1
        for j in range(i):
            w = pattern[j]
            if w < v and (lo < 0 or w > pattern[lo]):
                lo = j
            elif w > v and (hi < 0 or w < pattern[hi]):
                hi = j
        plan.append((lo, hi))
    return tuple(plan)


def classical_occurrences(host: Sequence[int], p: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Yield the (0-based) position tuples of every occurrence of ``p`` in ``host``.

    ``host`` may be any word of distinct positive integers.
    """
    k, n = len(p), len(host)
    if k > n:
        return
    if k == 0:
        yield ()
        return
    plan = _match_plan(tuple(p))
    top = max(host) + 1
    pos = [0] * k
    vals = [0] * k

    def extend(i: int, start: int) -> Iterator[tuple[int, ...]]:
        lo, hi = plan[i]
        lo_v = vals[lo] if lo >= 0 else -1
        hi_v = vals[hi] if hi >= 0 else top
        for j in range(start, n - (k - i) + 1):
            v = host[j]
            if lo_v < v < hi_v:
                pos[i] = j
                vals[i] = v
                if i + 1 == k:
                    yield tuple(pos)
                else:
                    yield from extend(i + 1, j + 1)

    yield from extend(0, 0)


def _check_occurrence(host: Sequence[int], positions: Sequence[int]) -> None:
    if any(not 0 <= j < len(host) for j in positions) or list(positions) != sorted(set(positions)):
        raise PatternError(f"invalid occurrence positions {tuple(positions)}")


def occupied_mask(host: Sequence[int], positions: Sequence[int]) -> int:
    """Bitmask of the grid cells (of the occurrence) holding at least one host point."""
    k = len(positions)
    side = k + 1
    values = sorted(host[j] for j in positions)
    chosen = set(positions)
    mask = 0
    for x, v in enumerate(host):
        if x in chosen:
            continue
        col = bisect_left(positions, x)
        row = bisect_left(values, v)
        mask |= 1 << (col * side + row)
    return mask


def region_points(host: Sequence[int], positions: Sequence[int], cell: Cell) -> int:
    """Number of host points inside the region of ``cell`` for the given occurrence."""
    _check_occurrence(host, positions)
    k = len(positions)
    col, row = cell
    cell_bit(k, col, row)
    n = len(host)
    cols = [-1, *positions, n]
    vals = [0, *sorted(host[j] for j in positions), n + 1]
    return sum(
        1
        for x in range(cols[col] + 1, cols[col + 1])
        if vals[row] < host[x] < vals[row + 1]
    )


def maximal_shading_mask(host: Sequence[int], positions: Sequence[int]) -> int:
    return full_mask(len(positions)) & ~occupied_mask(host, positions)


def maximal_shading(host: Sequence[int], positions: Sequence[int]) -> frozenset:
    """Cells left empty by the occurrence at ``positions``."""
    _check_occurrence(host, positions)
    k = len(positions)
    return frozenset(mask_to_cells(k, maximal_shading_mask(host, positions)))


def contains_mask(host: Sequence[int], pattern: Sequence[int], mask: int) -> bool:
    if not mask:
        for _ in classical_occurrences(host, pattern):
            return True
        return False
    for occ in classical_occurrences(host, pattern):
        if not occupied_mask(host, occ) & mask:
            return True
    return False


def mesh_contains(host: Sequence[int], mp: MeshPattern) -> bool:
    return contains_mask(host, mp.pattern, mp.mask)


def avoids_all(host: Sequence[int], patterns: Iterable[MeshPattern]) -> bool:
    return not any(contains_mask(host, mp.pattern, mp.mask) for mp in patterns)


# ---------------------------------------------------------------- implication

@lru_cache(maxsize=None)
def lifted_regions(outer: tuple[int, ...], positions: tuple[int, ...]) -> tuple[int | None, ...]:
    """Map each inner cell of the sub-occurrence to the outer cells it covers.

    Entry ``a * (l + 1) + b`` is the outer-grid mask covered by inner cell
    ``(a, b)``, or ``None`` when that region contains a point of ``outer``.
    """
    k, l = len(outer), len(positions)
    cols = [0, *(j + 1 for j in positions), k + 1]
    vals = [0, *sorted(outer[j] for j in positions), k + 1]
    side = k + 1
    out: list[int | None] = []
    for a in range(l + 1):
        for b in range(l + 1):
            blocked = any(
                vals[b] < outer[x - 1] < vals[b + 1] for x in range(cols[a] + 1, cols[a + 1])
            )
            if blocked:
                out.append(None)
                continue
            m = 0
            for c in range(cols[a], cols[a + 1]):
                for r in range(vals[b], vals[b + 1]):
                    m |= 1 << (c * side + r)
            out.append(m)
    return tuple(out)


def lift_mask(outer: tuple[int, ...], positions: tuple[int, ...], inner_mask: int) -> int | None:
    """Outer shading required for the inner shading to carry over, or ``None``."""
    regions = lifted_regions(outer, positions)
    need = 0
    idx = 0
    while inner_mask:
        if inner_mask & 1:
            r = regions[idx]
            if r is None:
                return None
            need |= r
        inner_mask >>= 1
        idx += 1
    return need


def mesh_implies(inner: MeshPattern, outer: MeshPattern) -> bool:
    """True if every permutation containing ``outer`` also contains ``inner``.

    Checked through the sufficient condition that ``inner`` sits inside
    ``outer`` with each shaded inner region covering only shaded outer cells
    and no outer points.
    """
    if len(inner) > len(outer):
        return False
    outer_t = tuple(outer.pattern)
    outer_mask = outer.mask
    inner_mask = inner.mask
    for occ in classical_occurrences(outer_t, inner.pattern):
        need = lift_mask(outer_t, occ, inner_mask)
        if need is not None and need & ~outer_mask == 0:
            return True
    return False
