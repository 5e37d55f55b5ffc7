"""Turn mined allowed shadings into minimal forbidden shadings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

from .mine import MinedTable, _mask_key, table_from_obj, table_to_obj
from .perm import MeshPattern, Perm, flatten, full_mask, lift_mask


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low)
        mask ^= low
    return out


def _minimize(masks: list[int]) -> list[int]:
    kept: list[int] = []
    for m in sorted(set(masks), key=_mask_key):
        if all(k & ~m for k in kept):
            kept.append(m)
    return kept


def minimal_hitting_sets(family: list[int]) -> list[int]:
    """Inclusion-minimal masks meeting every mask in ``family`` (Berge's method).

    An empty member makes the family unhittable and yields ``[]``.
    """
    if any(e == 0 for e in family):
        return []
    transversals = [0]
    for edge in _minimize(family):
        hit = [t for t in transversals if t & edge]
        missed = [t for t in transversals if not t & edge]
        if not missed:
            continue
        grown = [t | b for t in missed for b in _bits(edge)]
        # hit members stay minimal; only grown ones can be redundant
        new = list(hit)
        for g in sorted(set(grown), key=_mask_key):
            if all(h & ~g for h in new):
                new.append(g)
        transversals = new
    return sorted(transversals, key=_mask_key)


def minimal_forbidden(k: int, sh: list[int]) -> list[int]:
    """Minimal shadings of a length-``k`` pattern contained in no member of ``sh``."""
    if not sh:
        return [0]
    full = full_mask(k)
    return minimal_hitting_sets([full & ~t for t in sh])


@dataclass
class ForbiddenTable:
    m: int
    entries: dict[Perm, list[int]] = field(default_factory=dict)
    source_max_len: int = 0

    def patterns(self) -> list[Perm]:
        return sorted(self.entries, key=lambda p: (len(p), tuple(p)))

    def mesh_patterns(self) -> list[MeshPattern]:
        out = []
        for p in self.patterns():
            for r in sorted(self.entries[p], key=_mask_key):
                out.append(MeshPattern.from_mask(p, r))
        return out

    def to_json(self) -> str:
        return json.dumps(table_to_obj(self.m, self.entries, "forbidden", N=self.source_max_len),
                          separators=(", ", ": "))

    @classmethod
    def from_json(cls, text: str) -> "ForbiddenTable":
        obj = json.loads(text)
        m, entries = table_from_obj(obj, "forbidden")
        return cls(m, entries, obj.get("N", 0))


def eliminate_consequences(table: ForbiddenTable) -> ForbiddenTable:
    """Drop forbidden shadings implied by a forbidden pattern of strictly smaller length.

    Patterns are finalized in length order, so every check runs against
    already-reduced shorter entries.
    """
    final: dict[Perm, list[int]] = {}
    for p in table.patterns():
        forb = table.entries[p]
        k = len(p)
        pt = tuple(p)
        if forb:
            implying: list[int] = []
            for l in range(k):
                for pos in combinations(range(k), l):
                    q = flatten([pt[j] for j in pos])
                    for r_q in final.get(q, ()):
                        need = lift_mask(pt, pos, r_q)
                        if need is not None:
                            implying.append(need)
            implying = _minimize(implying)
            forb = [r for r in forb if not any(need & ~r == 0 for need in implying)]
        final[p] = forb
    return ForbiddenTable(table.m, final, table.source_max_len)


def gen(table: MinedTable) -> ForbiddenTable:
    raw = {p: minimal_forbidden(len(p), table.entries[p]) for p in table.patterns()}
    return eliminate_consequences(ForbiddenTable(table.m, raw, table.source_max_len))
