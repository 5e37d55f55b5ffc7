"""Record the maximal allowed shadings of every classical pattern in an input set."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .perm import Perm, all_perms, flatten, mask_to_cells, cells_to_mask, full_mask, occupied_mask

DEFAULT_MAX_M = 6
WORKERS_ENV = "BISC_WORKERS"


def antichain_insert(sh: list[int], r: int) -> list[int]:
    """Insert shading mask ``r`` into the antichain ``sh`` of maximal shadings.

    Nothing changes if ``r`` is already covered by a member; otherwise every
    member that is a subset of ``r`` is dropped and ``r`` is added.
    """
    for t in sh:
        if r & ~t == 0:
            return sh
    kept = [t for t in sh if t & ~r != 0]
    kept.append(r)
    return kept


@dataclass
class MinedTable:
    """Maximal allowed shadings ``sh_p`` for every classical pattern of length <= m.

    An empty list means the pattern was never seen; ``[0]`` means it was seen
    but no cell could ever be shaded.
    """

    m: int
    entries: dict[Perm, list[int]] = field(default_factory=dict)
    source_max_len: int = 0

    @classmethod
    def empty(cls, m: int) -> "MinedTable":
        entries = {p: [] for k in range(m + 1) for p in all_perms(k)}
        return cls(m, entries, 0)

    def patterns(self) -> list[Perm]:
        return sorted(self.entries, key=lambda p: (len(p), tuple(p)))

    def shadings(self, p: Perm) -> list[frozenset]:
        return [frozenset(mask_to_cells(len(p), t)) for t in self.entries[p]]

    def merge(self, other: "MinedTable") -> "MinedTable":
        if other.m != self.m:
            raise ValueError("cannot merge tables mined with different m")
        out = MinedTable(self.m, {p: list(sh) for p, sh in self.entries.items()},
                         max(self.source_max_len, other.source_max_len))
        for p, sh in other.entries.items():
            cur = out.entries.setdefault(p, [])
            for t in sh:
                cur = antichain_insert(cur, t)
            out.entries[p] = cur
        return out

    def canonical(self) -> "MinedTable":
        return MinedTable(
            self.m,
            {p: sorted(self.entries[p], key=_mask_key) for p in self.patterns()},
            self.source_max_len,
        )

    def to_json(self) -> str:
        return json.dumps(table_to_obj(self.m, self.entries, "shadings", N=self.source_max_len),
                          separators=(", ", ": "))

    @classmethod
    def from_json(cls, text: str) -> "MinedTable":
        obj = json.loads(text)
        m, entries = table_from_obj(obj, "shadings")
        return cls(m, entries, obj.get("N", 0))


def _mask_key(mask: int) -> tuple[int, int]:
    return (bin(mask).count("1"), mask)


def table_to_obj(m: int, entries: dict[Perm, list[int]], key: str, **extra) -> dict:
    rows = []
    for p in sorted(entries, key=lambda q: (len(q), tuple(q))):
        k = len(p)
        masks = sorted(entries[p], key=_mask_key)
        rows.append({
            "pattern": str(p),
            key: [[list(c) for c in mask_to_cells(k, t)] for t in masks],
        })
    return {"m": m, **extra, "entries": rows}


def table_from_obj(obj: dict, key: str) -> tuple[int, dict[Perm, list[int]]]:
    entries = {}
    for row in obj["entries"]:
        p = Perm.parse(row["pattern"])
        entries[p] = [cells_to_mask(len(p), [tuple(c) for c in cells]) for cells in row[key]]
    return obj["m"], entries


def _mine_serial(perms: Iterable[Perm], m: int) -> MinedTable:
    table = MinedTable.empty(m)
    entries = table.entries
    longest = 0
    for pi in perms:
        longest = max(longest, len(pi))
        n = len(pi)
        for k in range(min(m, n) + 1):
            full = full_mask(k)
            for pos in combinations(range(n), k):
                p = flatten([pi[j] for j in pos])
                r = full & ~occupied_mask(pi, pos)
                entries[p] = antichain_insert(entries[p], r)
    table.source_max_len = longest
    return table


def _worker_count(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def mine(perms: Iterable[Perm], m: int, *, workers: int | None = None,
         max_m: int = DEFAULT_MAX_M) -> MinedTable:
    """Mine the allowed mesh patterns of length <= ``m`` occurring in ``perms``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if m > max_m:
        raise ValueError(f"m={m} exceeds the configured cap of {max_m}")
    unique = sorted(set(Perm(p) if not isinstance(p, Perm) else p for p in perms),
                    key=lambda p: (len(p), tuple(p)))
    nworkers = _worker_count(workers)
    if nworkers == 1 or len(unique) < 2 * nworkers:
        return _mine_serial(unique, m).canonical()
    chunks = [unique[i::nworkers] for i in range(nworkers)]
    with ProcessPoolExecutor(max_workers=nworkers) as pool:
        parts = list(pool.map(_mine_serial, chunks, [m] * nworkers))
    table = parts[0]
    for part in parts[1:]:
        table = table.merge(part)
    return table.canonical()
