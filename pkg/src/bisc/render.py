"""Text, JSON, ASCII-grid and TikZ forms of bases and mesh patterns."""

from __future__ import annotations

import json
import re

from .perm import MeshPattern, PatternError, Perm
from .pipeline import AvoidanceSet, Basis


# ---------------------------------------------------------------- text

def basis_to_text(basis: Basis) -> str:
    return "".join(f"{mp}\n" for mp in basis)


def basis_from_text(text: str, **meta) -> Basis:
    pats = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            pats.append(MeshPattern.parse(line))
    return Basis(pats, **meta)


# ---------------------------------------------------------------- json

def pattern_to_obj(mp: MeshPattern) -> dict:
    return {"pattern": str(mp.pattern), "shading": [list(c) for c in sorted(mp.shading)]}


def pattern_from_obj(obj: dict) -> MeshPattern:
    return MeshPattern(Perm.parse(obj["pattern"]), frozenset(tuple(c) for c in obj.get("shading", [])))


def basis_to_json(basis: Basis) -> str:
    obj = {
        "m": basis.m,
        "N": basis.N,
        "pruned": basis.pruned,
        "patterns": [pattern_to_obj(mp) for mp in basis],
    }
    return json.dumps(obj, ensure_ascii=False)


def basis_from_json(text: str) -> Basis:
    obj = json.loads(text)
    return Basis(
        [pattern_from_obj(p) for p in obj["patterns"]],
        m=obj.get("m", 0),
        N=obj.get("N", 0),
        pruned=bool(obj.get("pruned", False)),
    )


def avoiders_to_json(av: AvoidanceSet) -> str:
    return json.dumps({"n": av.n, "by_length": [[str(p) for p in level] for level in av.by_length]},
                      ensure_ascii=False)


# ---------------------------------------------------------------- ascii grid

def pattern_to_ascii(mp: MeshPattern) -> str:
    """Draw the pattern on a ``(2k+1)``-square character grid.

    Cells are ``#`` (shaded) or ``.``; lattice points are ``*`` for pattern
    entries and ``+`` otherwise.  The top line is the highest row.
    """
    k = len(mp.pattern)
    size = 2 * k + 1
    lines = []
    for y in range(size - 1, -1, -1):
        chars = []
        for x in range(size):
            if x % 2 == 0 and y % 2 == 0:
                chars.append("#" if (x // 2, y // 2) in mp.shading else ".")
            elif x % 2 == 1 and y % 2 == 1:
                chars.append("*" if mp.pattern[x // 2] == y // 2 + 1 else "+")
            elif x % 2 == 1:
                chars.append("|")
            else:
                chars.append("-")
        lines.append("".join(chars))
    return "\n".join(lines)


def pattern_from_ascii(block: str) -> MeshPattern:
    lines = [ln.strip() for ln in block.strip().splitlines()]
    size = len(lines)
    if size % 2 == 0 or any(len(ln) != size for ln in lines):
        raise PatternError("ascii grid must be an odd-sized square")
    k = size // 2
    values = [0] * k
    cells = set()
    for row_idx, line in enumerate(lines):
        y = size - 1 - row_idx
        for x, ch in enumerate(line):
            if x % 2 == 0 and y % 2 == 0 and ch == "#":
                cells.add((x // 2, y // 2))
            elif x % 2 == 1 and y % 2 == 1 and ch == "*":
                if values[x // 2]:
                    raise PatternError("two points in one column")
                values[x // 2] = y // 2 + 1
    return MeshPattern(Perm(values), frozenset(cells))


def basis_to_ascii(basis: Basis) -> str:
    return "".join(f"{pattern_to_ascii(mp)}\n\n" for mp in basis)


def basis_from_ascii(text: str, **meta) -> Basis:
    blocks = [b for b in text.split("\n\n") if b.strip()]
    return Basis([pattern_from_ascii(b) for b in blocks], **meta)


# ---------------------------------------------------------------- tikz

def pattern_to_tikz(mp: MeshPattern, scale: float = 0.4) -> str:
    k = len(mp.pattern)
    out = [f"\\begin{{tikzpicture}}[scale={scale}]"]
    for c, r in sorted(mp.shading):
        out.append(f"  \\fill[gray!50] ({c},{r}) rectangle ({c + 1},{r + 1});")
    for i in range(1, k + 1):
        out.append(f"  \\draw[gray] ({i},0.5) -- ({i},{k + 0.5});")
        out.append(f"  \\draw[gray] (0.5,{i}) -- ({k + 0.5},{i});")
    for i, v in enumerate(mp.pattern, 1):
        out.append(f"  \\filldraw ({i},{v}) circle (5pt);")
    out.append("\\end{tikzpicture}")
    return "\n".join(out)


def basis_to_tikz(basis: Basis) -> str:
    return "".join(f"% {mp}\n{pattern_to_tikz(mp)}\n" for mp in basis)


FORMATS = ("text", "json", "ascii", "tikz")


def render_basis(basis: Basis, fmt: str) -> str:
    if fmt == "text":
        return basis_to_text(basis)
    if fmt == "json":
        return basis_to_json(basis) + "\n"
    if fmt == "ascii":
        return basis_to_ascii(basis)
    if fmt == "tikz":
        return basis_to_tikz(basis)
    raise ValueError(f"unknown format {fmt!r}")


def parse_basis(text: str, fmt: str = "auto") -> Basis:
    """Read a basis in text, JSON or ASCII-grid form (``auto`` sniffs the format)."""
    if fmt == "auto":
        stripped = text.strip()
        first = stripped.splitlines()[0] if stripped else ""
        if stripped.startswith("{"):
            fmt = "json"
        elif re.fullmatch(r"[.#|+*-]+", first) and (len(first) > 1 or first == "."):
            fmt = "ascii"
        else:
            fmt = "text"
    if fmt == "json":
        return basis_from_json(text)
    if fmt == "ascii":
        return basis_from_ascii(text)
    if fmt == "text":
        return basis_from_text(text)
    raise ValueError(f"cannot parse format {fmt!r}")
