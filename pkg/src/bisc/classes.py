"""Generators for the permutation sets used to exercise the miner."""

from __future__ import annotations

from bisect import bisect_right
from typing import Callable, Sequence

from .perm import MeshPattern, Perm, PatternError, classical_occurrences, perms_up_to


def stack_sort(pi: Sequence[int]) -> Perm:
    """One pass through a stack, popping while the top is smaller than the next input."""
    stack: list[int] = []
    out: list[int] = []
    for x in pi:
        while stack and stack[-1] < x:
            out.append(stack.pop())
        stack.append(x)
    out.extend(reversed(stack))
    return Perm._trusted(out)


def gen_stack_sortable(n: int) -> list[Perm]:
    return [p for p in perms_up_to(n) if stack_sort(p).is_identity()]


def gen_west2(n: int) -> list[Perm]:
    return [p for p in perms_up_to(n) if stack_sort(stack_sort(p)).is_identity()]


def _strong_fixed_points(pi: Sequence[int]) -> list[int]:
    n = len(pi)
    prefix_max = 0
    suffix_min = [0] * (n + 1)
    suffix_min[n] = n + 1 + max(pi, default=0)
    for i in range(n - 1, -1, -1):
        suffix_min[i] = min(pi[i], suffix_min[i + 1])
    out = []
    for i, v in enumerate(pi):
        if prefix_max < v < suffix_min[i + 1]:
            out.append(i)
        prefix_max = max(prefix_max, v)
    return out


def quicksort_pass(pi: Sequence[int]) -> tuple[int, ...]:
    """A single quicksort pass.

    Splits at the right-most strong fixed point and recurses on both sides;
    a block with no strong fixed point gets its letters smaller than the
    first letter moved to the front, and is not processed further.
    """
    pi = tuple(pi)
    if not pi:
        return ()
    sfp = _strong_fixed_points(pi)
    if sfp:
        x = sfp[-1]
        return quicksort_pass(pi[:x]) + (pi[x],) + quicksort_pass(pi[x + 1:])
    first = pi[0]
    return tuple(v for v in pi if v < first) + tuple(v for v in pi if v >= first)


def gen_quicksort1(n: int) -> list[Perm]:
    return [p for p in perms_up_to(n) if list(quicksort_pass(p)) == sorted(p)]


def gen_dihedral(n: int) -> list[Perm]:
    """Rotations and reflections of the l-gon, for every l <= n."""
    out = set()
    for l in range(n + 1):
        if l == 0:
            out.add(Perm())
            continue
        for k in range(l):
            out.add(Perm(((i - 1 + k) % l) + 1 for i in range(1, l + 1)))
            out.add(Perm(((k - i) % l) + 1 for i in range(1, l + 1)))
    return sorted(out, key=lambda p: (len(p), tuple(p)))


def gen_alternating(n: int) -> list[Perm]:
    return [p for p in perms_up_to(n) if p.inversions() % 2 == 0]


# ---------------------------------------------------------------- RSK

def rsk_shape(pi: Sequence[int]) -> tuple[int, ...]:
    """Row lengths of the insertion tableau under row insertion."""
    rows: list[list[int]] = []
    for x in pi:
        for row in rows:
            i = bisect_right(row, x)
            if i == len(row):
                row.append(x)
                break
            row[i], x = x, row[i]
        else:
            rows.append([x])
    return tuple(len(r) for r in rows)


def check_shape(shape: Sequence[int]) -> tuple[int, ...]:
    shape = tuple(int(s) for s in shape)
    if any(s <= 0 for s in shape) or any(a < b for a, b in zip(shape, shape[1:])):
        raise PatternError(f"not a partition: {shape}")
    return shape


def shape_contains(big: Sequence[int], small: Sequence[int]) -> bool:
    if len(small) > len(big):
        return False
    return all(b >= s for b, s in zip(big, small))


def gen_shape_avoiders(shape: Sequence[int], n: int) -> list[Perm]:
    shape = check_shape(shape)
    return [p for p in perms_up_to(n) if not shape_contains(rsk_shape(p), shape)]


# ---------------------------------------------------------------- restricted stacks

def _contains_classical(word: Sequence[int], sigma: Sequence[int]) -> bool:
    for _ in classical_occurrences(word, sigma):
        return True
    return False


def sigma_stack_pass(pi: Sequence[int], sigma: Sequence[int]) -> tuple[int, ...]:
    """Output of a stack whose content, read top to bottom, must avoid ``sigma``.

    Each input letter is pushed when legal; otherwise the top is popped to the
    output first.  The stack is flushed at the end.
    """
    stack: list[int] = []
    out: list[int] = []
    for x in pi:
        while stack and _contains_classical([x, *reversed(stack)], sigma):
            out.append(stack.pop())
        stack.append(x)
    out.extend(reversed(stack))
    return tuple(out)


def restricted_stack_sortable(sigma: Sequence[int], n: int) -> list[Perm]:
    """Permutations sorted by a ``sigma``-avoiding stack followed by a classical stack."""
    sigma = Perm(sigma)
    if not sigma:
        raise PatternError("sigma must be non-empty")
    return [p for p in perms_up_to(n) if stack_sort(sigma_stack_pass(p, sigma)).is_identity()]


# ---------------------------------------------------------------- avoidance-defined classes

NAMED_BASES: dict[str, list[str]] = {
    "smooth": ["1324", "2143"],
    "forestlike": ["1324", "(2143, {(2,2)})"],
    "baxter": ["(2413, {(2,2)})", "(3142, {(2,2)})"],
    "simsun": ["(321, {(1,0), (1,1), (2,2)})"],
}


def named_basis(name: str) -> list[MeshPattern]:
    return [MeshPattern.parse(s) for s in NAMED_BASES[name]]


def gen_by_avoidance(patterns: Sequence[MeshPattern], n: int, cap: int | None = None) -> list[Perm]:
    from .pipeline import DEFAULT_CAP, avoiders

    return avoiders(patterns, n, cap=DEFAULT_CAP if cap is None else cap).members()


def parse_pattern_list(text: str) -> list[MeshPattern]:
    """Patterns separated by ``;`` (commas belong to the mesh grammar)."""
    return [MeshPattern.parse(part) for part in text.split(";") if part.strip()]


def _parse_shape(text: str) -> tuple[int, ...]:
    try:
        return check_shape(int(s) for s in text.replace(" ", "").split(","))
    except ValueError as exc:
        raise PatternError(f"bad shape {text!r}") from exc


CLASSES: dict[str, Callable[[int], list[Perm]]] = {
    "stack_sortable": gen_stack_sortable,
    "west2": gen_west2,
    "quicksort1": gen_quicksort1,
    "dihedral": gen_dihedral,
    "alternating": gen_alternating,
}


def generate(spec: str, n: int, cap: int | None = None) -> list[Perm]:
    """Generate the class named by ``spec`` up to length ``n``.

    Accepted specs: the names in ``CLASSES`` and ``NAMED_BASES``,
    ``rsk_avoid:<shape>``, ``restricted_stack:<sigma>`` and
    ``avoid:<pattern>;<pattern>;...``.
    """
    name, _, arg = spec.partition(":")
    name = name.strip()
    if name in CLASSES and not arg:
        return CLASSES[name](n)
    if name in NAMED_BASES and not arg:
        return gen_by_avoidance(named_basis(name), n, cap)
    if name == "rsk_avoid":
        return gen_shape_avoiders(_parse_shape(arg), n)
    if name == "restricted_stack":
        return restricted_stack_sortable(Perm.parse(arg), n)
    if name == "avoid":
        return gen_by_avoidance(parse_pattern_list(arg), n, cap)
    raise PatternError(f"unknown class spec {spec!r}")

