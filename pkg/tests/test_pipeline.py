import pytest

from bisc.classes import gen_alternating, gen_stack_sortable, gen_west2, named_basis
from bisc.perm import MeshPattern, Perm, full_mask, mesh_contains, perms_up_to
from bisc.pipeline import (
    Basis,
    LimitError,
    PruneError,
    avoiders,
    bisc,
    prune,
    run_bisc,
    verify_equality,
    verify_subset,
)

from conftest import MP, P

EQ3 = [MP("(12, {(0,0),(1,1),(2,2)})"), MP("(12, {(0,2),(1,1),(2,0)})")]


def strs(basis):
    return {str(mp) for mp in basis}


def test_bisc_table1_rows():
    assert strs(bisc(avoiders(named_basis("smooth"), 6).members(), 4)) >= {"1324", "2143"}
    assert len(bisc(perms_up_to(4), 3)) == 0


def test_basis_ordering_and_dedup():
    b = Basis([MP("2143"), MP("231"), MP("(21, {(1,1)})"), MP("231")])
    assert [str(mp) for mp in b] == ["(21, {(1,1)})", "231", "2143"]


def test_avoiders_eq1():
    got = [str(p) for p in avoiders(EQ3, 4).members()]
    assert got == ["ε", "1", "21", "321", "2341", "4123", "4321"]


def test_avoiders_small():
    got = avoiders([MP("231")], 3).members()
    assert set(got) == set(perms_up_to(3)) - {P("231")}
    assert [str(p) for p in avoiders([], 2).members()] == ["ε", "1", "12", "21"]


def test_avoiders_cap():
    with pytest.raises(LimitError):
        avoiders([MP("1")], 11)
    with pytest.raises(LimitError):
        avoiders([MP("1")], 4, cap=3)
    assert avoiders([MP("1")], 4, cap=4).members() == [Perm()]


def test_verify_subset():
    A = gen_west2(5)
    assert verify_subset(A, bisc(A, 4), 5)
    assert not verify_subset([P("231")], [MP("231")], 3)
    assert verify_subset(A, [MP("2341"), MP("(3241, {(1,4)})")], 5)


def test_verify_equality():
    A = avoiders([MP("231"), MP("4312")], 4).members()
    assert verify_equality(A, [MP("231"), MP("4312")], 4) == (True, None)
    W5 = gen_west2(5)
    W4 = [p for p in W5 if len(p) <= 4]
    classical = [MP("2341"), MP("3241")]
    assert verify_equality(W4, classical, 4) == (True, None)
    assert verify_equality(W5, classical, 5) == (False, P("35241"))
    assert verify_equality(list(perms_up_to(3)), [], 3) == (True, None)


def test_prune_examples():
    A = gen_stack_sortable(5)
    raw = Basis([MP("231"), MP("2314")], N=5)
    assert strs(prune(raw, A, 5)) == {"231"}
    clean = Basis([MP("231")], N=5)
    pruned = prune(clean, A, 5)
    assert pruned.patterns == clean.patterns and pruned.pruned


def test_prune_precondition():
    with pytest.raises(PruneError):
        prune(Basis([MP("12")], N=3), gen_stack_sortable(3), 3)


def test_prune_keeps_equality():
    A = avoiders([MP("(21, {(1,1)})"), MP("(123, {(0,0),(3,3)})")], 5).members()
    raw = bisc(A, 3)
    assert verify_equality(A, raw, 5)[0]
    pruned = prune(raw, A, 5)
    assert verify_equality(A, pruned, 5)[0]
    assert pruned.as_set() <= raw.as_set()


def test_run_bisc_defaults_horizon_to_input_length():
    b = run_bisc(gen_west2(5), 4, do_prune=True)
    assert b.N == 5 and b.m == 4 and b.pruned


def test_empty_input():
    b = bisc([], 2)
    assert strs(b) == {"ε"}
    assert avoiders(b, 3).members() == []


def _brute_minimal_forbidden(A, p):
    full = full_mask(len(p))
    forb = [r for r in range(full + 1)
            if not any(mesh_contains(h, MeshPattern.from_mask(p, r)) for h in A)]
    return sorted(r for r in forb if not any(s != r and s & ~r == 0 for s in forb))


def test_alternating_one_extra_length_gives_checkerboards():
    A = gen_alternating(4)
    out = bisc(A, 3)
    (mp,) = [mp for mp in out if mp.pattern == P("132")]
    assert [mp.mask] == _brute_minimal_forbidden(A, mp.pattern)
    assert mp.mask != full_mask(3)


@pytest.mark.parametrize("n,m", [(4, 2), (5, 3), (6, 4)])
def test_alternating_fully_shaded_two_lengths_beyond(n, m):
    out = bisc(gen_alternating(n), m)
    assert len(out) > 0
    assert all(mp.mask == full_mask(len(mp)) for mp in out)
