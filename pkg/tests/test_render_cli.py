import io
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bisc.cli import RunConfig, main, read_permutation_file, read_permutations, run, InputError
from bisc.perm import MeshPattern, Perm, full_mask
from bisc.pipeline import Basis
from bisc.render import (
    basis_from_json,
    parse_basis,
    pattern_from_ascii,
    pattern_to_ascii,
    render_basis,
)

from conftest import MP, P

WEST = Basis([MP("2341"), MP("(3241, {(1,4)})")], m=4, N=5, pruned=True)


def run_cfg(**kw):
    out, err = io.StringIO(), io.StringIO()
    code = run(RunConfig(**kw), out, err)
    return code, out.getvalue(), err.getvalue()


def mesh_patterns():
    return st.integers(0, 5).flatmap(
        lambda n: st.tuples(st.permutations(list(range(1, n + 1))), st.integers(0, full_mask(n)))
    ).map(lambda t: MeshPattern.from_mask(Perm(t[0]), t[1]))


@given(st.lists(mesh_patterns(), max_size=5))
def test_round_trip_all_formats(pats):
    basis = Basis(pats, m=5, N=7)
    assert basis_from_json(render_basis(basis, "json")) == basis
    assert parse_basis(render_basis(basis, "json")) == basis
    for fmt in ("text", "ascii"):
        assert parse_basis(render_basis(basis, fmt), fmt).patterns == basis.patterns


def test_ascii_grid():
    grid = pattern_to_ascii(MP("(12, {(0,0),(2,2)})"))
    assert grid.splitlines() == [".|.|#", "-+-*-", ".|.|.", "-*-+-", "#|.|."]
    assert pattern_from_ascii(grid) == MP("(12, {(0,0),(2,2)})")


def test_json_schema():
    obj = json.loads(render_basis(WEST, "json"))
    assert obj == {"m": 4, "N": 5, "pruned": True, "patterns": [
        {"pattern": "2341", "shading": []},
        {"pattern": "3241", "shading": [[1, 4]]},
    ]}


def test_tikz_mentions_every_shaded_cell():
    tikz = render_basis(WEST, "tikz")
    assert "(1,4) rectangle (2,5)" in tikz
    assert tikz.count("\\begin{tikzpicture}") == 2


def test_read_permutations(tmp_path):
    f = tmp_path / "eq1.txt"
    f.write_text("1\n21\n321\n2341\n4123\n4321\n")
    assert [str(p) for p in read_permutation_file(f)] == ["1", "21", "321", "2341", "4123", "4321"]
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    assert read_permutation_file(empty) == []
    assert read_permutations(["# comment", "", "eps", "35241"]) == [Perm(), P("35241")]


def test_read_permutations_errors():
    with pytest.raises(InputError, match=":2:"):
        read_permutations(["12", "1x3"])
    with pytest.raises(InputError, match=":1:"):
        read_permutations(["113"])


def test_cli_bisc_west2():
    code, out, _ = run_cfg(command="bisc", class_spec="west2", length=5, m=4, prune=True)
    assert code == 0
    assert out == "2341\n(3241, {(1,4)})\n"


def test_cli_bisc_verification_line():
    code, out, _ = run_cfg(command="bisc", class_spec="west2", length=5, m=4, n=5)
    assert code == 0 and out.endswith("# verify n=5: ok\n")


def test_cli_avoiders():
    code, out, _ = run_cfg(command="avoiders", patterns="231", n=3)
    assert code == 0
    assert out.split() == ["ε", "1", "12", "21", "123", "132", "213", "312", "321"]


def test_cli_dihedral():
    code, out, _ = run_cfg(command="bisc", class_spec="dihedral", length=4, m=4, prune=True)
    assert code == 0 and len(out.splitlines()) == 16


def test_cli_verify_failure(tmp_path):
    f = tmp_path / "a.txt"
    f.write_text("eps\n1\n12\n21\n")
    code, out, _ = run_cfg(command="verify", input=str(f), patterns="12", n=2)
    assert code == 1 and "counterexample 12" in out
    basis = tmp_path / "b.json"
    basis.write_text(render_basis(Basis([MP("123"), MP("132"), MP("213"), MP("231"), MP("312")]), "json"))
    code, out, _ = run_cfg(command="verify", input=str(f), basis=str(basis), n=3)
    assert code == 1 and "counterexample 321" in out


def test_cli_errors(tmp_path):
    assert run_cfg(command="bisc")[0] == 2
    assert run_cfg(command="bisc", input=str(tmp_path / "missing"))[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("12\n33\n")
    code, _, err = run_cfg(command="bisc", input=str(bad))
    assert code == 2 and "bad.txt:2" in err
    code, _, err = run_cfg(command="avoiders", patterns="1", n=12)
    assert code == 3 and "cap" in err
    assert run_cfg(command="classgen", class_spec="west2", length=11)[0] == 3


def test_cli_mine_json():
    code, out, _ = run_cfg(command="mine", class_spec="stack_sortable", length=4, m=3, output_format="json")
    obj = json.loads(out)
    row = next(r for r in obj["entries"] if r["pattern"] == "231")
    assert code == 0 and row["shadings"] == []


def test_cli_deterministic():
    a = run_cfg(command="bisc", class_spec="rsk_avoid:2,2", length=5, m=4, output_format="json")
    b = run_cfg(command="bisc", class_spec="rsk_avoid:2,2", length=5, m=4, output_format="json")
    assert a == b


def test_main_entry(capsys):
    assert main(["classgen", "--class", "west2", "--len", "2"]) == 0
    assert capsys.readouterr().out.split() == ["ε", "1", "12", "21"]
