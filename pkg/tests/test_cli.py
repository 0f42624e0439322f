import json
import subprocess
import sys
from pathlib import Path

import pytest

from stonedual.cli import main
from stonedual.dot import hasse_edges, space_dot
from stonedual.errors import NotAnIdeal, NotClosedUnderUnion, ParseError, ValidationError
from stonedual.order import FinitePreorder
from stonedual.rings import FiniteCommRing
from stonedual.schema import loads
from stonedual.symbolic import ChainTemplate, classify_template
from stonedual.topology import FiniteSpace, alexandroff, sierpinski

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


# --- schema ------------------------------------------------------------------

def test_load_each_kind():
    assert isinstance(loads('{"kind":"topology","points":[1,2],"opens":[[],[1],[1,2]]}'), FiniteSpace)
    assert isinstance(loads('{"kind":"preorder","elements":["a","b"],"le":[["a","b"]]}'), FinitePreorder)
    assert loads('{"kind":"lattice","elements":[0,1,2],"le":[[0,1],[1,2]]}').size == 3
    assert isinstance(loads('{"kind":"ring","modulus":12}'), FiniteCommRing)
    t = loads('{"kind":"template","blocks":[{"name":"B0","type":"zeta"},'
              '{"name":"T","type":"fin","le":[["w0","w1"],["w1","w0"]]}],"below":[["B0","T"]]}')
    assert isinstance(t, ChainTemplate) and not classify_template(t).t0


def test_ring_forms():
    assert loads('{"kind":"ring","product":[{"kind":"ring","modulus":2},{"kind":"ring","modulus":3}]}').size == 6
    S = loads('{"kind":"ring","ideal_of":{"kind":"ring","modulus":8},"carrier":[0,2,4,6]}')
    assert S.size == 4 and S.identity is None
    T = loads(json.dumps({"kind": "ring", "tables": {
        "elements": ["0", "1"], "add": [["0", "1"], ["1", "0"]], "mul": [["0", "0"], ["0", "1"]]}}))
    assert T.identity == 1


def test_bad_carrier():
    with pytest.raises(NotAnIdeal):
        loads('{"kind":"ring","ideal_of":{"kind":"ring","modulus":8},"carrier":[0,3]}')


def test_parse_error_has_line():
    with pytest.raises(ParseError) as e:
        loads('{"kind": "ring",\n "modulus": }')
    assert e.value.line == 2


def test_parse_error_has_field():
    with pytest.raises(ParseError) as e:
        loads('{"kind":"template","blocks":[{"name":"A","type":"aleph"}]}')
    assert e.value.field == "blocks[0].type"


def test_unknown_kind():
    with pytest.raises(ParseError):
        loads('{"kind":"sheaf"}')


def test_unknown_label_is_validation_error():
    with pytest.raises(ValidationError):
        loads('{"kind":"topology","points":[1,2],"opens":[[],[3],[1,2]]}')


def test_non_lattice_is_validation_error():
    with pytest.raises(ValidationError):
        loads('{"kind":"lattice","elements":["a","b"],"le":[]}')


def test_malformed_opens():
    with pytest.raises(NotClosedUnderUnion):
        loads((SAMPLES / "not_union_closed.json").read_text())


# --- dot ---------------------------------------------------------------------

def test_hasse_edges_skip_transitive_pairs():
    p = FinitePreorder.from_pairs("abc", [("a", "b"), ("b", "c")])
    assert hasse_edges(p) == [(0, 1), (1, 2)]


def test_dot_marks_equivalent_points():
    p = FinitePreorder.from_pairs("abc", [("c", "a"), ("a", "b"), ("b", "a")])
    dot = space_dot(alexandroff(p))
    assert "style=dashed" in dot
    assert dot.count("->") == 2


def test_space_dot_of_sierpinski():
    dot = space_dot(sierpinski())
    # point 2 lies in the closure of point 1
    assert 'n1 -> n0;' in dot and dot.startswith("digraph")


# --- commands ----------------------------------------------------------------

def test_classify_x5(capsys):
    code, out, _ = run(capsys, "classify", SAMPLES / "x5.json")
    assert code == 0
    line = next(l for l in out.splitlines() if l.startswith("almost_sober:"))
    assert "false" in line and "cut below <eta, r>" in line


def test_classify_sierpinski(capsys):
    code, out, _ = run(capsys, "classify", SAMPLES / "sierpinski.json")
    assert code == 0 and "spectral: true" in out.splitlines()


def test_classify_malformed(capsys):
    code, _, err = run(capsys, "classify", SAMPLES / "not_union_closed.json")
    assert code == 2 and "NotClosedUnderUnion" in err


def test_spec_chain(capsys, tmp_path):
    out_dot = tmp_path / "s.dot"
    code, out, _ = run(capsys, "spec", SAMPLES / "chain3.json", "--dot", out_dot)
    assert code == 0 and "{0,1}" in out
    assert out_dot.read_text().startswith("digraph")


def test_spec_z12(capsys):
    code, out, _ = run(capsys, "spec", SAMPLES / "z12.json")
    assert code == 0 and "points (2):" in out and "(2)" in out and "(3)" in out


def test_spec_empty(capsys):
    code, out, _ = run(capsys, "spec", SAMPLES / "2z8z.json")
    assert code == 0 and "Spec is empty" in out


def test_audit_diagram(capsys):
    code, out, _ = run(capsys, "audit", "diagram")
    assert code == 0 and "7/7" in out


def test_audit_symbolic_oracle(capsys):
    code, out, _ = run(capsys, "audit", "symbolic-oracle", "--seed", 7, "--trials", 200)
    assert code == 0 and "200/200" in out


def test_audit_needs_seed(capsys):
    code, _, err = run(capsys, "audit", "symbolic-oracle")
    assert code == 2 and "--seed" in err


def test_audit_unknown_suite(capsys):
    code, _, err = run(capsys, "audit", "nonsense")
    assert code == 2 and "UnknownSuite" in err


def test_audit_output_is_reproducible(capsys):
    first = run(capsys, "audit", "symbolic-oracle", "--seed", 3, "--trials", 50)
    second = run(capsys, "audit", "symbolic-oracle", "--seed", 3, "--trials", 50)
    assert first == second


@pytest.mark.parametrize("kind,n,count", [("topologies", 3, 29), ("topologies", 4, 355), ("posets", 3, 19)])
def test_enumerate(capsys, kind, n, count):
    code, out, _ = run(capsys, "enumerate", kind, n)
    assert code == 0 and out.splitlines()[0].endswith(f": {count}")


def test_enumerate_guard(capsys):
    code, _, err = run(capsys, "enumerate", "topologies", 6)
    assert code == 2 and "BoundExceeded" in err


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "stonedual", "audit", "diagram"], capture_output=True, text=True)
    assert r.returncode == 0 and "7/7" in r.stdout
