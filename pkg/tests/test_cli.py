import io
from fractions import Fraction as F
from pathlib import Path

import pytest

from fafrontier import ParseError, emit_svg, feasible_set, group_error
from fafrontier.cli import format_instance, parse_instance, run_command
from fafrontier.dist import Algorithm
from fafrontier.frontier import fa_frontier, special_points
from fafrontier.geometry import ConvexPolygon
from fafrontier.instances import MISCLASSIFICATION, reveals_group_instance

DATA = Path(__file__).resolve().parent / "data"
BINARY_SCORE = DATA / "binary_score.fa"
SIGNAL = DATA / "signal.fa"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_binary_score_file():
    inst, loss, agent = parse_instance(BINARY_SCORE.read_text())
    assert agent is None
    assert group_error(inst, loss, Algorithm({("0",): 0, ("1",): 1})) == (F(1, 4), F(1, 3))


def test_round_trip():
    for path in (BINARY_SCORE, SIGNAL):
        inst, loss, agent = parse_instance(path.read_text())
        again = parse_instance(format_instance(inst, loss, agent))
        assert again[0].mass == inst.mass and again[1] == loss and again[2] == agent


@pytest.mark.parametrize("text, needle", [
    ("covariates X\ntypes 0 1\nprob 0 0 g3 1\n", "line 3"),
    ("covariates X\ntypes 0 1\nprob 0 0 r 1/2\nprob 0 0 r 1/2\n", "duplicate"),
    ("covariates X\ntypes 0 1\nprob 0 0 r 1/2\nprob 0 1 b 1/2\nloss 0 0 0\n", "missing loss"),
    ("covariates X\nfoo 1\n", "unknown directive"),
    ("covariates G\n", "reserved"),
    ("covariates X\ntypes 0 1\nprob 0 0 r 0.5\nprob 0 1 b 0.4\nloss 0 0 0\nloss 0 1 1\nloss 1 0 1\nloss 1 1 0\n",
     "sum to"),
    ("covariates X\ntypes 0 1\nprob 0 0 r abc\n", "not a number"),
])
def test_parse_errors(text, needle):
    with pytest.raises(ParseError) as exc:
        parse_instance(text)
    assert needle in str(exc.value)


def test_float_mode_parse():
    inst, loss, _ = parse_instance(SIGNAL.read_text(), "float")
    assert inst.numeric_mode == "float"
    assert isinstance(next(iter(inst.mass.values())), float)


def test_frontier_csv():
    code, out, _ = run("frontier", BINARY_SCORE, "--format", "csv")
    assert code == 0
    assert out == "e_r,e_b\n1/4,1/3\n1/2,1/2\n"


def test_classify_text():
    assert run("classify", BINARY_SCORE)[1] == "r-skewed\n"


def test_special_points_and_input_design():
    assert run("special-points", BINARY_SCORE)[1].splitlines()[2] == "f 1/2 1/2"
    code, out, _ = run("input-design", SIGNAL, "--format", "csv")
    assert code == 0 and out == "e_r,e_b\n0,2/5\n1/2,1/2\n"
    code, out, _ = run("input-design", SIGNAL, "--alpha-r", "1", "--alpha-b", "-0.1", "--format", "csv")
    assert code == 0


def test_garble_prints_certificate():
    code, out, _ = run("garble", SIGNAL, "--target", "0,0.4", "--alpha-r", "0.5", "--alpha-b", "0.5")
    assert code == 0
    assert "obedient true" in out and "induced 0,2/5" in out and "kernel" in out


def test_garble_infeasible_exit_code():
    code, _, err = run("garble", SIGNAL, "--target", "1,0")
    assert code == 3 and "feasible" in err


def test_exclude_and_missing_agent():
    code, out, _ = run("exclude", SIGNAL, "--base", "X", "--extra", "Xp", "--with-group")
    assert code == 0 and out.startswith("uniformly_worsens true")
    code, _, err = run("exclude", BINARY_SCORE, "--extra", "X")
    assert code == 3 and "agent" in err


def test_generalized_and_phi_commands():
    code, out, _ = run("gen-frontier", BINARY_SCORE, "--grid", "3", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "delta,r_e_r,r_e_b,b_e_r,b_e_b"
    assert run("phi-frontier", BINARY_SCORE, "--phi", "sqrt")[0] == 0
    assert run("phi-frontier", SIGNAL, "--phi", "log")[0] == 3
    code, out, _ = run("criteria-loss", BINARY_SCORE, "--kind", "statistical_parity", "--format", "csv")
    assert code == 0 and "1,0,r,1" in out


def test_oracle_check():
    code, out, _ = run("oracle-check", BINARY_SCORE)
    assert code == 0 and "match true" in out


def test_parse_error_exit_codes(tmp_path):
    bad = tmp_path / "bad.fa"
    bad.write_text("covariates X\ntypes 0 1\nprob 0 0 g3 1\n")
    code, _, err = run("frontier", bad)
    assert code == 2 and "line 3" in err
    assert run("frontier", tmp_path / "missing.fa")[0] == 2
    assert run("bogus-command", BINARY_SCORE)[0] == 2


def test_output_file(tmp_path):
    target = tmp_path / "out.csv"
    assert run("frontier", BINARY_SCORE, "--format", "csv", "-o", target)[0] == 0
    assert target.read_text() == "e_r,e_b\n1/4,1/3\n1/2,1/2\n"


def test_svg_frontier_has_two_pairs():
    code, out, _ = run("frontier", BINARY_SCORE, "--format", "svg")
    line = next(l for l in out.splitlines() if 'class="frontier"' in l)
    pts = line.split('points="')[1].split('"')[0].split()
    assert len(pts) == 2


def test_svg_rectangle_and_singleton():
    import random
    inst = reveals_group_instance(random.Random(0), per_group=1, max_types=2)
    fs = feasible_set(inst, MISCLASSIFICATION)
    svg = emit_svg(fs.polygon, [fa_frontier(fs)], special_points(fs))
    poly_line = next(l for l in svg.splitlines() if 'class="feasible"' in l)
    assert poly_line.startswith("<polygon")
    assert len(poly_line.split('points="')[1].split('"')[0].split()) == 4
    single = emit_svg(ConvexPolygon(((F(1, 2), F(1, 2)),)), [], None)
    assert '<circle class="feasible"' in single
    assert emit_svg(fs.polygon, [fa_frontier(fs)], special_points(fs)) == svg
