"""Command-line interface: determinism, exit codes, validation order."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ogzkit import QQ, Ring
from ogzkit.cli import main, parse_expr, parse_op

SPEC_R2 = {
    "lambda": [2, 1],
    "point": {
        "1,1": {"tag": 1, "offset": 0},
        "1,2": {"tag": 1, "offset": 0},
        "2,1": {"tag": 2, "offset": 0},
    },
    "radius": 2,
}


@pytest.fixture()
def spec_file(tmp_path):
    p = tmp_path / "spec.json"
    p.write_text(json.dumps(SPEC_R2))
    return str(p)


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


# ---------------------------------------------------------------------------
# apply


def test_apply_golden(capsys):
    rc, out, err = run(
        capsys, "apply", "--shape", "2,1", "--op", "E1", "--expr", "x[1,1]+x[1,2]"
    )
    assert rc == 0 and err == ""
    assert out == "x[1,1]+x[1,2]+1\n"


def test_apply_commutator_zero(capsys):
    rc, out, _ = run(
        capsys,
        "apply",
        "--shape",
        "2,1",
        "--op",
        "E1*F1 - F1*E1",
        "--expr",
        "x[1,1]*x[1,2]",
    )
    assert rc == 0 and out == "0\n"


def test_apply_with_parameters(capsys):
    rc, out, _ = run(
        capsys,
        "apply",
        "--shape",
        "1,1",
        "--op",
        "phi[1,1]^-1",
        "--expr",
        "z[1]*x[1,1]",
        "--params",
        "1",
    )
    assert rc == 0 and out == "z[1]*x[1,1]-z[1]\n"


def test_apply_rerun_identical(capsys):
    args = ("apply", "--shape", "2,1", "--op", "gamma[1,2]", "--expr", "x[2,1]")
    rc1, out1, _ = run(capsys, *args)
    rc2, out2, _ = run(capsys, *args)
    assert rc1 == rc2 == 0
    assert out1 == out2


# ---------------------------------------------------------------------------
# exit codes and error envelopes


def error_payload(err):
    payload = json.loads(err.strip())
    return payload["error"]


def test_unknown_operator_exits_2(capsys):
    rc, out, err = run(capsys, "apply", "--shape", "2,1", "--op", "E9", "--expr", "1")
    assert rc == 2 and out == ""
    e = error_payload(err)
    assert e["code"] == 2 and e["type"] == "NameError"


def test_parse_error_exits_2(capsys):
    rc, _, err = run(capsys, "apply", "--shape", "2,1", "--op", "E1 +", "--expr", "1")
    assert rc == 2
    assert error_payload(err)["type"] == "ParseError"


def test_operator_division_rejected(capsys):
    rc, _, err = run(capsys, "apply", "--shape", "2,1", "--op", "1/E1", "--expr", "1")
    assert rc == 2
    assert error_payload(err)["type"] == "ParseError"


def test_out_of_range_variable_exits_2(capsys):
    rc, _, err = run(capsys, "apply", "--shape", "2,1", "--op", "E1", "--expr", "x[3,1]")
    assert rc == 2
    assert error_payload(err)["type"] == "NameError"


def test_bad_setup_exits_3(capsys, tmp_path):
    spec = dict(SPEC_R2)
    spec["point"] = {
        "1,1": {"tag": 1, "offset": 0},
        "1,2": {"tag": 1, "offset": 1},
        "2,1": {"tag": 2, "offset": 0},
    }
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(spec))
    rc, _, err = run(capsys, "basis", "--spec", str(p))
    assert rc == 3
    assert error_payload(err)["code"] == 3


def test_argparse_error_exits_2(capsys):
    assert main(["walk"]) == 2  # neither find nor validate arguments
    capsys.readouterr()
    assert main(["no-such-command"]) == 2
    capsys.readouterr()


def test_help_exits_0(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()


# ---------------------------------------------------------------------------
# jobspec validation happens before any computation


@pytest.mark.parametrize(
    "mutate",
    [
        lambda s: s.pop("point"),
        lambda s: s["point"].pop("1,1"),
        lambda s: s["point"].update({"9x": {"tag": 1, "offset": 0}}),
        lambda s: s["point"]["1,1"].update({"tag": 0}),
        lambda s: s["point"]["1,1"].update({"offset": 0.5}),
        lambda s: s.update({"radius": 0}),
        lambda s: s.update({"unexpected": 1}),
    ],
)
def test_jobspec_rejections(capsys, tmp_path, mutate):
    spec = json.loads(json.dumps(SPEC_R2))
    mutate(spec)
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(spec))
    rc, _, err = run(capsys, "basis", "--spec", str(p))
    assert rc == 2
    assert error_payload(err)["type"] == "JobSpecError"


def test_jobspec_point_shape_mismatch(capsys, tmp_path):
    spec = json.loads(json.dumps(SPEC_R2))
    spec["point"]["1,3"] = {"tag": 1, "offset": 0}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(spec))
    rc, _, err = run(capsys, "basis", "--spec", str(p))
    assert rc == 2
    assert error_payload(err)["type"] == "JobSpecError"


# ---------------------------------------------------------------------------
# windowed commands


def test_basis_output(capsys, spec_file):
    rc, out, _ = run(capsys, "basis", "--spec", spec_file)
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "point x[1,1]=z[1];x[1,2]=z[1];x[2,1]=z[2]"
    assert "window_size 25" in lines
    assert "basis 25" in lines
    assert "rank_history 4,6,9,12,16,20,25,25" in lines


def test_basis_rerun_identical(capsys, spec_file):
    rc1, out1, _ = run(capsys, "basis", "--spec", spec_file)
    rc2, out2, _ = run(capsys, "basis", "--spec", spec_file)
    assert rc1 == rc2 == 0 and out1 == out2


def test_action_both_routes(capsys, spec_file):
    rc, out, _ = run(
        capsys, "action", "--spec", spec_file, "--op", "E1", "--routes", "both"
    )
    assert rc == 0
    assert "boundary(skipped)" in out
    assert "agree=yes" in out and "agree=NO" not in out


def test_action_rerun_identical(capsys, spec_file):
    args = ("action", "--spec", spec_file, "--op", "gamma[1,2]", "--routes", "both")
    rc1, out1, _ = run(capsys, *args)
    rc2, out2, _ = run(capsys, *args)
    assert rc1 == rc2 == 0 and out1 == out2


def test_action_bad_generator_token(capsys, spec_file):
    rc, _, err = run(capsys, "action", "--spec", spec_file, "--op", "Q7")
    assert rc == 2
    assert error_payload(err)["type"] == "ParseError"


def test_blocks_output(capsys, spec_file):
    rc, out, _ = run(capsys, "blocks", "--spec", spec_file)
    assert rc == 0
    assert "socle" in out and "nilpotent ok" in out.replace("=", " ")


def test_graph_output(capsys, spec_file):
    rc, out, _ = run(capsys, "graph", "--spec", spec_file)
    assert rc == 0
    assert "components 1" in out
    rc, out, _ = run(capsys, "graph", "--spec", spec_file, "--dot")
    assert rc == 0 and "graph window {" in out


def test_probe_output(capsys, spec_file):
    rc, out, _ = run(capsys, "probe", "--spec", spec_file)
    assert rc == 0
    assert out.rstrip().endswith("probe PASS")


# ---------------------------------------------------------------------------
# relation battery / form comparison


def test_check_relations_minimal(capsys):
    rc, out, _ = run(capsys, "check-relations", "--shape", "1,1")
    assert rc == 0
    assert "checked=4 failed=0" in out
    assert "FAIL" not in out


def test_ddiff_compare(capsys):
    rc, out, _ = run(capsys, "ddiff-compare", "--shape", "2,1", "--row", "1", "--mu", "2")
    assert rc == 0
    assert "verdict=ok" in out and "mismatches=0" in out


# ---------------------------------------------------------------------------
# walks


def test_walk_find(capsys):
    rc, out, _ = run(capsys, "walk", "--start", "0,0,0,0", "--target", "2,2,1,1")
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "(0,0,0,0) -1-> (1,0,0,0)"
    assert lines[-1].startswith("steps ")
    assert "all_ok yes" in lines[-1]


def test_walk_validate_file(capsys, tmp_path):
    from ogzkit import render_walk
    from test_latwalk import REFERENCE_LABELS, REFERENCE_STATES

    p = tmp_path / "walk.txt"
    p.write_text(render_walk(REFERENCE_STATES, REFERENCE_LABELS) + "\n")
    rc, out, _ = run(capsys, "walk", "--validate", str(p))
    assert rc == 0
    assert "FLAG(repeated state, not a move)" in out
    assert out.count("FLAG") == 1


def test_walk_validate_accepts_saved_search(capsys, tmp_path):
    p = tmp_path / "found.txt"
    rc, out, _ = run(
        capsys, "walk", "--start", "0,0,0,0", "--target", "2,1,1,0", "--out", str(p)
    )
    assert rc == 0 and out == ""
    rc, out, _ = run(capsys, "walk", "--validate", str(p))
    assert rc == 0
    assert "all_ok yes" in out.splitlines()[-1]
    assert "FLAG" not in out


def test_walk_rerun_identical(capsys):
    args = ("walk", "--start", "0,0,0", "--target", "2,1,0")
    rc1, out1, _ = run(capsys, *args)
    rc2, out2, _ = run(capsys, *args)
    assert rc1 == rc2 == 0 and out1 == out2


# ---------------------------------------------------------------------------
# --out writes the same bytes to a file


def test_out_flag(capsys, tmp_path):
    dest = tmp_path / "result.txt"
    rc, out, _ = run(
        capsys,
        "apply",
        "--shape",
        "2,1",
        "--op",
        "E1",
        "--expr",
        "x[1,1]+x[1,2]",
        "--out",
        str(dest),
    )
    assert rc == 0 and out == ""
    assert dest.read_text() == "x[1,1]+x[1,2]+1\n"


# ---------------------------------------------------------------------------
# expression parser round trips


@st.composite
def poly_strategy(draw):
    ring = Ring((2, 1), 1)
    gens = [ring.x(1, 1), ring.x(1, 2), ring.x(2, 1), ring.z(1)]
    out = ring.zero()
    for _ in range(draw(st.integers(min_value=1, max_value=4))):
        term = ring.const(
            QQ(draw(st.integers(min_value=-9, max_value=9)), draw(st.integers(min_value=1, max_value=5)))
        )
        for _ in range(draw(st.integers(min_value=0, max_value=3))):
            term = term * gens[draw(st.integers(min_value=0, max_value=3))]
        out = out + term
    return out


@settings(max_examples=80, deadline=None)
@given(poly_strategy())
def test_parser_roundtrips_rendered_polynomials(p):
    ring = Ring((2, 1), 1)
    rf = parse_expr(ring, str(p))
    assert rf.is_polynomial() and rf.polynomial_part() == p


@settings(max_examples=40, deadline=None)
@given(poly_strategy(), poly_strategy())
def test_parser_roundtrips_rendered_rationals(num, den):
    from ogzkit import RationalFunction

    if den.is_zero():
        den = den.ring.one()
    ring = Ring((2, 1), 1)
    rf = RationalFunction.normalize(num, den)
    assert parse_expr(ring, str(rf)) == rf


def test_parse_op_accepts_scalar_as_multiplication():
    ring = Ring((2, 1), 0)
    op = parse_op(ring, "x[1,1]+1")
    assert op.is_multiplication()
