import io
import json
import subprocess
import sys

import pytest

from projalg.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def fields(text):
    return dict(line.split(": ", 1) for line in text.splitlines() if ": " in line and not line.startswith(" "))


@pytest.fixture
def jl_file(tmp_path):
    path = tmp_path / "jl.json"
    code, _, _ = call("construct", "jordan-lie", "--ring", "Mat(2,Q)", "--involution", "transpose", "--output", str(path))
    assert code == EXIT_OK
    return path


def test_enumerate_counts():
    for ring, n in [("F2", 3), ("F3", 4), ("Zmod(4)", 6), ("Dual(F3)", 12), ("Mat(2,F2)", 35)]:
        code, out, _ = call("enumerate", "--ring", ring, "--count-only")
        assert code == EXIT_OK
        assert fields(out)["points"] == str(n)


def test_enumerate_lines_format():
    code, out, _ = call("enumerate", "--ring", "F2", "--format", "lines")
    rows = [line.split("\t") for line in out.splitlines()]
    assert [r[0] for r in rows] == ["point"] * 3 + ["ring", "points"]
    assert rows[-1] == ["points", "3"]


def test_fixed_line_and_chart():
    args = ("--ring", "Mat(2,F2)", "--involution", "transpose")
    assert fields(call("fixed-line", *args, "--count-only")[1])["points"] == "15"
    out = fields(call("chart", *args)[1])
    assert out["points"] == "8"
    assert out["model"] == "Herm 8"


def test_unitary_line_reports_the_embedding():
    out = fields(call("fixed-line", "--ring", "Mat(2,F2)", "--involution", "transpose", "--form", "sigma", "--count-only")[1])
    assert out["points"] == "3"
    assert out["unitary image"] == "2 of 3"


def test_custom_form_matrix():
    code, out, _ = call("fixed-line", "--ring", "F3", "--matrix", "[[0,1],[2,0]]", "--count-only")
    assert code == EXIT_OK
    assert fields(out)["points"] == "4"


def test_orbit():
    code, out, _ = call("orbit", "--ring", "F3")
    f = fields(out)
    assert code == EXIT_OK
    assert f["group order"] == "24"
    assert f["transitive"] == "yes"


def test_orthocomplement_and_transversal():
    f = fields(call("orthocomplement", "point[1;2] @ F5", "--form", "theta")[1])
    assert f["orthocomplement"] == "point[2;1]"
    assert f["fixed"] == "no"
    assert fields(call("transversal", "point[1;0] @ F3", "point[0;1] @ F3")[1])["transversal"] == "yes"
    assert fields(call("transversal", "point[1;0] @ F3", "point[2;0] @ F3")[1])["transversal"] == "no"


def test_affine_coordinate():
    assert fields(call("chart", "point[3;1] @ F5")[1])["coordinate"] == "3"
    assert fields(call("chart", "point[1;0] @ F5")[1])["coordinate"].startswith("none")


def test_pid():
    f = fields(call("pid", "--ring", "Z", "--to-point", "3/2")[1])
    assert f["point"] == "point[3;2]"
    assert f["frame"] == "[[-1,3],[-1,2]]"
    assert f["determinant"] == "1"
    assert fields(call("pid", "--ring", "Z", "--to-fraction", "point[-3;-2]")[1])["fraction"] == "3/2"
    assert call("pid", "--ring", "Z", "--to-fraction", "point[-6;-4]")[0] == EXIT_USAGE  # not unimodular
    assert fields(call("pid", "--ring", "Z", "--to-point", "oo")[1])["point"] == "point[1;0]"


def test_check_and_detect(jl_file):
    code, out, _ = call("check", "--input", str(jl_file))
    assert code == EXIT_OK
    f = fields(call("detect-coupling", "--input", str(jl_file))[1])
    assert (f["status"], f["C"]) == ("constant", "1/4")


def test_check_fails_on_a_mutated_file(jl_file, tmp_path):
    doc = json.loads(jl_file.read_text())
    doc["bilinear"]["product"][0][1][2] = "5"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = call("check", "--input", str(bad), "--format", "lines")
    assert code == EXIT_FAIL
    assert out.splitlines()[-1] == "result\tfail"


def test_check_with_wrong_coupling(jl_file):
    assert call("check", "--input", str(jl_file), "--coupling", "1/2")[0] == EXIT_FAIL


def test_quantize(jl_file, tmp_path):
    target = tmp_path / "q.json"
    code, out, _ = call("quantize", "--input", str(jl_file), "--output", str(target))
    assert code == EXIT_OK
    assert json.loads(target.read_text())["dim"] == 8
    assert call("check", "--input", str(target))[0] == EXIT_OK
    code, out, _ = call("quantize", "--input", str(jl_file), "--coupling", "1/2")
    assert code == EXIT_FAIL


@pytest.mark.parametrize(
    "kind,extra",
    [
        ("algebra", ()),
        ("jordan", ()),
        ("hermitian", ()),
        ("jts", ()),
        ("lie-jordan", ()),
        ("rect-triple", ("--p", "2", "--q", "2")),
    ],
)
def test_construct_then_check(kind, extra, tmp_path):
    path = tmp_path / f"{kind}.json"
    ring = ("--ring", "Q") if kind == "rect-triple" else ("--ring", "Mat(3,Q)", "--involution", "transpose")
    assert call("construct", kind, *ring, *extra, "--output", str(path))[0] == EXIT_OK
    assert call("check", "--input", str(path))[0] == EXIT_OK


def test_hermitian_jordan_lie_construction(tmp_path):
    path = tmp_path / "h.json"
    call("construct", "hermitian-jordan-lie", "--ring", "Mat(2,Qi)", "--involution", "conjtranspose", "--output", str(path))
    assert fields(call("detect-coupling", "--input", str(path))[1])["C"] == "-1/4"


def test_output_is_deterministic(jl_file):
    for argv in (
        ("enumerate", "--ring", "Dual(F3)"),
        ("check", "--input", str(jl_file), "--seed", "7"),
        ("construct", "lie-jordan", "--ring", "Mat(3,Q)", "--involution", "transpose"),
    ):
        assert call(*argv) == call(*argv)


@pytest.mark.parametrize(
    "argv",
    [
        (),
        ("frobnicate",),
        ("enumerate",),
        ("enumerate", "--ring", "Mat(2,"),
        ("enumerate", "--ring", "Q"),
        ("orthocomplement",),
        ("pid", "--ring", "Z"),
        ("check",),
        ("construct", "rect-triple", "--ring", "Q"),
    ],
)
def test_usage_errors(argv):
    assert call(*argv)[0] == EXIT_USAGE


def test_spec_error_prints_grammar():
    code, _, err = call("enumerate", "--ring", "Fq(2")
    assert code == EXIT_USAGE
    assert "RING" in err and "INVOLUTION" in err


def test_bad_file_reports_byte_offset(tmp_path):
    bad = tmp_path / "x.json"
    bad.write_text('{"base": "Q", "dim": 1, "flavor": "jts", "trilinear": {"triple": [[[["1/0"]]]]}}')
    code, _, err = call("check", "--input", str(bad))
    assert code == EXIT_USAGE
    assert f"{bad}: byte {bad.read_text().index(chr(34) + '1/0')}:" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "projalg", "enumerate", "--ring", "F2", "--count-only"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "points: 3" in proc.stdout
