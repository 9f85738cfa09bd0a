import json
import subprocess
import sys


def run_cli(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "posgeom.cli", *args], capture_output=True, text=True, cwd=cwd
    )


def write_json(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


def kinematics_file(tmp_path, seed=7, abhy=True):
    path = tmp_path / "k.json"
    args = ["sample-kinematics", "--n", "5", "--seed", str(seed), "--output", str(path)]
    if abhy:
        args.append("--abhy")
    out = run_cli(*args)
    assert out.returncode == 0, out.stderr
    return str(path)


def test_crosscheck_flow(tmp_path):
    kfile = kinematics_file(tmp_path)
    out = run_cli("crosscheck", "--kinematics", kfile)
    assert out.returncode == 0, out.stderr
    doc = json.loads(out.stdout)
    result = doc["result"]
    assert result["tree_equals_dual_volume"] is True
    assert result["chy_within_tolerance"] is True
    assert doc["manifest"]["subcommand"] == "crosscheck"
    assert doc["manifest"]["inputs"]


def test_byte_identical_reruns(tmp_path):
    kfile = kinematics_file(tmp_path)
    a = run_cli("crosscheck", "--kinematics", kfile, "--seed", "3")
    b = run_cli("crosscheck", "--kinematics", kfile, "--seed", "3")
    assert a.stdout == b.stdout
    assert a.returncode == b.returncode == 0


def test_amplitude_lists_triangulations(tmp_path):
    kfile = kinematics_file(tmp_path)
    out = run_cli("amplitude", "--kinematics", kfile)
    result = json.loads(out.stdout)["result"]
    assert len(result["triangulations"]) == 5
    assert "/" in result["amplitude"] or result["amplitude"].lstrip("-").isdigit()


def test_chy_subcommand(tmp_path):
    kfile = kinematics_file(tmp_path, seed=2, abhy=False)
    out = run_cli("chy", "--kinematics", kfile, "--tol", "1e-10", "--seed", "5")
    assert out.returncode == 0, out.stderr
    result = json.loads(out.stdout)["result"]
    assert len(result["critical_points"]) == 2
    assert result["relative_error"] < 1e-9


def test_validation_exit_code(tmp_path):
    out = run_cli("amplitude", "--kinematics", str(tmp_path / "missing.json"))
    assert out.returncode == 2
    bad = write_json(tmp_path / "bad.json", {"n": 5})
    out = run_cli("amplitude", "--kinematics", bad)
    assert out.returncode == 2
    notsym = write_json(
        tmp_path / "notsym.json",
        {"n": 4, "s": [["0", "1", "0", "0"], ["0", "0", "0", "0"], ["0"] * 4, ["0"] * 4]},
    )
    out = run_cli("amplitude", "--kinematics", notsym)
    assert out.returncode == 2


def test_numerical_exit_code_on_pole(tmp_path):
    # planar variable X13 = s12 vanishes: the amplitude has a pole there
    zero_s12 = {
        "n": 5,
        "s": [
            ["0", "0", "-1", "1", "0"],
            ["0", "0", "1", "0", "-1"],
            ["-1", "1", "0", "-1", "1"],
            ["1", "0", "-1", "0", "0"],
            ["0", "-1", "1", "0", "0"],
        ],
    }
    path = write_json(tmp_path / "pole.json", zero_s12)
    out = run_cli("crosscheck", "--kinematics", path)
    assert out.returncode == 3
    assert "numerical failure" in out.stderr


def test_adjoint_and_membership_files(tmp_path):
    zfile = write_json(tmp_path / "z.json", {"rows": [[1, i, i * i, i**3] for i in range(1, 6)]})
    out = run_cli("adjoint-gr24", "--Z", zfile)
    result = json.loads(out.stdout)["result"]
    assert result["coefficients"] == [593, -330, 49, 143, -30, 5]

    lfile = write_json(tmp_path / "line.json", {"A": ["1", "0", "0", "0"], "B": ["0", "1", "0", "0"]})
    out = run_cli("amplituhedron", "--Z", zfile, "--line", lfile)
    result = json.loads(out.stdout)["result"]
    assert result["member"] is False
    out = run_cli("stabs", "--Z", zfile, "--line", lfile)
    assert json.loads(out.stdout)["result"]["stabs"] is False

    pline = write_json(tmp_path / "pline.json", {"p": ["1", "0", "0", "0", "0", "0"]})
    out = run_cli("stabs", "--Z", zfile, "--line", pline)
    assert out.returncode == 0


def test_gkz_subcommand(tmp_path):
    integrand = {
        "nvars": 2,
        "forms": [
            {"monomials": [[1, 0], [0, 1], [0, 0]], "coefficients": [1, 2, 3], "exponent": "-1"},
            {"monomials": [[1, 0], [0, 0]], "coefficients": [4, 5], "exponent": "-1"},
            {"monomials": [[0, 1], [0, 0]], "coefficients": [6, 7], "exponent": "-1"},
        ],
        "prefactor": [{"eps": "1", "const": "1"}, {"eps": "1", "const": "1"}],
    }
    path = write_json(tmp_path / "bp.json", integrand)
    out = run_cli("gkz", "--integrand", path)
    result = json.loads(out.stdout)["result"]
    assert result["toric_operators"] == ["d1*d5 - d3*d4", "d2*d7 - d3*d6"]
    assert len(result["euler_operators"]) == 5


def test_signature_subcommand(tmp_path):
    path = write_json(tmp_path / "p.json", {"points": [["0", "0"], ["1", "0"], ["1", "1"]]})
    out = run_cli("signature", "--path", path, "--level", "2")
    result = json.loads(out.stdout)["result"]
    assert result["levels"][2] == [["1/2", "1"], ["0", "1/2"]]


def test_dihedral_subcommand(tmp_path):
    out = run_cli("dihedral", "--check", "u-equations", "--n", "5")
    result = json.loads(out.stdout)["result"]
    assert result["all_passed"] is True
    kfile = kinematics_file(tmp_path, seed=4, abhy=False)
    out = run_cli("dihedral", "--check", "scattering", "--kinematics", kfile, "--tol", "1e-10")
    result = json.loads(out.stdout)["result"]
    assert result["max_residual"] < 1e-9


def test_abhy_subcommand():
    out = run_cli("abhy", "--s13", "1", "--s14", "1", "--s24", "1")
    result = json.loads(out.stdout)["result"]
    assert len(result["polytope"]["V"]) == 5
    out = run_cli("abhy", "--s13", "-1", "--s14", "1", "--s24", "1")
    assert out.returncode == 2


def test_string_limit_subcommand(tmp_path):
    kfile = write_json(
        tmp_path / "pos.json",
        {
            "n": 5,
            "s": None,
        },
    )
    # build a proper positive-planar kinematics via the library
    from fractions import Fraction as F

    from posgeom.kinematics import kinematics_from_planar, polygon_diagonals

    k = kinematics_from_planar(5, {d: F(1) for d in polygon_diagonals(5)})
    kfile = write_json(tmp_path / "pos.json", k.to_dict())
    out = run_cli("string-limit", "--kinematics", kfile, "--eps", "0.2,0.1,0.05")
    assert out.returncode == 0, out.stderr
    result = json.loads(out.stdout)["result"]
    assert result["relative_error"] < 0.01
