"""End-to-end command line tests: every command group, exit codes,
byte-level determinism, and the documented output formats."""

import json

import pytest

from banachcalc import cli
from banachcalc.catalogio import load_catalog
from banachcalc.spaces import l1_space, linf_space


def run(argv, capsys):
    code = cli.main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


@pytest.fixture
def cat(tmp_path, capsys):
    """A catalog file holding l1_2 (fresh file per test)."""
    path = tmp_path / "cat.json"
    code, out, err = run(
        ["space", "make", "--kind", "l1", "--dim", "2",
         "--name", "l1_2", "--out", str(path)], capsys)
    assert code == 0, err
    return path


# ---------------------------------------------------------------- space

def test_space_make_show_dual(cat, capsys):
    code, out, _ = run(["space", "show", "--in", str(cat),
                        "--name", "l1_2"], capsys)
    assert code == 0
    assert "l1_2: dim=2 vertices=4 facets=4" in out

    code, out, _ = run(["space", "dual", "--in", str(cat),
                        "--name", "l1_2", "--as", "linf_2",
                        "--out", str(cat)], capsys)
    assert code == 0
    assert "dim=2 vertices=4 facets=4" in out

    stored = load_catalog(str(cat)).catalog["linf_2"].space
    assert stored.ball.vertices == linf_space(2).ball.vertices


def test_space_norm_value(cat, capsys):
    code, out, _ = run(["space", "norm", "--in", str(cat),
                        "--name", "l1_2", "--vector", "1,-1"], capsys)
    assert code == 0
    assert "norm = 2 (2)" in out


def test_space_sum1_equals_l1(cat, tmp_path, capsys):
    code, out, err = run(
        ["space", "make", "--kind", "l1", "--dim", "1", "--name", "l1_1",
         "--in", str(cat), "--out", str(cat)], capsys)
    assert code == 0, err
    code, out, err = run(
        ["space", "sum1", "--in", str(cat), "--left", "l1_1",
         "--right", "l1_1", "--as", "s", "--out", str(cat)], capsys)
    assert code == 0, err
    stored = load_catalog(str(cat)).catalog["s"].space
    assert stored.ball.vertices == l1_space(2).ball.vertices


def test_space_subspace_and_quotient(cat, capsys):
    code, out, err = run(
        ["space", "subspace", "--in", str(cat), "--name", "l1_2",
         "--basis", "1,1", "--as", "diag", "--out", str(cat)], capsys)
    assert code == 0, err
    assert "dim=1" in out
    code, out, err = run(
        ["space", "quotient", "--in", str(cat), "--name", "l1_2",
         "--basis", "1,0", "--as", "q", "--out", str(cat)], capsys)
    assert code == 0, err
    assert "dim=1" in out


def test_space_make_from_vertices(tmp_path, capsys):
    path = tmp_path / "c.json"
    code, out, err = run(
        ["space", "make", "--kind", "verts", "--name", "hex",
         "--vertices", "2,2;2,0;0,2;-2,-2;-2,0;0,-2",
         "--out", str(path)], capsys)
    assert code == 0, err
    assert "hex: dim=2 vertices=6 facets=6" in out


# ---------------------------------------------------------- incarnation

def test_incarnate_and_zonotope_check(tmp_path, capsys):
    path = tmp_path / "c.json"
    code, out, err = run(
        ["incarnate", "--rows", "1,0;0,1;1,1", "--as", "k",
         "--out", str(path)], capsys)
    assert code == 0, err
    assert "ambient=l1^3 sub_dim=2" in out

    code, out, err = run(
        ["zonotope", "build", "--generators", "1,0;0,1;1,1",
         "--as", "z", "--in", str(path), "--out", str(path)], capsys)
    assert code == 0, err

    code, out, err = run(
        ["zonotope", "reconstruct", "--in", str(path), "--name", "z"],
        capsys)
    assert code == 0, err
    assert out.count("  g ") == 3

    code, out, err = run(
        ["zonotope", "check", "--in", str(path), "--name", "z"], capsys)
    assert code == 0, err
    assert "l1-embeddable: yes" in out


def test_zonotope_reconstruct_octahedron_exits_1(tmp_path, capsys):
    path = tmp_path / "c.json"
    run(["space", "make", "--kind", "l1", "--dim", "3",
         "--name", "oct", "--out", str(path)], capsys)
    code, out, err = run(
        ["zonotope", "reconstruct", "--in", str(path), "--name", "oct"],
        capsys)
    assert code == 1
    assert "not a zonotope" in err


def test_linf3_not_embeddable(tmp_path, capsys):
    path = tmp_path / "c.json"
    run(["space", "make", "--kind", "linf", "--dim", "3",
         "--name", "c3", "--out", str(path)], capsys)
    code, out, _ = run(
        ["zonotope", "check", "--in", str(path), "--name", "c3"], capsys)
    assert code == 0
    assert "l1-embeddable: no" in out


# -------------------------------------------------------------- amalgam

@pytest.fixture
def formation_cat(tmp_path, capsys):
    """Catalog with A=l1_1, B1=l1_2, B2=l1_1 and stored arrows."""
    path = tmp_path / "f.json"
    cmds = [
        ["space", "make", "--kind", "l1", "--dim", "1", "--name", "A",
         "--out", str(path)],
        ["space", "make", "--kind", "l1", "--dim", "2", "--name", "B1",
         "--in", str(path), "--out", str(path)],
        ["op", "make", "--in", str(path), "--op", "i1", "--domain", "A",
         "--codomain", "B1", "--matrix", "1/2;1/2", "--out", str(path)],
        ["op", "make", "--in", str(path), "--op", "i2", "--domain", "A",
         "--codomain", "A", "--matrix", "1", "--out", str(path)],
    ]
    for argv in cmds:
        code, out, err = run(argv, capsys)
        assert code == 0, err
    return path


def test_amalgam_l1_worked_example(formation_cat, capsys):
    code, out, err = run(
        ["amalgam", "l1", "--in", str(formation_cat), "--root", "A",
         "--left", "B1", "--right", "A", "--arrow-left", "i1",
         "--arrow-right", "i2", "--as", "W",
         "--out", str(formation_cat)], capsys)
    assert code == 0, err
    assert "witness: l1^" in out
    stored = load_catalog(str(formation_cat)).catalog["W"].space
    assert stored.ball.vertices == l1_space(2).ball.vertices


def test_amalgam_pushout_sum1_zero_defects(formation_cat, capsys):
    code, out, err = run(
        ["amalgam", "pushout", "--in", str(formation_cat), "--root", "A",
         "--left", "B1", "--right", "A", "--arrow-left", "i1",
         "--arrow-right", "i2", "--kind", "sum1", "--as", "P",
         "--out", str(formation_cat)], capsys)
    assert code == 0, err
    assert "defect_left = 0" in out
    assert "defect_right = 0" in out


def test_amalgam_pushout_sum2_nonzero_defect(formation_cat, capsys):
    code, out, err = run(
        ["amalgam", "pushout", "--in", str(formation_cat), "--root", "A",
         "--left", "A", "--right", "A", "--arrow-left", "i2",
         "--arrow-right", "i2", "--kind", "sum2", "--eps", "1/10000",
         "--as", "P2", "--out", str(formation_cat)], capsys)
    assert code == 0, err
    assert "defect_left = 0\n" not in out


def test_amalgam_verify_passes(formation_cat, capsys):
    run(["amalgam", "pushout", "--in", str(formation_cat), "--root", "A",
         "--left", "B1", "--right", "A", "--arrow-left", "i1",
         "--arrow-right", "i2", "--kind", "sum1", "--as", "P",
         "--out", str(formation_cat)], capsys)
    code, out, err = run(
        ["amalgam", "verify", "--in", str(formation_cat), "--root", "A",
         "--left", "B1", "--right", "A", "--arrow-left", "i1",
         "--arrow-right", "i2"], capsys)
    assert code == 0, err
    assert "commutes = True" in out
    assert "verification passed" in out


def test_amalgam_search_finds_sum2_counterexample(capsys):
    code, out, err = run(
        ["amalgam", "search-iso-counterexample", "--seed", "1",
         "--tries", "2", "--eps", "1/10000"], capsys)
    assert code == 0, err
    assert "counterexample:" in out
    assert "finding:" in out


# ------------------------------------------------------ catalog + check

def test_catalog_gen_and_step(tmp_path, capsys):
    path = tmp_path / "g.json"
    code, out, err = run(
        ["catalog", "gen", "--seed", "3", "--count", "4",
         "--dim-max", "2", "--include-standard", "--out", str(path)],
        capsys)
    assert code == 0, err
    assert "catalog has" in out
    n0 = len(load_catalog(str(path)).catalog)
    assert n0 >= 4

    code, out, err = run(
        ["catalog", "dual-step", "--in", str(path), "--out", str(path),
         "--max-new", "8"], capsys)
    assert code == 0, err
    assert len(load_catalog(str(path)).catalog) > n0


def test_check_duality_passes(tmp_path, capsys):
    path = tmp_path / "g.json"
    run(["catalog", "gen", "--seed", "5", "--count", "4",
         "--dim-max", "2", "--include-standard", "--out", str(path)],
        capsys)
    code, out, err = run(
        ["check", "duality", "--in", str(path), "--samples", "12",
         "--seed", "7", "--dim-max", "3"], capsys)
    assert code == 0, err
    assert "duality identities: 12/12 passed" in out


def test_check_identities_passes(capsys):
    code, out, err = run(
        ["check", "identities", "--samples", "8", "--seed", "11",
         "--dim-max", "2"], capsys)
    assert code == 0, err
    assert "kernel identities: 8/8 passed" in out


# ------------------------------------------------------------ invariant

def test_invariant_radavg(cat, capsys):
    code, out, _ = run(
        ["invariant", "radavg", "--in", str(cat), "--name", "l1_2",
         "--vectors", "1,0;0,1"], capsys)
    assert code == 0
    assert "rademacher_average = 2 (2)" in out


def test_invariant_cotype_square(cat, capsys):
    code, out, _ = run(
        ["invariant", "cotype", "--in", str(cat), "--name", "l1_2",
         "--vectors", "1,0;1,0", "--q", "2"], capsys)
    assert code == 0
    assert "bound^2 = 2 " in out


def test_invariant_type_one(cat, capsys):
    code, out, _ = run(
        ["invariant", "type", "--in", str(cat), "--name", "l1_2",
         "--vectors", "1,0;0,1", "--p", "1"], capsys)
    assert code == 0
    assert "bound = 1 (1)" in out


# ------------------------------------------------------------ projconst

def test_projconst_solve_diagonal(cat, capsys):
    code, out, _ = run(
        ["projconst", "solve", "--in", str(cat), "--name", "l1_2",
         "--basis", "1,1"], capsys)
    assert code == 0
    assert "lambda = 1 (1)" in out


def test_projconst_trend_two_ranks(tmp_path, capsys):
    csv = tmp_path / "trend.csv"
    code, out, err = run(
        ["projconst", "trend", "--max-rank", "2", "--csv", str(csv)],
        capsys)
    assert code == 0, err
    assert "rank=1 lambda=1 " in out
    assert "rank=2 lambda=1729/1405" in out
    assert "fitted exponent = " in out
    body = csv.read_text()
    assert body.endswith("\n")
    assert len(body.splitlines()) == 3  # header + two ranks


# --------------------------------------------------------- tensor + op

def test_tensor_norms_identity(cat, capsys):
    code, out, err = run(
        ["tensor", "norms", "--in", str(cat), "--left", "l1_2",
         "--right", "l1_2", "--coeffs", "1,0;0,1"], capsys)
    assert code == 0, err
    assert "injective  (vee)   = 2 (2)" in out
    assert "projective (wedge) = 2 (2)" in out


def test_op_make_and_ideal_norms(tmp_path, capsys):
    path = tmp_path / "c.json"
    run(["space", "make", "--kind", "l1", "--dim", "2", "--name", "d",
         "--out", str(path)], capsys)
    run(["space", "make", "--kind", "l1", "--dim", "1", "--name", "r",
         "--in", str(path), "--out", str(path)], capsys)
    code, out, err = run(
        ["op", "make", "--in", str(path), "--op", "u", "--domain", "d",
         "--codomain", "r", "--matrix", "12,4", "--out", str(path)],
        capsys)
    assert code == 0, err
    for what, val in [("norm", "12"), ("nuclear", "12"), ("pi1", "12")]:
        code, out, err = run(
            ["op", what, "--in", str(path), "--op", "u"], capsys)
        assert code == 0, err
        assert f"{what} = {val} ({val})" in out


# ---------------------------------------------------------------- tower

def test_tower_net_build_replay_defect(tmp_path, capsys):
    path = tmp_path / "t.json"
    code, out, err = run(
        ["tower", "net", "--seed", "2", "--n", "1", "--m", "2",
         "--eps", "inf"], capsys)
    assert code == 0, err
    assert "net: n=1 m=2" in out

    code, out, err = run(
        ["tower", "build", "--seed", "5", "--steps", "2", "--n", "1",
         "--m", "2", "--eps", "inf", "--as", "t", "--out", str(path)],
        capsys)
    assert code == 0, err
    assert "stage 2:" in out

    code, out, err = run(
        ["tower", "replay", "--in", str(path), "--name", "t"], capsys)
    assert code == 0, err
    assert "replay ok: stage 2" in out

    csv = tmp_path / "defect.csv"
    code, out, err = run(
        ["tower", "defect", "--in", str(path), "--name", "t",
         "--probes", "2", "--seed", "1", "--csv", str(csv)], capsys)
    assert code == 0, err
    assert "summary: exact_ones=" in out
    assert csv.exists()


def test_tower_replay_tampered_log_exits_1(tmp_path, capsys):
    path = tmp_path / "t.json"
    code, _, err = run(
        ["tower", "build", "--seed", "5", "--steps", "2", "--n", "1",
         "--m", "2", "--eps", "inf", "--as", "t", "--out", str(path)],
        capsys)
    assert code == 0, err

    doc = json.loads(path.read_text())
    row = doc["towers"]["t"]["log"][0]["j_left"][0]
    row[0] = "2" if row[0] != "2" else "3"
    path.write_text(json.dumps(doc))

    code, out, err = run(
        ["tower", "replay", "--in", str(path), "--name", "t"], capsys)
    assert code == 1
    assert "replay FAILED" in err


# --------------------------------------------------------------- report

def test_report_emit_matches_direct_csv(tmp_path, capsys):
    direct = tmp_path / "direct.csv"
    tbl = tmp_path / "tbl.json"
    emitted = tmp_path / "emitted.csv"
    run(["projconst", "trend", "--max-rank", "2", "--csv", str(direct),
         "--json", str(tbl)], capsys)
    code, out, err = run(
        ["report", "emit", "--in", str(tbl), "--csv", str(emitted)],
        capsys)
    assert code == 0, err
    assert emitted.read_bytes() == direct.read_bytes()


# ---------------------------------------------------------- determinism

def test_catalog_gen_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["catalog", "gen", "--seed", "9", "--count", "5",
            "--dim-max", "3", "--include-standard"]
    assert run(argv + ["--out", str(a)], capsys)[0] == 0
    assert run(argv + ["--out", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_same_argv_same_stdout(capsys):
    argv = ["check", "identities", "--samples", "5", "--seed", "4",
            "--dim-max", "2"]
    _, out1, _ = run(argv, capsys)
    _, out2, _ = run(argv, capsys)
    assert out1 == out2


# ----------------------------------------------------------- exit codes

def test_unknown_space_is_usage_error(cat, capsys):
    code, _, err = run(["space", "show", "--in", str(cat),
                        "--name", "nope"], capsys)
    assert code == 2
    assert "usage error" in err


def test_malformed_rational_is_usage_error(tmp_path, capsys):
    code, _, err = run(
        ["space", "make", "--kind", "verts", "--name", "bad",
         "--vertices", "1/0;-1", "--out", str(tmp_path / "x.json")],
        capsys)
    assert code == 2


def test_random_closure_without_seed_is_usage_error(tmp_path, capsys):
    path = tmp_path / "g.json"
    run(["catalog", "gen", "--seed", "1", "--count", "2",
         "--dim-max", "2", "--out", str(path)], capsys)
    code, _, err = run(
        ["catalog", "h-step", "--in", str(path),
         "--out", str(path), "--random", "1"], capsys)
    assert code == 2
    assert "usage error" in err


def test_unknown_command_exits_2(capsys):
    with pytest.raises(SystemExit) as ei:
        cli.main(["bogus"])
    assert ei.value.code == 2
    capsys.readouterr()


def test_missing_input_file_exits_2(capsys):
    code, _, err = run(
        ["space", "show", "--in", "/nonexistent/cat.json",
         "--name", "x"], capsys)
    assert code == 2
