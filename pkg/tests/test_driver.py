import json

import pytest

from gkf import driver
from gkf.cli import main
from gkf.driver import betti, build_relative_complex, cohomology, emit_bases, max_degree, slice_dims


def test_weight2():
    r = cohomology(2, 2)
    assert r.dims == (0, 0, 1)
    assert r.betti == (0, 0, 1)
    assert r.euler_from_dims == r.euler_from_betti == 1


def test_weight4():
    rc = build_relative_complex(2, 4)
    r = betti(rc)
    assert r.dims == (0, 0, 0, 1, 3)
    assert rc.rank_out(3) == 1
    assert r.betti == (0, 0, 0, 0, 2)
    assert r.euler_from_dims == 2


def test_restricted_matrices_compose_to_zero():
    rc = build_relative_complex(2, 4)
    for m, mat in enumerate(rc.matrices):
        assert mat.shape == (rc.dim(m + 1), rc.dim(m))
    for a, b in zip(rc.matrices, rc.matrices[1:]):
        if a.n_cols and b.n_rows:
            assert (b @ a).is_zero()


def test_odd_weight_is_zero():
    r = cohomology(2, 5)
    assert set(r.dims) == {0} and set(r.betti) == {0}
    assert r.euler_from_dims == 0


def test_weight6_light_part():
    r = cohomology(2, 6)
    assert r.dims[:4] == (0, 0, 1, 1)
    assert r.dims[4] is None and r.dims[5] is None
    assert r.records[2].rank_out == 1
    assert not r.complete


def test_n1_weight6():
    r = cohomology(1, 6)
    assert r.dims[6] == 0
    assert r.complete and r.euler_from_dims == r.euler_from_betti


def test_max_degree():
    assert max_degree(2, 6) == 6
    assert max_degree(2, 2, min_gen=2) == 12


def test_min_gen_two_builds():
    r = cohomology(1, 2, min_gen=2)
    assert r.euler_from_dims == r.euler_from_betti


def test_slice_dims():
    rows = slice_dims(2, 6)
    assert [(m, d) for m, _, d in rows] == [(1, 165), (2, 6880), (3, 61705), (4, 176890), (5, 169575), (6, 38760)]
    assert rows[3][1] == "L^3 S3 x S5 + L^2 S3 x L^2 S4"


def test_heavy_gate_and_warm_cache(weight6_complex, cache_dir):
    assert weight6_complex.skipped == []
    warm = build_relative_complex(2, 6, heavy=False, cache_dir=cache_dir)
    assert warm.skipped == []
    assert betti(warm) == betti(weight6_complex)
    for a, b in zip(warm.matrices, weight6_complex.matrices):
        assert a == b


def test_emit_bases(tmp_path):
    rc = build_relative_complex(2, 4)
    paths = emit_bases(rc, tmp_path)
    assert sorted(p.name for p in paths) == ["n2_w4_m3.txt", "n2_w4_m4.txt"]
    text = (tmp_path / "n2_w4_m3.txt").read_text()
    assert text.startswith("# C^3|_4, 1 invariant cochains") and "Z^(3)_" in text and "Z^(4)_" in text


# -- CLI ----------------------------------------------------------------------


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_cohomology(capsys):
    code, out, _ = run(capsys, "cohomology", "--n", "2", "--weight", "4")
    assert code == 0
    assert "dim    0 0 0 1 3" in out
    assert "Betti  0 0 0 0 2" in out
    assert "Euler characteristic: 2" in out


def test_cli_cohomology_json(capsys):
    code, out, _ = run(capsys, "cohomology", "--weight", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert [d["betti"] for d in data["degrees"]] == [0, 0, 1]


def test_cli_heavy_skip_message(capsys, monkeypatch):
    monkeypatch.delenv("GKF_CACHE", raising=False)
    code, out, _ = run(capsys, "cohomology", "--weight", "6")
    assert code == 0 and "rerun with --heavy" in out


def test_cli_env_cache(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("GKF_CACHE", str(tmp_path))
    code, _, _ = run(capsys, "cohomology", "--weight", "4")
    assert code == 0
    assert any(tmp_path.iterdir())


def test_cli_emit_bases(capsys, tmp_path):
    code, _, _ = run(capsys, "cohomology", "--weight", "2", "--emit-bases", str(tmp_path / "out"))
    assert code == 0 and (tmp_path / "out" / "n2_w2_m2.txt").exists()


def test_cli_slice_dims(capsys):
    code, out, _ = run(capsys, "slice-dims", "--n", "2", "--weight", "6")
    assert code == 0 and "176890" in out


def test_cli_tensor(capsys):
    code, out, _ = run(capsys, "tensor", "--n", "2", "3,1", "4,0")
    assert code == 0
    assert "(12 terms, dim 1225)" in out
    assert "2 V_{3,1}" in out


def test_cli_tensor_json(capsys):
    code, out, _ = run(capsys, "tensor", "0", "4", "--format", "json")
    assert json.loads(out)["decomposition"] == {"V_{4}": 1}


def test_cli_dim_and_exterior(capsys):
    assert run(capsys, "dim", "5,1")[1].strip() == "dim V_{5,1} = 105"
    code, out, _ = run(capsys, "decompose-exterior", "2", "3")
    assert out.strip() == "L^2 S3 (dim 190) = V_{0} + V_{4} + V_{1,1} + V_{2,2} + V_{3,3} + V_{5,1}"


def test_cli_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "--weight", "4", "--degree", "4", "--shape", "4")
    assert code == 0 and out.startswith("C^4|_4 (L^4 S3, dim 4845) = 3 V_{0}")


def test_cli_errors(capsys):
    assert run(capsys, "dim", "1,2")[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["cohomology", "--weight", "3", "--strict"])
    assert exc.value.code != 0
    with pytest.raises(SystemExit) as exc:
        main(["cohomology", "--weight", "2", "--bogus"])
    assert exc.value.code != 0


def test_cli_unvalidated_banner(capsys):
    code, _, err = run(capsys, "slice-dims", "--weight", "8")
    assert code == 0 and "unvalidated" in err


def test_cli_cache_corruption(capsys, tmp_path):
    assert run(capsys, "cohomology", "--weight", "4", "--cache", str(tmp_path))[0] == 0
    for p in tmp_path.iterdir():
        p.write_text("# garbage\n")
    code, _, err = run(capsys, "cohomology", "--weight", "4", "--cache", str(tmp_path))
    assert code == 2 and "error" in err
