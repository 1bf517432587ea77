import io
import json

import numpy as np
import pytest

from kronshuffle.cli import run
from kronshuffle.dft import naive_dft
from kronshuffle.groups import gsh_group, k_group
from kronshuffle.linalg_kron import load_matrix, save_matrix
from kronshuffle.permutation import format_cycles
from kronshuffle.shuffling import sh_k, shuffle_perm
from kronshuffle.vectors import load_vector_csv, write_vector_csv


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("argv, expected", [
    (["shuffle", "--branch", "2,2,3", "--sigma", "(1 3)", "--format", "cycles"],
     "(0)(1 4 6)(2 8 9 3)(5 10 7)(11)\n"),
    (["shuffle", "--branch", "2,2,3", "--sigma", "(1 2 3)"], "(0)(1 4 5 9 3)(2 8 10 7 6)(11)\n"),
    (["shuffle", "--branch", "2,2,3", "--sigma", "()", "--format", "horizontal"],
     "0 1 2 3 4 5 6 7 8 9 10 11\n"),
    (["perfect", "--branch", "3,4", "--format", "horizontal"], "0 4 8 1 5 9 2 6 10 3 7 11\n"),
    (["shk", "--n", "15", "--k", "13", "--format", "horizontal"], "0 13 12 11 10 9 8 7 6 5 4 3 2 1 14\n"),
    (["gsh", "--n", "8"], "order=6 phi=6\n"),
    (["group", "--branch", "2,2,3"], "order=3840 abelian=false generators=6\n"),
    (["fixed-points", "--branch", "3,3"], "0 4 8\n"),
    (["fixed-points", "--branch", "2,3,2", "--sigma", "(1 3)"], "0 2 4 7 9 11\n"),
    (["encode", "--branch", "4,3,2", "--digits", "2,1,1"], "15\n"),
    (["decode", "--branch", "2,2,3", "--x", "7"], "1,0,1\n"),
    (["radix-check", "--r", "3", "--s", "4"], "F_12 P_4^3 = (F_3 x I_4) T^4_3 (I_3 x F_4): exact match\n"),
])
def test_goldens(argv, expected):
    code, out, err = call(*argv)
    assert code == 0, err
    assert out == expected


def test_outputs_are_byte_stable():
    argv = ["shuffle", "--branch", "2,3,2", "--sigma", "(1 3)", "--format", "json"]
    assert call(*argv) == call(*argv)


def test_results_reproducible_through_library():
    _, out, _ = call("shuffle", "--branch", "2,3,4", "--sigma", "(1 3 2)", "--format", "json")
    obj = json.loads(out)
    perm = shuffle_perm((2, 3, 4), "(1 3 2)")
    assert obj["images"] == list(perm.images)
    assert obj["horizontal"] == perm.horizontal()
    _, out, _ = call("shk", "--n", "12", "--k", "5")
    assert out.strip() == format_cycles(sh_k(12, 5).cycles())
    _, out, _ = call("gsh", "--n", "15")
    assert out == f"order={gsh_group(15).order} phi=6\n"


def test_group_dump(tmp_path):
    path = tmp_path / "group.jsonl"
    code, _, _ = call("group", "--branch", "2,2,2", "--dump", str(path))
    assert code == 0
    rows = [tuple(json.loads(line)) for line in path.read_text().splitlines()]
    assert set(rows) == k_group((2, 2, 2)).element_set()


def test_group_limit_is_usage_error():
    code, _, err = call("group", "--branch", "2,2,3", "--limit", "100")
    assert code == 2 and "100" in err


def test_dft_check_exit_codes():
    code, out, _ = call("dft-check", "--branch", "2,2,3", "--sigma", "(1 3)")
    assert code == 0
    assert out.endswith("factorization: exact match\n")
    assert "A_h distinct=1" in out
    code, out, _ = call("dft-check", "--branch", "2,2,3", "--sigma", "(1 2)")
    assert code == 1
    assert "MISMATCH at 33 entries; first (1,6): blocks give w^9, F_N P^T has w^3" in out


def test_dft_check_show_table():
    code, out, _ = call("dft-check", "--branch", "2,2,3", "--sigma", "(1 3)", "--show")
    assert code == 0
    assert "w^6" in out


@pytest.mark.parametrize("argv, fragment", [
    (["shuffle", "--branch", "2,1,3", "--sigma", "(1 2)"], "invalid branch list"),
    (["shuffle", "--branch", "2,a", "--sigma", "(1 2)"], "expected comma-separated integers"),
    (["shuffle", "--branch", "2,2,3", "--sigma", "(1 2"], "invalid sigma"),
    (["shuffle", "--branch", "2,2,3", "--sigma", "(1 4)"], "invalid sigma"),
    (["shk", "--n", "9", "--k", "2"], "gcd"),
    (["decode", "--branch", "2,3", "--x", "6"], "error"),
    (["radix-check", "--r", "1", "--s", "1"], "r*s >= 2"),
    (["fft", "--n", "4", "--input", "/nonexistent/x.csv"], "cannot read input file"),
    (["rearrange", "--factor", "/nonexistent/a.json", "--factor", "/nonexistent/b.json",
      "--sigma", "(1 2)"], "cannot read factor file"),
])
def test_usage_errors_exit_two(argv, fragment):
    code, out, err = call(*argv)
    assert code == 2
    assert fragment in err
    assert out == ""


def test_argparse_errors_exit_two():
    assert call("shuffle", "--branch", "2,2")[0] == 2
    assert call("no-such-command")[0] == 2
    assert call()[0] == 2


def test_rearrange_files(tmp_path):
    a = np.array([[1, 2], [3, 4]])
    b = np.array([[0, 1, 5]])
    save_matrix(tmp_path / "a.json", a)
    save_matrix(tmp_path / "b.json", b)
    out_path = tmp_path / "out.json"
    for method in ("index", "matrix"):
        code, _, err = call("rearrange", "--factor", str(tmp_path / "a.json"), "--factor", str(tmp_path / "b.json"),
                            "--sigma", "(1 2)", "--method", method, "--output", str(out_path))
        assert code == 0, err
        assert np.array_equal(load_matrix(out_path, integer=True), np.kron(b, a))
    code, _, err = call("rearrange", "--factor", str(tmp_path / "a.json"), "--factor", str(tmp_path / "b.json"),
                        "--sigma", "(1 2)", "--conjugate")
    assert code == 2 and "non-square" in err


def test_rearrange_bad_json(tmp_path):
    (tmp_path / "bad.json").write_text("{not json")
    code, _, err = call("rearrange", "--factor", str(tmp_path / "bad.json"), "--factor", str(tmp_path / "bad.json"),
                        "--sigma", "(1 2)")
    assert code == 2 and "bad matrix file" in err


def test_fft_files(tmp_path):
    x = np.random.default_rng(3).normal(size=12) + 1j * np.random.default_rng(4).normal(size=12)
    write_vector_csv(tmp_path / "x.csv", x)
    code, _, err = call("fft", "--n", "12", "--input", str(tmp_path / "x.csv"), "--output", str(tmp_path / "y.csv"))
    assert code == 0, err
    assert np.allclose(load_vector_csv(tmp_path / "y.csv"), naive_dft(x))
    code, out, _ = call("fft", "--n", "12", "--factors", "3,4", "--input", str(tmp_path / "x.csv"))
    assert code == 0
    assert len(out.splitlines()) == 12
    code, _, err = call("fft", "--n", "10", "--input", str(tmp_path / "x.csv"))
    assert code == 2 and "expected 10" in err
    code, _, err = call("fft", "--n", "12", "--factors", "5,2", "--input", str(tmp_path / "x.csv"))
    assert code == 2


def test_fft_bench(tmp_path):
    write_vector_csv(tmp_path / "x.csv", np.ones(256))
    code, out, _ = call("fft", "--n", "256", "--input", str(tmp_path / "x.csv"), "--bench")
    assert code == 0
    assert "multiply_adds=4096 naive_multiply_adds=65536" in out
    assert "max_abs_error=" in out
