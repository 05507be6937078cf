import json

import pytest

from syzstab import gallery as G
from syzstab.cli import main
from syzstab.ideals import load_ideal


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gallery_list(capsys):
    code, out, _ = run(capsys, "gallery", "list", "--format", "json")
    assert code == 0
    names = [s["name"] for s in json.loads(out)["schemes"]]
    assert names == G.names()


def test_gallery_show(capsys):
    code, out, _ = run(capsys, "gallery", "show", "carpet-2")
    assert code == 0 and "[ok] piece_dim:2 = 3" in out


@pytest.mark.parametrize("name", G.names())
def test_export_import_roundtrip(name, tmp_path, capsys):
    path = tmp_path / f"{name}.txt"
    code, _, _ = run(capsys, "gallery", "export", name, "--out", str(path))
    assert code == 0
    X, Y = G.get(name).obj, load_ideal(path)
    for q in range(1, 4):
        assert X.piece(q) == Y.piece(q)


def test_betti_json(capsys):
    code, out, _ = run(capsys, "betti", "--scheme", "sigma0-section", "--pmax", "4", "--qmax", "3", "--format", "json")
    assert code == 0
    data = json.loads(out)
    table = {(c["p"], c["q"]): c["dim"] for c in data["cells"]}
    assert (table[1, 1], table[2, 1], table[2, 2], table[3, 2], table[4, 3]) == (6, 5, 5, 6, 1)


def test_betti_output_stable_across_threads(capsys):
    _, a, _ = run(capsys, "betti", "--scheme", "scroll-1", "--qmax", "2", "--format", "json", "--threads", "1")
    _, b, _ = run(capsys, "betti", "--scheme", "scroll-1", "--qmax", "2", "--format", "json", "--threads", "2")
    assert a == b


def test_threads_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("SYZSTAB_THREADS", "2")
    code, out, _ = run(capsys, "betti", "--scheme", "scroll-2", "--qmax", "1", "--format", "csv")
    assert code == 0 and out.startswith("p,q,dim")


def test_cutoff_guard(capsys):
    code, _, err = run(capsys, "betti", "--scheme", "sigma0", "--qmax", "6")
    assert code == 2 and "--force" in err


def test_koszul(capsys):
    code, out, _ = run(capsys, "koszul", "--scheme", "sigma0", "--p", "1", "--q", "2", "--kernel", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"scheme": "sigma0", "p": 1, "q": 2, "dim": 0, "kernel_dim": 5}
    code, _, err = run(capsys, "koszul", "--scheme", "sigma0", "--p", "9", "--q", "2")
    assert code == 2 and "out of range" in err


def test_git_commands(capsys):
    rho = "-7,-1,-1,-1,5,5"
    code, out, _ = run(capsys, "git", "vgit", "--scheme", "C0", "--rho", rho, "--beta", "4")
    assert code == 0 and "weight 0" in out and "strictly semistable (probe)" in out
    code, out, _ = run(capsys, "git", "wall", "--scheme", "C0", "--rho", rho, "--format", "json")
    data = json.loads(out)
    assert (data["mu02"], data["mu12"], data["wall"]) == (12, -3, "4/1")
    assert len(data["verdicts"]) == 3
    code, out, _ = run(capsys, "git", "hm", "--scheme", "sigma0", "--p", "1", "--q", "2", "--rho", rho)
    assert "mu = -3" in out
    code, out, _ = run(capsys, "git", "limit", "--scheme", "sigma0-section", "--rho", rho)
    assert code == 0 and out.splitlines()[0] == "r=6" and "x0^2" in out


def test_divisor_commands(capsys):
    code, out, _ = run(capsys, "divisor", "mg", "--g", "6", "--p", "1", "--q", "2", "--format", "json")
    assert json.loads(out) == {"basis": "Mg", "coeffs": {"lambda": "47/2", "delta": "-3"}}
    code, out, _ = run(capsys, "divisor", "hk", "--beta", "4", "--format", "json")
    data = json.loads(out)
    assert data["slope"] == "102/13" and data["alpha"] == "35/102"
    code, out, _ = run(capsys, "divisor", "k3", "--g", "7", "--p", "0", "--q", "2", "--basis", "B")
    assert out.strip() == "13λ + (1/4)γ"


def test_errors(capsys, tmp_path):
    code, _, err = run(capsys, "betti", "--scheme", "nope")
    assert code == 2 and "unknown scheme" in err
    bad = tmp_path / "bad.txt"
    bad.write_text("r=3\nx0^2 + +\n")
    code, _, err = run(capsys, "betti", "--scheme", str(bad))
    assert code == 2 and "line 2" in err
    code, _, err = run(capsys, "gallery", "show", "sigma-a3")
    assert code == 2
    code, _, err = run(capsys, "git", "hm", "--scheme", "sigma0", "--p", "0", "--q", "2", "--rho", "1,1,1,1,1,1")
    assert code == 2 and "sum to zero" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["failed"] == 0 and data["passed"] >= 25
    assert all(a["tag"] in {"PAPER", "DERIVED", "TRIVIAL"} and a["cite"] for a in data["anchors"])
