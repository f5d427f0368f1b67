import json

import pytest

from skewk.cli import Config, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_decompose_classical(capsys):
    code, out, _ = run(capsys, "decompose", "-p", "2", "-f", "1", "-n", "1", "-N", "3")
    assert code == 0
    facs = [l for l in out.splitlines() if l.startswith("factor")]
    assert len(facs) == 2
    assert "[Z:F]=1" in facs[0] and "[Z:F]=2" in facs[1]


def test_decompose_s3_json(capsys):
    code, out, _ = run(capsys, "--json", "decompose", "-p", "2", "-f", "1", "-n", "2", "-N", "3",
                       "--theta", "2")
    assert code == 0
    obj = json.loads(out)
    assert set(obj) == {"desc", "orbits", "factors", "dim_check"}
    assert [fa["d"] for fa in obj["factors"]] == [2, 2, 2]
    assert obj["dim_check"] is True
    assert json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":")) == out.strip()


def test_maschke_exit(capsys):
    code, out, err = run(capsys, "decompose", "-p", "3", "-f", "1", "-n", "1", "-N", "3")
    assert code == 2 and out == ""
    assert err.startswith("MASCHKE_VIOLATED:") and len(err.strip().splitlines()) == 1


@pytest.mark.parametrize("argv,code", [
    (["decompose", "-p", "2", "-N", "3", "--theta", "2"], "INCOMPATIBLE_ACTION"),
    (["decompose", "-p", "2", "-N", "3", "--theta", "3"], "INVALID_AUTOMORPHISM"),
    (["decompose", "-p", "2", "-N", "3", "--theta", "x"], "USAGE"),
    (["decompose", "-p", "6", "-N", "5"], "NON_PRIME"),
    (["tower", "-p", "7", "-l", "3", "-i", "2", "--twist", "3"], "INVALID_TWIST"),
    (["verify-main", "-p", "3", "-l", "3"], "ELL_EQUALS_P"),
    (["decompose", "-p", "7", "-n", "8", "--max-field-size", "1000"], "FIELD_BOUND"),
])
def test_validation_errors(capsys, argv, code):
    rc, _, err = run(capsys, *argv)
    assert rc == 2 and err.split(":")[0] == code


def test_k0_classical(capsys):
    code, out, _ = run(capsys, "k0", "-p", "2", "-f", "1", "-n", "1", "-N", "3")
    assert code == 0
    assert "V[1] * V[1] = 2*V[0] + 1*V[1]" in out


def test_k0_json(capsys):
    code, out, _ = run(capsys, "--json", "k0", "-p", "2", "-N", "3")
    obj = json.loads(out)
    prods = {(tuple(p["a"]), tuple(p["b"])): p["result"] for p in obj["products"]}
    assert prods[((1,), (1,))] == [[[0], 2], [[1], 1]]


def test_tower(capsys):
    code, out, _ = run(capsys, "--json", "tower", "-p", "7", "-l", "3", "-i", "2")
    obj = json.loads(out)
    assert code == 0 and obj["i_prime"] == 1 and obj["basis"] == 9 and obj["group_ring"]


def test_colimit(capsys):
    code, out, _ = run(capsys, "--json", "colimit", "-p", "7", "-l", "3", "--imax", "1")
    obj = json.loads(out)
    assert obj["level_sizes"] == [3] and obj["basis_size"] == 3
    code, out, _ = run(capsys, "colimit", "-p", "7", "-l", "3", "--imax", "3")
    assert "Z[(1/27)Z/Z]" in out and "injective ring map: no" not in out


def test_kgroups_json(capsys):
    code, out, _ = run(capsys, "--json", "kgroups", "-p", "7", "-l", "3", "--nmax", "3")
    rows = json.loads(out)["rows"]
    assert rows[1]["completed"] == {"zl_rank": 0, "torsion": [3]}
    assert rows[1]["k_F"] == {"zl_rank": 1, "torsion": [3]}


def test_stability_cmd(capsys):
    code, out, _ = run(capsys, "stability", "-p", "2", "-l", "7", "--jmax", "6", "--mmax", "10")
    assert code == 0 and "flag j=1 m=3" in out


def test_verify_main_cmd(capsys):
    code, out, _ = run(capsys, "verify-main", "-p", "7", "-l", "3", "--nmax", "20", "--e1", "-3", "0")
    assert code == 0 and out.strip().endswith("verdict PASS")
    assert "Z_3" in out
    code, out, _ = run(capsys, "verify-main", "-p", "2", "-l", "7", "--nmax", "10")
    assert code == 0 and "verdict CONDITIONAL" in out and "stability flag j=1 m=3" in out


def test_e1page_json(capsys):
    code, out, _ = run(capsys, "--json", "e1page", "-p", "7", "-l", "3", "--tmin", "-2", "--tmax", "0")
    obj = json.loads(out)
    assert all(e["s"] + 2 * e["t"] in (0, 1) for e in obj["entries"])


def test_empty_grid(capsys):
    code, out, _ = run(capsys, "oracle-grid", "--primes", "")
    assert code == 0 and out.strip() == "AGREE 0/0"


def test_small_grid(capsys):
    code, out, _ = run(capsys, "oracle-grid", "--primes", "2,3", "--fmax", "1", "--nmax", "2",
                       "--Nmax", "4")
    lines = out.strip().splitlines()
    assert code == 0
    assert any(l.startswith("SKIP_MASCHKE") for l in lines)
    assert lines[-1].startswith("AGREE ")
    k, n = lines[-1].split()[1].split("/")
    assert k == n and int(n) > 0


def test_env_overrides(capsys, monkeypatch):
    monkeypatch.setenv("SKEWK_FORMAT", "json")
    code, out, _ = run(capsys, "tower", "-p", "7", "-l", "3", "-i", "1")
    assert json.loads(out)["basis"] == 3
    monkeypatch.setenv("SKEWK_MAX_ORACLE_DIM", "0")
    code, _, err = run(capsys, "oracle-grid", "--primes", "")
    assert code == 2 and err.startswith("USAGE")


def test_config_defaults():
    c = Config()
    assert c.max_field_size == 2 ** 20 and c.max_oracle_dim == 256 and c.format == "text"
    assert Config.from_env({"SKEWK_GRID_PRIMES": "2,5"}).grid_primes == (2, 5)


def test_deterministic(capsys):
    outs = [run(capsys, "--json", "k0", "-p", "3", "-n", "2", "-N", "2,4", "--theta", "1,0;0,3")[1]
            for _ in range(2)]
    assert outs[0] == outs[1]
