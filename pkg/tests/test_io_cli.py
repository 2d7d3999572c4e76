import json
import random
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
from oracles import random_branch_pair, random_series  # noqa: E402

from hidalp.branches import RamifiedBranchModel, synthetic_l_family  # noqa: E402
from hidalp.cli import main  # noqa: E402
from hidalp.io import (SchemaError, branch_pair_from_json, branch_pair_to_json, csv_text, dumps,  # noqa: E402
                       family_from_json, family_to_json, load_json, model_from_json, model_to_json, ring_from_json,
                       ring_to_json, series_from_json, series_to_json)
from hidalp.padic import LocalRing  # noqa: E402
from hidalp.series import PadicPowerSeries  # noqa: E402


def write(path, obj):
    path.write_text(dumps(obj))
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("ring", [LocalRing(5, 8), LocalRing(3, 6, eisenstein=[3, 0, 1]),
                                  LocalRing(5, 4, unramified=[2, 0, 1])], ids=repr)
def test_ring_and_series_json_round_trip(ring):
    assert ring_from_json(ring_to_json(ring)) == ring
    rng = random.Random(0)
    s = PadicPowerSeries(ring, [ring.from_coeffs([[rng.randrange(ring.mod) for _ in range(ring.f)]
                                                  for _ in range(ring.e)]) for _ in range(6)], 6)
    assert series_from_json(json.loads(dumps(series_to_json(s))), ring) == s


def test_branch_and_family_json_round_trip():
    R = LocalRing(5, 8)
    rng = random.Random(1)
    pair = random_branch_pair(R, 10, 3, rng)
    back = branch_pair_from_json(json.loads(dumps(branch_pair_to_json(pair))))
    assert back.g1 == pair.g1 and back.g2 == pair.g2 and back.p == 5
    model = RamifiedBranchModel(1, 3, random_series(R, 8, rng, unit_constant=True))
    mb = model_from_json(json.loads(dumps(model_to_json(model))))
    assert (mb.t, mb.e) == (1, 3) and mb.u == model.u
    L1, L2 = synthetic_l_family(pair, ["a", "b"], rng)
    fam = family_from_json(json.loads(dumps(family_to_json({"L1": L1, "L2": L2}, R))))
    assert set(fam) == {"L1", "L2"} and fam["L1"]["a"] == L1["a"]


def test_family_schema_errors():
    R = LocalRing(5, 8)
    s = series_to_json(PadicPowerSeries.from_ints(R, [1], 3))
    with pytest.raises(SchemaError):
        family_from_json({"ring": ring_to_json(R)})
    with pytest.raises(SchemaError):
        family_from_json({"ring": ring_to_json(R), "L1": {"a": s}})
    with pytest.raises(SchemaError):
        family_from_json({"ring": ring_to_json(R), "L1": {"a": s}, "L2": {"b": s}})


def test_load_json_checks_schema(tmp_path):
    p = write(tmp_path / "x.json", {"schema": "other/1"})
    with pytest.raises(SchemaError):
        load_json(p, "modsym/1")
    assert load_json(p, ("modsym/1", "other/1"))["schema"] == "other/1"


def test_csv_text():
    assert csv_text(["a", "b"], [(1, "x"), (2, "y")]) == "a,b\n1,x\n2,y\n"


def test_modsym_command(tmp_path, capsys):
    out = tmp_path / "m.json"
    code, _, _ = run(["modsym", "--level", "11", "--weight", "2", "--prime", "5", "--out", str(out)], capsys)
    assert code == 0
    data = json.loads(out.read_text())
    assert data["schema"] == "modsym/1"
    plus = [s for s in data["symbols"] if s["sign"] == 1]
    assert len(plus) == 1
    assert [a[0] for a in plus[0]["qexp"][:10]] == ["1", "-2", "-1", "2", "1", "2", "-2", "0", "-2", "-2"]
    assert data["dimensions"]["gamma1_cuspidal"] == 2


def test_modsym_is_deterministic(tmp_path, capsys):
    args = ["modsym", "--level", "23", "--weight", "2", "--prime", "5", "--p-precision", "8"]
    _, a, _ = run(args, capsys)
    _, b, _ = run(args, capsys)
    assert a == b and a.endswith("\n")


def test_modsym_input_errors(capsys):
    code, _, err = run(["modsym", "--level", "2", "--weight", "2", "--prime", "5"], capsys)
    assert code == 2 and "torsion" in err
    with pytest.raises(SystemExit) as exc:
        main(["modsym", "--level", "11"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["modsym", "--level", "11", "--weight", "2", "--prime", "5", "--p-precision", "0"])
    assert exc.value.code == 2


def test_congruence_command(tmp_path, capsys):
    m = tmp_path / "m23.json"
    run(["modsym", "--level", "23", "--weight", "2", "--prime", "5", "--p-precision", "12", "--out", str(m)],
        capsys)
    labels = [s["label"] for s in json.loads(m.read_text())["symbols"] if s["sign"] == 1]
    code, out, _ = run(["congruence", f"{m}#{labels[0]}", f"{m}#{labels[1]}", "--p-precision", "10"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["r_q"] == rep["r_L"] == 1
    code, out, _ = run(["congruence", f"{m}#{labels[0]}", f"{m}#{labels[0]}", "--p-precision", "10"], capsys)
    assert code == 0 and json.loads(out)["r_q"] == {"at_least": 20}


def test_congruence_rejects_bad_input(tmp_path, capsys):
    bad = write(tmp_path / "bad.json", {"schema": "branch-pair/1"})
    code, _, err = run(["congruence", bad, bad], capsys)
    assert code == 2 and "schema" in err
    m = tmp_path / "m.json"
    run(["modsym", "--level", "11", "--weight", "2", "--prime", "5", "--out", str(m)], capsys)
    code, _, err = run(["congruence", f"{m}#nope", str(m)], capsys)
    assert code == 2 and "nope" in err


def test_branch_command(tmp_path, capsys):
    R = LocalRing(5, 8)
    pair = {"schema": "branch-pair/1", "p": 5, "N": 0, "ring": ring_to_json(R),
            "g1": series_to_json(PadicPowerSeries.from_ints(R, [0, 1, 0, 1], 10)),
            "g2": series_to_json(PadicPowerSeries.from_ints(R, [0, 1, 0, 2], 10))}
    pf = write(tmp_path / "pair.json", pair)
    code, out, _ = run(["branch", pf], capsys)
    assert code == 0 and json.loads(out)["intersection_multiplicity"] == 3

    model = RamifiedBranchModel(0, 3, PadicPowerSeries.from_ints(R, [1], 8))
    mf = write(tmp_path / "model.json", model_to_json(model))
    ff = write(tmp_path / "fam.json", family_to_json({"L": {"chi": PadicPowerSeries.from_ints(R, [0, 1], 8)}}, R))
    code, out, _ = run(["branch", mf, ff], capsys)
    res = json.loads(out)
    assert code == 0 and res["pole_order"] == 2 and res["ramification"]["index"] == 3


def test_branch_command_reports_falsified_data(tmp_path, capsys):
    R = LocalRing(5, 8)
    g1 = PadicPowerSeries.from_ints(R, [0, 1, 0, 1], 10)
    g2 = PadicPowerSeries.from_ints(R, [0, 1, 0, 2], 10)
    pf = write(tmp_path / "pair.json", {"schema": "branch-pair/1", "p": 5, "N": 0, "ring": ring_to_json(R),
                                        "g1": series_to_json(g1), "g2": series_to_json(g2)})
    # differences of order 1 cannot come from branches crossing to order 3
    L1 = {"chi": PadicPowerSeries.from_ints(R, [0, 1], 10)}
    L2 = {"chi": PadicPowerSeries.from_ints(R, [0], 10)}
    ff = write(tmp_path / "fam.json", family_to_json({"L1": L1, "L2": L2}, R))
    code, out, _ = run(["branch", pf, ff], capsys)
    assert code == 3
    assert json.loads(out)["taylor_agreement"]["verdict"].startswith("falsified")


@pytest.mark.skipif(shutil.which("hidalp") is None, reason="console script not installed")
def test_console_script(tmp_path):
    res = subprocess.run(["hidalp", "modsym", "--level", "3", "--weight", "2", "--prime", "5"],
                         capture_output=True, text=True)
    assert res.returncode == 2 and "torsion" in res.stderr
    res = subprocess.run(["hidalp", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("hidalp ")
