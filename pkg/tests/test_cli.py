import csv
import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from specband import specfile
from specband.cli import main

ROOT = Path(__file__).resolve().parents[1]
SPECS = sorted((ROOT / "specs").glob("*.json"))
GOLDEN = Path(__file__).parent / "golden"


def write(tmp_path, obj, name="spec.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


RHALY_GEOM = {
    "operator": {"form": "rhaly", "coefficients": {"kind": "harmonic"}, "codomain_weight": {"kind": "geometric", "ratio": 0.5}}
}


# ---- spec files


@pytest.mark.parametrize("path", SPECS, ids=lambda p: p.stem)
def test_round_trip(path):
    spec = specfile.load(path)
    text = specfile.dumps(spec)
    again = specfile.loads(text)
    assert again == spec
    assert specfile.dumps(again) == text


def test_unknown_keys_rejected():
    bad = json.loads(json.dumps(RHALY_GEOM))
    bad["operator"]["colour"] = 1
    with pytest.raises(specfile.SpecFileError, match="colour"):
        specfile.parse(bad)
    with pytest.raises(specfile.SpecFileError):
        specfile.parse({**RHALY_GEOM, "extra": {}})
    with pytest.raises(specfile.SpecFileError):
        specfile.parse({**RHALY_GEOM, "analysis": {"horizn": 5}})


def test_spec_validation_messages():
    with pytest.raises(specfile.SpecFileError, match="line 2, column"):
        specfile.loads('{\n  "operator": }')
    with pytest.raises(specfile.SpecFileError, match="empty"):
        specfile.loads("  \n")
    with pytest.raises(specfile.SpecFileError):
        specfile.parse({"operator": {"form": "gen_cesaro", "t": 1.5}})
    with pytest.raises(specfile.SpecFileError):
        specfile.parse({"operator": {"form": "gen_cesaro"}})
    with pytest.raises(specfile.SpecFileError):
        specfile.parse(
            {
                "operator": {
                    "form": "rhaly",
                    "coefficients": {"kind": "harmonic"},
                    "domain_weight": {"kind": "constant", "c": 1.0},
                    "codomain_weight": {"kind": "geometric", "ratio": 0.5},
                }
            }
        )


# ---- analyze


@pytest.mark.parametrize("name", ["rhaly_harmonic_geometric", "gen_cesaro_half", "cesaro_classical"])
def test_analyze_golden(name, tmp_path):
    out = tmp_path / "out.json"
    assert main(["analyze", str(ROOT / "specs" / f"{name}.json"), "--out", str(out)]) == 0
    assert out.read_bytes() == (GOLDEN / f"{name}.analyze.json").read_bytes()


def test_analyze_report_content(capsys):
    code, out, _ = run(["analyze", str(ROOT / "specs" / "rhaly_harmonic_geometric.json")], capsys)
    assert code == 0
    d = json.loads(out)
    rep = d["spectral_report"]
    assert rep["continuous_spectrum"]["sets"] == [{"kind": "finite", "values": [0.0]}]
    assert d["provenance"] == {"bounded": "certified", "compact": "certified", "spectral_report": "certified"}
    assert d["refusal"] is None


def test_analyze_unbounded(capsys):
    code, out, _ = run(["analyze", str(ROOT / "specs" / "rhaly_sqrt_unweighted.json")], capsys)
    d = json.loads(out)
    assert code == 0
    assert d["verdicts"]["bounded"]["decision"] == "fails"
    assert d["spectral_report"] is None
    assert d["refusal"]["status"] == "refuted"


def test_analyze_refusal_and_assume(capsys):
    path = str(ROOT / "specs" / "rhaly_inverse_square_exp.json")
    code, out, _ = run(["analyze", path], capsys)
    d = json.loads(out)
    assert code == 2
    assert d["refusal"] == {"hypothesis": "operator compact on c0(s)", "status": "unverified"}
    assert d["verdicts"]["compact"]["decision"] == "holds"
    code, out, _ = run(["analyze", path, "--assume"], capsys)
    d = json.loads(out)
    assert code == 0
    assert d["provenance"]["spectral_report"] == "assumed"
    assert d["provenance"]["compact"] == "heuristic"


def test_analyze_flag_overrides(capsys):
    path = str(ROOT / "specs" / "rhaly_inverse_square_exp.json")
    code, out, _ = run(["analyze", path, "--horizon", "64", "--tol", "1e-9", "--assume"], capsys)
    d = json.loads(out)
    assert len(d["verdicts"]["compact"]["evidence"]["values"]) == 64
    assert d["verdicts"]["compact"]["decision"] != "holds"


def test_input_errors(tmp_path, capsys):
    assert run(["analyze", write(tmp_path, "")], capsys)[0] == 1
    code, _, err = run(["analyze", write(tmp_path, "{\n  oops")], capsys)
    assert code == 1 and "line 2" in err
    assert run(["analyze", str(tmp_path / "missing.json")], capsys)[0] == 1
    bad = {"operator": {"form": "rhaly", "coefficients": {"kind": "power_decay", "p": -1}}}
    assert run(["analyze", write(tmp_path, bad)], capsys)[0] == 1


# ---- eigvec


def read_csv(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array([[float(v) for v in r] for r in rows[1:]])


def test_eigvec_rhaly(tmp_path, capsys):
    out = tmp_path / "x.csv"
    code, summary, _ = run(
        ["eigvec", str(ROOT / "specs" / "rhaly_harmonic_geometric.json"), "--m", "2", "--N", "50", "--out", str(out)], capsys
    )
    assert code == 0
    head, data = read_csv(out)
    assert head == ["n", "x_n", "x_n_s_n"]
    np.testing.assert_allclose(data[:, 1], np.arange(50.0), rtol=1e-12)
    np.testing.assert_allclose(data[:, 2], np.arange(50.0) * 0.5 ** np.arange(1, 51), rtol=1e-12)
    s = json.loads(summary)
    assert s["residual"] <= 1e-12 and s["kummer"]["verdict"] == "diverging"


def test_eigvec_by_lambda(tmp_path, capsys):
    out = tmp_path / "x.csv"
    code, summary, _ = run(
        ["eigvec", str(ROOT / "specs" / "gen_cesaro_half.json"), "--lambda", "1", "--N", "30", "--out", str(out)], capsys
    )
    assert code == 0
    _, data = read_csv(out)
    np.testing.assert_allclose(data[:, 1], 0.5 ** np.arange(30), rtol=1e-12)
    assert json.loads(summary)["m"] == 1


def test_eigvec_not_an_eigenvalue(tmp_path, capsys):
    out = tmp_path / "x.csv"
    code, summary, _ = run(
        ["eigvec", str(ROOT / "specs" / "rhaly_harmonic_geometric.json"), "--lambda", "0.37", "--out", str(out)], capsys
    )
    assert code == 2
    assert json.loads(summary)["refusal"]["status"] == "refuted"
    assert not out.exists()


# ---- sweep


def test_sweep_rows(tmp_path, capsys):
    spec = {**RHALY_GEOM, "analysis": {"Ns": [100, 800], "lambdas": [0]}}
    code, out, _ = run(["sweep", write(tmp_path, spec)], capsys)
    assert code == 0
    rows = out.splitlines()
    assert rows[0] == "N,lambda_re,lambda_im,sigma_min,row_norm_sup"
    assert len(rows) == 3
    s100, s800 = float(rows[1].split(",")[3]), float(rows[2].split(",")[3])
    assert s800 < s100


def test_sweep_diagonal(tmp_path, capsys):
    spec = {"operator": {"form": "gen_cesaro", "t": 0}, "analysis": {"Ns": [10], "lambdas": [0]}}
    code, out, _ = run(["sweep", write(tmp_path, spec)], capsys)
    assert code == 0
    assert float(out.splitlines()[1].split(",")[3]) == pytest.approx(0.1, rel=1e-12)


def test_sweep_empty_orders(tmp_path, capsys):
    spec = {"operator": {"form": "gen_cesaro", "t": 0.5}, "analysis": {"Ns": []}}
    assert run(["sweep", write(tmp_path, spec)], capsys)[0] == 1


def test_resource_limit(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SPECBAND_MAX_N", "100")
    spec = {**RHALY_GEOM, "analysis": {"Ns": [50, 200]}}
    code, _, err = run(["sweep", write(tmp_path, spec)], capsys)
    assert code == 3 and "SPECBAND_MAX_N" in err


def test_determinism(tmp_path):
    spec = ROOT / "specs" / "gen_cesaro_half.json"
    outs = []
    for i in range(2):
        a, b = tmp_path / f"a{i}.json", tmp_path / f"b{i}.csv"
        main(["analyze", str(spec), "--out", str(a), "--seed", "3"])
        main(["sweep", str(spec), "--out", str(b), "--seed", "3"])
        outs.append((a.read_bytes(), b.read_bytes()))
    assert outs[0] == outs[1]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "specband", "analyze", str(ROOT / "specs" / "cesaro_classical.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.encode() == (GOLDEN / "cesaro_classical.analyze.json").read_bytes()
