import json
import xml.etree.ElementTree as ET

import pytest

from sparse_ot.cli import main


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, out, err

    return _run


def _write(path, obj):
    path.write_text(json.dumps(obj))
    return path


def test_gen_deterministic(run, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("gen", 20, 30, "--dim", 2, "--seed", 7, "-o", a)[0] == 0
    assert run("gen", 20, 30, "--dim", 2, "--seed", 7, "-o", b)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert len(data["mu"]["points"]) == 20 and len(data["nu"]["points"][0]) == 2


def test_gen_uniform_and_rational(run):
    code, out, _ = run("gen", 5, 5)
    assert code == 0 and json.loads(out)["mu"]["weights"] == ["1/5"] * 5
    code, out, _ = run("gen", 4, 3, "--weights", "rational", "--max-denominator", 6, "--seed", 3)
    data = json.loads(out)
    from fractions import Fraction

    for side in ("mu", "nu"):
        ws = [Fraction(w) for w in data[side]["weights"]]
        assert sum(ws) == 1 and all(w.denominator <= 6 for w in ws)


def test_gen_bad_parameters(run):
    assert run("gen", 7, 3, "--weights", "rational", "--max-denominator", 4)[0] == 2
    with pytest.raises(SystemExit):
        run("gen", 0, 3)


def test_solve_verify_figure_pipeline(run, tmp_path):
    inst, plan, svg = tmp_path / "i.json", tmp_path / "p.json", tmp_path / "f.svg"
    run("gen", 20, 30, "--seed", 1, "-o", inst)
    code, out, _ = run("solve", "-i", inst, "-o", plan)
    assert code == 0
    assert "max_out=3≤3" in out or "max_out=2≤3" in out
    assert "≤2" in out.split("max_in=")[1]
    assert run("verify", "-p", plan, "-i", inst)[0] == 0
    code, out, _ = run("verify", "-p", plan, "-i", inst, "--format", "json")
    assert json.loads(out)["passed"] is True
    assert run("figure", "-p", plan, "-i", inst, "-o", svg)[0] == 0
    root = ET.fromstring(svg.read_text())
    lines = [e for e in root.iter() if e.tag.endswith("line")]
    assert len(lines) == len(json.loads(plan.read_text())["entries"])
    first = svg.read_bytes()
    run("figure", "-p", plan, "-i", inst, "-o", svg)
    assert svg.read_bytes() == first


def test_solve_square_is_bijection(run, tmp_path):
    inst = tmp_path / "i.json"
    run("gen", 6, 6, "--seed", 2, "-o", inst)
    code, out, err = run("solve", "-i", inst)
    assert code == 0
    entries = json.loads(out)["entries"]
    assert len(entries) == 6 and {e[2] for e in entries} == {"1/6"}
    assert "max_out=1≤1" in err


def test_solve_csv_and_paths(run, tmp_path):
    inst = tmp_path / "i.json"
    run("gen", 4, 6, "--seed", 9, "-o", inst)
    outs = [run("solve", "-i", inst, "--path", p)[1] for p in ("expanded", "compressed")]
    assert json.loads(outs[0])["entries"] == json.loads(outs[1])["entries"]
    code, out, _ = run("solve", "-i", inst, "--format", "csv")
    assert out.splitlines()[0] == "i,j,mass"


def test_solve_parse_error(run, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("solve", "-i", bad)[0] == 2
    half = _write(tmp_path / "w.json", {"mu": {"points": [[0]], "weights": ["1/2"]}, "nu": {"points": [[0]]}})
    assert run("solve", "-i", half)[0] == 2


def test_solve_budget_exit(run, tmp_path):
    inst = _write(
        tmp_path / "big.json",
        {"mu": {"points": [[0], [1]], "weights": ["1/97", "96/97"]}, "nu": {"points": [[0], [1]], "weights": ["1/89", "88/89"]}},
    )
    code, _, err = run("solve", "-i", inst, "--max-atoms", 1000)
    assert code == 3 and "8633" in err


def test_verify_tampered(run, tmp_path):
    inst, plan = tmp_path / "i.json", tmp_path / "p.json"
    run("gen", 2, 3, "--seed", 4, "-o", inst)
    run("solve", "-i", inst, "-o", plan)
    data = json.loads(plan.read_text())
    data["entries"][0][2] = "1/100"
    plan.write_text(json.dumps(data))
    code, out, _ = run("verify", "-p", plan, "-i", inst)
    assert code == 4 and "FAIL marginals: row 0" in out
    plan.write_text("[]")
    assert run("verify", "-p", plan, "-i", inst)[0] == 2


def test_verify_product_coupling(run, tmp_path):
    inst = tmp_path / "i.json"
    run("gen", 20, 30, "--seed", 11, "-o", inst)
    entries = [[i, j, "1/600"] for i in range(20) for j in range(30)]
    plan = _write(tmp_path / "p.json", {"m": 20, "n": 30, "entries": entries, "cost": 0.0})
    code, out, _ = run("verify", "-p", plan, "-i", inst)
    assert code == 4 and "FAIL degree_bounds" in out and "PASS marginals" in out


def test_figure_needs_planar(run, tmp_path):
    inst, plan = tmp_path / "i.json", tmp_path / "p.json"
    run("gen", 2, 2, "--dim", 3, "-o", inst)
    run("solve", "-i", inst, "-o", plan)
    assert run("figure", "-p", plan, "-i", inst, "-o", tmp_path / "f.svg")[0] == 2


def test_figure_single_pair(run, tmp_path):
    inst = _write(tmp_path / "i.json", {"mu": {"points": [[0, 0]]}, "nu": {"points": [[1, 1]]}})
    plan = tmp_path / "p.json"
    run("solve", "-i", inst, "-o", plan)
    code, out, _ = run("figure", "-p", plan, "-i", inst)
    assert code == 0 and out.count("<line") == 1


def test_oracle_command(run, tmp_path):
    inst = tmp_path / "i.json"
    run("gen", 2, 3, "--seed", 5, "-o", inst)
    code, out, _ = run("oracle", "-i", inst)
    result = json.loads(out)
    assert code == 0 and result["agree"] and result["method"] == "assignment"
    run("gen", 4, 5, "--seed", 5, "-o", inst)
    assert run("oracle", "-i", inst)[0] == 3


def test_oracle_transport_method(run, tmp_path):
    inst = _write(
        tmp_path / "i.json",
        {"mu": {"points": [[0], [1]], "weights": ["1/2", "1/2"]}, "nu": {"points": [[0], [2]], "weights": ["1/10", "9/10"]}},
    )
    code, out, _ = run("oracle", "-i", inst)
    assert code == 0 and json.loads(out)["method"] == "transport"


def test_bench(run):
    code, out, _ = run("bench", "--sizes", "8,16,20x30")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("m,n,N,expanded_seconds")
    rows = [line.split(",") for line in lines[1:]]
    assert [int(r[2]) for r in rows] == [8, 16, 60]
    assert all(r[-1] == "True" for r in rows)
    assert run("bench", "--sizes", "x")[0] == 2


def test_solve_byte_identical(run, tmp_path):
    inst = tmp_path / "i.json"
    run("gen", 7, 12, "--weights", "rational", "--seed", 13, "-o", inst)
    outs = [run("solve", "-i", inst)[1] for _ in range(2)]
    assert outs[0] == outs[1] and outs[0]
