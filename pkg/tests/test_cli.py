import io
import subprocess
import sys

import pytest

from arcflip import fixtures as F
from arcflip.cli import run
from arcflip.diagram import is_ascending, parse_diagram, serialize
from arcflip.moves import MoveLog, replay


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def records(text):
    return dict(line.split(": ", 1) for line in text.splitlines() if ": " in line and not line.startswith("move"))


@pytest.fixture
def pd_files(tmp_path):
    paths = {}
    for name, L in {
        "TREFOIL": F.trefoil(),
        "HOPF": F.hopf(),
        "FIG8": F.fig8(),
        "FIG8-1100": F.fig8_label("1100"),
    }.items():
        p = tmp_path / f"{name}.pd"
        p.write_text(serialize(L))
        paths[name] = str(p)
    return paths


def test_info_trefoil(pd_files):
    code, out, _ = call("info", pd_files["TREFOIL"])
    rec = records(out)
    assert code == 0
    assert (rec["n"], rec["components"], rec["alternating"], rec["arcs"]) == ("3", "1", "yes", "3")


def test_unknot_hopf_variant_two(pd_files):
    code, out, _ = call("unknot", "--variant", "2", pd_files["HOPF"])
    assert code == 0
    assert records(out)["verdict"] == "UnknotsPlusHopf"


def test_admissible_fig8_1100(pd_files):
    code, out, _ = call("admissible", pd_files["FIG8-1100"], "--set", "1,2")
    assert code == 1 and records(out)["admissible"] == "no"
    code, out, _ = call("admissible", "--in", pd_files["FIG8-1100"], "--set", "1,3")
    assert code == 0 and records(out)["admissible"] == "yes"


def test_unknot_log_and_verify(pd_files, tmp_path):
    log = tmp_path / "out.moves"
    code, out, _ = call("unknot", "--variant", "1", "--in", pd_files["TREFOIL"], "--log", str(log), "--certify")
    assert code == 0 and records(out)["certified"] == "yes"
    L = parse_diagram(open(pd_files["TREFOIL"]).read())
    assert is_ascending(replay(L, MoveLog.from_text(log.read_text())))
    code, out, _ = call("verify", pd_files["TREFOIL"], "--log", str(log), "--verdict", "AscendingUnlink")
    assert code == 0 and records(out)["replay"] == "ok"
    code, out, _ = call("verify", pd_files["FIG8"], "--log", str(log))
    assert code == 1 and records(out)["replay"] == "failed"


def test_parse_is_bit_exact(pd_files):
    code, out, _ = call("parse", pd_files["FIG8"])
    assert code == 0 and out == open(pd_files["FIG8"]).read()


def test_trail_and_compiled_log(pd_files, tmp_path):
    log = tmp_path / "t.moves"
    code, out, _ = call("trail", pd_files["FIG8"], "--x", "1", "--y", "3", "--log", str(log))
    assert code == 0
    L = F.fig8()
    M = replay(L, MoveLog.from_text(log.read_text()))
    assert M == L.switched((0, 2))


def test_stategraph_dot(pd_files, tmp_path):
    dot = tmp_path / "a.dot"
    code, out, _ = call("stategraph", "--in", pd_files["FIG8"], "--dot", str(dot))
    rec = records(out)
    assert code == 0
    assert (rec["vertices"], rec["edges"], rec["components"]) == ("16", "64", "2")
    assert dot.read_text().startswith("digraph")


def test_move_apply_and_list(pd_files, tmp_path):
    new = tmp_path / "new.pd"
    code, out, _ = call("move", pd_files["TREFOIL"], "--apply", "ACC1 c1.2", "--out", str(new))
    assert code == 0 and out.startswith("move: ACC1 c1.2 @")
    assert parse_diagram(new.read_text()) == F.trefoil().switched((0, 1))
    code, out, _ = call("move", "@trefoil", "--list", "--format", "tsv")
    assert out.splitlines()[0].split("\t") == ["c1.2", "c2", "over=c3"]


def test_tsv_format(pd_files):
    code, out, _ = call("info", pd_files["HOPF"], "--format", "tsv")
    assert code == 0
    assert "total_linking\t" in out and ": " not in out


def test_errors_map_to_exit_codes(tmp_path, monkeypatch):
    assert call("info", str(tmp_path / "missing.pd"))[0] == 2
    bad = tmp_path / "bad.pd"
    bad.write_text("X 1 1 2 3\n")
    assert call("info", str(bad))[0] == 2
    assert call("nonsense")[0] == 2
    assert call("admissible", "@fig8", "--set", "1,9")[0] == 2
    monkeypatch.setenv("ARCFLIP_LIMIT", "3")
    code, _, err = call("stategraph", "@fig8")
    assert code == 3 and "limit" in err
    monkeypatch.setenv("ARCFLIP_LIMIT", "x")
    assert call("info", "@fig8")[0] == 2


def test_output_is_deterministic():
    for argv in (["unknot", "--variant", "2", "@random:3:8", "--seed", "5"], ["survey", "--max-n", "3"]):
        assert call(*argv) == call(*argv)
    a = call("info", "@random:2:8", "--seed", "1")[1]
    b = call("info", "@random:2:8", "--seed", "2")[1]
    assert a != b


def test_survey_rows():
    code, out, _ = call("survey", "--max-n", "3", "--format", "tsv")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("shadow\tn\tlabel")
    assert len(lines) == 1 + 2 + 4 * 2 + 8 * 6


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "arcflip", "info", "@hopf"], capture_output=True, text=True)
    assert proc.returncode == 0 and "components: 2" in proc.stdout
