import io
import json

from Harmonium.cli.main import dispatch
from Harmonium.core.modulation import fifths_cycle_as_piece, modulations
from Harmonium.core.pcset import named_word
from Harmonium.core.tonality import CadenceRule, make_tonality
from Harmonium.tuning.pythag import comma_modulations, cycle_raise, pyt_standard_context, pyt_tonality, pyt_word
from Harmonium.utils.config import CONFIG_ENV_VAR

def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = dispatch(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()

def test_tonality_table():
    code, out, _ = run("tonality", "--word", "major", "--root", "C", "--level", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "tonality {0,2,4,5,7,9,11} at level 1"
    assert lines[1].split() == ["degree", "chord"]
    assert lines[3].split() == ["1", "{0,4,7}"]
    assert lines[9].split() == ["7", "{11,2,5}"]

def test_cadences_summary():
    code, out, _ = run("cadences", "--word", "major", "--root", "0", "--level", "2",
                       "--context", "major", "--maxlen", "1")
    assert code == 0
    assert out.splitlines()[1] == "{{5},{7}}"

def test_no_cadence_prints_empty_braces():
    code, out, _ = run("cadences", "--level", "1", "--context", "classical", "--maxlen", "1")
    assert code == 0
    assert out.splitlines()[1] == "{}"

def test_pivots_table_and_json_agree():
    _, table, _ = run("pivots", "--root", "0", "--to-root", "7")
    assert table.splitlines()[1] == "{{1,3,5,6},{4,6,1,2}}"
    _, out, _ = run("pivots", "--root", "0", "--to-root", "7", "--json")
    payload = json.loads(out)
    assert [p["source_degree"] for p in payload["pivots"]] == [1, 3, 5, 6]
    assert [p["target_degree"] for p in payload["pivots"]] == [4, 6, 1, 2]
    assert payload["pivots"][0]["chord"] == [0, 4, 7]

def test_modulate():
    t1 = make_tonality(named_word("major", 0), 1)
    t2 = make_tonality(named_word("major", 7), 1)
    _, out, _ = run("modulate", "--to-root", "G", "--json")
    assert len(json.loads(out)["modulations"]) == len(modulations(t1, t2))
    code, out, _ = run("modulate", "--to-root", "G", "--level", "5")
    assert code == 0
    assert out.splitlines()[1] == "0 found"

def test_piece_validation():
    code, out, _ = run("piece", "--fifths-level", "1", "--validate", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["valid"] is True
    assert len(payload["tonalities"]) == 13

def test_euler_commas_json():
    code, out, _ = run("--json", "euler", "commas")
    assert code == 0
    payload = json.loads(out)
    assert payload["Kf"]["ratio"] == "531441/524288"
    assert payload["Kf"]["interval"] == [-19, 12, 0]
    assert payload["Kt"]["ratio"] == "80/81"

def test_euler_commands():
    assert "145/5184" in run("euler", "esm", "81/64")[1]
    assert json.loads(run("euler", "gradus", "3/2", "--json")[1])["gradus"] == 4
    assert json.loads(run("euler", "point", "9/8", "--json")[1])["point"] == [-3, 2, 0]
    assert len(json.loads(run("euler", "vogel", "--json")[1])) == 12

def test_scale_json():
    payload = json.loads(run("scale", "pyt", "--count", "3", "--json")[1])
    assert payload["notes"] == [132, 198, "297/2"]
    assert payload["closed"] is False
    payload = json.loads(run("scale", "gen", "--ratio", "2^(7/12)", "--max", "20", "--json")[1])
    assert payload["closed"] is True and payload["period"] == 12

def test_pythag_scale():
    code, out, _ = run("pythag", "scale", "--cycles", "0", "--json")
    assert code == 0
    letters = json.loads(out)["letters"]
    assert len(letters) == 12
    assert letters[1]["frequency"] == "72171/512"

def test_comma_modulation_summary():
    code, out, _ = run("pythag", "comma-modulate", "--raise", "6")
    assert code == 0
    assert out.splitlines()[1] == (
        "pivots {{1,3,5,7},{1,3,5,7}}  cadences {{7},{1,7},{3,7},{5,7},{7,1},{7,3},{7,5},{7,7}}")

def test_comma_modulate_json_lists_every_modulation():
    t1 = pyt_tonality(pyt_word(named_word("major")), 1)
    t2 = pyt_tonality(cycle_raise(t1.word, 6), 1)
    found = comma_modulations(t1, t2, pyt_standard_context("major", 1), 2)
    assert len(found) == 4 * 8
    payload = json.loads(run("pythag", "comma-modulate", "--raise", "6", "--json")[1])
    assert payload["modulations"] == [m.to_dict() for m in found]
    assert [p["source_degree"] for p in payload["pivots"]] == [1, 3, 5, 7]
    assert len(payload["cadences"]) == 8
    assert payload["target"]["word"][5] == {"pc": 9, "cycle": 1}

def test_comma_modulate_strict_rule():
    t1 = pyt_tonality(pyt_word(named_word("major")), 1)
    t2 = pyt_tonality(cycle_raise(t1.word, 6), 1)
    found = comma_modulations(t1, t2, pyt_standard_context("major", 1), 1, rule=CadenceRule.STRICT)
    _, out, _ = run("pythag", "comma-modulate", "--raise", "6", "--maxlen", "1", "--rule", "strict", "--json")
    assert json.loads(out)["modulations"] == [m.to_dict() for m in found]

def test_comma_modulate_without_cadences():
    code, out, _ = run("pythag", "comma-modulate", "--raise", "7")
    assert code == 0
    assert out.splitlines()[1] == "pivots {}  cadences {}"

def test_tonality_json_is_the_model_dict():
    payload = json.loads(run("tonality", "--word", "major", "--root", "D", "--level", "2", "--json")[1])
    assert payload == make_tonality(named_word("major", 2), 2).to_dict()

def test_piece_json_is_the_model_dict():
    payload = json.loads(run("piece", "--fifths-level", "2", "--steps", "3", "--json")[1])
    assert payload == fifths_cycle_as_piece(2, 3).to_dict()

def test_consonance():
    payload = json.loads(run("consonance", "--notes", "2", "3", "--nmax", "6", "--json")[1])
    assert payload["index"] == "5/2"
    payload = json.loads(run("consonance", "--notes", "2", "3", "--nmax", "6",
                             "--check-divergence", "--json")[1])
    assert payload["divergence"]["diverges"] is True
    assert json.loads(run("consonance", "--notes", "1", "2^(1/2)", "--json")[1])["index"] == 0

def test_enumerate():
    assert run("enumerate", "--length", "5", "--nonrepetitive", "--count")[1].splitlines()[1] == "792"
    assert run("enumerate", "--tonalities")[1].splitlines()[1] == "10100"

def test_usage_errors_exit_2():
    code, _, err = run("cadences", "--context", "nowhere")
    assert code == 2
    assert "usage error" in err
    assert run()[0] == 2
    assert run("euler", "point", "abc")[0] == 2

def test_rejected_input_exits_1():
    code, out, err = run("tonality", "--level", "9")
    assert code == 1
    assert out == ""
    assert err.startswith("error: ")
    assert run("tonality", "--word", "nonesuch")[0] == 1
    assert run("pythag", "comma-modulate", "--raise", "9")[0] == 1
    assert run("euler", "point", "7/4")[0] == 1

def test_budget_option():
    code, _, err = run("cadences", "--maxlen", "3", "--budget", "10")
    assert code == 1
    assert "budget" in err

def test_render(tmp_path):
    path = tmp_path / "scale.wav"
    code, out, _ = run("render", "--out", str(path), "--duration", "quaver", "--json")
    assert code == 0
    assert path.exists()
    payload = json.loads(out)
    assert payload["events"] == 7
    assert payload["samples"] == 7 * 22050

def test_config_file(tmp_path, monkeypatch):
    monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)
    path = tmp_path / "harmonium.cfg"
    path.write_text("reference_note = 440\n", encoding="utf-8")
    payload = json.loads(run("euler", "diatonic", "--json", "--config", str(path))[1])
    assert payload[0]["frequency"] == 440
    payload = json.loads(run("euler", "diatonic", "--json", "--config", str(path),
                             "--reference-note", "110")[1])
    assert payload[0]["frequency"] == 110
    monkeypatch.setenv(CONFIG_ENV_VAR, str(path))
    assert json.loads(run("euler", "diatonic", "--json")[1])[0]["frequency"] == 440

def test_bad_config_exits_1(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("colour = red\n", encoding="utf-8")
    assert run("euler", "commas", "--config", str(path))[0] == 1
