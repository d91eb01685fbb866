import json
import os
import pathlib
import shutil

import pytest

import dasr_eval

DATA = pathlib.Path(os.environ.get("DASR_TEST_DATA", pathlib.Path(__file__).parents[1] / "data"))
MINI = DATA / "minicorpus"


def seg(speaker, start, end, words, session="S"):
    return {"session_id": session, "speaker": speaker, "start_time": start, "end_time": end, "words": words}


def test_normalize_text():
    assert dasr_eval.normalize_text("20$") == "twenty dollars"
    assert dasr_eval.normalize_text("Mr.") == "mister"
    once = dasr_eval.normalize_text("Uhm [laughs] I was goin, uhhh, HOME")
    assert once == "i was going home"
    assert dasr_eval.normalize_text(once) == once
    assert len(dasr_eval.norm_fingerprint()) == 16


def test_levenshtein_and_wer():
    c = dasr_eval.levenshtein(["a", "b", "c"], ["a", "x", "c", "d"])
    assert (c["substitutions"], c["insertions"], c["deletions"]) == (1, 1, 0)

    ref = [seg("A", 0, 2, "hello there"), seg("B", 2, 4, "good morning")]
    hyp = [seg("x", 0, 2, "good morning"), seg("y", 2, 4, "hello there")]
    assert dasr_eval.cp_wer(ref, hyp)["errors"] == 0
    # at collar 0 only the time-aligned pairing is admissible: 4 substitutions
    tcp = dasr_eval.tcp_wer(ref, hyp, collar=0.0)
    assert (tcp["errors"], tcp["substitutions"]) == (4, 4)
    assert dasr_eval.tcp_wer(ref, hyp, collar=dasr_eval.INFINITE_COLLAR)["errors"] == 0
    with pytest.raises(dasr_eval.UndefinedRateError):
        dasr_eval.cp_wer([], hyp)


def test_der_and_counting():
    ref = [seg("A", 0, 10, "x"), seg("B", 5, 15, "y")]
    r = dasr_eval.der(ref, ref, collar=0.0)
    assert r["der"] == 0.0
    assert r["scored_speech"] == 20.0
    spk = dasr_eval.speaker_count_errors(ref, [seg("h", 0, 15, "x")])
    assert spk["missed_pct"] == 50.0
    a = dasr_eval.session_activity(ref, 20.0)
    assert (a["silence"], a["single"], a["overlap"]) == (5.0, 10.0, 5.0)


def test_errors_map_to_python_exceptions():
    with pytest.raises(dasr_eval.ParseError):
        dasr_eval.cp_wer("[{", "[]")
    with pytest.raises(dasr_eval.SchemaError):
        dasr_eval.cp_wer([{"session_id": "S"}], [])
    assert issubclass(dasr_eval.MissingSessionsError, dasr_eval.ScoringError)
    assert issubclass(dasr_eval.ScoringError, dasr_eval.Error)


def test_workflow(tmp_path):
    ref, hyp = tmp_path / "ref", tmp_path / "sys_a"
    shutil.copytree(MINI / "ref", ref)
    shutil.copytree(MINI / "hyp" / "sys_a", hyp)
    assert dasr_eval.validate(str(ref)) == []
    files = dasr_eval.prep(str(ref))
    assert len(files) == 8 and all(f["dropped"] == 1 for f in files)

    report = dasr_eval.score(str(ref), str(hyp))
    assert report["system"] == "sys_a"
    expected = json.loads((MINI / "expected.json").read_text())
    got = {(s["scenario"], s["session"]): s for s in report["per_session"]}
    for e in expected:
        t = got[(e["scenario"], e["session"])]["tcpwer"]
        assert t["substitutions"] == e["tcpwer"]["substitutions"]
        assert t["ref_words"] == e["ref_words"]

    diar = dasr_eval.score_diar(str(ref), str(hyp), der_collar=0.0)
    assert diar["config"]["der_collar"] == 0.0
    assert len(dasr_eval.corpus_stats(str(ref))) == 4

    os.remove(hyp / "dipco" / "transcriptions" / "dev" / "S21.json")
    with pytest.raises(dasr_eval.MissingSessionsError):
        dasr_eval.score(str(ref), str(hyp))
