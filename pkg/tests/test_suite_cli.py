import json
import subprocess
import sys
from pathlib import Path

import pytest

from csystems import cli, dsl, fixtures
from csystems.suite import (Params, REGISTRY, SelectionError, parse_selection, resolve,
                            run_suite, to_jsonl, to_text)

GOLDEN = Path(__file__).parent / "golden"
SPECS = Path(fixtures.__file__).parent / "specs"


def golden_table():
    import importlib.util
    path = Path(__file__).parents[1] / "scripts" / "regen_golden.py"
    spec = importlib.util.spec_from_file_location("regen_golden", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod.GOLDEN


def doc(name):
    return dsl.parse(fixtures.fixture_text(name))


def test_resolution():
    assert resolve("lemma-2017.01.07.l1") == ["lemma-2017.01.07.l1"]
    assert resolve("ex-2015") == ["ex-2015.05.20.ex1"]
    assert set(resolve("appendix")) == set(resolve("appendixA")) | set(resolve("appendixB"))
    assert set(resolve("all")) == set(REGISTRY)
    with pytest.raises(SelectionError, match="ambiguous"):
        resolve("lemma-2016.12.0")
    with pytest.raises(SelectionError, match="unknown"):
        resolve("theorem-1")


def test_every_check_is_in_a_group():
    for c in REGISTRY.values():
        assert c.groups
    assert len(REGISTRY) == len(set(REGISTRY))


def test_selection_parameters():
    sel = parse_selection(["lemma-2016.12.20.l4 n=2"])
    assert sel == {"lemma-2016.12.20.l4": Params(n=2)}
    with pytest.raises(SelectionError):
        parse_selection(["lemma-2016.12.20.l4 k=2"])


def test_out_of_range_n_is_skipped():
    [r] = run_suite(doc("inc.spec"), ["lemma-2016.12.20.l4"], Params(n=9))
    assert r.status == "skipped" and "n=9" in r.reason


def test_cli_parameters_beat_document_rows():
    text = fixtures.fixture_text("inc.spec") + "check lemma-2016.12.22.l1 n=1\n"
    d = dsl.parse(text.replace("check sec7-10\n", ""))
    [r] = run_suite(d)
    assert r.params["n"] == 1
    [r] = run_suite(d, None, Params(n=0))
    assert r.params["n"] == 0


@pytest.mark.parametrize("fname", sorted(p.name for p in GOLDEN.glob("*.jsonl")))
def test_golden_reports(fname):
    spec, sel = golden_table()[fname]
    got = to_jsonl(run_suite(doc(spec), sel), timing=False)
    assert got == (GOLDEN / fname).read_text(encoding="utf-8")


def test_reports_are_deterministic():
    a = to_jsonl(run_suite(doc("finset_u3.spec"), ["appendixA", "sec1"]), timing=False)
    b = to_jsonl(run_suite(doc("finset_u3.spec"), ["appendixA", "sec1"]), timing=False)
    assert a == b
    names = [json.loads(line)["check"] for line in a.splitlines()]
    assert names == sorted(names)


def test_text_report_mentions_witness():
    recs = run_suite(doc("faults/unit-law.spec"))
    out = to_text(recs)
    assert out.startswith("FAIL  category-laws") and "witness:" in out


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "csystems.cli", *args], capture_output=True,
                          text=True)


def test_exit_codes(tmp_path):
    assert cli.main([str(SPECS / "unit_csystem.spec"), "--suite", "category-laws"]) == 0
    assert cli.main([str(SPECS / "faults" / "unit-law.spec")]) == 1
    assert cli.main([str(SPECS / "unit_csystem.spec"), "--suite", "nope"]) == 2
    assert cli.main([str(SPECS / "unit_csystem.spec"), "--suite", "appendixA", "--strict"]) == 1
    assert cli.main([str(SPECS / "unit_csystem.spec"), "--suite", "appendixA"]) == 0
    bad = tmp_path / "bad.spec"
    bad.write_text("[category]\nobjects = A A\n")
    assert cli.main([str(bad)]) == 2
    assert cli.main(["--format", "xml", str(bad)]) == 2
    assert cli.main([str(tmp_path / "missing.spec")]) == 2


def test_cli_subprocess_json():
    p = run_cli(str(SPECS / "faults" / "phit-pullback.spec"), "--format", "json")
    assert p.returncode == 1
    rec = json.loads(p.stdout.splitlines()[0])
    assert rec["check"] == "def-2016.12.09.def1" and rec["status"] == "fail"
    assert rec["witness"]["clause"] == "phi-square-pullback"
    p = run_cli(str(SPECS / "unit_csystem.spec"), "--suite", "category-laws")
    assert p.returncode == 0 and p.stdout.startswith("PASS")
    p = run_cli(str(SPECS / "unit_csystem.spec"), "--suite", "lemma-2016.1")
    assert p.returncode == 2 and "ambiguous" in p.stderr
