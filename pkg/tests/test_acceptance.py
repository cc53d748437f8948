"""The ten acceptance criteria, one test each; every test prints a PASS/FAIL line."""
import time

import pytest

from csystems import cli, dsl, fixtures
from csystems.finset import SFn
from csystems.limits import PullbackSquare, make_str_variants
from csystems.suite import Params, run_suite, to_jsonl

from conftest import ACCEPTANCE

SPECS = fixtures.FIXTURE_PACKAGE


def doc(name):
    return dsl.parse(fixtures.fixture_text(name))


@pytest.fixture
def report(capsys):
    def emit(num, title, ok, detail=""):
        line = f"criterion {num:2d} {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
        ACCEPTANCE.append(line)
        with capsys.disabled():
            print("\n" + line)
        assert ok, detail
    return emit


def failing(records):
    return [(r.check, r.status, r.reason or r.witness) for r in records if r.status != "pass"]


def test_01_appendix_suite(report):
    names = ["def-2016.12.02.def1", "def-2016.11.28.def1", "def-2015.03.27.def1",
             "lemma-2016.12.02.l1", "lemma-2015.04.16.l1", "lemma-2015.04.10.l1",
             "lemma-2015.04.20.l2", "lemma-2015.05.12.l2", "lemma-2016.12.16.l1",
             "lemma-2015.05.14.l1"]
    t0 = time.perf_counter()
    recs = run_suite(doc("finset_u3.spec"), ["appendix"])
    dt = time.perf_counter() - t0
    got = {r.check for r in recs}
    bad = failing(recs)
    report(1, "appendix suite on FS2", set(names) <= got and not bad and dt < 120,
           f"{len(recs)} checks, {dt:.1f}s" + (f", {bad}" if bad else ""))


def test_02_example_structures(report):
    F, s1, ss = make_str_variants(3)
    idx, sigma = F.identity(2), SFn(2, 2, (1, 0))
    literal = (ss.square(idx, idx) == PullbackSquare(2, sigma, sigma, idx, idx)
               and s1.square(idx, idx) == PullbackSquare(2, idx, idx, idx, idx))
    recs = (run_suite(doc("f_category.spec"), ["example"])
            + run_suite(doc("f_category_sigma.spec"), ["example"]))
    bad = failing(recs)
    report(2, "str_1 and str_sigma differ exactly at (Id_X, Id_X)", literal and not bad,
           "; ".join(map(str, bad)))


def test_03_cc_construction(report):
    recs = run_suite(doc("finset_u3.spec"), ["csystem-axioms", "cc-count"], Params(truncation=3))
    bad = failing(recs)
    C, u = fixtures.fs2_u3()
    cc = fixtures.cc_fs2_u3(3)
    count = len(cc.ob_n(cc.pt, 1)) == C.hom_size(C.terminal, u.U) == 3
    report(3, "CC(FS2,U3) is a C-system at N=3; |Ob_1(pt)| = 3", count and not bad,
           "; ".join(map(str, bad)))


def test_04_sec1(report):
    recs = run_suite(doc("finset_u3.spec"), ["sec1"], Params(n=2, truncation=3))
    bad = failing(recs)
    report(4, "Sig, SOb and SObt, boundary square at n <= 2, N = 3", not bad,
           f"{len(recs)} checks" + (f", {bad}" if bad else ""))


def test_05_sec2(report):
    recs = run_suite(doc("finset_u3.spec"), ["lemma-2017.01.07.l1", "lemma-2016.12.24.l1"],
                     Params(n=2))
    bad = failing(recs)
    agree = sum(r.instances for r in recs if r.check == "lemma-2016.12.24.l1")
    report(5, "circle laws and nested-pair vs presheaf agreement at depth <= 2", not bad,
           f"{agree} agreement instances" + (f", {bad}" if bad else ""))


def test_06_sec3_5(report):
    recs = run_suite(doc("finset_u3.spec"), ["sec3-5"], Params(truncation=3))
    recs += run_suite(doc("finset_u3.spec"), ["constr-2016.11.22.constr1", "constr-2016.11.22.constr2",
                                                 "lemma-2016.12.02.l3"],
                      Params(n=3, truncation=3))
    bad = failing(recs)
    report(6, "u_1, ut_1, u_n squares and SD_p naturality within N = 3", not bad,
           "; ".join(map(str, bad)))


def test_07_section6(report):
    recs = run_suite(doc("finset_u3.spec"), ["sec6"], Params(n=2, truncation=3))
    bad = failing(recs)
    report(7, "eta bijection, strength square, Id^n laws and mu square at n <= 2", not bad,
           "; ".join(map(str, bad)))


@pytest.mark.parametrize("spec", ["inc.spec", "inc_twisted.spec"])
def test_08_sec7_10(report, spec):
    d = doc(spec)
    recs = run_suite(d, ["sec7-10"], Params(truncation=2))
    at2 = ["lemma-2016.12.22.l1", "lemma-2016.12.22.l2", "lemma-2016.12.18.l1",
           "lemma-2016.12.20.l1", "lemma-2016.12.20.l4", "lemma-2015.05.06.l2"]
    recs += run_suite(d, [f"{c} n=2" for c in at2], Params(truncation=2))
    exact = {r.check: r.status for r in recs if r.check in ("eq-2017.01.13.eq3",
                                                             "eq-2017.01.13.eq5")}
    bad = failing(recs)
    report(8, f"functoriality laws on {spec[:-5]} at n <= 2, N = 2",
           not bad and exact == {"eq-2017.01.13.eq3": "pass", "eq-2017.01.13.eq5": "pass"},
           "; ".join(map(str, bad)))


FAULTS = {
    "unit-law": "category-laws",
    "q-square": "csystem-axioms",
    "phit-pullback": "def-2016.12.09.def1",
    "sig-naturality": "eq-2016.08.30.eq9",
    "u1-naturality": "constr-2016.08.22.constr1",
}


def test_09_fault_injection(report, tmp_path):
    seen = []
    for kind, check in FAULTS.items():
        name = f"faults/{kind}.spec"
        [r] = run_suite(doc(name), [check])
        path = tmp_path / f"{kind}.spec"
        path.write_text(fixtures.fixture_text(name))
        code = cli.main([str(path), "--suite", check, "--format", "json"])
        ok = r.status == "fail" and r.witness is not None and r.fault is not None and code == 1
        seen.append((kind, ok))
    bad = [k for k, ok in seen if not ok]
    report(9, "five injected faults each fail their check with a witness and exit 1", not bad,
           ", ".join(bad))


def test_10_cli_and_dsl(report):
    names = fixtures.fixture_names() + fixtures.fixture_names("faults")
    trips = []
    for n in names:
        t = fixtures.fixture_text(n)
        printed = dsl.print_doc(dsl.parse(t))
        trips.append(printed == dsl.normalize(t) and dsl.print_doc(dsl.parse(printed)) == printed)
    runs = [to_jsonl(run_suite(doc("finset_u3.spec"), ["appendixA", "sec2"]), timing=False)
            for _ in range(2)]
    runs += [to_jsonl(run_suite(doc("faults/q-square.spec")), timing=False) for _ in range(2)]
    same = runs[0] == runs[1] and runs[2] == runs[3]
    report(10, "round-trip fixpoint on all fixtures; byte-identical reports",
           all(trips) and same, f"{sum(trips)}/{len(trips)} fixtures round-trip")
