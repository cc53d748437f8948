"""Rewrite the golden reports in tests/golden from the shipped fixtures."""
import sys
from pathlib import Path

from csystems import dsl, fixtures
from csystems.suite import run_suite, to_jsonl

GOLDEN = {
    "finset_u3_appendixA.jsonl": ("finset_u3.spec", ["appendixA"]),
    "f_category_example.jsonl": ("f_category_sigma.spec", ["example"]),
    "unit_csystem_all.jsonl": ("unit_csystem.spec", ["all"]),
    "faults_unit_law.jsonl": ("faults/unit-law.spec", None),
    "faults_phit_pullback.jsonl": ("faults/phit-pullback.spec", None),
}


def main(out=None):
    out = Path(out or Path(__file__).resolve().parents[1] / "tests" / "golden")
    out.mkdir(parents=True, exist_ok=True)
    for fname, (spec, sel) in GOLDEN.items():
        recs = run_suite(dsl.parse(fixtures.fixture_text(spec)), sel)
        (out / fname).write_text(to_jsonl(recs, timing=False), encoding="utf-8")
        print(fname)


if __name__ == "__main__":
    main(*sys.argv[1:])
