"""Time every check on a fixture at its default parameters.

    python scripts/time_checks.py finset_u3.spec [GROUP ...]
"""
import argparse

from csystems import dsl, fixtures
from csystems.model import Model
from csystems.suite import parse_selection, run_check


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("fixture")
    ap.add_argument("groups", nargs="*", default=["all"])
    args = ap.parse_args()
    model = Model(dsl.parse(fixtures.fixture_text(args.fixture)))
    total = 0.0
    for name in sorted(parse_selection(args.groups)):
        r = run_check(model, name)
        total += r.time
        print(f"{r.status:8} {name:30} {r.instances:>10} {r.time:8.2f}s  {r.reason or ''}")
    print(f"total {total:.1f}s")


if __name__ == "__main__":
    main()
