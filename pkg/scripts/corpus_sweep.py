"""Run the statement checks over the built-in corpus and tabulate the verdicts."""
import argparse
import json
import time

from gclassgraph.theorems import SUITES, run_corpus


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-order", type=int, default=2000)
    parser.add_argument("--suite", default=",".join(SUITES))
    parser.add_argument("--out", help="write the full json report here")
    parser.add_argument("--show-applied", action="store_true", help="list pairs that have an isolated pair of classes")
    args = parser.parse_args()

    t0 = time.perf_counter()
    report = run_corpus(suites=args.suite.split(","), max_order=args.max_order)
    elapsed = time.perf_counter() - t0

    print(f"{len(report['items'])} pairs in {elapsed:.1f}s, {report['counterexamples']} counterexamples")
    cols = ["verified", "vacuous", "counterexample", "inconclusive", "skipped"]
    print(f"{'suite':<20}" + "".join(f"{c:>16}" for c in cols))
    for suite, counts in report["summary"].items():
        print(f"{suite:<20}" + "".join(f"{counts[c]:>16}" for c in cols))
    if args.show_applied:
        for item in report["items"]:
            for r in item["results"]:
                if r["statement"] == "theoremA" and r["applicability"] == "applies":
                    print("  theoremA applies:", item["label"])
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
