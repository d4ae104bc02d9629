"""Rebuild the three worked examples and print their class data and structure checks."""
import argparse
import json
import time

from gclassgraph.classgraph import build_graph, isolated_pairs, size_graph, summarize
from gclassgraph.constructions import agl_semilinear, example1_pair, example2_composite
from gclassgraph.perm import class_size_multiset, g_classes_in
from gclassgraph.structure import frobenius_summary
from gclassgraph.theorems import check_corollary_c, check_lemma3, check_theorem_a


def describe(label, G, N):
    t0 = time.perf_counter()
    classes = g_classes_in(G, N)
    graph = build_graph(G, N)
    row = {
        "example": label,
        "G": G.order,
        "N": N.order,
        "class_sizes": class_size_multiset(classes),
        "graph": summarize(graph).to_dict(),
        "size_graph": size_graph(graph),
        "isolated_pairs": len(isolated_pairs(graph)),
        "frobenius": frobenius_summary(N),
        "theoremA": check_theorem_a(G, N).verdict,
        "corC": check_corollary_c(G, N).applicability,
        "lemma3": check_lemma3(G, N).verdict,
    }
    row["seconds"] = round(time.perf_counter() - t0, 3)
    return row


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()
    ex1, ex2, agl = example1_pair(), example2_composite(), agl_semilinear(8)
    rows = [
        describe("ex1", ex1.G, ex1.N),
        describe("agl1:8 on A", agl.G, agl.N),
        describe("ex2", ex2.G, ex2.N),
    ]
    if args.json:
        print(json.dumps(rows, indent=2, default=str))
        return
    for r in rows:
        print(f"{r['example']}: |G|={r['G']} |N|={r['N']} sizes={r['class_sizes']} "
              f"diameter={r['graph']['diameter']} isolated={r['isolated_pairs']} "
              f"theoremA={r['theoremA']} ({r['seconds']}s)")


if __name__ == "__main__":
    main()
