"""Command-line interface: build or load a group, analyze its class graph, run the checks."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .classgraph import build_graph, export_graph, isolated_pairs, size_graph, summarize
from .constructions import (
    CATALOG,
    GroupPair,
    agl_semilinear,
    alternating,
    cyclic,
    dihedral,
    elementary_abelian,
    example1_pair,
    example2_composite,
    quaternion8,
    symmetric,
)
from .io import GroupDocument, GroupFileError, export_group, load_group_file
from .perm import GroupError, PermGroup, center, class_size_multiset, g_classes_in, is_normal
from .structure import classify_structure, frobenius_summary, normal_subgroups
from .theorems import SUITES, preferred_primes, run_corpus

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2

SPEC_HELP = """\
group specs:
  sym:n  alt:n  cyc:n  dih:n (n = order)  ea:p,k  q8
  agl1:8 (subgroups A, G)  ex1 (N, K, P, G)  ex2 (N, P, A, G)
  file:<path>#<subgroup>   a json group document, optionally naming N
normal subgroup names: any named subgroup, G, Z (the center), or N<k>
  for the k-th normal subgroup in ascending order."""


class SpecError(Exception):
    pass


@dataclass
class ResolvedGroup:
    label: str
    G: PermGroup
    named: dict[str, PermGroup] = field(default_factory=dict)
    default_normal: str = "G"

    def normal(self, name: Optional[str]) -> tuple[str, PermGroup]:
        name = name or self.default_normal
        if name == "G":
            return name, self.G
        if name in self.named:
            return name, self.named[name]
        if name == "Z":
            return name, center(self.G)
        if name.startswith("N") and name[1:].isdigit():
            normals = normal_subgroups(self.G)
            k = int(name[1:])
            if k < len(normals):
                return name, normals[k]
            raise SpecError(f"{self.label} has {len(normals)} normal subgroups, N{k} does not exist")
        known = ", ".join(["G", "Z", "N<k>"] + sorted(self.named))
        raise SpecError(f"unknown normal subgroup {name!r} for {self.label} (known: {known})")


def _ints(text: str, spec: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise SpecError(f"bad parameters in group spec {spec!r}") from None


def _from_pair(pair: GroupPair, default: str) -> ResolvedGroup:
    named = {k: v for k, v in pair.named.items() if k != "G"}
    return ResolvedGroup(pair.label, pair.G, named, default)


def resolve_group(spec: str) -> ResolvedGroup:
    """Turn a group spec such as ``sym:4`` or ``file:g.json#N`` into a group with named subgroups."""
    if spec.startswith("file:"):
        path, _, sub = spec[5:].partition("#")
        doc = load_group_file(path)
        named = {k: doc.subgroup(k) for k in doc.normal_subgroups}
        if sub and sub not in named:
            raise SpecError(f"{path} has no subgroup {sub!r}")
        return ResolvedGroup(doc.name, doc.group(), named, sub or "G")
    if spec == "ex1":
        return _from_pair(example1_pair(), "N")
    if spec == "ex2":
        return _from_pair(example2_composite(), "N")
    if spec == "q8":
        return ResolvedGroup(spec, quaternion8())
    if spec == "agl1:8":
        return _from_pair(agl_semilinear(8), "G")
    family, sep, params = spec.partition(":")
    builders = {"sym": symmetric, "alt": alternating, "cyc": cyclic, "dih": dihedral, "ea": elementary_abelian}
    if not sep or family not in builders:
        raise SpecError(f"unknown group spec {spec!r}")
    args = _ints(params, spec)
    try:
        G = builders[family](*args)
    except TypeError:
        raise SpecError(f"wrong number of parameters in group spec {spec!r}") from None
    return ResolvedGroup(spec, G)


# ---------------------------------------------------------------- commands

def _fmt_set(values) -> str:
    return "{" + ", ".join(str(v) for v in sorted(values)) + "}"


def analysis(G: PermGroup, N: PermGroup) -> dict:
    classes = g_classes_in(G, N)
    graph = build_graph(G, N)
    summary = summarize(graph)
    isolated = isolated_pairs(graph)
    sizes, size_edges = size_graph(graph)
    prefer = set()
    if isolated:
        i, j = isolated[0]
        prefer = preferred_primes(G, graph.vertices[i].representative, graph.vertices[j].representative)
    return {
        "group_order": G.order,
        "degree": G.degree,
        "normal_order": N.order,
        "class_count": len(classes),
        "class_sizes": sorted({c.size for c in classes}),
        "class_size_multiset": {str(k): v for k, v in class_size_multiset(classes).items()},
        "graph": {"edges": len(graph.edges), **summary.to_dict()},
        "size_graph": {"vertices": sizes, "edges": [list(e) for e in size_edges]},
        "isolated_pairs": [
            {"x": str(graph.vertices[i].representative), "y": str(graph.vertices[j].representative),
             "sizes": [graph.vertices[i].size, graph.vertices[j].size]}
            for i, j in isolated
        ],
        "structure": classify_structure(N, prefer).to_dict(),
        "frobenius": frobenius_summary(N),
    }


def _print_analysis(label: str, nname: str, a: dict, out) -> None:
    g = a["graph"]
    mult = ", ".join(f"{k}x{v}" for k, v in a["class_size_multiset"].items())
    print(f"group: {label} (order {a['group_order']}, degree {a['degree']})", file=out)
    print(f"normal subgroup: {nname} (order {a['normal_order']})", file=out)
    print(f"G-classes in N: {a['class_count']}", file=out)
    print(f"class sizes: {_fmt_set(a['class_sizes'])}", file=out)
    print(f"size multiplicities: {mult}", file=out)
    print(
        f"graph: {g['vertices']} vertices, {g['edges']} edges, "
        f"{len(g['components'])} components, diameter {g['diameter']}",
        file=out,
    )
    sg = a["size_graph"]
    print(f"size graph: {len(sg['vertices'])} vertices {_fmt_set(sg['vertices'])}, {len(sg['edges'])} edges", file=out)
    if a["isolated_pairs"]:
        print("isolated pairs:", file=out)
        for p in a["isolated_pairs"]:
            print(f"  {p['x']} (size {p['sizes'][0]})  {p['y']} (size {p['sizes'][1]})", file=out)
    else:
        print("isolated pairs: none", file=out)
    s = a["structure"]
    parts = [s["kind"]]
    if "p" in s:
        parts.append(f"p={s['p']}")
    for key in ("P_part", "A_part", "kernel", "complement"):
        if key + "_order" in s:
            ab = "abelian" if s[key + "_abelian"] else "non-abelian"
            parts.append(f"{key} order {s[key + '_order']} ({ab})")
    if "center_order" in s:
        parts.append(f"|Z(N)|={s['center_order']}")
    print("structure: " + ", ".join(parts), file=out)
    for note in s.get("notes", []):
        print(f"  note: {note}", file=out)
    f = a["frobenius"]
    if f is None:
        print("frobenius: N is not a Frobenius group", file=out)
    else:
        def ab(flag):
            return "abelian" if flag else "non-abelian"

        print(
            f"frobenius: kernel order {f['kernel_order']} ({ab(f['kernel_abelian'])}), "
            f"complement order {f['complement_order']} ({ab(f['complement_abelian'])})",
            file=out,
        )


def cmd_catalog(args, out) -> int:
    print("catalog builders:", file=out)
    for name, desc in CATALOG.items():
        print(f"  {name:<20} {desc}", file=out)
    print(SPEC_HELP, file=out)
    return EXIT_OK


def cmd_analyze(args, out) -> int:
    rg = resolve_group(args.group)
    nname, N = rg.normal(args.normal)
    a = analysis(rg.G, N)
    if args.json:
        print(json.dumps({"group": rg.label, "normal": nname, **a}, indent=2, sort_keys=True), file=out)
    else:
        _print_analysis(rg.label, nname, a, out)
    return EXIT_OK


def cmd_graph(args, out) -> int:
    rg = resolve_group(args.group)
    _, N = rg.normal(args.normal)
    text = export_graph(build_graph(rg.G, N), args.format)
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_export(args, out) -> int:
    rg = resolve_group(args.group)
    named = {k: H for k, H in rg.named.items() if is_normal(rg.G, H)}
    if not named:
        normals = normal_subgroups(rg.G)
        width = len(str(len(normals)))
        named = {f"N{k:0{width}d}": H for k, H in enumerate(normals)}
    text = export_group(rg.label, rg.G, named).to_json()
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_import(args, out) -> int:
    doc: GroupDocument = load_group_file(args.file)
    G = doc.group()
    print(f"{doc.name}: degree {doc.degree}, order {G.order}", file=out)
    for name in doc.normal_subgroups:
        print(f"  {name}: order {doc.subgroup(name).order}, normal", file=out)
    if not args.check:
        out.write(doc.to_json())
    return EXIT_OK


def _corpus_from_dir(path: str):
    if not Path(path).is_dir():
        raise GroupFileError(f"corpus directory {path} does not exist")
    files = sorted(Path(path).glob("*.json"))
    groups, pairs = [], []
    for f in files:
        doc = load_group_file(f)
        G = doc.group()
        if not doc.normal_subgroups:
            groups.append((doc.name, G))
        for name in doc.normal_subgroups:
            H = doc.subgroup(name)
            pairs.append(GroupPair(G, H, doc.name, {name: H}))
    return groups, pairs


def cmd_verify(args, out) -> int:
    suites = [s for s in args.suite.split(",") if s] if args.suite else list(SUITES)
    unknown = [s for s in suites if s not in SUITES]
    if unknown:
        raise SpecError(f"unknown suites: {', '.join(unknown)} (known: {', '.join(SUITES)})")
    corpus = pairs = None
    if args.corpus:
        corpus, pairs = _corpus_from_dir(args.corpus)
    report = run_corpus(corpus, suites, args.max_order, pairs)
    if args.json:
        Path(args.json).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    print(f"pairs checked: {len(report['items'])}", file=out)
    for suite, counts in report["summary"].items():
        cells = "  ".join(f"{k}={v}" for k, v in counts.items())
        print(f"  {suite:<20} {cells}", file=out)
    for item in report["items"]:
        for r in item["results"]:
            if r["verdict"] == "counterexample":
                print(f"COUNTEREXAMPLE {r['statement']} in {item['label']}: {json.dumps(r['counterexample'])}", file=out)
    for err in report["errors"]:
        print(f"error in {err['label']}: {err['error']}", file=out)
    if report["counterexamples"]:
        return EXIT_COUNTEREXAMPLE
    return EXIT_USAGE if report["errors"] else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gclassgraph",
        description="Class-size graphs of normal subgroups of finite permutation groups.",
        epilog=SPEC_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("catalog", help="list group builders and the group spec syntax")

    p = sub.add_parser("analyze", help="class sizes, graph summary, isolated pairs and structure of N")
    p.add_argument("--group", required=True)
    p.add_argument("--normal", help="name of N (default: the example's N, otherwise G)")
    p.add_argument("--json", action="store_true", help="emit json instead of text")

    p = sub.add_parser("graph", help="export the class graph")
    p.add_argument("--group", required=True)
    p.add_argument("--normal")
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.add_argument("--output", "-o")

    p = sub.add_parser("verify", help="run the statement checks over a corpus")
    p.add_argument("--suite", help=f"comma-separated subset of {','.join(SUITES)} (default: all)")
    p.add_argument(
        "--corpus",
        help="directory of json group documents used instead of the built-in corpus; "
        "documents naming subgroups contribute those pairs, others every normal subgroup",
    )
    p.add_argument("--max-order", type=int, default=2000)
    p.add_argument("--json", metavar="PATH", help="write the full report here")

    p = sub.add_parser("import", help="validate a json group document")
    p.add_argument("--file", required=True)
    p.add_argument("--check", action="store_true", help="validate only, do not echo the normalized document")

    p = sub.add_parser("export", help="write a group and its normal subgroups as a json document")
    p.add_argument("--group", required=True)
    p.add_argument("--output", "-o")
    return parser


COMMANDS = {
    "catalog": cmd_catalog,
    "analyze": cmd_analyze,
    "graph": cmd_graph,
    "verify": cmd_verify,
    "import": cmd_import,
    "export": cmd_export,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except (SpecError, GroupError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
