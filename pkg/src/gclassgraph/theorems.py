"""Executable checks of the structural statements about class graphs, and a corpus runner.

Each check returns a :class:`VerificationOutcome`. A failed clause is reported
as a ``counterexample`` carrying the concrete elements involved, so it can be
re-run with :func:`recheck`; it is never swallowed.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable, Optional, Sequence

import numpy as np

from .arith import is_pi_number, primes_of
from .classgraph import (
    UNREACHABLE,
    ClassGraph,
    components_complete,
    far_pairs,
    graph_from_classes,
    isolated_pairs,
    summarize,
)
from .constructions import GroupPair, builtin_groups, builtin_pairs
from .perm import (
    GClass,
    GroupError,
    PermGroup,
    Permutation,
    g_classes_in,
    indices_of_bits,
    normal_closure,
)
from .structure import (
    StructureReport,
    is_direct_factorization,
    is_solvable,
    normal_subgroups,
    o_pi,
    pa_decompositions,
    primary_decomposition,
    quasi_frobenius_report,
    sylow,
)

SUITES = (
    "theoremA",
    "corB",
    "corC",
    "lemma1",
    "lemma2",
    "lemma3",
    "step1",
    "diameter_bound",
    "complete_components",
)
REPORT_SCHEMA_VERSION = 1


@dataclass
class VerificationOutcome:
    statement: str
    applicability: str = "vacuous"  # applies | vacuous
    verdict: str = "verified"  # verified | counterexample | inconclusive | skipped
    witnesses: list[dict] = field(default_factory=list)
    counterexample: Optional[dict] = None
    reason: str = ""

    def to_dict(self) -> dict:
        d = {"statement": self.statement, "applicability": self.applicability, "verdict": self.verdict}
        if self.witnesses:
            d["witnesses"] = self.witnesses
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        if self.reason:
            d["reason"] = self.reason
        return d


def _elt(x: Permutation) -> dict:
    return {"cycles": str(x), "images": list(x.images)}


def _primes(pi: Iterable[int]) -> list[int]:
    return sorted(pi)


def _central_in(g: Permutation, H: PermGroup) -> bool:
    return all(g.commutes_with(h) for h in H.generators)


def _subgroup_central(A: PermGroup, H: PermGroup) -> bool:
    return all(_central_in(a, H) for a in A.generators)


class PairContext:
    """Shared, lazily computed data for one (G, N) pair."""

    def __init__(self, G: PermGroup, N: PermGroup):
        self.G = G
        self.N = N
        self._centralizers: dict[Permutation, np.ndarray] = {}

    @cached_property
    def classes(self) -> list[GClass]:
        return g_classes_in(self.G, self.N)

    @cached_property
    def graph(self) -> ClassGraph:
        return graph_from_classes(self.classes, self.G.order)

    @cached_property
    def summary(self):
        return summarize(self.graph)

    @cached_property
    def isolated(self) -> list[tuple[int, int]]:
        return isolated_pairs(self.graph)

    @cached_property
    def class_of(self) -> np.ndarray:
        out = np.empty(self.N.order, dtype=np.int64)
        for k, c in enumerate(self.classes):
            out[indices_of_bits(c.members, self.N.order)] = k
        return out

    def class_size(self, x: Permutation) -> int:
        return self.classes[int(self.class_of[self.N.index_of(x)])].size

    def centralizer_mask(self, rep: Permutation) -> np.ndarray:
        if rep not in self._centralizers:
            self._centralizers[rep] = self.G.commuting_mask(rep)
        return self._centralizers[rep]


def _vertex(ctx: PairContext, i: int) -> GClass:
    return ctx.graph.vertices[i]


# ------------------------------------------------- isolated-pair structure

def preferred_primes(G: PermGroup, *elements: Permutation) -> set[int]:
    """Primes of the primary components of ``elements`` that are not central in G."""
    prefer = set()
    for z in elements:
        for p, part in primary_decomposition(z):
            if not _central_in(part, G):
                prefer.add(p)
    return prefer


def theorem_a_clauses(
    G: PermGroup,
    N: PermGroup,
    x: Permutation,
    y: Permutation,
    pi: frozenset[int],
    center_of: str = "N",
    pi_prime_central: bool = False,
) -> tuple[list[str], dict, bool]:
    """Check the conclusion for one pair; returns (failed clauses, witness, inconclusive).

    ``center_of`` selects where the abelian factor A must be central ("N" or
    "G"); ``pi_prime_central`` adds the requirement O_pi'(N) <= Z(G).
    """
    zgroup = N if center_of == "N" else G
    rest = primes_of(N.order) - pi
    Opi = o_pi(N, pi)
    Opp = o_pi(N, rest)
    failed = []
    witness = {
        "x": str(x),
        "y": str(y),
        "pi": _primes(pi),
        "O_pi_order": Opi.order,
        "O_pi_prime_order": Opp.order,
    }
    if not is_direct_factorization(N, Opp, Opi):
        failed.append("N = O_pi'(N) x O_pi(N)")
    if not (Opi.contains(x) and Opi.contains(y)):
        failed.append("x, y in O_pi(N)")
    if pi_prime_central and not _subgroup_central(Opp, G):
        failed.append("O_pi'(N) <= Z(G)")

    prefer = preferred_primes(G, x, y)
    report: Optional[StructureReport] = None
    for p, P, A in pa_decompositions(Opi, prefer):
        if _subgroup_central(A, zgroup):
            report = StructureReport("p_group_times_central", p=p, P_part=P, A_part=A)
            break
    inconclusive = False
    if report is None:
        report = quasi_frobenius_report(Opi)
        if report.kind == "inconclusive":
            inconclusive = True
        elif report.kind != "quasi_frobenius_abelian":
            failed.append(f"O_pi(N) is quasi-Frobenius (abelian kernel/complement) or P x A with A <= Z({center_of})")
    witness["structure"] = report.to_dict()
    if report.P_part is not None:
        witness["P_is_sylow"] = report.p
    return failed, witness, inconclusive


def _aggregate(outcome: VerificationOutcome, rows: list[tuple[list[str], dict, bool]], G, N) -> VerificationOutcome:
    for failed, witness, inconclusive in rows:
        outcome.witnesses.append(witness)
        if failed and outcome.counterexample is None:
            outcome.counterexample = {"failed": failed, **witness}
    if outcome.counterexample is not None:
        outcome.verdict = "counterexample"
    elif any(r[2] for r in rows):
        outcome.verdict = "inconclusive"
    return outcome


def _pair_checks(ctx: PairContext) -> list[str]:
    """End-to-end consistency of the isolated-pair notion with graph distance and coprimality."""
    bad = []
    if sorted(ctx.isolated) != sorted(far_pairs(ctx.graph)):
        bad.append("isolated pairs = pairs at distance >= 3 or in different components")
    for i, j in ctx.isolated:
        if gcd(_vertex(ctx, i).size, _vertex(ctx, j).size) != 1:
            bad.append("isolated pair sizes are coprime")
            break
    return bad


def check_theorem_a(G: PermGroup, N: PermGroup, ctx: Optional[PairContext] = None) -> VerificationOutcome:
    ctx = ctx or PairContext(G, N)
    out = VerificationOutcome("theoremA")
    bad = _pair_checks(ctx)
    if bad:
        out.applicability = "applies"
        out.verdict = "counterexample"
        out.counterexample = {"failed": bad, "isolated": [list(p) for p in ctx.isolated]}
        return out
    if not ctx.isolated:
        return out
    out.applicability = "applies"
    rows = []
    for i, j in ctx.isolated:
        X, Y = _vertex(ctx, i), _vertex(ctx, j)
        rows.append(theorem_a_clauses(G, N, X.representative, Y.representative, X.primes | Y.primes))
    return _aggregate(out, rows, G, N)


def check_corollary_b(G: PermGroup, N: PermGroup, ctx: Optional[PairContext] = None) -> VerificationOutcome:
    ctx = ctx or PairContext(G, N)
    out = VerificationOutcome("corB")
    if ctx.summary.diameter != "disconnected":
        return out
    out.applicability = "applies"
    verts = ctx.graph.vertices
    rows = []
    for i, j in itertools.combinations(range(len(verts)), 2):
        X, Y = verts[i], verts[j]
        if gcd(X.size, Y.size) != 1:
            continue
        rows.append(theorem_a_clauses(
            G, N, X.representative, Y.representative, X.primes | Y.primes, center_of="G", pi_prime_central=True
        ))
    return _aggregate(out, rows, G, N)


def check_corollary_c(G: PermGroup, N: PermGroup, ctx: Optional[PairContext] = None) -> VerificationOutcome:
    ctx = ctx or PairContext(G, N)
    out = VerificationOutcome("corC")
    if ctx.summary.diameter != 3:
        return out
    out.applicability = "applies"
    rows = []
    d = ctx.graph.distances
    for i, j in itertools.combinations(range(len(ctx.graph.vertices)), 2):
        if d[i, j] != 3:
            continue
        X, Y = _vertex(ctx, i), _vertex(ctx, j)
        rows.append(theorem_a_clauses(G, N, X.representative, Y.representative, X.primes | Y.primes))
    return _aggregate(out, rows, G, N)


# ------------------------------------------------- products of coprime classes

def _generated(N: PermGroup, bits: int) -> int:
    return N.closure(indices_of_bits(bits, N.order).tolist())


def lemma3_clauses(ctx: PairContext, B: GClass, C: GClass, far: bool) -> tuple[list[str], dict]:
    G, N = ctx.G, ctx.N
    failed = []
    mb = ctx.centralizer_mask(B.representative)
    mc = ctx.centralizer_mask(C.representative)
    cb, cc, cbc = int(mb.sum()), int(mc.sum()), int((mb & mc).sum())
    if cb * cc != G.order * cbc:
        failed.append("(a) C_G(b) C_G(c) = G")
    bc = N.product_bits(B.members, C.members)
    cbp = N.product_bits(C.members, B.members)
    size_bc = bc.bit_count()
    witness = {"B": B.size, "C": C.size, "BC": size_bc, "far": far}
    if bc != cbp:
        failed.append("(b) BC = CB")
    if not any(c.members == bc and c.size > 1 for c in ctx.classes):
        failed.append("(b) BC is a non-central G-class")
    if (B.size * C.size) % size_bc:
        failed.append("(b) |BC| divides |B||C|")
    if far:
        small, big = (B, C) if B.size < C.size else (C, B)
        bb = N.product_bits(small.members, N.inverse_bits(small.members))
        cc_ = N.product_bits(big.members, N.inverse_bits(big.members))
        gen_b = _generated(N, bb)
        gen_c = _generated(N, cc_)
        witness["<BB^-1>"] = gen_b.bit_count()
        if size_bc != big.size:
            failed.append("(c) |BC| = |C|")
        if N.product_bits(big.members, bb) != big.members:
            failed.append("(c) C B B^-1 = C")
        if N.product_bits(big.members, gen_b) != big.members:
            failed.append("(c) C <BB^-1> = C")
        if gen_b & ~gen_c:
            failed.append("(c) <BB^-1> <= <CC^-1>")
        if big.size % gen_b.bit_count():
            failed.append("(c) |<BB^-1>| divides |C|")
    return failed, witness


def check_lemma3(G: PermGroup, N: PermGroup, ctx: Optional[PairContext] = None) -> VerificationOutcome:
    ctx = ctx or PairContext(G, N)
    out = VerificationOutcome("lemma3")
    verts = ctx.graph.vertices
    d = ctx.graph.distances
    for i, j in itertools.combinations(range(len(verts)), 2):
        B, C = verts[i], verts[j]
        if gcd(B.size, C.size) != 1:
            continue
        out.applicability = "applies"
        far = bool(d[i, j] == UNREACHABLE or d[i, j] >= 3)
        failed, witness = lemma3_clauses(ctx, B, C, far)
        out.witnesses.append(witness)
        if failed and out.counterexample is None:
            out.counterexample = {
                "failed": failed, "b": _elt(B.representative), "c": _elt(C.representative), **witness
            }
    if out.counterexample is not None:
        out.verdict = "counterexample"
    return out


# ------------------------------------------------- commuting primary parts

def check_step1_property(G: PermGroup, N: PermGroup, ctx: Optional[PairContext] = None) -> VerificationOutcome:
    """For each isolated pair, non-central primary components have equal primes iff they commute."""
    ctx = ctx or PairContext(G, N)
    out = VerificationOutcome("step1")
    if not ctx.isolated:
        return out
    out.applicability = "applies"
    sizes = [v.size for v in ctx.graph.vertices]

    def isolated_sizes(a: int, b: int) -> bool:
        return all(gcd(z, a) == 1 or gcd(z, b) == 1 for z in sizes)

    for i, j in ctx.isolated:
        X, Y = _vertex(ctx, i), _vertex(ctx, j)
        xparts = [(p, xp) for p, xp in primary_decomposition(X.representative) if not _central_in(xp, G)]
        branches = set()
        for yi in indices_of_bits(Y.members, N.order):
            y = N.elements[int(yi)]
            for q, yq in primary_decomposition(y):
                if _central_in(yq, G):
                    continue
                for p, xp in xparts:
                    commute = xp.commutes_with(yq)
                    branches.add("p = q" if p == q else "p != q")
                    failed = []
                    if (p == q) != commute:
                        failed.append("q = p iff xy = yx")
                    if not isolated_sizes(ctx.class_size(xp), ctx.class_size(yq)):
                        failed.append("primary components still form an isolated pair")
                    if failed and out.counterexample is None:
                        out.counterexample = {
                            "failed": failed, "x": _elt(xp), "y": _elt(yq), "p": p, "q": q, "commute": commute
                        }
        out.witnesses.append({"X": X.size, "Y": Y.size, "branches": sorted(branches)})
    if out.counterexample is not None:
        out.verdict = "counterexample"
    return out


# ------------------------------------------------- pi-parts and factorizations

@lru_cache(maxsize=256)
def _own_classes(H: PermGroup) -> tuple[GClass, ...]:
    return tuple(g_classes_in(H, H))


@lru_cache(maxsize=256)
def _solvable(H: PermGroup) -> bool:
    return is_solvable(H)


def check_lemma1(H: PermGroup, pi: Iterable[int]) -> VerificationOutcome:
    """pi-elements have pi-number class sizes iff H = Hall-pi x pi-complement (H solvable)."""
    pi = frozenset(pi)
    out = VerificationOutcome("lemma1")
    if not _solvable(H):
        out.verdict = "skipped"
        out.reason = "group is not solvable"
        return out
    out.applicability = "applies"
    classes = _own_classes(H)
    lhs = all(
        is_pi_number(c.size, pi) for c in classes if is_pi_number(c.representative.order(), pi)
    )
    A = o_pi(H, pi)
    B = o_pi(H, primes_of(H.order) - pi)
    rhs = is_direct_factorization(H, A, B)
    out.witnesses.append({"pi": _primes(pi), "class_sizes_pi": lhs, "factorizes": rhs,
                          "O_pi_order": A.order, "O_pi_prime_order": B.order})
    if lhs != rhs:
        out.verdict = "counterexample"
        out.counterexample = {"failed": ["biconditional"], "pi": _primes(pi), "class_sizes_pi": lhs,
                              "factorizes": rhs}
    return out


def check_lemma2(H: PermGroup, p: int) -> VerificationOutcome:
    """If every p'-element has class size prime to p, a Sylow p-subgroup is a direct factor."""
    out = VerificationOutcome("lemma2")
    classes = _own_classes(H)
    pprime = [c for c in classes if c.representative.order() % p]
    if any(c.size % p == 0 for c in pprime):
        return out
    out.applicability = "applies"
    S = sylow(H, p)
    M = normal_closure(H, [c.representative for c in pprime])
    ok = is_direct_factorization(H, S, M)
    out.witnesses.append({"p": p, "sylow_order": S.order, "p_prime_part_order": M.order})
    if not ok:
        out.verdict = "counterexample"
        out.counterexample = {"failed": ["Syl_p(G) is a direct factor"], "p": p,
                              "sylow_order": S.order, "p_prime_part_order": M.order}
    return out


# ------------------------------------------------------ graph-level facts

def check_diameter_bound(G: PermGroup, N: PermGroup, ctx: Optional[PairContext] = None) -> VerificationOutcome:
    ctx = ctx or PairContext(G, N)
    out = VerificationOutcome("diameter_bound")
    s = ctx.summary
    bad_sizes = [v.size for v in ctx.graph.vertices if v.size <= 1 or G.order % v.size]
    if s.diameter == "empty" and not bad_sizes:
        return out
    out.applicability = "applies"
    out.witnesses.append({"diameter": s.diameter, "components": s.component_count})
    failed = []
    if isinstance(s.diameter, int) and s.diameter > 3:
        failed.append("d(Gamma_G(N)) <= 3")
    if bad_sizes:
        failed.append("vertex sizes exceed 1 and divide |G|")
    if failed:
        out.verdict = "counterexample"
        out.counterexample = {"failed": failed, "diameter": s.diameter, "bad_sizes": bad_sizes}
    return out


def check_complete_components(G: PermGroup, N: PermGroup, ctx: Optional[PairContext] = None) -> VerificationOutcome:
    ctx = ctx or PairContext(G, N)
    out = VerificationOutcome("complete_components")
    s = ctx.summary
    if s.diameter != "disconnected":
        return out
    out.applicability = "applies"
    bad = components_complete(ctx.graph, s)
    out.witnesses.append({"components": [len(c) for c in s.components]})
    if bad:
        out.verdict = "counterexample"
        out.counterexample = {
            "failed": ["each connected component is complete"],
            "component_sizes": [[ctx.graph.vertices[i].size for i in c] for c in bad],
        }
    return out


def recheck(outcome: VerificationOutcome, G: PermGroup, N: PermGroup) -> list[str]:
    """Re-run the failed clauses of an isolated-pair payload; returns the clauses that fail again."""
    payload = outcome.counterexample or {}
    if "x" not in payload:
        return []
    x = _parse_cycles(payload["x"], N.degree)
    y = _parse_cycles(payload["y"], N.degree)
    kw = {}
    if outcome.statement == "corB":
        kw = {"center_of": "G", "pi_prime_central": True}
    failed, _, _ = theorem_a_clauses(G, N, x, y, frozenset(payload["pi"]), **kw)
    return failed


def _parse_cycles(text: str, degree: int) -> Permutation:
    cycles = []
    for chunk in text.strip().strip("()").split(")("):
        if chunk.strip():
            cycles.append([int(t) for t in chunk.split()])
    return Permutation.from_cycles(degree, *cycles)


# ------------------------------------------------------------ corpus run

@dataclass
class CorpusItem:
    label: str
    G: PermGroup
    N: PermGroup


def corpus_items(
    groups: Sequence[tuple[str, PermGroup]],
    max_order: int,
    pairs: Sequence[GroupPair] = (),
) -> list[CorpusItem]:
    """Every (G, N) with N normal in a corpus group G of order <= max_order, plus the given pairs."""
    items = []
    for label, G in groups:
        if G.order > max_order:
            continue
        normals = normal_subgroups(G)
        width = len(str(len(normals)))
        for k, N in enumerate(normals):
            items.append(CorpusItem(f"{label} | N{k:0{width}d} order {N.order}", G, N))
    for pr in pairs:
        name = next((k for k, v in pr.named.items() if v is pr.N), "N")
        items.append(CorpusItem(f"{pr.label} | {name} order {pr.N.order}", pr.G, pr.N))
    items.sort(key=lambda it: it.label)
    return items


def _pair_suite(name: str, ctx: PairContext) -> VerificationOutcome:
    fn = {
        "theoremA": check_theorem_a,
        "corB": check_corollary_b,
        "corC": check_corollary_c,
        "lemma3": check_lemma3,
        "step1": check_step1_property,
        "diameter_bound": check_diameter_bound,
        "complete_components": check_complete_components,
    }[name]
    return fn(ctx.G, ctx.N, ctx)


def evaluate_item(item: CorpusItem, suites: Sequence[str]) -> list[VerificationOutcome]:
    ctx = PairContext(item.G, item.N)
    results = []
    for name in suites:
        if name == "lemma1":
            primes = sorted(primes_of(item.N.order))
            for r in range(1, len(primes) + 1):
                for pi in itertools.combinations(primes, r):
                    results.append(check_lemma1(item.N, pi))
        elif name == "lemma2":
            for p in sorted(primes_of(item.N.order)):
                results.append(check_lemma2(item.N, p))
        else:
            results.append(_pair_suite(name, ctx))
    return results


def run_corpus(
    corpus: Optional[Sequence[tuple[str, PermGroup]]] = None,
    suites: Sequence[str] = SUITES,
    max_order: int = 2000,
    pairs: Optional[Sequence[GroupPair]] = None,
) -> dict:
    """Run the requested suites over the corpus; the returned report is deterministic."""
    unknown = [s for s in suites if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suites: {', '.join(unknown)}")
    suites = [s for s in SUITES if s in suites]
    corpus = builtin_groups() if corpus is None else corpus
    pairs = builtin_pairs() if pairs is None else pairs
    errors = []
    try:
        items = corpus_items(corpus, max_order, pairs)
    except GroupError as err:
        errors.append({"label": "<corpus>", "error": str(err)})
        items = []
    counts = {s: {"verified": 0, "vacuous": 0, "counterexample": 0, "inconclusive": 0, "skipped": 0} for s in suites}
    entries = []
    for item in items:
        try:
            outcomes = evaluate_item(item, suites)
        except GroupError as err:
            errors.append({"label": item.label, "error": str(err)})
            continue
        for o in outcomes:
            c = counts[o.statement]
            if o.verdict in ("counterexample", "inconclusive", "skipped"):
                c[o.verdict] += 1
            elif o.applicability == "vacuous":
                c["vacuous"] += 1
            else:
                c["verified"] += 1
        entries.append({
            "label": item.label,
            "group_order": item.G.order,
            "normal_order": item.N.order,
            "results": [o.to_dict() for o in outcomes],
        })
    total = sum(c["counterexample"] for c in counts.values())
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "suites": list(suites),
        "max_order": max_order,
        "items": entries,
        "errors": errors,
        "summary": counts,
        "counterexamples": total,
    }
