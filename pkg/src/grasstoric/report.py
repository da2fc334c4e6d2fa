"""Verification suites: named checks per ``(n, r)`` with machine-readable reports."""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb, gcd
from typing import Any, Callable, Sequence

from . import linalg as la
from .fans import gc_spanning_fan, verify_vgit_theorem
from .gc_polytopes import (
    build_gc_polytopes,
    covering_relation,
    covering_span,
    is_isomorphic_to_primal,
    verify_excess_deletion,
)
from .groups import (
    BRUTE_FORCE_LIMIT,
    brute_force_G_h,
    compute_G_h,
    expected_orders,
    g_tilde,
    group_G,
    group_report,
    is_homogeneous,
)
from .ladder import Partition, all_crossing_diagrams, build_ladder_quiver, is_m_covering
from .mirror import (
    classical_period,
    ehx_superpotential,
    monomial_map_formula,
    monomial_map_matrix,
    period_by_multinomials,
    pullback_formula,
    pullback_hypersurface,
    pullback_invariance,
    twin_period_check,
    znr_equation,
    znr_invariance,
)
from .pluecker import (
    coefficient_weights,
    component_count,
    degenerate_relations,
    normalize_character,
    p2_equation,
    shuffle_relations,
    vanishes_on_random_minors,
    vertex_relations,
)
from .polytopes import is_reflexive, is_vertex_spanning

SUITES = ("polytopes", "group", "relations", "fan", "mirror")


@dataclass
class Check:
    name: str
    passed: bool
    expected: Any = None
    actual: Any = None

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.expected is not None or self.actual is not None:
            out["expected"] = self.expected
            out["actual"] = self.actual
        return out


@dataclass
class VerificationReport:
    """Checks of one suite on one case; passes iff every check passes."""

    suite: str
    n: int
    r: int
    checks: list[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def check(self, name: str, passed: bool, expected: Any = None, actual: Any = None) -> None:
        self.checks.append(Check(name, bool(passed), expected, actual))

    def equal(self, name: str, expected: Any, actual: Any) -> None:
        self.check(name, expected == actual, expected, actual)

    def to_json(self, timing: bool = False, details: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "n": self.n,
            "r": self.r,
            "status": self.status,
            "checks": [c.to_json() for c in self.checks],
        }
        if details and self.data:
            out["data"] = self.data
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out

    def csv_rows(self) -> list[list[str]]:
        def cell(x):
            return "" if x is None else x if isinstance(x, str) else json.dumps(x)

        return [
            [self.suite, str(self.n), str(self.r), c.name, "pass" if c.passed else "fail", cell(c.expected), cell(c.actual)]
            for c in self.checks
        ]


CSV_HEADER = ["suite", "n", "r", "check", "status", "expected", "actual"]


def _plist(parts: Sequence[Partition]) -> list[list[int]]:
    return [list(p) for p in parts]


def polytopes_suite(n: int, r: int) -> VerificationReport:
    rep = VerificationReport("polytopes", n, r)
    data = build_gc_polytopes(n, r)
    q = data.quiver
    p, qq = data.p, data.q
    rep.check("P reflexive", is_reflexive(p))
    rep.check("P vertices span M", is_vertex_spanning(p))
    rep.check("Q reflexive", is_reflexive(qq))
    rep.check("Q vertices span its lattice", is_vertex_spanning(qq))
    rep.equal("P vertex count", len(q.arrows), len(p.vertices))
    rep.equal("Q vertex count", comb(n, r), len(qq.vertices))
    rep.check("pairing <m_lam, w_a> matches path crossings", data.m_pairing_matrix == data.m_pairing_formula())
    rep.check("pairing <n m_lam - h, w_a> = n[a in lam] - 1", data.pairing_matrix == data.pairing_formula())
    rep.equal("quotient invariant factors", [n] * (r * (n - r) - 1), list(data.primitive.invariant_factors))
    exc = verify_excess_deletion(n, r)
    rep.check("relation lattices agree under the labelling", exc.relations_equal)
    rep.check("labelled vertices give an isomorphic polytope", exc.ok)
    if not q.excess_set:
        rep.check("Q isomorphic to P", is_isomorphic_to_primal(n, r))
    diagrams = list(all_crossing_diagrams(q))
    verts = [list(data.q_vertices[lam]) for lam in q.partitions]
    rep.check("every crossing diagram is a 1-covering", all(is_m_covering(q, paths) == 1 for _, paths in diagrams))
    rep.check(
        "crossing relations annihilate the vertices of Q",
        all(not any(la.vecmat(covering_relation(q, paths), verts)) for _, paths in diagrams),
    )
    span = covering_span(n, r)
    rep.equal("crossing relation rank", span.expected_rank, span.rank)
    rep.data = {
        "P": data.p.to_json(),
        "P_dual": data.p_dual.to_json(),
        "Q": data.q.to_json(),
        "partitions": _plist(q.partitions),
        "arrow_labels": _plist(q.phi),
        "excess": _plist(q.excess_set),
        "pairing": data.pairing_matrix,
        "crossing_span_index": span.index,
    }
    return rep


def group_suite(n: int, r: int, brute_force: bool = False) -> VerificationReport:
    rep = VerificationReport("group", n, r)
    g = group_G(n, r)
    gr = group_report(n, r)
    exp = expected_orders(n, r)
    rep.equal("|G|", exp["G"], gr.order_G)
    rep.equal("|G_h|", exp["G_h"], gr.order_G_h)
    rep.equal("components |G|/|G_h|", component_count(n, r), gr.components)
    rep.check("G_h equals the image of H", gr.equals_psi_image)
    rep.check("H embeds in G", gr.psi_injective)
    gens = g_tilde(n, r).basis
    rep.check(
        "degenerate binomials homogeneous under G",
        all(is_homogeneous(n, r, x, rel) for rel in degenerate_relations(n, r) for x in gens),
    )
    gh = compute_G_h(n, r).top
    rep.check(
        "shuffle relations homogeneous under G_h",
        all(is_homogeneous(n, r, x, rel) for rel in shuffle_relations(n, r) for x in gh.basis),
    )
    if brute_force:
        if g.order > BRUTE_FORCE_LIMIT:
            rep.check("brute force feasible", False, BRUTE_FORCE_LIMIT, g.order)
        else:
            bf = brute_force_G_h(n, r)
            rep.equal("brute force count", gr.order_G_h, bf.accepted)
            rep.check("brute force subgroup equals G_h", bf.subgroup == gh)
            rep.check("brute force set closed", bf.closed)
    rep.data = gr.to_json()
    return rep


def relations_suite(n: int, r: int) -> VerificationReport:
    rep = VerificationReport("relations", n, r)
    rels = shuffle_relations(n, r)
    rep.check("shuffle relations vanish on random minors", vanishes_on_random_minors(rels, n, r, trials=20))
    rep.check(
        "index multisets agree within each relation",
        all(len({tuple(sorted(i + j)) for (i, j), _ in rel.terms}) == 1 for rel in rels),
    )
    rel_set = set(rels)
    locs = vertex_relations(n, r)
    rep.check("vertex relations are shuffle relations", all(loc.relation in rel_set for loc in locs))
    try:
        cs = coefficient_weights(n, r)
        rep.check("coefficient weights generated by vertex weights", True)
    except ValueError as exc:
        cs = None
        rep.check("coefficient weights generated by vertex weights", False, None, str(exc))
    g, gh = group_G(n, r).order, compute_G_h(n, r).order
    rep.equal("component count times |G_h| equals |G|", g, component_count(n, r) * gh)
    d = gcd(n, r)
    p2 = None
    if d > 1:
        try:
            p2 = p2_equation(n, r)
        except ValueError as exc:
            rep.check("containing relation found", False, None, str(exc))
        else:
            rep.check("containing relation found", len(p2.witnesses) == len(p2.diagonal) > 0)
            rep.check("product weight is -d on the box borders", p2.matches_border_formula)
            power = [(n // d) * x % n for x in p2.weight]
            rep.check("(n/d)-th power of the product weight is trivial", len(set(power)) == 1)
            rep.check("order of the product weight divides n/d", (n // d) % p2.order == 0, n // d, p2.order)
    rep.data = {
        "shuffle_relations": len(rels),
        "degenerate_relations": [rel.to_text() for rel in degenerate_relations(n, r)],
        "vertex_relations": [
            {"vertex": list(loc.vertex), "relation": loc.relation.to_text()} for loc in locs
        ],
    }
    if cs is not None:
        rep.data["coefficients"] = [
            {"relation": c.relation.to_text(), "weight": list(c.weight), "vertex_exponents": list(e)}
            for c, e in zip(cs.coefficients, cs.expressions)
        ]
    if p2 is not None:
        rep.data["p2"] = {
            "d": p2.d,
            "boxes": [
                {"vertex": list(b.vertex), "relation": b.relation.to_text(), "witness": w.to_text()}
                for b, w in zip(p2.diagonal, p2.witnesses)
            ],
            "weight": list(normalize_character(n, p2.weight)),
            "order": p2.order,
        }
    return rep


def fan_suite(n: int, r: int, order: Sequence[Partition] | None = None) -> VerificationReport:
    rep = VerificationReport("fan", n, r)
    rep.check("spanning fan complete", gc_spanning_fan(n, r).is_complete())
    v = verify_vgit_theorem(n, r, order)
    rep.check("rays equal the vertices of Q", v.rays_match)
    rep.check("hull of rays has the facets of Q", v.polytopes_match)
    rep.check("fan complete after subdivision", v.complete)
    rep.check("every ray is a vertex of the hull", v.rays_are_vertices)
    rep.check("cone counts consistent", v.counts_consistent)
    rep.data = v.to_json()
    return rep


MULTINOMIAL_LIMIT = 200_000


def mirror_suite(n: int, r: int, max_order: int = 6) -> VerificationReport:
    rep = VerificationReport("mirror", n, r)
    data = build_gc_polytopes(n, r)
    w = ehx_superpotential(n, r)
    rep.equal("superpotential terms", len(data.quiver.arrows), len(w))
    rep.check("Newton polytope equals P", w.newton_polytope() == data.p)
    rep.check("monomial map matches n[a in mu] - 1", monomial_map_matrix(n, r) == monomial_map_formula(n, r))
    rep.check("pullback equals the closed form", pullback_hypersurface(n, r) == pullback_formula(n, r))
    rep.check("pullback invariant under N / Nbar", pullback_invariance(n, r).invariant)
    zi = znr_invariance(n, r)
    rep.equal("frozen coordinates", n, zi.frozen_count)
    rep.check("frozen subsets are cyclic intervals", zi.cyclic_intervals)
    rep.check("compactified equation invariant termwise (subsets)", zi.termwise_subsets)
    rep.check("compactified equation invariant termwise (arrows)", zi.termwise_arrows)
    period = classical_period(w, max_order)
    if comb(max_order + len(w) - 1, len(w) - 1) <= MULTINOMIAL_LIMIT:
        rep.equal("period matches multinomial sum", period_by_multinomials(w, max_order), period)
    twin = twin_period_check(n, r, max_order=max_order)
    rep.equal("twin period", period, twin.twin_period)
    rep.data = {
        "period": period,
        "twin_index": twin.index,
        "superpotential": w.to_json(),
        "znr": znr_equation(n, r).polynomial.to_json(),
    }
    return rep


def run_case(n: int, r: int, suites: Sequence[str] = SUITES, max_order: int = 6, brute_force: bool = True) -> list[VerificationReport]:
    runners: dict[str, Callable[[], VerificationReport]] = {
        "polytopes": lambda: polytopes_suite(n, r),
        "group": lambda: group_suite(n, r, brute_force and group_G(n, r).order <= BRUTE_FORCE_LIMIT),
        "relations": lambda: relations_suite(n, r),
        "fan": lambda: fan_suite(n, r),
        "mirror": lambda: mirror_suite(n, r, max_order),
    }
    out = []
    for name in suites:
        t = time.perf_counter()
        rep = runners[name]()
        rep.seconds = time.perf_counter() - t
        out.append(rep)
    return out


def _run_case_args(args):
    return run_case(*args)


def cases_up_to(max_n: int) -> list[tuple[int, int]]:
    return [(n, r) for n in range(4, max_n + 1) for r in range(2, n // 2 + 1)]


def worker_count() -> int:
    raw = os.environ.get("GRASSTORIC_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def verify_all(max_n: int, max_order: int = 6, workers: int | None = None) -> list[VerificationReport]:
    """Every suite on every case ``4 <= n <= max_n``, ``2 <= r <= n / 2``, in case order."""
    cases = cases_up_to(max_n)
    workers = worker_count() if workers is None else workers
    args = [(n, r, SUITES, max_order) for n, r in cases]
    if workers <= 1 or len(cases) == 1:
        results = [_run_case_args(a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(cases))) as pool:
            results = list(pool.map(_run_case_args, args))
    return [rep for reps in results for rep in reps]
