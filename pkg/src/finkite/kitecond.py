"""The kite condition as an executable checker and solver.

A kite diagram is a local-product-shaped square (p1, p2, e1, e2) with
three legs alpha, beta, gamma into a span (D, d, c).  Over finite sets
the solver pins a candidate multiplication on the cross e1(A) u e2(C)
and on the (d, c)-fibres; whatever remains is genuinely free, so the
solution count is the product of the remaining fibre sizes.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import islice, product
from typing import Callable, Optional

from .errors import DomainMismatch, HypothesisViolation, IllTyped
from .finmaps import FinMap, compose, identity, jointly_monic, pairing_is_injective
from .internal import (C2Data, DirectedKite, KpcResult, Span, composable_pairs,
                       kpc, kpc_swapped, validate_directed_kite)
from .limits import LocalProduct, SplitCospan, local_product
from .report import Report, counted, fails, holds


@dataclass(frozen=True)
class KiteDiagram:
    p1: FinMap
    p2: FinMap
    e1: FinMap
    e2: FinMap
    alpha: FinMap
    beta: FinMap
    gamma: FinMap
    d: FinMap
    c: FinMap

    def __post_init__(self):
        E, A, C = self.p1.dom, self.p1.cod, self.p2.cod
        D = self.alpha.cod
        if self.p2.dom != E:
            raise DomainMismatch("p1 and p2 must share their domain E")
        if (self.e1.dom, self.e1.cod) != (A, E):
            raise DomainMismatch("e1 must go A -> E")
        if (self.e2.dom, self.e2.cod) != (C, E):
            raise DomainMismatch("e2 must go C -> E")
        if self.alpha.dom != A or self.gamma.dom != C or self.beta.dom != E:
            raise DomainMismatch("alpha, beta, gamma must start at A, E, C")
        if self.beta.cod != D or self.gamma.cod != D:
            raise DomainMismatch("alpha, beta, gamma must land in D")
        if self.d.dom != D or self.c.dom != D:
            raise DomainMismatch("the span must start at D")

    @property
    def E(self) -> int:
        return self.p1.dom

    @property
    def A(self) -> int:
        return self.p1.cod

    @property
    def C(self) -> int:
        return self.p2.cod

    @property
    def D(self) -> int:
        return self.alpha.cod

    @property
    def span(self) -> Span:
        return Span(self.d, self.c)


def assemble_kite(dk: DirectedKite) -> tuple[KiteDiagram, LocalProduct]:
    """Complete a directed kite with its local product; beta is induced
    through the common composite f p1 = g p2."""
    rep = validate_directed_kite(dk)
    if not rep.ok:
        raise IllTyped(f"invalid directed kite: {rep.witness}")
    lp = local_product(SplitCospan(dk.f, dk.r, dk.g, dk.s))
    beta_e = compose(dk.beta, compose(dk.f, lp.p1))
    kd = KiteDiagram(lp.p1, lp.p2, lp.e1, lp.e2,
                     dk.alpha, beta_e, dk.gamma, dk.d, dk.c)
    return kd, lp


def check_hypotheses(k: KiteDiagram) -> Report:
    """Conditions (1)-(5) elementwise; the kernel pair construction
    always exists in finite sets, so (6) is reported as automatic."""
    cmd = "kite-check"
    if compose(k.p1, k.e1).table != identity(k.A).table:
        a = next(x for x in range(k.A) if k.p1.table[k.e1.table[x]] != x)
        return fails(cmd, {"condition": 1, "element": a}, ["p1 e1 != 1_A"])
    if compose(k.p2, k.e2).table != identity(k.C).table:
        x = next(y for y in range(k.C) if k.p2.table[k.e2.table[y]] != y)
        return fails(cmd, {"condition": 1, "element": x}, ["p2 e2 != 1_C"])
    e1p1 = compose(k.e1, k.p1)
    e2p2 = compose(k.e2, k.p2)
    if compose(e1p1, e2p2).table != compose(e2p2, e1p1).table:
        lhs, rhs = compose(e1p1, e2p2), compose(e2p2, e1p1)
        w = next(i for i in range(k.E) if lhs.table[i] != rhs.table[i])
        return fails(cmd, {"condition": 2, "element": w},
                     ["(e1p1)(e2p2) != (e2p2)(e1p1)"])
    clash = pairing_is_injective(k.p1, k.p2)
    if clash is not None:
        return fails(cmd, {"condition": 3, "elements": list(clash)},
                     ["(p1, p2) is not jointly monic"])
    a_leg = compose(k.alpha, compose(k.p1, e2p2))
    if a_leg.table != k.beta.table:
        w = next(i for i in range(k.E) if a_leg.table[i] != k.beta.table[i])
        return fails(cmd, {"condition": 4, "element": w},
                     ["alpha p1 e2 p2 != beta"])
    g_leg = compose(k.gamma, compose(k.p2, e1p1))
    if g_leg.table != k.beta.table:
        w = next(i for i in range(k.E) if g_leg.table[i] != k.beta.table[i])
        return fails(cmd, {"condition": 4, "element": w},
                     ["gamma p2 e1 p1 != beta"])
    dal = compose(k.d, compose(k.alpha, k.p1))
    dal2 = compose(k.d, a_leg)
    if dal.table != dal2.table:
        w = next(i for i in range(k.E) if dal.table[i] != dal2.table[i])
        return fails(cmd, {"condition": 5, "element": w},
                     ["d alpha p1 != d alpha p1 e2 p2"])
    cga = compose(k.c, compose(k.gamma, k.p2))
    cga2 = compose(k.c, g_leg)
    if cga.table != cga2.table:
        w = next(i for i in range(k.E) if cga.table[i] != cga2.table[i])
        return fails(cmd, {"condition": 5, "element": w},
                     ["c gamma p2 != c gamma p2 e1 p1"])
    return holds(cmd, ["conditions 1-5 hold",
                       "condition 6 (kernel pair construction) is automatic "
                       "over finite sets"])


@dataclass(frozen=True)
class SolveResult:
    count: int
    solutions: tuple[FinMap, ...]
    truncated: bool
    report: Report


def _count_and_enumerate(E: int, D: int, allowed: list[tuple[int, ...]],
                         cap: int, command: str) -> SolveResult:
    """Exact count plus solutions in lexicographic order.  The full set
    is enumerated up to the cap; the embedded report always carries at
    most the two lexicographically-least solutions."""
    count = 1
    for fibre in allowed:
        count *= len(fibre)
    if count == 0:
        return SolveResult(0, (), False, counted(command, 0))
    if count <= cap:
        sols = tuple(FinMap(E, D, tab) for tab in product(*allowed))
        truncated = False
    else:
        sols = tuple(FinMap(E, D, tab) for tab in islice(product(*allowed), 2))
        truncated = True
    report = counted(command, count, [list(s.table) for s in sols[:2]],
                     details=(["solution list truncated to the two "
                               "lexicographically least"] if truncated else ()))
    return SolveResult(count, sols, truncated, report)


def solve_m(k: KiteDiagram, cap: int = 1000) -> SolveResult:
    """All m: E -> D with m e1 = alpha, m e2 = gamma, d m = d gamma p2
    and c m = c alpha p1, in lexicographic order."""
    rep = check_hypotheses(k)
    if not rep.ok:
        raise HypothesisViolation(f"kite hypotheses fail: {rep.witness}")
    pins: dict[int, int] = {}
    for a in range(k.A):
        pins[k.e1.table[a]] = k.alpha.table[a]
    for x in range(k.C):
        i = k.e2.table[x]
        if i in pins and pins[i] != k.gamma.table[x]:
            return SolveResult(0, (), False, counted("kite-solve", 0))
        pins[i] = k.gamma.table[x]
    d_target = compose(k.d, compose(k.gamma, k.p2))
    c_target = compose(k.c, compose(k.alpha, k.p1))
    allowed: list[tuple[int, ...]] = []
    for ksi in range(k.E):
        fibre = tuple(w for w in range(k.D)
                      if k.d.table[w] == d_target.table[ksi]
                      and k.c.table[w] == c_target.table[ksi])
        if ksi in pins:
            fibre = (pins[ksi],) if pins[ksi] in fibre else ()
        allowed.append(fibre)
    return _count_and_enumerate(k.E, k.D, allowed, cap, "kite-solve")


def maltsev_mu(k: KpcResult, p: Callable[[int, int, int], int]) -> FinMap:
    """The multiplication mu(U, V) = p(U, diag(dom U), V), applied
    componentwise to triples, on the graph produced by a kernel pair
    construction.  p must behave as a Mal'tsev operation on the base
    and be compatible with the span legs, otherwise the produced table
    leaves the triple object and the construction is rejected."""
    c2 = composable_pairs(k.graph)
    t_index = {t: i for i, t in enumerate(k.triples)}
    table = []
    for (ui, vi) in c2.labels:
        U, V = k.triples[ui], k.triples[vi]
        m0 = k.dom.table[ui]
        w = tuple(p(U[j], m0, V[j]) for j in range(3))
        if w not in t_index:
            raise IllTyped(f"mu image {w} leaves the triple object")
        table.append(t_index[w])
    mu = FinMap(c2.size, k.size, tuple(table))
    _validate_multiplication(k, c2, mu)
    return mu


def _validate_multiplication(k: KpcResult, c2: C2Data, mu: FinMap) -> None:
    if compose(mu, c2.e1).table != identity(k.size).table:
        raise IllTyped("mu e1 != 1 on the triple object")
    if compose(mu, c2.e2).table != identity(k.size).table:
        raise IllTyped("mu e2 != 1 on the triple object")
    if compose(k.graph.d, mu).table != compose(k.graph.d, c2.pi2).table:
        raise IllTyped("dom mu != dom pi2")
    if compose(k.graph.c, mu).table != compose(k.graph.c, c2.pi1).table:
        raise IllTyped("cod mu != cod pi1")


def check_unital_multiplication(k: KpcResult, mu: FinMap) -> Report:
    c2 = composable_pairs(k.graph)
    if mu.dom != c2.size or mu.cod != k.size:
        raise DomainMismatch("mu must go C2 -> C1 of the constructed graph")
    try:
        _validate_multiplication(k, c2, mu)
    except IllTyped as exc:
        return fails("mu-check", {"equation": str(exc)})
    return holds("mu-check", ["mu is a unital multiplication"])


@dataclass(frozen=True)
class ThetaResult:
    kswap: KpcResult
    c2: C2Data
    theta: FinMap
    m: FinMap


def theta(k: KiteDiagram, mu: FinMap) -> ThetaResult:
    """The pairing <<alpha p1, alpha p1, beta>, <beta, gamma p2, gamma p2>>
    into composable pairs of triples over (D, c, d), and the canonical
    solution m = mid mu theta."""
    rep = check_hypotheses(k)
    if not rep.ok:
        raise HypothesisViolation(f"kite hypotheses fail: {rep.witness}")
    kswap = kpc_swapped(k.span)
    c2 = composable_pairs(kswap.graph)
    if mu.dom != c2.size or mu.cod != kswap.size:
        raise DomainMismatch("mu must be a multiplication on the swapped "
                             "kernel pair construction of (D, d, c)")
    _validate_multiplication(kswap, c2, mu)
    t_index = {t: i for i, t in enumerate(kswap.triples)}
    pair_index = {lab: i for i, lab in enumerate(c2.labels)}
    ap1 = compose(k.alpha, k.p1)
    gp2 = compose(k.gamma, k.p2)
    table = []
    for ksi in range(k.E):
        first = (ap1.table[ksi], ap1.table[ksi], k.beta.table[ksi])
        second = (k.beta.table[ksi], gp2.table[ksi], gp2.table[ksi])
        if first not in t_index:
            raise IllTyped(f"theta first component {first} is not a triple")
        if second not in t_index:
            raise IllTyped(f"theta second component {second} is not a triple")
        key = (t_index[first], t_index[second])
        if key not in pair_index:
            raise IllTyped(f"theta components are not composable at {ksi}")
        table.append(pair_index[key])
    th = FinMap(k.E, c2.size, tuple(table))
    m = compose(kswap.mid, compose(mu, th))
    return ThetaResult(kswap, c2, th, m)


@dataclass(frozen=True)
class DeltaResult:
    egraph: KpcResult
    c2: C2Data
    delta: FinMap


def delta(k: KiteDiagram) -> DeltaResult:
    """The pairing <<e1p1, e1p1, e1p1e2p2>, <e1p1e2p2, e2p2, e2p2>> into
    composable pairs of triples over (E, p2, p1)."""
    rep = check_hypotheses(k)
    if not rep.ok:
        raise HypothesisViolation(f"kite hypotheses fail: {rep.witness}")
    egraph = kpc_swapped(Span(k.p2, k.p1))
    c2 = composable_pairs(egraph.graph)
    t_index = {t: i for i, t in enumerate(egraph.triples)}
    pair_index = {lab: i for i, lab in enumerate(c2.labels)}
    e1p1 = compose(k.e1, k.p1)
    e2p2 = compose(k.e2, k.p2)
    mixed = compose(e1p1, e2p2)
    table = []
    for ksi in range(k.E):
        first = (e1p1.table[ksi], e1p1.table[ksi], mixed.table[ksi])
        second = (mixed.table[ksi], e2p2.table[ksi], e2p2.table[ksi])
        if first not in t_index or second not in t_index:
            raise IllTyped(f"delta components are not triples at {ksi}")
        key = (t_index[first], t_index[second])
        if key not in pair_index:
            raise IllTyped(f"delta components are not composable at {ksi}")
        table.append(pair_index[key])
    return DeltaResult(egraph, c2, FinMap(k.E, c2.size, tuple(table)))


def delta_identity_check(k: KiteDiagram, mu_e: FinMap) -> Report:
    """mid mu delta = 1_E, asserted through the two projection
    identities and combined via joint monicity of (p1, p2)."""
    dres = delta(k)
    _validate_multiplication(dres.egraph, dres.c2, mu_e)
    comp = compose(dres.egraph.mid, compose(mu_e, dres.delta))
    lhs1 = compose(k.p1, comp)
    if lhs1.table != k.p1.table:
        w = next(i for i in range(k.E) if lhs1.table[i] != k.p1.table[i])
        return fails("delta-check", {"equation": "p1 mid mu delta != p1",
                                     "element": w})
    lhs2 = compose(k.p2, comp)
    if lhs2.table != k.p2.table:
        w = next(i for i in range(k.E) if lhs2.table[i] != k.p2.table[i])
        return fails("delta-check", {"equation": "p2 mid mu delta != p2",
                                     "element": w})
    if not jointly_monic(k.p1, k.p2):
        return fails("delta-check", {"equation": "(p1, p2) not jointly monic"})
    if comp.table != identity(k.E).table:
        w = next(i for i in range(k.E) if comp.table[i] != i)
        return fails("delta-check", {"equation": "mid mu delta != 1_E",
                                     "element": w})
    return holds("delta-check",
                 ["p1 mid mu delta = p1", "p2 mid mu delta = p2",
                  "hence mid mu delta = 1_E by joint monicity"])


@dataclass(frozen=True)
class AdmissibilityKite:
    """The undirected kite of the weakly-Mal'tsev-object definition."""

    f: FinMap
    r: FinMap
    s: FinMap
    g: FinMap
    alpha: FinMap
    beta: FinMap
    gamma: FinMap

    def __post_init__(self):
        A, B, C = self.f.dom, self.f.cod, self.g.dom
        if (self.r.dom, self.r.cod) != (B, A) or (self.s.dom, self.s.cod) != (B, C):
            raise DomainMismatch("r and s must go B -> A and B -> C")
        if self.g.cod != B:
            raise DomainMismatch("g must land in B")
        if self.alpha.dom != A or self.beta.dom != B or self.gamma.dom != C:
            raise DomainMismatch("legs must start at A, B, C")
        if len({self.alpha.cod, self.beta.cod, self.gamma.cod}) != 1:
            raise DomainMismatch("legs must share their codomain D")
        if compose(self.f, self.r).table != identity(B).table:
            raise IllTyped("f r != 1_B")
        if compose(self.g, self.s).table != identity(B).table:
            raise IllTyped("g s != 1_B")
        if compose(self.alpha, self.r).table != self.beta.table:
            raise IllTyped("alpha r != beta")
        if compose(self.gamma, self.s).table != self.beta.table:
            raise IllTyped("gamma s != beta")

    @property
    def D(self) -> int:
        return self.alpha.cod


def admissibility_count(k: AdmissibilityKite, cap: int = 1000) -> SolveResult:
    """Count phi: A x_B C -> D with phi e1 = alpha and phi e2 = gamma."""
    lp = local_product(SplitCospan(k.f, k.r, k.g, k.s))
    pins: dict[int, int] = {}
    for a in range(k.f.dom):
        pins[lp.e1.table[a]] = k.alpha.table[a]
    for x in range(k.g.dom):
        i = lp.e2.table[x]
        if i in pins and pins[i] != k.gamma.table[x]:
            return SolveResult(0, (), False, counted("admissibility", 0))
        pins[i] = k.gamma.table[x]
    allowed = [(pins[i],) if i in pins else tuple(range(k.D))
               for i in range(lp.E)]
    return _count_and_enumerate(lp.E, k.D, allowed, cap, "admissibility")


@dataclass(frozen=True)
class WmCheck:
    report: Report
    witness: Optional[AdmissibilityKite]
    solutions: tuple[FinMap, ...]


def wm_object_check_finset(n: int) -> WmCheck:
    """Whether the n-element set is a weakly Mal'tsev object in finite
    sets: yes exactly for n <= 1.  For n >= 2 the returned witness kite
    (B a point, A = C = D = n, alpha = gamma = identity) is re-verified
    to carry at least two admissibility morphisms."""
    cmd = "wm-object"
    if n <= 1:
        return WmCheck(holds(cmd, [f"size {n}: every kite admits at most "
                                   "one admissibility morphism"]), None, ())
    one = identity(n)
    bang = FinMap(n, 1, (0,) * n)
    point = FinMap(1, n, (0,))
    kite = AdmissibilityKite(f=bang, r=point, s=point, g=bang,
                             alpha=one, beta=point, gamma=one)
    res = admissibility_count(kite, cap=2)
    sols = res.solutions[:2]
    verified = (res.count >= 2 and len(sols) == 2
                and all(_is_admissibility_solution(kite, phi) for phi in sols)
                and sols[0].table != sols[1].table)
    if not verified:
        raise IllTyped("witness kite failed re-verification")
    return WmCheck(Report(cmd, "fails",
                          witness={"kite": "B=1, A=C=D, alpha=gamma=identity",
                                   "size": n, "count": res.count},
                          details=(f"found {res.count} admissibility morphisms",),
                          count=res.count,
                          solutions=tuple(list(s.table) for s in sols)),
                   kite, sols)


def _is_admissibility_solution(k: AdmissibilityKite, phi: FinMap) -> bool:
    lp = local_product(SplitCospan(k.f, k.r, k.g, k.s))
    return (compose(phi, lp.e1).table == k.alpha.table
            and compose(phi, lp.e2).table == k.gamma.table)


def pregroupoid_solutions(span: Span, cap: int = 1000) -> SolveResult:
    """All pregroupoid structures on a span, by direct enumeration of
    p: D(d,c) -> D under the unit and domain/codomain laws."""
    k = kpc(span)
    pins: dict[int, int] = {}
    for i, (x, y, z) in enumerate(k.triples):
        if y == z:
            pins[i] = x
        if x == y:
            if i in pins and pins[i] != z:
                return SolveResult(0, (), False, counted("pregroupoid", 0))
            pins[i] = z
    allowed: list[tuple[int, ...]] = []
    for i, (x, y, z) in enumerate(k.triples):
        fibre = tuple(w for w in range(span.D)
                      if span.d.table[w] == span.d.table[z]
                      and span.c.table[w] == span.c.table[x])
        if i in pins:
            fibre = (pins[i],) if pins[i] in fibre else ()
        allowed.append(fibre)
    return _count_and_enumerate(k.size, span.D, allowed, cap, "pregroupoid")


def kite5_pairing(span: Span, cap: int = 1000) -> Report:
    """The paired solver for the kernel-pair kite: multiplications on
    the assembled kite correspond one-to-one with pregroupoid structures
    on the span, through the evident relabelling of the local product
    as the triple object."""
    from .internal import kite_from_span
    kd, lp = assemble_kite(kite_from_span(span))
    kite_res = solve_m(kd, cap=cap)
    pre_res = pregroupoid_solutions(span, cap=cap)
    if kite_res.count != pre_res.count:
        return fails("kite5-pairing", {"kite": kite_res.count,
                                       "pregroupoid": pre_res.count})
    if not kite_res.truncated and not pre_res.truncated:
        k = kpc(span)
        pf = {i: p for i, p in enumerate(k.pairs_first)}
        ps = {i: p for i, p in enumerate(k.pairs_second)}
        t_index = {t: i for i, t in enumerate(k.triples)}
        relabel = []
        for (ai, ci) in lp.element_labels:
            x, y = pf[ai]
            y2, z = ps[ci]
            relabel.append(t_index[(x, y, z)])
        kite_tables = sorted(tuple(sol.table[relabel.index(i)]
                                   for i in range(len(relabel)))
                             for sol in kite_res.solutions)
        pre_tables = sorted(sol.table for sol in pre_res.solutions)
        if kite_tables != pre_tables:
            return fails("kite5-pairing", {"mismatch": "solution sets differ"})
    return holds("kite5-pairing",
                 [f"{kite_res.count} multiplications correspond to "
                  f"{pre_res.count} pregroupoid structures"])
