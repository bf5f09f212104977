"""Pullbacks, kernel pairs, local products and their intrinsic checks.

Every constructed apex carries an explicit label table, ordered
lexicographically; equality of constructed objects is label-wise.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import CompatibilityViolation, DomainMismatch, InvalidSplitting
from .finmaps import (FinMap, compose, identity, jointly_monic,
                      pairing_is_injective)
from .report import Report, counted, fails, holds


@dataclass(frozen=True)
class Pullback:
    """Apex of f.dom x g.dom pairs (a, c) with f(a) = g(c), lex ordered."""

    labels: tuple[tuple[int, int], ...]
    p1: FinMap
    p2: FinMap

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, a: int, c: int) -> int:
        return self.labels.index((a, c))


def pullback(g: FinMap, f: FinMap) -> Pullback:
    """The pullback of g along f, for f: A -> B and g: C -> B."""
    if f.cod != g.cod:
        raise DomainMismatch(
            f"pullback needs a common codomain ({f.cod} vs {g.cod})")
    labels = tuple((a, c) for a in range(f.dom) for c in range(g.dom)
                   if f.table[a] == g.table[c])
    p1 = FinMap(len(labels), f.dom, tuple(a for a, _ in labels))
    p2 = FinMap(len(labels), g.dom, tuple(c for _, c in labels))
    return Pullback(labels, p1, p2)


@dataclass(frozen=True)
class SplitCospan:
    """f: A -> B with section r, and g: C -> B with section s."""

    f: FinMap
    r: FinMap
    g: FinMap
    s: FinMap

    def __post_init__(self):
        if self.f.cod != self.g.cod:
            raise DomainMismatch("f and g must share their codomain B")
        if self.r.dom != self.f.cod or self.r.cod != self.f.dom:
            raise DomainMismatch("r must go B -> A")
        if self.s.dom != self.g.cod or self.s.cod != self.g.dom:
            raise DomainMismatch("s must go B -> C")
        if compose(self.f, self.r).table != identity(self.f.cod).table:
            raise InvalidSplitting("f r is not the identity on B")
        if compose(self.g, self.s).table != identity(self.g.cod).table:
            raise InvalidSplitting("g s is not the identity on B")

    @property
    def A(self) -> int:
        return self.f.dom

    @property
    def B(self) -> int:
        return self.f.cod

    @property
    def C(self) -> int:
        return self.g.dom


@dataclass(frozen=True)
class LocalProduct:
    """The pullback of a split epi along a split epi with its injections."""

    E: int
    element_labels: tuple[tuple[int, int], ...]
    p1: FinMap
    p2: FinMap
    e1: FinMap
    e2: FinMap
    source: SplitCospan


def local_product(sc: SplitCospan) -> LocalProduct:
    pb = pullback(sc.g, sc.f)
    index = {lab: i for i, lab in enumerate(pb.labels)}
    sf = compose(sc.s, sc.f)
    rg = compose(sc.r, sc.g)
    e1 = FinMap(sc.A, pb.size, tuple(index[(a, sf.table[a])] for a in range(sc.A)))
    e2 = FinMap(sc.C, pb.size, tuple(index[(rg.table[c], c)] for c in range(sc.C)))
    return LocalProduct(pb.size, pb.labels, pb.p1, pb.p2, e1, e2, sc)


def kernel_pair(h: FinMap):
    """Pairs (x, y) with h(x) = h(y), projections, and the diagonal."""
    pb = pullback(h, h)
    index = {lab: i for i, lab in enumerate(pb.labels)}
    diag = FinMap(h.dom, pb.size, tuple(index[(y, y)] for y in range(h.dom)))
    return KernelPairData(pb.labels, pb.p1, pb.p2, diag)


@dataclass(frozen=True)
class KernelPairData:
    pairs: tuple[tuple[int, int], ...]
    p1: FinMap
    p2: FinMap
    diagonal: FinMap

    @property
    def size(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class IntrinsicCheck:
    report: Report
    cospan: Optional[SplitCospan]
    regenerated: Optional[LocalProduct]
    relabel: Optional[FinMap]


def check_local_product_intrinsic(p1: FinMap, p2: FinMap,
                                  e1: FinMap, e2: FinMap) -> IntrinsicCheck:
    """Decide whether (p1, p2, e1, e2) is a local product, intrinsically.

    Verifies the four conditions (identities on sections, commuting
    idempotents, joint monicity, and the one-point universal property,
    which suffices over finite sets), then rebuilds the split cospan
    from the pullback of e1 along e2 and certifies the round trip.
    """
    cmd = "lp-check"
    E, A, C = p1.dom, p1.cod, p2.cod
    if p2.dom != E or e1.dom != A or e1.cod != E or e2.dom != C or e2.cod != E:
        raise DomainMismatch("diagram maps are not type-compatible")
    details = []

    if compose(p1, e1).table != identity(A).table:
        a = next(x for x in range(A) if p1.table[e1.table[x]] != x)
        return IntrinsicCheck(fails(cmd, {"condition": 1, "element": a},
                                    ["p1 e1 != 1_A"]), None, None, None)
    if compose(p2, e2).table != identity(C).table:
        c = next(x for x in range(C) if p2.table[e2.table[x]] != x)
        return IntrinsicCheck(fails(cmd, {"condition": 1, "element": c},
                                    ["p2 e2 != 1_C"]), None, None, None)
    details.append("condition 1 holds: p1 e1 = 1_A, p2 e2 = 1_C")

    e1p1 = compose(e1, p1)
    e2p2 = compose(e2, p2)
    left = compose(e1p1, e2p2)
    right = compose(e2p2, e1p1)
    if left.table != right.table:
        x = next(i for i in range(E) if left.table[i] != right.table[i])
        return IntrinsicCheck(fails(cmd, {"condition": 2, "element": x},
                                    ["e1p1 e2p2 != e2p2 e1p1"]), None, None, None)
    details.append("condition 2 holds: the idempotents e1p1 and e2p2 commute")

    clash = pairing_is_injective(p1, p2)
    if clash is not None:
        return IntrinsicCheck(fails(cmd, {"condition": 3, "elements": list(clash)},
                                    ["(p1, p2) is not jointly monic"]), None, None, None)
    details.append("condition 3 holds: (p1, p2) jointly monic")

    # Condition 4 on one-point stages: each compatible pair (a, c) must be
    # hit by some element of E (uniqueness already follows from 3).
    hit = {(p1.table[x], p2.table[x]): x for x in range(E)}
    p1e2, p2e1 = compose(p1, e2), compose(p2, e1)
    p1e2p2e1 = compose(p1e2, p2e1)
    p2e1p1e2 = compose(p2e1, p1e2)
    for a in range(A):
        for c in range(C):
            if p1e2p2e1.table[a] == p1e2.table[c] and \
               p2e1.table[a] == p2e1p1e2.table[c]:
                if (a, c) not in hit:
                    return IntrinsicCheck(
                        fails(cmd, {"condition": 4, "pair": [a, c]},
                              ["a compatible pair is not reached by E"]),
                        None, None, None)
    details.append("condition 4 holds on one-point stages")

    # Reconstruction per the sufficiency argument: B is the pullback of the
    # split mono e1 along the split mono e2, f and g the displayed pairings.
    b_labels = tuple((a, c) for a in range(A) for c in range(C)
                     if e1.table[a] == e2.table[c])
    b_index = {lab: i for i, lab in enumerate(b_labels)}
    nB = len(b_labels)
    r = FinMap(nB, A, tuple(a for a, _ in b_labels))
    s = FinMap(nB, C, tuple(c for _, c in b_labels))
    f = FinMap(A, nB, tuple(b_index[(p1e2p2e1.table[a], p2e1.table[a])]
                            for a in range(A)))
    g = FinMap(C, nB, tuple(b_index[(p1e2.table[c], p2e1p1e2.table[c])]
                            for c in range(C)))
    cospan = SplitCospan(f, r, g, s)
    lp = local_product(cospan)

    # Certify that the rebuilt local product is the input up to the
    # canonical relabelling x -> (p1 x, p2 x).
    lp_index = {lab: i for i, lab in enumerate(lp.element_labels)}
    relabel_table = []
    for x in range(E):
        lab = (p1.table[x], p2.table[x])
        if lab not in lp_index:
            return IntrinsicCheck(fails(cmd, {"condition": "round-trip", "element": x},
                                        details), cospan, lp, None)
        relabel_table.append(lp_index[lab])
    relabel = FinMap(E, lp.E, tuple(relabel_table))
    round_trip = (
        lp.E == E
        and len(set(relabel.table)) == E
        and compose(lp.p1, relabel).table == p1.table
        and compose(lp.p2, relabel).table == p2.table
        and compose(relabel, e1).table == lp.e1.table
        and compose(relabel, e2).table == lp.e2.table
    )
    if not round_trip:
        return IntrinsicCheck(fails(cmd, {"condition": "round-trip"}, details),
                              cospan, lp, relabel)
    details.append("round trip: regenerated local product matches input")
    return IntrinsicCheck(holds(cmd, details), cospan, lp, relabel)


@dataclass(frozen=True)
class Pushout:
    """Pushout of a span of split monos, as labelled quotient classes."""

    size: int
    q1: FinMap
    q2: FinMap
    class_labels: tuple[tuple[str, int], ...]


def pushout_split_mono(r: FinMap, s: FinMap,
                       f: Optional[FinMap] = None,
                       g: Optional[FinMap] = None) -> Pushout:
    """Pushout of the span (B, r, s): disjoint union of A and C glued
    along r(b) ~ s(b).  Classes are labelled by their least representative,
    A-side first."""
    if r.dom != s.dom:
        raise DomainMismatch("r and s must share their domain B")
    if f is not None and compose(f, r).table != identity(r.dom).table:
        raise InvalidSplitting("r is not split by f")
    if g is not None and compose(g, s).table != identity(s.dom).table:
        raise InvalidSplitting("s is not split by g")
    nA, nC = r.cod, s.cod
    parent = list(range(nA + nC))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for b in range(r.dom):
        union(r.table[b], nA + s.table[b])
    roots = sorted({find(x) for x in range(nA + nC)})
    root_index = {root: i for i, root in enumerate(roots)}
    q1 = FinMap(nA, len(roots), tuple(root_index[find(a)] for a in range(nA)))
    q2 = FinMap(nC, len(roots), tuple(root_index[find(nA + c)] for c in range(nC)))
    labels = tuple(("A", root) if root < nA else ("C", root - nA) for root in roots)
    return Pushout(len(roots), q1, q2, labels)


def local_coproduct_compare(lp: LocalProduct) -> Report:
    """Whether the canonical map A +_B C -> A x_B C is a bijection."""
    po = pushout_split_mono(lp.source.r, lp.source.s, lp.source.f, lp.source.g)
    # class of a -> e1(a), class of c -> e2(c); well defined since e1 r = e2 s.
    target = [None] * po.size
    details = [f"pushout size {po.size}", f"local product size {lp.E}"]
    for a in range(lp.source.A):
        k = po.q1.table[a]
        v = lp.e1.table[a]
        if target[k] is not None and target[k] != v:
            return fails("pushout-compare", {"class": k}, details +
                         ["canonical map is not well defined"])
        target[k] = v
    for c in range(lp.source.C):
        k = po.q2.table[c]
        v = lp.e2.table[c]
        if target[k] is not None and target[k] != v:
            return fails("pushout-compare", {"class": k}, details +
                         ["canonical map is not well defined"])
        target[k] = v
    if len(set(target)) == po.size == lp.E:
        return holds("pushout-compare", details + ["comparison is a bijection"])
    witness = None
    missing = set(range(lp.E)) - set(target)
    if missing:
        witness = {"unreached": lp.element_labels[min(missing)]}
    return fails("pushout-compare", witness, details +
                 ["comparison is not a bijection"])


@dataclass(frozen=True)
class ExtremalResult:
    count: int
    solutions: tuple[FinMap, ...]
    report: Report


def extremal_instance_check(lp: LocalProduct, d: FinMap, c: FinMap,
                            alpha: FinMap, gamma: FinMap,
                            span_class: str = "M1") -> ExtremalResult:
    """Count maps m: E -> D with dm = d gamma p2, cm = c alpha p1,
    m e1 = alpha and m e2 = gamma, for a span (D, d, c).

    span_class "M1" demands (d, c) jointly monic; "M0" skips the check.
    In finite sets "M2" coincides with "M1" (every mono is strong).
    """
    if d.dom != c.dom:
        raise DomainMismatch("span legs must share their apex")
    if alpha.dom != lp.source.A or gamma.dom != lp.source.C:
        raise DomainMismatch("alpha and gamma must start at A and C")
    if alpha.cod != d.dom or gamma.cod != d.dom:
        raise DomainMismatch("alpha and gamma must land in the span apex")
    if span_class in ("M1", "M2") and not jointly_monic(d, c):
        raise CompatibilityViolation("span is not jointly monic (class M1)")
    elif span_class not in ("M0", "M1", "M2"):
        raise CompatibilityViolation(f"unknown span class {span_class!r}")

    # Compatibility: d alpha = d gamma p2 e1 and c gamma = c alpha p1 e2.
    lhs1 = compose(d, alpha)
    rhs1 = compose(d, compose(gamma, compose(lp.p2, lp.e1)))
    if lhs1.table != rhs1.table:
        a = next(i for i in range(alpha.dom) if lhs1.table[i] != rhs1.table[i])
        raise CompatibilityViolation(f"d alpha != d gamma p2 e1 at element {a}")
    lhs2 = compose(c, gamma)
    rhs2 = compose(c, compose(alpha, compose(lp.p1, lp.e2)))
    if lhs2.table != rhs2.table:
        x = next(i for i in range(gamma.dom) if lhs2.table[i] != rhs2.table[i])
        raise CompatibilityViolation(f"c gamma != c alpha p1 e2 at element {x}")

    d_target = compose(d, compose(gamma, lp.p2))
    c_target = compose(c, compose(alpha, lp.p1))
    pins: dict[int, int] = {}
    for a in range(alpha.dom):
        pins[lp.e1.table[a]] = alpha.table[a]
    for x in range(gamma.dom):
        ksi = lp.e2.table[x]
        if ksi in pins and pins[ksi] != gamma.table[x]:
            return ExtremalResult(0, (), counted("extremal", 0))
        pins[ksi] = gamma.table[x]

    allowed: list[tuple[int, ...]] = []
    for ksi in range(lp.E):
        fibre = tuple(w for w in range(d.dom)
                      if d.table[w] == d_target.table[ksi]
                      and c.table[w] == c_target.table[ksi])
        if ksi in pins:
            fibre = fibre if pins[ksi] in fibre else ()
            fibre = (pins[ksi],) if fibre else ()
        allowed.append(fibre)
    count = 1
    for fibre in allowed:
        count *= len(fibre)
    solutions: tuple[FinMap, ...] = ()
    if count:
        first = FinMap(lp.E, d.dom, tuple(f[0] for f in allowed))
        sols = [first]
        if count > 1:
            # second lexicographically-least solution: bump the last free slot
            table = [f[0] for f in allowed]
            for ksi in range(lp.E - 1, -1, -1):
                if len(allowed[ksi]) > 1:
                    table[ksi] = allowed[ksi][1]
                    break
            sols.append(FinMap(lp.E, d.dom, tuple(table)))
        solutions = tuple(sols)
    return ExtremalResult(count, solutions,
                          counted("extremal", count,
                                  [list(s.table) for s in solutions]))
