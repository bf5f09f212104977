"""Internal categorical structures over finite sets as validated data.

Reflexive graphs, (unital) multiplicative graphs, categories, groupoids,
pregroupoids and directed kites, plus the kernel pair construction that
turns a span into a reflexive graph on triples.  Violated equations are
verdicts, never exceptions; only malformed shapes raise.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainMismatch, IllTyped, NonCommutingSquare
from .finmaps import FinMap, compose, identity
from .limits import SplitCospan, kernel_pair, local_product
from .report import Report, fails, holds


@dataclass(frozen=True)
class Span:
    """Two legs d: D -> D0 and c: D -> D1 out of a common apex."""

    d: FinMap
    c: FinMap

    def __post_init__(self):
        if self.d.dom != self.c.dom:
            raise DomainMismatch("span legs must share their apex")

    @property
    def D(self) -> int:
        return self.d.dom

    @property
    def D0(self) -> int:
        return self.d.cod

    @property
    def D1(self) -> int:
        return self.c.cod


@dataclass(frozen=True)
class ReflexiveGraph:
    d: FinMap
    c: FinMap
    e: FinMap

    def __post_init__(self):
        if self.c.dom != self.d.dom or self.c.cod != self.d.cod:
            raise DomainMismatch("d and c must be parallel")
        if self.e.dom != self.d.cod or self.e.cod != self.d.dom:
            raise DomainMismatch("e must go C0 -> C1")

    @property
    def C1(self) -> int:
        return self.d.dom

    @property
    def C0(self) -> int:
        return self.d.cod

    @property
    def span(self) -> Span:
        return Span(self.d, self.c)


def validate_reflexive_graph(rg: ReflexiveGraph) -> Report:
    de = compose(rg.d, rg.e)
    for y in range(rg.C0):
        if de.table[y] != y:
            return fails("validate", {"equation": "d e = 1", "element": y})
    ce = compose(rg.c, rg.e)
    for y in range(rg.C0):
        if ce.table[y] != y:
            return fails("validate", {"equation": "c e = 1", "element": y})
    return holds("validate", ["d e = 1 and c e = 1"])


def validate_span(span: Span) -> Report:
    # No equations beyond typing; kernel pairs always exist in finite sets.
    return holds("validate", ["span is well typed; kernel pairs exist"])


@dataclass(frozen=True)
class C2Data:
    """The canonical object of composable pairs of a reflexive graph."""

    labels: tuple[tuple[int, int], ...]
    pi1: FinMap
    pi2: FinMap
    e1: FinMap
    e2: FinMap

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, x: int, y: int) -> int:
        return self.labels.index((x, y))


def composable_pairs(rg: ReflexiveGraph) -> C2Data:
    """Pairs (x, y) with d(x) = c(y), lex ordered, with projections and
    the induced injections e1 = <1, ed> and e2 = <ec, 1>.  The induced
    injections only exist when d e = 1 = c e, so a non-reflexive graph
    is rejected here."""
    labels = tuple((x, y) for x in range(rg.C1) for y in range(rg.C1)
                   if rg.d.table[x] == rg.c.table[y])
    index = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    pi1 = FinMap(n, rg.C1, tuple(x for x, _ in labels))
    pi2 = FinMap(n, rg.C1, tuple(y for _, y in labels))
    ed = compose(rg.e, rg.d)
    ec = compose(rg.e, rg.c)
    try:
        e1 = FinMap(rg.C1, n, tuple(index[(x, ed.table[x])]
                                    for x in range(rg.C1)))
        e2 = FinMap(rg.C1, n, tuple(index[(ec.table[y], y)]
                                    for y in range(rg.C1)))
    except KeyError as exc:
        raise IllTyped("graph is not reflexive: the canonical injections "
                       f"into the composable pairs miss at {exc}") from None
    return C2Data(labels, pi1, pi2, e1, e2)


def composable_triples(rg: ReflexiveGraph) -> tuple[tuple[int, int, int], ...]:
    return tuple((x, y, z)
                 for x in range(rg.C1) for y in range(rg.C1)
                 if rg.d.table[x] == rg.c.table[y]
                 for z in range(rg.C1)
                 if rg.d.table[y] == rg.c.table[z])


@dataclass(frozen=True)
class MultiplicativeGraph:
    rg: ReflexiveGraph
    m: FinMap
    c2: C2Data = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        c2 = composable_pairs(self.rg)
        if self.m.dom != c2.size or self.m.cod != self.rg.C1:
            raise DomainMismatch("m must go C2 -> C1 for the canonical C2")
        object.__setattr__(self, "c2", c2)


def validate_multiplicative_graph(mg: MultiplicativeGraph) -> Report:
    rep = validate_reflexive_graph(mg.rg)
    if not rep.ok:
        return rep
    dm = compose(mg.rg.d, mg.m)
    dpi2 = compose(mg.rg.d, mg.c2.pi2)
    for i in range(mg.c2.size):
        if dm.table[i] != dpi2.table[i]:
            return fails("validate", {"equation": "d m = d pi2",
                                      "element": list(mg.c2.labels[i])})
    cm = compose(mg.rg.c, mg.m)
    cpi1 = compose(mg.rg.c, mg.c2.pi1)
    for i in range(mg.c2.size):
        if cm.table[i] != cpi1.table[i]:
            return fails("validate", {"equation": "c m = c pi1",
                                      "element": list(mg.c2.labels[i])})
    return holds("validate", ["multiplicative graph equations hold"])


def validate_unital_multiplicative_graph(mg: MultiplicativeGraph) -> Report:
    rep = validate_multiplicative_graph(mg)
    if not rep.ok:
        return rep
    me1 = compose(mg.m, mg.c2.e1)
    for x in range(mg.rg.C1):
        if me1.table[x] != x:
            return fails("validate", {"equation": "m e1 = 1", "element": x})
    me2 = compose(mg.m, mg.c2.e2)
    for x in range(mg.rg.C1):
        if me2.table[x] != x:
            return fails("validate", {"equation": "m e2 = 1", "element": x})
    return holds("validate", ["unital multiplicative graph equations hold"])


def validate_category(mg: MultiplicativeGraph) -> Report:
    rep = validate_unital_multiplicative_graph(mg)
    if not rep.ok:
        return rep
    index = {lab: i for i, lab in enumerate(mg.c2.labels)}
    m = mg.m.table
    for (x, y, z) in composable_triples(mg.rg):
        left = m[index[(x, m[index[(y, z)]])]]
        right = m[index[(m[index[(x, y)]], z)]]
        if left != right:
            return fails("validate", {"equation": "m(1 x m) = m(m x 1)",
                                      "element": [x, y, z]})
    return holds("validate", ["associativity holds on composable triples"])


def validate_groupoid(mg: MultiplicativeGraph) -> Report:
    """A category is a groupoid iff the comparison <m, pi2> from C2 to
    the kernel pair of d is a bijection (the relevant square is then a
    pullback)."""
    rep = validate_category(mg)
    if not rep.ok:
        return rep
    kp = kernel_pair(mg.rg.d)
    kp_index = {lab: i for i, lab in enumerate(kp.pairs)}
    seen: dict[int, tuple[int, int]] = {}
    for i, (x, y) in enumerate(mg.c2.labels):
        key = kp_index[(mg.m.table[i], y)]
        if key in seen:
            return fails("validate", {"equation": "<m, pi2> is not injective",
                                      "element": [list(seen[key]), [x, y]]})
        seen[key] = (x, y)
    if len(seen) != kp.size:
        miss = next(i for i in range(kp.size) if i not in seen)
        return fails("validate", {"equation": "<m, pi2> is not surjective",
                                  "element": list(kp.pairs[miss])})
    return holds("validate", ["<m, pi2> is a bijection onto the kernel pair of d"])


@dataclass(frozen=True)
class KpcResult:
    """The kernel pair construction applied to a span.

    Triples (x, y, z) with first(x) = first(y) and second(y) = second(z),
    lex ordered.  For the plain construction first = d and second = c and
    the graph maps are dom = x, cod = z; for the swapped construction
    first = c, second = d and the graph maps are dom = z, cod = x.
    """

    span: Span
    swapped: bool
    triples: tuple[tuple[int, int, int], ...]
    pairs_first: tuple[tuple[int, int], ...]
    pairs_second: tuple[tuple[int, int], ...]
    d1: FinMap
    d2: FinMap
    c1: FinMap
    c2: FinMap
    p1: FinMap
    p2: FinMap
    e1: FinMap
    e2: FinMap
    dom: FinMap
    mid: FinMap
    cod: FinMap
    delta: FinMap
    graph: ReflexiveGraph

    @property
    def size(self) -> int:
        return len(self.triples)

    def triple_index(self, t: tuple[int, int, int]) -> int:
        return self.triples.index(t)


def _kpc_generic(span: Span, first: FinMap, second: FinMap, swapped: bool) -> KpcResult:
    D = span.D
    pairs_first = tuple((x, y) for x in range(D) for y in range(D)
                        if first.table[x] == first.table[y])
    pairs_second = tuple((y, z) for y in range(D) for z in range(D)
                         if second.table[y] == second.table[z])
    pf_index = {p: i for i, p in enumerate(pairs_first)}
    ps_index = {p: i for i, p in enumerate(pairs_second)}
    triples = tuple((x, y, z)
                    for x in range(D) for y in range(D)
                    if first.table[x] == first.table[y]
                    for z in range(D)
                    if second.table[y] == second.table[z])
    t_index = {t: i for i, t in enumerate(triples)}
    n = len(triples)
    d1 = FinMap(len(pairs_first), D, tuple(x for x, _ in pairs_first))
    d2 = FinMap(len(pairs_first), D, tuple(y for _, y in pairs_first))
    c1 = FinMap(len(pairs_second), D, tuple(y for y, _ in pairs_second))
    c2 = FinMap(len(pairs_second), D, tuple(z for _, z in pairs_second))
    p1 = FinMap(n, len(pairs_first), tuple(pf_index[(x, y)] for x, y, _ in triples))
    p2 = FinMap(n, len(pairs_second), tuple(ps_index[(y, z)] for _, y, z in triples))
    e1 = FinMap(len(pairs_first), n,
                tuple(t_index[(x, y, y)] for x, y in pairs_first))
    e2 = FinMap(len(pairs_second), n,
                tuple(t_index[(y, y, z)] for y, z in pairs_second))
    proj_x = FinMap(n, D, tuple(x for x, _, _ in triples))
    proj_y = FinMap(n, D, tuple(y for _, y, _ in triples))
    proj_z = FinMap(n, D, tuple(z for _, _, z in triples))
    delta = FinMap(D, n, tuple(t_index[(w, w, w)] for w in range(D)))
    dom, cod = (proj_z, proj_x) if swapped else (proj_x, proj_z)
    graph = ReflexiveGraph(dom, cod, delta)
    return KpcResult(span, swapped, triples, pairs_first, pairs_second,
                     d1, d2, c1, c2, p1, p2, e1, e2, dom, proj_y, cod,
                     delta, graph)


def kpc(span: Span) -> KpcResult:
    """The kernel pair construction K(D, d, c)."""
    return _kpc_generic(span, span.d, span.c, swapped=False)


def kpc_swapped(span: Span) -> KpcResult:
    """K(D, c, d): roles of d and c interchanged, dom<x,y,z> = z."""
    return _kpc_generic(span, span.c, span.d, swapped=True)


@dataclass(frozen=True)
class Pregroupoid:
    """A span plus p on its triple object from the kernel pair construction."""

    span: Span
    p: FinMap
    k: KpcResult = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        k = kpc(self.span)
        if self.p.dom != k.size or self.p.cod != self.span.D:
            raise DomainMismatch("p must go D(d,c) -> D for the canonical triples")
        object.__setattr__(self, "k", k)


def validate_pregroupoid(pg: Pregroupoid) -> Report:
    k, p, span = pg.k, pg.p, pg.span
    for i, (x, y, z) in enumerate(k.triples):
        if y == z and p.table[i] != x:
            return fails("validate", {"equation": "p(x,y,y) = x",
                                      "element": [x, y, z]})
        if x == y and p.table[i] != z:
            return fails("validate", {"equation": "p(y,y,z) = z",
                                      "element": [x, y, z]})
    for i, (x, y, z) in enumerate(k.triples):
        if span.d.table[p.table[i]] != span.d.table[z]:
            return fails("validate", {"equation": "d p(x,y,z) = d(z)",
                                      "element": [x, y, z]})
        if span.c.table[p.table[i]] != span.c.table[x]:
            return fails("validate", {"equation": "c p(x,y,z) = c(x)",
                                      "element": [x, y, z]})
    return holds("validate", ["pregroupoid equations hold"])


def pregroupoid_associative(pg: Pregroupoid) -> Report:
    """p(p(x,y,z),u,v) = p(x,y,p(z,u,v)) over all admissible quintuples."""
    rep = validate_pregroupoid(pg)
    if not rep.ok:
        return rep
    span, k, p = pg.span, pg.k, pg.p.table
    t_index = {t: i for i, t in enumerate(k.triples)}
    D = span.D
    d, c = span.d.table, span.c.table
    for (x, y, z) in k.triples:
        for u in range(D):
            if d[z] != d[u]:
                continue
            for v in range(D):
                if c[u] != c[v]:
                    continue
                left = p[t_index[(p[t_index[(x, y, z)]], u, v)]]
                right = p[t_index[(x, y, p[t_index[(z, u, v)]])]]
                if left != right:
                    return fails("validate",
                                 {"equation": "p(p(x,y,z),u,v) = p(x,y,p(z,u,v))",
                                  "element": [x, y, z, u, v]})
    return holds("validate", ["pregroupoid is associative"])


@dataclass(frozen=True)
class DirectedKite:
    """A split cospan with three legs into D, directed by a span on D."""

    f: FinMap
    r: FinMap
    s: FinMap
    g: FinMap
    alpha: FinMap
    beta: FinMap
    gamma: FinMap
    d: FinMap
    c: FinMap

    def __post_init__(self):
        A, B, C = self.f.dom, self.f.cod, self.g.dom
        D = self.alpha.cod
        if (self.r.dom, self.r.cod) != (B, A):
            raise DomainMismatch("r must go B -> A")
        if (self.s.dom, self.s.cod) != (B, C):
            raise DomainMismatch("s must go B -> C")
        if self.g.cod != B:
            raise DomainMismatch("g must land in B")
        if self.alpha.dom != A or self.beta.dom != B or self.gamma.dom != C:
            raise DomainMismatch("alpha, beta, gamma must start at A, B, C")
        if self.beta.cod != D or self.gamma.cod != D:
            raise DomainMismatch("alpha, beta, gamma must share a codomain D")
        if self.d.dom != D or self.c.dom != D:
            raise DomainMismatch("the direction span must start at D")

    @property
    def span(self) -> Span:
        return Span(self.d, self.c)


def validate_directed_kite(dk: DirectedKite) -> Report:
    checks = (
        ("f r = 1_B", compose(dk.f, dk.r), identity(dk.f.cod)),
        ("g s = 1_B", compose(dk.g, dk.s), identity(dk.g.cod)),
        ("alpha r = beta", compose(dk.alpha, dk.r), dk.beta),
        ("gamma s = beta", compose(dk.gamma, dk.s), dk.beta),
        ("d alpha = d beta f", compose(dk.d, dk.alpha),
         compose(dk.d, compose(dk.beta, dk.f))),
        ("c beta g = c gamma", compose(dk.c, compose(dk.beta, dk.g)),
         compose(dk.c, dk.gamma)),
    )
    for name, lhs, rhs in checks:
        if lhs.table != rhs.table:
            w = next(i for i in range(lhs.dom) if lhs.table[i] != rhs.table[i])
            return fails("validate", {"equation": name, "element": w})
    return holds("validate", ["directed kite equations hold"])


def kite_from_rg(rg: ReflexiveGraph) -> DirectedKite:
    """Multiplications on this kite are the unital multiplicative
    structures on the graph."""
    rep = validate_reflexive_graph(rg)
    if not rep.ok:
        raise IllTyped(f"invalid reflexive graph: {rep.witness}")
    one = identity(rg.C1)
    return DirectedKite(f=rg.d, r=rg.e, s=rg.e, g=rg.c,
                        alpha=one, beta=rg.e, gamma=one, d=rg.d, c=rg.c)


def kite_from_umg(mg: MultiplicativeGraph) -> DirectedKite:
    rep = validate_unital_multiplicative_graph(mg)
    if not rep.ok:
        raise IllTyped(f"invalid unital multiplicative graph: {rep.witness}")
    return DirectedKite(f=mg.c2.pi2, r=mg.c2.e2, s=mg.c2.e1, g=mg.c2.pi1,
                        alpha=mg.m, beta=identity(mg.rg.C1), gamma=mg.m,
                        d=mg.rg.d, c=mg.rg.c)


def kite_from_cat(mg: MultiplicativeGraph) -> DirectedKite:
    rep = validate_category(mg)
    if not rep.ok:
        raise IllTyped(f"invalid internal category: {rep.witness}")
    return DirectedKite(f=mg.m, r=mg.c2.e2, s=mg.c2.e1, g=mg.m,
                        alpha=mg.c2.pi2, beta=identity(mg.rg.C1), gamma=mg.c2.pi1,
                        d=mg.rg.d, c=mg.rg.c)


@dataclass(frozen=True)
class RGMorphism:
    src: ReflexiveGraph
    dst: ReflexiveGraph
    f1: FinMap
    f0: FinMap

    def __post_init__(self):
        if self.f1.dom != self.src.C1 or self.f1.cod != self.dst.C1:
            raise DomainMismatch("f1 must go C1 -> C1'")
        if self.f0.dom != self.src.C0 or self.f0.cod != self.dst.C0:
            raise DomainMismatch("f0 must go C0 -> C0'")


def validate_rg_morphism(h: RGMorphism) -> Report:
    checks = (
        ("d' f1 = f0 d", compose(h.dst.d, h.f1), compose(h.f0, h.src.d)),
        ("c' f1 = f0 c", compose(h.dst.c, h.f1), compose(h.f0, h.src.c)),
        ("f1 e = e' f0", compose(h.f1, h.src.e), compose(h.dst.e, h.f0)),
    )
    for name, lhs, rhs in checks:
        if lhs.table != rhs.table:
            w = next(i for i in range(lhs.dom) if lhs.table[i] != rhs.table[i])
            return fails("validate", {"equation": name, "element": w})
    return holds("validate", ["reflexive graph morphism squares commute"])


def kite_from_rg_morphism(h: RGMorphism) -> DirectedKite:
    rep = validate_rg_morphism(h)
    if not rep.ok:
        raise IllTyped(f"invalid graph morphism: {rep.witness}")
    rg, rg2 = h.src, h.dst
    return DirectedKite(f=rg.d, r=rg.e, s=rg.e, g=rg.c,
                        alpha=h.f1, beta=compose(rg2.e, h.f0), gamma=h.f1,
                        d=rg2.d, c=rg2.c)


def kite_from_span(span: Span) -> DirectedKite:
    """The kernel pair construction as a directed kite; its
    multiplications correspond to pregroupoid structures on the span."""
    k = kpc(span)
    pf_index = {p: i for i, p in enumerate(k.pairs_first)}
    ps_index = {p: i for i, p in enumerate(k.pairs_second)}
    r = FinMap(span.D, len(k.pairs_first),
               tuple(pf_index[(y, y)] for y in range(span.D)))
    s = FinMap(span.D, len(k.pairs_second),
               tuple(ps_index[(y, y)] for y in range(span.D)))
    return DirectedKite(f=k.d2, r=r, s=s, g=k.c1,
                        alpha=k.d1, beta=identity(span.D), gamma=k.c2,
                        d=span.d, c=span.c)


@dataclass(frozen=True)
class DirectedKiteMorphism:
    """Component maps between two directed kites; every named square of
    the combined diagram is required to commute."""

    src: DirectedKite
    dst: DirectedKite
    hA: FinMap
    hB: FinMap
    hC: FinMap
    hD: FinMap
    h0: FinMap
    h1: FinMap


def validate_kite_morphism(h: DirectedKiteMorphism) -> Report:
    k, k2 = h.src, h.dst
    squares = (
        ("f' hA = hB f", compose(k2.f, h.hA), compose(h.hB, k.f)),
        ("r' hB = hA r", compose(k2.r, h.hB), compose(h.hA, k.r)),
        ("s' hB = hC s", compose(k2.s, h.hB), compose(h.hC, k.s)),
        ("g' hC = hB g", compose(k2.g, h.hC), compose(h.hB, k.g)),
        ("alpha' hA = hD alpha", compose(k2.alpha, h.hA), compose(h.hD, k.alpha)),
        ("beta' hB = hD beta", compose(k2.beta, h.hB), compose(h.hD, k.beta)),
        ("gamma' hC = hD gamma", compose(k2.gamma, h.hC), compose(h.hD, k.gamma)),
        ("d' hD = h0 d", compose(k2.d, h.hD), compose(h.h0, k.d)),
        ("c' hD = h1 c", compose(k2.c, h.hD), compose(h.h1, k.c)),
    )
    for name, lhs, rhs in squares:
        if lhs.table != rhs.table:
            w = next(i for i in range(lhs.dom) if lhs.table[i] != rhs.table[i])
            return fails("validate", {"square": name, "element": w})
    return holds("validate", ["all nine named squares commute"])


def induced_kite(h: DirectedKiteMorphism) -> DirectedKite:
    """The composite kite: the source cospan with legs pushed into D'."""
    rep = validate_kite_morphism(h)
    if not rep.ok:
        raise NonCommutingSquare(str(rep.witness))
    k, k2 = h.src, h.dst
    return DirectedKite(f=k.f, r=k.r, s=k.s, g=k.g,
                        alpha=compose(h.hD, k.alpha),
                        beta=compose(h.hD, k.beta),
                        gamma=compose(h.hD, k.gamma),
                        d=k2.d, c=k2.c)


def compat_check(h: DirectedKiteMorphism, m: FinMap, m2: FinMap) -> Report:
    """Whether hD m = m' (hA x_hB hC) on the induced pullback map."""
    rep = validate_kite_morphism(h)
    if not rep.ok:
        raise NonCommutingSquare(str(rep.witness))
    lp = local_product(SplitCospan(h.src.f, h.src.r, h.src.g, h.src.s))
    lp2 = local_product(SplitCospan(h.dst.f, h.dst.r, h.dst.g, h.dst.s))
    if m.dom != lp.E or m.cod != h.src.alpha.cod:
        raise DomainMismatch("m must go A x_B C -> D")
    if m2.dom != lp2.E or m2.cod != h.dst.alpha.cod:
        raise DomainMismatch("m' must go A' x_B' C' -> D'")
    index2 = {lab: i for i, lab in enumerate(lp2.element_labels)}
    induced = FinMap(lp.E, lp2.E,
                     tuple(index2[(h.hA.table[a], h.hC.table[c])]
                           for (a, c) in lp.element_labels))
    lhs = compose(h.hD, m)
    rhs = compose(m2, induced)
    if lhs.table != rhs.table:
        w = next(i for i in range(lp.E) if lhs.table[i] != rhs.table[i])
        return fails("compat", {"element": list(lp.element_labels[w])})
    return holds("compat", ["hD m = m' (hA x_hB hC)"])


def umg_multiplications(rg: ReflexiveGraph) -> list[FinMap]:
    """All unital multiplicative structures on a reflexive graph, in
    lexicographic table order (brute force; small graphs only)."""
    c2 = composable_pairs(rg)
    pins: dict[int, int] = {}
    for x in range(rg.C1):
        pins[c2.e1.table[x]] = x
    for x in range(rg.C1):
        i = c2.e2.table[x]
        if pins.get(i, x) != x:
            return []
        pins[i] = x
    allowed = []
    for i, (x, y) in enumerate(c2.labels):
        if i in pins:
            w = pins[i]
            ok = (rg.d.table[w] == rg.d.table[y] and rg.c.table[w] == rg.c.table[x])
            allowed.append((w,) if ok else ())
        else:
            allowed.append(tuple(w for w in range(rg.C1)
                                 if rg.d.table[w] == rg.d.table[y]
                                 and rg.c.table[w] == rg.c.table[x]))
    out: list[FinMap] = []
    from itertools import product
    if any(len(a) == 0 for a in allowed):
        return []
    for tab in product(*allowed):
        out.append(FinMap(c2.size, rg.C1, tab))
    return out
