import random
from itertools import product

import pytest

from finkite.errors import HypothesisViolation, IllTyped
from finkite.finmaps import FinMap, compose, identity, maps
from finkite.gallery import (group_kite, group_kite_bundle, group_pair_maltsev,
                             group_pair_span, monoid_tables, one_object_umg,
                             preorder_graph_01, terminal_span_kite)
from finkite.internal import (Span, kite_from_cat, kite_from_rg,
                              kite_from_span, kite_from_umg, kpc_swapped,
                              umg_multiplications)
from finkite.kitecond import (AdmissibilityKite, KiteDiagram, admissibility_count,
                              assemble_kite, check_hypotheses, delta,
                              delta_identity_check, kite5_pairing, maltsev_mu,
                              pregroupoid_solutions, solve_m, theta,
                              wm_object_check_finset)
from finkite.limits import SplitCospan, local_product


def witness_kite_diagram(n):
    """The set-theoretic witness: B = 1, A = C = D = n, alpha = gamma = 1."""
    bang = FinMap(n, 1, (0,) * n)
    point = FinMap(1, n, (0,))
    lp = local_product(SplitCospan(bang, point, bang, point))
    beta = compose(FinMap(1, n, (0,)), compose(bang, lp.p1))
    return KiteDiagram(lp.p1, lp.p2, lp.e1, lp.e2,
                       identity(n), beta, identity(n),
                       FinMap(n, 1, (0,) * n), FinMap(n, 1, (0,) * n))


def test_check_hypotheses_on_assembled_local_product():
    kd = group_kite(2)
    rep = check_hypotheses(kd)
    assert rep.ok
    assert any("automatic" in d for d in rep.details)


def test_check_hypotheses_swapped_injections_fail():
    kd = witness_kite_diagram(2)
    swapped = KiteDiagram(kd.p1, kd.p2, kd.e2, kd.e1, kd.alpha, kd.beta,
                          kd.gamma, kd.d, kd.c)
    rep = check_hypotheses(swapped)
    assert not rep.ok
    assert rep.witness["condition"] == 1


def test_check_hypotheses_singleton():
    one = identity(1)
    kd = KiteDiagram(one, one, one, one, one, one, one, one, one)
    assert check_hypotheses(kd).ok


def test_solve_m_singleton_target():
    one = identity(1)
    kd = KiteDiagram(one, one, one, one, one, one, one, one, one)
    res = solve_m(kd)
    assert res.count == 1


def test_solve_m_witness_kite_two_solutions():
    kd = witness_kite_diagram(2)
    res = solve_m(kd)
    assert res.count == 2
    assert len(res.solutions) == 2
    assert res.solutions[0].table < res.solutions[1].table


def test_solve_m_requires_hypotheses():
    kd = witness_kite_diagram(2)
    bad = KiteDiagram(kd.p1, kd.p2, kd.e2, kd.e1, kd.alpha, kd.beta,
                      kd.gamma, kd.d, kd.c)
    with pytest.raises(HypothesisViolation):
        solve_m(bad)


def test_solve_m_kite3_z2_free_points():
    """The kite-condition diagram of the one-object groupoid Z_2 keeps
    two off-cross points free, so it has exactly 4 multiplications;
    the count is frozen from an independent brute-force oracle."""
    mg = one_object_umg(((0, 1), (1, 0)))
    kd, lp = assemble_kite(kite_from_cat(mg))
    res = solve_m(kd)
    # independent oracle: filter all maps E -> D by the four equations
    oracle = 0
    d_target = compose(kd.d, compose(kd.gamma, kd.p2))
    c_target = compose(kd.c, compose(kd.alpha, kd.p1))
    for cand in maps(kd.E, kd.D):
        if compose(cand, kd.e1).table != kd.alpha.table:
            continue
        if compose(cand, kd.e2).table != kd.gamma.table:
            continue
        if compose(kd.d, cand).table != d_target.table:
            continue
        if compose(kd.c, cand).table != c_target.table:
            continue
        oracle += 1
    assert res.count == oracle == 4


def test_solve_m_group_kite_unique():
    for n in (2, 3):
        res = solve_m(group_kite(n))
        assert res.count == 1


def test_solve_m_count_at_most_one_for_jointly_monic_spans():
    # kites assembled from reflexive relations have jointly monic
    # direction spans, hence at most one multiplication
    from finkite.internal import ReflexiveGraph
    for n in (1, 2, 3):
        diag = [(x, x) for x in range(n)]
        off = [(x, y) for x in range(n) for y in range(n) if x != y]
        for mask in range(1 << len(off)):
            pairs = sorted(diag + [off[i] for i in range(len(off))
                                   if mask >> i & 1])
            d = FinMap(len(pairs), n, tuple(a for a, _ in pairs))
            c = FinMap(len(pairs), n, tuple(b for _, b in pairs))
            e = FinMap(n, len(pairs), tuple(pairs.index((x, x))
                                            for x in range(n)))
            rg = ReflexiveGraph(d, c, e)
            kd, _ = assemble_kite(kite_from_rg(rg))
            assert solve_m(kd).count <= 1


def test_kite1_solutions_are_umg_structures():
    rg = preorder_graph_01()
    kd, lp = assemble_kite(kite_from_rg(rg))
    res = solve_m(kd)
    assert res.count == len(umg_multiplications(rg)) == 1


def test_kite5_pairing_on_spans():
    assert kite5_pairing(group_pair_span(2)).ok
    bang = FinMap(2, 1, (0, 0))
    assert kite5_pairing(Span(bang, bang)).ok
    assert kite5_pairing(Span(identity(3), identity(3))).ok


def test_kite5_pairing_random_spans():
    rng = random.Random(31337)
    for _ in range(30):
        n = rng.randint(0, 3)
        n0, n1 = rng.randint(1, 3), rng.randint(1, 3)
        span = Span(FinMap(n, n0, tuple(rng.randrange(n0) for _ in range(n))),
                    FinMap(n, n1, tuple(rng.randrange(n1) for _ in range(n))))
        assert kite5_pairing(span, cap=200).ok


def test_terminal_span_kite_contains_maltsev_solution():
    kd = terminal_span_kite(2)
    res = solve_m(kd)
    assert res.count == 4
    # recover the triple labelling to locate x - y + z among solutions
    from finkite.internal import kpc
    bang = FinMap(2, 1, (0, 0))
    k = kpc(Span(bang, bang))
    _, lp = assemble_kite(kite_from_span(Span(bang, bang)))
    trip = [(k.pairs_first[a], k.pairs_second[c]) for (a, c) in lp.element_labels]
    target = tuple((x - y + z) % 2 for ((x, y), (_, z)) in trip)
    assert any(sol.table == target for sol in res.solutions)


def test_theta_returns_the_unique_solution_on_group_kites():
    for n in (2, 3):
        kd, mu, mu_e = group_kite_bundle(n)
        res = solve_m(kd)
        assert res.count == 1
        th = theta(kd, mu)
        assert th.m.table == res.solutions[0].table


def test_theta_solution_satisfies_equations_on_terminal_kite():
    # even where the solution is not unique, mid mu theta is a solution
    n = 2
    bang = FinMap(n, 1, (0,) * n)
    span = Span(bang, bang)
    kd = terminal_span_kite(n)
    kswap = kpc_swapped(span)
    mu = maltsev_mu(kswap, lambda x, y, z: (x - y + z) % n)
    th = theta(kd, mu)
    sols = {s.table for s in solve_m(kd).solutions}
    assert th.m.table in sols


def test_delta_identity_on_group_kites():
    for n in (2, 3):
        kd, mu, mu_e = group_kite_bundle(n)
        rep = delta_identity_check(kd, mu_e)
        assert rep.ok


def test_theta_rejects_bad_mu():
    kd, mu, _ = group_kite_bundle(2)
    bad = FinMap(mu.dom, mu.cod, tuple(0 for _ in range(mu.dom)))
    with pytest.raises(IllTyped):
        theta(kd, bad)


def test_check_unital_multiplication():
    from finkite.kitecond import check_unital_multiplication
    kd, mu, _ = group_kite_bundle(2)
    kswap = kpc_swapped(kd.span)
    assert check_unital_multiplication(kswap, mu).ok
    bad = FinMap(mu.dom, mu.cod, (0,) * mu.dom)
    assert not check_unital_multiplication(kswap, bad).ok


def test_singleton_theta_delta_forced():
    one = identity(1)
    kd = KiteDiagram(one, one, one, one, one, one, one, one, one)
    kswap = kpc_swapped(Span(one, one))
    mu = maltsev_mu(kswap, lambda x, y, z: 0)
    th = theta(kd, mu)
    assert th.m.table == (0,)
    mu_e = maltsev_mu(kpc_swapped(Span(one, one)), lambda x, y, z: 0)
    assert delta_identity_check(kd, mu_e).ok


def test_admissibility_count_examples():
    one = identity(1)
    kite = AdmissibilityKite(one, one, one, one, one, one, one)
    assert admissibility_count(kite).count == 1


def test_admissibility_monotone_under_injection():
    # pushing a kite along an injective map of targets never lowers the
    # admissibility count
    rng = random.Random(2024)
    for n in (1, 2, 3):
        chk = wm_object_check_finset(n)
        if chk.witness is None:
            continue
        k = chk.witness
        base = admissibility_count(k, cap=4000).count
        for extra in (1, 2):
            npp = n + extra
            inj = FinMap(n, npp, tuple(range(n)))
            pushed = AdmissibilityKite(k.f, k.r, k.s, k.g,
                                       compose(inj, k.alpha),
                                       compose(inj, k.beta),
                                       compose(inj, k.gamma))
            assert admissibility_count(pushed, cap=4000).count >= base


def test_wm_object_check():
    assert wm_object_check_finset(0).report.ok
    assert wm_object_check_finset(1).report.ok
    for n in range(2, 7):
        chk = wm_object_check_finset(n)
        assert not chk.report.ok
        assert chk.report.count >= 2
        assert len(chk.solutions) == 2
        assert chk.solutions[0].table != chk.solutions[1].table


def test_wm_witness_count_is_exact():
    chk = wm_object_check_finset(2)
    assert admissibility_count(chk.witness).count == 2


def test_solve_m_truncation_cap():
    kd = witness_kite_diagram(4)  # count = 4 ** 9
    res = solve_m(kd, cap=10)
    assert res.count == 4 ** 9
    assert res.truncated and len(res.solutions) == 2
    assert res.solutions[0].table < res.solutions[1].table
