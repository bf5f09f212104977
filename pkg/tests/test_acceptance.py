"""Acceptance suite: one test per criterion, each printing a pass/fail
line with its runtime and asserting at the stated tolerance."""
import json
import random
import time
from itertools import product
from pathlib import Path

from finkite import algebra as alg
from finkite import gallery
from finkite.finmaps import FinMap, ismember, ismember_pullback
from finkite.gallery import (chain_lattice, cyclic_group, cyclic_magma,
                             group_kite_bundle, klein_four, m3_dimagma,
                             m3_lattice, meet_semilattice2, n5_lattice,
                             two_by_two_lattice, two_element_set_algebra)
from finkite.internal import Span, kite_from_cat, kite_from_umg, kpc
from finkite.kitecond import (assemble_kite, delta_identity_check, solve_m,
                              theta, wm_object_check_finset)
from finkite.limits import (SplitCospan, check_local_product_intrinsic,
                            local_product, pullback)
from finkite.schemas import load_variety_kite

ASSETS = Path(__file__).parent / "assets"


def _line(num, ok, desc, dt):
    status = "PASS" if ok else "FAIL"
    print(f"acceptance criterion {num:2}: {status}  {desc}  [{dt:.2f}s]")


def _random_split_cospan(rng, max_size=5):
    b = rng.randint(1, max_size)
    a = rng.randint(b, max_size)
    c = rng.randint(b, max_size)
    r_img = rng.sample(range(a), b)
    f_table = [rng.randrange(b) for _ in range(a)]
    for i, x in enumerate(r_img):
        f_table[x] = i
    s_img = rng.sample(range(c), b)
    g_table = [rng.randrange(b) for _ in range(c)]
    for i, x in enumerate(s_img):
        g_table[x] = i
    return SplitCospan(FinMap(a, b, tuple(f_table)), FinMap(b, a, tuple(r_img)),
                       FinMap(c, b, tuple(g_table)), FinMap(b, c, tuple(s_img)))


def test_criterion_01_local_product_round_trip():
    start = time.perf_counter()
    rng = random.Random(10801)
    ok = True
    for _ in range(200):
        sc = _random_split_cospan(rng)
        lp = local_product(sc)
        res = check_local_product_intrinsic(lp.p1, lp.p2, lp.e1, lp.e2)
        same = (res.report.ok
                and res.regenerated.element_labels == lp.element_labels
                and res.regenerated.p1.table == lp.p1.table
                and res.regenerated.p2.table == lp.p2.table
                and res.regenerated.e1.table == lp.e1.table
                and res.regenerated.e2.table == lp.e2.table)
        ok = ok and same
    dt = time.perf_counter() - start
    _line(1, ok and dt < 10, "intrinsic check and round trip on 200 random "
          "split cospans", dt)
    assert ok
    assert dt < 10


def test_criterion_02_kernel_pair_construction_formulas():
    start = time.perf_counter()
    rng = random.Random(20802)
    ok = True
    for _ in range(100):
        n = rng.randint(0, 5)
        n0, n1 = rng.randint(1, 5), rng.randint(1, 5)
        span = Span(FinMap(n, n0, tuple(rng.randrange(n0) for _ in range(n))),
                    FinMap(n, n1, tuple(rng.randrange(n1) for _ in range(n))))
        k = kpc(span)
        for i, (x, y) in enumerate(k.pairs_first):
            ok &= k.d1.table[i] == x and k.d2.table[i] == y
            ok &= k.triples[k.e1.table[i]] == (x, y, y)
        for i, (y, z) in enumerate(k.pairs_second):
            ok &= k.c1.table[i] == y and k.c2.table[i] == z
            ok &= k.triples[k.e2.table[i]] == (y, y, z)
        for i, (x, y, z) in enumerate(k.triples):
            ok &= k.pairs_first[k.p1.table[i]] == (x, y)
            ok &= k.pairs_second[k.p2.table[i]] == (y, z)
        for w in range(span.D):
            ok &= k.triples[k.delta.table[w]] == (w, w, w)
    dt = time.perf_counter() - start
    _line(2, ok and dt < 5, "nine set formulas of the kernel pair "
          "construction on 100 random spans", dt)
    assert ok
    assert dt < 5


def test_criterion_03_weakly_maltsev_sets():
    start = time.perf_counter()
    ok = wm_object_check_finset(0).report.ok
    ok &= wm_object_check_finset(1).report.ok
    for n in range(2, 7):
        chk = wm_object_check_finset(n)
        ok &= (not chk.report.ok and chk.report.count >= 2
               and len(chk.solutions) == 2
               and chk.solutions[0].table != chk.solutions[1].table)
    dt = time.perf_counter() - start
    _line(3, ok and dt < 5, "weakly Mal'tsev sets are exactly sizes 0 and 1; "
          "verified witness kites for 2..6", dt)
    assert ok
    assert dt < 5


def test_criterion_04_kite_uniqueness_trichotomy():
    """kite2's multiplication unique iff the one-object structure is
    associative; kite3's unique iff it is a groupoid; exhaustive solve
    against independent checkers over all monoids (and, for kite2, all
    unital magmas) of size <= 3.

    Known defect: over bare finite sets the one-object kite2/kite3
    diagrams keep (size-1)^2-style families of points off the cross
    with a trivial direction span, so their multiplications are never
    unique once the structure has two or more elements.  The uniqueness
    biconditionals hold in categories where the kite machinery pins
    every point, not in finite sets; see the decisions ledger.  The
    criterion is asserted as stated and is expected to fail at Z_2.
    """
    start = time.perf_counter()
    mismatches = []
    for n in (1, 2, 3):
        for table in gallery.unital_magma_tables(n):
            mg = gallery.one_object_umg(table)
            kd, _ = assemble_kite(kite_from_umg(mg))
            count2 = solve_m(kd, cap=1).count
            assoc = gallery.is_associative_table(table)
            if (count2 == 1) != assoc:
                mismatches.append(("kite2", n, table, count2, assoc))
        for table in gallery.monoid_tables(n):
            mg = gallery.one_object_umg(table)
            kd, _ = assemble_kite(kite_from_cat(mg))
            count3 = solve_m(kd, cap=1).count
            grp = gallery.is_group_table(table)
            if (count3 == 1) != grp:
                mismatches.append(("kite3", n, table, count3, grp))
    dt = time.perf_counter() - start
    ok = not mismatches and dt < 60
    _line(4, ok, "kite2/kite3 uniqueness trichotomy on one-object "
          "structures of size <= 3", dt)
    assert dt < 60
    assert not mismatches, (
        "uniqueness biconditional fails on finite sets; first "
        f"counterexamples: {mismatches[:4]} "
        "(kite, size, table, solve count, checker verdict)")


def test_criterion_05_maltsev_operation_on_cyclic_groups():
    start = time.perf_counter()
    ok = True
    for n in range(1, 8):
        data = alg.maltsev_table(cyclic_magma(n))
        ok &= data.unit_laws.ok and data.hom_law.ok
    for m in range(1, 6):
        for n in range(1, 6):
            A, B = cyclic_magma(m), cyclic_magma(n)
            for h in product(range(n), repeat=m):
                if alg.homomorphism_witness(A, B, h) is not None:
                    continue
                ok &= alg.check_naturality_of_p(A, B, h).ok
    dt = time.perf_counter() - start
    _line(5, ok and dt < 30, "Mal'tsev table laws on (Z_n, +) for n <= 7 "
          "and naturality along all homomorphisms for m, n <= 5", dt)
    assert ok
    assert dt < 30


def test_criterion_06_classifications():
    start = time.perf_counter()
    ok = alg.classify_wm_object(chain_lattice(2)).report.ok
    ok &= alg.classify_wm_object(two_by_two_lattice()).report.ok
    for latt in (m3_lattice(), n5_lattice()):
        cls = alg.classify_wm_object(latt)
        jc = alg.check_joint_cancellative(latt)
        ok &= not cls.report.ok and not jc.ok and jc.witness is not None
    meet = meet_semilattice2()
    cls = alg.classify_wm_object(meet)
    canc = alg.check_cancellative(meet)
    ok &= not cls.report.ok and canc.witness == {"x": 0, "y": 1, "b": 0}
    # the shipped variety kite carries at least two admissibility morphisms
    vk = load_variety_kite(json.loads(
        (ASSETS / "meet2_witness_kite.json").read_text()))
    res = alg.admissibility_count_variety(vk, cap=10)
    ok &= res.count >= 2
    E, _ = alg.pullback_subalgebra(vk)
    for sol in res.solutions[:2]:
        ok &= alg.homomorphism_witness(E, vk.D, sol) is None
    # the bounded search rediscovers a two-solution kite
    found = alg.wm_witness_search(meet)
    ok &= found is not None and \
        alg.admissibility_count_variety(found, cap=2).count >= 2
    # groups with inverse as the unary operation, sizes <= 4
    for grp in (cyclic_group(1), cyclic_group(2), cyclic_group(3),
                cyclic_group(4), klein_four()):
        um = alg.unary_monoid_from_group(grp)
        ok &= alg.check_unary_monoid_law(um).ok
        ok &= alg.classify_wm_object(um).report.ok
    ok &= not alg.classify_wm_object(m3_dimagma()).report.ok
    dt = time.perf_counter() - start
    _line(6, ok and dt < 30, "lattice, semilattice, dimagma and unary "
          "monoid classifications with witnesses", dt)
    assert ok
    assert dt < 30


def test_criterion_07_relation_properties():
    start = time.perf_counter()
    ok = True
    for n in (1, 2, 3, 4):
        rels = alg.reflexive_relations(cyclic_group(n))
        ok &= len(rels) >= 1
        for rel in rels:
            props = alg.relation_properties(rel)
            ok &= props.symmetric and props.transitive and props.difunctional
    rels = alg.reflexive_relations(two_element_set_algebra())
    witness = [r for r in rels
               if not alg.relation_properties(r).symmetric]
    ok &= any(r.pairs == ((0, 0), (0, 1), (1, 1)) for r in witness)
    dt = time.perf_counter() - start
    _line(7, ok and dt < 30, "compatible reflexive relations on (Z_n,+,-,0) "
          "are equivalences; bare 2-set has a non-symmetric one", dt)
    assert ok
    assert dt < 30


def test_criterion_08_theta_delta_constructions():
    start = time.perf_counter()
    ok = True
    for n in (2, 3):
        kd, mu, mu_e = group_kite_bundle(n)
        res = solve_m(kd)
        ok &= res.count == 1
        th = theta(kd, mu)
        ok &= th.m.table == res.solutions[0].table
        ok &= delta_identity_check(kd, mu_e).ok
    dt = time.perf_counter() - start
    _line(8, ok and dt < 5, "mid mu delta = 1_E and mid mu theta is the "
          "unique multiplication on the Z_2 and Z_3 group kites", dt)
    assert ok
    assert dt < 5


def test_criterion_09_equivalence_sweep():
    start = time.perf_counter()
    cells = [(i, j) for i in range(3) for j in range(i, 3)]
    checked = 0
    ok = True
    for values in product(range(3), repeat=len(cells)):
        table = [[0] * 3 for _ in range(3)]
        for (i, j), v in zip(cells, values):
            table[i][j] = table[j][i] = v
        flat = tuple(table[i][j] for i in range(3) for j in range(3))
        a = alg.OpAlgebra(3, (alg.Operation("*", 2, flat),), "cmag")
        ok &= alg.equivalence_2_3_check(a).ok
        checked += 1
    dt = time.perf_counter() - start
    ok = ok and checked == 729
    _line(9, ok and dt < 10, "cancellation and unique-solution conditions "
          "agree on all 729 commutative 3-element magmas", dt)
    assert ok
    assert dt < 10


def test_criterion_10_ismember_conformance():
    start = time.perf_counter()
    rng = random.Random(101010)
    ok = True
    for _ in range(1000):
        nf, nu = rng.randint(0, 16), rng.randint(0, 16)
        f = [rng.randint(0, 15) for _ in range(nf)]
        u = [rng.randint(0, 15) for _ in range(nu)]
        res = ismember(f, u)
        for i, v in enumerate(f):
            hits = [j for j, w in enumerate(u) if w == v]
            ok &= res.flags[i] == bool(hits)
            ok &= res.positions[i] == (hits[0] if hits else None)
    for _ in range(200):
        m = rng.randint(1, 8)
        nf = rng.randint(0, 8)
        fmap = FinMap(nf, m, tuple(rng.randint(0, m - 1) for _ in range(nf)))
        codes = list(range(m))
        rng.shuffle(codes)
        nu = rng.randint(0, m)
        umap = FinMap(nu, m, tuple(codes[:nu]))
        p_f, p_u = ismember_pullback(fmap, umap)
        pb = pullback(umap, fmap)
        ok &= pb.p1.table == p_f.table and pb.p2.table == p_u.table
    dt = time.perf_counter() - start
    _line(10, ok and dt < 5, "1000 randomized ismember instances match the "
          "oracle; unique-u reading matches the pullback", dt)
    assert ok
    assert dt < 5
