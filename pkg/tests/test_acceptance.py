"""One test per acceptance criterion.  Each prints a PASS/FAIL line per sub-check and a
summary line; the lines are repeated in the terminal summary."""
import math
import random
import statistics
import time
from itertools import combinations

import numpy as np

from conftest import ACCEPTANCE_LINES, CENSUS_SECONDS, random_graph
from magicdist import graph as gr
from magicdist.automorphism import automorphisms, labeling_orbits
from magicdist.labeling import ModularLabeling, reduce_mod_p, verify_distance_magic, verify_p_distance_magic
from magicdist.search import (
    SearchConfig,
    count_dm_labelings,
    crt_combine,
    find_dm_labelings,
    p_dm_constants,
)
from magicdist.spectral import (
    IntPoly,
    char_poly,
    eig_sym,
    even_regular_zero_filter,
    is_integral,
    is_singular,
    knm_cone,
    knm_cone_charpoly,
    main_angles,
    moore_penrose,
    pinv_filter,
)
from magicdist.structural import contains_p3_or_c4, regular_filters, symm_diff_filter
from oracles import brute_automorphisms, brute_dm_labelings


class Checks:
    def __init__(self, number, title):
        self.number, self.title = number, title
        self.results = []

    def check(self, name, ok, detail=""):
        ok = bool(ok)
        self.results.append((name, ok, detail))
        line = f"  [{'PASS' if ok else 'FAIL'}] #{self.number} {name}" + (f": {detail}" if detail else "")
        print(line)
        ACCEPTANCE_LINES.append(line)
        return ok

    def finish(self):
        failed = [name for name, ok, _ in self.results if not ok]
        line = f"ACCEPTANCE {self.number} {self.title}: {'PASS' if not failed else 'FAIL'}"
        if failed:
            line += " (failed: " + "; ".join(failed) + ")"
        print(line)
        ACCEPTANCE_LINES.append(line)
        assert not failed, line


def median_seconds(fn, repeat=50):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return statistics.median(times)


def all_graphs(n):
    pairs = list(combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield gr.from_edge_list(n, [e for i, e in enumerate(pairs) if mask >> i & 1])


def test_01_worked_constants():
    c = Checks(1, "worked magic constants")
    p3, c4 = gr.path(3), gr.cycle(4)
    r1 = verify_distance_magic(p3, (1, 3, 2))
    r2 = verify_distance_magic(c4, (1, 2, 4, 3))
    c.check("P3 (1,3,2) gives k=3", r1 and r1.k == 3, f"k={getattr(r1, 'k', None)}")
    c.check("C4 (1,2,4,3) gives k=5", r2 and r2.k == 5, f"k={getattr(r2, 'k', None)}")
    for name, g, f in (("P3", p3, (1, 3, 2)), ("C4", c4, (1, 2, 4, 3))):
        t = median_seconds(lambda: verify_distance_magic(g, f))
        c.check(f"verify {name} under 1 ms", t < 1e-3, f"{t * 1e3:.4f} ms")
    c.finish()


def test_02_labeling_counts():
    c = Checks(2, "labelling counts")
    p3, c4 = gr.path(3), gr.cycle(4)
    c4_expected = {(1, 2, 4, 3), (3, 1, 2, 4), (4, 3, 1, 2), (2, 4, 3, 1),
                   (2, 1, 3, 4), (1, 3, 4, 2), (3, 4, 2, 1), (4, 2, 1, 3)}
    s3 = {f.values for f, _ in find_dm_labelings(p3)}
    s4 = {f.values for f, _ in find_dm_labelings(c4)}
    c.check("count(P3) = 2", count_dm_labelings(p3) == 2)
    c.check("P3 set = {(1,3,2),(2,3,1)}", s3 == {(1, 3, 2), (2, 3, 1)}, str(sorted(s3)))
    c.check("count(C4) = 8", count_dm_labelings(c4) == 8)
    c.check("C4 set equals the eight listed tuples", s4 == c4_expected)
    t = max(median_seconds(lambda: (count_dm_labelings(g), find_dm_labelings(g)), 20) for g in (p3, c4))
    c.check("count + enumerate under 10 ms", t < 1e-2, f"{t * 1e3:.3f} ms")
    c.finish()


def test_03_automorphisms():
    c = Checks(3, "automorphisms and labelling orbits")
    start = time.perf_counter()
    u = gr.disjoint_union(gr.path(3), gr.cycle(4))
    for name, g, order in (("P3", gr.path(3), 2), ("C4", gr.cycle(4), 8), ("P3+C4", u, 16)):
        got = automorphisms(g).order
        c.check(f"|Aut({name})| = {order}", got == order, f"got {got}")
    orbits = labeling_orbits(gr.cycle(4), [f for f, _ in find_dm_labelings(gr.cycle(4))])
    c.check("C4 labellings form one orbit of size 8", orbits.sizes == [8], str(orbits.sizes))
    count = count_dm_labelings(u)
    c.check("|M(P3+C4)| >= 48 and divisible by 16", count >= 48 and count % 16 == 0, f"count={count}")
    elapsed = time.perf_counter() - start
    c.check("runtime under 5 s", elapsed < 5, f"{elapsed:.3f} s")
    c.finish()


def test_04_complete_minus_matching_spectrum():
    c = Checks(4, "spectrum of K6 - M")
    g = gr.complete_minus_matching(6)
    y = IntPoly((0, 1))
    expect = y ** 3 * IntPoly((2, 1)) ** 2 * IntPoly((-4, 1))
    c.check("char_poly = y^3 (y+2)^2 (y-4)", char_poly(g) == expect, str(char_poly(g)))
    lam = eig_sym(g.adjacency()).eigenvalues
    ref = np.array([4, 0, 0, 0, -2, -2], dtype=float)
    err = float(np.max(np.abs(lam - ref)))
    c.check("eig_sym within 1e-8", err < 1e-8, f"max error {err:.2e}")
    betas = [b for _, b in main_angles(g)]
    target = [1 / math.sqrt(6), 0.0, 0.0]
    err = max(abs(a - b) for a, b in zip(betas, target))
    c.check("main angles (1/sqrt6, 0, 0) within 1e-8", err < 1e-8,
            f"computed {[round(b, 10) for b in betas]}, sum of squares {sum(b * b for b in betas):.12f}")
    c.finish()


def test_05_cone_covers():
    c = Checks(5, "cone covers of K_m - M")
    for m in (4, 6, 8, 10):
        g = knm_cone(m)
        c.check(f"m={m} closed form equals exact char poly", knm_cone_charpoly(m) == char_poly(g), str(char_poly(g)))
        c.check(f"m={m} not integral", not is_integral(g))
        found = find_dm_labelings(g, SearchConfig(limit=1))
        ok = bool(found) and bool(verify_distance_magic(g, found[0][0]))
        c.check(f"m={m} cone distance magic by search", ok, f"k={found[0][1].k}" if found else "none")
    c.finish()


def test_06_moore_penrose(census_graphs):
    c = Checks(6, "Moore-Penrose condition")
    g = gr.star(3)
    A = g.adjacency().astype(float)
    shown = np.array([[1, 0, 0, 0], [0, 1, 1, 1], [0, 1, 1, 1], [0, 1, 1, 1]], dtype=float)
    shown[1:, 1:] /= 3
    err = float(np.max(np.abs(A @ moore_penrose(A) - shown)))
    c.check("A A+ of K_{1,3} matches the displayed matrix within 1e-9", err < 1e-9, f"max error {err:.2e}")
    c.check("pinv_filter(K_{1,3}) = true", pinv_filter(g))
    c.check("K_{1,3} has no distance magic labelling", not find_dm_labelings(g))
    bad = [rec.graph6 for rec, h in census_graphs if not pinv_filter(h)]
    c.check("pinv_filter true on every census graph (n <= 7)", not bad, f"{len(census_graphs)} graphs, failures {bad}")
    c.finish()


def test_07_singular_constructions():
    c = Checks(7, "singular distance magic constructions")
    start = time.perf_counter()
    for n in (4, 6, 8, 10, 12):
        g = gr.construct("singular_even", n)
        found = find_dm_labelings(g, SearchConfig(limit=1))
        k = found[0][1].k if found else None
        c.check(f"singular_even({n}) DM with k = {n * (n + 1) // 2 - (n + 1)}",
                found and verify_distance_magic(g, found[0][0]) and k == n * (n + 1) // 2 - (n + 1), f"k={k}")
        c.check(f"singular_even({n}) singular", is_singular(g))
    for n in (5, 7, 9, 11):
        g = knm_cone(n - 1)
        found = find_dm_labelings(g, SearchConfig(limit=1))
        c.check(f"cone of K_{n - 1} - M DM", found and verify_distance_magic(g, found[0][0]),
                f"k={found[0][1].k}" if found else "none")
        c.check(f"cone of K_{n - 1} - M singular", is_singular(g))
    elapsed = time.perf_counter() - start
    c.check("runtime under 30 s", elapsed < 30, f"{elapsed:.2f} s")
    c.finish()


def test_08_nonsingular_witness(census):
    c = Checks(8, "nonsingular witness and census singularity")
    g = gr.fig_ndm()
    r = verify_distance_magic(g, tuple(range(1, 12)))
    c.check("identity labelling is DM with k=31", r and r.k == 31, f"k={getattr(r, 'k', None)}")
    c.check("11-vertex graph nonsingular", not is_singular(g), f"constant term {char_poly(g).coeffs[0]}")
    total = sum(len(census[n]) for n in census)
    nonsingular = [rec.graph6 for n in census for rec in census[n] if not rec.singular]
    c.check("every census DM graph (n <= 7) singular", total > 0 and not nonsingular,
            f"{total} graphs, nonsingular {nonsingular}")
    small = sum(CENSUS_SECONDS[n] for n in range(1, 7))
    c.check("census n <= 6 within 1 minute", small <= 60, f"{small:.2f} s")
    c.check("census n = 7 within 10 minutes", CENSUS_SECONDS[7] <= 600, f"{CENSUS_SECONDS[7]:.2f} s")
    c.finish()


def test_09_crt(census_graphs):
    c = Checks(9, "CRT composition")
    g = gr.cycle(4)
    res = crt_combine(g, ModularLabeling(2, (1, 2, 2, 1)), ModularLabeling(3, (2, 1, 3, 1)))
    c.check("C4 example labelling is (2,4,6,1)", res.labeling == (2, 4, 6, 1), f"computed {res.labeling}")
    c.check("constant = 1 mod 2 and 2 mod 3", res.constant % 2 == 1 and res.constant % 3 == 2, f"constant {res.constant}")
    c.check("flagged inconsistent", not res.consistent)
    rng = random.Random(909)
    pairs = [(p, q) for p in range(2, 14) for q in range(p + 1, 14) if math.gcd(p, q) == 1]
    pool = [(h, f) for _, h in census_graphs for f, _ in find_dm_labelings(h)]
    bad = 0
    for _ in range(50):
        h, f = rng.choice(pool)
        p, q = rng.choice(pairs)
        out = crt_combine(h, reduce_mod_p(f, p), reduce_mod_p(f, q))
        k = verify_distance_magic(h, f).k
        if not (out.consistent and out.labeling == reduce_mod_p(f, p * q).values and out.constant == k % (p * q)):
            bad += 1
    c.check("round trip on 50 random DM instances", bad == 0, f"{bad} mismatches")
    c.finish()


def test_10_property_suites(census_graphs):
    c = Checks(10, "oracle equivalence suites")
    mism = 0
    for n in range(1, 5):
        for h in all_graphs(n):
            if sorted(f.values for f, _ in find_dm_labelings(h)) != brute_dm_labelings(h.adjacency()):
                mism += 1
    c.check("search = brute force, all graphs n <= 4", mism == 0, f"{mism} mismatches")
    rng = random.Random(1010)
    mism = 0
    for _ in range(200):
        h = random_graph(rng, rng.choice([5, 6]))
        if sorted(f.values for f, _ in find_dm_labelings(h)) != brute_dm_labelings(h.adjacency()):
            mism += 1
    c.check("search = brute force, 200 random n in {5,6}", mism == 0, f"{mism} mismatches")
    mism = 0
    for _ in range(50):
        h = random_graph(rng, rng.randint(1, 7))
        if sorted(s.mapping for s in automorphisms(h)) != brute_automorphisms(h.adjacency()):
            mism += 1
    c.check("automorphisms = brute force, 50 random n <= 7", mism == 0, f"{mism} mismatches")
    nprng = np.random.default_rng(1010)
    worst = 0.0
    for _ in range(100):
        n = int(nprng.integers(1, 11))
        A = np.triu(nprng.integers(0, 2, size=(n, n)), 1)
        A = (A + A.T).astype(float)
        X = moore_penrose(A)
        for lhs, rhs in ((A @ X @ A, A), (X @ A @ X, X), ((A @ X).T, A @ X), ((X @ A).T, X @ A)):
            worst = max(worst, float(np.max(np.abs(lhs - rhs))) if n else 0.0)
    c.check("Penrose identities within 1e-7, 100 random matrices", worst < 1e-7, f"max error {worst:.2e}")
    graphs = [h for _, h in census_graphs]
    graphs += [gr.path(3), gr.cycle(4), gr.star(3), gr.fig_ndm(), gr.path(5)]
    graphs += [gr.complete_minus_matching(m) for m in (4, 6, 8, 10)] + [knm_cone(m) for m in (4, 6, 8, 10)]
    graphs += [random_graph(rng, rng.randint(1, 10)) for _ in range(100)]
    worst = max(abs(sum(b * b for _, b in main_angles(h)) - 1) for h in graphs)
    c.check("sum of squared main angles = 1 within 1e-8", worst < 1e-8, f"{len(graphs)} graphs, max error {worst:.2e}")
    c.finish()


def test_11_filter_soundness(census_graphs):
    c = Checks(11, "filter soundness on the census")
    checks = (
        ("symm_diff_filter", lambda h: bool(symm_diff_filter(h))),
        ("regular_filters", lambda h: bool(regular_filters(h))),
        ("even_regular_zero_filter", lambda h: bool(even_regular_zero_filter(h))),
        ("contains_p3_or_c4", lambda h: contains_p3_or_c4(h)[0]),
    )
    for name, fn in checks:
        rejected = [rec.graph6 for rec, h in census_graphs if not fn(h)]
        c.check(f"{name} never rejects a DM graph", not rejected, f"{len(census_graphs)} graphs, rejected {rejected}")
    c.finish()


def test_12_p_dm_coherence(census_graphs):
    c = Checks(12, "p-distance magic coherence")
    bad_reduce, bad_unique, unit_cases = [], [], 0
    for rec, h in census_graphs:
        labs = find_dm_labelings(h)
        tri = h.n * (h.n + 1) // 2
        for p in range(2, 14):
            for f, cert in labs:
                r = verify_p_distance_magic(h, reduce_mod_p(f, p))
                if not (r and r.k == cert.k % p):
                    bad_reduce.append((rec.graph6, p, f.values))
            if math.gcd(tri, p) == 1:
                unit_cases += 1
                ks = p_dm_constants(h, p)
                if ks != {rec.magic_constant % p}:
                    bad_unique.append((rec.graph6, p, sorted(ks)))
    c.check("reductions mod p = 2..13 are p-DM with k mod p", not bad_reduce, f"{len(bad_reduce)} failures")
    c.check("unique p-DM constant when n(n+1)/2 is a unit mod p", not bad_unique,
            f"{unit_cases} (graph, p) cases, failures {bad_unique[:5]}")
    c.finish()
