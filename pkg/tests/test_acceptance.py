"""Acceptance criteria 1-9, one PASS/FAIL line each in the terminal summary.

A criterion made of several parts is PASS only if every part passes. Parts
whose literal statement is false are strict xfails: the assertion keeps the
original claim, the line says FAIL, and the reason names the counterexample.
"""

import random
import time
from fractions import Fraction
from math import comb

import pytest

from lagrangia import OptimizerConfig, maximize, maximize_bounded
from lagrangia.algorithms import dense_compressed_subgraph, is_alpha_dense, symmetrize_and_clean
from lagrangia.bounds import closed_form
from lagrangia.canon import is_isomorphic
from lagrangia.cli import main
from lagrangia.constructions import complete, family_F, family_G
from lagrangia.detection import Density, is_dense
from lagrangia.enumeration import NO_ISOLATED, enumerate_free, enumerate_left_compressed, matching_free
from lagrangia.hypergraph import Hypergraph, add_isolated, is_subgraph
from lagrangia.suites import random_free_graph, verify

from conftest import brute_clique, random_graph

Q = Fraction
TITLES = {
    1: "closed-form Lagrangians of complete graphs",
    2: "stability at desk scale for intersecting 3-graphs",
    3: "Motzkin-Straus oracle equivalence",
    4: "compression suite",
    5: "structure by exhaustive enumeration",
    6: "b-bounded bounds",
    7: "Turan constructions",
    8: "algorithmic contracts",
    9: "determinism",
}
RESULTS: dict[int, list[tuple[str, bool, str]]] = {}


def record(criterion: int, part: str, ok: bool, detail: str) -> bool:
    RESULTS.setdefault(criterion, []).append((part, bool(ok), detail))
    return ok


def summary_lines() -> list[str]:
    lines = []
    for k in sorted(TITLES):
        parts = RESULTS.get(k)
        if not parts:
            lines.append(f"criterion {k}: NOT RUN  {TITLES[k]}")
            continue
        ok = all(p[1] for p in parts)
        lines.append(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {TITLES[k]}")
        for part, good, detail in parts:
            lines.append(f"    {'ok ' if good else 'BAD'} {part}: {detail}")
    return lines


CFG = OptimizerConfig(seed=0)


# ---------------------------------------------------------------- 1


def test_criterion_1_complete_graphs():
    grid = [(2, m) for m in range(2, 9)] + [(3, m) for m in range(4, 9)] + [(4, m) for m in range(5, 9)]
    start = time.perf_counter()
    worst = 0.0
    for r, m in grid:
        worst = max(worst, abs(maximize(complete(r, m), CFG).value - comb(m, r) / m ** r))
    elapsed = time.perf_counter() - start
    k5 = maximize(complete(3, 5), CFG).value
    k64 = maximize(complete(4, 6), CFG).value
    ok = worst <= 1e-8 and abs(k5 - 0.08) <= 1e-8 and abs(k64 - 5 / 432) <= 1e-8 and elapsed < 10
    record(1, "K_m^r grid", ok, f"{len(grid)} graphs, max error {worst:.1e}, {elapsed:.2f}s")
    assert ok


# ---------------------------------------------------------------- 2


def test_criterion_2_stability():
    start = time.perf_counter()
    K5 = complete(3, 5)
    table = [(G, maximize(G, CFG).value) for G in enumerate_free(3, 6, [matching_free(2), NO_ISOLATED])]
    top = max(v for _, v in table)
    tops = [G for G, v in table if abs(v - top) <= 1e-9]
    others = [v for G, v in table if not (G.n == 5 and is_isomorphic(G, K5))]
    runner = max(others)
    ok = abs(top - 0.08) <= 1e-8 and len(tops) == 1 and tops[0] == K5 and runner <= 0.08 - 1e-3
    record(2, "enumeration on <= 6 vertices", ok,
           f"{len(table)} classes, max {top:.12f} by K_5^3 only, runner-up {runner:.6f}, "
           f"{time.perf_counter() - start:.1f}s")
    assert ok


# ---------------------------------------------------------------- 3


def test_criterion_3_motzkin_straus():
    rng = random.Random(0)
    worst, tried = 0.0, 0
    for _ in range(200):
        n = rng.randint(2, 9)
        G = random_graph(rng, 2, n, rng.random())
        omega = brute_clique(G) if G.edges else 1
        worst = max(worst, abs(maximize(G, CFG).value - (1 - 1 / omega) / 2))
        tried += 1
    ok = worst <= 1e-6
    record(3, "200 random 2-graphs, n <= 9", ok, f"max deviation {worst:.1e}")
    assert ok


# ---------------------------------------------------------------- 4


def test_criterion_4_compression():
    rep = verify("compression", seed=0, params={"instances": 500})
    ok = rep.passed
    counts = ", ".join(f"{a.id.split('/')[1]} {a.instances}" for a in rep.assertions)
    record(4, "compression suite", ok, counts + (" failures" if not ok else ", zero failures"))
    assert ok


# ---------------------------------------------------------------- 5


def test_criterion_5a_matching_free_2graphs():
    total, bad = 0, 0
    for t in (2, 3):
        for n in range(2, 9):
            fams = [family_F(t, ell, n) for ell in range(t)] if n >= 2 * t else []
            for G in enumerate_left_compressed(2, n, [matching_free(t)]):
                total += 1
                if n >= 2 * t and not any(is_subgraph(G, F) for F in fams):
                    bad += 1
    ok = bad == 0
    record(5, "(a) 2-graphs in F_{t,l}(n), t in {2,3}, n <= 8", ok, f"{total} graphs, {bad} counterexamples")
    assert ok


def _g_counterexamples(n):
    fams = [family_G(k, n) for k in range(5)]
    graphs = list(enumerate_left_compressed(3, n, [matching_free(2)]))
    return graphs, [G for G in graphs if not any(is_subgraph(G, F) for F in fams)]


@pytest.mark.xfail(strict=True, reason="K_5^3 plus isolated vertices is left-compressed and intersecting "
                                       "but lies in no G_k(n) for n = 6, 7")
def test_criterion_5b_intersecting_3graphs():
    total, bad = 0, []
    for n in (6, 7):
        graphs, b = _g_counterexamples(n)
        total += len(graphs)
        bad += b
    ok = not bad
    witness = "; ".join(repr(G) for G in bad)
    record(5, "(b) 3-graphs in G_0..G_4(n), n in {6,7}, as stated", ok,
           f"{total} graphs, {len(bad)} counterexamples: {witness}")
    assert ok


def test_criterion_5b_without_isolated_vertices():
    total, bad = 0, 0
    for n in (6, 7):
        graphs, b = _g_counterexamples(n)
        total += sum(1 for G in graphs if all(G.degrees[1:]))
        bad += sum(1 for G in b if all(G.degrees[1:]))
    ok = bad == 0
    record(5, "(b') same, graphs without isolated vertices", ok, f"{total} graphs, {bad} counterexamples")
    assert ok


# ---------------------------------------------------------------- 6


def test_criterion_6_f_family():
    worst, count = -1.0, 0
    for t in (2, 3):
        for ell in range(1, t):
            for n in range(2 * t, 11):
                F = family_F(t, ell, n)
                for k in range(1, 9):
                    b = Q(k, 8 * t)
                    gap = maximize_bounded(F, b, CFG).value - float(closed_form("f-family-bounded", t=t, ell=ell, b=b))
                    worst = max(worst, gap)
                    count += 1
    ok = worst <= 1e-8
    record(6, "F_{t,l}(n) bound, t <= 3, n <= 10, b = k/(8t)", ok, f"{count} cases, max excess {worst:.1e}")
    assert ok


def test_criterion_6_stars():
    rng = random.Random(1)
    worst, count = -1.0, 0
    caps = [Q(1, 3), Q(1, 4), Q(1, 5), Q(1, 6), Q(1, 7), Q(1, 9), Q(1, 12)]
    for n in range(3, 13):
        full = Hypergraph(3, n, tuple((1, i, j) for i in range(2, n + 1) for j in range(i + 1, n + 1)))
        for G in (full, Hypergraph(3, n, tuple(e for e in full.edges if rng.random() < 0.6))):
            for b in caps:
                if n * b < 1:
                    continue
                worst = max(worst, maximize_bounded(G, b, CFG).value - float(closed_form("star-bounded", b=b)))
                count += 1
    ok = worst <= 1e-8
    record(6, "star bound, n <= 12, b <= 1/3", ok, f"{count} cases, max excess {worst:.1e}")
    assert ok


def _intersecting_excess(b):
    bound = float(closed_form("intersecting-bounded", b=b))
    worst, arg = -1.0, None
    classes = list(enumerate_free(3, 6, [matching_free(2), NO_ISOLATED]))
    for G in classes:
        H = add_isolated(G, max(0, -(-b.denominator // b.numerator) - G.n))
        gap = maximize_bounded(H, b, CFG).value - bound
        if gap > worst:
            worst, arg = gap, G
    return len(classes), worst, arg


@pytest.mark.parametrize("b", [Q(1, 7), Q(1, 6)])
def test_criterion_6_intersecting(b):
    count, worst, _ = _intersecting_excess(b)
    ok = worst <= 1e-8
    record(6, f"intersecting bound, b = {b}", ok, f"{count} classes, max excess {worst:.1e}")
    assert ok


@pytest.mark.xfail(strict=True, reason="K_5^3 reaches 10 b^3 = 2/25 > 9/125 at b = 1/5")
def test_criterion_6_intersecting_one_fifth():
    b = Q(1, 5)
    count, worst, arg = _intersecting_excess(b)
    ok = worst <= 1e-8
    record(6, f"intersecting bound, b = {b}", ok, f"{count} classes, max excess {worst:.1e} at {arg!r}")
    assert ok


def test_criterion_6_matching_free():
    rng = random.Random(2)
    free3 = matching_free(3)
    worst, count = -1.0, 0
    for _ in range(25):
        G = random_free_graph(rng, 3, 9, free3, fill=rng.choice([0.5, 0.8, 1.0]))
        for b in (Q(1, 9), Q(2, 17), Q(3, 25)):
            gap = maximize_bounded(G, b, CFG).value - float(closed_form("matching-free-bounded", t=3, b=b))
            worst = max(worst, gap)
            count += 1
    ok = worst <= 1e-8
    record(6, "M_3^3-free bound, n = 9, b < 1/8", ok, f"{count} cases, max excess {worst:.1e}")
    assert ok


# ---------------------------------------------------------------- 7


def test_criterion_7_turan_constructions():
    rep = verify("turan-construction", seed=0, params={"t": 2, "n": 16})
    ok = rep.passed and rep.outputs["turan_count_3_5_12"] == 134
    record(7, "T_5^3(n) n <= 16, T_4^3(n) and T_6^4(n) n <= 12", ok,
           f"{sum(a.passed for a in rep.assertions)}/{len(rep.assertions)} assertions, t(3,5,12) = 134")
    assert ok


# ---------------------------------------------------------------- 8


def test_criterion_8_dense_subgraph():
    rng = random.Random(8)
    bad, worst_loss, worst_res, tried = 0, 0.0, 0.0, 0
    engine = lambda g: maximize(g, CFG).value
    while tried < 100:
        r = rng.choice((2, 3))
        G = random_graph(rng, r, rng.randint(r + 1, 8 if r == 2 else 7), rng.choice((0.3, 0.5, 0.7, 0.9)))
        if not G.edges:
            continue
        tried += 1
        out = dense_compressed_subgraph(G, CFG)
        before, after = maximize(G, CFG), maximize(out.graph, CFG)
        worst_res = max(worst_res, before.kkt_residual, after.kkt_residual)
        worst_loss = max(worst_loss, before.value - after.value)
        if is_dense(out.graph, engine=engine).status is not Density.DENSE or before.value - after.value > 1e-7:
            bad += 1
    ok = bad == 0 and worst_res <= 1e-6
    record(8, "dense_compressed_subgraph on 100 random graphs", ok,
           f"{bad} failures, max value loss {worst_loss:.1e}, max KKT residual {worst_res:.1e}")
    assert ok


def test_criterion_8_symmetrization():
    rng = random.Random(9)
    bad, steps = 0, 0
    for _ in range(100):
        r = rng.choice((2, 3))
        G = random_graph(rng, r, rng.randint(r + 1, 9), rng.choice((0.3, 0.5, 0.7, 0.9)))
        alpha = rng.choice((Q(1, 10), Q(1, 4), Q(2, 5), Q(3, 5)))
        out = symmetrize_and_clean(G, alpha)
        sym = [s for s in out.trace.steps if s["op"] == "symmetrize"]
        steps += len(sym)
        if any(s["after"] < s["before"] for s in sym):
            bad += 1
        elif out.graph.edges and not is_alpha_dense(out.graph, alpha):
            bad += 1
    ok = bad == 0
    record(8, "symmetrize_and_clean on 100 random graphs", ok, f"{steps} symmetrization steps, {bad} failures")
    assert ok


def test_criterion_8_optimizer_residuals():
    rep = verify("kkt", seed=0, params={"graphs": 100})
    ok = rep.passed
    worst = next(a.detail["worst_residual"] for a in rep.assertions if a.id == "kkt/residual")
    record(8, "KKT residual of 100 optimizer results", ok, f"max residual {worst:.1e}")
    assert ok


# ---------------------------------------------------------------- 9


def test_criterion_9_determinism(capsys, tmp_path):
    suites = {"kkt": {"graphs": 20}, "frankl": {"graphs": 200}, "compression": {"instances": 100},
              "blowup": {"graphs": 20}, "structure-F": {"n": 7}}
    same = all(verify(s, seed=3, params=p).dumps() == verify(s, seed=3, params=p).dumps()
               for s, p in suites.items())
    outs = []
    for _ in range(2):
        main(["verify", "blowup", "--seed", "5", "--param", "graphs=10"])
        outs.append(capsys.readouterr().out)
    ok = same and outs[0] == outs[1]
    record(9, "byte-identical reports", ok, f"{len(suites)} suites via the API, one via the CLI")
    assert ok
