"""Acceptance suite: one test (and one printed PASS/FAIL line) per criterion.

Each criterion names its regime (graph sizes, degree cap, color counts,
weight grid) explicitly so a run of this file documents exactly what was
checked.  Run with ``pytest -v -s tests/test_acceptance.py`` to see the
per-criterion summary lines.
"""

import math
import time
from fractions import Fraction

from pottszero.bounds import (
    ConstantPack,
    clique_tightness_witness,
    corollary_few_blocked_intermediate,
    corollary_sparse,
    corollary_sparse_second_factor,
    corollary_thresholds,
    delta_for_epsilon,
    upper_bound_basic,
    verify_bound,
)
from pottszero.exact import marginal
from pottszero.families import enumerate_graphs, generate_family, rooted_family
from pottszero.graphs import RootedGraph
from pottszero.interpolate import approx_count_colorings, exact_count_oracle
from pottszero.zeros import induction_statement_check, zero_free_scan


def _report(num, label, ok, detail):
    line = f"ACCEPTANCE {num} [{label}]: {'PASS' if ok else 'FAIL'} ({detail})"
    print(line)
    assert ok, line


def test_criterion_1_exact_identities():
    # All connected graphs <= 6 vertices (pinned leaves included), max
    # degree 3, q in {4,5,6}, rational w in {0, 1/3, 1/2, 1}; the four
    # structural identities must hold with exact rational equality.
    grid = [Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1)]
    ids = ("telescoping", "gradient_identity", "eion_trick", "pin_to_leaves")
    total_checked = 0
    ok = True
    detail = []
    for q in (4, 5, 6):
        family = list(
            rooted_family(enumerate_graphs(6, 3, q, pin_specs="patterns"), 3)
        )
        for bid in ids:
            rep = verify_bound(bid, family, grid, delta=3, family_name=f"q={q}")
            total_checked += rep.instances_checked
            if rep.violations != 0 or rep.worst_slack not in (None, 0):
                ok = False
                detail.append(f"{bid}@q={q}: {rep.violations} violations")
    _report(
        1,
        "exact identities",
        ok,
        detail[0] if detail else f"{total_checked} exact equalities, tolerance 0",
    )


def test_criterion_2_bound_verifiers():
    # All connected graphs <= 7 vertices, max degree 3, q in {5,6,7},
    # 11-point rational w grid; zero violations for the six marginal
    # bounds, worst slack reported; plus the clique tightness witness.
    grid = [Fraction(k, 10) for k in range(11)]
    ids = (
        "prob_basic",
        "prob_basic_lower",
        "few_blocked",
        "sparse_neighborhood",
        "replace_by_prob",
        "ratio_envelope",
    )
    ok = True
    detail = []
    worst = {}
    checked = 0
    for q in (5, 6, 7):
        family = list(
            rooted_family(enumerate_graphs(7, 3, q, pin_specs="patterns"), 3)
        )
        for bid in ids:
            rep = verify_bound(bid, family, grid, delta=3, family_name=f"q={q}")
            checked += rep.instances_checked
            if rep.violations != 0:
                ok = False
                detail.append(f"{bid}@q={q}: {rep.violations} violations ({rep.witness})")
            if rep.worst_slack is not None:
                prev = worst.get(bid)
                worst[bid] = rep.worst_slack if prev is None else min(prev, rep.worst_slack)
    # tightness witness: the w=0 upper bound is nearly achieved
    rg = clique_tightness_witness(6, 3)
    g = rg.graph
    m = marginal(g, Fraction(0), rg.root, 1)
    bound = upper_bound_basic(
        6, g.free_degree(rg.root), len(g.blocked_colors(rg.root)), 0, Fraction(0)
    )
    rel_slack = float((bound - m) / bound)
    if not (0 <= rel_slack < 1e-2):
        ok = False
        detail.append(f"witness slack {rel_slack}")
    slack_str = ", ".join(f"{k}={float(v):.3g}" for k, v in sorted(worst.items()))
    _report(
        2,
        "bound verifiers",
        ok,
        detail[0] if detail else f"{checked} checks, worst slack: {slack_str}; witness slack {rel_slack:.2e}",
    )


def test_criterion_3_numeric_reproduction():
    t0 = time.perf_counter()
    ok = True
    detail = []
    # (a) few-blocked multiplier chain
    if not (corollary_few_blocked_intermediate(0.02) < 1):
        ok, detail = False, ["few-blocked gamma=0.02 multiplier >= 1"]
    if not (corollary_few_blocked_intermediate(0.14) < 0.977):
        ok, detail = False, ["few-blocked gamma=0.14 multiplier >= 0.977"]
    if corollary_thresholds(999, 500, 400, 0.02, 0.002) != 1.0:
        ok, detail = False, ["threshold at gamma=0.02 not 1.0"]
    # (b) sparse-neighborhood intermediate constants at Delta=500, eta=0.002
    first = (1 - (1 - 0.002) / ((1 - 0.002) * 500)) ** (1.358 * 500 / 1.996)
    if not (first >= 0.5053):
        ok, detail = False, [f"sparse first factor {first}"]
    second = corollary_sparse_second_factor(500, 0.002, 0.002)
    if not (second >= 0.9979):
        ok, detail = False, [f"sparse second factor {second}"]
    mult = corollary_sparse(q=999, delta=500, f=499, dbar=0.3 * 499, eta=0.002, w=0.001)
    if not (mult < 1):
        ok, detail = False, [f"sparse final multiplier {mult}"]
    # (c) constant pack positivity
    for alpha in (2 / 3, 0.996, 1.0):
        pack = ConstantPack(alpha)
        if not (pack.C == pack.f / 2 > 0 and pack.C1 == pack.f / (2 * pack.g) > 0):
            ok, detail = False, [f"constants at alpha={alpha}"]
    # (d) the perturbation-size formula: min of four positive terms, monotone
    pack = ConstantPack(2 / 3)
    d = delta_for_epsilon(2 / 3, 3, 0.01)
    terms = (math.pi / 8, pack.C1 / 3, pack.C2 * 0.01, 0.01 / (8 * pack.C2))
    if not (d == min(terms) and all(t > 0 for t in terms)):
        ok, detail = False, ["perturbation formula not min of four positives"]
    eps_grid = [0.001, 0.01, 0.1, 0.5]
    vals = [delta_for_epsilon(2 / 3, 3, e) for e in eps_grid]
    if vals != sorted(vals):
        ok, detail = False, ["perturbation formula not monotone in eps"]
    elapsed = time.perf_counter() - t0
    if elapsed >= 1.0:
        ok, detail = False, [f"runtime {elapsed:.2f}s >= 1s"]
    _report(3, "numeric reproduction", ok, detail[0] if detail else f"all constants verified in {elapsed * 1e3:.1f} ms")


def test_criterion_4_zero_free_scan():
    # All connected unpinned graphs <= 8 vertices, max degree 3, q = 6:
    # every root keeps a strictly positive distance to [0,1].
    graphs = list(enumerate_graphs(8, 3, 6))
    summary = zero_free_scan(graphs, 6, 3)
    ok = (
        not summary.out_of_regime
        and summary.family_min_dist > 0
        and summary.all_residuals_ok
        and all(r.degree_check for r in summary.reports)
    )
    _report(
        4,
        "zero-free scan",
        ok,
        f"{len(graphs)} graphs, family margin {summary.family_min_dist:.4f}",
    )


def test_criterion_5_counting_guarantee():
    # All connected unpinned graphs <= 7 vertices with max degree 3 at
    # q = 6, plus the Petersen graph, at eps = 0.01: the estimate is
    # within exp(+-eps_achieved) of the exact count, eps_achieved <= eps.
    instances = list(enumerate_graphs(7, 3, 6))
    instances.append(generate_family("petersen", 6))
    eps = 0.01
    ok = len(instances) >= 50
    detail = [] if ok else [f"only {len(instances)} instances"]
    for g in instances:
        est = approx_count_colorings(g, eps)
        truth = exact_count_oracle(g)
        if est.eps_achieved > eps:
            ok = False
            detail.append(f"eps_achieved {est.eps_achieved} on n={g.n}")
            break
        if truth == 0:
            if not est.exact_zero:
                ok = False
                detail.append(f"missed zero count on n={g.n}")
                break
            continue
        if abs(math.log(est.xi) - math.log(truth)) > est.eps_achieved:
            ok = False
            detail.append(f"log error exceeds bound on n={g.n}")
            break
    _report(
        5,
        "counting guarantee",
        ok,
        detail[0] if detail else f"{len(instances)} instances within exp(+-{eps})",
    )


def test_criterion_6_induction_statements():
    # In-class rooted graphs <= 7 vertices at max degree 3, q = 6, with
    # free root degree <= 2, w in {0, 1/2, 1}, perturbed to wt = w + step
    # where step is half the admissible perturbation for eps = (pi/16)/27.
    eps2 = math.pi / 16
    delta = 3
    eps = eps2 / (3 * delta**2)
    eps1 = delta_for_epsilon(2 / 3, delta, eps)
    step = Fraction(eps1 / 2).limit_denominator(10**12)
    checked = failed = indeterminate = 0
    ok = True
    detail = []
    for g in enumerate_graphs(7, delta, 6, pin_specs="patterns"):
        for v in g.free_vertices:
            rg = RootedGraph(g, v)
            if not rg.in_class(delta) or g.free_degree(v) > delta - 1:
                continue
            for w in (Fraction(0), Fraction(1, 2), Fraction(1)):
                res = induction_statement_check(rg, w, w + step, eps2, delta)
                if res.indeterminate:
                    indeterminate += 1
                    continue
                checked += 1
                if not (res.s1 and res.s2 and res.s3):
                    failed += 1
                    if ok:
                        detail.append(f"first failure n={g.n} w={w}")
                    ok = False
    if checked == 0:
        ok = False
        detail.append("no determinate instances")
    _report(
        6,
        "induction statements",
        ok and failed == 0,
        detail[0]
        if detail
        else f"{checked} instances, 0 failures, {indeterminate} indeterminate",
    )
