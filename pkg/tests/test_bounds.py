"""Formula-level and family-level checks of the marginal bounds."""

import cmath
import math
import random
from fractions import Fraction

import pytest

from pottszero.bounds import (
    BoundReport,
    ConstantPack,
    barvinok_cone_check,
    clique_tightness_witness,
    corollary_few_blocked_intermediate,
    corollary_sparse,
    corollary_sparse_second_factor,
    corollary_thresholds,
    delta_for_epsilon,
    few_blocked_bound,
    lower_bound_basic,
    ratio_envelope,
    ratio_envelope_F,
    registered_bounds,
    sparse_neighborhood_bound,
    sum_lower_bound,
    upper_bound_basic,
    upper_bound_basic_degree,
    verify_bound,
)
from pottszero.errors import DomainError
from pottszero.exact import marginal
from pottszero.families import enumerate_graphs, rooted_family
from pottszero.graphs import BlockedColorVector


# -- constants ---------------------------------------------------------


@pytest.mark.parametrize("alpha", [2 / 3, 0.996, 1.0])
def test_constant_pack_identities(alpha):
    pack = ConstantPack(alpha)
    assert pack.M > 0 and pack.f > 0 and pack.g > 0
    assert pack.C == pack.f / 2 > 0
    assert pack.C1 == pack.f / (2 * pack.g) > 0
    assert pack.C2 > 0


def test_constant_pack_reference_values():
    pack = ConstantPack(2 / 3)
    # f(2/3) = (4/9)/(3*(5/3)*e^{3/2}); C = f/2; C1 = f/(2g)
    f = (2 / 3) ** 2 / (3 * (5 / 3) * math.exp(3 / 2))
    assert math.isclose(pack.C, f / 2)
    assert math.isclose(pack.C, 0.009917, rel_tol=1e-3)
    assert math.isclose(pack.C1, 4.02e-5, rel_tol=1e-2)


def test_constant_pack_rejects_nonpositive_alpha():
    with pytest.raises(DomainError):
        ConstantPack(0)


def test_delta_for_epsilon_structure():
    pack = ConstantPack(2 / 3)
    d = delta_for_epsilon(2 / 3, 3, 0.01)
    assert d == min(math.pi / 8, pack.C1 / 3, pack.C2 * 0.01, 0.01 / (8 * pack.C2))
    assert d > 0
    # linear in eps near 0 (the C2*eps term dominates)
    tiny = delta_for_epsilon(2 / 3, 3, 1e-9)
    assert math.isclose(tiny, pack.C2 * 1e-9)
    # large Delta: the C1/Delta term dominates
    assert math.isclose(delta_for_epsilon(2 / 3, 10**9, 0.5), pack.C1 / 10**9)


def test_delta_for_epsilon_monotone_grid():
    eps_grid = [0.001, 0.01, 0.1, 0.5, 0.9]
    for delta_deg in (3, 10, 100):
        vals = [delta_for_epsilon(2 / 3, delta_deg, e) for e in eps_grid]
        assert vals == sorted(vals)  # nondecreasing in eps
    for eps in eps_grid:
        vals = [delta_for_epsilon(2 / 3, d, eps) for d in (3, 10, 100, 1000)]
        assert vals == sorted(vals, reverse=True)  # nonincreasing in Delta


# -- individual formulas -----------------------------------------------


def test_upper_bound_basic_trivial_points():
    assert upper_bound_basic(5, 2, 1, 0, 1) == Fraction(1, 5)
    assert upper_bound_basic_degree(5, 3, 0, 1) == 1 / 5
    assert upper_bound_basic(5, 2, 1, 2, 0) == 0
    with pytest.raises(DomainError):
        upper_bound_basic(3, 2, 2, 0, Fraction(0))


def test_lower_bound_basic():
    assert math.isclose(lower_bound_basic(7, 1.0), 1 / (math.e * 7))
    # alpha -> infinity approaches 1/q
    assert math.isclose(lower_bound_basic(7, 1e9), 1 / 7, rel_tol=1e-6)
    with pytest.raises(DomainError):
        lower_bound_basic(7, -1)


def test_ratio_envelope_values():
    lo, hi = ratio_envelope(7, 3, 1.0)
    assert math.isclose(lo, 4 / (7 * math.e))
    assert math.isclose(hi, 7 * math.e / 4)
    assert lo < 1 < hi
    flo, fhi = ratio_envelope_F(7, 3, 1.0)
    assert math.isclose(flo, 4**3 / (7**3 * math.exp(2)))
    with pytest.raises(DomainError):
        ratio_envelope(4, 3, 1.0)


def test_few_blocked_reduces_to_degree_form():
    assert math.isclose(few_blocked_bound(7, 3, 2, 0.0, 1.0, 0.3), upper_bound_basic_degree(7, 3, 0, 0.3))
    assert math.isclose(few_blocked_bound(7, 3, 2, 0.5, 1.0, 1.0), 1 / 7)


def test_few_blocked_monotone():
    # decreasing in gamma and alpha-increases tighten; increasing in d
    gammas = [0.0, 0.25, 0.5, 0.75, 1.0]
    vals = [few_blocked_bound(7, 3, 2, g, 1.0, 0.3) for g in gammas]
    assert vals == sorted(vals, reverse=True)
    dvals = [few_blocked_bound(9, d, 2, 0.5, 1.0, 0.3) for d in (1, 2, 3)]
    assert dvals == sorted(dvals)


def test_corollary_few_blocked_chain():
    assert corollary_few_blocked_intermediate(0.02) < 1
    assert corollary_few_blocked_intermediate(0.14) < 0.977
    assert corollary_few_blocked_intermediate(1.0) < corollary_few_blocked_intermediate(0.02)
    assert corollary_thresholds(999, 500, 400, 0.02, 0.002) == 1.0
    assert corollary_thresholds(999, 500, 400, 0.14, 0.002) == 0.977
    with pytest.raises(DomainError):
        corollary_thresholds(999, 400, 300, 0.02, 0.002)  # Delta too small


def test_sparse_neighborhood_trivial_points():
    # w=0 second factor is 1
    b0 = sparse_neighborhood_bound(7, 3, 2, 4, 1, 0.0)
    b1 = 1 / (4 * (1 - 1 / 5) ** ((4 * 2 + 2 + 2) / 4))
    assert math.isclose(b0, b1)
    # f=0, e_H=0: bound = 1/|L|
    assert math.isclose(sparse_neighborhood_bound(7, 3, 0, 4, 0, 0.5), 1 / 4)
    with pytest.raises(DomainError):
        sparse_neighborhood_bound(7, 3, 2, 0, 0, 0.5)


def test_corollary_sparse_chain():
    # first factor >= 0.5053 and final multiplier < 1 at the regime corner
    mult = corollary_sparse(q=999, delta=500, f=499, dbar=0.3 * 499, eta=0.002, w=0.001)
    assert mult < 1
    second = corollary_sparse_second_factor(500, 0.002, 0.002)
    assert second >= 0.9979
    with pytest.raises(DomainError):
        corollary_sparse(q=999, delta=500, f=499, dbar=0.5 * 499, eta=0.002, w=0.001)


def test_sum_lower_bound_trivial():
    q = 7
    c = BlockedColorVector((0,) * q)
    pack = ConstantPack(1.0)
    lhs, rhs = sum_lower_bound(1.0, c, (0.0,) * q, 0, pack, 3)
    assert math.isclose(lhs, q)
    assert rhs == pack.C * 3
    assert lhs >= rhs


def test_sum_lower_bound_base_case():
    # |Z_G(wt)| = |sum_j wt^{c_j}| for a star root: in-regime instances
    # dominate C(2/3) * Delta
    pack = ConstantPack(2 / 3)
    q, delta = 6, 3
    for c_counts in [(0,) * q, (1, 0, 0, 0, 0, 0), (1, 1, 1, 0, 0, 0)]:
        c = BlockedColorVector(c_counts)
        wt = 0.5 + 1e-6j
        lhs, rhs = sum_lower_bound(wt, c, (0.0,) * q, 0, pack, delta)
        assert lhs >= rhs


def test_barvinok_cone_check():
    # equal vectors: equality at phi=0
    lhs, rhs = barvinok_cone_check([1 + 1j, 1 + 1j, 1 + 1j], 0.0)
    assert math.isclose(lhs, rhs)
    # two unit vectors at angle phi: lhs = 2cos(phi/2) = rhs
    phi = 0.8
    us = [1.0, cmath.exp(1j * phi)]
    lhs, rhs = barvinok_cone_check(us, phi)
    assert math.isclose(lhs, rhs)
    with pytest.raises(DomainError):
        barvinok_cone_check([1.0, -1.0], 0.5)  # angle pi exceeds cone
    with pytest.raises(DomainError):
        barvinok_cone_check([0.0, 1.0], 0.5)  # zero vector


def test_barvinok_random_cone():
    rng = random.Random(4242)
    phi = 0.5
    for _ in range(10**4):
        base = rng.uniform(0, 2 * math.pi)
        us = [
            rng.uniform(0.1, 2.0) * cmath.exp(1j * (base + rng.uniform(0, phi)))
            for _ in range(rng.randint(2, 6))
        ]
        lhs, rhs = barvinok_cone_check(us, phi)
        assert lhs >= rhs - 1e-12


# -- report plumbing ---------------------------------------------------


def test_bound_report_merge_monoid():
    a = BoundReport("x", "fam")
    b = BoundReport("x", "fam")
    a.record(0.5, "wa")
    b.record(-0.1, "wb")
    b.record(0.2, "wb2")
    m = a.merge(b)
    assert m.instances_checked == 3
    assert m.violations == 1
    assert m.worst_slack == -0.1
    assert m.witness == "wb"
    with pytest.raises(ValueError):
        a.merge(BoundReport("y", "fam"))


def test_verify_bound_unknown_id():
    with pytest.raises(KeyError):
        verify_bound("no_such_bound", [], [Fraction(0)])


def test_registered_bounds_cover_contract():
    need = {
        "prob_basic",
        "prob_basic_lower",
        "few_blocked",
        "sparse_neighborhood",
        "replace_by_prob",
        "ratio_envelope",
        "gradient_identity",
        "telescoping",
        "eion_trick",
        "pin_to_leaves",
    }
    assert need <= set(registered_bounds())


def _family(n_max, q, delta=3, pins="patterns"):
    return list(rooted_family(enumerate_graphs(n_max, delta, q, pin_specs=pins), delta))


def test_all_bounds_clean_on_small_family():
    fam = _family(5, 5)
    grid = [Fraction(0), Fraction(1, 2), Fraction(1)]
    for bid in registered_bounds():
        report = verify_bound(bid, fam, grid, delta=3, family_name="n<=5")
        assert report.violations == 0, (bid, report.witness)
        assert report.instances_checked > 0


def test_out_of_regime_flagged_not_failed():
    # q = Delta + 1 leaves no alpha room: regime-dependent bounds must flag
    fam = _family(4, 4, pins="none")
    report = verify_bound("ratio_envelope", fam, [Fraction(1, 2)], delta=3)
    assert report.out_of_regime


def test_clique_tightness_witness_meets_bound():
    q, delta = 6, 3
    rg = clique_tightness_witness(q, delta)
    g = rg.graph
    m = marginal(g, Fraction(0), rg.root, 1)
    f = g.free_degree(rg.root)
    b = len(g.blocked_colors(rg.root))
    bound = upper_bound_basic(q, f, b, 0, Fraction(0))
    assert m == Fraction(1, q - 2)
    rel_slack = float((bound - m) / bound)
    assert 0 <= rel_slack < 1e-2
