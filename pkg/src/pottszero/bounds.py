"""Explicit marginal-probability bounds, their constants, and verifiers.

Each bound is an executable formula plus a registered empirical verifier
that sweeps an enumerated graph family and reports the violation count and
the worst slack (min of bound - quantity).  Zero violations is the release
requirement; slack is recorded so tightness can be inspected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import DomainError, UndefinedMeasureError, ZeroRatioError
from .exact import marginal, ratio_vector_exact
from .graphs import (
    BlockedColorVector,
    PartiallyColoredGraph,
    RootedGraph,
    attach_pinned_leaf,
    blocked_color_vector,
    pin_to_leaves,
    strip_pinned_neighbors,
    telescoping_decompose,
)


@dataclass(frozen=True)
class ConstantPack:
    """The explicit constants, all determined by the slack parameter alpha
    (how far q sits above (1+alpha)*Delta)."""

    alpha: float

    def __post_init__(self):
        if self.alpha <= 0:
            raise DomainError("alpha must be positive")

    @property
    def M(self) -> float:
        return (1 + self.alpha) * math.exp(1 / self.alpha) / self.alpha

    @property
    def f(self) -> float:
        a = self.alpha
        return a * a / (3 * (1 + a) * math.exp(1 / a))

    @property
    def g(self) -> float:
        a = self.alpha
        return 22 * math.exp(1 / a) * (1 + a) / a

    @property
    def C(self) -> float:
        return self.f / 2

    @property
    def C1(self) -> float:
        return self.f / (2 * self.g)

    @property
    def C2(self) -> float:
        a = self.alpha
        return a**3 / (16 * (1 + a) ** 3 * math.exp(2 / a))


def delta_for_epsilon(alpha: float, delta_deg: int, eps: float) -> float:
    """Admissible perturbation radius: min of pi/8, C1/Delta, C2*eps and
    eps/(8*C2)."""
    pack = ConstantPack(alpha)
    return min(math.pi / 8, pack.C1 / delta_deg, pack.C2 * eps, eps / (8 * pack.C2))


# -- bound formulas ----------------------------------------------------


def upper_bound_basic(q: int, f: int, b: int, c_j: int, w):
    """w^{c_j} / (q - (f+b) + (f+b)w) for a root with f free and b pinned
    neighbors, c_j of them pinned to color j."""
    if isinstance(w, int):
        w = Fraction(w)
    denom = q - (f + b) + (f + b) * w
    if denom <= 0:
        raise DomainError(f"nonpositive denominator q-(f+b)+(f+b)w = {denom}")
    return w**c_j / denom


def upper_bound_basic_degree(q: int, d: int, c_j: int, w):
    """Degree form: w^{c_j} / (q - d + d w)."""
    denom = q - d + d * w
    if denom <= 0:
        raise DomainError(f"nonpositive denominator q-d+dw = {denom}")
    return w**c_j / denom


def lower_bound_basic(q: int, alpha: float) -> float:
    """1/(e^{1/alpha} q), valid for colors not pinned on any neighbor when
    q >= (1+alpha)Delta + 1."""
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    return 1 / (math.exp(1 / alpha) * q)


def ratio_envelope(q: int, delta: int, alpha: float) -> tuple[float, float]:
    """Two-sided envelope on exp of any log-ratio entry of an in-class
    rooted graph with no pinned neighbors at the root."""
    if q < (1 + alpha) * delta + 1:
        raise DomainError(f"need q >= (1+alpha)Delta+1, got q={q}")
    lo = (q - delta) / (q * math.exp(1 / alpha))
    hi = q * math.exp(1 / alpha) / (q - delta)
    return lo, hi


def ratio_envelope_F(q: int, delta: int, alpha: float) -> tuple[float, float]:
    """Envelope for |P/Q|: cubes of the marginal-style envelope."""
    if q < (1 + alpha) * delta + 1:
        raise DomainError(f"need q >= (1+alpha)Delta+1, got q={q}")
    lo = (q - delta) ** 3 / (q**3 * math.exp(2 / alpha))
    hi = q**3 * math.exp(2 / alpha) / (q - delta) ** 3
    return lo, hi


def few_blocked_bound(q: int, d: int, f: int, gamma: float, alpha: float, w) -> float:
    """((1-w) exp(-gamma f/(q e^{1/alpha})) + w) / (q - d + dw): the basic
    upper bound sharpened when a gamma-fraction of the f free neighbors
    leave color j unblocked in their own neighborhoods."""
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    if not 0 <= gamma <= 1:
        raise DomainError("gamma must lie in [0,1]")
    denom = q - d + d * w
    if denom <= 0:
        raise DomainError(f"nonpositive denominator q-d+dw = {denom}")
    return ((1 - w) * math.exp(-gamma * f / (q * math.exp(1 / alpha))) + w) / denom


def corollary_thresholds(q: int, delta: int, f: int, gamma: float, eta: float) -> float:
    """Multiplier of 1/(f+1) guaranteed at large degree: 1 when the
    unblocked fraction gamma >= 0.02, and 0.977 when gamma >= 0.14.

    The chain is confirmed numerically at call time via the intermediate
    quantity exp(-0.998*gamma/(1.998*e^{1000/996}))/0.998.
    """
    if delta < 500 or eta > 0.002 or q < (2 - eta) * delta or f > delta - 1:
        raise DomainError("outside the large-degree regime")
    inter = corollary_few_blocked_intermediate(gamma)
    if gamma >= 0.14:
        if not inter < 0.977:
            raise DomainError("numeric chain failed at gamma >= 0.14")
        return 0.977
    if gamma >= 0.02:
        if not inter < 1:
            raise DomainError("numeric chain failed at gamma >= 0.02")
        return 1.0
    raise DomainError("gamma below 0.02: no improved multiplier")


def corollary_few_blocked_intermediate(gamma: float) -> float:
    """exp(-0.998*gamma/(1.998*e^{1000/996}))/0.998, the quantity the
    large-degree multiplier chain reduces to."""
    return math.exp(-0.998 * gamma / (1.998 * math.exp(1000 / 996))) / 0.998


def sparse_neighborhood_bound(q: int, delta: int, f: int, L_size: int, e_H: int, w) -> float:
    """Upper bound on a root marginal in terms of the number e_H of edges
    inside the root's free neighborhood and the count L_size of colors that
    are reasonably likely on the root."""
    if L_size < 1:
        raise DomainError("L_size must be >= 1")
    if q - delta + 1 - w <= 0 or q - delta + 1 <= 0:
        raise DomainError("q too small relative to delta")
    first = (1 - (1 - w) / (q - delta + 1 - w)) ** (((q - delta) * f + 2 * e_H + f) / L_size)
    second = (1 - w / (q - delta + 1)) ** (f * q / L_size)
    return 1 / (L_size * first * second)


def corollary_sparse(q: int, delta: int, f: int, dbar: float, eta: float, w) -> float:
    """Large-degree specialization: when the root's free neighborhood has
    average degree at most 0.36 f, the marginal is below 1/(f+1).

    Returns the final multiplier 1/(0.504*(2-eta-1/Delta)); raises if any
    link of the numeric chain fails.
    """
    if delta < 500 or eta > 0.002 or q < (2 - eta) * delta:
        raise DomainError("outside the large-degree regime")
    if not f >= (1 - eta) * delta - Fraction(2, 3):
        raise DomainError("f too small for the sparse corollary")
    if not 0 <= w <= 0.002:
        raise DomainError("w outside [0, 0.002]")
    if dbar > 0.36 * f:
        raise DomainError("average neighborhood degree above 0.36 f")
    first = (1 - (1 - w) / ((1 - eta) * delta)) ** (1.358 * delta / 1.996)
    if not first >= 0.5053:
        raise DomainError("numeric chain failed: first factor below 0.5053")
    second = (1 - w / (q - delta + 1)) ** (f * q / (f + 1) / (q - delta))
    multiplier = 1 / (0.504 * (2 - eta - 1 / delta))
    if not multiplier < 1:
        raise DomainError("numeric chain failed: final multiplier not below 1")
    return multiplier


def corollary_sparse_second_factor(delta: int, eta: float, w) -> float:
    """The second factor of the sparse-neighborhood chain at the corner of
    the large-degree regime, claimed >= 0.9979."""
    q = (2 - eta) * delta
    f = (1 - eta) * delta - 2 / 3
    return (1 - w / (q - delta + 1)) ** (f * q / ((f + 1) * (q - delta)))


def sum_lower_bound(wt, c: BlockedColorVector, x, tau: int, pack: ConstantPack, delta_deg: int):
    """|sum_{j != l} wt^{c_j} e^{x_j} + wt^{c_l + tau}| >= C(alpha)*Delta.

    x has q entries here (one per color, reference entry 0); l is the color
    carrying the extra tau in {0,1} powers of wt.  Returns (lhs, rhs).
    """
    if tau not in (0, 1):
        raise DomainError("tau must be 0 or 1")
    q = c.q
    x = tuple(x)
    if len(x) != q:
        raise ValueError(f"x must have length q = {q}")
    import cmath

    total = 0j
    for j in range(q - 1):
        total += complex(wt) ** c.counts[j] * cmath.exp(complex(x[j]))
    total += complex(wt) ** (c.counts[q - 1] + tau) * cmath.exp(complex(x[q - 1]))
    lhs = abs(total)
    rhs = pack.C * delta_deg
    return lhs, rhs


def barvinok_cone_check(us, phi: float):
    """|sum u_j| >= cos(phi/2) * sum|u_j| for planar vectors in a cone of
    angle phi < 2*pi/3.  Returns (lhs, rhs)."""
    us = [complex(u) for u in us]
    if any(u == 0 for u in us):
        raise DomainError("vectors must be nonzero")
    if not 0 <= phi < 2 * math.pi / 3:
        raise DomainError("phi must lie in [0, 2*pi/3)")
    angles = [math.atan2(u.imag, u.real) for u in us]
    for a, b in combinations(angles, 2):
        diff = abs(a - b)
        diff = min(diff, 2 * math.pi - diff)
        if diff > phi + 1e-12:
            raise DomainError(f"pairwise angle {diff} exceeds the cone angle {phi}")
    lhs = abs(sum(us))
    rhs = math.cos(phi / 2) * sum(abs(u) for u in us)
    return lhs, rhs


# -- reports and verifiers ---------------------------------------------


@dataclass
class BoundReport:
    """Outcome of sweeping one bound over a family."""

    bound_id: str
    family: str
    instances_checked: int = 0
    violations: int = 0
    skipped: int = 0
    worst_slack: float | None = None
    witness: str | None = None
    out_of_regime: bool = False

    def record(self, slack, witness: str):
        self.instances_checked += 1
        slack_f = float(slack)
        if slack < 0:
            self.violations += 1
        if self.worst_slack is None or slack_f < self.worst_slack:
            self.worst_slack = slack_f
            self.witness = witness

    def skip(self):
        self.skipped += 1

    def merge(self, other: "BoundReport") -> "BoundReport":
        if (self.bound_id, self.family) != (other.bound_id, other.family):
            raise ValueError("cannot merge reports of different sweeps")
        merged = BoundReport(self.bound_id, self.family)
        merged.instances_checked = self.instances_checked + other.instances_checked
        merged.violations = self.violations + other.violations
        merged.skipped = self.skipped + other.skipped
        for part in (self, other):
            if part.worst_slack is not None and (
                merged.worst_slack is None or part.worst_slack < merged.worst_slack
            ):
                merged.worst_slack = part.worst_slack
                merged.witness = part.witness
        merged.out_of_regime = self.out_of_regime or other.out_of_regime
        return merged

    def to_dict(self) -> dict:
        return {
            "bound_id": self.bound_id,
            "family": self.family,
            "instances_checked": self.instances_checked,
            "violations": self.violations,
            "skipped": self.skipped,
            "worst_slack": self.worst_slack,
            "witness": self.witness,
            "out_of_regime": self.out_of_regime,
        }


def _witness(g: PartiallyColoredGraph, root: int, j, w) -> str:
    return f"n={g.n} edges={g.edges} pins={g.pins} q={g.q} root={root} j={j} w={w}"


def _alpha_for(q: int, delta: int) -> float:
    """Largest alpha with q >= (1+alpha)Delta + 1."""
    if q < delta + 2:
        raise DomainError(f"q={q} leaves no room above Delta+1={delta + 1}")
    return (q - delta - 1) / delta


def _check_prob_basic(report, rg: RootedGraph, w: Fraction, delta: int):
    g = rg.graph
    v = rg.root
    f = g.free_degree(v)
    b = g.degree(v) - f
    c = blocked_color_vector(rg)
    for j in range(1, g.q + 1):
        try:
            m = marginal(g, w, v, j)
        except UndefinedMeasureError:
            report.skip()
            continue
        bound = upper_bound_basic(g.q, f, b, c.counts[j - 1], w)
        report.record(bound - m, _witness(g, v, j, w))
        bound_d = upper_bound_basic_degree(g.q, g.degree(v), c.counts[j - 1], w)
        report.record(bound_d - float(m), _witness(g, v, j, w) + " [degree-form]")


def _check_prob_basic_lower(report, rg: RootedGraph, w: Fraction, delta: int):
    g = rg.graph
    v = rg.root
    alpha = _alpha_for(g.q, delta)
    bound = lower_bound_basic(g.q, alpha)
    c = blocked_color_vector(rg)
    for j in range(1, g.q + 1):
        if c.counts[j - 1] != 0:
            continue
        try:
            m = marginal(g, w, v, j)
        except UndefinedMeasureError:
            report.skip()
            continue
        report.record(float(m) - bound, _witness(g, v, j, w))


def _check_ratio_envelope(report, rg: RootedGraph, w: Fraction, delta: int):
    g = rg.graph
    alpha = _alpha_for(g.q, delta)
    lo, hi = ratio_envelope(g.q, delta, alpha)
    bare = strip_pinned_neighbors(rg)
    try:
        ratios = ratio_vector_exact(bare, w)
    except ZeroRatioError:
        report.skip()
        return
    for j, r in enumerate(ratios):
        rf = float(r)
        report.record(rf - lo, _witness(g, rg.root, j + 1, w) + " [lo]")
        report.record(hi - rf, _witness(g, rg.root, j + 1, w) + " [hi]")


def _check_few_blocked(report, rg: RootedGraph, w: Fraction, delta: int):
    g = rg.graph
    v = rg.root
    alpha = _alpha_for(g.q, delta)
    pm = g.pin_map
    free_nbrs = [u for u in g.neighbors(v) if u not in pm]
    f = len(free_nbrs)
    if f == 0:
        report.skip()
        return
    d = g.degree(v)
    blocked_at_v = g.blocked_colors(v)
    for j in range(1, g.q + 1):
        if j in blocked_at_v:  # the bound applies to colors free at the root
            continue
        # t = free neighbors of v at which color j is not blocked
        t = sum(1 for u in free_nbrs if j not in g.blocked_colors(u))
        gamma = t / f
        try:
            m = marginal(g, w, v, j)
        except UndefinedMeasureError:
            report.skip()
            continue
        bound = few_blocked_bound(g.q, d, f, gamma, alpha, float(w))
        report.record(bound - float(m), _witness(g, v, j, w))


def _check_sparse_neighborhood(report, rg: RootedGraph, w: Fraction, delta: int):
    g = rg.graph
    v = rg.root
    alpha = _alpha_for(g.q, delta)
    pm = g.pin_map
    free_nbrs = [u for u in g.neighbors(v) if u not in pm]
    f = len(free_nbrs)
    nbr_set = set(free_nbrs)
    e_H = sum(1 for a, b in g.edges if a in nbr_set and b in nbr_set)
    blocked = g.blocked_colors(v)
    L = [j for j in range(1, g.q + 1) if j not in blocked]
    if not L:
        report.skip()
        return
    bound = sparse_neighborhood_bound(g.q, delta, f, len(L), e_H, float(w))
    for j in L:
        try:
            m = marginal(g, w, v, j)
        except UndefinedMeasureError:
            report.skip()
            continue
        report.record(bound - float(m), _witness(g, v, j, w))


def _check_replace_by_prob(report, rg: RootedGraph, w: Fraction, delta: int, rng=None):
    from .calculus import inner_product_bound

    import random

    g = rg.graph
    rng = rng or random.Random(20240 + g.n)
    x = [rng.uniform(-1, 1) for _ in range(g.q - 1)]
    try:
        lhs, rhs, _side = inner_product_bound(rg, w, x)
    except UndefinedMeasureError:
        report.skip()
        return
    report.record(rhs - lhs + 1e-12, _witness(g, rg.root, "-", w))


def _check_gradient_identity(report, rg: RootedGraph, w: Fraction, delta: int):
    from .calculus import grad_F_from_ratios, marginal_difference

    g = rg.graph
    norm = pin_to_leaves(g)
    # identity is stated for in-class graphs; root id unchanged by pin_to_leaves
    rg = RootedGraph(norm, rg.root) if norm is not g else rg
    c = blocked_color_vector(rg)
    bare = strip_pinned_neighbors(rg)
    try:
        ratios = ratio_vector_exact(bare, w)
        grad = grad_F_from_ratios(w, c, ratios)
        md = marginal_difference(rg, w)
    except (ZeroRatioError, UndefinedMeasureError):
        report.skip()
        return
    worst = max(abs(a - b) for a, b in zip(grad, md.entries))
    # exact identity: slack is 0 - any deviation is a violation
    report.record(-float(worst) if worst != 0 else 0.0, _witness(g, rg.root, "-", w))


def _check_telescoping(report, rg: RootedGraph, w: Fraction, delta: int):
    from .calculus import log_ratio_pair_exact

    g = rg.graph
    l1, l2 = 1, g.q
    bare = strip_pinned_neighbors(rg)
    try:
        total = log_ratio_pair_exact(bare, w, l1, l2)
        prod = Fraction(1)
        for hat_rg, bare_rg in telescoping_decompose(bare, l1, l2):
            num = ratio_vector_exact(hat_rg, w, ref=l2)
            colors = [j for j in range(1, g.q + 1) if j != l2]
            prod *= num[colors.index(l1)]
    except (ZeroRatioError, UndefinedMeasureError):
        report.skip()
        return
    report.record(0.0 if prod == total else -float(abs(prod - total)), _witness(g, rg.root, "-", w))


def _check_pin_to_leaves(report, rg: RootedGraph, w: Fraction, delta: int):
    from .exact import partition_poly

    g = rg.graph
    z1 = partition_poly(g)
    z2 = partition_poly(pin_to_leaves(g))
    report.record(0.0 if z1 == z2 else -1.0, _witness(g, rg.root, "-", w))


def _check_strip_identity(report, rg: RootedGraph, w: Fraction, delta: int):
    """Z^j_G = w^{c_j} Z^j_{G with pinned root-neighbors stripped}."""
    from .exact import restricted_all

    g = rg.graph
    c = blocked_color_vector(rg)
    bare = strip_pinned_neighbors(rg)
    full_polys = restricted_all(rg)
    bare_polys = restricted_all(bare)
    ok = True
    for j in range(1, g.q + 1):
        lhs = full_polys[j - 1].coefficients
        shifted = (0,) * c.counts[j - 1] + bare_polys[j - 1].coefficients
        # normalize trailing zeros like WPolynomial does
        from .exact import WPolynomial

        if WPolynomial(lhs) != WPolynomial(shifted):
            ok = False
    report.record(0.0 if ok else -1.0, _witness(g, rg.root, "-", w))


def _check_eion_trick(report, rg: RootedGraph, w: Fraction, delta: int):
    """Marginal at color q as a ratio of neighborhood expectations over the
    measure on G - v (exact identity, needs q >= Delta + 1)."""
    from .exact import neighborhood_expectation_all

    g = rg.graph
    v = rg.root
    if g.q < g.max_degree() + 1:
        raise DomainError("identity needs q >= Delta + 1")
    try:
        m = marginal(g, w, v, g.q)
        nums = neighborhood_expectation_all(g, w, v)
    except UndefinedMeasureError:
        report.skip()
        return
    total = sum(nums)
    if total == 0:
        report.skip()
        return
    rhs = nums[g.q - 1] / total
    report.record(0.0 if m == rhs else -float(abs(m - rhs)), _witness(g, v, g.q, w))


_REGISTRY = {
    "prob_basic": _check_prob_basic,
    "prob_basic_lower": _check_prob_basic_lower,
    "ratio_envelope": _check_ratio_envelope,
    "few_blocked": _check_few_blocked,
    "sparse_neighborhood": _check_sparse_neighborhood,
    "replace_by_prob": _check_replace_by_prob,
    "gradient_identity": _check_gradient_identity,
    "telescoping": _check_telescoping,
    "pin_to_leaves": _check_pin_to_leaves,
    "eion_trick": _check_eion_trick,
    "strip_identity": _check_strip_identity,
}


def registered_bounds() -> tuple[str, ...]:
    return tuple(_REGISTRY)


def verify_bound(bound_id: str, family, grid, delta: int = 3, family_name: str = "") -> BoundReport:
    """Sweep `bound_id` over rooted graphs in `family` at every w in `grid`.

    family: iterable of RootedGraph; grid: iterable of rational w values.
    Instances whose measure is undefined (e.g. w=0 with no admissible
    coloring) are skipped and counted, never silently passed.
    """
    if bound_id not in _REGISTRY:
        raise KeyError(f"unknown bound id {bound_id!r}")
    check = _REGISTRY[bound_id]
    report = BoundReport(bound_id, family_name or "<anonymous>")
    grid = [Fraction(w) for w in grid]
    for rg in family:
        if not rg.in_class(delta):
            report.out_of_regime = True
        for w in grid:
            try:
                check(report, rg, w, delta)
            except DomainError:
                report.out_of_regime = True
                report.skip()
    return report


def clique_tightness_witness(q: int, delta: int = 3) -> RootedGraph:
    """Root adjacent to a clique of size delta-1 whose vertices each carry a
    pinned leaf of the target color: at w=0 the root marginal meets the
    basic upper bound exactly."""
    k = delta - 1
    # vertices: 0 = root, 1..k = clique, k+1..2k = pinned leaves (color 1)
    edges = [(0, i) for i in range(1, k + 1)]
    edges += [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    pins = {}
    for i in range(1, k + 1):
        leaf = k + i
        edges.append((i, leaf))
        pins[leaf] = 1
    g = PartiallyColoredGraph(2 * k + 1, edges, q, pins)
    return RootedGraph(g, 0)
