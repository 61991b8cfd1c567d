"""Deterministic approximate counting of proper colorings.

log Z is Taylor-stepped from the trivial anchor w=1 (where Z = q^#free)
down to w=0 along the real segment, with per-step truncation errors bounded
rigorously from the actual root locations of the exact polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BudgetExceededError,
    CannotInterpolateError,
    PoleError,
    StepTooLargeError,
)
from .exact import WPolynomial, evaluate, partition_poly
from .graphs import PartiallyColoredGraph
from .zeros import ZeroReport, roots_in_w

RHO = Fraction(1, 2)


def log_derivatives_at(p: WPolynomial, w0, m: int):
    """Derivatives of log p at w0, orders 1..m, exact when w0 is rational.

    Computed from the Taylor coefficients a_k of p at w0 (synthetic
    division) via the standard log-series recurrence
    b_k = (a_k - sum_{j=1}^{k-1} (j/k) b_j a_{k-j}) / a_0, where b_k is the
    k-th Taylor coefficient of log p; derivative k is then k! * b_k.
    """
    exact = isinstance(w0, (Fraction, int))
    w0 = Fraction(w0) if exact else complex(w0)
    zero = Fraction(0) if exact else 0j
    work = [Fraction(c) if exact else complex(c) for c in p.coefficients]
    # Taylor coefficients of p at w0 by repeated synthetic division:
    # dividing by (w - w0) leaves remainder p(w0) and the quotient carries
    # the higher-order coefficients.
    a = []
    for _ in range(m + 1):
        if not work:
            a.append(zero)
            continue
        quot = [zero] * (len(work) - 1)
        acc = work[-1]
        for k in range(len(work) - 2, -1, -1):
            quot[k] = acc
            acc = acc * w0 + work[k]
        a.append(acc)
        work = quot
    if a[0] == 0:
        raise PoleError(f"p({w0}) = 0: log has a pole")
    b = [None] * (m + 1)
    for k in range(1, m + 1):
        s = a[k]
        for j in range(1, k):
            s -= Fraction(j, k) * b[j] * a[k - j] if exact else (j / k) * b[j] * a[k - j]
        b[k] = s / a[0]
    facts = 1
    out = []
    for k in range(1, m + 1):
        facts *= k
        out.append(b[k] * facts)
    return out


def taylor_step(p: WPolynomial, w_a, w_b, m: int, r: float):
    """m-term Taylor estimate of log p(w_b) - log p(w_a) with a rigorous
    tail bound from the root-distance radius r.

    Writing log p as log c + sum over roots of log(w - root), each term's
    Taylor tail at ratio x = |w_b - w_a| / r is sum_{j>m} x^j / j, bounded
    by x^{m+1} / ((m+1)(1-x)); the total multiplies by deg p.
    """
    step = abs(complex(w_b) - complex(w_a))
    if step == 0:
        return 0.0, 0.0
    if r <= 0 or step >= r:
        raise StepTooLargeError(f"step {step} not below root radius {r}")
    derivs = log_derivatives_at(p, w_a, m)
    dw = (Fraction(w_b) - Fraction(w_a)) if isinstance(w_a, (Fraction, int)) and isinstance(
        w_b, (Fraction, int)
    ) else complex(w_b) - complex(w_a)
    total = Fraction(0) if isinstance(dw, Fraction) else 0j
    power = dw
    fact = 1
    for k, d in enumerate(derivs, start=1):
        fact *= k
        total += d * power / fact
        power = power * dw
    x = step / r
    tail = p.degree * x ** (m + 1) / ((m + 1) * (1 - x))
    return total, tail


@dataclass(frozen=True)
class StepPlan:
    anchors: tuple[Fraction, ...]
    m: int
    radius: float

    def __post_init__(self):
        for a, b in zip(self.anchors, self.anchors[1:]):
            if not abs(b - a) <= RHO * self.radius:
                raise StepTooLargeError("plan step exceeds rho * radius")


def choose_plan(report: ZeroReport, eps: float, degree: int) -> StepPlan:
    """Uniform anchors from 1 down to 0 with step <= rho * min root
    distance, and the minimal Taylor order whose summed tails fit in eps."""
    min_dist = report.min_dist_to_interval
    if min_dist <= 0:
        raise CannotInterpolateError("a zero touches [0,1]; no corridor to step through")
    if math.isinf(min_dist):
        return StepPlan((Fraction(1), Fraction(0)), 0, math.inf)
    max_step = RHO * Fraction(min_dist).limit_denominator(10**9)
    T = max(1, math.ceil(Fraction(1) / max_step))
    anchors = tuple(Fraction(T - k, T) for k in range(T + 1))
    x = float(1 / (T * min_dist))
    m = 1
    while degree * T * x ** (m + 1) / ((m + 1) * (1 - x)) > eps:
        m += 1
        if m > 10000:
            raise CannotInterpolateError("cannot meet eps with any Taylor order")
    return StepPlan(anchors, m, min_dist)


@dataclass(frozen=True)
class CountEstimate:
    xi: float
    eps_target: float
    eps_achieved: float
    steps: int
    m: int
    exact_value: int | None = None
    exact_zero: bool = False

    def to_dict(self) -> dict:
        return {
            "xi": repr(self.xi),
            "eps_target": self.eps_target,
            "eps_achieved": self.eps_achieved,
            "steps": self.steps,
            "m": self.m,
            "exact_value": self.exact_value,
            "exact_zero": self.exact_zero,
        }


def approx_count_colorings(
    g: PartiallyColoredGraph, eps: float, target_w=Fraction(0), check: bool = False
) -> CountEstimate:
    """Estimate Z_G at target_w (default 0: proper-coloring count) within a
    multiplicative factor e^eps, by Taylor-stepping log Z from the w=1
    anchor inside the corridor left free by the actual zeros.

    When Z(0) = 0 no multiplicative guarantee exists; the exact verdict 0
    is returned instead of an estimate.
    """
    poly = partition_poly(g)
    target_w = Fraction(target_w)
    if target_w == 0 and poly.coefficients[0] == 0:
        return CountEstimate(0.0, eps, 0.0, 0, 0, exact_value=0, exact_zero=True)
    report = roots_in_w(g)
    if poly.degree == 0:
        exact = poly.coefficients[0]
        return CountEstimate(float(exact), eps, 0.0, 0, 0, exact_value=exact if check else None)
    plan = choose_plan(report, eps, poly.degree)
    n_free = len(g.free_vertices)
    # accumulate exact rational Taylor sums; convert at the end
    total = Fraction(0)
    achieved = 0.0
    prev = Fraction(1)
    for anchor in plan.anchors[1:]:
        target = anchor if anchor >= target_w else target_w
        if target >= prev:
            continue
        est, tail = taylor_step(poly, prev, target, plan.m, plan.radius)
        total += est
        achieved += tail
        prev = target
        if prev == target_w:
            break
    xi = math.exp(n_free * math.log(g.q) + float(total))
    exact_value = None
    if check:
        exact_value = exact_count_oracle(g) if target_w == 0 else None
    return CountEstimate(
        xi=xi,
        eps_target=eps,
        eps_achieved=achieved,
        steps=len(plan.anchors) - 1,
        m=plan.m,
        exact_value=exact_value,
    )


# -- exact oracle ------------------------------------------------------


def exact_count_oracle(g: PartiallyColoredGraph, max_edges: int = 24) -> int:
    """Exact number of proper colorings extending the pins.

    Unpinned graphs use deletion-contraction on the chromatic polynomial
    evaluated at q; pinned graphs fall back to the w=0 coefficient of the
    exact partition polynomial.
    """
    if g.pins:
        return partition_poly(g).coefficients[0]
    if len(g.edges) > max_edges:
        raise BudgetExceededError(f"{len(g.edges)} edges exceed the deletion-contraction budget")
    return _chromatic_count(g.n, frozenset(g.edges), g.q)


from functools import lru_cache


@lru_cache(maxsize=1 << 18)
def _chromatic_count(n: int, edges: frozenset, q: int) -> int:
    if not edges:
        return q**n
    u, v = min(edges)
    deleted = edges - {(u, v)}
    # contract v into u, renumber the last vertex into v's slot
    def rename(x):
        if x == v:
            return u
        if x == n - 1:
            return v if v != n - 1 else u
        return x

    contracted = set()
    for a, b in deleted:
        a2, b2 = rename(a), rename(b)
        if a2 != b2:
            contracted.add((a2, b2) if a2 < b2 else (b2, a2))
    return _chromatic_count(n, deleted, q) - _chromatic_count(n - 1, frozenset(contracted), q)
