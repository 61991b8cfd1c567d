"""The analytic calculus behind single-vertex recursions.

A root with pinned-neighbor color counts c sees its log-ratio written as
F = log(P/Q), where P and Q aggregate the restricted partition functions of
the graph with the root's pinned neighbors stripped.  This module holds
those two forms, F, its hand-derived gradient, the marginal-difference
vector the gradient equals at real log-ratio points, the hat change of
reference color, and the inner-product bound used to control |F|.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import PoleError, UndefinedMeasureError
from .exact import marginal, ratio_vector_exact
from .graphs import BlockedColorVector, RootedGraph, attach_pinned_leaf


def _exp(x):
    if isinstance(x, complex):
        return cmath.exp(x)
    return math.exp(x)


def P_c(wt, c: BlockedColorVector, x) -> complex:
    """wt^(c_1+1) e^{x_1} + sum_{j=2}^{q-1} wt^{c_j} e^{x_j} + wt^{c_q}."""
    q = c.q
    if len(x) != q - 1:
        raise ValueError(f"x must have length q-1 = {q - 1}")
    total = wt ** (c.counts[0] + 1) * _exp(x[0])
    for j in range(2, q):
        total += wt ** c.counts[j - 1] * _exp(x[j - 1])
    return total + wt ** c.counts[q - 1]


def Q_c(wt, c: BlockedColorVector, x) -> complex:
    """Same as P_c but the extra power of wt sits on color q, not color 1."""
    q = c.q
    if len(x) != q - 1:
        raise ValueError(f"x must have length q-1 = {q - 1}")
    total = wt ** c.counts[0] * _exp(x[0])
    for j in range(2, q):
        total += wt ** c.counts[j - 1] * _exp(x[j - 1])
    return total + wt ** (c.counts[q - 1] + 1)


def F(wt, c: BlockedColorVector, x) -> complex:
    """log(P/Q), principal branch."""
    p = P_c(wt, c, x)
    qq = Q_c(wt, c, x)
    if p == 0 or qq == 0:
        raise PoleError("P or Q vanishes; F has a pole")
    ratio = complex(p) / complex(qq)
    out = cmath.log(ratio)
    if out.imag == 0:
        return complex(out.real, 0.0)
    return out


@dataclass(frozen=True)
class GradientVector:
    """Gradient of F in the q-1 log-ratio coordinates."""

    entries: tuple


def grad_F(wt, c: BlockedColorVector, x) -> GradientVector:
    """Closed-form gradient of F = log(P/Q) w.r.t. x.

    Entry j is dP/dx_j / P - dQ/dx_j / Q; for j = 1 the two numerators
    differ by a factor of wt, for j >= 2 they coincide.
    """
    p = P_c(wt, c, x)
    qq = Q_c(wt, c, x)
    if p == 0 or qq == 0:
        raise PoleError("P or Q vanishes; gradient has a pole")
    entries = []
    for j in range(1, c.q):
        term = wt ** c.counts[j - 1] * _exp(x[j - 1])
        if j == 1:
            entries.append(wt * term / p - term / qq)
        else:
            entries.append(term / p - term / qq)
    return GradientVector(tuple(entries))


def grad_F_from_ratios(w: Fraction, c: BlockedColorVector, ratios) -> tuple[Fraction, ...]:
    """Exact-rational gradient of F evaluated at x_j = log(ratios[j-1]).

    ratios[j-1] plays the role of e^{x_j}; with rational w and rational
    ratios every entry is an exact Fraction, so the identity with the
    marginal-difference vector can be checked with no rounding.
    """
    w = Fraction(w)
    ratios = tuple(Fraction(r) for r in ratios)
    if len(ratios) != c.q - 1:
        raise ValueError(f"need q-1 = {c.q - 1} ratios")
    p = w ** (c.counts[0] + 1) * ratios[0]
    for j in range(2, c.q):
        p += w ** c.counts[j - 1] * ratios[j - 1]
    p += w ** c.counts[c.q - 1]
    qq = w ** c.counts[0] * ratios[0]
    for j in range(2, c.q):
        qq += w ** c.counts[j - 1] * ratios[j - 1]
    qq += w ** (c.counts[c.q - 1] + 1)
    if p == 0 or qq == 0:
        raise PoleError("P or Q vanishes; gradient has a pole")
    out = []
    for j in range(1, c.q):
        term = w ** c.counts[j - 1] * ratios[j - 1]
        if j == 1:
            out.append(w * term / p - term / qq)
        else:
            out.append(term / p - term / qq)
    return tuple(out)


@dataclass(frozen=True)
class MarginalDifference:
    """Entry j-1 is P[root=j | leaf pinned 1] - P[root=j | leaf pinned q].

    ``hat_entries`` replaces entry 1 by the same difference at color q,
    matching the change of reference color used when color 1 is the more
    likely one at the root.
    """

    entries: tuple
    hat_entries: tuple


def marginal_difference(rg: RootedGraph, w) -> MarginalDifference:
    """Difference of root marginals between attaching a leaf pinned to
    color 1 and a leaf pinned to color q; exact Fractions."""
    g = rg.graph
    w = Fraction(w)
    g1 = attach_pinned_leaf(rg, 1)
    gq = attach_pinned_leaf(rg, g.q)
    diffs = []
    for j in range(1, g.q + 1):
        diffs.append(marginal(g1, w, rg.root, j) - marginal(gq, w, rg.root, j))
    entries = tuple(diffs[: g.q - 1])
    hat = (diffs[g.q - 1],) + tuple(diffs[1 : g.q - 1])
    return MarginalDifference(entries, hat)


def hat_transform(x):
    """(x_1, x_2, ..., x_{q-1}) -> (-x_1, x_2 - x_1, ..., x_{q-1} - x_1).

    Swaps the reference color between 1 and q for log-ratio vectors; applied
    twice it gives back the input.
    """
    x = tuple(x)
    return (-x[0],) + tuple(xj - x[0] for xj in x[1:])


def _inf_norm(x) -> float:
    return max((abs(xj) for xj in x), default=0.0)


def inner_product_bound(rg: RootedGraph, w, x):
    """|<marginal difference, x>| against its probabilistic upper bound.

    Returns (lhs, rhs, side).  side = "low" means the root is at most as
    likely to be colored 1 as q, in which case
    rhs = (1-w) * P[root=q | leaf pinned 1] * max|x_j|; side = "high" uses
    the hat-transformed difference vector and
    rhs = (1-w) * P[root=1 | leaf pinned q] * max|x^_j|.

    Complex x is first rotated by a unit scalar making the inner product
    real, which changes neither side.
    """
    g = rg.graph
    w = Fraction(w)
    md = marginal_difference(rg, w)
    p1 = marginal(g, w, rg.root, 1)
    pq = marginal(g, w, rg.root, g.q)
    x = tuple(x)
    if len(x) != g.q - 1:
        raise ValueError(f"x must have length q-1 = {g.q - 1}")
    if p1 <= pq:
        side = "low"
        vec = md.entries
        xs = x
        g1 = attach_pinned_leaf(rg, 1)
        prob = marginal(g1, w, rg.root, g.q)
    else:
        side = "high"
        vec = md.hat_entries
        xs = hat_transform(x)
        gq = attach_pinned_leaf(rg, g.q)
        prob = marginal(gq, w, rg.root, 1)
    inner = sum(complex(v) * complex(xj) for v, xj in zip(vec, xs))
    lhs = abs(inner)
    rhs = float((1 - w) * prob) * _inf_norm(xs)
    return lhs, rhs, side


def reconstruct_log_ratio(terms) -> complex:
    """Sum of per-neighbor F values; equals the root log-ratio when the
    terms come from the telescoping decomposition."""
    return sum(terms, start=complex(0))


def log_ratio_pair_exact(rg: RootedGraph, w, l1: int, l2: int) -> Fraction:
    """Exact ratio Z^{l1}/Z^{l2} at rational w (exponentiated log-ratio)."""
    ratios = ratio_vector_exact(rg, w, ref=l2)
    colors = [j for j in range(1, rg.graph.q + 1) if j != l2]
    return ratios[colors.index(l1)]
