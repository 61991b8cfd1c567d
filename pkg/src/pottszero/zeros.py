"""Complex zeros of the partition function in the edge-weight plane.

Finds all roots of Z_G as a polynomial in w, measures their distance to the
segment [0,1], certifies nonvanishing at exact Gaussian-rational points,
and checks the stability statements that drive the inductive zero-freeness
argument (ratio continuity in w, probability-weighted ratio continuity,
and nonvanishing at the perturbed weight).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ZeroRatioError
from .exact import (
    GaussianRational,
    WPolynomial,
    evaluate,
    marginal,
    partition_poly,
    ratio_vector_exact,
    restricted_all,
)
from .graphs import PartiallyColoredGraph, RootedGraph, attach_pinned_leaf, strip_pinned_neighbors

RESIDUAL_REL_TOL = 1e-8


@dataclass(frozen=True)
class ZeroReport:
    graph_id: str
    q: int
    roots: tuple[complex, ...]
    residuals: tuple[float, ...]
    min_dist_to_interval: float
    degree_check: bool
    coeff_norm: float

    def to_dict(self) -> dict:
        return {
            "graph_id": self.graph_id,
            "q": self.q,
            "roots": [[r.real, r.imag] for r in self.roots],
            "residuals": list(self.residuals),
            "min_dist_to_interval": self.min_dist_to_interval,
            "degree_check": self.degree_check,
        }


def dist_to_unit_interval(z: complex) -> float:
    """Euclidean distance from z to the segment [0,1] on the real axis."""
    x = min(max(z.real, 0.0), 1.0)
    return math.hypot(z.real - x, z.imag)


def aberth_roots(coeffs, tol: float = 1e-13, max_iter: int = 500):
    """All complex roots of sum coeffs[k] w^k by simultaneous iteration.

    Starts from points on a circle sized by the coefficient ratio bound and
    applies the Aberth-Ehrlich correction until the largest update is below
    tol*(1+|root|).  Returns None if it fails to converge (caller falls
    back to the companion matrix).
    """
    coeffs = [complex(c) for c in coeffs]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    deg = len(coeffs) - 1
    if deg == 0:
        return []
    dcoeffs = [k * c for k, c in enumerate(coeffs)][1:]

    def p(z):
        acc = 0j
        for c in reversed(coeffs):
            acc = acc * z + c
        return acc

    def dp(z):
        acc = 0j
        for c in reversed(dcoeffs):
            acc = acc * z + c
        return acc

    radius = 1.0 + max(abs(c) for c in coeffs[:-1]) / abs(coeffs[-1])
    zs = [
        radius * cmath.exp(2j * math.pi * (k + 0.25) / deg + 0.1j)
        for k in range(deg)
    ]
    for _ in range(max_iter):
        worst = 0.0
        new = list(zs)
        for i, z in enumerate(zs):
            pz = p(z)
            dpz = dp(z)
            if dpz == 0:
                new[i] = z + tol
                worst = max(worst, 1.0)
                continue
            ratio = pz / dpz
            s = 0j
            ok = True
            for j, zj in enumerate(zs):
                if j != i:
                    dz = z - zj
                    if dz == 0:
                        ok = False
                        break
                    s += 1 / dz
            if not ok:
                new[i] = z + tol
                worst = max(worst, 1.0)
                continue
            denom = 1 - ratio * s
            corr = ratio / denom if denom != 0 else ratio
            new[i] = z - corr
            worst = max(worst, abs(corr) / (1 + abs(new[i])))
        zs = new
        if worst < tol:
            return zs
    return None


def _roots(coeffs):
    zs = aberth_roots(coeffs)
    if zs is not None:
        return zs
    import numpy as np

    return [complex(z) for z in np.roots([complex(c) for c in reversed(coeffs)])]


def roots_in_w(g: PartiallyColoredGraph, graph_id: str = "") -> ZeroReport:
    """Locate all roots of Z_G in the complex w-plane with residuals and
    the exact distance of the root set to the segment [0,1]."""
    poly = partition_poly(g)
    coeffs = poly.coefficients
    norm = math.sqrt(sum(float(c) * float(c) for c in coeffs))
    roots = sorted(_roots(coeffs), key=lambda z: (z.real, z.imag))
    residuals = tuple(abs(evaluate(poly, z)) for z in roots)
    min_dist = min((dist_to_unit_interval(z) for z in roots), default=math.inf)
    return ZeroReport(
        graph_id=graph_id or f"n{g.n}-e{len(g.edges)}",
        q=g.q,
        roots=tuple(roots),
        residuals=residuals,
        degree_check=len(roots) == poly.degree,
        min_dist_to_interval=min_dist,
        coeff_norm=norm,
    )


@dataclass
class ScanSummary:
    q: int
    delta: int
    reports: list[ZeroReport] = field(default_factory=list)
    out_of_regime: bool = False

    @property
    def family_min_dist(self) -> float:
        return min((r.min_dist_to_interval for r in self.reports), default=math.inf)

    @property
    def all_residuals_ok(self) -> bool:
        return all(
            res < RESIDUAL_REL_TOL * max(r.coeff_norm, 1.0)
            for r in self.reports
            for res in r.residuals
        )


def zero_free_scan(family, q: int, delta: int) -> ScanSummary:
    """Roots of every graph in the family; the positive family margin is
    the empirical zero-free corridor around [0,1]."""
    summary = ScanSummary(q=q, delta=delta)
    if q < math.ceil((2 - 0.002) * delta):
        summary.out_of_regime = True
    for i, g in enumerate(family):
        summary.reports.append(roots_in_w(g, graph_id=f"g{i}-n{g.n}-e{len(g.edges)}"))
    return summary


def certify_nonvanishing(g: PartiallyColoredGraph, wt) -> bool:
    """Exact verdict Z_G(wt) != 0 at a Gaussian-rational (or rational) wt."""
    if not isinstance(wt, GaussianRational):
        wt = GaussianRational(Fraction(wt))
    poly = partition_poly(g)
    return not evaluate(poly, wt).is_zero()


def nearest_gaussian_rational(z: complex, denom: int = 1 << 16) -> GaussianRational:
    """Round a complex double to the nearest Gaussian rational with the
    given power-of-two denominator."""
    return GaussianRational(
        Fraction(round(z.real * denom), denom), Fraction(round(z.imag * denom), denom)
    )


# -- induction statements ----------------------------------------------


@dataclass(frozen=True)
class InductionMargins:
    s1: bool
    s2: bool
    s3: bool
    margin1: float
    margin2: float
    max_ratio_diff: float
    indeterminate: bool = False


def _log_ratio_table(rg: RootedGraph, w):
    """log|R|-style table: R_{i,j} = log(Z^i/Z^j) for all ordered pairs,
    principal branch, from one set of restricted evaluations."""
    polys = restricted_all(rg)
    q = rg.graph.q
    if isinstance(w, Fraction):
        vals = [complex(evaluate(p, w)) for p in polys]
    else:
        vals = [complex(evaluate(p, complex(w))) for p in polys]
    if any(v == 0 for v in vals):
        raise ZeroRatioError(f"restricted partition function vanishes at {w}")
    table = {}
    for i in range(1, q + 1):
        for j in range(1, q + 1):
            if i != j:
                table[(i, j)] = cmath.log(vals[i - 1] / vals[j - 1])
    return table


def induction_statement_check(rg: RootedGraph, w, wt, eps2: float, delta: int):
    """Check, for one rooted graph, the three inductive stability claims:

    (i)  |R_{i,j}(w) - R_{i,j}(wt)| <= ((1-w) deg + 2/3) eps2 / Delta for
         every ordered color pair, where R is taken on the graph with the
         root's pinned neighbors stripped and deg is the root degree there;
    (ii) P[root=j in G with a leaf pinned k] * |R_{i,j}(w) - R_{i,j}(wt)|
         <= eps2 / Delta for every i, j, k;
    (iii) Z_G(wt) != 0.

    Returns InductionMargins with the worst margins over all color choices.
    """
    g = rg.graph
    w = Fraction(w)
    bare = strip_pinned_neighbors(rg)
    deg = bare.graph.degree(bare.root)
    try:
        tab_w = _log_ratio_table(bare, w)
        tab_wt = _log_ratio_table(bare, wt)
    except ZeroRatioError:
        return InductionMargins(False, False, False, math.nan, math.nan, math.nan, True)
    q = g.q
    diffs = {key: abs(tab_w[key] - tab_wt[key]) for key in tab_w}
    max_diff = max(diffs.values())
    rhs1 = ((1 - float(w)) * deg + 2 / 3) * eps2 / delta
    margin1 = rhs1 - max_diff
    # statement (ii): worst over k of the attached-leaf marginal at j
    worst2 = -math.inf
    rhs2 = eps2 / delta
    margin2 = math.inf
    for k in range(1, q + 1):
        gk = attach_pinned_leaf(rg, k)
        for j in range(1, q + 1):
            pj = float(marginal(gk, w, rg.root, j))
            for i in range(1, q + 1):
                if i == j:
                    continue
                lhs = pj * diffs[(i, j)]
                margin2 = min(margin2, rhs2 - lhs)
    if isinstance(wt, Fraction) or isinstance(wt, int):
        s3 = certify_nonvanishing(g, Fraction(wt))
    elif isinstance(wt, GaussianRational):
        s3 = certify_nonvanishing(g, wt)
    else:
        s3 = abs(evaluate(partition_poly(g), complex(wt))) > 0
    return InductionMargins(
        s1=margin1 >= 0,
        s2=margin2 >= 0,
        s3=s3,
        margin1=margin1,
        margin2=margin2,
        max_ratio_diff=max_diff,
    )
