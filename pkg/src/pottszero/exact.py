"""Exact partition functions, marginals and log-ratios.

Everything here is exact: polynomial coefficients are python ints, rational
evaluation uses Fraction, and complex points with rational real/imaginary
parts can be evaluated in Gaussian-rational arithmetic for certificates.
"""

from __future__ import annotations

import cmath
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import (
    BranchError,
    BudgetExceededError,
    UndefinedMeasureError,
    ZeroRatioError,
)
from .graphs import PartiallyColoredGraph, RootedGraph, strip_pinned_neighbors
from .kernel import weight_tables

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class GaussianRational:
    """Complex number with rational real and imaginary parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __add__(self, other):
        other = as_gaussian(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __mul__(self, other):
        other = as_gaussian(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __complex__(self):
        return complex(self.re) + 1j * complex(self.im)


def as_gaussian(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, Rational) or isinstance(x, int):
        return GaussianRational(Fraction(x))
    raise TypeError(f"cannot coerce {x!r} to a Gaussian rational")


@dataclass(frozen=True)
class WPolynomial:
    """Integer-coefficient polynomial in the edge weight w; index = power."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, w):
        return evaluate(self, w)

    def derivative(self) -> "WPolynomial":
        if self.degree == 0:
            return WPolynomial((0,))
        return WPolynomial(tuple(k * c for k, c in enumerate(self.coefficients))[1:])

    def to_json(self) -> str:
        return json.dumps([str(c) for c in self.coefficients])

    @staticmethod
    def from_json(text: str) -> "WPolynomial":
        return WPolynomial(tuple(int(s) for s in json.loads(text)))


def evaluate(p: WPolynomial, w):
    """Horner evaluation; exact for int/Fraction/GaussianRational inputs."""
    if isinstance(p, WPolynomial):
        coeffs = p.coefficients
    else:
        coeffs = tuple(p)
    if isinstance(w, GaussianRational):
        acc = GaussianRational(Fraction(0))
        for c in reversed(coeffs):
            acc = acc * w + as_gaussian(c)
        return acc
    acc = coeffs[-1] * (w * 0) if not isinstance(w, complex) else 0j
    acc = 0 * w
    for c in reversed(coeffs):
        acc = acc * w + c
    return acc


# -- enumeration tables ------------------------------------------------


def _check_budget(g: PartiallyColoredGraph, budget: int):
    n_free = len(g.free_vertices)
    if g.q**n_free > budget:
        raise BudgetExceededError(
            f"{g.q}**{n_free} colorings exceed the enumeration budget {budget}"
        )


def _kernel_inputs(g: PartiallyColoredGraph):
    free = g.free_vertices
    index = {v: i for i, v in enumerate(free)}
    pm = g.pin_map
    free_edges = []
    pin_counts = [[0] * g.q for _ in free]
    base = 0
    for u, v in g.edges:
        pu, pv = u in pm, v in pm
        if pu and pv:
            base += pm[u] == pm[v]
        elif pu:
            pin_counts[index[v]][pm[u] - 1] += 1
        elif pv:
            pin_counts[index[u]][pm[v] - 1] += 1
        else:
            free_edges.append((index[u], index[v]))
    mmax = len(free_edges) + sum(max(row, default=0) for row in pin_counts)
    return free, free_edges, pin_counts, base, mmax


def _shifted(counts, base: int) -> WPolynomial:
    coeffs = [0] * base + [int(c) for c in counts]
    return WPolynomial(tuple(coeffs)) if coeffs else WPolynomial((0,))


@lru_cache(maxsize=65536)
def partition_poly(g: PartiallyColoredGraph, budget: int = DEFAULT_BUDGET) -> WPolynomial:
    """Exact Z_G as a polynomial in w: coefficient k counts the admissible
    colorings with exactly k monochromatic edges."""
    _check_budget(g, budget)
    free, free_edges, pin_counts, base, mmax = _kernel_inputs(g)
    full, _ = weight_tables(len(free), g.q, free_edges, pin_counts, mmax, want_restricted=False)
    return _shifted(full, base)


@lru_cache(maxsize=8192)
def _tables(g: PartiallyColoredGraph, budget: int = DEFAULT_BUDGET):
    """Full polynomial plus the vertex/color-restricted polynomials for
    every free vertex, from one enumeration pass."""
    _check_budget(g, budget)
    free, free_edges, pin_counts, base, mmax = _kernel_inputs(g)
    full, restricted = weight_tables(
        len(free), g.q, free_edges, pin_counts, mmax, want_restricted=True
    )
    z = _shifted(full, base)
    by_vertex = {}
    for i, v in enumerate(free):
        by_vertex[v] = tuple(_shifted(restricted[i][c], base) for c in range(g.q))
    return z, by_vertex


def restricted_partition_poly(rg: RootedGraph, j: int, budget: int = DEFAULT_BUDGET) -> WPolynomial:
    """Z restricted to colorings that give the root color j."""
    _, by_vertex = _tables(rg.graph, budget)
    return by_vertex[rg.root][j - 1]


def restricted_all(rg: RootedGraph, budget: int = DEFAULT_BUDGET) -> tuple[WPolynomial, ...]:
    """All q root-restricted polynomials, index c-1 -> color c."""
    _, by_vertex = _tables(rg.graph, budget)
    return by_vertex[rg.root]


def marginal(g: PartiallyColoredGraph, w, v: int, j: int) -> Fraction:
    """P[coloring gives v color j] under the w-weighted measure, exact."""
    z, by_vertex = _tables(g)
    w = Fraction(w)
    if not 0 <= w <= 1:
        raise ValueError("marginal is defined for real w in [0,1]")
    denom = evaluate(z, w)
    if denom == 0:
        raise UndefinedMeasureError(f"Z_G({w}) = 0")
    pm = g.pin_map
    if v in pm:
        return Fraction(1) if pm[v] == j else Fraction(0)
    return Fraction(evaluate(by_vertex[v][j - 1], w), denom)


@dataclass(frozen=True)
class LogRatioVector:
    """Log-ratios of root-restricted partition functions against a
    reference color, principal branch (real on the positive reals)."""

    entries: tuple[complex, ...]
    reference: int
    from_positive_half_plane: bool


def ratio_vector_exact(rg: RootedGraph, w, ref: int | None = None) -> tuple[Fraction, ...]:
    """Exact ratios Z^j / Z^ref at rational w, for j = 1..q-1 excluding ref
    reindexed so that entry j-1 corresponds to color j (ref omitted last).

    The returned tuple has q-1 entries: colors 1..q with ref skipped.
    """
    g = rg.graph
    ref = g.q if ref is None else ref
    polys = restricted_all(rg)
    w = Fraction(w)
    denom = evaluate(polys[ref - 1], w)
    if denom == 0:
        raise ZeroRatioError(f"Z^{ref}({w}) = 0")
    out = []
    for j in range(1, g.q + 1):
        if j == ref:
            continue
        out.append(Fraction(evaluate(polys[j - 1], w), denom))
    return tuple(out)


def log_ratio_vector(rg: RootedGraph, wt, ref: int | None = None) -> LogRatioVector:
    """Entry for color j is log(Z^j(wt) / Z^ref(wt)), principal branch.

    Raises ZeroRatioError when a restricted partition function vanishes and
    BranchError when a ratio lies on the closed negative real axis.
    """
    g = rg.graph
    ref = g.q if ref is None else ref
    polys = restricted_all(rg)
    denom = evaluate(polys[ref - 1], complex(wt) if not isinstance(wt, Rational) else Fraction(wt))
    if denom == 0:
        raise ZeroRatioError(f"Z^{ref}({wt}) = 0")
    entries = []
    positive = True
    for j in range(1, g.q + 1):
        if j == ref:
            continue
        num = evaluate(polys[j - 1], complex(wt) if not isinstance(wt, Rational) else Fraction(wt))
        if num == 0:
            raise ZeroRatioError(f"Z^{j}({wt}) = 0")
        ratio = complex(num) / complex(denom)
        if ratio.real <= 0 and ratio.imag == 0:
            raise BranchError(f"ratio Z^{j}/Z^{ref} = {ratio} lies on the negative real axis")
        if ratio.real <= 0:
            positive = False
        entries.append(cmath.log(ratio))
    return LogRatioVector(tuple(entries), ref, positive)


def neighborhood_expectation(g: PartiallyColoredGraph, w, v: int, ell: int) -> Fraction:
    """E[w^(# neighbors of v colored ell)] under the measure on G - v.

    Computed by direct enumeration of the G - v measure, independently of
    the restricted-polynomial machinery.
    """
    import itertools
    from collections import Counter

    w = Fraction(w)
    gv, remap = g.without_vertices([v])
    nbrs = [remap[u] for u in g.neighbors(v)]
    pm = gv.pin_map
    free = gv.free_vertices
    # count colorings by (monochromatic edges, neighbors hit) in integers,
    # then weight each class once
    classes: Counter = Counter()
    for assignment in itertools.product(range(1, g.q + 1), repeat=len(free)):
        colors = dict(pm)
        colors.update(zip(free, assignment))
        mono = sum(1 for a, b in gv.edges if colors[a] == colors[b])
        hits = sum(1 for u in nbrs if colors[u] == ell)
        classes[(mono, hits)] += 1
    num = Fraction(0)
    denom = Fraction(0)
    powers: dict[int, Fraction] = {}

    def wpow(k: int) -> Fraction:
        if k not in powers:
            powers[k] = w**k
        return powers[k]

    for (mono, hits), count in classes.items():
        denom += count * wpow(mono)
        num += count * wpow(mono + hits)
    if denom == 0:
        raise UndefinedMeasureError(f"Z_(G-v)({w}) = 0")
    return num / denom


def neighborhood_expectation_all(g: PartiallyColoredGraph, w, v: int) -> tuple[Fraction, ...]:
    """All q expectations E[w^(# neighbors of v colored ell)] over the
    G - v measure from a single enumeration pass."""
    import itertools
    from collections import Counter

    w = Fraction(w)
    gv, remap = g.without_vertices([v])
    nbrs = [remap[u] for u in g.neighbors(v)]
    pm = gv.pin_map
    free = gv.free_vertices
    classes: Counter = Counter()
    for assignment in itertools.product(range(1, g.q + 1), repeat=len(free)):
        colors = dict(pm)
        colors.update(zip(free, assignment))
        mono = sum(1 for a, b in gv.edges if colors[a] == colors[b])
        hit_counts = [0] * g.q
        for u in nbrs:
            hit_counts[colors[u] - 1] += 1
        classes[(mono, tuple(hit_counts))] += 1
    powers: dict[int, Fraction] = {}

    def wpow(k: int) -> Fraction:
        if k not in powers:
            powers[k] = w**k
        return powers[k]

    nums = [Fraction(0)] * g.q
    denom = Fraction(0)
    for (mono, hits), count in classes.items():
        denom += count * wpow(mono)
        for ell in range(g.q):
            nums[ell] += count * wpow(mono + hits[ell])
    if denom == 0:
        raise UndefinedMeasureError(f"Z_(G-v)({w}) = 0")
    return tuple(n / denom for n in nums)


def clear_caches():
    partition_poly.cache_clear()
    _tables.cache_clear()
