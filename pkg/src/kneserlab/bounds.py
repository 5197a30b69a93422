"""Evaluators and checkers for degree and edge bounds on Kneser subgraphs.

Every checker returns a :class:`BoundReport` holding exact rationals.  A report
is ``assertable`` when the inequality behind it is proven for every input that
meets the checker's preconditions; otherwise it is an evaluation of a bound
that only holds in an asymptotic regime, and ``hypotheses_met`` records whether
the desk-checkable part of that regime is satisfied.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import BudgetError, DomainError
from .kneser import (
    Family,
    concentration,
    cross_edges,
    edge_count,
    is_intersecting,
    max_degree,
    restrict_avoiding,
)
from .setkit import KSetLike, Params, as_mask, binom, enumerate_all, lex_family, to_elements, to_mask

EULER = Fraction(2718282, 10**6)
ADJACENCY_BUDGET = 2000


@dataclass(frozen=True)
class BoundReport:
    """One instantiated inequality ``lhs >= rhs`` (or ``lhs <= rhs`` when ``sense`` is "<=")."""

    name: str
    n: int
    k: int
    lhs: Fraction
    rhs: Fraction
    assertable: bool
    hypotheses_met: bool
    note: str = ""
    sense: str = ">="
    strict: bool = False
    params: dict = field(default_factory=dict)

    @property
    def slack(self) -> Fraction:
        lhs, rhs = Fraction(self.lhs), Fraction(self.rhs)
        return lhs - rhs if self.sense == ">=" else rhs - lhs

    @property
    def holds(self) -> bool:
        return self.slack > 0 if self.strict else self.slack >= 0

    def record(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "k": self.k,
            "params": ";".join(f"{key}={val}" for key, val in self.params.items()),
            "lhs": str(Fraction(self.lhs)),
            "rhs": str(Fraction(self.rhs)),
            "slack": str(self.slack),
            "hypotheses_met": self.hypotheses_met,
            "assertable": self.assertable,
        }


def _require_nonintersecting(f: Family) -> None:
    if len(f) < 2 or is_intersecting(f):
        raise DomainError("this bound needs a non-intersecting family")


def _sqrt(x: Fraction) -> Fraction:
    with localcontext() as ctx:
        ctx.prec = 50
        root = (Decimal(x.numerator) / Decimal(x.denominator)).sqrt()
    return Fraction(root).limit_denominator(10**12)


# --- sizes -----------------------------------------------------------------

def ekr_hm_sizes(p: Params) -> tuple[int, int]:
    """Largest intersecting family, and largest one without a common element."""
    p.require_disjoint_pairs()
    n, k = p.n, p.k
    alpha = binom(n - 1, k - 1)
    return alpha, alpha - binom(n - k - 1, k - 1) + 1


def d_family_size(p: Params) -> int:
    n, k = p.n, p.k
    return binom(n - 1, k - 1) - binom(n - k - 1, k - 1) + 2


def ei_degree(p: Params, i: int) -> int:
    n, k = p.n, p.k
    if not (1 <= i < k) or k + i + 1 > n:
        raise DomainError(f"ei_degree needs 1 <= i < k and k+i+1 <= n, got n={n}, k={k}, i={i}")
    return binom(n - k - 1, k - 1) - binom(n - k - i - 1, k - 1)


def tightness_degree(p: Params, s: int) -> int:
    n, k = p.n, p.k
    if k < 2 or s < 2 or s + 2 > n or n - s - 2 < k - 2:
        raise DomainError(f"tightness_degree needs a valid G_s, got n={n}, k={k}, s={s}")
    return (s - 1) * binom(n - s - k, k - 2)


# --- edge-count theorems ---------------------------------------------------

def kkk_balogh_check(f: Family) -> BoundReport:
    """e(f) against C(n-k-1, k-1) at size C(n-1,k-1)+1, or against e(L(|f|)) in the Balogh window."""
    n, k, m = f.n, f.k, len(f)
    lhs = edge_count(f)
    star = binom(n - 1, k - 1)
    window = n > 2 * k and Fraction(m) <= star + Fraction(n - 2 * k, n) * binom(n - k - 1, k - 1)
    if m == star + 1 and n >= 2 * k:
        return BoundReport("kkk", n, k, Fraction(lhs), Fraction(binom(n - k - 1, k - 1)),
                           assertable=True, hypotheses_met=True, params={"m": m},
                           note="|F| = C(n-1,k-1)+1")
    rhs = edge_count(lex_family(m, f.params))
    note = "within small-|F| window of the lex bound" if window else "outside both proven windows"
    return BoundReport("balogh_lex", n, k, Fraction(lhs), Fraction(rhs),
                       assertable=window, hypotheses_met=window, params={"m": m}, note=note)


# --- elementary degree bounds ----------------------------------------------

def eq55_check(f: Family) -> BoundReport:
    """d(f) >= 1/2 (1 - c(2) k^3 / (gamma n)) |f| with gamma = |f| / C(n-1, k-1)."""
    _require_nonintersecting(f)
    n, k, m = f.n, f.k, len(f)
    if n <= 2 * k:
        raise DomainError("eq55_check needs n > 2k")
    gamma = Fraction(m, binom(n - 1, k - 1))
    c2 = concentration(f, 2).value if k >= 2 else Fraction(0)
    rhs = Fraction(1, 2) * (1 - c2 * k**3 / (gamma * n)) * m
    return BoundReport("eq55", n, k, Fraction(max_degree(f).max), rhs,
                       assertable=True, hypotheses_met=True,
                       params={"m": m, "gamma": gamma, "c2": c2})


def eq67_check(f: Family, i: int) -> tuple[BoundReport, BoundReport]:
    """Disjoint-pair counts between F(P) and F(P-bar) for the c(i) witness P."""
    n, k = f.n, f.k
    if not (1 <= i < k):
        raise DomainError(f"eq67_check needs 1 <= i < k, got i={i}")
    if len(f) == 0:
        raise DomainError("eq67_check needs a nonempty family")
    ci = concentration(f, i)
    cnext = concentration(f, i + 1)
    P = ci.witness
    through = [m & ~P for m in f.members if m & P == P]
    avoid = restrict_avoiding(f, P).members
    extra = {"i": i, "P": "-".join(map(str, to_elements(P)))}
    # c(i+1) C(n-i-1, k-i-1) is the largest number of members through an (i+1)-set
    rhs6 = len(through) - k * cnext.count
    if avoid:
        lhs6 = min(cross_edges(through, [h]) for h in avoid)
        note6 = "minimum over H in F(P-bar)"
    else:
        lhs6, rhs6 = 0, 0
        note6 = "vacuous: F(P-bar) is empty"
    eq6 = BoundReport("eq6", n, k, Fraction(lhs6), Fraction(rhs6), assertable=True,
                      hypotheses_met=True, note=note6, params=extra)
    lhs7 = cross_edges(through, avoid)
    rhs7 = (1 - cnext.value * k * k / (ci.value * n)) * len(through) * len(avoid)
    eq7 = BoundReport("eq7", n, k, Fraction(lhs7), rhs7, assertable=n > k, hypotheses_met=True,
                      note="" if avoid else "trivial: F(P-bar) is empty", params=extra)
    return eq6, eq7


def eq8_check(f: Family) -> BoundReport:
    """d(f) >= max{1/2, 1 - c(1)} (1 - c(2) k^2 / (c(1) n)) |f|.

    The 1/2 branch is proven for every non-intersecting family; the 1 - c(1)
    branch needs |f| >= C(n-1, k-1), and ``assertable`` says which applies.
    """
    _require_nonintersecting(f)
    n, k, m = f.n, f.k, len(f)
    c1 = concentration(f, 1).value
    c2 = concentration(f, 2).value if k >= 2 else Fraction(0)
    rhs = max(Fraction(1, 2), 1 - c1) * (1 - c2 * k * k / (c1 * n)) * m
    large = m > binom(n - 1, k - 1)
    proven = m >= binom(n - 1, k - 1) or c1 >= Fraction(1, 2)
    return BoundReport("eq8", n, k, Fraction(max_degree(f).max), rhs,
                       assertable=proven, hypotheses_met=large,
                       note="" if large else "|F| <= C(n-1,k-1)",
                       params={"m": m, "c1": c1, "c2": c2})


def eq3_check(f: Family) -> BoundReport:
    """Either d(f) >= |f|/2 or c(1) > |f| / (2k C(n-1, k-1))."""
    if len(f) == 0:
        raise DomainError("eq3_check needs a nonempty family")
    n, k, m = f.n, f.k, len(f)
    d = max_degree(f).max
    c1 = concentration(f, 1).value
    if 2 * d >= m:
        return BoundReport("eq3", n, k, Fraction(d), Fraction(m, 2), assertable=True,
                           hypotheses_met=True, note="degree branch", params={"m": m})
    threshold = Fraction(m, 2 * k * binom(n - 1, k - 1))
    return BoundReport("eq3", n, k, c1, threshold, assertable=True, hypotheses_met=True,
                       strict=True, note="c(1) branch", params={"m": m})


def transversal_count(sets: Iterable[KSetLike], p: Params) -> int:
    """Number of k-subsets of [n] meeting every one of the pairwise disjoint ``sets``."""
    masks = [as_mask(s, p.n) for s in sets]
    total = 0
    for r in range(len(masks) + 1):
        for chosen in combinations(masks, r):
            free = p.n - sum(m.bit_count() for m in chosen)
            total += (-1) ** r * binom(free, p.k)
    return total


def transversal_proportion_check(disjoint_sets: Iterable[KSetLike], p: Params) -> BoundReport:
    masks = [as_mask(s, p.n) for s in disjoint_sets]
    n, k = p.n, p.k
    if n < k * k:
        raise DomainError("transversal bound needs n >= k^2")
    union = 0
    for m in masks:
        if m & union:
            raise DomainError("sets must be pairwise disjoint")
        if m.bit_count() > k:
            raise DomainError("sets must have size at most k")
        union |= m
    s = len(masks)
    rhs = Fraction(k * k, n) ** s * p.total
    return BoundReport("transversal", n, k, Fraction(transversal_count(masks, p)), rhs,
                       assertable=True, hypotheses_met=True, sense="<=", params={"s": s})


# --- spectral --------------------------------------------------------------

def kneser_lambda(p: Params) -> int:
    """Second largest absolute eigenvalue of KG(n, k)."""
    p.require_disjoint_pairs()
    return binom(p.n - p.k - 1, p.k - 1)


def kneser_adjacency(p: Params, budget: int = ADJACENCY_BUDGET) -> np.ndarray:
    if p.total > budget:
        raise BudgetError(f"KG({p.n},{p.k}) has {p.total} vertices, budget is {budget}")
    verts = np.array([[(m >> j) & 1 for j in range(p.n)] for m in enumerate_all(p)], dtype=np.float64)
    return (verts @ verts.T == 0).astype(np.float64)


def kneser_spectrum(p: Params, budget: int = ADJACENCY_BUDGET) -> np.ndarray:
    """Eigenvalues of the dense adjacency matrix, descending."""
    return np.linalg.eigvalsh(kneser_adjacency(p, budget))[::-1]


def mixing_check(p: Params, B: Iterable[KSetLike], C: Iterable[KSetLike],
                 budget: int = ADJACENCY_BUDGET) -> BoundReport:
    """Expander mixing in KG(n, k) compared in squared form.

    With e(B, C) counting ordered disjoint pairs, checks
    (e - |B||C| D / N)^2 <= lambda^2 |B||C|, which is the mixing inequality squared.
    """
    if p.total > budget:
        raise BudgetError(f"KG({p.n},{p.k}) has {p.total} vertices, budget is {budget}")
    Bm = [as_mask(b, p.n, p.k) for b in B]
    Cm = [as_mask(c, p.n, p.k) for c in C]
    N = p.total
    D = binom(p.n - p.k, p.k)
    lam = kneser_lambda(p)
    e = cross_edges(Bm, Cm)
    dev = e - Fraction(len(Bm) * len(Cm) * D, N)
    return BoundReport("mixing", p.n, p.k, dev * dev, Fraction(lam * lam * len(Bm) * len(Cm)),
                       assertable=True, hypotheses_met=True, sense="<=",
                       params={"B": len(Bm), "C": len(Cm), "e": e})


# --- the two-element split -------------------------------------------------

@dataclass(frozen=True)
class SplitFamily:
    """Members of ``base`` sorted by how they meet the pair {x, y}.

    ``f1``/``f2`` are the members meeting the pair only in x / only in y, with
    that element removed and the remaining n-2 elements relabelled 1..n-2.
    """

    base: Family
    pair: tuple[int, int]
    f1: Family
    f2: Family
    fS: Family
    fbar: Family

    @property
    def N(self) -> int:
        return binom(self.base.n - 2, self.base.k - 1)

    @property
    def reg_degree(self) -> int:
        return binom(self.base.n - self.base.k - 1, self.base.k - 1)

    @property
    def lam(self) -> int:
        return binom(self.base.n - self.base.k - 2, self.base.k - 2)

    @property
    def b(self) -> Fraction:
        return Fraction(len(self.f1), self.N)

    @property
    def c(self) -> Fraction:
        return Fraction(len(self.f2), self.N)

    @property
    def cross(self) -> int:
        return cross_edges(self.f1.members, self.f2.members)

    @property
    def delta1(self) -> Fraction:
        return Fraction(self.cross, len(self.f1))

    @property
    def delta2(self) -> Fraction:
        return Fraction(self.cross, len(self.f2))


def build_split(f: Family, x: int = 1, y: int = 2) -> SplitFamily:
    n, k = f.n, f.k
    if k < 2 or x == y or not (1 <= x <= n and 1 <= y <= n):
        raise DomainError("split needs k >= 2 and two distinct elements")
    bx, by = 1 << (x - 1), 1 << (y - 1)
    rest = [z for z in range(1, n + 1) if z not in (x, y)]
    relabel = {z: i for i, z in enumerate(rest, start=1)}

    def shadow(m: int, drop: int) -> int:
        return to_mask(relabel[z] for z in to_elements(m & ~drop))

    side = Params(n - 2, k - 1)
    f1 = [shadow(m, bx) for m in f.members if m & bx and not m & by]
    f2 = [shadow(m, by) for m in f.members if m & by and not m & bx]
    both = [m for m in f.members if m & bx and m & by]
    neither = [m for m in f.members if not m & (bx | by)]
    return SplitFamily(f, (x, y), Family(side, tuple(f1)), Family(side, tuple(f2)),
                       Family(f.params, tuple(both)), Family(f.params, tuple(neither)))


def mixing_check_split(split: SplitFamily) -> BoundReport:
    return mixing_check(split.f1.params, split.f1.members, split.f2.members)


def split_degree_bound(split: SplitFamily) -> tuple[tuple[BoundReport, BoundReport], BoundReport]:
    """Average cross degree of each side, and the resulting bound on d(F)."""
    if not len(split.f1) or not len(split.f2):
        raise DomainError("split_degree_bound needs both sides nonempty")
    base = split.base
    n, k = base.n, base.k
    N, D, lam = split.N, split.reg_degree, split.lam
    sizes = {1: len(split.f1), 2: len(split.f2)}
    sides = []
    for i, j in ((1, 2), (2, 1)):
        rhs = Fraction(sizes[j] * D, N) - lam * _sqrt(Fraction(sizes[j], sizes[i]))
        delta = split.delta1 if i == 1 else split.delta2
        sides.append(BoundReport(f"side{i}_avg_degree", n, k, delta, rhs, assertable=False,
                               hypotheses_met=True, note="square root rounded to 1e-12",
                               params={"side": i}))
    rhs17 = Fraction((sizes[1] + sizes[2]) * D, 2 * N) - lam
    regime = n >= 64 * k * k and len(base) >= d_family_size(base.params)
    overall = BoundReport("split_degree", n, k, Fraction(max_degree(base).max), rhs17, assertable=False,
                       hypotheses_met=regime, note="needs |F| >= |D| and the structure theorem")
    return (sides[0], sides[1]), overall


def eq667_sides(p: Params) -> tuple[Fraction, Fraction]:
    n, k = p.n, p.k
    left = Fraction(binom(n - 2, k - 2) * binom(n - k - 1, k - 1), binom(n - 2, k - 1))
    right = Fraction(k - 1, n - k) * binom(n - k - 1, k - 1)
    return left, right


def eq667_check(p: Params) -> BoundReport:
    """C(n-2,k-2) C(n-k-1,k-1) / C(n-2,k-1) = (k-1)/(n-k) C(n-k-1,k-1) < C(n-k-2,k-2)."""
    n, k = p.n, p.k
    if k < 2 or n < 2 * k:
        raise DomainError("eq667_check needs k >= 2 and n >= 2k")
    left, right = eq667_sides(p)
    return BoundReport("eq667", n, k, Fraction(binom(n - k - 2, k - 2)), left,
                       assertable=True, hypotheses_met=True, strict=True,
                       params={"identity": left == right})


# --- regime-dependent evaluators --------------------------------------------

def thm3_lower(f: Family, pair: tuple[int, int] = (1, 2)) -> tuple[BoundReport, BoundReport]:
    n, k, m = f.n, f.k, len(f)
    if k < 2:
        raise DomainError("thm3_lower needs k >= 2")
    x, y = pair
    ratio = Fraction(binom(n - k - 1, k - 1), binom(n - 2, k - 1))
    lam = binom(n - k - 2, k - 2)
    form1 = Fraction(m - binom(n - 2, k - 2), 2) * ratio - lam
    form2 = Fraction(1, 2) * (1 - Fraction(k * k, n)) * m - Fraction(3, 2) * lam
    covered = all(a & ((1 << (x - 1)) | (1 << (y - 1))) for a in f.members)
    big = n >= 2 * k and m >= 4 * d_family_size(f.params)
    checks = {"n>=64k^2": n >= 64 * k * k, "|F|>=4|D|": big, "pair covers": covered}
    note = "k >= k0 not attainable; " + ", ".join(f"{key}:{val}" for key, val in checks.items())
    d = Fraction(max_degree(f).max) if m else Fraction(0)
    extra = {"pair": f"{x}-{y}", "m": m}
    return (BoundReport("lower_form1", n, k, d, form1, assertable=False, hypotheses_met=False,
                        note=note, params=extra),
            BoundReport("lower_form2", n, k, d, form2, assertable=False, hypotheses_met=False,
                        note=note, params=extra))


def regime_bounds_report(f: Family, x: int, u: KSetLike,
                         pair: tuple[int, int] | None = None) -> list[BoundReport]:
    """Sandwich on d(|f|, n, k) for one-element covers, and the two-element chain."""
    n, k, m = f.n, f.k, len(f)
    u = as_mask(u, n, k)
    bit = 1 << (x - 1)
    if u & bit or u not in f:
        raise DomainError("u must be a member of f avoiding x")
    hm = binom(n - 1, k - 1) - binom(n - k - 1, k - 1) + 1
    small = binom(n - 4, k - 4) if n >= 4 else 0
    d = Fraction(max_degree(f).max)
    extra = {"x": x, "u": "-".join(map(str, to_elements(u)))}
    reports = [
        BoundReport("one_cover_lower", n, k, d, Fraction(m - hm - small), assertable=False,
                    hypotheses_met=m <= binom(n - 1, k - 1) + 1, params=extra,
                    note="lower bound for a minimiser with a one-element cover"),
        BoundReport("one_cover_upper", n, k, d, Fraction(m - hm), assertable=False, sense="<=",
                    hypotheses_met=m <= binom(n - 1, k - 1) + 1, params=extra,
                    note="upper bound on the minimum d(|F|, n, k), not on this family"),
    ]
    if k >= 2:
        if pair is None:
            pair = min(combinations(range(1, n + 1), 2),
                       key=lambda s: sum(1 for a in f.members if not a & to_mask(s)))
        S = to_mask(pair)
        fS = sum(1 for a in f.members if a & S == S)
        fbar = sum(1 for a in f.members if not a & S)
        ratio = Fraction(binom(n - k - 1, k - 1), binom(n - 2, k - 1))
        lam = binom(n - k - 2, k - 2)
        chain = [
            Fraction(m - fbar - fS, 2) * ratio - lam,
            Fraction(m, 2) * ratio - Fraction(3, 2) * lam - Fraction(small, 2),
            Fraction(2, 5) * m,
        ]
        regime = fS <= binom(n - 2, k - 2) and fbar <= small
        for step, rhs in enumerate(chain, start=1):
            reports.append(BoundReport(f"pair_cover_step{step}", n, k, d, rhs, assertable=False,
                                       hypotheses_met=regime,
                                       params={"S": f"{pair[0]}-{pair[1]}", "fS": fS, "fbar": fbar}))
    return reports


def heavy_bound_eval(t: int, p: Params, lmin: int, lmax: int) -> Fraction:
    """C(n,k) * sum_{l=lmin}^{lmax} (2 e t k^2 / n)^l, with e taken as 2.718282."""
    if lmin > lmax:
        return Fraction(0)
    r = 2 * EULER * t * p.k * p.k / p.n
    return p.total * sum(r**l for l in range(max(lmin, 0), lmax + 1))


def heavy_bound_guards(t: int, p: Params) -> dict:
    """Size regimes that accompany the heavy-intersector estimate.

    The small-n case is stated for n <= k^2.2, its derivation uses n >= 16 t k^2,
    and the surrounding statement assumes n >= 16 t^2 k^2; all three are recorded
    without choosing between the last two.
    """
    n, k = p.n, p.k
    return {
        "n<=k^2.2": n <= k**2.2,
        "n>=16tk^2": n >= 16 * t * k * k,
        "n>=16t^2k^2": n >= 16 * t * t * k * k,
    }


@dataclass(frozen=True)
class TightnessReport:
    n: int
    k: int
    s: int
    size: int
    d_exact: int
    d_formula: int
    form1: Fraction
    form2: Fraction
    main_term: int
    error_scale: int

    def record(self) -> dict:
        return {
            "n": self.n, "k": self.k, "s": self.s, "size": self.size,
            "d_exact": self.d_exact, "d_formula": self.d_formula,
            "lower_form1": str(self.form1), "lower_form2": str(self.form2),
            "main_term": self.main_term, "error_scale": self.error_scale,
            "d_ge_form1": self.d_exact >= self.form1, "d_ge_form2": self.d_exact >= self.form2,
        }


def tightness_report(p: Params, s: int) -> TightnessReport:
    from .families import make_tightness_G

    g = make_tightness_G(s, p)
    form1, form2 = thm3_lower(g)
    n, k = p.n, p.k
    return TightnessReport(
        n=n, k=k, s=s, size=len(g),
        d_exact=max_degree(g).max,
        d_formula=tightness_degree(p, s),
        form1=form1.rhs, form2=form2.rhs,
        main_term=(s - 1) * binom(n - s - k, k - 2),
        error_scale=s * binom(n - 3, k - 3) if n >= 3 else 0,
    )
