from __future__ import annotations

from itertools import combinations
from math import comb as _comb

import pytest

import oracles
from kneserlab.bounds import ei_degree, tightness_degree
from kneserlab.errors import DomainError
from kneserlab.families import (
    default_D,
    make_D,
    make_E,
    make_hilton_milner,
    make_random,
    make_star,
    make_star_plus,
    make_tightness_G,
    make_W,
    make_W_prime,
)
from kneserlab.kneser import covering_number, degree, edge_count, is_intersecting, max_degree, restrict_avoiding
from kneserlab.setkit import Params, to_mask


def comb(a, b):
    return _comb(a, b) if 0 <= b <= a else 0


def grid(max_n=14, max_k=4):
    for n in range(2, max_n + 1):
        for k in range(1, min(max_k, n) + 1):
            yield n, k


def test_star_examples():
    p = Params(5, 2)
    assert make_star(1, p).sets() == [(1, 2), (1, 3), (1, 4), (1, 5)]
    assert len(make_star(5, p)) == 4
    assert edge_count(make_star(3, p)) == 0
    with pytest.raises(DomainError):
        make_star(6, p)


@pytest.mark.parametrize("n,k,want", [(5, 2, 2), (6, 2, 3), (7, 3, 3)])
def test_star_plus_examples(n, k, want):
    f = make_star_plus(1, range(2, k + 2), Params(n, k))
    assert edge_count(f) == max_degree(f).max == want


def test_star_plus_rejects_x_in_t():
    with pytest.raises(DomainError):
        make_star_plus(1, [1, 2], Params(5, 2))


def test_hilton_milner_examples():
    f = make_hilton_milner(1, [2, 3], Params(5, 2))
    assert f.sets() == [(1, 2), (1, 3), (2, 3)]
    assert is_intersecting(f)
    assert len(make_hilton_milner(1, [2, 3, 4], Params(10, 3))) == 22
    with pytest.raises(DomainError):
        make_hilton_milner(1, [1, 3], Params(5, 2))


def test_D_examples():
    p = Params(5, 2)
    d = make_D(1, [2, 3], [1, 4], p)
    assert d.sets() == [(1, 2), (1, 3), (1, 4), (2, 3)]
    assert max_degree(d).max == 1
    assert len(default_D(Params(6, 2))) == 4
    big = default_D(Params(12, 4))
    assert len(big) == 165 - 35 + 2 >= 4 * comb(8, 2)


@pytest.mark.parametrize("x,f0,fp", [(1, [1, 2], [1, 3]), (1, [2, 3], [2, 4]), (1, [2, 3], [1, 3])])
def test_D_preconditions(x, f0, fp):
    with pytest.raises(DomainError):
        make_D(x, f0, fp, Params(6, 2))


def test_E_examples():
    e = make_E(1, Params(6, 2))
    assert e.sets() == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    assert max_degree(e).max == 1
    assert len(make_E(2, Params(10, 3))) == 40
    with pytest.raises(DomainError):
        make_E(0, Params(6, 2))
    with pytest.raises(DomainError):
        make_E(3, Params(6, 3))


def test_W_examples():
    w = make_W(2, Params(6, 2))
    assert w.sets() == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]
    assert covering_number(make_W(3, Params(11, 3))).size == 2
    wp = make_W_prime(4, 3, Params(9, 3))
    assert wp.sets() == [s for s in combinations(range(3, 7), 3)]
    with pytest.raises(DomainError):
        make_W_prime(2, 3, Params(9, 3))


def test_G_examples():
    g = make_tightness_G(4, Params(12, 3))
    assert (len(g), max_degree(g).max) == (58, 15)
    g = make_tightness_G(3, Params(13, 4))
    assert (len(g), max_degree(g).max) == (223, 30)
    with pytest.raises(DomainError):
        make_tightness_G(1, Params(12, 3))


def test_constructor_sizes_on_grid():
    for n, k in grid():
        p = Params(n, k)
        assert len(make_star(1, p)) == comb(n - 1, k - 1)
        if n >= k + 1:
            t = range(2, k + 2)
            assert len(make_star_plus(1, t, p)) == comb(n - 1, k - 1) + 1
            assert len(make_hilton_milner(1, t, p)) == comb(n - 1, k - 1) - comb(n - k - 1, k - 1) + 1
        if n >= 2 * k:
            assert len(default_D(p)) == comb(n - 1, k - 1) - comb(n - k - 1, k - 1) + 2
        for i in range(1, n - k):
            assert len(make_E(i, p)) == comb(n - 1, k - 1) - comb(n - k - i - 1, k - 1) + comb(k + i, k)
        for ell in range(1, n - 1):
            want = comb(n - 2, k - 2) + 2 * (comb(n - 2, k - 1) - comb(n - ell - 2, k - 1))
            assert len(make_W(ell, p)) == want
            for lp in range(1, min(ell, k) + 1):
                want = sum(comb(ell, j) * comb(n - ell, k - j) for j in range(lp, min(ell, k) + 1))
                assert len(make_W_prime(ell, lp, p)) == want
        if k >= 2:
            for s in range(2, n - 1):
                if n - s - 2 >= k - 2:
                    assert len(make_tightness_G(s, p)) == comb(n - 2, k - 2) + 2 * s * comb(n - s - 2, k - 2)


def test_membership_predicates():
    """Built families equal their definitions evaluated on plain sets."""
    n, k = 9, 3
    p = Params(n, k)
    everything = oracles.ksets(n, k)

    def same(f, pred):
        return set(oracles.as_sets(f)) == {a for a in everything if pred(a)}

    F, Fp = frozenset({2, 3, 4}), frozenset({1, 5, 6})
    assert same(make_hilton_milner(1, F, p), lambda a: a == F or (1 in a and a & F))
    assert same(make_D(1, F, Fp, p), lambda a: a in (F, Fp) or (1 in a and a & F))
    Y = frozenset(range(2, k + 3))
    assert same(make_E(1, p), lambda a: (1 in a and a & Y) or a <= Y)
    blk = frozenset(range(3, 6))
    assert same(make_W(3, p), lambda a: {1, 2} <= a or (len(a & {1, 2}) == 1 and a & blk))
    assert same(make_W_prime(3, 2, p), lambda a: len(a & blk) >= 2)
    blk4 = frozenset(range(3, 7))
    assert same(make_tightness_G(4, p),
                lambda a: {1, 2} <= a or (len(a & {1, 2}) == 1 and len(a & blk4) == 1))


def test_D_has_exactly_one_edge():
    for n, k in grid():
        if n < 2 * k:
            continue
        p = Params(n, k)
        f0, fp = range(2, k + 2), [1, *range(k + 2, 2 * k + 1)]
        d = make_D(1, f0, fp, p)
        sets = oracles.as_sets(d)
        pairs = [(a, b) for i, a in enumerate(sets) for b in sets[i + 1:] if not a & b]
        assert pairs == [(frozenset(fp), frozenset(f0))] or pairs == [(frozenset(f0), frozenset(fp))]
        assert edge_count(d) == max_degree(d).max == 1


def test_E_avoiding_part_is_block():
    for n, k in grid(12, 4):
        for i in range(1, n - k):
            f = make_E(i, Params(n, k))
            avoid = restrict_avoiding(f, [1])
            assert set(avoid.sets()) == set(combinations(range(2, k + i + 2), k))


def test_E_degree_formula():
    """The block [2, k+1] always has the closed-form degree; for n > k^2 it is the maximum."""
    for n, k in grid(12, 4):
        for i in range(1, k):
            if k + i + 1 > n or n < 2 * k:
                continue
            p = Params(n, k)
            f = make_E(i, p)
            formula = ei_degree(p, i)
            assert degree(f, range(2, k + 2)) == formula
            d = max_degree(f).max
            assert d >= formula
            if n > k * k:
                assert d == formula


def test_E_degree_formula_fails_below_k_squared():
    # small-n cases where a set {1, a, n} beats the block [2, k+1]
    for n, k, i in [(7, 3, 2), (9, 4, 2), (9, 4, 3), (10, 4, 3)]:
        f = make_E(i, Params(n, k))
        d = oracles.max_degree(oracles.as_sets(f))
        assert max_degree(f).max == d > ei_degree(Params(n, k), i)


def test_G_orbit_degrees():
    for n in range(4, 40):
        for k in range(2, 8):
            if k > n or comb(n, k) > 2000:
                continue
            for s in range(2, n - 1):
                if n - s - 2 < k - 2:
                    continue
                p = Params(n, k)
                g = make_tightness_G(s, p)
                pair = to_mask([1, 2])
                once = {degree(g, a) for a in g if (a & pair).bit_count() == 1}
                twice = {degree(g, a) for a in g if a & pair == pair}
                assert once == {tightness_degree(p, s)}
                assert twice <= {0}
                prof = max_degree(g)
                assert prof.max == tightness_degree(p, s)
                if prof.max > 0:
                    assert (prof.witness & pair).bit_count() == 1


def test_permutation_relabels():
    p = Params(8, 3)
    perm = {x: 9 - x for x in range(1, 9)}
    star = make_star(1, p, perm)
    assert all(8 in s for s in star.sets())
    assert max_degree(default_D(p, perm)).max == 1


def test_random_determinism():
    p = Params(10, 3)
    a = make_random(20, p, seed=5)
    assert a == make_random(20, p, seed=5)
    assert a != make_random(20, p, seed=6)
    assert len(a) == 20
    b = make_random(3, p, seed=1, require_non_intersecting=True)
    assert not is_intersecting(b)
    with pytest.raises(DomainError):
        make_random(121, p, seed=0)
    with pytest.raises(DomainError):
        make_random(1, p, seed=0, require_non_intersecting=True)
