from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from kneserlab.errors import DomainError
from kneserlab.families import default_D, make_random, make_star, make_star_plus, make_W
from kneserlab.kneser import (
    Family,
    c_profile,
    concentration,
    covering_number,
    degree,
    degrees,
    edge_count,
    is_intersecting,
    max_degree,
    restrict,
    restrict_avoiding,
)
from kneserlab.setkit import Params, enumerate_all, to_mask


def full(n, k):
    p = Params(n, k)
    return Family(p, tuple(enumerate_all(p)))


@st.composite
def families(draw, max_n=9):
    n = draw(st.integers(2, max_n))
    k = draw(st.integers(1, min(4, n)))
    p = Params(n, k)
    m = draw(st.integers(1, min(p.total, 40)))
    return make_random(m, p, draw(st.integers(0, 10**6)))


def test_degree_examples():
    p5 = Params(5, 2)
    assert degree(make_star(1, p5), [1, 2]) == 0
    assert degree(make_star_plus(1, [2, 3], p5), [2, 3]) == 2
    assert degree(full(5, 2), [4, 5]) == 3


def test_degree_params_mismatch():
    with pytest.raises(DomainError):
        degree(full(5, 2), [1, 2, 3])
    with pytest.raises(DomainError):
        degree(full(5, 2), [1, 9])


def test_max_degree_examples():
    p6 = Params(6, 2)
    assert max_degree(make_star(3, p6)).max == 0
    assert max_degree(make_star_plus(1, [2, 3], p6)).max == 3
    assert max_degree(default_D(p6)).max == 1
    with pytest.raises(DomainError):
        max_degree(Family(p6))


def test_edge_count_examples():
    assert edge_count(make_star(2, Params(7, 3))) == 0
    assert edge_count(full(5, 2)) == 15
    assert edge_count(make_star_plus(1, [2, 3], Params(5, 2))) == 2


@settings(max_examples=150, deadline=None)
@given(families())
def test_statistics_match_oracle(f):
    sets = oracles.as_sets(f)
    degs = degrees(f)
    for a, d in zip(sets, degs):
        assert int(d) == oracles.degree(sets, a)
    prof = max_degree(f)
    assert prof.max == oracles.max_degree(sets)
    assert degree(f, prof.witness) == prof.max
    assert edge_count(f) == oracles.edges(sets)
    assert is_intersecting(f) == oracles.intersecting(sets)


@settings(max_examples=150, deadline=None)
@given(families())
def test_handshake(f):
    assert sum(degree(f, a) for a in f) == 2 * edge_count(f)


@settings(max_examples=100, deadline=None)
@given(families())
def test_degree_is_avoiding_part(f):
    for a in f:
        assert degree(f, a) == len(restrict_avoiding(f, a))


def test_max_degree_witness_is_lex_first():
    f = full(6, 2)
    assert f.sets()[f.members.index(max_degree(f).witness)] == (1, 2)


def test_restrict_examples():
    p = Params(5, 2)
    star = make_star(1, p)
    through, avoid = restrict(star, [1])
    assert through.params == Params(5, 1)
    assert through.sets() == [(2,), (3,), (4,), (5,)]
    assert len(avoid) == 0

    d = Family.of(p, [(2, 3), (1, 2), (1, 3), (1, 4)])
    through, avoid = restrict(d, [1])
    assert through.sets() == [(2,), (3,), (4,)]
    assert avoid.sets() == [(2, 3)]

    through, _ = restrict(d, [5])
    assert len(through) == 0


def test_restrict_through_size_limit():
    with pytest.raises(DomainError):
        restrict(full(5, 2), [1, 2])


@settings(max_examples=100, deadline=None)
@given(families(), st.data())
def test_restrict_sizes(f, data):
    if f.k < 2:
        return
    i = data.draw(st.integers(1, f.k - 1))
    P = data.draw(st.sets(st.integers(1, f.n), min_size=i, max_size=i))
    through, _ = restrict(f, P)
    assert all(m.bit_count() == f.k - i and not m & to_mask(P) for m in through)
    assert len(through) + sum(1 for a in f if to_mask(P) & ~a) == len(f)


def test_c_profile_examples():
    p = Params(5, 2)
    prof = c_profile(make_star(1, p), 1)
    assert prof.value == 1 and prof.witness == to_mask([1])
    assert c_profile(make_star_plus(1, [2, 3], p), 1).value == 1
    for n, k in [(6, 3), (7, 4)]:
        for i in range(1, k):
            assert c_profile(full(n, k), i).value == 1
    with pytest.raises(DomainError):
        c_profile(full(5, 2), 2)
    with pytest.raises(DomainError):
        c_profile(full(5, 2), 0)


def test_concentration_at_k_is_one():
    assert concentration(make_random(3, Params(7, 3), 1), 3).value == 1


@settings(max_examples=100, deadline=None)
@given(families(max_n=8))
def test_c_profile_matches_oracle(f):
    sets = oracles.as_sets(f)
    for i in range(1, f.k):
        prof = c_profile(f, i)
        count, denom = oracles.concentration(sets, f.n, f.k, i)
        assert prof.value == Fraction(count, denom)
        assert 0 <= prof.value <= 1
        assert prof.count == sum(1 for a in f if a & prof.witness == prof.witness)
        assert prof.value * comb(f.n - i, f.k - i) == prof.count


def test_covering_examples():
    p = Params(8, 3)
    cover = covering_number(make_star(1, p))
    assert (cover.size, cover.witness) == (1, (1,))
    assert covering_number(full(5, 2)).size == 4
    for ell in (1, 2, 3):
        cover = covering_number(make_W(ell, Params(10, 3)))
        assert (cover.size, cover.witness) == (2, (1, 2))
    empty = covering_number(Family(p))
    assert empty.size == 0 and empty.empty_family


def test_covering_full_families():
    for n in range(2, 13):
        for k in range(2, n + 1):
            if comb(n, k) > 1000:
                continue
            assert covering_number(full(n, k)).size == n - k + 1


@settings(max_examples=100, deadline=None)
@given(families(max_n=8))
def test_covering_matches_oracle(f):
    cover = covering_number(f)
    assert (cover.size, cover.witness) == oracles.tau(oracles.as_sets(f), f.n)


def test_is_intersecting_examples():
    assert is_intersecting(make_star(1, Params(7, 3)))
    assert not is_intersecting(default_D(Params(7, 3)))


def test_ekr_at_desk_scale():
    rng = random.Random(7)
    for n in range(5, 13):
        for k in range(1, 5):
            if 2 * k >= n:
                continue
            p = Params(n, k)
            for _ in range(5):
                f = make_random(comb(n - 1, k - 1) + 1, p, rng.randrange(10**9))
                assert not is_intersecting(f)


def test_relabel_preserves_statistics():
    f = default_D(Params(7, 3))
    perm = [0, 7, 6, 5, 4, 3, 2, 1]
    g = f.relabel(perm)
    assert g.members != f.members
    assert (max_degree(g).max, edge_count(g)) == (max_degree(f).max, edge_count(f))
    with pytest.raises(DomainError):
        f.relabel([0, 1, 1, 2, 3, 4, 5, 6])
