from __future__ import annotations

import random
from fractions import Fraction

import pytest

from flatspan.config import Config
from flatspan.constructions import gen_collinear, gen_cube, gen_moment_curve, gen_near_pencil, gen_skew_lines
from flatspan.enumeration import (
    enumerate_spanned,
    f_vector,
    incidences,
    weight_function,
    weighted_sum,
    weighted_sum_via_projection,
)
from flatspan.errors import RangeError
from oracles import random_config, random_weighted, spanned_flats


def as_sets(flats, k):
    return {r.flat.basis: frozenset(r.incident) for r in flats[k]}


def test_matches_closure_oracle_on_random_configs():
    rng = random.Random(11)
    for _ in range(60):
        d = rng.choice((2, 3))
        c = random_config(rng, rng.randint(0, 8), d, projective=rng.random() < 0.3)
        flats = enumerate_spanned(c)
        ref = spanned_flats(c)
        for k in range(-1, d + 1):
            assert as_sets(flats, k) == ref[k]


def test_square_counts(square):
    fv = f_vector(square)
    assert fv.counts == (1, 4, 6, 1)
    assert fv.through_origin(1) == 2 and fv.avoiding_origin(1) == 4
    assert fv.through_origin(0) == 0 and fv.avoiding_origin(0) == 4


def test_cube_origin_split():
    fv = f_vector(gen_cube(3))
    assert (fv.through_origin(1), fv.avoiding_origin(1)) == (4, 24)
    assert (fv.through_origin(2), fv.avoiding_origin(2)) == (6, 14)


def test_collinear():
    fv = f_vector(gen_collinear(5, ambient=3))
    assert fv.counts == (1, 5, 1, 0, 0)
    assert fv.rich_lines() == {2: 1, 3: 1, 4: 1, 5: 1}


def test_near_pencil_histogram():
    fv = f_vector(gen_near_pencil(6))
    assert fv.f(1) == 6
    assert fv.exactly(1, 5) == 1 and fv.exactly(1, 2) == 5
    assert fv.at_least(1, 3) == 1 and fv.at_most(1, 2) == 5


def test_skew_lines_counts():
    fv = f_vector(gen_skew_lines(4, 2, 3))
    assert fv.counts == (1, 8, 18, 8, 1)


def test_generic_points_in_p3():
    fv = f_vector(gen_moment_curve(5, 3))
    assert fv.counts == (1, 5, 10, 10, 1)


def test_kmax_and_levels():
    c = gen_skew_lines(3, 2, 3)
    flats = enumerate_spanned(c, 1)
    assert flats.count(1) == 9 + 2
    with pytest.raises(KeyError):
        flats[2]
    assert flats[5] == ()
    with pytest.raises(RangeError):
        enumerate_spanned(c, 4)
    with pytest.raises(RangeError):
        enumerate_spanned(c, -1)


def test_empty_and_single():
    assert f_vector(Config((), 2)).counts == (1, 0, 0, 0)
    one = Config.from_affine([[1, 2]])
    assert f_vector(one).counts == (1, 1, 0, 0)


def test_levels_are_sorted_and_deterministic(monkeypatch):
    c = gen_moment_curve(7, 3)
    a = enumerate_spanned(c)
    monkeypatch.setenv("FLATSPAN_THREADS", "3")
    b = enumerate_spanned(c)
    for k in range(-1, 4):
        assert [r.flat for r in a[k]] == [r.flat for r in b[k]]
        assert [r.flat.rows for r in a[k]] == sorted(r.flat.rows for r in a[k])


def test_incidences():
    c = gen_skew_lines(4, 2, 3)
    flats = enumerate_spanned(c)
    # 16 two-point lines and two four-point lines
    assert incidences(c, flats[1]) == 16 * 2 + 2 * 4


def test_weight_functions():
    assert weight_function("one")(Fraction(7)) == 1
    assert weight_function("reciprocal")(Fraction(4)) == Fraction(1, 4)
    step = weight_function("step:2")
    assert step(Fraction(2)) == 2 and step(Fraction(5, 2)) == 1
    with pytest.raises(ValueError):
        weight_function("nope")


@pytest.mark.parametrize("F", ["one", "reciprocal", "step:3"])
def test_rewrite_identity_random(F):
    rng = random.Random(5)
    fn = weight_function(F)
    for _ in range(15):
        c = random_weighted(rng, rng.randint(2, 7), rng.choice((2, 3)))
        for k in (1, 2):
            assert weighted_sum(c, k, fn) == weighted_sum_via_projection(c, k, fn)


def test_rewrite_needs_positive_k():
    with pytest.raises(RangeError):
        weighted_sum_via_projection(gen_near_pencil(4), 0, weight_function("one"))


def test_large_coordinates_fall_back_to_python_kernel():
    big = 10**30
    c = Config.from_affine([[0, 0], [big, 1], [1, big], [big, big + 1], [3, 5]])
    ref = spanned_flats(c)
    flats = enumerate_spanned(c)
    for k in range(-1, 3):
        assert as_sets(flats, k) == ref[k]
