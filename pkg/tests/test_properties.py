from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from flatspan.claims import Analysis, check_flat_count_drop, check_split_bound
from flatspan.config import Config
from flatspan.enumeration import weight_function, weighted_sum, weighted_sum_via_projection

coord = st.integers(-2, 2)


@st.composite
def configs(draw, max_n=7):
    d = draw(st.sampled_from((2, 3)))
    pts = draw(st.lists(st.tuples(*[coord] * d), min_size=1, max_size=max_n, unique=True))
    weights = draw(st.lists(st.fractions(1, 3, max_denominator=3), min_size=len(pts), max_size=len(pts)))
    return Config.from_affine([list(p) for p in pts], weights=weights)


common = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@common
@given(configs())
def test_f_vector_basics(c):
    a = Analysis(c)
    fv = a.fvec
    assert fv.f(-1) == 1 and fv.f(0) == c.n
    # the span of all points is the unique top flat
    rank = max(r.dim for r in a.flats.records(min_dim=-1))
    assert fv.f(rank) == 1
    assert all(fv.f(k) == 0 for k in range(rank + 1, c.ambient + 1))


@common
@given(configs())
def test_g_vector_shape(c):
    g = Analysis(c).gvec.g
    assert g[0] == 0 and g[-1] == c.n
    assert all(x < y for x, y in zip(g, g[1:]))


@common
@given(configs())
def test_drop_above_essential_dimension(c):
    a = Analysis(c)
    for k in range(max(a.K, 1), c.ambient + 2):
        assert check_flat_count_drop(a, k).status == "pass"


@common
@given(configs(), st.data())
def test_split_bound_any_partition(c, data):
    part = data.draw(st.lists(st.integers(0, c.n - 1), unique=True))
    k = data.draw(st.integers(0, c.ambient))
    assert check_split_bound(c, part=part, k=k).status == "pass"


@common
@given(configs(max_n=6), st.sampled_from(["one", "reciprocal"]), st.sampled_from([1, 2]))
def test_rewrite_identity(c, F, k):
    fn = weight_function(F)
    assert weighted_sum(c, k, fn) == weighted_sum_via_projection(c, k, fn)
