"""Root systems, dominance, and the dominant-weight case table."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superflag.weights import (
    RootSystem,
    Weight,
    bwb_dominant_filter,
    psi_highest_weights,
    root_system,
    w0_fiber_description,
)


def W(mu, la):
    return Weight(tuple(mu), tuple(la))


def test_root_counts():
    for s in range(4):
        for n in range(4):
            rs = RootSystem(s, n)
            assert len(rs.positive_even_part()) == s * s
            assert len(rs.positive_odd_part()) == n * n
            assert len(rs.simple_roots()) == s + n


def test_simple_roots_are_positive_roots_combinations():
    rs = RootSystem(3, 2)
    pos = rs.positive_roots()
    for a in rs.simple_roots():
        # every simple root is itself positive except the doubled 2*la_n,
        # which is the long positive root la_n + la_n
        assert a in pos or a.scale(1) == (
            Weight.basis_la(3, 2, 2) + Weight.basis_la(3, 2, 2))


small_weights = st.builds(
    W,
    st.lists(st.integers(min_value=-3, max_value=3), min_size=3, max_size=3),
    st.lists(st.integers(min_value=-3, max_value=3), min_size=2, max_size=2),
)


@given(small_weights)
@settings(max_examples=300, deadline=None)
def test_dominance_simple_root_criterion(w):
    rs = RootSystem(3, 2)
    assert rs.is_dominant(w) == all(
        w.inner(a) >= 0 for a in rs.simple_roots())


@given(small_weights, st.integers(min_value=1, max_value=5))
@settings(max_examples=200, deadline=None)
def test_dominance_scale_invariant(w, c):
    rs = RootSystem(3, 2)
    assert rs.is_dominant(w) == rs.is_dominant(w.scale(c))


def test_dominance_explicit():
    rs = RootSystem(2, 2)
    assert rs.is_dominant(W((2, 1), (3, 0)))
    assert not rs.is_dominant(W((1, 2), (3, 0)))    # mu1 < mu2
    assert not rs.is_dominant(W((2, 1), (0, -1)))   # la2 < 0
    assert rs.is_dominant(Weight.zero(2, 2))


def test_weight_arithmetic_and_render():
    w = Weight.basis_mu(3, 2, 1) - Weight.basis_la(3, 2, 2)
    assert w.mu == (1, 0, 0) and w.la == (0, -1)
    assert w.render() == "mu1 - la2"
    assert (w - w).render() == "0"
    assert (w + w).render() == "2*mu1 - 2*la2"
    assert (-w).render() == "-mu1 + la2"
    with pytest.raises(ValueError):
        w + Weight.zero(1, 1)


def test_highest_weight_case_split():
    s = lambda k1, l1: [w.render() for w in psi_highest_weights(k1, l1)]
    assert s(4, 3) == ["mu1 - mu3", "mu1 - la3", "-mu3 + la1",
                       "la1 - la3", "0"]
    assert s(2, 3) == ["mu1 - la3", "-mu1 + la1", "la1 - la3", "0"]
    assert s(4, 1) == ["mu1 - mu3", "mu1 - la1", "-mu3 + la1", "0"]
    assert s(2, 1) == ["mu1 - la1", "-mu1 + la1", "0"]
    assert s(1, 3) == ["la1 - la3"]
    assert s(1, 1) == []
    assert s(4, 0) == ["mu1 - mu3"]
    assert s(2, 0) == []


@pytest.mark.parametrize("k1", range(1, 7))
@pytest.mark.parametrize("l1", range(1, 5))
def test_dominant_filter_table(k1, l1):
    rs = root_system(k1, l1)
    survivors = bwb_dominant_filter(psi_highest_weights(k1, l1), rs)
    if k1 >= 2:
        assert len(survivors) == 1 and survivors[0].is_zero()
        assert w0_fiber_description(k1, l1) == "ℂ"
    else:
        assert survivors == []
        assert w0_fiber_description(k1, l1) == "{0}"


def test_filter_preserves_multiplicity_and_order():
    rs = RootSystem(2, 1)
    z = Weight.zero(2, 1)
    dom = W((2, 1), (1,))
    bad = W((-1, 0), (0,))
    assert bwb_dominant_filter([dom, bad, z, dom], rs) == [dom, z, dom]


def test_nonzero_survivor_raises(monkeypatch):
    # a regression in the weight lists surfaces as a loud error, not a
    # silently wrong description
    import superflag.weights as wmod

    monkeypatch.setattr(wmod, "psi_highest_weights",
                        lambda k1, l1: [W((1,), (0,))])
    with pytest.raises(ValueError):
        wmod.w0_fiber_description(2, 1)


def test_size_validation():
    with pytest.raises(ValueError):
        psi_highest_weights(0, 1)
    with pytest.raises(ValueError):
        root_system(1, -1)
