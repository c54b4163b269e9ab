"""Orthosymplectic algebras: bases, brackets, center, isomorphisms,
parabolic patterns."""

import random

import pytest

from superflag.matrices import BlockShape, SuperMatrix
from superflag.osp import (
    NotInSpanError,
    PARABOLIC_TAGS,
    basis,
    basis_change_S,
    center,
    closure_check,
    conjugate,
    dimension_counts,
    embed_j,
    gram_form,
    is_member,
    j_image_contains,
    membership_residual,
    parabolic_basis,
    stabilized_subspace_indices,
    super_jacobi_holds,
)
from superflag.scalars import FieldScalar, ONE


@pytest.mark.parametrize("m", [0, 1, 2, 3])
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_odd_flavor_dimension_formula(m, n):
    if m == 0 and n == 0:
        return
    bas = basis("odd", m, n)
    even, odd = dimension_counts("odd", m, n)
    assert even == m * (2 * m + 1) + n * (2 * n + 1)
    assert odd == 2 * n * (2 * m + 1)
    assert len(bas.even_generators()) == even
    assert len(bas.odd_generators()) == odd


@pytest.mark.parametrize("flavor,a,b", [
    ("even", 1, 1), ("even", 2, 1), ("even", 2, 2),
    ("primed", 1, 1), ("primed", 3, 1), ("primed", 4, 2),
    ("gl", 2, 1), ("gl", 1, 2),
])
def test_other_flavor_counts(flavor, a, b):
    bas = basis(flavor, a, b)
    even, odd = dimension_counts(flavor, a, b)
    assert (len(bas.even_generators()), len(bas.odd_generators())) == (even, odd)


@pytest.mark.parametrize("flavor,a,b", [
    ("odd", 1, 1), ("odd", 2, 1), ("odd", 1, 2),
    ("even", 2, 1), ("primed", 3, 1), ("primed", 4, 1),
])
def test_defining_equation_all_generators(flavor, a, b):
    bas = basis(flavor, a, b)
    for g in bas:
        assert is_member(g.matrix, bas.gram), g.tag
    # a perturbed generator violates the equation
    probe = bas.generators[0].matrix
    spoiled = probe + SuperMatrix.build(
        probe.rows, probe.cols, {(0, 0): ONE}, parity=0)
    assert not is_member(spoiled, bas.gram)
    assert membership_residual(spoiled, bas.gram) != \
        membership_residual(probe, bas.gram)


def test_closure_osp_3_2():
    bas = basis("odd", 1, 1)
    report = closure_check(bas)
    assert report["failures"] == []
    assert len(report["structure_constants"]) == 43
    tags = {t for t, _, _, _ in
            [(p, q, r, c) for (p, q, r, c) in report["structure_constants"]]}
    assert tags <= set(bas.tags())


@pytest.mark.parametrize("m,n", [(2, 1), (1, 2)])
def test_closure_larger(m, n):
    assert closure_check(basis("odd", m, n))["failures"] == []


def test_jacobi_exhaustive_smallest():
    bas = basis("odd", 1, 1)
    gens = list(bas)
    for x in gens:
        for y in gens:
            for z in gens[::3]:
                assert super_jacobi_holds(x.matrix, y.matrix, z.matrix), (
                    x.tag, y.tag, z.tag)


def test_jacobi_sampled_2_1():
    bas = basis("odd", 2, 1)
    gens = list(bas)
    rng = random.Random(424242)
    for _ in range(150):
        x, y, z = (rng.choice(gens) for _ in range(3))
        assert super_jacobi_holds(x.matrix, y.matrix, z.matrix)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2)])
def test_center_trivial(m, n):
    assert center("odd", m, n) == []


def test_gl_center_is_identity_line():
    z = center("gl", 2, 1)
    assert len(z) == 1
    mat = z[0]
    # the central element is a multiple of the identity
    diag = mat[0, 0]
    assert not diag.is_zero()
    for i in range(3):
        assert mat[i, i] == diag
    for i in range(3):
        for j in range(3):
            if i != j:
                assert mat[i, j].is_zero()


def test_coefficients_of_round_trip():
    bas = basis("odd", 1, 1)
    rng = random.Random(9)
    combo = None
    want = {}
    for g in bas:
        c = FieldScalar(rng.randint(-3, 3))
        if not c.is_zero():
            want[g.tag] = c
        term = g.matrix * c
        combo = term if combo is None else combo + term
    got = bas.coefficients_of(combo)
    assert {t: c for t, c in got.items() if not c.is_zero()} == want


def test_coefficients_of_rejects_non_member():
    bas = basis("odd", 1, 1)
    sh = bas.gram.matrix.rows
    outside = SuperMatrix.build(sh, sh, {(0, 0): ONE}, parity=0)
    with pytest.raises(NotInSpanError):
        bas.coefficients_of(outside)


@pytest.mark.parametrize("flavor,k1,l1", [
    ("odd", 1, 1), ("odd", 2, 1), ("odd", 2, 2), ("odd", 3, 2),
    ("even", 1, 1), ("even", 2, 1), ("even", 3, 3),
])
def test_gram_transform(flavor, k1, l1):
    s = basis_change_S(flavor, k1, l1)
    t = 2 * k1 - 1 if flavor == "odd" else 2 * k1
    src_gram = gram_form(flavor, k1 - 1 if flavor == "odd" else k1, l1)
    primed = gram_form("primed", t, l1)
    assert s.supertranspose() @ src_gram.matrix @ s == primed.matrix


@pytest.mark.parametrize("flavor,k1,l1", [
    ("odd", 2, 1), ("even", 2, 1), ("odd", 1, 2),
])
def test_conjugation_is_bijective_on_the_algebra(flavor, k1, l1):
    if flavor == "odd":
        src = basis("odd", k1 - 1, l1)
        t = 2 * k1 - 1
    else:
        src = basis("even", k1, l1)
        t = 2 * k1
    s = basis_change_S(flavor, k1, l1)
    s_inv = s.invert()
    primed_gram = gram_form("primed", t, l1)
    primed = basis("primed", t, l1)
    for g in src:
        img = conjugate(g.matrix, s, s_inv)
        assert is_member(img, primed_gram), g.tag
        assert conjugate(img, s_inv, s) == g.matrix, g.tag
    for g in primed:
        back = conjugate(g.matrix, s_inv, s)
        assert is_member(back, src.gram), g.tag


def test_embed_j_preserves_brackets():
    src = basis("primed", 3, 1)
    gens = list(src)
    for x in gens:
        for y in gens:
            lhs = embed_j(x.matrix.superbracket(y.matrix))
            rhs = embed_j(x.matrix).superbracket(embed_j(y.matrix))
            assert lhs == rhs, (x.tag, y.tag)


def test_j_image_characterization():
    src = basis("primed", 3, 1)
    for g in src:
        img = embed_j(g.matrix)
        assert j_image_contains(img), g.tag
        # any entry in the bordered row/column breaks the image test
    probe = embed_j(src.generators[0].matrix)
    spoiled = probe + SuperMatrix.build(
        probe.rows, probe.cols, {(0, 2): ONE}, parity=0)
    assert not j_image_contains(spoiled)
    with pytest.raises(ValueError):
        embed_j(embed_j(src.generators[0].matrix))   # even-sized source


def _stabilizes(mat, indices):
    keep = set(indices)
    return all(i in keep for (i, j) in mat.entries if j in keep)


@pytest.mark.parametrize("which,flavor,k1,l1", [
    ("p", "odd", 2, 1), ("p", "odd", 2, 2), ("p", "odd", 3, 1),
    ("p1", "even", 2, 1), ("p1", "even", 2, 2), ("p1", "even", 3, 2),
])
def test_parabolic_original_is_the_stabilizer(which, flavor, k1, l1):
    """The tag filter coincides with the flag stabilizer, generator by
    generator, and is closed under the superbracket."""
    if flavor == "odd":
        ambient = basis("odd", k1 - 1, l1)
    else:
        ambient = basis("even", k1, l1)
    sub = parabolic_basis(which, k1, l1, layout="original")
    idx = stabilized_subspace_indices(flavor, ambient.gram.matrix.rows)
    expected = {g.tag for g in ambient if _stabilizes(g.matrix, idx)}
    assert {g.tag for g in sub} == expected
    assert closure_check(sub)["failures"] == []


def test_parabolic_original_contains_full_diagonal_block():
    sub = parabolic_basis("p", 2, 1, layout="original")
    tags = {g.tag for g in sub}
    assert "A11:1,1" in tags          # the full gl block on the diagonal
    assert "B11:1,1" in tags
    assert not any(t.startswith("G1:") or t.startswith("A12:") for t in tags)


def test_parabolic_primed_pattern_is_not_closed():
    """The primed-layout block pattern is a slot pattern, not a
    subalgebra: A11' brackets G2' into the excluded G1' family."""
    sub = parabolic_basis("p", 2, 1, layout="primed")
    failures = closure_check(sub)["failures"]
    assert failures != []
    assert ("A11:1,1", "G2:1") in failures or ("G2:1", "A11:1,1") in failures


@pytest.mark.parametrize("k1,l1", [(1, 1), (2, 1), (2, 2)])
def test_embed_j_carries_p_pattern_into_p1_pattern(k1, l1):
    p = parabolic_basis("p", k1, l1, layout="primed")
    ambient = basis("primed", 2 * k1, l1)
    allowed = PARABOLIC_TAGS[("p1", "primed")]
    for g in p:
        coeffs = ambient.coefficients_of(embed_j(g.matrix))
        for tag, c in coeffs.items():
            if not c.is_zero():
                assert tag.split(":")[0] in allowed, (g.tag, tag)


def test_flavor_validation():
    with pytest.raises(ValueError):
        basis("odd", 0, 0)
    with pytest.raises(ValueError):
        basis("nosuch", 1, 1)
    with pytest.raises(ValueError):
        parabolic_basis("p2", 2, 1)
