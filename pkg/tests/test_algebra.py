from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from flatsuper.algebra import (
    LieSuperalgebra,
    center,
    derived_subalgebra,
    is_degenerate_subspace,
    jacobi_violations,
    normalizers,
    series,
    validate,
)
from flatsuper.catalog import load_catalog
from flatsuper.linalg import BilinearForm, StructuralError, SuperSpace, same_span, zeros
from flatsuper.products import ProductTable, levi_civita, natural_symplectic

from helpers import alg

CATALOG = load_catalog()
NILPOTENT = [e for e in CATALOG if e.computed["nilpotent"]]
FLAT_NON_ABELIAN = [e for e in CATALOG if e.computed["flat"] and e.computed["non_abelian"]]


def span_of(g, *names):
    return [g.space.basis(n) for n in names]


def flipped_d5():
    g = alg("d5")
    vals = g.form.values.copy()
    i, j = g.space.index("e2"), g.space.index("f2")
    vals[i, j], vals[j, i] = -vals[i, j], -vals[j, i]
    return g.with_form(BilinearForm(g.space, g.form.parity, vals))


# -- validation ---------------------------------------------------------------

def test_abelian_with_form_validates():
    assert validate(alg("abelian2")) == []
    assert validate(alg("abelian2_peri")) == []


def test_d5_validates():
    assert validate(alg("d5")) == []


def test_d5_with_flipped_form_entry_is_not_closed():
    bad = validate(flipped_d5())
    assert bad and all(v.clause == "closedness of the form" for v in bad)
    assert all(len(v.where) == 3 for v in bad)


def test_jacobi_failure_names_the_triple():
    s = SuperSpace.from_spec(["e1", "e2", "e3"])
    g = LieSuperalgebra.from_brackets(s, {("e1", "e2"): {"e3": 1}, ("e2", "e3"): {"e1": 1},
                                          ("e1", "e3"): {"e1": 1}})
    bad = jacobi_violations(g.bracket)
    assert [v.where for v in bad] == [("e1", "e2", "e3")]


def test_anti_symmetry_violation_detected():
    s = SuperSpace.from_spec(["e1", "e2"], ["f1"])
    c = zeros(3, 3, 3)
    c[0, 1, 1] = F(1)
    assert any(v.clause == "graded anti-symmetry" for v in jacobi_violations(ProductTable(s, c)))


def test_inconsistent_bracket_input():
    s = SuperSpace.from_spec(["e1", "e2"])
    with pytest.raises(StructuralError):
        LieSuperalgebra.from_brackets(s, {("e1", "e2"): {"e1": 1}, ("e2", "e1"): {"e1": 1}})


def test_degenerate_form_reported():
    g = alg("abelian2")
    g0 = g.with_form(BilinearForm(g.space, 0, zeros(2, 2)))
    assert [v.clause for v in validate(g0)] == ["nondegeneracy of the form"]


def test_periplectic_needs_balanced_dimensions():
    s = SuperSpace.from_spec(["e1", "e2"], ["f1"])
    form = BilinearForm(s, 1, [[0, 0, 1], [0, 0, 0], [-1, 0, 0]])
    g = LieSuperalgebra.from_brackets(s, {}, form)
    assert any("dim g_0 = dim g_1" in v.clause for v in validate(g))


@st.composite
def jacobi_triples(draw):
    """A random bracket on a small superspace (usually not a Lie superalgebra)."""
    ne = draw(st.integers(1, 2))
    no = draw(st.integers(0, 2))
    s = SuperSpace.from_spec([f"e{i}" for i in range(ne)], [f"f{i}" for i in range(no)])
    n = s.dim
    p = s.parities
    c = zeros(n, n, n)
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                if p[k] != (p[i] + p[j]) % 2 or (i == j and p[i] == 0):
                    continue
                x = draw(st.sampled_from([0, 0, 1, -1]))
                c[i, j, k] = F(x)
                c[j, i, k] = -(-1) ** (p[i] * p[j]) * F(x)
    return ProductTable(s, c)


@given(jacobi_triples())
@settings(max_examples=80, deadline=None)
def test_two_cyclic_forms_of_jacobi_agree(bracket):
    # (-1)^{|u||w|}[[u,v],w] + ... = 0 against
    # [[u,v],w] + (-1)^{|u||v|+|u||w|}[[v,w],u] + (-1)^{|v||w|+|u||w|}[[w,u],v] = 0
    s = bracket.space
    p = s.parities
    c = bracket.constants
    b = s.basis
    first_ok = not any(v.clause == "super Jacobi identity" for v in jacobi_violations(bracket))
    second_ok = True
    for i in range(s.dim):
        for j in range(s.dim):
            for k in range(s.dim):
                t = (bracket.mul(c[i, j], b(k))
                     + (-1) ** (p[i] * p[j] + p[i] * p[k]) * bracket.mul(c[j, k], b(i))
                     + (-1) ** (p[j] * p[k] + p[i] * p[k]) * bracket.mul(c[k, i], b(j)))
                second_ok = second_ok and not np.any(t != 0)
    assert first_ok == second_ok


# -- center, derived algebra, series -------------------------------------------

def test_center_examples():
    assert len(center(alg("abelian3"))) == 3
    g = alg("kh3")
    assert same_span(center(g), span_of(g, "x3", "x4"), 4)
    assert center(alg("d5")) == []


def test_derived_examples():
    assert derived_subalgebra(alg("abelian2")) == []
    d5 = alg("d5")
    assert same_span(derived_subalgebra(d5), span_of(d5, "f1", "f2"), 4)
    g4 = alg("g4")
    assert same_span(derived_subalgebra(g4), span_of(g4, "x1", "x2"), 4)


def test_series_abelian():
    r = series(alg("abelian2"))
    assert r.lcs_dims == [2, 0] and r.ds_dims == [2, 0]
    assert r.is_nilpotent and r.is_solvable


def test_series_g2_nilpotent():
    assert series(alg("g2")).is_nilpotent


def test_series_kh3_center_degenerate():
    r = series(alg("kh3"))
    assert r.center_degenerate is True


def test_series_d5_recorded_values():
    # computed: D5 is solvable but not nilpotent
    r = series(alg("d5"))
    assert r.lcs_dims == [4, 2, 2] and r.ds_dims == [4, 2, 0]
    assert r.is_solvable and not r.is_nilpotent


def test_series_without_form():
    r = series(alg("kh3").with_form(None))
    assert r.center_degenerate is None and r.derived_degenerate is None


@pytest.mark.parametrize("e", CATALOG, ids=lambda e: e.name)
def test_series_dims_weakly_decrease(e):
    r = series(e.algebra)
    for dims in (r.lcs_dims, r.ds_dims):
        assert all(a >= b for a, b in zip(dims, dims[1:]))
    assert r.is_nilpotent == (r.lcs_dims[-1] == 0)
    assert r.is_solvable == (r.ds_dims[-1] == 0)


@pytest.mark.parametrize("e", NILPOTENT, ids=lambda e: e.name)
def test_nilpotent_entries_have_degenerate_derived_and_center(e):
    g = e.algebra
    r = series(g)
    # for the abelian entries [g,g] = 0 and Z = g is nondegenerate,
    # so the statement is about non-abelian algebras
    if e.computed["non_abelian"]:
        assert r.derived_degenerate and r.center_degenerate


@pytest.mark.parametrize("e", FLAT_NON_ABELIAN, ids=lambda e: e.name)
def test_flat_non_abelian_has_isotropic_center(e):
    g = e.algebra
    assert is_degenerate_subspace(center(g), g.form)


# -- normalizers -----------------------------------------------------------------

def test_normalizers_of_zero_product():
    g = alg("abelian2")
    nl, nr, nn = normalizers(g, ProductTable.zero(g.space))
    assert len(nl) == len(nr) == len(nn) == 2


def test_right_normalizer_of_natural_product_on_kh3():
    g = alg("kh3")
    _, nr, _ = normalizers(g, natural_symplectic(g))
    assert same_span(nr, span_of(g, "x3", "x4"), 4)


@pytest.mark.parametrize("e", CATALOG, ids=lambda e: e.name)
def test_left_normalizer_of_levi_civita_is_derived_perp(e):
    from flatsuper.linalg import orthogonal_complement
    g = e.algebra
    nl, _, _ = normalizers(g, levi_civita(g))
    assert same_span(nl, orthogonal_complement(derived_subalgebra(g), g.form), g.dim)


def test_normalizers_reject_foreign_product():
    with pytest.raises(ValueError):
        normalizers(alg("kh3"), ProductTable.zero(alg("abelian2").space))


# -- dimension two ------------------------------------------------------------------

# (seed, bracket pairs, number of valid quasi-Frobenius candidates); a purely
# odd space has no even target for [f, f], so it has no candidates at all
TWO_DIM = [
    ("abelian2", [("e1", "e2")], 6),
    ("abelian2_odd", [("f1", "f1"), ("f1", "f2"), ("f2", "f2")], 0),
    ("abelian2_peri", [("e1", "e1"), ("e1", "f1"), ("f1", "f1")], 3),
]


@pytest.mark.parametrize("name, pairs, valid", TWO_DIM, ids=[t[0] for t in TWO_DIM])
def test_two_dimensional_flat_algebras_are_abelian(name, pairs, valid):
    from flatsuper.products import is_flat
    base = alg(name)
    s = base.space
    p = s.parities
    seen_nonzero = 0
    for x, y in pairs:
        i, j = s.index(x), s.index(y)
        if i == j and p[i] == 0:
            continue
        targets = [k for k in range(s.dim) if p[k] == (p[i] + p[j]) % 2]
        for k in targets:
            for c in (F(1), F(-2), F(1, 3)):
                g = LieSuperalgebra.from_brackets(s, {(x, y): {s.names[k]: c}}, base.form)
                if validate(g):
                    continue
                seen_nonzero += 1
                assert not is_flat(g), (x, y, s.names[k], c)
    # every single-bracket candidate is either invalid or non-flat
    assert seen_nonzero == valid
