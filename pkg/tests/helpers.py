"""Shared builders and hypothesis strategies for the test suite."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from hypothesis import strategies as st

from flatsuper.catalog import entry
from flatsuper.linalg import BilinearForm, LinearOperator, SuperSpace, inverse, zeros

F = Fraction

small = st.integers(min_value=-3, max_value=3).map(Fraction)
rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)


def alg(name):
    return entry(name).algebra


@st.composite
def spaces(draw, max_even=3, max_odd=3):
    ne = draw(st.integers(0, max_even))
    no = draw(st.integers(0, max_odd))
    if ne + no == 0:
        ne = 1
    return SuperSpace.from_spec([f"e{i + 1}" for i in range(ne)], [f"f{i + 1}" for i in range(no)])


@st.composite
def operators(draw, space, parity=None, entries=small):
    if parity is None:
        parity = draw(st.integers(0, 1))
    n = space.dim
    p = space.parities
    m = zeros(n, n)
    for i in range(n):
        for j in range(n):
            if p[i] == (p[j] + parity) % 2:
                m[i, j] = draw(entries)
    return LinearOperator(space, parity, m)


def random_even_form(draw, space):
    """A nondegenerate even super anti-symmetric form: symplectic on the even
    part, symmetric on the odd part, both drawn at random until invertible."""
    n = space.dim
    p = space.parities
    vals = zeros(n, n)
    ev = [i for i in range(n) if p[i] == 0]
    od = [i for i in range(n) if p[i] == 1]
    for a, i in enumerate(ev):
        for j in ev[a + 1:]:
            x = draw(small)
            vals[i, j], vals[j, i] = x, -x
    for a, i in enumerate(od):
        for j in od[a:]:
            x = draw(small)
            vals[i, j] = vals[j, i] = x
    return BilinearForm(space, 0, vals)


@st.composite
def nondegenerate_even_forms(draw):
    """Even forms on spaces with an even number of even vectors."""
    from flatsuper.linalg import is_nondegenerate

    ne = draw(st.sampled_from([0, 2]))
    no = draw(st.integers(0 if ne else 1, 3))
    space = SuperSpace.from_spec([f"e{i + 1}" for i in range(ne)], [f"f{i + 1}" for i in range(no)])
    form = random_even_form(draw, space)
    from hypothesis import assume
    assume(is_nondegenerate(form))
    return form


@st.composite
def nondegenerate_odd_forms(draw):
    from flatsuper.linalg import is_nondegenerate
    from hypothesis import assume

    k = draw(st.integers(1, 2))
    space = SuperSpace.from_spec([f"e{i + 1}" for i in range(k)], [f"f{i + 1}" for i in range(k)])
    n = space.dim
    vals = zeros(n, n)
    for i in range(k):
        for j in range(k, n):
            x = draw(small)
            vals[i, j] = x
            vals[j, i] = -x
    form = BilinearForm(space, 1, vals)
    assume(is_nondegenerate(form))
    return form


def vec(space, **coords):
    return space.vector({k: F(v) for k, v in coords.items()})


def as_list(v):
    return [F(x) for x in np.asarray(v).flat]


# -- admissible extension data --------------------------------------------------

# (label, seed, variant, xi entries {(row, col): value}, b0 {name: value});
# column j of xi is the image of the j-th seed vector
SPEC_DATA = [
    ("abelian2 even-ortho xi=0", "abelian2", "even-orthosymplectic", {}, {"e1": 2, "e2": 3}),
    ("abelian2 even-ortho xi=E12", "abelian2", "even-orthosymplectic", {(0, 1): 1}, {"e1": 5}),
    ("abelian2_odd even-ortho xi=2E12", "abelian2_odd", "even-orthosymplectic", {(0, 1): 2}, {}),
    ("abelian3 even-ortho xi=E12", "abelian3", "even-orthosymplectic", {(0, 1): 1}, {"e1": -1}),
    ("kh3 even-ortho", "kh3", "even-orthosymplectic", {(2, 0): 1, (2, 1): -1}, {"x4": 1}),
    ("g2 even-ortho", "g2", "even-orthosymplectic", {(1, 0): 1, (3, 2): 1}, {"x2": 1}),
    ("abelian2 odd-ortho", "abelian2", "odd-orthosymplectic", {}, {"e1": 1, "e2": -1}),
    ("kh3 odd-ortho", "kh3", "odd-orthosymplectic", {}, {"x3": 1}),
    ("g2 odd-ortho", "g2", "odd-orthosymplectic", {(1, 2): 1, (3, 0): -1}, {"x2": 1}),
    ("abelian2_peri even-peri", "abelian2_peri", "even-periplectic", {}, {"e1": 2}),
    ("g3 even-peri", "g3", "even-periplectic", {(1, 0): 1, (3, 2): -1}, {"x2": 1}),
    ("abelian2_peri odd-peri xi=0", "abelian2_peri", "odd-periplectic", {}, {"e1": 1}),
    ("abelian2_peri odd-peri xi=-2E21", "abelian2_peri", "odd-periplectic", {(1, 0): -2}, {}),
    ("abelian2_peri odd-peri xi=E12", "abelian2_peri", "odd-periplectic", {(0, 1): 1}, {"e1": 1}),
    ("g3 odd-peri", "g3", "odd-periplectic", {(1, 2): 1, (3, 0): 1}, {"x2": 1}),
    ("g4 odd-peri", "g4", "odd-periplectic", {(0, 2): 1, (0, 3): -1}, {"x1": 1, "x2": 1}),
]


def make_spec(seed, variant, xi_entries, b0):
    from flatsuper.extensions import VARIANTS, ExtensionSpec

    g = alg(seed) if isinstance(seed, str) else seed
    n = g.dim
    m = zeros(n, n)
    for (i, j), v in xi_entries.items():
        m[i, j] = F(v)
    xi = LinearOperator(g.space, VARIANTS[variant][0], m)
    return ExtensionSpec(g, xi, vec(g.space, **b0), variant)


def specs():
    return [(label, make_spec(seed, var, xi, b0)) for label, seed, var, xi, b0 in SPEC_DATA]


# pairs outside the listed families, each expected to fail
NEGATIVES = [
    ("abelian2", "even-orthosymplectic", {(0, 0): 1}, {}),
    ("abelian2", "even-orthosymplectic", {(1, 1): 2}, {"e1": 1}),
    ("abelian2", "even-orthosymplectic", {(0, 1): 1, (1, 0): 1}, {}),
    ("abelian2", "even-orthosymplectic", {(0, 1): 1}, {"e1": 1, "e2": 1}),
    ("abelian2", "even-orthosymplectic", {(1, 0): 1}, {"e1": 1}),
    ("abelian2_odd", "even-orthosymplectic", {(0, 0): 1}, {}),
    ("abelian2_odd", "even-orthosymplectic", {(0, 1): 1, (1, 0): 1}, {}),
    ("abelian2_peri", "even-periplectic", {(0, 0): 1}, {}),
    ("abelian2_peri", "odd-periplectic", {(0, 1): 1, (1, 0): 1}, {}),
    ("abelian2_peri", "odd-periplectic", {(1, 0): 1}, {"e1": 1}),
    ("abelian2_peri", "even-periplectic", {(1, 1): 1}, {"e1": 1}),
    ("kh3", "even-orthosymplectic", {}, {"x1": 1}),
    ("kh3", "odd-orthosymplectic", {}, {"x2": 1}),
    ("g3", "odd-periplectic", {}, {"x1": 1}),
]


def in_basis(g, P):
    """Bracket constants and form values of ``g`` in the basis given by the columns of P."""
    n = g.dim
    Pinv = inverse(P)
    cols = [P[:, a] for a in range(n)]
    c = zeros(n, n, n)
    om = zeros(n, n)
    for a in range(n):
        for b in range(n):
            c[a, b] = Pinv.dot(g.br(cols[a], cols[b]))
            om[a, b] = g.form(cols[a], cols[b])
    return c, om


def twist(space):
    n = space.dim
    m = zeros(n, n)
    for i, q in enumerate(space.parities):
        m[i, i] = F(-1 if q else 1)
    return LinearOperator(space, 0, m)
