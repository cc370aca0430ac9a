"""Flat double extensions, isotropic reductions and the decomposition of flat algebras.

An extension adds a line ``K d`` and a dual line ``K e`` to a flat seed ``b``, with
basis order ``(d, b..., e)``.  The four variants differ in the parities of ``d`` and
``e`` and in the parity of the seed form:

================== ===== ===== ===========
variant             d     e    seed form
================== ===== ===== ===========
even-orthosymplectic even  even even
odd-orthosymplectic  odd   odd  even
even-periplectic     even  odd  odd
odd-periplectic      odd   even odd
================== ===== ===== ===========

In every variant omega(e, d) = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import LieSuperalgebra, center, validate
from .linalg import (
    EVEN,
    ODD,
    BilinearForm,
    LinearOperator,
    StructuralError,
    SuperSpace,
    adjoint,
    as_array,
    inverse,
    intersect,
    is_zero,
    orthogonal_complement,
    sign,
    solve_linear,
    zeros,
)
from .products import (
    ProductTable,
    Violation,
    is_flat,
    natural_symplectic,
)

VARIANTS = {
    # name: (parity of d, parity of e, parity of the seed form)
    "even-orthosymplectic": (EVEN, EVEN, EVEN),
    "odd-orthosymplectic": (ODD, ODD, EVEN),
    "even-periplectic": (EVEN, ODD, ODD),
    "odd-periplectic": (ODD, EVEN, ODD),
}

THIRD = Fraction(1, 3)


def variant_for(form_parity: int, e_parity: int) -> str:
    for name, (_, pe, pf) in VARIANTS.items():
        if pe == e_parity and pf == form_parity:
            return name
    raise AssertionError("unreachable")


@dataclass(frozen=True, eq=False)
class ExtensionSpec:
    seed: LieSuperalgebra
    xi: LinearOperator
    b0: np.ndarray
    variant: str
    d_name: str = "d"
    e_name: str = "e"

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}; expected one of {sorted(VARIANTS)}")
        pd, _, pf = VARIANTS[self.variant]
        if self.seed.form is None:
            raise StructuralError("the seed needs a form")
        if self.seed.form.parity != pf:
            raise StructuralError(f"{self.variant} needs a seed form of parity {pf}")
        if self.xi.space != self.seed.space:
            raise StructuralError("xi lives on a different space")
        if self.xi.parity != pd and not self.xi.is_zero():
            raise StructuralError(f"xi must have parity {pd} for {self.variant}")
        b0 = as_array(self.b0)
        if b0.shape != (self.seed.dim,):
            raise StructuralError("b0 has the wrong length")
        if not self.seed.space.is_homogeneous(b0, EVEN):
            raise StructuralError("b0 must be even")
        if self.xi.parity != pd:
            object.__setattr__(self, "xi", LinearOperator.zero(self.seed.space, pd))
        object.__setattr__(self, "b0", b0)
        names = set(self.seed.space.names)
        if self.d_name in names or self.e_name in names or self.d_name == self.e_name:
            raise StructuralError("names of d and e must be new")

    @property
    def d_parity(self) -> int:
        return VARIANTS[self.variant][0]

    @property
    def e_parity(self) -> int:
        return VARIANTS[self.variant][1]

    @property
    def odd(self) -> bool:
        return self.d_parity == ODD


class _Ops:
    """Operators on the seed shared by the admissibility systems and the constructor."""

    def __init__(self, spec: ExtensionSpec):
        seed = spec.seed
        self.spec = spec
        self.space = seed.space
        self.omega = seed.form
        self.star = natural_symplectic(seed) if seed.dim else ProductTable.zero(seed.space)
        self.xi = spec.xi
        self.xis = adjoint(spec.xi, seed.form) if seed.dim else spec.xi
        self.b0 = spec.b0
        n = seed.dim
        self.twist = LinearOperator(self.space, EVEN, np.diag(
            [Fraction(sign(q)) for q in self.space.parities]).astype(object) if n else zeros(0, 0))
        if spec.variant in ("even-orthosymplectic", "even-periplectic"):
            self.D = self.xis - self.xi
        elif spec.variant == "odd-orthosymplectic":
            self.D = -((self.xis + self.xi) @ self.twist)
        else:
            self.D = (self.xis - self.xi) @ self.twist

    def L(self, u) -> LinearOperator:
        return self.star.left(u)

    def R(self, u) -> LinearOperator:
        return self.star.right(u)

    def omega_b0(self) -> np.ndarray:
        """Coefficients u -> omega(b0, u) on the seed basis."""
        return self.b0.dot(self.omega.values) if self.space.dim else zeros(0)


def _op_clause(name: str, lhs: LinearOperator, rhs: LinearOperator) -> list[Violation]:
    return [] if lhs == rhs else [Violation(name)]


def _pair_clause(ops: _Ops, name: str, f) -> list[Violation]:
    """Evaluate ``f(i, j)`` (a vector that must vanish) on all basis pairs."""
    names = ops.space.names
    n = ops.space.dim
    return [Violation(name, (names[i], names[j]))
            for i in range(n) for j in range(n) if not is_zero(f(i, j))]


def _xi_derivation(ops: _Ops) -> list[Violation]:
    p = ops.space.parities
    star = ops.star
    br = star.commutator().constants
    xi = ops.xi

    def f(i, j):
        return (xi(br[i, j]) - star.mul(ops.space.basis(i), xi(ops.space.basis(j)))
                + sign(p[i] * p[j]) * star.mul(ops.space.basis(j), xi(ops.space.basis(i))))
    return _pair_clause(ops, "xi([u,v]) = L_u xi(v) - (-1)^{|u||v|} L_v xi(u)", f)


def check_admissible(spec: ExtensionSpec) -> list[Violation]:
    """Violations of the admissibility system of ``spec.variant``; empty iff admissible."""
    seed = spec.seed
    bad = validate(seed)
    if bad:
        raise StructuralError(f"seed is not quasi-Frobenius: {bad[0]}")
    if seed.dim == 0:
        return []
    if not is_flat(seed):
        raise StructuralError("seed is not flat")
    ops = _Ops(spec)
    xi, xis, D, b0, star = ops.xi, ops.xis, ops.D, ops.b0, ops.star
    basis = ops.space.basis
    p = ops.space.parities
    out = _xi_derivation(ops)
    Rb0, Lb0 = ops.R(b0), ops.L(b0)

    if not spec.odd:
        out += _op_clause("xi* xi = 1/3 (R_b0 + R_b0*)", xis @ xi,
                          THIRD * (Rb0 + adjoint(Rb0, ops.omega)))
        out += _pair_clause(ops, "D(u*v) = D(u)*v + u*D(v) - xi(u)*v", lambda i, j: (
            D(star.basis_product(i, j)) - star.mul(D(basis(i)), basis(j))
            - star.mul(basis(i), D(basis(j))) + star.mul(xi(basis(i)), basis(j))))
        out += _op_clause("[xi, xi*] = xi^2 - 1/3 R_b0", xi.supercommutator(xis),
                          xi @ xi - THIRD * Rb0)
        if not is_zero(D(b0)):
            out.append(Violation("b0 in ker D"))
        return out

    # odd d: xi is odd, [xi, xi*] is the anticommutator
    anti = xi @ xis + xis @ xi
    def leibniz(i, j):
        s = sign(p[i])
        return (D(star.basis_product(i, j)) - star.mul(D(basis(i)), basis(j))
                - s * star.mul(basis(i), D(basis(j))) + s * star.mul(xi(basis(i)), basis(j)))

    if spec.variant == "odd-orthosymplectic":
        out += _op_clause("xi xi* + xi* xi = R_b0 - 3 xi^2", anti, Rb0 - 3 * (xi @ xi))
        out += _pair_clause(ops, "D(u*v) = D(u)*v + (-1)^{|u|} u*D(v) - (-1)^{|u|} xi(u)*v",
                            leibniz)
        out += _op_clause("L_b0 = -(xi + xi*)^2", Lb0, -((xi + xis) @ (xi + xis)))
        if not is_zero((2 * xi + xis)(b0)):
            out.append(Violation("(2 xi + xi*)(b0) = 0"))
    else:
        out += _op_clause("xi xi* + xi* xi = 3 xi^2 + R_b0", anti, 3 * (xi @ xi) + Rb0)
        out += _pair_clause(ops, "D(u*v) = D(u)*v + (-1)^{|u|} u*D(v) - (-1)^{|u|} xi(u)*v",
                            leibniz)
        out += _op_clause("L_b0 = (xi* - xi)^2", Lb0, (xis - xi) @ (xis - xi))
        if not is_zero(2 * xi(b0) - xis(b0)):
            out.append(Violation("2 xi(b0) = xi*(b0)"))
    return out


def _extended_space(spec: ExtensionSpec) -> SuperSpace:
    s = spec.seed.space
    return SuperSpace((spec.d_name,) + s.names + (spec.e_name,),
                      (spec.d_parity,) + s.parities + (spec.e_parity,))


def construct(spec: ExtensionSpec):
    """The extended algebra and the predicted natural product, without any checks."""
    seed = spec.seed
    n = seed.dim
    N = n + 2
    space = _extended_space(spec)
    ops = _Ops(spec)
    xi, xis, b0 = ops.xi, ops.xis, ops.b0
    ob0 = ops.omega_b0()
    om = seed.form.values if n else zeros(0, 0)
    P = ops.twist
    d, e = 0, N - 1
    pd = spec.d_parity

    br = zeros(N, N, N)
    prod = zeros(N, N, N)
    seed_br = seed.bracket.constants
    seed_star = ops.star.constants

    if not spec.odd:
        ad_d = xis - 2 * xi
        d_star_u = xis - xi
        u_star_d = xi
        dd_bracket, dd_star = zeros(n), THIRD * b0
        e_of_d_star_u, e_of_u_star_d = THIRD * ob0, -2 * THIRD * ob0
        cocycle = np.array([[(xi + xis)(seed.space.basis(i)).dot(om[:, j]) for j in range(n)]
                            for i in range(n)], dtype=object).reshape(n, n)
        mu = np.array([[xi(seed.space.basis(i)).dot(om[:, j]) for j in range(n)]
                       for i in range(n)], dtype=object).reshape(n, n)
        omega_ed = (1, -1)
    else:
        p = seed.space.parities
        if spec.variant == "odd-orthosymplectic":
            ad_d = -((xis + 2 * xi) @ P)
            d_star_u = -((xis + xi) @ P)
            dd_bracket, dd_star = 2 * b0, b0
            omega_ed = (1, 1)
        else:
            ad_d = (xis - 2 * xi) @ P
            d_star_u = (xis - xi) @ P
            dd_bracket, dd_star = -2 * b0, -b0
            omega_ed = (1, -1)
        u_star_d = xi
        e_of_d_star_u, e_of_u_star_d = ob0, zeros(n)
        cocycle = np.array([[sign(p[j]) * xi(seed.space.basis(i)).dot(om[:, j])
                             + sign(p[i]) * xis(seed.space.basis(i)).dot(om[:, j])
                             for j in range(n)] for i in range(n)], dtype=object).reshape(n, n)
        mu = np.array([[sign(p[j]) * xi(seed.space.basis(i)).dot(om[:, j]) for j in range(n)]
                       for i in range(n)], dtype=object).reshape(n, n)

    q = space.parities
    for i in range(n):
        u = i + 1
        col = ad_d.matrix[:, i]
        br[d, u, 1:N - 1] = col
        br[d, u, e] = ob0[i]
        br[u, d] = -sign(q[u] * pd) * br[d, u]
        prod[d, u, 1:N - 1] = d_star_u.matrix[:, i]
        prod[d, u, e] = e_of_d_star_u[i]
        prod[u, d, 1:N - 1] = u_star_d.matrix[:, i]
        prod[u, d, e] = e_of_u_star_d[i]
        for j in range(n):
            br[u, j + 1, 1:N - 1] = seed_br[i, j]
            br[u, j + 1, e] = cocycle[i, j]
            prod[u, j + 1, 1:N - 1] = seed_star[i, j]
            prod[u, j + 1, e] = mu[i, j]
    br[d, d, 1:N - 1] = dd_bracket
    prod[d, d, 1:N - 1] = dd_star

    values = zeros(N, N)
    values[1:N - 1, 1:N - 1] = om
    values[e, d], values[d, e] = omega_ed
    form = BilinearForm(space, seed.form.parity, values)
    name = f"{seed.name or 'seed'}+{spec.variant}"
    return LieSuperalgebra(space, ProductTable(space, br), form, name), ProductTable(space, prod)


def double_extend(spec: ExtensionSpec, verify: bool = True):
    """Build the flat double extension; returns ``(algebra, predicted natural product)``."""
    bad = check_admissible(spec)
    if bad:
        raise StructuralError("pair is not admissible: " + "; ".join(str(v) for v in bad[:5]))
    g, predicted = construct(spec)
    if verify:
        problems = validate(g)
        if problems:
            raise AssertionError(f"extension is not quasi-Frobenius: {problems[0]}")
        nat = natural_symplectic(g)
        if nat != predicted:
            raise AssertionError("natural product of the extension differs from the prediction")
        if not is_flat(g, nat):
            raise AssertionError("extension is not flat")
    return g, predicted


# -- reduction and decomposition -------------------------------------------

def isotropic_center(g: LieSuperalgebra) -> list[np.ndarray]:
    """Graded basis of Z(g) cap Z(g)^perp."""
    z = center(g)
    if not z:
        return []
    return g.space.graded_basis(intersect(z, orthogonal_complement(z, g.form), g.dim))


def _dual_partner(g: LieSuperalgebra, a: np.ndarray) -> np.ndarray:
    """A homogeneous d with omega(a, d) = 1 and omega(d, d) = 0, of minimal support."""
    pa = g.space.parity_of(a)
    pd = (pa + g.form.parity) % 2
    row = a.dot(g.form.values)
    candidates = [i for i in range(g.dim) if g.space.parities[i] == pd and row[i] != 0]
    if not candidates:
        raise StructuralError("no partner for the isotropic vector; the form is degenerate")
    i = candidates[0]
    d = g.space.basis(i) / row[i]
    dd = g.form(d, d)
    if dd != 0:
        # only possible for odd d under an even form, where omega(d, a) = omega(a, d) = 1
        d = d - Fraction(dd, 2) * a
    return d


def _adapted(g: LieSuperalgebra, a: np.ndarray):
    """``(d, complement basis)`` with omega(a, d) = 1 and complement = span{a, d}^perp."""
    d = _dual_partner(g, a)
    comp = orthogonal_complement([a, d], g.form)
    return d, g.space.graded_basis(comp)


def _coords(basis: list, dim: int):
    """Solver for coordinates along the columns ``basis``."""
    M = np.array(basis, dtype=object).T.reshape(dim, len(basis))
    Minv = inverse(M) if len(basis) == dim else None

    def solve(x):
        if Minv is not None:
            return Minv.dot(x)
        sol = solve_linear(M, np.asarray(x, dtype=object))
        if sol is None:
            raise AssertionError("vector outside the expected subspace")
        return sol[0]
    return solve


def _names_for(g: LieSuperalgebra, vectors: list, avoid=()) -> tuple[str, ...]:
    names = []
    for k, v in enumerate(vectors):
        nz = np.flatnonzero(v != 0)
        if len(nz) == 1 and v[nz[0]] == 1 and g.space.names[nz[0]] not in avoid:
            names.append(g.space.names[nz[0]])
        else:
            names.append(f"u{k + 1}")
    if len(set(names)) != len(names) or set(names) & set(avoid):
        names = [f"u{k + 1}" for k in range(len(vectors))]
    return tuple(names)


def _subquotient(g: LieSuperalgebra, a, d, comp, name: str) -> LieSuperalgebra:
    """Bracket and form induced on ``comp`` by projecting along ``a`` (and ``d``)."""
    k = len(comp)
    coords = _coords([d] + comp + [a], g.dim)
    space = SuperSpace(_names_for(g, comp), tuple(g.space.parity_of(v) for v in comp))
    c = zeros(k, k, k)
    for i in range(k):
        for j in range(k):
            x = coords(g.br(comp[i], comp[j]))
            if x[0] != 0:
                raise AssertionError("bracket leaves the orthogonal of the central vector")
            c[i, j] = x[1:k + 1]
    values = zeros(k, k)
    for i in range(k):
        for j in range(k):
            values[i, j] = g.form(comp[i], comp[j])
    form = BilinearForm(space, g.form.parity, values)
    return LieSuperalgebra(space, ProductTable(space, c), form, name)


def _check_reducible(g: LieSuperalgebra, a) -> np.ndarray:
    a = as_array(a)
    if g.form is None:
        raise StructuralError("reduction needs a form")
    if is_zero(a) or g.space.parity_of(a) is None:
        raise StructuralError("the element must be nonzero and homogeneous")
    if not is_zero(g.ad(a).matrix):
        raise StructuralError("the element is not central")
    if any(g.form(a, z) != 0 for z in center(g)):
        raise StructuralError("the element is not orthogonal to the center")
    return a


def reduce(g: LieSuperalgebra, a, verify: bool = True) -> LieSuperalgebra:
    """The algebra induced on (K a)^perp / K a for a in Z(g) cap Z(g)^perp."""
    a = _check_reducible(g, a)
    d, comp = _adapted(g, a)
    b = _subquotient(g, a, d, comp, f"{g.name or 'g'}/reduced")
    if verify:
        bad = validate(b)
        if bad:
            raise AssertionError(f"reduction is not quasi-Frobenius: {bad[0]}")
        if b.dim and not is_flat(b):
            raise AssertionError("reduction is not flat")
    return b


@dataclass(frozen=True, eq=False)
class Decomposition:
    spec: ExtensionSpec
    adapted_basis: list = field(repr=False)  # (d, seed basis..., e) as vectors of g

    def change_of_basis(self) -> np.ndarray:
        """Matrix whose columns are the adapted basis vectors."""
        return np.array(self.adapted_basis, dtype=object).T


def decompose(g: LieSuperalgebra) -> Decomposition:
    """Recover extension data ``(seed, xi, b0, variant)`` from a flat non-abelian algebra."""
    if g.bracket.is_zero():
        raise StructuralError("abelian algebras are not double extensions")
    bad = validate(g)
    if bad:
        raise StructuralError(f"not quasi-Frobenius: {bad[0]}")
    cand = isotropic_center(g)
    if not cand:
        raise StructuralError("no isotropic central vector over the rationals")
    e = cand[0]
    e = e / e[np.flatnonzero(e != 0)[0]]
    d, comp = _adapted(g, e)
    seed = _subquotient(g, e, d, comp, f"{g.name or 'g'}/seed")
    star = natural_symplectic(g)
    coords = _coords([d] + comp + [e], g.dim)
    k = len(comp)
    xi_m = zeros(k, k)
    for i, u in enumerate(comp):
        xi_m[:, i] = coords(star.mul(u, d))[1:k + 1]
    # the e-coefficient of [d, u] is omega_b(b0, u)
    functional = np.array([coords(g.br(d, u))[k + 1] for u in comp], dtype=object)
    b0 = seed.form.dual_vector(functional) if k else zeros(0)
    variant = variant_for(g.form.parity, g.space.parity_of(e))
    pd = VARIANTS[variant][0]
    xi = LinearOperator(seed.space, pd, xi_m)
    names = set(seed.space.names)
    d_name = next(x for x in ("d", "d0", "d_") if x not in names)
    e_name = next(x for x in ("e", "e0", "e_") if x not in names)
    spec = ExtensionSpec(seed, xi, b0, variant, d_name, e_name)
    return Decomposition(spec, [d] + comp + [e])


# -- the generic building blocks -------------------------------------------

def central_extension(table: ProductTable, mu, e_name: str = "e", e_parity: int = EVEN) -> ProductTable:
    """The product (u + a e)(v + b e) = u v + mu(u, v) e on the space with ``e`` appended."""
    s = table.space
    n = s.dim
    mu = as_array(mu).reshape(n, n)
    space = SuperSpace(s.names + (e_name,), s.parities + (e_parity,))
    c = zeros(n + 1, n + 1, n + 1)
    c[:n, :n, :n] = table.constants
    c[:n, :n, n] = mu
    return ProductTable(space, c)


def check_central_extension(table: ProductTable, mu) -> bool:
    """Whether mu(L_u v, w) - mu(u, L_v w) = (-1)^{|u||v|} (mu(L_v u, w) - mu(v, L_u w))."""
    n = table.dim
    mu = as_array(mu).reshape(n, n)
    p = table.space.parities
    c = table.constants
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = c[i, j].dot(mu[:, k]) - mu[i].dot(c[j, k])
                rhs = c[j, i].dot(mu[:, k]) - mu[j].dot(c[i, k])
                if lhs != sign(p[i] * p[j]) * rhs:
                    return False
    return True


def semidirect_product(table: ProductTable, D: LinearOperator, xi: LinearOperator, b0,
                       lam=0, d_name: str = "d") -> ProductTable:
    """d d = lam d + b0, d u = D(u), u d = xi(u), u v = u v on K d + A (d first)."""
    s = table.space
    n = s.dim
    space = SuperSpace((d_name,) + s.names, (D.parity,) + s.parities)
    c = zeros(n + 1, n + 1, n + 1)
    c[1:, 1:, 1:] = table.constants
    c[0, 0, 0] = lam
    c[0, 0, 1:] = as_array(b0)
    for i in range(n):
        c[0, i + 1, 1:] = D.matrix[:, i]
        c[i + 1, 0, 1:] = xi.matrix[:, i]
    return ProductTable(space, c)


def check_semidirect_context(table: ProductTable, D: LinearOperator, xi: LinearOperator,
                             b0, lam=0) -> list[Violation]:
    """Conditions for :func:`semidirect_product` to be left-symmetric, given a
    left-symmetric ``table``."""
    pd = D.parity
    if xi.parity != pd and not xi.is_zero():
        raise StructuralError("D and xi must have the same parity")
    if pd == ODD and lam != 0:
        raise StructuralError("lambda must vanish when d is odd")
    s = table.space
    n = s.dim
    p = s.parities
    b0 = as_array(b0)
    basis = s.basis
    names = s.names
    comm = table.commutator().constants
    out = []
    for i in range(n):
        for j in range(n):
            u, v = basis(i), basis(j)
            if not is_zero(xi(comm[i, j]) - table.mul(u, xi(v))
                           + sign(p[i] * p[j]) * table.mul(v, xi(u))):
                out.append(Violation("xi([u,v]) = L_u xi(v) - (-1)^{|u||v|} L_v xi(u)",
                                     (names[i], names[j])))
            sd = sign(pd * p[i])
            if not is_zero(D(table.mul(u, v)) - table.mul(D(u), v) - sd * table.mul(u, D(v))
                           + sd * table.mul(xi(u), v)):
                out.append(Violation(
                    "D(u v) = D(u) v + (-1)^{|d||u|} u D(v) - (-1)^{|d||u|} xi(u) v",
                    (names[i], names[j])))
    left = xi @ D - D @ xi if n else None
    for i in range(n):
        u = basis(i)
        rhs = sign(pd * p[i]) * (xi(xi(u)) - lam * xi(u) - table.right(b0)(u))
        if not is_zero(left(u) - rhs):
            out.append(Violation("(xi D - D xi)(u) = (-1)^{|d||u|} (xi^2 - lam xi - R_b0)(u)",
                                 (names[i],)))
    if pd == ODD and n:
        if (D @ D) != table.left(b0):
            out.append(Violation("D^2 = L_b0"))
        if not is_zero(xi(b0) - D(b0)):
            out.append(Violation("(xi - D)(b0) = 0"))
    return out
