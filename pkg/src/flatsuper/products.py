"""Bilinear products on a superspace and the products attached to a quasi-Frobenius algebra.

Conventions: ``L_u(v) = u*v`` and ``R_u(v) = (-1)^{|u||v|} v*u``; the parity of
``L_u`` and ``R_u`` is ``|u|``.  The super-commutator of operators is
``[A, B] = AB - (-1)^{|A||B|} BA``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Optional

import numpy as np

from .linalg import (
    BilinearForm,
    LinearOperator,
    StructuralError,
    SuperSpace,
    adjoint,
    as_array,
    echelon_basis,
    frozen,
    inverse,
    is_nondegenerate,
    is_zero,
    orthogonal_complement,
    same_span,
    sign,
    solve_linear,
    span_contains,
    sparse_dot,
    to_fraction,
    zeros,
)

if TYPE_CHECKING:
    from .algebra import LieSuperalgebra


@dataclass(frozen=True)
class Violation:
    """A failed identity: which one, and on which basis elements."""

    clause: str
    where: tuple[str, ...] = ()
    detail: str = ""

    def __str__(self) -> str:
        loc = f" at ({', '.join(self.where)})" if self.where else ""
        return f"{self.clause}{loc}" + (f": {self.detail}" if self.detail else "")


@dataclass(frozen=True, eq=False)
class ProductTable:
    """Structure constants ``constants[i, j, k]`` = coefficient of ``b_k`` in ``b_i * b_j``."""

    space: SuperSpace
    constants: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = as_array(self.constants)
        n = self.space.dim
        if c.shape != (n, n, n):
            raise ValueError(f"product table must have shape {(n, n, n)}, got {c.shape}")
        p = self.space.parities
        for (i, j, k), x in np.ndenumerate(c):
            if x != 0 and p[k] != (p[i] + p[j]) % 2:
                names = self.space.names
                raise StructuralError(
                    f"{names[i]}*{names[j]} has a {names[k]} component, violating the grading")
        object.__setattr__(self, "constants", frozen(c))

    @classmethod
    def zero(cls, space: SuperSpace) -> "ProductTable":
        n = space.dim
        return cls(space, zeros(n, n, n))

    @property
    def dim(self) -> int:
        return self.space.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProductTable):
            return NotImplemented
        return self.space == other.space and bool(np.all(self.constants == other.constants))

    def __hash__(self):
        return hash((self.space, tuple(self.constants.flat)))

    def __add__(self, other: "ProductTable") -> "ProductTable":
        return ProductTable(self.space, self.constants + other.constants)

    def __sub__(self, other: "ProductTable") -> "ProductTable":
        return ProductTable(self.space, self.constants - other.constants)

    def __neg__(self) -> "ProductTable":
        return ProductTable(self.space, -self.constants)

    def __mul__(self, scalar) -> "ProductTable":
        return ProductTable(self.space, self.constants * to_fraction(scalar))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return is_zero(self.constants)

    def mul(self, u, v) -> np.ndarray:
        u = np.asarray(u, dtype=object)
        v = np.asarray(v, dtype=object)
        out = zeros(self.dim)
        for i in np.flatnonzero(u != 0):
            for j in np.flatnonzero(v != 0):
                out = out + u[i] * v[j] * self.constants[i, j]
        return out

    def basis_product(self, i: int, j: int) -> np.ndarray:
        return self.constants[i, j].copy()

    def _parity(self, u) -> int:
        p = self.space.parity_of(u)
        if p is None:
            raise StructuralError("multiplication operators need a homogeneous element")
        return p

    def left(self, u) -> LinearOperator:
        """L_u as an operator; ``u`` is a basis index or a homogeneous vector."""
        u = self.space.basis(u) if isinstance(u, (int, np.integer, str)) else np.asarray(u, dtype=object)
        m = zeros(self.dim, self.dim)
        for i in np.flatnonzero(u != 0):
            m = m + u[i] * self.constants[i].T
        return LinearOperator(self.space, self._parity(u), m)

    def right(self, u) -> LinearOperator:
        """R_u(v) = (-1)^{|u||v|} v * u."""
        u = self.space.basis(u) if isinstance(u, (int, np.integer, str)) else np.asarray(u, dtype=object)
        pu = self._parity(u)
        p = self.space.parities
        m = zeros(self.dim, self.dim)
        for i in np.flatnonzero(u != 0):
            for j in range(self.dim):
                m[:, j] = m[:, j] + sign(pu * p[j]) * u[i] * self.constants[j, i]
        return LinearOperator(self.space, pu, m)

    def commutator(self) -> "ProductTable":
        """[u, v]_* = u*v - (-1)^{|u||v|} v*u."""
        p = self.space.parities
        c = self.constants
        out = zeros(self.dim, self.dim, self.dim)
        for i in range(self.dim):
            for j in range(self.dim):
                out[i, j] = c[i, j] - sign(p[i] * p[j]) * c[j, i]
        return ProductTable(self.space, out)

    def associator(self, i: int, j: int, k: int) -> np.ndarray:
        """(b_i*b_j)*b_k - b_i*(b_j*b_k)."""
        c = self.constants
        return self.mul(c[i, j], self.space.basis(k)) - self.mul(self.space.basis(i), c[j, k])

    def image(self) -> list[np.ndarray]:
        """Spanning set of g*g."""
        return [self.constants[i, j] for i in range(self.dim) for j in range(self.dim)]

    def format_lines(self, symbol: str = "*") -> list[str]:
        names = self.space.names
        lines = []
        for i in range(self.dim):
            for j in range(self.dim):
                lines.append(f"{names[i]} {symbol} {names[j]} = "
                             f"{self.space.format_vector(self.constants[i, j])}")
        return lines


def _require_form(g) -> BilinearForm:
    if g.form is None or not is_nondegenerate(g.form):
        raise StructuralError("a nondegenerate form is required")
    return g.form


def pair_right(c: np.ndarray, om: np.ndarray) -> np.ndarray:
    """w[i, j, l] = omega(c_ij, b_l) for a table of vectors ``c``."""
    n = om.shape[0]
    return sparse_dot(c.reshape(-1, n), om).reshape(c.shape)


def pair_left(c: np.ndarray, om: np.ndarray) -> np.ndarray:
    """w[i, j, l] = omega(b_l, c_ij)."""
    n = om.shape[0]
    return sparse_dot(c.reshape(-1, n), om.T).reshape(c.shape)


def _solve_against_form(omega: BilinearForm, rhs: np.ndarray) -> ProductTable:
    """Build b_i * b_j from omega(b_i * b_j, b_l) = rhs[i, j, l]."""
    n = omega.space.dim
    try:
        inv = inverse(omega.values)
    except StructuralError:
        raise StructuralError("form is degenerate") from None
    # sum_k x_k omega[k, l] = f_l  <=>  x = f omega^{-1}
    out = sparse_dot(rhs.reshape(n * n, n), inv).reshape(n, n, n)
    return ProductTable(omega.space, out)


def levi_civita(g: "LieSuperalgebra", verify: bool = True) -> ProductTable:
    """The product determined by the super Koszul formula.

    2 omega(u.v, w) = omega([u,v],w) - (-1)^{|u||v|+|w||u|} omega([v,w],u)
                      + (-1)^{|v||w|+|u||w|} omega([w,u],v)
    """
    omega = _require_form(g)
    p = g.space.parities
    br = g.bracket.constants
    om = omega.values
    half = Fraction(1, 2)
    w = pair_right(br, om)
    n = g.dim
    rhs = zeros(n, n, n)
    for i in range(n):
        for j in range(n):
            for l in range(n):
                rhs[i, j, l] = half * (w[i, j, l] - sign(p[i] * p[j] + p[l] * p[i]) * w[j, l, i]
                                       + sign(p[j] * p[l] + p[i] * p[l]) * w[l, i, j])
    table = _solve_against_form(omega, rhs)
    if verify:
        bad = check_torsion(g, table) + check_left_compatibility(g, table, antisymmetric=False)
        if bad:
            raise AssertionError(f"Levi-Civita product fails its defining identities: {bad[0]}")
    return table


def natural_symplectic(g: "LieSuperalgebra", verify: bool = True) -> ProductTable:
    """omega(u*v, w) = 1/3 (omega([u,v],w) + (-1)^{|v||w|} omega([u,w],v))."""
    omega = _require_form(g)
    if verify:
        bad = g.closedness_violations()
        if bad:
            raise StructuralError(f"form is not closed: {bad[0]}")
    p = g.space.parities
    br = g.bracket.constants
    om = omega.values
    third = Fraction(1, 3)
    w = pair_right(br, om)
    n = g.dim
    rhs = zeros(n, n, n)
    for i in range(n):
        for j in range(n):
            for l in range(n):
                rhs[i, j, l] = third * (w[i, j, l] + sign(p[j] * p[l]) * w[i, l, j])
    table = _solve_against_form(omega, rhs)
    if verify:
        bad = verify_symplectic(g, table)
        if bad:
            raise AssertionError(f"natural product is not symplectic: {bad[0]}")
    return table


def opposite(table: ProductTable) -> ProductTable:
    """u o v = -(-1)^{|u||v|} v . u."""
    p = table.space.parities
    c = table.constants
    n = table.dim
    out = zeros(n, n, n)
    for i in range(n):
        for j in range(n):
            out[i, j] = -sign(p[i] * p[j]) * c[j, i]
    return ProductTable(table.space, out)


# -- defining identities ---------------------------------------------------

def check_torsion(g: "LieSuperalgebra", table: ProductTable) -> list[Violation]:
    """[u, v]_* = [u, v] on basis pairs."""
    comm = table.commutator().constants
    br = g.bracket.constants
    names = g.space.names
    return [Violation("torsion [u,v]_* = [u,v]", (names[i], names[j]))
            for i in range(g.dim) for j in range(g.dim) if np.any(comm[i, j] != br[i, j])]


def check_left_compatibility(g: "LieSuperalgebra", table: ProductTable,
                             antisymmetric: bool = True) -> list[Violation]:
    """omega(u*v, w) = -s (-1)^{|u||v|} omega(v, u*w), s = +1 (antisymmetric) or -1 (symmetric)."""
    omega = _require_form(g)
    p = g.space.parities
    om = omega.values
    c = table.constants
    names = g.space.names
    eps = -1 if antisymmetric else 1
    label = "(L_u)* = -L_u" if antisymmetric else "(L_u)* = L_u"
    wr, wl = pair_right(c, om), pair_left(c, om)
    out = []
    for i in range(g.dim):
        for j in range(g.dim):
            for l in range(g.dim):
                lhs = wr[i, j, l]
                rhs = eps * sign(p[i] * p[j]) * wl[i, l, j]
                if lhs != rhs:
                    out.append(Violation(label, (names[i], names[j], names[l])))
    return out


def verify_symplectic(g: "LieSuperalgebra", table: ProductTable) -> list[Violation]:
    """Violations of [u,v]_* = [u,v] and (L_u)* = -L_u; empty iff ``table`` is symplectic."""
    if table.space != g.space:
        return [Violation("product lives on a different space")]
    return check_torsion(g, table) + check_left_compatibility(g, table, antisymmetric=True)


def lie_admissible_violations(table: ProductTable) -> list[Violation]:
    """Super Jacobi for the commutator algebra of ``table``."""
    from .algebra import jacobi_violations
    return jacobi_violations(table.commutator())


# -- symmetric perturbations -----------------------------------------------

def _trilinear_array(T, n: int) -> np.ndarray:
    if isinstance(T, dict):
        arr = zeros(n, n, n)
        for (i, j, k), v in T.items():
            arr[i, j, k] = to_fraction(v)
        return arr
    return as_array(T)


def symmetric_trilinear_violations(T, space: SuperSpace, parity: int) -> list[Violation]:
    """Graded symmetry T(u,v,w) = (-1)^{|u||v|}T(v,u,w) = (-1)^{|v||w|}T(u,w,v), plus parity."""
    n = space.dim
    arr = _trilinear_array(T, n)
    p = space.parities
    names = space.names
    out = []
    for (i, j, k), x in np.ndenumerate(arr):
        where = (names[i], names[j], names[k])
        if x != 0 and (p[i] + p[j] + p[k]) % 2 != parity:
            out.append(Violation("trilinear form parity", where))
        if x != sign(p[i] * p[j]) * arr[j, i, k]:
            out.append(Violation("T(u,v,w) = (-1)^{|u||v|} T(v,u,w)", where))
        if x != sign(p[j] * p[k]) * arr[i, k, j]:
            out.append(Violation("T(u,v,w) = (-1)^{|v||w|} T(u,w,v)", where))
    return out


def trilinear_to_product(T, omega: BilinearForm) -> ProductTable:
    """f_T with omega(f_T(u, v), w) = T(u, v, w)."""
    return _solve_against_form(omega, _trilinear_array(T, omega.space.dim))


def perturb_symplectic(g: "LieSuperalgebra", table: ProductTable, T,
                       verify: bool = True) -> ProductTable:
    """``table + f_T`` for a graded-symmetric trilinear form ``T`` of the form's parity."""
    omega = _require_form(g)
    if verify and verify_symplectic(g, table):
        raise StructuralError("base product is not symplectic")
    bad = symmetric_trilinear_violations(T, g.space, omega.parity)
    if bad:
        raise StructuralError(f"T is not graded-symmetric: {bad[0]}")
    out = table + trilinear_to_product(T, omega)
    if verify and verify_symplectic(g, out):
        raise AssertionError("perturbed product is not symplectic")
    return out


# -- curvature and flatness ------------------------------------------------

@dataclass(frozen=True)
class Curvature:
    space: SuperSpace
    values: dict = field(repr=False)

    def __getitem__(self, ij) -> LinearOperator:
        return self.values[ij]

    def is_zero(self) -> bool:
        return all(op.is_zero() for op in self.values.values())

    def nonzero_pairs(self) -> list[tuple[int, int]]:
        return [ij for ij, op in sorted(self.values.items()) if not op.is_zero()]


def curvature(g: "LieSuperalgebra", table: ProductTable) -> Curvature:
    """R(u,v) = L_{[u,v]} - [L_u, L_v] on basis pairs."""
    left = [table.left(i) for i in range(g.dim)]
    vals = {}
    for i in range(g.dim):
        for j in range(g.dim):
            vals[i, j] = table.left(g.bracket.constants[i, j]) - left[i].supercommutator(left[j])
    return Curvature(g.space, vals)


def _associator_violations(table: ProductTable, side: str) -> list[Violation]:
    p = table.space.parities
    names = table.space.names
    n = table.dim
    assoc = {}

    def a(i, j, k):
        if (i, j, k) not in assoc:
            assoc[i, j, k] = table.associator(i, j, k)
        return assoc[i, j, k]

    out = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if side == "left":
                    ok = np.all(a(i, j, k) == sign(p[i] * p[j]) * a(j, i, k))
                else:
                    ok = np.all(a(i, j, k) == sign(p[j] * p[k]) * a(i, k, j))
                if not ok:
                    out.append(Violation(f"{side}-symmetry of the associator",
                                         (names[i], names[j], names[k])))
    return out


def is_left_symmetric(table: ProductTable) -> bool:
    """as(a,b,c) = (-1)^{|a||b|} as(b,a,c) on all basis triples."""
    return not _associator_violations(table, "left")


def is_right_symmetric(table: ProductTable) -> bool:
    """as(a,b,c) = (-1)^{|b||c|} as(a,c,b) on all basis triples."""
    return not _associator_violations(table, "right")


def flat_lr_violations(table: ProductTable) -> list[Violation]:
    """R_{u*v} - (-1)^{|u||v|} R_v R_u = [L_u, R_v] on basis pairs."""
    p = table.space.parities
    names = table.space.names
    n = table.dim
    left = [table.left(i) for i in range(n)]
    right = [table.right(i) for i in range(n)]
    out = []
    for i in range(n):
        for j in range(n):
            lhs = table.right(table.constants[i, j]) - sign(p[i] * p[j]) * (right[j] @ right[i])
            if lhs != left[i].supercommutator(right[j]):
                out.append(Violation("R_{u*v} - (-1)^{|u||v|} R_v R_u = [L_u, R_v]",
                                     (names[i], names[j])))
    return out


def is_flat(g: "LieSuperalgebra", table: Optional[ProductTable] = None) -> bool:
    """Whether the curvature of the natural symplectic product vanishes identically."""
    if table is None:
        table = natural_symplectic(g)
    return curvature(g, table).is_zero()


def lr_identity_violations(g: "LieSuperalgebra", table: Optional[ProductTable] = None) -> list[Violation]:
    """L_u = 1/3 (ad_u - ad_u*) and R_u = -1/3 (2 ad_u + ad_u*) for the natural product."""
    if table is None:
        table = natural_symplectic(g)
    out = []
    for i, name in enumerate(g.space.names):
        ad = g.ad(i)
        ad_star = adjoint(ad, g.form)
        if table.left(i) != Fraction(1, 3) * (ad - ad_star):
            out.append(Violation("L_u = 1/3 (ad_u - ad_u*)", (name,)))
        if table.right(i) != Fraction(-1, 3) * (2 * ad + ad_star):
            out.append(Violation("R_u = -1/3 (2 ad_u + ad_u*)", (name,)))
    return out


def flat_perp_properties(g: "LieSuperalgebra", table: Optional[ProductTable] = None) -> dict[str, bool]:
    """Checks on a basis of [g,g]^perp for a flat algebra.

    ``proportional``: L_u = -2 R_u = 2/3 ad_u;  ``ad_square_zero``: ad_u ad_v = 0;
    ``ideal``: [g, [g,g]^perp] lies in the left normalizer of the natural product.
    """
    from .algebra import normalizers

    if table is None:
        table = natural_symplectic(g)
    perp = orthogonal_complement(g.derived_subalgebra(), g.form)
    two_thirds = Fraction(2, 3)
    proportional = all(
        table.left(u) == -2 * table.right(u) and table.left(u) == two_thirds * g.ad(u)
        for u in perp)
    ad_zero = all((g.ad(u) @ g.ad(v)).is_zero() for u in perp for v in perp)
    n_left = normalizers(g, table)[0]
    brackets = [g.bracket.mul(g.space.basis(i), u) for i in range(g.dim) for u in perp]
    ideal = span_contains(n_left, brackets, g.dim)
    return {"proportional": proportional, "ad_square_zero": ad_zero, "ideal": ideal}


# -- uniqueness systems ----------------------------------------------------

def koszul_system(g: "LieSuperalgebra"):
    """Torsion plus omega-symmetry of every L_u as a linear system in the n^3 constants.

    Returns ``(A, b)`` with unknown ``x[(i*n + j)*n + k]`` = coefficient of b_k in b_i.b_j.
    Unknowns that would break the grading are pinned to zero: with three or more
    odd basis vectors the two identities alone also admit odd products.
    """
    omega = _require_form(g)
    n = g.dim
    p = g.space.parities
    om = omega.values
    br = g.bracket.constants

    def var(i, j, k):
        return (i * n + j) * n + k

    rows, rhs = [], []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row = zeros(n ** 3)
                row[var(i, j, k)] += 1
                row[var(j, i, k)] -= sign(p[i] * p[j])
                rows.append(row)
                rhs.append(br[i, j, k])
    for i in range(n):
        for j in range(n):
            for l in range(n):
                # omega(b_i.b_j, b_l) - (-1)^{|i||j|} omega(b_j, b_i.b_l) = 0
                row = zeros(n ** 3)
                for k in range(n):
                    row[var(i, j, k)] += om[k, l]
                    row[var(i, l, k)] -= sign(p[i] * p[j]) * om[j, k]
                rows.append(row)
                rhs.append(Fraction(0))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if p[k] != (p[i] + p[j]) % 2:
                    row = zeros(n ** 3)
                    row[var(i, j, k)] = Fraction(1)
                    rows.append(row)
                    rhs.append(Fraction(0))
    return np.array(rows, dtype=object), np.array(rhs, dtype=object)


def solve_koszul_system(g: "LieSuperalgebra"):
    """``(table, kernel_dim)`` for the Koszul system, or ``None`` if inconsistent."""
    A, b = koszul_system(g)
    sol = solve_linear(A, b)
    if sol is None:
        return None
    x, kernel = sol
    n = g.dim
    return ProductTable(g.space, x.reshape(n, n, n)), len(kernel)


def _ansatz_terms(g: "LieSuperalgebra") -> list[np.ndarray]:
    """Constants of the three products X, Y, Z with omega(u X v, w) equal to
    omega([u,v],w), (-1)^{|v||w|} omega([u,w],v) and (-1)^{|v||w|} omega([v,w],u)."""
    omega = _require_form(g)
    n = g.dim
    p = g.space.parities
    w = pair_right(g.bracket.constants, omega.values)
    s_vl = np.array([[sign(p[j] * p[l]) for l in range(n)] for j in range(n)],
                    dtype=object).reshape(n, n)
    rhs = (w, w.transpose(0, 2, 1) * s_vl[None], w.transpose(2, 0, 1) * s_vl[None])
    return [_solve_against_form(omega, r).constants for r in rhs]


def natural_ansatz_solutions(g: "LieSuperalgebra"):
    """Solve for (a, b, c) in the ansatz

    omega(u*v, w) = a omega([u,v],w) + b (-1)^{|v||w|} omega([u,w],v) + c (-1)^{|v||w|} omega([v,w],u)

    subject to torsion and omega-antisymmetry of every L_u.  Returns
    ``(particular, kernel)`` over the unknowns (a, b, c), or ``None``.
    """
    omega = _require_form(g)
    n = g.dim
    p = g.space.parities
    br = g.bracket.constants
    om = omega.values
    terms = _ansatz_terms(g)
    rows, rhs = [], []
    # torsion: sum_t coeff_t * (T_t[i,j] - s T_t[j,i]) = [b_i, b_j]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                s = sign(p[i] * p[j])
                rows.append([t[i, j, k] - s * t[j, i, k] for t in terms])
                rhs.append(br[i, j, k])
    # antisymmetry: omega(u*v, w) + (-1)^{|u||v|} omega(v, u*w) = 0
    for i in range(n):
        for j in range(n):
            for l in range(n):
                s = sign(p[i] * p[j])
                rows.append([t[i, j].dot(om[:, l]) + s * om[j].dot(t[i, l]) for t in terms])
                rhs.append(Fraction(0))
    return solve_linear(np.array(rows, dtype=object), np.array(rhs, dtype=object))


def ansatz_relations(g: "LieSuperalgebra") -> list[np.ndarray]:
    """Basis of the (a, b, c) with a X + b Y + c Z = 0 on ``g``.

    For a closed form (1, -1, 1) is always one of them: it is the cyclic sum.
    """
    terms = _ansatz_terms(g)
    M = np.array([list(t.flat) for t in terms], dtype=object).T
    from .linalg import nullspace
    return nullspace(M)


def natural_ansatz_coefficients(g: "LieSuperalgebra") -> np.ndarray:
    """The ansatz solution, unique modulo the relations among X, Y, Z.

    The representative returned is reduced against the relation basis by
    eliminating the trailing coordinates, so c = 0 whenever (1, -1, 1) is a
    relation.  Raises ``StructuralError`` if there is no solution, or if the
    solutions are not unique modulo the relations.
    """
    sol = natural_ansatz_solutions(g)
    if sol is None:
        raise StructuralError("the ansatz has no solution")
    x, kernel = sol
    relations = ansatz_relations(g)
    if not same_span(kernel, relations, 3):
        raise StructuralError("the ansatz solution is not unique modulo the relations")
    x = np.array(x, dtype=object)
    # reduced echelon form of the reversed relations puts each pivot on the
    # last nonzero coordinate, zero in every other pivot column
    for r in echelon_basis([v[::-1] for v in relations], 3):
        r = np.array(r[::-1], dtype=object)
        piv = max(np.flatnonzero(r != 0))
        x = x - (x[piv] / r[piv]) * r
    return x


def subspace_report(g: "LieSuperalgebra") -> dict[str, bool]:
    """Subspace identities relating the center, normalizers and orthogonals."""
    from .algebra import normalizers

    omega = _require_form(g)
    n = g.dim
    z = g.center()
    derived = g.derived_subalgebra()
    dperp = orthogonal_complement(derived, omega)
    lc = levi_civita(g)
    nat = natural_symplectic(g)
    lc_l, lc_r, lc_n = normalizers(g, lc)
    st_l, st_r, st_n = normalizers(g, nat)
    lc_img_perp = orthogonal_complement(lc.image(), omega)
    st_img_perp = orthogonal_complement(nat.image(), omega)
    anti_ad = _antisymmetric_ad_elements(g)
    return {
        "lc: [g,g]^perp = N_l": same_span(dperp, lc_l, n),
        "lc: [g,g]^perp = {u : ad_u* = -ad_u}": same_span(dperp, anti_ad, n),
        "lc: (g.g)^perp in [g,g]^perp": span_contains(dperp, lc_img_perp, n),
        "lc: Z = (g.g)^perp": same_span(z, lc_img_perp, n),
        "lc: Z = N_l & N_r": same_span(z, lc_n, n),
        "nat: [g,g]^perp = {u : (R_u)* = -R_u}": same_span(
            dperp, _antisymmetric_ad_elements(g, nat.right), n),
        "nat: Z = (g*g)^perp": same_span(z, st_img_perp, n),
        "nat: Z = N_r": same_span(z, st_r, n),
        "nat: Z = N_r & N_l": same_span(z, st_n, n),
        "nat: Z = N_l & [g,g]^perp": same_span(z, _intersect(st_l, dperp, n), n),
    }


def _intersect(a, b, n):
    from .linalg import intersect
    return intersect(a, b, n)


def _antisymmetric_ad_elements(g: "LieSuperalgebra", op_of=None) -> list[np.ndarray]:
    """Basis of {u : f_u* = -f_u} for f = ``op_of`` (default ad), computed on
    homogeneous components."""
    from .linalg import nullspace

    op_of = op_of or g.ad

    out = []
    for parity in (0, 1):
        idx = [i for i in range(g.dim) if g.space.parities[i] == parity]
        if not idx:
            continue
        cols = []
        for i in idx:
            ad = op_of(i)
            cols.append(list((adjoint(ad, g.form) + ad).matrix.flat))
        M = np.array(cols, dtype=object).T
        for coeffs in nullspace(M):
            v = zeros(g.dim)
            for c, i in zip(coeffs, idx):
                v[i] = c
            out.append(v)
    return out
