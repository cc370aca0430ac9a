"""Lie superalgebras with an optional bilinear form, axiom checks and structure."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .linalg import (
    BilinearForm,
    LinearOperator,
    StructuralError,
    SuperSpace,
    echelon_basis,
    intersect,
    is_nondegenerate,
    is_zero,
    nullspace,
    orthogonal_complement,
    sign,
    sparse_dot,
    to_fraction,
    zeros,
)
from .products import ProductTable, Violation


def jacobi_violations(bracket: ProductTable) -> list[Violation]:
    """Graded anti-symmetry and super Jacobi for a bracket table.

    Jacobi is checked in the cyclic form
    (-1)^{|u||w|}[[u,v],w] + (-1)^{|v||u|}[[v,w],u] + (-1)^{|w||v|}[[w,u],v] = 0
    on basis triples i <= j <= k.
    """
    space = bracket.space
    p = space.parities
    names = space.names
    c = bracket.constants
    n = space.dim
    out = []
    for i in range(n):
        for j in range(i, n):
            if np.any(c[i, j] != -sign(p[i] * p[j]) * c[j, i]):
                out.append(Violation("graded anti-symmetry", (names[i], names[j])))
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                if not is_zero(jacobiator(bracket, i, j, k)):
                    out.append(Violation("super Jacobi identity", (names[i], names[j], names[k])))
    return out


def jacobiator(bracket: ProductTable, i: int, j: int, k: int) -> np.ndarray:
    p = bracket.space.parities
    c = bracket.constants
    cyc = lambda a, b, d: bracket.mul(c[a, b], bracket.space.basis(d))
    return (sign(p[i] * p[k]) * cyc(i, j, k) + sign(p[j] * p[i]) * cyc(j, k, i)
            + sign(p[k] * p[j]) * cyc(k, i, j))


@dataclass(frozen=True, eq=False)
class LieSuperalgebra:
    space: SuperSpace
    bracket: ProductTable
    form: Optional[BilinearForm] = None
    name: str = ""

    def __post_init__(self):
        if self.bracket.space != self.space:
            raise ValueError("bracket lives on a different space")
        if self.form is not None and self.form.space != self.space:
            raise ValueError("form lives on a different space")

    @classmethod
    def from_brackets(cls, space: SuperSpace, brackets: dict, form: Optional[BilinearForm] = None,
                      name: str = "") -> "LieSuperalgebra":
        """Build from ``{(x, y): {z: coeff}}`` given for one ordering of each pair.

        The reversed pair is filled by graded anti-symmetry; supplying both orderings
        with inconsistent values raises ``StructuralError``.
        """
        n = space.dim
        p = space.parities
        c = zeros(n, n, n)
        seen = {}
        for (x, y), rhs in brackets.items():
            i, j = (space.index(x) if isinstance(x, str) else x), (space.index(y) if isinstance(y, str) else y)
            vec = zeros(n)
            items = rhs.items() if isinstance(rhs, dict) else enumerate(rhs)
            for z, coeff in items:
                vec[space.index(z) if isinstance(z, str) else z] += to_fraction(coeff)
            for a, b, v in ((i, j, vec), (j, i, -sign(p[i] * p[j]) * vec)):
                if (a, b) in seen and np.any(seen[a, b] != v):
                    raise StructuralError(
                        f"inconsistent brackets [{space.names[a]},{space.names[b]}]")
                seen[a, b] = v
        for (a, b), v in seen.items():
            c[a, b] = v
        return cls(space, ProductTable(space, c), form, name)

    @property
    def dim(self) -> int:
        return self.space.dim

    def with_form(self, form: Optional[BilinearForm]) -> "LieSuperalgebra":
        return LieSuperalgebra(self.space, self.bracket, form, self.name)

    def br(self, u, v) -> np.ndarray:
        return self.bracket.mul(u, v)

    def ad(self, u) -> LinearOperator:
        return self.bracket.left(u)

    def closedness_violations(self) -> list[Violation]:
        """Triples where the cyclic closedness sum of the form is nonzero."""
        if self.form is None:
            return []
        p = self.space.parities
        om = self.form.values
        c = self.bracket.constants
        names = self.space.names
        n = self.dim
        # w[i, j, k] = omega([b_i, b_j], b_k)
        w = sparse_dot(c.reshape(n * n, n), om).reshape(n, n, n)
        out = []
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    total = (sign(p[i] * p[k]) * w[i, j, k] + sign(p[j] * p[i]) * w[j, k, i]
                             + sign(p[k] * p[j]) * w[k, i, j])
                    if total != 0:
                        out.append(Violation("closedness of the form", (names[i], names[j], names[k])))
        return out

    def center(self) -> list[np.ndarray]:
        return center(self)

    def derived_subalgebra(self) -> list[np.ndarray]:
        return derived_subalgebra(self)


def validate(g: LieSuperalgebra) -> list[Violation]:
    """All axiom violations; empty iff ``g`` is a Lie superalgebra (with a closed
    nondegenerate form when one is present)."""
    out = jacobi_violations(g.bracket)
    if g.form is None:
        return out
    if g.form.kind == "periplectic" and g.space.dim_even != g.space.dim_odd:
        out.append(Violation("periplectic form needs dim g_0 = dim g_1",
                             detail=f"{g.space.dim_even} != {g.space.dim_odd}"))
    elif not _nondegenerate(g.form):
        out.append(Violation("nondegeneracy of the form"))
    return out + g.closedness_violations()


def _nondegenerate(form: BilinearForm) -> bool:
    try:
        return is_nondegenerate(form)
    except StructuralError:
        return False


def is_quasi_frobenius(g: LieSuperalgebra) -> bool:
    return g.form is not None and not validate(g)


def _kernel_of_stack(n: int, blocks) -> list[np.ndarray]:
    """Vectors u with sum_i u_i M_i = 0 for every block, where ``blocks`` maps i to a
    flattened image of the i-th basis vector."""
    M = np.array([list(b) for b in blocks], dtype=object).T
    if M.size == 0:
        return []
    return nullspace(M)


def center(g: LieSuperalgebra) -> list[np.ndarray]:
    """Basis of {u : [u, v] = 0 for all v}."""
    c = g.bracket.constants
    basis = _kernel_of_stack(g.dim, (c[i].flat for i in range(g.dim)))
    return g.space.graded_basis(basis)


def derived_subalgebra(g: LieSuperalgebra) -> list[np.ndarray]:
    return g.space.graded_basis(echelon_basis(g.bracket.image(), g.dim))


def bracket_span(g: LieSuperalgebra, a, b) -> list[np.ndarray]:
    """Basis of [A, B] for spanning sets ``a`` and ``b``."""
    return echelon_basis([g.br(u, v) for u in a for v in b], g.dim)


@dataclass(frozen=True)
class StructuralReport:
    center_basis: list = field(repr=False)
    derived_basis: list = field(repr=False)
    lcs_dims: list
    ds_dims: list
    is_nilpotent: bool
    is_solvable: bool
    center_degenerate: Optional[bool]
    derived_degenerate: Optional[bool]


def _descending(g: LieSuperalgebra, step) -> list[int]:
    current = [g.space.basis(i) for i in range(g.dim)]
    dims = [g.dim]
    while True:
        nxt = step(current)
        dims.append(len(nxt))
        if len(nxt) == 0 or len(nxt) == len(current):
            return dims
        current = nxt


def lower_central_series(g: LieSuperalgebra) -> list[int]:
    whole = [g.space.basis(i) for i in range(g.dim)]
    return _descending(g, lambda cur: bracket_span(g, whole, cur))


def derived_series(g: LieSuperalgebra) -> list[int]:
    return _descending(g, lambda cur: bracket_span(g, cur, cur))


def is_degenerate_subspace(basis, form: BilinearForm) -> bool:
    """Whether S meets its orthogonal: S cap S^perp != {0}."""
    if not basis:
        return False
    return len(intersect(basis, orthogonal_complement(basis, form), form.space.dim)) > 0


def series(g: LieSuperalgebra) -> StructuralReport:
    z = center(g)
    d = derived_subalgebra(g)
    lcs = lower_central_series(g)
    ds = derived_series(g)
    if g.form is not None:
        zdeg, ddeg = is_degenerate_subspace(z, g.form), is_degenerate_subspace(d, g.form)
    else:
        zdeg = ddeg = None
    return StructuralReport(z, d, lcs, ds, lcs[-1] == 0, ds[-1] == 0, zdeg, ddeg)


def normalizers(g: LieSuperalgebra, table: ProductTable):
    """``(N_l, N_r, N)``: kernels of u -> L_u, u -> R_u, and their intersection."""
    if table.space != g.space:
        raise ValueError("product lives on a different space")
    n = g.dim
    left = [list(table.left(i).matrix.flat) for i in range(n)]
    right = [list(table.right(i).matrix.flat) for i in range(n)]
    n_left = g.space.graded_basis(_kernel_of_stack(n, left))
    n_right = g.space.graded_basis(_kernel_of_stack(n, right))
    both = g.space.graded_basis(_kernel_of_stack(
        n, (a + b for a, b in zip(left, right))))
    return n_left, n_right, both
