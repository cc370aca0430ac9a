"""Exact linear algebra over the rationals for graded (super) vector spaces.

Scalars are :class:`fractions.Fraction`; matrices and vectors are numpy arrays
of ``dtype=object`` holding Fractions, so ``@`` and slicing work while every
operation stays exact.  Parities are the integers 0 (even) and 1 (odd).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

EVEN = 0
ODD = 1
_PARITY_NAMES = {"even": EVEN, "odd": ODD, "0": EVEN, "1": ODD}


class StructuralError(ValueError):
    """Raised when data violates a structural requirement (grading, symmetry, ...)."""


def parse_parity(token) -> int:
    if isinstance(token, (int, np.integer)) and int(token) in (0, 1):
        return int(token)
    try:
        return _PARITY_NAMES[str(token).strip().lower()]
    except KeyError:
        raise ValueError(f"not a parity: {token!r}") from None


def parity_name(p: int) -> str:
    return "odd" if p % 2 else "even"


def sign(exponent: int) -> int:
    """(-1)**exponent."""
    return -1 if exponent % 2 else 1


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError(f"refusing to convert float {x!r} to an exact scalar")
    return Fraction(x)


# -- array helpers ---------------------------------------------------------

def zeros(*shape: int) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def as_array(data) -> np.ndarray:
    """Exact copy of nested sequences (or an array) as an object array of Fractions."""
    arr = np.array(data, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = to_fraction(x)
    return out


def frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def is_zero(arr) -> bool:
    return all(x == 0 for x in np.asarray(arr, dtype=object).flat)


def sparse_dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``a @ b`` for object arrays, skipping zero entries of ``a`` and rows of ``b``."""
    b_rows = [k for k in range(b.shape[0]) if np.any(b[k] != 0)]
    out = zeros(a.shape[0], *b.shape[1:])
    for i in range(a.shape[0]):
        row = a[i]
        acc = None
        for k in b_rows:
            x = row[k]
            if x != 0:
                acc = x * b[k] if acc is None else acc + x * b[k]
        if acc is not None:
            out[i] = acc
    return out


def format_scalar(x: Fraction) -> str:
    x = to_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- elimination -----------------------------------------------------------

def _rref_rows(A: np.ndarray, b: Optional[np.ndarray] = None):
    """Sparse Gauss-Jordan elimination.

    Returns ``(pivots, consistent)`` where ``pivots`` maps a pivot column to a
    ``(row, rhs)`` pair; ``row`` is a dict ``col -> coeff`` with coefficient 1 at
    the pivot and no entries in other pivot columns.
    """
    m, n = A.shape
    pivots: dict[int, tuple[dict, Fraction]] = {}
    consistent = True
    for r in range(m):
        row = {c: to_fraction(A[r, c]) for c in range(n) if A[r, c] != 0}
        rhs = to_fraction(b[r]) if b is not None else Fraction(0)
        for c in [c for c in row if c in pivots]:
            coeff = row.get(c, 0)
            if coeff == 0:
                continue
            prow, prhs = pivots[c]
            for cc, v in prow.items():
                nv = row.get(cc, 0) - coeff * v
                if nv == 0:
                    row.pop(cc, None)
                else:
                    row[cc] = nv
            rhs -= coeff * prhs
        if not row:
            if rhs != 0:
                consistent = False
            continue
        pc = min(row)
        inv = 1 / row[pc]
        row = {c: v * inv for c, v in row.items()}
        rhs *= inv
        for oc, (orow, orhs) in list(pivots.items()):
            coeff = orow.get(pc, 0)
            if coeff == 0:
                continue
            for cc, v in row.items():
                nv = orow.get(cc, 0) - coeff * v
                if nv == 0:
                    orow.pop(cc, None)
                else:
                    orow[cc] = nv
            pivots[oc] = (orow, orhs - coeff * rhs)
        pivots[pc] = (row, rhs)
    return pivots, consistent


def solve_linear(A, b, verify: bool = False):
    """Solve ``A x = b`` exactly.

    Returns ``(x, kernel)`` with ``x`` a particular solution (free variables
    set to zero) and ``kernel`` a list of basis vectors of the null space, or
    ``None`` when the system is inconsistent.
    """
    A = np.asarray(A, dtype=object)
    if A.ndim != 2:
        raise ValueError("coefficient matrix must be two-dimensional")
    b = np.asarray(b, dtype=object).reshape(-1)
    m, n = A.shape
    if b.shape[0] != m:
        raise ValueError(f"dimension mismatch: A is {m}x{n}, b has length {b.shape[0]}")
    pivots, consistent = _rref_rows(A, b)
    if not consistent:
        return None
    x = zeros(n)
    for c, (_, rhs) in pivots.items():
        x[c] = rhs
    kernel = []
    for f in range(n):
        if f in pivots:
            continue
        v = zeros(n)
        v[f] = Fraction(1)
        for c, (row, _) in pivots.items():
            if f in row:
                v[c] = -row[f]
        kernel.append(v)
    if verify:
        assert all(r == s for r, s in zip(A.dot(x), b)), "particular solution fails A x = b"
        for v in kernel:
            assert is_zero(A.dot(v)), "kernel vector fails A v = 0"
    return x, kernel


def nullspace(A) -> list[np.ndarray]:
    A = np.asarray(A, dtype=object)
    return solve_linear(A, zeros(A.shape[0]))[1]


def rank(A) -> int:
    A = np.asarray(A, dtype=object)
    if A.size == 0:
        return 0
    return len(_rref_rows(A)[0])


def inverse(A) -> np.ndarray:
    A = np.asarray(A, dtype=object)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    out = zeros(n, n)
    for j in range(n):
        sol = solve_linear(A, identity(n)[:, j])
        if sol is None or sol[1]:
            raise StructuralError("matrix is singular")
        out[:, j] = sol[0]
    return out


# -- subspaces (given by spanning lists of vectors) ------------------------

def echelon_basis(vectors: Iterable, dim: int) -> list[np.ndarray]:
    """A reduced echelon basis of the span of ``vectors`` (deterministic)."""
    vecs = list(vectors)
    if not vecs:
        return []
    pivots, _ = _rref_rows(np.array([list(v) for v in vecs], dtype=object))
    out = []
    for c in sorted(pivots):
        v = zeros(dim)
        for cc, val in pivots[c][0].items():
            v[cc] = val
        out.append(v)
    return out


def span_dim(vectors: Sequence, dim: int) -> int:
    return len(echelon_basis(vectors, dim))


def span_contains(big: Sequence, small: Sequence, dim: int) -> bool:
    return span_dim(list(big) + list(small), dim) == span_dim(big, dim)


def same_span(a: Sequence, b: Sequence, dim: int) -> bool:
    return span_contains(a, b, dim) and span_contains(b, a, dim)


def intersect(a: Sequence, b: Sequence, dim: int) -> list[np.ndarray]:
    a, b = list(a), list(b)
    if not a or not b:
        return []
    M = np.array([list(v) for v in a] + [list(-w) for w in b], dtype=object).T
    out = []
    for coeffs in nullspace(M):
        v = zeros(dim)
        for c, vec in zip(coeffs[: len(a)], a):
            v = v + c * vec
        out.append(v)
    return echelon_basis(out, dim)


# -- graded spaces ---------------------------------------------------------

@dataclass(frozen=True)
class SuperSpace:
    """An ordered homogeneous basis with parities."""

    names: tuple[str, ...]
    parities: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "parities", tuple(parse_parity(p) for p in self.parities))
        if len(self.names) != len(self.parities):
            raise ValueError("names and parities differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("basis names must be unique")

    @classmethod
    def from_spec(cls, even: Sequence[str] = (), odd: Sequence[str] = ()) -> "SuperSpace":
        return cls(tuple(even) + tuple(odd), (EVEN,) * len(even) + (ODD,) * len(odd))

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def dim_even(self) -> int:
        return self.parities.count(EVEN)

    @property
    def dim_odd(self) -> int:
        return self.parities.count(ODD)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown basis element {name!r}") from None

    def basis(self, i) -> np.ndarray:
        if isinstance(i, str):
            i = self.index(i)
        v = zeros(self.dim)
        v[i] = Fraction(1)
        return v

    def vector(self, coords) -> np.ndarray:
        """Coordinates as a sequence, or a mapping from basis names to coefficients."""
        if isinstance(coords, dict):
            v = zeros(self.dim)
            for name, x in coords.items():
                v[self.index(name)] += to_fraction(x)
            return v
        v = as_array(coords).reshape(-1)
        if v.shape[0] != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {v.shape[0]}")
        return v

    def parity_of(self, v) -> Optional[int]:
        """Parity of a homogeneous vector; ``None`` if inhomogeneous (0 counts as even)."""
        present = {self.parities[i] for i, x in enumerate(v) if x != 0}
        if len(present) > 1:
            return None
        return present.pop() if present else EVEN

    def is_homogeneous(self, v, parity: Optional[int] = None) -> bool:
        p = self.parity_of(v)
        if p is None:
            return False
        return parity is None or p == parity or is_zero(v)

    def part(self, v, parity: int) -> np.ndarray:
        out = zeros(self.dim)
        for i, x in enumerate(v):
            if self.parities[i] == parity:
                out[i] = x
        return out

    def graded_basis(self, vectors: Iterable) -> list[np.ndarray]:
        """Homogeneous basis of the span of ``vectors``, assuming that span is graded."""
        vecs = list(vectors)
        parts = [self.part(v, p) for p in (EVEN, ODD) for v in vecs]
        basis = echelon_basis(parts, self.dim)
        if not same_span(basis, vecs, self.dim):
            raise StructuralError("subspace is not spanned by homogeneous vectors")
        return basis

    def format_vector(self, v) -> str:
        terms = []
        for name, x in zip(self.names, v):
            if x == 0:
                continue
            terms.append(name if x == 1 else f"-{name}" if x == -1 else f"{format_scalar(x)}*{name}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")


# -- operators and forms ---------------------------------------------------

def _op_parity_violations(space: SuperSpace, matrix, parity: int):
    p = space.parities
    return [(i, j) for i in range(space.dim) for j in range(space.dim)
            if matrix[i, j] != 0 and p[i] != (p[j] + parity) % 2]


@dataclass(frozen=True, eq=False)
class LinearOperator:
    """A homogeneous endomorphism; column ``j`` of ``matrix`` is the image of basis vector ``j``."""

    space: SuperSpace
    parity: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = as_array(self.matrix)
        n = self.space.dim
        if m.shape != (n, n):
            raise ValueError(f"operator matrix must be {n}x{n}, got {m.shape}")
        if _op_parity_violations(self.space, m, self.parity):
            raise StructuralError(f"matrix is not a homogeneous operator of parity {self.parity}")
        object.__setattr__(self, "parity", parse_parity(self.parity))
        object.__setattr__(self, "matrix", frozen(m))

    @classmethod
    def zero(cls, space: SuperSpace, parity: int = EVEN) -> "LinearOperator":
        return cls(space, parity, zeros(space.dim, space.dim))

    @classmethod
    def identity(cls, space: SuperSpace) -> "LinearOperator":
        return cls(space, EVEN, identity(space.dim))

    def __call__(self, v) -> np.ndarray:
        return sparse_dot(self.matrix, np.asarray(v, dtype=object))

    def _same(self, other: "LinearOperator") -> int:
        if other.space != self.space:
            raise ValueError("operators live on different spaces")
        if other.parity != self.parity:
            if other.is_zero():
                return self.parity
            if self.is_zero():
                return other.parity
            raise StructuralError("adding operators of different parity")
        return self.parity

    def __add__(self, other: "LinearOperator") -> "LinearOperator":
        p = self._same(other)
        return LinearOperator(self.space, p, self.matrix + other.matrix)

    def __sub__(self, other: "LinearOperator") -> "LinearOperator":
        p = self._same(other)
        return LinearOperator(self.space, p, self.matrix - other.matrix)

    def __neg__(self) -> "LinearOperator":
        return LinearOperator(self.space, self.parity, -self.matrix)

    def __mul__(self, scalar) -> "LinearOperator":
        return LinearOperator(self.space, self.parity, self.matrix * to_fraction(scalar))

    __rmul__ = __mul__

    def __matmul__(self, other: "LinearOperator") -> "LinearOperator":
        if other.space != self.space:
            raise ValueError("operators live on different spaces")
        return LinearOperator(self.space, (self.parity + other.parity) % 2,
                              sparse_dot(self.matrix, other.matrix))

    def __pow__(self, k: int) -> "LinearOperator":
        out = LinearOperator.identity(self.space)
        for _ in range(k):
            out = out @ self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearOperator):
            return NotImplemented
        return self.space == other.space and bool(np.all(self.matrix == other.matrix))

    def __hash__(self):
        return hash((self.space, tuple(self.matrix.flat)))

    def is_zero(self) -> bool:
        return is_zero(self.matrix)

    def trace(self) -> Fraction:
        return sum((self.matrix[i, i] for i in range(self.space.dim)), Fraction(0))

    def is_nilpotent(self) -> bool:
        return (self ** self.space.dim).is_zero()

    def supercommutator(self, other: "LinearOperator") -> "LinearOperator":
        """[A, B] = A B - (-1)^{|A||B|} B A."""
        return (self @ other) - sign(self.parity * other.parity) * (other @ self)


@dataclass(frozen=True, eq=False)
class BilinearForm:
    """A homogeneous super anti-symmetric form; ``values[i, j] = omega(b_i, b_j)``."""

    space: SuperSpace
    parity: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = as_array(self.values)
        n = self.space.dim
        if m.shape != (n, n):
            raise ValueError(f"form matrix must be {n}x{n}, got {m.shape}")
        object.__setattr__(self, "parity", parse_parity(self.parity))
        object.__setattr__(self, "values", frozen(m))
        p = self.space.parities
        for i in range(n):
            for j in range(n):
                if m[i, j] != 0 and (p[i] + p[j]) % 2 != self.parity:
                    raise StructuralError(
                        f"omega({self.space.names[i]},{self.space.names[j]}) != 0 violates "
                        f"the {parity_name(self.parity)} grading")
                if m[i, j] != -sign(p[i] * p[j]) * m[j, i]:
                    raise StructuralError(
                        f"omega is not super anti-symmetric on "
                        f"({self.space.names[i]},{self.space.names[j]})")

    def __call__(self, u, v) -> Fraction:
        return np.asarray(u, dtype=object).dot(self.values).dot(np.asarray(v, dtype=object))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BilinearForm):
            return NotImplemented
        return (self.space == other.space and self.parity == other.parity
                and bool(np.all(self.values == other.values)))

    def __hash__(self):
        return hash((self.space, self.parity, tuple(self.values.flat)))

    @property
    def kind(self) -> str:
        return "periplectic" if self.parity else "orthosymplectic"

    def dual_vector(self, functional) -> np.ndarray:
        """The unique ``x`` with ``omega(x, b_l) = functional[l]`` for every basis vector."""
        sol = solve_linear(self.values.T, functional)
        if sol is None or sol[1]:
            raise StructuralError("form is degenerate")
        return sol[0]


def is_nondegenerate(omega: BilinearForm) -> bool:
    """Whether ``omega`` is invertible.

    An odd nondegenerate form forces equal even and odd dimensions; a violation
    of that is reported as a :class:`StructuralError`.
    """
    ok = rank(omega.values) == omega.space.dim
    if ok and omega.parity == ODD and omega.space.dim_even != omega.space.dim_odd:
        raise StructuralError("odd nondegenerate form on a space with dim_even != dim_odd")
    return ok


def adjoint(f: LinearOperator, omega: BilinearForm) -> LinearOperator:
    """The map f* with omega(f(v), w) = (-1)^{|f||v|} omega(v, f*(w))."""
    if f.space != omega.space:
        raise ValueError("operator and form live on different spaces")
    if not is_nondegenerate(omega):
        raise StructuralError("adjoint requires a nondegenerate form")
    n = f.space.dim
    p = f.space.parities
    # omega(b_j, f*(b_l)) = (-1)^{|f| p_j} omega(f(b_j), b_l)   for all j
    lhs = omega.values
    rhs_all = np.array([[sign(f.parity * p[j]) for _ in range(n)] for j in range(n)],
                       dtype=object) * f.matrix.T.dot(omega.values)
    out = zeros(n, n)
    for l in range(n):
        sol = solve_linear(lhs, rhs_all[:, l])
        out[:, l] = sol[0]
    return LinearOperator(f.space, f.parity, out)


def orthogonal_complement(U: Sequence, omega: BilinearForm) -> list[np.ndarray]:
    """Basis of {v : omega(u, v) = 0 for all u in span(U)}."""
    n = omega.space.dim
    rows = []
    for u in U:
        u = np.asarray(u, dtype=object)
        if u.shape != (n,):
            raise ValueError("vector does not belong to the form's space")
        rows.append(list(u.dot(omega.values)))
    if not rows:
        return [omega.space.basis(i) for i in range(n)]
    kernel = nullspace(np.array(rows, dtype=object))
    try:
        return omega.space.graded_basis(kernel)
    except StructuralError:
        return echelon_basis(kernel, n)


def wedge_form(terms, space: SuperSpace, parity) -> BilinearForm:
    """Sum of ``c * x^* ^ y^*`` terms, each given as ``(x, y, c)`` (names or indices).

    Each wedge expands as x*(x)y* - (-1)^{|x||y|} y*(x)x*, evaluated with the
    pairing <x*(x)y*, u(x)v> = (-1)^{|y||u|} x*(u) y*(v).  For two odd
    vectors this gives x^*^y^*(x, y) = -1, and f^*^f^*(f, f) = -2.
    """
    parity = parse_parity(parity)
    n = space.dim
    p = space.parities
    vals = zeros(n, n)
    for x, y, c in terms:
        i = space.index(x) if isinstance(x, str) else int(x)
        j = space.index(y) if isinstance(y, str) else int(y)
        c = to_fraction(c)
        if (p[i] + p[j]) % 2 != parity:
            raise StructuralError(f"wedge of {space.names[i]}, {space.names[j]} is not of parity {parity}")
        # x*(x)y* contributes at (u, v) = (x, y) with sign (-1)^{|y||x|}
        vals[i, j] += c * sign(p[j] * p[i])
        # -(-1)^{|x||y|} y*(x)x* contributes at (u, v) = (y, x) with sign (-1)^{|x||y|}
        vals[j, i] += -c * sign(p[i] * p[j]) * sign(p[i] * p[j])
    return BilinearForm(space, parity, vals)
