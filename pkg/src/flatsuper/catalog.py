"""Built-in algebras, explicit morphisms, and the low-dimensional classification check.

The classification check builds each family of admissible pairs on the abelian
seeds of dimension 2 and 3, forms the double extension, and maps a normal form
onto it by an explicit change of basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Callable, Optional, Union

import numpy as np

from .algebra import LieSuperalgebra, series, validate
from .extensions import ExtensionSpec, VARIANTS, check_admissible, construct
from .fileformat import parse_algebra
from .linalg import (
    BilinearForm,
    LinearOperator,
    StructuralError,
    SuperSpace,
    format_scalar,
    rank,
    zeros,
)
from .products import ProductTable, Violation, is_flat, natural_symplectic

GRID = (-2, -1, 0, 1, 2)
NONZERO = (-2, -1, 1, 2)


# -- entries -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CatalogEntry:
    """A named algebra with the properties it is expected to have.

    ``expected`` maps ``flat``, ``nilpotent``, ``non_abelian`` and ``form_parity``
    to a value, or to ``None`` when the property is only recorded.
    """

    name: str
    algebra: LieSuperalgebra = field(repr=False)
    expected: dict
    provenance: str
    computed: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.algebra.dim


def compute_flags(g: LieSuperalgebra) -> dict:
    return {
        "flat": is_flat(g),
        "nilpotent": series(g).is_nilpotent,
        "non_abelian": not g.bracket.is_zero(),
        "form_parity": g.form.parity,
    }


_FLAT_NILPOTENT = {"flat": True, "nilpotent": True, "non_abelian": True}
_ABELIAN = {"flat": True, "nilpotent": True, "non_abelian": False}

# name: (expected flags without form parity, form parity, provenance)
_ENTRIES = {
    "d5": ({"flat": None, "nilpotent": None, "non_abelian": True}, 1,
           "worked example: periplectic structure with a symplectic product"),
    "c3a": ({"flat": None, "nilpotent": None, "non_abelian": True}, 0,
            "worked example: orthosymplectic structure with a symplectic product"),
    "kh3": (_FLAT_NILPOTENT, 0, "dimension 4 normal form: line plus Heisenberg"),
    "g2": (_FLAT_NILPOTENT, 0, "dimension 4 normal form, orthosymplectic with odd part"),
    "g3": (_FLAT_NILPOTENT, 1, "dimension 4 normal form, periplectic"),
    "g4": (_FLAT_NILPOTENT, 1, "dimension 4 normal form, periplectic with odd squares"),
    "g1_dim5": (_FLAT_NILPOTENT, 0, "dimension 5 normal form: kh3 plus an odd line"),
    "g2_dim5": (_FLAT_NILPOTENT, 0, "dimension 5 normal form: g2 plus an odd line"),
    "abelian1": (_ABELIAN, 0, "abelian reference, one odd vector"),
    "abelian2": (_ABELIAN, 0, "abelian reference, two even vectors"),
    "abelian2_odd": (_ABELIAN, 0, "abelian reference, two odd vectors"),
    "abelian2_peri": (_ABELIAN, 1, "abelian reference, periplectic"),
    "abelian3": (_ABELIAN, 0, "abelian reference, two even vectors and one odd"),
}


def _read_data(name: str) -> str:
    return resources.files("flatsuper").joinpath("data", f"{name}.alg").read_text()


def data_names() -> list[str]:
    return list(_ENTRIES)


def load_entry(name: str) -> CatalogEntry:
    if name not in _ENTRIES:
        raise KeyError(f"no catalog entry {name!r}")
    flags, parity, provenance = _ENTRIES[name]
    g = parse_algebra(_read_data(name), f"{name}.alg")
    bad = validate(g)
    if bad:
        raise AssertionError(f"catalog entry {name}: {bad[0]}")
    expected = dict(flags, form_parity=parity)
    computed = compute_flags(g)
    for flag, value in expected.items():
        if value is not None and computed[flag] != value:
            raise AssertionError(f"catalog entry {name}: expected {flag}={value}, "
                                 f"computed {computed[flag]}")
    return CatalogEntry(name, g, expected, provenance, computed)


@lru_cache(maxsize=None)
def _load_all() -> tuple:
    return tuple(load_entry(name) for name in _ENTRIES)


def load_catalog() -> list[CatalogEntry]:
    """Every built-in entry, each validated and checked against its expected flags."""
    return list(_load_all())


def entry(name: str) -> CatalogEntry:
    for e in _load_all():
        if e.name == name:
            return e
    raise KeyError(f"no catalog entry {name!r}")


# -- morphisms ---------------------------------------------------------------

AlgebraLike = Union[CatalogEntry, LieSuperalgebra]


def _algebra(x: AlgebraLike) -> LieSuperalgebra:
    return x.algebra if isinstance(x, CatalogEntry) else x


@dataclass(frozen=True, eq=False)
class MorphismClaim:
    """A linear map from ``source`` to ``target``; column i of ``map`` is the
    image of the i-th source basis vector in target coordinates."""

    source: AlgebraLike
    target: AlgebraLike
    map: np.ndarray = field(repr=False)
    kind: str = "symplectomorphism"

    def __post_init__(self):
        if self.kind not in ("iso_only", "symplectomorphism"):
            raise ValueError(f"unknown morphism kind {self.kind!r}")
        object.__setattr__(self, "map", np.array(self.map, dtype=object))


def _check_map(src: LieSuperalgebra, dst: LieSuperalgebra, M: np.ndarray) -> None:
    if M.shape != (dst.dim, src.dim):
        raise StructuralError(f"map must be {dst.dim}x{src.dim}, got {M.shape}")
    for i in range(src.dim):
        col = M[:, i]
        if not dst.space.is_homogeneous(col, src.space.parities[i]) and np.any(col != 0):
            raise StructuralError(f"the image of {src.space.names[i]} has the wrong parity")
    if src.dim != dst.dim or rank(M) != src.dim:
        raise StructuralError("map is singular")


def verify_morphism(claim: MorphismClaim) -> list[Violation]:
    """Basis pairs where brackets (and, for symplectomorphisms, forms) are not preserved."""
    src, dst = _algebra(claim.source), _algebra(claim.target)
    M = claim.map
    _check_map(src, dst, M)
    names = src.space.names
    out = []
    c = src.bracket.constants
    for i in range(src.dim):
        for j in range(src.dim):
            if np.any(M.dot(c[i, j]) != dst.br(M[:, i], M[:, j])):
                out.append(Violation("bracket preservation", (names[i], names[j])))
    if claim.kind == "symplectomorphism":
        if src.form is None or dst.form is None:
            raise StructuralError("symplectomorphisms need forms on both sides")
        for i in range(src.dim):
            for j in range(src.dim):
                if dst.form(M[:, i], M[:, j]) != src.form.values[i, j]:
                    out.append(Violation("form preservation", (names[i], names[j])))
    return out


def images_matrix(target: LieSuperalgebra, images: list[dict]) -> np.ndarray:
    """Matrix whose columns are the given ``{name: coeff}`` combinations."""
    cols = [target.space.vector({k: Fraction(v) for k, v in im.items()}) for im in images]
    return np.array(cols, dtype=object).T


# -- classification ----------------------------------------------------------

def _odd_squares_seed(eps: int) -> LieSuperalgebra:
    """Two odd vectors with omega = f1*^f1* + eps f2*^f2*."""
    space = SuperSpace(("f1", "f2"), (1, 1))
    values = zeros(2, 2)
    values[0, 0], values[1, 1] = Fraction(-2), Fraction(-2 * eps)
    return LieSuperalgebra(space, ProductTable.zero(space), BilinearForm(space, 0, values),
                           f"odd_squares{'+' if eps > 0 else '-'}")


def _cube_root(q: Fraction) -> Optional[Fraction]:
    """The rational cube root of ``q`` if there is one."""
    def icbrt(n: int) -> Optional[int]:
        s = -1 if n < 0 else 1
        r = round(abs(n) ** (1 / 3))
        for c in (r - 1, r, r + 1):
            if c >= 0 and c ** 3 == abs(n):
                return s * c
        return None
    num, den = icbrt(q.numerator), icbrt(q.denominator)
    return None if num is None or den is None else Fraction(num, den)


F = Fraction


def _kh3_map(al, be, extra=()):
    if be != 0:
        return [{"e1": -1 / F(be)}, {"d": 1}, {"e": -1}, {"e2": -be, "e1": -al}, *extra]
    return None


def _kh3_swap(al, be, extra=()):
    # beta = 0: exchange the roles of e1 and e2
    return [{"e2": 1 / F(al)}, {"d": 1}, {"e": -1}, {"e1": -al}, *extra]


def _kh3_xi_map(a, al, extra=()):
    t = F(al + 1, 3 * a)
    return [{"d": 3 * a, "e2": al}, {"d": 1, "e2": t}, {"e": al, "e1": -3 * a},
            {"e": -t, "e1": 1}, *extra]


def _g2_odd_map(al, be, extra=()):
    if be != 0:
        return [{"e1": 1 / F(be)}, {"e2": 2 * be, "e1": 2 * al}, {"d": 1}, {"e": 1}, *extra]
    return None


def _g2_odd_swap(al, be, extra=()):
    return [{"e2": -1 / F(al)}, {"e1": 2 * al}, {"d": 1}, {"e": 1}, *extra]


def _g4_cube_map(a, al):
    lam, mu = _cube_root(F(al * al, a)), _cube_root(F(a * a, al))
    if lam is None or mu is None:
        return None
    return [{"e1": -lam, "e": -mu}, {"e1": -lam, "e": mu},
            {"d": 1 / (2 * lam), "f1": -1 / (2 * mu)}, {"d": 1 / lam, "f1": 1 / mu}]


@dataclass(frozen=True)
class Family:
    """A listed family of admissible pairs on an abelian seed.

    ``xi`` gives ``{(row, col): value}`` entries (column j is the image of the
    j-th seed vector), ``b0`` gives ``{name: value}``.  ``classify`` returns
    ``(normal form, proof map, other map, other map label)`` with maps as lists of
    images or ``None``; the normal form ``"abelian"`` means the bracket vanishes.
    """

    name: str
    dim: int
    seed: str
    variant: str
    params: tuple
    points: tuple
    xi: Callable
    b0: Callable
    classify: Callable


def _families() -> list[Family]:
    grid2 = tuple((x, y) for x in GRID for y in GRID)
    nz_grid = tuple((x, y) for x in NONZERO for y in GRID)
    f1 = ({"f1": 1},)

    def abelian_or(target, proof, other=None, label="derived"):
        def classify(*p):
            if all(x == 0 for x in p):
                return "abelian", None, None, "-"
            pm = proof(*p)
            om = other(*p) if other is not None else None
            return target, pm, om, label
        return classify

    fams = [
        Family("even-ortho, even seed, xi=0", 4, "abelian2", "even-orthosymplectic",
               ("alpha", "beta"), grid2, lambda al, be: {},
               lambda al, be: {"e1": al, "e2": be},
               abelian_or("kh3", _kh3_map, lambda al, be: _kh3_swap(al, be) if be == 0 else None)),
        Family("even-ortho, even seed, xi=a*E12", 4, "abelian2", "even-orthosymplectic",
               ("a", "alpha"), nz_grid, lambda a, al: {(0, 1): a}, lambda a, al: {"e1": al},
               lambda a, al: ("kh3", _kh3_xi_map(a, al), None, "-")),
        Family("even-ortho, odd seed (squares), xi=0", 4, "odd_squares", "even-orthosymplectic",
               ("eps",), ((1,), (-1,)), lambda eps: {}, lambda eps: {},
               lambda eps: ("abelian", None, None, "-")),
        Family("even-ortho, odd seed, xi=a*E12", 4, "abelian2_odd", "even-orthosymplectic",
               ("a",), tuple((a,) for a in NONZERO), lambda a: {(0, 1): a}, lambda a: {},
               lambda a: ("g2", [{"d": -1 / F(a)}, {"e": 2 * a}, {"f2": -1}, {"f1": -1}],
                          None, "-")),
        Family("odd-ortho, even seed, xi=0", 4, "abelian2", "odd-orthosymplectic",
               ("alpha", "beta"), grid2, lambda al, be: {},
               lambda al, be: {"e1": al, "e2": be},
               abelian_or("g2", _g2_odd_map,
                          lambda al, be: _g2_odd_swap(al, be) if be == 0 else None)),
        Family("odd-ortho, odd seed (squares), xi=0", 4, "odd_squares", "odd-orthosymplectic",
               ("eps",), ((1,), (-1,)), lambda eps: {}, lambda eps: {},
               lambda eps: ("abelian", None, None, "-")),
        Family("even-peri, xi=0", 4, "abelian2_peri", "even-periplectic",
               ("alpha",), tuple((x,) for x in GRID), lambda al: {}, lambda al: {"e1": al},
               abelian_or("g3", lambda al: [{"d": 1}, {"e1": -al}, {"f1": -1 / F(al)}, {"e": -1}])),
        Family("odd-peri, xi=0", 4, "abelian2_peri", "odd-periplectic",
               ("alpha",), tuple((x,) for x in GRID), lambda al: {}, lambda al: {"e1": al},
               abelian_or("g4", lambda al: [{"e1": -2 * al}, {"e": 1}, {"d": 1},
                                            {"f1": 1 / F(al)}])),
        Family("odd-peri, xi=a*E21", 4, "abelian2_peri", "odd-periplectic",
               ("a",), tuple((a,) for a in NONZERO), lambda a: {(1, 0): a}, lambda a: {},
               lambda a: ("g3", [{"e1": 1}, {"e": -a}, {"d": -1 / F(a)}, {"f1": 1}],
                          [{"e1": 1}, {"e": 3 * a}, {"d": 1 / F(3 * a)}, {"f1": 1}],
                          "corrected")),
        Family("odd-peri, xi=a*E12", 4, "abelian2_peri", "odd-periplectic",
               ("a", "alpha"), nz_grid + ((8, 1), (1, 8)),
               lambda a, al: {(0, 1): a}, lambda a, al: {"e1": al},
               lambda a, al: (
                   ("g4", [{"e": -2 / F(a)}, {"e1": a}, {"f1": 1 / F(a)}, {"d": a}], None, "-")
                   if al == 0 else
                   ("g4", _g4_cube_map(a, al),
                    [{"e1": -2 / F(al)}, {"e1": -a, "e": al}, {"d": 1 / F(al)},
                     {"d": a, "f1": al}], "corrected"))),
        Family("dim 5, even-ortho, xi=0", 5, "abelian3", "even-orthosymplectic",
               ("alpha", "beta"), grid2, lambda al, be: {},
               lambda al, be: {"e1": al, "e2": be},
               abelian_or("g1_dim5", lambda al, be: _kh3_map(al, be, f1),
                          lambda al, be: _kh3_swap(al, be, f1) if be == 0 else None)),
        Family("dim 5, even-ortho, xi=a*E12", 5, "abelian3", "even-orthosymplectic",
               ("a", "alpha"), nz_grid, lambda a, al: {(0, 1): a}, lambda a, al: {"e1": al},
               lambda a, al: ("g1_dim5", _kh3_xi_map(a, al, f1), None, "-")),
        Family("dim 5, odd-ortho, xi=0", 5, "abelian3", "odd-orthosymplectic",
               ("alpha", "beta"), grid2, lambda al, be: {},
               lambda al, be: {"e1": al, "e2": be},
               abelian_or("g2_dim5", lambda al, be: _g2_odd_map(al, be, f1),
                          lambda al, be: _g2_odd_swap(al, be, f1) if be == 0 else None)),
    ]
    return fams


def families(dim: Optional[int] = None) -> list[Family]:
    return [f for f in _families() if dim is None or f.dim == dim]


def seed_algebra(name: str, *params) -> LieSuperalgebra:
    if name == "odd_squares":
        return _odd_squares_seed(params[0])
    return entry(name).algebra


def family_spec(fam: Family, point: tuple) -> ExtensionSpec:
    """The extension data of ``fam`` at the parameter values ``point``."""
    seed = seed_algebra(fam.seed, *point)
    n = seed.dim
    m = zeros(n, n)
    for (i, j), v in fam.xi(*point).items():
        m[i, j] = Fraction(v)
    b0 = seed.space.vector({k: Fraction(v) for k, v in fam.b0(*point).items()})
    xi = LinearOperator(seed.space, VARIANTS[fam.variant][0], m)
    return ExtensionSpec(seed, xi, b0, fam.variant)


@dataclass(frozen=True)
class ClassificationRow:
    family: str
    params: tuple            # ((name, value), ...)
    admissible: bool
    flat: bool
    nilpotent: bool
    claimed: str             # normal form the family should land on
    matched: Optional[str]   # normal form actually reached, or None
    proof_map: str           # ok | failed | not rational | none
    map_used: str            # proof | corrected | derived | - (abelian or unmatched)

    def format(self) -> str:
        ps = ", ".join(f"{k}={format_scalar(Fraction(v))}" for k, v in self.params)
        status = (f"matched {self.matched} via {self.map_used} map"
                  if self.matched and self.map_used != "-" else
                  f"matched {self.matched}" if self.matched else "NO MATCH")
        return (f"{self.family} [{ps}] -> {self.claimed}: {status}; proof map {self.proof_map}; "
                f"admissible={self.admissible} flat={self.flat} nilpotent={self.nilpotent}")


@dataclass(frozen=True)
class ClassificationReport:
    dim: int
    rows: tuple

    @property
    def all_matched(self) -> bool:
        return all(r.matched == r.claimed and r.admissible and r.flat and r.nilpotent
                   for r in self.rows)

    def format_lines(self) -> list[str]:
        return [r.format() for r in self.rows]


def _try_map(nf: LieSuperalgebra, g: LieSuperalgebra, images) -> bool:
    try:
        claim = MorphismClaim(nf, g, images_matrix(g, images), "symplectomorphism")
        return not verify_morphism(claim)
    except StructuralError:
        return False


def classify_point(fam: Family, point: tuple) -> ClassificationRow:
    spec = family_spec(fam, point)
    params = tuple(zip(fam.params, point))
    admissible = not check_admissible(spec)
    claimed, proof, other, label = fam.classify(*point)
    if not admissible:
        return ClassificationRow(fam.name, params, False, False, False, claimed, None,
                                 "none", "-")
    # the checks of double_extend, spelled out so each runs once
    g, predicted = construct(spec)
    if validate(g):
        raise AssertionError(f"{fam.name} at {point}: extension is not quasi-Frobenius")
    nat = natural_symplectic(g)
    if nat != predicted:
        raise AssertionError(f"{fam.name} at {point}: natural product differs from the prediction")
    flat, nilpotent = is_flat(g, nat), series(g).is_nilpotent
    if claimed == "abelian":
        matched = "abelian" if g.bracket.is_zero() else None
        return ClassificationRow(fam.name, params, True, flat, nilpotent, claimed, matched,
                                 "none", "-")
    nf = entry(claimed).algebra
    proof_status = "none"
    used = "-"
    if proof is not None:
        proof_status = "ok" if _try_map(nf, g, proof) else "failed"
        if proof_status == "ok":
            used = "proof"
    elif label == "corrected":
        proof_status = "not rational"
    if used == "-" and other is not None and _try_map(nf, g, other):
        used = label
    matched = claimed if used != "-" else None
    return ClassificationRow(fam.name, params, True, flat, nilpotent, claimed, matched,
                             proof_status, used)


def verify_classification(dim: int) -> ClassificationReport:
    """Run every listed family of the given total dimension (4 or 5) over its grid."""
    if dim not in (4, 5):
        raise ValueError("the classification check covers dimensions 4 and 5")
    rows = tuple(classify_point(f, p) for f in families(dim) for p in f.points)
    return ClassificationReport(dim, rows)
