"""Closed subspaces of C^d in exact arithmetic.

Subspaces are represented by a canonical reduced-echelon basis over the
Gaussian rationals, so equality of subspaces is equality of
representations.  Square roots never appear: bases are unnormalized and
projections are computed through the exact Gram-matrix formula
P = V (V*V)^{-1} V*.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, ModelValidationError, ZeroVector
from .gaussian import GR_ONE, GR_ZERO, GaussianRational, format_scalar, parse_scalar

Vector = tuple[GaussianRational, ...]


def _rref(rows: list[list[GaussianRational]]) -> list[list[GaussianRational]]:
    """Reduced row echelon form; returns the nonzero rows (leading entries 1)."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if not rows[i][c].is_zero), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and not rows[i][c].is_zero:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == nrows:
            break
    return rows[:r]


def _nullspace(rows: list[list[GaussianRational]], ncols: int) -> list[list[GaussianRational]]:
    """Basis of {x : M x = 0} for the matrix with the given rows."""
    red = _rref(rows)
    pivot_cols = []
    for row in red:
        pivot_cols.append(next(c for c, x in enumerate(row) if not x.is_zero))
    pivot_set = set(pivot_cols)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [GR_ZERO] * ncols
        vec[free] = GR_ONE
        for row, pc in zip(red, pivot_cols):
            vec[pc] = -row[free]
        basis.append(vec)
    return basis


def _conj_dot(u: Sequence[GaussianRational], v: Sequence[GaussianRational]) -> GaussianRational:
    acc = GR_ZERO
    for a, b in zip(u, v):
        acc = acc + a.conjugate() * b
    return acc


def _solve(matrix: list[list[GaussianRational]], rhs: list[GaussianRational]) -> list[GaussianRational]:
    """Solve a square nonsingular system by Gauss-Jordan on the augmented matrix."""
    n = len(matrix)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for c in range(n):
        pivot = next(i for i in range(c, n) if not aug[i][c].is_zero)
        aug[c], aug[pivot] = aug[pivot], aug[c]
        inv = aug[c][c].inverse()
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and not aug[i][c].is_zero:
                factor = aug[i][c]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[c])]
    return [aug[i][n] for i in range(n)]


@dataclass(frozen=True)
class Subspace:
    """A closed subspace of C^ambient with a canonical echelon basis.

    ``basis`` rows span the subspace and are the unique reduced echelon
    basis, so two Subspace values are equal iff they are the same set of
    vectors.  Construct through span()/zero()/full(); the constructor
    re-canonicalizes whatever it is given.
    """

    ambient: int
    basis: tuple[Vector, ...] = ()

    def __post_init__(self):
        if self.ambient < 1:
            raise ModelValidationError("ambient dimension must be positive")
        for vec in self.basis:
            if len(vec) != self.ambient:
                raise DimensionMismatch(
                    f"basis vector of length {len(vec)} in C^{self.ambient}"
                )
        rows = _rref([list(v) for v in self.basis])
        object.__setattr__(self, "basis", tuple(tuple(row) for row in rows))

    @classmethod
    def span(cls, vectors: Iterable[Sequence[GaussianRational]], ambient: int | None = None) -> Subspace:
        vecs = [tuple(v) for v in vectors]
        if ambient is None:
            if not vecs:
                raise ModelValidationError("cannot infer ambient dimension of an empty span")
            ambient = len(vecs[0])
        return cls(ambient, tuple(vecs))

    @classmethod
    def zero(cls, ambient: int) -> Subspace:
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient: int) -> Subspace:
        rows = tuple(
            tuple(GR_ONE if i == j else GR_ZERO for j in range(ambient))
            for i in range(ambient)
        )
        return cls(ambient, rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def sort_key(self):
        return (
            self.dim,
            tuple(z.sort_key() for row in self.basis for z in row),
        )

    def __repr__(self) -> str:
        rows = "; ".join(",".join(format_scalar(z) for z in row) for row in self.basis)
        return f"Subspace(C^{self.ambient}, dim={self.dim}, [{rows}])"


def _check_same_space(a: Subspace, b: Subspace) -> None:
    if a.ambient != b.ambient:
        raise DimensionMismatch(f"C^{a.ambient} vs C^{b.ambient}")


def ortho(a: Subspace) -> Subspace:
    """Orthocomplement: the exact null space of the conjugated basis."""
    constraints = [[z.conjugate() for z in row] for row in a.basis]
    return Subspace(a.ambient, tuple(tuple(v) for v in _nullspace(constraints, a.ambient)))


def meet(a: Subspace, b: Subspace) -> Subspace:
    """Intersection, via the stacked orthocomplement constraints."""
    _check_same_space(a, b)
    constraints = [[z.conjugate() for z in row] for row in ortho(a).basis]
    constraints += [[z.conjugate() for z in row] for row in ortho(b).basis]
    return Subspace(a.ambient, tuple(tuple(v) for v in _nullspace(constraints, a.ambient)))


def join(a: Subspace, b: Subspace) -> Subspace:
    """Closed linear span of the union."""
    _check_same_space(a, b)
    return Subspace(a.ambient, a.basis + b.basis)


def leq(a: Subspace, b: Subspace) -> bool:
    _check_same_space(a, b)
    return meet(a, b) == a


def born(psi: Sequence[GaussianRational], a: Subspace) -> Fraction:
    """Projection probability <psi|P|psi> / <psi|psi>, exactly.

    P projects onto ``a``; the value is an exact rational in [0, 1], equal
    to 1 iff psi lies in the subspace and 0 iff psi is orthogonal to it.
    """
    psi = tuple(psi)
    if len(psi) != a.ambient:
        raise DimensionMismatch(f"vector of length {len(psi)} in C^{a.ambient}")
    norm2 = _conj_dot(psi, psi)
    if norm2.is_zero:
        raise ZeroVector("born probability of the zero vector")
    if a.dim == 0:
        return Fraction(0)
    gram = [[_conj_dot(u, v) for v in a.basis] for u in a.basis]
    coeffs = [_conj_dot(u, psi) for u in a.basis]
    solved = _solve(gram, coeffs)
    num = GR_ZERO
    for c, y in zip(coeffs, solved):
        num = num + c.conjugate() * y
    value = num / norm2
    if value.imag != 0:
        raise AssertionError("projection probability must be real")
    return Fraction(value.real)


def contains_vector(a: Subspace, v: Sequence[GaussianRational]) -> bool:
    return Subspace.span([tuple(v)], a.ambient).dim == 0 or join(
        a, Subspace.span([tuple(v)], a.ambient)
    ) == a


def subspace_from_strings(rows: list[list[str]], ambient: int) -> Subspace:
    """Build a subspace from basis vectors given as scalar literals."""
    vecs = []
    for row in rows:
        if len(row) != ambient:
            raise ModelValidationError(
                f"basis vector has {len(row)} components, expected {ambient}"
            )
        vecs.append(tuple(parse_scalar(s) for s in row))
    return Subspace.span(vecs, ambient)


def subspace_to_strings(a: Subspace) -> list[list[str]]:
    return [[format_scalar(z) for z in row] for row in a.basis]
