"""
Exact scalars and linear algebra for structconst.

Every matrix is a sympy DomainMatrix over QQ, ZZ or GF(PRIME), kept in sparse
format. Rational ranks and determinants clear row denominators first and run
fraction-free elimination over ZZ (rref_den, Bareiss), so coefficient growth
stays bounded on the n^4-row differentials.

Prime-field results are advisory: a rank modulo PRIME is only a lower bound of
the rational rank.
"""

import re
from collections import defaultdict
from functools import reduce
from math import lcm, prod
from typing import NamedTuple

from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix

PRIME = 2**31 - 1
RATIONAL = "rational"
PRIME_FIELD = "prime"

_LITERAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class SingularMatrixError(ValueError):
    """Raised where an invertible matrix is required."""


class Subspace(NamedTuple):
    """A subspace given by its dimension and a basis of row vectors."""
    dim: int
    basis: list


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------
def field_domain(field: str = RATIONAL):
    """Return the sympy domain for a field name ('rational' or 'prime')."""
    if field == RATIONAL:
        return QQ
    if field == PRIME_FIELD:
        return GF(PRIME)
    raise ValueError(f"unknown field {field!r} (expected 'rational' or 'prime')")


def parse_scalar(text: str):
    """Parse a rational literal "p/q" or "p" into a QQ element."""
    match = _LITERAL.match(text)
    if not match:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return QQ(num, den)


def format_scalar(a) -> str:
    """Render a scalar as "p/q" in lowest terms ("p" when q = 1)."""
    if hasattr(a, "numerator"):
        num, den = int(a.numerator), int(a.denominator)
        return str(num) if den == 1 else f"{num}/{den}"
    return str(int(a))


def to_scalar(value, domain=QQ):
    """Convert an int, Fraction, QQ element or literal string into `domain`."""
    if domain.of_type(value):
        return value
    if isinstance(value, str):
        value = parse_scalar(value)
    if isinstance(value, int):
        return domain(value)
    num, den = int(value.numerator), int(value.denominator)
    if domain == QQ:
        return QQ(num, den)
    return domain.quo(domain(num), domain(den))


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------
def sparse_matrix(entries: dict, shape: tuple, domain=QQ) -> DomainMatrix:
    """Build a matrix from {(row, col): value}; zero values are dropped."""
    rows = defaultdict(dict)
    for (i, j), v in entries.items():
        v = to_scalar(v, domain)
        if v:
            rows[i][j] = v
    return DomainMatrix(dict(rows), shape, domain)


def matrix(rows: list, domain=QQ, cols: int | None = None) -> DomainMatrix:
    """Build a matrix from a list of rows."""
    if cols is None:
        cols = len(rows[0]) if rows else 0
    entries = {}
    for i, row in enumerate(rows):
        if len(row) != cols:
            raise ValueError(f"row {i} has length {len(row)}, expected {cols}")
        for j, v in enumerate(row):
            entries[(i, j)] = v
    return sparse_matrix(entries, (len(rows), cols), domain)


def identity(n: int, domain=QQ) -> DomainMatrix:
    return sparse_matrix({(i, i): 1 for i in range(n)}, (n, n), domain)


def zeros(shape: tuple, domain=QQ) -> DomainMatrix:
    return DomainMatrix({}, shape, domain)


def entries(m: DomainMatrix) -> dict:
    """Nonzero entries as {(row, col): value}."""
    return {k: v for k, v in m.to_sparse().to_dok().items() if v}


def to_rows(m: DomainMatrix) -> list:
    """Dense list of rows of domain elements."""
    r, c = m.shape
    K = m.domain
    rows = [[K.zero] * c for _ in range(r)]
    for (i, j), v in entries(m).items():
        rows[i][j] = v
    return rows


def is_zero(m: DomainMatrix) -> bool:
    return not entries(m)


def transpose(m: DomainMatrix) -> DomainMatrix:
    return m.to_sparse().transpose()


def matmul(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    return a.to_sparse().matmul(b.to_sparse())


def add(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    return a.to_sparse() + b.to_sparse()


def scale(m: DomainMatrix, c) -> DomainMatrix:
    c = to_scalar(c, m.domain)
    return sparse_matrix({k: v * c for k, v in entries(m).items()}, m.shape, m.domain)


def mat_vec(m: DomainMatrix, v: list) -> list:
    """Return m*v for a plain list v."""
    r, c = m.shape
    if len(v) != c:
        raise ValueError(f"vector of length {len(v)} against {r}x{c} matrix")
    out = [m.domain.zero] * r
    for (i, j), a in entries(m).items():
        if v[j]:
            out[i] += a * v[j]
    return out


def trace(m: DomainMatrix):
    r, c = m.shape
    if r != c:
        raise ValueError(f"trace needs a square matrix, got {r}x{c}")
    dok = entries(m)
    return sum((dok.get((i, i), m.domain.zero) for i in range(r)), m.domain.zero)


# ---------------------------------------------------------------------------
# Elimination
# ---------------------------------------------------------------------------
def _integral(m: DomainMatrix):
    """Scale every row of a QQ matrix to integers.

    Returns the ZZ matrix and the per-row scale factors. Row scaling changes
    neither rank nor kernel, and divides out of the determinant.
    """
    if m.domain == ZZ:
        return m.to_sparse(), [1] * m.shape[0]
    by_row = defaultdict(dict)
    for (i, j), v in entries(m).items():
        by_row[i][j] = v
    scales = [1] * m.shape[0]
    rows = {}
    for i, row in by_row.items():
        s = reduce(lcm, (int(v.denominator) for v in row.values()), 1)
        scales[i] = s
        rows[i] = {j: ZZ(int(v.numerator) * (s // int(v.denominator))) for j, v in row.items()}
    return DomainMatrix(rows, m.shape, ZZ), scales


def rank(m: DomainMatrix) -> int:
    """Exact rank over the matrix's own field."""
    if 0 in m.shape or is_zero(m):
        return 0
    if m.domain.is_FiniteField:
        _, pivots = m.to_sparse().rref()
        return len(pivots)
    zm, _ = _integral(m)
    _, _, pivots = zm.rref_den()
    return len(pivots)


def rank_mod_p(m: DomainMatrix) -> int:
    """Rank after reduction modulo PRIME; a lower bound of the rational rank."""
    if m.domain.is_FiniteField:
        return rank(m)
    zm, _ = _integral(m)
    return rank(zm.convert_to(GF(PRIME)))


def certified_rank(m: DomainMatrix, upper_bound: int) -> tuple[int, str]:
    """Rational rank of m, given a proven upper bound for it.

    The rank modulo PRIME bounds the rational rank from below; when it meets
    `upper_bound` the rational rank is certified without rational elimination.
    Returns (rank, path) with path "prime-certified" or "rational".
    """
    lower = rank_mod_p(m)
    if lower > upper_bound:
        raise ValueError(f"modular rank {lower} exceeds the claimed upper bound {upper_bound}")
    if lower == upper_bound:
        return lower, "prime-certified"
    return rank(m), "rational"


def kernel_basis(m: DomainMatrix) -> list:
    """Basis of the right kernel in reduced echelon-normal form.

    One vector per free column f: v[f] = 1, v[pivot] = -rref[row][f], all other
    entries zero. Empty when the kernel is trivial.
    """
    r, c = m.shape
    K = m.domain.get_field() if not m.domain.is_Field else m.domain
    if c == 0:
        return []
    if r == 0 or is_zero(m):
        return [[K.one if j == f else K.zero for j in range(c)] for f in range(c)]
    R, pivots = m.to_sparse().to_field().rref()
    dok = R.to_dok()
    pivot_set = set(pivots)
    basis = []
    for free in range(c):
        if free in pivot_set:
            continue
        v = [K.zero] * c
        v[free] = K.one
        for row, p in enumerate(pivots):
            a = dok.get((row, free))
            if a:
                v[p] = -a
        basis.append(v)
    return basis


def determinant(m: DomainMatrix):
    """Exact determinant (Bareiss over ZZ after clearing row denominators)."""
    r, c = m.shape
    if r != c:
        raise ValueError(f"determinant needs a square matrix, got {r}x{c}")
    K = m.domain
    if r == 0:
        return K.one
    if K.is_FiniteField:
        return m.to_dense().det()
    zm, scales = _integral(m)
    d = zm.to_dense().det()
    return QQ(int(d), prod(scales))


def inverse(m: DomainMatrix) -> DomainMatrix:
    r, c = m.shape
    if r != c:
        raise ValueError(f"inverse needs a square matrix, got {r}x{c}")
    if not determinant(m):
        raise SingularMatrixError(f"{r}x{c} matrix is singular")
    return m.to_dense().to_field().inv().to_sparse()


def symmetrize(m: DomainMatrix) -> DomainMatrix:
    """(m + m^t)/2; undefined in characteristic 2."""
    r, c = m.shape
    if r != c:
        raise ValueError(f"symmetrize needs a square matrix, got {r}x{c}")
    K = m.domain
    if K.characteristic() == 2:
        raise ValueError("symmetrize is undefined in characteristic 2")
    half = K.quo(K.one, K(2))
    return scale(add(m, transpose(m)), half)


# ---------------------------------------------------------------------------
# Subspaces
# ---------------------------------------------------------------------------
def row_space_basis(vectors: list, length: int | None = None, domain=QQ) -> list:
    """Echelon basis (nonzero rref rows) of the span of `vectors`."""
    if not vectors:
        return []
    m = matrix(vectors, domain, cols=length)
    R, pivots = m.to_field().rref()
    rows = to_rows(R)
    return [rows[i] for i in range(len(pivots))]


def column_space_basis(m: DomainMatrix) -> list:
    """Echelon basis of the image of m, as row vectors."""
    return row_space_basis(to_rows(transpose(m)), m.shape[0], m.domain)


def span_contains(basis: list, vectors: list, domain=QQ) -> bool:
    """True iff every vector lies in span(basis)."""
    if not vectors:
        return True
    if not basis:
        return all(not any(v) for v in vectors)
    length = len(basis[0])
    return rank(matrix(basis, domain, length)) == rank(matrix(basis + vectors, domain, length))


def same_span(a: list, b: list, domain=QQ) -> bool:
    """Subspace equality by mutual containment."""
    return span_contains(a, b, domain) and span_contains(b, a, domain)
