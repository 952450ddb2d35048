"""
Degree <= 2 cochain complexes of an algebra with coefficients in itself.

Four theories share one degree-1 coboundary
    (d1 f)(a, b) = mu(f a, b) + mu(a, f b) - f(mu(a, b))
and differ in degree 0 and 2:
    hochschild  d0 v = mu(-, v) - mu(v, -)     d2 y = beta(x, y) + beta(y, x)
    leibniz     d0 v = R_v                     d2 y = B(x, y) + B(y, x)
    harrison    hochschild restricted to symmetric 2-cochains
    ce          leibniz restricted to skew 2-cochains

C^1 is indexed by idx1(a, b) (coefficient of e_b in f(e_a)), C^2 by idx and
C^3 by idx3. Restricted theories keep an explicit inclusion matrix into the
full C^2.
"""

import logging
import os
from collections import defaultdict
from dataclasses import dataclass
from itertools import product

from sympy.polys.domains import QQ

from algebra_core import MulTable, idx, idx1, idx3
from exact_linalg import (
    PRIME_FIELD, RATIONAL, Subspace, certified_rank, entries, is_zero, kernel_basis, mat_vec, matmul,
    rank, rank_mod_p, sparse_matrix, to_rows, transpose,
)
from identities import InconsistentComputationError, require

log = logging.getLogger("cohomology")

THEORIES = ("hochschild", "harrison", "leibniz", "ce")
VARIETY_OF = {"hochschild": "associative", "harrison": "commutative", "leibniz": "leibniz", "ce": "lie"}


def screen_dim() -> int:
    """Dimension from which d2 ranks go through the prime-field screen."""
    return int(os.environ.get("STRUCTCONST_SCREEN_DIM", "5"))


@dataclass(frozen=True)
class ComplexSlice:
    theory: str
    point: MulTable
    d0: object
    d1: object
    d2: object
    inclusion: object = None  # C^2 subspace -> full C^2, for harrison and ce
    image_symmetry: str | None = None

    @property
    def c1_dim(self) -> int:
        return self.d1.shape[1]

    @property
    def c2_dim(self) -> int:
        return self.d2.shape[1]


@dataclass(frozen=True)
class CohomologySummary:
    theory: str
    z1: int
    b1: int
    h1: int
    z2: int
    b2: int
    h2: int
    derivations_dim: int
    inner_dim: int
    center_dim: int
    rank_d2: int
    c2_dim: int
    rank_path: str = "rational"


# ---------------------------------------------------------------------------
# Differential matrices
# ---------------------------------------------------------------------------
def _accumulate() -> defaultdict:
    return defaultdict(lambda: QQ.zero)


def d0_commutator(x: MulTable):
    """v -> (a -> mu(a, v) - mu(v, a)), an n^2 x n matrix."""
    n = x.dim
    acc = _accumulate()
    for (i, j, l), v in x.nonzero():
        acc[(idx1(n, i, l), j)] += v  # mu(a, v) at a = e_i, v = e_j
        acc[(idx1(n, j, l), i)] -= v  # mu(v, a) at v = e_i, a = e_j
    return sparse_matrix(dict(acc), (n * n, n))


def d0_right(x: MulTable):
    """v -> R_v, an n^2 x n matrix."""
    n = x.dim
    acc = _accumulate()
    for (i, j, l), v in x.nonzero():
        acc[(idx1(n, i, l), j)] += v
    return sparse_matrix(dict(acc), (n * n, n))


def d1_matrix(x: MulTable):
    """(d1 f)(a,b) = mu(fa, b) + mu(a, fb) - f(mu(a,b)), an n^3 x n^2 matrix.

    Column idx1(p, q) is the elementary map e_p -> e_q.
    """
    n = x.dim
    acc = _accumulate()
    for (i, j, l), v in x.nonzero():
        for p in range(n):
            # mu(f e_p, e_j) with f e_p = e_i: f = E(p -> i), row (p, j, l)
            acc[(idx(n, p, j, l), idx1(n, p, i))] += v
            # mu(e_i, f e_p) with f e_p = e_j: row (i, p, l)
            acc[(idx(n, i, p, l), idx1(n, p, j))] += v
        # -f(mu(e_i, e_j)) picks f(e_l) = e_q
        for q in range(n):
            acc[(idx(n, i, j, q), idx1(n, l, q))] -= v
    return sparse_matrix(dict(acc), (n**3, n * n))


def d2_hochschild(x: MulTable):
    """y -> beta(x, y) + beta(y, x), an n^4 x n^3 matrix."""
    n = x.dim
    acc = _accumulate()
    for (a, b, c), v in x.nonzero():
        for s, t in product(range(n), repeat=2):
            # beta(x,y): x^l_{ij} y^m_{lk} with (i,j,l) = (a,b,c), (k,m) = (s,t)
            acc[(idx3(n, a, b, s, t), idx(n, c, s, t))] += v
            # -y^m_{il} x^l_{jk} with (j,k,l) = (a,b,c), (i,m) = (s,t)
            acc[(idx3(n, s, a, b, t), idx(n, s, c, t))] -= v
            # beta(y,x): y^l_{ij} x^m_{lk} with (l,k,m) = (a,b,c), (i,j) = (s,t)
            acc[(idx3(n, s, t, b, c), idx(n, s, t, a))] += v
            # -x^m_{il} y^l_{jk} with (i,l,m) = (a,b,c), (j,k) = (s,t)
            acc[(idx3(n, a, s, t, c), idx(n, s, t, b))] -= v
    return sparse_matrix(dict(acc), (n**4, n**3))


def d2_leibniz(x: MulTable):
    """y -> B(x, y) + B(y, x), an n^4 x n^3 matrix."""
    n = x.dim
    acc = _accumulate()
    for (a, b, c), v in x.nonzero():
        for s, t in product(range(n), repeat=2):
            # B(x,y)
            acc[(idx3(n, a, b, s, t), idx(n, c, s, t))] += v   # x^l_{ij} y^m_{lk}
            acc[(idx3(n, a, s, b, t), idx(n, c, s, t))] -= v   # x^l_{ik} y^m_{lj}
            acc[(idx3(n, a, s, t, c), idx(n, s, t, b))] -= v   # x^m_{il} y^l_{jk}
            # B(y,x)
            acc[(idx3(n, s, t, b, c), idx(n, s, t, a))] += v   # y^l_{ij} x^m_{lk}
            acc[(idx3(n, s, b, t, c), idx(n, s, t, a))] -= v   # y^l_{ik} x^m_{lj}
            acc[(idx3(n, s, a, b, t), idx(n, s, c, t))] -= v   # y^m_{il} x^l_{jk}
    return sparse_matrix(dict(acc), (n**4, n**3))


# ---------------------------------------------------------------------------
# Symmetric and skew 2-cochains
# ---------------------------------------------------------------------------
def _pairs(n: int) -> list:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def symmetric_inclusion(n: int):
    """n^3 x n*n(n+1)/2 inclusion of symmetric 2-cochains.

    Columns: (i<j) pairs then diagonals, output index l fastest; the pair
    column is E(i,j,l) + E(j,i,l), the diagonal column E(i,i,l).
    """
    entries = {}
    pairs = _pairs(n)
    for p, (i, j) in enumerate(pairs):
        for l in range(n):
            entries[(idx(n, i, j, l), p * n + l)] = 1
            entries[(idx(n, j, i, l), p * n + l)] = 1
    base = len(pairs) * n
    for i in range(n):
        for l in range(n):
            entries[(idx(n, i, i, l), base + i * n + l)] = 1
    return sparse_matrix(entries, (n**3, base + n * n))


def symmetric_projection(n: int):
    """Coordinates of a symmetric 2-cochain in the symmetric_inclusion basis."""
    entries = {}
    pairs = _pairs(n)
    for p, (i, j) in enumerate(pairs):
        for l in range(n):
            entries[(p * n + l, idx(n, i, j, l))] = 1
    base = len(pairs) * n
    for i in range(n):
        for l in range(n):
            entries[(base + i * n + l, idx(n, i, i, l))] = 1
    return sparse_matrix(entries, (base + n * n, n**3))


def skew_inclusion(n: int):
    """n^3 x n*n(n-1)/2 inclusion of skew 2-cochains; column E(i,j,l) - E(j,i,l)."""
    entries = {}
    pairs = _pairs(n)
    for p, (i, j) in enumerate(pairs):
        for l in range(n):
            entries[(idx(n, i, j, l), p * n + l)] = 1
            entries[(idx(n, j, i, l), p * n + l)] = -1
    return sparse_matrix(entries, (n**3, len(pairs) * n))


def skew_projection(n: int):
    entries = {}
    for p, (i, j) in enumerate(_pairs(n)):
        for l in range(n):
            entries[(p * n + l, idx(n, i, j, l))] = 1
    return sparse_matrix(entries, (len(_pairs(n)) * n, n**3))


def cochain_symmetry(vec: list, n: int) -> str:
    """Symmetry type of a 3-cochain: "alternating", "skew_12" or "none"."""
    skew_12 = skew_23 = True
    for i, j, k, m in product(range(n), repeat=4):
        v = vec[idx3(n, i, j, k, m)]
        if v != -vec[idx3(n, j, i, k, m)]:
            skew_12 = False
        if v != -vec[idx3(n, i, k, j, m)]:
            skew_23 = False
        if not skew_12:
            break
    if skew_12 and skew_23:
        return "alternating"
    return "skew_12" if skew_12 else "none"


def _restrict_image(d1, inclusion, projection, theory: str):
    """Coordinates of d1 in a subspace of C^2 that must contain its image."""
    restricted = matmul(projection, d1)
    if entries(matmul(inclusion, restricted)) != entries(d1):
        raise InconsistentComputationError(f"{theory}: image of d1 leaves the restricted cochains")
    return restricted


def _check_complex(theory: str, d0, d1, d2) -> None:
    if not is_zero(matmul(d1, d0)):
        raise InconsistentComputationError(f"{theory}: d1*d0 is not zero")
    if not is_zero(matmul(d2, d1)):
        raise InconsistentComputationError(f"{theory}: d2*d1 is not zero")


# ---------------------------------------------------------------------------
# Slices
# ---------------------------------------------------------------------------
def hochschild_slice(x: MulTable) -> ComplexSlice:
    require(x, "associative")
    d0, d1, d2 = d0_commutator(x), d1_matrix(x), d2_hochschild(x)
    _check_complex("hochschild", d0, d1, d2)
    log.debug(f"hochschild slice of {x.name or 'input'}: d1 {d1.shape}, d2 {d2.shape}")
    return ComplexSlice("hochschild", x, d0, d1, d2)


def harrison_slice(x: MulTable) -> ComplexSlice:
    """Degree-2 Harrison complex: Hochschild on symmetric 2-cochains."""
    require(x, "commutative")
    n = x.dim
    full = hochschild_slice(x)
    inclusion = symmetric_inclusion(n)
    d1 = _restrict_image(full.d1, inclusion, symmetric_projection(n), "harrison")
    d2 = matmul(full.d2, inclusion)
    _check_complex("harrison", full.d0, d1, d2)
    return ComplexSlice("harrison", x, full.d0, d1, d2, inclusion)


def leibniz_slice(x: MulTable) -> ComplexSlice:
    require(x, "leibniz")
    d0, d1, d2 = d0_right(x), d1_matrix(x), d2_leibniz(x)
    _check_complex("leibniz", d0, d1, d2)
    log.debug(f"leibniz slice of {x.name or 'input'}: d1 {d1.shape}, d2 {d2.shape}")
    return ComplexSlice("leibniz", x, d0, d1, d2)


def ce_slice(x: MulTable) -> ComplexSlice:
    """Leibniz complex on skew 2-cochains; records the symmetry of its d2 image."""
    require(x, "lie")
    n = x.dim
    inclusion = skew_inclusion(n)
    d0 = d0_right(x)
    d1 = _restrict_image(d1_matrix(x), inclusion, skew_projection(n), "ce")
    d2 = matmul(d2_leibniz(x), inclusion)
    _check_complex("ce", d0, d1, d2)
    kinds = {cochain_symmetry(col, n) for col in to_rows(transpose(d2)) if any(col)}
    if not kinds:
        symmetry = "alternating"
    elif len(kinds) == 1:
        symmetry = kinds.pop()
    else:
        symmetry = "skew_12" if "none" not in kinds else "none"
    return ComplexSlice("ce", x, d0, d1, d2, inclusion, symmetry)


_SLICES = {
    "hochschild": hochschild_slice,
    "harrison": harrison_slice,
    "leibniz": leibniz_slice,
    "ce": ce_slice,
}


def complex_slice(x: MulTable, theory: str) -> ComplexSlice:
    try:
        return _SLICES[theory](x)
    except KeyError:
        raise ValueError(f"unknown theory {theory!r}; choose from {', '.join(THEORIES)}")


# ---------------------------------------------------------------------------
# Dimensions
# ---------------------------------------------------------------------------
def summarize(s: ComplexSlice, field: str = RATIONAL) -> CohomologySummary:
    """Dimensions of Z, B, H in degrees 1 and 2.

    In prime-field mode every rank is taken modulo PRIME and the summary is
    advisory. In rational mode, from screen_dim() on, the rank of d2 is
    certified against the bound dim C^2 - rank d1 before falling back to
    rational elimination.
    """
    n = s.point.dim
    c1, c2 = s.c1_dim, s.c2_dim
    if field == PRIME_FIELD:
        rank_d0, rank_d1, rank_d2 = rank_mod_p(s.d0), rank_mod_p(s.d1), rank_mod_p(s.d2)
        path = "prime"
    elif field == RATIONAL:
        rank_d0, rank_d1 = rank(s.d0), rank(s.d1)
        if n >= screen_dim():
            rank_d2, path = certified_rank(s.d2, c2 - rank_d1)
        else:
            rank_d2, path = rank(s.d2), "rational"
    else:
        raise ValueError(f"unknown field {field!r}")
    log.debug(f"{s.theory}: rank d0={rank_d0} d1={rank_d1} d2={rank_d2} via {path}")

    z1, b1 = c1 - rank_d1, rank_d0
    z2, b2 = c2 - rank_d2, rank_d1
    if field == RATIONAL and (z2 < b2 or z1 < b1):
        raise InconsistentComputationError(f"{s.theory}: coboundaries exceed cocycles (z1={z1} b1={b1} z2={z2} b2={b2})")
    return CohomologySummary(
        theory=s.theory, z1=z1, b1=b1, h1=z1 - b1, z2=z2, b2=b2, h2=z2 - b2,
        derivations_dim=z1, inner_dim=b1, center_dim=n - rank_d0,
        rank_d2=rank_d2, c2_dim=c2, rank_path=path,
    )


def cohomology_summary(x: MulTable, theory: str, field: str = RATIONAL) -> CohomologySummary:
    return summarize(complex_slice(x, theory), field)


def cocycles(s: ComplexSlice) -> Subspace:
    """Z^2 as full C^2 vectors (restricted theories mapped through the inclusion)."""
    basis = kernel_basis(s.d2)
    if s.inclusion is not None:
        basis = [mat_vec(s.inclusion, v) for v in basis]
    return Subspace(len(basis), basis)


def harrison_z2(x: MulTable) -> Subspace:
    """Symmetric Hochschild 2-cocycles of a commutative point."""
    return cocycles(harrison_slice(x))


def derivations(x: MulTable, theory: str = "hochschild") -> Subspace:
    """ker d1 as C^1 vectors."""
    basis = kernel_basis(complex_slice(x, theory).d1)
    return Subspace(len(basis), basis)
