"""
Invariant bilinear forms and canonical subspaces of a point.

trace form    T(a, b) = Tr(L_{ab}), nondegenerate exactly on separable
              associative points
Killing form  k(a, b) = Tr(R_a R_b), nondegenerate exactly on semisimple Lie
              points of the Leibniz variety
"""

from dataclasses import dataclass
from itertools import combinations_with_replacement, product

from sympy.polys.domains import QQ

from algebra_core import MulTable, basis_vector, left_operator, multiply, right_operator
from exact_linalg import (
    add, determinant, inverse, kernel_basis, mat_vec, matmul, row_space_basis, scale, sparse_matrix,
    span_contains, to_rows, trace, transpose,
)
from identities import InconsistentComputationError, is_associative, is_leibniz, is_lie, require


@dataclass(frozen=True)
class GramForm:
    kind: str
    gram: object
    discriminant: object
    on_variety: bool = True

    @property
    def nondegenerate(self) -> bool:
        return bool(self.discriminant)


@dataclass(frozen=True)
class CharacterPair:
    sigma_L: list
    sigma_R: list


@dataclass(frozen=True)
class OperatorCheck:
    """Result of operator_identities_check; truthy when every identity holds."""
    holds: bool
    violation: str | None = None

    def __bool__(self) -> bool:
        return self.holds


def _gram(kind: str, n: int, value, on_variety: bool) -> GramForm:
    entries = {(i, j): value(i, j) for i, j in product(range(n), repeat=2)}
    gram = sparse_matrix(entries, (n, n))
    return GramForm(kind, gram, determinant(gram), on_variety)


def trace_gram(x: MulTable) -> GramForm:
    """D_x = (Tr L_{e_i e_j}). Computed for any x; meaningful on associative points."""
    n = x.dim

    def value(i, j):
        return trace(left_operator(x, multiply(x, basis_vector(n, i), basis_vector(n, j))))

    return _gram("trace", n, value, is_associative(x))


def is_separable(x: MulTable) -> bool:
    require(x, "associative")
    return trace_gram(x).nondegenerate


def killing_gram(x: MulTable) -> GramForm:
    """Gram of Tr(R_a R_b), by the coordinate formula and by operators.

    D(i, j) = sum_{q,r} x^r_{q,i} x^q_{r,j}; the two routes must agree.
    """
    n = x.dim
    rights = [right_operator(x, basis_vector(n, i)) for i in range(n)]
    for i, j in product(range(n), repeat=2):
        coordinate = sum((x.c(q, i, r) * x.c(r, j, q) for q, r in product(range(n), repeat=2)), QQ.zero)
        operator = trace(matmul(rights[i], rights[j]))
        if coordinate != operator:
            raise InconsistentComputationError(
                f"Killing form at ({i},{j}): coordinate formula gives {coordinate}, operators give {operator}"
            )
    return _gram("killing", n, lambda i, j: trace(matmul(rights[i], rights[j])), is_leibniz(x))


def ad_killing_gram(x: MulTable) -> GramForm:
    """Gram of Tr(ad_a ad_b) with ad = L - R."""
    n = x.dim
    ads = [
        add(left_operator(x, basis_vector(n, i)), scale(right_operator(x, basis_vector(n, i)), -1))
        for i in range(n)
    ]
    return _gram("ad_killing", n, lambda i, j: trace(matmul(ads[i], ads[j])), is_lie(x))


def is_semisimple_lie_point(x: MulTable) -> bool:
    """det of the Killing Gram is nonzero; such a Leibniz point is necessarily Lie."""
    require(x, "leibniz")
    semisimple = killing_gram(x).nondegenerate
    if semisimple and not is_lie(x):
        raise InconsistentComputationError("nondegenerate Killing form at a Leibniz point that is not Lie")
    return semisimple


def modular_characters(x: MulTable) -> CharacterPair:
    """sigma_L(e_i) = Tr L_{e_i}, sigma_R(e_i) = Tr R_{e_i}.

    At Leibniz points both characters vanish on all products.
    """
    n = x.dim
    sigma_l = [trace(left_operator(x, basis_vector(n, i))) for i in range(n)]
    sigma_r = [trace(right_operator(x, basis_vector(n, i))) for i in range(n)]
    if is_leibniz(x):
        for i, j in product(range(n), repeat=2):
            ab = multiply(x, basis_vector(n, i), basis_vector(n, j))
            for name, sigma in (("sigma_R", sigma_r), ("sigma_L", sigma_l)):
                if sum((s * a for s, a in zip(sigma, ab)), QQ.zero):
                    raise InconsistentComputationError(f"{name} does not vanish on e_{i} e_{j}")
    return CharacterPair(sigma_l, sigma_r)


def is_right_unimodular(x: MulTable) -> bool:
    return not any(modular_characters(x).sigma_R)


def is_left_unimodular(x: MulTable) -> bool:
    return not any(modular_characters(x).sigma_L)


def squares(x: MulTable) -> list:
    """mu(e_i + e_j, e_i + e_j) for i <= j; they span the squares by polarization."""
    n = x.dim
    out = []
    for i, j in combinations_with_replacement(range(n), 2):
        a = [QQ.one if k in (i, j) else QQ.zero for k in range(n)]
        out.append(multiply(x, a, a))
    return out


def right_annihilator(x: MulTable) -> list:
    """Basis of {v : R_v = 0}."""
    n = x.dim
    entries = {}
    for (q, j, l), v in x.nonzero():
        # R_{e_j} sends e_q to sum_l x^l_{qj} e_l
        entries[(l * n + q, j)] = v
    return kernel_basis(sparse_matrix(entries, (n * n, n)))


def leibniz_kernel(x: MulTable) -> list:
    """Echelon basis of the span of squares; inside the right annihilator at Leibniz points."""
    basis = row_space_basis([s for s in squares(x) if any(s)], x.dim)
    if basis and is_leibniz(x) and not span_contains(right_annihilator(x), basis):
        raise InconsistentComputationError("Leibniz kernel is not contained in the right annihilator")
    return basis


def squares_in_radical(x: MulTable) -> bool:
    """Every square is annihilated by the Killing Gram matrix."""
    gram = killing_gram(x).gram
    return all(not any(mat_vec(gram, s)) for s in squares(x))


def operator_identities_check(x: MulTable) -> OperatorCheck:
    """R_{ab} = -[R_a, R_b] and [R_b, L_a] = L_{ab} on all basis pairs."""
    n = x.dim
    lefts = [left_operator(x, basis_vector(n, i)) for i in range(n)]
    rights = [right_operator(x, basis_vector(n, i)) for i in range(n)]

    def commutator(a, b):
        return add(matmul(a, b), scale(matmul(b, a), -1))

    for i, j in product(range(n), repeat=2):
        ab = multiply(x, basis_vector(n, i), basis_vector(n, j))
        if to_rows(right_operator(x, ab)) != to_rows(scale(commutator(rights[i], rights[j]), -1)):
            return OperatorCheck(False, f"R_(e{i} e{j}) != -[R_e{i}, R_e{j}]")
        if to_rows(commutator(rights[j], lefts[i])) != to_rows(left_operator(x, ab)):
            return OperatorCheck(False, f"[R_e{j}, L_e{i}] != L_(e{i} e{j})")
    return OperatorCheck(True)


def covariant_gram(g, gram):
    """g^-t D g^-1, the expected Gram after transporting the point by g."""
    gi = inverse(g)
    return matmul(matmul(transpose(gi), gram), gi)
