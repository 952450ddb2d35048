"""
Bilinear incidence maps on V^{2,1} and the fibres they cut out.

beta(x, y) composes two products associatively, B(x, y) in the right Leibniz
shape; beta(x, x) and B(x, x) recover the associator and the Leibniz residual.
The quadrics q_phi are the coordinates of beta, indexed by the dual basis of
V^{3,1}; their symmetrizations cut out the associative fibres.
"""

from collections import defaultdict
from dataclasses import dataclass
from itertools import product

from sympy.polys.domains import QQ

from algebra_core import MulTable, Tensor3, idx, idx3, same_dim
from exact_linalg import kernel_basis, sparse_matrix, symmetrize


def _empty(n: int) -> list:
    return [QQ.zero] * n**4


def beta(x: MulTable, y: MulTable) -> Tensor3:
    """beta(x,y)^m_{ijk} = sum_l x^l_{ij} y^m_{lk} - sum_l y^m_{il} x^l_{jk}."""
    n = same_dim(x, y)
    out = _empty(n)
    for (i, j, l), a in x.nonzero():
        for k, m in product(range(n), repeat=2):
            b = y.c(l, k, m)
            if b:
                out[idx3(n, i, j, k, m)] += a * b
    for (j, k, l), a in x.nonzero():
        for i, m in product(range(n), repeat=2):
            b = y.c(i, l, m)
            if b:
                out[idx3(n, i, j, k, m)] -= a * b
    return Tensor3(n, tuple(out))


def b_bilinear(x: MulTable, y: MulTable) -> Tensor3:
    """B(x,y)^m_{ijk} = sum_l x^l_{ij} y^m_{lk} - x^l_{ik} y^m_{lj} - x^m_{il} y^l_{jk}."""
    n = same_dim(x, y)
    out = _empty(n)
    for (i, j, l), a in x.nonzero():
        for k, m in product(range(n), repeat=2):
            b = y.c(l, k, m)
            if b:
                out[idx3(n, i, j, k, m)] += a * b
    for (i, k, l), a in x.nonzero():
        for j, m in product(range(n), repeat=2):
            b = y.c(l, j, m)
            if b:
                out[idx3(n, i, j, k, m)] -= a * b
    for (i, l, m), a in x.nonzero():
        for j, k in product(range(n), repeat=2):
            b = y.c(j, k, l)
            if b:
                out[idx3(n, i, j, k, m)] -= a * b
    return Tensor3(n, tuple(out))


def leib_pair_residual(x: MulTable, y: MulTable) -> Tensor3:
    """B(x,y) + B(y,x); its vanishing makes y tangent to the Leibniz variety at x."""
    return b_bilinear(x, y) + b_bilinear(y, x)


def hochschild_pair_residual(x: MulTable, y: MulTable) -> Tensor3:
    """beta(x,y) + beta(y,x)."""
    return beta(x, y) + beta(y, x)


@dataclass(frozen=True)
class QFamily:
    """The n^4 quadratic forms q_phi on V^{2,1}, phi = (i, j, k, m).

    beta(x,y)^m_{ijk} = x^t q_phi y; every nonzero entry is +1 or -1.
    """
    dim: int

    def phis(self):
        return product(range(self.dim), repeat=4)

    def entries(self, phi: tuple) -> dict:
        """Nonzero entries {(row, col): int} of q_phi."""
        n = self.dim
        i, j, k, m = phi
        acc = defaultdict(int)
        for l in range(n):
            acc[(idx(n, i, j, l), idx(n, l, k, m))] += 1
            acc[(idx(n, j, k, l), idx(n, i, l, m))] -= 1
        return {key: v for key, v in acc.items() if v}

    def matrix(self, phi: tuple):
        size = self.dim**3
        return sparse_matrix(self.entries(phi), (size, size))

    def sym_matrix(self, phi: tuple):
        return symmetrize(self.matrix(phi))

    def pairing(self, phi: tuple, x: MulTable, y: MulTable):
        """x^t q_phi y."""
        total = QQ.zero
        xs, ys = x.coeffs, y.coeffs
        for (r, c), v in self.entries(phi).items():
            if xs[r] and ys[c]:
                total += v * xs[r] * ys[c]
        return total


def build_q_family(n: int) -> QFamily:
    if n < 1:
        raise ValueError(f"dimension must be at least 1, got {n}")
    return QFamily(n)


def incidence_member_as(x: MulTable, y: MulTable) -> bool:
    """True iff x^t q_phi^sym y = 0 for every phi."""
    n = same_dim(x, y)
    q = build_q_family(n)
    return all(q.pairing(phi, x, y) + q.pairing(phi, y, x) == 0 for phi in q.phis())


@dataclass(frozen=True)
class FiberBasis:
    point: MulTable
    vectors: list

    @property
    def dim(self) -> int:
        return len(self.vectors)


def fiber_system(x: MulTable):
    """n^4 x n^3 matrix whose phi-row is x^t q_phi^sym."""
    n = x.dim
    q = build_q_family(n)
    half = QQ(1, 2)
    entries = defaultdict(lambda: QQ.zero)
    for row, phi in enumerate(q.phis()):
        for (r, c), v in q.entries(phi).items():
            if x.coeffs[r]:
                entries[(row, c)] += half * v * x.coeffs[r]
            if x.coeffs[c]:
                entries[(row, r)] += half * v * x.coeffs[c]
    return sparse_matrix(dict(entries), (n**4, n**3))


def fiber_as(x: MulTable) -> FiberBasis:
    """Kernel of y -> (x^t q_phi^sym y)_phi."""
    return FiberBasis(x, kernel_basis(fiber_system(x)))


def _pair_matrix(x: MulTable, pair):
    n = x.dim
    entries = {}
    for col in range(n**3):
        e = MulTable(n, tuple(QQ.one if k == col else QQ.zero for k in range(n**3)))
        for row, v in enumerate(pair(x, e).coeffs):
            if v:
                entries[(row, col)] = v
    return sparse_matrix(entries, (n**4, n**3))


def leib_pair_matrix(x: MulTable):
    """Matrix of y -> B(x,y) + B(y,x), columns in canonical order."""
    return _pair_matrix(x, leib_pair_residual)


def hochschild_pair_matrix(x: MulTable):
    """Matrix of y -> beta(x,y) + beta(y,x)."""
    return _pair_matrix(x, hochschild_pair_residual)


def fiber_leib(x: MulTable) -> FiberBasis:
    """Kernel of y -> B(x,y) + B(y,x)."""
    return FiberBasis(x, kernel_basis(leib_pair_matrix(x)))
