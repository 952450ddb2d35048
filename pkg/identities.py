"""
Variety membership: associative, commutative, Leibniz and Lie.

Residuals are evaluated from the defining identities on basis vectors through
algebra_core.multiply, not from the coordinate formulas used by incidence and
cohomology, so each side checks the other.
"""

from dataclasses import dataclass
from itertools import product

from sympy.polys.domains import QQ

from algebra_core import MulTable, Tensor3, basis_vector, idx3, multiply
from exact_linalg import format_scalar

KINDS = ("associative", "commutative", "symmetric", "skew", "leibniz", "jacobi", "lie")


class OffVarietyError(ValueError):
    """A point lies off the variety an operation requires.

    `kind` names the failed identity and `witness` the first nonzero residual
    coordinate as (index tuple, value).
    """

    def __init__(self, kind: str, witness=None, message: str | None = None):
        self.kind = kind
        self.witness = witness
        if message is None:
            message = f"not {kind}"
            if witness is not None:
                coords, value = witness
                message += f": residual at {coords} is {format_scalar(value)}"
        super().__init__(message)


class InconsistentComputationError(RuntimeError):
    """Two routes to the same exact quantity disagree. Always a bug."""


@dataclass(frozen=True)
class ResidualReport:
    kind: str
    violations: int  # nonzero residual coordinates
    is_member: bool
    witness: tuple | None = None

    def as_dict(self) -> dict:
        d = {"kind": self.kind, "violations": self.violations, "is_member": self.is_member}
        if self.witness is not None:
            coords, value = self.witness
            d["witness"] = {"index": list(coords), "value": format_scalar(value)}
        return d


def _products(x: MulTable) -> list:
    """mu(e_i, e_j) for all i, j, as rows[i][j]."""
    n = x.dim
    rows = [[[QQ.zero] * n for _ in range(n)] for _ in range(n)]
    for (i, j, l), v in x.nonzero():
        rows[i][j][l] = v
    return rows


def _trilinear(x: MulTable, expr) -> Tensor3:
    """Tensor3 of expr(prod, i, j, k) -> vector, over all basis triples."""
    n = x.dim
    prod = _products(x)
    coeffs = [QQ.zero] * n**4
    for i, j, k in product(range(n), repeat=3):
        vec = expr(prod, i, j, k)
        for m, v in enumerate(vec):
            if v:
                coeffs[idx3(n, i, j, k, m)] = v
    return Tensor3(n, tuple(coeffs))


def _sub(a: list, b: list) -> list:
    return [p - q for p, q in zip(a, b)]


def assoc_residual(x: MulTable) -> Tensor3:
    """(ab)c - a(bc) on basis triples."""
    n = x.dim

    def assoc(prod, i, j, k):
        left = multiply(x, prod[i][j], basis_vector(n, k))
        right = multiply(x, basis_vector(n, i), prod[j][k])
        return _sub(left, right)

    return _trilinear(x, assoc)


def leibniz_residual(x: MulTable) -> Tensor3:
    """(ab)c - (ac)b - a(bc): right Leibniz, R_c is a derivation."""
    n = x.dim

    def leib(prod, i, j, k):
        ab_c = multiply(x, prod[i][j], basis_vector(n, k))
        ac_b = multiply(x, prod[i][k], basis_vector(n, j))
        a_bc = multiply(x, basis_vector(n, i), prod[j][k])
        return [p - q - r for p, q, r in zip(ab_c, ac_b, a_bc)]

    return _trilinear(x, leib)


def jacobi_residual(x: MulTable) -> Tensor3:
    """(ab)c + (bc)a + (ca)b."""
    n = x.dim

    def jac(prod, i, j, k):
        terms = (
            multiply(x, prod[i][j], basis_vector(n, k)),
            multiply(x, prod[j][k], basis_vector(n, i)),
            multiply(x, prod[k][i], basis_vector(n, j)),
        )
        return [a + b + c for a, b, c in zip(*terms)]

    return _trilinear(x, jac)


def symmetry_residual(x: MulTable) -> MulTable:
    """x_{ij}^l - x_{ji}^l."""
    n = x.dim
    return MulTable(n, tuple(x.c(i, j, l) - x.c(j, i, l) for i, j, l in product(range(n), repeat=3)))


def skew_residual(x: MulTable) -> MulTable:
    """x_{ij}^l + x_{ji}^l."""
    n = x.dim
    return MulTable(n, tuple(x.c(i, j, l) + x.c(j, i, l) for i, j, l in product(range(n), repeat=3)))


def is_associative(x: MulTable) -> bool:
    return assoc_residual(x).is_zero()


def is_symmetric(x: MulTable) -> bool:
    n = x.dim
    return all(x.c(i, j, l) == x.c(j, i, l) for i, j, l in product(range(n), repeat=3) if i < j)


def is_skew(x: MulTable) -> bool:
    return skew_residual(x).is_zero()


def is_commutative(x: MulTable) -> bool:
    """Commutative associative."""
    return is_symmetric(x) and is_associative(x)


def is_leibniz(x: MulTable) -> bool:
    return leibniz_residual(x).is_zero()


def is_lie(x: MulTable) -> bool:
    return is_skew(x) and is_leibniz(x)


def _report(kind: str, residual) -> ResidualReport:
    nonzero = list(residual.nonzero())
    return ResidualReport(kind, len(nonzero), not nonzero, nonzero[0] if nonzero else None)


def residual_report(x: MulTable, kind: str) -> ResidualReport:
    """Residual summary for one identity kind (see KINDS)."""
    if kind == "associative":
        return _report(kind, assoc_residual(x))
    if kind == "symmetric":
        return _report(kind, symmetry_residual(x))
    if kind == "skew":
        return _report(kind, skew_residual(x))
    if kind == "leibniz":
        return _report(kind, leibniz_residual(x))
    if kind == "jacobi":
        return _report(kind, jacobi_residual(x))
    if kind == "commutative":
        sym, assoc = _report("symmetric", symmetry_residual(x)), _report("associative", assoc_residual(x))
        witness = sym.witness if sym.witness is not None else assoc.witness
        return ResidualReport(kind, sym.violations + assoc.violations, sym.is_member and assoc.is_member, witness)
    if kind == "lie":
        skew, leib = _report("skew", skew_residual(x)), _report("leibniz", leibniz_residual(x))
        witness = skew.witness if skew.witness is not None else leib.witness
        return ResidualReport(kind, skew.violations + leib.violations, skew.is_member and leib.is_member, witness)
    raise ValueError(f"unknown identity kind {kind!r}; choose from {', '.join(KINDS)}")


def membership(x: MulTable) -> dict:
    """All membership flags of a point, keyed by kind."""
    return {kind: residual_report(x, kind).is_member for kind in KINDS}


def require(x: MulTable, kind: str) -> None:
    """Raise OffVarietyError unless x satisfies `kind`."""
    report = residual_report(x, kind)
    if not report.is_member:
        raise OffVarietyError(kind, report.witness)

