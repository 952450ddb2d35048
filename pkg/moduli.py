"""
Tangent spaces, rigidity verdicts and the stratum invariant.

At a point x of one of the four varieties:
    variety tangent = Z^2 of the matching theory
    orbit tangent   = B^2 = im d1
    stack tangent   = Z^2 / B^2
The orbit is open (at tangent level) and the moduli point rigid exactly when
the stack tangent vanishes.
"""

import logging
import random
from dataclasses import dataclass

from sympy.polys.domains import QQ

from algebra_core import MulTable, idx1, transport
from cohomology import cocycles, complex_slice, d1_matrix, summarize
from exact_linalg import (
    RATIONAL, Subspace, add, column_space_basis, determinant, identity, mat_vec, rank, scale,
    span_contains, sparse_matrix, trace,
)
from forms import is_separable, killing_gram
from identities import InconsistentComputationError, require

log = logging.getLogger("moduli")

# Short variety names map onto the theory computing their tangent spaces.
THEORY_ALIASES = {
    "alg": "hochschild",
    "comm": "harrison",
    "leib": "leibniz",
    "lie": "ce",
    "hochschild": "hochschild",
    "harrison": "harrison",
    "leibniz": "leibniz",
    "ce": "ce",
}
VARIETY_NAMES = {"hochschild": "alg", "harrison": "comm", "leibniz": "leib", "ce": "lie"}


def resolve_theory(theory: str) -> str:
    try:
        return THEORY_ALIASES[theory]
    except KeyError:
        raise ValueError(f"unknown theory {theory!r}; choose from {', '.join(THEORY_ALIASES)}")


@dataclass(frozen=True)
class RigidityVerdict:
    theory: str
    variety_tangent_dim: int
    orbit_tangent_dim: int
    stack_tangent_dim: int
    orbit_open: bool
    rigid_in_moduli: bool
    predicted_dim: int | None = None
    predicted_by: str | None = None
    advisory: bool = False


@dataclass(frozen=True)
class StratumInvariant:
    theory: str
    rank_d2: int
    c2_dim: int
    c3_dim: int


def variety_tangent(x: MulTable, theory: str) -> Subspace:
    """Z^2 of the matching theory, as full C^2 vectors."""
    return cocycles(complex_slice(x, resolve_theory(theory)))


def orbit_tangent(x: MulTable, theory: str) -> Subspace:
    """im d1, as full C^2 vectors.

    The first-order transport along the elementary direction E_00 is a
    tangent vector to the orbit and must land in the span.
    """
    s = complex_slice(x, resolve_theory(theory))
    basis = column_space_basis(s.d1)
    if s.inclusion is not None:
        basis = [mat_vec(s.inclusion, v) for v in basis]
    direction = sparse_matrix({(0, 0): 1}, (x.dim, x.dim))
    if not span_contains(basis, [transport_derivative(x, direction)]):
        raise InconsistentComputationError(f"first-order transport of {x.name or 'input'} leaves im d1")
    return Subspace(len(basis), basis)


def _prediction(x: MulTable, theory: str, center_dim: int):
    """Closed-form tangent dimension on the loci where one is known."""
    n = x.dim
    if theory == "hochschild" and is_separable(x):
        return n * n - n + center_dim, "separable"
    if theory == "harrison" and is_separable(x):
        return n * n, "etale"
    if theory == "ce" and killing_gram(x).nondegenerate:
        return n * n - n, "semisimple"
    return None, None


def rigidity_verdict(x: MulTable, theory: str, field: str = RATIONAL) -> RigidityVerdict:
    theory = resolve_theory(theory)
    summary = summarize(complex_slice(x, theory), field)
    variety, orbit = summary.z2, summary.b2
    predicted, basis = None, None
    if field == RATIONAL:
        predicted, basis = _prediction(x, theory, summary.center_dim)
        if predicted is not None and predicted != variety:
            raise InconsistentComputationError(
                f"{theory} tangent dimension {variety} differs from the {basis} prediction {predicted}"
            )
    verdict = RigidityVerdict(
        theory=VARIETY_NAMES[theory],
        variety_tangent_dim=variety,
        orbit_tangent_dim=orbit,
        stack_tangent_dim=variety - orbit,
        orbit_open=variety == orbit,
        rigid_in_moduli=variety == orbit,
        predicted_dim=predicted,
        predicted_by=basis,
        advisory=field != RATIONAL,
    )
    log.info(f"{x.name or 'input'} [{verdict.theory}]: tangent {variety}, orbit {orbit}, rigid={verdict.rigid_in_moduli}")
    return verdict


def stratum_invariant(x: MulTable, theory: str) -> StratumInvariant:
    """Exact rank of the degree-2 differential, constant along orbits."""
    theory = resolve_theory(theory)
    s = complex_slice(x, theory)
    return StratumInvariant(VARIETY_NAMES[theory], rank(s.d2), s.d2.shape[1], s.d2.shape[0])


def semisimple_locus_check(x: MulTable) -> bool:
    """det of the Killing Gram is nonzero; such points must be rigid Lie points."""
    require(x, "leibniz")
    if not killing_gram(x).nondegenerate:
        return False
    verdict = rigidity_verdict(x, "lie")
    if not (verdict.orbit_open and verdict.rigid_in_moduli):
        raise InconsistentComputationError(f"semisimple point with stack tangent {verdict.stack_tangent_dim}")
    return True


def block_profile_prediction(profile) -> int:
    """Tangent dimension n^2 - n + k of M_{r1} x ... x M_{rk}."""
    n = sum(r * r for r in profile)
    return n * n - n + len(profile)


# ---------------------------------------------------------------------------
# First-order transport
# ---------------------------------------------------------------------------
def _nodes():
    yield 0
    t = 1
    while True:
        yield t
        yield -t
        t += 1


def _derivative_weights(nodes: list) -> list:
    """w_k with p'(0) = sum_k w_k p(t_k) for every polynomial of degree < len(nodes)."""
    weights = []
    for k, tk in enumerate(nodes):
        others = [t for m, t in enumerate(nodes) if m != k]
        denom = QQ.one
        for t in others:
            denom *= QQ(tk - t)
        # L_k(t) = prod (t - t_m) / denom, so L_k'(0) = e_{d-1}(-t_m) / denom
        total = QQ.zero
        for skip in range(len(others)):
            term = QQ.one
            for m, t in enumerate(others):
                if m != skip:
                    term *= QQ(-t)
            total += term
        weights.append(total / denom)
    return weights


def transport_derivative(x: MulTable, f) -> list:
    """d/dt transport(1 + t f, x) at t = 0, from transport and determinant alone.

    det(g_t)^2 * transport(g_t, x) is a polynomial in t of degree at most
    2n - 1; it is interpolated exactly at 2n invertible nodes.
    """
    n = x.dim
    f = f.convert_to(QQ)
    one = identity(n)
    nodes, values = [], []
    for t in _nodes():
        g = add(one, scale(f, t))
        det = determinant(g)
        if not det:
            continue
        moved = transport(g, x).vector()
        nodes.append(t)
        values.append([det * det * c for c in moved])
        if len(nodes) == 2 * n:
            break
    weights = _derivative_weights(nodes)
    poly_deriv = [sum((w * v[k] for w, v in zip(weights, values)), QQ.zero) for k in range(n**3)]
    tr = trace(f)
    return [d - 2 * tr * c for d, c in zip(poly_deriv, x.vector())]


def f_vector(f) -> list:
    """C^1 coordinates of an n x n matrix f: idx1(a, b) holds f[b][a]."""
    n = f.shape[0]
    vec = [QQ.zero] * (n * n)
    for (b, a), v in f.convert_to(QQ).to_sparse().to_dok().items():
        vec[idx1(n, a, b)] = v
    return vec


def transport_derivative_check(x: MulTable, f) -> bool:
    """First-order transport equals -d1 f; holds for every bilinear product."""
    expected = [-v for v in mat_vec(d1_matrix(x), f_vector(f))]
    return transport_derivative(x, f) == expected


def random_endomorphism(n: int, rng: random.Random, spread: int = 2):
    return sparse_matrix(
        {(i, j): rng.randint(-spread, spread) for i in range(n) for j in range(n)}, (n, n)
    )
