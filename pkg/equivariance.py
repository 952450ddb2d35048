"""
Seeded property batteries for the GL(V) action.

Every law draws random invertible g (and random tables) from a
random.Random seeded by (seed, law, dimension), so a battery run is fully
determined by its seed.
"""

import logging
import random
from dataclasses import dataclass, field
from itertools import product

from sympy.polys.domains import QQ

from algebra_core import (
    MulTable, abelian, direct_sum, dual_numbers, induced_action, leibniz2, sl2, split_etale, transport,
    transport_tensor3,
)
from cohomology import THEORIES, VARIETY_OF, cohomology_summary
from exact_linalg import add, determinant, entries, inverse, matmul, scale, sparse_matrix, transpose, zeros
from forms import covariant_gram, killing_gram, trace_gram
from identities import is_associative, membership, residual_report
from incidence import beta, build_q_family, incidence_member_as
from moduli import stratum_invariant

log = logging.getLogger("equivariance")

DEFAULT_DIMS = (2, 3)
DEFAULT_TRIALS = 20


@dataclass
class LawResult:
    name: str
    dim: int
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)


@dataclass
class BatteryReport:
    seed: int
    dims: tuple
    trials: int
    laws: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(law.passed for law in self.laws)


def fixtures(n: int) -> list:
    """Builders of dimension n used as on-variety test points."""
    if n == 2:
        return [split_etale(2), dual_numbers(), leibniz2(), abelian(2)]
    if n == 3:
        return [sl2(), split_etale(3), abelian(3), direct_sum(dual_numbers(), split_etale(1))]
    return [split_etale(n), abelian(n)]


def random_invertible(n: int, rng: random.Random, spread: int = 2):
    while True:
        g = sparse_matrix({(i, j): rng.randint(-spread, spread) for i in range(n) for j in range(n)}, (n, n))
        if determinant(g):
            return g


def random_table(n: int, rng: random.Random, density: float = 0.3) -> MulTable:
    coeffs = [QQ(rng.choice((-1, 1))) if rng.random() < density else QQ.zero for _ in range(n**3)]
    return MulTable(n, tuple(coeffs), "random")


def _law_rng(seed: int, name: str, n: int) -> random.Random:
    return random.Random(f"{seed}:{name}:{n}")


# ---------------------------------------------------------------------------
# Laws
# ---------------------------------------------------------------------------
def law_transport_action(result: LawResult, rng: random.Random, trials: int) -> None:
    n = result.dim
    one = sparse_matrix({(i, i): 1 for i in range(n)}, (n, n))
    for _ in range(trials):
        x = random_table(n, rng)
        g, h = random_invertible(n, rng), random_invertible(n, rng)
        result.checked += 1
        if transport(one, x) != x:
            result.fail("identity does not act trivially")
        if transport(g, transport(h, x)) != transport(matmul(g, h), x):
            result.fail("g.(h.x) != (gh).x")


def law_beta_equivariance(result: LawResult, rng: random.Random, trials: int) -> None:
    n = result.dim
    for _ in range(trials):
        x, y = random_table(n, rng), random_table(n, rng)
        g = random_invertible(n, rng)
        result.checked += 1
        if beta(transport(g, x), transport(g, y)) != transport_tensor3(g, beta(x, y)):
            result.fail("beta(g.x, g.y) != g.beta(x, y)")


def law_q_congruence(result: LawResult, rng: random.Random, trials: int) -> None:
    """q_{g.phi} = (g^-1)^t q_phi g^-1 with the induced actions on V^{2,1} and V^{3,1}."""
    n = result.dim
    q = build_q_family(n)
    all_phis = list(q.phis())
    size = n**3
    for _ in range(trials):
        g = random_invertible(n, rng)
        gi = inverse(g)
        on_pairs = induced_action(gi, n, inputs=2)
        on_triples = entries(induced_action(gi, n, inputs=3))
        phis = all_phis if n == 2 else rng.sample(all_phis, 3)
        for phi in phis:
            row = ((phi[0] * n + phi[1]) * n + phi[2]) * n + phi[3]
            moved = zeros((size, size))
            for (r, psi_flat), coef in on_triples.items():
                if r == row:
                    psi = (psi_flat // n**3, (psi_flat // n**2) % n, (psi_flat // n) % n, psi_flat % n)
                    moved = add(moved, scale(q.matrix(psi), coef))
            expected = matmul(matmul(transpose(on_pairs), q.matrix(phi)), on_pairs)
            result.checked += 1
            if entries(moved) != entries(expected):
                result.fail(f"congruence fails at phi={phi}")


def _gram_covariance(result: LawResult, rng: random.Random, trials: int, gram_of, name: str) -> None:
    n = result.dim
    points = fixtures(n)
    for t in range(trials):
        x = points[t % len(points)] if t < len(points) else random_table(n, rng)
        g = random_invertible(n, rng)
        before, after = gram_of(x), gram_of(transport(g, x))
        result.checked += 1
        if entries(after.gram) != entries(covariant_gram(g, before.gram)):
            result.fail(f"{name} Gram of {x.name} is not g^-t D g^-1")
        det_g = determinant(g)
        if after.discriminant * det_g * det_g != before.discriminant:
            result.fail(f"{name} discriminant of {x.name} does not scale by det(g)^-2")


def law_killing_covariance(result: LawResult, rng: random.Random, trials: int) -> None:
    _gram_covariance(result, rng, trials, killing_gram, "Killing")


def law_trace_covariance(result: LawResult, rng: random.Random, trials: int) -> None:
    _gram_covariance(result, rng, trials, trace_gram, "trace")


def law_membership_invariance(result: LawResult, rng: random.Random, trials: int) -> None:
    n = result.dim
    for _ in range(trials):
        for x in fixtures(n):
            g = random_invertible(n, rng)
            result.checked += 1
            if membership(x) != membership(transport(g, x)):
                result.fail(f"membership of {x.name} changes under transport")


def _theories_of(x: MulTable) -> list:
    return [th for th in THEORIES if residual_report(x, VARIETY_OF[th]).is_member]


def law_cohomology_invariance(result: LawResult, rng: random.Random, trials: int) -> None:
    n = result.dim
    points = fixtures(n)
    for t in range(trials):
        x = points[t % len(points)]
        g = random_invertible(n, rng)
        moved = transport(g, x)
        for theory in _theories_of(x):
            a, b = cohomology_summary(x, theory), cohomology_summary(moved, theory)
            result.checked += 1
            if (a.z1, a.b1, a.z2, a.b2, a.center_dim) != (b.z1, b.b1, b.z2, b.b2, b.center_dim):
                result.fail(f"{theory} dimensions of {x.name} change under transport")


def law_stratum_rank_invariance(result: LawResult, rng: random.Random, trials: int) -> None:
    n = result.dim
    points = fixtures(n)
    for t in range(trials):
        x = points[t % len(points)]
        g = random_invertible(n, rng)
        for theory in _theories_of(x):
            result.checked += 1
            if stratum_invariant(x, theory).rank_d2 != stratum_invariant(transport(g, x), theory).rank_d2:
                result.fail(f"{theory} rank of d2 at {x.name} changes under transport")


def law_diagonal_slice(result: LawResult, rng: random.Random, trials: int) -> None:
    """(x, x) is an incidence pair exactly when x is associative."""
    n = result.dim
    points = list(fixtures(n))
    points += [random_table(n, rng) for _ in range(10 * trials if n == 2 else trials)]
    points += [transport(random_invertible(n, rng), x) for x in fixtures(n)]
    for x in points:
        result.checked += 1
        if incidence_member_as(x, x) != is_associative(x):
            result.fail(f"diagonal slice disagrees with associativity at {x.name}")


LAWS = {
    "transport_action": law_transport_action,
    "beta_equivariance": law_beta_equivariance,
    "q_congruence": law_q_congruence,
    "killing_covariance": law_killing_covariance,
    "trace_covariance": law_trace_covariance,
    "membership_invariance": law_membership_invariance,
    "cohomology_invariance": law_cohomology_invariance,
    "stratum_rank_invariance": law_stratum_rank_invariance,
    "diagonal_slice": law_diagonal_slice,
}


def run_battery(seed: int, dims=DEFAULT_DIMS, trials: int = DEFAULT_TRIALS, only=None) -> BatteryReport:
    """Run every law (or those named in `only`) at each dimension."""
    report = BatteryReport(seed, tuple(dims), trials)
    for n, (name, law) in product(dims, LAWS.items()):
        if only and name not in only:
            continue
        result = LawResult(name, n)
        law(result, _law_rng(seed, name, n), trials)
        status = "ok" if result.passed else f"FAILED ({len(result.failures)})"
        log.info(f"n={n} {name}: {result.checked} checks {status}")
        report.laws.append(result)
    return report
