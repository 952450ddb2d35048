"""
Orbit counts on the nice loci.

N_assoc(n): semisimple associative algebras of dimension n over an
algebraically closed field of characteristic 0, i.e. multisets
{r_1 >= ... >= r_k >= 1} with sum r_s^2 = n.

N_lie(n): semisimple Lie algebras of dimension n, i.e. multisets of simple
Lie algebras (up to isomorphism) whose dimensions sum to n.

Usage:
    from counting import n_assoc, n_lie
    n_lie(14, witnesses=True).witnesses   # [('G2',), ('A2', 'A1', 'A1')]
"""

from dataclasses import dataclass
from typing import NamedTuple

EXCEPTIONAL = (("G2", 14), ("F4", 52), ("E6", 78), ("E7", 133), ("E8", 248))


class SimpleLie(NamedTuple):
    label: str
    dim: int


@dataclass(frozen=True)
class CountResult:
    n: int
    value: int
    witnesses: list | None = None


def _families():
    # (letter, lowest rank without isomorphism coincidences, dimension)
    yield "A", 1, lambda r: r * r + 2 * r
    yield "B", 2, lambda r: 2 * r * r + r
    yield "C", 3, lambda r: 2 * r * r + r
    yield "D", 4, lambda r: 2 * r * r - r


def simple_lie_catalog(bound: int) -> list:
    """Simple Lie algebras of dimension <= bound, sorted by (dim, label)."""
    entries = [SimpleLie(label, dim) for label, dim in EXCEPTIONAL if dim <= bound]
    for letter, lowest, dim_of in _families():
        r = lowest
        while dim_of(r) <= bound:
            entries.append(SimpleLie(f"{letter}{r}", dim_of(r)))
            r += 1
    return sorted(entries, key=lambda e: (e.dim, e.label))


def _check(n: int) -> None:
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")


def _coin_count(n: int, parts: list) -> int:
    ways = [1] + [0] * n
    for p in parts:
        for total in range(p, n + 1):
            ways[total] += ways[total - p]
    return ways[n]


def enumerate_assoc(n: int) -> list:
    """All square partitions of n as tuples r_1 >= ... >= r_k, decreasing lexicographic."""
    _check(n)

    def gen(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for r in range(largest, 0, -1):
            if r * r <= remaining:
                for rest in gen(remaining - r * r, r):
                    yield (r,) + rest

    return list(gen(n, int(n**0.5) + 1))


def enumerate_lie(n: int) -> list:
    """All multisets of simple Lie algebras of total dimension n, as label tuples."""
    _check(n)
    catalog = simple_lie_catalog(n)

    def gen(remaining, top):
        if remaining == 0:
            yield ()
            return
        for k in range(top, -1, -1):
            if catalog[k].dim <= remaining:
                for rest in gen(remaining - catalog[k].dim, k):
                    yield (catalog[k].label,) + rest

    return list(gen(n, len(catalog) - 1))


def n_assoc(n: int, witnesses: bool = False) -> CountResult:
    _check(n)
    squares, r = [], 1
    while r * r <= n:
        squares.append(r * r)
        r += 1
    value = _coin_count(n, squares)
    return CountResult(n, value, enumerate_assoc(n) if witnesses else None)


def n_lie(n: int, witnesses: bool = False) -> CountResult:
    """Equal-dimensional entries (B_r and C_r for r >= 3) count separately."""
    _check(n)
    value = _coin_count(n, [e.dim for e in simple_lie_catalog(n)])
    return CountResult(n, value, enumerate_lie(n) if witnesses else None)
