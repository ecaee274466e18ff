"""Shared fixtures: named matroids and random generators."""

from __future__ import annotations

import random
from itertools import combinations

from shiftcodim.expected import cyclic_interval
from shiftcodim.matroid import Matroid, RankCondition, elements, mask
from shiftcodim.errors import NotAMatroid

PAPPUS_LINES = ["123", "456", "789", "157", "168", "247", "269", "348", "359"]


def line_mask(s: str) -> int:
    return mask(int(c) for c in s)


def square() -> Matroid:
    return Matroid.from_rank_conditions(
        8, [RankCondition(cyclic_interval(i, i + 2, 8), 2) for i in (1, 3, 5, 7)], 3
    )


def pappus() -> Matroid:
    return Matroid.from_rank_conditions(9, [RankCondition(line_mask(s), 2) for s in PAPPUS_LINES], 3)


def example_positroid() -> Matroid:
    return Matroid.from_rank_conditions(
        6, [RankCondition(cyclic_interval(i, i + 2, 6), 2) for i in (1, 3, 5)], 3
    )


def v_matroid() -> Matroid:
    bad = {line_mask("123"), line_mask("345")}
    return Matroid.from_bases(5, [mask(c) for c in combinations(range(1, 6), 3) if mask(c) not in bad])


def parallel_13_24() -> Matroid:
    return Matroid.from_bases(4, [line_mask(s) for s in ("12", "14", "23", "34")])


def random_basis_matroid(rng: random.Random, max_n: int = 7, min_n: int = 1) -> Matroid:
    """Draw random basis families until one passes validation.

    Families are all ``k``-sets minus a few, which passes often enough and
    still reaches plenty of non-uniform matroids.
    """
    while True:
        n = rng.randint(min_n, max_n)
        k = rng.randint(0, n)
        ksets = [mask(c) for c in combinations(range(1, n + 1), k)]
        drop = rng.randint(0, min(len(ksets) - 1, 6))
        bases = rng.sample(ksets, len(ksets) - drop)
        try:
            return Matroid.from_bases(n, bases)
        except NotAMatroid:
            continue


def random_condition_matroid(rng: random.Random, max_n: int = 6, min_n: int = 1) -> Matroid:
    """Matroids generated by a few random rank conditions; more structure than the above."""
    while True:
        n = rng.randint(min_n, max_n)
        conds = []
        for _ in range(rng.randint(0, 3)):
            S = rng.randint(1, (1 << n) - 1)
            conds.append(RankCondition(S, rng.randint(0, S.bit_count())))
        k = rng.randint(0, n)
        try:
            return Matroid.from_rank_conditions(n, conds, k)
        except NotAMatroid:
            continue


def random_matroid(rng: random.Random, max_n: int = 6) -> Matroid:
    if rng.random() < 0.5:
        return random_basis_matroid(rng, max_n)
    return random_condition_matroid(rng, max_n)


def components_of(M: Matroid, S: int) -> list[int]:
    """Connected components of ``M|S`` as masks in ``M``'s labels."""
    es = elements(S)
    return [mask(es[t - 1] for t in elements(c)) for c in M.restrict(S).connected_components]


def contraction_components(M: Matroid, S: int) -> list[int]:
    rest = elements(M.full ^ S)
    return [mask(rest[t - 1] for t in elements(c)) for c in M.contract(S).connected_components]
