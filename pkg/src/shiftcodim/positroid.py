"""Positroids: cyclic rank matrices and bounded affine permutations."""

from __future__ import annotations

import random
from math import comb
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConsistencyError,
    InconsistentPermutation,
    MalformedMatrix,
    MatroidError,
    NotAPositroid,
)
from .expected import cyclic_interval, cyclic_interval_family, ec_report
from .matroid import Matroid, RankCondition, _popcounts, generated_pseudo_rank


@dataclass(frozen=True)
class CyclicRankMatrix:
    """Ranks of cyclic intervals ``[i, j]`` with ``i`` in ``1..n`` and ``0 <= j - i <= n``.

    ``table[i - 1, d]`` is the rank of ``[i, i + d]``; the last column is ``k``.
    """

    n: int
    k: int
    table: np.ndarray

    def __call__(self, i: int, j: int) -> int:
        d = j - i
        if d == -1:
            return 0
        if d == -2:
            # lets a loop at i register a 1 at (i, i)
            return -1
        if not 0 <= d <= self.n:
            raise IndexError(f"({i},{j}) is outside the cyclic rank matrix")
        return int(self.table[(i - 1) % self.n, d])

    def first_row(self) -> list[int]:
        return [int(v) for v in self.table[0]]

    def is_one(self, i: int, j: int) -> bool:
        r = self(i, j)
        return r == self(i, j - 1) == self(i + 1, j) != self(i + 1, j - 1)

    def render(self) -> str:
        """Staggered layout: row ``i`` starts at column ``i``; ones carry a ``*``."""
        lines = []
        for i in range(1, self.n + 1):
            cells = ["   "] * (i - 1)
            for j in range(i, i + self.n + 1):
                mark = "*" if self.is_one(i, j) else " "
                cells.append(f"{self(i, j):>2}{mark}")
            lines.append("".join(cells).rstrip())
        return "\n".join(lines)


def cyclic_rank_matrix(M: Matroid) -> CyclicRankMatrix:
    n = M.n
    table = np.empty((n, n + 1), dtype=np.int64)
    for i in range(1, n + 1):
        for d in range(n + 1):
            table[i - 1, d] = M.rank(cyclic_interval(i, i + min(d, n - 1), n))
    table.flags.writeable = False
    return CyclicRankMatrix(n, M.k, table)


@dataclass(frozen=True)
class BoundedAffinePermutation:
    """Window ``pi(1), ..., pi(n)`` of an affine permutation with ``i <= pi(i) <= i + n``."""

    window: tuple[int, ...]

    def __post_init__(self):
        n = len(self.window)
        if n == 0:
            raise InconsistentPermutation("empty permutation")
        for i, p in enumerate(self.window, 1):
            if not i <= p <= i + n:
                raise InconsistentPermutation(f"pi({i}) = {p} is outside [{i}, {i + n}]")
        if len({p % n for p in self.window}) != n:
            raise InconsistentPermutation("values are not distinct mod n")

    @property
    def n(self) -> int:
        return len(self.window)

    @property
    def k(self) -> int:
        return sum(p - i for i, p in enumerate(self.window, 1)) // self.n

    def __call__(self, i: int) -> int:
        q, r = divmod(i - 1, self.n)
        return self.window[r] + q * self.n

    def __str__(self):
        return ",".join(map(str, self.window))


def affine_permutation(crm: CyclicRankMatrix) -> BoundedAffinePermutation:
    n = crm.n
    window = []
    for i in range(1, n + 1):
        hits = [j for j in range(i, i + n + 1) if crm.is_one(i, j)]
        if len(hits) != 1:
            raise MalformedMatrix(f"row {i} has {len(hits)} ones")
        window.append(hits[0])
    if len({p % n for p in window}) != n:
        raise MalformedMatrix("some column has more than one 1")
    return BoundedAffinePermutation(tuple(window))


def affine_length(pi: BoundedAffinePermutation) -> int:
    """Inversions ``i < j`` with ``i`` in ``[n]`` and ``pi(i) > pi(j)``."""
    n = pi.n
    # pi(j) >= j >= i + n >= pi(i) once j >= i + n
    return sum(1 for i in range(1, n + 1) for j in range(i + 1, i + n) if pi(i) > pi(j))


def _interval_ranks(pi: BoundedAffinePermutation) -> dict[tuple[int, int], int]:
    n = pi.n
    out = {}
    for i in range(1, n + 1):
        for j in range(i, i + n):
            out[i, j] = (j - i + 1) - sum(1 for t in range(i, j + 1) if pi(t) <= j)
    return out


def from_cyclic_ranks(n: int, conditions, k: int) -> Matroid:
    """Matroid whose bases are the ``k``-sets meeting every condition.

    For cyclic-interval conditions this is the positroid they cut out.
    """
    f = generated_pseudo_rank(n, conditions, k)
    bases = np.nonzero((_popcounts(n) == k) & (f == k))[0]
    return Matroid.from_bases(n, bases.tolist())


def permutation_to_matroid(pi: BoundedAffinePermutation, k: int | None = None) -> Matroid:
    n = pi.n
    if k is not None and sum(p - i for i, p in enumerate(pi.window, 1)) != k * n:
        raise InconsistentPermutation(f"{pi} does not have degree k={k}")
    k = pi.k
    ranks = _interval_ranks(pi)
    conds = [RankCondition(cyclic_interval(i, j, n), r) for (i, j), r in ranks.items()]
    try:
        M = from_cyclic_ranks(n, conds, k)
    except MatroidError as e:
        raise InconsistentPermutation(f"{pi} does not generate a matroid: {e}") from e
    crm = cyclic_rank_matrix(M)
    if any(crm(i, j) != r for (i, j), r in ranks.items()):
        raise InconsistentPermutation(f"{pi} is not reproduced by its generated matroid")
    return M


def cyclic_conditions(M: Matroid) -> list[RankCondition]:
    n = M.n
    return [
        RankCondition(S, M.rank(S))
        for S in cyclic_interval_family(n).members
    ]


def is_positroid(M: Matroid) -> bool:
    if M.n == 0:
        return True
    try:
        G = from_cyclic_ranks(M.n, cyclic_conditions(M), M.k)
    except MatroidError:
        return False
    return G == M


def positroid_ec(M: Matroid) -> int:
    """Expected codimension over the cyclic intervals of a positroid."""
    if not is_positroid(M):
        raise NotAPositroid("matroid is not generated by its cyclic-interval ranks")
    n, k = M.n, M.k
    rep = ec_report(M, cyclic_interval_family(n))
    pi = affine_permutation(cyclic_rank_matrix(M))
    sizes = sum(pi(i) - i + 1 for i in range(1, n + 1))
    nested = sum(
        1 for i in range(1, n + 1) for t in range(i, pi(i) + 1) if pi(t) <= pi(i)
    )
    if sizes != n * k + n:
        raise ConsistencyError(f"ones-interval sizes sum to {sizes}, not {n * k + n}")
    if nested != affine_length(pi) + n:
        raise ConsistencyError(f"nested ones-intervals number {nested}, not l(pi) + n")
    return rep.ec


def _derangements(m: int) -> int:
    prev, cur = 1, 0
    if m == 0:
        return 1
    for t in range(2, m + 1):
        prev, cur = cur, (t - 1) * (cur + prev)
    return cur


def random_bounded_affine_permutation(k: int, n: int, rng: random.Random | None = None) -> BoundedAffinePermutation:
    """Uniform sample among bounded affine permutations of degree ``k``.

    Draws a uniform decorated permutation (fixed points weighted by their two
    decorations) and rejects until the degree is ``k``.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    rng = rng or random.Random()
    weights = [comb(n, f) * _derangements(n - f) * 2**f for f in range(n + 1)]
    while True:
        f = rng.choices(range(n + 1), weights)[0]
        fixed = set(rng.sample(range(1, n + 1), f))
        rest = [i for i in range(1, n + 1) if i not in fixed]
        while True:
            image = rest[:]
            rng.shuffle(image)
            if all(a != b for a, b in zip(rest, image)):
                break
        target = dict(zip(rest, image))
        window = []
        for i in range(1, n + 1):
            if i in fixed:
                window.append(i + n * rng.randint(0, 1))
            else:
                s = target[i]
                window.append(s if s > i else s + n)
        if sum(window) - n * (n + 1) // 2 == k * n:
            return BoundedAffinePermutation(tuple(window))


def is_noncrossing(blocks, n: int) -> bool:
    """Whether set masks on ``[n]`` form a non-crossing partition of the circle."""
    blocks = list(blocks)
    owner = {}
    for b, m in enumerate(blocks):
        for e in range(n):
            if m >> e & 1:
                owner[e] = b
    for p in range(len(blocks)):
        for q in range(p + 1, len(blocks)):
            # look for a < b < c < d alternating between the two blocks
            seq = [owner[e] for e in range(n) if owner.get(e) in (p, q)]
            changes = sum(1 for u, v in zip(seq, seq[1:]) if u != v)
            if changes > 2:
                return False
    return True


def is_cyclic_interval(S: int, n: int) -> bool:
    if S == 0 or S == (1 << n) - 1:
        return True
    bits = [(S >> e) & 1 for e in range(n)]
    # one run of ones around the circle means exactly one 0 -> 1 transition
    return sum(1 for e in range(n) if bits[e] and not bits[e - 1]) == 1
