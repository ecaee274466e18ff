"""Matroids on small ground sets, stored as full rank tables.

Subsets of ``[n] = {1..n}`` are Python ints used as bit masks: element ``i``
is bit ``i - 1``.  Every ``Matroid`` carries its rank on all ``2**n`` subsets
in a read-only numpy array and is validated against the rank axioms when it
is built.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import (
    EmptyBasisSet,
    GroundSetOverflow,
    LoopParallel,
    NotAMatroid,
)

MAX_N = 16


def mask(elems: Iterable[int]) -> int:
    m = 0
    for e in elems:
        m |= 1 << (e - 1)
    return m


def elements(m: int) -> tuple[int, ...]:
    out = []
    i = 1
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return tuple(out)


def as_mask(S, n: int | None = None) -> int:
    """Accept a mask or an iterable of 1-based elements."""
    m = int(S) if isinstance(S, (int, np.integer)) else mask(S)
    if m < 0 or (n is not None and m >> n):
        raise ValueError(f"subset {elements(m) if m >= 0 else m} is not inside [{n}]")
    return m


def fmt_set(m: int) -> str:
    return "{" + ",".join(map(str, elements(m))) + "}"


@lru_cache(maxsize=None)
def _popcounts(n: int) -> np.ndarray:
    pc = np.bitwise_count(np.arange(1 << n, dtype=np.int64)).astype(np.int16)
    pc.flags.writeable = False
    return pc


@lru_cache(maxsize=None)
def _masks(n: int) -> np.ndarray:
    a = np.arange(1 << n, dtype=np.int64)
    a.flags.writeable = False
    return a


def _subset_max(values: np.ndarray, n: int) -> np.ndarray:
    """out[A] = max over B subset of A of values[B]."""
    out = values.copy()
    view = out
    for x in range(n):
        # reshape so bit x is its own axis: (high, 2, low)
        v = view.reshape(-1, 2, 1 << x)
        np.maximum(v[:, 1, :], v[:, 0, :], out=v[:, 1, :])
    return out


def _superset_or(values: np.ndarray, n: int) -> np.ndarray:
    """out[A] = OR over B superset of A of values[B]."""
    out = values.copy()
    for x in range(n):
        v = out.reshape(-1, 2, 1 << x)
        np.logical_or(v[:, 0, :], v[:, 1, :], out=v[:, 0, :])
    return out


def find_violation(n: int, r: np.ndarray):
    """Return ``None`` if ``r`` is a matroid rank table, else a ``NotAMatroid``.

    The reported witness is the lexicographically smallest ``(F, x, y)``.
    """
    if r[0] != 0:
        return NotAMatroid("rank of the empty set is not 0", witness=(0, None, None))
    idx = _masks(n)
    best = None
    for x in range(n):
        bx = 1 << x
        A = idx[(idx & bx) == 0]
        d = r[A | bx] - r[A]
        bad = np.nonzero((d != 0) & (d != 1))[0]
        if bad.size:
            cand = (int(A[bad[0]]), x + 1, None)
            if best is None or cand < best:
                best = cand
    if best is not None:
        F, x, _ = best
        return NotAMatroid(
            f"rank({fmt_set(F | 1 << (x - 1))}) - rank({fmt_set(F)}) is not 0 or 1",
            witness=best,
        )
    for x, y in combinations(range(n), 2):
        bx, by = 1 << x, 1 << y
        A = idx[(idx & (bx | by)) == 0]
        rA = r[A]
        bad = np.nonzero((r[A | bx] == rA) & (r[A | by] == rA) & (r[A | bx | by] != rA))[0]
        if bad.size:
            cand = (int(A[bad[0]]), x + 1, y + 1)
            if best is None or cand < best:
                best = cand
    if best is not None:
        F, x, y = best
        return NotAMatroid(
            f"rank({fmt_set(F)}) = rank(F+{x}) = rank(F+{y}) "
            f"but rank(F+{{{x},{y}}}) differs (F = {fmt_set(F)})",
            witness=best,
        )
    return None


@dataclass(frozen=True)
class RankCondition:
    """Upper bound ``rank(subset) <= bound``."""

    subset: int
    bound: int

    def __post_init__(self):
        if self.bound < 0 or self.bound > self.subset.bit_count():
            raise ValueError(
                f"bound {self.bound} is not in [0, |{fmt_set(self.subset)}|]"
            )

    @classmethod
    def of(cls, S, bound: int) -> "RankCondition":
        return cls(as_mask(S), int(bound))


def _coerce_conditions(conditions, n):
    out = []
    for c in conditions:
        if not isinstance(c, RankCondition):
            S, b = c
            c = RankCondition.of(S, b)
        as_mask(c.subset, n)
        out.append(c)
    return out


def generated_pseudo_rank(n: int, conditions, ambient_rank: int | None = None) -> np.ndarray:
    """Pointwise-largest pseudo-rank function meeting the upper bounds.

    ``r(A) = min(|A|, min_i (bound_i + |A \\ S_i|))``.
    """
    conds = _coerce_conditions(conditions, n)
    full = (1 << n) - 1
    if ambient_rank is not None:
        conds.append(RankCondition(full, int(ambient_rank)))
    idx = _masks(n)
    r = _popcounts(n).astype(np.int16)
    for c in conds:
        np.minimum(r, c.bound + np.bitwise_count(idx & (full ^ c.subset)).astype(np.int16), out=r)
    return r


class Matroid:
    """A matroid on ``[n]`` given by its complete rank table.

    >>> U = Matroid.from_bases(3, [{1, 2}, {1, 3}, {2, 3}])
    >>> U.k, U.rank({1})
    (2, 1)
    """

    def __init__(self, n: int, rank_table):
        if not 0 <= n <= MAX_N:
            raise GroundSetOverflow(f"ground set size {n} outside [0, {MAX_N}]")
        r = np.array(rank_table, dtype=np.int16).reshape(-1)
        if r.shape != (1 << n,):
            raise ValueError(f"rank table must have {1 << n} entries, got {r.size}")
        err = find_violation(n, r)
        if err is not None:
            raise err
        r.flags.writeable = False
        self.n = n
        self.k = int(r[-1])
        self._r = r

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_bases(cls, n: int, bases) -> "Matroid":
        bs = sorted({as_mask(B, n) for B in bases})
        if not bs:
            raise EmptyBasisSet("a matroid needs at least one basis")
        sizes = {b.bit_count() for b in bs}
        if len(sizes) > 1:
            by = {}
            for b in bs:
                by.setdefault(b.bit_count(), b)
            a, b = sorted(by.values())[:2]
            raise NotAMatroid(
                f"bases {fmt_set(a)} and {fmt_set(b)} have different sizes",
                witness=(a, b, None),
            )
        pc = _popcounts(n)
        values = np.zeros(1 << n, dtype=np.int16)
        values[bs] = 1
        indep = _superset_or(values.astype(bool), n)
        r = _subset_max(np.where(indep, pc, 0).astype(np.int16), n)
        ok = find_violation(n, r) is None
        if ok:
            k = sizes.pop()
            got = np.nonzero((pc == k) & (r == k))[0]
            ok = got.size == len(bs)
        if not ok:
            w = _exchange_witness(bs)
            raise NotAMatroid(
                "basis exchange fails: no y in {} makes {} - {} + y a basis".format(
                    fmt_set(w[1]), fmt_set(w[0]), w[2]
                ),
                witness=w,
            )
        return cls(n, r)

    @classmethod
    def from_rank_conditions(cls, n: int, conditions, ambient_rank: int | None = None) -> "Matroid":
        """Freest matroid with ``rank(S_i) <= bound_i`` for every condition.

        The generated pseudo-rank ``f`` is used directly when it is a matroid.
        Otherwise the independent sets ``{A : f(A) = |A|}`` are tried; these
        give the largest matroid below ``f`` whenever they form one.
        """
        f = generated_pseudo_rank(n, conditions, ambient_rank)
        err = find_violation(n, f)
        if err is None:
            return cls(n, f)
        pc = _popcounts(n)
        r = _subset_max(np.where(f == pc, pc, 0).astype(np.int16), n)
        if find_violation(n, r) is None:
            return cls(n, r)
        raise err

    @classmethod
    def uniform(cls, k: int, n: int) -> "Matroid":
        return cls(n, np.minimum(_popcounts(n), k))

    # -- basic queries ---------------------------------------------------

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def rank_table(self) -> np.ndarray:
        return self._r

    def rank(self, S) -> int:
        return int(self._r[as_mask(S, self.n)])

    def nullity(self, S) -> int:
        m = as_mask(S, self.n)
        return m.bit_count() - int(self._r[m])

    def is_independent(self, S) -> bool:
        return self.nullity(S) == 0

    def closure(self, S) -> int:
        m = as_mask(S, self.n)
        rs = self._r[m]
        out = m
        for x in range(self.n):
            if self._r[m | 1 << x] == rs:
                out |= 1 << x
        return out

    @cached_property
    def bases(self) -> tuple[int, ...]:
        pc = _popcounts(self.n)
        return tuple(int(b) for b in np.nonzero((pc == self.k) & (self._r == self.k))[0])

    @cached_property
    def loops(self) -> int:
        return self.closure(0)

    @cached_property
    def coloops(self) -> int:
        full = self.full
        return mask(x for x in range(1, self.n + 1) if self._r[full ^ (1 << (x - 1))] == self.k - 1)

    # -- derived matroids ------------------------------------------------

    def restrict(self, F) -> "Matroid":
        """``M|F`` on ``[|F|]``; new element ``t`` is ``elements(F)[t-1]``."""
        F = as_mask(F, self.n)
        return Matroid(F.bit_count(), self._r[_deposit(F, self.n)])

    def delete(self, D) -> "Matroid":
        return self.restrict(self.full ^ as_mask(D, self.n))

    def contract(self, F) -> "Matroid":
        """``M/F`` on ``[n - |F|]``, elements of ``E - F`` in increasing order."""
        F = as_mask(F, self.n)
        rest = _deposit(self.full ^ F, self.n)
        return Matroid(self.n - F.bit_count(), self._r[rest | F] - self._r[F])

    def dual(self) -> "Matroid":
        idx = _masks(self.n)
        r = _popcounts(self.n) - self.k + self._r[self.full ^ idx]
        return Matroid(self.n, r)

    def direct_sum(self, other: "Matroid") -> "Matroid":
        m, n = self.n, other.n
        if m + n > MAX_N:
            raise GroundSetOverflow(f"direct sum would have {m + n} > {MAX_N} elements")
        idx = _masks(m + n)
        return Matroid(m + n, self._r[idx & ((1 << m) - 1)] + other._r[idx >> m])

    def loop_extension(self) -> "Matroid":
        return self.direct_sum(Matroid(1, [0, 0]))

    def coloop_extension(self) -> "Matroid":
        return self.direct_sum(Matroid(1, [0, 1]))

    def free_extension(self) -> "Matroid":
        n, k = self.n, self.k
        if n + 1 > MAX_N:
            raise GroundSetOverflow(f"free extension would have {n + 1} > {MAX_N} elements")
        lower = self._r
        upper = np.where(lower < k, lower + 1, k)
        return Matroid(n + 1, np.concatenate([lower, upper]))

    def parallel_extension(self, e: int) -> "Matroid":
        """Add element ``n + 1`` parallel to ``e``."""
        n = self.n
        if not 1 <= e <= n:
            raise ValueError(f"element {e} not in [{n}]")
        if self._r[1 << (e - 1)] == 0:
            raise LoopParallel(f"element {e} is a loop")
        if n + 1 > MAX_N:
            raise GroundSetOverflow(f"parallel extension would have {n + 1} > {MAX_N} elements")
        return Matroid(n + 1, np.concatenate([self._r, self._r[_masks(n) | (1 << (e - 1))]]))

    # -- circuits and connectivity ---------------------------------------

    @cached_property
    def circuits(self) -> tuple[int, ...]:
        n = self.n
        idx = _masks(n)
        indep = self._r == _popcounts(n)
        circ = ~indep
        for x in range(n):
            bx = 1 << x
            has = (idx & bx) != 0
            circ &= ~has | indep[idx ^ bx]
        return tuple(int(c) for c in np.nonzero(circ)[0])

    @cached_property
    def connected_components(self) -> tuple[int, ...]:
        """Classes of "x = y or some circuit holds both", as masks, sorted."""
        parent = list(range(self.n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for C in self.circuits:
            es = elements(C)
            for e in es[1:]:
                ra, rb = find(es[0] - 1), find(e - 1)
                if ra != rb:
                    parent[rb] = ra
        comps = {}
        for x in range(self.n):
            comps[find(x)] = comps.get(find(x), 0) | 1 << x
        return tuple(sorted(comps.values(), key=lambda m: (m & -m, m)))

    def is_connected(self) -> bool:
        """No proper nonempty ``S`` with ``rk S + rk(E - S) = rk E``."""
        if self.n <= 1:
            return True
        idx = _masks(self.n)[1:-1]
        return not bool(np.any(self._r[idx] + self._r[self.full ^ idx] == self.k))

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._r, other._r)

    def __hash__(self):
        return hash((self.n, self._r.tobytes()))

    def __repr__(self):
        bs = self.bases
        shown = ", ".join("".join(map(str, elements(b))) if self.n < 10 else fmt_set(b) for b in bs[:8])
        more = ", ..." if len(bs) > 8 else ""
        return f"Matroid(n={self.n}, k={self.k}, bases=[{shown}{more}])"


def _deposit(F: int, n: int) -> np.ndarray:
    """Map masks over ``[|F|]`` to the corresponding masks inside ``F``."""
    es = elements(F)
    idx = _masks(len(es))
    out = np.zeros(1 << len(es), dtype=np.int64)
    for t, e in enumerate(es):
        out |= ((idx >> t) & 1) << (e - 1)
    return out


def _exchange_witness(bs):
    bset = set(bs)
    for B in bs:
        for B2 in bs:
            diff = B & ~B2
            while diff:
                x = diff & -diff
                diff ^= x
                ys = B2
                ok = False
                while ys:
                    y = ys & -ys
                    ys ^= y
                    if (B ^ x) | y in bset:
                        ok = True
                        break
                if not ok:
                    return (B, B2, x.bit_length())
    # rank axioms failed without an exchange failure cannot happen for
    # equal-size families, but keep a defined witness.
    return (bs[0], bs[0], None)
