"""Expected codimension of matroid varieties and the trivariate polynomial.

For a family of subsets ordered by inclusion, ``a`` distributes the nullity
``c(S) = |S| - rank S`` over the family from below and ``b`` distributes the
corank ``k - rank S`` from above; the expected codimension pairs them up.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import sympy

from .errors import ConsistencyError, DisconnectedInput, NotInFamily
from .matroid import Matroid, _masks, _popcounts, as_mask, fmt_set

MAX_FAMILY = 1 << 16

x, y, z = sympy.symbols("x y z")


class SetFamily:
    """Distinct subsets of ``[n]`` viewed as a poset under inclusion.

    ``SetFamily.all(n)`` is the full power set and uses the Boolean-lattice
    closed forms instead of a stored Moebius table.
    """

    def __init__(self, n: int, members, *, _all: bool = False):
        ms = [as_mask(S, n) for S in members]
        if len(set(ms)) != len(ms):
            raise ValueError("set family has duplicate members")
        if len(ms) > MAX_FAMILY:
            raise ValueError(f"set families are capped at {MAX_FAMILY} members")
        self.n = n
        self.members = tuple(ms)
        self.is_all = _all
        self._index = None if _all else {m: i for i, m in enumerate(ms)}

    @classmethod
    def all(cls, n: int) -> "SetFamily":
        return cls(n, range(1 << n), _all=True)

    @classmethod
    def from_sets(cls, n: int, sets) -> "SetFamily":
        """Deduplicating constructor."""
        seen = {}
        for S in sets:
            seen.setdefault(as_mask(S, n), None)
        return cls(n, seen)

    def __len__(self):
        return len(self.members)

    def __contains__(self, S):
        m = as_mask(S)
        if self.is_all:
            return m >> self.n == 0
        return m in self._index

    def __iter__(self):
        return iter(self.members)

    def index(self, S) -> int:
        m = as_mask(S)
        if self.is_all:
            if m >> self.n:
                raise NotInFamily(fmt_set(m))
            return m
        try:
            return self._index[m]
        except KeyError:
            raise NotInFamily(fmt_set(m)) from None

    def without(self, S) -> "SetFamily":
        m = as_mask(S)
        self.index(m)
        return SetFamily(self.n, [t for t in self.members if t != m])

    def complement(self) -> "SetFamily":
        full = (1 << self.n) - 1
        if self.is_all:
            return self
        return SetFamily(self.n, [full ^ m for m in self.members])

    @cached_property
    def _order(self) -> np.ndarray:
        ms = np.asarray(self.members, dtype=np.int64)
        return np.argsort(np.bitwise_count(ms), kind="stable")

    @cached_property
    def _below(self) -> np.ndarray:
        # _below[t, s] is True when member t is a subset of member s
        ms = np.asarray(self.members, dtype=np.int64)
        return (ms[:, None] & ~ms[None, :]) == 0

    @cached_property
    def mobius_matrix(self) -> np.ndarray:
        """Dense ``mu[t, s]`` over member indices (not for ``all``)."""
        if self.is_all:
            raise ValueError("the power set uses the closed form (-1)^(|S|-|T|)")
        m = len(self.members)
        below = self._below
        mu = np.zeros((m, m), dtype=np.int64)
        for s in self._order:
            strict = below[:, s].copy()
            strict[s] = False
            mu[:, s] = -mu[:, strict].sum(axis=1)
            mu[s, s] = 1
        # mu[t, s] must vanish unless t is below s
        mu[~below] = 0
        return mu

    def mobius(self, T, S) -> int:
        t, s = self.index(T), self.index(S)
        if self.is_all:
            if t & ~s:
                return 0
            return -1 if (s.bit_count() - t.bit_count()) % 2 else 1
        return int(self.mobius_matrix[t, s])

    def __repr__(self):
        if self.is_all:
            return f"SetFamily.all({self.n})"
        return f"SetFamily({self.n}, [{', '.join(fmt_set(m) for m in self.members)}])"


def interval_family(n: int) -> SetFamily:
    """All nonempty intervals ``[i, j]`` of ``1..n``."""
    return SetFamily(n, [((1 << (j - i + 1)) - 1) << (i - 1) for i in range(1, n + 1) for j in range(i, n + 1)])


def cyclic_interval(i: int, j: int, n: int) -> int:
    """Mask of the cyclic interval ``[i, j]`` with ``0 <= j - i + 1 <= n``."""
    size = j - i + 1
    if not 0 <= size <= n:
        raise ValueError(f"[{i},{j}] is not a cyclic interval of [{n}]")
    m = 0
    for t in range(i, j + 1):
        m |= 1 << ((t - 1) % n)
    return m


def cyclic_interval_family(n: int) -> SetFamily:
    """All nonempty cyclic intervals of ``[n]`` (the full set once)."""
    return SetFamily.from_sets(n, [cyclic_interval(i, i + d, n) for i in range(1, n + 1) for d in range(n)])


@dataclass
class EcReport:
    """Expected-codimension data for one matroid and one family.

    ``c``, ``a``, ``b`` are arrays aligned with ``family.members``.
    """

    k: int
    family: SetFamily
    c: np.ndarray
    a: np.ndarray
    b: np.ndarray
    ec: int
    rank: np.ndarray = field(repr=False)

    def mu(self, T, S) -> int:
        return self.family.mobius(T, S)

    def a_of(self, S) -> int:
        return int(self.a[self.family.index(S)])

    def b_of(self, S) -> int:
        return int(self.b[self.family.index(S)])

    def c_of(self, S) -> int:
        return int(self.c[self.family.index(S)])

    def nonzero(self, which: str = "a") -> dict[int, int]:
        vals = getattr(self, which)
        return {int(m): int(v) for m, v in zip(self.family.members, vals) if v}


def _coerce_family(M: Matroid, family) -> SetFamily:
    if family is None or family == "all":
        return SetFamily.all(M.n)
    if isinstance(family, SetFamily):
        if family.n != M.n:
            raise ValueError(f"family lives on [{family.n}] but the matroid on [{M.n}]")
        return family
    return SetFamily.from_sets(M.n, family)


def ec_report(M: Matroid, family=None) -> EcReport:
    """Compute ``c``, ``a``, ``b`` and the expected codimension.

    ``family=None`` (or ``"all"``) means the full power set.  The two sums
    ``sum (k - rk S) a(S)`` and ``sum c(T) b(T)`` are both computed and must
    agree.
    """
    fam = _coerce_family(M, family)
    k = M.k
    if fam.is_all:
        n = M.n
        rk = M.rank_table.astype(np.int64)
        c = _popcounts(n).astype(np.int64) - rk
        w = k - rk
        a = c.copy()
        b = w.copy()
        for t in range(n):
            va = a.reshape(-1, 2, 1 << t)
            va[:, 1, :] -= va[:, 0, :]
            vb = b.reshape(-1, 2, 1 << t)
            vb[:, 0, :] -= vb[:, 1, :]
        a[0] = 0
    else:
        ms = np.asarray(fam.members, dtype=np.int64)
        rk = M.rank_table[ms].astype(np.int64)
        c = np.bitwise_count(ms).astype(np.int64) - rk
        w = k - rk
        below = fam._below
        a = np.zeros(len(ms), dtype=np.int64)
        for s in fam._order:
            if ms[s] == 0:
                continue
            strict = below[:, s].copy()
            strict[s] = False
            a[s] = c[s] - a[strict].sum()
        b = fam.mobius_matrix @ w
    ec_a = int((w * a).sum())
    ec_b = int((c * b).sum())
    if ec_a != ec_b:
        raise ConsistencyError(f"ec via a-weights ({ec_a}) != ec via b-weights ({ec_b})")
    return EcReport(k=k, family=fam, c=c, a=a, b=b, ec=ec_a, rank=rk)


def expected_codim(M: Matroid, family=None) -> int:
    return ec_report(M, family).ec


def flacets(M: Matroid) -> SetFamily:
    """Sets ``S`` with both ``M|S`` and ``M/S`` connected."""
    if not M.is_connected():
        raise DisconnectedInput("flacets are defined for connected matroids; decompose first")
    out = [S for S in range(1 << M.n) if M.restrict(S).is_connected() and M.contract(S).is_connected()]
    return SetFamily(M.n, out)


def s_polynomial(M: Matroid) -> sympy.Poly:
    """``sum over S <= T of x^(|S|-rk S) y^(rk M - rk T) z^(|T|-|S|)``."""
    r = M.rank_table
    k = M.k
    terms = Counter()
    for T in range(1 << M.n):
        yT = k - int(r[T])
        nT = T.bit_count()
        S = T
        while True:
            nS = S.bit_count()
            terms[(nS - int(r[S]), yT, nT - nS)] += 1
            if S == 0:
                break
            S = (S - 1) & T
    return sympy.Poly.from_dict(dict(terms), x, y, z)


def tutte_polynomial(M: Matroid, s_poly: sympy.Poly | None = None) -> sympy.Poly:
    """``s_M(x - 1, y - 1, 0)``; loops give ``x`` and coloops ``y``."""
    s = s_poly if s_poly is not None else s_polynomial(M)
    expr = s.as_expr().subs({x: x - 1, y: y - 1, z: 0}, simultaneous=True)
    return sympy.Poly(sympy.expand(expr), x, y)


def ec_from_s(M: Matroid, s_poly: sympy.Poly | None = None) -> int:
    """Mixed partial ``d/dx d/dy s_M`` evaluated at ``(0, 0, -1)``.

    Only monomials linear in both ``x`` and ``y`` survive at ``x = y = 0``,
    so pairs of nullity or corank above one are lost and the value often
    differs from ``expected_codim``.  ``ec_from_s_euler`` keeps them.
    """
    s = s_poly if s_poly is not None else s_polynomial(M)
    total = 0
    for (i, j, l), coef in s.terms():
        if i == 1 and j == 1:
            total += int(coef) * (-1) ** l
    return total


def ec_from_s_euler(M: Matroid, s_poly: sympy.Poly | None = None) -> int:
    """``(x d/dx)(y d/dy) s_M`` evaluated at ``(1, 1, -1)``."""
    s = s_poly if s_poly is not None else s_polynomial(M)
    return sum(int(coef) * i * j * (-1) ** l for (i, j, l), coef in s.terms())
