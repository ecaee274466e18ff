"""Littlewood-Richardson coefficients by two unrelated methods.

``lr_coefficient`` counts LR skew tableaux.  ``monomial_lr_coefficient``
multiplies explicit Schur polynomials and reads off the coefficient through
the Vandermonde numerator, so the two can vouch for each other.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import permutations

from .errors import ConsistencyError
from .partitions import Partition, contains, fits_box, normalize, padded, partitions_in_box


def lr_coefficient(lam, mu, nu) -> int:
    """Number of LR tableaux of shape ``nu/lam`` and content ``mu``."""
    lam, mu, nu = normalize(lam), normalize(mu), normalize(nu)
    if sum(nu) != sum(lam) + sum(mu) or not contains(nu, lam):
        return 0
    rows = len(nu)
    lam = padded(lam, rows)
    # cells per row, listed right to left to follow the reverse reading word
    cells = [(r, c) for r in range(rows) for c in range(nu[r] - 1, lam[r] - 1, -1)]
    filling: dict[tuple[int, int], int] = {}
    count = [0] * (len(mu) + 2)

    def rec(pos: int) -> int:
        if pos == len(cells):
            return 1
        r, c = cells[pos]
        hi = filling.get((r, c + 1), len(mu))
        lo = filling[(r - 1, c)] + 1 if (r - 1, c) in filling else 1
        total = 0
        for v in range(lo, hi + 1):
            if count[v] >= mu[v - 1]:
                continue
            if v > 1 and count[v] >= count[v - 1]:
                continue
            filling[(r, c)] = v
            count[v] += 1
            total += rec(pos + 1)
            count[v] -= 1
            del filling[(r, c)]
        return total

    return rec(0)


@lru_cache(maxsize=None)
def schur_polynomial(lam: Partition, nvars: int) -> dict[tuple[int, ...], int]:
    """Monomial expansion of ``s_lam(x_1..x_nvars)`` by enumerating SSYT."""
    lam = normalize(lam)
    if len(lam) > nvars:
        return {}
    cells = [(r, c) for r in range(len(lam)) for c in range(lam[r])]
    T: dict[tuple[int, int], int] = {}
    out = Counter()
    weight = [0] * nvars

    def rec(pos: int):
        if pos == len(cells):
            out[tuple(weight)] += 1
            return
        r, c = cells[pos]
        lo = max(T.get((r, c - 1), 0), T[(r - 1, c)] + 1 if r else 0)
        for v in range(lo, nvars):
            T[(r, c)] = v
            weight[v] += 1
            rec(pos + 1)
            weight[v] -= 1
        T.pop((r, c), None)

    rec(0)
    return dict(out)


def _multiply(p: dict, q: dict) -> Counter:
    out = Counter()
    for a, ca in p.items():
        for b, cb in q.items():
            out[tuple(x + y for x, y in zip(a, b))] += ca * cb
    return out


def _sign(perm) -> int:
    s, seen = 1, set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        s *= -1 if length % 2 == 0 else 1
    return s


def monomial_lr_coefficient(lam, mu, nu) -> int:
    """Coefficient of ``x^(nu + delta)`` in ``a_delta * s_lam * s_mu``."""
    lam, mu, nu = normalize(lam), normalize(mu), normalize(nu)
    if sum(nu) != sum(lam) + sum(mu):
        return 0
    m = max(len(nu), len(lam), len(mu), 1)
    prod = _multiply(schur_polynomial(lam, m), schur_polynomial(mu, m))
    delta = tuple(range(m - 1, -1, -1))
    target = tuple(v + d for v, d in zip(padded(nu, m), delta))
    total = 0
    for perm in permutations(range(m)):
        shift = tuple(target[i] - delta[perm[i]] for i in range(m))
        if min(shift) >= 0:
            total += _sign(perm) * prod.get(shift, 0)
    return total


def schur_product_in_box(lam, mu, k: int, n: int, cross_check: bool = False) -> dict[Partition, int]:
    """``s_lam * s_mu`` with terms outside the ``k x (n - k)`` box dropped."""
    lam, mu = normalize(lam), normalize(mu)
    out = {}
    for nu in partitions_in_box(k, n - k, sum(lam) + sum(mu)):
        if not (contains(nu, lam) and contains(nu, mu)):
            continue
        c = lr_coefficient(lam, mu, nu)
        if cross_check:
            c2 = monomial_lr_coefficient(lam, mu, nu)
            if c != c2:
                raise ConsistencyError(f"c^{nu}_{lam},{mu}: tableaux {c} vs monomials {c2}")
        if c:
            out[nu] = c
    assert all(fits_box(p, k, n) for p in out)
    return out
