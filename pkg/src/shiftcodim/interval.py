"""Interval rank matrices and the shift-and-split Littlewood-Richardson rule.

A condition is a triple ``(i, j, r)`` meaning ``rank [i, j] <= r``.  Matrix
entries follow ``r[i, j] = 0`` when ``i = j + 1`` and ``-1`` when
``i = j + 2``, which lets loops show up as ones on the diagonal.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    AmbiguousShift,
    ConsistencyError,
    EmptyIntersection,
    InvalidBounds,
    NonTermination,
    NoValidResolution,
    NotSchubert,
    PendingMatrix,
)
from .expected import ec_report, interval_family
from .matroid import Matroid
from .partitions import Partition, fits_box, fmt_partition, normalize, padded
from .positroid import from_cyclic_ranks

Condition = tuple[int, int, int]

SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def fmt_conditions(conds, n: int) -> str:
    """``(123)₂ (34)₁`` style; elements are comma-separated once ``n > 9``."""
    if not conds:
        return "∅"
    sep = "," if n > 9 else ""
    return " ".join(
        "(" + sep.join(str(t) for t in range(i, j + 1)) + ")" + str(r).translate(SUBSCRIPTS)
        for i, j, r in conds
    )


@dataclass(frozen=True, eq=False)
class IntervalRankMatrix:
    """Upper-triangular ranks ``r[i, j]`` of the intervals of ``[n]``.

    ``table`` is ``(n + 2) x (n + 2)`` and indexed 1-based; ``conditions``
    records what generated it.  ``pending`` marks a matrix that breaks the
    corner rule and still has to be split.
    """

    n: int
    k: int
    table: np.ndarray = field(repr=False)
    conditions: tuple[Condition, ...] = ()

    def __call__(self, i: int, j: int) -> int:
        if i == j + 1:
            return 0
        if i == j + 2:
            return -1
        return int(self.table[i, j])

    def __eq__(self, other):
        return (
            isinstance(other, IntervalRankMatrix)
            and (self.n, self.k) == (other.n, other.k)
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((self.n, self.k, self.table.tobytes()))

    @cached_property
    def violations(self) -> tuple[tuple[int, int], ...]:
        """Top-left corners ``(i - 1, j)`` of blocks ``[[r, r+1], [r, r]]``, row-major."""
        out = []
        for a in range(1, self.n):
            for j in range(a, self.n):
                # rows a, a+1 and columns j, j+1; row a+1 may start one past j
                r = self(a + 1, j)
                if self(a, j) == r and self(a + 1, j + 1) == r and self(a, j + 1) == r + 1:
                    out.append((a, j))
        return tuple(out)

    @property
    def pending(self) -> bool:
        return bool(self.violations)

    def entries(self) -> list[Condition]:
        n = self.n
        return [(i, j, int(self.table[i, j])) for i in range(1, n + 1) for j in range(i, n + 1)]

    def rows(self) -> list[list[int]]:
        return [[int(self.table[i, j]) for j in range(i, self.n + 1)] for i in range(1, self.n + 1)]

    def first_row(self) -> list[int]:
        return [0] + [int(self.table[1, j]) for j in range(1, self.n + 1)]

    def render(self) -> str:
        lines = []
        for i, row in enumerate(self.rows()):
            lines.append("   " * i + "".join(f"{v:>3}" for v in row))
        return "\n".join(lines)


def _generate(n: int, k: int, conds) -> np.ndarray:
    table = np.zeros((n + 2, n + 2), dtype=np.int64)
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            table[i, j] = min(j - i + 1, k)
    for a, b, r in conds:
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                outside = (j - i + 1) - max(0, min(j, b) - max(i, a) + 1)
                if r + outside < table[i, j]:
                    table[i, j] = r + outside
    return table


def irm_from_conditions(n: int, k: int, conditions) -> IntervalRankMatrix:
    """Largest interval ranks below the conditions; may come back pending."""
    if not 0 <= k <= n:
        raise InvalidBounds(f"need 0 <= k <= n, got k={k}, n={n}")
    conds = []
    for c in conditions:
        i, j, r = map(int, c)
        if not 1 <= i <= j <= n:
            raise InvalidBounds(f"[{i},{j}] is not an interval of [{n}]")
        if not 0 <= r <= j - i + 1:
            raise InvalidBounds(f"bound {r} on [{i},{j}] is out of range")
        conds.append((i, j, r))
    table = _generate(n, k, conds)
    if table[1, n] < k:
        raise InvalidBounds(f"conditions force rank [1,{n}] = {table[1, n]} < {k}")
    table.flags.writeable = False
    return IntervalRankMatrix(n, k, table, tuple(conds))


def _require_valid(irm: IntervalRankMatrix):
    if irm.pending:
        a, j = irm.violations[0]
        raise PendingMatrix(f"corner rule fails on rows {a},{a + 1} x columns {j},{j + 1}")


@dataclass(frozen=True)
class EssentialSet:
    ones: tuple[tuple[int, int], ...]
    diagram: frozenset
    essential: tuple[Condition, ...]


def essential_set(irm: IntervalRankMatrix) -> EssentialSet:
    _require_valid(irm)
    n, k = irm.n, irm.k
    r = irm
    ones = [
        (i, j)
        for i in range(1, n + 1)
        for j in range(i, n + 1)
        if r(i, j) == r(i, j - 1) == r(i + 1, j) != r(i + 1, j - 1)
    ]
    rows = {i for i, _ in ones}
    cols = {j for _, j in ones}
    cells = set()
    for i in rows:
        for j in cols:
            if j < i:
                continue
            if any((p == i and j < q) or (q == j and i > p) for p, q in ones):
                continue
            cells.add((i, j))
    essential = [
        (i, j, r(i, j))
        for i, j in sorted(cells)
        if (i - 1, j) not in cells and (i, j + 1) not in cells and r(i, j) < min(k, j - i + 1)
    ]
    return EssentialSet(tuple(ones), frozenset(cells), tuple(essential))


def interval_matroid(irm: IntervalRankMatrix) -> Matroid:
    _require_valid(irm)
    n = irm.n
    conds = [(((1 << (j - i + 1)) - 1) << (i - 1), r) for i, j, r in irm.entries()]
    return from_cyclic_ranks(n, conds, irm.k)


def codimension(irm: IntervalRankMatrix, check: bool = True) -> int:
    """Sum of ``k - r[i, j]`` over the ones of the partial permutation.

    With ``check`` the value is compared against the expected codimension
    of the generated matroid over all intervals.
    """
    es = essential_set(irm)
    value = sum(irm.k - irm(i, j) for i, j in es.ones)
    if check:
        ec = ec_report(interval_matroid(irm), interval_family(irm.n)).ec
        if ec != value:
            raise ConsistencyError(f"codimension {value} from ones but {ec} from the matroid")
    return value


def select_shift(irm: IntervalRankMatrix) -> tuple[int, int] | None:
    """Shift ``(i - 1, j)`` for the essential ``[i, j]`` with ``i > 1`` furthest right."""
    movable = [(j, i) for i, j, _ in essential_set(irm).essential if i > 1]
    if not movable:
        return None
    j, i = max(movable)
    return i - 1, j


def apply_shift(irm: IntervalRankMatrix, i: int, j: int) -> IntervalRankMatrix:
    """Move the one essential condition containing ``j`` but not ``i`` onto ``i``."""
    conds = list(essential_set(irm).essential)
    hit = [c for c in conds if c[0] <= j <= c[1] and not c[0] <= i <= c[1]]
    if not hit:
        return irm
    if len(hit) > 1:
        raise AmbiguousShift(
            f"{len(hit)} essential intervals contain {j} but not {i}: {fmt_conditions(hit, irm.n)}"
        )
    a, b, r = hit[0]
    moved = sorted({t for t in range(a, b + 1) if t != j} | {i})
    if moved[-1] - moved[0] + 1 != len(moved):
        raise AmbiguousShift(f"shifting [{a},{b}] from {j} to {i} does not give an interval")
    conds[conds.index(hit[0])] = (moved[0], moved[-1], r)
    return irm_from_conditions(irm.n, irm.k, conds)


def _resolve(irm: IntervalRankMatrix, seen: set) -> list[IntervalRankMatrix]:
    if irm in seen:
        return []
    seen.add(irm)
    if not irm.pending:
        return [irm]
    a, j = irm.violations[0]
    r = irm(a + 1, j)
    out = []
    for cell, value in (((a, j + 1), r), ((a + 1, j), r - 1)):
        if value < 0 or cell[0] > cell[1]:
            continue
        conds = [(i, jj, value if (i, jj) == cell else v) for i, jj, v in irm.entries()]
        try:
            child = irm_from_conditions(irm.n, irm.k, conds)
        except InvalidBounds:
            continue
        out.extend(_resolve(child, seen))
    return out


def split_components(pending: IntervalRankMatrix, codim: int | None = None) -> list[IntervalRankMatrix]:
    """Resolve every corner violation both ways and keep the maximal pieces.

    ``codim`` is the parent's codimension: pieces above it are dropped and
    pieces below it mean something is broken.  Without it only pieces
    contained in another piece are dropped.
    """
    cands = list(dict.fromkeys(_resolve(pending, set())))
    if not cands:
        raise NoValidResolution("no resolution of the corner violations is a valid matrix")
    if codim is not None:
        codims = {c: codimension(c) for c in cands}
        low = [c for c in cands if codims[c] < codim]
        if low:
            raise ConsistencyError(
                f"a component has codimension {codims[low[0]]} below the parent's {codim}"
            )
        cands = [c for c in cands if codims[c] == codim]
    # a piece whose ranks sit weakly below another's is contained in it
    kept = [
        c for c in cands
        if not any(d is not c and np.all(c.table <= d.table) for d in cands)
    ]
    if not kept:
        raise NoValidResolution(f"no component of codimension {codim}")
    return kept


def schubert_partition(irm: IntervalRankMatrix) -> Partition:
    """Read the partition off the first row of a Schubert matrix."""
    if select_shift(irm) is not None:
        raise NotSchubert("some essential interval does not start at 1")
    row = irm.first_row()
    k = irm.k
    parts = [0] * k
    for v in range(k):
        last = max(m for m, val in enumerate(row) if val == v)
        parts[k - v - 1] = last - v
    return normalize(parts)


def schubert_conditions(lam: Partition, k: int, n: int) -> list[Condition]:
    """Initial-interval conditions ``rank [1, lam_i + k - i] <= k - i``."""
    lam = padded(normalize(lam), k)
    out = []
    for i in range(1, k + 1):
        end = lam[i - 1] + k - i
        if end >= 1 and k - i < end:
            out.append((1, end, k - i))
    return out


def richardson(lam, mu, k: int, n: int) -> IntervalRankMatrix:
    """Initial-interval conditions for ``lam`` and mirrored final-interval ones for ``mu``."""
    lam, mu = normalize(lam), normalize(mu)
    for p in (lam, mu):
        if not fits_box(p, k, n):
            raise InvalidBounds(f"{fmt_partition(p)} does not fit in the {k}x{n - k} box")
    lp, mp = padded(lam, k), padded(mu, k)
    for i in range(k):
        if lp[i] + mp[k - 1 - i] > n - k:
            raise EmptyIntersection(
                f"{fmt_partition(lam)} and {fmt_partition(mu)} have no common point in G({k},{n})"
            )
    conds = schubert_conditions(lam, k, n)
    conds += [(n + 1 - b, n, r) for _, b, r in schubert_conditions(mu, k, n)]
    try:
        return irm_from_conditions(n, k, conds)
    except InvalidBounds as e:
        raise EmptyIntersection(str(e)) from e


@dataclass
class TraceNode:
    """One interval rank matrix in the expansion tree.

    ``shift`` is the move applied to it, ``shifted`` the conditions right
    after the move, and ``children`` the components they split into.
    Leaves carry their ``partition``.
    """

    irm: IntervalRankMatrix
    codim: int
    shift: tuple[int, int] | None = None
    shifted: tuple[Condition, ...] = ()
    split: bool = False
    children: list["TraceNode"] = field(default_factory=list)
    partition: Partition | None = None

    def leaves(self):
        if self.partition is not None:
            yield self
        for c in self.children:
            yield from c.leaves()

    def render(self, indent: int = 0) -> str:
        n = self.irm.n
        pad = "  " * indent
        head = pad + fmt_conditions(essential_set(self.irm).essential, n)
        if self.partition is not None:
            return f"{head}  => {fmt_partition(self.partition)}"
        i, j = self.shift
        lines = [f"{head}  shift {i}→{j}"]
        if self.split:
            lines.append(
                f"{pad}  split {fmt_conditions(self.shifted, n)} into {len(self.children)}"
            )
            lines.extend(c.render(indent + 2) for c in self.children)
        else:
            lines.extend(c.render(indent + 1) for c in self.children)
        return "\n".join(lines)


@dataclass
class ShiftTrace:
    k: int
    n: int
    lam: Partition | None
    mu: Partition | None
    roots: list[TraceNode]

    def leaves(self):
        for r in self.roots:
            yield from r.leaves()

    def render(self) -> str:
        head = f"{fmt_partition(self.lam)} x {fmt_partition(self.mu)} in G({self.k},{self.n})"
        if self.lam is None:
            head = f"G({self.k},{self.n})"
        if not self.roots:
            return head + "\n(empty intersection)"
        body = []
        if len(self.roots) > 1:
            body.append(f"start splits into {len(self.roots)}")
        body.extend(r.render(1) for r in self.roots)
        return "\n".join([head] + body)


def _expand(irm: IntervalRankMatrix, codim: int, depth: int, limit: int) -> TraceNode:
    if depth > limit:
        raise NonTermination(f"more than {limit} shifts along one branch")
    node = TraceNode(irm, codim)
    move = select_shift(irm)
    if move is None:
        node.partition = schubert_partition(irm)
        return node
    node.shift = move
    shifted = apply_shift(irm, *move)
    node.shifted = shifted.conditions
    if shifted.pending:
        node.split = True
        parts = split_components(shifted, codim)
    else:
        parts = [shifted]
    for p in parts:
        c = codimension(p)
        if c != codim:
            raise ConsistencyError(f"shift {move[0]}→{move[1]} changed codimension {codim} to {c}")
        node.children.append(_expand(p, codim, depth + 1, limit))
    return node


def expand_irm(irm: IntervalRankMatrix, codim: int | None = None) -> tuple[dict[Partition, int], list[TraceNode]]:
    """Shift an interval rank matrix (pending or not) down to Schubert leaves.

    A pending start without ``codim`` keeps its components of smallest
    codimension, the ones that carry the top-degree class.
    """
    if irm.pending:
        roots = split_components(irm, codim)
        if codim is None:
            codim = min(codimension(m) for m in roots)
            roots = [m for m in roots if codimension(m) == codim]
    else:
        roots = [irm]
    limit = irm.n * irm.k * (irm.n + 1)
    nodes = []
    for m in roots:
        c = codimension(m)
        if codim is None:
            codim = c
        if c != codim:
            raise ConsistencyError(f"starting matrix has codimension {c}, expected {codim}")
        nodes.append(_expand(m, codim, 0, limit))
    counts = Counter(leaf.partition for node in nodes for leaf in node.leaves())
    expansion = {p: counts[p] for p in sorted(counts, reverse=True)}
    return expansion, nodes


def lr_expand(lam, mu, k: int, n: int) -> tuple[dict[Partition, int], ShiftTrace]:
    """Expand ``sigma_lam * sigma_mu`` in ``G(k, n)`` by repeated shifting."""
    lam, mu = normalize(lam), normalize(mu)
    trace = ShiftTrace(k, n, lam, mu, [])
    try:
        start = richardson(lam, mu, k, n)
    except EmptyIntersection:
        return {}, trace
    expansion, trace.roots = expand_irm(start, sum(lam) + sum(mu))
    return expansion, trace


def fmt_expansion(expansion: dict[Partition, int]) -> str:
    if not expansion:
        return "0"
    return ", ".join(f"{fmt_partition(p)}: {c}" for p, c in sorted(expansion.items(), reverse=True))
