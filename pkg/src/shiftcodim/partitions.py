"""Partitions in a ``k x (n - k)`` box."""

from __future__ import annotations

from typing import Iterable, Iterator

Partition = tuple[int, ...]


def normalize(parts: Iterable[int]) -> Partition:
    """Drop zero parts; reject increasing or negative sequences."""
    p = tuple(int(v) for v in parts)
    if any(v < 0 for v in p):
        raise ValueError(f"negative part in {p}")
    if any(a < b for a, b in zip(p, p[1:])):
        raise ValueError(f"{p} is not weakly decreasing")
    return tuple(v for v in p if v)


def fits_box(p: Partition, k: int, n: int) -> bool:
    return len(p) <= k and all(v <= n - k for v in p)


def padded(p: Partition, length: int) -> Partition:
    return tuple(p) + (0,) * (length - len(p))


def partitions_in_box(k: int, width: int, size: int | None = None) -> Iterator[Partition]:
    """Partitions with at most ``k`` parts, each at most ``width``, in reverse lex order."""

    def rec(rows_left: int, cap: int, prefix: tuple[int, ...], left: int | None):
        if left is None or left == 0:
            yield prefix
        if rows_left == 0 or left == 0:
            return
        top = cap if left is None else min(cap, left)
        for v in range(top, 0, -1):
            if left is not None and v * rows_left < left:
                break
            yield from rec(rows_left - 1, v, prefix + (v,), None if left is None else left - v)

    yield from sorted(rec(k, width, (), size), reverse=True)


def contains(big: Partition, small: Partition) -> bool:
    return len(small) <= len(big) and all(a >= b for a, b in zip(big, small))


def fmt_partition(p: Partition) -> str:
    return "σ(" + ",".join(map(str, p)) + ")" if p else "σ∅"


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if text in ("", "0", "∅", "()"):
        return ()
    return normalize(int(t) for t in text.strip("()").split(","))
