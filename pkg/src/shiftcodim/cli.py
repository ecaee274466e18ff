"""Command-line front end.

Exit codes: 0 success, 1 the input is mathematically invalid, 2 the input
could not be parsed, 3 two independent computations disagreed.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

from .errors import ConsistencyError, MatroidError, ParseError
from .expected import (
    SetFamily,
    cyclic_interval_family,
    ec_from_s,
    ec_report,
    flacets,
    interval_family,
    s_polynomial,
    tutte_polynomial,
)
from .interval import ShiftTrace, expand_irm, fmt_expansion, irm_from_conditions, lr_expand
from .lr import schur_product_in_box
from .matroid import Matroid, RankCondition, elements, fmt_set
from .partitions import fmt_partition, parse_partition, partitions_in_box
from .positroid import (
    BoundedAffinePermutation,
    affine_length,
    affine_permutation,
    cyclic_rank_matrix,
    is_positroid,
    permutation_to_matroid,
    positroid_ec,
)

HEADER = re.compile(r"^\s*n\s*=\s*(\d+)\s+k\s*=\s*(\d+)\s*$")
PERM = re.compile(r"^\s*perm\s+([\d,\s]+?)\s+k\s*=\s*(\d+)\s*$")


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if line.strip():
            yield no, raw, line


def _parse_set(token: str, n: int, line: int, raw: str) -> int:
    col = raw.find(token.strip()) + 1 or None
    m = 0
    for part in token.split(","):
        part = part.strip()
        if not part.isdigit():
            raise ParseError(f"expected an element, got {part!r}", line, col)
        e = int(part)
        if not 1 <= e <= n:
            raise ParseError(f"element {e} is outside [1, {n}]", line, col)
        if m >> (e - 1) & 1:
            raise ParseError(f"element {e} repeated", line, col)
        m |= 1 << (e - 1)
    return m


def parse_header(text: str) -> tuple[int, int, list]:
    """Split a matroid file into ``(n, k, body)`` where body lines keep their numbers."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input", 1, 1)
    no, raw, line = lines[0]
    h = HEADER.match(line)
    if not h:
        raise ParseError("expected a header 'n=<int> k=<int>'", no, 1)
    n, k = int(h.group(1)), int(h.group(2))
    if not 0 < n <= 16 or k > n:
        raise ParseError(f"need 1 <= n <= 16 and k <= n, got n={n} k={k}", no, 1)
    return n, k, lines[1:]


def parse_rank_lines(n: int, body) -> list[tuple[int, int]]:
    conds = []
    for no, raw, line in body:
        word, _, rest = line.strip().partition(" ")
        if word != "rank":
            raise ParseError(f"expected 'rank <csv> : <int>', got {word!r}", no, raw.find(word) + 1)
        if rest.count(":") != 1:
            raise ParseError("rank line needs exactly one ':'", no, len(raw.rstrip()) + 1)
        sets, bound = rest.split(":")
        S = _parse_set(sets, n, no, raw)
        bound = bound.strip()
        if not bound.isdigit():
            raise ParseError(f"expected a rank bound, got {bound!r}", no, raw.rfind(":") + 2)
        b = int(bound)
        if b > S.bit_count():
            raise ParseError(f"bound {b} exceeds |{fmt_set(S)}|", no, raw.rfind(":") + 2)
        conds.append((S, b))
    return conds


def parse_input(text: str) -> Matroid | BoundedAffinePermutation:
    """Read a matroid (bases or rank conditions) or a ``perm`` line."""
    lines = list(_content_lines(text))
    if lines and lines[0][2].lstrip().startswith("perm"):
        no, raw, line = lines[0]
        m = PERM.match(line)
        if not m or len(lines) > 1:
            raise ParseError("expected 'perm <csv> k=<int>'", no, 1)
        try:
            window = tuple(int(t) for t in m.group(1).split(","))
        except ValueError:
            raise ParseError("permutation values must be integers", no, raw.find(m.group(1)) + 1) from None
        pi = BoundedAffinePermutation(window)
        if sum(p - i for i, p in enumerate(window, 1)) != int(m.group(2)) * len(window):
            raise ParseError(f"permutation has degree {pi.k}, not k={m.group(2)}", no, 1)
        return pi
    n, k, body = parse_header(text)
    if not body:
        return Matroid.from_rank_conditions(n, [], k)
    first = body[0][2].strip()
    if first.startswith("bases"):
        if len(body) > 1:
            raise ParseError("a 'bases' line must be the only line after the header", body[1][0], 1)
        no, raw, line = body[0]
        items = line.strip()[len("bases"):].split(";")
        bases = [_parse_set(t, n, no, raw) for t in items]
        M = Matroid.from_bases(n, bases)
        if M.k != k:
            raise ParseError(f"bases have size {M.k}, header says k={k}", 1, 1)
        return M
    M = Matroid.from_rank_conditions(n, [RankCondition(S, b) for S, b in parse_rank_lines(n, body)], k)
    if M.k != k:
        raise ParseError(f"conditions force rank {M.k}, header says k={k}", 1, 1)
    return M


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None


def _matroid(path: str) -> Matroid:
    obj = parse_input(_read(path))
    if isinstance(obj, BoundedAffinePermutation):
        return permutation_to_matroid(obj)
    return obj


def _set_key(m: int) -> str:
    return ",".join(map(str, elements(m)))


def _dump(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)


def cmd_ec(args) -> int:
    M = _matroid(args.input)
    family: SetFamily | None = None
    if args.family == "intervals":
        family = interval_family(M.n)
    elif args.family == "cyclic":
        family = cyclic_interval_family(M.n)
    elif args.family == "flacets":
        family = flacets(M)
    rep = ec_report(M, family)
    if args.json:
        print(_dump({
            "n": M.n,
            "k": M.k,
            "family": args.family,
            "ec": rep.ec,
            "a": {_set_key(m): v for m, v in rep.nonzero("a").items()},
            "b": {_set_key(m): v for m, v in rep.nonzero("b").items()},
        }))
    else:
        print(f"ec = {rep.ec}")
    return 0


def cmd_positroid(args) -> int:
    M = _matroid(args.input)
    if not is_positroid(M):
        if args.json:
            print(_dump({"n": M.n, "k": M.k, "positroid": False}))
        else:
            print("not a positroid")
        return 1
    crm = cyclic_rank_matrix(M)
    pi = affine_permutation(crm)
    ec = positroid_ec(M)
    length = affine_length(pi)
    if args.json:
        print(_dump({
            "n": M.n, "k": M.k, "positroid": True, "ec": ec, "length": length,
            "permutation": list(pi.window), "cyclic_rank_matrix": crm.table.tolist(),
        }))
    else:
        print(crm.render())
        print(f"pi = {pi}")
        print(f"length = {length}")
        print(f"ec = {ec}")
    return 0 if ec == length else 3


def cmd_spoly(args) -> int:
    M = _matroid(args.input)
    s = s_polynomial(M)
    if args.json:
        terms = {",".join(map(str, mono)): int(c) for mono, c in s.terms()}
        print(_dump({"n": M.n, "k": M.k, "terms": terms, "ec_from_s": ec_from_s(M, s)}))
    else:
        print(f"s = {s.as_expr()}")
    return 0


def cmd_tutte(args) -> int:
    M = _matroid(args.input)
    print(f"t = {tutte_polynomial(M).as_expr()}")
    return 0


def _expansion_json(expansion) -> dict:
    return {",".join(map(str, p)): c for p, c in expansion.items()}


def cmd_lr(args) -> int:
    k, n = args.k, args.n
    lam, mu = parse_partition(args.lam), parse_partition(args.mu)
    if args.x not in ("x", "*"):
        raise ParseError(f"expected 'x' between the partitions, got {args.x!r}")
    expansion, trace = lr_expand(lam, mu, k, n)
    status = 0
    if args.check:
        oracle = schur_product_in_box(lam, mu, k, n, cross_check=True)
        if oracle != expansion:
            print(f"oracle mismatch: pipeline {fmt_expansion(expansion)}, oracle {fmt_expansion(oracle)}",
                  file=sys.stderr)
            status = 3
    if args.json:
        print(_dump({"k": k, "n": n, "lambda": list(lam), "mu": list(mu),
                     "expansion": _expansion_json(expansion)}))
    else:
        if args.trace:
            print(trace.render())
        print(fmt_expansion(expansion))
    return status


def cmd_shift_trace(args) -> int:
    n, k, body = parse_header(_read(args.input))
    conds = []
    for (S, b), (no, raw, _) in zip(parse_rank_lines(n, body), body):
        els = elements(S)
        if els[-1] - els[0] + 1 != len(els):
            raise ParseError(f"{fmt_set(S)} is not an interval", no, 1)
        conds.append((els[0], els[-1], b))
    expansion, roots = expand_irm(irm_from_conditions(n, k, conds))
    trace = ShiftTrace(k, n, None, None, roots)
    if args.json:
        print(_dump({"n": n, "k": k, "expansion": _expansion_json(expansion)}))
    else:
        print(trace.render())
        print(fmt_expansion(expansion))
    return 0


def cmd_check(args) -> int:
    k, n = args.k, args.n
    pairs = bad = 0
    width = n - k
    for lam in partitions_in_box(k, width):
        for mu in partitions_in_box(k, width):
            pairs += 1
            got, _ = lr_expand(lam, mu, k, n)
            want = schur_product_in_box(lam, mu, k, n, cross_check=True)
            if got != want:
                bad += 1
                print(f"{fmt_partition(lam)} x {fmt_partition(mu)}: "
                      f"pipeline {fmt_expansion(got)}, oracle {fmt_expansion(want)}")
    print(f"{pairs - bad}/{pairs} products agree in G({k},{n})")
    return 3 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="shiftcodim", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def with_input(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("input", help="matroid file, or - for stdin")
        sp.add_argument("--json", action="store_true")
        sp.set_defaults(fn=fn)
        return sp

    ec = with_input("ec", cmd_ec, "expected codimension")
    ec.add_argument("--family", choices=["all", "intervals", "cyclic", "flacets"], default="all")
    with_input("positroid", cmd_positroid, "cyclic rank matrix, affine permutation, length")
    with_input("spoly", cmd_spoly, "the s-polynomial in x, y, z")
    with_input("tutte", cmd_tutte, "s(x-1, y-1, 0)")
    with_input("shift-trace", cmd_shift_trace, "shift an interval-condition file to Schuberts")

    lr = sub.add_parser("lr", help="product of two Schubert classes")
    lr.add_argument("k", type=int)
    lr.add_argument("n", type=int)
    lr.add_argument("lam", help="first partition, e.g. 2,1")
    lr.add_argument("x", help="the literal x")
    lr.add_argument("mu", help="second partition")
    lr.add_argument("--trace", action="store_true")
    lr.add_argument("--check", action="store_true", help="compare with the tableau oracle")
    lr.add_argument("--json", action="store_true")
    lr.set_defaults(fn=cmd_lr)

    ck = sub.add_parser("check", help="compare every product in a box with the oracle")
    ck.add_argument("k", type=int)
    ck.add_argument("n", type=int)
    ck.set_defaults(fn=cmd_check)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except ConsistencyError as e:
        print(f"consistency failure: {e}", file=sys.stderr)
        return 3
    except MatroidError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
