"""Tiny-scale experiment: commutative versus non-commutative metrizability.

For every topology on at most ``--points`` points, and every MVS of size
at most ``--max-size`` (up to relabelling of tables, not isomorphism),
record which MVSs metrize it.  The script then lists topologies that some
non-commutative MVS metrizes while no commutative MVS in the same range
does.

Only the explored range is covered.  An empty list says nothing about
larger MVSs or point sets, and a non-empty list says nothing about
commutative MVSs beyond ``--max-size``.
"""

import argparse
from collections import defaultdict

from mvskit._search import monoid_tables
from mvskit.core import RawTable, check_axioms, validate
from mvskit.errors import BudgetExceeded
from mvskit.topology import FiniteTopology, search_metrizable


def all_mvs(max_size):
    out = []
    for n in range(2, max_size + 1):
        names = tuple(str(i) for i in range(n))
        for t in monoid_tables(n, no_zero_divisors=True):
            raw = RawTable(names, t)
            if check_axioms(raw).ok:
                out.append(validate(raw))
    return out


def all_topologies(n):
    pts = tuple(f"p{i}" for i in range(n))
    full = (1 << n) - 1
    middle = list(range(1, full))
    for bits in range(1 << len(middle)):
        opens = {0, full} | {middle[i] for i in range(len(middle)) if bits >> i & 1}
        if all(u | v in opens and u & v in opens for u in opens for v in opens):
            yield FiniteTopology(pts, frozenset(opens))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=3)
    ap.add_argument("--max-size", type=int, default=4)
    ap.add_argument("--budget", type=int, default=2 ** 20)
    args = ap.parse_args()

    mvss = all_mvs(args.max_size)
    comm = sum(M.commutative for M in mvss)
    print(f"{len(mvss)} MVS tables of size <= {args.max_size} ({comm} commutative)")

    flagged = 0
    for n in range(1, args.points + 1):
        tops = list(all_topologies(n))
        hits = defaultdict(lambda: {"comm": 0, "noncomm": 0, "skipped": 0})
        for T in tops:
            for M in mvss:
                try:
                    q = search_metrizable(T, M, budget=args.budget)
                except BudgetExceeded:
                    hits[T]["skipped"] += 1
                    continue
                if q is not None:
                    hits[T]["comm" if M.commutative else "noncomm"] += 1
        print(f"\n{n} point(s): {len(tops)} topologies")
        for T in tops:
            h = hits[T]
            opens = " ".join("{" + ",".join(T.points[i] for i in sorted(s)) + "}" for s in T.open_sets())
            only = h["noncomm"] and not h["comm"]
            flagged += bool(only)
            flag = "  <- only non-commutative" if only else ""
            print(f"  comm={h['comm']:3d} noncomm={h['noncomm']:3d} skipped={h['skipped']:3d}  {opens}{flag}")
    print(f"\ntopologies metrized only by non-commutative tables in this range: {flagged}")


if __name__ == "__main__":
    main()
