"""Search every abelian group up to a bound and tabulate solution shapes.

    python3 scripts/sweep.py [--bound 21] [--jobs N]
"""

from __future__ import annotations

import argparse
import time
from collections import Counter

from tworoot.abelian import abelian_groups_up_to
from tworoot.search import DEFAULT_MAX_ORDER, search_two_root


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bound", type=int, default=21)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args(argv)
    for G in abelian_groups_up_to(args.bound):
        start = time.perf_counter()
        rep = search_two_root(G, jobs=args.jobs, max_order=max(DEFAULT_MAX_ORDER, G.order))
        tags = Counter(s.classification.tag for s in rep.solutions)
        shown = " ".join(f"{t}={n}" for t, n in sorted(tags.items()))
        print(f"group={G.name()} solutions={len(rep.solutions)} {shown} "
              f"candidates={rep.stats.candidates} elapsed={time.perf_counter() - start:.2f}s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
