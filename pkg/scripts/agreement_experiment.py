"""Three-way agreement on a random corpus, with a breakdown of failing conditions.

    python3 scripts/agreement_experiment.py --size 200 --seed 1 --degree 4
"""
import argparse
import time
from collections import Counter
from dataclasses import replace

from pbwdeform.corpus import CorpusConfig, corpus
from pbwdeform.hochschild import check_homological
from pbwdeform.pbw import check_direct, check_oracle


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=120)
    ap.add_argument("--seed", type=int, default=CorpusConfig.seed)
    ap.add_argument("--degree", type=int, default=4)
    args = ap.parse_args()
    cfg = replace(CorpusConfig(), size=args.size, seed=args.seed)

    times = Counter()
    fails = Counter()
    by_group = Counter()
    agree = per_cond = total = pbw = 0
    for spec in corpus(cfg):
        total += 1
        t = time.perf_counter()
        d = check_direct(spec)
        times["direct"] += time.perf_counter() - t
        t = time.perf_counter()
        h = check_homological(spec)
        times["homological"] += time.perf_counter() - t
        t = time.perf_counter()
        o = check_oracle(spec, args.degree)
        times["oracle"] += time.perf_counter() - t

        agree += d.passed == h.passed == o.passed
        per_cond += d.verdicts() == h.verdicts()
        pbw += d.passed
        by_group[(spec.group.order, d.passed)] += 1
        for c in d.conditions:
            if not c.passed:
                fails[c.name] += 1

    print(f"specs {total}, PBW {pbw}")
    print(f"verdict agreement {agree}/{total}, per-condition {per_cond}/{total}")
    for (g, ok), k in sorted(by_group.items()):
        print(f"  |G|={g} {'PBW' if ok else 'not PBW'}: {k}")
    print("failing conditions (direct, a spec may fail several):")
    for name, k in sorted(fails.items()):
        print(f"  {name}: {k}")
    for m, t in times.items():
        print(f"time {m}: {t:.2f}s")


if __name__ == "__main__":
    main()
