"""Covering survey: how often random maximal lattice-free sets of each type cover.

    python3 scripts/covering_survey.py --per-type 40 --seed 1
"""
import argparse
import json
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from latcut.latticefree import TAGS, random_scene
from latcut.lifting import covering_fraction, lifting_region


@dataclass
class SurveyConfig:
    per_type: int = 20
    seed: int = 0
    kinds: list = field(default_factory=lambda: list(TAGS))
    out: str | None = None


def survey(cfg: SurveyConfig) -> dict:
    rows = {}
    for kind in cfg.kinds:
        rng = random.Random(f"{cfg.seed}-{kind}")
        fracs = []
        t0 = time.perf_counter()
        for _ in range(cfg.per_type):
            fracs.append(covering_fraction(lifting_region(random_scene(kind, rng))))
        rows[kind] = {
            "instances": len(fracs),
            "covering": sum(f == 1 for f in fracs),
            "min_fraction": str(min(fracs)),
            "mean_fraction": f"{float(sum(fracs, Fraction(0)) / len(fracs)):.4f}",
            "seconds": round(time.perf_counter() - t0, 2),
        }
    return {"config": asdict(cfg), "by_type": rows}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--per-type", type=int, default=SurveyConfig.per_type)
    ap.add_argument("--seed", type=int, default=SurveyConfig.seed)
    ap.add_argument("--kinds", nargs="*", default=list(TAGS), choices=TAGS)
    ap.add_argument("--out")
    a = ap.parse_args()
    res = survey(SurveyConfig(a.per_type, a.seed, a.kinds, a.out))
    print(f"{'type':<16}{'n':>5}{'cover':>7}{'min':>14}{'mean':>9}{'sec':>8}")
    for kind, r in res["by_type"].items():
        print(f"{kind:<16}{r['instances']:>5}{r['covering']:>7}{float(Fraction(r['min_fraction'])):>14.4f}"
              f"{r['mean_fraction']:>9}{r['seconds']:>8}")
    if a.out:
        with open(a.out, "w", encoding="utf-8") as fh:
            json.dump(res, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
