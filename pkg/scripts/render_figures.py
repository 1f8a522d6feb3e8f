"""Render each canonical scene with its lifting region as SVG.

    python3 scripts/render_figures.py --outdir figures
"""
import argparse
import os
import random
from dataclasses import dataclass

from latcut.cli import render_svg
from latcut.latticefree import TAGS, make_canonical, random_scene
from latcut.lifting import covering_fraction, lifting_region


@dataclass
class FigureConfig:
    outdir: str = "figures"
    random_instances: int = 0  # extra seeded random scenes per type
    seed: int = 0
    scale: int = 60


def render_all(cfg: FigureConfig) -> list:
    os.makedirs(cfg.outdir, exist_ok=True)
    written = []
    for kind in TAGS:
        rng = random.Random(f"{cfg.seed}-{kind}")
        scenes = [("canonical", make_canonical(kind))]
        scenes += [(f"random{i}", random_scene(kind, rng)) for i in range(cfg.random_instances)]
        for label, sc in scenes:
            region = lifting_region(sc)
            path = os.path.join(cfg.outdir, f"{kind}_{label}.svg")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(render_svg(sc, region.full_spindles(), cfg.scale))
            written.append((path, covering_fraction(region)))
    return written


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", default=FigureConfig.outdir)
    ap.add_argument("--random", type=int, default=0, dest="random_instances")
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    for path, frac in render_all(FigureConfig(a.outdir, a.random_instances, a.seed)):
        print(f"{path}  covering={frac}")


if __name__ == "__main__":
    main()
