"""Command-line entry point: ``latcut <subcommand> ...``.

Exit codes: 0 success, 1 usage or input error, 2 verification failure,
3 budget exhausted.
"""
from __future__ import annotations

import argparse
import os
import random
import sys
from fractions import Fraction
from math import ceil, floor

from . import exactgeo as eg
from . import io
from .cgf import cut_from_set
from .errors import BudgetExhausted, DimensionUnsupported, InputError, LatcutError, VerificationError
from .exactgeo import HPolyhedron, IntBox
from .groupfn import certify_nplus1_hypotheses, certify_two_slope_extreme, check_minimal, PwlPeriodic1D
from .latticefree import TAGS, classify_2d, cyclic_order, make_canonical, random_scene
from .lifting import (
    Spindle,
    TranslationGroup,
    covering_fraction,
    lifting_region,
    translation_group,
    trivial_lifting_certified,
)
from .cgf import gauge_from_polyhedron
from .oracle import EXHAUSTED, EnumBudget, cut_validity_bruteforce


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return io.load(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _scene(args, path=None):
    return io.scene_from(_read(path or args.scene), args.window)


def _seed(args) -> int:
    env = os.environ.get("LATCUT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError("LATCUT_SEED must be an integer") from exc
    return args.seed


def _b_of(args, data):
    raw = args.b if args.b is not None else data.get("b")
    if raw is None:
        raise InputError("need b (flag --b or field 'b')")
    if isinstance(raw, list):
        return io.parse_vec(raw)
    return tuple(io.parse_rat(x) for x in str(raw).split(","))


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(args):
    sc = _scene(args)
    c = classify_2d(sc.K, sc.S, sc.window)
    _emit(io.dump({"tag": c.tag, "witnesses": io.plain(c.witnesses), "certificate": io.plain(c.certificate)}),
          args.output)


def cmd_cut(args):
    t = io.tableau_from(_read(args.tableau))
    sc = _scene(args)
    _emit(io.dump({"cut": io.cut_to(cut_from_set(t, sc))}), args.output)


def cmd_lift(args):
    if args.scene:
        sc = _scene(args)
        psi, W = gauge_from_polyhedron(sc.K), translation_group(sc.S)
    elif args.psi:
        d = _read(args.psi)
        psi = io.maxform_from(d)
        basis = d.get("W")
        W = TranslationGroup(psi.dim, tuple(io.parse_vec(w) for w in basis)) if basis is not None else \
            TranslationGroup(psi.dim, tuple(tuple(int(i == j) for j in range(psi.dim)) for i in range(psi.dim)))
    else:
        raise UsageError("lift needs --scene or --psi")
    pts = _read(args.points).get("points")
    if not isinstance(pts, list):
        raise InputError("points file needs a 'points' list")
    out = []
    for p in pts:
        r = trivial_lifting_certified(psi, W, io.parse_vec(p))
        out.append({"p": p, "value": io.q(r.value), "w": io.qv(r.w),
                    "window": None if r.window is None else io.box_to(r.window)})
    _emit(io.dump({"values": out}), args.output)


def cmd_region(args):
    R = lifting_region(_scene(args))
    cov = covering_fraction(R) if R.n <= 2 else None
    _emit(io.dump(io.region_to(R, cov)), args.output)


def cmd_cover(args):
    R = lifting_region(_scene(args))
    _emit(io.dump({"fraction": io.q(covering_fraction(R))}), args.output)


def cmd_check_minimal(args):
    d = _read(args.pi)
    rep = check_minimal(io.pwl_from(d), _b_of(args, d))
    _emit(io.dump(io.plain(rep._asdict())), args.output)


def cmd_certify(args):
    d = _read(args.pi)
    pi, b = io.pwl_from(d), _b_of(args, d)
    cert = certify_two_slope_extreme(pi, b) if isinstance(pi, PwlPeriodic1D) else certify_nplus1_hypotheses(pi, b)
    _emit(io.dump(cert.to_dict()), args.output)


def cmd_render(args):
    d = _read(args.input)
    if "spindles" in d:
        sc = io.scene_from(io._need(d, "scene"), args.window)
        spins = [Spindle(io.hpoly_from(t["T"]), io.parse_vec(t["s"]), int(t["k"])) for t in d["spindles"]]
    else:
        sc = io.scene_from(d, args.window)
        spins = lifting_region(sc).spindles if args.spindles else []
    _emit(render_svg(sc, spins), args.output)


def cmd_canonical(args):
    if args.random:
        sc = random_scene(args.kind, random.Random(_seed(args)))
    else:
        sc = make_canonical(args.kind)
    _emit(io.dump(io.scene_to(sc)), args.output)


def _box(spec: str, dim: int) -> IntBox:
    try:
        lo, hi = (int(x) for x in spec.split(":"))
    except ValueError as exc:
        raise UsageError(f"box must look like LO:HI, got {spec!r}") from exc
    return IntBox((lo,) * dim, (hi,) * dim)


def cmd_validate(args):
    t = io.tableau_from(_read(args.tableau))
    cut = io.cut_from(io._need(_read(args.cut), "cut"))
    ell = len(t.int_cols)
    budget = EnumBudget(_box(args.ybox, ell) if ell else None, _box(args.wbox, t.n), args.max_lp)
    v = cut_validity_bruteforce(cut, t, budget)
    _emit(io.dump(io.plain(v.to_dict())), args.output)
    if v.status == EXHAUSTED:
        raise BudgetExhausted("LP budget exhausted")


# ---------------------------------------------------------------------------
# SVG


def _f(x) -> str:
    return f"{float(x):.6f}"


def _ordered(V):
    if len(V) < 3:
        return list(V)
    c = tuple(sum(v[i] for v in V) / len(V) for i in range(2))
    rel = [eg.vsub(v, c) for v in V]
    return [V[i] for i in cyclic_order(rel)]


def render_svg(scene, spindles=(), scale: int = 60) -> str:
    """Deterministic SVG of K, the points b + Z^2 and the given spindles."""
    if scene.n != 2:
        raise DimensionUnsupported("rendering needs n = 2")
    K = scene.K
    clip = HPolyhedron.box((-5, -5), (5, 5))
    lo, hi = eg.bounding_box(K.intersect(clip))
    lo = tuple(Fraction(floor(x) - 1) for x in lo)
    hi = tuple(Fraction(ceil(x) + 1) for x in hi)
    view = HPolyhedron.box(lo, hi)
    W, H = (hi[0] - lo[0]) * scale, (hi[1] - lo[1]) * scale
    X = lambda x: _f((x - lo[0]) * scale)
    Y = lambda y: _f((hi[1] - y) * scale)

    def poly(P, attrs):
        V = _ordered(eg.vertices(P.intersect(view)))
        if len(V) < 2:
            return None
        pts = " ".join(f"{X(v[0])},{Y(v[1])}" for v in V)
        return f'  <polygon points="{pts}" {attrs}/>'

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(W)}" height="{_f(H)}" '
           f'viewBox="0 0 {_f(W)} {_f(H)}">',
           f'  <rect x="0" y="0" width="{_f(W)}" height="{_f(H)}" fill="white"/>']
    for t in spindles:
        if not t.full_dimensional:
            continue
        el = poly(t.base, 'fill="#555555" fill-opacity="0.6" stroke="#333333" stroke-width="1"')
        if el:
            out.append(el)
    el = poly(K, 'fill="#dde8f5" fill-opacity="0.5" stroke="none"')
    if el:
        out.insert(2, el)
    # facets as segments, so an unbounded K is not closed off by the view
    Kv = eg.vertices(K.intersect(view))
    for a, b in eg.irredundant_hrep(K).rows:
        on = sorted(v for v in Kv if eg.dot(a, v) == b)
        if len(on) >= 2:
            p, r = on[0], on[-1]
            out.append(f'  <line x1="{X(p[0])}" y1="{Y(p[1])}" x2="{X(r[0])}" y2="{Y(r[1])}" '
                       'stroke="black" stroke-width="2"/>')
    win = eg.lattice_window(view, scene.S.b)
    if win is not None:
        for z in win.points():
            x = tuple(bi + zi for bi, zi in zip(scene.S.b, z))
            fill = "black" if scene.S.contains(x) else "none"
            out.append(f'  <circle cx="{X(x[0])}" cy="{Y(x[1])}" r="4" fill="{fill}" stroke="black"/>')
    out.append(f'  <circle cx="{X(0)}" cy="{Y(0)}" r="2" fill="red"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-o", "--output", help="write here instead of stdout")
    common.add_argument("--window", type=int, help="verification window radius")
    common.add_argument("--seed", type=int, default=0, help="random seed (LATCUT_SEED overrides)")

    p = _Parser(prog="latcut", description="Cuts from lattice-free sets, exactly.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("classify", parents=[common], help="classify a 2D maximal lattice-free scene")
    s.add_argument("scene")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("cut", parents=[common], help="intersection cut with trivial lifting")
    s.add_argument("tableau")
    s.add_argument("scene")
    s.set_defaults(func=cmd_cut)

    s = sub.add_parser("lift", parents=[common], help="trivial lifting values")
    s.add_argument("--scene")
    s.add_argument("--psi")
    s.add_argument("--points", required=True)
    s.set_defaults(func=cmd_lift)

    for name, fn, hlp in (("region", cmd_region, "lifting region as JSON"),
                          ("cover", cmd_cover, "covering fraction")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("scene")
        s.set_defaults(func=fn)

    for name, fn, hlp in (("check-minimal", cmd_check_minimal, "minimality report"),
                          ("certify-extreme", cmd_certify, "extremality certificate or refusal")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("pi")
        s.add_argument("--b", help="comma-separated rationals; defaults to the file's 'b'")
        s.set_defaults(func=fn)

    s = sub.add_parser("render", parents=[common], help="SVG of a scene or region")
    s.add_argument("input")
    s.add_argument("--spindles", action="store_true", help="compute and shade spindles for a scene")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("canonical", parents=[common], help="emit a canonical scene")
    s.add_argument("kind", choices=TAGS)
    s.add_argument("--random", action="store_true", help="seeded random parameters")
    s.set_defaults(func=cmd_canonical)

    s = sub.add_parser("validate", parents=[common], help="brute-force cut validity")
    s.add_argument("cut")
    s.add_argument("tableau")
    s.add_argument("--ybox", default="0:5")
    s.add_argument("--wbox", default="-5:5")
    s.add_argument("--max-lp", type=int, default=100_000)
    s.set_defaults(func=cmd_validate)
    return p


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 3
    except VerificationError as exc:
        print(f"verification failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (LatcutError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
