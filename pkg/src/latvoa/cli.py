"""Command-line front end: ``latvoa {verify,character,mode,fuse,count,show,build}``.

Exit status is 0 when every check passes, 1 when a check fails and 2 on a
usage error or when the request is larger than the desk-scale budget.
"""

from __future__ import annotations

import argparse
import inspect
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import fusion
from .fock import ContextError, LatticeVOA, format_state, parse_state
from .lattice import LATTICE_KINDS, LatticeError, make_lattice, named_lattice
from .structures import dmk_context, ambient_context, sl2_context
from .subalgebra import ClosureBudgetExceeded, Window, character_json, close, full_character
from .verify import SUITES, DeskScaleError, emit_report, slice_dimension
from .vertex import mode

CLOSURE_SLICE_BUDGET = 3000


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    m: int | None = None
    k: int | None = None
    n: int | None = None
    cutoff: Fraction | None = None
    charge_bound: int | None = None
    output: str = "json"
    seed: int = 0
    override: bool = False

    def __post_init__(self):
        for name in ("m", "k", "n"):
            val = getattr(self, name)
            if val is not None and name != "n" and val < 0:
                raise UsageError(f"--{name} must be nonnegative")
        if self.charge_bound is not None and self.charge_bound < 0:
            raise UsageError("--charge-bound must be nonnegative")


def _config(args) -> RunConfig:
    override = bool(getattr(args, "big", False)) or os.environ.get("LATVOA_BUDGET_OVERRIDE", "") not in ("", "0")
    cutoff = getattr(args, "cutoff", None)
    return RunConfig(
        command=args.command,
        m=getattr(args, "m", None),
        k=getattr(args, "k", None),
        n=getattr(args, "n", None),
        cutoff=Fraction(cutoff) if cutoff is not None else None,
        charge_bound=getattr(args, "charge_bound", None),
        output="text" if getattr(args, "text", False) else "json",
        seed=getattr(args, "seed", 0) or 0,
        override=override,
    )


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _common(p, *names):
    if "m" in names:
        p.add_argument("--m", type=int)
    if "k" in names:
        p.add_argument("--k", type=int)
    if "n" in names:
        p.add_argument("--n", type=int)
    p.add_argument("--text", action="store_true", help="human-readable output instead of JSON")
    p.add_argument("--i-know-this-is-big", dest="big", action="store_true", help="lift the desk-scale budget")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="latvoa", description="Exact computations in lattice vertex (super)algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    _common(p, "m", "k", "n")
    p.add_argument("--cutoff", type=int)
    p.add_argument("--charge-bound", type=int)
    p.add_argument("--case", choices=["D1k", "Dm0"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int)
    p.add_argument("--negate-delta", action="store_true", help="relations: negative control with -delta")
    p.add_argument("--timing", action="store_true", help="include elapsed time (output is then not reproducible)")

    p = sub.add_parser("character", help="bigraded character of a truncated closure")
    p.add_argument("algebra", choices=["dmk", "sl2", "lattice", "ambient-V", "ambient-W"])
    _common(p, "m", "k", "n")
    p.add_argument("--cutoff", type=str, default="3", help="maximal weight")
    p.add_argument("--weight-min", type=str, default=None)
    p.add_argument("--charge-bound", type=int)

    p = sub.add_parser("mode", help="evaluate u_n v for serialized states")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--gram", help="Gram matrix as rows separated by ';', e.g. '2,1;1,2'")
    g.add_argument("--lattice", choices=LATTICE_KINDS)
    _common(p, "m", "k", "n")
    p.add_argument("--u", required=True, help="state, terms separated by ';'")
    p.add_argument("--v", required=True)
    p.add_argument("--mode", dest="index", type=int, required=True, help="the mode index n")

    p = sub.add_parser("fuse", help="fusion product of two labels")
    p.add_argument("ring", choices=["affine", "lattice"])
    p.add_argument("--level", type=int, help="affine level m")
    p.add_argument("--norm", type=int, help="lattice norm n")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("--text", action="store_true")

    p = sub.add_parser("count", help="number of irreducible D_{m,k}-modules")
    _common(p, "m", "k")

    p = sub.add_parser("show", help="print a named vector")
    p.add_argument("name")
    p.add_argument("--algebra", choices=["dmk", "sl2", "ambient"], default="dmk")
    _common(p, "m", "k", "n")

    p = sub.add_parser("build", help="build a named algebra context and print its vectors")
    p.add_argument("algebra", choices=["dmk", "sl2", "ambient"])
    _common(p, "m", "k", "n")
    return ap


def _need(val, flag):
    if val is None:
        raise UsageError(f"{flag} is required")
    return val


def _cmd_verify(args, cfg: RunConfig):
    fn = SUITES[args.suite]
    kw = {"override": cfg.override}
    params = inspect.signature(fn).parameters
    for flag in ("m", "k", "n", "cutoff", "charge_bound", "case", "seed", "count"):
        val = getattr(args, flag, None)
        if val is not None and flag in params:
            kw[flag] = val
    if args.negate_delta:
        kw["negate_delta"] = True
    for name, p in params.items():
        if p.default is inspect.Parameter.empty and name not in kw:
            raise UsageError(f"suite {args.suite} needs --{name.replace('_', '-')}")
    rep = fn(**kw)
    print(emit_report(rep, cfg.output, timing=args.timing))
    return 0 if rep.passed else 1


def _closure_target(args, cfg: RunConfig):
    if args.algebra == "dmk":
        ctx = dmk_context(_need(cfg.m, "--m"), _need(cfg.k, "--k"))
        return ctx.space, [ctx["X"], ctx["Y"]]
    if args.algebra == "sl2":
        ctx = sl2_context(_need(cfg.m, "--m"))
        return ctx.space, [ctx["E"], ctx["F"]]
    if args.algebra == "lattice":
        return LatticeVOA(named_lattice("Ln", n=_need(cfg.n, "--n"))), None
    ctx = ambient_context(_need(cfg.m, "--m"), _need(cfg.n, "--n"))
    names = ("E", "F", "e_beta", "e_-beta") if args.algebra == "ambient-V" else ("X", "Y", "e_delta", "e_-delta")
    return ctx.space, [ctx[x] for x in names]


def _cmd_character(args, cfg: RunConfig):
    wmax = Fraction(args.cutoff)
    wmin = Fraction(args.weight_min) if args.weight_min is not None else Fraction(0)
    space, gens = _closure_target(args, cfg)
    if not space.lattice.is_positive_definite() and cfg.charge_bound is None:
        raise UsageError("indefinite lattice: a closure needs --charge-bound")
    win = Window(wmin, wmax, cfg.charge_bound)
    if gens is None:
        char = full_character(space, win)
        method = "enumeration"
    else:
        size = slice_dimension(space, win)
        if size > CLOSURE_SLICE_BUDGET and not cfg.override:
            raise DeskScaleError(f"window slice has dimension {size} > {CLOSURE_SLICE_BUDGET}")
        char = close(gens, win).character()
        method = "closure"
    out = {"window": win.as_dict(), "method": method, "character": character_json(char)}
    if cfg.output == "text":
        for (w, q), d in char.items():
            print(f"weight {w}\tcharge {list(q)}\t{d}")
    else:
        print(_dump(out))
    return 0


def _parse_gram(text: str):
    try:
        return [[int(x) for x in row.split(",")] for row in text.split(";") if row.strip()]
    except ValueError as e:
        raise UsageError(f"cannot parse --gram {text!r}") from e


def _cmd_mode(args, cfg: RunConfig):
    if args.gram:
        L = make_lattice(_parse_gram(args.gram))
    else:
        L = named_lattice(args.lattice, m=cfg.m, k=cfg.k, n=cfg.n)
    space = LatticeVOA(L)
    u, v = parse_state(space, args.u), parse_state(space, args.v)
    r = mode(u, args.index, v)
    if cfg.output == "text":
        print(format_state(r))
    else:
        print(_dump({"u": format_state(u), "n": args.index, "v": format_state(v), "result": format_state(r)}))
    return 0


def _cmd_fuse(args, cfg: RunConfig):
    if args.ring == "affine":
        res = fusion.fuse_affine(_need(args.level, "--level"), args.a, args.b)
    else:
        res = fusion.fuse_lattice(_need(args.norm, "--norm"), args.a, args.b)
    print(repr(res) if cfg.output == "text" else _dump(res.as_dict()))
    return 0


def _cmd_count(args, cfg: RunConfig):
    c = fusion.count_irreducibles(_need(cfg.m, "--m"), _need(cfg.k, "--k"))
    print(c if cfg.output == "text" else _dump({"m": cfg.m, "k": cfg.k, "count": c}))
    return 0


def _context(args, cfg: RunConfig):
    if args.algebra == "dmk":
        m, k = _need(cfg.m, "--m"), _need(cfg.k, "--k")
        if (m > 4 or k > 6) and not cfg.override:
            raise DeskScaleError("dmk contexts are limited to m <= 4, k <= 6")
        return dmk_context(m, k)
    if args.algebra == "sl2":
        return sl2_context(_need(cfg.m, "--m"))
    return ambient_context(_need(cfg.m, "--m"), _need(cfg.n, "--n"))


def _cmd_show(args, cfg: RunConfig):
    ctx = _context(args, cfg)
    vectors = dict(ctx.vectors, omega=ctx.omega)
    if args.name not in vectors:
        raise UsageError(f"unknown vector {args.name!r}; choose from {', '.join(sorted(vectors))}")
    print(format_state(vectors[args.name]))
    return 0


def _cmd_build(args, cfg: RunConfig):
    ctx = _context(args, cfg)
    out = {
        "lattice": {"name": ctx.lattice.name, "gram": [list(r) for r in ctx.lattice.gram]},
        "vectors": {k: format_state(v) for k, v in ctx.vectors.items()},
        "omega": format_state(ctx.omega),
        "signs": ctx.signs,
    }
    if cfg.output == "text":
        for k, v in sorted(out["vectors"].items()):
            print(f"[{k}]\n{v}")
    else:
        print(_dump(out))
    return 0


COMMANDS = {
    "verify": _cmd_verify,
    "character": _cmd_character,
    "mode": _cmd_mode,
    "fuse": _cmd_fuse,
    "count": _cmd_count,
    "show": _cmd_show,
    "build": _cmd_build,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except (UsageError, DeskScaleError, ClosureBudgetExceeded) as e:
        print(f"latvoa {args.command}: {e}", file=sys.stderr)
        return 2
    except (LatticeError, ContextError, ValueError) as e:
        print(f"latvoa {args.command}: {e}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
