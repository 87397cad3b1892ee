"""Command-line interface.

Shared settings may come from a config file (``--config``) holding one
``key = value`` per line with ``#`` comments; keys are the long flag names
(``s``, ``p``, ``u``, ``combos``, ``depth``, ``level``, ``n``, ``seed``,
``tol``). Flags given on the command line win over the file.

Exit status: 0 on success, 2 on invalid input, 3 when an enumeration cap
is exceeded.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import sys
from fractions import Fraction

import numpy as np

from . import dimension as dim
from . import fractal_sets as fs
from . import stochastic
from .cylinders import (
    Cylinder,
    RestrictedCylinder,
    admissible_digits,
    gap_sign,
    p_cyl_bounds,
    ru_cyl_bounds,
    ru_cyl_diameter,
)
from .errors import TooLarge, ValidationError
from .numrep import (
    DEFAULT_DEPTH,
    EventuallyPeriodicSeq,
    ProbVector,
    as_rational,
    decode_negasadic,
    decode_P,
    decode_sadic,
    encode_sadic,
    eval_f,
    format_digits,
    format_rational,
    invert_f,
    parse_digits,
)

DEFAULTS = {
    "s": None,
    "p": None,
    "u": None,
    "combos": None,
    "depth": DEFAULT_DEPTH,
    "level": 1,
    "n": 1000,
    "seed": 0,
    "tol": 1e-12,
}
CONVERTERS = {"s": int, "u": int, "depth": int, "level": int, "n": int, "seed": int, "tol": float}


class UsageError(ValidationError):
    pass


def read_config(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"--config: line {lineno} is not 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in DEFAULTS:
                raise UsageError(f"--config: unknown key {key!r} on line {lineno}")
            out[key] = value
    return out


def _resolve(args):
    file_values = read_config(args.config) if args.config else {}
    for key, default in DEFAULTS.items():
        if getattr(args, key, None) is not None:
            continue
        if key in file_values:
            raw = file_values[key]
            try:
                value = CONVERTERS[key](raw) if key in CONVERTERS else raw
            except ValueError:
                raise UsageError(f"--{key}: cannot parse {raw!r} from config") from None
        else:
            value = default
        setattr(args, key, value)


def _need(args, name):
    value = getattr(args, name.replace("-", "_"), None)
    if value is None:
        raise UsageError(f"--{name} is required")
    return value


def _prob(args) -> ProbVector:
    if args.p is None:
        if args.s is None:
            raise UsageError("--p is required (or --s for uniform probabilities)")
        return ProbVector.uniform(args.s)
    try:
        P = ProbVector.parse(args.p, args.s)
    except ValidationError as exc:
        raise UsageError(f"--p: {exc}") from None
    return P


def _spec(args) -> fs.SuSetSpec:
    return fs.SuSetSpec(_prob(args), _need(args, "u"))


def _alphabet(args) -> fs.CombinationAlphabet:
    text = _need(args, "combos")
    return fs.validate_combo_alphabet(_prob(args), [w for w in text.split(",") if w.strip()])


def _sig(x: float) -> str:
    return f"{x:#.12g}"


def _f15(x: float) -> str:
    return f"{x:.15g}"


def _rat(text: str, flag: str) -> Fraction:
    try:
        return as_rational(text)
    except ValidationError:
        raise UsageError(f"--{flag}: not an exact rational: {text!r}") from None


# --- subcommands ------------------------------------------------------------

def cmd_eval_f(args, out):
    P = _prob(args)
    if args.grid:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["x", "f", "f_float", "tail_bound"])
        for j in range(args.grid + 1):
            x = Fraction(j, args.grid)
            value, bound = eval_f(x, P, args.depth)
            w.writerow([format_rational(x), format_rational(value), _f15(float(value)), format_rational(bound)])
        return
    value, bound = eval_f(_rat(_need(args, "x"), "x"), P, args.depth)
    print(format_rational(value), file=out)
    if bound:
        print(f"tail_bound = {format_rational(bound)}", file=out)


def cmd_invert_f(args, out):
    P = _prob(args)
    print(format_digits(invert_f(_rat(_need(args, "y"), "y"), P, args.depth)), file=out)


def cmd_encode(args, out):
    s = _need(args, "s")
    digits, exact = encode_sadic(_rat(_need(args, "x"), "x"), s, args.depth)
    print(format_digits(digits), file=out)
    print(f"exact = {str(exact).lower()}", file=out)


def cmd_decode(args, out):
    text = _need(args, "seq")
    if args.kind == "P":
        P = _prob(args)
        value = decode_P(EventuallyPeriodicSeq.parse(text, P.s), P)
    else:
        seq = EventuallyPeriodicSeq.parse(text, _need(args, "s"))
        value = decode_sadic(seq) if args.kind == "sadic" else decode_negasadic(seq)
    print(format_rational(value), file=out)


def _print_interval(iv, out):
    print(format_rational(iv.lo), file=out)
    print(format_rational(iv.hi), file=out)


def cmd_cyl(args, out):
    P = _prob(args)
    _print_interval(p_cyl_bounds(Cylinder(P, parse_digits(args.base))), out)


def cmd_rcyl(args, out):
    P = _prob(args)
    c = RestrictedCylinder(P, _need(args, "u"), parse_digits(args.base))
    _print_interval(ru_cyl_bounds(c), out)
    print(f"diameter = {format_rational(ru_cyl_diameter(c))}", file=out)


def cmd_gaps(args, out):
    P = _prob(args)
    c = RestrictedCylinder(P, _need(args, "u"), parse_digits(args.base))
    allowed = admissible_digits(P.s, c.u)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["p", "order"])
    for p in allowed:
        if p + 1 in allowed:
            w.writerow([p, gap_sign(c, p).name])


def cmd_bounds(args, out):
    if args.combos is not None:
        iv = fs.set_bounds_combo(_alphabet(args))
    else:
        iv = fs.set_bounds_su(_spec(args))
    _print_interval(iv, out)


def _cover(args):
    if args.combos is not None:
        return fs.level_cover_combo(_alphabet(args), args.level)
    return fs.level_cover_su(_spec(args), args.level, parallel=args.parallel)


def _d_total(args):
    if args.combos is not None:
        return fs.set_bounds_combo(_alphabet(args)).length
    return fs.set_bounds_su(_spec(args)).length


def cmd_cover(args, out):
    fs.write_cover_csv(_cover(args), out)


def cmd_measure(args, out):
    spec = _spec(args)
    print(format_rational(fs.cover_measure_su(spec, args.level)), file=out)
    print(f"d0 = {format_rational(fs.set_bounds_su(spec).length)}", file=out)
    print(f"gamma = {format_rational(fs.gamma_u(spec))}", file=out)


def cmd_member(args, out):
    x = _rat(_need(args, "x"), "x")
    if args.combos is not None:
        result = fs.member_combo(x, _alphabet(args), args.level)
    else:
        result = fs.member_su(x, _spec(args), args.level)
    print(str(result).lower(), file=out)


def cmd_dim(args, out):
    kind = args.variant
    if kind == "moran":
        ratios = [_rat(r, "ratios") for r in _need(args, "ratios").split(",")]
        res = dim.solve_moran(dim.RatioSet(tuple(ratios)), args.tol)
    elif kind == "su":
        res = dim.dim_su(_spec(args), args.tol)
    elif kind == "thm1":
        res = dim.dim_thm1(_need(args, "s"), _need(args, "u"), args.tol)
    elif kind == "thm2":
        counts = {}
        for item in _need(args, "counts").split(","):
            try:
                k, n = (int(t) for t in item.split(":"))
            except ValueError:
                raise UsageError(f"--counts: expected 'length:count' items, got {item!r}") from None
            counts[k] = counts.get(k, 0) + n
        res = dim.dim_thm2(_need(args, "s"), counts, args.tol)
    else:
        res = dim.dim_combo(_alphabet(args), args.tol)
    print(f"alpha0 = {_sig(res.alpha0)}", file=out)
    print(f"residual = {res.residual:.3e}", file=out)
    print(f"iterations = {res.iterations}", file=out)
    if res.degenerate:
        print("degenerate = true", file=out)


def cmd_cover_sum(args, out):
    cover = _cover(args)
    d_total = _d_total(args)
    if args.scan:
        try:
            a, b, num = args.scan.split(":")
            grid = np.linspace(float(a), float(b), int(num))
        except ValueError:
            raise UsageError("--scan: expected start:stop:count") from None
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["alpha", "cover_sum"])
        for alpha in grid:
            w.writerow([_f15(alpha), _f15(dim.cover_sum(cover, alpha, d_total))])
        return
    print(_f15(dim.cover_sum(cover, float(_need(args, "alpha")), d_total)), file=out)


def cmd_boxdim(args, out):
    levels = _levels(args.levels)
    print(_f15(dim.box_dim_estimate(_cover(args), args.grid_base, levels)), file=out)


def _levels(text):
    try:
        if "-" in text:
            a, b = (int(t) for t in text.split("-"))
            return list(range(a, b + 1))
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"--levels: expected 'a-b' or a comma list, got {text!r}") from None


def cmd_sample(args, out):
    batch = stochastic.sample_eta(_prob(args), args.depth, args.n, args.seed)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["index", "value", "value_float"])
    den = batch.denominator
    for i, num in enumerate(batch.numerators):
        x = Fraction(num, den)
        w.writerow([i, format_rational(x), _f15(num / den)])


def cmd_ks(args, out):
    batch = stochastic.sample_eta(_prob(args), args.depth, args.n, args.seed)
    print(f"ks_distance = {_f15(stochastic.ks_distance(batch))}", file=out)
    print(f"critical_value = {_f15(stochastic.ks_critical(batch.n))}", file=out)


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("shared settings")
    g.add_argument("--config", help="key = value settings file")
    g.add_argument("--s", type=int, help="base s (inferred from --p when omitted)")
    g.add_argument("--p", help="digit probabilities as exact rationals, e.g. 1/2,1/4,1/4")
    g.add_argument("--u", type=int, help="excluded digit u of the restricted set")
    g.add_argument("--combos", help="comma-separated digit combinations, e.g. 0,2")
    g.add_argument("--depth", type=int, help=f"digit depth (default {DEFAULT_DEPTH})")
    g.add_argument("--level", type=int, help="cover level k (default 1)")
    g.add_argument("--n", type=int, help="sample count (default 1000)")
    g.add_argument("--seed", type=int, help="PRNG seed (default 0)")
    g.add_argument("--tol", type=float, help="root tolerance (default 1e-12)")
    g.add_argument("--out", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="pmoran", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("eval-f", cmd_eval_f, "evaluate the distribution function f at x")
    sp.add_argument("--x")
    sp.add_argument("--grid", type=int, help="emit CSV of f on j/N for j=0..N")
    add("invert-f", cmd_invert_f, "P-digits of a cylinder containing y").add_argument("--y")
    add("encode", cmd_encode, "s-adic digits of x").add_argument("--x")
    sp = add("decode", cmd_decode, "value of a periodic digit string like 102(21)")
    sp.add_argument("--seq")
    sp.add_argument("--kind", choices=["sadic", "negasadic", "P"], default="sadic")
    add("cyl", cmd_cyl, "bounds of a P-cylinder").add_argument("--base", default="")
    add("rcyl", cmd_rcyl, "bounds and diameter of a restricted cylinder").add_argument("--base", default="")
    add("gaps", cmd_gaps, "sibling gap orderings below a restricted cylinder").add_argument("--base", default="")
    add("bounds", cmd_bounds, "inf and sup of S_(P,u) or of a combination set")
    add("cover", cmd_cover, "level-k cover as CSV").add_argument(
        "--parallel", action="store_true", help="enumerate first-level branches in worker processes")
    add("measure", cmd_measure, "exact Lebesgue measure of the level-k cover of S_(P,u)")
    add("member", cmd_member, "is x in the level-k cover").add_argument("--x")
    sp = add("dim", cmd_dim, "Hausdorff dimension")
    sp.add_argument("variant", choices=["moran", "su", "thm1", "thm2", "combo"])
    sp.add_argument("--ratios", help="moran: comma-separated ratios")
    sp.add_argument("--counts", help="thm2: length:count items, e.g. 1:2 or 1:1,2:1")
    sp = add("cover-sum", cmd_cover_sum, "sum of normalized lengths^alpha over a cover")
    sp.add_argument("--alpha")
    sp.add_argument("--scan", help="start:stop:count alpha grid, CSV output")
    sp.add_argument("--parallel", action="store_true")
    sp = add("boxdim", cmd_boxdim, "box-counting dimension estimate of a cover")
    sp.add_argument("--grid-base", type=int, default=3)
    sp.add_argument("--levels", default="4-8")
    sp.add_argument("--parallel", action="store_true")
    add("sample", cmd_sample, "draw samples of the random number as CSV")
    add("ks", cmd_ks, "KS distance between samples and f")
    return parser


def run(argv=None, stdout=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "parallel"):
        args.parallel = False
    stdout = stdout or sys.stdout
    try:
        _resolve(args)
        with contextlib.ExitStack() as stack:
            out = stack.enter_context(open(args.out, "w", newline="")) if args.out else stdout
            args.func(args, out)
    except TooLarge as exc:
        print(f"pmoran: {exc}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"pmoran: error: {exc}", file=sys.stderr)
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
