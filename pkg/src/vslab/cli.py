"""Command-line front end: ``vslab <command> [options]``.

Every command writes one table (CSV by default, ``--format json`` for the
JSON mirror) to stdout or ``--output``. Exit codes: 0 success, 1 validation
error, 2 budget exceeded, 3 bound violation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

from . import __version__, config
from . import io as vio
from .cyclo import CyclotomicMapping
from .dist import (asymptotic_params_occupancy, asymptotic_params_random_poly,
                   nonzero_branch_valueset_dist, occupancy_dist, occupancy_moment_table,
                   random_poly_moment_table, random_poly_valueset_dist)
from .errors import BudgetError, InvariantViolation, ValidationError, VslabError
from .field import build_field, field_for_order, field_from_json
from .poly import parse_poly
from .simlab import (check_bounds, enumerate_branch_tuples, enumerate_occupancy,
                     enumerate_union, ks_normal, sample_occupancy, sample_union,
                     sample_valueset)
from .simlab.parallel import resolve_workers
from .union import UnionModel, parse_sizes, union_asymptotic, union_dist, union_moment_table

EXIT_OK, EXIT_VALIDATION, EXIT_BUDGET, EXIT_INVARIANT = 0, 1, 2, 3
MODELS = ("occupancy", "valueset", "union")


class _Parser(argparse.ArgumentParser):
    """Reports usage errors as validation errors (exit 1) instead of exiting 2."""

    def error(self, message):
        raise ValidationError(message)


def _codes(text):
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok != ""]
    except ValueError:
        raise ValidationError(f"expected comma-separated integers, got {text!r}") from None


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise ValidationError(f"{args.command} needs {', '.join(missing)}")


def _field(args):
    if args.field:
        spec = field_from_json(Path(args.field).read_text())
        if args.q is not None and args.q != spec.q:
            raise ValidationError(f"--q {args.q} disagrees with the field descriptor (q={spec.q})")
        return spec
    _need(args, "q")
    return field_for_order(args.q)


def _check_q(args):
    """Model commands only need q; a descriptor may supply it."""
    if args.field:
        args.q = _field(args).q
    _need(args, "q")
    field_for_order(args.q)


def _union_model(args):
    _need(args, "n", "sizes")
    return UnionModel(args.n, parse_sizes(args.sizes))


def _valueset_shape(args):
    _check_q(args)
    if args.l is None:
        args.l = args.q - 1
    if (args.q - 1) % args.l:
        raise ValidationError(f"l={args.l} does not divide q-1={args.q - 1}")


def _budget(args, default):
    return config.enum_budget(default) if args.budget is None else args.budget


def _kv(args, kind, pairs):
    return vio.render(kind, ("name", "value"), pairs, args.format, _params(args))


def _params(args):
    skip = {"func", "group", "action", "output", "format", "manifest", "workers"}
    return {k: v for k, v in vars(args).items()
            if k not in skip and not k.startswith("_") and v is not None}


# --- commands

def cmd_field_build(args):
    if args.q is not None:
        if args.p is not None or args.modulus or args.gamma is not None:
            raise ValidationError("give either --q or --p/--k/--modulus/--gamma")
        spec = field_for_order(args.q)
    else:
        _need(args, "p")
        modulus = _codes(args.modulus) if args.modulus else None
        spec = build_field(args.p, args.k, modulus, args.gamma)
    d = spec.to_dict()
    if args.format == "json":
        return json.dumps({"schema_version": vio.SCHEMA_VERSION, "q": spec.q, **d}, indent=2) + "\n"
    pairs = [("p", spec.p), ("k", spec.k), ("q", spec.q),
             ("modulus", " ".join(str(c) for c in d["modulus"] or [])),
             ("gamma", " ".join(str(c) for c in d["gamma"])), ("gamma_code", spec.gamma)]
    return vio.table_csv(("name", "value"), pairs)


def cmd_poly_index(args):
    _need(args, "poly")
    g = parse_poly(_field(args), args.poly)
    form = g.index_form
    cols = ("r", "s", "l", "a", "b", "degree")
    return vio.render("poly_index", cols, [(form.r, form.s, form.l, form.a, form.b, g.degree)],
                      args.format, _params(args))


def cmd_poly_valueset(args):
    _need(args, "poly")
    spec = _field(args)
    g = parse_poly(spec, args.poly)
    size = len(set(g.values()))
    index = "" if g.is_constant() else g.index_form.l
    cols = ("size", "is_pp", "degree", "index")
    return vio.render("poly_valueset", cols, [(size, size == spec.q, g.degree, index)],
                      args.format, _params(args))


def cmd_map_eval(args):
    _need(args, "l", "a")
    spec = _field(args)
    m = CyclotomicMapping(spec, args.r, args.l, _codes(args.a))
    xs = _codes(args.x) if args.x else list(spec.elements())
    return vio.render("map_eval", ("x", "value"), [(x, m(x)) for x in xs],
                      args.format, _params(args))


def _exact_dist(args):
    if args.command == "dist occupancy":
        _need(args, "t", "l")
        return occupancy_dist(args.t, args.l)
    if args.command == "dist union":
        return union_dist(_union_model(args))
    _valueset_shape(args)
    if args.nonzero:
        return nonzero_branch_valueset_dist(args.q, args.l, args.r)
    return random_poly_valueset_dist(args.q, args.l, args.r)


def cmd_dist(args):
    return vio.dist_to_text(_exact_dist(args), args.format, _params(args))


def _model_args(args):
    if args.model == "occupancy":
        _need(args, "t", "l")
    elif args.model == "valueset":
        _valueset_shape(args)
    else:
        _union_model(args)


def cmd_moments(args):
    _model_args(args)
    if args.model == "occupancy":
        table = occupancy_moment_table(args.t, args.l, args.kmax)
    elif args.model == "valueset":
        table = random_poly_moment_table(args.q, args.l, args.r, args.kmax)
    else:
        table = union_moment_table(_union_model(args), args.kmax)
    rows = [(k, e.numerator, e.denominator, s.numerator, s.denominator)
            for k, (e, s) in enumerate(zip(table.falling_moments, table.sieve_terms))]
    cols = ("k", "falling_num", "falling_den", "sieve_num", "sieve_den")
    return vio.render("moments", cols, rows, args.format, _params(args))


def _asymptotic(args):
    if args.model == "occupancy":
        _need(args, "t", "l")
        return asymptotic_params_occupancy(args.t, args.l, args.threshold, warn=False)
    if args.model == "valueset":
        _check_q(args)
        return asymptotic_params_random_poly(args.q, args.threshold)
    return union_asymptotic(_union_model(args), threshold=args.threshold)


def cmd_asymptotic(args):
    p = _asymptotic(args)
    pairs = [("mu", p.mu), ("sigma2", p.sigma2), ("s_n", p.s_n)]
    pairs += sorted(p.flags.items()) + [("hypotheses_ok", p.hypotheses_ok)]
    return _kv(args, "asymptotic", pairs)


def _sampled(args):
    _model_args(args)
    if args.model == "occupancy":
        return sample_occupancy(args.t, args.l, args.trials, args.seed, args.workers)
    if args.model == "valueset":
        return sample_valueset(args.q, args.l, args.r, args.trials, args.seed,
                               args.nonzero, args.workers)
    return sample_union(_union_model(args), args.trials, args.seed, args.workers)


def cmd_sample(args):
    return vio.sim_to_text(_sampled(args), args.format, _params(args))


def cmd_enumerate(args):
    _model_args(args)
    if args.model == "occupancy":
        emp = enumerate_occupancy(args.t, args.l, _budget(args, config.ENUM_OCCUPANCY_BUDGET),
                                  args.workers)
    elif args.model == "valueset":
        emp = enumerate_branch_tuples(args.q, args.l, args.r, args.nonzero,
                                      _budget(args, config.ENUM_BRANCH_BUDGET), args.workers)
    else:
        emp = enumerate_union(_union_model(args), _budget(args, config.ENUM_UNION_BUDGET),
                              args.workers)
    return vio.sim_to_text(emp, args.format, _params(args))


def cmd_check_bounds(args):
    _check_q(args)
    report = check_bounds(args.q, args.lmax, args.r,
                          _budget(args, config.ENUM_BRANCH_BUDGET), args.workers)
    cols = ("mapping_l", "size", "degree", "index", "is_pp", "terms", "count")
    rows = [(*key, c) for key, c in sorted(report.records.items())]
    text = vio.render("bounds", cols, rows, args.format, _params(args))
    if report.violations:
        for rule, mapping in report.violations[:20]:
            print(f"violation: {rule}: {mapping}", file=sys.stderr)
        args._pending_text = text
        raise InvariantViolation(f"{len(report.violations)} bound violations")
    return text


def cmd_ks(args):
    _model_args(args)
    if args.model == "union":
        raise ValidationError("ks supports the occupancy and valueset models")
    emp = _sampled(args)
    if args.model == "valueset":
        if args.standardize == "asymptotic" and (args.l != args.q - 1 or args.r != 1):
            raise ValidationError("asymptotic standardization needs l = q-1 and r = 1")
        s = (args.q - 1) // args.l
        t = math.gcd(args.r, s)
        tl = t * args.l
        missing = emp.map(lambda v: tl - (v - 1) * t // s)
        if args.standardize == "asymptotic":
            params = asymptotic_params_random_poly(args.q)
            mu, sigma = params.mu, params.sigma
        else:
            table = random_poly_moment_table(args.q, args.l, args.r, 2)
            mu, sigma = float(table.mean()), float(table.variance()) ** 0.5
    else:
        missing = emp
        if args.standardize == "asymptotic":
            params = asymptotic_params_occupancy(args.t, args.l, warn=False)
            mu, sigma = params.mu, params.sigma
        else:
            table = occupancy_moment_table(args.t, args.l, 2)
            mu, sigma = float(table.mean()), float(table.variance()) ** 0.5
    stat = ks_normal(missing, mu, sigma)
    return _kv(args, "ks", [("statistic", stat), ("mu", mu), ("sigma", sigma),
                            ("trials", emp.trials)])


# --- parser

def _common(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", help="write the table here instead of stdout")
    p.add_argument("--manifest", help="write a JSON run manifest (parameters, wall time) here")
    p.add_argument("--workers", type=int, default=None, help="worker processes (default: all cores)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=None, help="enumeration cap (overrides VSLAB_BUDGET)")
    p.add_argument("--field", help="field descriptor JSON written by 'field build --format json'")
    p.add_argument("--q", type=int)


def _model_opts(p, model=True):
    if model:
        p.add_argument("--model", choices=MODELS, default="valueset")
    p.add_argument("--t", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--n", type=int)
    p.add_argument("--sizes", help="set sizes, e.g. 2,3 or 5x10")
    p.add_argument("--nonzero", action="store_true", help="branches uniform on F_q^* only")


def build_parser():
    parser = _Parser(prog="vslab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"vslab {__version__}")
    sub = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def leaf(subs, name, func, command, **kw):
        p = subs.add_parser(name, **kw)
        _common(p)
        p.set_defaults(func=func, command=command)
        return p

    fld = sub.add_parser("field").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = leaf(fld, "build", cmd_field_build, "field build", help="build F_q and print its descriptor")
    p.add_argument("--p", type=int)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--modulus", help="coefficients c0,c1,...,ck of the defining polynomial")
    p.add_argument("--gamma", type=int, help="primitive element code")

    poly = sub.add_parser("poly").add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name, func in (("index", cmd_poly_index), ("valueset", cmd_poly_valueset)):
        p = leaf(poly, name, func, f"poly {name}")
        p.add_argument("--poly", help="coefficient codes, constant term first")

    mp = sub.add_parser("map").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = leaf(mp, "eval", cmd_map_eval, "map eval")
    p.add_argument("--l", type=int)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--a", help="branch coefficient codes a_0,...,a_(l-1)")
    p.add_argument("--x", help="points to evaluate (default: all of F_q)")

    dist = sub.add_parser("dist").add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name in MODELS:
        _model_opts(leaf(dist, name, cmd_dist, f"dist {name}"), model=False)

    p = leaf(sub, "moments", cmd_moments, "moments")
    _model_opts(p)
    p.add_argument("--kmax", type=int, default=4)

    p = leaf(sub, "asymptotic", cmd_asymptotic, "asymptotic")
    _model_opts(p)
    p.add_argument("--threshold", type=float, default=None)

    for name, func in (("sample", cmd_sample), ("ks", cmd_ks)):
        p = leaf(sub, name, func, name)
        _model_opts(p)
        p.add_argument("--trials", type=int, default=10**4)
        if name == "ks":
            p.add_argument("--standardize", choices=("asymptotic", "exact"), default="asymptotic")

    _model_opts(leaf(sub, "enumerate", cmd_enumerate, "enumerate"))

    p = leaf(sub, "check-bounds", cmd_check_bounds, "check-bounds")
    p.add_argument("--lmax", type=int, default=None)
    p.add_argument("--r", type=int, default=1)
    return parser


def _emit(args, text):
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None):
    """Parse ``argv``, run the command and return the exit code."""
    args = None
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        if args.workers is not None and args.workers < 1:
            raise ValidationError(f"--workers {args.workers} must be at least 1")
        if args.budget is not None and args.budget < 1:
            raise ValidationError(f"--budget {args.budget} must be positive")
        text = args.func(args)
        code = EXIT_OK
    except InvariantViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        text, code = getattr(args, "_pending_text", None), EXIT_INVARIANT
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (VslabError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    if text is not None:
        _emit(args, text)
    if args.manifest:
        doc = vio.manifest(args.command, _params(args), args.seed,
                           {"budget": args.budget, "workers": resolve_workers(args.workers)},
                           round(time.perf_counter() - start, 6),
                           [args.output] if args.output else [])
        Path(args.manifest).write_text(vio.manifest_to_json(doc))
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
