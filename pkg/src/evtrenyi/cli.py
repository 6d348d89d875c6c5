"""``evtrenyi`` command line: subcommands print JSON, ``converge`` prints CSV.

Exit codes: 0 success, 2 configuration or argument error, 3 numerical
divergence or non-convergence, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import distributions
from .bounds import (
    EnvelopeSpec,
    auxiliary_ratio_bound_holds,
    envelope_dominates,
    gumbel_tail_bound_holds,
    potter_bound_holds,
)
from .classify import classify_domain
from .entropy import renyi_entropy_numeric
from .errors import (
    ConfigError,
    DegenerateTailError,
    DivergenceError,
    DomainError,
    IntegrandError,
    NoConvergenceError,
    PreconditionError,
)
from .lab import emit_csv, emit_plot_data, load_config, render_csv, run_convergence
from .limits import MaxStableLaw, limit_moment, limit_renyi_entropy
from .maxima import NormalizedMaximaDensity, moment_of_normalized_max
from .norming import Domain, norming_constants

EXIT_OK, EXIT_CONFIG, EXIT_DIVERGENCE, EXIT_IO = 0, 2, 3, 4


def _json_value(x):
    if isinstance(x, float) and not math.isfinite(x):
        return repr(x)
    return x


def _print(obj):
    def clean(o):
        if isinstance(o, dict):
            return {k: clean(v) for k, v in o.items()}
        if isinstance(o, (list, tuple)):
            return [clean(v) for v in o]
        return _json_value(o)

    print(json.dumps(clean(obj), indent=2))


def _family(args):
    return distributions.from_spec(args.family, args.params)


def _law(args):
    if args.law == "gumbel":
        return MaxStableLaw.gumbel()
    if args.alpha is None:
        raise ConfigError(f"--alpha is required for the {args.law} law")
    if args.law == "frechet":
        return MaxStableLaw.frechet(args.alpha)
    return MaxStableLaw.weibull(args.alpha)


def _domain_for(F, requested):
    if requested != "auto":
        return Domain(requested)
    verdict = classify_domain(F)
    if verdict.domain.value == "undetermined":
        raise ConfigError(f"{F.label}: domain of attraction could not be determined")
    return Domain(verdict.domain.value)


# -- subcommands -------------------------------------------------------------


def cmd_converge(args):
    if not args.config:
        raise ConfigError("converge needs --config")
    cfg = load_config(args.config)
    records = run_convergence(cfg, workers=args.workers, quad_rel_tol=args.quad_tol)
    out = args.out or cfg.output_path
    if out:
        emit_csv(records, out)
    else:
        sys.stdout.write(render_csv(records))
    if args.plot_data:
        emit_plot_data(records, args.plot_data)
    failed = [r for r in records if r.error]
    for r in failed:
        print(f"cell beta={r.beta:g} n={r.n}: {r.error}", file=sys.stderr)
    return EXIT_DIVERGENCE if failed else EXIT_OK


def cmd_entropy(args):
    F = _family(args)
    tol = args.quad_tol or 1e-10
    if args.n is None:
        res = renyi_entropy_numeric(F.log_pdf, (F.l, F.r), args.beta, tol)
        target = F.label
    else:
        dom = _domain_for(F, args.domain)
        D = NormalizedMaximaDensity(F, norming_constants(F, dom, args.n))
        res = D.renyi_entropy(args.beta, tol)
        target = f"g_n[{F.label}, n={args.n}]"
    _print({
        "density": target,
        "beta": res.beta,
        "entropy": res.entropy,
        "integral": res.integral,
        "quad_error": res.quad_error,
    })
    return EXIT_OK


def cmd_limit_entropy(args):
    law = _law(args)
    _print({"law": law.label, "beta": args.beta, "entropy": limit_renyi_entropy(law, args.beta)})
    return EXIT_OK


def cmd_norming(args):
    F = _family(args)
    dom = _domain_for(F, args.domain)
    out = []
    for n in args.n:
        c = norming_constants(F, dom, n, numeric=args.numeric)
        out.append({"n": c.n, "a": c.a, "b": c.b, "domain": c.domain.value})
    _print({"family": F.label, "constants": out})
    return EXIT_OK


def cmd_classify(args):
    F = _family(args)
    v = classify_domain(F, args.grid_size)
    _print({"family": F.label, **v.to_dict()})
    return EXIT_OK


def cmd_moments(args):
    F = _family(args)
    verdict = classify_domain(F)
    dom = _domain_for(F, args.domain)
    alpha = verdict.alpha_estimate if verdict.domain.value == dom.value else None
    D = NormalizedMaximaDensity(F, norming_constants(F, dom, args.n))
    value = moment_of_normalized_max(D, args.k, args.quad_tol or 1e-10)
    limit = None
    if dom is Domain.GUMBEL:
        law = MaxStableLaw.gumbel()
    elif alpha is not None:
        law = MaxStableLaw.frechet(alpha) if dom is Domain.FRECHET else MaxStableLaw.weibull(alpha)
    else:
        law = None
    if law is not None:
        try:
            limit = limit_moment(law, args.k)
        except PreconditionError:
            limit = None
    _print({"family": F.label, "n": args.n, "k": args.k, "moment": value, "limit": limit})
    return EXIT_OK


def cmd_check_bounds(args):
    F = _family(args)
    eps = args.eps
    grid = args.grid
    if args.bound == "potter":
        ts = args.ts or [args.t0]
        rep = potter_bound_holds(F.survival, args.rho, eps[0], args.t0, grid or [1, 2, 4], ts)
    elif args.bound == "tail":
        rep = gumbel_tail_bound_holds(F, _one_n(args), eps[0], grid or [0, 0.5, 1, 2, -0.5, -2])
    elif args.bound == "aux-ratio":
        rep = auxiliary_ratio_bound_holds(F, args.t, eps[0], grid or [0.5, 1, -0.5])
    else:
        n = _one_n(args)
        if args.kind == "frechet":
            alpha = classify_domain(F).alpha_estimate
            if alpha is None:
                raise ConfigError(f"{F.label} is not in the Frechet domain")
            spec = EnvelopeSpec.frechet(alpha, *_exactly(eps, 3))
        elif args.kind == "gumbel-h1":
            spec = EnvelopeSpec.gumbel_h1(*_exactly(eps, 5))
        else:
            spec = EnvelopeSpec.gumbel_h2(*_exactly(eps, 5))
        D = NormalizedMaximaDensity(F, norming_constants(F, spec.domain, n))
        rep = envelope_dominates(D, spec, grid)
    _print({"bound": args.bound, "family": F.label, **rep.to_dict()})
    return EXIT_OK


def _one_n(args):
    if not args.n:
        raise ConfigError("--n is required for this bound")
    return args.n


def _exactly(eps, k):
    if len(eps) == 1:
        return eps * k
    if len(eps) != k:
        raise ConfigError(f"expected 1 or {k} values for --eps, got {len(eps)}")
    return eps


# -- parser ----------------------------------------------------------------


DEFAULTS = {"config": None, "out": None, "quad_tol": None, "plot_data": None, "workers": 1}


def _global_flags(p, defaults):
    def d(name):
        return argparse.SUPPRESS if defaults is None else defaults[name]

    p.add_argument("--config", default=d("config"), help="experiment config (JSON)")
    p.add_argument("--out", default=d("out"), help="output CSV path")
    p.add_argument("--quad-tol", type=float, default=d("quad_tol"), help="quadrature relative tolerance")
    p.add_argument("--plot-data", default=d("plot_data"), help="write (beta, n, abs_error) series here")
    p.add_argument("--workers", type=int, default=d("workers"), help="worker threads for converge")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="evtrenyi", description=__doc__.splitlines()[0])
    _global_flags(p, DEFAULTS)
    # the same flags are accepted after the subcommand name
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, None)
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser
    sub.add_parser = lambda *a, **kw: _add(*a, parents=[common], **kw)

    def with_family(sp, required=True):
        sp.add_argument("--family", required=required, choices=sorted(distributions.FAMILIES))
        sp.add_argument("--params", type=float, nargs="*", default=[])

    sp = sub.add_parser("converge", help="run a convergence experiment from --config")
    sp.set_defaults(func=cmd_converge)

    sp = sub.add_parser("entropy", help="Rényi entropy of a family density or of g_n")
    with_family(sp)
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--domain", default="auto", choices=["auto", "frechet", "weibull", "gumbel"])
    sp.set_defaults(func=cmd_entropy)

    sp = sub.add_parser("limit-entropy", help="closed-form Rényi entropy of a max-stable law")
    sp.add_argument("--law", required=True, choices=["frechet", "weibull", "gumbel"])
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--beta", type=float, required=True)
    sp.set_defaults(func=cmd_limit_entropy)

    sp = sub.add_parser("norming", help="norming constants a_n, b_n")
    with_family(sp)
    sp.add_argument("--domain", default="auto", choices=["auto", "frechet", "weibull", "gumbel"])
    sp.add_argument("--n", type=int, nargs="+", required=True)
    sp.add_argument("--numeric", action="store_true", help="force root finding and quadrature")
    sp.set_defaults(func=cmd_norming)

    sp = sub.add_parser("classify", help="domain of attraction from von Mises ratios")
    with_family(sp)
    sp.add_argument("--grid-size", type=int, default=24)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("check-bounds", help="evaluate a tail/envelope bound on a grid")
    with_family(sp)
    sp.add_argument("--bound", required=True, choices=["potter", "tail", "aux-ratio", "envelope"])
    sp.add_argument("--eps", type=float, nargs="+", required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--grid", type=float, nargs="+")
    sp.add_argument("--rho", type=float, default=0.0, help="regular-variation index (potter)")
    sp.add_argument("--t0", type=float, default=1.0, help="potter threshold")
    sp.add_argument("--ts", type=float, nargs="+", help="potter t values")
    sp.add_argument("--t", type=float, default=1.0, help="aux-ratio base point")
    sp.add_argument("--kind", default="frechet", choices=["frechet", "gumbel-h1", "gumbel-h2"])
    sp.set_defaults(func=cmd_check_bounds)

    sp = sub.add_parser("moments", help="k-th moment of the normalized maximum")
    with_family(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--domain", default="auto", choices=["auto", "frechet", "weibull", "gumbel"])
    sp.set_defaults(func=cmd_moments)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DomainError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DivergenceError, NoConvergenceError, DegenerateTailError, IntegrandError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_DIVERGENCE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO

