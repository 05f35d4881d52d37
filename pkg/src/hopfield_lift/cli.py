"""``hopfield-lift`` command line.

Subcommands: ``bound``, ``exact``, ``search``, ``ensemble``, ``concentration``
and ``smoke``. Data goes to stdout, diagnostics to stderr. Exit codes:
0 success, 2 usage, 3 capacity refusal, 4 numerical failure.

``--config FILE`` reads flat ``key = value`` lines (keys are long flag names,
dashes or underscores) as defaults for the chosen subcommand; explicit flags
win.
"""

import argparse
import csv
import io
import json
import sys

import numpy as np

from .bounds import lifted_bound
from .ensemble import (
    EnsembleConfig,
    comparison_smoke_test,
    concentration_report,
    run_ensemble,
)
from .errors import CapacityError, DomainError, EvaluationError
from .exact import DEFAULT_LIMIT, exact_ground_state, read_matrix, rows_for, sample_instance
from .model import Ensemble, Form, Method
from .search import SearchConfig, Strategy, bit_flip_search

EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_NUMERIC = 4


class UsageError(Exception):
    pass


def _num(x):
    """Shortest round-trip text for machine formats."""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _cell(x):
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


def render_table(header, rows):
    cells = [[_cell(v) for v in row] for row in rows]
    widths = [max([len(h)] + [len(r[i]) for r in cells]) for i, h in enumerate(header)]
    out = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    out.append("  ".join("-" * w for w in widths))
    for r in cells:
        out.append("  ".join(c.rjust(w) for c, w in zip(r, widths)))
    return "\n".join(out) + "\n"


def render_csv(header, rows, footer=()):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_num(v) for v in row])
    for line in footer:
        buf.write(f"# {line}\n")
    return buf.getvalue()


def render_json(obj):
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _float_list(values, name):
    out = []
    for item in values if isinstance(values, list) else [values]:
        for tok in str(item).split(","):
            tok = tok.strip()
            if not tok:
                continue
            try:
                out.append(float(tok))
            except ValueError:
                raise UsageError(f"{name}: not a number: {tok!r}") from None
    return out


def _int_list(values, name):
    out = []
    for x in _float_list(values, name):
        if x != int(x):
            raise UsageError(f"{name}: not an integer: {x!r}")
        out.append(int(x))
    return out


def _grid(spec):
    try:
        lo, hi, num = spec.split(":")
        lo, hi, num = float(lo), float(hi), int(num)
    except ValueError:
        raise UsageError(f"--grid expects start:stop:count, got {spec!r}") from None
    if num < 1:
        raise UsageError("--grid count must be >= 1")
    return [float(a) for a in np.linspace(lo, hi, num)]


def _forms(value):
    if value == "both":
        return [Form.POSITIVE, Form.NEGATIVE]
    return [Form.parse(value)]


# ---- bound ------------------------------------------------------------------

def cmd_bound(args):
    alphas = _float_list(args.alpha, "--alpha") if args.alpha else []
    if args.grid:
        alphas += _grid(args.grid)
    if not alphas:
        raise UsageError("bound: give --alpha and/or --grid")
    for a in alphas:
        if not a > 0 or a == float("inf"):
            raise UsageError(f"alpha must be positive and finite, got {a!r}")
    results = [lifted_bound(a, f) for a in alphas for f in _forms(args.form)]
    header = ["alpha", "form", "value", "c3_star", "gamma_hat", "baseline", "improvement"]
    rows = [
        [r.alpha, r.form.value, r.value, r.c3_star, r.gamma_hat, r.baseline, r.improvement]
        for r in results
    ]
    if args.format == "json":
        return render_json(
            {
                "bounds": [
                    dict(zip(header, row), evaluations=r.evaluations)
                    for row, r in zip(rows, results)
                ]
            }
        )
    if args.format == "csv":
        return render_csv(header, rows)
    return render_table(header, rows)


# ---- instances ----------------------------------------------------------------

def _instance(args):
    if args.matrix:
        if args.n is not None:
            raise UsageError("give either --matrix or --n, not both")
        return read_matrix(args.matrix)
    if args.n is None:
        raise UsageError("need --matrix FILE or --n N")
    if args.n < 1 or not args.alpha > 0:
        raise UsageError("need n >= 1 and alpha > 0")
    return sample_instance(rows_for(args.alpha, args.n), args.n, args.ensemble, args.seed)


def _ground_state_output(inst, results, fmt):
    header = ["form", "method", "n", "m", "value", "normalized", "witness", "states_visited"]
    rows = [
        [r.form.value, r.method.value, inst.n, inst.m, r.value, r.normalized,
         r.witness_string(), r.states_visited]
        for r in results
    ]
    if fmt == "json":
        return render_json({"results": [dict(zip(header, row)) for row in rows]})
    if fmt == "csv":
        return render_csv(header, rows)
    return render_table(header, rows)


def cmd_exact(args):
    inst = _instance(args)
    results = [exact_ground_state(inst, f, limit=args.limit) for f in _forms(args.form)]
    return _ground_state_output(inst, results, args.format)


def _search_config(args):
    if args.restarts < 1 or args.max_sweeps < 1:
        raise UsageError("--restarts and --max-sweeps must be >= 1")
    return SearchConfig(args.restarts, Strategy.parse(args.strategy), args.max_sweeps, args.search_seed)


def cmd_search(args):
    inst = _instance(args)
    cfg = _search_config(args)
    results = [bit_flip_search(inst, f, cfg) for f in _forms(args.form)]
    return _ground_state_output(inst, results, args.format)


# ---- ensembles ----------------------------------------------------------------

CSV_COLUMNS = ["n", "m", "alpha", "form", "ensemble", "method", "trial", "value", "normalized", "seed"]


def _ensemble_config(args, n=None):
    method = Method.parse(args.method)
    if method is Method.EXACT_NAIVE:
        raise UsageError("--method must be exact or bitflip")
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    return EnsembleConfig(
        n=args.n if n is None else n,
        alpha=args.alpha,
        trials=args.trials,
        ensemble=args.ensemble,
        method=method,
        form=args.form,
        seed=args.seed,
        search=_search_config(args) if method is Method.BIT_FLIP else None,
        limit=args.limit,
    )


def cmd_ensemble(args):
    if args.n is None or args.n < 1 or not args.alpha > 0:
        raise UsageError("ensemble: need --n >= 1 and --alpha > 0")
    s = run_ensemble(_ensemble_config(args))
    cfg = s.config
    if args.format == "json":
        return render_json(s.as_dict())
    rows = [
        [cfg.n, cfg.m, cfg.alpha, cfg.form.value, cfg.ensemble.value, cfg.method.value,
         t.index, t.value, t.normalized, t.seed]
        for t in s.trials
    ]
    stats = [
        ("mean", s.mean), ("stddev", s.stddev), ("stderr", s.stderr),
        ("bound", s.bound), ("baseline", s.baseline), ("violations", s.violations),
    ]
    if args.format == "csv":
        footer = [f"{k}={_num(v)}" for k, v in stats]
        footer += [f"caveat={c}" for c in s.caveats]
        return render_csv(CSV_COLUMNS, rows, footer)
    out = render_table(CSV_COLUMNS, rows) + "\n"
    out += render_table([k for k, _ in stats], [[v for _, v in stats]])
    for c in s.caveats:
        out += f"caveat: {c}\n"
    return out


def cmd_concentration(args):
    grid = _int_list(args.n_grid, "--n-grid")
    if not grid or min(grid) < 1:
        raise UsageError("--n-grid needs positive integers")
    rep = concentration_report(_ensemble_config(args, n=grid[0]), grid)
    header = ["n", "m", "mean", "stddev", "stderr", "trials"]
    rows = [[r.n, r.m, r.mean, r.stddev, r.stderr, r.trials] for r in rep.rows]
    if args.format == "json":
        return render_json(
            {"rows": [dict(zip(header, row)) for row in rows], "bound": rep.bound, "flags": list(rep.flags)}
        )
    footer = [f"bound={_num(rep.bound)}"] + [f"flag={f}" for f in rep.flags]
    if args.format == "csv":
        return render_csv(header, rows, footer)
    return render_table(header, rows) + "".join(f"# {f}\n" for f in footer)


def cmd_smoke(args):
    if min(args.n, args.m, args.pairs) < 1 or args.samples < 2 or not args.c3 > 0:
        raise UsageError("smoke: need n, m, pairs >= 1, samples >= 2, c3 > 0")
    results = [
        comparison_smoke_test(args.n, args.m, args.pairs, args.samples, args.c3, f, args.seed)
        for f in _forms(args.form)
    ]
    header = ["form", "n", "m", "pairs", "samples", "c3", "lhs_mean", "lhs_stderr",
              "rhs_mean", "rhs_stderr", "holds_3sigma"]
    rows = [
        [r.form.value, r.n, r.m, r.num_pairs, r.samples, r.c3, r.lhs_mean, r.lhs_stderr,
         r.rhs_mean, r.rhs_stderr, r.holds()]
        for r in results
    ]
    if args.format == "json":
        return render_json({"samples": [dict(zip(header, row)) for row in rows]})
    if args.format == "csv":
        return render_csv(header, rows)
    return render_table(header, rows)


# ---- parser -------------------------------------------------------------------

def _add_format(p):
    p.add_argument("--format", choices=["table", "csv", "json"], default="table")


def _add_instance(p):
    p.add_argument("--matrix", help="matrix file: 'm n' header then m rows")
    p.add_argument("--n", type=int, help="columns (spins) of a sampled instance")
    p.add_argument("--alpha", type=float, default=1.0, help="rows per column, m = round(alpha n)")
    p.add_argument("--seed", type=int, default=0, help="instance seed")
    p.add_argument("--ensemble", choices=["gaussian", "bernoulli"], default="gaussian")


def _add_search(p):
    p.add_argument("--restarts", type=int, default=16)
    p.add_argument("--strategy", choices=["steepest", "first"], default="steepest")
    p.add_argument("--max-sweeps", type=int, default=1000)
    p.add_argument("--search-seed", type=int, default=0)


def _add_ensemble(p, with_n=True):
    p.add_argument("--form", choices=["positive", "negative"], default="positive")
    if with_n:
        p.add_argument("--n", type=int)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--method", choices=["exact", "bitflip"], default="exact")
    p.add_argument("--ensemble", choices=["gaussian", "bernoulli"], default="gaussian")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    _add_search(p)
    _add_format(p)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hopfield-lift",
        description="Lifted bounds and desk-scale solvers for Hopfield ground-state energies.",
    )
    parser.add_argument("--config", help="flat key=value defaults file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="lifted and baseline bounds")
    p.add_argument("--alpha", nargs="+", help="one or more alpha values (comma lists allowed)")
    p.add_argument("--grid", help="start:stop:count series of alpha values")
    p.add_argument("--form", choices=["positive", "negative", "both"], default="both")
    _add_format(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("exact", help="exact ground state by Gray-code enumeration")
    _add_instance(p)
    p.add_argument("--form", choices=["positive", "negative", "both"], default="positive")
    p.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    _add_format(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("search", help="bit-flip local search")
    _add_instance(p)
    p.add_argument("--form", choices=["positive", "negative", "both"], default="positive")
    _add_search(p)
    _add_format(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("ensemble", help="Monte Carlo study over random instances")
    _add_ensemble(p)
    p.set_defaults(func=cmd_ensemble)

    p = sub.add_parser("concentration", help="ensemble statistics across a grid of n")
    p.add_argument("--n-grid", nargs="+", required=True, help="sizes, e.g. 12,18,24")
    _add_ensemble(p, with_n=False)
    p.set_defaults(func=cmd_concentration)

    p = sub.add_parser("smoke", help="Monte Carlo check of the exponential comparison inequality")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--pairs", type=int, default=8)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--c3", type=float, default=0.5)
    p.add_argument("--form", choices=["positive", "negative", "both"], default="both")
    p.add_argument("--seed", type=int, default=0)
    _add_format(p)
    p.set_defaults(func=cmd_smoke)
    return parser


def read_config(path):
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            out[key.lstrip("-").replace("-", "_")] = value
    return out


def _apply_config(parser, argv):
    pre, _ = parser.parse_known_args(argv)
    if not pre.config:
        return
    values = read_config(pre.config)
    subparser = parser._subparsers._group_actions[0].choices[pre.command]
    known = {a.dest for a in subparser._actions}
    unknown = sorted(set(values) - known)
    if unknown:
        raise UsageError(f"unknown config keys for {pre.command}: {', '.join(unknown)}")
    subparser.set_defaults(**values)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        out = args.func(args)
    except SystemExit as exc:
        # argparse: --help (0) or usage error (2)
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (UsageError, DomainError, OSError) as exc:
        print(f"hopfield-lift: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"hopfield-lift: refused: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (EvaluationError, AssertionError, OverflowError) as exc:
        print(f"hopfield-lift: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
