"""Command-line front end.

    frobenius-bundles chern  --n 2 --p 2 --a 1 --k 1
    frobenius-bundles table  --n 2 --p 2 --a 1 --k 1 --box 4 --format csv
    frobenius-bundles verify --suite splitting --n 2 --p 2
    frobenius-bundles nondegeneracy --expr-file bundle.json --box 10

Exit status: 0 all checks pass, 1 some check failed, 2 usage or config error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, field

from . import suites
from .bundles import BundleExpr, PaperKernel, eval_expr, nondegeneracy_search
from .chow import chern_E0_symbolic, twist_chern
from .cohomology import monad_cohom_table
from .errors import InfeasibleChaseError, SmoothnessError
from .finite_field import is_prime
from .model import build_monad, dual_monad

SEED_ENV = "FROBENIUS_BUNDLES_SEED"
SUITES = ("splitting", "symmetry", "compatibility", "divisor", "cohomology",
          "nondegeneracy", "charp", "chern")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: int = 2
    p: int = 2
    a: int = 1
    k: int = 1
    q: int = 2
    box: list = field(default_factory=list)
    e: int = 0
    seed: int = 0
    seed_source: str = "default"
    out: str | None = None
    format: str = "json"
    form: str = "identity"
    form_file: str | None = None
    suite: str | None = None
    bundle: str = "kernel"


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=2)
    common.add_argument("--p", type=int, default=2)
    common.add_argument("--a", type=int, default=1, help="q = p^a")
    common.add_argument("--k", type=int, default=1)
    common.add_argument("--e", type=int, default=0, help="field GF(p^e); 0 picks p^e >= 64")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--out")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--form", choices=("identity", "random"), default="identity")
    common.add_argument("--form-file")

    ap = argparse.ArgumentParser(prog="frobenius-bundles", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("chern", parents=[common], help="Chern classes and their cross-checks")
    t = sub.add_parser("table", parents=[common], help="cohomology table over a twist box")
    t.add_argument("--box", type=int, nargs="+", default=[4],
                   help="B for [0,B-1]^2, or s0 s1 t0 t1 (inclusive)")
    t.add_argument("--bundle", choices=("kernel", "dual"), default="kernel",
                   help="E0(-L) or its dual")
    v = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    v.add_argument("--suite", choices=SUITES + ("all",), required=True)
    nd = sub.add_parser("nondegeneracy", parents=[common], help="pullback search on P^2 x P^2")
    nd.add_argument("--expr-file", help="JSON bundle expression; default E0[2,q,1]")
    nd.add_argument("--box", type=int, nargs=1, default=[10])
    return ap


def resolve_config(args) -> RunConfig:
    if args.seed is not None:
        seed, source = args.seed, "flag"
    elif os.environ.get(SEED_ENV):
        try:
            seed = int(os.environ[SEED_ENV])
        except ValueError:
            raise UsageError(f"{SEED_ENV} must be an integer")
        source = f"env:{SEED_ENV}"
    else:
        seed, source = 0, "default"
    if not is_prime(args.p):
        raise UsageError(f"p={args.p} is not prime")
    if args.n < 1 or args.a < 0:
        raise UsageError("need n >= 1 and a >= 0")
    q = args.p ** args.a
    if not 1 <= args.k <= q:
        raise UsageError(f"k={args.k} outside [1, {q}]")
    box = list(getattr(args, "box", []) or [])
    if len(box) not in (0, 1, 4):
        raise UsageError("--box takes one or four integers")
    if args.format == "csv" and args.command != "table":
        raise UsageError("csv output is only available for table")
    return RunConfig(args.command, args.n, args.p, args.a, args.k, q, box, args.e, seed, source,
                     args.out, args.format, args.form, args.form_file,
                     getattr(args, "suite", None), getattr(args, "bundle", "kernel"))


def _form(cfg: RunConfig, F):
    if cfg.form_file:
        try:
            with open(cfg.form_file) as fh:
                matrix = json.load(fh)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read form file: {exc}")
        return suites.make_form(cfg.n, F, matrix=matrix)
    return suites.make_form(cfg.n, F, cfg.form, cfg.seed)


def _box(cfg):
    if not cfg.box:
        return 4
    if len(cfg.box) == 1:
        return cfg.box[0]
    s0, s1, t0, t1 = cfg.box
    return ((s0, s1), (t0, t1))


def cmd_chern(cfg: RunConfig) -> dict:
    data = chern_E0_symbolic(cfg.n, cfg.q, cfg.k)
    untwisted = twist_chern(cfg.n, data.total, (1, 0))
    return {"rank": data.rank,
            "kernel_twisted": {"total_chern": data.total.to_json(), "c1": list(data.c1()),
                               "display": str(data.total)},
            "untwisted": {"total_chern": untwisted.to_json(),
                          "c1": [untwisted[1, 0], untwisted[0, 1]], "display": str(untwisted)},
            "checks": suites.chern_checks(cfg.n, cfg.p, cfg.a, cfg.k)}


def cmd_table(cfg: RunConfig):
    F = suites.default_field(cfg.p, cfg.e)
    m = build_monad(cfg.n, cfg.q, cfg.k, _form(cfg, F))
    target = dual_monad(m) if cfg.bundle == "dual" else m
    table = monad_cohom_table(target, _box(cfg))
    checks = suites.table_checks(target, table, cfg.n, cfg.q, cfg.k, dual=cfg.bundle == "dual")
    return table, checks


def cmd_verify(cfg: RunConfig) -> list:
    if cfg.suite == "all":
        # compatibility restricts to n - 1 >= 2 and is skipped below n = 3
        names = tuple(s for s in SUITES if s != "compatibility" or cfg.n >= 3)
    else:
        names = (cfg.suite,)
    out = []
    for name in names:
        for c in _run_suite(name, cfg):
            c = dict(c)
            c["suite"] = name
            out.append(c)
    return out


def _run_suite(name, cfg):
    n, p, a, k, seed, e = cfg.n, cfg.p, cfg.a, cfg.k, cfg.seed, cfg.e
    if name == "chern":
        return suites.chern_checks(n, p, a, k)
    if name == "splitting":
        return suites.splitting_checks(n, p, a, seed, e=e, form=cfg.form)
    if name == "symmetry":
        return suites.symmetry_checks(n, p, a, k, seed, e=e)
    if name == "compatibility":
        if n < 3:
            raise UsageError("compatibility needs n >= 3")
        return suites.compatibility_checks(n, p, a, k, seed, e=e)
    if name == "divisor":
        return suites.divisor_checks(n, p, a, k, seed, e=e)
    if name == "cohomology":
        return suites.cohomology_checks(n, p, a, seed, e=e)
    if name == "nondegeneracy":
        return suites.nondegeneracy_checks(p, a)
    if name == "charp":
        return suites.charp_checks(n, p, seed)[0]
    raise UsageError(f"unknown suite {name}")


def cmd_nondegeneracy(cfg: RunConfig, expr_file=None, box=10) -> dict:
    if expr_file:
        try:
            with open(expr_file) as fh:
                expr = BundleExpr.from_json(json.load(fh))
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read expression: {exc}")
    else:
        expr = PaperKernel(2, cfg.q, 1)
    data = eval_expr(expr, 2)
    if data.rank != 2:
        raise UsageError("the search handles rank-2 bundles on P^2 x P^2")
    sols = nondegeneracy_search(2, data.total, box)
    return {"expression": expr.to_json(), "box": box,
            "solutions": [s.to_json() for s in sols]}


def _emit(text, cfg):
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def main(argv=None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        cfg = resolve_config(args)
        report = {"config": asdict(cfg)}
        if cfg.command == "chern":
            report.update(cmd_chern(cfg))
            checks = report["checks"]
        elif cfg.command == "table":
            try:
                table, checks = cmd_table(cfg)
            except InfeasibleChaseError as exc:
                report.update({"error": str(exc), "pass": False})
                _emit(_dump(report), cfg)
                return 1
            if cfg.format == "csv":
                _emit(table.to_csv(), cfg)
                return 0 if all(c["pass"] for c in checks) else 1
            report.update(json.loads(table.to_json()))
            report["checks"] = checks
        elif cfg.command == "verify":
            checks = cmd_verify(cfg)
            report["checks"] = checks
        else:
            report.update(cmd_nondegeneracy(cfg, args.expr_file, args.box[0]))
            checks = []
    except (UsageError, SmoothnessError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report["pass"] = all(c["pass"] for c in checks)
    _emit(_dump(report), cfg)
    return 0 if report["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
