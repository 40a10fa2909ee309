"""Command-line front end.

    moufang field --field 3^2
    moufang paige build --field 2 [--with-units] [--out t.txt]
    moufang paige classify --field 3^2 --json
    moufang loop check --table t.txt --moufang --ip
    moufang loop series --table t.txt
    moufang algebra omega --table t.txt --field 2 [--subloop 0,2] [--report out.json]
    moufang corpus list | corpus emit --name chein-Q8 --out t.txt
    moufang verify-all

Reports are JSON with sorted keys and ``"schema": 1``; they never contain
timings, so identical inputs give identical bytes.  Progress and timings go
to standard error.  Exit status: 0 all checks pass, 1 a check failed, 2 usage
or input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from pathlib import Path

import numpy as np

from . import acceptance, corpus, loopalg as la, loopcore as lc, paige
from .errors import MoufangError
from .gfpn import (euler_criterion, format_element, is_closed_under_sqrt, is_square,
                   parse_field_spec, parity_claim)

logger = logging.getLogger("moufang")

SCHEMA = 1


class UsageError(Exception):
    pass


def _digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _report(args, command: str, checks: dict, **extra) -> dict:
    rep = {"schema": SCHEMA, "command": command, "checks": checks}
    if getattr(args, "table", None):
        rep["inputs"] = {"table": str(args.table), "sha256": _digest(Path(args.table))}
    rep.update(extra)
    return rep


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj: dict, out: str | None):
    _emit(json.dumps(obj, sort_keys=True, indent=2) + "\n", out)


def _status(checks: dict) -> int:
    return 0 if all(v is not False for v in checks.values()) else 1


def _field(args):
    if not args.field:
        raise UsageError("--field is required")
    return parse_field_spec(args.field)


def _table(args) -> lc.FiniteLoop:
    if not args.table:
        raise UsageError("--table is required")
    Q = lc.read_table(args.table, name=Path(args.table).stem)
    if args.max_order and Q.order > args.max_order:
        raise UsageError(f"table order {Q.order} exceeds --max-order {args.max_order}")
    return Q


# --- subcommands -----------------------------------------------------------------

def cmd_field(args) -> int:
    F = _field(args)
    squares = {format_element(a): is_square(a) for a in F.elements()}
    checks = {"closed_under_sqrt": is_closed_under_sqrt(F)}
    if F.p != 2:
        checks["euler_agrees"] = all(is_square(a) == euler_criterion(a) for a in F.elements())
    rep = _report(args, "field", checks, field=F.spec, modulus=list(F.modulus),
                  order=F.q, parity_claim_n_even=parity_claim(F), squares=squares)
    _emit_json(rep, args.out)
    return 0 if checks.get("euler_agrees", True) else 1


def cmd_paige_build(args) -> int:
    F = _field(args)
    if args.with_units:
        Q = paige.build_unit_loop(F, allow_large=args.full)
        hom = paige.norm_homomorphism(Q)
        logger.info("U(%s): order %d, norm homomorphism %s, onto %s", F.spec, Q.order,
                    hom["homomorphism"], hom["onto"])
    else:
        Q = paige.build_m(F, allow_large=args.full).m
    if args.max_order and Q.order > args.max_order:
        raise UsageError(f"loop order {Q.order} exceeds --max-order {args.max_order}")
    if args.json:
        _emit_json({"schema": SCHEMA, "command": "paige build", "field": F.spec,
                    "order": Q.order, "table": Q.table.tolist()}, args.out)
    else:
        _emit(lc.format_table(Q), args.out)
    return 0


def cmd_paige_classify(args) -> int:
    F = _field(args)
    rep = paige.classify_embeddability(F.p, F.n).to_dict()
    rep["command"] = "paige classify"
    if args.json:
        _emit_json(rep, args.out)
    else:
        _emit("".join(f"{k}: {rep[k]}\n" for k in sorted(rep)), args.out)
    return 0


LAWS = {
    "moufang": lambda Q, kw: lc.is_moufang(Q, **kw),
    "ip": lambda Q, kw: lc.is_ip_loop(Q),
    "associative": lambda Q, kw: lc.is_associative(Q, **kw),
    "commutative": lambda Q, kw: lc.is_commutative(Q),
}


def cmd_loop_check(args) -> int:
    Q = _table(args)
    kw = {"full": True} if args.full else {"seed": args.seed}
    wanted = [law for law in LAWS if getattr(args, law)] or list(LAWS)
    checks = {law: bool(LAWS[law](Q, kw)) for law in wanted}
    if args.simple:
        checks["simple"] = lc.is_simple(Q, seed=args.seed)
    rep = _report(args, "loop check", checks, order=Q.order)
    if args.json or args.out:
        _emit_json(rep, args.out)
    else:
        _emit("".join(f"{k}: {'pass' if v else 'fail'}\n" for k, v in checks.items()), None)
    return _status(checks)


def cmd_loop_series(args) -> int:
    Q = _table(args)
    up = lc.upper_central_series(Q)
    low = lc.lower_central_series(Q)
    checks = {"series_agree": up.nilpotency_class == low.nilpotency_class}
    rep = _report(args, "loop series", checks, order=Q.order,
                  upper=up.to_dict(), lower=low.to_dict(), **{"class": up.nilpotency_class})
    _emit_json(rep, args.out)
    return _status(checks)


def _parse_members(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise UsageError(f"bad subloop list {text!r}") from None


def cmd_algebra_omega(args) -> int:
    Q = _table(args)
    F = _field(args)
    A = la.LoopAlgebra(Q, F)
    H = None
    if args.subloop:
        H = lc.subloop_generated(Q, _parse_members(args.subloop))
    W = la.omega_ideal(A, H)
    idx = la.nilpotency_index(W, args.cap)
    dims = la.power_dims(W, idx if idx else min(args.cap, W.rank + 2))
    checks: dict = {}
    extra: dict = {"order": Q.order, "field": F.spec, "ideal": W.description, "rank": W.rank,
                   "power_dims": dims, "nilpotency_index": idx if idx is not None else "none"}
    if H is None:
        checks["omega_is_augmentation_kernel"] = W.subspace == A.augmentation_kernel()
        if lc.is_p_loop(Q, F.p) and lc.is_moufang(Q):
            rep = la.augmentation_nilpotency_check(Q, F)
            checks["nilpotent_for_moufang_p_loop"] = rep.passed
            chain = la.series_power_check(Q, F)
            checks["lower_series_in_powers"] = chain.passed
            extra["class_bound"] = chain.class_bound
        if idx is not None and Q.order > 1:
            rng = np.random.default_rng(args.seed)
            ok = True
            for _ in range(args.samples):
                u, v, w = (A.random_element(rng, W.subspace) for _ in range(3))
                ok &= bool(la.bracket_identity_check(u, v, w, idx))
            checks["bracket_identities"] = ok
    rep = _report(args, "algebra omega", checks, **extra)
    _emit_json(rep, args.report or args.out)
    return _status(checks)


def cmd_corpus_list(args) -> int:
    rows = [{"name": e.name, "order": e.order, "tags": sorted(e.tags)} for e in corpus.corpus()]
    if args.json:
        _emit_json({"schema": SCHEMA, "command": "corpus list", "entries": rows}, args.out)
    else:
        _emit("".join(f"{r['name']:14s} {r['order']:3d}  {' '.join(r['tags'])}\n" for r in rows),
              args.out)
    return 0


def cmd_corpus_emit(args) -> int:
    _emit(lc.format_table(corpus.get(args.name)), args.out)
    return 0


def cmd_verify_all(args) -> int:
    results = acceptance.run_all(seed=args.seed)
    for c in results:
        print(c.line(), file=sys.stderr)
    if args.json or args.out:
        _emit_json({"schema": SCHEMA, "command": "verify-all",
                    "criteria": [c.to_dict() for c in results],
                    "passed": all(c.passed for c in results)}, args.out)
    else:
        for c in results:
            print(c.line())
    return 0 if all(c.passed for c in results) else 1


# --- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="field spec p^n, e.g. 3^2")
    common.add_argument("--table", help="Cayley table file")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument("--seed", type=int, default=lc.DEFAULT_SEED)
    common.add_argument("--max-order", type=int, default=None, help="refuse larger loops")
    common.add_argument("--full", action="store_true",
                        help="no sampling shortcuts; allow large constructions")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="moufang", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("field", parents=[common]).set_defaults(func=cmd_field)

    pg = sub.add_parser("paige").add_subparsers(dest="action", required=True)
    b = pg.add_parser("build", parents=[common])
    b.add_argument("--with-units", action="store_true", help="emit U(F) instead of M(F)")
    b.set_defaults(func=cmd_paige_build)
    pg.add_parser("classify", parents=[common]).set_defaults(func=cmd_paige_classify)

    lp = sub.add_parser("loop").add_subparsers(dest="action", required=True)
    c = lp.add_parser("check", parents=[common])
    for law in LAWS:
        c.add_argument(f"--{law}", action="store_true")
    c.add_argument("--simple", action="store_true")
    c.set_defaults(func=cmd_loop_check)
    lp.add_parser("series", parents=[common]).set_defaults(func=cmd_loop_series)

    al = sub.add_parser("algebra").add_subparsers(dest="action", required=True)
    o = al.add_parser("omega", parents=[common])
    o.add_argument("--subloop", help="comma-separated generators of a normal subloop")
    o.add_argument("--report", help="JSON report path")
    o.add_argument("--cap", type=int, default=64, help="largest power examined")
    o.add_argument("--samples", type=int, default=100, help="random triples for bracket identities")
    o.set_defaults(func=cmd_algebra_omega)

    cp = sub.add_parser("corpus").add_subparsers(dest="action", required=True)
    cp.add_parser("list", parents=[common]).set_defaults(func=cmd_corpus_list)
    e = cp.add_parser("emit", parents=[common])
    e.add_argument("--name", required=True)
    e.set_defaults(func=cmd_corpus_emit)

    sub.add_parser("verify-all", parents=[common]).set_defaults(func=cmd_verify_all)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(name)s: %(message)s")
    t = time.perf_counter()
    try:
        code = args.func(args)
    except UsageError as exc:
        print(f"moufang: {exc}", file=sys.stderr)
        return 2
    except (MoufangError, OSError, ValueError) as exc:
        print(f"moufang: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    logger.info("%s finished in %.2fs", args.command, time.perf_counter() - t)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
