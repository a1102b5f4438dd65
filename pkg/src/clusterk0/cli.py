"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage or input error.
JSON reports carry ``schema_version`` and always have the keys
``command``, ``group``, ``certificate`` and ``generators``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .meshhom import ar_triangle_additivity_check, LambdaForm, dynkin_lambda_table, knit, NotDynkinError
from .quiver import DynkinType, QuiverError, adjacency, dynkin_quiver, kbar_hereditary, parse_quiver, reduce_source_sink
from .sheafk0 import K0Lattice, WeightSequence, dual_basis, kbar_canonical
from .tube import (
    TubeK0,
    kbar_tube,
    lambda_even_tube,
    lambda_odd_tube,
    simple,
    tube_additive,
    tube_objects,
)
from .verify import DEFAULT_SEED, SCOPES, run_scope
from .zlinalg import CokernelMap, IntMatrix, snf

SCHEMA_VERSION = 1

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def report(command, group=None, certificate=None, generators=None, **extra) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "group": group.to_json() if group is not None else None,
        "certificate": certificate,
        "generators": generators,
    }
    out.update(extra)
    return out


def _read_quiver(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        q = parse_quiver(text)
        q.topological_order()
    except QuiverError as exc:
        raise UsageError(f"{path}: {exc}") from None
    return q


def _tube_rank(text: str) -> int:
    try:
        q = int(text)
    except ValueError:
        raise UsageError(f"tube rank must be an integer, got {text!r}") from None
    if q < 1:
        raise UsageError("tube rank must be >= 1")
    return q


# --------------------------------------------------------------------------
# commands


def cmd_k0_quiver(args) -> tuple[dict, list[str], int]:
    q = _read_quiver(args.file)
    group = kbar_hereditary(q)
    b = adjacency(q)
    skew = b - b.T
    qmap = CokernelMap(skew)
    gens = {str(v): list(qmap.image([int(w == v) for w in q.vertices])) for v in q.vertices}
    cert = None
    lines = [f"K0bar = {group}", "coker(B - B^T) and coker(1 + Phi) agree"]
    if args.certificate:
        res = snf(skew)
        cert = {"U": res.U.to_lists(), "S": res.S.to_lists(), "V": res.V.to_lists()}
        lines.append(f"invariant factors: {list(res.diagonal)}")
    return report(["k0", "quiver", args.file], group, cert, gens), lines, EXIT_OK


def cmd_k0_canonical(args) -> tuple[dict, list[str], int]:
    try:
        w = WeightSequence.parse(args.weights)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = kbar_canonical(w)
    lat = K0Lattice(w)
    forms = dual_basis(w)
    gens = {name: list(v) for name, v in res.images.items()}
    lines = [f"weights {w}: K0bar = {res.group}", f"basis: {', '.join(res.basis)}"]
    lines += [f"  {name} -> {tuple(v)}" for name, v in res.images.items()]
    lines.append("dual forms on " + ", ".join(lat.labels) + ":")
    lines += [f"  {f.name}: {list(f.coeffs)}" + (f" mod {f.modulus}" if f.modulus else "") for f in forms]
    extra = {
        "weights": list(w.weights),
        "basis": list(res.basis),
        "relations_hold": res.relations_hold,
        "lattice_basis": lat.labels,
        "dual_forms": [{"name": f.name, "coeffs": list(f.coeffs), "modulus": f.modulus} for f in forms],
    }
    status = EXIT_OK if res.relations_hold else EXIT_CHECK
    return report(["k0", "canonical", args.weights], res.group, None, gens, **extra), lines, status


def cmd_k0_tube(args) -> tuple[dict, list[str], int]:
    q = _tube_rank(args.q)
    group = kbar_tube(q)
    k0 = TubeK0(q)
    qmap = CokernelMap(IntMatrix.identity(q) + k0.coxeter)
    gens = {f"S{a}": list(qmap.image(k0.cls(simple(q, a)))) for a in range(q)}
    return report(["k0", "tube", args.q], group, None, gens), [f"rank {q} cluster tube: K0bar = {group}"], EXIT_OK


def _parse_dynkin(parts: list[str]) -> DynkinType:
    text = "".join(parts).upper()
    if len(text) < 2 or text[0] not in "ADE":
        raise UsageError(f"expected a Dynkin type like 'E 7' or 'D6', got {' '.join(parts)!r}")
    try:
        return DynkinType(text[0], int(text[1:]))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_lambda_dynkin(args) -> tuple[dict, list[str], int]:
    t = _parse_dynkin(args.type)
    try:
        table = dynkin_lambda_table(t)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ar = knit(dynkin_quiver(t))
    additive = [ar_triangle_additivity_check(LambdaForm(ar, u, table.coxeter_number + 2)) for u in table.marked]
    group = kbar_hereditary(dynkin_quiver(t))
    marked = [{"module": u.module, "dim": list(ar.dims[u.module])} for u in table.marked]
    mu = [{"i": i, "j": j, "shift": s, "value": v} for (i, j, s), v in sorted(table.mu.items()) if v]
    lines = [f"{t}: Coxeter number m = {table.coxeter_number}, K0bar = {group}"]
    for k, u in enumerate(table.marked, 1):
        lines.append(f"M{k} = module with dim {ar.dims[u.module]}")
    lines.append(f"lambda^(m+2) values [lambda_i(M_j)]: {table.values}")
    lines.append("additive on all meshes: " + ("yes" if all(additive) else "NO"))
    extra = {"coxeter_number": table.coxeter_number, "marked": marked, "values": table.values, "mu": mu,
             "additive": additive}
    status = EXIT_OK if all(additive) else EXIT_CHECK
    return report(["lambda", "dynkin", *args.type], group, None, None, **extra), lines, status


def cmd_lambda_tube(args) -> tuple[dict, list[str], int]:
    q = _tube_rank(args.q)
    group = kbar_tube(q)
    objs = list(tube_objects(q, q))
    if q % 2 == 0:
        fn, mod, label = (lambda x: lambda_even_tube(q, x)), 0, "lambda"
    else:
        fn, mod, label = (lambda x: lambda_odd_tube(q, x)), 2, "lambda mod 2"
    values = {str(x): fn(x) for x in objs}
    additive = tube_additive(q, fn, mod)
    lines = [f"rank {q} tube: K0bar = {group}", f"{label}(S) = {fn(simple(q))}"]
    lines += [f"  {x}: {v}" for x, v in values.items()]
    lines.append("additive on all meshes up to length 2q: " + ("yes" if additive else "NO"))
    extra = {"modulus": mod, "values": values, "additive": additive}
    return report(["lambda", "tube", args.q], group, None, None, **extra), lines, (EXIT_OK if additive else EXIT_CHECK)


def cmd_reduce(args) -> tuple[dict, list[str], int]:
    q = _read_quiver(args.file)
    small, trace = reduce_source_sink(q)
    before, after = kbar_hereditary(q), kbar_hereditary(small)
    same = before == after
    lines = [f"removed arrows: {trace}", small.to_text().rstrip(), f"K0bar before = {before}, after = {after}"]
    extra = {"trace": [list(a) for a in trace], "reduced": {"n": small.n, "arrows": [list(a) for a in small.arrows]},
             "invariant": same}
    return report(["reduce", args.file], after, None, None, **extra), lines, (EXIT_OK if same else EXIT_CHECK)


def cmd_verify(args) -> tuple[dict, list[str], int]:
    results = run_scope(args.scope, args.seed)
    lines = [r.line() for r in results]
    ok = all(r.passed for r in results)
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    extra = {"scope": args.scope, "seed": args.seed,
             "checks": [{"criterion": r.criterion, "name": r.name, "passed": r.passed, "detail": r.detail}
                        for r in results]}
    return report(["verify", args.scope], None, None, None, **extra), lines, (EXIT_OK if ok else EXIT_CHECK)


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="clusterk0", description="Grothendieck groups of cluster categories.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    json_flag = argparse.ArgumentParser(add_help=False)
    json_flag.add_argument("--json", action="store_true", help="emit a JSON report")
    sub = p.add_subparsers(dest="command", required=True)

    k0 = sub.add_parser("k0", help="compute the cluster K-group").add_subparsers(dest="what", required=True)
    kq = k0.add_parser("quiver", parents=[json_flag], help="acyclic quiver from a file")
    kq.add_argument("file")
    kq.add_argument("--certificate", action="store_true", help="include Smith normal form transforms")
    kq.set_defaults(func=cmd_k0_quiver)
    kc = k0.add_parser("canonical", parents=[json_flag], help="weighted projective line, e.g. 2,3,5")
    kc.add_argument("weights")
    kc.set_defaults(func=cmd_k0_canonical)
    kt = k0.add_parser("tube", parents=[json_flag], help="cluster tube of rank Q")
    kt.add_argument("q")
    kt.set_defaults(func=cmd_k0_tube)

    lam = sub.add_parser("lambda", help="additive functions").add_subparsers(dest="what", required=True)
    ld = lam.add_parser("dynkin", parents=[json_flag], help="marked-orbit lambda table, e.g. 'D 6' or 'E7'")
    ld.add_argument("type", nargs="+")
    ld.set_defaults(func=cmd_lambda_dynkin)
    lt = lam.add_parser("tube", parents=[json_flag], help="lambda on the rank Q cluster tube")
    lt.add_argument("q")
    lt.set_defaults(func=cmd_lambda_tube)

    red = sub.add_parser("reduce", parents=[json_flag], help="strip source/sink arrows")
    red.add_argument("file")
    red.set_defaults(func=cmd_reduce)

    ver = sub.add_parser("verify", parents=[json_flag], help="run acceptance checks")
    ver.add_argument("scope", choices=sorted(SCOPES))
    ver.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ver.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotDynkinError, AssertionError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    rep, lines, status = out
    if args.json:
        print(json.dumps(rep, sort_keys=True, indent=2))
    else:
        print("\n".join(lines))
    return status


if __name__ == "__main__":
    sys.exit(main())
