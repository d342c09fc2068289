"""Command-line front end.

One subcommand per math-facing operation, reports on stdout as JSON
(default) or flattened text.  Identical argv and seed produce
byte-identical output: keys are sorted, enumeration orders are fixed,
and the verify-all report strips wall-clock fields.  Output is built in
full and written once.

Exit codes: 0 for an answered query, 1 for a violated mathematical
invariant, 2 for usage errors (including non-prime moduli and malformed
class expressions), 3 for a refused oversized catalog.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import (
    CatalogTooLargeError,
    DecompositionDefectError,
    InvariantError,
    NotPrimeError,
    ParseError,
)
from .exterior import Multivector, monomials, parse, pullback_matrix
from .extraspecial import center, commutator, group_type, make_group
from .inflation import (
    certificate,
    counterexample,
    ideal_component,
    quotient_basis,
    theorem1_verify,
    vanishing_space,
)
from .isotropic import count_isotropic, enumerate_isotropic
from .prime_linalg import Subspace, check_prime
from .symplectic import (
    SIGMA,
    SymplecticSpace,
    decompose,
    ladder,
    premet_suprunenko,
    sl2_check,
)
from .verify import run_all


def _prime(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    try:
        check_prime(value)
    except NotPrimeError:
        raise argparse.ArgumentTypeError(f"{value} is not prime")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _thread_cap() -> int:
    """Validate INFKER_THREADS; execution is sequential, which satisfies
    any positive cap."""
    raw = os.environ.get("INFKER_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"INFKER_THREADS={raw!r} is not an integer")
    if value < 1:
        raise ValueError(f"INFKER_THREADS must be positive, got {value}")
    return value


def _check_degree(r: int, m: int):
    if not 0 <= r <= 2 * m:
        raise ValueError(f"degree {r} out of range 0..{2 * m}")


def _class_from(args, space: SymplecticSpace) -> Multivector:
    return parse(args.class_expr, space.p, space.m)


def _mv_strings(space: SymplecticSpace, r: int, sub: Subspace) -> list:
    return [
        str(Multivector.from_coords(space.p, space.m, r, row))
        for row in sub.basis.entries
    ]


# ---------------------------------------------------------------------------
# subcommand handlers; each returns (payload, exit code)


def _cmd_sl2_check(args):
    rep = sl2_check(SymplecticSpace(args.prime, args.rank))
    payload = {"command": "sl2-check", **rep.to_json()}
    return payload, 0 if rep.ok else 1


def _cmd_decompose(args):
    space = SymplecticSpace(args.prime, args.rank)
    alpha = _class_from(args, space)
    e, beta = decompose(space, alpha)
    payload = {
        "command": "decompose",
        "p": space.p,
        "m": space.m,
        "input": str(alpha),
        "degree": None if alpha.is_zero() else alpha.degree(),
        "e": str(e),
        "beta": str(beta),
        "sigma": SIGMA,
    }
    return payload, 0


def _cmd_ideal_basis(args):
    space = SymplecticSpace(args.prime, args.rank)
    _check_degree(args.degree, space.m)
    sub = ideal_component(space, args.degree)
    payload = {
        "command": "ideal-basis",
        "p": space.p,
        "m": space.m,
        "degree": args.degree,
        "dim": sub.dim,
        "basis": _mv_strings(space, args.degree, sub),
    }
    return payload, 0


def _cmd_quotient_basis(args):
    space = SymplecticSpace(args.prime, args.rank)
    _check_degree(args.degree, space.m)
    monos = quotient_basis(space, args.degree)
    payload = {
        "command": "quotient-basis",
        "p": space.p,
        "m": space.m,
        "degree": args.degree,
        "dim": len(monos),
        "basis": [space.order.mono_name(mono) for mono in monos],
    }
    return payload, 0


def _cmd_vanishing_space(args):
    space = SymplecticSpace(args.prime, args.rank)
    _check_degree(args.degree, space.m)
    sub = vanishing_space(space, args.degree)
    payload = {
        "command": "vanishing-space",
        "p": space.p,
        "m": space.m,
        "degree": args.degree,
        "dim": sub.dim,
        "basis": _mv_strings(space, args.degree, sub),
    }
    return payload, 0


def _cmd_theorem1(args):
    space = SymplecticSpace(args.prime, args.rank)
    sandwiches = theorem1_verify(space)
    payload = {
        "command": "theorem1",
        "p": space.p,
        "m": space.m,
        "collapse_expected": space.p > space.m,
        "max_gap": max(s.gap for s in sandwiches),
        "degrees": [s.to_json() for s in sandwiches],
    }
    return payload, 0


def _cmd_counterexample(args):
    space = SymplecticSpace(args.prime, args.rank)
    cx = counterexample(space)
    payload = {
        "command": "counterexample",
        "p": space.p,
        "m": space.m,
        "found": cx is not None,
        "degree": None if cx is None else cx.degree(),
        "class": None if cx is None else str(cx),
    }
    return payload, 0


def _cmd_certificate(args):
    space = SymplecticSpace(args.prime, args.rank)
    target = _class_from(args, space)
    rep = certificate(space, target)
    payload = {"command": "certificate", **rep.to_json()}
    return payload, 0


def _cmd_isotropic(args):
    space = SymplecticSpace(args.prime, args.rank)
    if args.dim > space.m:
        raise ValueError(
            f"isotropic dimension {args.dim} exceeds m = {space.m}")
    count = count_isotropic(space.p, space.m, args.dim)
    if args.count_only:
        payload = {
            "command": "isotropic",
            "p": space.p,
            "m": space.m,
            "dim": args.dim,
            "count": count,
            "enumerated": False,
        }
        return payload, 0
    catalog = enumerate_isotropic(space, args.dim)
    lines = [{"basis": [list(row) for row in sub.basis.entries]}
             for sub in catalog]
    summary = {
        "command": "isotropic",
        "p": space.p,
        "m": space.m,
        "dim": args.dim,
        "count": catalog.count,
        "complete": catalog.complete,
        "enumerated": True,
    }
    return lines + [summary], 0


def _cmd_group(args):
    group = make_group(args.prime, args.rank)
    space = SymplecticSpace(args.prime, args.rank)
    base = {"command": "group", "p": group.p, "m": group.m, "op": args.op}
    if args.op == "order":
        return {**base, "order": group.order()}, 0
    if args.op == "center":
        elems = center(group)
        return {
            **base,
            "size": len(elems),
            "elements": [str(el) for el in elems],
        }, 0
    if args.op == "commutator-form":
        gens = group.generators()
        matrix = [
            [commutator(a, b).z for b in gens]
            for a in gens
        ]
        expected = [
            [space.pairing(a.v, b.v) for b in gens]
            for a in gens
        ]
        if matrix != expected:
            raise InvariantError(
                "commutators disagree with the symplectic pairing")
        return {**base, "matrix": matrix, "matches_pairing": True}, 0
    # args.op == "type"
    return {**base, **group_type(group)}, 0


def _cmd_premet_suprunenko(args):
    rep = premet_suprunenko(args.prime, args.rank, args.degree)
    return {"command": "premet-suprunenko", **rep.to_json()}, 0


def _cmd_ladder(args):
    space = SymplecticSpace(args.prime, args.rank)
    seed = _class_from(args, space)
    seq = ladder(space, seed)
    payload = {
        "command": "ladder",
        "p": space.p,
        "m": space.m,
        "start": str(seq.start),
        "weight": seq.weight,
        "length": len(seq),
        "entries": [str(entry) for entry in seq.entries],
    }
    return payload, 0


def _cmd_restrict(args):
    space = SymplecticSpace(args.prime, args.rank)
    target = _class_from(args, space)
    if target.is_zero():
        raise ValueError("class is zero")
    degree = target.degree()
    with open(args.subspace, "r", encoding="utf-8") as fh:
        rows = json.load(fh)
    if (not isinstance(rows, list)
            or not all(isinstance(r, list) for r in rows)):
        raise ValueError("subspace file must hold a JSON array of rows")
    sub = Subspace.from_rows(space.p, space.n, rows)
    rest = pullback_matrix(sub.basis.transpose(), degree).matvec(
        target.coords(degree))
    terms = []
    for idx, coeff in enumerate(rest):
        if coeff:
            mono = monomials(sub.dim, degree)[idx]
            name = "^".join(f"e{i + 1}" for i in mono) if mono else "1"
            terms.append({"monomial": name, "coeff": coeff})
    payload = {
        "command": "restrict",
        "p": space.p,
        "m": space.m,
        "degree": degree,
        "input": str(target),
        "sub_dim": sub.dim,
        "zero": not terms,
        "terms": terms,
    }
    return payload, 0


def _strip_timing(report: dict) -> dict:
    """Remove wall-clock fields so identical argv gives identical bytes."""
    out = {k: v for k, v in report.items()
           if k not in ("total_seconds", "in_budget")}
    out["criteria"] = [
        {k: v for k, v in crit.items()
         if k not in ("seconds", "in_budget")}
        for crit in report["criteria"]
    ]
    return out


def _cmd_verify_all(args):
    report = run_all(grid=args.grid, seed=args.seed)
    payload = {"command": "verify-all", **_strip_timing(report)}
    return payload, 0 if report["ok"] else 1


# ---------------------------------------------------------------------------
# parser assembly and output


def _add_common(sp, prime=True, rank=True, degree=False, class_expr=False):
    if prime:
        sp.add_argument("-p", "--prime", type=_prime, required=True,
                        help="prime modulus")
    if rank:
        sp.add_argument("-m", "--rank", type=_positive, required=True,
                        help="number of hyperbolic pairs (ambient dim 2m)")
    if degree:
        sp.add_argument("-r", "--degree", type=_nonnegative, required=True,
                        help="wedge degree")
    if class_expr:
        sp.add_argument("--class", dest="class_expr", required=True,
                        metavar="EXPR",
                        help="multivector, e.g. 'x1^y1 + 2*x2^y2'")
    sp.add_argument("--format", choices=("json", "text"), default="json",
                    help="output format (default json)")
    sp.add_argument("--seed", type=int, default=0,
                    help="seed for randomized checks")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="infker",
        description="Exact computations around the inflation kernel of "
                    "extraspecial p-groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sl2-check",
                        help="verify the operator triple relations")
    _add_common(sp)
    sp.set_defaults(handler=_cmd_sl2_check)

    sp = sub.add_parser("decompose",
                        help="split a class into primitive plus lowered")
    _add_common(sp, class_expr=True)
    sp.set_defaults(handler=_cmd_decompose)

    sp = sub.add_parser("ideal-basis",
                        help="basis of the ideal component in one degree")
    _add_common(sp, degree=True)
    sp.set_defaults(handler=_cmd_ideal_basis)

    sp = sub.add_parser("quotient-basis",
                        help="standard monomials modulo the ideal")
    _add_common(sp, degree=True)
    sp.set_defaults(handler=_cmd_quotient_basis)

    sp = sub.add_parser("vanishing-space",
                        help="classes pulling back to zero on all Lagrangians")
    _add_common(sp, degree=True)
    sp.set_defaults(handler=_cmd_vanishing_space)

    sp = sub.add_parser("theorem1",
                        help="ideal vs vanishing space in every degree")
    _add_common(sp)
    sp.set_defaults(handler=_cmd_theorem1)

    sp = sub.add_parser("counterexample",
                        help="first class in the gap, if any")
    _add_common(sp)
    sp.set_defaults(handler=_cmd_counterexample)

    sp = sub.add_parser("certificate",
                        help="pointwise membership test for one class")
    _add_common(sp, class_expr=True)
    sp.set_defaults(handler=_cmd_certificate)

    sp = sub.add_parser("isotropic",
                        help="catalog of totally isotropic subspaces")
    _add_common(sp)
    sp.add_argument("--dim", type=_nonnegative, required=True,
                    help="dimension of the listed subspaces")
    sp.add_argument("--count-only", action="store_true",
                    help="closed-form count, no enumeration")
    sp.set_defaults(handler=_cmd_isotropic)

    sp = sub.add_parser("group",
                        help="extraspecial group computations")
    _add_common(sp)
    sp.add_argument("--op", required=True,
                    choices=("center", "order", "commutator-form", "type"))
    sp.set_defaults(handler=_cmd_group)

    sp = sub.add_parser("premet-suprunenko",
                        help="irreducibility predicate for a primitive piece")
    _add_common(sp, degree=True)
    sp.set_defaults(handler=_cmd_premet_suprunenko)

    sp = sub.add_parser("ladder",
                        help="divided-power string through a primitive seed")
    _add_common(sp, class_expr=True)
    sp.set_defaults(handler=_cmd_ladder)

    sp = sub.add_parser("restrict",
                        help="pull a class back to a subspace")
    _add_common(sp, class_expr=True)
    sp.add_argument("--subspace", required=True, metavar="FILE",
                    help="JSON file with an array of basis rows")
    sp.set_defaults(handler=_cmd_restrict)

    sp = sub.add_parser("verify-all",
                        help="run the acceptance battery")
    sp.add_argument("--grid", choices=("small", "full"), default="small")
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(handler=_cmd_verify_all)

    return parser


def _text_lines(value, prefix=""):
    if isinstance(value, dict):
        if not value:
            yield f"{prefix}: (empty)"
            return
        for key in sorted(value):
            head = f"{prefix}.{key}" if prefix else str(key)
            yield from _text_lines(value[key], head)
    elif isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            yield f"{prefix}: [{', '.join(str(v) for v in value)}]"
        else:
            for i, v in enumerate(value):
                yield from _text_lines(v, f"{prefix}[{i}]")
    else:
        yield f"{prefix}: {value}"


def _render(payload, fmt: str) -> str:
    if isinstance(payload, list):
        if fmt == "json":
            return "\n".join(
                json.dumps(rec, sort_keys=True) for rec in payload)
        blocks = ["\n".join(_text_lines(rec)) for rec in payload]
        return "\n--\n".join(blocks)
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True)
    return "\n".join(_text_lines(payload))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return 0 if code == 0 else 2
    try:
        _thread_cap()
        payload, code = args.handler(args)
    except (NotPrimeError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CatalogTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DecompositionDefectError, InvariantError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(_render(payload, args.format) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
