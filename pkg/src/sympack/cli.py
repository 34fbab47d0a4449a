"""Command-line surface: validation, dispatch, and serialization.

Scalars serialize as "p/q" (or "p") strings; square roots as
{"sqrt": "p/q"}; obstruction tuples as {"d": n, "m": [...]}.  Exit codes:
0 success/decided, 1 input or hypothesis error, 2 undecided within budget.
Identical invocations produce byte-identical primary output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Any, Sequence

from .core import (
    DomainValidationError,
    HypothesisError,
    InputError,
    QuadraticValue,
    ResourceBudgetError,
    SympackError,
    UndecidedError,
    format_rational,
    parse_rational,
)
from .ech import concave_sequence, convex_sequence, first_dominance_violation
from .exceptional import ObstructionTuple, enumerate_exceptional
from .highdim import (
    HigherDimProblem,
    conjectureA_feasible,
    equal_packing_value,
    verify_no_new_obstruction,
)
from .packing import BallConfig, CapacityResult, decide_packing, packing_capacity
from .staircase import sample_staircase
from .stabilized import (
    decide_stabilized_packing,
    decide_stabilized_toric,
    decide_stabilized_two_ball,
)
from .toric import (
    ConcaveDomain,
    ConvexDomain,
    negative_weight_sequence,
    weight_sequence,
)


def worker_cap() -> int:
    """Upper bound on internal parallelism, from SYMPACK_THREADS."""
    raw = os.environ.get("SYMPACK_THREADS", "")
    try:
        return max(1, int(raw)) if raw else 1
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# serialization


def rat_json(x: Fraction) -> str:
    return format_rational(x)


def qv_json(v: QuadraticValue) -> Any:
    if v.is_rational:
        return format_rational(v.payload)
    return {"sqrt": format_rational(v.payload)}


def tuple_json(t: ObstructionTuple | None) -> Any:
    if t is None:
        return None
    return {"d": t.d, "m": list(t.m)}


def capacity_json(res: CapacityResult) -> dict:
    if res.is_exact:
        cap: dict[str, Any] = {"kind": res.value.kind, "value": qv_json(res.value)}
    else:
        cap = {"kind": "interval", "lower": qv_json(res.lower), "upper": qv_json(res.upper)}
    return {
        "capacity": cap,
        "attained": res.attained,
        "witness": tuple_json(res.witness),
        "degree_searched": res.degree_searched,
    }


def qv_csv(v: QuadraticValue) -> str:
    if v.is_rational:
        return format_rational(v.payload)
    return f"sqrt({format_rational(v.payload)})"


# ---------------------------------------------------------------------------
# input parsing


def parse_ball_list(text: str) -> BallConfig:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise InputError("empty ball list")
    return BallConfig.make(parse_rational(p) for p in parts)


_DOMAIN_FIELDS = {
    "ellipsoid": {"type", "a", "b"},
    "polydisk": {"type", "a", "b"},
    "concave_pl": {"type", "vertices"},
    "convex_pl": {"type", "vertices"},
}


def parse_domain_document(doc: str | dict, role: str = "auto"):
    """Validated moment region from a JSON document.

    ``role`` forces the concave or convex reading of shapes that admit
    both (ellipsoids / triangles).
    """
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as e:
            raise DomainValidationError("malformed_json", str(e)) from None
    if not isinstance(doc, dict):
        raise DomainValidationError("malformed_json", "domain document must be an object")
    kind = doc.get("type")
    if kind not in _DOMAIN_FIELDS:
        raise DomainValidationError("unknown_type", f"unknown domain type {kind!r}")
    extra = set(doc) - _DOMAIN_FIELDS[kind]
    if extra:
        raise DomainValidationError("unknown_field", f"unknown fields {sorted(extra)}")
    if kind in ("ellipsoid", "polydisk"):
        try:
            a = parse_rational(str(doc["a"]))
            b = parse_rational(str(doc["b"]))
        except KeyError as e:
            raise DomainValidationError("malformed_json", f"missing field {e}") from None
        except InputError:
            raise DomainValidationError("non_rational", "a and b must be rational") from None
        if kind == "polydisk":
            if role == "concave":
                raise DomainValidationError("wrong_kind", "a polydisk is a convex region")
            return ConvexDomain.rectangle(a, b)
        if role == "convex":
            return ConvexDomain.triangle(a, b)
        return ConcaveDomain.triangle(a, b)
    vertices = doc.get("vertices")
    if not isinstance(vertices, list):
        raise DomainValidationError("malformed_json", "vertices must be a list of pairs")
    if kind == "concave_pl":
        if role == "convex":
            raise DomainValidationError("wrong_kind", "document declares a concave region")
        return ConcaveDomain.make(vertices)
    if role == "concave":
        raise DomainValidationError("wrong_kind", "document declares a convex region")
    return ConvexDomain.make(vertices)


def _load_domain(path: str, role: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"cannot read domain file {path}: {e}") from None
    return parse_domain_document(text, role)


# ---------------------------------------------------------------------------
# commands


def _cmd_capacity(args) -> tuple[Any, int]:
    config = parse_ball_list(args.balls)
    res = packing_capacity(config, args.dmax, args.engine)
    return capacity_json(res), 0 if res.is_exact else 2


def _cmd_pack(args) -> tuple[Any, int]:
    config = parse_ball_list(args.balls)
    verdict = decide_packing(
        config, parse_rational(args.target), args.convention, args.dmax
    )
    payload = {"decision": verdict.decision}
    payload.update(capacity_json(verdict.capacity))
    return payload, 0 if verdict.decision != "undecided" else 2


def _cmd_exceptional(args) -> tuple[Any, int]:
    vectors = enumerate_exceptional(args.dmax, args.kmax)
    return {"count": len(vectors), "vectors": [tuple_json(t) for t in vectors]}, 0


def _cmd_weights(args) -> tuple[Any, int]:
    domain = _load_domain(args.domain, args.role)
    if isinstance(domain, ConcaveDomain):
        data = weight_sequence(domain)
        payload = {
            "kind": "concave",
            "weights": [rat_json(w) for w in data.weights],
            "area": rat_json(domain.area),
        }
    else:
        data = negative_weight_sequence(domain)
        payload = {
            "kind": "convex",
            "head": rat_json(data.head),
            "weights": [rat_json(w) for w in data.weights],
            "area": rat_json(domain.area),
        }
    return payload, 0


def _cmd_ech(args) -> tuple[Any, int]:
    if args.mode == "compare":
        if not args.concave or not args.convex:
            raise InputError("ech compare needs --concave and --convex")
        source = _load_domain(args.concave, "concave")
        target = _load_domain(args.convex, "convex")
        violation = first_dominance_violation(source, target, args.kmax)
        return {
            "dominates": violation is None,
            "kmax": args.kmax,
            "first_violation": violation,
        }, 0
    if not args.domain:
        raise InputError("ech needs --domain")
    domain = _load_domain(args.domain, args.role)
    if isinstance(domain, ConcaveDomain):
        seq = concave_sequence(domain)
    else:
        seq = convex_sequence(domain)
    values = seq.prefix(args.kmax)
    return {"kind": type(domain).__name__, "capacities": [rat_json(v) for v in values]}, 0


def _staircase_row(sample) -> list[str]:
    res = sample.value
    w = res.witness
    return [
        format_rational(sample.x),
        qv_csv(res.lower),
        qv_csv(res.upper),
        res.attained,
        str(w.d) if w else "",
        ";".join(map(str, w.m)) if w else "",
        f"{float(res.lower):.12g}",
    ]


_STAIRCASE_HEADER = ["x", "lower", "upper", "attained", "witness_d", "witness_m", "float_value"]


def _cmd_staircase(args) -> tuple[Any, int]:
    x_from = parse_rational(args.x_from)
    x_to = parse_rational(args.x_to)
    step = parse_rational(args.step)
    if x_from < 1 or x_to < x_from or step <= 0:
        raise InputError("need 1 <= from <= to and a positive step")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_STAIRCASE_HEADER)
    status = 0
    x = x_from
    while x <= x_to:
        try:
            sample = sample_staircase(x, x, step, args.dmax)[0]
        except SympackError as e:
            # flush the partial table with a trailing status row
            writer.writerow([format_rational(x), "", "", f"error:{type(e).__name__}", "", "", ""])
            status = 2
            break
        writer.writerow(_staircase_row(sample))
        x += step
    return buf.getvalue(), status


def _stabilized_payload(dec) -> dict:
    payload: dict[str, Any] = {
        "decision": dec.decision,
        "basis": dec.basis,
        "fiber_independent": dec.fiber_independent,
    }
    if dec.genus is not None:
        payload["genus"] = dec.genus
    if dec.area is not None:
        payload["area"] = rat_json(dec.area)
    if dec.ech_consistent is not None:
        payload["ech_dominates"] = dec.ech_consistent
    if dec.capacity is not None:
        payload["engine"] = capacity_json(dec.capacity)
    return payload


def _cmd_stabilized(args) -> tuple[Any, int]:
    if args.problem == "pack":
        dec = decide_stabilized_packing(
            parse_ball_list(args.balls),
            parse_rational(args.target),
            args.genus,
            parse_rational(args.area),
            args.convention,
            args.dmax,
        )
    elif args.problem == "twoball":
        dec = decide_stabilized_two_ball(
            args.n,
            parse_rational(args.r1),
            parse_rational(args.r2),
            parse_rational(args.target),
            args.aspherical,
            args.dmax,
        )
    else:
        dec = decide_stabilized_toric(
            _load_domain(args.concave, "concave"),
            _load_domain(args.convex, "convex"),
            args.genus,
            parse_rational(args.area),
            args.convention,
            args.dmax,
            args.kmax,
        )
    return _stabilized_payload(dec), 0 if dec.decision != "undecided" else 2


def _cmd_highdim(args) -> tuple[Any, int]:
    if args.problem == "verify":
        problem = HigherDimProblem.make(
            args.n, parse_ball_list(args.balls), parse_rational(args.target)
        )
        scan = verify_no_new_obstruction(problem, args.dmax)
        return {
            "n": scan.n,
            "d_max": scan.d_max,
            "tuples_scanned": scan.tuples_scanned,
            "violations": [tuple_json(t) for t in scan.violations],
            "clean": scan.clean,
        }, 0
    if args.problem == "equal":
        res = equal_packing_value(args.n, args.k)
        payload: dict[str, Any] = {"value": rat_json(res.value), "status": res.status}
        if res.note:
            payload["note"] = res.note
        return payload, 0
    problem = HigherDimProblem.make(
        args.n, parse_ball_list(args.balls), parse_rational(args.target)
    )
    verdict = conjectureA_feasible(problem)
    return {"decision": verdict.feasible, "basis": verdict.basis}, 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sympack",
        description="Exact decision engine for ball packing, toric embeddings, "
        "and ECH capacity sequences.",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed echoed for reproducibility")
    parser.add_argument("--out", help="write primary output to this file")
    parser.add_argument("--json-indent", type=int, default=None, help="pretty-print JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("capacity", help="packing capacity of a ball configuration")
    p.add_argument("--balls", required=True, help='comma-separated sizes, e.g. "1,1,5/2"')
    p.add_argument("--dmax", type=int, default=30)
    p.add_argument("--engine", default="full", choices=["full", "exceptional"])
    p.set_defaults(func=_cmd_capacity)

    p = sub.add_parser("pack", help="decide a packing against a target size")
    p.add_argument("--balls", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--convention", default="open", choices=["open", "closed"])
    p.add_argument("--dmax", type=int, default=40)
    p.set_defaults(func=_cmd_pack)

    p = sub.add_parser("exceptional", help="enumerate exceptional vectors")
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.set_defaults(func=_cmd_exceptional)

    p = sub.add_parser("weights", help="weight expansion of a moment region")
    p.add_argument("--domain", required=True, help="path to a domain JSON document")
    p.add_argument("--role", default="auto", choices=["auto", "concave", "convex"])
    p.set_defaults(func=_cmd_weights)

    p = sub.add_parser("ech", help="capacity sequence, or 'compare' two regions")
    p.add_argument("mode", nargs="?", choices=["compare"], default=None)
    p.add_argument("--domain")
    p.add_argument("--role", default="auto", choices=["auto", "concave", "convex"])
    p.add_argument("--concave")
    p.add_argument("--convex")
    p.add_argument("--kmax", type=int, default=200)
    p.set_defaults(func=_cmd_ech)

    p = sub.add_parser("staircase", help="sample the ellipsoid-into-ball function")
    p.add_argument("--from", dest="x_from", required=True)
    p.add_argument("--to", dest="x_to", required=True)
    p.add_argument("--step", required=True)
    p.add_argument("--dmax", type=int, default=40)
    p.set_defaults(func=_cmd_staircase, output_format="csv")

    p = sub.add_parser("stabilized", help="stabilized embedding decisions")
    p.add_argument("problem", choices=["pack", "twoball", "toric"])
    p.add_argument("--balls")
    p.add_argument("--target")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--r1")
    p.add_argument("--r2")
    p.add_argument("--concave")
    p.add_argument("--convex")
    p.add_argument("--genus", type=int, default=1)
    p.add_argument("--area", default="1")
    p.add_argument("--aspherical", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--convention", default="open", choices=["open", "closed"])
    p.add_argument("--dmax", type=int, default=40)
    p.add_argument("--kmax", type=int, default=50, help="prefix length of the ech cross-check")
    p.set_defaults(func=_cmd_stabilized)

    p = sub.add_parser("highdim", help="index/energy checks and equal-ball values")
    p.add_argument("problem", choices=["verify", "equal", "feasible"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--balls")
    p.add_argument("--target")
    p.add_argument("--k", type=int)
    p.add_argument("--dmax", type=int, default=30)
    p.set_defaults(func=_cmd_highdim)

    return parser


def _emit(args, payload, text_output: bool) -> None:
    if text_output:
        text = payload
    else:
        text = json.dumps(payload, indent=args.json_indent) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, status = args.func(args)
    except (InputError, HypothesisError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except UndecidedError as e:
        print(f"undecided: {e}", file=sys.stderr)
        if e.best is not None:
            _emit(args, {"undecided": True, "best": format_rational(e.best)}, False)
        return 2
    except ResourceBudgetError as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return 2
    _emit(args, payload, getattr(args, "output_format", "json") == "csv")
    return status


if __name__ == "__main__":
    sys.exit(main())
