"""Command-line surface for the toolkit.

Verdict-style commands exit 0 on a true/accept outcome and 2 on a
false/reject outcome; every error path exits 1 with its own message.
Reports embed the full input model so they can be re-checked without
the invocation context, and identical inputs (including seeds) produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .composites import (BipartiteState, conditional, marginal, max_tensor,
                         min_tensor)
from .errors import InvalidInputError, ToolkitError
from .linalg import mat, vec
from .lp import feasible_point
from .models import parse_model_name
from .protocols.bitcommit import (bc_cheat_bound, bc_cheat_curve, bc_run,
                                  find_double_decomposition)
from .protocols.cloning import build_cloner, is_broadcastable
from .protocols.disturbance import nondisturbing_basis
from .protocols.teleport import (construct_deterministic_teleportation,
                                 verify_teleportation)
from .scalars import FLOAT, RATIONAL, emit, merge_arithmetic
from .spaces import one_shot_distinguishing_observable

OK = 0
ERROR = 1
REJECT = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; 2 is reserved for reject verdicts."""

    def error(self, message):
        self.exit(ERROR, f"{self.prog}: error: {message}\n")


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ValueError:
        return Fraction(float(text))


def _seed_arg(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def _load_json(source: str):
    """Inline JSON when the argument looks like JSON, else a file path."""
    text = source
    if not source.lstrip().startswith(("[", "{")):
        text = Path(source).read_text()
    return json.loads(text)


def _emit_vec(v, mode):
    return [emit(x, mode) for x in v]


def _emit_mat(m, mode):
    return [[emit(x, mode) for x in row] for row in m]


def _mode_for(args, *spaces) -> str:
    if args.arithmetic is not None:
        return args.arithmetic
    return merge_arithmetic(*(s.arithmetic for s in spaces))


def _model_payload(space) -> dict:
    return space.to_json_dict()


def _write(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _write_json(args, report: dict) -> None:
    _write(args, json.dumps(report, sort_keys=True, indent=2) + "\n")


def _require_json_format(args) -> None:
    if args.format == "csv":
        raise InvalidInputError("csv format is only available for "
                                "'bitcommit bound'")


def _states_from_args(args, space):
    if (args.states is None) == (args.states_json is None):
        raise InvalidInputError("give exactly one of --states or "
                                "--states-json")
    if args.states is not None:
        verts = space.vertices
        picked = []
        for token in args.states.split(","):
            i = int(token)
            if not 0 <= i < len(verts):
                raise InvalidInputError(f"vertex index {i} out of range")
            picked.append(verts[i])
        return tuple(picked)
    return tuple(vec(row) for row in _load_json(args.states_json))


def _cert_payload(cert, mode) -> dict:
    body = {
        "verdict": cert.verdict,
        "constant": emit(cert.constant, mode),
        "mu": _emit_mat(cert.mu.matrix, mode),
        "duality_witness": _emit_mat(cert.duality_witness, mode),
        "correction": None,
    }
    if cert.correction is not None:
        body["correction"] = _emit_mat(cert.correction.matrix, mode)
    return body


# -- subcommand handlers ----------------------------------------------------


def _cmd_tensor(args) -> int:
    _require_json_format(args)
    a = parse_model_name(args.model_a)
    b = parse_model_name(args.model_b)
    mode = _mode_for(args, a, b)
    rule = "max" if args.max else "min"
    composite = max_tensor(a, b) if args.max else min_tensor(a, b)
    report = {
        "command": "tensor",
        "tensor": rule,
        "model_a": _model_payload(a),
        "model_b": _model_payload(b),
        "dim": composite.dim,
    }
    if args.max:
        report["facets"] = [_emit_vec(f, mode) for f in composite.cone.facets]
    else:
        report["generators"] = [_emit_vec(g, mode)
                                for g in composite.cone.generators]
    status = OK
    if args.check_equals_min:
        if not args.max:
            raise InvalidInputError("--check-equals-min requires --max")
        small = min_tensor(a, b)
        eps = composite.tol(args.tol)
        products = small.cone.generators
        rows = tuple(tuple(p[i] for p in products)
                     for i in range(composite.dim))
        equal = True
        for g in composite.cone.generators:
            x, _ = feasible_point(rows, g, eps)
            if x is None:
                equal = False
                break
        report["equals_min"] = equal
        status = OK if equal else REJECT
    _write_json(args, report)
    return status


def _cmd_marginal(args) -> int:
    _require_json_format(args)
    state = BipartiteState.from_json_dict(_load_json(args.state))
    space = state.composite.factor_a if args.side == "a" \
        else state.composite.factor_b
    mode = _mode_for(args, state.composite)
    report = {
        "command": "marginal",
        "side": args.side,
        "state": state.to_json_dict(),
        "model": _model_payload(space),
        "result": _emit_vec(marginal(state, args.side), mode),
    }
    _write_json(args, report)
    return OK


def _cmd_conditional(args) -> int:
    _require_json_format(args)
    state = BipartiteState.from_json_dict(_load_json(args.state))
    effect = vec(_load_json(args.effect))
    far = state.composite.factor_b if args.side == "a" \
        else state.composite.factor_a
    mode = _mode_for(args, state.composite)
    result = conditional(state, effect, args.side, args.tol)
    report = {
        "command": "conditional",
        "side": args.side,
        "state": state.to_json_dict(),
        "effect": _emit_vec(effect, mode),
        "model": _model_payload(far),
        "result": _emit_vec(result, mode),
    }
    _write_json(args, report)
    return OK


def _cmd_teleport(args) -> int:
    _require_json_format(args)
    if args.action == "construct":
        space = parse_model_name(args.model)
        scheme = construct_deterministic_teleportation(space, tol=args.tol)
        if args.group is not None:
            label = args.group.lower()
            order = len(scheme.group)
            if label not in (f"z{order}", f"c{order}", "cyclic"):
                raise InvalidInputError(
                    f"model symmetry group is cyclic of order {order}; "
                    f"got {args.group!r}")
        mode = _mode_for(args, space)
        report = {
            "command": "teleport construct",
            "model": _model_payload(space),
            "group": [_emit_mat(g, mode) for g in scheme.group],
            "omega": scheme.omega.to_json_dict(),
            "effects": [_emit_mat(F, mode) for F in scheme.effects],
            "constant": emit(scheme.constant, mode),
            "certificates": [_cert_payload(c, mode)
                             for c in scheme.certificates],
        }
        _write_json(args, report)
        return OK
    a = parse_model_name(args.model_a)
    b = parse_model_name(args.model_b or args.model_a)
    effect = mat(_load_json(args.effect))
    omega = BipartiteState.from_json_dict(_load_json(args.omega))
    cert = verify_teleportation(a, b, effect, omega, args.tol)
    mode = _mode_for(args, a, b)
    report = {
        "command": "teleport verify",
        "model_a": _model_payload(a),
        "model_b": _model_payload(b),
        "effect": _emit_mat(effect, mode),
        "omega": omega.to_json_dict(),
        "certificate": _cert_payload(cert, mode),
    }
    _write_json(args, report)
    return OK if cert.verdict else REJECT


def _cmd_clone(args) -> int:
    _require_json_format(args)
    space = parse_model_name(args.model)
    states = _states_from_args(args, space)
    mode = _mode_for(args, space)
    observable = one_shot_distinguishing_observable(space, states, args.tol)
    report = {
        "command": "clone check",
        "model": _model_payload(space),
        "states": [_emit_vec(s, mode) for s in states],
        "clonable": observable is not None,
        "observable": None,
        "cloner": None,
    }
    if observable is not None:
        report["observable"] = [_emit_vec(e.functional, mode)
                                for e in observable.effects]
        cloner = build_cloner(space, states, observable, args.tol)
        report["cloner"] = _emit_mat(cloner.matrix, mode)
    _write_json(args, report)
    return OK if observable is not None else REJECT


def _cmd_broadcast(args) -> int:
    _require_json_format(args)
    space = parse_model_name(args.model)
    states = _states_from_args(args, space)
    mode = _mode_for(args, space)
    result = is_broadcastable(space, states, args.tol)
    report = {
        "command": "broadcast check",
        "model": _model_payload(space),
        "states": [_emit_vec(s, mode) for s in states],
        "status": result.status,
        "witness": None,
        "candidates_tried": result.candidates_tried,
    }
    if result.witness is not None:
        report["witness"] = [_emit_vec(w, mode) for w in result.witness]
    _write_json(args, report)
    if result.status == "inconclusive":
        raise InvalidInputError("candidate cap exceeded; broadcastability "
                                "is inconclusive")
    return OK if result.status == "broadcastable" else REJECT


def _cmd_disturb(args) -> int:
    _require_json_format(args)
    space = parse_model_name(args.model)
    mode = _mode_for(args, space)
    basis = nondisturbing_basis(space)
    report = {
        "command": "disturb basis",
        "model": _model_payload(space),
        "summands": len(basis),
        "basis": [_emit_mat(t.matrix, mode) for t in basis],
    }
    _write_json(args, report)
    return OK


def _cmd_bitcommit(args) -> int:
    space = parse_model_name(args.model)
    mode = _mode_for(args, space)
    dd = find_double_decomposition(space, args.tol)
    if args.action == "decompose":
        _require_json_format(args)
        report = {
            "command": "bitcommit decompose",
            "model": _model_payload(space),
            "omega": _emit_vec(dd.omega, mode),
            "branches": [
                [{"state": _emit_vec(s, mode), "probability": emit(p, mode)}
                 for s, p in branch]
                for branch in (dd.branch0, dd.branch1)],
            "distinguishers": [
                [_emit_vec(a, mode) for a in block]
                for block in (dd.distinguishers0, dd.distinguishers1)],
        }
        _write_json(args, report)
        return OK
    if args.action == "run":
        _require_json_format(args)
        tamper = None
        if args.tamper is not None:
            pos, claim = args.tamper.split(",")
            tamper = (int(pos), int(claim))
        transcript = bc_run(space, dd, args.bit, args.n, args.seed, tamper)
        report = {
            "command": "bitcommit run",
            "model": _model_payload(space),
            "bit": transcript.bit,
            "n": transcript.n,
            "seed": transcript.seed,
            "samples": transcript.samples,
            "committed": [_emit_vec(s, mode) for s in transcript.committed],
            "reveal": {"bit": transcript.reveal[0],
                       "samples": transcript.reveal[1]},
            "verdict": transcript.verdict,
        }
        _write_json(args, report)
        return OK if transcript.verdict == "accept" else REJECT
    bound = bc_cheat_bound(space, dd, args.n)
    if args.format == "csv":
        curve = bc_cheat_curve(space, dd, args.n, args.trials, args.seed)
        lines = ["n,analytic_bound,empirical_rate,stderr"]
        for n, analytic, emp, err in curve:
            lines.append(f"{n},{emit(analytic, mode)},{emp!r},{err!r}")
        _write(args, "\n".join(lines) + "\n")
        return OK
    report = {
        "command": "bitcommit bound",
        "model": _model_payload(space),
        "n": bound.rounds,
        "per_round": emit(bound.per_round, mode),
        "overall": emit(bound.overall, mode),
        "optimizer": _emit_vec(bound.optimizer, mode),
    }
    _write_json(args, report)
    return OK


# -- parser wiring ----------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="gpt-kit",
                     description="convex operational model toolkit")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--arithmetic", choices=(RATIONAL, FLOAT),
                        default=None, help="override output number style")
    common.add_argument("--tol", type=_fraction_arg, default=None,
                        help="comparison tolerance (default: exact for "
                             "rational models, 1e-9 for float)")
    common.add_argument("--seed", type=_seed_arg, default=0,
                        help="64-bit seed for randomized commands")
    common.add_argument("--out", default=None, help="write the report here "
                        "instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tensor", parents=[common],
                       help="compose two models and list the composite cone")
    rule = p.add_mutually_exclusive_group(required=True)
    rule.add_argument("--min", action="store_true")
    rule.add_argument("--max", action="store_true")
    p.add_argument("model_a")
    p.add_argument("model_b")
    p.add_argument("--check-equals-min", action="store_true",
                   help="with --max: verify the two composites coincide")
    p.set_defaults(handler=_cmd_tensor)

    p = sub.add_parser("marginal", parents=[common],
                       help="reduced state of one factor")
    p.add_argument("--state", required=True,
                   help="bipartite state JSON (inline or a file path)")
    p.add_argument("--side", choices=("a", "b"), default="a")
    p.set_defaults(handler=_cmd_marginal)

    p = sub.add_parser("conditional", parents=[common],
                       help="far-factor state after one local outcome")
    p.add_argument("--state", required=True)
    p.add_argument("--effect", required=True,
                   help="effect coordinates JSON (inline or a file path)")
    p.add_argument("--side", choices=("a", "b"), default="a",
                   help="side the effect acts on")
    p.set_defaults(handler=_cmd_conditional)

    p = sub.add_parser("teleport", parents=[common],
                       help="verify a protocol pair or construct one")
    p.add_argument("action", choices=("verify", "construct"))
    p.add_argument("--model", help="(construct) model name")
    p.add_argument("--group", default=None,
                   help="(construct) symmetry group label, e.g. z4")
    p.add_argument("--model-a", help="(verify) input system model")
    p.add_argument("--model-b", default=None,
                   help="(verify) ancilla model, default: same as --model-a")
    p.add_argument("--effect", help="(verify) joint effect matrix JSON")
    p.add_argument("--omega", help="(verify) shared bipartite state JSON")
    p.set_defaults(handler=_cmd_teleport)

    p = sub.add_parser("clone", parents=[common],
                       help="decide clonability of a finite state set")
    p.add_argument("action", choices=("check",))
    p.add_argument("--model", required=True)
    p.add_argument("--states", default=None,
                   help="comma-separated vertex indices, e.g. 0,2")
    p.add_argument("--states-json", default=None,
                   help="JSON list of state vectors (inline or a file path)")
    p.set_defaults(handler=_cmd_clone)

    p = sub.add_parser("broadcast", parents=[common],
                       help="search for a distinguishable simplex witness")
    p.add_argument("action", choices=("check",))
    p.add_argument("--model", required=True)
    p.add_argument("--states", default=None)
    p.add_argument("--states-json", default=None)
    p.set_defaults(handler=_cmd_broadcast)

    p = sub.add_parser("disturb", parents=[common],
                       help="basis of the nondisturbing maps")
    p.add_argument("action", choices=("basis",))
    p.add_argument("--model", required=True)
    p.set_defaults(handler=_cmd_disturb)

    p = sub.add_parser("bitcommit", parents=[common],
                       help="bit-commitment decomposition, runs, and bounds")
    p.add_argument("action", choices=("decompose", "run", "bound"))
    p.add_argument("--model", required=True)
    p.add_argument("--bit", type=int, choices=(0, 1), default=0)
    p.add_argument("--n", type=int, default=1, help="number of rounds")
    p.add_argument("--trials", type=int, default=2000,
                   help="(bound --format csv) Monte Carlo trials per row")
    p.add_argument("--tamper", default=None,
                   help="(run) position,claimed-sample to corrupt the reveal")
    p.set_defaults(handler=_cmd_bitcommit)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "teleport":
        if args.action == "construct" and not args.model:
            parser.error("teleport construct needs --model")
        if args.action == "verify" and not (
                args.model_a and args.effect and args.omega):
            parser.error("teleport verify needs --model-a, --effect, "
                         "and --omega")
    try:
        return args.handler(args)
    except ToolkitError as exc:
        kind = type(exc).__name__.removesuffix("Error")
        sys.stderr.write(f"gpt-kit: {kind}: {exc}\n")
        return ERROR
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"gpt-kit: error: {exc}\n")
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
