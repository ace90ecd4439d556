"""Command-line entry point: ``ndaft --mode MODE [options] PROGRAM``.

Exit status is 0 on success, 1 on invalid option combinations or domain
errors, 2 on a parse error and 3 when an enumeration guard is exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import CapacityError, DomainError, NdaftError, ParseError, check_atom_guard
from .fixpoints import fixpoints, kk_interpretations, kk_state, stable_fixpoints, wf_state
from .lattice import State
from .operators import check_properties, program_ndao
from .oracle import run_theorem_suite
from .program import Program, parse_program
from .semantics import (
    Interpretation,
    enumerate_interpretations,
    is_model,
    is_supported,
    is_three_valued_stable,
    is_weakly_supported,
)
from .wfsd import wfsd

DEFINITION_MODES = {
    "models": is_model,
    "weakly-supported": is_weakly_supported,
    "supported": is_supported,
    "stable-models": is_three_valued_stable,
}
PAIR_MODES = {"fixpoints": fixpoints, "kk-interpretations": kk_interpretations, "stable-fixpoints": stable_fixpoints}
STATE_MODES = {"kk-state", "wf-state", "wfsd"}
MODES = list(DEFINITION_MODES) + list(PAIR_MODES) + ["kk-state", "wf-state", "wfsd", "check-operator", "theorems"]


class UsageError(NdaftError):
    pass


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ndaft", description="Semantics of disjunctive logic programs via non-deterministic AFT.")
    ap.add_argument("input", nargs="?", default="-", help="program file, or '-' for standard input (default)")
    ap.add_argument("--mode", required=True, choices=MODES)
    ap.add_argument("--operator", default="ic", choices=["ic", "ic-min", "dmt"])
    ap.add_argument("--consistent-only", dest="consistent_only", action=argparse.BooleanOptionalAction, default=True,
                    help="restrict pair scans to consistent pairs (default: on)")
    ap.add_argument("--convex-members", action="store_true", help="list every member of reported states")
    ap.add_argument("--trace", action="store_true", help="include the iteration trace of state modes")
    ap.add_argument("--format", default="text", choices=["text", "json"])
    ap.add_argument("--guard-atoms", type=int, default=None,
                    help="override the atom-count guard (also settable via NDAFT_GUARD_ATOMS)")
    return ap


def _validate(args) -> None:
    if args.operator == "dmt" and not args.consistent_only and args.mode in PAIR_MODES:
        raise UsageError("the dmt operator is only defined on consistent pairs; drop --no-consistent-only")
    if args.mode in ("stable-models", "supported", "weakly-supported") and not args.consistent_only:
        raise UsageError(f"{args.mode} is defined for consistent interpretations only")
    if args.mode == "theorems" and args.operator == "dmt":
        raise UsageError("the theorem suite runs on the ic or ic-min operator")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _state_doc(S: State, trace, args) -> dict:
    doc = {"state": S.to_json(args.convex_members)}
    if args.trace:
        doc["trace"] = trace.to_json(args.convex_members)
    return doc


def _state_text(S: State, with_members: bool) -> list[str]:
    L = S.lattice
    lines = [
        "lower antichain: " + L.format_family(S.lower),
        "upper antichain: " + L.format_family(S.upper),
        f"members: {len(S.members())}",
    ]
    if with_members:
        lines.append("convex set: " + L.format_family(S.members()))
    return lines


def compute(args, P: Program) -> tuple[dict, list[str]]:
    """Return the JSON document and the text lines for one request."""
    L = P.lattice
    doc: dict = {"mode": args.mode}
    if args.mode in DEFINITION_MODES:
        pred = DEFINITION_MODES[args.mode]
        if args.mode == "models" and not args.consistent_only:
            hits = [i for i in enumerate_interpretations(P, False) if pred(i, P, allow_inconsistent=True)]
        else:
            hits = [i for i in enumerate_interpretations(P, True) if pred(i, P)]
        doc["interpretations"] = [i.to_json() for i in hits]
        return doc, [str(i) for i in hits] + [f"count: {len(hits)}"]

    if args.mode == "wfsd":
        S, trace = wfsd(P)
        doc.update(_state_doc(S, trace, args))
        return doc, _state_text(S, args.convex_members) + _trace_text(trace, args)

    A = program_ndao(P, args.operator)
    doc["operator"] = args.operator
    if args.mode in PAIR_MODES:
        pairs = PAIR_MODES[args.mode](A, args.consistent_only)
        items = [Interpretation.from_pair(L, p) for p in pairs]
        doc["consistent_only"] = args.consistent_only
        doc["interpretations"] = [i.to_json() for i in items]
        return doc, [str(i) for i in items] + [f"count: {len(items)}"]
    if args.mode in ("kk-state", "wf-state"):
        S, trace = (kk_state if args.mode == "kk-state" else wf_state)(A)
        doc.update(_state_doc(S, trace, args))
        return doc, _state_text(S, args.convex_members) + _trace_text(trace, args)
    if args.mode == "check-operator":
        rep = check_properties(A)
        doc["report"] = rep.to_json()
        lines = []
        for key in ("ai_monotone", "exact", "symmetric", "consistent"):
            value = getattr(rep, key)
            lines.append(f"{key}: {'yes' if value else 'no'}")
            wit = getattr(rep, key.replace("ai_", "") + "_witness")
            if wit is not None:
                lines.append("  witness: " + json.dumps(wit))
        lines.append(f"pairs checked: {rep.pairs_checked}, comparisons: {rep.comparisons_checked}")
        return doc, lines
    if args.mode == "theorems":
        rep = run_theorem_suite(P, operator=args.operator)
        doc["report"] = rep.to_json()
        lines = [f"{r.name}: {r.status}" for r in rep.results]
        for r in rep.failures():
            lines.append(f"  {r.name} counterexample: " + json.dumps(r.counterexample))
        return doc, lines
    raise UsageError(f"unknown mode {args.mode}")


def _trace_text(trace, args) -> list[str]:
    if not args.trace:
        return []
    out = []
    for k, S in enumerate(trace.states):
        L = S.lattice
        out.append(f"step {k}: lower {L.format_family(S.lower)} upper {L.format_family(S.upper)}")
    return out


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    saved = os.environ.get("NDAFT_GUARD_ATOMS")
    if args.guard_atoms is not None:
        os.environ["NDAFT_GUARD_ATOMS"] = str(args.guard_atoms)
    try:
        return _run(args)
    finally:
        # the override applies to this call only
        if saved is None:
            os.environ.pop("NDAFT_GUARD_ATOMS", None)
        else:
            os.environ["NDAFT_GUARD_ATOMS"] = saved


def _run(args) -> int:
    try:
        _validate(args)
        P = parse_program(_read(args.input))
        check_atom_guard(len(P.atoms), "this program")
        doc, lines = compute(args, P)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return 3
    except (DomainError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print("\n".join(lines))
    return 0


if __name__ == "__main__":
    sys.exit(main())
