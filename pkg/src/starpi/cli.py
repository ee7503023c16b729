"""Command-line front end.

Exit codes: 0 the property holds or was verified, 1 it was refuted (a
witness is printed), 2 usage or validation error. Every command accepts
``--json`` and then prints exactly one JSON object per line.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from . import catalog
from .algebra import dump_algebra, load_algebra, require_valid
from .envelope import build_envelope
from .errors import StarPIError
from .grassmann import g_mul, grassmann_to_text
from .identities import (
    assignment_to_text,
    check_envelope_lemma,
    is_graded_star_identity,
    is_star_identity,
    minimal_generators,
)
from .kernel import BACKEND
from .parser import parse_grassmann, parse_poly, read_generators
from .poly import is_multilinear, to_text
from .sampling import lemma_sample, seeded
from .tideal import DEGREE_CAP, member_linearized
from .transforms import VariableSet, alternator, eta, grade_expansions, s_op, symmetrizer, t_op, tilde

HOLDS, REFUTED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, payload: dict, human: str):
    if args.json:
        print(json.dumps(payload, ensure_ascii=False, sort_keys=True))
    else:
        print(human)


def bundled_path(name: str):
    ref = resources.files("starpi") / "data" / f"{name}.json"
    return ref if ref.is_file() else None


def resolve_algebra(source: str):
    """A JSON path, or the name of a bundled catalog algebra."""
    if os.path.exists(source):
        return load_algebra(source)
    name = source[:-5] if source.endswith(".json") else source
    ref = bundled_path(os.path.basename(name))
    if ref is not None:
        with resources.as_file(ref) as p:
            return load_algebra(p)
    if name in catalog.CATALOG:
        return require_valid(catalog.get(name))
    raise UsageError(f"no such algebra file or catalog name: {source}")


def _witness_text(rep):
    return ", ".join(f"{v} = {e}" for v, e in assignment_to_text(rep.witness).items())


def _report(args, command, A, f, rep, extra=None):
    payload = {
        "command": command,
        "algebra": A.name,
        "poly": to_text(f),
        "holds": rep.holds,
        "tuples_checked": rep.tuples_checked,
    }
    if not rep.holds:
        payload["witness"] = assignment_to_text(rep.witness)
        payload["piece"] = to_text(rep.polynomial)
    payload.update(extra or {})
    if rep.holds:
        human = f"holds on {A.name} ({rep.tuples_checked} tuples checked)"
    else:
        human = f"refuted on {A.name}: {payload['piece']} is nonzero at {_witness_text(rep)}"
    _emit(args, payload, human)
    return HOLDS if rep.holds else REFUTED


def cmd_check_identity(args):
    A = resolve_algebra(args.algebra)
    f = parse_poly(args.poly)
    if f.is_graded:
        raise UsageError("polynomial has graded variables; use check-graded-identity")
    return _report(args, "check-identity", A, f, is_star_identity(A, f, backend=args.backend))


def cmd_check_graded_identity(args):
    A = resolve_algebra(args.algebra)
    f = parse_poly(args.poly)
    if f.is_zero() or f.is_graded:
        return _report(args, "check-graded-identity", A, f, is_graded_star_identity(A, f, backend=args.backend))
    if not args.all_grades:
        raise UsageError("polynomial is not graded; pass --all-grades to check every grade assignment")
    if not is_multilinear(f):
        raise UsageError("--all-grades needs a multilinear polynomial")
    total = 0
    for g in grade_expansions(f):
        rep = is_graded_star_identity(A, g, backend=args.backend)
        total += rep.tuples_checked
        if not rep.holds:
            rep.tuples_checked = total
            return _report(args, "check-graded-identity", A, f, rep, {"expansion": to_text(g)})
    rep.tuples_checked = total
    return _report(args, "check-graded-identity", A, f, rep)


def cmd_envelope(args):
    A = resolve_algebra(args.algebra)
    if args.generators < 0:
        raise UsageError("--generators must be nonnegative")
    env = build_envelope(A, args.generators)
    text = dump_algebra(env.realized, args.out, indent=None if args.out is None else 1)
    if args.out is None and not args.json:
        print(text)
        return HOLDS
    payload = {"command": "envelope", "algebra": A.name, "generators": args.generators, "dim": env.dim}
    if args.out:
        payload["out"] = args.out
    else:
        payload["envelope"] = json.loads(text)
    _emit(args, payload, f"E4({A.name}) with {args.generators} generators: dim {env.dim}, written to {args.out}")
    return HOLDS


def _parse_set(text):
    members = []
    for part in text.split(","):
        p = parse_poly(part.strip())
        words = list(p.monomials())
        if len(words) != 1 or len(words[0]) != 1 or p.coefficient(words[0]) != 1:
            raise UsageError(f"--set entries must be single variables, got {part.strip()!r}")
        members.append(words[0][0])
    return VariableSet(members)


def cmd_transform(args):
    f = parse_poly(args.poly)
    if args.op in ("alt", "sym"):
        if not args.set:
            raise UsageError(f"--op {args.op} needs --set")
        fn = alternator if args.op == "alt" else symmetrizer
        out = fn(_parse_set(args.set), f)
    else:
        if args.set:
            raise UsageError("--set only applies to alt and sym")
        out = {"s": s_op, "t": t_op, "tilde": tilde}[args.op](f)
    _emit(args, {"command": "transform", "op": args.op, "poly": to_text(f), "result": to_text(out)}, to_text(out))
    return HOLDS


def cmd_tideal_member(args):
    gens = read_generators(args.generators)
    f = parse_poly(args.target)
    results = member_linearized(gens, f, allow_large=args.allow_large)
    member = all(ok for _, ok in results)
    linearized = not is_multilinear(f) and not f.is_zero()
    payload = {
        "command": "tideal-member",
        "target": to_text(f),
        "member": member,
        "pieces": [{"piece": to_text(p), "member": ok} for p, ok in results],
        "level": "linearized" if linearized else "multilinear",
    }
    human = "member" if member else "not a member"
    if linearized:
        human += " (decided at the linearized level)"
    _emit(args, payload, human)
    return HOLDS if member else REFUTED


def cmd_verify_envelope_lemma(args):
    A = resolve_algebra(args.algebra)
    if args.degree < 1 or args.samples < 0:
        raise UsageError("--degree must be positive and --samples nonnegative")
    rng = seeded(args.seed)
    disagreements = 0
    for k in range(args.samples):
        f = lemma_sample(rng, A, max_degree=args.degree)
        if args.exhaustive:
            n = args.generators if args.generators is not None else minimal_generators(f)
        else:
            n = args.generators
        rep = check_envelope_lemma(A, f, n_generators=n, exhaustive=args.exhaustive, backend=args.backend)
        disagreements += not rep.agree
        if args.json:
            print(json.dumps({
                "sample": k, "poly": to_text(f), "lhs": rep.lhs, "rhs": rep.rhs, "agree": rep.agree,
                "generators": rep.n_generators, "mode": rep.mode,
            }, ensure_ascii=False, sort_keys=True))
        elif not rep.agree:
            print(f"sample {k}: DISAGREE lhs={rep.lhs} rhs={rep.rhs} for {to_text(f)}")
    summary = {"command": "verify-envelope-lemma", "algebra": A.name, "samples": args.samples,
               "seed": args.seed, "disagreements": disagreements}
    _emit(args, summary, f"{args.samples} samples on {A.name}: {disagreements} disagreements")
    return HOLDS if disagreements == 0 else REFUTED


def cmd_eta(args):
    if args.grade not in range(4):
        raise UsageError("--grade must be 0, 1, 2 or 3")
    v = eta(args.grade)
    _emit(args, {"command": "eta", "grade": args.grade, "eta": v}, str(v))
    return HOLDS


def cmd_grassmann_mul(args):
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    a = parse_grassmann(args.lhs, args.n)
    b = parse_grassmann(args.rhs, args.n)
    out = grassmann_to_text(g_mul(a, b))
    _emit(args, {"command": "grassmann-mul", "n": args.n, "lhs": grassmann_to_text(a),
                 "rhs": grassmann_to_text(b), "product": out}, out)
    return HOLDS


def build_parser():
    p = argparse.ArgumentParser(prog="starpi", description="Identities of graded algebras with involution.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable JSON lines")
        sp.set_defaults(fn=fn)
        return sp

    def kernel_opt(sp):
        sp.add_argument("--backend", choices=["compiled", "python"], default=None,
                        help=f"evaluation kernel (default: {BACKEND})")

    sp = add("check-identity", cmd_check_identity, "does a *-polynomial vanish on an algebra")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--poly", required=True)
    kernel_opt(sp)

    sp = add("check-graded-identity", cmd_check_graded_identity, "graded version of check-identity")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--poly", required=True)
    sp.add_argument("--all-grades", action="store_true", help="expand a non-graded polynomial over all grades")
    kernel_opt(sp)

    sp = add("envelope", cmd_envelope, "write the Grassmann Z/4-envelope as an algebra file")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--generators", type=int, required=True)
    sp.add_argument("--out")

    sp = add("transform", cmd_transform, "apply s, t, tilde, an alternator or a symmetrizer")
    sp.add_argument("--op", choices=["s", "t", "tilde", "alt", "sym"], required=True)
    sp.add_argument("--poly", required=True)
    sp.add_argument("--set")

    sp = add("tideal-member", cmd_tideal_member, "membership in the *T-ideal of a generator list")
    sp.add_argument("--generators", required=True, help="file with one polynomial per line")
    sp.add_argument("--target", required=True)
    sp.add_argument("--allow-large", action="store_true", help=f"lift the degree cap of {DEGREE_CAP}")

    sp = add("verify-envelope-lemma", cmd_verify_envelope_lemma, "sample the envelope transfer lemma")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--samples", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--generators", type=int, help="Grassmann truncation (default 3*degree, exhaustive: minimal)")
    sp.add_argument("--exhaustive", action="store_true", help="enumerate the full envelope basis")
    kernel_opt(sp)

    sp = add("eta", cmd_eta, "the sign exponent of the envelope involution")
    sp.add_argument("--grade", type=int, required=True)

    sp = add("grassmann-mul", cmd_grassmann_mul, "multiply two Grassmann elements")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--lhs", required=True)
    sp.add_argument("--rhs", required=True)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else HOLDS
    try:
        return args.fn(args)
    except (UsageError, StarPIError, OSError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        if getattr(args, "json", False):
            payload = {"command": args.command, "error": msg, "kind": type(exc).__name__}
            report = getattr(exc, "report", None)
            if report is not None:
                payload["check"] = report.check
            print(json.dumps(payload, ensure_ascii=False, sort_keys=True))
        else:
            print(f"error: {msg}", file=sys.stderr)
        return USAGE


def run():  # pragma: no cover
    sys.exit(main())
