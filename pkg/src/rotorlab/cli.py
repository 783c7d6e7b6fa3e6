"""Command-line interface.

Subcommands
-----------

``rotorlab verify``
    Run one registry check (``--theorem``, ``--n``, ``--k``, budgets,
    ``--trials``, ``--seed``) and optionally write the canonical JSON
    report (``--out``).  Exit code 0 when every asserted trial held, 1 on
    an assertion failure, 2 on unusable parameters.

``rotorlab search``
    Sharpness probe: same pipeline, caller-chosen ``--n`` and
    ``--invariant``; inequalities are reported as findings, never failures.

``rotorlab sensitivity``
    Orientation-hypothesis probe for the oriented skein invariants.

``rotorlab bracket | jones | homfly | kauffman | q | conway <pd-file>``
    Evaluate one invariant of a closed diagram given as PD text (or JSON);
    ``-`` reads stdin.  Default output is the polynomial in canonical text
    form; ``--json`` emits a JSON object carrying both forms.

``rotorlab rotor build | rotant | compose | cable <spec.json>``
    Construct diagrams from instance files: a rotor from a blueprint, its
    rotant, a rotor-stator closure, or a satellite of a closed diagram.

PD text format: ``X[i,j,k,l]`` crossing terms separated by whitespace
(slots counterclockwise, first slot the incoming under-strand), ``O``
tokens for free loops, and an optional ``;or=(+|-)...`` suffix giving one
sign per strand.
"""

from __future__ import annotations

import argparse
import json
import sys

from .diagram import (Diagram, DiagramError, diagram_from_json,
                      diagram_to_json, from_pd_text, orient, to_pd_text)
from .invariants import (InvariantCache, InvariantError, ResourceError,
                         bracket, clear_memo, conway_alexander, homfly,
                         jones, kauffman_f, q_poly, set_cache)
from .lab import (CheckSpec, LabError, orientation_sensitivity, run_check,
                  run_satellite_check, search_counterexample)
from .poly import poly_to_json
from .rotor import (BandPattern, RotorError, RotorSpec, SatelliteSpec,
                    StatorSpec, build_parallel_3rotor, build_rotor,
                    build_stator, compose, rotant_of, satellite)

__all__ = ["main"]

#: invariant subcommands: tag -> (needs orientation, evaluator)
_INVARIANT_CMDS = {
    "bracket": (False, lambda d: bracket(d).poly),
    "jones": (True, jones),
    "homfly": (True, lambda d: homfly(d).poly),
    "kauffman": (True, lambda d: kauffman_f(d).poly),
    "q": (False, lambda d: q_poly(d).poly),
    "conway": (True, conway_alexander),
}

_SEARCH_CHOICES = ("bracket", "conway", "homfly", "jones", "kauffman_f",
                   "kauffman_lambda", "q")

_USAGE_ERRORS = (LabError, RotorError, DiagramError, InvariantError,
                 ValueError, KeyError, OSError, json.JSONDecodeError)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _read_diagram(path: str) -> Diagram:
    text = _read_text(path).strip()
    if text.startswith("{"):
        return diagram_from_json(json.loads(text))
    return from_pd_text(text)


def _coerce_diagram(obj) -> Diagram:
    """Turn an instance-file fragment into a diagram.

    Accepts PD text (a string), a serialized diagram (``crossings`` key), a
    rotor blueprint (``fundamental`` key), a parallel-rotor pattern
    (``parallel`` key), or a stator blueprint (``kind`` key).
    """
    if isinstance(obj, str):
        return from_pd_text(obj)
    if not isinstance(obj, dict):
        raise RotorError("expected PD text or a JSON object")
    if "crossings" in obj:
        return diagram_from_json(obj)
    if "fundamental" in obj:
        return build_rotor(RotorSpec.from_json(obj))
    if "parallel" in obj:
        return build_parallel_3rotor(
            BandPattern.from_json(obj["parallel"])).tangle
    if "kind" in obj:
        io = obj.get("io")
        return build_stator(StatorSpec.from_json(obj),
                            io=tuple(io) if io is not None else None)
    raise RotorError("unrecognized instance fragment: expected one of the "
                     "keys 'crossings', 'fundamental', 'parallel', 'kind'")


def _emit_diagram(d: Diagram) -> None:
    if d.boundary:
        print(json.dumps(diagram_to_json(d), sort_keys=True))
    else:
        print(to_pd_text(d))


def _finish_report(rep, args) -> int:
    if getattr(args, "out", None):
        with open(args.out, "wb") as fh:
            fh.write(rep.json_bytes())
    if not getattr(args, "quiet", False):
        print(rep.summary())
    return 0 if rep.passed else 1


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_verify(args) -> int:
    spec = CheckSpec(args.theorem, args.n, args.k, args.budget,
                     args.fundamental_budget, args.trials, args.seed)
    if args.pattern is not None:
        if args.theorem != "4.5":
            raise LabError("--pattern applies only to --theorem 4.5")
        sat = SatelliteSpec(args.pattern, twists=args.twists,
                            clasp_sign=args.clasp_sign)
        rep = run_satellite_check(sat, trials=args.trials, seed=args.seed,
                                  fundamental_budget=args.fundamental_budget,
                                  budget=args.budget, workers=args.workers)
    else:
        rep = run_check(spec, workers=args.workers)
    return _finish_report(rep, args)


def _cmd_search(args) -> int:
    rep = search_counterexample(args.n, budget=args.budget,
                                trials=args.trials, seed=args.seed,
                                invariant=args.invariant, k=args.k,
                                fundamental_budget=args.fundamental_budget,
                                workers=args.workers)
    return _finish_report(rep, args)


def _cmd_sensitivity(args) -> int:
    rep = orientation_sensitivity(args.n, trials=args.trials, seed=args.seed,
                                  budget=args.budget,
                                  fundamental_budget=args.fundamental_budget,
                                  workers=args.workers)
    return _finish_report(rep, args)


def _cmd_invariant(args) -> int:
    needs_orientation, evaluate = _INVARIANT_CMDS[args.command]
    d = _read_diagram(args.pd_file)
    if needs_orientation and d.orientation is None:
        d = orient(d)
    cache = None
    if args.cache:
        cache = InvariantCache(args.cache)
        set_cache(cache)
        clear_memo()
    try:
        poly = evaluate(d)
    finally:
        if cache is not None:
            set_cache(None)
            cache.close()
    if args.json:
        print(json.dumps({"invariant": args.command, "text": str(poly),
                          "poly": poly_to_json(poly)}, sort_keys=True))
    else:
        print(poly)
    return 0


def _cmd_rotor(args) -> int:
    obj = json.loads(_read_text(args.spec_file))
    if args.action == "build":
        _emit_diagram(_coerce_diagram(obj))
        return 0
    if args.action == "rotant":
        if "parallel" in obj:
            n, k = 3, 2
        else:
            n, k = int(obj["n"]), int(obj["k"])
        rotor = _coerce_diagram(obj)
        axis = args.axis if args.axis is not None else int(obj.get("axis", 3))
        _emit_diagram(rotant_of(rotor, n=n, k=k, axis=axis))
        return 0
    if args.action == "compose":
        rotor = _coerce_diagram(obj["rotor"])
        stator = _coerce_diagram(obj["stator"])
        offset = int(obj.get("offset", 0))
        _emit_diagram(compose(rotor, stator, offset=offset))
        return 0
    if args.action == "cable":
        base = _coerce_diagram(obj["base"])
        sat = SatelliteSpec.from_json(obj["satellite"])
        sites = obj.get("sites")
        if sites is not None:
            sites = [int(site) for site in sites]
        _emit_diagram(satellite(base, sat, sites=sites))
        return 0
    raise LabError(f"unknown rotor action {args.action!r}")


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common_check_args(p: argparse.ArgumentParser, *,
                           budget: int = 6) -> None:
    p.add_argument("--budget", type=int, default=budget,
                   help="stator crossing budget (default %(default)s)")
    p.add_argument("--fundamental-budget", type=int, default=2,
                   dest="fundamental_budget",
                   help="fundamental-domain crossing budget "
                        "(default %(default)s)")
    p.add_argument("--trials", type=int, default=20,
                   help="number of seeded trials (default %(default)s)")
    p.add_argument("--seed", type=int, default=0,
                   help="master seed (default %(default)s)")
    p.add_argument("--workers", type=int, default=1,
                   help="parallel trial workers; results are byte-identical "
                        "for any worker count (default %(default)s)")
    p.add_argument("--out", help="write the canonical JSON report here")
    p.add_argument("--quiet", action="store_true",
                   help="suppress the human-readable summary")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rotorlab",
        description="Exact knot-polynomial engine with rotor calculus.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run one registry check")
    p.add_argument("--theorem", required=True,
                   help="registry label, e.g. 4.2a")
    p.add_argument("--n", type=int, required=True, help="number of sectors")
    p.add_argument("--k", type=int, default=1,
                   help="rotor type (default %(default)s)")
    p.add_argument("--pattern", choices=("2-cable", "whitehead"),
                   help="fix the satellite pattern (4.5 only; default: "
                        "mixed per trial)")
    p.add_argument("--twists", type=int, default=0,
                   help="full twists for a fixed 2-cable pattern")
    p.add_argument("--clasp-sign", type=int, choices=(1, -1), default=1,
                   dest="clasp_sign",
                   help="clasp sign for a fixed whitehead pattern")
    _add_common_check_args(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("search", help="sharpness search (never asserts)")
    p.add_argument("--n", type=int, required=True, help="number of sectors")
    p.add_argument("--k", type=int, default=1,
                   help="rotor type (default %(default)s)")
    p.add_argument("--invariant", choices=_SEARCH_CHOICES, default="bracket",
                   help="invariant to compare (default %(default)s)")
    _add_common_check_args(p)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("sensitivity",
                       help="orientation-hypothesis probe (oriented skein "
                            "invariants)")
    p.add_argument("--n", type=int, required=True, help="number of sectors")
    _add_common_check_args(p, budget=4)
    p.set_defaults(func=_cmd_sensitivity)

    for tag in _INVARIANT_CMDS:
        p = sub.add_parser(tag, help=f"evaluate the {tag} polynomial of a "
                                     "closed PD diagram")
        p.add_argument("pd_file", help="PD text or diagram JSON; - for stdin")
        p.add_argument("--json", action="store_true",
                       help="emit a JSON object instead of polynomial text")
        p.add_argument("--cache",
                       help="persistent invariant cache file to use")
        p.set_defaults(func=_cmd_invariant)

    p = sub.add_parser("rotor", help="construct diagrams from instance files")
    p.add_argument("action", choices=("build", "rotant", "compose", "cable"))
    p.add_argument("spec_file", help="instance JSON file; - for stdin")
    p.add_argument("--axis", type=int, default=None,
                   help="flip axis for 'rotant' (default 3, or the "
                        "instance file's 'axis' entry)")
    p.set_defaults(func=_cmd_rotor)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceError as exc:
        print(f"rotorlab: resource limit: {exc}", file=sys.stderr)
        return 2
    except _USAGE_ERRORS as exc:
        print(f"rotorlab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
