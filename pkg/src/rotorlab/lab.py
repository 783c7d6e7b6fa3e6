"""Verification laboratory: seeded theorem checks over random rotor families.

Each check builds a family of (L, L') rotant pairs, computes the relevant
polynomial invariants exactly, and compares them — either exactly or after
reducing coefficients modulo ``n* = radical(n)``.  Inequality inside a
theorem's asserted range is an assertion failure; outside it the harness
runs in search mode and records findings without judging them, since
counterexamples beyond the stated bounds are expected to exist.

Reports are deterministic: the per-trial seed is a SHA-256 hash of the
master seed, the check label, and the trial index, so identical specs give
byte-identical JSON regardless of scheduling or worker count.
"""

from __future__ import annotations

import concurrent.futures
import hashlib
import json
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import __version__ as _version
from .diagram import (
    Diagram,
    boundary_io,
    components,
    diagram_to_json,
    edge_set,
    orient,
    reverse_components,
    strands,
    to_pd_text,
)
from .invariants import (
    ResourceError,
    bracket,
    conway_alexander,
    homfly,
    jones,
    kauffman_f,
    kauffman_lambda,
    q_poly,
)
from .poly import LaurentPoly, monomial_ratio, radical
from .rotor import (
    BandPattern,
    RotorError,
    SatelliteSpec,
    build_cup_trivial_rotor,
    build_matched_stator,
    build_parallel_3rotor,
    compose_tracked,
    random_rotor,
    random_stator,
    rotant_of,
    rotant_pair,
    satellite,
)

__all__ = [
    "CheckSpec",
    "LabError",
    "THEOREMS",
    "TheoremInfo",
    "TrialRecord",
    "VerificationReport",
    "orientation_sensitivity",
    "report_json_bytes",
    "run_check",
    "run_satellite_check",
    "search_counterexample",
    "trial_seed",
]

#: Flip axis used by every check: the diameter through the gap between
#: boundary points 1 and 2 (``p -> 3 - p``).  Recorded in every report.
#: For pair-banded rotors the axis must not split an adjacent boundary
#: pair, which forces ``axis = 3 (mod 4)``; for ``k = 1`` all odd axes
#: give the same rotant, so this choice is uniform across families.
AXIS = 3
OFFSET = 0


class LabError(ValueError):
    """A check was requested with unusable parameters."""


def trial_seed(master: int, label: str, index: int) -> int:
    """Deterministic per-trial seed: SHA-256 of (master, label, index)."""
    digest = hashlib.sha256(f"{master}|{label}|{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TheoremInfo:
    """How one registry entry is checked: which instance family, which
    invariants, whether comparison is exact or modulo ``radical(n)``, and
    for which ``n`` the equality is asserted (outside: search mode)."""

    label: str
    family: str
    invariants: tuple[str, ...]
    modular: bool
    asserts: Callable[[int], bool]
    oriented: bool
    fixed_n: int | None = None
    description: str = ""


def _always(n: int) -> bool:
    return True


def _never(n: int) -> bool:
    return False


THEOREMS: dict[str, TheoremInfo] = {t.label: t for t in (
    TheoremInfo("3.1-bound", "general-oriented", ("homfly",), False,
                _never, True, None,
                "sharpness probe: skein equality on general oriented "
                "rotors (statement not printed; never asserts)"),
    TheoremInfo("4.1a", "cup-trivial", ("bracket",), False,
                lambda n: n <= 7, False, None,
                "cup-trivial rotor: brackets equal exactly for n <= 7"),
    TheoremInfo("4.1b", "cup-trivial-oriented", ("homfly",), False,
                lambda n: n <= 5, True, None,
                "oriented cup-trivial rotor: P equal exactly for n <= 5"),
    TheoremInfo("4.2a", "double-generalized", ("bracket",), True,
                _always, False, None,
                "generalized double rotor: brackets congruent mod n*"),
    TheoremInfo("4.2b", "double", ("kauffman_lambda", "q"), True,
                _always, False, None,
                "double rotor: Lambda and Q congruent mod n*"),
    TheoremInfo("4.2c", "double-oriented",
                ("homfly", "kauffman_f", "conway", "jones"), True,
                _always, True, None,
                "oriented double rotor: P, F, Conway, Jones congruent "
                "mod n*"),
    TheoremInfo("4.4", "parallel-bands", ("bracket",), False,
                lambda n: n == 3, False, 3,
                "parallel type-2 3-rotor: brackets equal exactly"),
    TheoremInfo("4.5", "satellite", ("bracket",), False,
                lambda n: n == 3, False, 3,
                "wrapping-number-2 satellites of a 3-rotant pair: "
                "brackets equal; Jones monomial ratio recorded"),
    TheoremInfo("4.8a", "matched", ("homfly",), False,
                lambda n: n <= 5, True, None,
                "rotor with matched stator: P equal exactly for n <= 5"),
    TheoremInfo("4.8b", "matched-cup-trivial", ("homfly",), False,
                lambda n: n <= 7, True, None,
                "cup-trivial rotor with matched stator: P equal exactly "
                "for n <= 7"),
    TheoremInfo("4.8c", "matched-parallel", ("homfly",), False,
                lambda n: n == 3, True, 3,
                "parallel type-2 3-rotor with matched stator: P equal "
                "exactly"),
    TheoremInfo("4.8-modular", "matched-generalized", ("homfly",), True,
                _always, True, None,
                "generalized rotors with matched stator: P congruent "
                "mod n*"),
)}


@dataclass(frozen=True)
class CheckSpec:
    """One check request: a registry label, the rotor parameters, crossing
    budgets, a trial count, and the master seed."""

    theorem: str
    n: int
    k: int = 1
    budget: int = 6
    fundamental_budget: int = 2
    trials: int = 20
    seed: int = 0

    def info(self) -> TheoremInfo:
        if self.theorem not in THEOREMS:
            raise LabError(f"unknown theorem label {self.theorem!r}; "
                           f"known: {', '.join(sorted(THEOREMS))}")
        return THEOREMS[self.theorem]

    def validate(self) -> None:
        info = self.info()
        if self.n < 1 or self.k < 1:
            raise LabError("n and k must be positive")
        if self.trials < 0 or self.budget < 0 or self.fundamental_budget < 0:
            raise LabError("trials and budgets must be nonnegative")
        if info.fixed_n is not None and self.n != info.fixed_n:
            raise LabError(f"theorem {self.theorem} is defined only for "
                           f"n = {info.fixed_n}")
        if info.family in ("cup-trivial", "cup-trivial-oriented",
                           "matched-cup-trivial", "matched", "double",
                           "double-oriented", "general-oriented",
                           "satellite") and self.k != 1:
            raise LabError(f"theorem {self.theorem} uses type-1 rotors; "
                           "set k = 1")
        if info.family in ("parallel-bands", "matched-parallel") \
                and self.k != 2:
            raise LabError(f"theorem {self.theorem} uses type-2 rotors; "
                           "set k = 2")

    def to_json(self) -> dict:
        return {"theorem": self.theorem, "n": self.n, "k": self.k,
                "budget": self.budget,
                "fundamental_budget": self.fundamental_budget,
                "trials": self.trials, "seed": self.seed}

    @staticmethod
    def from_json(obj: dict) -> "CheckSpec":
        return CheckSpec(str(obj["theorem"]), int(obj["n"]),
                         int(obj.get("k", 1)), int(obj.get("budget", 6)),
                         int(obj.get("fundamental_budget", 2)),
                         int(obj.get("trials", 20)), int(obj.get("seed", 0)))


# ---------------------------------------------------------------------------
# report types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrialRecord:
    index: int
    seed: int
    status: str                     # "ok" | "skipped"
    equal: bool | None
    modulus: int | None
    invariants: dict
    instance: dict
    jones_ratio: str | None = None
    note: str | None = None

    def to_json(self) -> dict:
        out = {"index": self.index, "seed": self.seed, "status": self.status,
               "equal": self.equal, "modulus": self.modulus,
               "invariants": self.invariants, "instance": self.instance}
        if self.jones_ratio is not None:
            out["jones_ratio"] = self.jones_ratio
        if self.note is not None:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class VerificationReport:
    theorem: str
    spec: CheckSpec
    asserting: bool
    n_star: int | None
    trials: tuple[TrialRecord, ...]
    counts: dict
    findings: tuple[int, ...]
    wall_time: float = field(compare=False)

    @property
    def passed(self) -> bool:
        return (not self.asserting) or self.counts["unequal"] == 0

    def to_json(self) -> dict:
        """Canonical (reproducible) form: wall time deliberately omitted so
        identical specs give byte-identical serializations."""
        return {
            "schema": "rotorlab.report/1",
            "version": _version,
            "theorem": self.theorem,
            "spec": self.spec.to_json(),
            "asserting": self.asserting,
            "n_star": self.n_star,
            "axis": AXIS,
            "offset": OFFSET,
            "counts": self.counts,
            "findings": list(self.findings),
            "trials": [t.to_json() for t in self.trials],
        }

    def json_bytes(self) -> bytes:
        return report_json_bytes(self.to_json())

    def summary(self) -> str:
        c = self.counts
        mode = "asserting" if self.asserting else "search"
        lines = [
            f"theorem {self.theorem}  n={self.spec.n} k={self.spec.k} "
            f"({mode})",
            f"  trials: {c['total']}  equal: {c['equal']}  "
            f"unequal: {c['unequal']}  skipped: {c['skipped']}",
        ]
        if self.n_star is not None:
            lines.append(f"  modulus n* = {self.n_star}")
        if self.findings:
            lines.append(f"  findings at trials: "
                         f"{', '.join(map(str, self.findings))}")
        verdict = "PASS" if self.passed else "FAIL"
        if not self.asserting:
            verdict = "REPORTED"
        lines.append(f"  result: {verdict}  ({self.wall_time:.2f}s)")
        return "\n".join(lines)


def report_json_bytes(obj: dict) -> bytes:
    """Canonical JSON bytes: sorted keys, fixed separators, newline end."""
    return (json.dumps(obj, sort_keys=True, separators=(",", ":"))
            + "\n").encode()


# ---------------------------------------------------------------------------
# invariant plumbing
# ---------------------------------------------------------------------------

_INVARIANTS: dict[str, Callable[[Diagram], LaurentPoly]] = {
    "bracket": lambda d: bracket(d).poly,
    "jones": lambda d: jones(d),
    "homfly": lambda d: homfly(d).poly,
    "kauffman_lambda": lambda d: kauffman_lambda(d).poly,
    "kauffman_f": lambda d: kauffman_f(d).poly,
    "q": lambda d: q_poly(d).poly,
    "conway": lambda d: conway_alexander(d),
}

_SEARCH_INVARIANTS = tuple(sorted(_INVARIANTS))
_ORIENTED_TAGS = frozenset(("jones", "homfly", "kauffman_f", "conway"))


def _compare(tag: str, left: Diagram, right: Diagram,
             modulus: int | None) -> dict:
    pl = _INVARIANTS[tag](left)
    pr = _INVARIANTS[tag](right)
    entry = {"left": str(pl), "right": str(pr)}
    if modulus is None:
        entry["equal"] = pl == pr
    else:
        rl, rr = pl.reduce_mod(modulus), pr.reduce_mod(modulus)
        entry["left_reduced"] = str(rl)
        entry["right_reduced"] = str(rr)
        entry["equal"] = rl == rr
    return entry


def _complement_io(rotor: Diagram, offset: int = OFFSET) -> tuple[str, ...]:
    io = boundary_io(rotor)
    m = len(io)
    return tuple("out" if io[(offset - q) % m] == "in" else "in"
                 for q in range(m))


# ---------------------------------------------------------------------------
# instance families
# ---------------------------------------------------------------------------


def _sub_seed(rng: random.Random) -> int:
    return rng.randrange(2 ** 63)


def _build_instance(spec: CheckSpec, rng: random.Random):
    """Build one (rotor, stator, extras) instance for the spec's family."""
    info = spec.info()
    n, k = spec.n, spec.k
    family = info.family
    extras: dict = {}

    if family in ("cup-trivial", "cup-trivial-oriented",
                  "matched-cup-trivial"):
        oriented = family != "cup-trivial"
        extra_loops = rng.choice((0, 0, 0, 1))
        rotor = build_cup_trivial_rotor(
            n, budget=spec.fundamental_budget, seed=_sub_seed(rng),
            oriented=oriented, extra_loops=extra_loops)
        extras["family"] = "cup-trivial"
        extras["extra_loops"] = extra_loops
    elif family in ("general-oriented", "matched", "matched-generalized"):
        rotor = random_rotor(n, k, budget=spec.fundamental_budget, rng=rng,
                             oriented=True, alternating=True)
    elif family in ("double", "double-generalized", "double-oriented"):
        rotor = random_rotor(n, k, budget=spec.fundamental_budget, rng=rng,
                             oriented=info.oriented, alternating=True)
    elif family in ("parallel-bands", "matched-parallel"):
        pattern = rng.choice((BandPattern.cups(), BandPattern.ring(),
                              BandPattern.pinwheel(1),
                              BandPattern.pinwheel(-1)))
        rotor = build_parallel_3rotor(pattern).tangle
        extras["pattern"] = pattern.kind
        extras["chirality"] = pattern.chirality
        if info.oriented:
            rotor = _orient_alternating(rotor, rng.randrange(2))
        k = 2
    else:
        raise LabError(f"no instance family for {family!r}")

    m = len(rotor.boundary)
    if family.startswith("matched"):
        budget = spec.budget - (spec.budget % 2)
        stator, cert = build_matched_stator(
            m, budget=budget, seed=_sub_seed(rng),
            io=_complement_io(rotor))
        extras["certificate"] = [list(p.crossings) for p in cert]
    elif family in ("double", "double-generalized", "double-oriented"):
        per_sector = spec.budget // n
        if info.oriented:
            stator = _oriented_rotor_stator(n, k, per_sector, rng,
                                            _complement_io(rotor))
        else:
            stator = random_rotor(n, k, budget=per_sector, rng=rng)
        extras["stator_family"] = "rotor"
    else:
        io = _complement_io(rotor) if info.oriented else None
        stator = random_stator(m, budget=spec.budget, rng=rng, io=io)
    return rotor, stator, k, extras


def _orient_alternating(t: Diagram, phase: int) -> Diagram:
    """Orient an unoriented tangle so its rim alternates in/out."""
    dirs = []
    for strand in strands(t):
        start = strand[0][1]
        if start[0] != 1:
            raise LabError("tangle has a closed strand; cannot orient its "
                           "rim pattern")
        want_in = (start[2] % 2) == phase
        dirs.append(1 if want_in else -1)
    return orient(t, dirs)


def _oriented_rotor_stator(n: int, k: int, budget: int,
                           rng: random.Random,
                           want_io: tuple[str, ...]) -> Diagram:
    """Draw oriented rotor-shaped stators until the io pattern matches the
    complement required by the gluing (alternating patterns have two
    phases, so a handful of draws always suffices)."""
    for _ in range(64):
        s = random_rotor(n, k, budget=budget, rng=rng, oriented=True,
                         alternating=True)
        if boundary_io(s) == want_io:
            return s
    raise LabError("could not draw an oriented rotor stator with the "
                   "required io pattern")


# ---------------------------------------------------------------------------
# trial runners
# ---------------------------------------------------------------------------


def _finish_trial(index, seed, status, equal, modulus, invariants, instance,
                  jones_ratio=None, note=None) -> TrialRecord:
    return TrialRecord(index=index, seed=seed, status=status, equal=equal,
                       modulus=modulus, invariants=invariants,
                       instance=instance, jones_ratio=jones_ratio, note=note)


def _run_trial(spec: CheckSpec, index: int) -> TrialRecord:
    info = spec.info()
    seed = trial_seed(spec.seed, spec.theorem, index)
    rng = random.Random(seed)
    modulus = radical(spec.n) if info.modular else None
    if info.family == "satellite":
        return _run_satellite_trial(spec, index, seed, rng)
    try:
        rotor, stator, k, extras = _build_instance(spec, rng)
        left, right = rotant_pair(rotor, stator, n=spec.n, k=k, axis=AXIS,
                                  offset=OFFSET)
    except (LabError, RotorError) as exc:
        return _finish_trial(index, seed, "skipped", None, modulus, {}, {},
                             note=f"instance construction failed: {exc}")
    instance = {"rotor": diagram_to_json(rotor),
                "stator": diagram_to_json(stator),
                **extras}
    invariants: dict = {}
    try:
        for tag in info.invariants:
            invariants[tag] = _compare(tag, left, right, modulus)
    except ResourceError as exc:
        return _finish_trial(index, seed, "skipped", None, modulus,
                             invariants, instance,
                             note=f"resource guard: {exc}")
    equal = all(entry["equal"] for entry in invariants.values())
    if not equal:
        instance["left"] = to_pd_text(left)
        instance["right"] = to_pd_text(right)
    return _finish_trial(index, seed, "ok", equal, modulus, invariants,
                         instance)


def _satellite_spec_for_trial(rng: random.Random) -> SatelliteSpec:
    if rng.randrange(2):
        return SatelliteSpec("2-cable", twists=rng.choice((-2, -1, 0, 1, 2)))
    return SatelliteSpec("whitehead", clasp_sign=rng.choice((1, -1)))


def _satellite_pair(spec: CheckSpec, rng: random.Random,
                    sat: SatelliteSpec):
    """Draw a single-component 3-rotant companion pair and decorate both
    satellites at the same stator-interior site."""
    decorated = sat.pattern == "whitehead" or sat.twists != 0
    for _ in range(200):
        draw = random.Random(_sub_seed(rng))
        rotor = random_rotor(3, 1, budget=spec.fundamental_budget, rng=draw)
        stator = random_stator(6, budget=max(spec.budget, 1), rng=draw)
        base_l, interior = compose_tracked(rotor, stator, offset=OFFSET)
        base_r, interior_r = compose_tracked(
            rotant_of(rotor, n=3, k=1, axis=AXIS), stator, offset=OFFSET)
        if interior != interior_r:
            continue
        if decorated:
            if not interior:
                continue
            if len(components(base_l)) != 1 or len(components(base_r)) != 1:
                continue
            if base_l.free_loops or base_r.free_loops:
                continue
            sites = [min(interior)]
        else:
            sites = None
        sat_l = satellite(base_l, sat, sites=sites)
        sat_r = satellite(base_r, sat, sites=sites)
        return rotor, stator, base_l, base_r, sat_l, sat_r, sites
    raise LabError("could not draw a decoratable satellite companion pair")


def _run_satellite_trial(spec: CheckSpec, index: int, seed: int,
                         rng: random.Random,
                         sat: SatelliteSpec | None = None) -> TrialRecord:
    if sat is None:
        sat = _satellite_spec_for_trial(rng)
    try:
        rotor, stator, base_l, base_r, left, right, sites = \
            _satellite_pair(spec, rng, sat)
    except (LabError, RotorError) as exc:
        return _finish_trial(index, seed, "skipped", None, None, {}, {},
                             note=f"instance construction failed: {exc}")
    instance = {"rotor": diagram_to_json(rotor),
                "stator": diagram_to_json(stator),
                "base": to_pd_text(base_l), "base_rotant": to_pd_text(base_r),
                "satellite": sat.to_json(),
                "sites": sites if sites is not None else []}
    invariants: dict = {}
    try:
        invariants["bracket"] = _compare("bracket", left, right, None)
        jl = jones(orient(left))
        jr = jones(orient(right))
        ratio = monomial_ratio(jl, jr)
        invariants["jones"] = {"left": str(jl), "right": str(jr),
                               "equal": jl == jr}
    except ResourceError as exc:
        return _finish_trial(index, seed, "skipped", None, None, invariants,
                             instance, note=f"resource guard: {exc}")
    equal = invariants["bracket"]["equal"]
    if not equal:
        instance["left"] = to_pd_text(left)
        instance["right"] = to_pd_text(right)
    return _finish_trial(index, seed, "ok", equal, None, invariants,
                         instance,
                         jones_ratio=None if ratio is None else str(ratio))


def _assemble(theorem: str, spec: CheckSpec, asserting: bool,
              n_star: int | None, records: list[TrialRecord],
              started: float) -> VerificationReport:
    counts = {
        "total": len(records),
        "equal": sum(1 for r in records if r.equal is True),
        "unequal": sum(1 for r in records if r.equal is False),
        "skipped": sum(1 for r in records if r.status == "skipped"),
    }
    findings = tuple(r.index for r in records if r.equal is False)
    return VerificationReport(theorem=theorem, spec=spec,
                              asserting=asserting, n_star=n_star,
                              trials=tuple(records), counts=counts,
                              findings=findings,
                              wall_time=time.monotonic() - started)


def run_check(spec: CheckSpec, *, workers: int = 1) -> VerificationReport:
    """Run one registry check: build ``spec.trials`` seeded instances,
    compare the theorem's invariants on each rotant pair, and report.

    Never raises on inequality — the report carries the verdict; callers
    (the CLI, the acceptance suite) decide what a failure means.
    """
    started = time.monotonic()
    spec.validate()
    info = spec.info()
    asserting = info.asserts(spec.n)
    n_star = radical(spec.n) if info.modular else None
    records = _map_trials(spec, range(spec.trials), workers)
    return _assemble(spec.theorem, spec, asserting, n_star, records, started)


def _map_trials(spec: CheckSpec, indices, workers: int) -> list[TrialRecord]:
    indices = list(indices)
    if workers <= 1 or len(indices) <= 1:
        return [_run_trial(spec, i) for i in indices]
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_trial, [spec] * len(indices), indices))


def run_satellite_check(sat: SatelliteSpec, *, trials: int, seed: int,
                        fundamental_budget: int = 1, budget: int = 1,
                        workers: int = 1) -> VerificationReport:
    """Corollary check for one fixed satellite pattern: 3-rotant companion
    pairs, both decorated identically; bracket equality asserted, the Jones
    monomial ratio recorded without judgment."""
    started = time.monotonic()
    if sat.pattern not in ("2-cable", "whitehead"):
        raise LabError(f"unknown satellite pattern {sat.pattern!r}")
    spec = CheckSpec("4.5", 3, 1, budget, fundamental_budget, trials, seed)
    spec.validate()
    label = f"4.5/{sat.pattern}/{sat.twists}/{sat.clasp_sign}"
    records = []
    for index in range(trials):
        s = trial_seed(seed, label, index)
        records.append(_run_satellite_trial(spec, index, s,
                                            random.Random(s), sat))
    return _assemble("4.5", spec, True, None, records, started)


def search_counterexample(n: int, *, budget: int, trials: int, seed: int,
                          invariant: str = "bracket", k: int = 1,
                          fundamental_budget: int = 2,
                          workers: int = 1) -> VerificationReport:
    """Sharpness search: run the general rotor/stator pipeline at an ``n``
    of the caller's choosing and report (never assert) the comparisons.
    Inequalities are findings with full replay data, not failures."""
    started = time.monotonic()
    if invariant not in _INVARIANTS:
        raise LabError(f"unknown invariant {invariant!r}; known: "
                       f"{', '.join(_SEARCH_INVARIANTS)}")
    label = f"search/{invariant}"
    spec = CheckSpec(label, n, k, budget, fundamental_budget, trials, seed)
    oriented = invariant in _ORIENTED_TAGS
    records = []
    for index in range(trials):
        s = trial_seed(seed, label, index)
        rng = random.Random(s)
        try:
            rotor = random_rotor(n, k, budget=fundamental_budget, rng=rng,
                                 oriented=oriented, alternating=True)
            io = _complement_io(rotor) if oriented else None
            stator = random_stator(len(rotor.boundary), budget=budget,
                                   rng=rng, io=io)
            left, right = rotant_pair(rotor, stator, n=n, k=k, axis=AXIS,
                                      offset=OFFSET)
        except (LabError, RotorError) as exc:
            records.append(_finish_trial(
                index, s, "skipped", None, None, {}, {},
                note=f"instance construction failed: {exc}"))
            continue
        instance = {"rotor": diagram_to_json(rotor),
                    "stator": diagram_to_json(stator)}
        try:
            entry = _compare(invariant, left, right, None)
        except ResourceError as exc:
            records.append(_finish_trial(index, s, "skipped", None, None,
                                         {}, instance,
                                         note=f"resource guard: {exc}"))
            continue
        if not entry["equal"]:
            instance["left"] = to_pd_text(left)
            instance["right"] = to_pd_text(right)
        records.append(_finish_trial(index, s, "ok", entry["equal"], None,
                                     {invariant: entry}, instance))
    return _assemble(label, spec, False, None, records, started)


def orientation_sensitivity(n: int, *, trials: int, seed: int,
                            budget: int = 4, fundamental_budget: int = 2,
                            workers: int = 1) -> VerificationReport:
    """Probe the orientation hypotheses: for oriented skein invariants
    (P, F, Conway) compare the rotant pair as built, with every component
    reversed, and with a single component reversed.  Equality is asserted
    only for the first two variants and only when n <= 5 (the oriented
    cup-trivial hypothesis); the mixed variant is recorded, never judged.
    """
    started = time.monotonic()
    label = "orientation-sensitivity"
    spec = CheckSpec(label, n, 1, budget, fundamental_budget, trials, seed)
    asserting = n <= 5
    tags = ("homfly", "kauffman_f", "conway")
    records = []
    for index in range(trials):
        s = trial_seed(seed, label, index)
        rng = random.Random(s)
        try:
            rotor = build_cup_trivial_rotor(
                n, budget=fundamental_budget, seed=_sub_seed(rng),
                oriented=True)
            stator = random_stator(2 * n, budget=budget, rng=rng,
                                   io=_complement_io(rotor))
            left, right = rotant_pair(rotor, stator, n=n, k=1, axis=AXIS,
                                      offset=OFFSET)
        except (LabError, RotorError) as exc:
            records.append(_finish_trial(
                index, s, "skipped", None, None, {}, {},
                note=f"instance construction failed: {exc}"))
            continue
        instance = {"rotor": diagram_to_json(rotor),
                    "stator": diagram_to_json(stator)}
        invariants: dict = {}
        try:
            baseline_equal = []
            for tag in tags:
                entry = _compare(tag, left, right, None)
                invariants[tag] = {"baseline": entry}
                baseline_equal.append(entry["equal"])
            all_l = reverse_components(left, range(len(strands(left))))
            all_r = reverse_components(right, range(len(strands(right))))
            reversed_equal = []
            for tag in tags:
                entry = _compare(tag, all_l, all_r, None)
                invariants[tag]["all_reversed"] = entry
                reversed_equal.append(entry["equal"])
            mixed = _mixed_reversal(left, right)
            if mixed is not None:
                mix_l, mix_r = mixed
                for tag in tags:
                    invariants[tag]["mixed"] = _compare(tag, mix_l, mix_r,
                                                        None)
        except ResourceError as exc:
            records.append(_finish_trial(index, s, "skipped", None, None,
                                         invariants, instance,
                                         note=f"resource guard: {exc}"))
            continue
        equal = all(baseline_equal) and all(reversed_equal)
        if not equal:
            instance["left"] = to_pd_text(left)
            instance["right"] = to_pd_text(right)
        records.append(_finish_trial(index, s, "ok", equal, None,
                                     invariants, instance))
    return _assemble(label, spec, asserting, None, records, started)


def _mixed_reversal(left: Diagram,
                    right: Diagram) -> tuple[Diagram, Diagram] | None:
    """Reverse, on each closed diagram, the component containing its
    smallest edge id (a shared stator edge whenever one exists).  Only
    meaningful when there are at least two components."""
    if len(strands(left)) < 2 or len(strands(right)) < 2:
        return None

    def pick(d: Diagram) -> int:
        target = min(edge_set(d))
        for idx, comp in enumerate(components(d)):
            if target in comp:
                return idx
        return 0

    return (reverse_components(left, [pick(left)]),
            reverse_components(right, [pick(right)]))
