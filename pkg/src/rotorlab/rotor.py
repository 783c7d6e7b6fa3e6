"""Rotor calculus: symmetric tangles, rotants, and pattern builders.

A *rotor* is a tangle with an n-fold rotational symmetry: its boundary
carries ``2kn`` points, and rotating the boundary by ``2k`` positions maps
the tangle onto itself.  Rotors are assembled from a *fundamental domain*,
a tangle describing one sector of the symmetric picture.  The sector
boundary is read counterclockwise as

    ``o_0 .. o_{2k-1}  r_0 .. r_{j-1}  l_0 .. l_{j-1}``

where the ``o`` points lie on the outer rim, the right interface ``r`` runs
from rim to hub, and the left interface ``l`` runs from hub back to the rim.
Gluing ``n`` copies around the hub fuses copy ``i``'s ``r_t`` with copy
``i+1``'s ``l_{j-1-t}``.

The *rotant* of a rotor is its reflection across a diameter (implemented as
a boundary flip); closing a rotor and its rotant with the same complementary
tangle (the *stator*) yields a generalized-mutant pair of link diagrams.
"""

from __future__ import annotations

import dataclasses
import heapq
import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .diagram import (
    Diagram,
    DiagramError,
    MoveError,
    Tangle,
    boundary_io,
    canonical_key,
    clasp_insert,
    components,
    diagram_from_json,
    diagram_to_json,
    edge_ends,
    edge_set,
    faces,
    flip,
    glue,
    orient,
    orientation_map,
    r1_insert,
    r1_unkink,
    r1_unkink_sites,
    r2_insert,
    r2_remove,
    r2_remove_sites,
    r2_sites,
    r3_apply,
    r3_sites,
    relabel_edges,
    reverse_components,
    rotate_boundary,
    strands,
    tangle,
    validate,
    writhe,
    _dart_edge,
    _head_end,
)

__all__ = [
    "Band",
    "BandPattern",
    "MatchedPair",
    "ParallelRotor",
    "RotorError",
    "RotorSpec",
    "SatelliteSpec",
    "StatorSpec",
    "antiparallel_sites",
    "band_audit",
    "build_cup_trivial_rotor",
    "build_double_rotor",
    "build_matched_stator",
    "build_parallel_3rotor",
    "build_rotor",
    "build_stator",
    "check_matched",
    "compose",
    "compose_tracked",
    "crossing_fundamental",
    "cup_fundamental",
    "is_rotor",
    "push_twist",
    "random_fundamental",
    "random_rotor",
    "random_stator",
    "require_rotor",
    "rotant_of",
    "rotant_pair",
    "satellite",
    "trivial_fundamental",
    "verify_cup_trivial",
]


class RotorError(DiagramError):
    """A rotor construction or validation failed."""


# ---------------------------------------------------------------------------
# specs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RotorSpec:
    """Blueprint for a rotor: ``n`` sectors of type ``k`` from a fundamental
    domain whose boundary follows the sector convention above."""

    n: int
    k: int
    fundamental: Diagram

    @property
    def interface_width(self) -> int:
        return (len(self.fundamental.boundary) - 2 * self.k) // 2

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k,
                "fundamental": diagram_to_json(self.fundamental)}

    @staticmethod
    def from_json(obj: dict) -> "RotorSpec":
        return RotorSpec(int(obj["n"]), int(obj["k"]),
                         diagram_from_json(obj["fundamental"]))


@dataclass(frozen=True)
class StatorSpec:
    """Blueprint for a stator: the complementary tangle closing a rotor.

    ``kind`` is ``"arbitrary"`` (a dressed random planar matching),
    ``"rotor"`` (the stator is itself a rotor, with ``n``/``k`` set), or
    ``"matched"`` (an oriented stator whose crossings come in certified
    antiparallel clasp pairs).
    """

    kind: str
    m: int
    budget: int
    seed: int
    n: int | None = None
    k: int | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "m": self.m, "budget": self.budget,
               "seed": self.seed}
        if self.n is not None:
            out["n"] = self.n
        if self.k is not None:
            out["k"] = self.k
        return out

    @staticmethod
    def from_json(obj: dict) -> "StatorSpec":
        return StatorSpec(str(obj["kind"]), int(obj["m"]),
                          int(obj["budget"]), int(obj["seed"]),
                          int(obj["n"]) if "n" in obj else None,
                          int(obj["k"]) if "k" in obj else None)


@dataclass(frozen=True)
class BandPattern:
    """One of the three rotationally symmetric pairings of six band ends.

    Band ends ``P_0 .. P_5`` sit counterclockwise around the boundary, two
    outer points each; the pairing must commute with the rotation
    ``P_i -> P_{i+2}``.  Exactly three such pairings exist: ``cups``
    (each sector closes its own band), ``ring`` (bands run between adjacent
    sectors around the hub), and ``pinwheel`` (bands cross the hub, each
    crossing the next one once).  ``twists`` must stay zero: a band with an
    internal twist is not flat, and the constructor rejects it --- push
    twists into the stator with :func:`push_twist` instead.
    """

    pairing: tuple[tuple[int, int], ...]
    chirality: int = 1
    twists: tuple[int, int, int] = (0, 0, 0)

    @staticmethod
    def cups(twists: tuple[int, int, int] = (0, 0, 0)) -> "BandPattern":
        return BandPattern(((0, 1), (2, 3), (4, 5)), 1, twists)

    @staticmethod
    def ring(twists: tuple[int, int, int] = (0, 0, 0)) -> "BandPattern":
        return BandPattern(((1, 2), (3, 4), (5, 0)), 1, twists)

    @staticmethod
    def pinwheel(chirality: int = 1,
                 twists: tuple[int, int, int] = (0, 0, 0)) -> "BandPattern":
        return BandPattern(((0, 3), (1, 4), (2, 5)), chirality, twists)

    @property
    def kind(self) -> str:
        pairs = {frozenset(p) for p in self.pairing}
        if len(pairs) != 3 or {q for p in pairs for q in p} != set(range(6)):
            raise RotorError("band pairing must partition the six band ends")
        rotated = {frozenset(((a + 2) % 6, (b + 2) % 6)) for a, b in pairs}
        if rotated != pairs:
            raise RotorError("band pairing is not rotation-symmetric")
        if pairs == {frozenset(p) for p in ((0, 1), (2, 3), (4, 5))}:
            return "cups"
        if pairs == {frozenset(p) for p in ((1, 2), (3, 4), (5, 0))}:
            return "ring"
        return "pinwheel"

    def to_json(self) -> dict:
        return {"pairing": [list(p) for p in self.pairing],
                "chirality": self.chirality, "twists": list(self.twists)}

    @staticmethod
    def from_json(obj: dict) -> "BandPattern":
        return BandPattern(tuple((int(a), int(b)) for a, b in obj["pairing"]),
                           int(obj.get("chirality", 1)),
                           tuple(int(t) for t in obj.get("twists", (0, 0, 0))))


@dataclass(frozen=True)
class SatelliteSpec:
    """Companion pattern for :func:`satellite`: a blackboard-framed
    ``"2-cable"`` (two parallel copies, optionally joined by full twists) or
    a ``"whitehead"`` double (the two copies reconnected through a clasp)."""

    pattern: str
    twists: int = 0
    clasp_sign: int = 1

    def to_json(self) -> dict:
        return {"pattern": self.pattern, "twists": self.twists,
                "clasp_sign": self.clasp_sign}

    @staticmethod
    def from_json(obj: dict) -> "SatelliteSpec":
        return SatelliteSpec(str(obj["pattern"]), int(obj.get("twists", 0)),
                             int(obj.get("clasp_sign", 1)))


@dataclass(frozen=True)
class Band:
    """The two parallel strands of one band, as rotor edge ids."""

    strand_a: tuple[int, ...]
    strand_b: tuple[int, ...]


@dataclass(frozen=True)
class ParallelRotor:
    """A type-2 rotor whose strands pair off into three flat bands."""

    tangle: Diagram
    bands: tuple[Band, ...]
    pattern: BandPattern


@dataclass(frozen=True)
class MatchedPair:
    """Certificate entry: two crossing indices forming an antiparallel
    clasp (a bigon between them, equal signs, opposing strand flows)."""

    crossings: tuple[int, int]


# ---------------------------------------------------------------------------
# fundamental domains
# ---------------------------------------------------------------------------


def trivial_fundamental(k: int) -> Tangle:
    """The crossingless type-``k`` sector: ``2k`` strands run straight from
    the outer rim to the interfaces (width ``j = k``)."""
    if k < 1:
        raise RotorError("k must be at least 1")
    # Strand A_t joins o_t to l_{k-1-t}; strand B_t joins o_{k+t} to
    # r_{k-1-t}.  Edges are numbered by first boundary appearance.
    m = 4 * k
    boundary = [0] * m
    for t in range(k):
        boundary[t] = t + 1                     # A_t at o_t
        boundary[3 * k + (k - 1 - t)] = t + 1   # A_t at l_{k-1-t}
        boundary[k + t] = k + t + 1             # B_t at o_{k+t}
        boundary[2 * k + (k - 1 - t)] = k + t + 1
    return tangle([], boundary)


def cup_fundamental(k: int) -> Tangle:
    """The width-zero sector: ``k`` nested cups on the ``2k`` outer points."""
    if k < 1:
        raise RotorError("k must be at least 1")
    boundary = [0] * (2 * k)
    for t in range(k):
        boundary[t] = t + 1
        boundary[2 * k - 1 - t] = t + 1
    return tangle([], boundary)


def crossing_fundamental() -> Tangle:
    """A type-1 sector holding one positive crossing between its strands."""
    return tangle([(1, 2, 3, 4)], (1, 2, 3, 4))


# ---------------------------------------------------------------------------
# rotor assembly
# ---------------------------------------------------------------------------


def _uf_find(parent: dict, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _uf_union(parent: dict, a, b) -> None:
    ra, rb = _uf_find(parent, a), _uf_find(parent, b)
    if ra != rb:
        if rb < ra:
            ra, rb = rb, ra
        parent[rb] = ra


def _build_rotor_mapped(spec: RotorSpec):
    """Assemble the rotor and return ``(diagram, gid)`` where ``gid`` maps
    ``(copy, local_edge)`` to the edge id in the assembled diagram."""
    f = spec.fundamental
    n, k = spec.n, spec.k
    if n < 1 or k < 1:
        raise RotorError("a rotor needs n >= 1 sectors of type k >= 1")
    if not f.is_tangle:
        raise RotorError("the fundamental domain must be a tangle")
    mf = len(f.boundary)
    if mf < 2 * k or (mf - 2 * k) % 2:
        raise RotorError(
            f"sector boundary has {mf} points; need 2k={2 * k} outer points "
            "plus two interfaces of equal width")
    j = (mf - 2 * k) // 2
    bad = validate(f)
    if bad:
        raise RotorError("invalid fundamental domain: " + bad[0])

    oriented = f.orientation is not None
    if oriented:
        io = boundary_io(f)
        for t in range(j):
            if io[2 * k + t] == io[2 * k + j + (j - 1 - t)]:
                raise RotorError(
                    "fundamental orientation does not continue across the "
                    f"interface (r_{t} and l_{j - 1 - t} both flow "
                    f"{io[2 * k + t]})")

    if n == 1 and j == 0:
        ends1 = edge_ends(f)
        gid1 = {(0, e): e for e in ends1}
        return f, gid1

    local_edges = sorted(edge_set(f))
    parent = {(i, e): (i, e) for i in range(n) for e in local_edges}
    for i in range(n):
        for t in range(j):
            r_edge = f.boundary[2 * k + t]
            l_edge = f.boundary[2 * k + j + (j - 1 - t)]
            _uf_union(parent, (i, r_edge), ((i + 1) % n, l_edge))

    member_lists: dict = {}
    for node in sorted(parent):
        member_lists.setdefault(_uf_find(parent, node), []).append(node)
    classes = sorted(member_lists.values(), key=lambda ms: ms[0])
    gid = {}
    for num, members in enumerate(classes, start=1):
        for node in members:
            gid[node] = num

    # A class whose member edges live entirely on the interfaces closes into
    # an unknotted loop around the hub.
    ends_f = edge_ends(f)
    iface_only = {e: all(end[0] == 1 and end[2] >= 2 * k
                         for end in ends_f[e])
                  for e in local_edges}
    pure = [members for members in classes
            if all(iface_only[e] for _, e in members)]

    ncross = len(f.crossings)
    crossings = tuple(tuple(gid[(i, e)] for e in cr)
                      for i in range(n) for cr in f.crossings)
    boundary = tuple(gid[(i, f.boundary[p])]
                     for i in range(n) for p in range(2 * k))
    loops = n * f.free_loops + len(pure)
    assembled = Diagram(crossings, loops, boundary, None)

    if oriented:
        omap = orientation_map(f)
        ends_new = edge_ends(assembled)
        dirs = {}
        for members in classes:
            if all(iface_only[e] for _, e in members):
                continue
            new_heads = []
            for i, e in members:
                head = _head_end(ends_f[e], omap[e])
                if head[0] == 1 and head[2] >= 2 * k:
                    continue  # consumed by the interface gluing
                if head[0] == 0:
                    new_heads.append((0, i * ncross + head[1], head[2]))
                else:
                    new_heads.append((1, 0, i * 2 * k + head[2]))
            g = gid[members[0]]
            if len(new_heads) != 1:
                raise RotorError("inconsistent orientation along a fused "
                                 "rotor strand")
            lo, hi = sorted(ends_new[g])
            dirs[g] = 1 if new_heads[0] == hi else -1
        assembled = Diagram(crossings, loops, boundary,
                            tuple(sorted(dirs.items())))

    bad = validate(assembled)
    if bad:
        raise RotorError("rotor assembly produced an invalid diagram: "
                         + bad[0])
    if n > 1 and canonical_key(assembled) != \
            canonical_key(rotate_boundary(assembled, 2 * k)):
        raise RotorError("rotor assembly lost the rotational symmetry")
    return assembled, gid


def build_rotor(spec: RotorSpec) -> Tangle:
    """Glue ``spec.n`` copies of the fundamental domain around the hub."""
    assembled, _ = _build_rotor_mapped(spec)
    return assembled


def is_rotor(t: Diagram, n: int, k: int) -> bool:
    """Whether ``t`` is a valid tangle with the (n, k) rotational symmetry."""
    if n < 1 or k < 1 or len(t.boundary) != 2 * k * n:
        return False
    if validate(t):
        return False
    return canonical_key(t) == canonical_key(rotate_boundary(t, 2 * k))


def require_rotor(t: Diagram, n: int, k: int) -> None:
    if not is_rotor(t, n, k):
        raise RotorError(f"tangle is not an (n={n}, k={k}) rotor")


# ---------------------------------------------------------------------------
# rotants and composition
# ---------------------------------------------------------------------------


def rotant_of(t: Diagram, *, n: int, k: int, axis: int = 3) -> Tangle:
    """Reflect a rotor across a boundary diameter, ``p -> axis - p``.

    The default axis 3 runs through the gap between boundary points 1 and 2.
    Any odd axis gives a diameter through gaps (never through a boundary
    point); axes congruent mod ``2k`` give the same rotant because rotating
    by a full sector is a symmetry of the rotor.  For rotors whose boundary
    points are banded in adjacent pairs ``{2j, 2j+1}`` the axis must not
    split a pair, which selects ``axis = 3 (mod 4)``; for ``k = 1`` all odd
    axes are equivalent, so the default is safe everywhere.
    """
    require_rotor(t, n, k)
    out = flip(t, axis)
    require_rotor(out, n, k)
    return out


def compose(rotor: Diagram, stator: Diagram, *, offset: int = 0) -> Diagram:
    """Close a rotor with a stator: boundary point ``p`` of the rotor meets
    point ``(offset - p) mod m`` of the stator (an orientation-reversing
    identification of the two disk boundaries)."""
    m = len(rotor.boundary)
    if m == 0 or m != len(stator.boundary):
        raise RotorError("rotor and stator boundaries do not match")
    matching = [(p, (offset - p) % m) for p in range(m)]
    return glue(rotor, stator, matching)


def compose_tracked(rotor: Diagram, stator: Diagram, *,
                    offset: int = 0) -> tuple[Diagram, frozenset]:
    """Like :func:`compose`, also reporting the stator-interior edge ids as
    they appear in the composed diagram.

    The stator is pre-shifted so that the gluing keeps its edge ids; the
    interior ids are therefore identical when the same stator closes a rotor
    and its rotant, which is what lets satellite decorations be applied to
    corresponding places of both closures.
    """
    if not stator.is_tangle:
        raise RotorError("stator must be a tangle")
    off = max(edge_set(rotor), default=0) + 1 - min(edge_set(stator))
    shifted = relabel_edges(stator, {e: e + off for e in edge_set(stator)}) \
        if off else stator
    closed = compose(rotor, shifted, offset=offset)
    interior = frozenset(e + off for e in
                         edge_set(stator) - set(stator.boundary))
    return closed, interior


def rotant_pair(rotor: Diagram, stator: Diagram, *, n: int, k: int,
                axis: int = 3, offset: int = 0) -> tuple[Diagram, Diagram]:
    """Close ``rotor`` and its rotant with the same stator.

    For oriented inputs the flipped rotor is re-oriented to stay compatible
    with the stator: either the flipped orientation already matches the
    original boundary io pattern, or every rotor strand is reversed (the
    classical convention for mutation of oriented diagrams).  Both closures
    then have equal writhe, which is asserted.
    """
    require_rotor(rotor, n, k)
    r_oriented = rotor.orientation is not None
    if r_oriented != (stator.orientation is not None):
        raise RotorError("rotor and stator must be both oriented or both "
                         "unoriented")
    left = compose(rotor, stator, offset=offset)
    flipped = flip(rotor, axis)
    if r_oriented:
        io_old = boundary_io(rotor)
        io_new = boundary_io(flipped)
        if io_new == io_old:
            pass
        elif all(a != b for a, b in zip(io_new, io_old)):
            flipped = reverse_components(flipped,
                                         range(len(strands(flipped))))
        else:
            raise RotorError("rotor orientation is incompatible with the "
                             "flip axis")
    right = compose(flipped, stator, offset=offset)
    if len(left.crossings) != len(right.crossings):
        raise RotorError("rotant closure changed the crossing count")
    if r_oriented and writhe(left) != writhe(right):
        raise RotorError("rotant closure changed the writhe")
    return left, right


def build_double_rotor(first: RotorSpec, second: RotorSpec, *,
                       offset: int = 0) -> Diagram:
    """Close a rotor with a rotor-shaped stator built to the same (n, k)."""
    if (first.n, first.k) != (second.n, second.k):
        raise RotorError("double rotor sides must share the same n and k")
    return compose(build_rotor(first), build_rotor(second), offset=offset)


# ---------------------------------------------------------------------------
# cup-trivial rotors
# ---------------------------------------------------------------------------


def _dress(t: Diagram, budget: int, rng: random.Random, *,
           kinds: tuple[str, ...] = ("r1", "r2")) -> Diagram:
    """Spend up to ``budget`` crossings on random local insertions."""
    remaining = budget
    while remaining > 0:
        if rng.random() < 0.15:
            break
        choices = [k for k in kinds
                   if remaining >= (1 if k == "r1" else 2)]
        if not choices:
            break
        kind = rng.choice(choices)
        if kind == "r1":
            e = rng.choice(sorted(edge_set(t)))
            t = r1_insert(t, e, rng.choice((1, -1)))
            remaining -= 1
            continue
        sites = r2_sites(t)
        if not sites:
            continue
        order = list(range(len(sites)))
        rng.shuffle(order)
        side = rng.choice(("a", "b"))
        for idx in order:
            da, db = sites[idx]
            try:
                if kind == "r2":
                    t = r2_insert(t, da, db, side)
                else:
                    t = clasp_insert(t, da, db, side)
                remaining -= 2
                break
            except MoveError:
                continue
    return t


def build_cup_trivial_rotor(n: int, *, budget: int = 2, seed: int = 0,
                            oriented: bool = False,
                            extra_loops: int = 0) -> Tangle:
    """A type-1 rotor guaranteed cup-trivial: capping any adjacent boundary
    pair yields an unknotted, unlinked tangle.

    The sector is the trivial one dressed only with kink and poke
    insertions, each an isotopy of the sector rel boundary, so the rotor is
    isotopic to ``n`` radial strands and every cap closure is trivial.
    ``extra_loops`` adds split unknotted circles to each sector.
    """
    rng = random.Random(seed)
    f = trivial_fundamental(1)
    if oriented:
        f = orient(f, rng.choice(((1, -1), (-1, 1))))
    f = _dress(f, budget, rng, kinds=("r1", "r2"))
    if extra_loops:
        f = Diagram(f.crossings, f.free_loops + extra_loops, f.boundary,
                    f.orientation)
    return build_rotor(RotorSpec(n, 1, f))


def verify_cup_trivial(t: Diagram, *, n: int, k: int = 1, depth: int = 6,
                       node_cap: int = 4000) -> str:
    """One-sided check that capping the adjacent boundary pair (0, 1) gives
    a trivial tangle: search for a reduction to a crossingless diagram using
    at most ``depth`` unkink/unpoke/slide moves.  Returns ``"verified"`` or
    ``"unverified"`` (never a claim of nontriviality)."""
    require_rotor(t, n, k)
    m = len(t.boundary)
    capped = glue(t, tangle([], (1, 1)), [(0, 0), (1 % m, 1)])
    capped = dataclasses.replace(capped, orientation=None)
    counter = itertools.count()
    heap = [(len(capped.crossings), next(counter), 0, capped)]
    seen = {canonical_key(capped)}
    nodes = 0
    while heap and nodes < node_cap:
        ncross, _, moves, d = heapq.heappop(heap)
        nodes += 1
        if ncross == 0:
            return "verified"
        if moves >= depth:
            continue
        successors = []
        for ci in r1_unkink_sites(d):
            successors.append(r1_unkink(d, ci))
        for c1, c2 in r2_remove_sites(d):
            successors.append(r2_remove(d, c1, c2))
        for site in r3_sites(d):
            successors.append(r3_apply(d, site))
        for nd in successors:
            key = canonical_key(nd)
            if key in seen:
                continue
            seen.add(key)
            heapq.heappush(heap, (len(nd.crossings), next(counter),
                                  moves + 1, nd))
    return "unverified"


# ---------------------------------------------------------------------------
# parallel band rotors
# ---------------------------------------------------------------------------

_PINWHEEL_BOUNDARY = (1, 4, 9, 12, 6, 3, 10, 7)
_PINWHEEL_POS = ((7, 1, 8, 2), (8, 4, 9, 5), (10, 2, 11, 3), (11, 5, 12, 6))
_PINWHEEL_NEG = ((1, 8, 2, 7), (4, 9, 5, 8), (2, 11, 3, 10), (5, 12, 6, 11))


def build_parallel_3rotor(pattern: BandPattern) -> ParallelRotor:
    """A type-2, three-sector rotor whose four strands per sector pair into
    three flat bands following ``pattern``."""
    kind = pattern.kind
    if any(pattern.twists):
        raise RotorError("bands must be flat; push twists into the stator "
                         "with push_twist")
    if pattern.chirality not in (1, -1):
        raise RotorError("chirality must be +1 or -1")
    if kind == "cups":
        f = tangle([], (1, 2, 2, 1))
        strand_sets = ["a", "b"]  # edge 1 outer, edge 2 inner
        local_bands = [((1,), (2,))] * 3
    elif kind == "ring":
        f = tangle([], (1, 2, 3, 4, 4, 3, 2, 1))
        # Band from sector i to sector i+1: edge 3 of copy i fuses with
        # edge 2 of copy i+1; edge 4 fuses with edge 1.
        local_bands = None
    else:
        cross = _PINWHEEL_POS if pattern.chirality > 0 else _PINWHEEL_NEG
        f = tangle(cross, _PINWHEEL_BOUNDARY)
        local_bands = None
    assembled, gid = _build_rotor_mapped(RotorSpec(3, 2, f))
    bands = []
    for i in range(3):
        nxt = (i + 1) % 3
        if kind == "cups":
            bands.append(Band((gid[(i, 1)],), (gid[(i, 2)],)))
        elif kind == "ring":
            bands.append(Band((gid[(i, 3)],), (gid[(i, 4)],)))
        else:
            a = {gid[(i, e)] for e in (1, 2, 3)} | \
                {gid[(nxt, e)] for e in (10, 11, 12)}
            b = {gid[(i, e)] for e in (4, 5, 6)} | \
                {gid[(nxt, e)] for e in (7, 8, 9)}
            bands.append(Band(tuple(sorted(a)), tuple(sorted(b))))
    rotor = ParallelRotor(assembled, tuple(bands), pattern)
    bad = band_audit(assembled, rotor.bands)
    if bad:
        raise RotorError("band construction failed its own audit: " + bad[0])
    return rotor


def _perfect_matching(cands: Mapping[int, set]) -> bool:
    """Whether the bipartite candidate map admits a perfect matching."""
    order = sorted(cands)
    match: dict[int, int] = {}

    def augment(u, seen):
        for v in sorted(cands[u]):
            if v in seen:
                continue
            seen.add(v)
            if v not in match or augment(match[v], seen):
                match[v] = u
                return True
        return False

    return all(augment(u, set()) for u in order)


def band_audit(d: Diagram, bands: Sequence[Band]) -> list[str]:
    """Check that each claimed band is flat and untwisted in ``d``.

    For every band: its two strands never cross each other, and the
    crossings along one strand pair off with the crossings along the other
    through single transversal edges (the rungs of a parallel crossing
    grid).  Returns a list of violations, empty when the audit passes.
    """
    errors = []
    ends = edge_ends(d)
    cross_edges = [set(cr) for cr in d.crossings]
    for bi, band in enumerate(bands):
        u, v = set(band.strand_a), set(band.strand_b)
        if u & v:
            errors.append(f"band {bi}: strands share an edge")
            continue
        for ci, es in enumerate(cross_edges):
            if es & u and es & v:
                errors.append(f"band {bi}: crossing {ci} joins its two "
                              "strands (twisted band)")
        u_cross = [ci for ci, es in enumerate(cross_edges) if es & u]
        v_cross = {ci for ci, es in enumerate(cross_edges) if es & v}
        if len(u_cross) != len(v_cross):
            errors.append(f"band {bi}: unequal crossing counts along the "
                          "two strands")
            continue
        cands: dict[int, set] = {}
        for ci in u_cross:
            tup = d.crossings[ci]
            targets = set()
            for e in tup:
                if e in u:
                    continue
                for end in ends[e]:
                    if end[0] == 0 and end[1] != ci and end[1] in v_cross:
                        targets.add(end[1])
            cands[ci] = targets
        if u_cross and not _perfect_matching(cands):
            errors.append(f"band {bi}: crossings do not pair across the "
                          "band")
    return errors


def push_twist(t: Diagram, dart_a: tuple, dart_b: tuple,
               sign: int) -> Diagram:
    """Insert one full twist between two strands of a (stator) tangle at a
    shared face: the stator-side home for band twists."""
    if sign not in (1, -1):
        raise RotorError("twist sign must be +1 or -1")
    return clasp_insert(t, dart_a, dart_b, "a" if sign > 0 else "b")


# ---------------------------------------------------------------------------
# matched stators
# ---------------------------------------------------------------------------


def antiparallel_sites(d: Diagram) -> list[tuple[tuple, tuple]]:
    """Dart pairs on a shared face whose strands run antiparallel there.

    At each face the traversal runs along every incident edge once; two
    strands are antiparallel across the face exactly when the traversal
    agrees with both flows or with neither.
    """
    if d.orientation is None:
        raise RotorError("antiparallel sites need an oriented diagram")
    omap = orientation_map(d)
    ends = edge_ends(d)
    sites = []
    for face in faces(d):
        for i in range(len(face)):
            for jj in range(i + 1, len(face)):
                a, b = face[i], face[jj]
                ea, eb = _dart_edge(d, a), _dart_edge(d, b)
                if ea == eb:
                    continue
                flow_a = _head_end(ends[ea], omap[ea]) != a
                flow_b = _head_end(ends[eb], omap[eb]) != b
                if flow_a == flow_b:
                    sites.append((a, b))
    return sites


def _certified_bigon_edges(d: Diagram, cert: Sequence[MatchedPair]) -> set:
    out = set()
    pairs = {frozenset(p.crossings) for p in cert}
    for face in faces(d):
        if len(face) != 2:
            continue
        if not all(dd[0] == 0 for dd in face):
            continue
        if frozenset(dd[1] for dd in face) in pairs:
            out |= {_dart_edge(d, dd) for dd in face}
    return out


def build_matched_stator(m: int, *, budget: int, seed: int,
                         io: Sequence[str] | None = None
                         ) -> tuple[Tangle, tuple[MatchedPair, ...]]:
    """An oriented stator whose crossings all come in certified antiparallel
    clasp pairs: a crossingless base matching dressed with ``budget // 2``
    clasps, each inserted at an antiparallel site."""
    if budget % 2:
        raise RotorError("matched stators use an even crossing budget")
    if m < 2 or m % 2:
        raise RotorError("stator boundary size must be even and positive")
    rng = random.Random(seed)
    if io is None:
        start = rng.randrange(2)
        io = tuple(("in", "out")[(p + start) % 2] for p in range(m))
    else:
        io = tuple(io)
        if len(io) != m or io.count("in") != io.count("out"):
            raise RotorError("io pattern must balance ins and outs")
    t = _oriented_matching(io, rng)
    cert: list[MatchedPair] = []
    for _ in range(budget // 2):
        blocked = _certified_bigon_edges(t, cert)
        sites = [s for s in antiparallel_sites(t)
                 if _dart_edge(t, s[0]) not in blocked
                 and _dart_edge(t, s[1]) not in blocked]
        if not sites:
            raise RotorError("no antiparallel site available for a clasp")
        order = list(range(len(sites)))
        rng.shuffle(order)
        side = rng.choice(("a", "b"))
        for idx in order:
            da, db = sites[idx]
            try:
                t = clasp_insert(t, da, db, side)
                break
            except MoveError:
                continue
        else:
            raise RotorError("no usable antiparallel site for a clasp")
        cert.append(MatchedPair((len(t.crossings) - 2,
                                 len(t.crossings) - 1)))
    bad = check_matched(t, cert)
    if bad:
        raise RotorError("matched construction failed its own check: "
                         + bad[0])
    return t, tuple(cert)


def _oriented_matching(io: Sequence[str], rng: random.Random) -> Tangle:
    """A crossingless oriented tangle realizing the io pattern: a planar
    matching pairing each inward point with an outward one."""
    m = len(io)
    remaining = list(range(m))
    rot = rng.randrange(m)
    remaining = remaining[rot:] + remaining[:rot]
    chords = []
    while remaining:
        for idx in range(len(remaining)):
            p = remaining[idx]
            q = remaining[(idx + 1) % len(remaining)]
            if io[p] != io[q]:
                chords.append((p, q))
                rem = set((p, q))
                remaining = [x for x in remaining if x not in rem]
                break
        else:
            raise RotorError("io pattern admits no planar matching")
    boundary = [0] * m
    for num, (p, q) in enumerate(sorted(chords, key=min), start=1):
        boundary[p] = boundary[q] = num
    t = tangle([], boundary)
    dirs = []
    for strand in strands(t):
        first = strand[0][1]  # the end the walk starts from
        pos = first[2]
        dirs.append(1 if io[pos] == "in" else -1)
    return orient(t, dirs)


def check_matched(t: Diagram, cert: Sequence[MatchedPair]) -> list[str]:
    """Validate a matched certificate: the pairs partition the crossings,
    and each pair is a bigon clasp with equal signs on antiparallel
    strands.  Returns a list of violations, empty when valid."""
    if t.orientation is None:
        return ["diagram is not oriented"]
    errors = []
    flat = [c for pair in cert for c in pair.crossings]
    if len(set(flat)) != len(flat):
        errors.append("a crossing appears in two pairs")
    if set(flat) != set(range(len(t.crossings))):
        errors.append("pairs do not cover the crossings exactly")
    omap = orientation_map(t)
    ends = edge_ends(t)
    face_list = faces(t)
    from .diagram import crossing_sign
    for pi, pair in enumerate(cert):
        c1, c2 = pair.crossings
        bigon = None
        for face in face_list:
            if len(face) == 2 and all(dd[0] == 0 for dd in face) and \
                    {dd[1] for dd in face} == {c1, c2}:
                bigon = face
                break
        if bigon is None:
            errors.append(f"pair {pi}: no bigon between crossings "
                          f"{c1} and {c2}")
            continue
        if crossing_sign(t, c1) != crossing_sign(t, c2):
            errors.append(f"pair {pi}: crossing signs differ")
        a, b = bigon
        ea, eb = _dart_edge(t, a), _dart_edge(t, b)
        flow_a = _head_end(ends[ea], omap[ea]) != a
        flow_b = _head_end(ends[eb], omap[eb]) != b
        if flow_a != flow_b:
            errors.append(f"pair {pi}: strands are not antiparallel")
    return errors


# ---------------------------------------------------------------------------
# satellites (blackboard-framed 2-parallels)
# ---------------------------------------------------------------------------

_SUB = {"nw": 0, "ne": 1, "sw": 2, "se": 3}
# Where lane copies of the edge at slot s enter the doubled crossing grid:
# (sub-crossing name, sub-slot) for the cw-side and ccw-side lane.
_LANE_AT = {
    0: {"cw": ("nw", 0), "ccw": ("sw", 0)},
    1: {"cw": ("sw", 1), "ccw": ("se", 1)},
    2: {"cw": ("se", 2), "ccw": ("ne", 2)},
    3: {"cw": ("ne", 3), "ccw": ("nw", 3)},
}


def _double(d: Diagram):
    """Blackboard-framed doubling: every edge becomes two parallel lanes,
    every crossing a 2x2 grid of sub-crossings.

    Returns ``(crossings, boundary, free_loops, lanes)`` where ``lanes``
    maps each original edge ``e`` to ``((eL, headL), (eR, headR))``: its two
    lane edge ids and the end (in the doubled diagram) where each lane
    reaches the head of ``e``.
    """
    edges = sorted(edge_set(d))
    rank = {e: i for i, e in enumerate(edges)}
    copy_l = {e: 2 * rank[e] + 1 for e in edges}
    copy_r = {e: 2 * rank[e] + 2 for e in edges}
    base = 2 * len(edges)
    ends = edge_ends(d)
    heads = {e: max(ends[e]) for e in edges}  # canonical lane direction

    def lane_ids(e, dart):
        """(cw-side id, ccw-side id) for edge e's lanes at ``dart``."""
        if heads[e] == dart:
            return copy_l[e], copy_r[e]
        return copy_r[e], copy_l[e]

    crossings = []
    for ci, tup in enumerate(d.crossings):
        u_a = base + 4 * ci + 1
        u_b = base + 4 * ci + 2
        o_a = base + 4 * ci + 3
        o_b = base + 4 * ci + 4
        ext = {}
        for s in range(4):
            cw, ccw = lane_ids(tup[s], (0, ci, s))
            ext[(s, "cw")], ext[(s, "ccw")] = cw, ccw
        crossings.append((ext[(0, "cw")], o_a, u_a, ext[(3, "ccw")]))   # nw
        crossings.append((u_a, o_b, ext[(2, "ccw")], ext[(3, "cw")]))   # ne
        crossings.append((ext[(0, "ccw")], ext[(1, "cw")], u_b, o_a))   # sw
        crossings.append((u_b, ext[(1, "ccw")], ext[(2, "cw")], o_b))   # se
    boundary = []
    for p, e in enumerate(d.boundary):
        if heads[e] == (1, 0, p):
            boundary += [copy_r[e], copy_l[e]]
        else:
            boundary += [copy_l[e], copy_r[e]]
    lanes = {}
    for e in edges:
        head = heads[e]
        if head[0] == 1:
            p = head[2]
            end_l, end_r = (1, 0, 2 * p + 1), (1, 0, 2 * p)
        else:
            ci, s = head[1], head[2]
            sub, slot = _LANE_AT[s]["cw"]
            end_l = (0, 4 * ci + _SUB[sub], slot)
            sub, slot = _LANE_AT[s]["ccw"]
            end_r = (0, 4 * ci + _SUB[sub], slot)
        lanes[e] = ((copy_l[e], end_l), (copy_r[e], end_r))
    return crossings, boundary, 2 * d.free_loops, lanes


def _rename_end(crossings: list, boundary: list, end, new_edge: int) -> None:
    if end[0] == 0:
        ci, s = end[1], end[2]
        tup = list(crossings[ci])
        tup[s] = new_edge
        crossings[ci] = tuple(tup)
    else:
        boundary[end[2]] = new_edge


def _ladder(crossings: list, boundary: list, lane_l, lane_r, twists: int,
            fresh) -> None:
    """Join the two lanes by ``|twists|`` full twists near their head ends."""
    (el, end_l), (er, end_r) = lane_l, lane_r
    cur_l, cur_r = el, er
    for _ in range(abs(twists)):
        a, b, hl, hr = fresh(), fresh(), fresh(), fresh()
        if twists > 0:
            crossings.append((cur_r, b, a, cur_l))
            crossings.append((a, b, hr, hl))
        else:
            crossings.append((cur_l, cur_r, b, a))
            crossings.append((b, hr, hl, a))
        cur_l, cur_r = hl, hr
    _rename_end(crossings, boundary, end_l, cur_l)
    _rename_end(crossings, boundary, end_r, cur_r)


def _whitehead_clasp(crossings: list, boundary: list, lane_l, lane_r,
                     sign: int, fresh) -> None:
    """Reconnect the two lanes through a clasp: the tail sides join each
    other, as do the head sides, and the two connecting arcs hook once."""
    (el, end_l), (er, end_r) = lane_l, lane_r
    m1, m2, hl, hr = fresh(), fresh(), fresh(), fresh()
    if sign > 0:
        crossings.append((hl, el, m2, m1))
        crossings.append((m1, m2, er, hr))
    else:
        crossings.append((el, m2, m1, hl))
        crossings.append((m2, er, hr, m1))
    _rename_end(crossings, boundary, end_l, hl)
    _rename_end(crossings, boundary, end_r, hr)


def satellite(d: Diagram, spec: SatelliteSpec, *,
              sites: Sequence[int] | None = None) -> Diagram:
    """Blackboard-framed 2-parallel of ``d``, optionally decorated.

    ``"2-cable"`` doubles every strand; a nonzero ``twists`` joins the two
    lanes of each closed component by that many full twists.  ``"whitehead"``
    additionally reconnects the lanes of each closed component through a
    clasp of ``clasp_sign``, turning the pair into a single strand that
    traverses the companion twice.  Decorations are placed on the lanes of
    one companion edge per closed component: the smallest edge id by
    default, or the edges in ``sites`` (one per closed component).  The
    result is unoriented; orient it explicitly if an oriented invariant is
    wanted.
    """
    if spec.pattern not in ("2-cable", "whitehead"):
        raise RotorError(f"unknown satellite pattern {spec.pattern!r}")
    if spec.clasp_sign not in (1, -1):
        raise RotorError("clasp sign must be +1 or -1")
    crossings, boundary, free_loops, lanes = _double(d)
    want_clasp = spec.pattern == "whitehead"
    want_twists = spec.twists != 0

    if want_twists and d.free_loops and not want_clasp:
        raise RotorError("cannot twist the lanes of a bare loop; give the "
                         "companion a crossing first")

    next_id = itertools.count(max(
        [e for cr in crossings for e in cr] + [e for e in boundary] + [0]
    ) + 1)

    def fresh() -> int:
        return next(next_id)

    if want_clasp or want_twists:
        open_edges = set(d.boundary)
        closed = [comp for comp in components(d)
                  if not set(comp) & open_edges]
        per_comp: list[list[int]] = []
        if sites is None:
            for comp in closed:
                per_comp.append(sorted(comp))
        else:
            if want_clasp and want_twists:
                raise RotorError("explicit sites are not supported when "
                                 "combining twists with the clasp pattern")
            chosen = list(sites)
            comp_of = {}
            for idx, comp in enumerate(closed):
                for e in comp:
                    comp_of[e] = idx
            buckets: dict[int, list[int]] = {i: [] for i in range(len(closed))}
            for e in chosen:
                if e not in comp_of:
                    raise RotorError(f"site edge {e} is not on a closed "
                                     "component")
                buckets[comp_of[e]].append(e)
            for idx in range(len(closed)):
                if len(buckets[idx]) != 1:
                    raise RotorError("need exactly one site edge per closed "
                                     "component")
            per_comp = [buckets[i] for i in range(len(closed))]
        for comp, site_edges in zip(closed, per_comp):
            pool = site_edges + [e for e in sorted(comp)
                                 if e not in site_edges]
            if want_clasp and want_twists and len(pool) < 2:
                raise RotorError("component too small to host both "
                                 "decorations")
            cursor = 0
            if want_twists:
                e = pool[cursor]
                cursor += 1
                _ladder(crossings, boundary, *lanes[e], twists=spec.twists,
                        fresh=fresh)
            if want_clasp:
                e = pool[cursor % len(pool)] if not want_twists else \
                    pool[cursor]
                _whitehead_clasp(crossings, boundary, *lanes[e],
                                 sign=spec.clasp_sign, fresh=fresh)
        if want_clasp:
            for _ in range(d.free_loops):
                a, m1, m2, b = fresh(), fresh(), fresh(), fresh()
                if spec.clasp_sign > 0:
                    crossings.append((a, a, m2, m1))
                    crossings.append((m1, m2, b, b))
                else:
                    crossings.append((a, m2, m1, a))
                    crossings.append((m2, b, b, m1))
                free_loops -= 2

    out = Diagram(tuple(crossings), free_loops, tuple(boundary), None)
    bad = validate(out)
    if bad:
        raise RotorError("satellite assembly produced an invalid diagram: "
                         + bad[0])
    return out


# ---------------------------------------------------------------------------
# random generators
# ---------------------------------------------------------------------------


def random_fundamental(k: int, *, budget: int, rng: random.Random,
                       oriented: bool = False,
                       alternating: bool = False) -> Tangle:
    """A dressed trivial sector: the fundamental domain of an arbitrary
    rotor, with up to ``budget`` crossings from kink, poke, and clasp
    insertions.

    With ``alternating`` the oriented sector's rim alternates in/out, the
    one io pattern (up to reversal) that stays compatible with the default
    diameter flip for every type ``k``.
    """
    t = trivial_fundamental(k)
    if oriented:
        # Strand A_t occupies boundary positions (t, 3k + k-1-t); B_t
        # occupies (k+t, 2k + k-1-t).  Interface continuity forces the B
        # directions once the A directions are chosen.
        if alternating:
            phase = rng.randrange(2)
            a_bits = [(phase + t_idx) % 2 for t_idx in range(k)]
        else:
            a_bits = [rng.randrange(2) for _ in range(k)]
        dir_of = {}
        for t_idx in range(k):
            dir_of[t_idx] = 1 if a_bits[t_idx] else -1          # A_t
            dir_of[k + (k - 1 - t_idx)] = -1 if a_bits[t_idx] else 1
        walk_order = []
        for strand in strands(t):
            pos = strand[0][1][2]
            walk_order.append(dir_of[pos])
        t = orient(t, walk_order)
    return _dress(t, budget, rng, kinds=("r1", "r2", "clasp"))


def random_rotor(n: int, k: int, *, budget: int, rng: random.Random,
                 oriented: bool = False,
                 alternating: bool = False) -> Tangle:
    """A rotor assembled from a random fundamental domain (per-sector
    crossing budget ``budget``)."""
    f = random_fundamental(k, budget=budget, rng=rng, oriented=oriented,
                           alternating=alternating)
    return build_rotor(RotorSpec(n, k, f))


def random_stator(m: int, *, budget: int, rng: random.Random,
                  io: Sequence[str] | None = None) -> Tangle:
    """An arbitrary stator: a random planar matching of the ``m`` boundary
    points dressed with up to ``budget`` crossings.  With ``io`` given the
    stator is oriented to realize that in/out pattern."""
    if m < 2 or m % 2:
        raise RotorError("stator boundary size must be even and positive")
    if io is not None:
        t = _oriented_matching(tuple(io), rng)
        if len(io) != m:
            raise RotorError("io pattern length must match m")
        return _dress(t, budget, rng, kinds=("r1", "r2", "clasp"))
    steps = [1] * (m // 2) + [-1] * (m // 2)
    rng.shuffle(steps)
    # rotate to a balanced (Dyck) start
    total, low, low_at = 0, 1, 0
    for i, s in enumerate(steps):
        total += s
        if total < low:
            low, low_at = total, i + 1
    steps = steps[low_at:] + steps[:low_at]
    boundary = [0] * m
    stack = []
    num = 0
    order = list(range(low_at, m)) + list(range(low_at))
    for idx, s in zip(order, steps):
        if s > 0:
            stack.append(idx)
        else:
            p = stack.pop()
            num += 1
            boundary[p] = boundary[idx] = num
    # renumber by first appearance for a canonical look
    seen: dict[int, int] = {}
    for p in range(m):
        seen.setdefault(boundary[p], len(seen) + 1)
    t = tangle([], [seen[b] for b in boundary])
    return _dress(t, budget, rng, kinds=("r1", "r2", "clasp"))


def build_stator(spec: StatorSpec, *,
                 io: Sequence[str] | None = None) -> Tangle:
    """Build the stator described by ``spec`` (see :class:`StatorSpec`)."""
    rng = random.Random(spec.seed)
    if spec.kind == "arbitrary":
        return random_stator(spec.m, budget=spec.budget, rng=rng, io=io)
    if spec.kind == "rotor":
        if spec.n is None or spec.k is None:
            raise RotorError("rotor-shaped stators need n and k")
        if spec.m != 2 * spec.n * spec.k:
            raise RotorError("stator size m must equal 2nk")
        if io is not None:
            raise RotorError("io constraints are not supported for "
                             "rotor-shaped stators")
        return random_rotor(spec.n, spec.k, budget=spec.budget, rng=rng)
    if spec.kind == "matched":
        t, _ = build_matched_stator(spec.m, budget=spec.budget,
                                    seed=spec.seed, io=io)
        return t
    raise RotorError(f"unknown stator kind {spec.kind!r}")
