"""Exact knot and link polynomials computed from PD diagrams.

Engines
-------
bracket           Kauffman bracket <d> in Z[A, A^-1], normalized <unknot> = 1.
bracket_oracle    independent full 2^c state-sum evaluation (cross-check).
jones             writhe-normalized bracket (-A^3)^(-w) * <d>.
homfly            P(x, y, z) in the homogeneous skein convention
                  x*P(L+) + y*P(L-) + z*P(L0) = 0 with P(unknot) = 1.
kauffman_lambda   regular-isotopy Kauffman polynomial Lambda(a, x).
kauffman_f        F = a^(-w) * Lambda.
q_poly            Q(x) = Lambda(1, x).
conway_alexander  Conway polynomial nabla(z), specialized from P.

All results are exact Laurent polynomials.  The recursive engines memoize
subdiagram results on canonical keys, and an optional persistent
``InvariantCache`` (installed with ``set_cache``) acts as a second tier.
Caching never changes a result: evaluation is pure, and a cold, warm, or
absent cache produces bit-identical polynomials.
"""

from __future__ import annotations

import json
import os
import threading
import zlib
from collections import Counter
from dataclasses import dataclass

from .diagram import (
    Diagram,
    canonical_key,
    components,
    crossing_sign,
    edge_ends,
    faces,
    kink_curl,
    orientation_map,
    oriented_smooth,
    r1_unkink,
    r1_unkink_sites,
    r2_remove,
    r2_remove_sites,
    self_writhe,
    smooth,
    switch,
    validate,
    writhe,
)
from .poly import LaurentPoly, monomial, one, poly_from_json, poly_to_json, zero

__all__ = [
    "InvariantError",
    "ResourceError",
    "BracketValue",
    "SkeinValue",
    "InvariantCache",
    "set_cache",
    "get_cache",
    "clear_memo",
    "BRACKET_RING",
    "HOMFLY_RING",
    "KAUFFMAN_RING",
    "Q_RING",
    "CONWAY_RING",
    "BRACKET_DELTA",
    "HOMFLY_DELTA",
    "KAUFFMAN_DELTA",
    "NODE_LIMIT",
    "ORACLE_CAP",
    "bracket",
    "bracket_oracle",
    "jones",
    "homfly",
    "kauffman_lambda",
    "kauffman_f",
    "q_poly",
    "conway_alexander",
]


class InvariantError(ValueError):
    """Raised for inputs outside an engine's domain."""


class ResourceError(InvariantError):
    """Raised when an evaluation exceeds its node budget or size cap."""


BRACKET_RING = ("A",)
HOMFLY_RING = ("x", "y", "z")
KAUFFMAN_RING = ("a", "x")
Q_RING = ("x",)
CONWAY_RING = ("z",)

#: <d with an extra split circle> = BRACKET_DELTA * <d>
BRACKET_DELTA = (monomial(-1, {"A": 2}, BRACKET_RING)
                 + monomial(-1, {"A": -2}, BRACKET_RING))
#: P(d with an extra split circle) = HOMFLY_DELTA * P(d); equals -(x+y)/z,
#: forced by the skein relation applied at a curl.
HOMFLY_DELTA = (monomial(-1, {"x": 1, "z": -1}, HOMFLY_RING)
                + monomial(-1, {"y": 1, "z": -1}, HOMFLY_RING))
#: Lambda(d with an extra split circle) = KAUFFMAN_DELTA * Lambda(d);
#: equals (a + a^-1)/x - 1, forced by the four-term relation at a curl.
KAUFFMAN_DELTA = (monomial(1, {"a": 1, "x": -1}, KAUFFMAN_RING)
                  + monomial(1, {"a": -1, "x": -1}, KAUFFMAN_RING)
                  + monomial(-1, {}, KAUFFMAN_RING))

#: Default per-call budget of resolving-tree nodes.
NODE_LIMIT = 10 ** 6
#: Default crossing cap for the brute-force state sum.
ORACLE_CAP = 12


@dataclass(frozen=True)
class BracketValue:
    """Kauffman bracket: a Laurent polynomial in A with <unknot> = 1."""

    poly: LaurentPoly


@dataclass(frozen=True)
class SkeinValue:
    """A skein-relation polynomial (P, Lambda, F, or Q)."""

    poly: LaurentPoly


# ---------------------------------------------------------------------------
# persistent cache
# ---------------------------------------------------------------------------

class InvariantCache:
    """Persistent (tag, key) -> polynomial store over an append-only log.

    Records are JSON lines ``{"crc", "key", "poly", "tag"}``; ``crc`` is the
    CRC-32 of the canonical JSON of the other three fields.  Loading stops at
    the first record that fails to parse or checksum and truncates the file
    there, so a torn tail from an interrupted run never poisons later
    sessions.  ``put`` is an atomic get-or-insert: the first value stored for
    a key wins, and storing a *different* value for the same key is an error.
    With ``path=None`` the cache lives in memory only.
    """

    def __init__(self, path: "str | os.PathLike | None" = None):
        self._map: dict[tuple[str, bytes], LaurentPoly] = {}
        self._lock = threading.Lock()
        self._path = os.fspath(path) if path is not None else None
        self._fh = None
        if self._path is not None and os.path.exists(self._path):
            self._load()

    @property
    def path(self) -> "str | None":
        return self._path

    @staticmethod
    def _payload(tag: str, key_hex: str, poly_obj: dict) -> bytes:
        return json.dumps({"key": key_hex, "poly": poly_obj, "tag": tag},
                          sort_keys=True, separators=(",", ":")).encode()

    def _load(self) -> None:
        with open(self._path, "rb") as fh:
            data = fh.read()
        pos = 0
        good = 0
        while pos < len(data):
            nl = data.find(b"\n", pos)
            if nl < 0:
                break
            try:
                rec = json.loads(data[pos:nl])
                tag, key_hex, poly_obj = rec["tag"], rec["key"], rec["poly"]
                if rec["crc"] != zlib.crc32(self._payload(tag, key_hex, poly_obj)):
                    break
                key = bytes.fromhex(key_hex)
                poly = poly_from_json(poly_obj)
            except (ValueError, KeyError, TypeError):
                break
            self._map[(tag, key)] = poly
            pos = nl + 1
            good = pos
        if good < len(data):
            with open(self._path, "r+b") as fh:
                fh.truncate(good)

    def _append(self, tag: str, key: bytes, poly: LaurentPoly) -> None:
        key_hex = key.hex()
        poly_obj = poly_to_json(poly)
        crc = zlib.crc32(self._payload(tag, key_hex, poly_obj))
        line = json.dumps({"crc": crc, "key": key_hex, "poly": poly_obj,
                           "tag": tag}, sort_keys=True, separators=(",", ":"))
        if self._fh is None:
            self._fh = open(self._path, "ab")
        self._fh.write(line.encode() + b"\n")
        self._fh.flush()

    def get(self, tag: str, key: bytes) -> "LaurentPoly | None":
        with self._lock:
            return self._map.get((tag, key))

    def put(self, tag: str, key: bytes, poly: LaurentPoly) -> LaurentPoly:
        """Store ``poly`` unless the key is already bound; return the winner."""
        with self._lock:
            have = self._map.get((tag, key))
            if have is not None:
                if have != poly:
                    raise InvariantError(
                        f"cache holds a different polynomial for {tag}:{key.hex()}")
                return have
            self._map[(tag, key)] = poly
            if self._path is not None:
                self._append(tag, key, poly)
            return poly

    def __len__(self) -> int:
        with self._lock:
            return len(self._map)

    def close(self) -> None:
        with self._lock:
            if self._fh is not None:
                self._fh.close()
                self._fh = None

    def __enter__(self) -> "InvariantCache":
        return self

    def __exit__(self, *exc) -> bool:
        self.close()
        return False


_CACHE: "InvariantCache | None" = None
_MEMO: dict[str, dict[bytes, LaurentPoly]] = {
    "bracket": {}, "homfly": {}, "kauffman": {},
}


def set_cache(cache: "InvariantCache | None") -> "InvariantCache | None":
    """Install (or, with None, remove) the persistent cache; returns the old one."""
    global _CACHE
    prev, _CACHE = _CACHE, cache
    return prev


def get_cache() -> "InvariantCache | None":
    return _CACHE


def clear_memo() -> None:
    """Drop the in-process memo tables (the persistent cache is untouched)."""
    for table in _MEMO.values():
        table.clear()


def _lookup(tag: str, key: bytes) -> "LaurentPoly | None":
    hit = _MEMO[tag].get(key)
    if hit is None and _CACHE is not None:
        hit = _CACHE.get(tag, key)
        if hit is not None:
            _MEMO[tag][key] = hit
    return hit


def _store(tag: str, key: bytes, poly: LaurentPoly) -> LaurentPoly:
    _MEMO[tag][key] = poly
    if _CACHE is not None:
        poly = _CACHE.put(tag, key, poly)
    return poly


# ---------------------------------------------------------------------------
# shared evaluation machinery
# ---------------------------------------------------------------------------

class _Budget:
    __slots__ = ("left",)

    def __init__(self, limit: int):
        self.left = limit

    def spend(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise ResourceError("resolving tree exceeded the node budget")


def _require_closed(d: Diagram, what: str) -> None:
    if d.is_tangle:
        raise InvariantError(f"{what} is defined for closed diagrams only")
    bad = validate(d)
    if bad:
        raise InvariantError("invalid diagram: " + "; ".join(bad))
    if not d.crossings and not d.free_loops:
        raise InvariantError(f"{what} of the empty diagram is undefined")


def _require_oriented(d: Diagram, what: str) -> None:
    if d.orientation is None:
        raise InvariantError(f"{what} needs an oriented diagram")


def _unoriented(d: Diagram) -> Diagram:
    if d.orientation is None:
        return d
    return Diagram(d.crossings, d.free_loops, d.boundary, None)


def _split(d: Diagram) -> "list[Diagram] | None":
    """Split-union parts of a loop-free closed diagram, or None if connected.

    Parts keep their edge labels and inherit the restriction of the
    orientation; they are ordered by smallest member crossing index.
    """
    n = len(d.crossings)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner: dict[int, int] = {}
    for ci, cr in enumerate(d.crossings):
        for e in cr:
            if e in owner:
                ra, rb = find(owner[e]), find(ci)
                if ra != rb:
                    parent[rb] = ra
            else:
                owner[e] = ci
    groups: dict[int, list[int]] = {}
    for ci in range(n):
        groups.setdefault(find(ci), []).append(ci)
    if len(groups) <= 1:
        return None
    parts = []
    for root in sorted(groups, key=lambda r: groups[r][0]):
        crs = tuple(d.crossings[i] for i in groups[root])
        if d.orientation is None:
            om = None
        else:
            eset = {e for cr in crs for e in cr}
            om = tuple(p for p in d.orientation if p[0] in eset)
        parts.append(Diagram(crs, 0, (), om))
    return parts


def _first_bad(d: Diagram, oriented: bool) -> "int | None":
    """First crossing reached on its under lane, or None (descending).

    Components are traversed in order of their smallest edge, each starting
    on that edge; an oriented diagram is walked with the flow, an unoriented
    one toward the edge's larger end.  A crossing counts as visited the first
    time any walk arrives at it; arriving on slot 0 or 2 means passing under.
    """
    ends = edge_ends(d)
    omap = orientation_map(d) if oriented else None
    seen: set[int] = set()
    for comp in sorted(components(d), key=lambda c: c[0]):
        e0 = comp[0]
        lo, hi = sorted(ends[e0])
        to = hi if omap is None or omap[e0] > 0 else lo
        first = to
        while True:
            _, ci, s = to
            if ci not in seen:
                seen.add(ci)
                if s % 2 == 0:
                    return ci
            out_slot = (s + 2) % 4
            nxt = d.crossings[ci][out_slot]
            pa, pb = ends[nxt]
            to = pb if pa == (0, ci, out_slot) else pa
            if to == first:
                break
    return None


def _pick_crossing(d: Diagram) -> int:
    """Crossing to resolve next.

    Prefer a crossing on a two-dart face between two distinct crossings
    (smoothing it spawns a kink, so the branch collapses quickly); fall back
    to crossing 0.  Deterministic, so resolving trees are reproducible.
    """
    best = None
    for f in faces(d):
        if len(f) != 2:
            continue
        cis = {dart[1] for dart in f}
        if len(cis) == 2:
            cand = min(cis)
            if best is None or cand < best:
                best = cand
    return 0 if best is None else best


# ---------------------------------------------------------------------------
# Kauffman bracket
# ---------------------------------------------------------------------------

def bracket(d: Diagram, *, node_limit: int = NODE_LIMIT) -> BracketValue:
    """Kauffman bracket of a closed diagram, normalized to <unknot> = 1.

    Resolution: <crossing> = A <A-smoothing> + A^-1 <B-smoothing>; a
    crossing-free diagram of m circles is worth delta^(m-1) with
    delta = -A^2 - A^-2.  Orientation data is ignored.  Free loops, kinks,
    removable bigons, and split unions are factored out before any crossing
    is resolved, and subresults are memoized on canonical keys.
    """
    _require_closed(d, "the bracket")
    return BracketValue(_bracket_val(_unoriented(d), _Budget(node_limit)))


def _bracket_val(d: Diagram, budget: _Budget) -> LaurentPoly:
    budget.spend()
    if not d.crossings:
        return BRACKET_DELTA ** (d.free_loops - 1)
    if d.free_loops:
        inner = _bracket_val(Diagram(d.crossings), budget)
        return BRACKET_DELTA ** d.free_loops * inner
    key = canonical_key(d)
    hit = _lookup("bracket", key)
    if hit is not None:
        return hit
    kinks = r1_unkink_sites(d)
    if kinks:
        ci = kinks[0]
        inner = _bracket_val(r1_unkink(d, ci), budget)
        out = inner.mul_monomial(-1, {"A": 3 * kink_curl(d, ci)})
    else:
        bigons = r2_remove_sites(d)
        if bigons:
            out = _bracket_val(r2_remove(d, *bigons[0]), budget)
        else:
            parts = _split(d)
            if parts:
                out = BRACKET_DELTA ** (len(parts) - 1)
                for part in parts:
                    out = out * _bracket_val(part, budget)
            else:
                ci = _pick_crossing(d)
                pa = _bracket_val(smooth(d, ci, "A"), budget)
                pb = _bracket_val(smooth(d, ci, "B"), budget)
                out = pa.mul_monomial(1, {"A": 1}) + pb.mul_monomial(1, {"A": -1})
    return _store("bracket", key, out)


def bracket_oracle(d: Diagram, *, cap: int = ORACLE_CAP) -> BracketValue:
    """Bracket by brute force: the full 2^c state sum.

    Kept independent of ``bracket`` (no smoothing, move, memo, or cache
    machinery): each state joins the four edges of every crossing into two
    pairs and a union-find counts the resulting circles.  The state weight
    is A^(#A - #B) * delta^(circles - 1).  Diagrams above ``cap`` crossings
    are refused.
    """
    _require_closed(d, "the bracket")
    c = len(d.crossings)
    if c > cap:
        raise ResourceError(f"{c} crossings exceed the state-sum cap of {cap}")
    edges = sorted({e for cr in d.crossings for e in cr})
    index = {e: i for i, e in enumerate(edges)}
    n = len(edges)
    tally: Counter = Counter()
    for state in range(1 << c):
        parent = list(range(n))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        a_count = 0
        for ci, (e0, e1, e2, e3) in enumerate(d.crossings):
            if state >> ci & 1:
                a_count += 1
                pairs = ((e0, e3), (e1, e2))
            else:
                pairs = ((e0, e1), (e2, e3))
            for u, v in pairs:
                ru, rv = find(index[u]), find(index[v])
                if ru != rv:
                    parent[rv] = ru
        circles = len({find(i) for i in range(n)}) + d.free_loops
        tally[(2 * a_count - c, circles)] += 1
    out = zero(BRACKET_RING)
    delta_pow: dict[int, LaurentPoly] = {}
    for (exp, circles), count in sorted(tally.items()):
        dp = delta_pow.get(circles)
        if dp is None:
            dp = delta_pow.setdefault(circles, BRACKET_DELTA ** (circles - 1))
        out = out + dp.mul_monomial(count, {"A": exp})
    return BracketValue(out)


def jones(d: Diagram, *, node_limit: int = NODE_LIMIT) -> LaurentPoly:
    """Jones polynomial as a Laurent polynomial in A: (-A^3)^(-w) * <d>."""
    _require_closed(d, "the Jones polynomial")
    _require_oriented(d, "the Jones polynomial")
    w = writhe(d)
    b = bracket(d, node_limit=node_limit).poly
    return b.mul_monomial(-1 if w % 2 else 1, {"A": -3 * w})


# ---------------------------------------------------------------------------
# HOMFLY
# ---------------------------------------------------------------------------

def homfly(d: Diagram, *, node_limit: int = NODE_LIMIT) -> SkeinValue:
    """HOMFLY polynomial P(x, y, z) of an oriented closed diagram.

    Convention: x*P(L+) + y*P(L-) + z*P(L0) = 0 and P(unknot) = 1, so an
    m-component unlink is worth (-(x+y)/z)^(m-1).  Evaluation resolves a
    descending tree: components are based at their smallest edge and
    traversed in that order, and the first crossing first reached on its
    under lane is branched into its switch and its oriented smoothing.
    Descending diagrams are unlinks.  The choice of basepoints only shapes
    the tree, never the value.
    """
    _require_closed(d, "the HOMFLY polynomial")
    _require_oriented(d, "the HOMFLY polynomial")
    return SkeinValue(_homfly_val(d, _Budget(node_limit)))


def _homfly_val(d: Diagram, budget: _Budget) -> LaurentPoly:
    budget.spend()
    if not d.crossings:
        return HOMFLY_DELTA ** (d.free_loops - 1)
    if d.free_loops:
        inner = _homfly_val(Diagram(d.crossings, 0, (), d.orientation), budget)
        return HOMFLY_DELTA ** d.free_loops * inner
    key = canonical_key(d)
    hit = _lookup("homfly", key)
    if hit is not None:
        return hit
    kinks = r1_unkink_sites(d)
    if kinks:
        out = _homfly_val(r1_unkink(d, kinks[0]), budget)
    else:
        bigons = r2_remove_sites(d)
        if bigons:
            out = _homfly_val(r2_remove(d, *bigons[0]), budget)
        else:
            parts = _split(d)
            if parts:
                out = HOMFLY_DELTA ** (len(parts) - 1)
                for part in parts:
                    out = out * _homfly_val(part, budget)
            else:
                ci = _first_bad(d, oriented=True)
                if ci is None:
                    out = HOMFLY_DELTA ** (len(components(d)) - 1)
                else:
                    sw = _homfly_val(switch(d, ci), budget)
                    sm = _homfly_val(oriented_smooth(d, ci), budget)
                    if crossing_sign(d, ci) > 0:
                        # this node is L+: P = -(y*P(L-) + z*P(L0)) / x
                        out = -(sw.mul_monomial(1, {"x": -1, "y": 1})
                                + sm.mul_monomial(1, {"x": -1, "z": 1}))
                    else:
                        # this node is L-: P = -(x*P(L+) + z*P(L0)) / y
                        out = -(sw.mul_monomial(1, {"x": 1, "y": -1})
                                + sm.mul_monomial(1, {"y": -1, "z": 1}))
    return _store("homfly", key, out)


# ---------------------------------------------------------------------------
# Kauffman Lambda / F / Q
# ---------------------------------------------------------------------------

def kauffman_lambda(d: Diagram, *, node_limit: int = NODE_LIMIT) -> SkeinValue:
    """Regular-isotopy Kauffman polynomial Lambda(a, x) of a closed diagram.

    Relations: Lambda(L+) + Lambda(L-) = x * (Lambda(L0) + Lambda(Loo)); a
    positive curl multiplies by a and a negative one by a^-1;
    Lambda(unknot) = 1.  Orientation data is ignored.  The resolving tree
    branches the first crossing first reached on its under lane (components
    based at and walked from their smallest edge) into both smoothings and
    the switch; descending diagrams are worth
    a^self_writhe * delta^(components - 1).
    """
    _require_closed(d, "the Kauffman polynomial")
    return SkeinValue(_kauffman_val(_unoriented(d), _Budget(node_limit)))


def _kauffman_val(d: Diagram, budget: _Budget) -> LaurentPoly:
    budget.spend()
    if not d.crossings:
        return KAUFFMAN_DELTA ** (d.free_loops - 1)
    if d.free_loops:
        inner = _kauffman_val(Diagram(d.crossings), budget)
        return KAUFFMAN_DELTA ** d.free_loops * inner
    key = canonical_key(d)
    hit = _lookup("kauffman", key)
    if hit is not None:
        return hit
    kinks = r1_unkink_sites(d)
    if kinks:
        ci = kinks[0]
        inner = _kauffman_val(r1_unkink(d, ci), budget)
        out = inner.mul_monomial(1, {"a": kink_curl(d, ci)})
    else:
        bigons = r2_remove_sites(d)
        if bigons:
            out = _kauffman_val(r2_remove(d, *bigons[0]), budget)
        else:
            parts = _split(d)
            if parts:
                out = KAUFFMAN_DELTA ** (len(parts) - 1)
                for part in parts:
                    out = out * _kauffman_val(part, budget)
            else:
                ci = _first_bad(d, oriented=False)
                if ci is None:
                    base = KAUFFMAN_DELTA ** (len(components(d)) - 1)
                    out = base.mul_monomial(1, {"a": self_writhe(d)})
                else:
                    pa = _kauffman_val(smooth(d, ci, "A"), budget)
                    pb = _kauffman_val(smooth(d, ci, "B"), budget)
                    sw = _kauffman_val(switch(d, ci), budget)
                    out = (pa + pb).mul_monomial(1, {"x": 1}) - sw
    return _store("kauffman", key, out)


def kauffman_f(d: Diagram, *, node_limit: int = NODE_LIMIT) -> SkeinValue:
    """Writhe-normalized Kauffman polynomial F = a^(-w) * Lambda."""
    _require_closed(d, "the Kauffman F polynomial")
    _require_oriented(d, "the Kauffman F polynomial")
    w = writhe(d)
    lam = kauffman_lambda(d, node_limit=node_limit).poly
    return SkeinValue(lam.mul_monomial(1, {"a": -w}))


def q_poly(d: Diagram, *, node_limit: int = NODE_LIMIT) -> SkeinValue:
    """Q(x) = Lambda(a, x) at a = 1; reads no orientation."""
    lam = kauffman_lambda(d, node_limit=node_limit).poly
    return SkeinValue(_project(lam.substitute("a", one(KAUFFMAN_RING)), Q_RING))


# ---------------------------------------------------------------------------
# Conway / Alexander
# ---------------------------------------------------------------------------

def conway_alexander(d: Diagram, *, node_limit: int = NODE_LIMIT) -> LaurentPoly:
    """Conway polynomial nabla(z) of an oriented closed diagram.

    Specialization of P at x -> 1, y -> -1, z -> -z, which collapses the
    homogeneous relation to nabla(L+) - nabla(L-) = z * nabla(L0) with
    nabla(unknot) = 1; split links come out 0.  The Alexander polynomial is
    nabla at z = t^(1/2) - t^(-1/2).
    """
    p = homfly(d, node_limit=node_limit).poly
    p = p.substitute("x", one(HOMFLY_RING))
    p = p.substitute("y", monomial(-1, {}, HOMFLY_RING))
    p = p.substitute("z", monomial(-1, {"z": 1}, HOMFLY_RING))
    return _project(p, CONWAY_RING)


def _project(p: LaurentPoly, vars: tuple) -> LaurentPoly:
    """Rewrite ``p`` over the sub-ring ``vars``; dropped variables must not occur."""
    for v in vars:
        if v not in p.vars:
            raise InvariantError(f"{v!r} is not a variable of the source ring")
    for i, v in enumerate(p.vars):
        if v in vars:
            continue
        for e, _c in p.terms:
            if e[i]:
                raise InvariantError(f"polynomial still mentions {v!r}")
    idx = [p.vars.index(v) for v in vars]
    return LaurentPoly(vars, {tuple(e[i] for i in idx): c for e, c in p.terms})
