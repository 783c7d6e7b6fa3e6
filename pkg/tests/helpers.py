"""Shared builders for the test suite: standard diagrams, seeded random
closed diagrams, and random Reidemeister-move application."""

from rotorlab.diagram import (
    Diagram,
    MoveError,
    clasp_insert,
    components,
    diagram,
    edge_set,
    kink_curl,
    orient,
    r1_insert,
    r1_unkink,
    r1_unkink_sites,
    r2_insert,
    r2_remove,
    r2_remove_sites,
    r2_sites,
    r3_apply,
    r3_sites,
    switch,
)

TREFOIL = ((1, 4, 2, 5), (3, 6, 4, 1), (5, 2, 6, 3))
HOPF = ((3, 4, 1, 2), (2, 1, 4, 3))
KINK_POS = ((1, 2, 2, 1),)
KINK_NEG = ((2, 2, 1, 1),)


def trefoil():
    return diagram(TREFOIL)


def hopf():
    return diagram(HOPF)


def unknot():
    return Diagram((), 1)


def mirror(d):
    """Switch every crossing."""
    for ci in range(len(d.crossings)):
        d = switch(d, ci)
    return d


def drop_orientation(d):
    return Diagram(d.crossings, d.free_loops, d.boundary, None)


def disjoint_union(d1, d2):
    """Split union of two closed diagrams, relabeling d2's edges clear of d1's."""
    shift = max(edge_set(d1), default=0) + 1
    cross = d1.crossings + tuple(tuple(e + shift for e in cr)
                                 for cr in d2.crossings)
    return Diagram(cross, d1.free_loops + d2.free_loops)


def rand_closed(rng, n):
    """Random valid closed diagram with exactly n crossings."""
    d = diagram(KINK_POS)
    while len(d.crossings) < n:
        roll = rng.random()
        if roll < 0.25 or len(d.crossings) < 1:
            e = rng.choice(sorted(edge_set(d)))
            d = r1_insert(d, e, rng.choice((1, -1)))
            continue
        if len(d.crossings) + 2 > n:
            e = rng.choice(sorted(edge_set(d)))
            d = r1_insert(d, e, rng.choice((1, -1)))
            continue
        sites = r2_sites(d)
        da, db = sites[rng.randrange(len(sites))]
        try:
            if roll < 0.65:
                d = clasp_insert(d, da, db, rng.choice("ab"))
            else:
                d = r2_insert(d, da, db, rng.choice("ab"))
        except MoveError:
            continue
    return d


def rand_oriented(rng, n):
    """Random oriented closed diagram with n crossings and random flows."""
    d = rand_closed(rng, n)
    dirs = [rng.choice((1, -1)) for _ in components(d)]
    return orient(d, dirs)


def random_move(d, rng):
    """Apply one random Reidemeister move to a closed diagram.

    Returns ``(d2, kind, dw)`` with ``kind`` one of ``"r1+"``, ``"r1-"``,
    ``"r2+"``, ``"r2-"``, ``"r3"`` (+ insertion, - removal) and ``dw`` the
    writhe change (the signed curl for R1 moves, 0 otherwise).  Orientation,
    when present, rides through every move.
    """
    opts = ["r1+"]
    if r1_unkink_sites(d):
        opts.append("r1-")
    if r2_remove_sites(d):
        opts.append("r2-")
    if r3_sites(d):
        opts.append("r3")
    pairs = r2_sites(d)
    if pairs:
        opts.append("r2+")
    kind = rng.choice(opts)
    if kind == "r1+":
        e = rng.choice(sorted(edge_set(d)))
        curl = rng.choice((1, -1))
        return r1_insert(d, e, curl), kind, curl
    if kind == "r1-":
        ci = rng.choice(r1_unkink_sites(d))
        curl = kink_curl(d, ci)
        return r1_unkink(d, ci), kind, -curl
    if kind == "r2-":
        c1, c2 = rng.choice(r2_remove_sites(d))
        return r2_remove(d, c1, c2), kind, 0
    if kind == "r3":
        sites = r3_sites(d)
        return r3_apply(d, sites[rng.randrange(len(sites))]), kind, 0
    da, db = pairs[rng.randrange(len(pairs))]
    try:
        return r2_insert(d, da, db, rng.choice("ab")), kind, 0
    except MoveError:
        e = rng.choice(sorted(edge_set(d)))
        curl = rng.choice((1, -1))
        return r1_insert(d, e, curl), "r1+", curl
