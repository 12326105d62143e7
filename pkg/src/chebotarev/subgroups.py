"""Subgroup enumeration, maximal classes, Frattini subgroup, minimal generators.

Enumeration is exhaustive (every subgroup exactly once) by cyclic
extension: start from all cyclic subgroups and repeatedly extend by one
element-closure, deduplicating by bitset. This is exact and fast enough
at desk scale; the default cap refuses groups above order 2000.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import OrderCapError, TrivialGroupError
from .perm import PermGroup, Subgroup, conjugacy_classes

DEFAULT_SUBGROUP_CAP = 2000


def all_subgroups(G: PermGroup, *, cap: int = DEFAULT_SUBGROUP_CAP) -> list[Subgroup]:
    """Every subgroup of G exactly once, sorted by (order, bitset).

    Includes the trivial and the full subgroup. Results are cached on G.
    """
    if G.order > cap:
        raise OrderCapError(
            f"subgroup enumeration capped at order {cap}, group has {G.order}"
        )
    cached = G._cache.get("all_subgroups")
    if cached is not None:
        return cached
    G._ensure_table()
    seen: dict[int, tuple[int, ...]] = {1: ()}
    queue: list[int] = []
    for x in range(1, G.order):
        bits = G.closure_bits((x,))
        if bits not in seen:
            seen[bits] = (x,)
            queue.append(bits)
    full = G.full_bits
    pos = 0
    while pos < len(queue):
        hbits = queue[pos]
        pos += 1
        if hbits == full:
            continue
        wits = seen[hbits]
        for g in range(1, G.order):
            if (hbits >> g) & 1:
                continue
            kbits = G.closure_bits(wits + (g,))
            if kbits not in seen:
                seen[kbits] = wits + (g,)
                queue.append(kbits)
    subs = [Subgroup(G, bits, wits) for bits, wits in seen.items()]
    subs.sort(key=lambda s: (s.order, s.bits))
    G._cache["all_subgroups"] = subs
    return subs


@dataclass(frozen=True)
class MaximalClassData:
    """One conjugacy class of maximal subgroups.

    ``union_bits`` is the union of all G-conjugates of the representative
    (always a proper subset of G) and ``core_bits`` their intersection.
    """

    representative: Subgroup
    class_size: int
    union_bits: int
    core_bits: int


def maximal_classes(G: PermGroup) -> list[MaximalClassData]:
    """Conjugacy classes of maximal subgroups, sorted by (order, bitset)."""
    cached = G._cache.get("maximal_classes")
    if cached is not None:
        return cached
    if G.order == 1:
        raise TrivialGroupError("the trivial group has no maximal subgroups")
    subs = all_subgroups(G)
    proper = [s for s in subs if s.order < G.order]
    proper_bits = [s.bits for s in proper]
    maximal = [
        s
        for s in proper
        if not any(
            s.bits != b and s.bits & ~b == 0 for b in proper_bits
        )
    ]
    gens = G._bfs_gen_indices
    assigned: set[int] = set()
    classes: list[MaximalClassData] = []
    by_bits = {s.bits: s for s in maximal}
    for s in maximal:
        if s.bits in assigned:
            continue
        orbit = {s.bits}
        frontier = [s.bits]
        while frontier:
            b = frontier.pop()
            for g in gens:
                c = G.conj_bits(b, g)
                if c not in orbit:
                    orbit.add(c)
                    frontier.append(c)
        assigned |= orbit
        union = 0
        core = G.full_bits
        for b in orbit:
            union |= b
            core &= b
        rep_bits = min(orbit)
        rep = by_bits.get(rep_bits) or Subgroup(G, rep_bits)
        assert union != G.full_bits, "conjugate-union of a maximal covers G"
        classes.append(
            MaximalClassData(
                representative=rep,
                class_size=len(orbit),
                union_bits=union,
                core_bits=core,
            )
        )
    classes.sort(key=lambda c: (c.representative.order, c.representative.bits))
    G._cache["maximal_classes"] = classes
    return classes


def frattini(G: PermGroup) -> Subgroup:
    """Intersection of all maximal subgroups (trivial subgroup for |G|=1)."""
    if G.order == 1:
        return Subgroup.trivial(G)
    bits = G.full_bits
    for mc in maximal_classes(G):
        bits &= mc.core_bits
    return Subgroup(G, bits)


def minimal_normal_subgroups(G: PermGroup) -> list[Subgroup]:
    """All minimal elements of the set of nontrivial normal subgroups.

    Uses normal closures of single elements: every minimal normal
    subgroup is the normal closure of any of its nontrivial elements, so
    the minimal members of that candidate family are exactly the minimal
    normal subgroups. Avoids full lattice enumeration.
    """
    if G.order == 1:
        raise TrivialGroupError("the trivial group has no minimal normal subgroups")
    cached = G._cache.get("minimal_normals")
    if cached is not None:
        return cached
    closures: set[int] = set()
    for x in range(1, G.order):
        closures.add(G.normal_closure_bits((x,)))
    minimal = [
        b
        for b in closures
        if not any(c != b and c & ~b == 0 for c in closures)
    ]
    out = [Subgroup(G, b) for b in sorted(minimal, key=lambda b: (b.bit_count(), b))]
    G._cache["minimal_normals"] = out
    return out


def minimal_generating_tuple(G: PermGroup) -> tuple[int, ...]:
    """A lexicographically-first generating tuple of minimal length.

    The first coordinate ranges over conjugacy class representatives only
    (generation is invariant under simultaneous conjugation); later
    coordinates range over all elements outside the running closure.
    """
    cached = G._cache.get("min_gen_tuple")
    if cached is not None:
        return cached
    if G.order == 1:
        G._cache["min_gen_tuple"] = ()
        return ()
    G._ensure_table()
    full = G.full_bits
    table = conjugacy_classes(G)
    reps = [r for r in table.reps if r != 0]

    def search(prefix: tuple[int, ...], bits: int, k: int) -> Optional[tuple[int, ...]]:
        if len(prefix) == k:
            return prefix if bits == full else None
        left_after = k - len(prefix) - 1
        candidates = reps if not prefix else range(1, G.order)
        for g in candidates:
            if (bits >> g) & 1:
                continue
            nbits = G.closure_bits(prefix + (g,))
            # each later proper extension at least doubles the order, so the
            # remaining steps cannot land exactly on |G| from too large a base
            if nbits.bit_count() << left_after > G.order:
                continue
            found = search(prefix + (g,), nbits, k)
            if found is not None:
                return found
        return None

    k = 1
    while True:
        found = search((), 1, k)
        if found is not None:
            G._cache["min_gen_tuple"] = found
            return found
        k += 1


def min_generators(G: PermGroup) -> int:
    """d(G): the smallest k such that some k-tuple generates G (0 if trivial)."""
    return len(minimal_generating_tuple(G))
