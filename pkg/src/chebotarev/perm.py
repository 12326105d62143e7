"""Permutations, finite permutation groups, conjugacy classes, quotients.

Everything downstream assumes a full, deterministically indexed element
table, so groups here are capped at desk scale (default 20 000 elements).
Element indices are assigned by a breadth-first closure from the sorted
generator list; index 0 is always the identity. All types are immutable
after construction (internal memo tables are filled lazily but never
change observable state).
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    BadSectionError,
    DegreeMismatchError,
    NotNormalError,
    OrderCapError,
)

DEFAULT_ORDER_CAP = 20_000

# Full n x n multiplication tables are only materialised below this order;
# larger groups fall back to O(word length) generator-chain multiplication.
_MULT_TABLE_LIMIT = 1500


class Permutation:
    """A bijection on {0, ..., degree-1}, stored as an image tuple.

    Composition is left-to-right: ``(a * b)(x) == b(a(x))``, i.e. points
    are acted on by ``a`` first. This matches the usual right-action
    convention for permutation groups.
    """

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        imgs = tuple(int(x) for x in images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a permutation of 0..{len(imgs) - 1}: {imgs!r}")
        self.images = imgs

    @classmethod
    def _raw(cls, images: tuple[int, ...]) -> "Permutation":
        # Internal fast path: caller guarantees images is a valid bijection.
        p = object.__new__(cls)
        p.images = images
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 1:
            raise ValueError("degree must be >= 1")
        return cls._raw(tuple(range(degree)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(other.images) != len(self.images):
            raise DegreeMismatchError(
                f"degree {len(self.images)} vs {len(other.images)}"
            )
        o = other.images
        return Permutation._raw(tuple(o[x] for x in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation._raw(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each rotated to start at its smallest point."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        """1-based cycle notation; the identity renders as ``()``."""
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in cycs)

    @classmethod
    def from_cycle_string(cls, text: str, degree: Optional[int] = None) -> "Permutation":
        """Parse 1-based cycle notation such as ``(1 2 3)(4 5)`` or ``()``.

        Points may be separated by spaces or commas. If ``degree`` is not
        given, the largest point mentioned determines it (minimum 1).
        """
        text = text.strip()
        if not re.fullmatch(r"(\(\s*[\d\s,]*\))+", text):
            raise ValueError(f"bad cycle notation: {text!r}")
        chunks = re.findall(r"\(([^)]*)\)", text)
        cycles: list[list[int]] = []
        maxpt = 0
        for chunk in chunks:
            pts = [int(t) for t in re.split(r"[,\s]+", chunk.strip()) if t]
            if not pts:
                continue
            if any(p < 1 for p in pts):
                raise ValueError("cycle points are 1-based and must be >= 1")
            cycles.append([p - 1 for p in pts])
            maxpt = max(maxpt, max(pts))
        deg = degree if degree is not None else max(maxpt, 1)
        if maxpt > deg:
            raise ValueError(f"point {maxpt} exceeds degree {deg}")
        images = list(range(deg))
        touched: set[int] = set()
        for cyc in cycles:
            if len(set(cyc)) != len(cyc) or touched & set(cyc):
                raise ValueError(f"cycles are not disjoint in {text!r}")
            touched |= set(cyc)
            for i, p in enumerate(cyc):
                images[p] = cyc[(i + 1) % len(cyc)]
        return cls._raw(tuple(images))

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()!r})"


def bits_iter(bits: int) -> Iterator[int]:
    """Yield the set bit positions of an int bitmask in ascending order."""
    while bits:
        lsb = bits & -bits
        yield lsb.bit_length() - 1
        bits ^= lsb


class PermGroup:
    """A finite permutation group with a full element table.

    The table is the closure of the generators under composition,
    discovered breadth-first from the sorted generator list, so element
    indices are reproducible across runs. ``generators`` keeps the
    sequence exactly as given (including duplicates or identities), which
    downstream module-action code relies on for positional alignment.
    """

    def __init__(
        self,
        degree: int,
        generators: Sequence[Permutation],
        *,
        order_cap: int = DEFAULT_ORDER_CAP,
    ):
        if degree < 1:
            raise ValueError("degree must be >= 1")
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatchError(
                    f"generator degree {g.degree} != group degree {degree}"
                )
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(generators)

        bfs_gens = sorted(
            {g.images for g in generators if not g.is_identity()}
        )
        self._bfs_gens: tuple[Permutation, ...] = tuple(
            Permutation._raw(im) for im in bfs_gens
        )

        ident = Permutation.identity(degree)
        elements: list[Permutation] = [ident]
        index: dict[tuple[int, ...], int] = {ident.images: 0}
        parent = [-1]
        via = [-1]
        gen_right: list[list[int]] = []
        pos = 0
        while pos < len(elements):
            x = elements[pos].images
            row = []
            for k, g in enumerate(self._bfs_gens):
                gim = g.images
                y = tuple(gim[v] for v in x)
                idx = index.get(y)
                if idx is None:
                    if len(elements) >= order_cap:
                        raise OrderCapError(
                            f"group order exceeds cap {order_cap}"
                        )
                    idx = len(elements)
                    index[y] = idx
                    elements.append(Permutation._raw(y))
                    parent.append(pos)
                    via.append(k)
                row.append(idx)
            gen_right.append(row)
            pos += 1

        self.elements: tuple[Permutation, ...] = tuple(elements)
        self.index: dict[tuple[int, ...], int] = index
        self.order: int = len(elements)
        self.identity_index: int = 0
        self._parent = parent
        self._via = via
        self._gen_right = gen_right
        self._bfs_gen_indices: tuple[int, ...] = (
            tuple(gen_right[0]) if self._bfs_gens else ()
        )
        self.generator_indices: tuple[int, ...] = tuple(
            index[g.images] for g in self.generators
        )
        inv = [0] * self.order
        for i, p in enumerate(elements):
            inv[i] = index[p.inverse().images]
        self._inv = inv
        self._mult_table: Optional[list[list[int]]] = None
        self._cache: dict = {}

    # -- multiplication -------------------------------------------------

    def _ensure_table(self) -> Optional[list[list[int]]]:
        if self._mult_table is None and self.order <= _MULT_TABLE_LIMIT:
            n = self.order
            parent, via, gen_right = self._parent, self._via, self._gen_right
            col0 = list(range(n))
            table = [col0[:] for _ in range(n)]
            for i in range(n):
                table[i][0] = i
            # elements[j] = elements[parent[j]] * gen[via[j]], so rows fill
            # left to right in BFS order with O(1) work per entry.
            for j in range(1, n):
                pj, gj = parent[j], via[j]
                for i in range(n):
                    table[i][j] = gen_right[table[i][pj]][gj]
            self._mult_table = table
        return self._mult_table

    def mult(self, i: int, j: int) -> int:
        """Index of ``elements[i] * elements[j]``."""
        t = self._mult_table
        if t is None:
            t = self._ensure_table()
        if t is not None:
            return t[i][j]
        word = []
        k = j
        while k != 0:
            word.append(self._via[k])
            k = self._parent[k]
        acc = i
        for g in reversed(word):
            acc = self._gen_right[acc][g]
        return acc

    def inv(self, i: int) -> int:
        return self._inv[i]

    def conj(self, i: int, g: int) -> int:
        """Index of ``g^-1 * elements[i] * g``."""
        return self.mult(self.mult(self._inv[g], i), g)

    def commutator(self, i: int, j: int) -> int:
        """Index of ``i^-1 j^-1 i j``."""
        return self.mult(self.mult(self._inv[i], self._inv[j]), self.mult(i, j))

    def element_order(self, i: int) -> int:
        k = 1
        x = i
        while x != 0:
            x = self.mult(x, i)
            k += 1
        return k

    # -- subgroup machinery ---------------------------------------------

    def closure_bits(self, seeds: Iterable[int]) -> int:
        """Bitmask of the subgroup generated by the given element indices."""
        self._ensure_table()
        seed_list = sorted({int(s) for s in seeds} - {0})
        bits = 1
        stack = []
        for s in seed_list:
            if not (bits >> s) & 1:
                bits |= 1 << s
                stack.append(s)
        mult = self.mult
        while stack:
            x = stack.pop()
            for s in seed_list:
                y = mult(x, s)
                if not (bits >> y) & 1:
                    bits |= 1 << y
                    stack.append(y)
        return bits

    def normal_closure_bits(self, seeds: Iterable[int]) -> int:
        """Bitmask of the smallest normal subgroup containing the seeds."""
        gens = self._bfs_gen_indices
        seed_list = sorted({int(s) for s in seeds} - {0})
        bits = self.closure_bits(seed_list)
        changed = True
        while changed:
            changed = False
            for x in list(bits_iter(bits)):
                for g in gens:
                    y = self.conj(x, g)
                    if not (bits >> y) & 1:
                        seed_list.append(y)
                        bits = self.closure_bits(seed_list)
                        changed = True
        return bits

    def witnesses_for_bits(self, bits: int) -> tuple[int, ...]:
        """A small generating sequence for a subgroup given as a bitmask."""
        ws: list[int] = []
        cl = 1
        for i in bits_iter(bits):
            if not (cl >> i) & 1:
                ws.append(i)
                cl = self.closure_bits(ws)
                if cl == bits:
                    break
        return tuple(ws)

    def conj_bits(self, bits: int, g: int) -> int:
        out = 0
        for i in bits_iter(bits):
            out |= 1 << self.conj(i, g)
        return out

    def is_subgroup_bits(self, bits: int) -> bool:
        if not bits & 1:
            return False
        members = list(bits_iter(bits))
        return all(
            (bits >> self.mult(a, b)) & 1 for a in members for b in members
        )

    @property
    def full_bits(self) -> int:
        return (1 << self.order) - 1

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order})"


class Subgroup:
    """A subgroup stored as an element bitset over the parent's table."""

    __slots__ = ("group", "bits", "witnesses")

    def __init__(
        self,
        group: PermGroup,
        bits: int,
        witnesses: Optional[tuple[int, ...]] = None,
    ):
        self.group = group
        self.bits = int(bits)
        if witnesses is None:
            witnesses = group.witnesses_for_bits(self.bits)
        self.witnesses = tuple(witnesses)

    @classmethod
    def generated(cls, group: PermGroup, seeds: Iterable[int]) -> "Subgroup":
        bits = group.closure_bits(tuple(seeds))
        return cls(group, bits)

    @classmethod
    def trivial(cls, group: PermGroup) -> "Subgroup":
        return cls(group, 1, ())

    @classmethod
    def full(cls, group: PermGroup) -> "Subgroup":
        return cls(group, group.full_bits, group._bfs_gen_indices)

    @property
    def order(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, idx: int) -> bool:
        return bool((self.bits >> idx) & 1)

    def members(self) -> Iterator[int]:
        return bits_iter(self.bits)

    def contains_subgroup(self, other: "Subgroup") -> bool:
        return other.bits & ~self.bits == 0

    def is_normal(self) -> bool:
        g = self.group
        return all(g.conj_bits(self.bits, x) == self.bits for x in g._bfs_gen_indices)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subgroup)
            and other.group is self.group
            and other.bits == self.bits
        )

    def __hash__(self) -> int:
        return hash((id(self.group), self.bits))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.group!r})"


class ConjClassTable:
    """Partition of a group's elements into conjugacy classes."""

    __slots__ = ("class_of", "reps", "sizes")

    def __init__(self, class_of: Sequence[int], reps: Sequence[int], sizes: Sequence[int]):
        self.class_of = tuple(class_of)
        self.reps = tuple(reps)
        self.sizes = tuple(sizes)

    @property
    def n_classes(self) -> int:
        return len(self.reps)


def build_group(
    degree: int,
    generators: Sequence[Permutation],
    *,
    order_cap: int = DEFAULT_ORDER_CAP,
) -> PermGroup:
    """Construct a PermGroup with a full element table (BFS closure)."""
    return PermGroup(degree, generators, order_cap=order_cap)


def conjugacy_classes(G: PermGroup) -> ConjClassTable:
    """Conjugacy classes via orbits of the conjugation action by generators."""
    cached = G._cache.get("conjugacy_classes")
    if cached is not None:
        return cached
    n = G.order
    class_of = [-1] * n
    reps: list[int] = []
    sizes: list[int] = []
    gens = G._bfs_gen_indices
    for i in range(n):
        if class_of[i] >= 0:
            continue
        cid = len(reps)
        reps.append(i)
        orbit = [i]
        class_of[i] = cid
        pos = 0
        while pos < len(orbit):
            x = orbit[pos]
            pos += 1
            for g in gens:
                y = G.conj(x, g)
                if class_of[y] < 0:
                    class_of[y] = cid
                    orbit.append(y)
        sizes.append(len(orbit))
    table = ConjClassTable(class_of, reps, sizes)
    G._cache["conjugacy_classes"] = table
    return table


def derived_series_bits(G: PermGroup) -> list[int]:
    """Descending derived series as bitmasks, ending at its stable term."""
    series = [G.full_bits]
    witnesses = list(G._bfs_gen_indices)
    while True:
        comms = {
            G.commutator(a, b) for a in witnesses for b in witnesses
        } - {0}
        if not comms:
            series.append(1)
            break
        nxt = G.normal_closure_bits(comms)
        if nxt == series[-1]:
            break
        series.append(nxt)
        if nxt == 1:
            break
        witnesses = list(G.witnesses_for_bits(nxt))
    return series


def is_soluble(G: PermGroup) -> bool:
    """True iff the derived series reaches the trivial subgroup."""
    cached = G._cache.get("is_soluble")
    if cached is None:
        cached = derived_series_bits(G)[-1] == 1
        G._cache["is_soluble"] = cached
    return cached


def quotient(G: PermGroup, N: Subgroup) -> tuple[PermGroup, tuple[int, ...]]:
    """The action of G on the right cosets of a normal subgroup N.

    Returns ``(Q, epi)`` where Q is the image permutation group (its
    generators are the images of G's generators, in the same order) and
    ``epi[i]`` is the index in Q of the image of G's element ``i``.
    """
    if N.group is not G:
        raise ValueError("subgroup belongs to a different group")
    if not N.is_normal():
        raise NotNormalError("quotient requires a normal subgroup")
    n = G.order
    cid = [-1] * n
    reps: list[int] = []
    for i in range(n):
        if cid[i] >= 0:
            continue
        c = len(reps)
        reps.append(i)
        for m in N.members():
            cid[G.mult(m, i)] = c
    num = len(reps)
    assert num * N.order == n

    def coset_perm(x: int) -> tuple[int, ...]:
        return tuple(cid[G.mult(r, x)] for r in reps)

    gen_perms = [Permutation._raw(coset_perm(gi)) for gi in G.generator_indices]
    Q = PermGroup(num, gen_perms)
    assert Q.order == num, "coset action must be regular for a normal subgroup"
    epi = tuple(Q.index[coset_perm(i)] for i in range(n))
    return Q, epi


def section_centralizer(G: PermGroup, X: Subgroup, Y: Subgroup) -> Subgroup:
    """The subgroup {g : [g, x] in Y for all x in X} for an abelian section X/Y.

    Requires Y <= X with both normal in G. Checking commutators against
    the witnesses of X suffices because Y is normal.
    """
    if X.group is not G or Y.group is not G:
        raise ValueError("subgroups belong to a different group")
    if Y.bits & ~X.bits:
        raise BadSectionError("Y is not contained in X")
    if not X.is_normal() or not Y.is_normal():
        raise BadSectionError("X and Y must both be normal in G")
    xw = X.witnesses
    for a in xw:
        for b in xw:
            if not (Y.bits >> G.commutator(a, b)) & 1:
                raise BadSectionError("section X/Y is not abelian")
    bits = 0
    ybits = Y.bits
    for g in range(G.order):
        if all((ybits >> G.commutator(g, x)) & 1 for x in xw):
            bits |= 1 << g
    return Subgroup(G, bits)
