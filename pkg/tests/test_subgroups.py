import itertools
import random

import pytest

from oracles import brute_subgroup_bits
from chebotarev.errors import OrderCapError, TrivialGroupError
from chebotarev.perm import Subgroup
from chebotarev.subgroups import (
    all_subgroups,
    frattini,
    maximal_classes,
    min_generators,
    minimal_generating_tuple,
    minimal_normal_subgroups,
)


@pytest.mark.parametrize(
    "spec,count",
    [
        ("cyclic 5", 2),
        ("cyclic 7", 2),
        ("symmetric 3", 6),
        ("elementary 2 2", 5),
    ],
)
def test_all_subgroups_counts(spec, count, group_of):
    assert len(all_subgroups(group_of(spec))) == count


@pytest.mark.parametrize("spec", ["symmetric 3", "elementary 2 2", "cyclic 8", "cyclic 12"])
def test_all_subgroups_matches_brute_force(spec, group_of):
    G = group_of(spec)
    got = {s.bits for s in all_subgroups(G)}
    assert got == brute_subgroup_bits(G)


def test_all_subgroups_closed_and_unique(group_of):
    G = group_of("symmetric 4")
    subs = all_subgroups(G)
    assert len({s.bits for s in subs}) == len(subs) == 30
    assert subs[0].order == 1 and subs[-1].order == G.order
    for s in subs:
        assert G.is_subgroup_bits(s.bits)


def test_all_subgroups_cap(group_of):
    with pytest.raises(OrderCapError):
        all_subgroups(group_of("cyclic 30"), cap=10)


def test_maximal_classes_examples(group_of):
    s3 = group_of("symmetric 3")
    classes = maximal_classes(s3)
    by_order = {c.representative.order: c for c in classes}
    assert set(by_order) == {2, 3}
    assert by_order[3].class_size == 1
    assert by_order[3].union_bits.bit_count() == 3
    assert by_order[2].class_size == 3
    assert by_order[2].union_bits.bit_count() == 4

    c4 = group_of("cyclic 4")
    assert len(maximal_classes(c4)) == 1
    assert maximal_classes(c4)[0].representative.order == 2

    klein = group_of("elementary 2 2")
    assert len(maximal_classes(klein)) == 3

    with pytest.raises(TrivialGroupError):
        maximal_classes(group_of("cyclic 1"))


@pytest.mark.parametrize("spec", ["symmetric 4", "dihedral 10", "quaternion8", "cyclic 36"])
def test_maximality_exhaustive(spec, group_of):
    G = group_of(spec)
    subs = all_subgroups(G)
    maximal_bits = {c.representative.bits for c in maximal_classes(G)}
    for c in maximal_classes(G):
        for H in subs:
            if H.bits != c.representative.bits and c.representative.bits & ~H.bits == 0:
                assert H.order == G.order  # nothing strictly between M and G
    # union properness and class coverage
    total = 0
    for c in maximal_classes(G):
        assert c.union_bits != G.full_bits
        assert c.union_bits & c.representative.bits == c.representative.bits
        assert Subgroup(G, c.core_bits).is_normal()
        total += c.class_size
    all_maximal = [
        H
        for H in subs
        if H.order < G.order
        and all(
            K.order == G.order
            for K in subs
            if K.bits != H.bits and H.bits & ~K.bits == 0
        )
    ]
    assert total == len(all_maximal)
    assert maximal_bits <= {H.bits for H in all_maximal}


def test_core_is_intersection_of_class(group_of):
    G = group_of("symmetric 4")
    for c in maximal_classes(G):
        # core contains exactly the elements fixed into every conjugate
        inter = G.full_bits
        seen = {c.representative.bits}
        frontier = [c.representative.bits]
        while frontier:
            b = frontier.pop()
            inter &= b
            for g in G._bfs_gen_indices:
                cb = G.conj_bits(b, g)
                if cb not in seen:
                    seen.add(cb)
                    frontier.append(cb)
        assert inter == c.core_bits
        assert len(seen) == c.class_size


def test_frattini_examples(group_of):
    assert frattini(group_of("cyclic 4")).order == 2
    assert frattini(group_of("elementary 2 2")).order == 1
    assert frattini(group_of("symmetric 3")).order == 1
    assert frattini(group_of("quaternion8")).order == 2
    assert frattini(group_of("cyclic 1")).order == 1


def _brute_non_generators(G, max_subset: int) -> int:
    """Bitset of non-generators: g such that removing it from any
    generating superset still leaves a generating set. Checked over all
    subsets of size <= max_subset (enough when every maximal subgroup of
    the test group needs at most that many generators)."""
    full = G.full_bits
    bits = 0
    for g in range(G.order):
        witness = False
        for r in range(max_subset + 1):
            for combo in itertools.combinations(range(G.order), r):
                if G.closure_bits(combo + (g,)) == full and G.closure_bits(combo) != full:
                    witness = True
                    break
            if witness:
                break
        if not witness:
            bits |= 1 << g
    return bits


@pytest.mark.parametrize("spec", ["cyclic 4", "cyclic 8", "quaternion8", "dihedral 4", "cyclic 12", "symmetric 3"])
def test_frattini_equals_non_generators(spec, group_of):
    G = group_of(spec)
    assert frattini(G).bits == _brute_non_generators(G, 3)
    assert frattini(G).is_normal()


def test_minimal_normals_examples(group_of):
    s3 = group_of("symmetric 3")
    assert [m.order for m in minimal_normal_subgroups(s3)] == [3]
    klein = group_of("elementary 2 2")
    assert [m.order for m in minimal_normal_subgroups(klein)] == [2, 2, 2]
    c6 = group_of("cyclic 6")
    assert sorted(m.order for m in minimal_normal_subgroups(c6)) == [2, 3]
    with pytest.raises(TrivialGroupError):
        minimal_normal_subgroups(group_of("cyclic 1"))


@pytest.mark.parametrize("spec", ["symmetric 4", "dihedral 6", "quaternion8", "cyclic 36"])
def test_minimal_normals_match_lattice_scan(spec, group_of):
    G = group_of(spec)
    normals = [s for s in all_subgroups(G) if s.order > 1 and s.is_normal()]
    minimal = {
        s.bits
        for s in normals
        if not any(t.bits != s.bits and t.bits & ~s.bits == 0 for t in normals)
    }
    assert {m.bits for m in minimal_normal_subgroups(G)} == minimal


@pytest.mark.parametrize(
    "spec,d",
    [
        ("cyclic 6", 1),
        ("cyclic 1", 0),
        ("symmetric 3", 2),
        ("elementary 2 3", 3),
        ("elementary 3 2", 2),
        ("elementary 2 4", 4),
        ("quaternion8", 2),
        ("symmetric 4", 2),
        ("direct_product cyclic 2 cyclic 4", 2),
    ],
)
def test_min_generators(spec, d, group_of):
    G = group_of(spec)
    assert min_generators(G) == d
    tup = minimal_generating_tuple(G)
    assert len(tup) == d
    assert G.closure_bits(tup) == G.full_bits


@pytest.mark.parametrize("spec", ["symmetric 4", "dihedral 9", "cyclic 100", "elementary 2 3", "quaternion8"])
def test_min_generators_random_upper_bound(spec, group_of):
    # a seeded random search must reproduce the exhaustive value
    G = group_of(spec)
    d = min_generators(G)
    rng = random.Random(12345)
    full = G.full_bits
    best = None
    for k in range(1, d + 1):
        for _ in range(400):
            tup = tuple(rng.randrange(G.order) for _ in range(k))
            if G.closure_bits(tup) == full:
                best = k
                break
        if best is not None:
            break
    assert best == d
