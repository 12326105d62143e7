import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chebotarev.errors import BadSectionError, DegreeMismatchError, NotNormalError, OrderCapError
from chebotarev.perm import (
    Permutation,
    Subgroup,
    bits_iter,
    build_group,
    conjugacy_classes,
    is_soluble,
    quotient,
    section_centralizer,
)
from chebotarev.groupspec import alternating_group, cyclic_group, symmetric_group

perm_strategy = st.integers(2, 7).flatmap(
    lambda n: st.permutations(list(range(n))).map(Permutation)
)


def test_identity_and_validation():
    e = Permutation.identity(4)
    assert e.is_identity() and e.degree == 4
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


@given(perm_strategy)
def test_inverse_roundtrip(p):
    assert (p * p.inverse()).is_identity()
    assert (p.inverse() * p).is_identity()


@given(perm_strategy)
def test_cycle_string_roundtrip(p):
    assert Permutation.from_cycle_string(p.cycle_string(), p.degree) == p


@given(perm_strategy, perm_strategy)
def test_composition_degree_guard(a, b):
    if a.degree == b.degree:
        c = a * b
        assert all(c(i) == b(a(i)) for i in range(a.degree))
    else:
        with pytest.raises(DegreeMismatchError):
            a * b


def test_cycle_parsing_variants():
    assert Permutation.from_cycle_string("()", 3).is_identity()
    p = Permutation.from_cycle_string("(1 2 3)(4 5)", 5)
    assert p.images == (1, 2, 0, 4, 3)
    assert Permutation.from_cycle_string("(1,2,3)(4,5)", 5) == p
    with pytest.raises(ValueError):
        Permutation.from_cycle_string("(1 2)(2 3)", 3)  # not disjoint
    with pytest.raises(ValueError):
        Permutation.from_cycle_string("(0 1)", 3)  # 1-based points


def test_build_group_examples():
    assert build_group(1, []).order == 1
    s3 = build_group(3, [Permutation((1, 2, 0)), Permutation((1, 0, 2))])
    assert s3.order == 6
    klein = build_group(
        4, [Permutation((1, 0, 3, 2)), Permutation((2, 3, 0, 1))]
    )
    assert klein.order == 4
    assert all(klein.mult(i, i) == 0 for i in range(4))  # exponent 2


def test_order_cap_and_degree_mismatch():
    with pytest.raises(OrderCapError):
        build_group(5, [Permutation((1, 2, 3, 4, 0))], order_cap=3)
    with pytest.raises(DegreeMismatchError):
        build_group(3, [Permutation((1, 0))])


@pytest.mark.parametrize(
    "spec_order", [("cyclic", 12), ("symmetric", 4), ("dihedral", 9)]
)
def test_closure_exhaustive(spec_order):
    kind, n = spec_order
    from chebotarev.groupspec import dihedral_group

    G = {"cyclic": cyclic_group, "symmetric": symmetric_group, "dihedral": dihedral_group}[
        kind
    ](n)
    assert G.order <= 200
    for i in range(G.order):
        assert G.mult(i, G.inv(i)) == 0
        for j in range(G.order):
            assert 0 <= G.mult(i, j) < G.order
    # associativity spot check through the table
    for i, j, k in itertools.islice(
        itertools.product(range(G.order), repeat=3), 2000
    ):
        assert G.mult(G.mult(i, j), k) == G.mult(i, G.mult(j, k))


def test_element_indexing_deterministic():
    a = symmetric_group(4)
    b = symmetric_group(4)
    assert [p.images for p in a.elements] == [p.images for p in b.elements]


def test_conjugacy_classes_examples():
    s3 = symmetric_group(3)
    t = conjugacy_classes(s3)
    assert sorted(t.sizes) == [1, 2, 3]
    klein = build_group(4, [Permutation((1, 0, 3, 2)), Permutation((2, 3, 0, 1))])
    assert conjugacy_classes(klein).sizes == (1, 1, 1, 1)
    assert conjugacy_classes(build_group(1, [])).n_classes == 1


@pytest.mark.parametrize("spec", ["symmetric 3", "symmetric 4", "cyclic 12", "quaternion8"])
def test_class_equation(spec, group_of):
    G = group_of(spec)
    t = conjugacy_classes(G)
    assert sum(t.sizes) == G.order
    assert all(G.order % s == 0 for s in t.sizes)
    assert t.sizes[t.class_of[0]] == 1
    # each class is closed under conjugation by every generator
    for cid, rep in enumerate(t.reps):
        members = [e for e in range(G.order) if t.class_of[e] == cid]
        for g in G._bfs_gen_indices:
            assert all(t.class_of[G.conj(x, g)] == cid for x in members)
        assert t.class_of[rep] == cid


def test_is_soluble():
    assert is_soluble(symmetric_group(3))
    assert is_soluble(cyclic_group(7))
    assert is_soluble(symmetric_group(4))
    assert not is_soluble(alternating_group(5))
    assert not is_soluble(symmetric_group(5))


def test_quotient_examples(group_of):
    s3 = group_of("symmetric 3")
    a3 = Subgroup(s3, s3.normal_closure_bits([next(
        i for i in range(6) if s3.element_order(i) == 3
    )]))
    Q, epi = quotient(s3, a3)
    assert Q.order == 2

    c4 = group_of("cyclic 4")
    c2 = Subgroup.generated(c4, [c4.mult(1, 1)])
    Q2, _ = quotient(c4, c2)
    assert Q2.order == 2

    klein = group_of("elementary 2 2")
    Q3, epi3 = quotient(klein, Subgroup.trivial(klein))
    assert Q3.order == 4


@pytest.mark.parametrize("spec", ["symmetric 3", "cyclic 6", "dihedral 4", "quaternion8"])
def test_quotient_epimorphism_property(spec, group_of):
    G = group_of(spec)
    for N in _normal_subgroups(G):
        Q, epi = quotient(G, N)
        assert Q.order == G.order // N.order
        for a in range(G.order):
            for b in range(G.order):
                assert epi[G.mult(a, b)] == Q.mult(epi[a], epi[b])


def _normal_subgroups(G):
    from chebotarev.subgroups import all_subgroups

    return [s for s in all_subgroups(G) if s.is_normal()]


def test_quotient_requires_normal(group_of):
    s3 = group_of("symmetric 3")
    c2 = next(
        Subgroup.generated(s3, [i])
        for i in range(1, 6)
        if s3.element_order(i) == 2
    )
    with pytest.raises(NotNormalError):
        quotient(s3, c2)


def test_section_centralizer_examples(group_of):
    c6 = group_of("cyclic 6")
    whole = Subgroup.full(c6)
    triv = Subgroup.trivial(c6)
    assert section_centralizer(c6, whole, triv).order == 6  # abelian: everything central

    s3 = group_of("symmetric 3")
    a3 = next(s for s in _normal_subgroups(s3) if s.order == 3)
    C = section_centralizer(s3, a3, Subgroup.trivial(s3))
    assert C.order == 3 and C.bits == a3.bits

    s4 = group_of("symmetric 4")
    v4 = next(s for s in _normal_subgroups(s4) if s.order == 4)
    C4 = section_centralizer(s4, v4, Subgroup.trivial(s4))
    assert C4.order == 4 and C4.bits == v4.bits


def test_section_centralizer_is_normal_and_contains_y(group_of):
    s4 = group_of("symmetric 4")
    v4 = next(s for s in _normal_subgroups(s4) if s.order == 4)
    C = section_centralizer(s4, v4, Subgroup.trivial(s4))
    assert C.is_normal()
    q8 = group_of("quaternion8")
    center = next(s for s in _normal_subgroups(q8) if s.order == 2)
    klein_sec = next(s for s in _normal_subgroups(q8) if s.order == 4)
    C2 = section_centralizer(q8, klein_sec, center)
    assert C2.is_normal()
    assert center.bits & ~C2.bits == 0  # the centralizer contains Y


def test_section_centralizer_bad_section(group_of):
    s4 = group_of("symmetric 4")
    a4 = next(s for s in _normal_subgroups(s4) if s.order == 12)
    with pytest.raises(BadSectionError):
        # A_4 / 1 is nonabelian
        section_centralizer(s4, a4, Subgroup.trivial(s4))
    v4 = next(s for s in _normal_subgroups(s4) if s.order == 4)
    with pytest.raises(BadSectionError):
        # Y not inside X
        section_centralizer(s4, v4, a4)


def test_bits_iter():
    assert list(bits_iter(0b10110)) == [1, 2, 4]
    assert list(bits_iter(0)) == []


def test_subgroup_witnesses_generate(group_of):
    G = group_of("symmetric 4")
    from chebotarev.subgroups import all_subgroups

    for s in all_subgroups(G):
        assert G.closure_bits(s.witnesses) == s.bits
        assert s.order == s.bits.bit_count()
