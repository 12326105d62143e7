import math

import pytest

from chebotarev.errors import NotPrimeError, ParseError, SingularMatrixError
from chebotarev.groupspec import (
    affine_group,
    alternating_group,
    cyclic_group,
    dihedral_group,
    direct_product,
    elementary_abelian_group,
    parse_group,
    quaternion_group,
    symmetric_group,
)
from chebotarev.perm import is_soluble


def test_constructor_orders():
    assert cyclic_group(1).order == 1
    assert cyclic_group(12).order == 12
    assert elementary_abelian_group(3, 2).order == 9
    assert dihedral_group(7).order == 14
    assert symmetric_group(4).order == 24
    assert alternating_group(3).order == 3
    assert alternating_group(4).order == 12
    assert alternating_group(5).order == 60
    assert alternating_group(6).order == 360
    assert quaternion_group().order == 8


def test_quaternion_structure():
    q8 = quaternion_group()
    orders = sorted(q8.element_order(i) for i in range(8))
    assert orders == [1, 2, 4, 4, 4, 4, 4, 4]  # one involution


def test_direct_product_orders():
    g = direct_product([cyclic_group(2), symmetric_group(3)])
    assert g.order == 12
    assert is_soluble(g)


def test_elementary_requires_prime():
    with pytest.raises(NotPrimeError):
        elementary_abelian_group(4, 2)


def test_affine_examples():
    a4 = affine_group(2, 2, [[[0, 1], [1, 1]]])
    assert a4.order == 12
    assert affine_group(2, 2, [[[0, 1], [1, 1]]], power=2).order == 48
    # no matrices: the regular representation of an elementary abelian group
    reg = affine_group(3, 1, [], power=2)
    assert reg.order == 9 and reg.degree == 9
    f20 = affine_group(5, 1, [[[2]]])
    assert f20.order == 20


def test_affine_rejects_singular_matrix():
    with pytest.raises(SingularMatrixError):
        affine_group(2, 2, [[[1, 1], [1, 1]]])


def test_parse_examples():
    assert parse_group("cyclic 6").group.order == 6
    assert parse_group("elementary 2 2").group.order == 4
    parsed = parse_group("affine 2 2 [[0,1],[1,1]]")
    assert parsed.group.order == 12
    assert parsed.label == "affine 2 2 [[0,1],[1,1]]"


def test_parse_perm_with_cycles():
    parsed = parse_group("perm 5 (1 2 3)(4 5) (1 2)")
    assert parsed.group.degree == 5
    assert parsed.group.order == 12  # S_3 x C_2 inside S_5
    full = parse_group("perm 5 (1 2 3 4 5) (1 2)")
    assert full.group.order == 120
    single = parse_group("perm 3 (1 2 3)")
    assert single.group.order == 3
    ident = parse_group("perm 4 ()")
    assert ident.group.order == 1


def test_parse_direct_product_nested():
    parsed = parse_group("direct_product cyclic 2 affine 3 1 [[2]]")
    assert parsed.group.order == 12


def test_parse_power_suffix():
    parsed = parse_group("affine 3 1 [[2]] power 2")
    assert parsed.group.order == 18


def test_labels_reparse_to_same_order():
    for spec in [
        "cyclic 9",
        "dihedral 6",
        "affine 2 2 [[0,1],[1,1]] power 2",
        "direct_product cyclic 3 symmetric 3",
        "perm 4 (1 2)(3 4) (1 3)(2 4)",
    ]:
        first = parse_group(spec)
        again = parse_group(first.label)
        assert again.group.order == first.group.order


@pytest.mark.parametrize(
    "bad",
    [
        "",
        "cyclic",
        "cyclic x",
        "unknown 3",
        "direct_product cyclic 2",
        "cyclic 3 extra",
        "affine 2 2 [[0,1],[1,1]] power",
        "perm 3 (1 2",
    ],
)
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_group(bad)


def test_symmetric_factorial_orders():
    for n in range(1, 6):
        assert symmetric_group(n).order == math.factorial(n)
