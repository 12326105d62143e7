"""Group constructors and the line-oriented group specification grammar.

Spec syntax (tokens are space separated; permutation cycles may contain
spaces inside their parentheses, matrices must not contain spaces):

    cyclic N
    elementary P D
    dihedral N                      (order 2N, N >= 3)
    symmetric N
    alternating N
    quaternion8
    direct_product SPEC SPEC...
    affine P NRAW [MAT...] [power DELTA]
    perm DEGREE CYCLES...

``affine`` builds the semidirect product of DELTA diagonal copies of
F_p^NRAW with the matrix group generated by the listed invertible
matrices (no matrices gives the plain translation group, i.e. the
regular representation of an elementary abelian group), acting on the
p^(NRAW*DELTA) vectors. Matrices are JSON row lists like
``[[0,1],[1,1]]``. Permutations use 1-based cycle notation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .crowns import mat_rank
from .errors import NotPrimeError, ParseError, SingularMatrixError
from .perm import DEFAULT_ORDER_CAP, PermGroup, Permutation


def _check_prime(p: int) -> None:
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise NotPrimeError(f"{p} is not prime")


def cyclic_group(n: int, *, order_cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    if n < 1:
        raise ValueError("cyclic order must be >= 1")
    if n == 1:
        return PermGroup(1, [], order_cap=order_cap)
    images = tuple((i + 1) % n for i in range(n))
    return PermGroup(n, [Permutation(images)], order_cap=order_cap)


def direct_product(
    groups: list[PermGroup], *, order_cap: int = DEFAULT_ORDER_CAP
) -> PermGroup:
    """Product acting on the disjoint union of the factors' points."""
    if not groups:
        raise ValueError("direct product needs at least one factor")
    degree = sum(g.degree for g in groups)
    gens: list[Permutation] = []
    offset = 0
    for g in groups:
        for p in g.generators:
            images = list(range(degree))
            for pt, im in enumerate(p.images):
                images[offset + pt] = offset + im
            gens.append(Permutation(tuple(images)))
        offset += g.degree
    return PermGroup(degree, gens, order_cap=order_cap)


def elementary_abelian_group(
    p: int, d: int, *, order_cap: int = DEFAULT_ORDER_CAP
) -> PermGroup:
    _check_prime(p)
    if d < 1:
        raise ValueError("rank must be >= 1")
    return direct_product([cyclic_group(p) for _ in range(d)], order_cap=order_cap)


def dihedral_group(n: int, *, order_cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    if n < 3:
        raise ValueError("dihedral parameter must be >= 3 (order 2n)")
    rot = Permutation(tuple((i + 1) % n for i in range(n)))
    flip = Permutation(tuple((n - i) % n for i in range(n)))
    return PermGroup(n, [rot, flip], order_cap=order_cap)


def symmetric_group(n: int, *, order_cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    if n < 1:
        raise ValueError("symmetric degree must be >= 1")
    if n == 1:
        return PermGroup(1, [], order_cap=order_cap)
    gens = [Permutation((1, 0) + tuple(range(2, n)))]
    if n >= 3:
        gens.append(Permutation(tuple((i + 1) % n for i in range(n))))
    return PermGroup(n, gens, order_cap=order_cap)


def alternating_group(n: int, *, order_cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    if n < 3:
        raise ValueError("alternating degree must be >= 3")
    three = list(range(n))
    three[0], three[1], three[2] = 1, 2, 0
    gens = [Permutation(tuple(three))]
    if n > 3:
        if n % 2 == 1:
            # an n-cycle is even for odd n
            gens.append(Permutation(tuple((i + 1) % n for i in range(n))))
        else:
            # an (n-1)-cycle fixing the first point is even for even n
            gens.append(
                Permutation(tuple([0] + [1 + (i % (n - 1)) for i in range(1, n)]))
            )
    return PermGroup(n, gens, order_cap=order_cap)


_Q8_TABLE = {
    # symbols 1 -1 i -i j -j k -k, indexed 0..7
    ("i", "i"): ("-", "1"),
    ("i", "j"): ("+", "k"),
    ("i", "k"): ("-", "j"),
    ("j", "i"): ("-", "k"),
    ("j", "j"): ("-", "1"),
    ("j", "k"): ("+", "i"),
    ("k", "i"): ("+", "j"),
    ("k", "j"): ("-", "i"),
    ("k", "k"): ("-", "1"),
}


def quaternion_group(*, order_cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    """The order-8 quaternion group in its regular representation."""
    symbols = [("+", "1"), ("-", "1"), ("+", "i"), ("-", "i"),
               ("+", "j"), ("-", "j"), ("+", "k"), ("-", "k")]
    idx = {s: i for i, s in enumerate(symbols)}

    def q_mult(a, b):
        sa, xa = a
        sb, xb = b
        sign = "+" if sa == sb else "-"
        if xa == "1":
            return (sign, xb)
        if xb == "1":
            return (sign, xa)
        s2, x2 = _Q8_TABLE[(xa, xb)]
        if s2 == "-":
            sign = "+" if sign == "-" else "-"
        return (sign, x2)

    gens = []
    for unit in [("+", "i"), ("+", "j")]:
        gens.append(Permutation(tuple(idx[q_mult(s, unit)] for s in symbols)))
    return PermGroup(8, gens, order_cap=order_cap)


def affine_group(
    p: int,
    n_raw: int,
    matrices: list[list[list[int]]],
    power: int = 1,
    *,
    order_cap: int = DEFAULT_ORDER_CAP,
) -> PermGroup:
    """(F_p^n_raw)^power semidirect the matrix group, acting diagonally.

    Points are the p^(n_raw*power) vectors in mixed-radix order;
    generators are the translations by standard basis vectors together
    with the block-diagonal action of each matrix.
    """
    _check_prime(p)
    if n_raw < 1 or power < 1:
        raise ValueError("dimensions must be >= 1")
    dim = n_raw * power
    npoints = p**dim
    if npoints > order_cap:
        raise ValueError(f"point count {npoints} exceeds cap {order_cap}")
    for M in matrices:
        if len(M) != n_raw or any(len(row) != n_raw for row in M):
            raise ValueError("matrix shape does not match n_raw")
        if mat_rank([list(r) for r in M], p) != n_raw:
            raise SingularMatrixError(f"matrix {M} is singular mod {p}")

    def vec_of(i: int) -> tuple[int, ...]:
        out = []
        for _ in range(dim):
            out.append(i % p)
            i //= p
        return tuple(out)

    def idx_of(v) -> int:
        out = 0
        for x in reversed(v):
            out = out * p + x
        return out

    gens: list[Permutation] = []
    for coord in range(dim):
        step = p**coord
        images = [0] * npoints
        for i in range(npoints):
            digit = (i // step) % p
            images[i] = i + step if digit < p - 1 else i - step * (p - 1)
        gens.append(Permutation(tuple(images)))
    for M in matrices:
        images = [0] * npoints
        for i in range(npoints):
            v = vec_of(i)
            w = []
            for blk in range(power):
                seg = v[blk * n_raw : (blk + 1) * n_raw]
                w.extend(
                    sum(M[r][c] * seg[c] for c in range(n_raw)) % p
                    for r in range(n_raw)
                )
            images[i] = idx_of(w)
        gens.append(Permutation(tuple(images)))
    return PermGroup(npoints, gens, order_cap=order_cap)


# -- grammar ---------------------------------------------------------------


def _tokenize(text: str) -> list[str]:
    """Split a spec line into tokens; adjacent cycle groups form one token."""
    tokens: list[str] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "(":
            start = i
            while i < n and text[i] == "(":
                close = text.find(")", i)
                if close < 0:
                    raise ParseError(f"unbalanced parenthesis in {text!r}")
                i = close + 1
            tokens.append(text[start:i])
            continue
        start = i
        while i < n and not text[i].isspace():
            i += 1
        tokens.append(text[start:i])
    return tokens


def _take_int(tokens: list[str], pos: int, what: str) -> tuple[int, int]:
    if pos >= len(tokens):
        raise ParseError(f"expected {what}, got end of input")
    try:
        return int(tokens[pos]), pos + 1
    except ValueError:
        raise ParseError(f"expected {what}, got {tokens[pos]!r}") from None


@dataclass(frozen=True)
class ParsedGroup:
    group: PermGroup
    label: str


def _parse_spec(
    tokens: list[str], pos: int, order_cap: int
) -> tuple[PermGroup, str, int]:
    if pos >= len(tokens):
        raise ParseError("empty group spec")
    head = tokens[pos]
    pos += 1
    try:
        if head == "cyclic":
            n, pos = _take_int(tokens, pos, "order")
            return cyclic_group(n, order_cap=order_cap), f"cyclic {n}", pos
        if head == "elementary":
            p, pos = _take_int(tokens, pos, "prime")
            d, pos = _take_int(tokens, pos, "rank")
            return (
                elementary_abelian_group(p, d, order_cap=order_cap),
                f"elementary {p} {d}",
                pos,
            )
        if head == "dihedral":
            n, pos = _take_int(tokens, pos, "parameter")
            return dihedral_group(n, order_cap=order_cap), f"dihedral {n}", pos
        if head == "symmetric":
            n, pos = _take_int(tokens, pos, "degree")
            return symmetric_group(n, order_cap=order_cap), f"symmetric {n}", pos
        if head == "alternating":
            n, pos = _take_int(tokens, pos, "degree")
            return alternating_group(n, order_cap=order_cap), f"alternating {n}", pos
        if head == "quaternion8":
            return quaternion_group(order_cap=order_cap), "quaternion8", pos
        if head == "direct_product":
            factors: list[PermGroup] = []
            labels: list[str] = []
            while pos < len(tokens):
                g, lab, pos = _parse_spec(tokens, pos, order_cap)
                factors.append(g)
                labels.append(lab)
            if len(factors) < 2:
                raise ParseError("direct_product needs at least two factors")
            return (
                direct_product(factors, order_cap=order_cap),
                "direct_product " + " ".join(labels),
                pos,
            )
        if head == "affine":
            p, pos = _take_int(tokens, pos, "prime")
            n_raw, pos = _take_int(tokens, pos, "dimension")
            mats: list[list[list[int]]] = []
            while pos < len(tokens) and tokens[pos].startswith("["):
                try:
                    mat = json.loads(tokens[pos])
                except json.JSONDecodeError:
                    raise ParseError(f"bad matrix token {tokens[pos]!r}") from None
                mats.append(mat)
                pos += 1
            power = 1
            if pos < len(tokens) and tokens[pos] == "power":
                power, pos = _take_int(tokens, pos + 1, "power")
            label = f"affine {p} {n_raw}"
            if mats:
                label += " " + " ".join(
                    json.dumps(m, separators=(",", ",")) for m in mats
                )
            if power != 1:
                label += f" power {power}"
            return (
                affine_group(p, n_raw, mats, power, order_cap=order_cap),
                label,
                pos,
            )
        if head == "perm":
            degree, pos = _take_int(tokens, pos, "degree")
            gens: list[Permutation] = []
            while pos < len(tokens) and tokens[pos].startswith("("):
                try:
                    gens.append(Permutation.from_cycle_string(tokens[pos], degree))
                except ValueError as exc:
                    raise ParseError(str(exc)) from None
                pos += 1
            label = f"perm {degree} " + " ".join(g.cycle_string() for g in gens)
            return PermGroup(degree, gens, order_cap=order_cap), label.strip(), pos
    except (ValueError, NotPrimeError, SingularMatrixError):
        raise
    raise ParseError(f"unknown group constructor {head!r}")


def parse_group(text: str, *, order_cap: int = DEFAULT_ORDER_CAP) -> ParsedGroup:
    """Parse one group spec line into a constructed group with its label."""
    tokens = _tokenize(text)
    group, label, pos = _parse_spec(tokens, 0, order_cap)
    if pos != len(tokens):
        raise ParseError(f"trailing tokens: {' '.join(tokens[pos:])!r}")
    return ParsedGroup(group=group, label=label)
