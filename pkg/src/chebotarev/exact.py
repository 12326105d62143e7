"""Exact Chebotarev invariants via inclusion-exclusion over conjugate-unions.

A tuple of elements fails to invariably generate G exactly when it lies
inside the conjugate-union of some maximal subgroup, so both C(G) and
the invariable-generation probabilities reduce to signed sums over
subsets of those unions. With q_T the fraction of G lying in every union
of a subset T, summing the geometric series per subset gives

    C(G) = sum over nonempty T of (-1)^(|T|+1) / (1 - q_T).

Everything is exact big-rational arithmetic; decimal strings are
rendering only. Subsets are enumerated in Gray-code order with an
incrementally maintained trapped-weight per element-conjugacy-class,
which collapses the 2^r loop to integer work plus one rational term per
distinct trapped weight.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import NotPrimeError, TooManySievesError, TrivialGroupError
from .perm import PermGroup, conjugacy_classes
from .subgroups import MaximalClassData, frattini, maximal_classes

DEFAULT_SIEVE_CAP = 24


def decimal_string(x: Fraction, digits: int = 20) -> str:
    """Round x to the given number of significant digits, as a string."""
    if x == 0:
        return "0"
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        d = decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator)
        return str(d)


@dataclass(frozen=True)
class SieveSystem:
    """Conjugate-union sieves of a nontrivial group, plus class data.

    ``raw_unions`` holds one union bitset per maximal class (aligned with
    the maximal class list); the ``reduced_*`` fields describe the full
    family after deduplication and containment reduction. Signatures map
    each element-conjugacy-class to the mask of reduced unions containing
    it; they are class-constant because unions are conjugation invariant.
    """

    order: int
    class_sizes: tuple[int, ...]
    class_of: tuple[int, ...]
    raw_unions: tuple[int, ...]
    raw_signatures: tuple[int, ...]
    reduced_unions: tuple[int, ...]
    class_signatures: tuple[int, ...]

    @property
    def class_weights(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(s, self.order) for s in self.class_sizes)

    @property
    def sieve_count(self) -> int:
        return len(self.reduced_unions)


@dataclass(frozen=True)
class SieveTerm:
    """Aggregated inclusion-exclusion terms sharing one trapped count.

    ``signed_count`` subsets T have trapped weight m/|G|; their combined
    contribution to C(G) is ``value`` = signed_count * |G| / (|G| - m).
    """

    trapped: int
    signed_count: int
    value: Fraction


@dataclass(frozen=True)
class ChebValue:
    """Exact value of C(G) (or a restricted variant) with its breakdown."""

    exact: Fraction
    decimal: str
    terms: tuple[SieveTerm, ...]
    sieve_count: int
    term_count: int


def _reduce_family(
    unions: Sequence[int], raw_sigs: Sequence[int], indices: Sequence[int]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Dedupe and containment-reduce a subfamily of unions.

    Returns the kept union bitsets and per-class signatures over them.
    Dropping a union contained in another never changes the union event.
    """
    uniq: list[int] = []
    for i in indices:
        if unions[i] not in uniq:
            uniq.append(unions[i])
    kept = [
        u
        for u in uniq
        if not any(v != u and u & ~v == 0 for v in uniq)
    ]
    kept.sort()
    sigs = []
    for sig_raw in raw_sigs:
        s = 0
        for j, u in enumerate(kept):
            src = next(i for i in indices if unions[i] == u)
            if (sig_raw >> src) & 1:
                s |= 1 << j
        sigs.append(s)
    return tuple(kept), tuple(sigs)


def build_sieves(G: PermGroup, maximals: Optional[Sequence[MaximalClassData]] = None) -> SieveSystem:
    """Conjugate-union sieve system of G (one raw union per maximal class)."""
    if G.order == 1:
        raise TrivialGroupError("the trivial group has no sieves")
    if maximals is None:
        maximals = maximal_classes(G)
    table = conjugacy_classes(G)
    raw = tuple(mc.union_bits for mc in maximals)
    raw_sigs = []
    for rep in table.reps:
        s = 0
        for j, u in enumerate(raw):
            if (u >> rep) & 1:
                s |= 1 << j
        raw_sigs.append(s)
    reduced, sigs = _reduce_family(raw, raw_sigs, range(len(raw)))
    full = G.full_bits
    assert all(u != full for u in reduced), "a conjugate-union covers G"
    assert sigs[table.class_of[0]] == (1 << len(reduced)) - 1
    return SieveSystem(
        order=G.order,
        class_sizes=table.sizes,
        class_of=table.class_of,
        raw_unions=raw,
        raw_signatures=tuple(raw_sigs),
        reduced_unions=reduced,
        class_signatures=sigs,
    )


def _signed_trap_counts(
    sizes: Sequence[int],
    sigs: Sequence[int],
    r: int,
    *,
    max_sieves: int = DEFAULT_SIEVE_CAP,
) -> dict[int, int]:
    """Histogram {trapped size m: signed subset count} over nonempty subsets.

    Gray-code enumeration: each step flips one union in or out and only
    touches the classes whose signature lacks that union.
    """
    if r > max_sieves:
        raise TooManySievesError(
            f"{r} reduced sieves exceed the cap of {max_sieves}; fall back to Monte Carlo"
        )
    if r == 0:
        return {}
    nclasses = len(sizes)
    lackers = [
        [c for c in range(nclasses) if not (sigs[c] >> b) & 1] for b in range(r)
    ]
    miss = [0] * nclasses
    trapped = sum(sizes)
    hist: dict[int, int] = {}
    gray = 0
    popcnt = 0
    for step in range(1, 1 << r):
        new_gray = step ^ (step >> 1)
        bit = (gray ^ new_gray).bit_length() - 1
        if new_gray > gray:
            popcnt += 1
            for c in lackers[bit]:
                if miss[c] == 0:
                    trapped -= sizes[c]
                miss[c] += 1
        else:
            popcnt -= 1
            for c in lackers[bit]:
                miss[c] -= 1
                if miss[c] == 0:
                    trapped += sizes[c]
        gray = new_gray
        sign = 1 if popcnt & 1 else -1
        hist[trapped] = hist.get(trapped, 0) + sign
    return {m: c for m, c in hist.items() if c}


def _family_counts(
    S: SieveSystem, mask: Optional[int], max_sieves: int
) -> tuple[dict[int, int], int]:
    """Signed trap counts for the subfamily selected by a raw-index mask."""
    if mask is None:
        reduced, sigs = S.reduced_unions, S.class_signatures
    else:
        indices = [i for i in range(len(S.raw_unions)) if (mask >> i) & 1]
        reduced, sigs = _reduce_family(S.raw_unions, S.raw_signatures, indices)
    r = len(reduced)
    return _signed_trap_counts(S.class_sizes, sigs, r, max_sieves=max_sieves), r


def chebotarev_exact(S: SieveSystem, *, max_sieves: int = DEFAULT_SIEVE_CAP) -> ChebValue:
    """Exact C(G) from the sieve system (2^r subset enumeration, r capped)."""
    counts, r = _family_counts(S, None, max_sieves)
    order = S.order
    terms = tuple(
        SieveTerm(trapped=m, signed_count=c, value=Fraction(c * order, order - m))
        for m, c in sorted(counts.items())
    )
    exact = sum((t.value for t in terms), Fraction(0))
    return ChebValue(
        exact=exact,
        decimal=decimal_string(exact),
        terms=terms,
        sieve_count=r,
        term_count=(1 << r) - 1,
    )


def invariable_gen_prob(
    S: SieveSystem, k: int, *, max_sieves: int = DEFAULT_SIEVE_CAP
) -> Fraction:
    """P_I(G, k): probability that k uniform elements invariably generate."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    counts, _ = _family_counts(S, None, max_sieves)
    order = S.order
    trapped_prob = sum(
        (Fraction(c * m**k, order**k) for m, c in counts.items()),
        Fraction(0),
    )
    return 1 - trapped_prob


def v_property_sum(
    S: SieveSystem, omega_mask: int, *, max_sieves: int = DEFAULT_SIEVE_CAP
) -> Fraction:
    """Sum over k >= 0 of the probability that k elements all lie in some
    union from the selected subfamily (mask over raw maximal classes).

    Equals the same signed sum as ``chebotarev_exact`` restricted to the
    subfamily; containment reduction is redone inside the subfamily.
    Returns 0 for an empty selection.
    """
    if omega_mask == 0:
        return Fraction(0)
    counts, _ = _family_counts(S, omega_mask, max_sieves)
    order = S.order
    return sum(
        (Fraction(c * order, order - m) for m, c in counts.items()),
        Fraction(0),
    )


def elementary_abelian_cheb(p: int, delta: int) -> Fraction:
    """Closed form sum over i < delta of p^delta / (p^delta - p^i)."""
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise NotPrimeError(f"{p} is not prime")
    if delta < 1:
        raise ValueError("delta must be >= 1")
    pd = p**delta
    return sum((Fraction(pd, pd - p**i) for i in range(delta)), Fraction(0))


def frattini_reduce(G: PermGroup) -> PermGroup:
    """The quotient of G by its Frattini subgroup (idempotent; preserves C)."""
    from .perm import quotient

    phi = frattini(G)
    Q, _ = quotient(G, phi)
    return Q


def trivial_cheb_value() -> ChebValue:
    """C of the one-element group: zero, with no sieves."""
    return ChebValue(
        exact=Fraction(0), decimal="0", terms=(), sieve_count=0, term_count=0
    )


def chebotarev_of_group(
    G: PermGroup, *, max_sieves: int = DEFAULT_SIEVE_CAP
) -> ChebValue:
    """Convenience: build sieves and evaluate C(G); 0 for the trivial group."""
    if G.order == 1:
        return trivial_cheb_value()
    return chebotarev_exact(build_sieves(G), max_sieves=max_sieves)
