"""Chief series, abelian chief factor modules, crown data, derivations.

An abelian chief factor X/Y of order p^k is treated as an F_p-module with
the conjugation action of G written as k x k matrices over a fixed basis
of coset representatives (discovery order, so runs are reproducible).
All reported quantities (q, n, delta, theta, p_fix, m) are basis
invariant even though the matrices themselves are not.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    BadSectionError,
    NotAbelianFactorError,
    NotChiefFactorError,
    NotIrreducibleError,
    SearchCapError,
)
from .perm import (
    PermGroup,
    Subgroup,
    bits_iter,
    is_soluble,
    quotient,
    section_centralizer,
)
from .subgroups import (
    MaximalClassData,
    all_subgroups,
    minimal_generating_tuple,
    minimal_normal_subgroups,
)

Mat = tuple[tuple[int, ...], ...]

DERIVATION_SEARCH_CAP = 1 << 24


# -- small dense linear algebra over F_p --------------------------------


def mat_identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(A: Mat, B: Mat, p: int) -> Mat:
    n = len(A)
    m = len(B[0])
    k = len(B)
    return tuple(
        tuple(sum(A[i][t] * B[t][j] for t in range(k)) % p for j in range(m))
        for i in range(n)
    )


def mat_vec(A: Mat, v: tuple[int, ...], p: int) -> tuple[int, ...]:
    return tuple(sum(A[i][j] * v[j] for j in range(len(v))) % p for i in range(len(A)))


def mat_rank(rows: Sequence[Sequence[int]], p: int) -> int:
    work = [list(r) for r in rows]
    ncols = len(work[0]) if work else 0
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(work)) if work[r][col] % p), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = pow(work[rank][col], -1, p)
        work[rank] = [(x * inv) % p for x in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col] % p:
                f = work[r][col]
                work[r] = [(a - f * b) % p for a, b in zip(work[r], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


def nullspace(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[tuple[int, ...]]:
    """Basis of {v : rows @ v == 0} over F_p (reduced row echelon form)."""
    work = [list(r) for r in rows if any(x % p for x in r)]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(work)) if work[r][col] % p), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = pow(work[rank][col], -1, p)
        work[rank] = [(x * inv) % p for x in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col] % p:
                f = work[r][col]
                work[r] = [(a - f * b) % p for a, b in zip(work[r], work[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [0] * ncols
        vec[fcol] = 1
        for r, pcol in enumerate(pivots):
            vec[pcol] = (-work[r][fcol]) % p
        basis.append(tuple(vec))
    return basis


def mat_is_invertible(A: Mat, p: int) -> bool:
    return mat_rank(A, p) == len(A)


def _span_elements(basis: list[tuple[int, ...]], p: int) -> list[tuple[int, ...]]:
    vecs = [tuple([0] * len(basis[0]))] if basis else []
    for b in basis:
        ext = []
        for v in vecs:
            cur = v
            for _ in range(p - 1):
                cur = tuple((x + y) % p for x, y in zip(cur, b))
                ext.append(cur)
        vecs.extend(ext)
    return vecs


def _vec_to_mat(v: tuple[int, ...], n: int) -> Mat:
    return tuple(tuple(v[i * n + j] for j in range(n)) for i in range(n))


# -- chief series --------------------------------------------------------


@dataclass(frozen=True)
class ChiefSeries:
    """Descending chain G = N_0 > N_1 > ... > N_r = 1 of normal subgroups."""

    group: PermGroup
    subgroups: tuple[Subgroup, ...]
    factor_orders: tuple[int, ...]
    factor_abelian: tuple[bool, ...]

    def __len__(self) -> int:
        return len(self.factor_orders)


def chief_series(G: PermGroup, *, variant: int = 0) -> ChiefSeries:
    """A chief series built bottom-up from minimal normal subgroup choices.

    ``variant`` rotates the choice of minimal normal subgroup at each
    level; any variant yields a valid series (delta counts downstream do
    not depend on the choice).
    """
    chain_up: list[int] = [1]
    abelian_flags: list[bool] = []
    Q = G
    proj = list(range(G.order))
    while Q.order > 1:
        mins = minimal_normal_subgroups(Q)
        A = mins[variant % len(mins)]
        preimage = 0
        for i in range(G.order):
            if (A.bits >> proj[i]) & 1:
                preimage |= 1 << i
        chain_up.append(preimage)
        abelian_flags.append(
            all(Q.commutator(a, b) == 0 for a in A.witnesses for b in A.witnesses)
        )
        Q2, epi = quotient(Q, A)
        proj = [epi[proj[i]] for i in range(G.order)]
        Q = Q2
    subs = tuple(Subgroup(G, b) for b in reversed(chain_up))
    orders = tuple(
        subs[i].order // subs[i + 1].order for i in range(len(subs) - 1)
    )
    return ChiefSeries(
        group=G,
        subgroups=subs,
        factor_orders=orders,
        factor_abelian=tuple(reversed(abelian_flags)),
    )


def _has_complement(G: PermGroup, X: Subgroup, Y: Subgroup) -> bool:
    # |UX| = |U||X|/|U n X|, so U complements X/Y iff U n X = Y and the
    # product set has full size.
    target = G.order * Y.order
    for U in all_subgroups(G):
        if U.bits & X.bits == Y.bits and U.order * X.order == target:
            return True
    return False


def is_complemented(G: PermGroup, X: Subgroup, Y: Subgroup) -> bool:
    """True iff some U <= G satisfies UX = G and U n X = Y (abelian chief X/Y)."""
    _validate_section(G, X, Y)
    return _has_complement(G, X, Y)


def _validate_section(G: PermGroup, X: Subgroup, Y: Subgroup) -> None:
    if X.group is not G or Y.group is not G:
        raise BadSectionError("subgroups belong to a different group")
    if Y.bits & ~X.bits:
        raise BadSectionError("Y is not contained in X")
    if not X.is_normal() or not Y.is_normal():
        raise BadSectionError("X and Y must be normal in G")
    for a in X.witnesses:
        for b in X.witnesses:
            if not (Y.bits >> G.commutator(a, b)) & 1:
                raise NotAbelianFactorError("section X/Y is not abelian")


# -- abelian chief factor modules ----------------------------------------


@dataclass(frozen=True)
class ChiefFactorModule:
    """An abelian chief factor as an F_p-module for the ambient group.

    ``gen_matrices`` holds one matrix per ambient-group generator, in the
    generator order of ``group`` (column-vector convention, right action:
    the matrix of g sends v to the class of g^-1 v g). Fields after
    ``p_fix`` are filled by crown classification.
    """

    group: PermGroup
    p: int
    n_raw: int
    gen_matrices: tuple[Mat, ...]
    h_order: int
    central: bool
    p_fix: Fraction
    complemented: Optional[bool] = None
    q: Optional[int] = None
    n: Optional[int] = None
    delta: Optional[int] = None
    theta: Optional[int] = None
    m: Optional[int] = None
    label: str = ""

    @property
    def module_order(self) -> int:
        return self.p**self.n_raw


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def factor_module(G: PermGroup, X: Subgroup, Y: Subgroup, *, check_chief: bool = True) -> ChiefFactorModule:
    """Matrices, centralizer size and fixed-vector probability for X/Y.

    The basis is chosen greedily from coset representatives in discovery
    order. ``p_fix`` counts, over a transversal of C_G(X/Y), the elements
    whose action matrix has a nonzero fixed vector (kernel of M - I).
    """
    _validate_section(G, X, Y)
    vorder = X.order // Y.order
    pfac = next((d for d in range(2, vorder + 1) if vorder % d == 0), vorder)
    if not _is_prime(pfac):
        raise NotChiefFactorError("abelian chief factor must have prime-power order")
    n_raw = 0
    t = vorder
    while t > 1:
        if t % pfac:
            raise NotChiefFactorError("abelian chief factor must have prime-power order")
        t //= pfac
        n_raw += 1
    if check_chief:
        for x in bits_iter(X.bits & ~Y.bits):
            if G.normal_closure_bits(Y.witnesses + (x,)) != X.bits:
                raise NotChiefFactorError("a normal subgroup sits strictly between Y and X")

    # cosets of Y inside X, id 0 = Y itself (identity has element index 0)
    vid: dict[int, int] = {}
    coset_rep: list[int] = []
    for x in bits_iter(X.bits):
        if x in vid:
            continue
        c = len(coset_rep)
        coset_rep.append(x)
        for y in bits_iter(Y.bits):
            vid[G.mult(y, x)] = c
    assert len(coset_rep) == vorder and vid[0] == 0

    def vadd(a: int, b: int) -> int:
        return vid[G.mult(coset_rep[a], coset_rep[b])]

    coords: dict[int, tuple[int, ...]] = {0: ()}
    basis: list[int] = []
    for v in range(vorder):
        if v in coords:
            continue
        i = len(basis)
        basis.append(v)
        coords = {w: wc + (0,) for w, wc in coords.items()}
        cur = 0
        for c in range(1, pfac):
            cur = vadd(cur, v)
            for w, wc in list(coords.items()):
                if wc[i] == 0:
                    u = vadd(w, cur)
                    coords[u] = wc[:i] + (c,)
        if vadd(cur, v) != 0:
            raise NotChiefFactorError("section X/Y is not elementary abelian")
    assert len(coords) == vorder and len(basis) == n_raw
    coords = {w: tuple(wc) for w, wc in coords.items()}

    def action_matrix(g: int) -> Mat:
        cols = []
        for b in basis:
            img = vid[G.conj(coset_rep[b], g)]
            cols.append(coords[img])
        return tuple(
            tuple(cols[j][i] for j in range(n_raw)) for i in range(n_raw)
        )

    gen_mats = tuple(action_matrix(gi) for gi in G.generator_indices)

    C = section_centralizer(G, X, Y)
    h_order = G.order // C.order
    central = h_order == 1

    # transversal of C in G; cosets of C act identically on X/Y
    seen = 0
    fix_count = 0
    ident = mat_identity(n_raw)
    for g in range(G.order):
        if (seen >> g) & 1:
            continue
        for c in bits_iter(C.bits):
            seen |= 1 << G.mult(c, g)
        M = action_matrix(g)
        delta_rows = [
            [(M[i][j] - ident[i][j]) % pfac for j in range(n_raw)]
            for i in range(n_raw)
        ]
        if mat_rank(delta_rows, pfac) < n_raw:
            fix_count += 1
    p_fix = Fraction(fix_count, h_order)

    return ChiefFactorModule(
        group=G,
        p=pfac,
        n_raw=n_raw,
        gen_matrices=gen_mats,
        h_order=h_order,
        central=central,
        p_fix=p_fix,
    )


def _intertwiner_space(
    A_mats: Sequence[Mat], B_mats: Sequence[Mat], n: int, p: int
) -> list[tuple[int, ...]]:
    """Basis of {T : T A_g = B_g T for all g}, T flattened row-major."""
    rows: list[list[int]] = []
    for A, B in zip(A_mats, B_mats):
        for a in range(n):
            for b in range(n):
                row = [0] * (n * n)
                for k in range(n):
                    row[a * n + k] = (row[a * n + k] + A[k][b]) % p
                    row[k * n + b] = (row[k * n + b] - B[a][k]) % p
                rows.append(row)
    return nullspace(rows, n * n, p)


# Solution spaces larger than this are sampled rather than scanned when
# hunting for an invertible intertwiner (heuristic path, flagged below).
_ISO_SCAN_LIMIT = 4096
_ISO_SAMPLE_TRIALS = 64


def g_isomorphic(M1: ChiefFactorModule, M2: ChiefFactorModule) -> bool:
    """True iff an invertible F_p intertwiner exists between the modules.

    Both modules must carry matrices for the same generator list. A prime
    or dimension mismatch short-circuits to False. For irreducible
    modules any nonzero intertwiner is invertible, so the scan normally
    succeeds on the first basis vector; the random-sampling fallback for
    huge solution spaces is heuristic and effectively unreachable at desk
    scale.
    """
    if len(M1.gen_matrices) != len(M2.gen_matrices):
        raise ValueError("modules carry different generator lists")
    if M1.p != M2.p or M1.n_raw != M2.n_raw:
        return False
    p, n = M1.p, M1.n_raw
    basis = _intertwiner_space(M1.gen_matrices, M2.gen_matrices, n, p)
    if not basis:
        return False
    for v in basis:
        if mat_is_invertible(_vec_to_mat(v, n), p):
            return True
    if p ** len(basis) <= _ISO_SCAN_LIMIT:
        for v in _span_elements(basis, p):
            if any(v) and mat_is_invertible(_vec_to_mat(v, n), p):
                return True
        return False
    rng = random.Random(0)
    for _ in range(_ISO_SAMPLE_TRIALS):
        coeffs = [rng.randrange(p) for _ in basis]
        v = tuple(
            sum(c * b[i] for c, b in zip(coeffs, basis)) % p
            for i in range(n * n)
        )
        if any(v) and mat_is_invertible(_vec_to_mat(v, n), p):
            return True
    return False


def endo_field(M: ChiefFactorModule) -> tuple[int, int]:
    """(q, n) with q the commutant field size and n = n_raw / log_p(q).

    Solves the commutant system and checks its span really is a field
    (closed under products, all nonzero elements invertible). A failure
    signals the factor was not chief.
    """
    p, nr = M.p, M.n_raw
    basis = _intertwiner_space(M.gen_matrices, M.gen_matrices, nr, p)
    e = len(basis)
    if e == 0 or nr % e != 0:
        raise NotIrreducibleError("commutant dimension does not divide the module dimension")
    mats = [_vec_to_mat(v, nr) for v in _span_elements(basis, p)]
    mat_set = {m for m in mats}
    for A in mats:
        if any(any(row) for row in A) and not mat_is_invertible(A, p):
            raise NotIrreducibleError("commutant contains a singular nonzero element")
        for B in mats:
            if mat_mul(A, B, p) not in mat_set:
                raise NotIrreducibleError("commutant is not closed under products")
    return p**e, nr // e


# -- derivations and first cohomology ------------------------------------


def _element_matrices(
    H: PermGroup, gen_matrices: Sequence[Mat], p: int
) -> list[Mat]:
    """Action matrix per element of H, matrices given per H.generators."""
    by_images: dict[tuple[int, ...], Mat] = {}
    for g, M in zip(H.generators, gen_matrices):
        by_images[g.images] = M
    n = len(gen_matrices[0]) if gen_matrices else 0
    mats: list[Mat] = [mat_identity(n)] * H.order
    for j in range(1, H.order):
        pj, gj = H._parent[j], H._via[j]
        gen_mat = by_images[H._bfs_gens[gj].images]
        # right action: the matrix of x*g is M_g @ M_x
        mats[j] = mat_mul(gen_mat, mats[pj], p)
    return mats


@dataclass(frozen=True)
class DerivationCount:
    der_count: int
    inner_count: int
    m: int


def derivations(
    H: PermGroup,
    gen_matrices: Sequence[Mat],
    p: int,
    *,
    search_cap: int = DERIVATION_SEARCH_CAP,
) -> DerivationCount:
    """Count derivations H -> V by exhaustive generator-image search.

    A candidate assigns a vector to each member of a minimal generating
    tuple of H; it extends uniquely along the BFS tree by
    zeta(x*g) = zeta(x)^g + zeta(g) and survives iff that relation holds
    for every (element, generator) pair. ``m`` solves q^m =
    der_count / inner_count over the commutant field.
    """
    if H.order == 1:
        raise ValueError("derivations require a nontrivial acting group")
    n = len(gen_matrices[0])
    vsize = p**n
    elem_mats = _element_matrices(H, gen_matrices, p)
    wit = minimal_generating_tuple(H)
    if vsize ** len(wit) > search_cap:
        raise SearchCapError(
            f"candidate space {vsize}^{len(wit)} exceeds cap {search_cap}"
        )
    H2 = PermGroup(H.degree, [H.elements[w] for w in wit])
    assert H2.order == H.order
    wit_mats = [elem_mats[w] for w in wit]
    bfs_gen_slot = []
    for g in H2._bfs_gens:
        slot = next(i for i, w in enumerate(wit) if H.elements[w].images == g.images)
        bfs_gen_slot.append(slot)

    vectors = list(itertools.product(range(p), repeat=n))
    der_count = 0
    for assign in itertools.product(range(vsize), repeat=len(wit)):
        vals = [vectors[a] for a in assign]
        zeta: list[tuple[int, ...]] = [tuple([0] * n)] * H2.order
        for j in range(1, H2.order):
            pj, gj = H2._parent[j], H2._via[j]
            slot = bfs_gen_slot[gj]
            moved = mat_vec(wit_mats[slot], zeta[pj], p)
            zeta[j] = tuple((a + b) % p for a, b in zip(moved, vals[slot]))
        ok = True
        for x in range(H2.order):
            for k in range(len(H2._bfs_gens)):
                y = H2._gen_right[x][k]
                slot = bfs_gen_slot[k]
                moved = mat_vec(wit_mats[slot], zeta[x], p)
                want = tuple((a + b) % p for a, b in zip(moved, vals[slot]))
                if zeta[y] != want:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            der_count += 1

    inner = set()
    for v in vectors:
        inner.add(
            tuple(
                tuple((mv - vv) % p for mv, vv in zip(mat_vec(Mw, v, p), v))
                for Mw in wit_mats
            )
        )
    inner_count = len(inner)

    ratio = der_count // inner_count
    if der_count % inner_count:
        raise NotIrreducibleError("derivation count is not a multiple of the inner count")
    probe = ChiefFactorModule(
        group=H,
        p=p,
        n_raw=n,
        gen_matrices=tuple(gen_matrices),
        h_order=H.order,
        central=False,
        p_fix=Fraction(0),
    )
    q, _ = endo_field(probe)
    m = 0
    r = ratio
    while r > 1:
        if r % q:
            raise NotIrreducibleError("H^1 size is not a power of the commutant field size")
        r //= q
        m += 1
    return DerivationCount(der_count=der_count, inner_count=inner_count, m=m)


# -- crown data -----------------------------------------------------------


@dataclass(frozen=True)
class CrownData:
    """Complemented abelian chief factor classes split by centrality."""

    non_central: tuple[ChiefFactorModule, ...]  # classes with h_order > 1
    central: tuple[ChiefFactorModule, ...]      # classes with h_order = 1
    nonabelian_factors: tuple[tuple[int, bool], ...]  # (order, complemented)

    @property
    def A(self) -> tuple[ChiefFactorModule, ...]:
        return self.non_central

    @property
    def B(self) -> tuple[ChiefFactorModule, ...]:
        return self.central


def crown_data(
    G: PermGroup,
    *,
    series: Optional[ChiefSeries] = None,
    compute_m: bool = False,
) -> CrownData:
    """Group the complemented abelian chief factors into isomorphism classes.

    For soluble G every class gets m = 0 (first cohomology vanishes for a
    soluble group acting faithfully and irreducibly). With
    ``compute_m=True`` on an insoluble group, m is found by derivation
    enumeration when the search fits the cap, else left as None.
    """
    if series is None:
        series = chief_series(G)
    soluble = is_soluble(G)
    modules: list[ChiefFactorModule] = []
    nonabelian: list[tuple[int, bool]] = []
    subs = series.subgroups
    for i in range(len(subs) - 1):
        X, Y = subs[i], subs[i + 1]
        if not series.factor_abelian[i]:
            nonabelian.append((series.factor_orders[i], _has_complement(G, X, Y)))
            continue
        mod = factor_module(G, X, Y, check_chief=False)
        comp = _has_complement(G, X, Y)
        mod = replace(mod, complemented=comp, label=f"factor[{i:02d}]")
        modules.append(mod)

    complemented = [m for m in modules if m.complemented]
    classes: list[list[ChiefFactorModule]] = []
    for mod in complemented:
        for cls in classes:
            if g_isomorphic(cls[0], mod):
                cls.append(mod)
                break
        else:
            classes.append([mod])

    non_central: list[ChiefFactorModule] = []
    central: list[ChiefFactorModule] = []
    for cls in classes:
        rep = cls[0]
        delta = len(cls)
        q, nv = endo_field(rep)
        # first cohomology vanishes for soluble H and trivially for H = 1
        m: Optional[int] = 0 if (soluble or rep.central) else None
        if m is None and compute_m:
            HQ, _ = quotient(G, section_kernel(rep))
            try:
                m = derivations(HQ, rep.gen_matrices, rep.p).m
            except SearchCapError:
                m = None
        rep = replace(
            rep,
            q=q,
            n=nv,
            delta=delta,
            theta=0 if delta == 1 else 1,
            m=m,
        )
        (central if rep.central else non_central).append(rep)

    keyfun = lambda mod: (mod.p, mod.n_raw, mod.label)
    return CrownData(
        non_central=tuple(sorted(non_central, key=keyfun)),
        central=tuple(sorted(central, key=keyfun)),
        nonabelian_factors=tuple(nonabelian),
    )


def section_kernel(mod: ChiefFactorModule) -> Subgroup:
    """The kernel of the module action inside the ambient group."""
    G = mod.group
    n, p = mod.n_raw, mod.p
    ident = mat_identity(n)
    # kernel = elements whose action matrix is the identity; builds on the
    # generator matrices by BFS like _element_matrices
    mats = _element_matrices(G, mod.gen_matrices, p)
    bits = 0
    for i, M in enumerate(mats):
        if M == ident:
            bits |= 1 << i
    return Subgroup(G, bits)


# -- omega membership ------------------------------------------------------


def socle_factor_modules(
    G: PermGroup, mc: MaximalClassData
) -> list[Optional[ChiefFactorModule]]:
    """Modules of G on the abelian minimal normal subgroups of G/core(M).

    Generator matrices are indexed by G's generator list (the quotient's
    generators are the images of G's, in order), so the results compare
    directly with chief factor modules of G.
    """
    core = Subgroup(G, mc.core_bits)
    Q, _ = quotient(G, core)
    mods: list[Optional[ChiefFactorModule]] = []
    for N in minimal_normal_subgroups(Q):
        abelian = all(
            Q.commutator(a, b) == 0 for a in N.witnesses for b in N.witnesses
        )
        if not abelian:
            mods.append(None)
            continue
        mods.append(factor_module(Q, N, Subgroup.trivial(Q), check_chief=False))
    return mods


def omega_membership(
    G: PermGroup,
    maximals: Sequence[MaximalClassData],
    V: ChiefFactorModule,
    *,
    socle_cache: Optional[dict[int, list[Optional[ChiefFactorModule]]]] = None,
) -> int:
    """Bitmask over maximal classes whose quotient socle is V or V x V.

    The socle of G/core(M) is the product of its minimal normal
    subgroups; membership requires either a single minimal normal
    subgroup isomorphic to V or exactly two, both isomorphic to V.
    """
    mask = 0
    for ci, mc in enumerate(maximals):
        if socle_cache is not None and ci in socle_cache:
            mods = socle_cache[ci]
        else:
            mods = socle_factor_modules(G, mc)
            if socle_cache is not None:
                socle_cache[ci] = mods
        if any(m is None for m in mods):
            continue
        if len(mods) == 1:
            ok = g_isomorphic(mods[0], V)
        elif len(mods) == 2:
            ok = (
                mods[0].module_order == V.module_order
                and mods[1].module_order == V.module_order
                and g_isomorphic(mods[0], V)
                and g_isomorphic(mods[1], V)
            )
        else:
            ok = False
        if ok:
            mask |= 1 << ci
    return mask
