"""Wide subcategories of a rank-n tube.

Objects of the tube are arcs (see nilpotent.Arc).  Morphism and
extension dimensions are taken from the linear-algebra oracle; the
composition-factor criterion for nonvanishing Hom is kept as a fast
predicate and cross-checked in the tests.  Wide subcategories are
represented by their fingerprint: the set of member arcs of length at
most n, which determines the subcategory.  A fingerprint is exceptional
("exc") exactly when it has no member of full length n, equivalently
when its factors miss at least one simple.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .nilpotent import (Arc, NilpRep, cokernel_rep, decompose, hom_basis,
                        kernel_rep, pushout_middle, rep_of_arc)

_REP_CACHE: dict[Arc, NilpRep] = {}
_HOM_BASIS_CACHE: dict[tuple[Arc, Arc], tuple] = {}
_PAIR_KC_CACHE: dict[tuple[Arc, Arc], frozenset] = {}
_PAIR_MID_CACHE: dict[tuple[Arc, Arc], frozenset] = {}
_EXT_CLASS_CACHE: dict[tuple[Arc, Arc], list] = {}


def _rep(arc: Arc) -> NilpRep:
    rep = _REP_CACHE.get(arc)
    if rep is None:
        rep = _REP_CACHE[arc] = rep_of_arc(arc)
    return rep


def arc_hom_basis(a: Arc, b: Arc):
    key = (a, b)
    basis = _HOM_BASIS_CACHE.get(key)
    if basis is None:
        basis = _HOM_BASIS_CACHE[key] = tuple(hom_basis(_rep(a), _rep(b)))
    return basis


def hom_dim(a: Arc, b: Arc) -> int:
    """Dimension of Hom(a, b), from the oracle."""
    if a.rank != b.rank:
        raise ValueError("arcs from tubes of different rank")
    return len(arc_hom_basis(a, b))


def ext_dim(a: Arc, b: Arc) -> int:
    """Dimension of Ext^1(a, b) = Hom(b, tau a) by Serre duality."""
    return hom_dim(b, a.tau())


def hom_nonzero_criterion(a: Arc, b: Arc) -> bool:
    """Fast predicate: Hom(a, b) != 0 iff top(a) is a factor of b and
    the socle of b is a factor of a."""
    return a.top in b.factors() and b.socle in a.factors()


def is_exceptional(a: Arc) -> bool:
    """An arc is exceptional exactly when it is shorter than the rank."""
    return a.length < a.rank


def all_arcs(n: int, max_len: int):
    return [Arc(n, s, l) for s in range(n) for l in range(1, max_len + 1)]


# ---------------------------------------------------------------------------
# extensions via projective presentations at a truncation

def _inclusion_matrices(k: NilpRep, p: NilpRep, k_arc: Arc, p_arc: Arc):
    n = k_arc.rank
    kslots = [[] for _ in range(n)]
    for j in range(k_arc.length):
        kslots[(k_arc.socle + j) % n].append(j)
    pslots = [[] for _ in range(n)]
    for j in range(p_arc.length):
        pslots[(p_arc.socle + j) % n].append(j)
    incl = []
    for i in range(n):
        m = [[Fraction(0)] * k.dims[i] for _ in range(p.dims[i])]
        for kc, j in enumerate(kslots[i]):
            m[pslots[i].index(j)][kc] = Fraction(1)
        incl.append(tuple(tuple(row) for row in m))
    return tuple(incl)


def _vec_morphism(b: NilpRep, k: NilpRep, f):
    out = []
    for i in range(k.rank):
        for r in range(b.dims[i]):
            for c in range(k.dims[i]):
                out.append(Fraction(f[i][r][c]))
    return out


def _compose(f, g, mid: NilpRep):
    # (f after g), g: X -> mid, f: mid -> Y, all tuples of matrices
    return tuple(tuple(tuple(sum(f[i][r][k] * g[i][k][c] for k in range(mid.dims[i]))
                             for c in range(len(g[i][0]) if g[i] else 0))
                       for r in range(len(f[i])))
                 for i in range(mid.rank))


def ext_classes(a: Arc, b: Arc):
    """Basis of Ext^1(a, b) as morphisms from the presentation kernel to b.

    The presentation 0 -> K -> P -> a -> 0 uses the length-N arc P with
    the same top as a, N large enough that every extension of a by b
    lives below the truncation.  Classes are coset representatives of
    Hom(K, b) modulo restrictions of Hom(P, b).
    """
    key = (a, b)
    cached = _EXT_CLASS_CACHE.get(key)
    if cached is not None:
        return cached
    n = a.rank
    N = a.length + b.length + n
    p_arc = Arc(n, (a.socle + a.length - N) % n, N)
    k_arc = Arc(n, p_arc.socle, N - a.length)
    p_rep, k_rep, b_rep = _rep(p_arc), _rep(k_arc), _rep(b)
    incl = _inclusion_matrices(k_rep, p_rep, k_arc, p_arc)
    k_hom = arc_hom_basis(k_arc, b)
    restricted = [_vec_morphism(b_rep, k_rep, _compose(f, incl, p_rep))
                  for f in arc_hom_basis(p_arc, b)]
    span = [v for v in restricted if any(x != 0 for x in v)]
    chosen = []
    base_rank = linalg.rank(span) if span else 0
    current = list(span)
    current_rank = base_rank
    for f in k_hom:
        v = _vec_morphism(b_rep, k_rep, f)
        cand = current + [v]
        r = linalg.rank(cand)
        if r > current_rank:
            chosen.append(f)
            current = cand
            current_rank = r
    result = [(k_arc, p_arc, incl, f) for f in chosen]
    _EXT_CLASS_CACHE[key] = result
    return result


def ext_dim_via_presentation(a: Arc, b: Arc) -> int:
    """Ext dimension recomputed from the projective presentation alone."""
    return len(ext_classes(a, b))


def _middle_summands(b: Arc, cls) -> tuple:
    k_arc, p_arc, incl, g = cls
    mid = pushout_middle(_rep(k_arc), _rep(p_arc), incl, _rep(b), g)
    parts = decompose(mid)
    out = []
    for arc in sorted(parts, key=lambda x: x.sort_key()):
        out.extend([arc] * parts[arc])
    return tuple(out)


def _scaled_sum_class(c1, c2, coef: int):
    k_arc, p_arc, incl, g1 = c1
    _, _, _, g2 = c2
    g = tuple(tuple(tuple(g1[i][r][c] + coef * g2[i][r][c]
                          for c in range(len(g1[i][r])))
                    for r in range(len(g1[i])))
              for i in range(len(g1)))
    return (k_arc, p_arc, incl, g)


def extension_middles(a: Arc, b: Arc):
    """Iso-types of middle terms of extensions of a by b.

    Middles are taken over every basis class; for Ext spaces of dimension
    two or more, pairwise sums with small integer coefficients are added
    and the resulting set of iso-types must already be stable before the
    last coefficient, otherwise the sampling is reported as insufficient.
    """
    classes = ext_classes(a, b)
    middles = {_middle_summands(b, cls) for cls in classes}
    if len(classes) >= 2:
        seen_small = set(middles)
        for i, j in itertools.combinations(range(len(classes)), 2):
            for coef in (1, 2):
                seen_small.add(_middle_summands(b, _scaled_sum_class(classes[i], classes[j], coef)))
        seen_full = set(seen_small)
        for i, j in itertools.combinations(range(len(classes)), 2):
            seen_full.add(_middle_summands(b, _scaled_sum_class(classes[i], classes[j], 3)))
        if seen_full != seen_small:
            raise AssertionError("extension middle sampling did not stabilize")
        middles = seen_full
    return middles


# ---------------------------------------------------------------------------
# wide closure and fingerprints

def _pair_kernel_cokernel(a: Arc, b: Arc) -> frozenset:
    key = (a, b)
    cached = _PAIR_KC_CACHE.get(key)
    if cached is not None:
        return cached
    found = set()
    ra, rb = _rep(a), _rep(b)
    for f in arc_hom_basis(a, b):
        for rep_kind in (kernel_rep(ra, rb, f), cokernel_rep(ra, rb, f)):
            found.update(decompose(rep_kind))
    result = frozenset(found)
    _PAIR_KC_CACHE[key] = result
    return result


def _pair_middles(a: Arc, b: Arc) -> frozenset:
    key = (a, b)
    cached = _PAIR_MID_CACHE.get(key)
    if cached is not None:
        return cached
    found = set()
    for summands in extension_middles(a, b):
        found.update(summands)
    result = frozenset(found)
    _PAIR_MID_CACHE[key] = result
    return result


@dataclass(frozen=True)
class TubeWideFingerprint:
    """Member arcs of length <= rank of a wide subcategory of the tube."""

    rank: int
    arcs: frozenset

    @property
    def exc(self) -> bool:
        return all(a.length < self.rank for a in self.arcs)

    def sorted_arcs(self):
        return sorted(self.arcs, key=lambda a: a.sort_key())

    def factor_support(self) -> frozenset:
        return frozenset(v for a in self.arcs for v in a.factors())


def closure_members(gens, n: int, cap: int) -> frozenset:
    """Arcs of length <= cap in the wide closure of the generators."""
    members = {g for g in gens if g.length <= cap}
    while True:
        new = set()
        current = sorted(members, key=lambda a: a.sort_key())
        for a in current:
            for b in current:
                for arc in _pair_kernel_cokernel(a, b):
                    if arc.length <= cap and arc not in members:
                        new.add(arc)
                for arc in _pair_middles(a, b):
                    if arc.length <= cap and arc not in members:
                        new.add(arc)
        if not new:
            return frozenset(members)
        members.update(new)


_CLOSURE_CACHE: dict = {}


def wide_closure(gens, cap: int | None = None, check_stability: bool = True) -> TubeWideFingerprint:
    """Fingerprint of the wide closure of a set of arcs.

    Kernels, cokernels and extension middles are accumulated up to the
    length cap (default twice the rank).  The truncation is guarded by
    recomputing at cap plus rank and insisting on the same fingerprint.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("closure of no generators: pass the rank explicitly via an arc")
    n = gens[0].rank
    if any(g.rank != n for g in gens):
        raise ValueError("generators from tubes of different rank")
    if cap is None:
        cap = 2 * n
    if cap < 2 * n:
        raise ValueError("cap below twice the rank would truncate extensions")
    key = (n, frozenset(gens), cap, check_stability)
    hit = _CLOSURE_CACHE.get(key)
    if hit is not None:
        return hit
    members = closure_members(gens, n, cap)
    fp = TubeWideFingerprint(n, frozenset(a for a in members if a.length <= n))
    if check_stability:
        wider = closure_members(gens, n, cap + n)
        fp2 = TubeWideFingerprint(n, frozenset(a for a in wider if a.length <= n))
        if fp != fp2:
            raise AssertionError("wide closure unstable under cap increase")
    _CLOSURE_CACHE[key] = fp
    return fp


def zero_fingerprint(n: int) -> TubeWideFingerprint:
    return TubeWideFingerprint(n, frozenset())


def whole_fingerprint(n: int) -> TubeWideFingerprint:
    return TubeWideFingerprint(n, frozenset(all_arcs(n, n)))


# ---------------------------------------------------------------------------
# enumeration and perpendicular calculus

def is_rigid_set(arcs) -> bool:
    arcs = list(arcs)
    return all(ext_dim(a, b) == 0 for a in arcs for b in arcs)


def _rigid_subsets(candidates, max_size):
    """All subsets (as tuples) of pairwise compatible arcs, via backtracking."""
    arcs = sorted(candidates, key=lambda a: a.sort_key())
    out = [()]
    stack = [((), 0)]
    while stack:
        chosen, start = stack.pop()
        if len(chosen) == max_size:
            continue
        for idx in range(start, len(arcs)):
            cand = arcs[idx]
            if ext_dim(cand, cand) != 0:
                continue
            if all(ext_dim(cand, c) == 0 and ext_dim(c, cand) == 0 for c in chosen):
                nxt = chosen + (cand,)
                out.append(nxt)
                stack.append((nxt, idx + 1))
    return out


def perp_pair(f: TubeWideFingerprint) -> TubeWideFingerprint:
    """The partner of a fingerprint under the perpendicular bijection.

    An exc fingerprint is sent to its right perpendicular inside the
    tube; a non-exc fingerprint to its left perpendicular.  The two
    directions are mutually inverse.
    """
    n = f.rank
    universe = all_arcs(n, n)
    if f.exc:
        arcs = [x for x in universe
                if all(hom_dim(m, x) == 0 and ext_dim(m, x) == 0 for m in f.arcs)]
    else:
        arcs = [x for x in universe
                if all(hom_dim(x, m) == 0 and ext_dim(x, m) == 0 for m in f.arcs)]
    return TubeWideFingerprint(n, frozenset(arcs))


def enumerate_wide(n: int, max_rank: int = 6) -> frozenset:
    """All wide-subcategory fingerprints of the rank-n tube.

    Exc members arise as closures of rigid arc sets, non-exc members as
    their perpendiculars; the union is the whole lattice.
    """
    if n < 1:
        raise ValueError("rank must be positive")
    if n > max_rank:
        raise ValueError(f"rank {n} above the configured bound {max_rank}")
    short = [a for a in all_arcs(n, max(n - 1, 0)) if is_exceptional(a)]
    exc = set()
    for subset in _rigid_subsets(short, max_size=max(n - 1, 0)):
        if subset:
            exc.add(wide_closure(subset))
        else:
            exc.add(zero_fingerprint(n))
    nexc = {perp_pair(f) for f in exc}
    return frozenset(exc | nexc)


def enumerate_wide_bruteforce(n: int) -> frozenset:
    """Fingerprints found by scanning every arc subset for closure fixpoints.

    Exponential in n*n; meant for small ranks as an independent check of
    the classification-driven enumeration.
    """
    universe = all_arcs(n, n)
    found = set()
    for r in range(len(universe) + 1):
        for combo in itertools.combinations(universe, r):
            fp_arcs = frozenset(combo)
            if combo:
                fp = wide_closure(combo, check_stability=False)
            else:
                fp = zero_fingerprint(n)
            if fp.arcs == fp_arcs:
                found.add(TubeWideFingerprint(n, fp_arcs))
    return frozenset(found)


# ---------------------------------------------------------------------------
# rigid completion, sequence ordering and extraction

def _validate_rigid(arcs, label):
    if not is_rigid_set(arcs):
        raise ValueError(f"{label} is not rigid")


def bongartz_complete(part_a, part_b):
    """Complete two compatible rigid sets to one rigid generator.

    Requires Ext(a, b) = 0 for all a in the first set, b in the second.
    The returned rigid set generates the same wide closure as the union;
    the search prefers keeping the second set and adding middle terms of
    the semi-universal extensions below elements of the first.
    """
    part_a = sorted(set(part_a), key=lambda a: a.sort_key())
    part_b = sorted(set(part_b), key=lambda a: a.sort_key())
    if not part_a and not part_b:
        return ()
    n = (part_a or part_b)[0].rank
    _validate_rigid(part_a, "first set")
    _validate_rigid(part_b, "second set")
    for a in part_a:
        for b in part_b:
            if ext_dim(a, b) != 0:
                raise ValueError("Ext from the first set to the second must vanish")
    union = sorted(set(part_a) | set(part_b), key=lambda a: a.sort_key())
    if is_rigid_set(union):
        return tuple(union)
    target = wide_closure(union)
    members = closure_members(union, n, 2 * n)
    semi = []
    for b in part_b:
        for a in part_a:
            if ext_dim(b, a) != 0:
                for summands in extension_middles(b, a):
                    for arc in summands:
                        if is_exceptional(arc) and arc not in semi:
                            semi.append(arc)
    pool = [x for x in semi if x in members and x not in part_b]
    for x in part_a + sorted(members, key=lambda a: a.sort_key()):
        if is_exceptional(x) and x not in pool and x not in part_b:
            pool.append(x)
    base = tuple(part_b)
    for size in range(0, min(len(pool), n) + 1):
        for extra in itertools.combinations(range(len(pool)), size):
            cand = sorted(set(base) | {pool[i] for i in extra}, key=lambda a: a.sort_key())
            if not is_rigid_set(cand):
                continue
            if wide_closure(cand, check_stability=False) == target:
                return tuple(cand)
    raise AssertionError("no rigid completion found in the closure")


def order_exc_sequence(summands):
    """Order the summands of a rigid object into an exceptional sequence.

    Later members must have no morphisms back to earlier ones, so the
    element with no nonzero Hom to the rest is extracted and placed
    last, repeatedly.  Ties break by (socle, length).
    """
    arcs = sorted(set(summands), key=lambda a: a.sort_key())
    if len(arcs) != len(list(summands)):
        raise ValueError("summands must be pairwise distinct")
    _validate_rigid(arcs, "summand set")
    remaining = list(arcs)
    extracted = []
    while remaining:
        cands = [x for x in remaining
                 if all(hom_dim(x, y) == 0 for y in remaining if y != x)]
        if not cands:
            raise AssertionError("rigid set admits no exceptional ordering")
        pick = min(cands, key=lambda a: a.sort_key())
        remaining.remove(pick)
        extracted.append(pick)
    seq = tuple(reversed(extracted))
    assert is_exc_sequence(seq)
    return seq


def is_exc_sequence(seq) -> bool:
    """Whether Hom and Ext vanish from every later member to every
    earlier one and every member is exceptional."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return False
    for a in seq:
        if not is_exceptional(a) or ext_dim(a, a) != 0:
            return False
    for i, late in enumerate(seq):
        for early in seq[:i]:
            if hom_dim(late, early) != 0 or ext_dim(late, early) != 0:
                return False
    return True


def factor_count_matrix(arcs):
    return [list(a.factor_counts()) for a in arcs]


def extract_exc_sequence(f: TubeWideFingerprint):
    """Greedy exceptional sequence generating an exc fingerprint.

    Picks the least member, restricts to its right perpendicular among
    the members, and repeats; the class independence of the members
    bounds the number of steps by the rank.  The result is returned in
    the usual order (vanishing from later to earlier) and is checked to
    regenerate the fingerprint.
    """
    n = f.rank
    if not f.exc:
        raise ValueError("fingerprint is not exceptional-side, no sequence exists")
    members = f.sorted_arcs()
    greedy = []
    while members:
        e = members[0]
        greedy.append(e)
        if len(greedy) > n:
            raise AssertionError("extraction exceeded the rank bound")
        members = [x for x in members[1:]
                   if hom_dim(e, x) == 0 and ext_dim(e, x) == 0]
    if linalg.rank(factor_count_matrix(greedy)) != len(greedy):
        raise AssertionError("extracted classes are dependent")
    seq = tuple(reversed(greedy))
    if not is_exc_sequence(seq):
        raise AssertionError("greedy extraction produced a non-sequence")
    regenerated = wide_closure(seq) if seq else zero_fingerprint(n)
    if regenerated != f:
        raise AssertionError("extracted sequence does not regenerate the subcategory")
    return seq


def exc_perp_decompose(e: Arc):
    """Split the right perpendicular of an exceptional arc.

    With S the top simple of e and m its length, the perpendicular is
    the orthogonal of the simples S, tau S, ..., tau^{m-1} S joined with
    the wide closure of tau S, ..., tau^{m-1} S.  Returns a membership
    predicate for the first block and the fingerprint arcs of the
    second.
    """
    if not is_exceptional(e):
        raise ValueError("arc is not exceptional")
    n = e.rank
    t = e.top
    ladder = [Arc(n, (t - k) % n, 1) for k in range(e.length)]
    if e.length >= 2:
        block2 = wide_closure(ladder[1:]).arcs
    else:
        block2 = frozenset()

    def in_block1(x: Arc) -> bool:
        return all(hom_dim(s, x) == 0 and ext_dim(s, x) == 0 for s in ladder)

    return in_block1, block2


def in_right_perp(f: TubeWideFingerprint, x: Arc) -> bool:
    return all(hom_dim(m, x) == 0 and ext_dim(m, x) == 0 for m in f.arcs)
