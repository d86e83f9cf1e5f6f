"""Acceptance suite: thirteen checks with pinned expected values.

Each criterion function returns a report dict; run_all drives them in
order.  Expected values are frozen here, not recomputed from the code
under test; independent oracles (the symmetric noncrossing-partition
counter, the alternate Ext path, the brute-force enumeration) guard the
classification-driven results.
"""

from __future__ import annotations

import time

from . import tube, widposet
from .grading import make_line
from .ktheory import (abs_length, class_of, cox_of, coxeter_element,
                      euler_form, k_rank, nc_leq)
from .nilpotent import Arc
from .sheaves import (TorsionArc, ext_dim_sheaf, ext_dim_sheaf_alt,
                      hom_dim_sheaf, perp_membership)
from .widposet import (build_poset, cinv_snapshot, default_window,
                       enumerate_wid_c, poset_dot, sheaf_universe)

TUBE_COUNTS = {1: 2, 2: 6, 3: 20, 4: 70, 5: 252}

# Frozen after the structural assertions of criterion 9 passed; the
# bytes double as the CLI golden file under tests/golden.
GOLDEN_DOT_W2 = """digraph wid {
  rankdir=BT;
  "0";
  "S(inf,0)";
  "S(inf,1)";
  "S[2](inf,0)";
  "S[2](inf,1)";
  "T0";
  "T0(+1)";
  "T0(+2)";
  "T0(+3)";
  "T0(-1)";
  "T0(-2)";
  "T1";
  "T1(+1)";
  "T1(+2)";
  "T1(-1)";
  "T1(-2)";
  "T2";
  "T2(+1)";
  "coh";
  "tor(inf)";
  { rank=same; "0"; }
  { rank=same; "S(inf,0)"; "S(inf,1)"; "S[2](inf,0)"; "S[2](inf,1)"; "T0"; "T0(+1)"; "T0(+2)"; "T0(+3)"; "T0(-1)"; "T0(-2)"; }
  { rank=same; "T1"; "T1(+1)"; "T1(+2)"; "T1(-1)"; "T1(-2)"; "T2"; "T2(+1)"; "tor(inf)"; }
  { rank=same; "coh"; }
  "0" -> "S(inf,0)";
  "0" -> "S(inf,1)";
  "0" -> "S[2](inf,0)";
  "0" -> "S[2](inf,1)";
  "0" -> "T0";
  "0" -> "T0(+1)";
  "0" -> "T0(+2)";
  "0" -> "T0(+3)";
  "0" -> "T0(-1)";
  "0" -> "T0(-2)";
  "S(inf,0)" -> "T1(+1)";
  "S(inf,0)" -> "T1(-1)";
  "S(inf,0)" -> "tor(inf)";
  "S(inf,1)" -> "T1";
  "S(inf,1)" -> "T1(+2)";
  "S(inf,1)" -> "T1(-2)";
  "S(inf,1)" -> "tor(inf)";
  "S[2](inf,0)" -> "T2";
  "S[2](inf,0)" -> "tor(inf)";
  "S[2](inf,1)" -> "T2(+1)";
  "S[2](inf,1)" -> "tor(inf)";
  "T0" -> "T1";
  "T0" -> "T1(-1)";
  "T0" -> "T2";
  "T0(+1)" -> "T1";
  "T0(+1)" -> "T1(+1)";
  "T0(+1)" -> "T2(+1)";
  "T0(+2)" -> "T1(+1)";
  "T0(+2)" -> "T1(+2)";
  "T0(+2)" -> "T2";
  "T0(+3)" -> "T1(+2)";
  "T0(+3)" -> "T2(+1)";
  "T0(-1)" -> "T1(-1)";
  "T0(-1)" -> "T1(-2)";
  "T0(-1)" -> "T2(+1)";
  "T0(-2)" -> "T1(-2)";
  "T0(-2)" -> "T2";
  "T1" -> "coh";
  "T1(+1)" -> "coh";
  "T1(+2)" -> "coh";
  "T1(-1)" -> "coh";
  "T1(-2)" -> "coh";
  "T2" -> "coh";
  "T2(+1)" -> "coh";
  "tor(inf)" -> "coh";
}
"""


def _set_partitions(m: int):
    """All set partitions of range(m), as tuples of sorted tuples."""
    parts = []

    def rec(i, blocks):
        if i == m:
            parts.append(tuple(tuple(b) for b in blocks))
            return
        for b in blocks:
            b.append(i)
            rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        rec(i + 1, blocks)
        blocks.pop()

    rec(0, [])
    return parts


def _blocks_cross(a, b) -> bool:
    merged = sorted([(x, 0) for x in a] + [(x, 1) for x in b])
    switches = sum(1 for i in range(1, len(merged))
                   if merged[i][1] != merged[i - 1][1])
    return switches >= 3


def noncrossing_symmetric_count(n: int) -> int:
    """Partitions of 2n cyclic labels, invariant under the half-turn,
    with no two blocks interleaving.  Independent of the tube module."""
    m = 2 * n
    count = 0
    for blocks in _set_partitions(m):
        key = frozenset(frozenset(b) for b in blocks)
        shifted = frozenset(frozenset((x + n) % m for x in b) for b in blocks)
        if key != shifted:
            continue
        if any(_blocks_cross(a, b)
               for i, a in enumerate(blocks) for b in blocks[i + 1:]):
            continue
        count += 1
    return count


def _report(name, ok, t0, detail):
    return {"name": name, "ok": bool(ok), "seconds": round(time.monotonic() - t0, 3),
            "detail": detail}


def criterion_1():
    """Tube lattice counts for ranks 1..5 against the frozen table and
    the independent symmetric noncrossing counter."""
    t0 = time.monotonic()
    sizes = {n: len(tube.enumerate_wide(n)) for n in range(1, 6)}
    nc = {n: noncrossing_symmetric_count(n) for n in range(1, 6)}
    elapsed = time.monotonic() - t0
    ok = sizes == TUBE_COUNTS and nc == TUBE_COUNTS and elapsed <= 60.0
    return _report("tube lattice counts 1..5", ok, t0,
                   f"sizes={sizes} noncrossing={nc} elapsed={elapsed:.1f}s")


def criterion_2():
    """Rank-2 tube: exactly the six known subcategories."""
    t0 = time.monotonic()
    got = {f.arcs for f in tube.enumerate_wide(2)}
    expected = {
        frozenset(),
        frozenset({Arc(2, 0, 1)}),
        frozenset({Arc(2, 1, 1)}),
        frozenset({Arc(2, 0, 2)}),
        frozenset({Arc(2, 1, 2)}),
        frozenset({Arc(2, 0, 1), Arc(2, 1, 1), Arc(2, 0, 2), Arc(2, 1, 2)}),
    }
    return _report("rank-2 tube subcategory list", got == expected, t0,
                   f"{len(got)} subcategories")


def criterion_3():
    """Perpendicular pairing is a mutually inverse bijection between
    the two halves of the lattice, ranks up to 4."""
    t0 = time.monotonic()
    bad = 0
    checked = 0
    for n in range(1, 5):
        lattice = tube.enumerate_wide(n)
        pm = {f: tube.perp_pair(f) for f in lattice}
        image = set()
        for f in lattice:
            checked += 1
            image.add(pm[f])
            if tube.perp_pair(pm[f]) != f or pm[f].exc == f.exc:
                bad += 1
        if image != set(lattice):
            bad += 1
    elapsed = time.monotonic() - t0
    ok = bad == 0 and elapsed <= 10.0
    return _report("perpendicular involution ranks 1..4", ok, t0,
                   f"fingerprints checked={checked} bad={bad} elapsed={elapsed:.1f}s")


def criterion_4():
    """Classification-driven enumeration equals the exhaustive scan."""
    t0 = time.monotonic()
    ok = all(tube.enumerate_wide(n) == tube.enumerate_wide_bruteforce(n)
             for n in range(1, 4))
    return _report("brute-force enumeration ranks 1..3", ok, t0, "ranks 1..3 exact")


def _sample_pairs(line):
    lo, hi = default_window(line)
    universe = sheaf_universe(line, lo, hi, ())
    return [(a, b) for a in universe for b in universe]


def criterion_5():
    """Two independent Ext paths agree on at least 200 pairs."""
    t0 = time.monotonic()
    total = 0
    bad = 0
    for weights in ((2,), (2, 3)):
        line = make_line(weights)
        for a, b in _sample_pairs(line):
            total += 1
            if ext_dim_sheaf(a, b) != ext_dim_sheaf_alt(a, b):
                bad += 1
    ok = bad == 0 and total >= 200
    return _report("Serre duality double computation", ok, t0,
                   f"pairs={total} disagreements={bad}")


def criterion_6():
    """Euler form matches hom minus ext on the same samples."""
    t0 = time.monotonic()
    total = 0
    bad = 0
    for weights in ((2,), (2, 3)):
        line = make_line(weights)
        for a, b in _sample_pairs(line):
            total += 1
            lhs = euler_form(line, class_of(a), class_of(b))
            if lhs != hom_dim_sheaf(a, b) - ext_dim_sheaf(a, b):
                bad += 1
    return _report("Euler form consistency", bad == 0 and total >= 200, t0,
                   f"pairs={total} disagreements={bad}")


def criterion_7():
    """Coxeter identity and full reflection length on three weight types."""
    t0 = time.monotonic()
    details = []
    ok = True
    for weights in ((1, 1), (2,), (2, 3)):
        line = make_line(weights)
        try:
            c = coxeter_element(line)
        except ArithmeticError as exc:
            ok = False
            details.append(f"{weights}: {exc}")
            continue
        m = k_rank(line)
        length = abs_length(c)
        if length != m:
            ok = False
        details.append(f"{weights}: m={m} abs_length={length}")
    return _report("Coxeter identity and length", ok, t0, "; ".join(details))


def criterion_8():
    """On the worked rank-2 window, inclusion of exceptional-side nodes
    matches the absolute order of their reflection products."""
    t0 = time.monotonic()
    line = make_line((2,))
    poset = build_poset(line, -2, 3)
    exc_nodes = [n for n in poset.nodes if n.exc_gens is not None]
    weyl = {}
    for n in exc_nodes:
        seq = widposet.order_exc_sheaves(n.exc_gens)
        weyl[n.name] = cox_of(line, seq)
    bad = []
    for u in exc_nodes:
        for v in exc_nodes:
            incl = u.snapshot <= v.snapshot
            nc = nc_leq(weyl[u.name], weyl[v.name])
            if incl != nc:
                bad.append((u.name, v.name, incl, nc))
    mats = [w.matrix for w in weyl.values()]
    injective = len(mats) == len(set(mats))
    ok = not bad and injective
    return _report("cox order isomorphism on the window", ok, t0,
                   f"exc nodes={len(exc_nodes)} mismatches={len(bad)} injective={injective}"
                   + (f" first={bad[0]}" if bad else ""))


def _family_covers():
    sfx = widposet._suffix
    fams = set()
    fams |= {(f"T0{sfx(n)}", f"T1{sfx(n)}") for n in range(-2, 3)}
    fams |= {(f"T0{sfx(n)}", f"T1{sfx(n - 1)}") for n in range(-1, 4)}
    fams |= {("S(inf,1)", f"T1{sfx(n)}") for n in (-2, 0, 2)}
    fams |= {("S(inf,0)", f"T1{sfx(n)}") for n in (-1, 1)}
    fams |= {(f"T0{sfx(n)}", "T2") for n in (-2, 0, 2)}
    fams |= {(f"T0{sfx(n)}", "T2(+1)") for n in (-1, 1, 3)}
    return fams


def criterion_9():
    """Rank-2 window poset: 20 nodes, the six transcribed cover
    families, 45 covers total, byte-identical DOT output."""
    t0 = time.monotonic()
    line = make_line((2,))
    poset = build_poset(line, -2, 3)
    names = {n.name for n in poset.nodes}
    expected_names = {"0", "coh", "tor(inf)",
                      "S(inf,0)", "S(inf,1)", "S[2](inf,0)", "S[2](inf,1)",
                      "T2", "T2(+1)"}
    expected_names |= {"T0" + widposet._suffix(n) for n in range(-2, 4)}
    expected_names |= {"T1" + widposet._suffix(n) for n in range(-2, 3)}
    covers = {tuple(c) for c in poset.covers()}
    dot = poset_dot(poset)
    problems = []
    if names != expected_names:
        problems.append(f"names off: extra={sorted(names - expected_names)} "
                        f"missing={sorted(expected_names - names)}")
    if len(covers) != 45:
        problems.append(f"cover count {len(covers)} != 45")
    missing_fams = _family_covers() - covers
    if missing_fams:
        problems.append(f"missing family covers {sorted(missing_fams)}")
    if poset.undecidable:
        problems.append(f"undecidable: {poset.undecidable[:2]}")
    if dot != GOLDEN_DOT_W2:
        problems.append("DOT differs from golden")
    return _report("rank-2 window Hasse diagram", not problems, t0,
                   "; ".join(problems) if problems else "20 nodes, 45 covers, DOT golden")


def criterion_10():
    """Unweighted line: declared-universe support lattice glued to the
    chain-free family of single bundle classes."""
    t0 = time.monotonic()
    line = make_line((1, 1))
    poset = build_poset(line, -2, 3, ("0", "1"))
    names = {n.name for n in poset.nodes}
    bundle_names = {f"<O({k:+d})>" if k else "<O(0)>" for k in range(-2, 4)}
    expected = {"0", "coh", "tor(0)", "tor(1)", "tor(0,1)"} | bundle_names
    problems = []
    if names != expected:
        problems.append(f"names {sorted(names)}")
    bundles = [n for n in poset.nodes if n.name in bundle_names]
    for i, u in enumerate(bundles):
        for v in bundles[i + 1:]:
            if u.snapshot <= v.snapshot or v.snapshot <= u.snapshot:
                problems.append(f"{u.name} comparable with {v.name}")
    zero = poset.node("0")
    whole = poset.node("coh")
    for n in poset.nodes:
        if not (zero.snapshot <= n.snapshot and n.snapshot <= whole.snapshot):
            problems.append(f"{n.name} outside bounds")
    sup = {name: poset.node(name) for name in ("tor(0)", "tor(1)", "tor(0,1)")}
    if not (sup["tor(0)"].snapshot < sup["tor(0,1)"].snapshot
            and sup["tor(1)"].snapshot < sup["tor(0,1)"].snapshot
            and not sup["tor(0)"].snapshot <= sup["tor(1)"].snapshot):
        problems.append("support lattice shape off")
    if poset.undecidable:
        problems.append("undecidable pairs")
    return _report("unweighted line decomposition", not problems, t0,
                   "; ".join(problems) if problems else f"{len(names)} nodes")


def criterion_11():
    """Every comparable pair on both acceptance posets carries a
    mechanism tag, and tagged steps generate the whole order."""
    t0 = time.monotonic()
    problems = []
    for weights, window, ids in (((2,), (-2, 3), ()), ((1, 1), (-2, 3), ("0", "1"))):
        line = make_line(weights)
        poset = build_poset(line, window[0], window[1], ids)
        untagged = [(u.name, v.name) for u, v in poset.comparable_pairs()
                    if not poset.tags(u, v)]
        if untagged:
            problems.append(f"{weights}: untagged {untagged[:3]}")
        if not poset.certificate_ok():
            problems.append(f"{weights}: pushout certificate failed")
    return _report("pushout certificate", not problems, t0,
                   "; ".join(problems) if problems else "all pairs tagged, both posets")


def criterion_12():
    """Shift-invariant round trip on the rank-2 line with two declared
    ordinary points."""
    t0 = time.monotonic()
    line = make_line((2,))
    ids = ("0", "1")
    data = enumerate_wid_c(line, ids)
    torsion_only = [d for d in data if not d.contains_bundle]
    with_bundle = [d for d in data if d.contains_bundle]
    problems = []
    if len(torsion_only) != 24:
        problems.append(f"torsion-only count {len(torsion_only)} != 24")
    if len(with_bundle) != 3:
        problems.append(f"bundle-side count {len(with_bundle)} != 3")
    universe = sheaf_universe(line, -2, 3, ids)
    for d in with_bundle:
        back = tuple(tube.perp_pair(fp) for fp in d.per_point)
        if back != d.defining_exc:
            problems.append("tube-level round trip failed")
            continue
        rebuilt = widposet.c_inv_from_torsion_exc(line, back, ids)
        if rebuilt != d:
            problems.append("reconstruction differs")
        gens = widposet._cinv_defining_sheaves(line, d)
        direct = frozenset(x for x in universe if perp_membership(x, gens))
        if direct != cinv_snapshot(line, d, universe):
            problems.append("window membership differs between paths")
        for k, i in enumerate(line.weighted_indices()):
            members = cinv_snapshot(line, d, universe)
            left = frozenset(
                a for a in tube.all_arcs(line.weights[i], line.weights[i])
                if all(hom_dim_sheaf(TorsionArc(line, i, a), mm) == 0
                       and ext_dim_sheaf(TorsionArc(line, i, a), mm) == 0
                       for mm in members))
            if left != d.defining_exc[k].arcs:
                problems.append(f"left perp at point {i} does not regenerate the data")
    return _report("shift-invariant round trip", not problems, t0,
                   "; ".join(problems) if problems else "27 subcategories, round trips exact")


def criterion_13():
    """Completion and ordering succeed for every admissible rigid pair
    in tubes of rank up to 4."""
    t0 = time.monotonic()
    import itertools as it
    checked = 0
    problems = []
    for n in range(1, 5):
        exc = [a for a in tube.all_arcs(n, n - 1)] if n > 1 else []
        rigid_sets = [()]
        for r in range(1, n):
            for combo in it.combinations(exc, r):
                if tube.is_rigid_set(combo):
                    rigid_sets.append(combo)
        for part_a in rigid_sets:
            for part_b in rigid_sets:
                if any(tube.ext_dim(a, b) != 0 for a in part_a for b in part_b):
                    continue
                checked += 1
                if not part_a and not part_b:
                    continue
                try:
                    comp = tube.bongartz_complete(part_a, part_b)
                except AssertionError as exc_err:
                    problems.append(f"rank {n}: {part_a}+{part_b}: {exc_err}")
                    continue
                union = set(part_a) | set(part_b)
                if not tube.is_rigid_set(comp):
                    problems.append(f"rank {n}: completion not rigid")
                    continue
                if tube.wide_closure(comp, check_stability=False) != \
                        tube.wide_closure(sorted(union, key=lambda a: a.sort_key()),
                                          check_stability=False):
                    problems.append(f"rank {n}: closure mismatch for {part_a}+{part_b}")
                    continue
                seq = tube.order_exc_sequence(comp)
                if not tube.is_exc_sequence(seq):
                    problems.append(f"rank {n}: ordering failed")
    elapsed = time.monotonic() - t0
    ok = not problems and elapsed <= 30.0
    return _report("completion and ordering ranks 1..4", ok, t0,
                   f"pairs={checked} elapsed={elapsed:.1f}s"
                   + ("; " + problems[0] if problems else ""))


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
            criterion_11, criterion_12, criterion_13]


def run_all():
    return [c() for c in CRITERIA]
