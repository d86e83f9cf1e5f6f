"""Acceptance gate: the thirteen release criteria with their budgets.

Each test delegates to the corresponding check in wpline.verify and
asserts both the verdict and the stated time budget, so a slow pass
fails here even if the computation is right.
"""

from wpline import verify


def _run(criterion, budget=None):
    r = criterion()
    assert r["ok"], r["detail"]
    if budget is not None:
        assert r["seconds"] <= budget, f"took {r['seconds']:.1f}s, budget {budget}s"
    return r


def test_01_tube_lattice_counts_and_counter():
    r = _run(verify.criterion_1, budget=60.0)
    assert "252" in r["detail"]


def test_02_rank_two_tube_subcategories():
    r = _run(verify.criterion_2)
    assert "6" in r["detail"]


def test_03_perpendicular_bijection():
    _run(verify.criterion_3, budget=10.0)


def test_04_bruteforce_enumeration():
    _run(verify.criterion_4)


def test_05_two_ext_paths_agree():
    r = _run(verify.criterion_5)
    assert "pairs=" in r["detail"]


def test_06_euler_form_consistency():
    _run(verify.criterion_6)


def test_07_coxeter_identity_and_length():
    _run(verify.criterion_7)


def test_08_cox_order_isomorphism():
    _run(verify.criterion_8)


def test_09_window_hasse_diagram_golden():
    r = _run(verify.criterion_9)
    assert "20 nodes" in r["detail"]
    assert "45 covers" in r["detail"]


def test_10_unweighted_line_decomposition():
    r = _run(verify.criterion_10)
    assert "11 nodes" in r["detail"]


def test_11_pushout_certificate():
    _run(verify.criterion_11)


def test_12_shift_invariant_round_trip():
    _run(verify.criterion_12)


def test_13_completion_and_ordering():
    _run(verify.criterion_13, budget=30.0)


def test_all_reported_names_unique():
    names = [c.__doc__ for c in verify.CRITERIA]
    assert len(verify.CRITERIA) == 13
    assert len(set(names)) == 13
