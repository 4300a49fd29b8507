import numpy as np
import pytest

from lrcodes.fiber_avail import (build_gk_lrc, disjoint_pairs, gk_basis, gk_degree, gk_dimension,
                                 gk_l_cap, gk_point_formula, gk_points)
from lrcodes.recovery import check_on_words, recover


@pytest.fixture(scope="module")
def curve():
    return gk_points(3, 3)


@pytest.fixture(scope="module")
def gk0(curve):
    return build_gk_lrc(3, 3, 0, curve=curve)


def test_counts(curve):
    assert curve.s == gk_degree(3, 3) == 7
    assert curve.counts() == {"formula_total": 6076, "affine": 6075, "affine_z0": 27,
                              "evaluation": 6048, "points_at_infinity": 1}
    assert gk_point_formula(3, 3) == 6076
    assert np.all(curve.satisfies(curve.affine[::97]))


@pytest.mark.parametrize("l", [0, 1, 2])
def test_rank_matches_monomial_count(curve, l):
    lc = build_gk_lrc(3, 3, l, curve=curve)
    assert lc.k == 12 * (l + 1) == gk_dimension(3, 3, l)
    assert lc.code.meta["k_source"] == "rank"


def test_large_l_reports_monomial_count():
    assert gk_dimension(3, 3, 260) == 3132
    assert len(gk_basis(3, 3, 260)) == 3132
    assert 260 < gk_l_cap(3, 3)


def test_two_disjoint_recovery_sets(gk0):
    cert = gk0.certify()
    assert cert["localities"] == [2, 6]
    assert cert["availability"] == 2
    assert disjoint_pairs(gk0.structure)


def test_random_codewords_recover_through_both_sets(gk0):
    words = gk0.code.random_codewords(1000, np.random.default_rng(9))
    assert check_on_words(gk0.field, words, gk0.structure) == []


def test_r2_erased_falls_back_to_r1(gk0):
    word = gk0.code.random_codewords(1, np.random.default_rng(1))[0].tolist()
    target = 100
    r2 = next(g for g in gk0.structure.groups[target] if g.label.startswith("R2"))
    erased = {target, *r2.support}
    received = [None if i in erased else w for i, w in enumerate(word)]
    fixed, report = recover(received, gk0.structure, gk0.field)
    assert fixed == word and report.residual == []
    entry = next(e for e in report.repaired if e["index"] == target)
    assert entry["group"].startswith("R1") and len(entry["support"]) == 6


def test_bad_parameters():
    with pytest.raises(ValueError):
        gk_points(3, 2)
    with pytest.raises(ValueError):
        build_gk_lrc(3, 3, gk_l_cap(3, 3))
