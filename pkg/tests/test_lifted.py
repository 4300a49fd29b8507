import numpy as np
import pytest

from lrcodes.curve_cover import Y_FORM, hermitian_points
from lrcodes.lifted import (INTERPOLATION, LITERAL, POINTS, LineFamily, REDUCE, binary_norm_trace_curve,
                            build_hermitian_lifted, build_nt_lifted, fast_filter, good_monomials,
                            hermitian_curve, intersection_sizes, lines, lucas_sporadic,
                            monomial_is_good, nt_delta, points_good_mask, reduce_on_line,
                            reduced_degree_table)
from lrcodes.poly import Monomial, UniPoly, roots
from lrcodes.recovery import check_on_words


@pytest.fixture(scope="module")
def h4():
    return hermitian_curve(4)


@pytest.fixture(scope="module")
def hlc4():
    return build_hermitian_lifted(4)


def test_curve_is_the_y_form(h4):
    assert len(h4.points) == 64 and h4.D == 5
    ref = hermitian_points(4, Y_FORM).points
    assert np.array_equal(h4.points, ref)


def test_q4_good_monomials(h4):
    gm = good_monomials(h4, 3)
    assert gm.baseline_count == 10
    assert gm.sporadic == [(0, 8), (2, 8), (0, 10)]
    assert gm.rank == 13 == len(gm.distinct)


def test_q4_single_monomials(h4):
    # x^2 y^8 stays at degree <= 3 on every line; x^4 y^3 does not
    assert monomial_is_good(2, 8, h4, 3)
    assert not monomial_is_good(4, 3, h4, 3)
    assert all(monomial_is_good(a, b, h4, 3) for a in range(4) for b in range(4 - a))
    with pytest.raises(ValueError):
        monomial_is_good(8, 2, h4, 3)  # x-exponent over the cap q
    assert monomial_is_good(2, 8, h4, 3, method=POINTS)


def test_vectorised_reduction_matches_long_division(h4):
    fam = lines(h4)
    for L in (0, 17, 101, 239):
        one = LineFamily(h4, fam.alpha[L:L + 1], fam.beta[L:L + 1])
        table = reduced_degree_table(h4, 4, 15, one)
        for a in range(5):
            for b in range(16):
                rem = reduce_on_line(h4, a, b, int(fam.alpha[L]), int(fam.beta[L]))
                assert table[a, b] == len(rem) - 1


def test_modulus_roots_are_the_intersection(h4):
    fam = lines(h4)
    members = fam.members()
    x = h4.points[:, 0]
    for L in range(0, len(fam), 5):
        m = UniPoly(h4.field, fam.modulus(L))
        assert m.degree == 5
        assert sorted(int(r) for r in roots(m)) == sorted(x[members[L]].tolist())


def test_hermitian_line_intersections():
    assert intersection_sizes(hermitian_curve(4)) == {1: 60, 5: 180}
    assert intersection_sizes(hermitian_curve(8)) == {1: 504, 9: 3528}


def test_hlc_q4(hlc4):
    assert (hlc4.n, hlc4.k) == (64, 13)
    cert = hlc4.certify()
    assert cert["locality"] == 4 and cert["availability"] == 15
    assert cert["availability_histogram"] == {15: 64}
    assert hlc4.params["horizontal"] is True
    words = hlc4.code.random_codewords(1000, np.random.default_rng(4))
    assert check_on_words(hlc4.field, words, hlc4.structure) == []


def test_hlc_q4_groups_pairwise_disjoint(hlc4):
    for i in range(hlc4.n):
        supports = [set(g.support) for g in hlc4.structure.groups[i]]
        assert sum(map(len, supports)) == len(set().union(*supports))


def test_hlc_without_horizontal_lines_loses_one():
    lc = build_hermitian_lifted(4, horizontal=False)
    assert lc.certify()["availability"] == 14


def test_codewords_are_low_degree_on_every_line(hlc4):
    curve = hermitian_curve(4)
    ev = np.vstack([Monomial(m).evaluate(curve.field, curve.points)
                    for m in hlc4.extra["monomials"].distinct])
    assert points_good_mask(curve, ev, 3).all()


def test_reduction_test_implies_points_test(h4):
    strong = set(good_monomials(h4, 3, REDUCE).monomials)
    weak = set(good_monomials(h4, 3, POINTS).monomials)
    assert strong <= weak


def test_fast_filter_is_sound_but_incomplete():
    for q, missed in [(4, 2), (8, 27)]:
        good = set(good_monomials(hermitian_curve(q), q - 1).monomials)
        flagged = {(a, b) for a in range(q + 1) for b in range(q * q) if fast_filter(a, b, q)}
        assert flagged <= good
        assert len(good - flagged) == missed
    assert lucas_sporadic(0, 8, 4) and not lucas_sporadic(2, 8, 4)


def test_norm_trace_curves():
    c2 = binary_norm_trace_curve(2)
    assert np.array_equal(c2.points, hermitian_curve(2).points)
    for r in (3, 4, 5):
        c = binary_norm_trace_curve(r)
        assert len(c.points) == 2 ** (2 * r - 1)
        sizes = intersection_sizes(c)
        assert set(sizes) == {2 ** (r - 1) - 1, 2 ** (r - 1) + 1}
    assert intersection_sizes(binary_norm_trace_curve(4)) == {7: 120, 9: 120}


def test_nt_r4_dimensions():
    c = binary_norm_trace_curve(4)
    assert nt_delta(4, INTERPOLATION) == 5 and nt_delta(4, LITERAL) == 6
    assert good_monomials(c, 5).rank == 21
    assert good_monomials(c, 6).rank == 28


def test_nt_lifted_r4():
    lc = build_nt_lifted(4)
    assert (lc.n, lc.k) == (128, 21)
    cert = lc.certify()
    assert cert["locality"] == 6 and cert["availability"] == 15
    words = lc.code.random_codewords(1000, np.random.default_rng(5))
    assert check_on_words(lc.field, words, lc.structure) == []
    # with the literal bound only the 9-point lines leave enough partners
    lit = build_nt_lifted(4, LITERAL)
    assert lit.k == 28 and lit.certify()["locality"] == 7


def test_nt_lifted_rejects_r():
    with pytest.raises(ValueError):
        build_nt_lifted(7)
    with pytest.raises(ValueError):
        nt_delta(4, "loose")


def test_csv_export(h4):
    text = good_monomials(h4, 3).to_csv().splitlines()
    assert text[0] == "a,b,class,in_basis"
    assert "2,8,sporadic,1" in text and "0,0,baseline,1" in text
    assert len(text) == 14
