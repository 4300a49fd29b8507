import numpy as np
import pytest

from lrcodes.evalcode import (FORMULA, build_code, erase, format_word, min_distance_bruteforce,
                              min_distance_oracle, parse_word, projective_class_count)
from lrcodes.gf import FieldError, field_of_order
from lrcodes.poly import UniPoly
from lrcodes.recovery import check_on_words
from lrcodes.tamo_barg import (build_tamo_barg, good_from_additive, good_from_multiplicative,
                               span_gf_p, tb_design_distance, verify_good)

F13 = field_of_order(13)
RECEIVED = "1 3 1 4 ? 1 1 10 1 3 11 7"


@pytest.fixture(scope="module")
def tb():
    return build_tamo_barg(F13, 2, 6)


def test_partition_into_cosets():
    good = good_from_multiplicative(F13, 2)
    assert good.partition == ((1, 3, 9), (2, 5, 6), (4, 10, 12), (7, 8, 11))
    assert verify_good(good.g, good.partition) == (True, None)
    assert good.r == 2 and good.domain == tuple(range(1, 13))


def test_code_parameters(tb):
    assert (tb.n, tb.k) == (12, 6)
    assert tb.code.design_distance == 5 == tb_design_distance(12, 6, 2)
    assert tb.code.distance_provenance == FORMULA
    assert tb.certify()["locality"] == 2


def test_received_word_completes_to_codeword(tb):
    word = parse_word(RECEIVED, F13)
    fixed, report = tb.recover(word)
    assert fixed[4] == 8
    assert report.bandwidth == 2 and report.residual == []
    assert [tb.code.point_label(j) for j in report.repaired[0]["support"]] == ["2", "6"]
    assert tb.code.contains(fixed)


def test_minimum_distance_matches_design(tb):
    assert min_distance_bruteforce(tb.code) == 5


def test_bruteforce_against_scalar_oracle():
    # small Reed-Solomon codes are MDS
    F = field_of_order(7)
    code = build_code(F, np.arange(1, 7), [UniPoly.monomial(F, i) for i in range(3)])
    assert min_distance_bruteforce(code) == 4 == min_distance_oracle(code)
    code = build_tamo_barg(field_of_order(7), 2, 2).code
    assert min_distance_bruteforce(code) == min_distance_oracle(code)


def test_bruteforce_refuses_big_scans(tb):
    assert projective_class_count(13, 6) == (13**6 - 1) // 12
    assert min_distance_bruteforce(tb.code, work_budget=1000) is None


def test_additive_good_polynomial():
    F = field_of_order(16)
    good = good_from_additive(F, [1, 2])
    assert good.r == 3 and len(good.partition) == 4
    assert verify_good(good.g, good.partition)[0]
    lc = build_tamo_barg(F, 3, 6, source="additive", generators=[1, 2])
    assert (lc.n, lc.k) == (16, 6)
    assert lc.certify()["locality"] == 3
    words = lc.code.random_codewords(1000, np.random.default_rng(1))
    assert check_on_words(F, words, lc.structure) == []
    assert len(span_gf_p(F, [1, 2, 4])) == 8


def test_verify_good_witnesses():
    x = UniPoly.x(F13)
    ok, why = verify_good(x**3, [(1, 3, 9), (2, 5, 7)])
    assert not ok and why[0] == "not constant"
    ok, why = verify_good(x**3, [(1, 3, 9), (1, 5, 6)])
    assert not ok and why == ("overlap", 1)
    ok, why = verify_good(x**3, [(1, 3), (2, 5)])
    assert not ok and why[0] == "degree"


def test_bad_parameters():
    with pytest.raises(ValueError):
        good_from_multiplicative(F13, 4)  # 5 does not divide 12
    with pytest.raises(ValueError):
        build_tamo_barg(F13, 2, 5)
    with pytest.raises(ValueError):
        build_tamo_barg(F13, 2, 10)  # k/r exceeds the 4 parts
    with pytest.raises(FieldError):
        build_tamo_barg(F13, 2, 6, source="cubic")


def test_word_io():
    w = parse_word(RECEIVED, F13)
    assert w[4] is None and format_word(w) == RECEIVED
    assert erase([1, 2, 3], [0, 2]) == [None, 2, None]
    with pytest.raises(IndexError):
        erase([1, 2, 3], [3])
    with pytest.raises(ValueError):
        parse_word("1 13", F13)
