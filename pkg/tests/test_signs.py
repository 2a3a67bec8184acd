import pytest

from padic_cf.algorithms import expand
from padic_cf.errors import TerminatedExpansionError
from padic_cf.quadratic import QuadElem
from padic_cf.signs import (
    b_classify,
    det_bareiss,
    predict_sign_usage,
    predictor_agreement,
    sign_matrix,
    trace_consistent,
)


def test_b_classify_definition_cases():
    assert b_classify(QuadElem.sqrt(34, 5)) == 0
    assert b_classify(QuadElem.rational(1, 5, 5)) == 1
    assert b_classify(QuadElem.rational(-1, 5, 5)) == -1


def test_b_classify_matches_trace_on_sqrt54():
    r = expand(QuadElem.sqrt(54, 5), "b2", 1000)
    assert trace_consistent(r)
    # only b_9 = 4/5 = t - sign(t) with t = -1/5 uses the sign
    assert [n for n, b in enumerate(r.sign_trace) if b] == [9]
    assert r.sign_trace[9] == -1 and str(r.quotients[9]) == "4/5"


def _elem_with_tail(digits_after_s, p=5):
    # x = 2 + sum c_i p^i, i.e. x - s(x) has the given digits from exponent 1
    num = 2 + sum(d * p**i for i, d in enumerate(digits_after_s, start=1))
    return QuadElem.rational(num, 1, p)


def test_sign_matrix_n1():
    m = sign_matrix(_elem_with_tail([1, 2]))
    assert m.n == 1 and m.entries == ((2,),)


def test_sign_matrix_n2_layout():
    # c_1 = 0, c_2 = 1, c_3 = -2, c_4 = 2
    m = sign_matrix(_elem_with_tail([0, 1, -2, 2]))
    assert m.n == 2
    assert m.entries == ((-2, 1), (2, -2))


def test_sign_matrix_of_terminal_quotient():
    with pytest.raises(TerminatedExpansionError):
        sign_matrix(QuadElem.rational(2, 1, 5))


def test_predict_trivial_cases():
    pred = predict_sign_usage(_elem_with_tail([1, 0]))
    assert (pred.det_int, pred.det_mod_p, pred.predicted_nonzero_b) == (0, 0, True)
    pred = predict_sign_usage(_elem_with_tail([1, 2]))
    assert (pred.det_int, pred.det_mod_p, pred.predicted_nonzero_b) == (2, 2, False)


@pytest.mark.parametrize(
    "m, d",
    [([[1]], 1), ([[2, 1], [1, 2]], 3), ([[0, 1], [1, 0]], -1), ([[1, 2, 3], [4, 5, 6], [7, 8, 10]], -3), ([[0, 0], [1, 1]], 0)],
)
def test_det_bareiss(m, d):
    assert det_bareiss(m) == d


def test_predictor_agreement_empty():
    report = predictor_agreement([])
    assert report.cases == [] and report.counts()["int"] == {"agree": 0, "disagree": 0}


def test_predictor_agreement_single_step():
    # alpha_0 = 2 + 5 (c_1 = 1, c_2 = 0): det = 0 predicts a_0(alpha_1) = 0
    x = _elem_with_tail([1, 0])
    r = expand(x, "b2", 3)
    report = predictor_agreement([("rat:7/1", r)])
    first = report.cases[0]
    assert first.k == 0 and first.predicted_int
    assert first.actual == (b_classify(r.complete_quotients[1]) != 0)


def test_predictor_runs_on_sqrt34():
    r = expand(QuadElem.sqrt(34, 5), "b2", 50)
    report = predictor_agreement([("sqrt:34", r)])
    assert len(report.cases) == (r.steps - 1 + 1) // 2
    for c in report.disagreements("int"):
        assert "--input sqrt:34" in c.reproducer()


def test_predictor_rejects_other_algorithms():
    with pytest.raises(ValueError):
        predictor_agreement([("sqrt:34", expand(QuadElem.sqrt(34, 5), "new", 10))])
