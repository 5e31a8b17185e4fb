"""Numeric cross-checks: the q-Pochhammer evaluator against independent
oracles, the identity battery on its default grid, region/domain errors,
verdict stability under precision doubling, and the three spot-check
statuses (passed / failed / inconclusive)."""

from fractions import Fraction

import mpmath
import pytest

from qexpand.errors import DomainError, StructureError
from qexpand.numeric import (
    DEFAULT_POINTS,
    check_identity_numeric,
    check_qqq,
    default_numeric_reports,
    numeric_check_names,
    qpoch_num,
    spot_check_series,
)
from qexpand.ring import symbols
from qexpand.series import TruncSeries

# -- q-Pochhammer evaluator ---------------------------------------------------


def test_qpoch_num_finite_matches_exact_fractions():
    c, q = Fraction(1, 3), Fraction(1, 4)
    expected = Fraction(1)
    cur = c
    for n in range(7):
        got = qpoch_num(c, n, q, precision=96)
        with mpmath.workprec(96):
            diff = abs(got - mpmath.mpf(expected.numerator) / expected.denominator)
            assert diff < mpmath.mpf(2) ** -80
        expected *= 1 - cur
        cur *= q


@pytest.mark.parametrize(
    "c,q",
    [
        (Fraction(1, 2), Fraction(1, 3)),
        (Fraction(-3, 4), Fraction(1, 2)),
        (Fraction(2), Fraction(1, 10)),
    ],
)
def test_qpoch_num_infinite_matches_mpmath_qp(c, q):
    with mpmath.workprec(140):
        ours = qpoch_num(c, mpmath.inf, q, precision=128)
        ref = mpmath.qp(_mp(c), _mp(q))
        assert abs(ours - ref) < mpmath.mpf(2) ** -110


def _mp(f):
    return mpmath.mpf(f.numerator) / f.denominator


def test_qpoch_num_quotient_law():
    # (c;q)_n (cq^n;q)_inf = (c;q)_inf
    c, q = Fraction(2, 5), Fraction(1, 3)
    with mpmath.workprec(170):
        for n in (0, 1, 4, 9):
            lhs = qpoch_num(c, n, q, precision=160) * qpoch_num(
                c * q**n, mpmath.inf, q, precision=160
            )
            rhs = qpoch_num(c, mpmath.inf, q, precision=160)
            assert abs(lhs - rhs) < mpmath.mpf(2) ** -140


def test_qpoch_num_negative_index():
    c, q, m = Fraction(1, 3), Fraction(1, 5), 3
    expected = Fraction(1)
    for j in range(1, m + 1):
        expected /= 1 - c * q**-j
    got = qpoch_num(c, -m, q, precision=96)
    with mpmath.workprec(96):
        ref = mpmath.mpf(expected.numerator) / expected.denominator
        assert abs(got - ref) < abs(ref) * mpmath.mpf(2) ** -80


def test_qpoch_num_domain_errors():
    with pytest.raises(DomainError, match="zero factor"):
        qpoch_num(Fraction(1, 2), -1, Fraction(1, 2))
    with pytest.raises(DomainError, match=r"\|q\| < 1"):
        qpoch_num(Fraction(1, 2), mpmath.inf, 1)
    with pytest.raises(StructureError, match="integer"):
        qpoch_num(Fraction(1, 2), 1.5, Fraction(1, 2))


# -- identity battery ---------------------------------------------------------


def test_default_grid_all_pass():
    reports = default_numeric_reports()
    assert len(reports) == 3 * len(numeric_check_names()) + 6
    for r in reports:
        assert r.status == "passed"
        assert r.passed
    assert sorted({r.name for r in reports}) == sorted(
        numeric_check_names() + ["qqq"]
    )


@pytest.mark.parametrize("name", numeric_check_names())
def test_verdict_stable_under_precision_doubling(name):
    point = DEFAULT_POINTS[name][0]
    lo = check_identity_numeric(name, point, precision=128)
    hi = check_identity_numeric(name, point, precision=256)
    assert lo.passed and hi.passed
    assert hi.precision == 256


def test_out_of_region_points_raise():
    with pytest.raises(DomainError, match="convergence region"):
        check_identity_numeric("coogan_ono", {"q": Fraction(1, 2), "z": 2})
    with pytest.raises(DomainError, match="convergence region"):
        check_identity_numeric(
            "rogers_fine",
            {"q": 1, "a": Fraction(1, 3), "b": Fraction(1, 4), "z": Fraction(1, 5)},
        )
    # bilateral sum needs |b/a| < |z| on top of |q|, |z| < 1
    with pytest.raises(DomainError, match="b/a"):
        check_identity_numeric(
            "ramanujan_1psi1",
            {"q": Fraction(1, 5), "a": Fraction(1, 2), "b": Fraction(1, 3), "z": Fraction(1, 2)},
        )


def test_unknown_name_and_missing_symbols():
    with pytest.raises(StructureError, match="unknown numeric check"):
        check_identity_numeric("nosuch", {"q": Fraction(1, 2)})
    with pytest.raises(StructureError, match="misses symbols"):
        check_identity_numeric("coogan_ono", {"q": Fraction(1, 2)})


def test_report_json_shape():
    r = check_identity_numeric("lemma13", {"q": "3/10", "z": "2/5"})
    d = r.to_json_dict()
    assert set(d) == {
        "name", "point", "lhs", "rhs", "abs_diff",
        "tolerance", "precision", "status", "passed",
    }
    assert d["point"] == {"q": "3/10", "z": "2/5"}
    assert d["passed"] is (d["status"] == "passed")


# -- finite theta-sum specialization ------------------------------------------


def test_check_qqq_value_at_m1():
    r = check_qqq(1, Fraction(1, 2))
    assert r.passed
    # both sides reduce to 1 + [1 1]_q q^(2-2m) = 2 at m = 1
    assert mpmath.mpf(r.lhs) == 2


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("q", [Fraction(1, 2), Fraction(1, 3)])
def test_check_qqq_grid(m, q):
    assert check_qqq(m, q).passed
    assert check_qqq(m, q, precision=256).passed


def test_check_qqq_domain_errors():
    with pytest.raises(DomainError, match="m >= 1"):
        check_qqq(0, Fraction(1, 2))
    with pytest.raises(DomainError, match="0 < q < 1"):
        check_qqq(2, 2)
    with pytest.raises(DomainError, match="0 < q < 1"):
        check_qqq(2, 0)


# -- truncated series at a point ----------------------------------------------


def _geometric(order):
    table, (q,) = symbols("q")
    one = TruncSeries.one(table, order)
    return TruncSeries(table, order, [one.coeffs[0]] * (order + 1))


def _closed_geometric(vals, precision):
    return 1 / (1 - vals["z"])


def test_spot_check_passes_when_tail_is_small():
    r = spot_check_series(
        _geometric(80), {"q": Fraction(1, 10), "z": Fraction(1, 2)}, _closed_geometric
    )
    assert r.status == "passed"


def test_spot_check_inconclusive_when_tail_dominates():
    r = spot_check_series(
        _geometric(8), {"q": Fraction(1, 10), "z": Fraction(1, 2)}, _closed_geometric
    )
    assert r.status == "inconclusive"
    assert not r.passed


def test_spot_check_fails_on_wrong_closed_form():
    r = spot_check_series(
        _geometric(80),
        {"q": Fraction(1, 10), "z": Fraction(1, 2)},
        lambda vals, precision: 1 / (1 - vals["z"]) + 1,
    )
    assert r.status == "failed"


def test_spot_check_polynomial_has_zero_tail():
    table, (q,) = symbols("q")
    s = TruncSeries.from_coeffs(table, [1, 2, 3], 10)
    r = spot_check_series(
        s,
        {"q": "1/7", "z": "1/2"},
        lambda vals, precision: 1 + 2 * vals["z"] + 3 * vals["z"] ** 2,
    )
    assert r.status == "passed"
    assert mpmath.mpf(r.abs_diff) == 0


def test_spot_check_too_short_is_inconclusive():
    r = spot_check_series(
        _geometric(1), {"q": Fraction(1, 10), "z": Fraction(1, 2)}, _closed_geometric
    )
    assert r.status == "inconclusive"
