"""Arbitrary-precision numeric cross-checks of the analytic identities.

The symbolic checks prove coefficientwise equality to order N; the checks
here corroborate the full analytic statements at sample points inside
their convergence regions, entirely independently of the exact engine
(both sides are summed or multiplied term by term in mpmath, sharing
nothing beyond the q-Pochhammer evaluator).  One identity -- the finite
theta-sum specialization at z = q^(-m) -- lives only here, because its
theta tails are unbounded in the q-degree and a truncated symbolic
comparison would not be a verification.

Precision is per call, never global: every entry point wraps its work in
mpmath.workprec with guard bits and rounds the result back to the
requested precision.  Comparisons always use an explicit tolerance.
Points are taken as exact rationals (Fractions or strings like "1/10")
so a point is the same number at every precision.

Infinite sums stop after 5 consecutive terms fall below tol/100; infinite
products stop when the log-remainder tail bound
sum_(i>=I) |cq^i|/(1-|cq^i|) drops below the precision target.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Union

import mpmath

from .errors import DomainError, StructureError
from .series import TruncSeries

DEFAULT_PRECISION = 128
DEFAULT_TOLERANCE = Fraction(1, 10**25)

_MAX_TERMS = 200_000

PointValue = Union[int, str, Fraction]
Point = Dict[str, PointValue]


@dataclass
class NumericReport:
    """Outcome of one numeric comparison.

    status is "passed", "failed", or "inconclusive" (truncation tail too
    large to decide, which is distinct from a genuine mismatch); passed is
    True only for conclusive agreement within tolerance.
    """

    name: str
    point: Dict[str, str]
    lhs: str
    rhs: str
    abs_diff: str
    tolerance: str
    precision: int
    status: str

    @property
    def passed(self) -> bool:
        return self.status == "passed"

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "point": dict(self.point),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "abs_diff": self.abs_diff,
            "tolerance": self.tolerance,
            "precision": self.precision,
            "status": self.status,
            "passed": self.passed,
        }


def _to_mp(v):
    """Exact rational (or mp number) -> mpf/mpc at the working precision."""
    if isinstance(v, (mpmath.mpf, mpmath.mpc)):
        return +v
    if isinstance(v, complex):
        return mpmath.mpc(v.real, v.imag)
    f = Fraction(v)
    return mpmath.mpf(f.numerator) / mpmath.mpf(f.denominator)


def _point_str(point: Point) -> Dict[str, str]:
    return {k: str(Fraction(v)) for k, v in sorted(point.items())}


def _nstr(x) -> str:
    return mpmath.nstr(x, 30)


def _sum_terms(terms: Iterator, tol) -> "mpmath.mpf":
    """Sum until 5 consecutive terms fall below tol/100 in magnitude."""
    cutoff = tol / 100
    total = mpmath.mpf(0)
    small = 0
    for count, t in enumerate(terms):
        total += t
        if abs(t) < cutoff:
            small += 1
            if small == 5:
                return total
        else:
            small = 0
        if count > _MAX_TERMS:
            raise DomainError(
                f"series did not settle within {_MAX_TERMS} terms; "
                "point too close to the region boundary"
            )
    return total


def _qpoch_inf(c, q, precision: int):
    """(c;q)_inf with its log-remainder tail bound; needs |q| < 1.

    Truncated at the first index I where the bound
    sum_(i>=I) |cq^i|/(1-|cq^i|) <= |cq^I| / ((1-|q|)(1-|cq^I|))
    falls below 2^-(precision+8); the bound is returned alongside.
    """
    absq = abs(q)
    if absq >= 1:
        raise DomainError(f"(c;q)_inf needs |q| < 1, got |q| = {_nstr(absq)}")
    eps = mpmath.mpf(2) ** (-(precision + 8))
    out = mpmath.mpf(1)
    cur = c
    for _ in range(_MAX_TERMS):
        mag = abs(cur)
        if mag < mpmath.mpf("0.5") and mag / ((1 - absq) * (1 - mag)) < eps:
            return out, mag / ((1 - absq) * (1 - mag))
        out = out * (1 - cur)
        cur = cur * q
    raise DomainError("infinite product did not converge (|q| too close to 1)")


def qpoch_num(c, n, q, precision: int = DEFAULT_PRECISION):
    """(c;q)_n numerically: any integer n, or infinity (requires |q| < 1)."""
    with mpmath.workprec(precision + 16):
        cv = _to_mp(c)
        qv = _to_mp(q)
        if n == mpmath.inf:
            value = _qpoch_inf(cv, qv, precision)[0]
        elif isinstance(n, int):
            value = mpmath.mpf(1)
            if n >= 0:
                cur = cv
                for _ in range(n):
                    value *= 1 - cur
                    cur *= qv
            else:
                cur = cv
                for _ in range(-n):
                    cur /= qv
                    factor = 1 - cur
                    if factor == 0:
                        raise DomainError("(c;q)_n at negative n hits a zero factor")
                    value /= factor
        else:
            raise StructureError(f"n must be an integer or mpmath.inf, got {n!r}")
    with mpmath.workprec(precision):
        return +value


# ---------------------------------------------------------------------------
# identity evaluators: each side summed on its own


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise DomainError(f"point outside convergence region: {message}")


def _region_q_z(v) -> None:
    _require(abs(v["q"]) < 1, "|q| < 1")
    _require(abs(v["z"]) < 1, "|z| < 1")


def _rogers_fine_lhs(v, tol):
    q, a, b, z = v["q"], v["a"], v["b"], v["z"]

    def terms():
        cur = mpmath.mpf(1)
        qn = q
        while True:
            yield cur
            cur = cur * z * (1 - a * qn) / (1 - b * qn)
            qn *= q

    return (1 - z) * _sum_terms(terms(), tol)


def _rogers_fine_rhs(v, tol):
    q, a, b, z = v["q"], v["a"], v["b"], v["z"]

    def terms():
        base = mpmath.mpf(1)
        n = 0
        while True:
            yield base * (1 - a * z * q ** (2 * n + 1))
            base = (
                base
                * b * z * q ** (2 * n + 1)
                * (1 - a * q ** (n + 1)) * (1 - a * z * q ** (n + 1) / b)
                / ((1 - b * q ** (n + 1)) * (1 - z * q ** (n + 1)))
            )
            n += 1

    return _sum_terms(terms(), tol)


def _coogan_ono_lhs(v, tol):
    q, z = v["q"], v["z"]

    def terms():
        cur = 1 / (1 + z)
        n = 0
        while True:
            yield cur
            cur = cur * z * (1 - z * q**n) / (1 + z * q ** (n + 1))
            n += 1

    return _sum_terms(terms(), tol)


def _theta_z2_terms(q, z):
    """(-1)^k q^(k^2) z^(2k), incrementally."""
    cur = mpmath.mpf(1)
    k = 0
    while True:
        yield cur
        cur = cur * (-(q ** (2 * k + 1))) * z * z
        k += 1


def _coogan_ono_rhs(v, tol):
    return _sum_terms(_theta_z2_terms(v["q"], v["z"]), tol)


def _lemma13_lhs(v, tol):
    q, z = v["q"], v["z"]

    def terms():
        cur = 1 - z
        n = 0
        while True:
            yield cur
            cur = cur * z * (1 - z * q ** (n + 1)) / (1 + z * q ** (n + 1))
            n += 1

    return _sum_terms(terms(), tol)


def _lemma13_rhs(v, tol):
    gen = _theta_z2_terms(v["q"], v["z"])
    next(gen)  # k = 0 term enters with weight 1, the rest with weight 2
    return 1 + 2 * _sum_terms(gen, tol)


def _region_1psi1(v) -> None:
    _require(abs(v["q"]) < 1, "|q| < 1")
    _require(v["a"] != 0 and v["z"] != 0, "a, z nonzero")
    _require(abs(v["b"] / v["a"]) < abs(v["z"]), "|b/a| < |z|")
    _require(abs(v["z"]) < 1, "|z| < 1")


def _1psi1_lhs(v, tol):
    """sum_(k=-inf)^inf (a;q)_k/(b;q)_k z^k as two one-sided sums."""
    q, a, b, z = v["q"], v["a"], v["b"], v["z"]

    def nonneg():
        cur = mpmath.mpf(1)
        qn = mpmath.mpf(1)
        while True:
            yield cur
            cur = cur * z * (1 - a * qn) / (1 - b * qn)
            qn *= q

    def negative():
        # (c;q)_(-m) = 1/prod_(j=1..m)(1 - c q^-j)
        cur = mpmath.mpf(1)
        qmj = mpmath.mpf(1)
        while True:
            qmj /= q
            cur = cur * (1 - b * qmj) / ((1 - a * qmj) * z)
            yield cur

    return _sum_terms(nonneg(), tol) + _sum_terms(negative(), tol)


def _1psi1_rhs(v, tol, precision: int = DEFAULT_PRECISION):
    q, a, b, z = v["q"], v["a"], v["b"], v["z"]
    num = [a * z, q / (a * z), q, b / a]
    den = [z, b / (a * z), b, q / a]
    out = mpmath.mpf(1)
    for c in num:
        out *= _qpoch_inf(c, q, precision)[0]
    for c in den:
        out /= _qpoch_inf(c, q, precision)[0]
    return out


class _IdentityNumeric:
    def __init__(self, symbols, region, lhs, rhs):
        self.symbols = symbols
        self.region = region
        self.lhs = lhs
        self.rhs = rhs


NUMERIC_CHECKS: Dict[str, _IdentityNumeric] = {
    "rogers_fine": _IdentityNumeric(
        ("q", "a", "b", "z"), _region_q_z, _rogers_fine_lhs, _rogers_fine_rhs
    ),
    "coogan_ono": _IdentityNumeric(
        ("q", "z"), _region_q_z, _coogan_ono_lhs, _coogan_ono_rhs
    ),
    "lemma13": _IdentityNumeric(
        ("q", "z"), _region_q_z, _lemma13_lhs, _lemma13_rhs
    ),
    "ramanujan_1psi1": _IdentityNumeric(
        ("q", "a", "b", "z"), _region_1psi1, _1psi1_lhs, _1psi1_rhs
    ),
}

# in-region sample points, exact rationals so every precision sees the
# same numbers
DEFAULT_POINTS: Dict[str, List[Point]] = {
    "rogers_fine": [
        {"q": Fraction(1, 10), "a": Fraction(3, 10), "b": Fraction(1, 2), "z": Fraction(1, 5)},
        {"q": Fraction(1, 5), "a": Fraction(-2, 5), "b": Fraction(3, 10), "z": Fraction(3, 10)},
        {"q": Fraction(3, 10), "a": Fraction(1, 4), "b": Fraction(-1, 5), "z": Fraction(2, 5)},
    ],
    "coogan_ono": [
        {"q": Fraction(3, 10), "z": Fraction(2, 5)},
        {"q": Fraction(1, 2), "z": Fraction(1, 4)},
        {"q": Fraction(1, 5), "z": Fraction(-1, 2)},
    ],
    "lemma13": [
        {"q": Fraction(3, 10), "z": Fraction(2, 5)},
        {"q": Fraction(1, 2), "z": Fraction(1, 4)},
        {"q": Fraction(1, 5), "z": Fraction(-1, 2)},
    ],
    "ramanujan_1psi1": [
        {"q": Fraction(1, 5), "a": Fraction(2), "b": Fraction(1, 10), "z": Fraction(1, 2)},
        {"q": Fraction(1, 10), "a": Fraction(3), "b": Fraction(1, 5), "z": Fraction(2, 5)},
        {"q": Fraction(3, 10), "a": Fraction(5, 2), "b": Fraction(1, 8), "z": Fraction(3, 5)},
    ],
}


def numeric_check_names() -> List[str]:
    return sorted(NUMERIC_CHECKS)


def check_identity_numeric(
    name: str,
    point: Point,
    tol=DEFAULT_TOLERANCE,
    precision: int = DEFAULT_PRECISION,
) -> NumericReport:
    """Evaluate both sides of a named identity at one in-region point."""
    try:
        check = NUMERIC_CHECKS[name]
    except KeyError:
        raise StructureError(
            f"unknown numeric check {name!r}; known: {', '.join(numeric_check_names())}"
        ) from None
    missing = [s for s in check.symbols if s not in point]
    if missing:
        raise StructureError(f"point misses symbols {missing} for {name}")
    with mpmath.workprec(precision + 16):
        v = {k: _to_mp(point[k]) for k in check.symbols}
        tolv = _to_mp(tol)
        check.region(v)
        if name == "ramanujan_1psi1":
            lhs = check.lhs(v, tolv)
            rhs = check.rhs(v, tolv, precision)
        else:
            lhs = check.lhs(v, tolv)
            rhs = check.rhs(v, tolv)
        diff = abs(lhs - rhs)
    with mpmath.workprec(precision):
        lhs, rhs, diff, tolv = +lhs, +rhs, +diff, +tolv
    return NumericReport(
        name=name,
        point=_point_str({k: point[k] for k in check.symbols}),
        lhs=_nstr(lhs),
        rhs=_nstr(rhs),
        abs_diff=_nstr(diff),
        tolerance=_nstr(tolv),
        precision=precision,
        status="passed" if diff <= tolv else "failed",
    )


# ---------------------------------------------------------------------------
# the finite theta-sum specialization (z = q^(-m))


def _partial_theta_num(z, q, tol, force: int = 0):
    """sum_k (-1)^k q^(k(k-1)/2) z^k; smallness testing starts at k = force.

    With z a negative power of the base the term magnitudes dip before
    they grow past their minimum and finally decay, so the caller must
    push k beyond the turning point before the 5-consecutive rule may
    engage.
    """
    cutoff = tol / 100
    total = mpmath.mpf(0)
    term = mpmath.mpf(1)
    qk = mpmath.mpf(1)
    small = 0
    for k in range(_MAX_TERMS):
        total += term
        if k >= force:
            if abs(term) < cutoff:
                small += 1
                if small == 5:
                    return total
            else:
                small = 0
        term = term * (-qk) * z
        qk *= q
    raise DomainError("theta sum did not settle")


def check_qqq(
    m: int,
    q,
    tol=DEFAULT_TOLERANCE,
    precision: int = DEFAULT_PRECISION,
) -> NumericReport:
    """The finite identity at z = q^(-m), m >= 1:

    sum_(n=0)^m (-1;q)_n/(-q^(1-m);q)_n [m n]_q q^(n(3n+1)/2 - 2nm)
    = sum_(n=0)^m (-1;q)_n/(-q^(1-m);q)_n [m n]_q q^(n(3n-1)/2 - 2nm)
      (1 + q^n + q^(n-m) - q^(2n-m)) theta(q^(2n-2m+1); q^2)

    with [m n]_q the q-binomial.  Everything is a finite sum except the
    theta tails, whose q-exponents k(k + 2n - 2m) force the summation
    past k = 2(m-n) before smallness testing.
    """
    if m < 1:
        raise DomainError(f"need m >= 1, got {m}")
    qf = Fraction(q)
    if not 0 < qf < 1:
        raise DomainError(f"need 0 < q < 1, got {qf}")
    with mpmath.workprec(precision + 16):
        qv = _to_mp(qf)
        tolv = _to_mp(tol)
        lhs = mpmath.mpf(0)
        rhs = mpmath.mpf(0)
        for n in range(m + 1):
            pre = mpmath.mpf(1)  # (-1;q)_n / (-q^(1-m);q)_n
            for i in range(n):
                pre *= (1 + qv**i) / (1 + qv ** (1 - m + i))
            binom = mpmath.mpf(1)  # (q;q)_m / ((q;q)_n (q;q)_(m-n))
            for i in range(1, m + 1):
                binom *= 1 - qv**i
            for i in range(1, n + 1):
                binom /= 1 - qv**i
            for i in range(1, m - n + 1):
                binom /= 1 - qv**i
            common = pre * binom
            # z-exponents n(3n +/- 1)/2 are integers for every n
            lhs += common * qv ** (n * (3 * n + 1) // 2 - 2 * n * m)
            bracket = 1 + qv**n + qv ** (n - m) - qv ** (2 * n - m)
            theta = _partial_theta_num(
                qv ** (2 * n - 2 * m + 1), qv * qv, tolv,
                force=max(0, 2 * (m - n) + 2),
            )
            rhs += (
                common * qv ** (n * (3 * n - 1) // 2 - 2 * n * m)
                * bracket * theta
            )
        diff = abs(lhs - rhs)
    with mpmath.workprec(precision):
        lhs, rhs, diff, tolv = +lhs, +rhs, +diff, +tolv
    return NumericReport(
        name="qqq",
        point={"m": str(m), "q": str(qf)},
        lhs=_nstr(lhs),
        rhs=_nstr(rhs),
        abs_diff=_nstr(diff),
        tolerance=_nstr(tolv),
        precision=precision,
        status="passed" if diff <= tolv else "failed",
    )


# ---------------------------------------------------------------------------
# numeric side of the symbolic engine: truncated series at a point


def spot_check_series(
    s: TruncSeries,
    point: Point,
    closedform: Callable,
    tol=Fraction(1, 10**20),
    precision: int = DEFAULT_PRECISION,
) -> NumericReport:
    """Compare sum c_n(point) z^n against a closed form at the same point.

    The truncation tail is estimated geometrically from the last three
    term magnitudes; when the estimate exceeds the tolerance the report
    is inconclusive rather than failed.  Coefficients are evaluated
    exactly (the point is rational) before rounding.
    """
    fpoint = {k: Fraction(v) for k, v in point.items()}
    zf = fpoint.pop("z")
    exact = [s.coefficient(n).evaluate(fpoint) for n in range(s.order + 1)]
    with mpmath.workprec(precision + 16):
        zv = _to_mp(zf)
        tolv = _to_mp(tol)
        terms = []
        zp = mpmath.mpf(1)
        for n, c in enumerate(exact):
            terms.append(_to_mp(c) * zp)
            zp *= zv
        total = mpmath.fsum(terms)
        mags = [abs(t) for t in terms[-3:]]
        status = None
        if len(mags) < 3:
            status = "inconclusive"
            tail = mpmath.mpf("inf")
        elif mags[0] == 0 and mags[1] == 0 and mags[2] == 0:
            tail = mpmath.mpf(0)
        elif mags[0] == 0 or mags[1] == 0:
            status = "inconclusive"
            tail = mpmath.mpf("inf")
        else:
            rho = max(mags[1] / mags[0], mags[2] / mags[1])
            if rho >= 1:
                status = "inconclusive"
                tail = mpmath.mpf("inf")
            else:
                tail = mags[2] * rho / (1 - rho)
        if status is None and tail > tolv:
            status = "inconclusive"
        values = dict(point)
        cf = closedform({k: _to_mp(v) for k, v in values.items()}, precision)
        diff = abs(total - cf)
        if status is None:
            status = "passed" if diff <= tolv else "failed"
    with mpmath.workprec(precision):
        total, cf, diff, tolv = +total, +cf, +diff, +tolv
    return NumericReport(
        name="spot_check",
        point=_point_str(point),
        lhs=_nstr(total),
        rhs=_nstr(cf),
        abs_diff=_nstr(diff),
        tolerance=_nstr(tolv),
        precision=precision,
        status=status,
    )


def default_numeric_reports(
    tol=DEFAULT_TOLERANCE, precision: int = DEFAULT_PRECISION
) -> List[NumericReport]:
    """Every registered identity at its default point grid, plus the
    finite theta-sum cases used for acceptance."""
    reports = []
    for name in numeric_check_names():
        for point in DEFAULT_POINTS[name]:
            reports.append(check_identity_numeric(name, point, tol, precision))
    for m in (1, 2, 3):
        for qv in (Fraction(1, 2), Fraction(1, 3)):
            reports.append(check_qqq(m, qv, tol, precision))
    return reports
