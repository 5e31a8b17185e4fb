"""Base change between powers of z and the elements z^n (az;q)_n/(bz;q)_n.

The expansion elements e_n = z^n (az;q)_n / (bz;q)_n are lower triangular
over the monomials z^n with unit diagonal, so the base-change matrix

    A[n][k] = [z^(n-k)] (az;q)_k / (bz;q)_k

is invertible; its inverse B gives z^k = sum_n B[n][k] e_n.  This module
computes both matrices, expands arbitrary truncated series over the e_n by
two independent routes (triangular solve against A, and the closed
coefficient formula driven by the first column B[n][1]), and carries the
specialized expansions for a = 0 and b = a q.

The closed coefficient formula for F = sum c_n e_n reads

    c_n = [z^n]{F (bz;q)_(n-1) / (az;q)_n}
          - a sum_(k<n) B[n-k][1] q^((n-k)k) [z^k]{F (bz;q)_k / (az;q)_(k+1)}

with (bz;q)_(-1) = 1/(1 - bz/q) entering at n = 0.  The same kernel with
F = 1 yields every matrix entry of B directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .errors import OrderError, SingularMatrixError, StructureError
from .ring import RatFun, SymbolTable
from .series import (
    TruncSeries,
    base_element,
    qpow,
    sum_series,
)


@dataclass
class ExpansionResult:
    """Coefficients of a series over the expansion elements, with the route used."""

    coeffs: List[RatFun]
    method: str  # "triangular_solve" | "theorem15" | "carlitz" | "b_eq_aq"

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "method": self.method,
            "coeffs": [str(c) for c in self.coeffs],
        }


class LTMatrix:
    """Lower triangular matrix of RatFun entries, rows 0..n."""

    __slots__ = ("table", "rows")

    def __init__(self, table: SymbolTable, rows: List[List[RatFun]]):
        for i, row in enumerate(rows):
            if len(row) != i + 1:
                raise StructureError(f"row {i} must have {i + 1} entries")
        self.table = table
        self.rows = rows

    @property
    def size(self) -> int:
        return len(self.rows) - 1

    def entry(self, n: int, k: int) -> RatFun:
        if not 0 <= n <= self.size:
            raise OrderError(f"row {n} out of range")
        if not 0 <= k <= n:
            return RatFun.zero(self.table)
        return self.rows[n][k]

    def __matmul__(self, other: "LTMatrix") -> "LTMatrix":
        if self.size != other.size:
            raise StructureError("size mismatch")
        rows = []
        for n in range(self.size + 1):
            row = []
            for k in range(n + 1):
                acc = RatFun.zero(self.table)
                for i in range(k, n + 1):
                    x = self.rows[n][i]
                    if x.is_zero():
                        continue
                    y = other.rows[i][k]
                    if y.is_zero():
                        continue
                    acc = acc + x * y
                row.append(acc)
            rows.append(row)
        return LTMatrix(self.table, rows)

    def is_identity(self) -> bool:
        for n in range(self.size + 1):
            for k in range(n + 1):
                want = 1 if n == k else 0
                if not self.rows[n][k] == want:
                    return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, LTMatrix):
            return NotImplemented
        if self.size != other.size:
            return False
        return all(
            self.rows[n][k] == other.rows[n][k]
            for n in range(self.size + 1)
            for k in range(n + 1)
        )

    __hash__ = None

    def to_json_dict(self) -> dict:
        return {
            "n": self.size,
            "entries": [[str(e) for e in row] for row in self.rows],
        }


def base_matrix(a: RatFun, b: RatFun, n: int) -> LTMatrix:
    """A[i][k] = [z^(i-k)] (az;q)_k/(bz;q)_k for 0 <= k <= i <= n."""
    table = a.table
    q = RatFun.sym(table, "q")
    rows = [[RatFun.zero(table) for _ in range(i + 1)] for i in range(n + 1)]
    ratio = TruncSeries.one(table, n)  # (az;q)_k/(bz;q)_k, column by column
    for k in range(n + 1):
        for i in range(k, n + 1):
            rows[i][k] = ratio.coeffs[i - k]
        if k < n:
            ratio = ratio.mul_linear(a * q**k).div_linear(b * q**k)
    return LTMatrix(table, rows)


def lt_inverse(m: LTMatrix) -> LTMatrix:
    """Inverse by forward substitution; the diagonal must be exactly 1."""
    for i in range(m.size + 1):
        if not m.rows[i][i] == 1:
            raise SingularMatrixError(f"diagonal entry {i} is {m.rows[i][i]}, not 1")
    table = m.table
    inv = [[RatFun.zero(table) for _ in range(i + 1)] for i in range(m.size + 1)]
    for k in range(m.size + 1):
        inv[k][k] = RatFun.one(table)
        for n in range(k + 1, m.size + 1):
            acc = RatFun.zero(table)
            for i in range(k, n):
                x = m.rows[n][i]
                if x.is_zero() or inv[i][k].is_zero():
                    continue
                acc = acc + x * inv[i][k]
            inv[n][k] = -acc
    return LTMatrix(table, inv)


def b_column1(a: RatFun, b: RatFun, n: int) -> List[RatFun]:
    """First column B[1][1]..B[n][1] of the inverse, by greedy peeling.

    Returns a list c with c[m] = B[m][1] (c[0] = 0): peel z = sum_m c[m] e_m
    one expansion element at a time.  Independent of lt_inverse.
    """
    table = a.table
    rest = TruncSeries.z_power(table, 1, n)
    col = [RatFun.zero(table)]
    for m in range(1, n + 1):
        c = rest.coeffs[m]
        col.append(c)
        if not c.is_zero():
            rest = rest - base_element(m, a, b, n, table).scale(c)
    return col


def expand_triangular(f: TruncSeries, a: RatFun, b: RatFun) -> ExpansionResult:
    """Expansion coefficients by forward-solving against the base matrix."""
    n = f.order
    m = base_matrix(a, b, n)
    coeffs: List[RatFun] = []
    for i in range(n + 1):
        acc = f.coeffs[i]
        for k in range(i):
            x = m.rows[i][k]
            if x.is_zero() or coeffs[k].is_zero():
                continue
            acc = acc - x * coeffs[k]
        coeffs.append(acc)
    return ExpansionResult(coeffs, "triangular_solve")


def _kernel_chain(f: TruncSeries, a: RatFun, b: RatFun) -> List[TruncSeries]:
    """W_n = f (bz;q)_(n-1) / (az;q)_n for n = 0..order, sharing one chain."""
    table = f.table
    q = RatFun.sym(table, "q")
    w = f.div_linear(b / q)  # f * (bz;q)_{-1}
    chain = [w]
    for n in range(1, f.order + 1):
        w = w.mul_linear(b * q ** (n - 2)).div_linear(a * q ** (n - 1))
        chain.append(w)
    return chain


def expand_theorem15(f: TruncSeries, a: RatFun, b: RatFun) -> ExpansionResult:
    """Expansion coefficients by the closed formula (no triangular solve)."""
    n = f.order
    table = f.table
    col = b_column1(a, b, n)
    chain = _kernel_chain(f, a, b)
    coeffs = [chain[0].coeffs[0]]
    for m in range(1, n + 1):
        acc = chain[m].coeffs[m]
        corr = RatFun.zero(table)
        for k in range(m):
            c1 = col[m - k]
            if c1.is_zero():
                continue
            wk = chain[k + 1].coeffs[k]
            if wk.is_zero():
                continue
            corr = corr + c1 * qpow(table, (m - k) * k) * wk
        coeffs.append(acc - a * corr)
    return ExpansionResult(coeffs, "theorem15")


def matrix_thm25(a: RatFun, b: RatFun, n: int) -> LTMatrix:
    """Inverse matrix built entry-by-entry from the closed formula."""
    table = a.table
    col = b_column1(a, b, n)
    chain = _kernel_chain(TruncSeries.one(table, n), a, b)
    rows = []
    for m in range(n + 1):
        row = []
        for k in range(m + 1):
            acc = chain[m].coeffs[m - k]
            corr = RatFun.zero(table)
            for i in range(k, m):
                c1 = col[m - i]
                if c1.is_zero():
                    continue
                u = chain[i + 1].coeffs[i - k]
                if u.is_zero():
                    continue
                corr = corr + c1 * qpow(table, (m - i) * i) * u
            row.append(acc - a * corr)
        rows.append(row)
    return LTMatrix(table, rows)


def matrix_entry_thm25(n: int, k: int, a: RatFun, b: RatFun) -> RatFun:
    """Single inverse-matrix entry B[n][k] from the closed formula."""
    if k > n:
        return RatFun.zero(a.table)
    table = a.table
    col = b_column1(a, b, n)
    chain = _kernel_chain(TruncSeries.one(table, n), a, b)
    acc = chain[n].coeffs[n - k]
    corr = RatFun.zero(table)
    for i in range(k, n):
        c1 = col[n - i]
        if c1.is_zero():
            continue
        u = chain[i + 1].coeffs[i - k]
        if u.is_zero():
            continue
        corr = corr + c1 * qpow(table, (n - i) * i) * u
    return acc - a * corr


def reconstruct(coeffs: List[RatFun], a: RatFun, b: RatFun, order: int) -> TruncSeries:
    """sum_n coeffs[n] * z^n (az;q)_n/(bz;q)_n, for round-trip checks."""
    table = a.table
    parts = [
        base_element(m, a, b, order, table).scale(c)
        for m, c in enumerate(coeffs)
        if not c.is_zero()
    ]
    return sum_series(parts, table=table, order=order)


# ---------------------------------------------------------------------------
# specializations


def gn_polynomials(n: int, table: SymbolTable) -> List[RatFun]:
    """g_1..g_n with g_m = 1 - sum_(i=1..m-1) g_(m-i) q^((m-i)i); g[0] unused.

    These satisfy B[m][1](a, aq) = g_m(q) a^(m-1).
    """
    one = RatFun.one(table)
    g = [RatFun.zero(table), one]
    if n < 1:
        return g[: n + 1]
    for m in range(2, n + 1):
        acc = RatFun.zero(table)
        for i in range(1, m):
            acc = acc + g[m - i] * qpow(table, (m - i) * i)
        g.append(one - acc)
    return g


def carlitz_coeffs(f: TruncSeries, b: RatFun) -> ExpansionResult:
    """Expansion over z^n/(bz;q)_n (the a = 0 base): c_n = [z^n]{f (bz;q)_(n-1)}."""
    table = f.table
    q = RatFun.sym(table, "q")
    p = f.div_linear(b / q)  # f * (bz;q)_{-1}
    coeffs = [p.coeffs[0]]
    for n in range(1, f.order + 1):
        p = p.mul_linear(b * q ** (n - 2))
        coeffs.append(p.coeffs[n])
    return ExpansionResult(coeffs, "carlitz")


def coro310_coeffs(f: TruncSeries, a: RatFun) -> ExpansionResult:
    """Expansion over z^n (az;q)_n/(aqz;q)_n = z^n (1-az)/(1-azq^n).

    c_n = sum_(k<n) g_(n-k) q^((n-k)k) [z^n]{(f - f_k)/(1 - az)} with f_k the
    k-th truncation of f; c_0 = f(0).
    """
    table = f.table
    n = f.order
    g = gn_polynomials(n, table)
    zero = RatFun.zero(table)
    # tails[k] = (f - f_k)/(1 - az), needed at [z^m] for m > k
    tails = []
    for k in range(n):
        cut = [zero] * (k + 1) + f.coeffs[k + 1 :]
        tails.append(TruncSeries(table, n, cut).div_linear(a))
    coeffs = [f.coeffs[0]]
    for m in range(1, n + 1):
        acc = zero
        for k in range(m):
            gk = g[m - k]
            if gk.is_zero():
                continue
            t = tails[k].coeffs[m]
            if t.is_zero():
                continue
            acc = acc + gk * qpow(table, (m - k) * k) * t
        coeffs.append(acc)
    return ExpansionResult(coeffs, "b_eq_aq")


# ---------------------------------------------------------------------------
# the generating polynomial S_n(y) behind the closed row sums


def sn_polynomial(n: int, a: RatFun, b: RatFun, y: RatFun,
                  col: Optional[List[RatFun]] = None) -> RatFun:
    """Cleared row-sum polynomial S_n(y) with S_n(y)/prod_(j<n)(y-aq^j) = sum_k B[n][k] y^k.

    S_n(y) = y^(n+1) prod_(i<=n-2)(y - bq^i)
             - a sum_(k<n) B[n-k][1] q^((n-k)k) y^(k+1)
               prod_(i<k)(y - bq^i) prod_(k<j<n)(y - aq^j)

    Divisible by (y - aq^k) for every 0 <= k <= n-1.
    """
    if n < 1:
        raise OrderError("S_n is defined for n >= 1")
    table = a.table
    q = RatFun.sym(table, "q")
    if col is None:
        col = b_column1(a, b, n)

    def prod(factors) -> RatFun:
        acc = RatFun.one(table)
        for v in factors:
            acc = acc * v
        return acc

    lead = y ** (n + 1) * prod(y - b * q**i for i in range(n - 1))
    corr = RatFun.zero(table)
    for k in range(n):
        c1 = col[n - k]
        if c1.is_zero():
            continue
        piece = (
            c1
            * qpow(table, (n - k) * k)
            * y ** (k + 1)
            * prod(y - b * q**i for i in range(k))
            * prod(y - a * q**j for j in range(k + 1, n))
        )
        corr = corr + piece
    return lead - a * corr
