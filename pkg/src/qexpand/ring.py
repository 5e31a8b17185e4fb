"""Exact coefficient arithmetic: multivariate polynomials and their quotients.

This is the coefficient ring for every series computation in the package:
polynomials over arbitrary-precision integers in a fixed, ordered set of
symbols, and formal quotients of such polynomials.

Representation.  A polynomial is a dict mapping packed exponent keys to
nonzero int coefficients.  The packed key of a monomial with exponents
(e_0, ..., e_{m-1}) is

    sum(e) << m*W  |  e_0 << (m-1)*W  |  ...  |  e_{m-1}

with field width W = 24 bits.  Putting the total degree in the topmost
field makes plain integer comparison of keys agree with graded
lexicographic order on the declared symbols, so max(terms) is the leading
monomial, and key addition is exponent-vector addition.  Fields never
overflow at the degrees reachable here (< 2**24).

Quotients are *not* reduced by multivariate gcd -- that is a deliberate
trade: normalization is limited to integer content, a common monomial
factor, and the sign of the denominator's leading coefficient.  Equality
is still exact, decided by cross-multiplication.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from typing import Mapping, Sequence, Union

import numpy as np

from .errors import ParseError, PoleError, StructureError

_WIDTH = 24
_MASK = (1 << _WIDTH) - 1

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")

# dense int64 fast-path bounds for _mul_terms: only engage when the dict
# walk would dominate, the repacked exponents fit a small accumulator, and
# coefficient growth provably cannot overflow 64-bit arithmetic
_NP_MIN_PAIRS = 1 << 16
_NP_MAX_BITS = 24
_NP_COEF_CAP = 1 << 62


class SymbolTable:
    """Fixed, ordered collection of symbol names shared by ring values."""

    __slots__ = ("names", "_pos", "_shifts", "_degshift")

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise StructureError(f"duplicate symbol names in {names!r}")
        for nm in names:
            if not _NAME_RE.fullmatch(nm):
                raise StructureError(f"invalid symbol name {nm!r}")
        self.names = names
        self._pos = {nm: i for i, nm in enumerate(names)}
        m = len(names)
        self._shifts = tuple((m - 1 - i) * _WIDTH for i in range(m))
        self._degshift = m * _WIDTH

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._pos

    def position(self, name: str) -> int:
        try:
            return self._pos[name]
        except KeyError:
            raise StructureError(f"unknown symbol {name!r}") from None

    def with_symbols(self, *extra: str) -> "SymbolTable":
        """New table extending this one; existing values must be re-embedded."""
        new = [nm for nm in extra if nm not in self._pos]
        return SymbolTable(self.names + tuple(new))

    def pack(self, exps: Sequence[int]) -> int:
        key = sum(exps) << self._degshift
        for e, sh in zip(exps, self._shifts):
            key |= e << sh
        return key

    def unpack(self, key: int):
        return tuple((key >> sh) & _MASK for sh in self._shifts)

    def same_as(self, other: "SymbolTable") -> bool:
        return self is other or self.names == other.names

    def __repr__(self) -> str:
        return f"SymbolTable({', '.join(self.names)})"


def _check_tables(x, y) -> None:
    if not x.table.same_as(y.table):
        raise StructureError(
            f"mixed symbol tables: {x.table.names} vs {y.table.names}"
        )


def _np_info(p: "MultiPoly"):
    """Cached per-symbol exponent columns of a poly as int64 arrays, plus
    coefficient values (None if any exceeds int64), mins/maxs, max |coeff|."""
    info = p._cols
    if info is None:
        terms = p.terms
        n = len(terms)
        cols, mins, maxs = [], [], []
        for sh in p.table._shifts:
            col = np.fromiter(((k >> sh) & _MASK for k in terms), np.int64, n)
            cols.append(col)
            mins.append(int(col.min()))
            maxs.append(int(col.max()))
        cmax = max(abs(c) for c in terms.values())
        try:
            vals = np.fromiter(terms.values(), np.int64, n)
        except OverflowError:
            vals = None
        info = (cols, vals, mins, maxs, cmax)
        p._cols = info
    return info


def _dense_mul(small: "MultiPoly", big: "MultiPoly"):
    """Exact product via an int64 accumulator, or None when the a-priori
    guards (index width, coefficient growth) cannot certify exactness."""
    table = small.table
    cols1, vals1, mins1, maxs1, cmax1 = _np_info(small)
    cols2, vals2, mins2, maxs2, cmax2 = _np_info(big)
    if vals1 is None or vals2 is None:
        return None
    # every accumulator slot collects at most len(small.terms) pair products
    if cmax1 * cmax2 * len(small.terms) >= _NP_COEF_CAP:
        return None
    widths = [
        (h1 - l1 + h2 - l2).bit_length()
        for l1, h1, l2, h2 in zip(mins1, maxs1, mins2, maxs2)
    ]
    total = sum(widths)
    if total > _NP_MAX_BITS or (1 << total) > 32 * len(small.terms) * len(big.terms):
        return None
    offs = []
    pos = total
    for w in widths:
        pos -= w
        offs.append(pos)
    idx1 = np.zeros(len(small.terms), dtype=np.int64)
    idx2 = np.zeros(len(big.terms), dtype=np.int64)
    for col, mn, off in zip(cols1, mins1, offs):
        idx1 |= (col - mn) << off
    for col, mn, off in zip(cols2, mins2, offs):
        idx2 |= (col - mn) << off
    acc = np.zeros(1 << total, dtype=np.int64)
    # walk the short factor in Python; each step is one scatter-add whose
    # indices are distinct (shifting distinct keys by a constant)
    for s, v in zip(idx1.tolist(), vals1.tolist()):
        acc[idx2 + s] += vals2 * v
    nz = np.flatnonzero(acc)
    resvals = acc[nz]
    rescols, resmins, resmaxs = [], [], []
    for mn1, mn2, off, w in zip(mins1, mins2, offs, widths):
        col = ((nz >> off) & ((1 << w) - 1)) + (mn1 + mn2)
        rescols.append(col)
        if len(nz):
            resmins.append(int(col.min()))
            resmaxs.append(int(col.max()))
        else:
            resmins.append(0)
            resmaxs.append(0)
    degshift = table._degshift
    shifts = table._shifts
    deg = sum(rescols) if rescols else np.zeros(len(nz), dtype=np.int64)
    keys = []
    for row in zip(deg.tolist(), *[c.tolist() for c in rescols]):
        key = row[0] << degshift
        for e, sh in zip(row[1:], shifts):
            key |= e << sh
        keys.append(key)
    res = MultiPoly(table, dict(zip(keys, resvals.tolist())))
    cmax = int(max(resvals.max(), -resvals.min())) if len(nz) else 0
    res._cols = (rescols, resvals, resmins, resmaxs, cmax)
    return res


def _mul_terms(t1: dict, t2: dict) -> dict:
    # hot path: every small series product lands here (t1 the shorter)
    out: dict = {}
    get = out.get
    items2 = list(t2.items())
    for k1, c1 in t1.items():
        for k2, c2 in items2:
            k = k1 + k2
            out[k] = get(k, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _add_terms(t1: dict, t2: dict) -> dict:
    if len(t2) > len(t1):
        t1, t2 = t2, t1
    out = dict(t1)
    get = out.get
    for k, c in t2.items():
        v = get(k, 0) + c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


class MultiPoly:
    """Multivariate polynomial with int coefficients over a symbol table.

    The terms dict is frozen by convention: every operation builds a new
    dict, so the numpy exponent-column cache _cols stays valid for life.
    """

    __slots__ = ("table", "terms", "_cols")

    def __init__(self, table: SymbolTable, terms: dict):
        self.table = table
        self.terms = terms
        self._cols = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(table: SymbolTable) -> "MultiPoly":
        return MultiPoly(table, {})

    @staticmethod
    def const(table: SymbolTable, c: int) -> "MultiPoly":
        return MultiPoly(table, {0: c} if c else {})

    @staticmethod
    def monomial(table: SymbolTable, exps: Mapping[str, int], coeff: int = 1) -> "MultiPoly":
        if not coeff:
            return MultiPoly(table, {})
        vec = [0] * len(table)
        for nm, e in exps.items():
            if e < 0:
                raise StructureError(f"negative exponent for {nm!r} in a polynomial")
            vec[table.position(nm)] = e
        return MultiPoly(table, {table.pack(vec): coeff})

    @staticmethod
    def symbol(table: SymbolTable, name: str) -> "MultiPoly":
        return MultiPoly.monomial(table, {name: 1})

    # -- predicates and queries ---------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def const_value(self) -> int:
        return self.terms.get(0, 0)

    def leading_coeff(self) -> int:
        """Coefficient of the graded-lex leading monomial (0 for the zero poly)."""
        if not self.terms:
            return 0
        return self.terms[max(self.terms)]

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(self.terms) >> self.table._degshift

    def degree(self, name: str) -> int:
        """Degree in one symbol; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        sh = self.table._shifts[self.table.position(name)]
        return max((k >> sh) & _MASK for k in self.terms)

    def content(self) -> int:
        """Positive gcd of the integer coefficients (0 for the zero poly)."""
        return reduce(math.gcd, self.terms.values(), 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.terms == ({0: other} if other else {})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.table.same_as(other.table) and self.terms == other.terms

    __hash__ = None  # mutable-ish container; never used as a dict key

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = MultiPoly.const(self.table, other)
        elif not isinstance(other, MultiPoly):
            return NotImplemented
        _check_tables(self, other)
        return MultiPoly(self.table, _add_terms(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.table, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = MultiPoly.const(self.table, other)
        elif not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scaled(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        _check_tables(self, other)
        small, big = (self, other) if len(self.terms) <= len(other.terms) else (other, self)
        if len(small.terms) * len(big.terms) >= _NP_MIN_PAIRS:
            dense = _dense_mul(small, big)
            if dense is not None:
                return dense
        return MultiPoly(self.table, _mul_terms(small.terms, big.terms))

    __rmul__ = __mul__

    def scaled(self, c: int) -> "MultiPoly":
        if not c:
            return MultiPoly(self.table, {})
        if c == 1:
            return self
        return MultiPoly(self.table, {k: c * v for k, v in self.terms.items()})

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise StructureError("negative power of a polynomial; use RatFun")
        result = MultiPoly.const(self.table, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- monomial content helpers (used by RatFun normalization) ------

    def min_exponents(self):
        """Componentwise minimum exponent vector over all terms, packed."""
        if not self.terms or 0 in self.terms:
            return 0
        info = self._cols
        if info is not None:
            mins = info[2]
            return self.table.pack(mins) if any(mins) else 0
        mins = []
        for sh in self.table._shifts:
            mn = _MASK
            for k in self.terms:
                e = (k >> sh) & _MASK
                if e < mn:
                    mn = e
                    if not mn:
                        break
            mins.append(mn)
        return self.table.pack(mins) if any(mins) else 0

    def shift_down(self, packed: int) -> "MultiPoly":
        """Divide every term by the given packed monomial (must divide all)."""
        if packed == 0:
            return self
        return MultiPoly(self.table, {k - packed: c for k, c in self.terms.items()})

    # -- evaluation and embedding -------------------------------------

    def evaluate(self, point: Mapping[str, Union[int, Fraction]]) -> Fraction:
        vals = []
        for nm in self.table.names:
            if nm not in point:
                raise StructureError(f"evaluation point misses symbol {nm!r}")
            vals.append(Fraction(point[nm]))
        total = Fraction(0)
        for k, c in self.terms.items():
            term = Fraction(c)
            for v, e in zip(vals, self.table.unpack(k)):
                if e:
                    term *= v**e
            total += term
        return total

    def embed(self, table: SymbolTable) -> "MultiPoly":
        """Recoded copy over a table containing all of this poly's symbols."""
        if table.same_as(self.table):
            return MultiPoly(table, dict(self.terms))
        old = self.table
        out: dict = {}
        for k, c in self.terms.items():
            vec = [0] * len(table)
            for nm, e in zip(old.names, old.unpack(k)):
                if e:
                    vec[table.position(nm)] = e
            out[table.pack(vec)] = c
        return MultiPoly(table, out)

    # -- rendering ------------------------------------------------------

    def __str__(self) -> str:
        return render_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def render_poly(p: MultiPoly) -> str:
    """Canonical text: graded-lex descending terms, explicit * and ^."""
    if not p.terms:
        return "0"
    pieces = []
    for k in sorted(p.terms, reverse=True):
        c = p.terms[k]
        mono = "*".join(
            nm if e == 1 else f"{nm}^{e}"
            for nm, e in zip(p.table.names, p.table.unpack(k))
            if e
        )
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        pieces.append(("-" if c < 0 else "+", body))
    sign, body = pieces[0]
    out = [body if sign == "+" else f"-{body}"]
    for sign, body in pieces[1:]:
        out.append(f" {sign} {body}")
    return "".join(out)


class RatFun:
    """Quotient of two MultiPoly values, normalized but not gcd-reduced.

    Normalization: zero numerator forces denominator 1; integer content and
    any monomial dividing every term of both numerator and denominator are
    cancelled; the denominator's leading coefficient is made positive.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly):
        _check_tables(num, den)
        if den.is_zero():
            raise PoleError("zero denominator")
        if num.is_zero():
            self.num = num
            self.den = MultiPoly.const(num.table, 1)
            return
        nt, dt = num.terms, den.terms
        cn = num.content()
        cd = den.content()
        g = math.gcd(cn, cd)
        if g > 1:
            nt = {k: c // g for k, c in nt.items()}
            dt = {k: c // g for k, c in dt.items()}
            num = MultiPoly(num.table, nt)
            den = MultiPoly(den.table, dt)
        if 0 not in nt and 0 not in dt:
            ma = num.min_exponents()
            mb = den.min_exponents() if ma else 0
            if ma and mb:
                tb = num.table
                lo = tb.pack([min(x, y) for x, y in zip(tb.unpack(ma), tb.unpack(mb))])
                if lo:
                    num = num.shift_down(lo)
                    den = den.shift_down(lo)
        if den.leading_coeff() < 0:
            num = -num
            den = -den
        self.num = num
        self.den = den

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_int(table: SymbolTable, c: int) -> "RatFun":
        return RatFun(MultiPoly.const(table, c), MultiPoly.const(table, 1))

    @staticmethod
    def from_fraction(table: SymbolTable, fr: Fraction) -> "RatFun":
        fr = Fraction(fr)
        return RatFun(
            MultiPoly.const(table, fr.numerator),
            MultiPoly.const(table, fr.denominator),
        )

    @staticmethod
    def sym(table: SymbolTable, name: str) -> "RatFun":
        return RatFun(MultiPoly.symbol(table, name), MultiPoly.const(table, 1))

    @staticmethod
    def zero(table: SymbolTable) -> "RatFun":
        return RatFun.from_int(table, 0)

    @staticmethod
    def one(table: SymbolTable) -> "RatFun":
        return RatFun.from_int(table, 1)

    @property
    def table(self) -> SymbolTable:
        return self.num.table

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.terms == self.den.terms

    def is_poly(self) -> bool:
        return self.den.is_const() or len(self.den.terms) == 1

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        _check_tables(self, other)
        # exact: cross-multiplied difference must vanish identically
        if self.den.terms == other.den.terms:
            return self.num.terms == other.num.terms
        return (self.num * other.den).terms == (other.num * self.den).terms

    __hash__ = None

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFun):
            return other
        if isinstance(other, int):
            return RatFun.from_int(self.table, other)
        if isinstance(other, Fraction):
            return RatFun.from_fraction(self.table, other)
        if isinstance(other, MultiPoly):
            return RatFun(other, MultiPoly.const(other.table, 1))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        _check_tables(self, other)
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den.terms == other.den.terms:
            return RatFun(self.num + other.num, self.den)
        if other.den.is_const() and other.den.const_value() == 1:
            return RatFun(self.num + other.num * self.den, self.den)
        if self.den.is_const() and self.den.const_value() == 1:
            return RatFun(other.num + self.num * other.den, other.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        _check_tables(self, other)
        if self.num.is_zero() or other.num.is_zero():
            return RatFun.zero(self.table)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        _check_tables(self, other)
        if other.num.is_zero():
            raise PoleError("division by zero")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int) -> "RatFun":
        if n < 0:
            if self.num.is_zero():
                raise PoleError("negative power of zero")
            return RatFun(self.den ** (-n), self.num ** (-n))
        return RatFun(self.num**n, self.den**n)

    # -- structural operations ------------------------------------------

    def substitute(self, assignments) -> "RatFun":
        """Simultaneously replace symbols by RatFun values.

        `assignments` maps symbol names to RatFun / int / Fraction values;
        a list of (name, value) pairs is also accepted.  Unassigned symbols
        stay themselves.
        """
        if not isinstance(assignments, Mapping):
            pairs = list(assignments)
            names = [nm for nm, _ in pairs]
            if len(set(names)) != len(names):
                raise StructureError("assignments target a symbol twice")
            assignments = dict(pairs)
        table = self.table
        vals = {}
        for nm, v in assignments.items():
            if nm not in table:
                raise StructureError(f"unknown symbol {nm!r}")
            r = RatFun.one(table)._coerce(v)
            if r is NotImplemented:
                raise StructureError(f"bad substitution value for {nm!r}")
            _check_tables(self, r)
            vals[nm] = r
        num = _poly_substitute(self.num, vals)
        den = _poly_substitute(self.den, vals)
        if den.is_zero():
            raise PoleError("substitution sends the denominator to zero")
        return num / den

    def evaluate(self, point: Mapping[str, Union[int, Fraction]]) -> Fraction:
        """Exact rational value at a full assignment of the symbols."""
        d = self.den.evaluate(point)
        if d == 0:
            raise PoleError(f"denominator vanishes at {dict(point)!r}")
        return self.num.evaluate(point) / d

    def embed(self, table: SymbolTable) -> "RatFun":
        return RatFun(self.num.embed(table), self.den.embed(table))

    def __str__(self) -> str:
        if self.den == 1:
            return render_poly(self.num)
        return f"({render_poly(self.num)})/({render_poly(self.den)})"

    def __repr__(self) -> str:
        return f"RatFun({self})"


def _poly_substitute(p: MultiPoly, vals: Mapping[str, RatFun]) -> RatFun:
    table = p.table
    touched = {table.position(nm) for nm in vals}
    powers = {nm: [RatFun.one(table)] for nm in vals}

    def power_of(nm: str, e: int) -> RatFun:
        cache = powers[nm]
        while len(cache) <= e:
            cache.append(cache[-1] * vals[nm])
        return cache[e]

    total = RatFun.zero(table)
    for k, c in p.terms.items():
        vec = table.unpack(k)
        rest = [0] * len(table)
        factor = RatFun.from_int(table, c)
        for i, e in enumerate(vec):
            if i in touched:
                if e:
                    factor = factor * power_of(table.names[i], e)
            else:
                rest[i] = e
        mono = MultiPoly(table, {table.pack(rest): 1})
        total = total + factor * mono
    return total


def symbols(names: Union[str, Sequence[str]]):
    """Build a table and its symbols in one go: `t, (q, a) = symbols("q a")`."""
    if isinstance(names, str):
        names = names.split()
    table = SymbolTable(names)
    return table, tuple(RatFun.sym(table, nm) for nm in table.names)


# ---------------------------------------------------------------------------
# parsing


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>[0-9]+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            break
        if m.lastgroup == "int":
            out.append(("int", int(m.group("int"))))
        elif m.lastgroup == "name":
            out.append(("name", m.group("name")))
        else:
            out.append(("op", m.group("op")))
        pos = m.end()
    if text[pos:].strip():
        raise ParseError(f"bad character {text[pos:].strip()[0]!r} at position {pos}")
    return out


def expression_symbols(text: str):
    """Symbol names appearing in an expression, in first-use order."""
    seen = []
    for kind, val in _tokenize(text):
        if kind == "name" and val not in seen:
            seen.append(val)
    return seen


class _Parser:
    def __init__(self, tokens, table: SymbolTable):
        self.tokens = tokens
        self.pos = 0
        self.table = table

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, val = self.take()
        if kind != "op" or val != op:
            got = "end of expression" if kind is None else repr(val)
            raise ParseError(f"expected {op!r}, got {got}")

    def parse(self) -> RatFun:
        v = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input near {self.peek()[1]!r}")
        return v

    def expr(self) -> RatFun:
        v = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            _, op = self.take()
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self) -> RatFun:
        v = self.unary()
        while self.peek() == ("op", "*") or self.peek() == ("op", "/"):
            _, op = self.take()
            w = self.unary()
            v = v * w if op == "*" else v / w
        return v

    def unary(self) -> RatFun:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> RatFun:
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            kind, val = self.take()
            if kind != "int":
                raise ParseError("exponent must be an integer literal")
            return v ** (-val if neg else val)
        return v

    def atom(self) -> RatFun:
        kind, val = self.take()
        if kind == "int":
            return RatFun.from_int(self.table, val)
        if kind == "name":
            return RatFun.sym(self.table, val)
        if kind == "op" and val == "(":
            v = self.expr()
            self.expect_op(")")
            return v
        if kind is None:
            raise ParseError("unexpected end of expression")
        raise ParseError(f"unexpected token {val!r}")


def parse_ratfun(text: str, table: SymbolTable) -> RatFun:
    """Parse `+ - * / ^` expressions over integers and table symbols."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    for kind, val in tokens:
        if kind == "name" and val not in table:
            raise StructureError(f"unknown symbol {val!r}")
    return _Parser(tokens, table).parse()
