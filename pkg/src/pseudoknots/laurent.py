"""Sparse univariate Laurent polynomials over Q, and their fraction field.

Every invariant value in this package lives here: bracket and Jones values
are Laurent polynomials in ``A``, Alexander values in ``t``, and recipe
coefficients are rational functions.  Coefficients are exact
:class:`fractions.Fraction` values throughout; there is no floating point
anywhere.

A polynomial carries the name of its variable as metadata (``var``).
Constants may carry ``var=None`` and combine with anything; combining an
``A``-polynomial with a ``t``-polynomial raises, which keeps Jones and
Alexander values from being mixed by accident.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import KnotError, PolyParseError

__all__ = [
    "LaurentPoly",
    "RationalFunction",
    "poly_text",
    "parse_poly",
    "parse_value",
    "gcd_poly",
]


def _coerce(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"coefficients must be exact rationals, got {type(value).__name__}")


def _unify_vars(a: str | None, b: str | None) -> str | None:
    if a is None:
        return b
    if b is None or a == b:
        return a
    raise KnotError(f"cannot combine values in different variables: {a!r} vs {b!r}")


class LaurentPoly:
    """Immutable sparse Laurent polynomial ``sum(c_e * var^e)``.

    ``terms`` maps integer exponents (possibly negative) to nonzero
    Fraction coefficients.  Zero coefficients are never stored.
    """

    __slots__ = ("terms", "var", "_hash")

    def __init__(self, terms=None, var: str | None = None):
        clean = {}
        if terms:
            for exp, coeff in terms.items():
                coeff = _coerce(coeff)
                if coeff != 0:
                    clean[int(exp)] = coeff
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *_):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, var=None) -> "LaurentPoly":
        return cls({}, var)

    @classmethod
    def constant(cls, value, var=None) -> "LaurentPoly":
        return cls({0: _coerce(value)}, var)

    @classmethod
    def monomial(cls, coeff, exp: int, var=None) -> "LaurentPoly":
        return cls({exp: _coerce(coeff)}, var)

    @classmethod
    def variable(cls, var: str) -> "LaurentPoly":
        return cls({1: Fraction(1)}, var)

    # -- predicates and views ----------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(e == 0 for e in self.terms)

    def is_one(self) -> bool:
        return self.terms == {0: Fraction(1)}

    def degree(self) -> int:
        if not self.terms:
            raise KnotError("degree of the zero polynomial is undefined")
        return max(self.terms)

    def valuation(self) -> int:
        if not self.terms:
            raise KnotError("valuation of the zero polynomial is undefined")
        return min(self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise KnotError("not a constant polynomial")
        return self.terms.get(0, Fraction(0))

    # -- arithmetic ---------------------------------------------------

    def _wrap(self, terms, var):
        return LaurentPoly(terms, var)

    def __add__(self, other):
        other = self._lift(other)
        var = _unify_vars(self.var, other.var)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return self._wrap(terms, var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __neg__(self):
        return self._wrap({e: -c for e, c in self.terms.items()}, self.var)

    def __mul__(self, other):
        other = self._lift(other)
        var = _unify_vars(self.var, other.var)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return self._wrap(terms, var)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._lift(other) - self

    def __pow__(self, n: int):
        if n == 0:
            return LaurentPoly.constant(1, self.var)
        if n < 0:
            if len(self.terms) != 1:
                raise KnotError("negative powers only defined for monomials")
            (e, c), = self.terms.items()
            return LaurentPoly.monomial(Fraction(1) / c, -e, self.var) ** (-n)
        result = LaurentPoly.constant(1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other)
        return NotImplemented

    def scale(self, factor) -> "LaurentPoly":
        factor = _coerce(factor)
        return self._wrap({e: c * factor for e, c in self.terms.items()}, self.var)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by var^k."""
        return self._wrap({e + k: c for e, c in self.terms.items()}, self.var)

    def substitute_inverse(self) -> "LaurentPoly":
        """Replace var by var^-1 (mirror symmetry of the bracket)."""
        return self._wrap({-e: c for e, c in self.terms.items()}, self.var)

    def evaluate(self, x: Fraction) -> Fraction:
        x = _coerce(x)
        total = Fraction(0)
        for e, c in self.terms.items():
            total += c * x**e
        return total

    def with_var(self, var) -> "LaurentPoly":
        return self._wrap(dict(self.terms), var)

    # -- comparisons ---------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.terms != other.terms:
            return False
        return (
            self.var is None
            or other.var is None
            or self.var == other.var
            or self.is_constant()
        )

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash(tuple(sorted(self.terms.items())))
            )
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({poly_text(self)!r})"

    def __str__(self):
        return poly_text(self)


# ---------------------------------------------------------------------------
# ordinary-polynomial helpers (minimum exponent 0), used by gcd and division


def _shift_to_ordinary(p: LaurentPoly) -> tuple[LaurentPoly, int]:
    if p.is_zero():
        return p, 0
    v = p.valuation()
    return p.shift(-v), v


def divmod_poly(p: LaurentPoly, q: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Ordinary polynomial division; both arguments must have valuation >= 0."""
    if q.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    var = _unify_vars(p.var, q.var)
    rem = dict(p.terms)
    quo = {}
    dq = q.degree()
    lead_q = q.terms[dq]
    while rem:
        dr = max(rem)
        if dr < dq:
            break
        factor = rem[dr] / lead_q
        shift = dr - dq
        quo[shift] = factor
        for e, c in q.terms.items():
            e2 = e + shift
            new = rem.get(e2, Fraction(0)) - factor * c
            if new == 0:
                rem.pop(e2, None)
            else:
                rem[e2] = new
    return LaurentPoly(quo, var), LaurentPoly(rem, var)


def exact_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Exact division in the Laurent ring; raises if q does not divide p."""
    if q.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if p.is_zero():
        return LaurentPoly.zero(_unify_vars(p.var, q.var))
    p0, sp = _shift_to_ordinary(p)
    q0, sq = _shift_to_ordinary(q)
    quo, rem = divmod_poly(p0, q0)
    if not rem.is_zero():
        raise KnotError("polynomial division is not exact")
    return quo.shift(sp - sq)


def gcd_poly(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """GCD in the Laurent ring.

    Both arguments are shifted to ordinary polynomials, reduced by the
    Euclidean algorithm over Q, and the result is normalized to have
    minimum exponent 0 and positive lowest coefficient.
    """
    var = _unify_vars(p.var, q.var)
    a, _ = _shift_to_ordinary(p)
    b, _ = _shift_to_ordinary(q)
    while not b.is_zero():
        _, r = divmod_poly(a, b)
        a, b = b, r
        a, _ = _shift_to_ordinary(a)
    if a.is_zero():
        return LaurentPoly.zero(var)
    low = a.terms[a.valuation()]
    return a.scale(Fraction(1) / low).with_var(var)


# ---------------------------------------------------------------------------


class RationalFunction:
    """Canonical quotient num/den of Laurent polynomials.

    Canonical form: gcd(num, den) is a unit, den has minimum exponent 0,
    integer coprime coefficients, and positive lowest coefficient.  With
    that normalization equality is plain field-wise identity.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = LaurentPoly.constant(1, num.var)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        var = _unify_vars(num.var, den.var)
        if not num.is_zero():
            g = gcd_poly(num, den)
            if not g.is_one():
                num = exact_div(num, g)
                den = exact_div(den, g)
            # move all of den's unit content (scalar and var-power) into num
            v = den.valuation()
            if v != 0:
                num = num.shift(-v)
                den = den.shift(-v)
            denominators = [c.denominator for c in den.terms.values()]
            numerators = [c.numerator for c in den.terms.values()]
            from math import gcd as igcd

            lcm = 1
            for d in denominators:
                lcm = lcm * d // igcd(lcm, d)
            content = 0
            for n in numerators:
                content = igcd(content, n)
            scale = Fraction(lcm, content)
            if den.terms[den.valuation()] < 0:
                scale = -scale
            num = num.scale(scale)
            den = den.scale(scale)
        else:
            num = LaurentPoly.zero(var)
            den = LaurentPoly.constant(1, var)
        object.__setattr__(self, "num", num.with_var(var))
        object.__setattr__(self, "den", den.with_var(var))

    def __setattr__(self, *_):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RationalFunction":
        return cls(p)

    @classmethod
    def constant(cls, value, var=None) -> "RationalFunction":
        return cls(LaurentPoly.constant(value, var))

    def is_poly(self) -> bool:
        return self.den.is_one()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    @property
    def var(self):
        return self.num.var

    def _lift(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, LaurentPoly):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        return RationalFunction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other):
        other = self._lift(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = self._lift(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({poly_text(self)!r})"

    def __str__(self):
        return poly_text(self)


def rf_normalize(num: LaurentPoly, den: LaurentPoly) -> RationalFunction:
    """Canonical reduced form of num/den (zero denominator raises)."""
    return RationalFunction(num, den)


# ---------------------------------------------------------------------------
# text rendering and parsing


def _coeff_text(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _poly_body(p: LaurentPoly, var: str) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for i, exp in enumerate(sorted(p.terms, reverse=True)):
        c = p.terms[exp]
        mag = abs(c)
        if exp == 0:
            body = _coeff_text(mag)
        else:
            factor = var if exp == 1 else f"{var}^{exp}"
            body = factor if mag == 1 else f"{_coeff_text(mag)}*{factor}"
        if i == 0:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(pieces)


def poly_text(value) -> str:
    """Render a polynomial or rational function in the canonical grammar.

    Terms appear in strictly descending exponent order, ``c*A^e`` with the
    obvious omissions for unit coefficients and exponents 0 and 1, and
    rational functions print as ``(num)/(den)`` when the denominator is
    not 1.
    """
    if isinstance(value, RationalFunction):
        var = value.var or "A"
        if value.den.is_one():
            return _poly_body(value.num, var)
        return f"({_poly_body(value.num, var)})/({_poly_body(value.den, var)})"
    if isinstance(value, LaurentPoly):
        return _poly_body(value, value.var or "A")
    raise TypeError(f"cannot render {type(value).__name__}")


class _Parser:
    def __init__(self, text: str, var: str | None):
        self.text = text
        self.pos = 0
        self.var = var

    def error(self, message):
        raise PolyParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse_int(self) -> int:
        start = self.pos
        if self.peek() in "+-":
            self.pos += 1
        if not self.peek().isdigit():
            self.error("expected an integer")
        while self.peek().isdigit():
            self.pos += 1
        return int(self.text[start:self.pos])

    def parse_poly(self) -> LaurentPoly:
        terms = {}
        seen_var = None
        self.skip_ws()
        sign = 1
        if self.peek() == "-":
            sign = -1
            self.pos += 1
        elif self.peek() == "+":
            self.pos += 1
        while True:
            self.skip_ws()
            coeff, exp, var_name = self.parse_term()
            if var_name is not None:
                seen_var = var_name
            terms[exp] = terms.get(exp, Fraction(0)) + sign * coeff
            self.skip_ws()
            if self.peek() == "+":
                sign = 1
                self.pos += 1
            elif self.peek() == "-":
                sign = -1
                self.pos += 1
            else:
                break
        var = self.var if self.var is not None else seen_var
        return LaurentPoly(terms, var)

    def parse_term(self):
        coeff = Fraction(1)
        have_coeff = False
        if self.peek().isdigit():
            num = self.parse_int()
            den = 1
            # a '/' introduces a rational coefficient only when followed
            # by digits; '/(' belongs to the rational-function split
            if self.peek() == "/" and self.pos + 1 < len(self.text) and self.text[self.pos + 1].isdigit():
                self.pos += 1
                den = self.parse_int()
                if den == 0:
                    self.error("zero coefficient denominator")
            coeff = Fraction(num, den)
            have_coeff = True
            self.skip_ws()
            if self.peek() == "*":
                self.pos += 1
                self.skip_ws()
        if self.peek().isalpha():
            var_name = ""
            while self.peek().isalpha():
                var_name += self.peek()
                self.pos += 1
            if self.var is not None and var_name != self.var:
                self.error(f"unexpected variable {var_name!r}")
            exp = 1
            if self.peek() == "^":
                self.pos += 1
                exp = self.parse_int()
            return coeff, exp, var_name
        if not have_coeff:
            self.error("expected a term")
        return coeff, 0, None


def parse_poly(text: str, var: str | None = None) -> LaurentPoly:
    """Parse polynomial text (inverse of :func:`poly_text` on polynomials)."""
    parser = _Parser(text, var)
    poly = parser.parse_poly()
    parser.skip_ws()
    if parser.pos != len(text):
        parser.error("trailing input")
    return poly


def parse_value(text: str, var: str | None = None) -> RationalFunction:
    """Parse a polynomial or ``(num)/(den)`` quotient as a rational function.

    Accepts ``1/(-A^2 - A^-2)`` style input: a division whose right-hand
    side is parenthesized splits the text into numerator and denominator.
    """
    stripped = text.strip()
    split = _find_rf_split(stripped)
    if split is None:
        return RationalFunction(parse_poly(stripped, var))
    num_text, den_text = stripped[:split], stripped[split + 1:]
    num_text = num_text.strip()
    den_text = den_text.strip()
    if num_text.startswith("(") and num_text.endswith(")"):
        num_text = num_text[1:-1]
    if den_text.startswith("(") and den_text.endswith(")"):
        den_text = den_text[1:-1]
    else:
        raise PolyParseError("denominator must be parenthesized", split + 1)
    num = parse_poly(num_text, var)
    den = parse_poly(den_text, var)
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    return RationalFunction(num, den)


def _find_rf_split(text: str) -> int | None:
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0 and i + 1 < len(text) and text[i + 1:].lstrip().startswith("("):
            return i
    return None
