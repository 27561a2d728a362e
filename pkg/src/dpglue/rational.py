"""Rational function fields k(x) with formal derivative and valuations.

A :class:`RationalFunction` is stored reduced with a monic denominator,
so equality is plain comparison of coefficient lists.  Places of the
projective line are monic irreducible polynomials plus a distinguished
point at infinity; ``order_at`` is the corresponding valuation.

The module also provides :class:`SimpleExtension` for finite field
extensions K[u]/(m(u)) with the trace form, and the string grammar
``x^3/(x-1)`` used by scenario files and the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass

from dpglue.fields import FpElement, PrimeField, base_field
from dpglue.polynomials import Poly, _is_element


class RationalFunction:
    """Element of k(x), reduced, with monic denominator."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.one(field)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = Poly.one(field)
        else:
            g = num.gcd(den)
            if g.degree >= 1:
                num, den = num // g, den // g
            lead = den.leading()
            num = num.scale(field.one / lead)
            den = den.scale(field.one / lead)
        self.field = field
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------

    @classmethod
    def from_poly(cls, p: Poly) -> "RationalFunction":
        return cls(p.field, p)

    @classmethod
    def const(cls, field, c) -> "RationalFunction":
        return cls(field, Poly.const(field, c))

    @classmethod
    def x(cls, field) -> "RationalFunction":
        return cls(field, Poly.x(field))

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num[0]

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Poly):
            return RationalFunction.from_poly(other)
        if isinstance(other, int):
            return RationalFunction.const(self.field, self.field.from_int(other))
        if _is_element(other):
            return RationalFunction.const(self.field, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(
            self.field, self.num * o.den + o.num * self.den, self.den * o.den
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(
            self.field, self.num * o.den - o.num * self.den, self.den * o.den
        )

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return RationalFunction(self.field, -self.num, self.den)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.field, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.field, self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            if self.is_zero():
                raise ZeroDivisionError("negative power of zero")
            return RationalFunction(self.field, self.den, self.num) ** (-n)
        return RationalFunction(self.field, self.num**n, self.den**n)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((hash(self.num), hash(self.den)))

    # -- calculus -----------------------------------------------------

    def derivative(self) -> "RationalFunction":
        """Formal d/dx by the quotient rule."""
        return RationalFunction(
            self.field,
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def order_at(self, place: "Place") -> int:
        """Valuation at a place; negative means a pole.  Rejects zero."""
        if self.is_zero():
            raise ValueError("order_at is undefined for the zero function")
        if place.is_infinity():
            return self.den.degree - self.num.degree
        pi = place.poly
        return self.num.valuation(pi) - self.den.valuation(pi)

    def is_regular_at(self, place: "Place") -> bool:
        return self.is_zero() or self.order_at(place) >= 0

    def evaluate(self, v):
        """Substitute v (an element, Poly or RationalFunction) for x."""
        top = self.num.evaluate(v)
        bot = self.den.evaluate(v)
        if isinstance(top, Poly):
            return RationalFunction(self.field, top, bot)
        return top / bot

    def invert_variable(self) -> "RationalFunction":
        """The function f(1/x); turns the place at infinity into (x)."""
        d = max(self.num.degree, self.den.degree)
        return RationalFunction(
            self.field, self.num.reverse(d), self.den.reverse(d)
        )

    # -- printing -----------------------------------------------------

    def __repr__(self):
        return format_rational(self)


@dataclass(frozen=True)
class Place:
    """Closed point of the projective line: monic irreducible poly or infinity."""

    poly: Poly | None  # None encodes the point at infinity

    def __post_init__(self):
        if self.poly is not None:
            if not self.poly.is_monic():
                raise ValueError("finite place must be a monic polynomial")
            if not self.poly.is_irreducible():
                raise ValueError("finite place must be irreducible")

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, poly: Poly) -> "Place":
        return cls(poly.monic())

    @classmethod
    def at_root(cls, field, c) -> "Place":
        return cls(Poly(field, [-c, field.one]))

    def is_infinity(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def __repr__(self):
        if self.poly is None:
            return "Place(oo)"
        return f"Place({format_poly(self.poly)})"


class FunctionField:
    """k(x) as a coefficient field for downstream linear algebra."""

    def __init__(self, base, var: str = "x"):
        self.base = base
        self.var = var
        self.characteristic = base.characteristic

    def from_int(self, n: int) -> RationalFunction:
        return RationalFunction.const(self.base, self.base.from_int(n))

    @property
    def zero(self) -> RationalFunction:
        return RationalFunction.const(self.base, self.base.zero)

    @property
    def one(self) -> RationalFunction:
        return RationalFunction.const(self.base, self.base.one)

    @property
    def x(self) -> RationalFunction:
        return RationalFunction.x(self.base)

    def random(self, rng, max_degree: int = 2) -> RationalFunction:
        num = Poly(self.base, [self.base.random(rng) for _ in range(max_degree + 1)])
        den = Poly.zero(self.base)
        while den.is_zero():
            den = Poly(self.base, [self.base.random(rng) for _ in range(max_degree + 1)])
        return RationalFunction(self.base, num, den)

    def pth_root(self, e: RationalFunction) -> RationalFunction:
        """p-th root if it exists, else raise; base must be GF(p)."""
        p = self.characteristic
        if p == 0:
            raise ArithmeticError("characteristic zero field has no Frobenius")

        def poly_root(poly: Poly) -> Poly:
            coeffs = [self.base.zero] * (poly.degree // p + 1)
            for i, c in enumerate(poly.coeffs):
                if not c:
                    continue
                if i % p:
                    raise ArithmeticError("not a p-th power")
                coeffs[i // p] = self.base.pth_root(c)
            return Poly(self.base, coeffs)

        return RationalFunction(self.base, poly_root(e.num), poly_root(e.den))

    def __eq__(self, other):
        return (
            isinstance(other, FunctionField)
            and other.base == self.base
            and other.var == self.var
        )

    def __hash__(self):
        return hash(("FF", self.base, self.var))

    def __repr__(self):
        return f"{self.base!r}({self.var})"


def function_field(characteristic: int, var: str = "x") -> FunctionField:
    return FunctionField(base_field(characteristic), var)


class SimpleExtension:
    """K[u]/(m(u)) for a monic irreducible m over a field K.

    Elements are coefficient vectors in the basis 1, u, ..., u^(d-1).
    """

    def __init__(self, base, minpoly: Poly, check: bool = True):
        if not minpoly.is_monic():
            raise ValueError("minimal polynomial must be monic")
        if check and minpoly.degree >= 2 and not _irreducible_over(base, minpoly):
            raise ValueError("minimal polynomial must be irreducible")
        self.base = base
        self.minpoly = minpoly
        self.degree = minpoly.degree

    @property
    def one(self):
        return [self.base.one] + [self.base.zero] * (self.degree - 1)

    @property
    def gen(self):
        if self.degree == 1:
            return [-self.minpoly[0]]
        return [self.base.zero, self.base.one] + [self.base.zero] * (self.degree - 2)

    def element(self, coeffs):
        cs = list(coeffs)
        if len(cs) > self.degree:
            raise ValueError("coefficient vector too long")
        return cs + [self.base.zero] * (self.degree - len(cs))

    def add(self, u, v):
        return [a + b for a, b in zip(u, v)]

    def scalar_mul(self, c, u):
        return [c * a for a in u]

    def mul(self, u, v):
        prod = Poly(self.base, u) * Poly(self.base, v)
        red = prod % self.minpoly
        return self.element(red.coeffs)

    def mul_matrix(self, u):
        """Matrix of multiplication by u, columns in the power basis."""
        cols = []
        for i in range(self.degree):
            basis_vec = [self.base.zero] * self.degree
            basis_vec[i] = self.base.one
            cols.append(self.mul(u, basis_vec))
        return [[cols[j][i] for j in range(self.degree)] for i in range(self.degree)]

    def trace(self, u):
        """Trace of the K-linear multiplication-by-u map."""
        m = self.mul_matrix(u)
        t = self.base.zero
        for i in range(self.degree):
            t = t + m[i][i]
        return t


def _irreducible_over(base, poly: Poly) -> bool:
    from dpglue.fields import PrimeField, RationalField

    if isinstance(base, (PrimeField, RationalField)):
        return poly.is_irreducible()
    if isinstance(base, FunctionField):
        d = poly.degree
        if d == 1:
            return True
        if d == 2:
            b, c = poly[1], poly[0]
            p = base.characteristic
            if p != 2:
                disc = b * b - 4 * c
                return _ff_square_root(base, disc) is None
            if not b:
                try:
                    base.pth_root(c)
                    return False
                except ArithmeticError:
                    return True
            raise NotImplementedError(
                "Artin-Schreier quadratics over k(x) not supported"
            )
        raise NotImplementedError("extensions of k(x) of degree > 2 not supported")
    raise NotImplementedError(f"irreducibility over {base!r} not supported")


def _ff_square_root(field: FunctionField, e: RationalFunction):
    """Square root of e in k(x) if one exists, else None."""
    if e.is_zero():
        return field.zero

    def poly_sqrt(p: Poly):
        if p.degree % 2:
            return None
        half = p.degree // 2
        # coefficient matching from the top; leading coeff must be square
        lead = p.leading()
        root_lead = _base_square_root(p.field, lead)
        if root_lead is None:
            return None
        coeffs = [p.field.zero] * (half + 1)
        coeffs[half] = root_lead
        for i in range(half - 1, -1, -1):
            # coefficient of x^(half+i) in the square: 2*c[half]*c[i] + known
            known = p.field.zero
            for j in range(i + 1, half):
                k = half + i - j
                if i + 1 <= k <= half - 1:
                    known = known + coeffs[j] * coeffs[k]
            target = p[half + i] - known
            denom = 2 * coeffs[half]
            if not denom:
                return None
            coeffs[i] = target / denom
        cand = Poly(p.field, coeffs)
        return cand if cand * cand == p else None

    rn = poly_sqrt(e.num)
    rd = poly_sqrt(e.den)
    if rn is None or rd is None:
        return None
    return RationalFunction(e.field, rn, rd)


def _base_square_root(base, c):
    from fractions import Fraction
    from math import isqrt

    if isinstance(c, Fraction):
        a, b = c.numerator, c.denominator
        if a < 0:
            return None
        ra, rb = isqrt(a), isqrt(b)
        if ra * ra == a and rb * rb == b:
            return Fraction(ra, rb)
        return None
    if isinstance(c, FpElement):
        for v in range(c.p):
            if (v * v - c.value) % c.p == 0:
                return FpElement(v, c.p)
        return None
    return None


# -- string grammar ---------------------------------------------------


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j])))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j]))
            i = j
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch))
            i += 1
            continue
        raise ValueError(f"unexpected character {ch!r} at position {i}")
    tokens.append(("end", None))
    return tokens


class _ExprParser:
    """Recursive-descent parser over an algebra adapter.

    The adapter provides constant(int), variable(name) and must return
    values supporting +, -, *, / and integer **.
    """

    def __init__(self, text: str, constant, variable, allow_division=True):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.constant = constant
        self.variable = variable
        self.allow_division = allow_division

    def peek(self):
        return self.tokens[self.pos][0]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self):
        v = self.expr()
        if self.peek() != "end":
            raise ValueError(f"trailing input at token {self.pos}")
        return v

    def expr(self):
        if self.peek() == "-":
            self.next()
            v = -self.term()
        else:
            if self.peek() == "+":
                self.next()
            v = self.term()
        while self.peek() in "+-":
            op = self.next()[0]
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self):
        v = self.factor()
        while self.peek() in "*/":
            op = self.next()[0]
            rhs = self.factor()
            if op == "*":
                v = v * rhs
            else:
                if not self.allow_division:
                    raise ValueError("division not allowed in this context")
                v = v / rhs
        return v

    def factor(self):
        v = self.atom()
        if self.peek() == "^":
            self.next()
            neg = False
            if self.peek() == "-":
                self.next()
                neg = True
            kind, val = self.next()
            if kind != "int":
                raise ValueError("exponent must be an integer")
            v = v ** (-val if neg else val)
        return v

    def atom(self):
        kind, val = self.next()
        if kind == "int":
            return self.constant(val)
        if kind == "name":
            return self.variable(val)
        if kind == "(":
            v = self.expr()
            kind, _ = self.next()
            if kind != ")":
                raise ValueError("missing closing parenthesis")
            return v
        if kind == "-":
            return -self.atom()
        raise ValueError(f"unexpected token {kind!r}")


def parse_rational(field: FunctionField, text: str) -> RationalFunction:
    """Parse the CLI/config grammar into k(x); variable must be the field's."""

    def variable(name):
        if name != field.var:
            raise ValueError(f"unknown variable {name!r}; expected {field.var!r}")
        return field.x

    return _ExprParser(text, field.from_int, variable).parse()


def format_poly(p: Poly, var: str = "x") -> str:
    from fractions import Fraction

    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p[i]
        if not c:
            continue
        if isinstance(c, Fraction) and c.denominator != 1:
            cstr = f"{c.numerator}/{c.denominator}"
            wrap = True
        else:
            cstr = str(c)
            wrap = False
        if i == 0:
            term = f"({cstr})" if wrap else cstr
        else:
            xpow = var if i == 1 else f"{var}^{i}"
            if cstr == "1":
                term = xpow
            elif cstr == "-1":
                term = f"-{xpow}"
            else:
                term = f"({cstr})*{xpow}" if wrap else f"{cstr}*{xpow}"
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


def format_rational(f: RationalFunction, var: str = "x") -> str:
    """Canonical printer; round-trips through parse_rational."""
    num = format_poly(f.num, var)
    if f.den.degree == 0:
        return num
    den = format_poly(f.den, var)
    num_wrapped = f"({num})" if (" " in num or num.startswith("-")) else num
    return f"{num_wrapped}/({den})"
