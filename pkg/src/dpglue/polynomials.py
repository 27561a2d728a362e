"""Dense univariate polynomials over an exact field.

Coefficient lists are stored low degree first with no trailing zeros;
the zero polynomial has an empty list.  All operations are exact and
work over any field object from :mod:`dpglue.fields` (including function
fields, which makes towers like K(x)[t] available for free).
"""

from __future__ import annotations

import itertools


def _is_element(v) -> bool:
    from fractions import Fraction

    from dpglue.fields import FpElement

    return isinstance(v, (Fraction, FpElement)) or type(v).__name__ == "RationalFunction"


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = cs

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, field) -> "Poly":
        return cls(field, [])

    @classmethod
    def one(cls, field) -> "Poly":
        return cls(field, [field.one])

    @classmethod
    def x(cls, field) -> "Poly":
        return cls(field, [field.zero, field.one])

    @classmethod
    def const(cls, field, c) -> "Poly":
        return cls(field, [c])

    @classmethod
    def from_ints(cls, field, ints) -> "Poly":
        return cls(field, [field.from_int(n) for n in ints])

    # -- basic queries ------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def leading(self):
        if not self.coeffs:
            return self.field.zero
        return self.coeffs[-1]

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.leading() == self.field.one

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, int):
            return Poly.const(self.field, self.field.from_int(other))
        if _is_element(other):
            return Poly.const(self.field, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self.field, [self[i] + o[i] for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self.field, [self[i] - o[i] for i in range(n)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return Poly.zero(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        return Poly(self.field, [c * a for a in self.coeffs])

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None or o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [self.field.zero] * max(0, self.degree - o.degree + 1)
        r = list(self.coeffs)
        lead = o.leading()
        while len(r) >= len(o.coeffs) and any(bool(c) for c in r):
            while r and not r[-1]:
                r.pop()
            if len(r) < len(o.coeffs):
                break
            shift = len(r) - len(o.coeffs)
            factor = r[-1] / lead
            q[shift] = factor
            for i, c in enumerate(o.coeffs):
                r[shift + i] = r[shift + i] - factor * c
        return Poly(self.field, q), Poly(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.degree == o.degree and all(
            a == b for a, b in zip(self.coeffs, o.coeffs)
        )

    def __hash__(self):
        return hash((self.degree, tuple(str(c) for c in self.coeffs)))

    # -- calculus and helpers ----------------------------------------

    def derivative(self) -> "Poly":
        return Poly(
            self.field,
            [self.coeffs[i] * self.field.from_int(i) for i in range(1, len(self.coeffs))],
        )

    def evaluate(self, v):
        acc = Poly.zero(v.field) if isinstance(v, Poly) else self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.leading()
        return Poly(self.field, [c / lead for c in self.coeffs])

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def valuation(self, p: "Poly") -> int:
        """Multiplicity of the irreducible factor p; self must be nonzero."""
        if self.is_zero():
            raise ValueError("valuation of zero polynomial")
        count = 0
        cur = self
        while True:
            q, r = divmod(cur, p)
            if not r.is_zero():
                return count
            cur = q
            count += 1

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k (k >= 0)."""
        return Poly(self.field, [self.field.zero] * k + self.coeffs)

    def reverse(self, degree: int | None = None) -> "Poly":
        """Reverse coefficients up to the given degree (default: own degree)."""
        d = self.degree if degree is None else degree
        return Poly(self.field, [self[d - i] for i in range(d + 1)])

    # -- roots and irreducibility ------------------------------------

    def rational_roots(self):
        """Roots in the base field, found exactly (QQ or GF(p) only)."""
        from dpglue.fields import PrimeField, RationalField
        from fractions import Fraction

        if self.is_zero():
            raise ValueError("zero polynomial")
        roots = []
        if isinstance(self.field, PrimeField):
            for v in range(self.field.p):
                e = self.field.from_int(v)
                if not self.evaluate(e):
                    roots.append(e)
            return roots
        if isinstance(self.field, RationalField):
            # clear denominators, then use the rational root theorem
            from math import lcm

            den = lcm(*[c.denominator for c in self.coeffs]) if self.coeffs else 1
            ints = [int(c * den) for c in self.coeffs]
            while ints and ints[0] == 0:
                if not self.evaluate(Fraction(0)):
                    if Fraction(0) not in roots:
                        roots.append(Fraction(0))
                ints = ints[1:]
            if not ints:
                return roots
            a0, an = abs(ints[0]), abs(ints[-1])
            for p in _divisors(a0):
                for q in _divisors(an):
                    for cand in (Fraction(p, q), Fraction(-p, q)):
                        if cand not in roots and not self.evaluate(cand):
                            roots.append(cand)
            return roots
        raise NotImplementedError("root finding only over QQ and GF(p)")

    def is_irreducible(self) -> bool:
        from dpglue.fields import PrimeField, RationalField

        d = self.degree
        if d <= 0:
            return False
        if d == 1:
            return True
        if isinstance(self.field, PrimeField):
            if self.rational_roots():
                return False
            if d <= 3:
                return True
            # trial division by monic polynomials of degree 2..d//2
            p = self.field.p
            for deg in range(2, d // 2 + 1):
                for tail in itertools.product(range(p), repeat=deg):
                    cand = Poly.from_ints(self.field, list(tail) + [1])
                    if (self % cand).is_zero():
                        return False
            return True
        if isinstance(self.field, RationalField):
            if self.rational_roots():
                return False
            if d <= 3:
                return True
            # a monic irreducible image mod p certifies irreducibility
            from dpglue.fields import GF, is_prime

            lead = self.leading()
            for p in (2, 3, 5, 7, 11, 13, 17, 19, 23):
                if any(c.denominator % p == 0 for c in self.coeffs):
                    continue
                if lead.numerator % p == 0:
                    continue
                img = Poly(GF(p), [GF(p).from_int(c.numerator) / GF(p).from_int(c.denominator) for c in self.coeffs])
                if img.monic().is_irreducible():
                    return True
            raise NotImplementedError(
                "cannot certify irreducibility over QQ for this polynomial"
            )
        raise NotImplementedError("irreducibility only over QQ and GF(p)")

    def factor(self):
        """Factor into monic irreducibles; returns (unit, [(factor, mult)]).

        Complete over GF(p) (exhaustive trial division) and over QQ for
        polynomials whose nonlinear part splits into pieces of degree <= 3
        or is certifiably irreducible.
        """
        from dpglue.fields import PrimeField

        if self.is_zero():
            raise ValueError("cannot factor zero")
        unit = self.leading()
        rem = self.monic()
        factors: list[tuple[Poly, int]] = []
        # strip roots first
        changed = True
        while changed and rem.degree >= 1:
            changed = False
            for root in rem.rational_roots():
                lin = Poly(self.field, [-root, self.field.one])
                m = rem.valuation(lin)
                if m:
                    factors.append((lin, m))
                    for _ in range(m):
                        rem = rem // lin
                    changed = True
        if rem.degree >= 2:
            if isinstance(self.field, PrimeField):
                p = self.field.p
                deg = 2
                while rem.degree >= 2 * deg:
                    found = False
                    for tail in itertools.product(range(p), repeat=deg):
                        cand = Poly.from_ints(self.field, list(tail) + [1])
                        if not cand.is_irreducible():
                            continue
                        m = rem.valuation(cand)
                        if m:
                            factors.append((cand, m))
                            for _ in range(m):
                                rem = rem // cand
                            found = True
                            break
                    if not found:
                        deg += 1
                if rem.degree >= 1:
                    factors.append((rem, 1))
                    rem = Poly.one(self.field)
            else:
                # rootless remainder over QQ: try squarefree split by multiplicity
                for base, mult in _squarefree_decomposition(rem):
                    if base.is_irreducible():
                        factors.append((base, mult))
                    else:
                        raise NotImplementedError(
                            "irreducible factorization over QQ incomplete for "
                            f"degree {base.degree} factor"
                        )
                rem = Poly.one(self.field)
        factors.sort(key=lambda fm: (fm[0].degree, [str(c) for c in fm[0].coeffs]))
        return unit, factors


def _divisors(n: int):
    n = abs(n)
    if n == 0:
        return [1]
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _squarefree_decomposition(f: Poly):
    """Yield (squarefree factor, multiplicity) pairs; char 0 only."""
    if f.field.characteristic != 0:
        raise NotImplementedError("squarefree decomposition implemented for char 0")
    out = []
    g = f.gcd(f.derivative())
    w = f // g
    mult = 1
    while w.degree >= 1:
        y = w.gcd(g)
        piece = w // y
        if piece.degree >= 1:
            out.append((piece.monic(), mult))
        w, g = y, g // y
        mult += 1
    return out
