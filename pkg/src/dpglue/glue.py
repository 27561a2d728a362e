"""Generic-stalk calculus for gluing data along a line.

The conductor ring at the generic point is O_C = prod k(x)[y_i]/(y_i^2)
and O_D is the kernel of the rational derivation

    Delta(a,b): f(x) + sum g_i(x) y_i  |->  a f' + sum b_i g_i.

Setting xi = x - (a/b_1) y_1 and eta_i = y_i - (b_i/b_1) y_1 makes O_C a
2r-dimensional algebra over k(xi) with O_D spanned by {1, eta_i}; the
trace pairing, the pointwise Gorenstein criterion, tameness scans, and
the wild-cusp local rings all live here.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from dpglue import linalg
from dpglue.artinian import FiniteAlgebra, Subalgebra, make_subalgebra
from dpglue.fields import base_field
from dpglue.polynomials import Poly
from dpglue.rational import FunctionField, Place, RationalFunction


@dataclass(frozen=True)
class GenericGlueData:
    """Derivation datum (a, b) in characteristic p with r branches."""

    characteristic: int
    a: RationalFunction
    b: tuple

    def __post_init__(self):
        if not self.b:
            raise ValueError("at least one branch required")
        for bi in self.b:
            if bi.is_zero():
                raise ValueError("every b_i must be nonzero")

    @property
    def r(self) -> int:
        return len(self.b)

    @property
    def field(self) -> FunctionField:
        return FunctionField(base_field(self.characteristic))

    def c(self, i: int) -> RationalFunction:
        """The ratio a/b_i."""
        return self.a / self.b[i]


def glue_data(characteristic: int, a, b) -> GenericGlueData:
    """Build GenericGlueData from strings/RationalFunctions."""
    from dpglue.rational import parse_rational

    ff = FunctionField(base_field(characteristic))

    def conv(v):
        if isinstance(v, RationalFunction):
            return v
        if isinstance(v, int):
            return ff.from_int(v)
        return parse_rational(ff, v)

    return GenericGlueData(characteristic, conv(a), tuple(conv(bi) for bi in b))


@dataclass
class KernelElement:
    """s(f,g) = sum (f_i + g_i y_i) s_i in per-branch coordinates."""

    f: list
    g: list


def delta(data: GenericGlueData, f: RationalFunction, g) -> RationalFunction:
    """The derivation Delta(a,b) applied to f + sum g_i y_i."""
    out = data.a * f.derivative()
    for bi, gi in zip(data.b, g):
        out = out + bi * gi
    return out


# -- the k(xi) engine -------------------------------------------------


@dataclass
class KxiModel:
    """O_C as a 2r-dimensional algebra over k(xi), with O_D inside.

    Basis order: e_1..e_r then y_1..y_r.  The scalar field reuses the
    variable name x for xi (same coefficient representation).
    """

    data: GenericGlueData
    OC: FiniteAlgebra
    sub: Subalgebra
    eta: list = dc_field(default_factory=list)

    @property
    def F(self) -> FunctionField:
        return self.data.field

    def embed_function(self, f: RationalFunction):
        """Image of f(x) in O_C: f(xi)·1 + (a/b_1) f'(xi) y_1."""
        F = self.F
        r = self.data.r
        v = [F.zero] * (2 * r)
        for i in range(r):
            v[i] = f
        v[r] = self.data.c(0) * f.derivative()
        return v

    def x_element(self):
        return self.embed_function(self.F.x)


def kxi_engine(data: GenericGlueData) -> KxiModel:
    r = data.r
    F = data.field
    d = 2 * r

    def vec(idx=None, val=None):
        v = [F.zero] * d
        if idx is not None:
            v[idx] = F.one if val is None else val
        return v

    table = []
    for i in range(d):
        row = []
        for j in range(d):
            # e_i e_j = delta_ij e_i; e_i y_j = delta_ij y_j; y y = 0
            if i < r and j < r:
                row.append(vec(i) if i == j else vec())
            elif i < r <= j:
                row.append(vec(j) if i == j - r else vec())
            elif j < r <= i:
                row.append(vec(i) if j == i - r else vec())
            else:
                row.append(vec())
        table.append(row)
    unit = [F.one] * r + [F.zero] * r
    OC = FiniteAlgebra(F, table, unit,
                       labels=[f"e{i+1}" for i in range(r)]
                       + [f"y{i+1}" for i in range(r)])
    eta = []
    od_basis = [unit]
    for i in range(1, r):
        v = vec(r + i)
        v[r] = -(data.b[i] / data.b[0])
        eta.append(v)
        od_basis.append(v)
    sub = make_subalgebra(OC, od_basis)
    return KxiModel(data, OC, sub, eta)


# -- trace kernel -----------------------------------------------------


def ker_trace_closed_form(data: GenericGlueData, s: KernelElement) -> bool:
    """Membership in ker Tr via f_i/b_i = f_1/b_1 and (af_1/b_1)' = -sum g_i."""
    f1b1 = s.f[0] / data.b[0]
    for i in range(1, data.r):
        if s.f[i] / data.b[i] != f1b1:
            return False
    lhs = (data.a * f1b1).derivative()
    total = data.field.zero
    for gi in s.g:
        total = total + gi
    return lhs == -total


def change_of_basis(data: GenericGlueData, s: KernelElement):
    """Coefficients (F_i, G_i) of s in the xi-adapted dual basis s_i'.

    Works in the nilpotent pair model u + v y_1: substitute
    x_1 = xi + (a/b_1) y_1 and multiply by the Jacobian factor
    1 + (a/b_1)' y_1 on the first branch.
    """
    c = data.c(0)
    cp = c.derivative()
    out = []
    for i in range(data.r):
        fi, gi = s.f[i], s.g[i]
        if i == 0:
            # f(x_1) = f(xi) + c f'(xi) y_1, then times (1 + c' y_1)
            u, v = fi, c * fi.derivative() + gi
            u, v = u, v + cp * u
        else:
            u, v = fi, gi
        out.append((u, v))
    return out


def functional_vector(data: GenericGlueData, s: KernelElement):
    """s as a k(xi)-functional on O_C in the dual basis of {e_i, y_i}.

    Pairing of (u + v y_i) s_i' with U e_i + V y_i is u·V + v·U, so the
    coefficient on e_i* is v and on y_i* is u.
    """
    pairs = change_of_basis(data, s)
    r = data.r
    vec = [None] * (2 * r)
    for i, (u, v) in enumerate(pairs):
        vec[i] = v
        vec[r + i] = u
    return vec


def ker_trace_oracle(data: GenericGlueData, s: KernelElement) -> bool:
    """Evaluate the functional of s on the O_D basis and test vanishing."""
    model = kxi_engine(data)
    vec = functional_vector(data, s)
    F = data.field
    for basis_vec in model.sub.basis:
        acc = F.zero
        for c, x in zip(vec, basis_vec):
            if c and x:
                acc = acc + c * x
        if acc:
            return False
    return True


def kernel_dimension(data: GenericGlueData) -> int:
    """dim over k(xi) of {functionals on O_C vanishing on O_D}."""
    model = kxi_engine(data)
    return len(linalg.nullspace(data.field, model.sub.basis))


# -- pointwise Gorenstein criterion -----------------------------------


def gorenstein_at_point(data: GenericGlueData, place: Place) -> bool:
    """b_i/b_j units at P, and each a/b_i regular at P or (char p) with
    pole order divisible by p."""
    p = data.characteristic
    b1 = data.b[0]
    for bi in data.b[1:]:
        if (bi / b1).order_at(place) != 0:
            return False
    for i in range(data.r):
        ci = data.c(i)
        if ci.is_zero() or ci.is_regular_at(place):
            continue
        if p == 0 or (-ci.order_at(place)) % p:
            return False
    return True


def regularity_constraint_rows(funcs, place: Place):
    """Linear constraints on c_j making sum c_j h_j regular at the place.

    Returns a list of coefficient rows over the base field (empty list
    means no constraint).
    """
    funcs = list(funcs)
    nonzero = [h for h in funcs if not h.is_zero()]
    if not nonzero:
        return []
    base = nonzero[0].field
    if place.is_infinity():
        funcs = [h.invert_variable() for h in funcs]
        place = Place.finite(Poly.x(base))
    pi = place.poly
    M = 0
    for h in funcs:
        if not h.is_zero():
            M = max(M, -h.order_at(place))
    if M == 0:
        return []
    piM = pi**M
    shifted = [h * RationalFunction.from_poly(piM) for h in funcs]
    # all denominators are coprime to pi after reduction, so clearing
    # them does not disturb the congruence condition mod pi^M
    nums = []
    for t in shifted:
        n = t.num
        for other in shifted:
            if other is not t:
                n = n * other.den
        nums.append(n % piM)
    width = piM.degree
    rows = []
    for k in range(width):
        rows.append([n[k] for n in nums])
    # drop all-zero rows
    return [row for row in rows if any(bool(c) for c in row)]


def _local_parameter_power(field: FunctionField, place: Place, j: int):
    if place.is_infinity():
        return RationalFunction(field.base, Poly.one(field.base),
                                Poly.x(field.base)) ** j
    return RationalFunction.from_poly(place.poly) ** j


def gorenstein_at_point_oracle(data: GenericGlueData, place: Place,
                               degree_bound: int | None = None) -> bool:
    """Brute-force search for a local generator of ker Tr at the place.

    Looks for f_1, a polynomial in the local parameter that is a unit at
    the place, with (a f_1/b_1)' regular there and every (b_i/b_1) f_1 a
    unit; solved by linear algebra over the coefficient space.
    """
    if place.is_infinity():
        # move to the standard coordinate at infinity, where the
        # derivative of the proof's construction is the local one
        inv = GenericGlueData(
            data.characteristic,
            data.a.invert_variable(),
            tuple(bi.invert_variable() for bi in data.b),
        )
        origin = Place.finite(Poly.x(data.field.base))
        return gorenstein_at_point_oracle(inv, origin, degree_bound)
    p = data.characteristic
    ff = data.field
    c1 = data.c(0)
    pole = 0 if c1.is_zero() or c1.is_regular_at(place) else -c1.order_at(place)
    if degree_bound is None:
        degree_bound = pole + max(p, 1) + 2
    base = ff.base
    powers = [_local_parameter_power(ff, place, j) for j in range(degree_bound + 1)]
    hs = [(data.a * w / data.b[0]).derivative() for w in powers]
    rows = regularity_constraint_rows(hs, place)
    if rows:
        sols = linalg.nullspace(base, rows)
    else:
        sols = linalg.identity(base, len(powers))
    witness = None
    for sol in sols:
        if sol[0]:
            witness = sol
            break
    if witness is None:
        return False
    f1 = ff.zero
    for cj, w in zip(witness, powers):
        f1 = f1 + cj * w
    # sanity: the found f_1 really solves (2)
    deriv = (data.a * f1 / data.b[0]).derivative()
    if deriv and not deriv.is_regular_at(place):
        raise AssertionError("oracle witness fails its own constraint")
    for bi in data.b:
        fi = (bi / data.b[0]) * f1
        if fi.order_at(place) != 0:
            return False
    return True


# -- tameness ---------------------------------------------------------


def pole_places(f: RationalFunction):
    """All places where f has a pole, with pole orders."""
    out = []
    if f.is_zero():
        return out
    if f.den.degree >= 1:
        _, factors = f.den.factor()
        for poly, mult in factors:
            out.append((Place.finite(poly), mult))
    if f.num.degree > f.den.degree:
        out.append((Place.infinity(), f.num.degree - f.den.degree))
    return out


def _place_key(place: Place) -> str:
    from dpglue.rational import format_poly

    return "~oo" if place.is_infinity() else format_poly(place.poly)


def is_tame(data: GenericGlueData):
    """(tame?, wild points as [(Place, poleOrder)]).

    Tame iff every a/b_i is regular everywhere including infinity.
    """
    wild: dict = {}
    for i in range(data.r):
        ci = data.c(i)
        for place, order in pole_places(ci):
            key = _place_key(place)
            if key not in wild or wild[key][1] < order:
                wild[key] = (place, order)
    points = [wild[k] for k in sorted(wild)]
    return (not points, points)


# -- wild cusps -------------------------------------------------------


@dataclass(frozen=True)
class WildCuspRing:
    p: int
    n: int
    generators: tuple
    gaps: tuple

    @property
    def embedding_dim(self) -> int:
        return len(self.generators)

    @property
    def delta(self) -> int:
        return len(self.gaps)

    def contains(self, i: int) -> bool:
        return i >= 0 and (i % self.p == 0 or i >= self.n * self.p)


def semigroup_generators(members) -> tuple:
    """Minimal generators of a numerical semigroup given enough members.

    ``members`` must contain every element up to (and a bit past) the
    largest generator; elements representable as sums of two smaller
    positive members are discarded.
    """
    members = sorted(set(m for m in members if m > 0))
    mset = set(members)
    gens = []
    for m in members:
        if any((m - s) in mset for s in members if 0 < s < m):
            continue
        gens.append(m)
    return tuple(gens)


def wild_cusp_ring(p: int, n: int) -> WildCuspRing:
    """The local ring k[x^i | i = 0 mod p or i >= np] of a wild cusp."""
    from dpglue.fields import is_prime

    if not is_prime(p):
        raise ValueError("p must be prime")
    if n < 1:
        raise ValueError("n must be >= 1")
    limit = 2 * n * p + 2 * p + 2
    members = [i for i in range(1, limit) if i % p == 0 or i >= n * p]
    gaps = tuple(i for i in range(1, n * p) if i % p)
    return WildCuspRing(p, n, semigroup_generators(members), gaps)


def tangent_dims(p: int, n: int, y_smooth: bool = True):
    """(dim T of the curve germ, dim T of the surface germ).

    The curve dimension is recomputed from the relevant semigroup: the
    wild-cusp semigroup for p >= 3, and <2, 2n+1> for p = 2.
    """
    from dpglue.fields import is_prime

    if not is_prime(p):
        raise ValueError("p must be prime")
    if not y_smooth:
        raise NotImplementedError("only the y-smooth case is computed")
    if p >= 3:
        ring = wild_cusp_ring(p, n)
        dim_curve = ring.embedding_dim
        if dim_curve != p:
            raise AssertionError("wild cusp embedding dimension must be p")
        return (dim_curve, p)
    # p = 2: curve semigroup <2, 2n+1>
    limit = 4 * n + 6
    members = [i for i in range(1, limit)
               if any(i == 2 * s + (2 * n + 1) * t
                      for s in range(i) for t in range(i))]
    dim_curve = len(semigroup_generators(members))
    return (dim_curve, 3)


def gamma_local_sections(h: RationalFunction, place: Place, bound: int):
    """Basis of {f in span(pi^0..pi^bound) : h f' regular at the place}.

    Returned as coefficient vectors in the local-parameter powers.
    """
    ff = FunctionField(h.field)
    powers = [_local_parameter_power(ff, place, j) for j in range(bound + 1)]
    hs = [h * w.derivative() for w in powers]
    rows = regularity_constraint_rows(hs, place)
    if not rows:
        return linalg.identity(h.field, bound + 1)
    return linalg.nullspace(h.field, rows)


def gamma_section_exponents(h: RationalFunction, place: Place, bound: int):
    """Exponents j with pi^j a section (for monomial-diagonal cases)."""
    basis = gamma_local_sections(h, place, bound)
    out = []
    for j in range(bound + 1):
        probe = [h.field.zero] * (bound + 1)
        probe[j] = h.field.one
        if linalg.in_span(h.field, basis, probe):
            out.append(j)
    return out
