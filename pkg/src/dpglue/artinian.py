"""Finite-dimensional commutative algebras, modules, and duality.

An algebra is given by structure constants over an exact base field F;
a module by one action matrix per algebra basis vector.  The dualizing
module is realized concretely as the F-linear dual with transposed
action, which agrees with the abstract definition whenever the algebra
is finite over an embedded copy of its residue field (the only case
this package constructs).
"""

from __future__ import annotations

from dataclasses import dataclass

from dpglue import linalg
from dpglue.polynomials import Poly


class FiniteAlgebra:
    """Commutative associative unital algebra via structure constants.

    ``table[i][j]`` is the coordinate vector of e_i * e_j.  The axioms
    are verified exhaustively on the basis at construction time.
    """

    def __init__(self, field, table, unit, check: bool = True, labels=None):
        self.field = field
        self.table = table
        self.unit = list(unit)
        self.dim = len(table)
        self.labels = labels or [f"e{i}" for i in range(self.dim)]
        self._local_data = None
        if check:
            self._verify()

    def _verify(self):
        d = self.dim
        for i in range(d):
            if len(self.table[i]) != d or any(len(v) != d for v in self.table[i]):
                raise ValueError("structure constant table has wrong shape")
        for i in range(d):
            for j in range(i + 1, d):
                if self.table[i][j] != self.table[j][i]:
                    raise ValueError(f"not commutative at basis pair ({i},{j})")
        for i in range(d):
            ei = self.basis_vector(i)
            if self.mul(self.unit, ei) != ei:
                raise ValueError(f"unit fails on basis vector {i}")
        for i in range(d):
            for j in range(d):
                ij = self.table[i][j]
                for k in range(d):
                    left = self.mul(ij, self.basis_vector(k))
                    right = self.mul(self.basis_vector(i), self.table[j][k])
                    if left != right:
                        raise ValueError(f"not associative at ({i},{j},{k})")

    def basis_vector(self, i: int):
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def mul(self, u, v):
        out = [self.field.zero] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                tij = self.table[i][j]
                for k in range(self.dim):
                    if tij[k]:
                        out[k] = out[k] + ab * tij[k]
        return out

    def mult_matrix(self, u):
        """Matrix of multiplication by u (columns are u * e_j)."""
        cols = [self.mul(u, self.basis_vector(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def power(self, u, n: int):
        acc = self.unit
        for _ in range(n):
            acc = self.mul(acc, u)
        return acc

    # -- locality -----------------------------------------------------

    def local_structure(self):
        """(is_local, maximal ideal basis or None).

        Local with residue field F iff every basis vector has a
        characteristic polynomial (t - c)^dim with c in F; the maximal
        ideal is then spanned by the e_i - c_i.
        """
        if self._local_data is not None:
            return self._local_data
        d = self.dim
        shifts = []
        for i in range(d):
            cp = linalg.charpoly(self.field, self.mult_matrix(self.basis_vector(i)))
            lam = _pure_power_root(self.field, cp)
            if lam is None:
                self._local_data = (False, None)
                return self._local_data
            shifts.append(lam)
        m_gens = []
        for i in range(d):
            v = self.basis_vector(i)
            m_gens.append([v[k] - shifts[i] * self.unit[k] for k in range(d)])
        basis = linalg.row_space_basis(self.field, m_gens)
        if len(basis) != d - 1:
            # can only happen for the zero algebra; treat as non-local
            self._local_data = (False, None)
            return self._local_data
        self._local_data = (True, basis)
        return self._local_data

    def is_local(self) -> bool:
        return self.local_structure()[0]

    def maximal_ideal_basis(self):
        ok, basis = self.local_structure()
        if not ok:
            raise ValueError("algebra is not local with residue field F")
        return basis

    def regular_module(self) -> "FiniteModule":
        action = [self.mult_matrix(self.basis_vector(i)) for i in range(self.dim)]
        return FiniteModule(self, self.dim, action, check=False)


def _pure_power_root(field, cp: Poly):
    """c such that cp == (t - c)^deg, or None."""
    d = cp.degree
    if d == 0:
        return None
    p = field.characteristic
    if p == 0 or d % p:
        lam = -cp[d - 1] / field.from_int(d)
    else:
        pk = 1
        m = d
        while m % p == 0:
            m //= p
            pk *= p
        # cp = (t^pk - c^pk)^m, so the t^(pk*(m-1)) coefficient is -m*c^pk
        power = -cp[pk * (m - 1)] / field.from_int(m)
        lam = power
        try:
            while pk > 1:
                lam = field.pth_root(lam)
                pk //= p
        except ArithmeticError:
            return None
    t = Poly.x(field)
    if (t - Poly.const(field, lam)) ** d == cp:
        return lam
    return None


class FiniteModule:
    """Module over a FiniteAlgebra, given by per-basis action matrices."""

    def __init__(self, algebra: FiniteAlgebra, dim: int, action, check: bool = True):
        self.algebra = algebra
        self.field = algebra.field
        self.dim = dim
        self.action = action
        if check:
            self._verify()

    def _verify(self):
        A = self.algebra
        if len(self.action) != A.dim:
            raise ValueError("one action matrix required per algebra basis vector")
        unit_mat = self.action_of(A.unit)
        if not linalg.mat_eq(unit_mat, linalg.identity(self.field, self.dim)):
            raise ValueError("unit does not act as identity")
        for i in range(A.dim):
            for j in range(A.dim):
                prod = linalg.mat_mul(self.field, self.action[i], self.action[j])
                expected = self.action_of(A.table[i][j])
                if not linalg.mat_eq(prod, expected):
                    raise ValueError(f"action incompatible with product ({i},{j})")

    def action_of(self, a):
        """Action matrix of an arbitrary algebra element."""
        out = linalg.zeros(self.field, self.dim, self.dim)
        for i, c in enumerate(a):
            if not c:
                continue
            mat = self.action[i]
            for r in range(self.dim):
                row = mat[r]
                orow = out[r]
                for s in range(self.dim):
                    if row[s]:
                        orow[s] = orow[s] + c * row[s]
        return out

    def apply(self, a, v):
        return linalg.mat_vec(self.field, self.action_of(a), v)


def length(module: FiniteModule) -> int:
    """Length over a local algebra with residue field F: the F-dimension."""
    if module.algebra.dim and not module.algebra.is_local():
        raise ValueError("length requires a local algebra with residue field F")
    return module.dim


def dual_module(module: FiniteModule) -> FiniteModule:
    """Hom_F(M, F) with (a.l)(v) = l(a.v): transpose the action."""
    action = [linalg.transpose(m) for m in module.action]
    return FiniteModule(module.algebra, module.dim, action, check=False)


def socle(module: FiniteModule):
    """Basis of {v : m.v = 0} for the maximal ideal m; algebra must be local."""
    m_basis = module.algebra.maximal_ideal_basis()
    if not m_basis:
        return [module_basis_vector(module, i) for i in range(module.dim)]
    stacked = []
    for mv in m_basis:
        stacked.extend(module.action_of(mv))
    return linalg.nullspace(module.field, stacked)


def module_basis_vector(module: FiniteModule, i: int):
    v = [module.field.zero] * module.dim
    v[i] = module.field.one
    return v


def annihilator(module: FiniteModule):
    """Basis of the ideal {a in A : a.M = 0}."""
    A = module.algebra
    rows = []
    for r in range(module.dim):
        for s in range(module.dim):
            rows.append([module.action[i][r][s] for i in range(A.dim)])
    return linalg.nullspace(module.field, rows)


def is_faithful(module: FiniteModule) -> bool:
    return not annihilator(module)


def hom_space(M: FiniteModule, N: FiniteModule):
    """Basis of Hom_A(M, N) as flattened n x m matrices."""
    field = M.field
    n, m = N.dim, M.dim
    rows = []
    for i in range(M.algebra.dim):
        rho_m = M.action[i]
        rho_n = N.action[i]
        # constraint rho_n @ T - T @ rho_m = 0, entry (r, s)
        for r in range(n):
            for s in range(m):
                row = [field.zero] * (n * m)
                for k in range(n):
                    if rho_n[r][k]:
                        row[k * m + s] = row[k * m + s] + rho_n[r][k]
                for k in range(m):
                    if rho_m[k][s]:
                        row[r * m + k] = row[r * m + k] - rho_m[k][s]
                rows.append(row)
    return linalg.nullspace(field, rows)


def find_isomorphism(M: FiniteModule, N: FiniteModule, seed: int = 0):
    """An invertible A-linear map M -> N as a matrix, or None."""
    import random

    if M.dim != N.dim:
        return None
    field = M.field
    n = M.dim
    homs = hom_space(M, N)
    if not homs:
        return None if n else linalg.identity(field, 0)

    def unflatten(vec):
        return [vec[r * n : (r + 1) * n] for r in range(n)]

    def try_vec(coeffs):
        vec = [field.zero] * (n * n)
        for c, h in zip(coeffs, homs):
            if not c:
                continue
            vec = [x + c * y for x, y in zip(vec, h)]
        T = unflatten(vec)
        if linalg.det(field, T):
            return T
        return None

    for i in range(len(homs)):
        got = try_vec([field.one if j == i else field.zero for j in range(len(homs))])
        if got:
            return got
    rng = random.Random(seed)
    p = field.characteristic
    hi = (p - 1) if p else 9
    for _ in range(300):
        got = try_vec([field.from_int(rng.randint(0, hi)) for _ in homs])
        if got:
            return got
    return None


def modules_isomorphic(M: FiniteModule, N: FiniteModule, seed: int = 0) -> bool:
    return find_isomorphism(M, N, seed=seed) is not None


# -- subalgebras and the restriction trace ----------------------------


@dataclass
class Subalgebra:
    """Subalgebra of a parent FiniteAlgebra, with its own abstract model.

    ``basis`` holds parent coordinates of the chosen basis vectors;
    ``algebra`` is the abstract algebra on that basis.
    """

    parent: FiniteAlgebra
    basis: list
    algebra: FiniteAlgebra

    def to_parent(self, coeffs):
        field = self.parent.field
        out = [field.zero] * self.parent.dim
        for c, b in zip(coeffs, self.basis):
            for k in range(self.parent.dim):
                out[k] = out[k] + c * b[k]
        return out

    def from_parent(self, vec):
        field = self.parent.field
        sol = linalg.solve(field, linalg.transpose(self.basis), vec)
        if sol is None:
            raise ValueError("vector not in subalgebra")
        return sol


def make_subalgebra(parent: FiniteAlgebra, basis, check: bool = True) -> Subalgebra:
    """Build the abstract algebra on a multiplicatively closed subspace.

    Raises if the basis is dependent, misses the unit, or is not closed.
    """
    field = parent.field
    basis = [list(b) for b in basis]
    if linalg.rank(field, basis) != len(basis):
        raise ValueError("subalgebra basis is not independent")
    bt = linalg.transpose(basis)
    unit = linalg.solve(field, bt, parent.unit)
    if unit is None:
        raise ValueError("subalgebra does not contain the unit")
    d = len(basis)
    table = []
    for i in range(d):
        row = []
        for j in range(d):
            prod = parent.mul(basis[i], basis[j])
            coeffs = linalg.solve(field, bt, prod)
            if coeffs is None:
                raise ValueError(
                    f"subspace not closed under multiplication at ({i},{j})"
                )
            row.append(coeffs)
        table.append(row)
    algebra = FiniteAlgebra(field, table, unit, check=check)
    return Subalgebra(parent, basis, algebra)


def quotient_module(sub: Subalgebra) -> FiniteModule:
    """parent/sub as a module over the subalgebra."""
    parent, field = sub.parent, sub.parent.field
    # complement basis: parent coordinates of a basis of parent/sub
    full = list(sub.basis)
    complement_idx = []
    for i in range(parent.dim):
        cand = full + [parent.basis_vector(i)]
        if linalg.rank(field, cand) > len(full):
            full = cand
            complement_idx.append(i)
    qdim = len(complement_idx)
    # projection: write parent vector in basis (sub.basis + complement),
    # keep complement coordinates
    basis_mat = linalg.transpose(full)

    def project(vec):
        coeffs = linalg.solve(field, basis_mat, vec)
        return coeffs[len(sub.basis) :]

    action = []
    for i in range(sub.algebra.dim):
        a_parent = sub.basis[i]
        cols = [
            project(parent.mul(a_parent, parent.basis_vector(ci)))
            for ci in complement_idx
        ]
        action.append([[cols[j][r] for j in range(qdim)] for r in range(qdim)])
    return FiniteModule(sub.algebra, qdim, action, check=True)


def restriction_trace(sub: Subalgebra):
    """Restriction of functionals Hom_F(parent,F) -> Hom_F(sub,F).

    Returns (matrix of the restriction map in dual bases, kernel module
    over the subalgebra).  The kernel consists of functionals vanishing
    on the subalgebra, with (a.l)(v) = l(a*v).
    """
    parent, field = sub.parent, sub.parent.field
    # restriction matrix: rows indexed by sub basis, cols by parent dual basis
    restr = [list(b) for b in sub.basis]
    kernel = linalg.nullspace(field, restr)  # functionals killing the subalgebra
    kdim = len(kernel)
    # action of sub basis element a on a functional: l -> l o (mult by a),
    # i.e. coordinates transform by mult_matrix(a)^T
    kt = linalg.transpose(kernel)
    action = []
    for i in range(sub.algebra.dim):
        mt = linalg.transpose(parent.mult_matrix(sub.basis[i]))
        cols = []
        for kv in kernel:
            img = linalg.mat_vec(field, mt, kv)
            coeffs = linalg.solve(field, kt, img)
            if coeffs is None:
                raise AssertionError("kernel of restriction not stable under action")
            cols.append(coeffs)
        action.append([[cols[j][r] for j in range(kdim)] for r in range(kdim)])
    module = FiniteModule(sub.algebra, kdim, action, check=True)
    return restr, module


def is_free_rank_one(module: FiniteModule):
    """(verdict, generator) for 'module is free of rank 1 over local A'.

    By Nakayama, M is cyclic iff dim M/mM = 1, and a cyclic module of
    the same length as A is free of rank 1; any vector outside mM
    generates.
    """
    A = module.algebra
    field = module.field
    if module.dim != A.dim:
        return False, None
    if A.dim == 0:
        return True, None
    m_basis = A.maximal_ideal_basis()
    mM = []
    for mv in m_basis:
        mat = module.action_of(mv)
        for j in range(module.dim):
            mM.append([mat[r][j] for r in range(module.dim)])
    mM_basis = linalg.row_space_basis(field, mM)
    if module.dim - len(mM_basis) != 1:
        return False, None
    for i in range(module.dim):
        v = module_basis_vector(module, i)
        if not linalg.in_span(field, mM_basis, v):
            return True, v
    raise AssertionError("unreachable: mM has codimension 1")


def matrix_counterexample(field, n: int):
    """Local algebra of length n^2+1 with a faithful module of length 2n.

    Scalar matrices plus an n x n top-right block; the block part
    squares to zero, so the algebra is commutative and local.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    d = n * n + 1  # basis: unit, then E_(i,j) for the top-right block
    zero, one = field.zero, field.one

    def basis_label(k):
        return "1" if k == 0 else f"b{(k - 1) // n}{(k - 1) % n}"

    table = []
    for i in range(d):
        row = []
        for j in range(d):
            v = [zero] * d
            if i == 0:
                v[j] = one
            elif j == 0:
                v[i] = one
            # block * block = 0
            row.append(v)
        table.append(row)
    unit = [one] + [zero] * (d - 1)
    algebra = FiniteAlgebra(
        field, table, unit, labels=[basis_label(k) for k in range(d)]
    )
    # module k^(2n): unit acts as identity, E_(i,j) maps v_(n+j) to v_i
    mdim = 2 * n
    action = []
    for k in range(d):
        mat = linalg.zeros(field, mdim, mdim)
        if k == 0:
            mat = linalg.identity(field, mdim)
        else:
            i, j = (k - 1) // n, (k - 1) % n
            mat[i][n + j] = one
        action.append(mat)
    module = FiniteModule(algebra, mdim, action, check=True)
    return algebra, module
