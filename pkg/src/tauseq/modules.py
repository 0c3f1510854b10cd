"""Finite-dimensional left modules over a StructAlgebra.

A module is an action tensor (one matrix per algebra basis element) over
F_p.  Provides Hom spaces, endomorphism rings, indecomposable direct-sum
decomposition via idempotent splitting, trace submodules and torsion-free
quotients, and minimal left/right add(U)-approximations.
"""

import numpy as np

from . import linalg
from .algebra import algebra_from_matrices, quotient_by_ideal
from .errors import DomainError, InputError

_RNG_SEED = 90377  # fixed seed: all randomized fallbacks are reproducible


class FdModule:
    """A left module given by its action tensor.

    Attributes:
        algebra: the StructAlgebra acting.
        dim: total dimension.
        action: (algebra.dim, dim, dim) tensor; action[i] is the matrix of
            the i-th basis element (matrices act on column coordinate
            vectors).
    """

    def __init__(self, algebra, action, check=True):
        self.algebra = algebra
        self.action = linalg.asmod(action, algebra.p)
        if self.action.ndim != 3 or self.action.shape[0] != algebra.dim:
            raise DomainError("action tensor has wrong shape")
        self.dim = self.action.shape[1]
        if self.action.shape[1] != self.action.shape[2]:
            raise DomainError("action matrices must be square")
        self._vdims = None
        if check and self.dim:
            self._validate()

    def _validate(self):
        p = self.algebra.p
        unit_act = self.act(self.algebra.unit)
        if not np.array_equal(unit_act, np.eye(self.dim, dtype=np.int64)):
            raise DomainError("unit does not act as identity")
        prod = np.einsum("iab,jbc->ijac", self.action, self.action) % p
        want = np.einsum("ijk,kac->ijac", self.algebra.mult, self.action) % p
        if not np.array_equal(prod, want):
            raise DomainError("action does not respect multiplication")

    def act(self, x):
        x = linalg.asmod(x, self.algebra.p)
        return np.einsum("i,iab->ab", x, self.action) % self.algebra.p

    def vertex_dims(self):
        if self._vdims is None:
            dims = []
            for i in range(self.algebra.idempotents.shape[0]):
                dims.append(linalg.rank(self.act(self.algebra.idempotents[i]),
                                        self.algebra.p))
            self._vdims = tuple(dims)
        return self._vdims

    def is_zero(self):
        return self.dim == 0


class ModuleMap:
    """A homomorphism of modules; matrix is (target.dim, source.dim)."""

    def __init__(self, source, target, matrix, check=False):
        self.source = source
        self.target = target
        self.matrix = linalg.asmod(matrix, source.algebra.p)
        if self.matrix.shape != (target.dim, source.dim):
            raise DomainError("module map matrix has wrong shape")
        if check:
            self.check_intertwines()

    def check_intertwines(self):
        p = self.source.algebra.p
        for g in self.source.algebra.generator_vectors():
            lhs = (self.matrix @ self.source.act(g)) % p
            rhs = (self.target.act(g) @ self.matrix) % p
            if not np.array_equal(lhs, rhs):
                raise DomainError("matrix does not intertwine the actions")

    def compose(self, other):
        """self after other."""
        if other.target is not self.source:
            raise DomainError("composition mismatch")
        return ModuleMap(other.source, self.target,
                         (self.matrix @ other.matrix) % self.source.algebra.p)

    def kernel_rows(self):
        return linalg.kernel_basis(self.matrix, self.source.algebra.p)

    def image_rows(self):
        return linalg.row_space(self.matrix.T, self.source.algebra.p)

    def rank(self):
        return linalg.rank(self.matrix, self.source.algebra.p)

    def is_injective(self):
        return self.rank() == self.source.dim

    def is_surjective(self):
        return self.rank() == self.target.dim


def zero_module(algebra):
    return FdModule(algebra,
                    np.zeros((algebra.dim, 0, 0), dtype=np.int64), check=False)


def identity_map(m):
    return ModuleMap(m, m, np.eye(m.dim, dtype=np.int64))


def direct_sum(algebra, summands):
    """(sum module, embeddings, projections) of a list of modules."""
    total = sum(m.dim for m in summands)
    action = np.zeros((algebra.dim, total, total), dtype=np.int64)
    offset = 0
    embs, prs = [], []
    for m in summands:
        action[:, offset : offset + m.dim, offset : offset + m.dim] = m.action
        e = np.zeros((total, m.dim), dtype=np.int64)
        e[offset : offset + m.dim] = np.eye(m.dim, dtype=np.int64)
        embs.append(e)
        prs.append(e.T.copy())
        offset += m.dim
    out = FdModule(algebra, action, check=False)
    return out, embs, prs


# ---------------------------------------------------------------------------
# sub/quotient structure
# ---------------------------------------------------------------------------


def _close_under_action(m, rows):
    p = m.algebra.p
    rows = linalg.row_space(linalg.asmod(rows, p), p)
    gens = [m.act(g) for g in m.algebra.generator_vectors()]
    while True:
        pieces = [rows]
        for g in gens:
            pieces.append((rows @ g.T) % p)
        closed = linalg.row_space(np.vstack(pieces), p)
        if closed.shape[0] == rows.shape[0]:
            return closed
        rows = closed


def submodule(m, rows):
    """(submodule spanned by rows after closing under the action, inclusion)."""
    p = m.algebra.p
    if np.asarray(rows).size == 0:
        sub = zero_module(m.algebra)
        return sub, ModuleMap(sub, m, np.zeros((m.dim, 0), dtype=np.int64))
    basis = _close_under_action(m, rows)
    k = basis.shape[0]
    action = np.zeros((m.algebra.dim, k, k), dtype=np.int64)
    bt = basis.T
    for i in range(m.algebra.dim):
        img = (m.action[i] @ bt) % p
        sol = linalg.solve_matrix(bt, img, p)
        if sol is None:
            raise DomainError("span is not action-stable")
        action[i] = sol
    sub = FdModule(m.algebra, action, check=False)
    return sub, ModuleMap(sub, m, bt)


def quotient_module(m, rows):
    """(quotient of m by the submodule generated by rows, projection)."""
    p = m.algebra.p
    rows = linalg.asmod(rows, p)
    if rows.size == 0:
        return m, identity_map(m)
    basis = _close_under_action(m, rows)
    r, piv = linalg.rref(basis, p)
    r = r[: len(piv)]
    nonpiv = [c for c in range(m.dim) if c not in piv]
    q = len(nonpiv)
    proj = np.zeros((q, m.dim), dtype=np.int64)
    for k, c in enumerate(nonpiv):
        proj[k, c] = 1
    for i, c in enumerate(piv):
        proj[:, c] = (-r[i, nonpiv]) % p
    lift = np.zeros((m.dim, q), dtype=np.int64)
    for k, c in enumerate(nonpiv):
        lift[c, k] = 1
    action = np.zeros((m.algebra.dim, q, q), dtype=np.int64)
    for i in range(m.algebra.dim):
        action[i] = (proj @ m.action[i] @ lift) % p
    quo = FdModule(m.algebra, action, check=False)
    return quo, ModuleMap(m, quo, proj)


def radical_rows(m):
    rad = m.algebra.radical_rows()
    if rad.shape[0] == 0 or m.dim == 0:
        return np.zeros((0, m.dim), dtype=np.int64)
    pieces = [m.act(r).T for r in rad]
    return linalg.row_space(np.vstack(pieces), m.algebra.p)


def top_quotient(m):
    return quotient_module(m, radical_rows(m))


def socle_rows(m):
    rad = m.algebra.radical_rows()
    if rad.shape[0] == 0 or m.dim == 0:
        return np.eye(m.dim, dtype=np.int64)
    stacked = np.vstack([m.act(r) for r in rad])
    return linalg.kernel_basis(stacked, m.algebra.p)


# ---------------------------------------------------------------------------
# projectives, simples, injectives
# ---------------------------------------------------------------------------


def projective_module(algebra, i):
    """P_i = A e_i with left multiplication; remembers its basis inside A."""
    p = algebra.p
    e = algebra.idempotents[i]
    rows = []
    eye = np.eye(algebra.dim, dtype=np.int64)
    for k in range(algebra.dim):
        rows.append(algebra.multiply(eye[k], e))
    basis = linalg.row_space(np.array(rows), p)
    k = basis.shape[0]
    bt = basis.T
    action = np.zeros((algebra.dim, k, k), dtype=np.int64)
    for j in range(algebra.dim):
        img = (algebra.left_mult_matrix(eye[j]) @ bt) % p
        sol = linalg.solve_matrix(bt, img, p)
        if sol is None:
            raise DomainError("A e_i is not closed under left multiplication")
        action[j] = sol
    out = FdModule(algebra, action, check=False)
    out.proj_index = i
    out.amb_basis = basis
    return out


def simple_module(algebra, i):
    top, _ = top_quotient(projective_module(algebra, i))
    return top


def right_mult_module_map(pa, pb, x):
    """The map A e_a -> A e_b, m -> m*x, for x in e_a A e_b.

    Both modules must come from projective_module (they carry amb_basis).
    """
    alg = pa.algebra
    p = alg.p
    cols = []
    for v in pa.amb_basis:
        w = alg.multiply(v, x)
        c = linalg.solve(pb.amb_basis.T, w, p)
        if c is None:
            raise DomainError("right multiplication leaves the target projective")
        cols.append(c)
    if cols:
        mat = np.array(cols).T
    else:
        mat = np.zeros((pb.dim, 0), dtype=np.int64)
    return ModuleMap(pa, pb, mat)


def injective_module(algebra, j):
    """I_j = dual of the right module e_j A, with the transpose action."""
    p = algebra.p
    e = algebra.idempotents[j]
    eye = np.eye(algebra.dim, dtype=np.int64)
    rows = [algebra.multiply(e, eye[k]) for k in range(algebra.dim)]
    basis = linalg.row_space(np.array(rows), p)
    k = basis.shape[0]
    action = np.zeros((algebra.dim, k, k), dtype=np.int64)
    for i in range(algebra.dim):
        cols = []
        for w in basis:
            img = algebra.multiply(w, eye[i])
            c = linalg.solve(basis.T, img, p)
            if c is None:
                raise DomainError("e_j A is not closed under right multiplication")
            cols.append(c)
        r = np.array(cols).T if cols else np.zeros((k, k), dtype=np.int64)
        action[i] = r.T % p
    return FdModule(algebra, action, check=False)


def injective_embedding(m):
    """An embedding of m into a direct sum of indecomposable injectives."""
    alg = m.algebra
    summands = []
    maps = []
    for j in range(alg.idempotents.shape[0]):
        ij = injective_module(alg, j)
        for h in hom_basis(m, ij):
            summands.append(ij)
            maps.append(h)
    if not summands:
        target = zero_module(alg)
        return ModuleMap(m, target, np.zeros((0, m.dim), dtype=np.int64))
    target, embs, _ = direct_sum(alg, summands)
    mat = np.zeros((target.dim, m.dim), dtype=np.int64)
    for e, h in zip(embs, maps):
        mat = (mat + e @ h) % alg.p
    out = ModuleMap(m, target, mat)
    if not out.is_injective():
        raise DomainError("injective embedding failed to be injective")
    return out


# ---------------------------------------------------------------------------
# Hom spaces and endomorphism rings
# ---------------------------------------------------------------------------


def hom_basis(m, n):
    """Basis of Hom(m, n) as a list of (n.dim, m.dim) matrices."""
    if m.algebra is not n.algebra:
        raise DomainError("modules over different algebras")
    p = m.algebra.p
    if m.dim == 0 or n.dim == 0:
        return []
    blocks = []
    im = np.eye(n.dim, dtype=np.int64)
    imm = np.eye(m.dim, dtype=np.int64)
    for g in m.algebra.generator_vectors():
        a = m.act(g)
        b = n.act(g)
        blocks.append((np.kron(im, a.T) - np.kron(b, imm)) % p)
    system = np.vstack(blocks)
    ker = linalg.kernel_basis(system, p)
    return [row.reshape(n.dim, m.dim) for row in ker]


def hom_dim(m, n):
    return len(hom_basis(m, n))


class EndData:
    """An endomorphism ring, coordinatized.

    Attributes:
        module: the underlying module (a direct sum when built from a list).
        mats: basis matrices.
        struct: StructAlgebra with the opposite product, so that Hom(module, X)
            becomes a left struct-module under precomposition.
        solver: flattened-matrix coordinate solver.
        summands, embs, prs: the summand modules with embeddings/projections.
        idem_mats: the block projection idempotents (one per summand).
    """

    def __init__(self, module, mats, struct, solver, summands, embs, prs, idem_mats):
        self.module = module
        self.mats = mats
        self.struct = struct
        self.solver = solver
        self.summands = summands
        self.embs = embs
        self.prs = prs
        self.idem_mats = idem_mats

    def radical_mats(self):
        rad = self.struct.radical_rows()
        out = []
        for row in rad:
            mat = np.zeros_like(self.mats[0])
            for c, b in zip(row, self.mats):
                if c:
                    mat = (mat + int(c) * b) % self.struct.p
            out.append(mat)
        return out


def end_algebra(summands, vertex_labels=None):
    """End(⊕ summands) with the opposite product and block idempotents."""
    if not summands:
        raise DomainError("empty summand list")
    alg = summands[0].algebra
    p = alg.p
    total, embs, prs = direct_sum(alg, summands)
    mats = []
    for i, mi in enumerate(summands):
        for j, mj in enumerate(summands):
            for h in hom_basis(mi, mj):
                mats.append((embs[j] @ h @ prs[i]) % p)
    idem_mats = [(embs[i] @ prs[i]) % p for i in range(len(summands))]
    # extend the pairwise Hom basis so the block idempotents are honest
    # basis elements: they already are sums of End(m_i) elements, so instead
    # pass them as idempotent matrices to coordinate lookup.
    struct, solver = algebra_from_matrices(
        mats, p, opposite=True, vertex_labels=vertex_labels,
        idempotent_mats=idem_mats)
    return EndData(total, mats, struct, solver, summands, embs, prs, idem_mats)


def _frobenius_kernel_dim(struct):
    p = struct.p
    eye = np.eye(struct.dim, dtype=np.int64)
    cols = []
    for i in range(struct.dim):
        cols.append(struct.power(eye[i], p))
    frob = np.array(cols).T % p
    return linalg.kernel_basis((frob - eye) % p, p).shape[0]


def is_local_endo(m):
    """True iff End(m) is a local ring (so m is indecomposable)."""
    if m.dim == 0:
        return False
    mats = hom_basis(m, m)
    struct, _ = algebra_from_matrices(mats, m.algebra.p, opposite=True)
    return _struct_is_local(struct)


def _struct_is_local(struct):
    rad = struct.radical_rows()
    if rad.shape[0]:
        quo = quotient_by_ideal(struct, rad, check=False)
        bar = quo.algebra
    else:
        bar = struct
    if not np.array_equal(bar.mult, bar.mult.transpose(1, 0, 2)):
        return False  # noncommutative semisimple quotient: not a division ring
    return _frobenius_kernel_dim(bar) == 1


# ---------------------------------------------------------------------------
# indecomposable decomposition
# ---------------------------------------------------------------------------


def _berlekamp_split_commutative(bar):
    """A nontrivial idempotent of a commutative semisimple algebra."""
    p = bar.p
    eye = np.eye(bar.dim, dtype=np.int64)
    cols = [bar.power(eye[i], p) for i in range(bar.dim)]
    frob = np.array(cols).T % p
    ker = linalg.kernel_basis((frob - eye) % p, p)
    unit_solver = linalg.SpanSolver(bar.unit.reshape(1, -1), p)
    z = None
    for row in ker:
        if not unit_solver.contains(row):
            z = row
            break
    if z is None:
        raise DomainError("no splitting element found in Berlekamp kernel")
    mu = bar.element_min_poly(z)
    # mu divides X^p - X, hence splits into distinct linear factors
    roots = np.nonzero(linalg.poly_eval_many(mu, np.arange(p), p) == 0)[0]
    lam = int(roots[0])
    g, _ = linalg.poly_divmod(mu, np.array([(-lam) % p, 1], dtype=np.int64), p)
    glam = int(linalg.poly_eval_many(g, np.array([lam]), p)[0])
    epoly = (g * pow(glam, -1, p)) % p
    return _poly_at_element(bar, epoly, z)


def _poly_at_element(struct, f, z):
    acc = np.zeros(struct.dim, dtype=np.int64)
    for c in f[::-1]:
        acc = struct.multiply(acc, z)
        acc = (acc + int(c) * struct.unit) % struct.p
    return acc


def _find_idempotent_noncommutative(bar, rng):
    """Search for a nontrivial idempotent via element minimal polynomials."""
    p = bar.p
    eye = np.eye(bar.dim, dtype=np.int64)
    candidates = [eye[i] for i in range(bar.dim)]
    for _ in range(200):
        candidates.append(rng.integers(0, p, size=bar.dim, dtype=np.int64))
    for z in candidates:
        mu = bar.element_min_poly(z)
        if linalg.poly_deg(mu) < 2:
            continue
        split = _coprime_split(mu, p, rng)
        if split is None:
            continue
        f_part, g_part = split
        d, u, v = linalg.poly_ext_gcd(f_part, g_part, p)
        if linalg.poly_deg(d) != 0:
            continue
        dinv = pow(int(d[0]), -1, p)
        e_poly = linalg.poly_mod(
            (linalg.poly_mul(u, f_part, p) * dinv) % p, mu, p)
        e = _poly_at_element(bar, e_poly, z)
        if np.any(e) and not np.array_equal(e, bar.unit):
            if np.array_equal(bar.multiply(e, e), e):
                return e
    raise DomainError("failed to split a noncommutative semisimple quotient")


def _coprime_split(mu, p, rng):
    """mu = F*G with F, G coprime nonconstant, or None if mu is an
    irreducible power."""
    s = linalg.poly_squarefree_part(mu, p)
    f = _ddf_smallest_factor(s, p, rng)
    if f is None or linalg.poly_deg(f) == linalg.poly_deg(mu):
        return None
    f_power = f.copy()
    while True:
        q, r = linalg.poly_divmod(mu, linalg.poly_mul(f_power, f, p), p)
        if linalg.poly_is_zero(r):
            f_power = linalg.poly_mul(f_power, f, p)
        else:
            break
    g, r = linalg.poly_divmod(mu, f_power, p)
    if linalg.poly_is_zero(g) or linalg.poly_deg(g) < 1 or not linalg.poly_is_zero(r):
        return None
    return f_power, g


def _ddf_smallest_factor(s, p, rng):
    """Smallest-degree irreducible factor of a squarefree monic s."""
    if linalg.poly_deg(s) < 1:
        return None
    x = np.array([0, 1], dtype=np.int64)
    t = x.copy()
    rem = linalg.poly_monic(s, p)
    for d in range(1, linalg.poly_deg(s) + 1):
        if linalg.poly_deg(rem) < 1:
            return None
        if linalg.poly_deg(rem) == d:
            return rem
        t = linalg.poly_pow_mod(t, p, rem, p)
        diff = linalg.poly_trim((_sub_poly(t, x, p)))
        g = linalg.poly_gcd(diff, rem, p)
        if linalg.poly_deg(g) >= 1:
            if linalg.poly_deg(g) == d:
                return g
            return _equal_degree_split(g, d, p, rng)
        # no factor of this degree; continue with rem unchanged
    return None


def _sub_poly(f, g, p):
    n = max(f.shape[0], g.shape[0])
    out = np.zeros(n, dtype=np.int64)
    out[: f.shape[0]] = f
    out[: g.shape[0]] = (out[: g.shape[0]] - g) % p
    return out % p


def _equal_degree_split(h, d, p, rng):
    """One irreducible factor of h, where h is a product of distinct
    irreducibles all of degree d (Cantor–Zassenhaus)."""
    if linalg.poly_deg(h) == d:
        return linalg.poly_monic(h, p)
    e = (pow(p, d) - 1) // 2
    while True:
        a = rng.integers(0, p, size=linalg.poly_deg(h), dtype=np.int64)
        a = linalg.poly_trim(a)
        if linalg.poly_deg(a) < 1:
            continue
        b = linalg.poly_pow_mod(a, e, h, p)
        b = _sub_poly(b, np.array([1], dtype=np.int64), p)
        g = linalg.poly_gcd(b, h, p)
        if 0 < linalg.poly_deg(g) < linalg.poly_deg(h):
            part = g if linalg.poly_deg(g) <= linalg.poly_deg(h) - linalg.poly_deg(g) \
                else linalg.poly_divmod(h, g, p)[0]
            return _equal_degree_split(part, d, p, rng)


def _lift_idempotent(struct, e0):
    """Newton iteration e <- 3e^2 - 2e^3 until exactly idempotent."""
    p = struct.p
    e = e0.copy()
    for _ in range(2 * struct.dim + 8):
        e2 = struct.multiply(e, e)
        if np.array_equal(e2, e):
            return e
        e3 = struct.multiply(e2, e)
        e = (3 * e2 - 2 * e3) % p
    raise DomainError("idempotent lifting did not stabilize")


def decompose(m):
    """Indecomposable direct summands of m, as (module, inclusion) pairs."""
    if m.dim == 0:
        return []
    rng = np.random.default_rng(_RNG_SEED)
    return _decompose_inner(m, rng)


def _decompose_inner(m, rng):
    p = m.algebra.p
    mats = hom_basis(m, m)
    struct, solver = algebra_from_matrices(mats, p, opposite=True)
    rad = struct.radical_rows()
    if rad.shape[0]:
        quo = quotient_by_ideal(struct, rad, check=False)
        bar = quo.algebra
        lift_to_struct = lambda v: (quo.lift @ v) % p
    else:
        bar = struct
        lift_to_struct = lambda v: v
    commutative = np.array_equal(bar.mult, bar.mult.transpose(1, 0, 2))
    if commutative and _frobenius_kernel_dim(bar) == 1:
        return [(m, identity_map(m))]
    if commutative:
        ebar = _berlekamp_split_commutative(bar)
    else:
        ebar = _find_idempotent_noncommutative(bar, rng)
    e = _lift_idempotent(struct, lift_to_struct(ebar))
    emat = np.zeros_like(mats[0])
    for c, b in zip(e, mats):
        if c:
            emat = (emat + int(c) * b) % p
    rest = (np.eye(m.dim, dtype=np.int64) - emat) % p
    out = []
    for part in (emat, rest):
        sub, incl = submodule(m, linalg.row_space(part.T, p))
        if sub.dim == 0:
            raise DomainError("idempotent splitting produced a zero part")
        for piece, sub_incl in _decompose_inner(sub, rng):
            out.append((piece, incl.compose(sub_incl)))
    return out


def decompose_grouped(m):
    """[(indecomposable, multiplicity)] with one representative per iso class."""
    parts = decompose(m)
    groups = []
    for piece, _ in parts:
        for rep in groups:
            if is_iso(rep[0], piece):
                rep[1] += 1
                break
        else:
            groups.append([piece, 1])
    return [(g[0], g[1]) for g in groups]


# ---------------------------------------------------------------------------
# isomorphism testing
# ---------------------------------------------------------------------------


def is_iso(m, n):
    if m is n:
        return True
    if m.dim != n.dim:
        return False
    if m.dim == 0:
        return True
    if m.vertex_dims() != n.vertex_dims():
        return False
    p = m.algebra.p
    homs = hom_basis(m, n)
    if not homs:
        return False
    for h in homs:
        if linalg.rank(h, p) == m.dim:
            return True
    rng = np.random.default_rng(_RNG_SEED + 1)
    for _ in range(80):
        coeffs = rng.integers(0, p, size=len(homs), dtype=np.int64)
        h = np.zeros_like(homs[0])
        for c, b in zip(coeffs, homs):
            h = (h + int(c) * b) % p
        if linalg.rank(h, p) == m.dim:
            return True
    return False


# ---------------------------------------------------------------------------
# torsion pairs
# ---------------------------------------------------------------------------


def trace_submodule(u, x):
    """t_u(x): sum of images of all maps u -> x, with inclusion."""
    homs = hom_basis(u, x)
    if not homs:
        sub = zero_module(x.algebra)
        return sub, ModuleMap(sub, x, np.zeros((x.dim, 0), dtype=np.int64))
    rows = np.vstack([h.T for h in homs])
    return submodule(x, linalg.row_space(rows, x.algebra.p))


def torsion_free_quotient(u, x):
    """f_u(x) = x / t_u(x), with projection."""
    homs = hom_basis(u, x)
    if not homs:
        return x, identity_map(x)
    rows = np.vstack([h.T for h in homs])
    return quotient_module(x, rows)


def in_gen(u, x):
    """True iff x lies in Gen u (the trace is everything)."""
    sub, _ = trace_submodule(u, x)
    return sub.dim == x.dim


# ---------------------------------------------------------------------------
# minimal approximations
# ---------------------------------------------------------------------------


def min_right_approx(u_summands, x):
    """Minimal right add(⊕u_summands)-approximation of x.

    Returns (source module, ModuleMap alpha, list of summand indices used).
    """
    alg = x.algebra
    p = alg.p
    u_summands = [u for u in u_summands if u.dim]
    if not u_summands:
        src = zero_module(alg)
        return src, ModuleMap(src, x, np.zeros((x.dim, 0), dtype=np.int64)), []
    end = end_algebra(u_summands)
    homs = hom_basis(end.module, x)
    if not homs:
        src = zero_module(alg)
        return src, ModuleMap(src, x, np.zeros((x.dim, 0), dtype=np.int64)), []
    rad_mats = end.radical_mats()
    w_rows = [(h @ r).reshape(1, -1) % p for h in homs for r in rad_mats]
    cur = np.vstack(w_rows) if w_rows else np.zeros((0, homs[0].size), dtype=np.int64)
    cur_rank = linalg.rank(cur, p) if cur.size else 0
    kept = []  # (summand index, map u_j -> x)
    for j in range(len(u_summands)):
        pj = end.idem_mats[j]
        for h in homs:
            cand = (h @ pj) % p
            stacked = np.vstack([cur, cand.reshape(1, -1)])
            r = linalg.rank(stacked, p)
            if r > cur_rank:
                cur = stacked
                cur_rank = r
                kept.append((j, (h @ end.embs[j]) % p))
    used = [j for j, _ in kept]
    src, _, _ = direct_sum(alg, [u_summands[j] for j in used])
    if kept:
        mat = np.hstack([mp for _, mp in kept]) % p
    else:
        mat = np.zeros((x.dim, 0), dtype=np.int64)
    return src, ModuleMap(src, x, mat), used


def min_left_approx(x, u_summands):
    """Minimal left add(⊕u_summands)-approximation of x.

    Returns (target module, ModuleMap beta, list of summand indices used).
    """
    alg = x.algebra
    p = alg.p
    u_summands = [u for u in u_summands if u.dim]
    if not u_summands:
        tgt = zero_module(alg)
        return tgt, ModuleMap(x, tgt, np.zeros((0, x.dim), dtype=np.int64)), []
    end = end_algebra(u_summands)
    homs = hom_basis(x, end.module)
    if not homs:
        tgt = zero_module(alg)
        return tgt, ModuleMap(x, tgt, np.zeros((0, x.dim), dtype=np.int64)), []
    rad_mats = end.radical_mats()
    w_rows = [(r @ h).reshape(1, -1) % p for h in homs for r in rad_mats]
    cur = np.vstack(w_rows) if w_rows else np.zeros((0, homs[0].size), dtype=np.int64)
    cur_rank = linalg.rank(cur, p) if cur.size else 0
    kept = []
    for j in range(len(u_summands)):
        pj = end.idem_mats[j]
        for h in homs:
            cand = (pj @ h) % p
            stacked = np.vstack([cur, cand.reshape(1, -1)])
            r = linalg.rank(stacked, p)
            if r > cur_rank:
                cur = stacked
                cur_rank = r
                kept.append((j, (end.prs[j] @ h) % p))
    used = [j for j, _ in kept]
    tgt, _, _ = direct_sum(alg, [u_summands[j] for j in used])
    if kept:
        mat = np.vstack([mp for _, mp in kept]) % p
    else:
        mat = np.zeros((0, x.dim), dtype=np.int64)
    return tgt, ModuleMap(x, tgt, mat), used


# ---------------------------------------------------------------------------
# fixture file parsing
# ---------------------------------------------------------------------------


def module_from_arrows(qp, alg, vdims, arrow_mats, name=None):
    """Build an FdModule over a path algebra from per-arrow matrices.

    Args:
        vdims: dict vertex label -> dimension.
        arrow_mats: dict arrow name -> matrix (target rows, source cols).
    """
    p = alg.p
    vlabels = list(qp.vertices)
    dims = {v: int(vdims.get(v, 0)) for v in vlabels}
    offsets = {}
    total = 0
    for v in vlabels:
        offsets[v] = total
        total += dims[v]
    arrow_info = {a[0]: (a[1], a[2]) for a in qp.arrows}
    mats = {}
    for aname, (src, dst) in arrow_info.items():
        shape = (dims[dst], dims[src])
        if aname in arrow_mats:
            mat = linalg.asmod(arrow_mats[aname], p)
            if mat.size == 0:
                mat = np.zeros(shape, dtype=np.int64)
            if mat.shape != shape:
                raise InputError(
                    f"module {name or '?'}: arrow {aname} matrix shape "
                    f"{mat.shape} != {shape}")
        else:
            mat = np.zeros(shape, dtype=np.int64)
        mats[aname] = mat
    action = np.zeros((alg.dim, total, total), dtype=np.int64)
    for idx, (src, dst, seq) in enumerate(alg.path_info):
        if not seq:
            s = offsets[src]
            action[idx, s : s + dims[src], s : s + dims[src]] = np.eye(
                dims[src], dtype=np.int64)
            continue
        mat = np.eye(dims[src], dtype=np.int64)
        for aname in seq:
            mat = (mats[aname] @ mat) % p
        r, c = offsets[dst], offsets[src]
        action[idx, r : r + dims[dst], c : c + dims[src]] = mat
    for rel in qp.relations:
        mat = None
        src = arrow_info[rel[0]][0]
        mat = np.eye(dims[src], dtype=np.int64)
        for aname in rel:
            mat = (mats[aname] @ mat) % p
        if np.any(mat):
            raise InputError(f"module {name or '?'}: relation "
                             f"{' '.join(rel)} does not act as zero")
    out = FdModule(alg, action, check=True)
    out.name = name
    return out


def parse_modules(text, qp, alg):
    """Parse a module fixture file into an ordered dict name -> FdModule."""
    import ast

    out = {}
    cur_name = None
    cur_dims = None
    cur_arrows = None

    def flush():
        if cur_name is None:
            return
        if cur_dims is None:
            raise InputError(f"module {cur_name}: missing dims line")
        out[cur_name] = module_from_arrows(qp, alg, cur_dims, cur_arrows,
                                           name=cur_name)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        kind = parts[0]
        if kind == "module":
            flush()
            cur_name = parts[1].strip() if len(parts) > 1 else None
            if not cur_name:
                raise InputError(f"line {lineno}: module needs a name")
            if cur_name in out:
                raise InputError(f"line {lineno}: duplicate module {cur_name}")
            cur_dims = None
            cur_arrows = {}
        elif kind == "dims":
            if cur_name is None:
                raise InputError(f"line {lineno}: dims outside a module block")
            cur_dims = {}
            for tok in parts[1].split():
                if ":" not in tok:
                    raise InputError(f"line {lineno}: bad dims token {tok!r}")
                v, d = tok.rsplit(":", 1)
                if v not in qp.vertices:
                    raise InputError(f"line {lineno}: unknown vertex {v!r}")
                cur_dims[v] = int(d)
        elif kind == "arrow":
            if cur_name is None:
                raise InputError(f"line {lineno}: arrow outside a module block")
            body = parts[1]
            if "=" not in body:
                raise InputError(f"line {lineno}: arrow line needs '='")
            aname, mat_text = body.split("=", 1)
            aname = aname.strip()
            if aname not in {a[0] for a in qp.arrows}:
                raise InputError(f"line {lineno}: unknown arrow {aname!r}")
            try:
                mat = ast.literal_eval(mat_text.strip())
            except (ValueError, SyntaxError):
                raise InputError(f"line {lineno}: cannot parse matrix")
            cur_arrows[aname] = np.array(mat, dtype=np.int64) \
                if mat else np.zeros((0, 0), dtype=np.int64)
        else:
            raise InputError(f"line {lineno}: unknown directive {kind!r}")
    flush()
    return out
