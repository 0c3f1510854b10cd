"""Bounded complexes of projectives and the two-term homotopy category.

A complex is stored degree-by-degree: each degree holds a list of vertex
indices (summands A e_i), and each differential is an entry tensor whose
(r, c) slot is an algebra element x in e_a A e_b giving the map
A e_a -> A e_b, m -> m * x (a = source summand vertex, b = target summand
vertex).  Composition of entry maps is plain algebra multiplication with the
first-applied entry on the left: phi_y . phi_x = phi_{x*y}.

Provides Gaussian reduction to minimal complexes, cones and shifts, Hom
spaces in the homotopy category (including shifted ones), endomorphism rings
of two-term objects, minimal right approximations in the homotopy category,
minimal projective presentations, the AR translate, and Ext^1.
"""

import numpy as np

from . import linalg
from .algebra import StructAlgebra
from .errors import DomainError
from .modules import (FdModule, ModuleMap, direct_sum, hom_basis,
                      projective_module, quotient_module, submodule,
                      top_quotient, zero_module)


def proj_list(alg):
    """Indecomposable projectives A e_i, cached on the algebra."""
    if not hasattr(alg, "_tauseq_projs"):
        alg._tauseq_projs = [projective_module(alg, i)
                             for i in range(alg.idempotents.shape[0])]
    return alg._tauseq_projs


# ---------------------------------------------------------------------------
# complexes
# ---------------------------------------------------------------------------


class Cx:
    """A bounded complex of projective left modules.

    Attributes:
        algebra: the StructAlgebra.
        comps: dict degree -> list of vertex indices.
        diffs: dict degree k -> entry tensor of d^k : C^k -> C^{k+1}, with
            shape (len(comps[k+1]), len(comps[k]), algebra.dim).
    """

    def __init__(self, algebra, comps, diffs, check=True):
        self.algebra = algebra
        self.comps = {k: list(v) for k, v in comps.items() if v}
        self.diffs = {}
        for k, t in diffs.items():
            nr = len(self.comps.get(k + 1, ()))
            nc = len(self.comps.get(k, ()))
            if nr and nc:
                t = linalg.asmod(t, algebra.p)
                if t.shape != (nr, nc, algebra.dim):
                    raise DomainError("differential tensor shape mismatch")
                self.diffs[k] = t
        if check:
            self._validate()

    def at(self, k):
        return self.comps.get(k, [])

    def diff(self, k):
        if k in self.diffs:
            return self.diffs[k]
        return tensor_zeros(self.algebra, len(self.at(k + 1)), len(self.at(k)))

    def support(self):
        return sorted(self.comps)

    def is_two_term(self):
        return all(k in (-1, 0) for k in self.support())

    def is_stalk(self, degree):
        return all(k == degree for k in self.support())

    def total_summands(self):
        return sum(len(v) for v in self.comps.values())

    def _validate(self):
        alg = self.algebra
        for k, t in self.diffs.items():
            for r, b in enumerate(self.at(k + 1)):
                for c, a in enumerate(self.at(k)):
                    x = t[r, c]
                    ea = alg.idempotents[a]
                    eb = alg.idempotents[b]
                    if not np.array_equal(alg.multiply(alg.multiply(ea, x), eb), x):
                        raise DomainError(
                            f"entry ({r},{c}) of d^{k} is not in its corner")
        for k in self.diffs:
            if (k + 1) in self.diffs:
                comp = entry_compose(alg, self.diff(k), self.diff(k + 1))
                if np.any(comp):
                    raise DomainError(f"d^{k+1} . d^{k} != 0")


def tensor_zeros(alg, nrows, ncols):
    return np.zeros((nrows, ncols, alg.dim), dtype=np.int64)


def entry_compose(alg, first, then):
    """Entry tensor of (then . first); first: A->B, then: B->C."""
    nr = then.shape[0]
    nc = first.shape[1]
    out = tensor_zeros(alg, nr, nc)
    for s in range(nr):
        for c in range(nc):
            acc = np.zeros(alg.dim, dtype=np.int64)
            for r in range(first.shape[0]):
                acc = (acc + alg.multiply(first[r, c], then[s, r])) % alg.p
            out[s, c] = acc
    return out


def shift_cx(cx, s):
    """cx[s]: degree k holds what was in degree k + s; odd shifts flip signs."""
    comps = {k - s: v for k, v in cx.comps.items()}
    sign = -1 if s % 2 else 1
    diffs = {k - s: (sign * t) % cx.algebra.p for k, t in cx.diffs.items()}
    return Cx(cx.algebra, comps, diffs, check=False)


def stalk_cx(alg, verts, degree=0):
    return Cx(alg, {degree: list(verts)}, {}, check=False)


def direct_sum_cx(cxs):
    """Direct sum; returns (sum, offsets) with offsets[i][k] the start of
    summand i inside degree k."""
    if not cxs:
        raise DomainError("empty complex sum")
    alg = cxs[0].algebra
    comps = {}
    offsets = []
    for cx in cxs:
        off = {}
        for k, v in cx.comps.items():
            off[k] = len(comps.setdefault(k, []))
            comps[k].extend(v)
        offsets.append(off)
    diffs = {}
    degs = {k for cx in cxs for k in cx.diffs}
    for k in degs:
        t = tensor_zeros(alg, len(comps.get(k + 1, ())), len(comps.get(k, ())))
        for cx, off in zip(cxs, offsets):
            if k in cx.diffs:
                r0 = off[k + 1]
                c0 = off[k]
                d = cx.diffs[k]
                t[r0 : r0 + d.shape[0], c0 : c0 + d.shape[1]] = d
        diffs[k] = t
    return Cx(alg, comps, diffs, check=False), offsets


def concrete_map(alg, src_verts, tgt_verts, tensor):
    """Realize an entry tensor as a ModuleMap between sums of projectives."""
    from .modules import right_mult_module_map

    projs = proj_list(alg)
    src, s_embs, _ = direct_sum(alg, [projs[v] for v in src_verts])
    tgt, t_embs, _ = direct_sum(alg, [projs[v] for v in tgt_verts])
    mat = np.zeros((tgt.dim, src.dim), dtype=np.int64)
    for r, b in enumerate(tgt_verts):
        for c, a in enumerate(src_verts):
            block = right_mult_module_map(projs[a], projs[b], tensor[r, c])
            mat = (mat + t_embs[r] @ block.matrix @ s_embs[c].T) % alg.p
    return src, tgt, ModuleMap(src, tgt, mat)


def cx_concrete(cx, k):
    projs = proj_list(cx.algebra)
    mod, _, _ = direct_sum(cx.algebra, [projs[v] for v in cx.at(k)])
    return mod


class EntrySpace:
    """Coordinates for block tensors whose (r, c) entry lives in the corner
    e_{src[c]} A e_{tgt[r]}."""

    def __init__(self, alg, src_verts, tgt_verts):
        self.alg = alg
        self.src = list(src_verts)
        self.tgt = list(tgt_verts)
        self.slots = []
        self.offsets = np.zeros((len(self.tgt), len(self.src)), dtype=np.int64)
        total = 0
        for r, b in enumerate(self.tgt):
            for c, a in enumerate(self.src):
                basis, solver = alg.corner(a, b)
                self.offsets[r, c] = total
                self.slots.append((r, c, basis, solver))
                total += basis.shape[0]
        self.dim = total

    def to_vec(self, tensor):
        out = np.zeros(self.dim, dtype=np.int64)
        for r, c, basis, solver in self.slots:
            coords = solver.coords(tensor[r, c])
            if coords is None:
                raise DomainError("tensor entry lies outside its corner")
            off = int(self.offsets[r, c])
            out[off : off + basis.shape[0]] = coords
        return out

    def from_vec(self, vec):
        t = tensor_zeros(self.alg, len(self.tgt), len(self.src))
        for r, c, basis, _ in self.slots:
            off = int(self.offsets[r, c])
            k = basis.shape[0]
            if k:
                t[r, c] = (vec[off : off + k] @ basis) % self.alg.p
        return t


# ---------------------------------------------------------------------------
# Gaussian reduction
# ---------------------------------------------------------------------------


def _entry_as_matrix(alg, a, b, x):
    from .modules import right_mult_module_map

    projs = proj_list(alg)
    return right_mult_module_map(projs[a], projs[b], x).matrix


def _invertible_entry(cx):
    alg = cx.algebra
    for k in sorted(cx.diffs):
        t = cx.diffs[k]
        for r, b in enumerate(cx.at(k + 1)):
            for c, a in enumerate(cx.at(k)):
                if not np.any(t[r, c]):
                    continue
                projs = proj_list(alg)
                if projs[a].dim != projs[b].dim:
                    continue
                mat = _entry_as_matrix(alg, a, b, t[r, c])
                if linalg.rank(mat, alg.p) == mat.shape[0]:
                    return k, r, c, mat
    return None


def _inverse_entry(alg, a, b, mat):
    """Entry of the inverse of A e_a -> A e_b with concrete matrix mat."""
    projs = proj_list(alg)
    pa, pb = projs[a], projs[b]
    minv = linalg.inverse(mat, alg.p)
    gen_b = linalg.solve(pb.amb_basis.T, alg.idempotents[b], alg.p)
    back = (minv @ gen_b) % alg.p
    return (pa.amb_basis.T @ back) % alg.p


def reduce_cx(cx):
    """Iterated cancellation of invertible entries; the result is minimal."""
    alg = cx.algebra
    comps = {k: list(v) for k, v in cx.comps.items()}
    diffs = {k: t.copy() for k, t in cx.diffs.items()}

    def current():
        return Cx(alg, comps, diffs, check=False)

    while True:
        hit = _invertible_entry(current())
        if hit is None:
            return current()
        k, r0, c0, mat = hit
        a = comps[k][c0]
        b = comps[k + 1][r0]
        ainv = _inverse_entry(alg, a, b, mat)
        t = diffs[k]
        nr, nc = t.shape[0], t.shape[1]
        keep_r = [r for r in range(nr) if r != r0]
        keep_c = [c for c in range(nc) if c != c0]
        new = tensor_zeros(alg, len(keep_r), len(keep_c))
        for ri, r in enumerate(keep_r):
            for ci, c in enumerate(keep_c):
                corr = alg.multiply(alg.multiply(t[r0, c], ainv), t[r, c0])
                new[ri, ci] = (t[r, c] - corr) % alg.p
        if new.size:
            diffs[k] = new
        else:
            diffs.pop(k, None)
        if (k - 1) in diffs:
            lower = np.delete(diffs[k - 1], c0, axis=0)
            if lower.size:
                diffs[k - 1] = lower
            else:
                diffs.pop(k - 1)
        if (k + 1) in diffs:
            upper = np.delete(diffs[k + 1], r0, axis=1)
            if upper.size:
                diffs[k + 1] = upper
            else:
                diffs.pop(k + 1)
        comps[k].pop(c0)
        comps[k + 1].pop(r0)
        for kk in (k, k + 1):
            if not comps[kk]:
                comps.pop(kk)


# ---------------------------------------------------------------------------
# chain maps and cones
# ---------------------------------------------------------------------------


def compose_chain(alg, first, then):
    """Per-degree composition of chain maps given as dicts deg -> tensor."""
    out = {}
    for k, t in first.items():
        if k in then:
            out[k] = entry_compose(alg, t, then[k])
    return out


def cone(src, tgt, cmap):
    """Mapping cone of a chain map; degree k is src^{k+1} ++ tgt^k."""
    alg = src.algebra
    degs = set()
    for k in list(src.comps) + list(tgt.comps):
        degs.add(k)
        degs.add(k - 1)
    comps = {}
    for k in sorted(degs):
        comps[k] = list(src.at(k + 1)) + list(tgt.at(k))
    diffs = {}
    for k in sorted(degs):
        nr = len(comps.get(k + 1, ()))
        nc = len(comps.get(k, ()))
        if not (nr and nc):
            continue
        t = tensor_zeros(alg, nr, nc)
        sx1 = len(src.at(k + 2))
        sx0 = len(src.at(k + 1))
        dsrc = src.diff(k + 1)
        t[:sx1, :sx0] = (-dsrc) % alg.p
        f = cmap.get(k + 1)
        if f is not None and f.size:
            t[sx1:, :sx0] = f
        dtgt = tgt.diff(k)
        t[sx1:, sx0:] = dtgt
        diffs[k] = t
    return Cx(alg, comps, diffs, check=False)


# ---------------------------------------------------------------------------
# Hom in the homotopy category (two-term objects)
# ---------------------------------------------------------------------------


def _verts(alg, cx, k):
    return cx.at(k)


class HomK:
    """Hom of two-term complexes in the homotopy category.

    reps holds chain-map representatives (f0, fm1); coords() computes the
    coordinates of a chain map modulo null-homotopic ones.
    """

    def __init__(self, X, Y):
        alg = X.algebra
        self.alg = alg
        self.X = X
        self.Y = Y
        p = alg.p
        self.es0 = EntrySpace(alg, X.at(0), Y.at(0))
        self.esm = EntrySpace(alg, X.at(-1), Y.at(-1))
        self.escross = EntrySpace(alg, X.at(-1), Y.at(0))
        self.eshtp = EntrySpace(alg, X.at(0), Y.at(-1))
        n0, nm = self.es0.dim, self.esm.dim
        total = n0 + nm
        dX = X.diff(-1)
        dY = Y.diff(-1)
        cols = []
        eye = np.eye(total, dtype=np.int64)
        for i in range(total):
            f0 = self.es0.from_vec(eye[i][:n0])
            fm = self.esm.from_vec(eye[i][n0:])
            cond = (entry_compose(alg, dX, f0)
                    - entry_compose(alg, fm, dY)) % p
            cols.append(self.escross.to_vec(cond))
        if total == 0:
            zrows = np.zeros((0, 0), dtype=np.int64)
        elif self.escross.dim == 0:
            zrows = np.eye(total, dtype=np.int64)
        else:
            zrows = linalg.kernel_basis(np.array(cols).T, p)
        h_rows = []
        for i in range(self.eshtp.dim):
            h = self.eshtp.from_vec(np.eye(self.eshtp.dim, dtype=np.int64)[i])
            f0 = entry_compose(alg, h, dY)
            fm = entry_compose(alg, dX, h)
            h_rows.append(np.concatenate([self.es0.to_vec(f0),
                                          self.esm.to_vec(fm)]))
        hstack = np.array(h_rows, dtype=np.int64) if h_rows else \
            np.zeros((0, total), dtype=np.int64)
        hspan = linalg.row_space(hstack, p)
        cur = hspan
        cur_rank = cur.shape[0]
        reps = []
        for row in zrows:
            stacked = np.vstack([cur, row.reshape(1, -1)])
            r = linalg.rank(stacked, p)
            if r > cur_rank:
                cur = stacked
                cur_rank = r
                reps.append(row)
        self.h_count = hspan.shape[0]
        self.rep_vecs = np.array(reps, dtype=np.int64) if reps else \
            np.zeros((0, total), dtype=np.int64)
        self._solver = linalg.SpanSolver(
            np.vstack([hspan, self.rep_vecs]) if total else
            np.zeros((0, 0), dtype=np.int64), p)
        self.dim = self.rep_vecs.shape[0]
        self.total = total

    def rep_tensor(self, i):
        v = self.rep_vecs[i]
        return self._split(v)

    def _split(self, v):
        n0 = self.es0.dim
        return {0: self.es0.from_vec(v[:n0]), -1: self.esm.from_vec(v[n0:])}

    def vec_of(self, cmap):
        f0 = cmap.get(0)
        fm = cmap.get(-1)
        if f0 is None:
            f0 = tensor_zeros(self.alg, len(self.Y.at(0)), len(self.X.at(0)))
        if fm is None:
            fm = tensor_zeros(self.alg, len(self.Y.at(-1)), len(self.X.at(-1)))
        return np.concatenate([self.es0.to_vec(f0), self.esm.to_vec(fm)])

    def coords(self, cmap):
        if self.total == 0:
            return np.zeros(0, dtype=np.int64)
        c = self._solver.coords(self.vec_of(cmap))
        if c is None:
            raise DomainError("not a chain map modulo homotopy")
        return c[self.h_count :]


def hom_K_dim(X, Y, shift=0):
    """dim Hom(X, Y[shift]) in the homotopy category; X, Y two-term."""
    alg = X.algebra
    p = alg.p
    if not (X.is_two_term() and Y.is_two_term()):
        raise DomainError("hom_K_dim expects two-term complexes")
    if shift == 0:
        return HomK(X, Y).dim
    if abs(shift) >= 2:
        return 0
    if shift == 1:
        es = EntrySpace(alg, X.at(-1), Y.at(0))
        if es.dim == 0:
            return 0
        dX = X.diff(-1)
        dY = Y.diff(-1)
        rows = []
        esm = EntrySpace(alg, X.at(-1), Y.at(-1))
        for i in range(esm.dim):
            h = esm.from_vec(np.eye(esm.dim, dtype=np.int64)[i])
            rows.append(es.to_vec(entry_compose(alg, h, dY)))
        es0 = EntrySpace(alg, X.at(0), Y.at(0))
        for i in range(es0.dim):
            h = es0.from_vec(np.eye(es0.dim, dtype=np.int64)[i])
            rows.append(es.to_vec(entry_compose(alg, dX, h)))
        sub = linalg.rank(np.array(rows), p) if rows else 0
        return es.dim - sub
    # shift == -1: maps X^0 -> Y^{-1} commuting on both sides, no homotopies
    es = EntrySpace(alg, X.at(0), Y.at(-1))
    if es.dim == 0:
        return 0
    dX = X.diff(-1)
    dY = Y.diff(-1)
    esa = EntrySpace(alg, X.at(-1), Y.at(-1))
    esb = EntrySpace(alg, X.at(0), Y.at(0))
    cols = []
    for i in range(es.dim):
        g = es.from_vec(np.eye(es.dim, dtype=np.int64)[i])
        va = esa.to_vec(entry_compose(alg, dX, g))
        vb = esb.to_vec(entry_compose(alg, g, dY))
        cols.append(np.concatenate([va, vb]))
    return linalg.kernel_basis(np.array(cols), p).shape[0]


# ---------------------------------------------------------------------------
# presentations, H^0, tau, Ext^1
# ---------------------------------------------------------------------------


def _generator_rows(m):
    """Generator vectors of m: one per top basis element, sorted by vertex."""
    alg = m.algebra
    p = alg.p
    top, proj = top_quotient(m)
    gens = []
    for i in range(alg.idempotents.shape[0]):
        ei_top = top.act(alg.idempotents[i])
        tbasis = linalg.row_space(ei_top.T, p)
        ei_m = m.act(alg.idempotents[i])
        for trow in tbasis:
            sol = linalg.solve((proj.matrix @ ei_m) % p, trow, p)
            if sol is None:
                raise DomainError("projective cover lift failed")
            gens.append(((ei_m @ sol) % p, i))
    return gens


def min_presentation(m):
    """Minimal projective presentation of m as a two-term complex.

    The result carries .conc0 (the concrete degree-0 module) and .cover
    (the ModuleMap conc0 -> m).
    """
    alg = m.algebra
    p = alg.p
    projs = proj_list(alg)
    gens = _generator_rows(m)
    zer = [i for _, i in gens]
    p0, embs, _ = direct_sum(alg, [projs[i] for i in zer])
    cols = []
    for (g, i), emb in zip(gens, embs):
        img = np.zeros((m.dim, projs[i].dim), dtype=np.int64)
        for col, v in enumerate(projs[i].amb_basis):
            img[:, col] = (m.act(v) @ g) % p
        cols.append((img, emb))
    cover_mat = np.zeros((m.dim, p0.dim), dtype=np.int64)
    for img, emb in cols:
        cover_mat = (cover_mat + img @ emb.T) % p
    cover = ModuleMap(p0, m, cover_mat)
    ker_rows = cover.kernel_rows()
    ker_mod, ker_incl = submodule(p0, ker_rows)
    kgens = _generator_rows(ker_mod)
    neg = [i for _, i in kgens]
    diff = tensor_zeros(alg, len(zer), len(neg))
    for c, (kg, i) in enumerate(kgens):
        inside = (ker_incl.matrix @ kg) % p
        for r, (emb, vert) in enumerate(zip(embs, zer)):
            comp = (embs[r].T @ inside) % p
            v = (projs[vert].amb_basis.T @ comp) % p
            diff[r, c] = alg.multiply(alg.idempotents[i], v)
    cx = Cx(alg, {-1: neg, 0: zer}, {-1: diff} if neg and zer else {},
            check=False)
    cx.conc0 = p0
    cx.cover = cover
    return cx


def h0(cx):
    """(H^0 module, projection from the concrete degree-0 module)."""
    if not cx.is_two_term():
        raise DomainError("h0 expects a two-term complex")
    alg = cx.algebra
    if not cx.at(0):
        z = zero_module(alg)
        return z, ModuleMap(z, z, np.zeros((0, 0), dtype=np.int64)), z
    if not cx.at(-1):
        conc = cx_concrete(cx, 0)
        from .modules import identity_map
        return conc, identity_map(conc), conc
    src, tgt, dmap = concrete_map(alg, cx.at(-1), cx.at(0), cx.diff(-1))
    quo, proj = quotient_module(tgt, dmap.image_rows())
    return quo, proj, tgt


def h0_module(cx):
    return h0(cx)[0]


def hminus1(cx):
    """H^{-1} as a submodule of the concrete degree -1 module."""
    if not cx.is_two_term():
        raise DomainError("hminus1 expects a two-term complex")
    alg = cx.algebra
    if not cx.at(-1):
        return zero_module(alg)
    if not cx.at(0):
        return cx_concrete(cx, -1)
    src, tgt, dmap = concrete_map(alg, cx.at(-1), cx.at(0), cx.diff(-1))
    sub, _ = submodule(src, dmap.kernel_rows())
    return sub


def inj_list(alg):
    from .modules import injective_module

    if not hasattr(alg, "_tauseq_injs"):
        injs = []
        eye = np.eye(alg.dim, dtype=np.int64)
        for j in range(alg.idempotents.shape[0]):
            inj = injective_module(alg, j)
            rows = [alg.multiply(alg.idempotents[j], eye[k])
                    for k in range(alg.dim)]
            inj.amb_rows = linalg.row_space(np.array(rows), alg.p)
            injs.append(inj)
        alg._tauseq_injs = injs
    return alg._tauseq_injs


def _nakayama_entry(alg, a, b, x):
    """Matrix of nu(phi_x): I_a -> I_b on dual coordinates."""
    injs = inj_list(alg)
    rows_a = injs[a].amb_rows
    rows_b = injs[b].amb_rows
    p = alg.p
    cols = []
    for w in rows_b:
        xw = alg.multiply(x, w)
        c = linalg.solve(rows_a.T, xw, p)
        if c is None:
            raise DomainError("Nakayama image left the expected corner")
        cols.append(c)
    lmat = np.array(cols).T if cols else np.zeros(
        (rows_a.shape[0], 0), dtype=np.int64)
    return lmat.T % p


def tau(m):
    """AR translate of m: kernel of nu applied to its minimal presentation."""
    alg = m.algebra
    p = alg.p
    if m.dim == 0:
        return zero_module(alg)
    pres = min_presentation(m)
    neg, zer = pres.at(-1), pres.at(0)
    if not neg:
        return zero_module(alg)
    injs = inj_list(alg)
    nsrc, n_embs, _ = direct_sum(alg, [injs[v] for v in neg])
    ntgt, t_embs, _ = direct_sum(alg, [injs[v] for v in zer])
    mat = np.zeros((ntgt.dim, nsrc.dim), dtype=np.int64)
    d = pres.diff(-1)
    for r, b in enumerate(zer):
        for c, a in enumerate(neg):
            if np.any(d[r, c]):
                blk = _nakayama_entry(alg, a, b, d[r, c])
                mat = (mat + t_embs[r] @ blk @ n_embs[c].T) % p
    nd = ModuleMap(nsrc, ntgt, mat)
    ker, _ = submodule(nsrc, nd.kernel_rows())
    return ker


def ext1_dim(m, n):
    """dim Ext^1(m, n), via the syzygy of a minimal presentation."""
    if m.dim == 0 or n.dim == 0:
        return 0
    pres = min_presentation(m)
    om_rows = pres.cover.kernel_rows()
    om, om_incl = submodule(pres.conc0, om_rows)
    if om.dim == 0:
        return 0
    hom_om = hom_basis(om, n)
    if not hom_om:
        return 0
    p = m.algebra.p
    rows = []
    for h in hom_basis(pres.conc0, n):
        rows.append(((h @ om_incl.matrix) % p).reshape(-1))
    rk = linalg.rank(np.array(rows), p) if rows else 0
    return len(hom_om) - rk


# ---------------------------------------------------------------------------
# lifting module maps to chain maps
# ---------------------------------------------------------------------------


def lift_map(X, Y, g, h0X=None, h0Y=None):
    """Chain map X -> Y inducing the module map g: H^0(X) -> H^0(Y)."""
    alg = X.algebra
    p = alg.p
    projs = proj_list(alg)
    if h0X is None:
        h0X = h0(X)
    if h0Y is None:
        h0Y = h0(Y)
    _, pX, concX = h0X
    _, pY, concY = h0Y
    zX, zY = X.at(0), Y.at(0)
    f0 = tensor_zeros(alg, len(zY), len(zX))
    off = 0
    y_offsets = []
    acc = 0
    for v in zY:
        y_offsets.append(acc)
        acc += projs[v].dim
    for c, a in enumerate(zX):
        gen = np.zeros(concX.dim, dtype=np.int64)
        gcoords = linalg.solve(projs[a].amb_basis.T, alg.idempotents[a], p)
        gen[off : off + projs[a].dim] = gcoords
        off += projs[a].dim
        target = (g.matrix @ pX.matrix @ gen) % p
        w = linalg.solve(pY.matrix, target, p)
        if w is None:
            raise DomainError("cannot lift through the cover")
        w = (concY.act(alg.idempotents[a]) @ w) % p
        for s, b in enumerate(zY):
            comp = w[y_offsets[s] : y_offsets[s] + projs[b].dim]
            f0[s, c] = (projs[b].amb_basis.T @ comp) % p
    # solve for f^{-1} with d_Y . f^{-1} = f^0 . d_X
    esm = EntrySpace(alg, X.at(-1), Y.at(-1))
    escross = EntrySpace(alg, X.at(-1), Y.at(0))
    rhs = escross.to_vec(entry_compose(alg, X.diff(-1), f0))
    if esm.dim == 0:
        if np.any(rhs):
            raise DomainError("no room to lift in degree -1")
        fm = tensor_zeros(alg, len(Y.at(-1)), len(X.at(-1)))
        return {0: f0, -1: fm}
    cols = []
    eye = np.eye(esm.dim, dtype=np.int64)
    for i in range(esm.dim):
        fm = esm.from_vec(eye[i])
        cols.append(escross.to_vec(entry_compose(alg, fm, Y.diff(-1))))
    sol = linalg.solve(np.array(cols).T, rhs, p)
    if sol is None:
        raise DomainError("degree -1 lift does not exist")
    return {0: f0, -1: esm.from_vec(sol)}


# ---------------------------------------------------------------------------
# End rings and minimal right approximations in the homotopy category
# ---------------------------------------------------------------------------


class EndKData:
    def __init__(self, total, homk, struct, idem_coords):
        self.total = total
        self.homk = homk
        self.struct = struct
        self.idem_coords = idem_coords


def _identity_cmap(alg, cx):
    out = {}
    for k, verts in cx.comps.items():
        t = tensor_zeros(alg, len(verts), len(verts))
        for i, v in enumerate(verts):
            t[i, i] = alg.idempotents[v]
        out[k] = t
    return out


def _block_cmap(alg, total, offsets, cxs, j):
    """The idempotent chain map of block j inside the direct sum."""
    out = {}
    for k, verts in total.comps.items():
        t = tensor_zeros(alg, len(verts), len(verts))
        if k in cxs[j].comps:
            off = offsets[j][k]
            for i, v in enumerate(cxs[j].at(k)):
                t[off + i, off + i] = alg.idempotents[v]
        out[k] = t
    return out


def end_K(cxs):
    """End ring of a direct sum of two-term complexes, with the opposite
    product so Hom(total, -) spaces become left modules."""
    alg = cxs[0].algebra
    p = alg.p
    total, offsets = direct_sum_cx(cxs)
    homk = HomK(total, total)
    d = homk.dim
    if d == 0:
        raise DomainError("End ring of a zero object")
    mult = np.zeros((d, d, d), dtype=np.int64)
    reps = [homk.rep_tensor(i) for i in range(d)]
    for i in range(d):
        for j in range(d):
            comp = compose_chain(alg, reps[i], reps[j])  # reps[i] first
            mult[i, j] = homk.coords(comp)
    unit = homk.coords(_identity_cmap(alg, total))
    idem = []
    for j in range(len(cxs)):
        idem.append(homk.coords(_block_cmap(alg, total, offsets, cxs, j)))
    struct = StructAlgebra(p, [f"k{i}" for i in range(d)], mult,
                           np.array(idem), unit=unit, check=False)
    return EndKData(total, homk, struct, idem), offsets


def _cmap_from_coords(homk, coords):
    alg = homk.alg
    out0 = tensor_zeros(alg, len(homk.Y.at(0)), len(homk.X.at(0)))
    outm = tensor_zeros(alg, len(homk.Y.at(-1)), len(homk.X.at(-1)))
    for c, i in zip(coords, range(homk.dim)):
        if c:
            t = homk.rep_tensor(i)
            out0 = (out0 + int(c) * t[0]) % alg.p
            outm = (outm + int(c) * t[-1]) % alg.p
    return {0: out0, -1: outm}


def _restrict_cmap(alg, cmap, total, offsets, cxs, j, X):
    """Restrict a chain map total -> X to block j."""
    out = {}
    for k in (-1, 0):
        rows = len(X.at(k))
        cols = len(cxs[j].at(k))
        t = tensor_zeros(alg, rows, cols)
        if k in cxs[j].comps and k in cmap:
            off = offsets[j][k]
            t = cmap[k][:, off : off + cols].copy()
        out[k] = t
    return out


def min_right_approx_K(cxs, X):
    """Minimal right approximation of X by sums of the given two-term
    complexes, inside the homotopy category.

    Returns (source complex, chain map dict, list of indices used).
    """
    alg = X.algebra
    p = alg.p
    cxs = [c for c in cxs if c.total_summands()]
    if not cxs:
        src = Cx(alg, {}, {}, check=False)
        return src, {}, []
    (end, offsets) = end_K(cxs)
    total = end.total
    homk = HomK(total, X)
    if homk.dim == 0:
        src = Cx(alg, {}, {}, check=False)
        return src, {}, []
    rad_rows = end.struct.radical_rows()
    rad_maps = [_cmap_from_coords(end.homk, r) for r in rad_rows]
    hom_maps = [homk._split(homk.rep_vecs[i]) for i in range(homk.dim)]
    w = []
    for f in hom_maps:
        for r in rad_maps:
            comp = compose_chain(alg, r, f)  # f after r
            w.append(homk.coords(comp))
    cur = np.array(w, dtype=np.int64) if w else np.zeros(
        (0, homk.dim), dtype=np.int64)
    cur_rank = linalg.rank(cur, p) if cur.size else 0
    kept = []
    idem_maps = [_cmap_from_coords(end.homk, ic) for ic in end.struct.idempotents]
    for j in range(len(cxs)):
        for f in hom_maps:
            cand = compose_chain(alg, idem_maps[j], f)
            vec = homk.coords(cand)
            stacked = np.vstack([cur, vec.reshape(1, -1)])
            r = linalg.rank(stacked, p)
            if r > cur_rank:
                cur = stacked
                cur_rank = r
                kept.append((j, _restrict_cmap(alg, cand, total, offsets,
                                               cxs, j, X)))
    used = [j for j, _ in kept]
    src, s_offsets = direct_sum_cx([cxs[j] for j in used]) if used else (
        Cx(alg, {}, {}, check=False), [])
    cmap = {}
    for k in (-1, 0):
        rows = len(X.at(k))
        cols = len(src.at(k))
        t = tensor_zeros(alg, rows, cols)
        for idx, (j, part) in enumerate(kept):
            if k in cxs[j].comps:
                off = s_offsets[idx][k]
                t[:, off : off + len(cxs[j].at(k))] = part[k]
        cmap[k] = t
    return src, cmap, used


def _restrict_cmap_rows(alg, cmap, total, offsets, cxs, j, X):
    """Restrict a chain map X -> total to block j of the target."""
    out = {}
    for k in (-1, 0):
        rows = len(cxs[j].at(k))
        cols = len(X.at(k))
        t = tensor_zeros(alg, rows, cols)
        if k in cxs[j].comps and k in cmap:
            off = offsets[j][k]
            t = cmap[k][off : off + rows, :].copy()
        out[k] = t
    return out


def min_left_approx_K(X, cxs):
    """Minimal left approximation of X by sums of the given two-term
    complexes, inside the homotopy category.

    Returns (target complex, chain map dict, list of indices used).
    """
    alg = X.algebra
    p = alg.p
    cxs = [c for c in cxs if c.total_summands()]
    if not cxs:
        tgt = Cx(alg, {}, {}, check=False)
        return tgt, {}, []
    (end, offsets) = end_K(cxs)
    total = end.total
    homk = HomK(X, total)
    if homk.dim == 0:
        tgt = Cx(alg, {}, {}, check=False)
        return tgt, {}, []
    rad_rows = end.struct.radical_rows()
    rad_maps = [_cmap_from_coords(end.homk, r) for r in rad_rows]
    hom_maps = [homk._split(homk.rep_vecs[i]) for i in range(homk.dim)]
    w = []
    for f in hom_maps:
        for r in rad_maps:
            comp = compose_chain(alg, f, r)  # r after f
            w.append(homk.coords(comp))
    cur = np.array(w, dtype=np.int64) if w else np.zeros(
        (0, homk.dim), dtype=np.int64)
    cur_rank = linalg.rank(cur, p) if cur.size else 0
    kept = []
    idem_maps = [_cmap_from_coords(end.homk, ic) for ic in end.struct.idempotents]
    for j in range(len(cxs)):
        for f in hom_maps:
            cand = compose_chain(alg, f, idem_maps[j])
            vec = homk.coords(cand)
            stacked = np.vstack([cur, vec.reshape(1, -1)])
            r = linalg.rank(stacked, p)
            if r > cur_rank:
                cur = stacked
                cur_rank = r
                kept.append((j, _restrict_cmap_rows(alg, cand, total, offsets,
                                                    cxs, j, X)))
    used = [j for j, _ in kept]
    tgt, s_offsets = direct_sum_cx([cxs[j] for j in used]) if used else (
        Cx(alg, {}, {}, check=False), [])
    cmap = {}
    for k in (-1, 0):
        rows = len(tgt.at(k))
        cols = len(X.at(k))
        t = tensor_zeros(alg, rows, cols)
        for idx, (j, part) in enumerate(kept):
            if k in cxs[j].comps:
                off = s_offsets[idx][k]
                t[off : off + len(cxs[j].at(k)), :] = part[k]
        cmap[k] = t
    return tgt, cmap, used


# ---------------------------------------------------------------------------
# pairs (module, shifted projectives) <-> two-term complexes
# ---------------------------------------------------------------------------


def pair_to_cx(m, shifted):
    """Complex of the pair: minimal presentation of m plus stalks P[1]."""
    alg = m.algebra
    pres = min_presentation(m)
    if not shifted:
        return pres
    stalk = stalk_cx(alg, list(shifted), degree=-1)
    out, _ = direct_sum_cx([pres, stalk])
    return out


def cx_to_pair(cx):
    """(module part H^0, shifted projective vertex list) of a two-term
    complex, after reduction to minimal form."""
    red = reduce_cx(cx)
    if not red.is_two_term():
        raise DomainError("complex is not two-term after reduction")
    d = red.diff(-1)
    keep_cols = [c for c in range(len(red.at(-1))) if np.any(d[:, c])]
    shifted = [red.at(-1)[c] for c in range(len(red.at(-1)))
               if c not in keep_cols]
    core = Cx(red.algebra,
              {-1: [red.at(-1)[c] for c in keep_cols], 0: red.at(0)},
              {-1: d[:, keep_cols]} if keep_cols and red.at(0) else {},
              check=False)
    mod, _, _ = h0(core)
    return mod, shifted
