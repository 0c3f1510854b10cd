"""Perpendicular reduction: J(u) membership, the reduced algebra Gamma with
its transport equivalence, and the bijection E between compatible summands
at one level and signed objects one level down.

A reduction chain is a linked list of WideContext nodes.  The root context
holds the ambient algebra and the full registry of indecomposable tau-rigid
summand items; each child is cut out by one reducer (a module u, giving
Gamma = End(B + u)/[u] for the Bongartz complement B, or a shifted
projective P[1], giving the idempotent quotient).
"""

import numpy as np

from . import complexes as cxs
from . import linalg
from .algebra import (quotient_by_ideal, quotient_by_idempotent_ideal,
                      two_sided_ideal_rows)
from .errors import DomainError
from .modules import (FdModule, decompose_grouped, end_algebra, hom_basis,
                      hom_dim, in_gen, is_iso, min_left_approx,
                      torsion_free_quotient, zero_module)
from .tautilt import (Registry, SignedObject, _items_support_tau_rigid,
                      bongartz, indec_tau_rigid_items, item_sort_key)


def j_membership(u, x):
    """Is x an object of J(u)?

    For a module reducer u: Hom(u, x) = 0 and Hom(x, tau u) = 0; for a
    shifted reducer P[1]: Hom(P, x) = 0.
    """
    if x.dim == 0:
        return True
    if isinstance(u, SignedObject):
        if u.is_shift:
            proj = cxs.proj_list(x.algebra)[u.vertex]
            return hom_dim(proj, x) == 0
        u = u.module
    return hom_dim(u, x) == 0 and hom_dim(x, cxs.tau(u)) == 0


class ReducedObject:
    """One summand seen on both sides of a reduction step.

    lam_module/lam_shift describe the object inside J(reducer) as a module
    over the reducer's own level (tagged with a shift when it arises as a
    J-projective shifted once); gamma_item is the same object written over
    Gamma, as ('m', registry id) or ('p', vertex); root_module is the
    ambient-algebra module realizing the lambda side (the nested J's are
    wide subcategories of the ambient module category, so the realization
    is computed by ambient torsion-free quotients).
    """

    def __init__(self, lam_module, lam_shift, gamma_item, root_module):
        self.lam_module = lam_module
        self.lam_shift = lam_shift
        self.gamma_item = gamma_item
        self.root_module = root_module

    def gamma_signed(self, ctx):
        return ctx.registry.item_signed(self.gamma_item)


class WideContext:
    """One node of a reduction chain.

    The root node (reducer None) has gamma equal to the ambient algebra and
    a registry holding every indecomposable tau-rigid summand item.  A child
    node reduces its parent's gamma by one compatible summand.
    """

    def __init__(self, algebra, parent, reducer_item, gamma, registry,
                 level_items):
        self.algebra = algebra  # where the reducer lives (parent level)
        self.parent = parent
        self.reducer_item = reducer_item
        self.gamma = gamma
        self.registry = registry  # Registry over gamma
        self.level_items = level_items
        self.records = []  # {"parent": item, "reduced": ReducedObject}
        self._children = {}
        # module-reducer transport data
        self.u_module = None
        self.b_summands = []
        self._end = None
        self._quot = None

    @property
    def is_root(self):
        return self.reducer_item is None

    def parent_registry(self):
        return self.parent.registry if self.parent is not None else None

    def child(self, reducer_item):
        if reducer_item not in self._children:
            self._children[reducer_item] = _build_context(self, reducer_item)
        return self._children[reducer_item]

    def record_for(self, gamma_item):
        hits = [r for r in self.records if r["reduced"].gamma_item == gamma_item]
        if not hits:
            raise DomainError("no preimage for the given reduced object")
        if len(hits) > 1:
            raise DomainError("multiple preimages for the given reduced "
                              "object")
        return hits[0]

    def realize_module(self, m):
        """Root module realizing a registered module over this context's
        gamma."""
        if self.is_root:
            return m
        idx = self.registry.find(m)
        if idx is None:
            raise DomainError("module is not a registered level object")
        return self.record_for(("m", idx))["reduced"].root_module

    def realize_item(self, item):
        """(root module, shift flag) for a level item of this context."""
        kind, val = item
        if self.is_root:
            if kind == "m":
                return self.registry.module(val), False
            return cxs.proj_list(self.gamma)[val], True
        red_obj = self.record_for(item)["reduced"]
        return red_obj.root_module, red_obj.lam_shift

    def display_root(self, item, root_registry):
        m, shift = self.realize_item(item)
        name = root_registry.name(root_registry.ensure(m))
        return name + "[1]" if shift else name


def root_context(alg, cap=10000, registry=None):
    """The chain root: ambient algebra plus the full tau-rigid registry."""
    items, objs, reg = indec_tau_rigid_items(alg, cap=cap, registry=registry)
    ctx = WideContext(alg, None, None, alg, reg, items)
    ctx.stt_objects = objs
    return ctx


def _find_proj_vertex(alg, m):
    projs = cxs.proj_list(alg)
    for w, pw in enumerate(projs):
        if is_iso(m, pw):
            return w
    raise DomainError("module is not isomorphic to an indecomposable "
                      "projective")


def _compatible(ctx, x_item, u_item):
    if x_item == u_item:
        return False
    return _items_support_tau_rigid(ctx.registry, [x_item, u_item])


def _build_context(parent, reducer_item):
    a = parent.gamma
    preg = parent.registry
    kind, val = reducer_item
    if reducer_item not in parent.level_items:
        raise DomainError("reducer is not a registered tau-rigid summand")
    if kind == "m":
        u = preg.module(val)
        b = bongartz(preg, u)
        groups = decompose_grouped(b) if b.dim else []
        b_summands = [piece for piece, _ in groups]
        labels = [preg.name(preg.ensure(piece)) for piece in b_summands]
        end = end_algebra(b_summands + [u], vertex_labels=labels + ["u"])
        e_u = end.struct.idempotents[-1]
        ideal = two_sided_ideal_rows(end.struct, [e_u])
        quot = quotient_by_ideal(end.struct, ideal)
        gamma = quot.algebra
        if gamma.idempotents.shape[0] != len(b_summands):
            raise DomainError("reduced algebra lost a Bongartz vertex")
        ctx = WideContext(a, parent, reducer_item, gamma, Registry(gamma),
                          None)
        ctx.u_module = u
        ctx.b_summands = b_summands
        ctx._end = end
        ctx._quot = quot
    else:
        quot = quotient_by_idempotent_ideal(a, val)
        gamma = quot.algebra
        ctx = WideContext(a, parent, reducer_item, gamma, Registry(gamma),
                          None)
        ctx._quot = quot
    n_parent = a.idempotents.shape[0]
    if gamma.idempotents.shape[0] != n_parent - 1:
        raise DomainError("reduction did not drop exactly one vertex")
    for x_item in parent.level_items:
        if not _compatible(parent, x_item, reducer_item):
            continue
        red = _reduce_item(ctx, x_item)
        ctx.records.append({"parent": x_item, "reduced": red})
    ctx.level_items = [r["reduced"].gamma_item for r in ctx.records]
    if len(set(ctx.level_items)) != len(ctx.level_items):
        raise DomainError("reduction produced a repeated level item")
    return ctx


def make_context(parent, reducer):
    """Reduce by one summand; parent is a WideContext or a root algebra.

    The reducer is a SignedObject (or a registry item) over the parent's
    gamma, required to be an indecomposable tau-rigid summand there.
    Contexts are cached per (parent, reducer).
    """
    if not isinstance(parent, WideContext):
        parent = root_context(parent)
    if isinstance(reducer, SignedObject):
        reducer = parent.registry.signed_item(reducer)
    return parent.child(reducer)


def transport(ctx, x):
    """Rewrite a module of J(reducer) over gamma.

    Module reducer: the space Hom(B + u, x) with Gamma acting by
    precomposition (the u-block is zero since Hom(u, x) = 0).  Shifted
    reducer: the same space with the quotient algebra acting through a
    linear section.
    """
    gamma = ctx.gamma
    p = gamma.p
    if x.dim == 0:
        return zero_module(gamma)
    u_signed = ctx.parent.registry.item_signed(ctx.reducer_item)
    if not j_membership(u_signed, x):
        raise DomainError("module is not an object of J(reducer)")
    if ctx.reducer_item[0] == "p":
        action = np.zeros((gamma.dim, x.dim, x.dim), dtype=np.int64)
        for k in range(gamma.dim):
            action[k] = x.act(ctx._quot.lift[:, k])
        return FdModule(gamma, action)
    blocks = []
    for i, b in enumerate(ctx.b_summands):
        pr = ctx._end.prs[i]
        for h in hom_basis(b, x):
            blocks.append((h @ pr) % p)
    if not blocks:
        return zero_module(gamma)
    m = len(blocks)
    flat = np.array([bl.reshape(-1) for bl in blocks])
    solver = linalg.SpanSolver(flat, p)
    action = np.zeros((gamma.dim, m, m), dtype=np.int64)
    for k in range(gamma.dim):
        lift = ctx._quot.lift[:, k]
        mat = np.zeros_like(ctx._end.mats[0])
        for j, c in enumerate(lift):
            if c:
                mat = (mat + int(c) * ctx._end.mats[j]) % p
        for jj, h in enumerate(blocks):
            coords = solver.coords(((h @ mat) % p).reshape(-1))
            if coords is None:
                raise DomainError("precomposition left the Hom space")
            action[k, :, jj] = coords
    return FdModule(gamma, action)


def _reduce_item(ctx, x_item):
    """E(reducer) on one compatible parent item; the core of e_map."""
    parent = ctx.parent
    preg = parent.registry
    kind, val = x_item
    u_root, _ = parent.realize_item(ctx.reducer_item)
    x_root, _ = parent.realize_item(x_item)
    if ctx.reducer_item[0] == "p":
        if kind == "m":
            x = preg.module(val)
            tm = transport(ctx, x)
            return ReducedObject(x, False, ("m", ctx.registry.ensure(tm)),
                                 x_root)
        fq, _ = torsion_free_quotient(
            cxs.proj_list(ctx.algebra)[ctx.reducer_item[1]],
            cxs.proj_list(ctx.algebra)[val])
        w = _find_proj_vertex(ctx.gamma, transport(ctx, fq))
        root_m, _ = torsion_free_quotient(u_root, x_root)
        return ReducedObject(fq, True, ("p", w), root_m)
    u = ctx.u_module
    if kind == "m":
        x = preg.module(val)
        if not in_gen(u, x):
            fx, _ = torsion_free_quotient(u, x)
            tm = transport(ctx, fx)
            root_m, _ = torsion_free_quotient(u_root, x_root)
            return ReducedObject(fx, False, ("m", ctx.registry.ensure(tm)),
                                 root_m)
        uid = ctx.reducer_item[1]
        src, cmap, _ = cxs.min_right_approx_K([preg.pres(uid)], preg.pres(val))
        rx = cxs.reduce_cx(cxs.shift_cx(cxs.cone(src, preg.pres(val), cmap),
                                        -1))
        bx, _, _ = cxs.h0(rx)
    else:
        proj = cxs.proj_list(ctx.algebra)[val]
        bx, _, _ = min_left_approx(proj, ctx.b_summands)
    groups = decompose_grouped(bx) if bx.dim else []
    if len(groups) != 1 or groups[0][1] != 1:
        raise DomainError("reduction triangle did not isolate one Bongartz "
                          "summand")
    w = next(i for i, b in enumerate(ctx.b_summands)
             if is_iso(groups[0][0], b))
    fb, _ = torsion_free_quotient(u, ctx.b_summands[w])
    b_root = parent.realize_module(ctx.b_summands[w])
    root_m, _ = torsion_free_quotient(u_root, b_root)
    return ReducedObject(fb, True, ("p", w), root_m)


def e_map(ctx, x):
    """E(reducer) applied to a compatible SignedObject (or item) over the
    parent level; returns the stored ReducedObject."""
    if isinstance(x, SignedObject):
        x = ctx.parent.registry.signed_item(x)
    for rec in ctx.records:
        if rec["parent"] == x:
            return rec["reduced"]
    if x == ctx.reducer_item:
        raise DomainError("cannot reduce the reducer by itself")
    raise DomainError("object is not compatible with the reducer")


def e_inverse(ctx, y):
    """The unique compatible parent item mapping to y under e_map.

    y may be a ReducedObject, a gamma-level item, or a SignedObject over
    gamma.  Raises when no preimage or more than one is found.
    """
    if isinstance(y, ReducedObject):
        y = y.gamma_item
    elif isinstance(y, SignedObject):
        y = ctx.registry.signed_item(y)
    rec = ctx.record_for(y)
    return rec["parent"]


def level_item_from_pair(ctx, module, shift):
    """The level item of a (gamma-module, shift) pair; errors when the pair
    is not a registered level object."""
    if shift:
        return ("p", _find_proj_vertex(ctx.gamma, module))
    idx = ctx.registry.find(module)
    if idx is None or ("m", idx) not in ctx.level_items:
        raise DomainError("module is not a registered tau-rigid level item")
    return ("m", idx)


def lift_pair(ctx, module, shift):
    """Rewrite a (module, shift) pair over ctx's parent level as a pair over
    gamma.  Only the underlying module transports: a shift tag names a
    projective at the entry's own level, so it is carried along untouched
    and interpreted by level_item_from_pair once the entry's level is
    reached."""
    return transport(ctx, module), shift
