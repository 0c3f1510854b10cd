"""Perpendicular reduction: J(u) membership, reduced algebras, transport,
and the summand bijection E with its inverse."""

import pytest

from conftest import item_of
from tauseq.algebra import algebra_invariants
from tauseq.errors import DomainError
from tauseq.modules import (hom_dim, is_iso, simple_module, zero_module)
from tauseq.complexes import proj_list, tau
from tauseq.reduction import (e_inverse, e_map, j_membership,
                              level_item_from_pair, make_context, transport)
from tauseq.tautilt import SignedObject, is_tau_rigid

# membership of the nine bundled ex3 modules in each J(u), worked out from
# the Hom/tau tables of the algebra
J_TABLE = {
    "S2": {"P2", "I3", "S1"},
    "S3": {"S2", "I2", "S1"},
    "P1": {"S3", "P2", "S2"},
    "P2": {"S3", "M", "S1"},
    "M": {"S3", "P1", "I2"},
    "N": {"M", "P2"},
    "I2": {"P1", "M", "N", "I3", "S2"},
    "S1": {"I2", "M"},
}

# (vertex count, total dimension, arrow count) of each reduced algebra
GAMMA_SHAPES = {
    "S2": (2, 3, 1),
    "S3": (2, 3, 1),
    "P1": (2, 3, 1),
    "P2": (2, 3, 1),
    "M": (2, 3, 1),
    "N": (2, 2, 0),
    "S1": (2, 2, 0),
    "I2": (2, 5, 2),
}


def test_j_membership_table(ex3):
    _, alg, mods = ex3
    for un, wanted in J_TABLE.items():
        got = {xn for xn, x in mods.items() if j_membership(mods[un], x)}
        assert got == wanted, un


def test_j_membership_edge_cases(ex3):
    _, alg, mods = ex3
    assert j_membership(mods["S2"], zero_module(alg))
    assert not j_membership(mods["S2"], mods["S2"])
    # shifted reducer: perpendicularity to the projective alone
    shifted = SignedObject(vertex=0)
    for xn, x in mods.items():
        assert j_membership(shifted, x) == (hom_dim(proj_list(alg)[0], x) == 0)


def test_reduced_algebra_shapes(root3, ex3):
    _, alg, mods = ex3
    for un, shape in GAMMA_SHAPES.items():
        ctx = root3.child(item_of(root3, mods, un))
        assert algebra_invariants(ctx.gamma) == shape, un


@pytest.mark.parametrize("stem,exname",
                         [("root1", "ex1"), ("root2", "ex2"),
                          ("root3", "ex3")])
def test_reduction_drops_exactly_one_vertex(stem, exname, request):
    root = request.getfixturevalue(stem)
    _, alg, mods = request.getfixturevalue(exname)
    n = alg.idempotents.shape[0]
    for reducer in root.level_items:
        ctx = root.child(reducer)
        assert ctx.gamma.idempotents.shape[0] == n - 1


def test_make_context_accepts_signed_objects_and_caches(root3, ex3):
    _, alg, mods = ex3
    via_item = make_context(root3, item_of(root3, mods, "S2"))
    via_signed = make_context(root3, SignedObject(module=mods["S2"]))
    assert via_item is via_signed


def test_e_map_oracles_reducing_by_p1(root3, ex3):
    _, alg, mods = ex3
    ctx = root3.child(item_of(root3, mods, "P1"))
    reg0 = root3.registry

    def root_name(name):
        red = e_map(ctx, item_of(root3, mods, name))
        return ctx.display_root(red.gamma_item, reg0)

    assert root_name("S3") == "S3"
    assert root_name("P2") == "P2"
    assert root_name("N") == "S2"
    assert root_name("M") == "P2[1]"
    assert root_name("I2") == "S3[1]"
    assert e_map(ctx, item_of(root3, mods, "M")).gamma_item[0] == "p"
    assert e_map(ctx, item_of(root3, mods, "N")).gamma_item[0] == "m"


def test_e_map_fixes_perpendicular_modules_outside_gen(root3, ex3):
    _, alg, mods = ex3
    ctx = root3.child(item_of(root3, mods, "I2"))
    for name in ("M", "P1"):
        red = e_map(ctx, item_of(root3, mods, name))
        assert not red.lam_shift
        assert is_iso(red.root_module, mods[name])


def test_e_map_rejects_incompatible_input(root3, ex3):
    _, alg, mods = ex3
    ctx = root3.child(item_of(root3, mods, "S2"))
    with pytest.raises(DomainError):
        e_map(ctx, item_of(root3, mods, "S2"))
    with pytest.raises(DomainError):
        e_map(ctx, item_of(root3, mods, "S3"))  # S3 + S2 is not tau-rigid


@pytest.mark.parametrize("stem", ["root1", "root2", "root3"])
def test_e_map_e_inverse_round_trip(stem, request):
    root = request.getfixturevalue(stem)
    for reducer in root.level_items:
        ctx = root.child(reducer)
        for rec in ctx.records:
            red = rec["reduced"]
            assert e_inverse(ctx, red.gamma_item) == rec["parent"]
            assert e_inverse(ctx, red) == rec["parent"]
            again = e_map(ctx, rec["parent"])
            assert again.gamma_item == red.gamma_item


def test_e_inverse_rejects_unknown_items(root3, ex3):
    _, alg, mods = ex3
    ctx = root3.child(item_of(root3, mods, "S2"))
    with pytest.raises(DomainError):
        e_inverse(ctx, ("m", 999))


@pytest.mark.parametrize("stem", ["root1", "root2", "root3"])
def test_reduced_level_matches_independent_enumeration(stem, request):
    # the E image of the compatible items is exactly the indecomposable
    # tau-rigid inventory of the reduced algebra
    from tauseq.tautilt import indec_tau_rigid_items

    root = request.getfixturevalue(stem)
    for reducer in root.level_items:
        ctx = root.child(reducer)
        fresh_items, _, fresh_reg = indec_tau_rigid_items(ctx.gamma)
        fresh = set()
        for kind, val in fresh_items:
            if kind == "p":
                fresh.add(("p", val))
            else:
                idx = ctx.registry.find(fresh_reg.module(val))
                assert idx is not None
                fresh.add(("m", idx))
        assert set(ctx.level_items) == fresh, reducer
        assert len(set(ctx.level_items)) == len(ctx.level_items)


def test_bongartz_summands_transport_to_projectives(root3, ex3):
    # images of the Bongartz complement summands are the indecomposable
    # projectives of the reduced algebra, in vertex order
    from tauseq.modules import torsion_free_quotient

    _, alg, mods = ex3
    for name in ("S2", "M", "I2"):
        ctx = root3.child(item_of(root3, mods, name))
        for i, b in enumerate(ctx.b_summands):
            fb, _ = torsion_free_quotient(ctx.u_module, b)
            assert is_iso(transport(ctx, fb), proj_list(ctx.gamma)[i])


def test_transported_modules_stay_tau_rigid(root3, ex3):
    _, alg, mods = ex3
    for reducer in root3.level_items:
        ctx = root3.child(reducer)
        for rec in ctx.records:
            kind, val = rec["reduced"].gamma_item
            if kind == "m":
                assert is_tau_rigid(ctx.registry.module(val))


def test_transport_oracle_simple_over_gamma(root3, ex3):
    # S1 lies in J(S2); over Gamma it becomes the simple at the N vertex
    _, alg, mods = ex3
    ctx = root3.child(item_of(root3, mods, "S2"))
    idx_n = next(i for i, b in enumerate(ctx.b_summands)
                 if is_iso(b, mods["N"]))
    t = transport(ctx, mods["S1"])
    assert is_iso(t, simple_module(ctx.gamma, idx_n))


def test_transport_rejects_non_members(root3, ex3):
    _, alg, mods = ex3
    ctx = root3.child(item_of(root3, mods, "S2"))
    with pytest.raises(DomainError):
        transport(ctx, mods["S3"])


def test_level_item_from_pair_round_trip(root3, ex3):
    _, alg, mods = ex3
    ctx = root3.child(item_of(root3, mods, "P1"))
    for item in ctx.level_items:
        kind, val = item
        if kind == "m":
            back = level_item_from_pair(ctx, ctx.registry.module(val), False)
        else:
            back = level_item_from_pair(ctx, proj_list(ctx.gamma)[val], True)
        assert back == item
    with pytest.raises(DomainError):
        level_item_from_pair(ctx, zero_module(ctx.gamma), False)


@pytest.mark.parametrize("first", ["S2", "M", "P2[1]"])
def test_nested_records_realize_consistently(first, root3, ex3):
    # the stored ambient realization of a depth-two record transports down
    # one level to the module recorded there
    _, alg, mods = ex3
    ctx1 = root3.child(item_of(root3, mods, first))
    for y in ctx1.level_items:
        ctx2 = ctx1.child(y)
        for rec in ctx2.records:
            red = rec["reduced"]
            down = transport(ctx1, red.root_module)
            assert is_iso(down, red.lam_module)
