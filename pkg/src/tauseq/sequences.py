"""Signed tau-exceptional sequences: the bijection with ordered support
tau-rigid objects (both directions), independent validation of candidate
sequences, and enumeration / counting.

An ordered object is a tuple of root-level items; a sequence entry is a
(context, level item) pair, so each entry carries both its own level and,
through the context chain, a realization as an ambient module (possibly
shifted once).
"""

import itertools

from . import reduction as red
from .errors import DomainError
from .modules import is_local_endo
from .tautilt import (_items_support_tau_rigid, is_tau_rigid, item_sort_key)


class SignedSequence:
    """Entries (context, item), innermost level first."""

    def __init__(self, entries):
        self.entries = entries

    def __len__(self):
        return len(self.entries)

    def root_pairs(self):
        """[(ambient module, shift flag)] for each entry."""
        return [ctx.realize_item(item) for ctx, item in self.entries]

    def names(self, root_registry):
        return [ctx.display_root(item, root_registry)
                for ctx, item in self.entries]


def _as_root(ctx_or_alg):
    if isinstance(ctx_or_alg, red.WideContext):
        if not ctx_or_alg.is_root:
            raise DomainError("sequence operations start from a root context")
        return ctx_or_alg
    return red.root_context(ctx_or_alg)


def _check_ordered(root, items):
    n = root.gamma.idempotents.shape[0]
    if not 1 <= len(items) <= n:
        raise DomainError("ordered object length must be between 1 and the "
                          "number of vertices")
    if len(set(items)) != len(items):
        raise DomainError("ordered object has a repeated summand")
    for it in items:
        if it not in root.level_items:
            raise DomainError("summand is not a registered tau-rigid item")
    if not _items_support_tau_rigid(root.registry, list(items)):
        raise DomainError("underlying object is not support tau-rigid")


def psi(root, ordered):
    """The sequence (U_1, .., U_t) attached to an ordered object
    (T_1, .., T_t): U_t = T_t, and the prefix is obtained by reducing at T_t
    and recursing on the images of T_1, .., T_{t-1}."""
    root = _as_root(root)
    ordered = [root.registry.signed_item(x) if not isinstance(x, tuple)
               else x for x in ordered]
    _check_ordered(root, ordered)
    return SignedSequence(_psi(root, list(ordered)))


def _psi(ctx, items):
    if len(items) == 1:
        return [(ctx, items[0])]
    child = ctx.child(items[-1])
    reduced = [red.e_map(child, it) for it in items[:-1]]
    inner = _psi(child, [r.gamma_item for r in reduced])
    return inner + [(ctx, items[-1])]


def phi(root, seq):
    """Inverse of psi: a SignedSequence, or a list of (ambient module,
    shift) pairs, back to the tuple of root-level items."""
    root = _as_root(root)
    if isinstance(seq, SignedSequence):
        out = []
        for ctx, item in seq.entries:
            while not ctx.is_root:
                item = red.e_inverse(ctx, item)
                ctx = ctx.parent
            out.append(item)
        return tuple(out)
    pairs = list(seq)
    if not pairs:
        raise DomainError("empty sequence")
    return tuple(_phi(root, pairs))


def _phi(ctx, pairs):
    last_item = red.level_item_from_pair(ctx, *pairs[-1])
    if len(pairs) == 1:
        return [last_item]
    child = ctx.child(last_item)
    lifted = [red.lift_pair(child, m, sh) for m, sh in pairs[:-1]]
    inner = _phi(child, lifted)
    return [red.e_inverse(child, y) for y in inner] + [last_item]


def validate_sequence(root, pairs):
    """Check the recursive definition directly, without psi.

    pairs: [(ambient module, shift flag)].  The last entry must be tau-rigid
    at the current level (shifted entries must be indecomposable
    projectives); the prefix must lie in J(last) and validate one level
    down, transported.  Returns (ok, diagnosis).
    """
    root = _as_root(root)
    n = root.gamma.idempotents.shape[0]
    if not 1 <= len(pairs) <= n:
        return False, (f"length {len(pairs)} is outside 1..{n}")
    return _validate(root, list(pairs), len(pairs))


def _validate(ctx, pairs, total):
    pos = len(pairs)
    m, shift = pairs[-1]
    if shift:
        try:
            item = ("p", red._find_proj_vertex(ctx.gamma, m))
        except DomainError:
            return False, (f"entry {pos}: shifted entry is not an "
                           "indecomposable projective at its level")
    else:
        if m.dim == 0:
            return False, f"entry {pos}: zero module"
        if not is_local_endo(m):
            return False, f"entry {pos}: not indecomposable"
        if not is_tau_rigid(m):
            return False, f"entry {pos}: not tau-rigid at its level"
        idx = ctx.registry.find(m)
        if idx is None or ("m", idx) not in ctx.level_items:
            return False, f"entry {pos}: not a registered tau-rigid item"
        item = ("m", idx)
    if len(pairs) == 1:
        return True, "valid"
    child = ctx.child(item)
    lifted = []
    for j, (x, xsh) in enumerate(pairs[:-1]):
        try:
            lifted.append(red.lift_pair(child, x, xsh))
        except DomainError as exc:
            return False, f"entry {j + 1}: {exc}"
    return _validate(child, lifted, total)


def enumerate_ordered(root, t):
    """All ordered support tau-rigid objects of length t, as item tuples in
    lexicographic registry order."""
    root = _as_root(root)
    n = root.gamma.idempotents.shape[0]
    if not 1 <= t <= n:
        raise DomainError(f"length {t} is outside 1..{n}")
    subsets = set()
    for obj in root.stt_objects:
        subsets.update(itertools.combinations(obj, t))
    out = []
    for sub in subsets:
        out.extend(itertools.permutations(sub))
    out.sort(key=lambda tup: [item_sort_key(it) for it in tup])
    return out


def enumerate_sequences(root, t):
    """[(ordered object, its sequence)] for every ordered object."""
    root = _as_root(root)
    return [(tup, psi(root, tup)) for tup in enumerate_ordered(root, t)]


def count_sequences(root, t):
    """(total, per-last-entry counts) over ordered objects of length t."""
    root = _as_root(root)
    ordered = enumerate_ordered(root, t)
    per_last = {}
    for tup in ordered:
        per_last[tup[-1]] = per_last.get(tup[-1], 0) + 1
    return len(ordered), per_last


def sequence_names(root, seq):
    return seq.names(root.registry)


def ordered_names(root, items):
    return [root.display_root(it, root.registry) for it in items]
