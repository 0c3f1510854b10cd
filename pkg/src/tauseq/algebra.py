"""Basic finite-dimensional algebras as structure constants.

An algebra is stored as a basis with a multiplication tensor plus a
distinguished complete set of orthogonal idempotents.  Constructors:
path algebras of quivers with monomial relations (parsed from text),
quotients by two-sided ideals (in particular ideals generated by an
idempotent), and matrix algebras coordinatized from a spanning set
(used for endomorphism rings).

Multiplication convention: for paths, x*y is "traverse y, then x", i.e.
composition in function order, so that a left module action satisfies
act(x*y) = act(x) @ act(y).
"""

import numpy as np

from . import linalg
from .errors import DomainError, InputError


class QuiverPresentation:
    """A quiver with monomial relations.

    Attributes:
        vertices: list of vertex labels (strings).
        arrows: list of (name, source label, target label).
        relations: list of arrow-name lists in traversal order
            (first-traversed arrow first).
        p: field order.
    """

    def __init__(self, vertices, arrows, relations, p=linalg.DEFAULT_PRIME):
        self.vertices = list(vertices)
        self.arrows = list(arrows)
        self.relations = [list(r) for r in relations]
        self.p = p
        names = [a[0] for a in self.arrows]
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex label")
        if len(set(names)) != len(names):
            raise InputError("duplicate arrow name")
        arrow_by_name = {a[0]: a for a in self.arrows}
        for name, src, dst in self.arrows:
            if src not in self.vertices or dst not in self.vertices:
                raise InputError(f"arrow {name} references unknown vertex")
        for rel in self.relations:
            if len(rel) < 2:
                raise InputError("relation of length < 2 is not admissible")
            for name in rel:
                if name not in arrow_by_name:
                    raise InputError(f"relation references unknown arrow {name}")
            for a, b in zip(rel, rel[1:]):
                if arrow_by_name[a][2] != arrow_by_name[b][1]:
                    raise InputError(
                        f"relation {' '.join(rel)} is not a composable path"
                    )


def parse_quiver(text):
    """Parse the line-oriented algebra file format into a QuiverPresentation."""
    vertices = []
    arrows = []
    relations = []
    p = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "field":
            if len(parts) != 2:
                raise InputError(f"line {lineno}: field takes one argument")
            if p is not None:
                raise InputError(f"line {lineno}: duplicate field line")
            try:
                p = int(parts[1])
            except ValueError:
                raise InputError(f"line {lineno}: field order must be an integer")
        elif kind == "vertex":
            if len(parts) != 2:
                raise InputError(f"line {lineno}: vertex takes one argument")
            vertices.append(parts[1])
        elif kind == "arrow":
            if len(parts) != 4:
                raise InputError(f"line {lineno}: arrow takes name src dst")
            arrows.append((parts[1], parts[2], parts[3]))
        elif kind == "rel":
            if len(parts) < 3:
                raise InputError(f"line {lineno}: relation needs at least 2 arrows")
            relations.append(parts[1:])
        else:
            raise InputError(f"line {lineno}: unknown directive {kind!r}")
    if p is None:
        p = linalg.DEFAULT_PRIME
    linalg.check_prime(p)
    if not vertices:
        raise InputError("algebra file defines no vertices")
    return QuiverPresentation(vertices, arrows, relations, p)


class StructAlgebra:
    """A finite-dimensional algebra with structure constants over F_p.

    Attributes:
        p: field order.
        dim: vector-space dimension.
        labels: basis element names.
        mult: (dim, dim, dim) tensor; mult[i, j] = coordinates of b_i * b_j.
        idempotents: (n, dim) rows, a complete set of orthogonal idempotents.
        unit: coordinates of 1.
        vertex_labels: display labels aligned with the idempotents.
    """

    def __init__(self, p, labels, mult, idempotents, unit=None,
                 vertex_labels=None, check=True):
        self.p = linalg.check_prime(p)
        self.labels = list(labels)
        self.mult = linalg.asmod(mult, p)
        self.dim = len(self.labels)
        if self.mult.shape != (self.dim, self.dim, self.dim):
            raise DomainError("multiplication tensor shape mismatch")
        self.idempotents = linalg.asmod(idempotents, p)
        if unit is None:
            unit = self.idempotents.sum(axis=0) % p
        self.unit = linalg.asmod(unit, p)
        n = self.idempotents.shape[0]
        if vertex_labels is None:
            vertex_labels = [f"v{i}" for i in range(n)]
        self.vertex_labels = list(vertex_labels)
        self._radical = None
        self._corners = {}
        self._rad_sq_dim = None
        self._gens = None
        if self.p <= self.dim:
            raise DomainError(
                f"field order {self.p} must exceed algebra dimension {self.dim}"
            )
        if check:
            self._validate()

    # -- construction checks ------------------------------------------------

    def _validate(self):
        p, mult = self.p, self.mult
        lhs = np.einsum("ijl,lkm->ijkm", mult, mult) % p
        rhs = np.einsum("jkl,ilm->ijkm", mult, mult) % p
        if not np.array_equal(lhs, rhs):
            raise DomainError("multiplication is not associative")
        ident = np.eye(self.dim, dtype=np.int64)
        left = np.einsum("i,ijk->jk", self.unit, mult) % p
        right = np.einsum("j,ijk->ik", self.unit, mult) % p
        if not np.array_equal(left, ident) or not np.array_equal(right, ident):
            raise DomainError("unit law fails")
        n = self.idempotents.shape[0]
        for i in range(n):
            for j in range(n):
                prod = self.multiply(self.idempotents[i], self.idempotents[j])
                want = self.idempotents[i] if i == j else np.zeros(self.dim, dtype=np.int64)
                if not np.array_equal(prod, want):
                    raise DomainError("distinguished idempotents are not orthogonal")
        if not np.array_equal(self.idempotents.sum(axis=0) % p, self.unit):
            raise DomainError("idempotents do not sum to the unit")

    # -- arithmetic ----------------------------------------------------------

    def multiply(self, x, y):
        x = linalg.asmod(x, self.p)
        y = linalg.asmod(y, self.p)
        return np.einsum("i,j,ijk->k", x, y, self.mult) % self.p

    def left_mult_matrix(self, x):
        """Matrix of y -> x*y on coordinates."""
        x = linalg.asmod(x, self.p)
        return np.einsum("i,ijk->kj", x, self.mult) % self.p

    def right_mult_matrix(self, y):
        """Matrix of x -> x*y on coordinates."""
        y = linalg.asmod(y, self.p)
        return np.einsum("j,ijk->ki", y, self.mult) % self.p

    def power(self, x, e):
        result = self.unit.copy()
        base = linalg.asmod(x, self.p)
        while e > 0:
            if e & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            e >>= 1
        return result

    def element_min_poly(self, x):
        """Monic minimal polynomial of x, ascending coefficients."""
        rows = [self.unit.copy()]
        cur = self.unit.copy()
        while True:
            cur = self.multiply(cur, x)
            solver = linalg.SpanSolver(np.array(rows), self.p)
            c = solver.coords(cur)
            if c is not None:
                k = len(rows)
                f = np.zeros(k + 1, dtype=np.int64)
                f[k] = 1
                f[:k] = (-c) % self.p
                return f
            rows.append(cur.copy())

    # -- structure -----------------------------------------------------------

    def radical_rows(self):
        """RREF basis of the Jacobson radical (trace-form kernel)."""
        if self._radical is None:
            lall = np.stack([self.left_mult_matrix(np.eye(self.dim, dtype=np.int64)[i])
                             for i in range(self.dim)])
            gram = np.einsum("iab,jba->ij", lall, lall) % self.p
            self._radical = linalg.row_space(linalg.kernel_basis(gram, self.p), self.p)
        return self._radical

    def radical_square_dim(self):
        if self._rad_sq_dim is None:
            rad = self.radical_rows()
            prods = [self.multiply(r, s) for r in rad for s in rad]
            if prods:
                self._rad_sq_dim = linalg.rank(np.array(prods), self.p)
            else:
                self._rad_sq_dim = 0
        return self._rad_sq_dim

    def arrow_count(self):
        return self.radical_rows().shape[0] - self.radical_square_dim()

    def invariants(self):
        """(number of idempotents, dimension, arrow count)."""
        return (self.idempotents.shape[0], self.dim, self.arrow_count())

    def generator_vectors(self):
        """Idempotents plus a lift of rad/rad^2; they generate the algebra."""
        if self._gens is None:
            rad = self.radical_rows()
            rows = [self.multiply(r, s) for r in rad for s in rad]
            gens = []
            cur_rank = linalg.rank(np.array(rows), self.p) if rows else 0
            for r in rad:
                rows.append(r)
                new_rank = linalg.rank(np.array(rows), self.p)
                if new_rank > cur_rank:
                    gens.append(r)
                    cur_rank = new_rank
                else:
                    rows.pop()
            self._gens = [self.idempotents[i]
                          for i in range(self.idempotents.shape[0])] + gens
        return self._gens

    def corner(self, a, b):
        """Span data for e_a * A * e_b as a subspace of A."""
        key = (a, b)
        if key not in self._corners:
            ea = self.idempotents[a]
            eb = self.idempotents[b]
            rows = []
            for i in range(self.dim):
                v = self.multiply(self.multiply(ea, np.eye(self.dim, dtype=np.int64)[i]), eb)
                rows.append(v)
            basis = linalg.row_space(np.array(rows), self.p)
            self._corners[key] = (basis, linalg.SpanSolver(basis, self.p))
        return self._corners[key]


# ---------------------------------------------------------------------------
# path algebra construction
# ---------------------------------------------------------------------------


def _contains_relation(arrow_seq, relations):
    for rel in relations:
        L = len(rel)
        if L <= len(arrow_seq):
            for s in range(len(arrow_seq) - L + 1):
                if list(arrow_seq[s : s + L]) == rel:
                    return True
    return False


def path_algebra(qp):
    """StructAlgebra of the quiver modulo its monomial relations.

    The basis is the set of relation-avoiding paths; raises InputError when
    that set is infinite.
    """
    p = qp.p
    arrow_by_name = {a[0]: a for a in qp.arrows}
    vidx = {v: i for i, v in enumerate(qp.vertices)}

    # paths as (source, target, tuple of arrow names in traversal order)
    paths = [(v, v, ()) for v in qp.vertices]
    bound = len(qp.vertices) * (sum(len(r) for r in qp.relations) + 1) + 1
    frontier = list(paths)
    while frontier:
        new_frontier = []
        for src, dst, seq in frontier:
            for name, a_src, a_dst in qp.arrows:
                if a_src != dst:
                    continue
                ext = seq + (name,)
                if _contains_relation(ext, qp.relations):
                    continue
                if len(ext) >= bound:
                    raise InputError(
                        "path basis is infinite: relations are not admissible"
                    )
                new_frontier.append((src, a_dst, ext))
        paths.extend(new_frontier)
        frontier = new_frontier

    paths.sort(key=lambda t: (len(t[2]), vidx[t[0]], t[2]))
    index = {(t[0], t[2]): i for i, t in enumerate(paths)}
    d = len(paths)
    if p <= d:
        raise InputError(
            f"field order {p} is too small: it must exceed the algebra "
            f"dimension {d}")
    mult = np.zeros((d, d, d), dtype=np.int64)
    for i, (isrc, idst, iseq) in enumerate(paths):
        for j, (jsrc, jdst, jseq) in enumerate(paths):
            # b_i * b_j = "traverse j, then i"; composable iff src(i) = dst(j)
            if isrc != jdst:
                continue
            seq = jseq + iseq
            if _contains_relation(seq, qp.relations):
                continue
            k = index.get((jsrc, seq))
            if k is None:
                continue
            mult[i, j, k] = 1

    labels = []
    for src, dst, seq in paths:
        labels.append(f"e_{src}" if not seq else "*".join(seq))
    idem = np.zeros((len(qp.vertices), d), dtype=np.int64)
    for v, i in vidx.items():
        idem[i, index[(v, ())]] = 1
    alg = StructAlgebra(p, labels, mult, idem, vertex_labels=list(qp.vertices))
    alg.path_info = paths
    alg.quiver = qp
    return alg


def parse_algebra(text):
    """Parse algebra-file text into (QuiverPresentation, StructAlgebra)."""
    qp = parse_quiver(text)
    return qp, path_algebra(qp)


# ---------------------------------------------------------------------------
# quotients
# ---------------------------------------------------------------------------


def two_sided_ideal_rows(alg, generator_vectors):
    """Row basis of the two-sided ideal generated by the given elements."""
    rows = linalg.row_space(np.array(generator_vectors), alg.p)
    eye = np.eye(alg.dim, dtype=np.int64)
    while True:
        new_rows = [rows]
        for g in rows:
            for i in range(alg.dim):
                new_rows.append(alg.multiply(eye[i], g).reshape(1, -1))
                new_rows.append(alg.multiply(g, eye[i]).reshape(1, -1))
        stacked = np.vstack(new_rows)
        closed = linalg.row_space(stacked, alg.p)
        if closed.shape[0] == rows.shape[0]:
            return closed
        rows = closed


class AlgebraQuotient:
    """A quotient algebra with its projection and a linear section.

    Attributes:
        algebra: the quotient StructAlgebra.
        proj: (q, d) matrix, coordinates of the class of an element.
        lift: (d, q) matrix, a linear section of proj.
    """

    def __init__(self, algebra, proj, lift):
        self.algebra = algebra
        self.proj = proj
        self.lift = lift


def quotient_by_ideal(alg, ideal_rows, check=True):
    """Quotient of alg by a two-sided ideal given as a row span."""
    p = alg.p
    r, piv = linalg.rref(ideal_rows, p)
    r = r[: len(piv)]
    nonpiv = [c for c in range(alg.dim) if c not in piv]
    q = len(nonpiv)
    if q == 0:
        raise DomainError("quotient is the zero algebra")
    proj = np.zeros((q, alg.dim), dtype=np.int64)
    for k, c in enumerate(nonpiv):
        proj[k, c] = 1
    for i, c in enumerate(piv):
        proj[:, c] = (-r[i, nonpiv]) % p
    lift = np.zeros((alg.dim, q), dtype=np.int64)
    for k, c in enumerate(nonpiv):
        lift[c, k] = 1

    mult = np.zeros((q, q, q), dtype=np.int64)
    for i in range(q):
        for j in range(q):
            prod = alg.multiply(lift[:, i], lift[:, j])
            mult[i, j] = (proj @ prod) % p
    idem = []
    vlabels = []
    for i in range(alg.idempotents.shape[0]):
        image = (proj @ alg.idempotents[i]) % p
        if np.any(image):
            idem.append(image)
            vlabels.append(alg.vertex_labels[i])
    if not idem:
        raise DomainError("quotient killed every idempotent")
    unit = (proj @ alg.unit) % p
    labels = [alg.labels[c] for c in nonpiv]
    out = StructAlgebra(p, labels, mult, np.array(idem), unit=unit,
                        vertex_labels=vlabels, check=check)
    return AlgebraQuotient(out, proj, lift)


def quotient_by_idempotent_ideal(alg, k):
    """The quotient of alg by the ideal generated by its k-th idempotent."""
    n = alg.idempotents.shape[0]
    if not 0 <= k < n:
        raise DomainError(f"idempotent index {k} out of range")
    e = alg.idempotents[k]
    eye = np.eye(alg.dim, dtype=np.int64)
    rows = []
    for i in range(alg.dim):
        bie = alg.multiply(eye[i], e)
        if not np.any(bie):
            continue
        for j in range(alg.dim):
            rows.append(alg.multiply(bie, eye[j]))
    if not rows:
        rows = [np.zeros(alg.dim, dtype=np.int64)]
    return quotient_by_ideal(alg, np.array(rows))


# ---------------------------------------------------------------------------
# algebras spanned by concrete matrices (endomorphism rings)
# ---------------------------------------------------------------------------


def algebra_from_matrices(mats, p, idempotent_mats=None, labels=None,
                          opposite=False, vertex_labels=None):
    """Coordinatize a unital matrix algebra from a spanning list of matrices.

    Args:
        mats: linearly independent matrices spanning an algebra.
        idempotent_mats: matrices (inside the span) forming the distinguished
            orthogonal idempotents; when None, the identity becomes the
            single idempotent.
        opposite: when True the product is reversed (mult[i][j] comes from
            mats[j] @ mats[i]); used so that Hom(G, -) spaces become left
            modules under precomposition.

    Returns:
        (StructAlgebra, SpanSolver) where the solver maps a matrix
        (flattened) to its coordinates.
    """
    d = len(mats)
    if d == 0:
        raise DomainError("empty matrix algebra")
    flat = np.array([m.reshape(-1) for m in mats]) % p
    solver = linalg.SpanSolver(flat, p)
    if solver.dim != d:
        raise DomainError("matrix spanning set is not linearly independent")
    mult = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            prod = (mats[j] @ mats[i]) % p if opposite else (mats[i] @ mats[j]) % p
            c = solver.coords(prod.reshape(-1))
            if c is None:
                raise DomainError("matrix set is not multiplicatively closed")
            mult[i, j] = c
    ident = np.eye(mats[0].shape[0], dtype=np.int64)
    unit = solver.coords(ident.reshape(-1))
    if unit is None:
        raise DomainError("identity matrix not in the span")
    if labels is None:
        labels = [f"f{i}" for i in range(d)]
    if idempotent_mats is None:
        idem = unit.reshape(1, -1)
    else:
        idem = np.zeros((len(idempotent_mats), d), dtype=np.int64)
        for r, mat in enumerate(idempotent_mats):
            c = solver.coords((mat % p).reshape(-1))
            if c is None:
                raise DomainError("idempotent matrix not in the span")
            idem[r] = c
    alg = StructAlgebra(p, labels, mult, idem, unit=unit,
                        vertex_labels=vertex_labels)
    return alg, solver


def algebra_invariants(alg):
    """(idempotent count, dimension, arrow count) of the algebra."""
    return alg.invariants()
