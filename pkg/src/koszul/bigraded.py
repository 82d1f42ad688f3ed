"""Bigraded vector spaces, degree-homogeneous maps, Koszul signs, shifts,
duals, tensor products, and per-bidegree homology with splitting data.

A bidegree is a pair (coh, adams).  Reports and iteration order sort
bidegrees by (adams, coh).  Elements inside one bidegree are dense lists of
scalars aligned with the basis label order.
"""

from typing import NamedTuple

from .errors import InternalInvariantError, SchemaError
from .sparse import SparseMatrix, decompose


class Bidegree(NamedTuple):
    coh: int
    adams: int

    def __add__(self, other):
        return Bidegree(self.coh + other[0], self.adams + other[1])

    def __neg__(self):
        return Bidegree(-self.coh, -self.adams)


def deg(coh, adams):
    return Bidegree(coh, adams)


DEG_ZERO = Bidegree(0, 0)
DEG_DIFF = Bidegree(1, 0)  # every differential in this engine


def sort_key(d):
    return (d[1], d[0])


def koszul_sign(d1, d2):
    """Sign for interchanging elements of these bidegrees.

    Only the first (cohomological) grading counts; the Adams grading is
    ignored by the sign rule.
    """
    return -1 if (d1[0] % 2 and d2[0] % 2) else 1


class BigradedSpace:
    """Finitely many labelled basis vectors per bidegree."""

    def __init__(self, field, basis):
        self.field = field
        self.basis = {}
        self._index = {}
        for d in sorted(basis, key=sort_key):
            labels = tuple(basis[d])
            if not labels:
                continue
            if len(set(labels)) != len(labels):
                raise SchemaError(f"duplicate labels in bidegree {d}")
            d = Bidegree(*d)
            self.basis[d] = labels
            for i, lab in enumerate(labels):
                self._index[(d, lab)] = i

    def bidegrees(self):
        return list(self.basis)

    def dim(self, d):
        return len(self.basis.get(Bidegree(*d), ()))

    def labels(self, d):
        return self.basis.get(Bidegree(*d), ())

    def index(self, d, label):
        return self._index[(Bidegree(*d), label)]

    def has_label(self, d, label):
        return (Bidegree(*d), label) in self._index

    def total_dim(self):
        return sum(len(v) for v in self.basis.values())

    def dims_table(self):
        return {d: len(v) for d, v in self.basis.items()}

    def zero_vec(self, d):
        return [self.field.zero] * self.dim(d)

    def basis_vec(self, d, label):
        v = self.zero_vec(d)
        v[self.index(d, label)] = self.field.one
        return v

    def __eq__(self, other):
        return (isinstance(other, BigradedSpace) and self.field == other.field
                and self.basis == other.basis)

    def __repr__(self):
        return f"BigradedSpace(dims={{{', '.join(f'{d}:{len(v)}' for d, v in self.basis.items())}}})"


def graded_dual_space(V):
    """Same labels, negated bidegrees: (V#)^i_j has the dual basis of V^-i_-j."""
    return BigradedSpace(V.field, {-d: labs for d, labs in V.basis.items()})


def suspend_space(V):
    """(SV)^i_j = V^{i+1}_j: an element of bidegree (c,a) lands in (c-1,a)."""
    return BigradedSpace(V.field, {d + Bidegree(-1, 0): labs for d, labs in V.basis.items()})


def desuspend_space(V):
    return BigradedSpace(V.field, {d + Bidegree(1, 0): labs for d, labs in V.basis.items()})


def adams_shift_space(V):
    """(ΣV)^i_j = V^i_{j+1}: an element of bidegree (c,a) lands in (c,a-1)."""
    return BigradedSpace(V.field, {d + Bidegree(0, -1): labs for d, labs in V.basis.items()})


class GradedMap:
    """Degree-homogeneous map: one sparse block per populated source bidegree.

    blocks[d] maps the slice at d into the slice at d + degree (rows indexed
    by the target basis there, columns by the source basis at d).
    """

    def __init__(self, source, target, degree, blocks=None):
        self.source = source
        self.target = target
        self.degree = Bidegree(*degree)
        self.blocks = {}
        for d, M in (blocks or {}).items():
            d = Bidegree(*d)
            if M.nnz() == 0:
                continue
            if M.cols != source.dim(d) or M.rows != target.dim(d + self.degree):
                raise SchemaError(f"block at {d} has wrong shape")
            self.blocks[d] = M

    @classmethod
    def from_entries(cls, source, target, degree, entries):
        """entries: iterable of (src_bidegree, src_label, tgt_label, scalar)."""
        degree = Bidegree(*degree)
        by_deg = {}
        for d, src_lab, tgt_lab, v in entries:
            d = Bidegree(*d)
            td = d + degree
            by_deg.setdefault(d, {})[
                (target.index(td, tgt_lab), source.index(d, src_lab))] = v
        blocks = {
            d: SparseMatrix(target.dim(d + degree), source.dim(d), source.field, ent)
            for d, ent in by_deg.items()}
        return cls(source, target, degree, blocks)

    @classmethod
    def zero(cls, source, target, degree):
        return cls(source, target, degree, {})

    def block(self, d):
        d = Bidegree(*d)
        M = self.blocks.get(d)
        if M is None:
            return SparseMatrix(self.target.dim(d + self.degree),
                                self.source.dim(d), self.source.field)
        return M

    def apply(self, d, vec):
        return self.block(d).mul_vec(vec)

    def compose(self, other):
        """self ∘ other."""
        if other.target is not self.source and other.target != self.source:
            raise SchemaError("composition mismatch")
        degree = self.degree + other.degree
        blocks = {}
        f = self.source.field
        for d, M in other.blocks.items():
            N = self.block(d + other.degree)
            entries = {}
            cols = {}
            for (r, c), v in M.entries.items():
                cols.setdefault(c, []).append((r, v))
            nrows = {}
            for (r2, c2), v2 in N.entries.items():
                nrows.setdefault(c2, []).append((r2, v2))
            for c, rs in cols.items():
                acc = {}
                for mid, v in rs:
                    for r2, v2 in nrows.get(mid, ()):
                        acc[r2] = f.add(acc.get(r2, f.zero), f.mul(v2, v))
                for r2, v in acc.items():
                    if not f.is_zero(v):
                        entries[(r2, c)] = v
            if entries:
                blocks[d] = SparseMatrix(self.target.dim(d + degree),
                                         other.source.dim(d), f, entries)
        return GradedMap(other.source, self.target, degree, blocks)

    def add(self, other):
        if self.degree != other.degree:
            raise SchemaError("adding maps of different degrees")
        f = self.source.field
        blocks = {}
        for d in set(self.blocks) | set(other.blocks):
            A, B = self.block(d), other.block(d)
            ent = dict(A.entries)
            for k, v in B.entries.items():
                nv = f.add(ent.get(k, f.zero), v)
                if f.is_zero(nv):
                    ent.pop(k, None)
                else:
                    ent[k] = nv
            if ent:
                blocks[d] = SparseMatrix(A.rows, A.cols, f, ent)
        return GradedMap(self.source, self.target, self.degree, blocks)

    def scale(self, scalar):
        f = self.source.field
        blocks = {
            d: SparseMatrix(M.rows, M.cols, f,
                            {k: f.mul(scalar, v) for k, v in M.entries.items()})
            for d, M in self.blocks.items()}
        return GradedMap(self.source, self.target, self.degree, blocks)

    def neg(self):
        return self.scale(self.source.field.neg(self.source.field.one))

    def is_zero(self):
        return all(M.nnz() == 0 for M in self.blocks.values())

    def __eq__(self, other):
        if not isinstance(other, GradedMap) or self.degree != other.degree:
            return False
        for d in set(self.blocks) | set(other.blocks):
            if self.block(d).entries != other.block(d).entries:
                return False
        return True

    def dual(self):
        """Transpose with negated bidegrees; no sign.

        With this convention (f#)# = f and (g∘f)# = f#∘g# hold exactly;
        Hom-complex signs belong to dual differentials, not to this functor.
        """
        src = graded_dual_space(self.target)
        tgt = graded_dual_space(self.source)
        blocks = {}
        for d, M in self.blocks.items():
            blocks[-(d + self.degree)] = M.transpose()
        return GradedMap(src, tgt, self.degree, blocks)


def suspend_map(f):
    """Transport to suspensions: d_SV(sv) = -s d_V(v) for differentials."""
    return GradedMap(
        suspend_space(f.source), suspend_space(f.target), f.degree,
        {d + Bidegree(-1, 0): M for d, M in f.neg().blocks.items()})


def adams_shift_map(f):
    """Transport to Adams shifts: no sign."""
    return GradedMap(
        adams_shift_space(f.source), adams_shift_space(f.target), f.degree,
        {d + Bidegree(0, -1): M for d, M in f.blocks.items()})


def tensor_label(a, b):
    return f"({a}⊗{b})"


def tensor_space(V, W):
    """Basis labels are pairs; bidegrees add."""
    if V.field != W.field:
        raise SchemaError("tensor over different fields")
    basis = {}
    for dv, labs_v in V.basis.items():
        for dw, labs_w in W.basis.items():
            d = dv + dw
            basis.setdefault(d, [])
            for a in labs_v:
                for b in labs_w:
                    basis[d].append(tensor_label(a, b))
    return BigradedSpace(V.field, basis)


def tensor_pairs(V, W, d):
    """Deterministic (dv, a, dw, b) enumeration matching tensor_space order."""
    out = []
    d = Bidegree(*d)
    for dv in V.bidegrees():
        dw = Bidegree(d.coh - dv.coh, d.adams - dv.adams)
        if W.dim(dw) == 0:
            continue
        for a in V.labels(dv):
            for b in W.labels(dw):
                out.append((dv, a, dw, b))
    return out


def tensor_map(f, g):
    """(f⊗g)(v⊗w) = (-1)^{deg1(g)·deg1(v)} f(v) ⊗ g(w)."""
    src = tensor_space(f.source, g.source)
    tgt = tensor_space(f.target, g.target)
    degree = f.degree + g.degree
    fld = src.field
    sign_flip = g.degree.coh % 2
    entries = []
    for d in src.bidegrees():
        for dv, a, dw, b in tensor_pairs(f.source, g.source, d):
            fa = f.apply(dv, f.source.basis_vec(dv, a))
            gb = g.apply(dw, g.source.basis_vec(dw, b))
            s = fld.one
            if sign_flip and dv.coh % 2:
                s = fld.neg(s)
            for i, fv in enumerate(fa):
                if fld.is_zero(fv):
                    continue
                la = f.target.labels(dv + f.degree)[i]
                for j, gv in enumerate(gb):
                    if fld.is_zero(gv):
                        continue
                    lb = g.target.labels(dw + g.degree)[j]
                    entries.append((d, tensor_label(a, b), tensor_label(la, lb),
                                    fld.mul(s, fld.mul(fv, gv))))
    return GradedMap.from_entries(src, tgt, degree, entries)


def identity_map(V):
    return GradedMap(V, V, DEG_ZERO,
                     {d: SparseMatrix.identity(V.dim(d), V.field)
                      for d in V.bidegrees()})


def tensor_differential(V, dV, W, dW):
    """d(v⊗w) = dv⊗w + (-1)^{deg1 v} v⊗dw."""
    return tensor_map(dV, identity_map(W)).add(tensor_map(identity_map(V), dW))


class HomologyData:
    """Per-bidegree homology of a differential with full splitting data.

    For each populated bidegree there is a decomposition V = B ⊕ R ⊕ C with
    B the boundaries, R the chosen cycle representatives, C a complement of
    the cycles.  include/project/homotopy give i, p, h with
    d h + h d = 1 - i p and h² = h i = p h = 0; the transfer machinery
    reuses them verbatim.
    """

    def __init__(self, space, h_space, reps, proj_rows, h_cols):
        self.space = space          # the underlying space V
        self.homology = h_space     # bigraded space of classes
        self.reps = reps            # bidegree -> list of vectors in V
        self._proj = proj_rows      # bidegree -> list of row vectors (len dim V)
        self._h = h_cols            # bidegree -> list of columns (image of basis under h)

    def dims_table(self):
        return self.homology.dims_table()

    def include(self, d, hvec):
        """i: class coefficients -> vector in V at bidegree d."""
        f = self.space.field
        out = self.space.zero_vec(d)
        for coeff, rep in zip(hvec, self.reps.get(Bidegree(*d), [])):
            if f.is_zero(coeff):
                continue
            for k, v in enumerate(rep):
                out[k] = f.add(out[k], f.mul(coeff, v))
        return out

    def project(self, d, vec):
        """p: vector in V at bidegree d -> class coefficients."""
        f = self.space.field
        rows = self._proj.get(Bidegree(*d), [])
        out = []
        for row in rows:
            s = f.zero
            for k, v in enumerate(row):
                if not f.is_zero(vec[k]):
                    s = f.add(s, f.mul(v, vec[k]))
            out.append(s)
        return out

    def homotopy(self, d, vec):
        """h: vector at bidegree d -> vector at d - (1,0)."""
        f = self.space.field
        cols = self._h.get(Bidegree(*d))
        prev = Bidegree(*d) + Bidegree(-1, 0)
        out = self.space.zero_vec(prev)
        if not cols:
            return out
        for k, coeff in enumerate(vec):
            if f.is_zero(coeff):
                continue
            col = cols[k]
            for i, v in enumerate(col):
                out[i] = f.add(out[i], f.mul(coeff, v))
        return out

    def class_label(self, d, idx):
        return self.homology.labels(d)[idx]


def _greedy_complement(field, inside_cols, ambient_dim, candidates):
    """Indices from candidates extending span(inside_cols) to a direct sum,
    greedily in order; returns (chosen indices, combined matrix columns)."""
    cols = [list(c) for c in inside_cols]
    chosen = []
    for idx in candidates:
        e = [field.zero] * ambient_dim
        e[idx] = field.one
        test = SparseMatrix.from_columns(field, cols + [e], ambient_dim)
        if decompose(test).rank == len(cols) + 1:
            cols.append(e)
            chosen.append(idx)
    return chosen


def homology(d_in, d_out):
    """Homology of V at the middle of d_in: U -> V, d_out: V -> W.

    Rejects if d_out∘d_in is nonzero.  Representatives are chosen greedily
    from the canonical kernel basis (first vector not already in the image),
    so the output is deterministic.
    """
    V = d_in.target
    if d_out.source != V:
        raise SchemaError("homology: middle spaces disagree")
    if not d_out.compose(d_in).is_zero():
        raise SchemaError("homology: d∘d != 0")
    f = V.field

    reps, proj_rows, h_cols, h_basis = {}, {}, {}, {}
    per_deg = {}
    for d in V.bidegrees():
        n = V.dim(d)
        dec_in = decompose(d_in.block(d + Bidegree(-1, 0)))
        dec_out = decompose(d_out.block(d))
        boundaries = dec_in.image_basis()          # basis of B
        cycles = dec_out.kernel_basis()            # basis of Z (canonical)
        # R: greedy cycles independent of B
        r_vecs = []
        current = [list(b) for b in boundaries]
        for z in cycles:
            test = SparseMatrix.from_columns(f, current + [z], n)
            if decompose(test).rank == len(current) + 1:
                current.append(z)
                r_vecs.append(z)
        # C: standard basis vectors completing Z inside V
        z_cols = [list(z) for z in cycles]
        c_idx = _greedy_complement(f, z_cols, n, range(n))
        per_deg[d] = (boundaries, r_vecs, c_idx, dec_in)
        if r_vecs:
            reps[d] = r_vecs
            h_basis[d] = [f"h{d.coh},{d.adams};{k}" for k in range(len(r_vecs))]

    h_space = BigradedSpace(f, h_basis)

    for d, (boundaries, r_vecs, c_idx, _) in per_deg.items():
        n = V.dim(d)
        nb, nr, nc = len(boundaries), len(r_vecs), len(c_idx)
        if nb + nr + nc != n:
            raise InternalInvariantError("B ⊕ R ⊕ C decomposition failed")
        # change of basis: columns are [B | R | C] expressed in V's basis
        cols = ([list(b) for b in boundaries] + [list(r) for r in r_vecs])
        for idx in c_idx:
            e = [f.zero] * n
            e[idx] = f.one
            cols.append(e)
        basis_mat = SparseMatrix.from_columns(f, cols, n)
        dec = decompose(basis_mat)
        # p: coordinates on the R-part; rows of the inverse restricted to R
        p_rows = [[f.zero] * n for _ in range(nr)]
        h_c = [[f.zero] * V.dim(d + Bidegree(-1, 0)) for _ in range(n)]
        prev = d + Bidegree(-1, 0)
        prev_data = per_deg.get(prev)
        for k in range(n):
            e = [f.zero] * n
            e[k] = f.one
            coords = dec.solve(e)
            if coords is None:
                raise InternalInvariantError("basis change not invertible")
            for i in range(nr):
                p_rows[i][k] = coords[nb + i]
            # h on the B-part: preimage inside C of the previous bidegree
            if nb and prev_data is not None:
                b_coords = coords[:nb]
                if any(not f.is_zero(v) for v in b_coords):
                    b_vec = [f.zero] * n
                    for i, cf in enumerate(b_coords):
                        if f.is_zero(cf):
                            continue
                        for row, v in enumerate(boundaries[i]):
                            b_vec[row] = f.add(b_vec[row], f.mul(cf, v))
                    # solve d_in restricted to C_prev
                    prev_c = prev_data[2]
                    block = d_in.block(prev)
                    cols_c = []
                    for idx in prev_c:
                        e_prev = [f.zero] * V.dim(prev)
                        e_prev[idx] = f.one
                        cols_c.append(block.mul_vec(e_prev))
                    restr = SparseMatrix.from_columns(f, cols_c, n)
                    sol = decompose(restr).solve(b_vec)
                    if sol is None:
                        raise InternalInvariantError("homotopy solve failed")
                    vec_prev = [f.zero] * V.dim(prev)
                    for i, cf in enumerate(sol):
                        if not f.is_zero(cf):
                            vec_prev[prev_c[i]] = f.add(vec_prev[prev_c[i]], cf)
                    h_c[k] = vec_prev
        if nr:
            proj_rows[d] = p_rows
        h_cols[d] = h_c

    return HomologyData(V, h_space, reps, proj_rows, h_cols)


def complex_homology(space, d):
    """Homology of an endo-differential of degree (1,0) on one space."""
    return homology(d, d)


def verify_splitting(hd, d):
    """Check dh + hd = 1 - ip and the side conditions on every bidegree."""
    V = hd.space
    f = V.field
    for bd in V.bidegrees():
        n = V.dim(bd)
        for k in range(n):
            e = [f.zero] * n
            e[k] = f.one
            hv = hd.homotopy(bd, e)
            dh = d.apply(bd + Bidegree(-1, 0), hv)
            hd_v = hd.homotopy(bd + Bidegree(1, 0), d.apply(bd, e))
            ip = hd.include(bd, hd.project(bd, e))
            for i in range(n):
                lhs = f.add(dh[i], hd_v[i])
                rhs = f.sub(e[i], ip[i])
                if lhs != rhs:
                    return False
            # side conditions
            hh = hd.homotopy(bd + Bidegree(-1, 0), hv)
            if any(not f.is_zero(v) for v in hh):
                return False
            ph = hd.project(bd + Bidegree(-1, 0), hv)
            if any(not f.is_zero(v) for v in ph):
                return False
        for k in range(hd.homology.dim(bd)):
            hvec = [f.zero] * hd.homology.dim(bd)
            hvec[k] = f.one
            hi = hd.homotopy(bd, hd.include(bd, hvec))
            if any(not f.is_zero(v) for v in hi):
                return False
            pi = hd.project(bd, hd.include(bd, hvec))
            expect = [f.one if i == k else f.zero for i in range(len(pi))]
            if pi != expect:
                return False
    return True
