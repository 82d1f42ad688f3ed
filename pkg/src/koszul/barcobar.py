"""Bar and cobar constructions, the Koszul dual DG algebra, the enveloping
algebra, bar constructions of modules, and the opposite-compatibility
isomorphism of tensor coalgebras.

Word conventions.  A bar word is a tuple of augmentation-ideal labels,
printed "[a|b|c]"; the empty word "[]" is the coaugmentation.  Its bidegree
is (sum(deg1 a_i - 1), sum(deg2 a_i)).  The differential implements the
displayed formula

    b[a_1|...|a_m] = sum_{j,n} (-1)^{w_{j,n}} [a_1|..|a_j| mbar_n(...) |..]

with mbar_n = (-1)^n m_n and w_{j,n} the prefix-plus-desuspension sign.
The Koszul dual is the graded dual of the word coalgebra in the rescaled
basis what = eps(w) * w* with eps(w) = (-1)^{#{i<j : e_i e_j odd}}; in that
basis the dual product is literal concatenation and the natural
isomorphism Omega(R#) = (BR)# is the identity on word labels.
"""

from .ainf import (
    TruncAInfAlgebra,
    _desusp_parity,
    dg_complex,
    finiteness_classify,
    make_algebra,
    opposite,
)
from .bigraded import (
    Bidegree,
    BigradedSpace,
    GradedMap,
    complex_homology,
    sort_key,
)
from .errors import InternalInvariantError, NotAdamsConnected, SchemaError


def word_label(word):
    return "[" + "|".join(word) + "]"


def omega_label(word):
    return "⟨" + "|".join(word) + "⟩"


def eps_word(es):
    """(-1)^{sum_{i<j} e_i e_j} for letters with the given e = deg1 - 1."""
    odd = sum(1 for e in es if e % 2)
    return -1 if (odd * (odd - 1) // 2) % 2 else 1


class BarCoalgebra:
    """Truncated tensor coalgebra T(S I) with the coderivation b."""

    def __init__(self, algebra, adams_bound=None):
        self.algebra = algebra
        self.adams_bound = adams_bound or algebra.adams_bound
        A = algebra
        letters = A.ideal_labels()
        self.words = {(): Bidegree(0, 0)}
        frontier = [()]
        while frontier:
            nxt = []
            for w in frontier:
                d = self.words[w]
                for lab in letters:
                    ld = A.deg_of(lab)
                    nd = Bidegree(d.coh + ld.coh - 1, d.adams + ld.adams)
                    if abs(nd.adams) > self.adams_bound:
                        continue
                    nw = w + (lab,)
                    self.words[nw] = nd
                    nxt.append(nw)
            frontier = nxt
        by_deg = {}
        for w, d in self.words.items():
            by_deg.setdefault(d, []).append(w)
        self._by_deg = {d: sorted(ws, key=lambda w: (len(w), w))
                        for d, ws in by_deg.items()}
        self.space = BigradedSpace(
            A.field, {d: [word_label(w) for w in ws]
                      for d, ws in self._by_deg.items()})
        self._b_cache = {}

    def deg(self, word):
        return self.words[word]

    def all_words(self):
        for d in sorted(self._by_deg, key=sort_key):
            yield from self._by_deg[d]

    def es(self, word):
        A = self.algebra
        return [A.deg_of(l).coh - 1 for l in word]

    def b(self, word):
        """The coderivation on one word, per the displayed bar formula."""
        if word in self._b_cache:
            return self._b_cache[word]
        A = self.algebra
        f = A.field
        es = self.es(word)
        m = len(word)
        out = {}
        for n in range(1, m + 1):
            for j in range(0, m - n + 1):
                val = A.m(n, word[j:j + n])
                if not val:
                    continue
                w_jn = (sum(es[:j]) + _desusp_parity(es[j:j + n])) % 2
                sgn = -1 if (w_jn + n) % 2 else 1
                for c, coef in val.items():
                    nw = word[:j] + (c,) + word[j + n:]
                    v = f.mul(f.of(sgn), coef)
                    nv = f.add(out.get(nw, f.zero), v)
                    if f.is_zero(nv):
                        out.pop(nw, None)
                    else:
                        out[nw] = nv
        self._b_cache[word] = out
        return out

    def delta(self, word):
        """Full deconcatenation, including the empty tensor factors."""
        return [(word[:i], word[i:]) for i in range(len(word) + 1)]

    def delta_reduced(self, word):
        return [(word[:i], word[i:]) for i in range(1, len(word))]

    def complex(self):
        A = self.algebra
        entries = []
        for w in self.all_words():
            for nw, v in self.b(w).items():
                entries.append((self.deg(w), word_label(w), word_label(nw), v))
        return self.space, GradedMap.from_entries(self.space, self.space,
                                                  (1, 0), entries)

    def b_squared_is_zero(self):
        f = self.algebra.field
        for w in self.all_words():
            acc = {}
            for nw, v in self.b(w).items():
                for nnw, v2 in self.b(nw).items():
                    nv = f.add(acc.get(nnw, f.zero), f.mul(v, v2))
                    if f.is_zero(nv):
                        acc.pop(nnw, None)
                    else:
                        acc[nnw] = nv
            if acc:
                return False, (w, acc)
        return True, None

    def as_coalgebra_data(self):
        """Letters/differential/reduced-coproduct view, for the cobar input."""
        letters = [(word_label(w), self.deg(w)) for w in self.all_words()
                   if len(w) >= 1]
        diff = {}
        delta = {}
        for w in self.all_words():
            if not w:
                continue
            lw = word_label(w)
            bv = {word_label(nw): v for nw, v in self.b(w).items()}
            if bv:
                diff[lw] = bv
            dv = {}
            for (u, v) in self.delta_reduced(w):
                dv[(word_label(u), word_label(v))] = self.algebra.field.one
            if dv:
                delta[lw] = dv
        return CoalgebraData(self.algebra.field, letters, diff, delta)


class CoalgebraData:
    """A coaugmented DG coalgebra given by its coaugmentation coideal:
    letters with bidegrees, a differential, and the reduced coproduct."""

    def __init__(self, field, letters, diff, delta):
        self.field = field
        self.letters = list(letters)
        self.deg = dict(letters)
        self.diff = diff      # label -> {label: scalar}
        self.delta = delta    # label -> {(label, label): scalar}


def bar(algebra, adams_bound=None):
    """The bar construction; refuses non-Adams-connected input, whose word
    spaces would be unbounded (power-series phenomenon)."""
    if not finiteness_classify(algebra).adams_connected:
        raise NotAdamsConnected(
            f"bar construction needs an Adams connected algebra, "
            f"got orientation {algebra.orientation!r}")
    return BarCoalgebra(algebra, adams_bound)


def koszul_dual(algebra, adams_bound=None, arity_bound=None):
    """E(A) = (BA)# as a DG algebra on the rescaled dual word basis.

    Product: concatenation of dual words.  Differential: the Hom-complex
    convention d(f) = -(-1)^{deg1 f} f∘b pushed through the eps rescaling.
    """
    bc = bar(algebra, adams_bound)
    A = algebra
    f = A.field
    basis = {}
    for d, ws in bc._by_deg.items():
        basis[-d] = [word_label(w) for w in ws]
    m1 = {}
    for v in bc.all_words():
        ev = bc.es(v)
        for w, coef in bc.b(v).items():
            ew = bc.es(w)
            sgn = -eps_word(ew) * eps_word(ev)
            if sum(ew) % 2:
                sgn = -sgn
            cur = m1.setdefault((word_label(w),), {})
            nv = f.add(cur.get(word_label(v), f.zero), f.mul(f.of(sgn), coef))
            if f.is_zero(nv):
                cur.pop(word_label(v), None)
            else:
                cur[word_label(v)] = nv
    m1 = {k: v for k, v in m1.items() if v}
    m2 = {}
    words = list(bc.all_words())
    for u in words:
        if not u:
            continue
        du = bc.deg(u)
        for w in words:
            if not w:
                continue
            dw = bc.deg(w)
            if abs(du.adams + dw.adams) > bc.adams_bound:
                continue
            m2[(word_label(u), word_label(w))] = {word_label(u + w): f.one}
    orientation = {"positive": "negative", "negative": "positive"}[A.orientation]
    E = make_algebra(f, basis, "[]", {1: m1, 2: m2},
                     arity_bound=arity_bound or 2,
                     adams_bound=bc.adams_bound, orientation=orientation,
                     support_complete=False,
                     name=f"E({A.name})" if A.name else "E")
    return E


def validity_window(algebra, adams_bound=None):
    """Adams radius within which truncated homology readings are reported
    as trustworthy: adams_bound - max arity."""
    bound = adams_bound or algebra.adams_bound
    return bound - max(algebra.max_arity(), 2)


def cobar(C, adams_bound, arity_bound=6, name="Omega"):
    """Cobar construction of a coaugmented DG coalgebra (Def of d_0 + d_1
    on the tensor algebra of the desuspended coideal)."""
    f = C.field
    letters = C.letters
    adams_signs = {1 if d.adams > 0 else -1 for _, d in letters if d.adams != 0}
    if len(adams_signs) > 1 or any(d.adams == 0 for _, d in letters):
        raise NotAdamsConnected("cobar needs one-signed Adams letters")
    words = {(): Bidegree(0, 0)}
    frontier = [()]
    while frontier:
        nxt = []
        for w in frontier:
            d = words[w]
            for lab, ld in letters:
                nd = Bidegree(d.coh + ld.coh + 1, d.adams + ld.adams)
                if abs(nd.adams) > adams_bound:
                    continue
                nw = w + (lab,)
                words[nw] = nd
                nxt.append(nw)
        frontier = nxt

    def letter_coh(lab):
        return C.deg[lab].coh

    m1 = {}
    for w in sorted(words, key=lambda w: (len(w), w)):
        if not w:
            continue
        out = {}
        n_i = 0  # sum_{j<i} (1 + deg1 x_j)
        for i, x in enumerate(w):
            # d0: -(-1)^{n_i} [.. b_C(x_i) ..]
            for y, coef in C.diff.get(x, {}).items():
                nw = w[:i] + (y,) + w[i + 1:]
                sgn = -1 if n_i % 2 == 0 else 1
                nv = f.add(out.get(nw, f.zero), f.mul(f.of(sgn), coef))
                if f.is_zero(nv):
                    out.pop(nw, None)
                else:
                    out[nw] = nv
            # d1: (-1)^{n_i + deg1 a} [.. a | b ..]
            for (a, bb), coef in C.delta.get(x, {}).items():
                nw = w[:i] + (a, bb) + w[i + 1:]
                if nw not in words:
                    continue  # cannot happen: bidegree preserved
                sgn = -1 if (n_i + letter_coh(a)) % 2 else 1
                nv = f.add(out.get(nw, f.zero), f.mul(f.of(sgn), coef))
                if f.is_zero(nv):
                    out.pop(nw, None)
                else:
                    out[nw] = nv
            n_i += 1 + letter_coh(x)
        if out:
            m1[(omega_label(w),)] = {omega_label(nw): v for nw, v in out.items()}
    m2 = {}
    wl = sorted(words, key=lambda w: (len(w), w))
    for u in wl:
        if not u:
            continue
        for v in wl:
            if not v:
                continue
            if abs(words[u].adams + words[v].adams) > adams_bound:
                continue
            m2[(omega_label(u), omega_label(v))] = {omega_label(u + v): f.one}
    basis = {}
    for w, d in words.items():
        basis.setdefault(d, []).append(omega_label(w))
    basis = {d: sorted(ls, key=lambda s: (len(s), s)) for d, ls in basis.items()}
    return make_algebra(f, basis, omega_label(()), {1: m1, 2: m2},
                        arity_bound=arity_bound, adams_bound=adams_bound,
                        support_complete=False, name=name)


def algebra_dual(R):
    """The coalgebra R# of a DG algebra, on the ideal's dual letters.

    The differential is dualized as d(phi) = +(-1)^{deg1 phi} phi∘d (no
    Hom-complex leading minus), which is the convention that makes the
    natural isomorphism Omega(R#) = (BR)# the identity on word labels.
    """
    if not R.is_dg():
        raise SchemaError("algebra_dual needs a DG algebra")
    f = R.field
    letters = [(lab, -R.deg_of(lab)) for lab in R.ideal_labels()]
    diff = {}
    for (src,), out in R.mults.get(1, {}).items():
        for tgt, v in out.items():
            sgn = -1 if R.deg_of(tgt).coh % 2 else 1
            diff.setdefault(tgt, {})[src] = f.mul(f.of(sgn), v)
    delta = {}
    for (a, b), out in R.mults.get(2, {}).items():
        da, db = R.deg_of(a).coh, R.deg_of(b).coh
        sgn = -1 if (da % 2 and db % 2) else 1
        for c, v in out.items():
            delta.setdefault(c, {})[(a, b)] = f.mul(f.of(sgn), v)
    return CoalgebraData(f, letters, diff, delta)


def enveloping(algebra, adams_bound=None, arity_bound=6):
    """U(A) = Omega(B A)."""
    bc = bar(algebra, adams_bound)
    return cobar(bc.as_coalgebra_data(), bc.adams_bound, arity_bound,
                 name=f"U({algebra.name})" if algebra.name else "U")


def lemma115_check(R, adams_bound=None):
    """Bit-exact comparison of Omega(R#) with (BR)# on word labels."""
    E1 = koszul_dual(R, adams_bound)
    bound = adams_bound or R.adams_bound
    E2 = cobar(algebra_dual(R), bound)

    def translate(lab):
        return "[" + lab[1:-1] + "]" if lab else lab

    report = {"dims_match": True, "m1_match": True, "m2_match": True,
              "mismatches": []}
    d1 = E1.space.dims_table()
    d2 = {d: len(v) for d, v in E2.space.basis.items()}
    if d1 != d2:
        report["dims_match"] = False
        report["mismatches"].append(("dims", d1, d2))
        return report

    def table_of(E, n, trans):
        out = {}
        for tup, val in E.mults.get(n, {}).items():
            out[tuple(trans(t) for t in tup)] = {trans(l): v
                                                 for l, v in val.items()}
        return out

    ident = lambda s: s
    if table_of(E2, 1, translate) != table_of(E1, 1, ident):
        report["m1_match"] = False
        report["mismatches"].append(("m1",))
    if table_of(E2, 2, translate) != table_of(E1, 2, ident):
        report["m2_match"] = False
        report["mismatches"].append(("m2",))
    report["bit_exact"] = (report["dims_match"] and report["m1_match"]
                           and report["m2_match"])
    return report


# -- bar-coalgebra morphisms and homotopies ---------------------------------

class BarMorphism:
    """Word-level coalgebra morphism induced by A∞-morphism components."""

    def __init__(self, fmor, source_bar, target_bar):
        self.fmor = fmor
        self.source = source_bar
        self.target = target_bar
        self._cache = {}

    def apply(self, word):
        if word in self._cache:
            return self._cache[word]
        from .ainf import _compositions
        f = self.fmor.source.field
        A = self.fmor.source
        out = {}
        if not word:
            out[()] = f.one
        else:
            es = [A.deg_of(l).coh - 1 for l in word]
            for q, blocks in _compositions(len(word)):
                pos = 0
                vecs = []
                par = (len(word) + q) % 2  # component dictionary (-1)^{n+1} each
                dead = False
                for ik in blocks:
                    blk = word[pos:pos + ik]
                    par = (par + _desusp_parity(es[pos:pos + ik])) % 2
                    pos += ik
                    v = self.fmor.comp(ik, blk)
                    if not v:
                        dead = True
                        break
                    vecs.append(v)
                if dead:
                    continue
                sgn = f.of(-1 if par else 1)

                def rec(i, cur, coef):
                    if i == len(vecs):
                        k = tuple(cur)
                        nv = f.add(out.get(k, f.zero), f.mul(sgn, coef))
                        if f.is_zero(nv):
                            out.pop(k, None)
                        else:
                            out[k] = nv
                        return
                    for l2, c2 in vecs[i].items():
                        rec(i + 1, cur + [l2], f.mul(coef, c2))

                rec(0, [], f.one)
        self._cache[word] = out
        return out


class CoalgebraHomotopy:
    """Degree (-1,0) word map H between two bar coalgebras, connecting the
    coalgebra morphisms F and G."""

    def __init__(self, F, G, H):
        self.F = F
        self.G = G
        self.H = H  # dict word -> {word: scalar}

    def apply(self, word):
        return self.H.get(word, {})


def verify_homotopy(homotopy, report_witness=True):
    """Check F - G = b'∘H + H∘b and the co-Leibniz identity
    Delta H = (F⊗H + H⊗G) Delta on every in-window word."""
    F, G, H = homotopy.F, homotopy.G, homotopy.apply
    src, tgt = F.source, F.target
    f = src.algebra.field

    def addmap(acc, other, scale):
        for k, v in other.items():
            nv = f.add(acc.get(k, f.zero), f.mul(scale, v))
            if f.is_zero(nv):
                acc.pop(k, None)
            else:
                acc[k] = nv

    failures = []
    for w in src.all_words():
        lhs = {}
        addmap(lhs, F.apply(w), f.one)
        addmap(lhs, G.apply(w), f.of(-1))
        rhs = {}
        for u, c in H(w).items():
            addmap(rhs, tgt.b(u), c)
        for u, c in src.b(w).items():
            addmap(rhs, H(u), c)
        if lhs != rhs:
            failures.append(("chain", w))
            if report_witness:
                break
        # co-Leibniz
        left = {}
        for u, c in H(w).items():
            for (p, q) in tgt.delta(u):
                left[(p, q)] = f.add(left.get((p, q), f.zero), c)
        left = {k: v for k, v in left.items() if not f.is_zero(v)}
        right = {}
        for (p, q) in src.delta(w):
            # (F ⊗ H): H odd passes deg1 of the first factor
            sgn = f.of(-1 if (src.deg(p).coh % 2) else 1)
            for u, cu in F.apply(p).items():
                for v, cv in H(q).items():
                    k = (u, v)
                    nv = f.add(right.get(k, f.zero),
                               f.mul(sgn, f.mul(cu, cv)))
                    if f.is_zero(nv):
                        right.pop(k, None)
                    else:
                        right[k] = nv
            for u, cu in H(p).items():
                for v, cv in G.apply(q).items():
                    k = (u, v)
                    nv = f.add(right.get(k, f.zero), f.mul(cu, cv))
                    if f.is_zero(nv):
                        right.pop(k, None)
                    else:
                        right[k] = nv
        if left != right:
            failures.append(("coleibniz", w))
            if report_witness:
                break
    return {"passed": not failures, "failures": failures}


def phi_op_iso(algebra, adams_bound=None):
    """The isomorphism Phi: B(A^op) -> B(A)^op, word reversal with the sign
    (-1)^{sum_{i<j} e_i e_j}; verified to be bijective, a chain map against
    the opposite differential -b, and comultiplicative against tau∘Delta."""
    A = algebra
    f = A.field
    Aop = opposite(A)
    bar_op = bar(Aop, adams_bound)
    bar_a = bar(A, adams_bound)

    def phi(word):
        return eps_word(bar_op.es(word)), tuple(reversed(word))

    failures = []
    seen = set()
    for w in bar_op.all_words():
        sgn, rw = phi(w)
        if rw in seen or rw not in bar_a.words:
            failures.append(("bijection", w))
            break
        seen.add(rw)
        # chain map: Phi(b_op(w)) = -b(Phi(w)), with Phi(w) = sgn * rw
        lhs = {}
        for u, c in bar_op.b(w).items():
            s2, ru = phi(u)
            nv = f.add(lhs.get(ru, f.zero), f.mul(f.of(s2), c))
            if f.is_zero(nv):
                lhs.pop(ru, None)
            else:
                lhs[ru] = nv
        rhs = {u: f.mul(f.of(-sgn), c) for u, c in bar_a.b(rw).items()}
        rhs = {k: v for k, v in rhs.items() if not f.is_zero(v)}
        if lhs != rhs:
            failures.append(("chain", w, lhs, rhs))
            break
        # comultiplicativity: Delta_op(Phi w) = (Phi⊗Phi)(Delta_op-source w)
        left = {}
        for (p, q) in bar_a.delta(rw):
            tau = -1 if (bar_a.deg(p).coh % 2 and bar_a.deg(q).coh % 2) else 1
            k = (q, p)
            nv = f.add(left.get(k, f.zero), f.mul(f.of(sgn * tau), f.one))
            if f.is_zero(nv):
                left.pop(k, None)
            else:
                left[k] = nv
        right = {}
        for (p, q) in bar_op.delta(w):
            sp, rp = phi(p)
            sq, rq = phi(q)
            k = (rp, rq)
            nv = f.add(right.get(k, f.zero), f.of(sp * sq))
            if f.is_zero(nv):
                right.pop(k, None)
            else:
                right[k] = nv
        if left != right:
            failures.append(("comult", w, left, right))
            break
    if not failures and len(seen) != len(list(bar_a.all_words())):
        failures.append(("bijection-count",))
    return {"passed": not failures, "failures": failures, "map": phi}


# -- bar construction of modules --------------------------------------------

class BarModuleComplex:
    """B(M;A) = SM ⊗ T(SI) with the comodule differential.

    Words are (module label, tuple of algebra ideal labels); the module
    letter sits in slot 0 of the suspension bookkeeping.
    """

    def __init__(self, module, adams_bound=None):
        M = module
        A = M.algebra
        self.module = M
        self.algebra = A
        self.adams_bound = adams_bound or A.adams_bound
        letters = A.ideal_labels()
        self.words = {}
        frontier = []
        for d in M.space.bidegrees():
            for m_lab in M.space.labels(d):
                w = (m_lab, ())
                nd = Bidegree(d.coh - 1, d.adams)
                if abs(nd.adams) <= self.adams_bound:
                    self.words[w] = nd
                    frontier.append(w)
        while frontier:
            nxt = []
            for (m_lab, aw) in frontier:
                d = self.words[(m_lab, aw)]
                for lab in letters:
                    ld = A.deg_of(lab)
                    nd = Bidegree(d.coh + ld.coh - 1, d.adams + ld.adams)
                    if abs(nd.adams) > self.adams_bound:
                        continue
                    nw = (m_lab, aw + (lab,))
                    self.words[nw] = nd
                    nxt.append(nw)
            frontier = nxt
        by_deg = {}
        for w, d in self.words.items():
            by_deg.setdefault(d, []).append(w)
        self._by_deg = {d: sorted(ws, key=lambda w: (len(w[1]), w))
                        for d, ws in by_deg.items()}
        self.space = BigradedSpace(
            A.field, {d: [self.label(w) for w in ws]
                      for d, ws in self._by_deg.items()})

    @staticmethod
    def label(word):
        m_lab, aw = word
        return f"[{m_lab};{'|'.join(aw)}]"

    def all_words(self):
        for d in sorted(self._by_deg, key=sort_key):
            yield from self._by_deg[d]

    def es0(self, word):
        m_lab, aw = word
        M, A = self.module, self.algebra
        return ([M.space_deg(m_lab).coh - 1]
                + [A.deg_of(l).coh - 1 for l in aw])

    def b(self, word):
        M, A = self.module, self.algebra
        f = A.field
        m_lab, aw = word
        es = self.es0(word)
        total = len(aw) + 1
        out = {}

        def add(nw, v):
            nv = f.add(out.get(nw, f.zero), v)
            if f.is_zero(nv):
                out.pop(nw, None)
            else:
                out[nw] = nv

        # module-action terms: slots 0..n-1
        for n in range(1, total + 1):
            val = M.m(n, m_lab, aw[:n - 1])
            if not val:
                continue
            sgn = -1 if (_desusp_parity(es[:n]) + n) % 2 else 1
            for m2_lab, coef in val.items():
                add((m2_lab, aw[n - 1:]), f.mul(f.of(sgn), coef))
        # algebra terms: positions p >= 1
        for n in range(1, len(aw) + 1):
            for p in range(1, len(aw) - n + 2):
                val = A.m(n, aw[p - 1:p - 1 + n])
                if not val:
                    continue
                w_pn = (sum(es[:p]) + _desusp_parity(es[p:p + n])) % 2
                sgn = -1 if (w_pn + n) % 2 else 1
                for c, coef in val.items():
                    add((m_lab, aw[:p - 1] + (c,) + aw[p - 1 + n:]),
                        f.mul(f.of(sgn), coef))
        return out

    def complex(self):
        entries = []
        for w in self.all_words():
            for nw, v in self.b(w).items():
                entries.append((self.words[w], self.label(w), self.label(nw), v))
        return self.space, GradedMap.from_entries(self.space, self.space,
                                                  (1, 0), entries)

    def b_squared_is_zero(self):
        f = self.algebra.field
        for w in self.all_words():
            acc = {}
            for nw, v in self.b(w).items():
                for nnw, v2 in self.b(nw).items():
                    nv = f.add(acc.get(nnw, f.zero), f.mul(v, v2))
                    if f.is_zero(nv):
                        acc.pop(nnw, None)
                    else:
                        acc[nnw] = nv
            if acc:
                return False, (w, acc)
        return True, None


def bar_module(module, adams_bound=None):
    if not finiteness_classify(module.algebra).adams_connected:
        raise NotAdamsConnected("bar of modules needs an Adams connected algebra")
    return BarModuleComplex(module, adams_bound)


# -- the double-dual check ---------------------------------------------------

def unit_quasi_iso_check(algebra, adams_bound=None, multiplicativity=True):
    """For a DG algebra A, verify the inclusion a -> <[a]> into Omega(BA):
    exact chain map, unital, multiplicative up to explicit boundaries, and
    an isomorphism on homology (as algebras) within the validity window."""
    from .sparse import SparseMatrix, decompose

    A = algebra
    if not A.is_dg():
        raise SchemaError("the explicit unit map is implemented for DG input")
    f = A.field
    bound = adams_bound or A.adams_bound
    U = enveloping(A, bound)
    window = validity_window(A, bound)

    def iota_label(a):
        return omega_label((word_label((a,)),))

    report = {"window": window, "chain_map": True, "unital": True,
              "multiplicative_up_to_boundary": True, "h_iso": True,
              "h_product_match": True, "failures": []}

    # chain map on ideal generators
    for a in A.ideal_labels():
        if abs(A.deg_of(a).adams) > bound:
            continue
        img = U.m(1, (iota_label(a),))
        expect = {iota_label(c): v for c, v in A.m(1, (a,)).items()}
        if img != expect:
            report["chain_map"] = False
            report["failures"].append(("chain", a, img, expect))

    # multiplicative up to boundary: iota(a) iota(b) - iota(ab) = d z
    space_u, d_u = dg_complex(U)
    decs = {}
    if multiplicativity:
        for a in A.ideal_labels():
            for b_lab in A.ideal_labels():
                dab = A.deg_of(a) + A.deg_of(b_lab)
                if abs(dab.adams) > bound:
                    continue
                prod = dict(U.m(2, (iota_label(a), iota_label(b_lab))))
                for c, v in A.m(2, (a, b_lab)).items():
                    lc = iota_label(c)
                    nv = f.sub(prod.get(lc, f.zero), v)
                    if f.is_zero(nv):
                        prod.pop(lc, None)
                    else:
                        prod[lc] = nv
                if not prod:
                    continue
                tgt = Bidegree(dab.coh, dab.adams)
                vec = space_u.zero_vec(tgt)
                for lab, v in prod.items():
                    vec[space_u.index(tgt, lab)] = v
                src = tgt + Bidegree(-1, 0)
                key = src
                if key not in decs:
                    decs[key] = decompose(d_u.block(src))
                if decs[key].solve(vec) is None:
                    report["multiplicative_up_to_boundary"] = False
                    report["failures"].append(("mult", a, b_lab))

    # homology comparison within the validity window
    space_a, d_a = dg_complex(A)
    ha = complex_homology(space_a, d_a)
    hu = complex_homology(space_u, d_u)
    dims_a, dims_u = {}, {}
    for d, n in ha.dims_table().items():
        if abs(d.adams) <= window:
            dims_a[d] = n
    for d, n in hu.dims_table().items():
        if abs(d.adams) <= window:
            dims_u[d] = n
    report["dims_A"] = dims_a
    report["dims_U"] = dims_u
    if dims_a != dims_u:
        report["h_iso"] = False

    def iota_vec(d, vec):
        out = {}
        for i, v in enumerate(vec):
            if not f.is_zero(v):
                lab = space_a.labels(d)[i]
                out[iota_label(lab) if lab != A.unit else U.unit] = v
        tv = space_u.zero_vec(d)
        for lab, v in out.items():
            tv[space_u.index(d, lab)] = v
        return tv

    h_map = {}
    if report["h_iso"]:
        for d, n in dims_a.items():
            cols = []
            for k in range(n):
                e = [f.zero] * n
                e[k] = f.one
                rep = ha.include(d, e)
                cols.append(hu.project(d, iota_vec(d, rep)))
            mat = SparseMatrix.from_columns(f, cols, hu.homology.dim(d))
            if decompose(mat).rank != n:
                report["h_iso"] = False
                report["failures"].append(("h_rank", d))
            h_map[d] = cols
    if report["h_iso"]:
        # product comparison on homology classes
        for d1 in dims_a:
            for d2 in dims_a:
                d12 = Bidegree(d1.coh + d2.coh, d1.adams + d2.adams)
                if d12 not in dims_a and hu.homology.dim(d12) == 0:
                    continue
                if abs(d12.adams) > window:
                    continue
                for k1 in range(dims_a[d1]):
                    for k2 in range(dims_a.get(d2, 0)):
                        e1 = [f.one if i == k1 else f.zero
                              for i in range(dims_a[d1])]
                        e2 = [f.one if i == k2 else f.zero
                              for i in range(dims_a[d2])]
                        r1 = ha.include(d1, e1)
                        r2 = ha.include(d2, e2)
                        # product in A of the two representatives
                        prod = {}
                        for i, v1 in enumerate(r1):
                            if f.is_zero(v1):
                                continue
                            la = space_a.labels(d1)[i]
                            for j, v2 in enumerate(r2):
                                if f.is_zero(v2):
                                    continue
                                lb = space_a.labels(d2)[j]
                                for lc, vc in A.m(2, (la, lb)).items():
                                    prod[lc] = f.add(prod.get(lc, f.zero),
                                                     f.mul(vc, f.mul(v1, v2)))
                        va = space_a.zero_vec(d12)
                        for lc, vc in prod.items():
                            va[space_a.index(d12, lc)] = vc
                        lhs = hu.project(d12, iota_vec(d12, va))
                        # product of images in U
                        u1 = iota_vec(d1, r1)
                        u2 = iota_vec(d2, r2)
                        prod_u = {}
                        for i, v1 in enumerate(u1):
                            if f.is_zero(v1):
                                continue
                            la = space_u.labels(d1)[i]
                            for j, v2 in enumerate(u2):
                                if f.is_zero(v2):
                                    continue
                                lb = space_u.labels(d2)[j]
                                for lc, vc in U.m(2, (la, lb)).items():
                                    prod_u[lc] = f.add(prod_u.get(lc, f.zero),
                                                       f.mul(vc, f.mul(v1, v2)))
                        vu = space_u.zero_vec(d12)
                        for lc, vc in prod_u.items():
                            vu[space_u.index(d12, lc)] = vc
                        rhs = hu.project(d12, vu)
                        if lhs != rhs:
                            report["h_product_match"] = False
                            report["failures"].append(("h_prod", d1, d2))
    report["passed"] = (report["chain_map"] and report["unital"]
                        and report["multiplicative_up_to_boundary"]
                        and report["h_iso"] and report["h_product_match"])
    return report