"""Preset algebra families: exterior, polynomial, truncated polynomial,
monomial quotients of free algebras, and the B(p) family with its single
higher multiplication."""

from itertools import combinations

from .ainf import TruncAInfAlgebra, make_algebra
from .bigraded import Bidegree
from .errors import SchemaError


def _mono_label(parts):
    return "*".join(parts) if parts else "1"


def exterior_algebra(field, gens, adams_bound=6, arity_bound=6, name=None):
    """Λ(x_1..x_n): squares zero, anticommuting generators.

    gens: list of (name, (coh, adams)).  Basis: square-free sorted monomials.
    """
    gens = [(g, Bidegree(*d)) for g, d in gens]
    order = {g: i for i, (g, _) in enumerate(gens)}
    basis = {Bidegree(0, 0): ["1"]}
    degs = {}
    for r in range(1, len(gens) + 1):
        for combo in combinations(gens, r):
            d = Bidegree(sum(g[1].coh for g in combo), sum(g[1].adams for g in combo))
            if abs(d.adams) > adams_bound:
                continue
            lab = _mono_label([g[0] for g in combo])
            basis.setdefault(d, []).append(lab)
            degs[lab] = tuple(g[0] for g in combo)

    def merge(u, v):
        """Concatenate then sort with the alternating sign; None when zero."""
        word = list(degs[u] + degs[v])
        if len(set(word)) != len(word):
            return None
        sign = 1
        # insertion sort counting transpositions
        for i in range(1, len(word)):
            j = i
            while j > 0 and order[word[j - 1]] > order[word[j]]:
                word[j - 1], word[j] = word[j], word[j - 1]
                sign = -sign
                j -= 1
        return _mono_label(word), sign

    m2 = {}
    labs = [l for ls in basis.values() for l in ls if l != "1"]
    for u in labs:
        for v in labs:
            got = merge(u, v)
            if got is None:
                continue
            lab, sign = got
            if lab not in degs:
                continue  # product fell out of the window
            m2[(u, v)] = {lab: field.of(sign)}
    # the full exterior algebra is finite; complete iff the top monomial fits
    full = sum(abs(d.adams) for _, d in gens)
    return make_algebra(field, basis, "1", {2: m2},
                        adams_bound=adams_bound, arity_bound=arity_bound,
                        support_complete=(full <= adams_bound),
                        name=name or f"Λ({','.join(g for g, _ in gens)})")


def polynomial_algebra(field, gens, adams_bound=6, arity_bound=6, name=None):
    """k[y_1..y_n]: commutative polynomial ring, window truncated."""
    gens = [(g, Bidegree(*d)) for g, d in gens]
    if any(d.adams == 0 for _, d in gens):
        raise SchemaError("polynomial preset needs nonzero Adams degrees "
                          "(use an explicit table otherwise)")
    basis = {Bidegree(0, 0): ["1"]}
    expo = {}

    def lab_of(exps):
        parts = []
        for (g, _), e in zip(gens, exps):
            if e == 1:
                parts.append(g)
            elif e > 1:
                parts.append(f"{g}^{e}")
        return _mono_label(parts)

    def rec(i, exps, d):
        if i == len(gens):
            if any(exps):
                lab = lab_of(exps)
                basis.setdefault(d, []).append(lab)
                expo[lab] = tuple(exps)
            return
        e = 0
        while True:
            nd = Bidegree(d.coh + e * gens[i][1].coh, d.adams + e * gens[i][1].adams)
            if abs(nd.adams) > adams_bound:
                break
            rec(i + 1, exps + [e], nd)
            e += 1

    rec(0, [], Bidegree(0, 0))
    m2 = {}
    labs = list(expo)
    for u in labs:
        for v in labs:
            exps = tuple(a + b for a, b in zip(expo[u], expo[v]))
            lab = lab_of(exps)
            if lab not in expo:
                continue  # out of window
            m2[(u, v)] = {lab: field.one}
    return make_algebra(field, basis, "1", {2: m2},
                        adams_bound=adams_bound, arity_bound=arity_bound,
                        support_complete=False,
                        name=name or f"k[{','.join(g for g, _ in gens)}]")


def truncated_polynomial(field, gen, bidegree, power, adams_bound=6,
                         arity_bound=6, name=None):
    """k[x]/(x^power)."""
    d = Bidegree(*bidegree)
    basis = {Bidegree(0, 0): ["1"]}
    labs = {}
    for e in range(1, power):
        nd = Bidegree(d.coh * e, d.adams * e)
        if abs(nd.adams) > adams_bound:
            break
        lab = gen if e == 1 else f"{gen}^{e}"
        basis.setdefault(nd, []).append(lab)
        labs[lab] = e
    m2 = {}
    for u, eu in labs.items():
        for v, ev in labs.items():
            e = eu + ev
            if e >= power:
                continue  # genuinely zero
            lab = gen if e == 1 else f"{gen}^{e}"
            if lab not in labs:
                continue  # out of window
            m2[(u, v)] = {lab: field.one}
    complete = all(abs(d.adams * e) <= adams_bound for e in range(power))
    return make_algebra(field, basis, "1", {2: m2},
                        adams_bound=adams_bound, arity_bound=arity_bound,
                        support_complete=complete,
                        name=name or f"k[{gen}]/({gen}^{power})")


def monomial_quotient(field, gens, relations, adams_bound=6, arity_bound=6,
                      name=None):
    """k<gens> / (monomial relations), window truncated.

    relations: list of words (tuples of generator names).  The basis is all
    words avoiding every relation as a contiguous subword.
    """
    gens = [(g, Bidegree(*d)) for g, d in gens]
    degs = dict(gens)
    rel = [tuple(w) for w in relations]

    def contains_rel(word):
        for r in rel:
            L = len(r)
            if L == 0:
                continue
            for i in range(len(word) - L + 1):
                if word[i:i + L] == r:
                    return True
        return False

    words = {(): Bidegree(0, 0)}
    frontier = [()]
    while frontier:
        nxt = []
        for w in frontier:
            for g, d in gens:
                nw = w + (g,)
                nd = Bidegree(words[w].coh + d.coh, words[w].adams + d.adams)
                if abs(nd.adams) > adams_bound or contains_rel(nw):
                    continue
                words[nw] = nd
                nxt.append(nw)
        frontier = nxt

    basis = {}
    for w, d in words.items():
        basis.setdefault(d, []).append(_mono_label(list(w)))
    wl = {_mono_label(list(w)): w for w in words}
    m2 = {}
    boundary_open = False
    for u, wu in wl.items():
        if u == "1":
            continue
        for v, wv in wl.items():
            if v == "1":
                continue
            nw = wu + wv
            if contains_rel(nw):
                continue  # genuinely zero
            if nw not in words:
                boundary_open = True
                continue  # out of window: undefined, not zero
            m2[(u, v)] = {_mono_label(list(nw)): field.one}
    # complete iff no one-letter extension of a basis word escapes the window
    for w in words:
        for g, d in gens:
            nw = w + (g,)
            nd = Bidegree(words[w].coh + d.coh, words[w].adams + d.adams)
            if not contains_rel(nw) and abs(nd.adams) > adams_bound:
                boundary_open = True
    return make_algebra(field, {d: sorted(ls) for d, ls in basis.items()}, "1",
                        {2: m2}, adams_bound=adams_bound,
                        arity_bound=arity_bound,
                        support_complete=not boundary_open,
                        name=name or f"k<{','.join(g for g, _ in gens)}>/(monomials)")


def free_algebra(field, gens, adams_bound=6, arity_bound=6, name=None):
    return monomial_quotient(field, gens, [], adams_bound, arity_bound,
                             name=name or f"k<{','.join(g for g, _ in gens)}>")


def dual_numbers_square_zero(field, gens, adams_bound=6, arity_bound=6,
                             name=None):
    """Square-zero DG algebra: all ideal products vanish; d pairs up letters.

    gens: list of (name, (coh, adams), d_image or None); every d_image must
    name another generator one cohomological degree up.
    """
    basis = {Bidegree(0, 0): ["1"]}
    degs = {}
    for gname, d, _ in gens:
        d = Bidegree(*d)
        basis.setdefault(d, []).append(gname)
        degs[gname] = d
    m1 = {}
    for gname, d, img in gens:
        if img is None:
            continue
        if degs[img] != Bidegree(degs[gname].coh + 1, degs[gname].adams):
            raise SchemaError("differential image must raise coh degree by 1")
        m1[(gname,)] = {img: field.one}
    return make_algebra(field, basis, "1", {1: m1},
                        adams_bound=adams_bound, arity_bound=arity_bound,
                        name=name or "square-zero")


def bp_algebra(field, p, adams_bound=6, arity_bound=None, name=None):
    """The B(p) family: Λ(y)⊗k[z] with deg y = (1,-1), deg z = (2,-p),
    plus (for p >= 3) the single higher multiplication
    m_p(y z^{j_1} ⊗ ... ⊗ y z^{j_p}) = z^{1 + sum j_i}.  B(0) is the plain
    associative algebra."""
    if p != 0 and p < 3:
        raise SchemaError("B(p) needs p = 0 or p >= 3")
    pp = p if p else 3  # grading uses deg z = (2,-p); B(0) shares B(3)'s grading
    arity_bound = arity_bound or max(6, p)

    def zlab(j):
        return "1" if j == 0 else ("z" if j == 1 else f"z^{j}")

    def ylab(j):
        return "y" if j == 0 else f"y*{zlab(j)}"

    basis = {Bidegree(0, 0): ["1"]}
    zdeg, ydeg = {}, {}
    j = 1
    while pp * j <= adams_bound:
        basis.setdefault(Bidegree(2 * j, -pp * j), []).append(zlab(j))
        zdeg[zlab(j)] = j
        j += 1
    j = 0
    while 1 + pp * j <= adams_bound:
        basis.setdefault(Bidegree(1 + 2 * j, -1 - pp * j), []).append(ylab(j))
        ydeg[ylab(j)] = j
        j += 1

    def z_of(j):
        return zlab(j) if (j == 0 or zlab(j) in zdeg) else None

    def y_of(j):
        return ylab(j) if ylab(j) in ydeg else None

    m2 = {}
    ideal = list(zdeg) + list(ydeg)
    for u in ideal:
        for v in ideal:
            eu, ev = u in ydeg, v in ydeg
            ju = ydeg.get(u, zdeg.get(u, 0))
            jv = ydeg.get(v, zdeg.get(v, 0))
            if eu and ev:
                continue  # y^2 = 0
            j = ju + jv
            if eu or ev:
                lab = y_of(j)
            else:
                lab = z_of(j)
                if lab == "1":
                    lab = None
            if lab is None:
                continue  # out of window
            m2[(u, v)] = {lab: field.one}
    mults = {2: m2}
    if p >= 3:
        mp = {}
        ylist = sorted(ydeg.items(), key=lambda kv: kv[1])

        def rec(tup, js):
            if len(tup) == p:
                lab = z_of(1 + sum(js))
                if lab and lab != "1":
                    mp[tuple(tup)] = {lab: field.one}
                return
            for yl, j in ylist:
                rec(tup + [yl], js + [j])

        rec([], [])
        if mp:
            mults[p] = mp
    return make_algebra(field, basis, "1", mults, adams_bound=adams_bound,
                        arity_bound=arity_bound, support_complete=False,
                        name=name or f"B({p})")
