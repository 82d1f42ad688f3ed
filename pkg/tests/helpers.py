"""Shared test utilities: an independent brute-force Stasheff/morphism
identity checker (kept separate from the engine code paths on purpose) and
small solvers used to build fixtures."""

from koszul.ainf import AInfMorphism, window_tuples
from koszul.fields import QQ
from koszul.sparse import SparseMatrix, decompose


def brute_si(A, labels):
    """Independent SI evaluation: literal sum over r+s+t decompositions."""
    f = A.field
    n = len(labels)
    total = {}
    for r in range(0, n):
        for s in range(1, n - r + 1):
            t = n - r - s
            u = r + 1 + t
            sign = (-1) ** (r + s * t)
            if (2 - s) % 2 == 1:  # odd operator passes the first r elements
                sign *= (-1) ** sum(A.deg_of(l).coh for l in labels[:r])
            for c, coef in A.m(s, labels[r:r + s]).items():
                for lab, v in A.m(u, labels[:r] + (c,) + labels[r + s:]).items():
                    cur = total.get(lab, f.zero)
                    total[lab] = f.add(cur, f.mul(f.of(sign), f.mul(coef, v)))
    return {k: v for k, v in total.items() if not f.is_zero(v)}


def brute_si_holds(A, n_max):
    for n in range(1, n_max + 1):
        for tup in window_tuples(A, n):
            if brute_si(A, tup):
                return False, (n, tup)
    return True, None


def solve_morphism_extension(A, B, comps, n_max):
    """Extend partial morphism components so MI(n) holds for n <= n_max.

    comps: {n: table} given for low arities; for each n where MI(n) fails,
    solves linearly for the next unknown component f_{n-1}.  Returns an
    AInfMorphism or None when some stage is unsolvable.
    """
    from koszul.ainf import mi_residual

    comps = {n: {t: dict(v) for t, v in tab.items()} for n, tab in comps.items()}
    f = A.field
    for n in range(2, n_max + 1):
        fmor = AInfMorphism(A, B, comps)
        bad = []
        for tup in window_tuples(A, n):
            res = mi_residual(fmor, tup)
            if res:
                bad.append((tup, res))
        if not bad:
            continue
        k = n - 1  # unknown component arity
        unknowns = []
        index = {}
        for tup in window_tuples(A, k):
            d = (sum(A.deg_of(l).coh for l in tup) + 1 - k,
                 sum(A.deg_of(l).adams for l in tup))
            for db in B.space.bidegrees():
                if (db.coh, db.adams) != d:
                    continue
                for lab in B.space.labels(db):
                    if lab == B.unit:
                        continue
                    index[(tup, lab)] = len(unknowns)
                    unknowns.append((tup, lab))
        if not unknowns:
            return None
        # numeric derivative: residual is affine in f_k
        rows = {}
        rhs = []
        eq_index = {}

        def eq_of(tup, lab):
            key = (tup, lab)
            if key not in eq_index:
                eq_index[key] = len(rhs)
                rhs.append(f.zero)
            return eq_index[key]

        base = {}
        fmor0 = AInfMorphism(A, B, comps)
        for tup in window_tuples(A, n):
            for lab, v in mi_residual(fmor0, tup).items():
                base[(tup, lab)] = v
                rhs_i = eq_of(tup, lab)
                rhs[rhs_i] = f.neg(v)
        for j, (utup, ulab) in enumerate(unknowns):
            comps2 = {m: {t: dict(v) for t, v in tab.items()}
                      for m, tab in comps.items()}
            comps2.setdefault(k, {}).setdefault(utup, {})[ulab] = f.one
            fmor1 = AInfMorphism(A, B, comps2)
            for tup in window_tuples(A, n):
                res = mi_residual(fmor1, tup)
                keys = set(res) | {lab for (t2, lab) in base if t2 == tup}
                for lab in keys:
                    delta = f.sub(res.get(lab, f.zero),
                                  base.get((tup, lab), f.zero))
                    if not f.is_zero(delta):
                        rows.setdefault(eq_of(tup, lab), {})[j] = delta
        M = SparseMatrix(len(rhs), len(unknowns), f,
                         {(r, c): v for r, row in rows.items()
                          for c, v in row.items()})
        sol = decompose(M).solve(rhs)
        if sol is None:
            return None
        for j, (utup, ulab) in enumerate(unknowns):
            if not f.is_zero(sol[j]):
                comps.setdefault(k, {}).setdefault(utup, {})[ulab] = sol[j]
    return AInfMorphism(A, B, comps)
