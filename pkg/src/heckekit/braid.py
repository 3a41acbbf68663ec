"""Localized matrices of the 2m-valent braid generators.

The braid vertex B_(s,t,s,...) -> B_(t,s,t,...) (m letters each) is pinned
down as the unique endpoint-supported degree-0 matrix with entries
N(a,b)/Delta (Delta = product of the m positive dihedral roots) that sends
the all-ones tensor 1 (x) ... (x) 1 to the all-ones tensor and maps the
monomial lattice of the source into the lattice of the target.  Uniqueness
holds because Bott-Samelson bimodules are cyclic over the all-ones tensor,
so any subset of these linear conditions with a unique solution computes
the braid; the solver adds lattice conditions monomial by monomial until
the system is determined.

Everything here is universal in the two variables (a, b) = (alpha_s,
alpha_t) given the Cartan pair (c_st, c_ts); results are cached per
(c_st, c_ts, m).
"""

from __future__ import annotations

from fractions import Fraction

from .coxeter import CoxeterSystem, GeneralizedCartanMatrix
from .polynomials import GradedPolynomial, _completion_matrix
from .ratfun import RationalFunction
from .scalars import SmallRat


class BraidSolveError(RuntimeError):
    pass


def alternating_word(s: int, t: int, m: int) -> tuple[int, ...]:
    return tuple(s if i % 2 == 0 else t for i in range(m))


class _Dihedral:
    """Rank-2 localization toolbox over Q(a, b)."""

    def __init__(self, cst: int, cts: int):
        self.cst = cst
        self.cts = cts
        self.system = CoxeterSystem(GeneralizedCartanMatrix(
            [[2, cst], [cts, 2]], ("s", "t")))
        self.m = self.system.cartan.braid_m(0, 1)
        if self.m == 0:
            raise ValueError("infinite braid order")
        self.one = RationalFunction.from_int(2, 1)
        self.alpha = [GradedPolynomial.linear((1, 0)),
                      GradedPolynomial.linear((0, 1))]

    def act_images(self, w):
        m = w.matrix
        return [GradedPolynomial.linear((m[0][j], m[1][j])) for j in range(2)]

    def act_poly(self, w, p: GradedPolynomial) -> GradedPolynomial:
        return p.substitute_linear(self.act_images(w))

    def act_rf(self, w, rf: RationalFunction) -> RationalFunction:
        return rf.substitute_linear(self.act_images(w))

    def reflect_rf(self, s: int, rf: RationalFunction) -> RationalFunction:
        return self.act_rf(self.system.generator(s), rf)

    def demazure_rf(self, s: int, rf: RationalFunction) -> RationalFunction:
        if rf.den_factors:
            raise ValueError("demazure of a non-polynomial scalar")
        num = (rf.num - self.act_poly(self.system.generator(s), rf.num))
        return RationalFunction(num.divide_by_linear((1, 0) if s == 0 else (0, 1)),
                                (), rf.den_int)

    def positive_roots(self):
        roots = set()
        for w in self.system.enumerate_all():
            for s in (0, 1):
                if self.system.is_right_ascent(w, s):
                    m = w.matrix
                    roots.add((m[0][s], m[1][s]))
        return sorted(roots)

    # -- monomial <-> xi bases -------------------------------------------

    def right_mult(self, word, vec: dict, g: RationalFunction) -> dict:
        """Right-multiply a monomial-coordinate vector by g, re-expanding."""
        if not word:
            coef = vec.get(0)
            if coef is None or coef.is_zero():
                return {}
            out = coef * g
            return {} if out.is_zero() else {0: out}
        s = word[-1]
        k = len(word) - 1
        alpha = self.alpha[s]
        out: dict = {}
        halves: dict = {}
        for mono, coef in vec.items():
            a_exp = mono >> k & 1
            prefix = mono & ((1 << k) - 1)
            key = a_exp
            pd = halves.get(key)
            if pd is None:
                p = g * alpha if a_exp else g
                sym = (p + self.act_rf(self.system.generator(s), p)).div_int(2)
                dem = self.demazure_rf(s, p).div_int(2)
                pd = (sym, dem)
                halves[key] = pd
            for part, bit in zip(pd, (0, 1)):
                if part.is_zero():
                    continue
                sub = self.right_mult(word[:-1], {prefix: coef}, part)
                for m2, c2 in sub.items():
                    m3 = m2 | bit << k
                    prev = out.get(m3)
                    out[m3] = c2 if prev is None else prev + c2
        return {m: c for m, c in out.items() if not c.is_zero()}

    def xi_vectors(self, word) -> list[dict]:
        """xi-basis vectors expanded in monomial coordinates."""
        if not word:
            return [{0: self.one}]
        prev = self.xi_vectors(word[:-1])
        s = word[-1]
        k = len(word) - 1
        alpha = RationalFunction.from_poly(self.alpha[s])
        out = [None] * (1 << len(word))
        for e_prev, vec in enumerate(prev):
            for eps, sign in ((0, 1), (1, -1)):
                rm = self.right_mult(word[:-1], vec, alpha * sign)
                newvec = dict(rm)
                for m, co in vec.items():
                    m2 = m | 1 << k
                    prev2 = newvec.get(m2)
                    newvec[m2] = co if prev2 is None else prev2 + co
                out[e_prev | eps << k] = {m: c for m, c in newvec.items()
                                          if not c.is_zero()}
        return out

    def mono_vectors(self, word) -> list[dict]:
        """Monomial basis vectors expanded in xi coordinates."""
        if not word:
            return [{0: self.one}]
        prev = self.mono_vectors(word[:-1])
        s = word[-1]
        k = len(word) - 1
        alpha_form = (1, 0) if s == 0 else (0, 1)
        half = self.one.div_int(2)
        inv2a = self.one.div_int(2).mul_form(alpha_form, -1)
        # (1 (x) 1) = (xi_0 - xi_1)/(2 alpha); (1 (x) alpha) = (xi_0 + xi_1)/2
        letter = {0: {0: inv2a, 1: -inv2a}, 1: {0: half, 1: half}}
        endpoints = [self.system.mask_endpoint(word[:-1], e)
                     for e in range(1 << k)]
        out = [None] * (1 << len(word))
        for m_prev, vec in enumerate(prev):
            for a_exp in (0, 1):
                newvec: dict = {}
                for e_prev, co in vec.items():
                    tw = endpoints[e_prev]
                    for eps, cc in letter[a_exp].items():
                        tcc = self.act_rf(tw, cc)
                        m2 = e_prev | eps << k
                        term = co * tcc
                        prev2 = newvec.get(m2)
                        newvec[m2] = term if prev2 is None else prev2 + term
                out[m_prev | a_exp << k] = {m: c for m, c in newvec.items()
                                            if not c.is_zero()}
        return out


def _degree_m_monomials(m: int):
    return [(i, m - i) for i in range(m + 1)]


def _rem_rows(poly: GradedPolynomial, form, power: int):
    """Remainder data of poly modulo form^power: the coefficients of the
    transformed polynomial with y1-degree < power; all maps are linear."""
    U = _completion_matrix(tuple(form))
    images = [GradedPolynomial.linear(U[i]) for i in range(2)]
    g = poly.substitute_linear(images)
    out = {}
    for mono, a in g.items():
        if mono[0] < power:
            out[mono] = out.get(mono, 0) + a
    return out


class _LinearSolver:
    """Incremental exact Gaussian elimination with early determinacy check."""

    def __init__(self, n_unknowns: int):
        self.n = n_unknowns
        self.rows: dict[int, tuple[list[Fraction], Fraction]] = {}

    def add(self, coeffs: dict[int, Fraction], rhs: Fraction):
        row = [Fraction(0)] * self.n
        for i, c in coeffs.items():
            row[i] = Fraction(c)
        rhs = Fraction(rhs)
        for piv, (prow, prhs) in self.rows.items():
            c = row[piv]
            if c:
                row = [x - c * y for x, y in zip(row, prow)]
                rhs = rhs - c * prhs
        piv = next((i for i, x in enumerate(row) if x), None)
        if piv is None:
            if rhs:
                raise BraidSolveError("inconsistent braid system")
            return
        inv = 1 / row[piv]
        row = [x * inv for x in row]
        rhs = rhs * inv
        # back-substitute into existing rows
        for p2, (prow, prhs) in list(self.rows.items()):
            c = prow[piv]
            if c:
                self.rows[p2] = ([x - c * y for x, y in zip(prow, row)],
                                 prhs - c * rhs)
        self.rows[piv] = (row, rhs)

    def determined(self) -> bool:
        return len(self.rows) == self.n

    def solution(self) -> list[Fraction]:
        if not self.determined():
            raise BraidSolveError("braid system is underdetermined")
        out = [Fraction(0)] * self.n
        for piv, (row, rhs) in self.rows.items():
            out[piv] = rhs
        return out


_braid_cache: dict = {}


def braid_table(cst: int, cts: int) -> dict:
    """The localized matrix of the braid vertex B_(s,t,..) -> B_(t,s,..),
    as a dict (target_mask, source_mask) -> SmallRat in (a, b)."""
    key = (cst, cts)
    cached = _braid_cache.get(key)
    if cached is not None:
        return cached
    ctx = _Dihedral(cst, cts)
    m = ctx.m
    D = ctx.system
    x_word = alternating_word(0, 1, m)
    y_word = alternating_word(1, 0, m)
    x_end = [D.mask_endpoint(x_word, e) for e in range(1 << m)]
    y_end = [D.mask_endpoint(y_word, f) for f in range(1 << m)]
    pairs = [(f, e) for f in range(1 << m) for e in range(1 << m)
             if y_end[f] is x_end[e]]
    pair_index = {p: i for i, p in enumerate(pairs)}
    monos = _degree_m_monomials(m)
    n_unk = len(pairs) * len(monos)

    delta_forms = tuple((root, 1) for root in ctx.positive_roots())

    mono_x = ctx.mono_vectors(x_word)
    xi_y = ctx.xi_vectors(y_word)

    solver = _LinearSolver(n_unk)

    def add_conditions_for_source_mono(eps: int, exact: bool):
        # Image of source monomial eps under M = (N_{fe}/Delta), expressed in
        # target monomial coordinates; each coordinate is linear in the
        # unknown numerator coefficients.
        X = mono_x[eps]
        for mu in range(1 << m):
            # G_u = rho * T_(f,e) / Delta with T = X[e] * Y[f][mu]
            terms = {}
            for (f, e) in pairs:
                xe = X.get(e)
                if xe is None:
                    continue
                yf = xi_y[f].get(mu)
                if yf is None:
                    continue
                terms[(f, e)] = xe * yf
            if not terms:
                if exact and mu == 0:
                    raise BraidSolveError("all-ones condition has empty support")
                continue
            # common denominator D = cint * prod fm^common[fm], covering
            # den(T) * Delta for every term
            tmax: dict = {}
            cint = 1
            for t in terms.values():
                for fm, p in t.den_factors:
                    tmax[fm] = max(tmax.get(fm, 0), p)
                cint = cint * t.den_int // _gcd(cint, t.den_int)
            common = dict(tmax)
            for fm, p in delta_forms:
                common[fm] = common.get(fm, 0) + p
            numerators = {}
            for pr, t in terms.items():
                numer = t.num * (cint // t.den_int)
                tfac = dict(t.den_factors)
                dfac = dict(delta_forms)
                for fm, p in common.items():
                    extra = p - tfac.get(fm, 0) - dfac.get(fm, 0)
                    if extra:
                        lf = GradedPolynomial.linear(fm)
                        for _ in range(extra):
                            numer = numer * lf
                numerators[pr] = numer
            if exact:
                # sum_u c_u rho_u numer_u = [mu == 0] * D, matched monomial-wise
                rhs_poly = GradedPolynomial.zero(2)
                if mu == 0:
                    rhs_poly = GradedPolynomial.const(2, cint)
                    for fm, p in common.items():
                        lf = GradedPolynomial.linear(fm)
                        for _ in range(p):
                            rhs_poly = rhs_poly * lf
                eq: dict[tuple, dict[int, Fraction]] = {}
                for pr, numer in numerators.items():
                    base = pair_index[pr] * len(monos)
                    for rho_i, rho in enumerate(monos):
                        for mono, a in _shift_mono(numer, rho).items():
                            d = eq.setdefault(mono, {})
                            d[base + rho_i] = d.get(base + rho_i, Fraction(0)) + a
                rhs_c = dict(rhs_poly.items())
                for mono in sorted(set(eq) | set(rhs_c)):
                    solver.add(eq.get(mono, {}), Fraction(rhs_c.get(mono, 0)))
            else:
                # divisibility of sum_u c_u rho_u numer_u by each fm^power
                for fm, p in common.items():
                    eq: dict[tuple, dict[int, Fraction]] = {}
                    for pr, numer in numerators.items():
                        base = pair_index[pr] * len(monos)
                        for rho_i, rho in enumerate(monos):
                            shifted = GradedPolynomial(2, _shift_mono(numer, rho))
                            for mono, a in _rem_rows(shifted, fm, p).items():
                                d = eq.setdefault(mono, {})
                                d[base + rho_i] = d.get(base + rho_i,
                                                        Fraction(0)) + a
                    for mono in sorted(eq):
                        solver.add(eq[mono], Fraction(0))
                        if solver.determined():
                            return

    # seed: exact conditions from the all-ones tensor
    add_conditions_for_source_mono(0, exact=True)
    # add lattice conditions until the system is determined
    order = sorted(range(1, 1 << m), key=lambda e: (bin(e).count("1"), e))
    for eps in order:
        if solver.determined():
            break
        add_conditions_for_source_mono(eps, exact=False)
    if not solver.determined():
        raise BraidSolveError(
            f"braid system underdetermined for (c_st, c_ts) = ({cst}, {cts})")
    sol = solver.solution()

    table = {}
    for pi, (f, e) in enumerate(pairs):
        coeffs = {}
        denom = 1
        for rho_i, rho in enumerate(monos):
            c = sol[pi * len(monos) + rho_i]
            if c:
                denom = denom * c.denominator // _gcd(denom, c.denominator)
        num = GradedPolynomial.zero(2)
        for rho_i, rho in enumerate(monos):
            c = sol[pi * len(monos) + rho_i]
            if c:
                num = num + GradedPolynomial(2, {rho: int(c * denom)})
        if num.is_zero():
            continue
        entry = SmallRat(num, tuple(delta_forms), denom)
        table[(f, e)] = entry
    # sanity: the all-ones entry is exactly 1
    top = table.get(((1 << m) - 1, (1 << m) - 1))
    if top is None or not (top.num.is_constant()
                           and top.num.constant_value() == top.den_int
                           and not top.den_factors):
        raise BraidSolveError("braid normalization failed (all-ones entry != 1)")
    _braid_cache[key] = table
    return table


def _shift_mono(poly: GradedPolynomial, rho) -> dict:
    out = {}
    for mono, a in poly.items():
        out[(mono[0] + rho[0], mono[1] + rho[1])] = a
    return out


def _gcd(a: int, b: int) -> int:
    from math import gcd
    return gcd(a, b)
