"""Realizations: a lattice with roots and coroots pairing to the Cartan
matrix, the graded polynomial ring R = Sym(h*) with its W-action, Demazure
operators, Billey-type restrictions of equivariant Schubert classes, and
the smoothness numerator used by the p-smoothness criterion.

The default realization for a Cartan matrix C places the roots as the
first |S| standard basis vectors of h* = Z^(|S|+k) and the coroot
functionals as the rows of C, padded with one extra coordinate for every
row of even content so that all coroots are primitive (Demazure
surjectivity).
"""

from __future__ import annotations

from math import gcd

from .coxeter import CoxeterElement, CoxeterSystem
from .polynomials import GradedPolynomial, canonical_linear_form
from .ratfun import RationalFunction


class RealizationError(ValueError):
    pass


class Realization:
    """Roots alpha_s in Z^rank and coroot functionals alpha_s^vee with
    <alpha_s^vee, alpha_t> = c_st."""

    def __init__(self, system: CoxeterSystem, rank: int, roots, coroots):
        self.system = system
        self.rank = rank
        self.roots = tuple(tuple(int(x) for x in r) for r in roots)
        self.coroots = tuple(tuple(int(x) for x in r) for r in coroots)
        n = system.rank
        if len(self.roots) != n or len(self.coroots) != n:
            raise RealizationError("need one root and coroot per generator")
        if any(len(r) != rank for r in self.roots + self.coroots):
            raise RealizationError("root/coroot length must equal the rank")
        c = system.cartan.entries
        for s in range(n):
            for t in range(n):
                pair = sum(a * b for a, b in zip(self.coroots[s], self.roots[t]))
                if pair != c[s][t]:
                    raise RealizationError(
                        f"<coroot {s}, root {t}> = {pair} != c[{s}][{t}] = {c[s][t]}")
        for s in range(n):
            if _content(self.roots[s]) != 1:
                raise RealizationError(f"root {s} is not primitive")
            if _content(self.coroots[s]) != 1:
                raise RealizationError(
                    f"coroot {s} is not primitive (Demazure surjectivity fails)")
        # reflection matrices on h* coordinates: s(x) = x - <x, a_s^vee> a_s
        self._refl = []
        for s in range(n):
            m = [[1 if i == j else 0 for j in range(rank)] for i in range(rank)]
            for j in range(rank):
                cj = self.coroots[s][j]
                if cj:
                    for i in range(rank):
                        m[i][j] -= cj * self.roots[s][i]
            self._refl.append(tuple(tuple(row) for row in m))
        self._action_cache: dict[CoxeterElement, tuple] = {
            system.identity: tuple(tuple(1 if i == j else 0 for j in range(rank))
                                   for i in range(rank))}

    @staticmethod
    def default(system: CoxeterSystem) -> "Realization":
        c = system.cartan.entries
        n = system.rank
        bad = [s for s in range(n) if _content(c[s]) != 1]
        rank = n + len(bad)
        roots = [tuple(1 if j == s else 0 for j in range(rank))
                 for s in range(n)]
        coroots = []
        for s in range(n):
            row = list(c[s]) + [0] * len(bad)
            if s in bad:
                row[n + bad.index(s)] = 1
            coroots.append(tuple(row))
        return Realization(system, rank, roots, coroots)

    # -- W-action ---------------------------------------------------------

    def action_matrix(self, w: CoxeterElement) -> tuple:
        m = self._action_cache.get(w)
        if m is None:
            s = w.word[0]
            rest = self.system.gen_mult(s, w)
            m = _mat_mul(self._refl[s], self.action_matrix(rest), self.rank)
            self._action_cache[w] = m
        return m

    def root_vector(self, w: CoxeterElement, s: int) -> tuple[int, ...]:
        """Coordinates of w(alpha_s)."""
        m = self.action_matrix(w)
        r = self.roots[s]
        return tuple(sum(m[i][j] * r[j] for j in range(self.rank))
                     for i in range(self.rank))

    def root_poly(self, s: int) -> GradedPolynomial:
        return GradedPolynomial.linear(self.roots[s])

    def reflect(self, s: int, f: GradedPolynomial) -> GradedPolynomial:
        """The ring automorphism induced by the reflection s."""
        images = [GradedPolynomial.linear(tuple(self._refl[s][i][j]
                                                for i in range(self.rank)))
                  for j in range(self.rank)]
        return f.substitute_linear(images)

    def act(self, w: CoxeterElement, f: GradedPolynomial) -> GradedPolynomial:
        m = self.action_matrix(w)
        images = [GradedPolynomial.linear(tuple(m[i][j] for i in range(self.rank)))
                  for j in range(self.rank)]
        return f.substitute_linear(images)

    def pairing(self, vec, coroot_index: int) -> int:
        return sum(a * b for a, b in zip(self.coroots[coroot_index], vec))

    def demazure(self, s: int, f: GradedPolynomial) -> GradedPolynomial:
        """(f - sf)/alpha_s; the division is exact for any realization."""
        diff = f - self.reflect(s, f)
        return diff.divide_by_linear(self.roots[s])

    # -- positive roots (finite systems) --------------------------------------

    def positive_roots(self) -> list[tuple[int, ...]]:
        """Positive roots of a finite system, as vectors in h*."""
        elements = self.system.enumerate_all()
        roots = set()
        for w in elements:
            for s in range(self.system.rank):
                if self.system.is_right_ascent(w, s):
                    roots.add(self.root_vector(w, s))
        return sorted(roots)

    # -- Billey restriction ------------------------------------------------------

    def billey_restriction(self, x: CoxeterElement,
                           y: CoxeterElement) -> GradedPolynomial:
        """Restriction of the equivariant class of x to the point y: the sum
        over subwords of the canonical reduced word of y multiplying to x of
        the products of the walk roots beta_j = s_{i_1}..s_{i_{j-1}}(alpha_{i_j}).
        Independent of the chosen reduced word of y."""
        word = y.word
        sy = self.system
        betas = []
        prefix = sy.identity
        for s in word:
            betas.append(GradedPolynomial.linear(self.root_vector(prefix, s)))
            prefix = sy.mult_gen(prefix, s)
        one = GradedPolynomial.const(self.rank, 1)
        # DP over positions: states = partial subword products
        states = {sy.identity: one}
        target_len = x.length
        for j, s in enumerate(word):
            new = dict(states)
            for z, poly in states.items():
                if z.length >= target_len:
                    continue
                zs = sy.mult_gen(z, s)
                if zs.length > z.length and sy.bruhat_leq(zs, x):
                    term = poly * betas[j]
                    prev = new.get(zs)
                    new[zs] = term if prev is None else prev + term
            states = new
        return states.get(x, GradedPolynomial.zero(self.rank))

    # -- smoothness numerator -------------------------------------------------------

    def p_smooth_numerator(self, y: CoxeterElement, x: CoxeterElement,
                           hecke=None) -> int:
        """The positive integer n(y, x) whose prime divisors are exactly the
        characteristics where the rationally smooth point y of the Schubert
        variety of x fails to be p-smooth.

        Normalization: with x' = w0 x and y' = w0 y, form
        billey(x', y') / prod_{beta>0} (-y'(beta)) and reduce; under the
        rational-smoothness precondition h_{y,x} = v^{l(x)-l(y)} the reduced
        fraction is n over a product of roots.
        """
        sy = self.system
        elements = sy.enumerate_all()
        w0 = max(elements, key=lambda e: e.length)
        if hecke is not None:
            from .laurent import LaurentPolynomial
            h = hecke.h(y, x)
            if h != LaurentPolynomial.monomial(x.length - y.length):
                raise ValueError(
                    f"({y!r}, {x!r}) is not rationally smooth: h = {h}")
        xp = sy.multiply(w0, x)
        yp = sy.multiply(w0, y)
        numerator = self.billey_restriction(xp, yp)
        if numerator.is_zero():
            raise ValueError("empty restriction; check y <= x")
        den = []
        myp = self.action_matrix(yp)
        for beta in self.positive_roots():
            img = tuple(-sum(myp[i][j] * beta[j] for j in range(self.rank))
                        for i in range(self.rank))
            den.append((img, 1))
        frac = RationalFunction(numerator, tuple(_merge_powers(den)))
        if not frac.num.is_constant():
            raise ValueError(
                f"equivariant multiplicity of ({y!r}, {x!r}) has non-constant "
                f"numerator {frac.num!r}; rational smoothness fails")
        n = abs(frac.num.constant_value())
        if n < 1:
            raise AssertionError("vanishing smoothness numerator")
        return n


def _merge_powers(factors):
    merged: dict = {}
    for form, power in factors:
        cform, content, _ = canonical_linear_form(form)
        if content != 1:
            raise AssertionError("root image is not primitive")
        merged[cform] = merged.get(cform, 0) + power
    return sorted(merged.items())


def _content(vec) -> int:
    g = 0
    for a in vec:
        g = gcd(g, a)
    return g


def _mat_mul(a, b, n):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )
