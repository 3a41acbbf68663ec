"""Spherical and antispherical modules over the Hecke algebra.

M_I = H (x)_{H_I} triv_v and N_I = H (x)_{H_I} sgn_v, both as LEFT
H-modules, with standard bases mu_x / nu_x indexed by the minimal length
representatives W^I of W/W_I.  The one-dimensional H_I-modules act by
delta_s -> v^-1 (triv) and delta_s -> -v (sgn).  Canonical bases c_x
(spherical) and d_x (antispherical) are the unique bar-invariant elements
congruent to the standard basis element modulo v times lower terms.
"""

from __future__ import annotations

from .coxeter import CoxeterElement
from .hecke import HeckeAlgebra, HeckeElement
from .laurent import LaurentPolynomial, V, VINV

SPHERICAL = "spherical"
ANTISPHERICAL = "antispherical"

_ONE = LaurentPolynomial.one()
_QUAD = VINV - V


class ParabolicElement:
    """Finitely supported map from W^I to Laurent polynomials, in either
    the standard or the canonical basis of the given module."""

    __slots__ = ("module", "basis_tag", "coords")

    def __init__(self, module, basis_tag, coords):
        self.module = module
        self.basis_tag = basis_tag
        self.coords = {x: c for x, c in coords.items() if c}

    def coeff(self, x):
        return self.coords.get(x, LaurentPolynomial.zero())

    def __add__(self, other):
        self._check(other)
        c = dict(self.coords)
        for x, a in other.coords.items():
            b = c.get(x)
            c[x] = a if b is None else b + a
        return ParabolicElement(self.module, self.basis_tag, c)

    def __sub__(self, other):
        self._check(other)
        c = dict(self.coords)
        for x, a in other.coords.items():
            b = c.get(x)
            c[x] = -a if b is None else b - a
        return ParabolicElement(self.module, self.basis_tag, c)

    def scale(self, f):
        return ParabolicElement(self.module, self.basis_tag,
                                {x: a * f for x, a in self.coords.items()})

    def is_zero(self):
        return not self.coords

    def __eq__(self, other):
        return (isinstance(other, ParabolicElement)
                and self.module is other.module
                and self.basis_tag == other.basis_tag
                and self.coords == other.coords)

    def __hash__(self):
        return hash((self.basis_tag, frozenset(self.coords.items())))

    def _check(self, other):
        if other.module is not self.module or other.basis_tag != self.basis_tag:
            raise ValueError("mixed modules or bases")

    def __repr__(self):
        tag = {("spherical", "standard"): "mu",
               ("spherical", "canonical"): "c",
               ("antispherical", "standard"): "nu",
               ("antispherical", "canonical"): "d"}[
                   (self.module.kind, self.basis_tag)]
        if not self.coords:
            return "0"
        parts = []
        for x in sorted(self.coords):
            c = self.coords[x]
            name = x.name() or "e"
            cs = str(c)
            parts.append(f"({cs})*{tag}_{name}" if cs != "1" else f"{tag}_{name}")
        return " + ".join(parts)


class ParabolicModule:
    """The spherical or antispherical module for a subset I with W_I finite."""

    def __init__(self, algebra: HeckeAlgebra, I, kind: str):
        if kind not in (SPHERICAL, ANTISPHERICAL):
            raise ValueError(f"unknown module kind {kind!r}")
        self.algebra = algebra
        self.system = algebra.system
        self.I = frozenset(I)
        self.kind = kind
        data = self.system.parabolic_data(self.I)
        self.w_I = data.longest_element
        self._canon_cache: dict[CoxeterElement, ParabolicElement] = {}
        self._scalar = VINV if kind == SPHERICAL else -V

    # -- standard basis ------------------------------------------------

    def in_min_reps(self, x: CoxeterElement) -> bool:
        return self.system.is_min_coset_rep(x, self.I)

    def standard(self, x: CoxeterElement) -> ParabolicElement:
        if not self.in_min_reps(x):
            raise ValueError(f"{x!r} is not a minimal coset representative")
        return ParabolicElement(self, "standard", {x: _ONE})

    def zero(self, basis_tag="standard"):
        return ParabolicElement(self, basis_tag, {})

    # -- action ----------------------------------------------------------

    def _act_gen(self, s: int, coords: dict) -> dict:
        """Left action of delta_s on standard coordinates."""
        sy = self.system
        out: dict = {}

        def add(x, c):
            prev = out.get(x)
            out[x] = c if prev is None else prev + c

        for x, c in coords.items():
            sx = sy.gen_mult(s, x)
            if self.in_min_reps(sx):
                if sx.length > x.length:
                    add(sx, c)
                else:
                    add(sx, c)
                    add(x, c * _QUAD)
            else:
                add(x, c * self._scalar)
        return {x: c for x, c in out.items() if c}

    def act(self, h: HeckeElement, m: ParabolicElement) -> ParabolicElement:
        """h . m for h in standard coordinates of H."""
        if m.module is not self:
            raise ValueError("element of a different module")
        if h.algebra.system is not self.system:
            raise ValueError("mismatched Coxeter systems")
        h = self.algebra.to_standard(h)
        m = self.to_standard(m)
        total: dict = {}
        for w, cw in h.coords.items():
            coords = m.coords
            for s in reversed(w.word):
                coords = self._act_gen(s, coords)
            for x, c in coords.items():
                term = c * cw
                prev = total.get(x)
                total[x] = term if prev is None else prev + term
        return ParabolicElement(self, "standard", total)

    def act_b_gen(self, s: int, m: ParabolicElement) -> ParabolicElement:
        """b_s . m, used by the canonical-basis induction."""
        coords = self._act_gen(s, m.coords)
        for x, c in m.coords.items():
            vc = c * V
            prev = coords.get(x)
            coords[x] = vc if prev is None else prev + vc
        return ParabolicElement(self, "standard", coords)

    # -- bar involution -----------------------------------------------------

    def bar(self, m: ParabolicElement) -> ParabolicElement:
        """Module bar involution: induced by d on H, fixing the generator."""
        m = self.to_standard(m)
        sy = self.system
        out = self.zero()
        for x, c in m.coords.items():
            # bar(mu_x) = bar-of-delta_x acting on mu_e
            barred = self.algebra._bar_delta(x)
            acted = self.act(barred, self.standard(sy.identity))
            out = out + acted.scale(c.bar())
        return out

    # -- canonical basis -------------------------------------------------------

    def canonical(self, x: CoxeterElement) -> ParabolicElement:
        """c_x (resp. d_x) in standard coordinates."""
        if not self.in_min_reps(x):
            raise ValueError(f"{x!r} is not a minimal coset representative")
        cached = self._canon_cache.get(x)
        if cached is not None:
            return cached
        sy = self.system
        if x is sy.identity:
            res = self.standard(x)
        else:
            s = x.word[0]
            sx = sy.gen_mult(s, x)  # still in W^I, shorter
            res = self.act_b_gen(s, self.canonical(sx))
            # subtract constant-term corrections from lower canonical elements
            while True:
                bad = [y for y, c in res.coords.items()
                       if y is not x and c.constant_term()]
                if not bad:
                    break
                y = max(bad)
                res = res - self.canonical(y).scale(
                    LaurentPolynomial.from_int(res.coords[y].constant_term()))
            for y, c in res.coords.items():
                if y is not x and not c.in_v_times_poly():
                    raise AssertionError(
                        f"parabolic degree bound violated at ({y!r}, {x!r})")
        self._canon_cache[x] = res
        return res

    def canonical_tagged(self, x: CoxeterElement) -> ParabolicElement:
        return ParabolicElement(self, "canonical", {x: _ONE})

    # -- basis conversions --------------------------------------------------------

    def to_canonical(self, m: ParabolicElement) -> ParabolicElement:
        if m.basis_tag == "canonical":
            return m
        rest = dict(m.coords)
        out: dict = {}
        while rest:
            x = max(rest)
            c = rest.pop(x)
            if not c:
                continue
            out[x] = c
            for y, hy in self.canonical(x).coords.items():
                if y is x:
                    continue
                prev = rest.get(y, LaurentPolynomial.zero())
                rest[y] = prev - c * hy
            rest = {y: d for y, d in rest.items() if d}
        return ParabolicElement(self, "canonical", out)

    def to_standard(self, m: ParabolicElement) -> ParabolicElement:
        if m.basis_tag == "standard":
            return m
        out = self.zero()
        for x, c in m.coords.items():
            out = out + self.canonical(x).scale(c)
        return out
