"""The Hecke algebra H of a Coxeter system over Z[v, v^-1].

Conventions: standard basis delta_x with delta_s^2 = (v^-1 - v) delta_s + 1
and braid relations; the bar involution d is the ring involution with
v -> v^-1 and delta_s -> delta_s + (v - v^-1) = delta_s^-1.  For each x
there is a unique b_x with d(b_x) = b_x and b_x in delta_x + sum_{y<x}
vZ[v] delta_y (so b_s = delta_s + v); the coefficients h_{y,x} of
b_x = sum h_{y,x} delta_y are the normalized Kazhdan-Lusztig polynomials.
"""

from __future__ import annotations

from .coxeter import CoxeterElement, CoxeterSystem
from .laurent import LaurentPolynomial, V, VINV

_ONE = LaurentPolynomial.one()
_QUAD = VINV - V            # v^-1 - v, from the quadratic relation
_BARQUAD = V - VINV         # v - v^-1, appearing in bar(delta_s)


class HeckeElement:
    """Finitely supported map from group elements to Laurent polynomials,
    tagged with the basis the coordinates refer to ("standard" or "kl")."""

    __slots__ = ("algebra", "basis_tag", "coords")

    def __init__(self, algebra, basis_tag: str, coords: dict):
        self.algebra = algebra
        self.basis_tag = basis_tag
        self.coords = {x: c for x, c in coords.items() if c}

    def coeff(self, x: CoxeterElement) -> LaurentPolynomial:
        return self.coords.get(x, LaurentPolynomial.zero())

    def support(self):
        return set(self.coords)

    def __add__(self, other):
        self._check(other)
        c = dict(self.coords)
        for x, a in other.coords.items():
            b = c.get(x)
            c[x] = a if b is None else b + a
        return HeckeElement(self.algebra, self.basis_tag, c)

    def __sub__(self, other):
        self._check(other)
        c = dict(self.coords)
        for x, a in other.coords.items():
            b = c.get(x)
            c[x] = -a if b is None else b - a
        return HeckeElement(self.algebra, self.basis_tag, c)

    def __neg__(self):
        return HeckeElement(self.algebra, self.basis_tag,
                            {x: -a for x, a in self.coords.items()})

    def scale(self, f: LaurentPolynomial) -> "HeckeElement":
        return HeckeElement(self.algebra, self.basis_tag,
                            {x: a * f for x, a in self.coords.items()})

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        return self.algebra.multiply(self, other)

    def __eq__(self, other):
        return (isinstance(other, HeckeElement)
                and self.basis_tag == other.basis_tag
                and self.coords == other.coords)

    def __hash__(self):
        return hash((self.basis_tag, frozenset(self.coords.items())))

    def is_zero(self):
        return not self.coords

    def _check(self, other):
        if other.algebra is not self.algebra:
            raise ValueError("elements of different Hecke algebras")
        if other.basis_tag != self.basis_tag:
            raise ValueError("mixed bases; convert explicitly first")

    def __repr__(self):
        tag = {"standard": "d", "kl": "b"}[self.basis_tag]
        if not self.coords:
            return "0"
        parts = []
        for x in sorted(self.coords):
            c = self.coords[x]
            name = x.name() or "e"
            cs = str(c)
            parts.append(f"({cs})*{tag}_{name}" if cs != "1" else f"{tag}_{name}")
        return " + ".join(parts)


class HeckeAlgebra:
    """Arithmetic in H, the bar involution, and the KL basis."""

    def __init__(self, system: CoxeterSystem):
        self.system = system
        self._kl_cache: dict[CoxeterElement, HeckeElement] = {}
        self._bar_delta_cache: dict[CoxeterElement, HeckeElement] = {}

    # -- basic elements -------------------------------------------------

    def zero(self, basis_tag="standard"):
        return HeckeElement(self, basis_tag, {})

    def delta(self, x: CoxeterElement) -> HeckeElement:
        return HeckeElement(self, "standard", {x: _ONE})

    def one(self) -> HeckeElement:
        return self.delta(self.system.identity)

    def element(self, coords: dict, basis_tag="standard") -> HeckeElement:
        return HeckeElement(self, basis_tag, coords)

    # -- multiplication ---------------------------------------------------

    def _mult_right_gen(self, coords: dict, s: int) -> dict:
        """Multiply sum c_w delta_w by delta_s on the right."""
        sy = self.system
        out: dict = {}
        for w, c in coords.items():
            ws = sy.mult_gen(w, s)
            if ws.length > w.length:
                a = out.get(ws)
                out[ws] = c if a is None else a + c
            else:
                a = out.get(ws)
                out[ws] = c if a is None else a + c
                extra = c * _QUAD
                a = out.get(w)
                out[w] = extra if a is None else a + extra
        return {w: c for w, c in out.items() if c}

    def multiply(self, a: HeckeElement, b: HeckeElement) -> HeckeElement:
        if a.algebra is not self or b.algebra is not self:
            raise ValueError("elements of different Hecke algebras")
        if a.basis_tag != "standard" or b.basis_tag != "standard":
            a = self.to_standard(a)
            b = self.to_standard(b)
        out: dict = {}
        for y, cy in b.coords.items():
            coords = dict(a.coords)
            for s in y.word:
                coords = self._mult_right_gen(coords, s)
            for w, c in coords.items():
                term = c * cy
                prev = out.get(w)
                out[w] = term if prev is None else prev + term
        return HeckeElement(self, "standard", out)

    def product_of_generators(self, word, kl: bool = True) -> HeckeElement:
        """prod_i b_{s_i} (or prod_i delta_{s_i}) in standard coordinates."""
        sy = self.system
        coords = {sy.identity: _ONE}
        for s in word:
            nxt = self._mult_right_gen(coords, s)
            if kl:
                # right multiplication by b_s = delta_s + v
                for w, c in coords.items():
                    vc = c * V
                    prev = nxt.get(w)
                    nxt[w] = vc if prev is None else prev + vc
            coords = {w: c for w, c in nxt.items() if c}
        return HeckeElement(self, "standard", coords)

    # -- bar involution ----------------------------------------------------

    def _bar_delta(self, x: CoxeterElement) -> HeckeElement:
        """bar(delta_x) = bar(delta_s1) ... bar(delta_sk) in standard coords."""
        cached = self._bar_delta_cache.get(x)
        if cached is not None:
            return cached
        if x is self.system.identity:
            res = self.one()
        else:
            s = x.word[-1]
            rest = self.system.mult_gen(x, s)
            left = self._bar_delta(rest)
            # multiply by bar(delta_s) = delta_s + (v - v^-1)
            coords = self._mult_right_gen(left.coords, s)
            for w, c in left.coords.items():
                extra = c * _BARQUAD
                prev = coords.get(w)
                coords[w] = extra if prev is None else prev + extra
            res = HeckeElement(self, "standard", coords)
        self._bar_delta_cache[x] = res
        return res

    def bar(self, a: HeckeElement) -> HeckeElement:
        """The ring involution d: v -> v^-1, delta_s -> delta_s + (v - v^-1)."""
        a = self.to_standard(a)
        out = self.zero()
        for x, c in a.coords.items():
            out = out + self._bar_delta(x).scale(c.bar())
        return out

    # -- Kazhdan-Lusztig basis ----------------------------------------------

    def kl_basis_element(self, x: CoxeterElement) -> HeckeElement:
        """b_x in standard coordinates (memoized induction over length)."""
        cached = self._kl_cache.get(x)
        if cached is not None:
            return cached
        sy = self.system
        if x is sy.identity:
            res = self.one()
        else:
            s = x.word[0]
            sx = sy.gen_mult(s, x)            # shorter by 1
            b_sx = self.kl_basis_element(sx)
            bs = self.element({sy.generator(s): _ONE, sy.identity: V})
            res = self.multiply(bs, b_sx)
            # b_x = b_s b_sx - sum_{y < sx, sy < y} mu(y, sx) b_y
            for y, hy in list(b_sx.coords.items()):
                if y is sx:
                    continue
                if s in y.left_descents():
                    m = hy.coeff(1)
                    if m:
                        res = res - self.kl_basis_element(y).scale(
                            LaurentPolynomial.from_int(m))
            # degree bound check: h_{y,x} in vZ[v] for y < x
            for y, c in res.coords.items():
                if y is not x and not c.in_v_times_poly():
                    raise AssertionError(
                        f"KL degree bound violated at h_{{{y!r},{x!r}}} = {c}")
        self._kl_cache[x] = res
        return res

    def h(self, y: CoxeterElement, x: CoxeterElement) -> LaurentPolynomial:
        """The KL polynomial h_{y,x}."""
        return self.kl_basis_element(x).coeff(y)

    def mu_coefficient(self, y: CoxeterElement, x: CoxeterElement) -> int:
        """Coefficient of v in h_{y,x}; requires y < x."""
        if not (self.system.bruhat_leq(y, x) and y is not x):
            raise ValueError("mu(y, x) requires y < x in Bruhat order")
        return self.h(y, x).coeff(1)

    def kl_element(self, x: CoxeterElement) -> HeckeElement:
        """b_x as a kl-basis tagged element."""
        return HeckeElement(self, "kl", {x: _ONE})

    # -- basis conversions ----------------------------------------------------

    def to_kl(self, a: HeckeElement) -> HeckeElement:
        if a.basis_tag == "kl":
            return a
        rest = dict(a.coords)
        out: dict = {}
        while rest:
            x = max(rest)
            c = rest.pop(x)
            if not c:
                continue
            out[x] = c
            for y, hy in self.kl_basis_element(x).coords.items():
                if y is x:
                    continue
                prev = rest.get(y, LaurentPolynomial.zero())
                rest[y] = prev - c * hy
            rest = {y: d for y, d in rest.items() if d}
        return HeckeElement(self, "kl", out)

    def to_standard(self, a: HeckeElement) -> HeckeElement:
        if a.basis_tag == "standard":
            return a
        out = self.zero()
        for x, c in a.coords.items():
            out = out + self.kl_basis_element(x).scale(c)
        return out

    # -- inversion formula verifier ---------------------------------------------

    def verify_inversion(self, max_size: int = 200_000) -> "InversionReport":
        """Check sum_y (-1)^{l(x)+l(y)} h_{y,x} h_{y w0, z w0} = delta_{x,z}
        over all pairs (x, z) of a finite system."""
        sy = self.system
        elements = sy.enumerate_all(max_size)
        w0 = max(elements, key=lambda e: e.length)
        # precompute b-columns
        cols = {x: self.kl_basis_element(x).coords for x in elements}
        failures = []
        zero = LaurentPolynomial.zero()
        one = LaurentPolynomial.one()
        for x in elements:
            hx = cols[x]
            for z in elements:
                zw0 = sy.multiply(z, w0)
                hz = cols[zw0]
                total = zero
                for y, hyx in hx.items():
                    hy2 = hz.get(sy.multiply(y, w0))
                    if hy2 is None:
                        continue
                    term = hyx * hy2
                    if (x.length + y.length) % 2:
                        term = -term
                    total = total + term
                expected = one if x is z else zero
                if total != expected:
                    failures.append((x, z, total))
        return InversionReport(sy, len(elements), failures)


class InversionReport:
    def __init__(self, system, group_size, failures):
        self.system = system
        self.group_size = group_size
        self.failures = failures

    @property
    def ok(self) -> bool:
        return not self.failures

    def __repr__(self):
        state = "ok" if self.ok else f"{len(self.failures)} failures"
        return (f"InversionReport({self.system!r}, {self.group_size}^2 pairs,"
                f" {state})")
