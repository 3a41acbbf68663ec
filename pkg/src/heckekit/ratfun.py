"""Rational functions num/den over GradedPolynomial with denominators kept
as factored products of primitive linear forms times a positive integer.

Everything the localization calculus divides by is a product of roots
(linear forms) and integers, so fractions stay reducible by exact linear
division alone and equality is structural after normalization.
"""

from __future__ import annotations

from math import gcd

from .polynomials import GradedPolynomial, canonical_linear_form


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class RationalFunction:
    __slots__ = ("num", "den_factors", "den_int")

    def __init__(self, num: GradedPolynomial, den_factors=(), den_int: int = 1,
                 _normalized: bool = False):
        if _normalized:
            self.num = num
            self.den_factors = den_factors
            self.den_int = den_int
            return
        if den_int == 0:
            raise ZeroDivisionError("zero integer denominator")
        sign = 1 if den_int > 0 else -1
        den_int = abs(den_int)
        factors: dict[tuple, int] = {}
        for form, power in den_factors:
            cform, content, s = canonical_linear_form(form)
            if power < 0:
                raise ValueError("negative denominator power in constructor")
            den_int *= content ** power
            sign *= s ** power
            if power:
                factors[cform] = factors.get(cform, 0) + power
        num = num * sign
        if num.is_zero():
            self.num = num
            self.den_factors = ()
            self.den_int = 1
            return
        # cancel linear factors
        reduced: list = []
        for form, power in sorted(factors.items()):
            while power > 0:
                q = num.divide_by_linear_or_none(form)
                if q is None:
                    break
                num = q
                power -= 1
            if power:
                reduced.append((form, power))
        # cancel integer content
        g = gcd(num.content(), den_int)
        if g > 1:
            num = GradedPolynomial(num.nvars,
                                   {m: a // g for m, a in num.items()})
            den_int //= g
        self.num = num
        self.den_factors = tuple(reduced)
        self.den_int = den_int

    # -- constructors ----------------------------------------------------

    @staticmethod
    def from_poly(p: GradedPolynomial) -> "RationalFunction":
        return RationalFunction(p)

    @staticmethod
    def from_int(nvars: int, a: int) -> "RationalFunction":
        return RationalFunction(GradedPolynomial.const(nvars, a))

    @staticmethod
    def zero(nvars: int) -> "RationalFunction":
        return RationalFunction(GradedPolynomial.zero(nvars))

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def graded_degree(self) -> int | None:
        nd = self.num.graded_degree()
        if nd is None:
            return None
        return nd - 2 * sum(p for _, p in self.den_factors)

    def is_polynomial(self) -> bool:
        return not self.den_factors and self.den_int == 1

    def as_int(self) -> int:
        if self.den_factors or self.den_int != 1:
            raise ValueError(f"not an integer: {self}")
        return self.num.constant_value()

    def den_poly(self) -> GradedPolynomial:
        d = GradedPolynomial.const(self.nvars, self.den_int)
        for form, power in self.den_factors:
            lf = GradedPolynomial.linear(form)
            for _ in range(power):
                d = d * lf
        return d

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        afac = dict(self.den_factors)
        bfac = dict(other.den_factors)
        allf = sorted(set(afac) | set(bfac))
        aint, bint = self.den_int, other.den_int
        lint = _lcm(aint, bint)
        anum = self.num * (lint // aint)
        bnum = other.num * (lint // bint)
        den = []
        for f in allf:
            pa, pb = afac.get(f, 0), bfac.get(f, 0)
            p = max(pa, pb)
            den.append((f, p))
            lf = GradedPolynomial.linear(f)
            for _ in range(p - pa):
                anum = anum * lf
            for _ in range(p - pb):
                bnum = bnum * lf
        return RationalFunction(anum + bnum, tuple(den), lint)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RationalFunction(-self.num, self.den_factors, self.den_int,
                                _normalized=True)

    def __mul__(self, other):
        if isinstance(other, int):
            return RationalFunction(self.num * other, self.den_factors,
                                    self.den_int)
        if isinstance(other, GradedPolynomial):
            return RationalFunction(self.num * other, self.den_factors,
                                    self.den_int)
        den = list(self.den_factors)
        fac = dict(den)
        for f, p in other.den_factors:
            fac[f] = fac.get(f, 0) + p
        return RationalFunction(self.num * other.num,
                                tuple(sorted(fac.items())),
                                self.den_int * other.den_int)

    __rmul__ = __mul__

    def mul_form(self, form, power: int = 1) -> "RationalFunction":
        """Multiply by a linear form to an integer (possibly negative) power."""
        if self.is_zero() or power == 0:
            return self
        cform, content, sign = canonical_linear_form(form)
        num = self.num
        fac = dict(self.den_factors)
        den_int = self.den_int
        parity_sign = sign if power % 2 else 1
        if power > 0:
            cancel = min(power, fac.get(cform, 0))
            if cancel:
                fac[cform] -= cancel
                if not fac[cform]:
                    del fac[cform]
            lf = GradedPolynomial.linear(cform)
            for _ in range(power - cancel):
                num = num * lf
            num = num * (parity_sign * content ** power)
        else:
            fac[cform] = fac.get(cform, 0) - power
            num = num * parity_sign
            den_int *= content ** (-power)
        return RationalFunction(num, tuple(sorted(fac.items())), den_int)

    def div_int(self, n: int) -> "RationalFunction":
        return RationalFunction(self.num, self.den_factors, self.den_int * n)

    # -- group action -----------------------------------------------------------

    def substitute_linear(self, var_images) -> "RationalFunction":
        """Apply a linear change of variables (e.g. a reflection) to num and
        den; images of denominator factors must stay linear forms."""
        num = self.num.substitute_linear(var_images)
        den = []
        for form, power in self.den_factors:
            new = GradedPolynomial.linear(form).substitute_linear(var_images)
            den.append((new.linear_coeffs(), power))
        return RationalFunction(num, tuple(den), self.den_int)

    # -- protocol ------------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return (self.is_polynomial() and self.num == other)
        return (isinstance(other, RationalFunction)
                and self.num == other.num
                and self.den_factors == other.den_factors
                and self.den_int == other.den_int)

    def __hash__(self):
        return hash((self.num, self.den_factors, self.den_int))

    def __repr__(self):
        if self.is_polynomial():
            return repr(self.num)
        parts = []
        if self.den_int != 1:
            parts.append(str(self.den_int))
        for form, power in self.den_factors:
            lf = repr(GradedPolynomial.linear(form))
            parts.append(f"({lf})" + (f"^{power}" if power > 1 else ""))
        return f"({self.num!r}) / ({'*'.join(parts)})"
