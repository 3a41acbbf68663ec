"""Scalar domains for the localization calculus.

Matrix entries of localized morphisms live in the fraction field of the
realization's polynomial ring.  Two interchangeable backends implement
the operations the calculus needs:

* SymbolicDomain: exact rational functions (the contractual default);
* PointDomain: exact evaluation at a fixed generic integer point with the
  homogeneity degree carried alongside.  All final intersection-form
  entries are degree-0 constants, so their pointwise values are exact;
  a zero denominator (non-generic point) raises DegeneratePoint and the
  caller retries with a fresh point.

Generator entries are universal rational functions in two variables
(a, b) = (alpha_s, alpha_t); using them at a twisted position means
substituting the roots w(alpha_s), w(alpha_t).
"""

from __future__ import annotations

from fractions import Fraction

from .polynomials import GradedPolynomial
from .ratfun import RationalFunction


class DegeneratePoint(ZeroDivisionError):
    """The evaluation point hit a root hyperplane; retry with another."""


class SmallRat:
    """A universal generator entry: rational function in (a, b) with the
    denominator a product of linear forms times an integer."""

    __slots__ = ("num", "den_factors", "den_int", "degree")

    def __init__(self, num: GradedPolynomial, den_factors=(), den_int=1):
        rf = RationalFunction(num, den_factors, den_int)
        self.num = rf.num
        self.den_factors = rf.den_factors
        self.den_int = rf.den_int
        self.degree = rf.graded_degree()

    @staticmethod
    def const(c: int, den: int = 1) -> "SmallRat":
        return SmallRat(GradedPolynomial.const(2, c), (), den)

    @staticmethod
    def from_rf(rf: RationalFunction) -> "SmallRat":
        return SmallRat(rf.num, rf.den_factors, rf.den_int)

    def __repr__(self):
        return f"SmallRat({RationalFunction(self.num, self.den_factors, self.den_int)!r})"


class SymbolicDomain:
    """Scalars are RationalFunction over the realization's variables."""

    kind = "symbolic"

    def __init__(self, realization):
        self.realization = realization
        self.nvars = realization.rank
        self.zero = RationalFunction.zero(self.nvars)
        self._one = RationalFunction.from_int(self.nvars, 1)
        self._gen_cache: dict = {}

    def one(self):
        return self._one

    def from_int(self, n: int):
        return RationalFunction.from_int(self.nvars, n)

    def add(self, x, y):
        return x + y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def eq(self, x, y) -> bool:
        return x == y

    def root_form(self, w, s) -> tuple[int, ...]:
        return self.realization.root_vector(w, s)

    def gen_value(self, entry: SmallRat, twist, s: int, t: int | None):
        key = (id(entry), twist, s, t)
        cached = self._gen_cache.get(key)
        if cached is not None:
            return cached
        fa = self.root_form(twist, s)
        fb = self.root_form(twist, t) if t is not None else (0,) * self.nvars
        images = [GradedPolynomial.linear(fa), GradedPolynomial.linear(fb)]
        num = entry.num.substitute_linear(images)
        den = []
        for form, power in entry.den_factors:
            amb = tuple(form[0] * x + form[1] * y for x, y in zip(fa, fb))
            den.append((amb, power))
        val = RationalFunction(num, tuple(den), entry.den_int)
        self._gen_cache[key] = val
        return val

    def factored(self, num_roots, den_roots, num_int: int = 1, den_int: int = 1):
        """Product of root values: num_roots/den_roots are (w, s) specs."""
        out = RationalFunction.from_int(self.nvars, num_int).div_int(den_int)
        for w, s in num_roots:
            out = out.mul_form(self.root_form(w, s), 1)
        for w, s in den_roots:
            out = out.mul_form(self.root_form(w, s), -1)
        return out

    def twist(self, x, w):
        """Apply the ring action of w to a scalar."""
        m = self.realization.action_matrix(w)
        images = [GradedPolynomial.linear(tuple(m[i][j] for i in range(self.nvars)))
                  for j in range(self.nvars)]
        return x.substitute_linear(images)

    def degree_of(self, x):
        return x.graded_degree()

    def check_degree(self, x, expected: int):
        d = x.graded_degree()
        if d is not None and d != expected:
            raise AssertionError(
                f"inhomogeneous entry: degree {d}, expected {expected}")

    def as_integer(self, x) -> int:
        if x.is_zero():
            return 0
        if x.den_factors:
            d = x.den_poly()
            q = x.num
            for form, power in x.den_factors:
                for _ in range(power):
                    q = q.divide_by_linear(form)
            val = q
        else:
            val = x.num
        c = val.constant_value()
        if c % x.den_int:
            raise AssertionError(f"non-integer intersection entry {x!r}")
        return c // x.den_int


class PointDomain:
    """Scalars are (Fraction value, graded degree) pairs; zero is (0, None)."""

    kind = "point"
    ZERO = (0, None)

    def __init__(self, realization, point):
        self.realization = realization
        self.nvars = realization.rank
        self.point = tuple(point)
        self.zero = (0, None)
        self._root_cache: dict = {}
        self._gen_cache: dict = {}

    def one(self):
        return (1, 0)

    def from_int(self, n: int):
        return (n, 0) if n else self.zero

    def add(self, x, y):
        vx, dx = x
        vy, dy = y
        if not vx:
            return y
        if not vy:
            return x
        if dx != dy:
            raise AssertionError(
                f"inhomogeneous sum: degrees {dx} and {dy}")
        v = vx + vy
        return (v, dx) if v else self.zero

    def mul(self, x, y):
        vx, dx = x
        vy, dy = y
        if not vx or not vy:
            return self.zero
        return (vx * vy, dx + dy)

    def neg(self, x):
        v, d = x
        return (-v, d) if v else self.zero

    def is_zero(self, x) -> bool:
        return not x[0]

    def eq(self, x, y) -> bool:
        return x[0] == y[0]

    def root_value(self, w, s):
        key = (w, s)
        val = self._root_cache.get(key)
        if val is None:
            vec = self.realization.root_vector(w, s)
            val = sum(a * p for a, p in zip(vec, self.point))
            self._root_cache[key] = val
        return val

    def gen_value(self, entry: SmallRat, twist, s: int, t: int | None):
        key = (id(entry), twist, s, t)
        cached = self._gen_cache.get(key)
        if cached is not None:
            return cached
        a = self.root_value(twist, s)
        b = self.root_value(twist, t) if t is not None else 0
        num = entry.num.evaluate((a, b))
        den = entry.den_int
        for form, power in entry.den_factors:
            fv = form[0] * a + form[1] * b
            if fv == 0:
                raise DegeneratePoint(f"root hyperplane hit at twist {twist!r}")
            den *= fv ** power
        val = (Fraction(num, den), entry.degree) if num else self.zero
        self._gen_cache[key] = val
        return val

    def factored(self, num_roots, den_roots, num_int: int = 1, den_int: int = 1):
        num = num_int
        deg = 0
        for w, s in num_roots:
            v = self.root_value(w, s)
            if v == 0:
                raise DegeneratePoint("root hyperplane hit in gram factor")
            num *= v
            deg += 2
        den = den_int
        for w, s in den_roots:
            v = self.root_value(w, s)
            if v == 0:
                raise DegeneratePoint("root hyperplane hit in gram factor")
            den *= v
            deg -= 2
        return (Fraction(num, den), deg)

    def twist(self, x, w):
        raise NotImplementedError(
            "point evaluation cannot twist accumulated scalars; "
            "use the symbolic domain for generic tensor products")

    def degree_of(self, x):
        return x[1]

    def check_degree(self, x, expected: int):
        if x[0] and x[1] != expected:
            raise AssertionError(
                f"inhomogeneous entry: degree {x[1]}, expected {expected}")

    def as_integer(self, x) -> int:
        v, d = x
        if v and d != 0:
            raise AssertionError(f"intersection entry has degree {d}, not 0")
        f = Fraction(v)
        if f.denominator != 1:
            raise AssertionError(f"non-integer intersection entry {f}")
        return int(f)


def pick_point(rank: int, seed: int, attempt: int = 0):
    """Deterministic pseudo-random integer point, odd coordinates."""
    import random

    rng = random.Random((seed * 1_000_003 + attempt) & 0xFFFFFFFF)
    # large odd coordinates keep linear forms over Z away from zero
    return tuple(2 * rng.randint(10 ** 6, 10 ** 7) + 1 for _ in range(rank))
