"""Exact multivariate polynomials over Z, graded with deg(linear) = 2.

Monomials are exponent tuples; coefficients are Python integers.  The
only division ever needed is by a primitive linear form, which is done
exactly through a unimodular change of coordinates, so no general
multivariate gcd machinery is required.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class GradedPolynomial:
    __slots__ = ("nvars", "_c")

    def __init__(self, nvars: int, coeffs: dict | None = None):
        self.nvars = nvars
        c = {}
        if coeffs:
            for m, a in coeffs.items():
                if a:
                    c[tuple(m)] = a
        self._c = c

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "GradedPolynomial":
        return GradedPolynomial(nvars)

    @staticmethod
    def const(nvars: int, a: int) -> "GradedPolynomial":
        return GradedPolynomial(nvars, {(0,) * nvars: a})

    @staticmethod
    def linear(coeffs) -> "GradedPolynomial":
        """The linear form sum coeffs[i] * x_i."""
        coeffs = tuple(coeffs)
        n = len(coeffs)
        d = {}
        for i, a in enumerate(coeffs):
            if a:
                m = [0] * n
                m[i] = 1
                d[tuple(m)] = a
        return GradedPolynomial(n, d)

    # -- inspection --------------------------------------------------

    def items(self):
        return self._c.items()

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self._c)

    def constant_value(self) -> int:
        if not self._c:
            return 0
        if self.is_constant():
            return self._c[(0,) * self.nvars]
        raise ValueError(f"not a constant polynomial: {self}")

    def content(self) -> int:
        g = 0
        for a in self._c.values():
            g = gcd(g, a)
        return g

    def graded_degree(self) -> int | None:
        """2 * total monomial degree; None for 0, raises if inhomogeneous."""
        if not self._c:
            return None
        degs = {sum(m) for m in self._c}
        if len(degs) != 1:
            raise ValueError(f"inhomogeneous polynomial: {self}")
        return 2 * degs.pop()

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._c}) <= 1

    def linear_coeffs(self) -> tuple[int, ...]:
        """Coefficient vector, assuming the polynomial is a linear form."""
        out = [0] * self.nvars
        for m, a in self._c.items():
            if sum(m) != 1:
                raise ValueError(f"not a linear form: {self}")
            out[m.index(1)] = a
        return tuple(out)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        c = dict(self._c)
        for m, a in other._c.items():
            b = c.get(m, 0) + a
            if b:
                c[m] = b
            elif m in c:
                del c[m]
        out = GradedPolynomial.__new__(GradedPolynomial)
        out.nvars = self.nvars
        out._c = c
        return out

    def __neg__(self):
        out = GradedPolynomial.__new__(GradedPolynomial)
        out.nvars = self.nvars
        out._c = {m: -a for m, a in self._c.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return GradedPolynomial(self.nvars)
            out = GradedPolynomial.__new__(GradedPolynomial)
            out.nvars = self.nvars
            out._c = {m: a * other for m, a in self._c.items()}
            return out
        c: dict = {}
        for m1, a1 in self._c.items():
            for m2, a2 in other._c.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                b = c.get(m, 0) + a1 * a2
                if b:
                    c[m] = b
                elif m in c:
                    del c[m]
        out = GradedPolynomial.__new__(GradedPolynomial)
        out.nvars = self.nvars
        out._c = c
        return out

    __rmul__ = __mul__

    def substitute_linear(self, images: list["GradedPolynomial"]) -> "GradedPolynomial":
        """Replace x_i by images[i] (ring map determined on variables)."""
        out = GradedPolynomial(self.nvars if not images else images[0].nvars)
        nv = out.nvars
        for m, a in self._c.items():
            term = GradedPolynomial.const(nv, a)
            for i, e in enumerate(m):
                for _ in range(e):
                    term = term * images[i]
            out = out + term
        return out

    def evaluate(self, point) -> Fraction | int:
        total = 0
        for m, a in self._c.items():
            v = a
            for i, e in enumerate(m):
                if e:
                    v *= point[i] ** e
            total += v
        return total

    # -- division by a primitive linear form ---------------------------

    def divide_by_linear(self, form: tuple[int, ...]) -> "GradedPolynomial":
        """Exact division by a primitive linear form; raises if inexact."""
        q = self.divide_by_linear_or_none(form)
        if q is None:
            raise ValueError(f"{self} is not divisible by {form}")
        return q

    def divide_by_linear_or_none(self, form):
        if self.is_zero():
            return self
        U = _completion_matrix(tuple(form))
        # in y-coordinates with y_1 = form: x = U y
        images = [GradedPolynomial.linear(U[i]) for i in range(self.nvars)]
        g = self.substitute_linear(images)
        qc = {}
        for m, a in g._c.items():
            if m[0] == 0:
                return None
            qc[(m[0] - 1,) + m[1:]] = a
        q = GradedPolynomial(self.nvars, qc)
        # back to x-coordinates: y = A x with A = U^-1
        A = _int_inverse(U)
        return q.substitute_linear([GradedPolynomial.linear(A[i])
                                    for i in range(self.nvars)])

    # -- protocol -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self._c == ({(0,) * self.nvars: other} if other else {})
        return isinstance(other, GradedPolynomial) and self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __bool__(self):
        return bool(self._c)

    def __repr__(self):
        if not self._c:
            return "0"
        parts = []
        for m in sorted(self._c, reverse=True):
            a = self._c[m]
            vs = "*".join(f"x{i}" + (f"^{e}" if e > 1 else "")
                          for i, e in enumerate(m) if e)
            if not vs:
                parts.append(str(a))
            elif a == 1:
                parts.append(vs)
            elif a == -1:
                parts.append(f"-{vs}")
            else:
                parts.append(f"{a}*{vs}")
        return " + ".join(parts).replace("+ -", "- ")


def canonical_linear_form(form) -> tuple[tuple[int, ...], int, int]:
    """Primitive representative with positive leading sign.

    Returns (canonical_form, content, sign) with
    form = sign * content * canonical_form.
    """
    form = tuple(form)
    g = 0
    for a in form:
        g = gcd(g, a)
    if g == 0:
        raise ValueError("zero linear form")
    lead = next(a for a in form if a)
    sign = 1 if lead > 0 else -1
    return tuple(a // (sign * g) for a in form), g, sign


def _ext_gcd(a: int, b: int):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


_completion_cache: dict = {}


def _completion_matrix(form: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """A unimodular U with (form) . U = e_1, returned as rows of U."""
    cached = _completion_cache.get(form)
    if cached is not None:
        return cached
    n = len(form)
    # column operations reducing `form` to e_1, recorded on the identity
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    v = list(form)

    def colop(i, j, a, b, c, d):
        # (col_i, col_j) <- (a col_i + c col_j, b col_i + d col_j)
        for r in range(n):
            U[r][i], U[r][j] = a * U[r][i] + c * U[r][j], b * U[r][i] + d * U[r][j]
        v[i], v[j] = a * v[i] + c * v[j], b * v[i] + d * v[j]

    for j in range(1, n):
        if v[j] == 0:
            continue
        g, x, y = _ext_gcd(v[0], v[j])
        # new col0 = x*col0 + y*colj ; new colj = -(v[j]/g)*col0 + (v[0]/g)*colj
        a, c = x, y
        b, d = -(v[j] // g), v[0] // g
        colop(0, j, a, b, c, d)
    if v[0] == -1:
        for r in range(n):
            U[r][0] = -U[r][0]
        v[0] = 1
    if v[0] != 1:
        raise ValueError(f"linear form {form} is not primitive")
    res = tuple(tuple(row) for row in U)
    _completion_cache[form] = res
    return res


def _int_inverse(rows) -> tuple[tuple[int, ...], ...]:
    """Inverse of a unimodular integer matrix (given as rows)."""
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(rows)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            x = a[i][n + j]
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            row.append(int(x))
        out.append(tuple(row))
    return tuple(out)
