"""Integer Laurent polynomials in the formal variable v.

The ground ring everywhere is Z[v, v^-1].  The bar involution sends
v to v^-1; the classical parameter q is the documented alias q = v^-2
and is never a second variable.
"""

from __future__ import annotations


class LaurentPolynomial:
    """Finitely supported map from integer exponents of v to integers.

    Immutable; zero coefficients are never stored.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: dict[int, int] | None = None):
        c = {}
        if coeffs:
            for e, a in coeffs.items():
                if a:
                    c[int(e)] = a
        self._c = c
        self._hash = None

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPolynomial":
        return _ZERO

    @staticmethod
    def one() -> "LaurentPolynomial":
        return _ONE

    @staticmethod
    def from_int(n: int) -> "LaurentPolynomial":
        return LaurentPolynomial({0: n})

    @staticmethod
    def monomial(exp: int, coeff: int = 1) -> "LaurentPolynomial":
        return LaurentPolynomial({exp: coeff})

    # -- inspection --------------------------------------------------

    def items(self):
        return self._c.items()

    def coeff(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._c

    def is_one(self) -> bool:
        return self._c == {0: 1}

    @property
    def min_exp(self) -> int:
        return min(self._c)

    @property
    def max_exp(self) -> int:
        return max(self._c)

    def constant_term(self) -> int:
        return self._c.get(0, 0)

    def in_v_times_poly(self) -> bool:
        """True iff the polynomial lies in vZ[v] (all exponents >= 1)."""
        return all(e >= 1 for e in self._c)

    def nonneg_coeffs(self) -> bool:
        return all(a >= 0 for a in self._c.values())

    def as_int(self) -> int:
        if not self._c:
            return 0
        if set(self._c) == {0}:
            return self._c[0]
        raise ValueError(f"not a constant: {self}")

    # -- arithmetic --------------------------------------------------

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        if not other._c:
            return self
        if not self._c:
            return other
        c = dict(self._c)
        for e, a in other._c.items():
            b = c.get(e, 0) + a
            if b:
                c[e] = b
            else:
                del c[e]
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out._c = c
        out._hash = None
        return out

    def __neg__(self) -> "LaurentPolynomial":
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out._c = {e: -a for e, a in self._c.items()}
        out._hash = None
        return out

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return _ZERO
            out = LaurentPolynomial.__new__(LaurentPolynomial)
            out._c = {e: a * other for e, a in self._c.items()}
            out._hash = None
            return out
        c: dict[int, int] = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                e = e1 + e2
                b = c.get(e, 0) + a1 * a2
                if b:
                    c[e] = b
                elif e in c:
                    del c[e]
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out._c = c
        out._hash = None
        return out

    __rmul__ = __mul__

    def bar(self) -> "LaurentPolynomial":
        """The involution v -> v^-1."""
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out._c = {-e: a for e, a in self._c.items()}
        out._hash = None
        return out

    def is_bar_symmetric(self) -> bool:
        return all(self._c.get(-e, 0) == a for e, a in self._c.items())

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by v^k."""
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out._c = {e + k: a for e, a in self._c.items()}
        out._hash = None
        return out

    # -- protocol ----------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._c.items())))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def __repr__(self):
        return f"LaurentPolynomial({self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            a = self._c[e]
            if e == 0:
                parts.append(f"{a}")
                continue
            va = "v" if e == 1 else f"v^{e}"
            if a == 1:
                parts.append(va)
            elif a == -1:
                parts.append(f"-{va}")
            else:
                parts.append(f"{a}{va}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    # -- serialization -----------------------------------------------

    def to_dict(self) -> dict[str, int]:
        return {str(e): a for e, a in sorted(self._c.items())}

    @staticmethod
    def from_dict(d: dict) -> "LaurentPolynomial":
        return LaurentPolynomial({int(e): int(a) for e, a in d.items()})


_ZERO = LaurentPolynomial({})
_ONE = LaurentPolynomial({0: 1})

V = LaurentPolynomial.monomial(1)
VINV = LaurentPolynomial.monomial(-1)
