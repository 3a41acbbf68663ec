"""Coxeter systems derived from generalized Cartan matrices.

Elements act faithfully on the root lattice Z^S (basis = simple roots,
s(alpha_t) = alpha_t - c_st * alpha_s with c_st = <alpha_s^vee, alpha_t>),
so an element is identified with its integer matrix.  The canonical word
of an element is the lexicographically least reduced word under the fixed
generator order of the input; all tie-breaking in the package derives
from it.

Braid orders come out of the Cartan entries: c_st * c_ts in {0,1,2,3}
gives m_st in {2,3,4,6}, anything >= 4 gives an infinite bond.
"""

from __future__ import annotations


INFINITY = 0  # sentinel braid order for m_st = infinity


def braid_order(cst: int, cts: int) -> int:
    p = cst * cts
    if p == 0:
        return 2
    if p == 1:
        return 3
    if p == 2:
        return 4
    if p == 3:
        return 6
    return INFINITY


class CartanMatrixError(ValueError):
    pass


class GeneralizedCartanMatrix:
    """Integer matrix c[s][t] with c[s][s]=2, c[s][t]<=0 off-diagonal and
    zero-symmetry c[s][t]=0 iff c[t][s]=0."""

    def __init__(self, entries, generators=None):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise CartanMatrixError("Cartan matrix must be square")
        for i in range(n):
            if rows[i][i] != 2:
                raise CartanMatrixError(f"diagonal entry c[{i}][{i}] must be 2")
            for j in range(n):
                if i != j:
                    if rows[i][j] > 0:
                        raise CartanMatrixError(
                            f"off-diagonal entry c[{i}][{j}] must be nonpositive")
                    if (rows[i][j] == 0) != (rows[j][i] == 0):
                        raise CartanMatrixError(
                            f"zero-symmetry fails at ({i},{j})")
        self.entries = rows
        self.rank = n
        if generators is None:
            generators = default_generator_names(n)
        if len(generators) != n:
            raise CartanMatrixError("generator name count mismatch")
        self.generators = tuple(str(g) for g in generators)
        self.m = tuple(
            tuple(2 if i == j and False else
                  (1 if i == j else braid_order(rows[i][j], rows[j][i]))
                  for j in range(n))
            for i in range(n)
        )

    def braid_m(self, s: int, t: int) -> int:
        """Order of st in W (INFINITY sentinel for infinite)."""
        return self.m[s][t]

    def __eq__(self, other):
        return (isinstance(other, GeneralizedCartanMatrix)
                and self.entries == other.entries
                and self.generators == other.generators)

    def __hash__(self):
        return hash((self.entries, self.generators))

    def __repr__(self):
        return f"GeneralizedCartanMatrix({list(map(list, self.entries))})"


def default_generator_names(n: int) -> tuple[str, ...]:
    if n == 1:
        return ("s",)
    if n == 2:
        return ("s", "t")
    return tuple(f"s{i + 1}" for i in range(n))


def _mat_mul(a, b, n):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


class CoxeterElement:
    """A group element in canonical normal form.

    `matrix` is the action on the root lattice (columns = images of the
    simple roots); `word` is the lex-least reduced word, `length` its
    length.  Instances are interned per system, so identity comparison
    is equality.
    """

    __slots__ = ("system", "matrix", "inv_matrix", "word", "_inverse")

    def __init__(self, system, matrix, inv_matrix, word):
        self.system = system
        self.matrix = matrix
        self.inv_matrix = inv_matrix
        self.word = word
        self._inverse = None

    @property
    def length(self) -> int:
        return len(self.word)

    def right_descents(self) -> frozenset[int]:
        return self.system.right_descent_set(self)

    def left_descents(self) -> frozenset[int]:
        return self.system.left_descent_set(self)

    def apply_to_root(self, vec: tuple[int, ...]) -> tuple[int, ...]:
        """Image of a root-lattice vector under this element."""
        m = self.matrix
        n = self.system.rank
        return tuple(sum(m[i][j] * vec[j] for j in range(n)) for i in range(n))

    def inverse(self) -> "CoxeterElement":
        if self._inverse is None:
            self._inverse = self.system._intern(self.inv_matrix, self.matrix)
        return self._inverse

    def __mul__(self, other: "CoxeterElement") -> "CoxeterElement":
        return self.system.multiply(self, other)

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return hash((id(self.system), self.matrix))

    def __lt__(self, other):
        return (self.length, self.word) < (other.length, other.word)

    def name(self) -> str:
        return self.system.word_name(self.word)

    def __repr__(self):
        return f"<{self.name() or 'e'}>"


class CoxeterSystem:
    """A Coxeter system (W, S) presented by a generalized Cartan matrix."""

    def __init__(self, cartan: GeneralizedCartanMatrix):
        self.cartan = cartan
        self.rank = cartan.rank
        n = self.rank
        c = cartan.entries
        # generator matrices: column t of M_s is s(alpha_t) = alpha_t - c_st alpha_s
        self.gen_matrices = []
        for s in range(n):
            m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
            for t in range(n):
                m[s][t] -= c[s][t]
            self.gen_matrices.append(tuple(tuple(row) for row in m))
        ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        self._elements: dict[tuple, CoxeterElement] = {}
        self.identity = CoxeterElement(self, ident, ident, ())
        self._elements[ident] = self.identity
        self._bruhat_cache: dict[tuple, bool] = {}
        self._redex_cache: dict[CoxeterElement, tuple] = {}
        self._subexpr_cache: dict[tuple, list] = {}
        self._prod_gen_cache: dict[tuple, CoxeterElement] = {}

    # -- element construction ---------------------------------------

    def _intern(self, matrix, inv_matrix) -> CoxeterElement:
        el = self._elements.get(matrix)
        if el is None:
            word = self._normal_form_of(matrix, inv_matrix)
            el = CoxeterElement(self, matrix, inv_matrix, word)
            self._elements[matrix] = el
        return el

    def _normal_form_of(self, matrix, inv_matrix) -> tuple[int, ...]:
        # Greedy: the lex-least reduced word takes the least left descent
        # at each step.  s is a left descent of w iff w^-1(alpha_s) < 0,
        # i.e. column s of the inverse matrix is nonpositive.
        n = self.rank
        word = []
        mat, inv = matrix, inv_matrix
        while True:
            s = -1
            for j in range(n):
                col_negative = False
                for i in range(n):
                    x = inv[i][j]
                    if x < 0:
                        col_negative = True
                        break
                    if x > 0:
                        break
                if col_negative:
                    s = j
                    break
            if s < 0:
                break
            word.append(s)
            g = self.gen_matrices[s]
            mat = _mat_mul(g, mat, n)
            inv = _mat_mul(inv, g, n)
        return tuple(word)

    def generator(self, s: int) -> CoxeterElement:
        g = self.gen_matrices[s]
        return self._intern(g, g)

    def mult_gen(self, x: CoxeterElement, s: int) -> CoxeterElement:
        """x * s, right multiplication by a generator."""
        key = (x, s)
        el = self._prod_gen_cache.get(key)
        if el is None:
            n = self.rank
            g = self.gen_matrices[s]
            el = self._intern(_mat_mul(x.matrix, g, n), _mat_mul(g, x.inv_matrix, n))
            self._prod_gen_cache[key] = el
        return el

    def gen_mult(self, s: int, x: CoxeterElement) -> CoxeterElement:
        """s * x, left multiplication by a generator."""
        n = self.rank
        g = self.gen_matrices[s]
        return self._intern(_mat_mul(g, x.matrix, n), _mat_mul(x.inv_matrix, g, n))

    def product_of_word(self, word) -> CoxeterElement:
        el = self.identity
        for s in word:
            if not 0 <= s < self.rank:
                raise ValueError(f"unknown generator index {s}")
            el = self.mult_gen(el, s)
        return el

    def normal_form(self, word) -> CoxeterElement:
        """Canonical element equal to the product of the letters."""
        return self.product_of_word(word)

    def multiply(self, x: CoxeterElement, y: CoxeterElement) -> CoxeterElement:
        if x.system is not self or y.system is not self:
            raise ValueError("elements from different Coxeter systems")
        n = self.rank
        return self._intern(_mat_mul(x.matrix, y.matrix, n),
                            _mat_mul(y.inv_matrix, x.inv_matrix, n))

    # -- descents -----------------------------------------------------

    def right_descent_set(self, x: CoxeterElement) -> frozenset[int]:
        # s is a right descent iff x(alpha_s) < 0 iff column s of matrix
        # has a negative entry (roots are sign-coherent).
        out = []
        for s in range(self.rank):
            for i in range(self.rank):
                v = x.matrix[i][s]
                if v < 0:
                    out.append(s)
                    break
                if v > 0:
                    break
        return frozenset(out)

    def left_descent_set(self, x: CoxeterElement) -> frozenset[int]:
        out = []
        for s in range(self.rank):
            for i in range(self.rank):
                v = x.inv_matrix[i][s]
                if v < 0:
                    out.append(s)
                    break
                if v > 0:
                    break
        return frozenset(out)

    def is_right_ascent(self, x: CoxeterElement, s: int) -> bool:
        for i in range(self.rank):
            v = x.matrix[i][s]
            if v < 0:
                return False
            if v > 0:
                return True
        return True

    # -- Bruhat order --------------------------------------------------

    def bruhat_leq(self, y: CoxeterElement, x: CoxeterElement) -> bool:
        """True iff y <= x in Bruhat order (subword criterion)."""
        if y.system is not self or x.system is not self:
            raise ValueError("elements from different Coxeter systems")
        if y.length > x.length:
            return False
        if y is x or y is self.identity:
            return True
        key = (y, x)
        cached = self._bruhat_cache.get(key)
        if cached is not None:
            return cached
        # lifting property along a right descent s of x
        s = x.word[-1]
        xs = self.mult_gen(x, s)
        ys = self.mult_gen(y, s)
        if ys.length < y.length:
            res = self.bruhat_leq(ys, xs)
        else:
            res = self.bruhat_leq(y, xs)
        self._bruhat_cache[key] = res
        return res

    def bruhat_interval_below(self, x: CoxeterElement) -> list[CoxeterElement]:
        """All y <= x, sorted by (length, word)."""
        # elements below x = endpoints of subwords of any reduced word of x
        frontier = {self.identity}
        for s in x.word:
            new = set(frontier)
            for z in frontier:
                new.add(self.mult_gen(z, s))
            frontier = new
        return sorted(frontier)

    # -- reduced expressions -------------------------------------------

    def reduced_expressions(self, x: CoxeterElement) -> tuple[tuple[int, ...], ...]:
        """The complete set of reduced words for x."""
        cached = self._redex_cache.get(x)
        if cached is not None:
            return cached
        if x is self.identity:
            res = ((),)
        else:
            words = []
            for s in sorted(x.left_descents()):
                rest = self.gen_mult(s, x)
                for w in self.reduced_expressions(rest):
                    words.append((s,) + w)
            res = tuple(words)
        self._redex_cache[x] = res
        return res

    # -- subexpressions (Deodhar masks) ---------------------------------

    def subexpressions(self, word, cap: int = 24):
        """All masks of `word` with endpoint and defect.

        The mask walk at step i with running product z labels the step
        U if z*s_i > z, else D; contribution to the defect: U0 -> +1,
        D0 -> -1, U1 and D1 -> 0.  Bit i of the mask corresponds to
        letter i (1 << i).

        Returns a list of (mask, endpoint, defect), mask-ordered.
        """
        word = tuple(word)
        if len(word) > cap:
            raise ValueError(
                f"word length {len(word)} exceeds subexpression cap {cap}")
        key = word
        cached = self._subexpr_cache.get(key)
        if cached is not None:
            return cached
        states = [(self.identity, 0)]  # indexed by mask prefix value
        for i, s in enumerate(word):
            if not 0 <= s < self.rank:
                raise ValueError(f"unknown generator index {s}")
            new_states = [None] * (1 << (i + 1))
            for prefix, (z, d) in enumerate(states):
                up = self.is_right_ascent(z, s)
                zs = self.mult_gen(z, s)
                # bit 0 at position i: stay (U0 adds 1, D0 subtracts 1)
                new_states[prefix] = (z, d + 1) if up else (z, d - 1)
                # bit 1 at position i: move (U1/D1 contribute 0)
                new_states[prefix | (1 << i)] = (zs, d)
            states = new_states
        result = [(m, z, d) for m, (z, d) in enumerate(states)]
        self._subexpr_cache[key] = result
        return result

    def mask_endpoint(self, word, mask: int) -> CoxeterElement:
        el = self.identity
        for i, s in enumerate(word):
            if mask >> i & 1:
                el = self.mult_gen(el, s)
        return el

    # -- enumeration -----------------------------------------------------

    def ball(self, length_cap: int, max_size: int = 2_000_000) -> list[CoxeterElement]:
        """All elements of length <= length_cap, sorted by (length, word)."""
        out = [self.identity]
        frontier = [self.identity]
        for _ in range(length_cap):
            new = []
            seen = set()
            for x in frontier:
                for s in range(self.rank):
                    if self.is_right_ascent(x, s):
                        y = self.mult_gen(x, s)
                        if y not in seen:
                            seen.add(y)
                            new.append(y)
            out.extend(new)
            if len(out) > max_size:
                raise ValueError("enumeration safety bound exceeded")
            frontier = new
            if not frontier:
                break
        return sorted(out)

    def is_finite(self, max_size: int = 200_000) -> bool:
        try:
            self.enumerate_all(max_size)
            return True
        except ValueError:
            return False

    def enumerate_all(self, max_size: int = 200_000) -> list[CoxeterElement]:
        """All elements of a finite system, sorted; raises if infinite/huge."""
        cached = getattr(self, "_all_elements", None)
        if cached is not None:
            return cached
        out = [self.identity]
        frontier = [self.identity]
        while frontier:
            new = []
            seen = set()
            for x in frontier:
                for s in range(self.rank):
                    if self.is_right_ascent(x, s):
                        y = self.mult_gen(x, s)
                        if y not in seen:
                            seen.add(y)
                            new.append(y)
            out.extend(new)
            if len(out) > max_size:
                raise ValueError(
                    "group appears infinite (safety bound exceeded)")
            frontier = new
        out = sorted(out)
        self._all_elements = out
        return out

    def longest_element(self) -> CoxeterElement:
        els = self.enumerate_all()
        return max(els, key=lambda x: x.length)

    # -- parabolic data ---------------------------------------------------

    def parabolic_data(self, I, cap: int | None = None,
                       max_size: int = 200_000) -> "ParabolicData":
        I = frozenset(I)
        for s in I:
            if not 0 <= s < self.rank:
                raise ValueError(f"unknown generator index {s}")
        # enumerate W_I by restricting steps to I
        elements = [self.identity]
        frontier = [self.identity]
        while frontier:
            new = []
            seen = set()
            for x in frontier:
                for s in I:
                    if self.is_right_ascent(x, s):
                        y = self.mult_gen(x, s)
                        if y not in seen:
                            seen.add(y)
                            new.append(y)
            elements.extend(new)
            if len(elements) > max_size:
                raise ValueError("W_I is infinite (safety bound exceeded)")
            frontier = new
        longest = max(elements, key=lambda x: x.length)
        min_reps = None
        if cap is not None:
            min_reps = [x for x in self.ball(cap)
                        if all(self.is_right_ascent(x, s) for s in I)]
        return ParabolicData(self, I, longest, min_reps,
                             frozenset(elements))

    def is_min_coset_rep(self, x: CoxeterElement, I) -> bool:
        return all(self.is_right_ascent(x, s) for s in I)

    # -- misc ---------------------------------------------------------

    def word_name(self, word) -> str:
        names = self.cartan.generators
        if all(len(n) == 1 for n in names):
            return "".join(names[s] for s in word)
        return ".".join(names[s] for s in word)

    def parse_word(self, text: str) -> tuple[int, ...]:
        """Inverse of word_name: '' is the identity."""
        names = self.cartan.generators
        if text in ("", "e"):
            return ()
        index = {n: i for i, n in enumerate(names)}
        if "." in text or any(len(n) > 1 for n in names):
            parts = text.split(".")
        else:
            parts = list(text)
        try:
            return tuple(index[p] for p in parts)
        except KeyError as exc:
            raise ValueError(f"unknown generator name {exc.args[0]!r}") from None

    def __repr__(self):
        return f"CoxeterSystem({self.cartan.generators})"


class ParabolicData:
    """Longest element and minimal coset representatives for W_I."""

    def __init__(self, system, I, longest_element, min_reps, elements):
        self.system = system
        self.I = I
        self.longest_element = longest_element
        self.min_reps = min_reps
        self.elements = elements

    def __repr__(self):
        return (f"ParabolicData(I={sorted(self.I)}, "
                f"w_I={self.longest_element!r})")
