"""The p-canonical basis via intersection-form ranks.

For a word w the Bott-Samelson object decomposes with graded multiplicities
m_y^j = rank over the coefficient field of the local intersection form of
w at (y, j); the recursion

    p_b_x = prod_i b_{s_i} - sum_{y < x} m_y(v) p_b_y     (w = lexleast(x))

then produces the p-canonical basis, its standard coefficients p_h and its
Kazhdan-Lusztig coefficients p_a.  Elementary divisors of the forms are
kept, so ranks at every characteristic (and the bad primes) come from a
single Smith normal form per (word, y, j).
"""

from __future__ import annotations

import zlib

from .coxeter import CoxeterElement
from .hecke import HeckeAlgebra, HeckeElement
from .laurent import LaurentPolynomial
from .lightleaves import LightLeafPlanner, LightLeaves, run_with_retries
from .localized import SoergelCalculus
from .parabolic import ANTISPHERICAL, SPHERICAL, ParabolicModule
from .scalars import SymbolicDomain
from .smith import prime_factors, rank_from_divisors, smith_divisors

_ONE = LaurentPolynomial.one()


class GradedMultiplicityTable:
    """For a word and a prime (0 = characteristic zero), the map
    (element y, degree j) -> multiplicity, with character-conservation and
    palindromicity built in."""

    def __init__(self, word, prime, entries):
        self.word = tuple(word)
        self.prime = prime
        self.entries = {k: v for k, v in entries.items() if v}

    def multiplicity(self, y, j) -> int:
        return self.entries.get((y, j), 0)

    def poly(self, y) -> LaurentPolynomial:
        return LaurentPolynomial({j: m for (z, j), m in self.entries.items()
                                  if z is y})

    def support(self):
        return sorted({y for (y, _) in self.entries})

    def __eq__(self, other):
        return (isinstance(other, GradedMultiplicityTable)
                and self.prime == other.prime
                and self.entries == other.entries)

    def __repr__(self):
        return (f"GradedMultiplicityTable({self.word}, p={self.prime}, "
                f"{self.entries})")


class PCanonicalColumn:
    """p_b_x expanded in both bases, with the elementary-divisor ledger of
    the intersection forms that produced it."""

    __slots__ = ("element", "prime", "ph", "pa", "divisors", "children")

    def __init__(self, element, prime, ph, pa, divisors, children):
        self.element = element
        self.prime = prime
        self.ph = ph          # y -> LaurentPolynomial
        self.pa = pa          # y -> LaurentPolynomial
        self.divisors = divisors      # (y, j) -> tuple of elementary divisors
        self.children = children      # elements subtracted in the recursion

    def __repr__(self):
        terms = []
        for y in sorted(self.pa):
            c = self.pa[y]
            name = y.name() or "e"
            terms.append(f"b_{{{name}}}" if c == _ONE else
                         f"({c})*b_{{{name}}}")
        return f"^{self.prime}b_{{{self.element.name() or 'e'}}} = " + \
            " + ".join(terms)


class DecompositionEngine:
    """Caches intersection-form elementary divisors per word.

    mode "point" evaluates scalars at deterministic generic integer points
    (exact; retried past root hyperplanes); mode "symbolic" keeps full
    rational functions.
    """

    def __init__(self, realization, mode: str = "point"):
        self.realization = realization
        self.system = realization.system
        self.mode = mode
        self.planner = LightLeafPlanner(self.system)
        self._forms: dict = {}

    def forms(self, word) -> dict:
        """word -> {y: {j >= 0: (divisors, nrows, ncols)}}"""
        word = tuple(word)
        cached = self._forms.get(word)
        if cached is not None:
            return cached

        def compute(domain):
            ctx = SoergelCalculus(self.realization, domain)
            ll = LightLeaves(ctx, self.planner)
            data = ll.intersection_entries(word)
            out = {}
            for y, by_j in data.items():
                out[y] = {j: (tuple(smith_divisors(mat.rows)),
                              len(mat.row_masks), len(mat.col_masks))
                          for j, mat in by_j.items()}
            return out

        if self.mode == "symbolic":
            result = compute(SymbolicDomain(self.realization))
        else:
            seed = zlib.crc32(bytes(word)) + 17 * len(word)
            result = run_with_retries(self.realization, seed, compute)
        self._forms[word] = result
        return result

    def multiplicity_table(self, word, prime: int) -> GradedMultiplicityTable:
        word = tuple(word)
        if prime < 0 or prime == 1:
            raise ValueError("prime must be 0 (characteristic zero) or a prime")
        entries = {}
        for y, by_j in self.forms(word).items():
            for j, (divisors, nr, nc) in by_j.items():
                r = rank_from_divisors(divisors, prime)
                if r:
                    entries[(y, j)] = r
                    if j:
                        entries[(y, -j)] = r
        return GradedMultiplicityTable(word, prime, entries)

    def bad_primes_of_word(self, word) -> set[int]:
        out: set[int] = set()
        for by_j in self.forms(word).values():
            for divisors, _, _ in by_j.values():
                for d in divisors:
                    if d > 1:
                        out |= prime_factors(d)
        return out


class PCanonicalBasis:
    """Columns of the p-canonical basis for one system and one prime."""

    def __init__(self, engine: DecompositionEngine, hecke: HeckeAlgebra,
                 prime: int, validate: bool = True):
        if hecke.system is not engine.system:
            raise ValueError("engine and Hecke algebra disagree on the system")
        self.engine = engine
        self.hecke = hecke
        self.system = engine.system
        self.prime = prime
        self.validate = validate
        self._columns: dict[CoxeterElement, PCanonicalColumn] = {}

    def column(self, x: CoxeterElement) -> PCanonicalColumn:
        cached = self._columns.get(x)
        if cached is not None:
            return cached
        sy = self.system
        H = self.hecke
        word = x.word
        table = self.engine.multiplicity_table(word, self.prime)
        if table.poly(x) != _ONE:
            raise AssertionError(
                f"top multiplicity of {x!r} is {table.poly(x)}, expected 1")
        elem = H.product_of_generators(word)
        children = []
        for y in table.support():
            if y is x:
                continue
            my = table.poly(y)
            children.append(y)
            elem = elem - self.element(y).scale(my)
        ph = dict(elem.coords)
        if self.validate:
            self._check_column(x, elem, ph)
        pa = {y: c for y, c in H.to_kl(elem).coords.items()}
        divisors = {}
        for y, by_j in self.engine.forms(word).items():
            for j, (divs, nr, nc) in by_j.items():
                divisors[(y, j)] = divs
        col = PCanonicalColumn(x, self.prime, ph, pa, divisors,
                               tuple(children))
        if self.validate:
            self._check_pa(x, col.pa)
        self._columns[x] = col
        return col

    def element(self, x: CoxeterElement) -> HeckeElement:
        """p_b_x in standard coordinates."""
        return HeckeElement(self.hecke, "standard", self.column(x).ph)

    def _check_column(self, x, elem, ph):
        sy = self.system
        if ph.get(x) != _ONE:
            raise AssertionError(f"p_h_(x,x) != 1 for {x!r}")
        for y, c in ph.items():
            if not sy.bruhat_leq(y, x):
                raise AssertionError(f"support of {x!r} escapes the interval")
            if not c.nonneg_coeffs():
                raise AssertionError(
                    f"negative p_h coefficient at ({y!r}, {x!r}): {c}")
        if self.hecke.bar(elem) != elem:
            raise AssertionError(f"p_b_{x!r} is not self-dual")

    def _check_pa(self, x, pa):
        if pa.get(x) != _ONE:
            raise AssertionError(f"p_a_(x,x) != 1 for {x!r}")
        for y, c in pa.items():
            if not (c.nonneg_coeffs() and c.is_bar_symmetric()):
                raise AssertionError(
                    f"p_a coefficient at ({y!r}, {x!r}) not symmetric-positive: {c}")

    def equals_kl(self, x: CoxeterElement) -> bool:
        col = self.column(x)
        return set(col.pa) == {x}

    # -- decomposition with conservation -----------------------------------

    def decompose_bs(self, word) -> GradedMultiplicityTable:
        """Graded multiplicities of the Bott-Samelson object of `word`;
        asserts character conservation before returning."""
        word = tuple(word)
        table = self.engine.multiplicity_table(word, self.prime)
        if self.validate:
            self.check_conservation(table)
        return table

    def check_conservation(self, table: GradedMultiplicityTable):
        H = self.hecke
        total = H.zero()
        for y in table.support():
            total = total + self.element(y).scale(table.poly(y))
        product = H.product_of_generators(table.word)
        if total != product:
            raise AssertionError(
                f"character conservation fails for word {table.word}")

    # -- bad primes and torsion ----------------------------------------------

    def _zero_basis(self) -> "PCanonicalBasis":
        if self.prime == 0:
            return self
        cached = getattr(self, "_zero", None)
        if cached is None:
            cached = PCanonicalBasis(self.engine, self.hecke, 0, validate=False)
            self._zero = cached
        return cached

    def recursion_closure(self, x: CoxeterElement) -> set[CoxeterElement]:
        """Elements reachable from x through the char-0 recursion tree."""
        zero = self._zero_basis()
        seen: set[CoxeterElement] = set()
        stack = [x]
        while stack:
            z = stack.pop()
            if z in seen:
                continue
            seen.add(z)
            stack.extend(c for c in zero.column(z).children if c not in seen)
        return seen

    def bad_primes(self, x: CoxeterElement) -> set[int]:
        out: set[int] = set()
        for z in self.recursion_closure(x):
            out |= self.engine.bad_primes_of_word(z.word)
        return out


def torsion_report(engine: DecompositionEngine, hecke: HeckeAlgebra,
                   length_cap: int, primes, max_size: int = 200_000):
    """prime -> sorted list of elements x of length <= cap with p_b_x != b_x.

    Monotone under cap increase; `complete` is False when the cap truncates
    an infinite group.
    """
    sy = engine.system
    complete = True
    elements = []
    frontier = [sy.identity]
    elements.extend(frontier)
    for _ in range(length_cap):
        new, seen = [], set()
        for x in frontier:
            for s in range(sy.rank):
                if sy.is_right_ascent(x, s):
                    y = sy.mult_gen(x, s)
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
        if len(elements) + len(new) > max_size:
            complete = False
            break
        elements.extend(new)
        frontier = new
        if not frontier:
            break
    elements = sorted(elements)
    zero_basis = PCanonicalBasis(engine, hecke, 0, validate=False)
    bases = {p: PCanonicalBasis(engine, hecke, p, validate=False)
             for p in primes}
    report = {p: [] for p in primes}
    for x in elements:
        bad = zero_basis.bad_primes(x)
        for p in primes:
            if p in bad and not bases[p].equals_kl(x):
                report[p].append(x)
    return TorsionReport(report, length_cap, complete)


class TorsionReport:
    def __init__(self, by_prime, length_cap, complete):
        self.by_prime = {p: sorted(xs) for p, xs in by_prime.items()}
        self.length_cap = length_cap
        self.complete = complete

    def __repr__(self):
        body = {p: [x.name() or "e" for x in xs]
                for p, xs in self.by_prime.items()}
        suffix = "" if self.complete else " (incomplete)"
        return f"TorsionReport({body}, cap={self.length_cap}{suffix})"


class ParabolicPCanonical:
    """Spherical/antispherical p-canonical data through the full basis."""

    def __init__(self, basis: PCanonicalBasis, I, kind: str):
        self.basis = basis
        self.system = basis.system
        self.kind = kind
        self.module = ParabolicModule(basis.hecke, I, kind)
        self.I = self.module.I
        self.w_I = self.module.w_I

    def adjustment(self, x: CoxeterElement) -> dict:
        """p_a^{sph/asph}_{y,x} for y in W^I."""
        mod = self.module
        if not mod.in_min_reps(x):
            raise ValueError(f"{x!r} is not a minimal coset representative")
        if self.kind == SPHERICAL:
            col = self.basis.column(self.system.multiply(x, self.w_I))
            out = {}
            for z, c in col.pa.items():
                y = self.system.multiply(z, self.w_I)
                if (mod.in_min_reps(y)
                        and z.length == y.length + self.w_I.length):
                    out[y] = c
            return out
        col = self.basis.column(x)
        return {y: c for y, c in col.pa.items() if mod.in_min_reps(y)}

    def canonical_expansion(self, x: CoxeterElement):
        """(adjustment coefficients, standard-basis coefficients) of
        p_c_x (spherical) or p_d_x (antispherical)."""
        adj = self.adjustment(x)
        mod = self.module
        total = mod.zero()
        for y, c in adj.items():
            total = total + mod.canonical(y).scale(c)
        return adj, dict(total.coords)
