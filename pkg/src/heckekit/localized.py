"""Morphisms between Bott-Samelson objects, represented by localization.

After inverting all roots, a Bott-Samelson object B_w splits into standard
summands indexed by the subexpression masks of w, with the summand at mask
e twisted by the endpoint pi(e).  A morphism is then a matrix over the
fraction field whose (f, e) entry vanishes unless pi(f) = pi(e); planar
diagrams never appear, and the defining relations of the category become
exact matrix identities (see verify_relations).

Conventions fixed here (validated by the relation suite and the exhaustive
degree-equals-defect checks):

* mask basis vectors: per letter, xi_0 = alpha(x)1 + 1(x)alpha  (endpoint e)
  and xi_1 = -alpha(x)1 + 1(x)alpha (endpoint s); tensoring twists scalar
  coefficients of later factors by the endpoint of the earlier ones;
* entries of a degree-d morphism B_x -> B_y are homogeneous of graded
  degree d + len(x) - len(y);
* the duality (diagram flip) is entrywise:
  flip(M)[e, f] = M[f, e] * pi(e)(Q_y[f] / Q_x[e]) with the diagonal Gram
  Q_w[mask] = prod_i tau_i(4 alpha_{s_i}), tau_i the reversed suffix
  subproduct of the mask.
"""

from __future__ import annotations

from .braid import alternating_word, braid_table
from .polynomials import GradedPolynomial
from .scalars import PointDomain, SmallRat, SymbolicDomain

# universal one-colour generator tables in the variable a = alpha_s;
# masks: bit i = letter i, per-letter 0 = identity summand, 1 = twisted
_HALF = SmallRat.const(1, 2)
_TWO = SmallRat.const(2)
_TWO_A = SmallRat(GradedPolynomial.linear((2, 0)))
_INV_2A = SmallRat(GradedPolynomial.const(2, 1), (((1, 0), 1),), 2)
_NEG_INV_2A = SmallRat(GradedPolynomial.const(2, -1), (((1, 0), 1),), 2)

ONE_COLOUR = {
    "dot_in": (0, 1, 1, {(0, 0): _HALF}),
    "dot_out": (1, 0, 1, {(0, 0): _TWO_A}),
    "merge": (2, 1, -1, {(0, 0b00): _TWO, (0, 0b11): _TWO,
                         (1, 0b01): _TWO, (1, 0b10): _TWO}),
    "split": (1, 2, -1, {(0b00, 0): _INV_2A, (0b11, 0): _NEG_INV_2A,
                         (0b01, 1): _NEG_INV_2A, (0b10, 1): _INV_2A}),
}


class LocalizedMorphism:
    """Graded matrix over the localized ring, rows/columns indexed by
    subexpression masks of the target/source words."""

    __slots__ = ("ctx", "source", "target", "degree", "entries")

    def __init__(self, ctx, source, target, degree, entries, check=False):
        self.ctx = ctx
        self.source = tuple(source)
        self.target = tuple(target)
        self.degree = degree
        dom = ctx.domain
        self.entries = {k: v for k, v in entries.items() if not dom.is_zero(v)}
        if check:
            self.check_invariants()

    def check_invariants(self):
        ctx = self.ctx
        dom = ctx.domain
        expected = self.degree + len(self.source) - len(self.target)
        for (f, e), v in self.entries.items():
            if ctx.endpoint(self.target, f) is not ctx.endpoint(self.source, e):
                raise AssertionError(
                    f"entry ({f}, {e}) joins masks with different endpoints")
            dom.check_degree(v, expected)

    def entry(self, f: int, e: int):
        return self.entries.get((f, e), self.ctx.domain.zero)

    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: "LocalizedMorphism") -> "LocalizedMorphism":
        self._check_parallel(other)
        dom = self.ctx.domain
        ent = dict(self.entries)
        for k, v in other.entries.items():
            prev = ent.get(k)
            ent[k] = v if prev is None else dom.add(prev, v)
        return LocalizedMorphism(self.ctx, self.source, self.target,
                                 self.degree, ent)

    def __sub__(self, other):
        return self + other.negate()

    def negate(self):
        dom = self.ctx.domain
        return LocalizedMorphism(self.ctx, self.source, self.target,
                                 self.degree,
                                 {k: dom.neg(v) for k, v in self.entries.items()})

    def __eq__(self, other):
        if not isinstance(other, LocalizedMorphism):
            return NotImplemented
        if (self.source != other.source or self.target != other.target):
            return False
        dom = self.ctx.domain
        keys = set(self.entries) | set(other.entries)
        return all(dom.eq(self.entry(*k), other.entry(*k)) for k in keys)

    def __hash__(self):
        raise TypeError("unhashable")

    def __repr__(self):
        return (f"LocalizedMorphism({self.source} -> {self.target}, "
                f"degree {self.degree}, {len(self.entries)} entries)")

    def _check_parallel(self, other):
        if (self.source != other.source or self.target != other.target
                or self.degree != other.degree):
            raise ValueError("morphisms are not parallel")


class SoergelCalculus:
    """Context: realization + scalar domain + generator/Gram/plan caches."""

    def __init__(self, realization, domain=None):
        self.realization = realization
        self.system = realization.system
        self.domain = domain if domain is not None else SymbolicDomain(realization)
        self._endpoint_cache: dict = {}
        self._gram_cache: dict = {}
        self._braid_tables: dict = {}
        self._prod_cache: dict = {}

    # -- bookkeeping -------------------------------------------------

    def endpoint(self, word, mask: int):
        key = (word, mask)
        el = self._endpoint_cache.get(key)
        if el is None:
            el = self.system.mask_endpoint(word, mask)
            self._endpoint_cache[key] = el
        return el

    def product(self, x, y):
        key = (x, y)
        el = self._prod_cache.get(key)
        if el is None:
            el = self.system.multiply(x, y)
            self._prod_cache[key] = el
        return el

    def gram_specs(self, word, mask: int):
        """Root specs (tau_i, s_i) with Q_w[mask] = prod 4 * tau_i(alpha_si)."""
        key = (word, mask)
        specs = self._gram_cache.get(key)
        if specs is None:
            sy = self.system
            tau = sy.identity
            out = [None] * len(word)
            for i in range(len(word) - 1, -1, -1):
                out[i] = (tau, word[i])
                if mask >> i & 1:
                    tau = self.product(tau, sy.generator(word[i]))
            specs = tuple(out)
            self._gram_cache[key] = specs
        return specs

    # -- generators -----------------------------------------------------

    def identity(self, word) -> LocalizedMorphism:
        word = tuple(word)
        one = self.domain.one()
        ent = {(m, m): one for m in range(1 << len(word))}
        return LocalizedMorphism(self, word, word, 0, ent)

    def braid_table_for(self, s: int, t: int) -> dict:
        key = (s, t)
        tab = self._braid_tables.get(key)
        if tab is None:
            c = self.system.cartan.entries
            m = self.system.cartan.braid_m(s, t)
            if m == 0:
                raise ValueError(
                    f"infinite braid order between generators {s} and {t}")
            if m not in (2, 3, 4, 6):
                raise ValueError(f"unsupported braid order m = {m}")
            tab = braid_table(c[s][t], c[t][s])
            self._braid_tables[key] = tab
        return tab

    def gen_data(self, gen_key):
        """(in_word, out_word, degree, table, letters) for a generator."""
        kind = gen_key[0]
        if kind == "braid":
            _, s, t = gen_key
            m = self.system.cartan.braid_m(s, t)
            return (alternating_word(s, t, m), alternating_word(t, s, m), 0,
                    self.braid_table_for(s, t), (s, t))
        _, s = gen_key
        in_len, out_len, degree, table = ONE_COLOUR[kind]
        return ((s,) * in_len, (s,) * out_len, degree, table, (s, None))

    def generator_matrix(self, gen_key) -> LocalizedMorphism:
        """A generator as a bare morphism (identity twist)."""
        in_word, out_word, degree, table, (s, t) = self.gen_data(gen_key)
        dom = self.domain
        ident = self.system.identity
        ent = {fe: dom.gen_value(v, ident, s, t) for fe, v in table.items()}
        return LocalizedMorphism(self, in_word, out_word, degree, ent)

    def dot_in(self, s):
        return self.generator_matrix(("dot_in", s))

    def dot_out(self, s):
        return self.generator_matrix(("dot_out", s))

    def merge(self, s):
        return self.generator_matrix(("merge", s))

    def split(self, s):
        return self.generator_matrix(("split", s))

    def braid(self, s, t):
        return self.generator_matrix(("braid", s, t))

    def stage_morphism(self, word_in, pos: int, gen_key) -> LocalizedMorphism:
        """id (x) generator (x) id applied at `pos` inside word_in."""
        word_in = tuple(word_in)
        gin, gout, degree, table, (s, t) = self.gen_data(gen_key)
        bi, bo = len(gin), len(gout)
        if word_in[pos:pos + bi] != gin:
            raise ValueError(
                f"word {word_in} does not carry {gen_key} at position {pos}")
        word_out = word_in[:pos] + gout + word_in[pos + bi:]
        dom = self.domain
        prefix_word = word_in[:pos]
        suffix_bits = len(word_in) - pos - bi
        ent = {}
        for p in range(1 << pos):
            tw = self.endpoint(prefix_word, p)
            for (go, gi), v in table.items():
                val = dom.gen_value(v, tw, s, t)
                if dom.is_zero(val):
                    continue
                base_t = p | go << pos
                base_s = p | gi << pos
                for c in range(1 << suffix_bits):
                    ent[(base_t | c << (pos + bo),
                         base_s | c << (pos + bi))] = val
        return LocalizedMorphism(self, word_in, word_out, degree, ent)

    # -- categorical operations ----------------------------------------------

    def compose(self, g: LocalizedMorphism, f: LocalizedMorphism):
        """g after f."""
        if g.source != f.target:
            raise ValueError(
                f"cannot compose: {g.source} != {f.target}")
        dom = self.domain
        by_mid: dict = {}
        for (a, b), v in g.entries.items():
            by_mid.setdefault(b, []).append((a, v))
        ent: dict = {}
        for (b, c), w in f.entries.items():
            for a, v in by_mid.get(b, ()):
                key = (a, c)
                term = dom.mul(v, w)
                prev = ent.get(key)
                ent[key] = term if prev is None else dom.add(prev, term)
        return LocalizedMorphism(self, f.source, g.target,
                                 g.degree + f.degree, ent)

    def tensor(self, f: LocalizedMorphism, g: LocalizedMorphism):
        """Horizontal concatenation; twists the right factor's entries by the
        left factor's target endpoints (symbolic domain only in general)."""
        dom = self.domain
        lt, ls = len(f.target), len(f.source)
        ent: dict = {}
        for (t1, s1), v1 in f.entries.items():
            tw = self.endpoint(f.target, t1)
            for (t2, s2), v2 in g.entries.items():
                if tw is self.system.identity:
                    v2t = v2
                else:
                    v2t = dom.twist(v2, tw)
                ent[(t1 | t2 << lt, s1 | s2 << ls)] = dom.mul(v1, v2t)
        return LocalizedMorphism(self, f.source + g.source,
                                 f.target + g.target,
                                 f.degree + g.degree, ent)

    def tensor_list(self, morphisms):
        out = morphisms[0]
        for m in morphisms[1:]:
            out = self.tensor(out, m)
        return out

    def flip(self, f: LocalizedMorphism) -> LocalizedMorphism:
        """The duality: reverse source and target; degree-preserving."""
        dom = self.domain
        ent = {}
        for (tm, sm), v in f.entries.items():
            x = self.endpoint(f.source, sm)
            num = [(self.product(x, tau), s)
                   for tau, s in self.gram_specs(f.target, tm)]
            den = [(self.product(x, tau), s)
                   for tau, s in self.gram_specs(f.source, sm)]
            ratio = dom.factored(num, den,
                                 4 ** len(f.target), 4 ** len(f.source))
            ent[(sm, tm)] = dom.mul(v, ratio)
        return LocalizedMorphism(self, f.target, f.source, f.degree, ent)

    def scalar_times(self, f: LocalizedMorphism, scalar,
                     scalar_degree: int) -> LocalizedMorphism:
        dom = self.domain
        return LocalizedMorphism(
            self, f.source, f.target, f.degree + scalar_degree,
            {k: dom.mul(scalar, v) for k, v in f.entries.items()})

    def root_scalar(self, s: int):
        """alpha_s as a scalar (degree 2)."""
        return self.domain.factored([(self.system.identity, s)], [])

    def right_mult_matrix(self, word, rf) -> LocalizedMorphism:
        """Right multiplication by a ring element: diag(pi(mask)(rf));
        symbolic domain only.  Degree equals the graded degree of rf."""
        word = tuple(word)
        dom = self.domain
        ent = {}
        for m in range(1 << len(word)):
            tw = self.endpoint(word, m)
            ent[(m, m)] = dom.twist(rf, tw)
        return LocalizedMorphism(self, word, word, rf.graded_degree() or 0, ent)
