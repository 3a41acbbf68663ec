"""Light-leaf morphisms and local intersection forms.

A light leaf for a word w and a mask e is built letter by letter while
maintaining the lex-least reduced word u of the running endpoint:

* U1: append the letter, then rewrite to the lex-least word (degree 0);
* U0: kill the new strand with dot_out (degree +1);
* D1: rewrite u to end with the letter, then merge and dot_out (degree 0);
* D0: rewrite, merge, rewrite back to the lex-least word (degree -1).

The degree of the result equals the defect of the mask.  Rewriting uses
shortest braid-move paths in the reduced-expression graph with lex
tie-breaking; intersection-form ranks are independent of that choice.

The local intersection form of w at (x, j) pairs light leaves of defect
-j against flipped light leaves of defect +j through the all-ones summand
of B_{lexleast(x)}; its entries are integers for Z-realizations.
"""

from __future__ import annotations

from collections import deque

from .braid import alternating_word
from .localized import LocalizedMorphism, SoergelCalculus
from .scalars import DegeneratePoint


class PlanOp:
    __slots__ = ("word_in", "word_out", "pos", "gen_key", "in_len", "out_len")

    def __init__(self, word_in, word_out, pos, gen_key, in_len, out_len):
        self.word_in = word_in
        self.word_out = word_out
        self.pos = pos
        self.gen_key = gen_key
        self.in_len = in_len
        self.out_len = out_len

    def __repr__(self):
        return f"PlanOp({self.gen_key}@{self.pos}: {self.word_in} -> {self.word_out})"


class LightLeafPlan:
    __slots__ = ("word", "mask", "ops", "target", "defect")

    def __init__(self, word, mask, ops, target, defect):
        self.word = word
        self.mask = mask
        self.ops = ops
        self.target = target
        self.defect = defect


class LightLeafPlanner:
    """Pure word combinatorics: rex-move paths and light-leaf op lists.
    Shared by the full-matrix construction and the fast row pipeline."""

    def __init__(self, system, reverse_tiebreak: bool = False):
        self.system = system
        self.reverse_tiebreak = reverse_tiebreak
        self._rex_cache: dict = {}
        self._plan_cache: dict = {}

    # -- rex graph -------------------------------------------------------

    def _neighbors(self, word):
        sy = self.system
        out = []
        positions = range(len(word))
        for pos in positions:
            a = word[pos]
            for b in range(sy.rank):
                if b == a:
                    continue
                m = sy.cartan.braid_m(a, b)
                if m == 0 or pos + m > len(word):
                    continue
                if word[pos:pos + m] == alternating_word(a, b, m):
                    moved = (word[:pos] + alternating_word(b, a, m)
                             + word[pos + m:])
                    out.append(((pos, a, b), moved))
        if self.reverse_tiebreak:
            out.reverse()
        return out

    def rex_moves(self, source, target):
        """Shortest braid-move path between two reduced words of the same
        element, as a list of (pos, s, t) moves."""
        source, target = tuple(source), tuple(target)
        if source == target:
            return ()
        key = (source, target)
        cached = self._rex_cache.get(key)
        if cached is not None:
            return cached
        prev = {source: None}
        queue = deque([source])
        while queue:
            w = queue.popleft()
            for move, nxt in self._neighbors(w):
                if nxt not in prev:
                    prev[nxt] = (w, move)
                    if nxt == target:
                        queue.clear()
                        break
                    queue.append(nxt)
        if target not in prev:
            raise ValueError(f"no rex path from {source} to {target}")
        path = []
        w = target
        while prev[w] is not None:
            w0, move = prev[w]
            path.append(move)
            w = w0
        path.reverse()
        moves = tuple(path)
        self._rex_cache[key] = moves
        return moves

    def _rex_ops(self, ops, cur, goal, tail):
        sy = self.system
        for (pos, a, b) in self.rex_moves(cur, goal):
            m = sy.cartan.braid_m(a, b)
            nxt = cur[:pos] + alternating_word(b, a, m) + cur[pos + m:]
            ops.append(PlanOp(cur + tail, nxt + tail, pos,
                              ("braid", a, b), m, m))
            cur = nxt
        assert cur == goal

    def plan(self, word, mask: int) -> LightLeafPlan:
        word = tuple(word)
        key = (word, mask)
        cached = self._plan_cache.get(key)
        if cached is not None:
            return cached
        sy = self.system
        ops: list[PlanOp] = []
        z = sy.identity
        u: tuple = ()
        defect = 0
        for i, s in enumerate(word):
            tail = word[i + 1:]
            bit = mask >> i & 1
            if sy.is_right_ascent(z, s):
                if bit:
                    z = sy.mult_gen(z, s)
                    self._rex_ops(ops, u + (s,), z.word, tail)
                    u = z.word
                else:
                    defect += 1
                    ops.append(PlanOp(u + (s,) + tail, u + tail,
                                      len(u), ("dot_out", s), 1, 0))
            else:
                zs = sy.mult_gen(z, s)
                u2 = zs.word
                self._rex_ops(ops, u, u2 + (s,), (s,) + tail)
                base = u2 + (s, s) + tail
                after_merge = u2 + (s,) + tail
                ops.append(PlanOp(base, after_merge, len(u2),
                                  ("merge", s), 2, 1))
                if bit:
                    ops.append(PlanOp(after_merge, u2 + tail, len(u2),
                                      ("dot_out", s), 1, 0))
                    z, u = zs, u2
                else:
                    defect -= 1
                    self._rex_ops(ops, u2 + (s,), z.word, tail)
                    u = z.word
        plan = LightLeafPlan(word, mask, tuple(ops), u, defect)
        self._plan_cache[key] = plan
        return plan


class LightLeaves:
    """Light-leaf morphisms and intersection forms over a calculus context."""

    def __init__(self, ctx: SoergelCalculus, planner: LightLeafPlanner | None = None):
        self.ctx = ctx
        self.system = ctx.system
        self.planner = planner or LightLeafPlanner(ctx.system)
        self._gen_by_target: dict = {}

    # -- full matrices ------------------------------------------------------

    def light_leaf(self, word, mask: int) -> LocalizedMorphism:
        """The light-leaf morphism B_word -> B_{lexleast(endpoint)}."""
        ctx = self.ctx
        plan = self.planner.plan(word, mask)
        m = ctx.identity(plan.word)
        for op in plan.ops:
            stage = ctx.stage_morphism(op.word_in, op.pos, op.gen_key)
            m = ctx.compose(stage, m)
        if m.degree != plan.defect:
            raise AssertionError(
                f"light leaf degree {m.degree} != defect {plan.defect}")
        return m

    # -- fast top-row pipeline -------------------------------------------------

    def _table_by_target(self, gen_key):
        tab = self._gen_by_target.get(gen_key)
        if tab is None:
            table = self.ctx.gen_data(gen_key)[3]
            tab = {}
            for (go, gi), v in table.items():
                tab.setdefault(go, []).append((gi, v))
            self._gen_by_target[gen_key] = tab
        return tab

    def top_row(self, plan: LightLeafPlan) -> dict:
        """Row of the light-leaf matrix at the all-ones mask of the target,
        as a dict source-mask -> scalar."""
        ctx = self.ctx
        dom = ctx.domain
        row = {(1 << len(plan.target)) - 1: dom.one()}
        for op in reversed(plan.ops):
            letters = op.gen_key[1:] if op.gen_key[0] == "braid" else \
                (op.gen_key[1], None)
            s, t = letters
            tab = self._table_by_target(op.gen_key)
            pos = op.pos
            bo, bi = op.out_len, op.in_len
            pmask = (1 << pos) - 1
            prefix_word = op.word_in[:pos]
            new: dict = {}
            for m, val in row.items():
                p = m & pmask
                g = (m >> pos) & ((1 << bo) - 1)
                c = m >> (pos + bo)
                hits = tab.get(g)
                if not hits:
                    continue
                tw = ctx.endpoint(prefix_word, p)
                base = p | c << (pos + bi)
                for gi, entry in hits:
                    ev = dom.gen_value(entry, tw, s, t)
                    if dom.is_zero(ev):
                        continue
                    key = base | gi << pos
                    term = dom.mul(val, ev)
                    prev = new.get(key)
                    new[key] = term if prev is None else dom.add(prev, term)
            row = {k: v for k, v in new.items() if not dom.is_zero(v)}
        return row

    # -- intersection forms ----------------------------------------------------

    def intersection_entries(self, word):
        """All local intersection forms of a word: a dict endpoint x ->
        {j >= 0: IntegerMatrix} with rows the defect -j masks and columns
        the defect +j masks (the form at -j is the transpose)."""
        ctx = self.ctx
        dom = ctx.domain
        sy = self.system
        word = tuple(word)
        subs = sy.subexpressions(word)
        by_endpoint: dict = {}
        for mask, z, d in subs:
            by_endpoint.setdefault(z, {}).setdefault(d, []).append(mask)
        out = {}
        for x, by_defect in by_endpoint.items():
            u = x.word
            ones_u = (1 << len(u)) - 1
            u_specs = ctx.gram_specs(u, ones_u)
            num_roots = [(ctx.product(x, tau), s) for tau, s in u_specs]
            rows = {}
            for masks in by_defect.values():
                for mask in masks:
                    rows[mask] = self.top_row(self.planner.plan(word, mask))
            # Gram ratios per source mask g with endpoint x
            ratio = {}
            for g in {g for row in rows.values() for g in row}:
                w_specs = ctx.gram_specs(word, g)
                den_roots = [(ctx.product(x, tau), s) for tau, s in w_specs]
                ratio[g] = dom.factored(num_roots, den_roots,
                                        4 ** len(u), 4 ** len(word))

            def pairing(e, f):
                rowe, rowf = rows[e], rows[f]
                if len(rowf) < len(rowe):
                    rowe, rowf = rowf, rowe
                total = dom.zero
                for g, ve in rowe.items():
                    vf = rowf.get(g)
                    if vf is None:
                        continue
                    total = dom.add(total, dom.mul(dom.mul(ve, vf), ratio[g]))
                return dom.as_integer(total)

            forms = {}
            for j in sorted({abs(d) for d in by_defect}):
                rmasks = sorted(by_defect.get(-j, ()))
                cmasks = sorted(by_defect.get(j, ()))
                if j == 0:
                    mat = [[0] * len(cmasks) for _ in rmasks]
                    for i, e in enumerate(rmasks):
                        for k in range(i, len(cmasks)):
                            v = pairing(e, cmasks[k])
                            mat[i][k] = v
                            mat[k][i] = v
                else:
                    mat = [[pairing(e, f) for f in cmasks] for e in rmasks]
                forms[j] = IntegerMatrix(mat, rmasks, cmasks)
            out[x] = forms
        return out

    def local_intersection_form(self, word, x, j: int):
        """The integer matrix pairing defect -j rows against defect +j
        columns at the endpoint x."""
        word = tuple(word)
        data = self.intersection_entries(word)
        empty = IntegerMatrix([], [], [])
        forms = data.get(x)
        if forms is None:
            return empty
        mat = forms.get(abs(j), empty)
        if j >= 0 or mat is empty:
            return mat
        tr = [[mat.rows[i][k] for i in range(len(mat.row_masks))]
              for k in range(len(mat.col_masks))]
        return IntegerMatrix(tr, mat.col_masks, mat.row_masks)


class IntegerMatrix:
    """Dense matrix of arbitrary-precision integers with mask labels."""

    __slots__ = ("rows", "row_masks", "col_masks")

    def __init__(self, rows, row_masks, col_masks):
        self.rows = [list(r) for r in rows]
        self.row_masks = list(row_masks)
        self.col_masks = list(col_masks)

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __repr__(self):
        return f"IntegerMatrix({self.rows})"


def run_with_retries(realization, seed: int, fn, attempts: int = 8):
    """Run fn(domain) with point domains at deterministic generic points,
    retrying on root-hyperplane hits."""
    from .scalars import PointDomain, pick_point

    last = None
    for attempt in range(attempts):
        point = pick_point(realization.rank, seed, attempt)
        try:
            return fn(PointDomain(realization, point))
        except DegeneratePoint as exc:
            last = exc
    raise RuntimeError(f"no generic evaluation point found: {last}")
