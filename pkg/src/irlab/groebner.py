"""Groebner bases for ideals and free-module submodules, and ideal arithmetic.

Buchberger with the classical pair criteria and normal selection; no F4/F5.
The module layer uses a position-over-term order (position 0 highest), which
doubles as the elimination device behind syzygies, intersections and colons.
Every basis returned is reduced, monic and sorted, hence canonical for the
(ideal, order) pair.

A single Buchberger run aborts with ResourceBudgetExceeded once it spends its
S-pair budget (default 200000; override with the IRLAB_BUDGET environment
variable or the `budget=` keyword).
"""

from __future__ import annotations

import heapq
import os
from itertools import combinations

from .errors import NotArtinianError, ResourceBudgetExceeded, RingMismatchError
from .ring import Elimination, Poly, Ring, monomials_of_degree

DEFAULT_SPAIR_BUDGET = 200_000


def spair_budget():
    raw = os.environ.get("IRLAB_BUDGET")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_SPAIR_BUDGET


# ---------------------------------------------------------------------------
# Raw polynomial helpers.  A raw polynomial is a dict {expo tuple: coeff}.

def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _mono_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_scaled(target, src, expo, coeff, p):
    """target -= coeff * x^expo * src, in place."""
    for m, c in src.items():
        key = tuple(a + b for a, b in zip(m, expo))
        v = (target.get(key, 0) - coeff * c) % p
        if v:
            target[key] = v
        else:
            target.pop(key, None)


def _normal_form_raw(f, leads, basis, key, p):
    """Fully reduced remainder of raw poly f against monic raw polys `basis`."""
    work = dict(f)
    out = {}
    kcache: dict = {}

    def ckey(m):
        v = kcache.get(m)
        if v is None:
            v = key(m)
            kcache[m] = v
        return v

    while work:
        m = max(work, key=ckey)
        c = work.pop(m)
        for lm, g in zip(leads, basis):
            if _divides(lm, m):
                _sub_scaled(work, g, _mono_sub(m, lm), c, p)
                work.pop(m, None)  # numerically cancelled already; be safe
                break
        else:
            out[m] = c
    return out


def _monic_raw(f, key, p):
    lm = max(f, key=key)
    c = f[lm]
    if c == 1:
        return f
    inv = pow(c, p - 2, p)
    return {m: (v * inv) % p for m, v in f.items()}


def _buchberger_raw(gens, key, p, budget):
    """Reduced Groebner basis of the raw polynomials `gens`."""
    G = []
    for g in gens:
        if g:
            G.append(_monic_raw(dict(g), key, p))
    if not G:
        return []
    # Fast path: monomial generators are a Groebner basis after minimalization.
    if all(len(g) == 1 for g in G):
        monos = sorted({next(iter(g)) for g in G}, key=key)
        keep = []
        for m in monos:
            if not any(_divides(k, m) for k in keep):
                keep.append(m)
        return [{m: 1} for m in sorted(keep, key=key)]

    leads = [max(g, key=key) for g in G]
    heap = []
    for i, j in combinations(range(len(G)), 2):
        heapq.heappush(heap, (sum(_mono_lcm(leads[i], leads[j])), j, i))
    done = set()
    spent = 0
    while heap:
        _, j, i = heapq.heappop(heap)
        done.add((i, j))
        li, lj = leads[i], leads[j]
        lcm = _mono_lcm(li, lj)
        # Product criterion (valid in the ring case): coprime leads reduce to 0.
        if all(a + b == c for a, b, c in zip(li, lj, lcm)):
            continue
        # Chain criterion.
        skip = False
        for k in range(len(G)):
            if k == i or k == j:
                continue
            if _divides(leads[k], lcm) \
                    and (min(i, k), max(i, k)) in done \
                    and (min(j, k), max(j, k)) in done:
                skip = True
                break
        if skip:
            continue
        spent += 1
        if spent > budget:
            raise ResourceBudgetExceeded(f"S-pair budget {budget} exceeded")
        s = {}
        _sub_scaled(s, G[i], _mono_sub(lcm, li), p - 1, p)
        _sub_scaled(s, G[j], _mono_sub(lcm, lj), 1, p)
        rem = _normal_form_raw(s, leads, G, key, p)
        if rem:
            rem = _monic_raw(rem, key, p)
            G.append(rem)
            new_lead = max(rem, key=key)
            leads.append(new_lead)
            new = len(G) - 1
            for t in range(new):
                heapq.heappush(heap, (sum(_mono_lcm(leads[t], new_lead)), new, t))

    # Minimalize: drop elements whose lead is divisible by another lead.
    order_idx = sorted(range(len(G)), key=lambda i: key(leads[i]))
    kept = []
    for i in order_idx:
        if not any(_divides(leads[k], leads[i]) for k in kept):
            kept.append(i)
    minimal = [G[i] for i in kept]
    min_leads = [leads[i] for i in kept]
    # Tail-reduce to the unique reduced basis.
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        other_leads = min_leads[:i] + min_leads[i + 1:]
        reduced.append(_normal_form_raw(g, other_leads, others, key, p))
    reduced = [_monic_raw(g, key, p) for g in reduced if g]
    reduced.sort(key=lambda g: key(max(g, key=key)))
    return reduced


class GroebnerBasis:
    """Reduced Groebner basis bound to a ring and an order."""

    __slots__ = ("ring", "order", "elements", "leads")

    def __init__(self, ring_: Ring, order, raw_elements):
        self.ring = ring_
        self.order = order
        self.elements = tuple(Poly(ring_, g) for g in raw_elements)
        self.leads = tuple(max(g, key=order.key) for g in raw_elements)

    def normal_form(self, f: Poly) -> Poly:
        if f.ring is not self.ring:
            raise RingMismatchError("polynomial over a different ring")
        raw = _normal_form_raw(f.terms, self.leads,
                               [g.terms for g in self.elements],
                               self.order.key, self.ring.field.p)
        return Poly(self.ring, raw)

    def contains(self, f: Poly) -> bool:
        return self.normal_form(f).is_zero()

    def is_unit_ideal(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant() \
            and not self.elements[0].is_zero()

    def initial_monomials(self):
        return self.leads

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def buchberger(gens, order=None, budget=None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by `gens`."""
    polys = [g for g in gens if not g.is_zero()]
    if not polys:
        raise ValueError("cannot infer the ring from an empty generator list; "
                         "use Ideal(ring, []) instead")
    R = polys[0].ring
    for g in polys:
        if g.ring is not R:
            raise RingMismatchError("generators over different rings")
    order = order or R.order
    raw = _buchberger_raw([g.terms for g in polys], order.key, R.field.p,
                          budget or spair_budget())
    return GroebnerBasis(R, order, raw)


# ---------------------------------------------------------------------------
# Module layer.  A raw vector is a dict {(position, expo tuple): coeff} in a
# free module of some rank; the order is position-over-term with position 0
# highest, so leading positions can be eliminated block-wise.

def _vkey_factory(key):
    def vkey(pm):
        return (-pm[0], key(pm[1]))
    return vkey


def _v_divides(a, b):
    return a[0] == b[0] and _divides(a[1], b[1])


def _v_sub_scaled(target, src, expo, coeff, p):
    for (pos, m), c in src.items():
        kkey = (pos, tuple(a + b for a, b in zip(m, expo)))
        v = (target.get(kkey, 0) - coeff * c) % p
        if v:
            target[kkey] = v
        else:
            target.pop(kkey, None)


def _v_normal_form(f, leads, basis, vkey, p):
    work = dict(f)
    out = {}
    kcache: dict = {}

    def ckey(t):
        v = kcache.get(t)
        if v is None:
            v = vkey(t)
            kcache[t] = v
        return v

    while work:
        t = max(work, key=ckey)
        c = work.pop(t)
        for lt, g in zip(leads, basis):
            if _v_divides(lt, t):
                _v_sub_scaled(work, g, _mono_sub(t[1], lt[1]), c, p)
                work.pop(t, None)
                break
        else:
            out[t] = c
    return out


def _v_monic(f, vkey, p):
    lt = max(f, key=vkey)
    c = f[lt]
    if c == 1:
        return f
    inv = pow(c, p - 2, p)
    return {t: (v * inv) % p for t, v in f.items()}


def module_buchberger_raw(vecs, key, p, budget):
    """Reduced module Groebner basis of raw vectors under position-over-term.

    Only same-position pairs are formed; the product criterion is not applied
    (it is unsound for modules), the chain criterion is.
    """
    vkey = _vkey_factory(key)
    G = [_v_monic(dict(v), vkey, p) for v in vecs if v]
    if not G:
        return []
    leads = [max(g, key=vkey) for g in G]
    heap = []
    for i, j in combinations(range(len(G)), 2):
        if leads[i][0] == leads[j][0]:
            heapq.heappush(heap, (sum(_mono_lcm(leads[i][1], leads[j][1])), j, i))
    done = set()
    spent = 0
    while heap:
        _, j, i = heapq.heappop(heap)
        done.add((i, j))
        li, lj = leads[i], leads[j]
        lcm = _mono_lcm(li[1], lj[1])
        skip = False
        for k in range(len(G)):
            if k == i or k == j or leads[k][0] != li[0]:
                continue
            if _divides(leads[k][1], lcm) \
                    and (min(i, k), max(i, k)) in done \
                    and (min(j, k), max(j, k)) in done:
                skip = True
                break
        if skip:
            continue
        spent += 1
        if spent > budget:
            raise ResourceBudgetExceeded(f"module S-pair budget {budget} exceeded")
        s = {}
        _v_sub_scaled(s, G[i], _mono_sub(lcm, li[1]), p - 1, p)
        _v_sub_scaled(s, G[j], _mono_sub(lcm, lj[1]), 1, p)
        rem = _v_normal_form(s, leads, G, vkey, p)
        if rem:
            rem = _v_monic(rem, vkey, p)
            G.append(rem)
            lt = max(rem, key=vkey)
            leads.append(lt)
            new = len(G) - 1
            for t in range(new):
                if leads[t][0] == lt[0]:
                    heapq.heappush(heap, (sum(_mono_lcm(leads[t][1], lt[1])), new, t))

    order_idx = sorted(range(len(G)), key=lambda i: vkey(leads[i]))
    kept = []
    for i in order_idx:
        if not any(_v_divides(leads[k], leads[i]) for k in kept):
            kept.append(i)
    minimal = [G[i] for i in kept]
    min_leads = [leads[i] for i in kept]
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        other_leads = min_leads[:i] + min_leads[i + 1:]
        reduced.append(_v_normal_form(g, other_leads, others, vkey, p))
    reduced = [_v_monic(g, vkey, p) for g in reduced if g]
    reduced.sort(key=lambda g: vkey(max(g, key=vkey)))
    return reduced


class ModuleGB:
    """Reduced Groebner basis of a submodule of a rank-r free module."""

    __slots__ = ("ring", "rank", "order", "elements", "leads")

    def __init__(self, ring_: Ring, rank: int, order, raw_elements):
        self.ring = ring_
        self.rank = rank
        self.order = order
        self.elements = tuple(raw_elements)
        vkey = _vkey_factory(order.key)
        self.leads = tuple(max(g, key=vkey) for g in raw_elements)

    def normal_form(self, raw_vec):
        return _v_normal_form(raw_vec, self.leads, self.elements,
                              _vkey_factory(self.order.key), self.ring.field.p)

    def contains(self, raw_vec) -> bool:
        return not self.normal_form(raw_vec)

    def __len__(self):
        return len(self.elements)


def module_groebner(vecs, rank, ring_: Ring, order=None, budget=None) -> ModuleGB:
    order = order or ring_.order
    raw = module_buchberger_raw(vecs, order.key, ring_.field.p, budget or spair_budget())
    return ModuleGB(ring_, rank, order, raw)


def syzygies_raw(vecs, rank, ring_: Ring, order=None):
    """Generators of the syzygy module of `vecs` (raw vectors of rank `rank`).

    Works in rank + len(vecs): the graph vectors (v_i, e_i) are fed to a
    position-over-term basis computation, and the basis elements supported
    entirely on the tag positions are exactly the syzygies.
    """
    order = order or ring_.order
    r = len(vecs)
    zero_expo = (0,) * ring_.nvars
    graph = []
    for i, v in enumerate(vecs):
        g = dict(v)
        g[(rank + i, zero_expo)] = 1
        graph.append(g)
    gb = module_buchberger_raw(graph, order.key, ring_.field.p, spair_budget())
    out = []
    for g in gb:
        if all(pos >= rank for pos, _ in g):
            out.append({(pos - rank, m): c for (pos, m), c in g.items()})
    return out


def syzygies(polys, order=None):
    """Syzygy module of a list of polynomials, as raw vectors of rank len(polys)."""
    polys = list(polys)
    if not polys:
        return []
    R = polys[0].ring
    vecs = [{(0, m): c for m, c in f.terms.items()} for f in polys]
    return syzygies_raw(vecs, 1, R, order)


# ---------------------------------------------------------------------------

class Ideal:
    """An ideal of the ambient ring, presented by finitely many generators.

    Generators are kept nonzero; the zero ideal has an empty tuple.  Reduced
    bases, dimensions and generator prunings are cached on the instance.
    """

    __slots__ = ("ring", "gens", "_gb", "_dim", "_mingens", "__weakref__")

    def __init__(self, ring_: Ring, gens):
        self.ring = ring_
        seen = []
        for g in gens:
            if isinstance(g, str):
                g = ring_.parse(g)
            if g.ring is not ring_:
                raise RingMismatchError("generator over a different ring")
            if not g.is_zero() and g not in seen:
                seen.append(g)
        self.gens = tuple(seen)
        self._gb = {}
        self._dim = None
        self._mingens = None

    # -- basics ---------------------------------------------------------------
    def groebner(self, order=None) -> GroebnerBasis:
        order = order or self.ring.order
        ck = (order.kind, getattr(order, "block", None))
        gb = self._gb.get(ck)
        if gb is None:
            if not self.gens:
                gb = GroebnerBasis(self.ring, order, [])
            else:
                gb = buchberger(self.gens, order)
            self._gb[ck] = gb
        return gb

    def contains(self, f: Poly) -> bool:
        return self.groebner().contains(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        gb = self.groebner()
        return all(gb.contains(g) for g in other.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return bool(self.gens) and self.groebner().is_unit_ideal()

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal) or self.ring is not other.ring:
            return False
        a = [g.terms for g in self.groebner().elements]
        b = [g.terms for g in other.groebner().elements]
        return a == b

    def __hash__(self):
        return hash((id(self.ring), tuple(sorted(hash(g) for g in self.gens))))

    def __repr__(self):
        inner = ", ".join(str(g) for g in self.gens) or "0"
        return f"Ideal({inner})"

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        return Ideal(self.ring, self.gens + other.gens)

    def _coerce(self, other):
        if isinstance(other, Ideal):
            if other.ring is not self.ring:
                raise RingMismatchError("ideals over different rings")
            return other
        if isinstance(other, Poly):
            return Ideal(self.ring, [other])
        if isinstance(other, (list, tuple)):
            return Ideal(self.ring, other)
        raise TypeError(f"cannot treat {other!r} as an ideal")

    def product(self, other):
        other = self._coerce(other)
        prods = [a * b for a in self.gens for b in other.gens]
        return Ideal(self.ring, prods)

    def power(self, k):
        out = Ideal(self.ring, [self.ring.one()])
        for _ in range(k):
            out = out.product(self)
        return out

    def intersect(self, other):
        """Intersection via a single auxiliary elimination variable."""
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return Ideal(self.ring, [])
        R = self.ring
        E = R.extended(("#t",))
        t = E.variable(0)
        one = E.one()

        def lift(f):
            return E.from_terms({(0,) + m: c for m, c in f.terms.items()})

        gens = [t * lift(f) for f in self.gens]
        gens += [(one - t) * lift(g) for g in other.gens]
        gb = buchberger(gens, order=Elimination(1))
        kept = []
        for g in gb.elements:
            if all(m[0] == 0 for m in g.terms):
                kept.append(R.from_terms({m[1:]: c for m, c in g.terms.items()}))
        return Ideal(R, kept)

    def colon_element(self, f: Poly):
        """(I : f) by the syzygy method: relations of [f | gens] in the first slot."""
        if f.is_zero():
            return Ideal(self.ring, [self.ring.one()])
        if self.is_zero():
            return Ideal(self.ring, [])
        syz = syzygies([f] + list(self.gens))
        out = []
        for s in syz:
            coeff = {m: c for (pos, m), c in s.items() if pos == 0}
            if coeff:
                out.append(Poly(self.ring, coeff))
        return Ideal(self.ring, out)

    def colon(self, other):
        """(I : J) in one syzygy run: f with f*g in I for every generator g of J.

        Realized as the scalar colon of the block module (+)_t I e_t by the
        diagonal vector (g_1, ..., g_k); no auxiliary intersections needed.
        """
        other = self._coerce(other)
        if not other.gens:
            return Ideal(self.ring, [self.ring.one()])
        if len(other.gens) == 1:
            return self.colon_element(other.gens[0])
        k = len(other.gens)
        diag = {}
        for t, g in enumerate(other.gens):
            for m, c in g.terms.items():
                diag[(t, m)] = c
        rels = [{(t, m): c for m, c in g.terms.items()}
                for t in range(k) for g in self.gens]
        syz = syzygies_raw([diag] + rels, k, self.ring)
        out = []
        for s in syz:
            comp = {m: c for (pos, m), c in s.items() if pos == 0}
            if comp:
                out.append(Poly(self.ring, comp))
        return Ideal(self.ring, out)

    def saturation(self, other):
        """(I : other^infinity), by iterating the colon to a fixpoint."""
        current = self
        while True:
            nxt = current.colon(other)
            if nxt == current:
                return current
            current = nxt

    # -- combinatorics of the initial ideal ------------------------------------
    def krull_dimension(self) -> int:
        """dim S/I via maximal independent variable sets modulo the initial ideal.

        Returns -1 for the unit ideal; nvars for the zero ideal.
        """
        if self._dim is not None:
            return self._dim
        R = self.ring
        if self.is_zero():
            self._dim = R.nvars
            return self._dim
        gb = self.groebner()
        if gb.is_unit_ideal():
            self._dim = -1
            return self._dim
        leads = gb.leads
        n = R.nvars
        supports = [frozenset(i for i, e in enumerate(m) if e) for m in leads]
        best = 0
        for size in range(n, 0, -1):
            found = False
            for subset in combinations(range(n), size):
                sset = set(subset)
                if all(not s <= sset for s in supports):
                    found = True
                    break
            if found:
                best = size
                break
        self._dim = best
        return best

    def is_artinian_quotient(self) -> bool:
        """True when S/I is finite dimensional over the field."""
        if self.is_zero():
            return self.ring.nvars == 0
        gb = self.groebner()
        if gb.is_unit_ideal():
            return True
        n = self.ring.nvars
        for i in range(n):
            if not any(all(e == 0 for j, e in enumerate(m) if j != i) and m[i] > 0
                       for m in gb.leads):
                return False
        return True

    def standard_monomials(self, degree_bound=None):
        """Monomials outside the initial ideal, ascending in the active order.

        With no bound the quotient must be Artinian (NotArtinianError otherwise);
        the result is then the full finite monomial basis of S/I.
        """
        gb = self.groebner()
        if gb.is_unit_ideal():
            return []
        leads = gb.leads
        n = self.ring.nvars
        if degree_bound is None and not self.is_artinian_quotient():
            raise NotArtinianError("quotient is not Artinian; pass a degree bound")
        out = []
        level = [(0,) * n]
        degree = 0
        while level:
            out.extend(level)
            if degree_bound is not None and degree >= degree_bound:
                break
            nxt = set()
            for m in level:
                for i in range(n):
                    cand = m[:i] + (m[i] + 1,) + m[i + 1:]
                    if not any(_divides(lm, cand) for lm in leads):
                        nxt.add(cand)
            level = sorted(nxt, key=self.ring.order.key)
            degree += 1
        out.sort(key=self.ring.order.key)
        return out

    def vector_space_dimension(self) -> int:
        return len(self.standard_monomials())

    def minimal_generators(self):
        """A minimal generating set, by greedy redundancy pruning (homogeneous input).

        Monomial input is pruned by divisibility alone, which is exact there.
        """
        if self._mingens is not None:
            return self._mingens
        gens = sorted(self.gens, key=lambda g: (g.degree(), self.ring.order.key(g.lead_monomial())))
        if self.is_monomial():
            monos = [next(iter(g.terms)) for g in gens]
            kept = []
            for g, m in zip(gens, monos):
                if not any(_divides(next(iter(k.terms)), m) for k in kept):
                    kept.append(g)
            self._mingens = tuple(kept)
            return self._mingens
        kept = []
        for i, g in enumerate(gens):
            rest = kept + gens[i + 1:]
            if not rest:
                kept.append(g)
                continue
            if not Ideal(self.ring, rest).contains(g):
                kept.append(g)
        self._mingens = tuple(kept)
        return self._mingens

    def normal_form(self, f: Poly) -> Poly:
        return self.groebner().normal_form(f)


def maximal_ideal(ring_: Ring) -> Ideal:
    return Ideal(ring_, ring_.gens())


def unit_ideal(ring_: Ring) -> Ideal:
    return Ideal(ring_, [ring_.one()])


def ideal_sum(a: Ideal, b) -> Ideal:
    return a + b


def monomials_outside(leads, n, degree):
    """Monomials of total degree `degree` not divisible by any of `leads`."""
    return [m for m in monomials_of_degree(n, degree)
            if not any(_divides(lm, m) for lm in leads)]
