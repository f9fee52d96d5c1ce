"""Finitely presented graded modules, free resolutions, Ext, derived invariants.

A module is presented as F/N: a free module with generator degrees (`shifts`)
and a list of homogeneous relation columns (raw vectors, as in `groebner`).

The architectural rule of the whole package lives here: local cohomology is
never materialized.  Every statement about H^i of a module M over the ambient
ring in n variables is read off the finitely generated module Ext^{n-i}(M, S)
through graded duality -- socle dimensions become minimal generator counts,
annihilators become Ext annihilators, Hilbert functions get degree-reversed
(with a shift by n).  H^i itself is an infinite-dimensional object; its dual
is finite data, so the dual is what we compute.
"""

from __future__ import annotations

import numpy as np

from .errors import PreconditionError, ZeroModuleError
from .groebner import (Ideal, ModuleGB, _divides, module_groebner, syzygies_raw,
                       unit_ideal)
from .linalg import SpanTracker
from .ring import Poly, Ring, monomials_of_degree

_CYCLIC_CACHE: dict = {}


# ---------------------------------------------------------------------------
# Raw-vector utilities shared by the homological routines.

def vec_degree(vec, shifts):
    """Degree of a homogeneous raw vector; raises on inhomogeneous input."""
    degs = {sum(m) + shifts[pos] for (pos, m) in vec}
    if len(degs) != 1:
        raise PreconditionError(f"inhomogeneous column (degrees {sorted(degs)})")
    return degs.pop()


def poly_times_vec(poly_terms, vec, p):
    out = {}
    for pm, c in poly_terms.items():
        for (pos, m), v in vec.items():
            key = (pos, tuple(a + b for a, b in zip(pm, m)))
            w = (out.get(key, 0) + c * v) % p
            if w:
                out[key] = w
            else:
                out.pop(key, None)
    return out


def vec_sub(a, b, p):
    out = dict(a)
    for k, v in b.items():
        w = (out.get(k, 0) - v) % p
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def vec_component(vec, pos):
    return {m: c for (q, m), c in vec.items() if q == pos}


def vec_drop_position(vec, pos):
    """Remove position `pos` and renumber the later ones down by one."""
    out = {}
    for (q, m), c in vec.items():
        if q == pos:
            continue
        out[(q - 1 if q > pos else q, m)] = c
    return out


def minimal_vec_generators(vecs, shifts, ring_: Ring):
    """Select a minimal generating set from homogeneous vectors, degreewise.

    Graded Nakayama, run as linear algebra: a candidate of degree d is
    redundant exactly when it lies in the span of (monomial multiples of)
    already-kept generators in degree d.
    """
    p = ring_.field.p
    n = ring_.nvars
    items = [(vec_degree(v, shifts), v) for v in vecs if v]
    items.sort(key=lambda t: t[0])
    kept: list = []
    kept_degs: list = []
    i = 0
    while i < len(items):
        d = items[i][0]
        batch = []
        while i < len(items) and items[i][0] == d:
            batch.append(items[i][1])
            i += 1
        # Span of earlier generators in degree d.
        span_vecs = []
        for w, e in zip(kept, kept_degs):
            if e >= d:
                continue
            for mono in monomials_of_degree(n, d - e):
                span_vecs.append(poly_times_vec({mono: 1}, w, p))
        keys = sorted({k for v in span_vecs for k in v} | {k for v in batch for k in v})
        index = {k: j for j, k in enumerate(keys)}
        tracker = SpanTracker(len(keys), p)

        def densify(v):
            row = np.zeros(len(keys), dtype=np.int64)
            for k, c in v.items():
                row[index[k]] = c
            return row

        for v in span_vecs:
            tracker.add(densify(v))
        for v in batch:
            if tracker.add(densify(v)):
                kept.append(v)
                kept_degs.append(d)
    return kept


# ---------------------------------------------------------------------------

class FreeResolution:
    """A complex of graded free modules ... -> F_1 -> F_0.

    `shifts[k]` lists the generator degrees of F_k; `diffs[k]` holds the
    columns of the map F_{k+1} -> F_k as raw vectors over F_k's positions.
    """

    def __init__(self, ring_: Ring, shifts, diffs, minimal=False):
        self.ring = ring_
        self.shifts = [tuple(s) for s in shifts]
        self.diffs = [list(cols) for cols in diffs]
        self.minimal = minimal

    @property
    def length(self) -> int:
        return len(self.shifts) - 1

    def betti_numbers(self):
        return tuple(len(s) for s in self.shifts)

    def betti_table(self):
        table = {}
        for k, degs in enumerate(self.shifts):
            for d in degs:
                table[(k, d)] = table.get((k, d), 0) + 1
        return table

    def check_complex(self):
        """Assert that consecutive differentials compose to zero."""
        p = self.ring.field.p
        for k in range(len(self.diffs) - 1):
            lower = self.diffs[k]
            for col in self.diffs[k + 1]:
                acc: dict = {}
                for (pos, m), c in col.items():
                    piece = poly_times_vec({m: c}, lower[pos], p)
                    acc = vec_sub(acc, {kk: (p - v) % p for kk, v in piece.items()}, p)
                if acc:
                    raise AssertionError(f"d_{k + 1} o d_{k + 2} != 0")
        return True

    def has_unit_entries(self) -> bool:
        zero = (0,) * self.ring.nvars
        return any(m == zero for cols in self.diffs for col in cols for (_, m) in col)

    def print_betti(self):
        return " -> ".join(f"F{k}{sorted(s)}" for k, s in enumerate(self.shifts))


def minimalize_complex(res: FreeResolution) -> FreeResolution:
    """Cancel trivial summands (unit entries) until none remain.

    Standard Gaussian cancellation on the complex: a scalar entry u at
    (row i, column j) of d_k removes one generator from F_k and one from
    F_{k-1}; the neighbouring differentials lose the matching column and row,
    and d_k picks up the correction term -c u^{-1} b.  Exact over a field, no
    tolerances involved.  Homology is unchanged.
    """
    p = res.ring.field.p
    zero = (0,) * res.ring.nvars
    shifts = [list(s) for s in res.shifts]
    diffs = [[dict(c) for c in cols] for cols in res.diffs]

    while True:
        hit = None
        for k, cols in enumerate(diffs):
            for j, col in enumerate(cols):
                for (pos, m), c in col.items():
                    if m == zero:
                        hit = (k, j, pos, c)
                        break
                if hit:
                    break
            if hit:
                break
        if hit is None:
            break
        k, j, i, u = hit
        uinv = pow(u, p - 2, p)
        pivot_col = diffs[k][j]
        c_vec = {key: v for key, v in pivot_col.items() if key != (i, zero)}
        # d_k: correct the other columns, then drop column j and row i.
        new_cols = []
        for jj, col in enumerate(diffs[k]):
            if jj == j:
                continue
            b = vec_component(col, i)  # row-i entry of this column
            if b:
                col = vec_sub(col, poly_times_vec({m: (c * uinv) % p for m, c in b.items()},
                                                  c_vec, p), p)
            col = {key: v for key, v in col.items() if key[0] != i}
            new_cols.append(vec_drop_position(col, i))
        diffs[k] = new_cols
        # d_{k+1}: drop row j (position j of its columns).
        if k + 1 < len(diffs):
            diffs[k + 1] = [vec_drop_position({key: v for key, v in col.items()
                                               if key[0] != j}, j)
                            for col in diffs[k + 1]]
        # d_{k-1}: drop column i.
        if k - 1 >= 0:
            diffs[k - 1] = [col for jj, col in enumerate(diffs[k - 1]) if jj != i]
        del shifts[k + 1][j]
        del shifts[k][i]
        # Trim empty tail steps.
        while diffs and not shifts[len(diffs)]:
            diffs.pop()
            shifts.pop()
    return FreeResolution(res.ring, shifts, diffs, minimal=True)


# ---------------------------------------------------------------------------

class Module:
    """Finitely presented graded module over the ambient polynomial ring."""

    def __init__(self, ring_: Ring, shifts, relations, cyclic_ideal: Ideal | None = None,
                 check=True):
        self.ring = ring_
        self.shifts = tuple(shifts)
        rels = []
        for r in relations:
            if r:
                rels.append(dict(r))
        self.relations = tuple(rels)
        self.cyclic_ideal = cyclic_ideal
        if check:
            for r in self.relations:
                vec_degree(r, self.shifts)  # raises when inhomogeneous
        self._rel_gb: ModuleGB | None = None
        self._resolution: FreeResolution | None = None
        self._ext: dict = {}
        self._min_pres = None
        self._ann: Ideal | None = None
        self._dim = None
        self._depth = None
        self._socle = None  # filled by the cohomology layer

    # -- constructors ---------------------------------------------------------
    @staticmethod
    def cyclic(ideal: Ideal) -> "Module":
        """S/I with its single degree-0 generator; presentations are cached."""
        for g in ideal.gens:
            if not g.is_homogeneous():
                raise PreconditionError(f"inhomogeneous ideal generator {g}")
        key = (id(ideal.ring), tuple(sorted(hash(g) for g in ideal.gens)))
        cached = _CYCLIC_CACHE.get(key)
        if cached is not None:
            return cached
        rels = [{(0, m): c for m, c in g.terms.items()} for g in ideal.gens]
        M = Module(ideal.ring, (0,), rels, cyclic_ideal=ideal, check=False)
        _CYCLIC_CACHE[key] = M
        return M

    @staticmethod
    def free(ring_: Ring, rank: int = 1, shifts=None) -> "Module":
        return Module(ring_, shifts or (0,) * rank, [])

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def relation_gb(self) -> ModuleGB:
        if self._rel_gb is None:
            self._rel_gb = module_groebner(list(self.relations), self.rank, self.ring)
        return self._rel_gb

    # -- minimal presentation ---------------------------------------------------
    def minimal_presentation(self):
        """(shifts, relations) with unit entries pivoted away; Nakayama-minimal."""
        if self._min_pres is not None:
            return self._min_pres
        p = self.ring.field.p
        zero = (0,) * self.ring.nvars
        shifts = list(self.shifts)
        rels = [dict(r) for r in self.relations]
        while True:
            hit = None
            for ri, r in enumerate(rels):
                for (pos, m), c in r.items():
                    if m == zero:
                        hit = (ri, pos, c)
                        break
                if hit:
                    break
            if hit is None:
                break
            ri, pos, c = hit
            r = rels.pop(ri)
            cinv = pow(c, p - 2, p)
            w = {key: v for key, v in r.items() if key != (pos, zero)}
            out = []
            for other in rels:
                q = vec_component(other, pos)
                if q:
                    # e_pos == -c^{-1} w modulo the relations.
                    other = vec_sub(other, {k: v for k, v in other.items() if k[0] == pos}, p)
                    other = vec_sub(other, poly_times_vec(
                        {m: (v * cinv) % p for m, v in q.items()}, w, p), p)
                out.append(vec_drop_position(other, pos))
            rels = [r2 for r2 in out if r2]
            del shifts[pos]
        # Prune to a minimal relation set so beta_1 is honest too.
        rels = minimal_vec_generators(rels, shifts, self.ring)
        self._min_pres = (tuple(shifts), tuple(rels))
        return self._min_pres

    def minimal_generator_count(self) -> int:
        return len(self.minimal_presentation()[0])

    def minimal_generator_degrees(self):
        return self.minimal_presentation()[0]

    def is_zero(self) -> bool:
        return self.minimal_generator_count() == 0

    # -- resolution -------------------------------------------------------------
    def resolution(self, minimal: bool = True) -> FreeResolution:
        """Free resolution by iterated syzygies.

        With `minimal` set (the default and the cached variant) every kernel is
        presented by a degreewise-minimal generating set, which makes the whole
        resolution minimal; length is then bounded by the variable count.
        """
        if minimal and self._resolution is not None:
            return self._resolution
        if minimal:
            shifts0, rels0 = self.minimal_presentation()
        else:
            shifts0, rels0 = self.shifts, list(self.relations)
        shifts = [tuple(shifts0)]
        diffs = []
        current = list(rels0)
        current_shifts = list(shifts0)
        guard = 2 * self.ring.nvars + 4
        while current:
            if len(diffs) > guard:
                raise PreconditionError("resolution exceeded the length guard; "
                                        "presentation is likely inhomogeneous")
            degs = [vec_degree(v, current_shifts) for v in current]
            diffs.append(list(current))
            shifts.append(tuple(degs))
            syz = syzygies_raw(current, len(current_shifts), self.ring)
            if minimal:
                syz = minimal_vec_generators(syz, degs, self.ring)
            current_shifts = degs
            current = syz
        res = FreeResolution(self.ring, shifts, diffs, minimal=minimal)
        if minimal:
            self._resolution = res
        return res

    def projective_dimension(self) -> int:
        if self.is_zero():
            raise ZeroModuleError("projective dimension of the zero module")
        return self.resolution().length

    # -- Ext^j(M, S) --------------------------------------------------------------
    def ext(self, j: int) -> "Module":
        """Presentation of Ext^j(M, S), minimalized; the dual face of H^{n-j}."""
        if j in self._ext:
            return self._ext[j]
        n = self.ring.nvars
        if j < 0 or j > n:
            raise PreconditionError(f"Ext index {j} out of range 0..{n}")
        res = self.resolution()
        length = res.length
        if j > length or self.is_zero():
            out = Module(self.ring, (), [], check=False)
            self._ext[j] = out
            return out
        dual_shifts = tuple(-s for s in res.shifts[j])
        rank_j = len(res.shifts[j])
        # Kernel of the dualized outgoing map (transpose of d_{j+1}).
        if j < length:
            cols_out = res.diffs[j]  # columns of F_{j+1} -> F_j
            rank_next = len(res.shifts[j + 1])
            transpose_cols = []
            for r in range(rank_j):
                col = {}
                for cidx, column in enumerate(cols_out):
                    for (pos, m), c in column.items():
                        if pos == r:
                            col[(cidx, m)] = c
                transpose_cols.append(col)
            kernel = syzygies_raw(transpose_cols, rank_next, self.ring)
            # syzygy coordinates line up with F_j* basis vectors
        else:
            zero = (0,) * n
            kernel = [{(r, zero): 1} for r in range(rank_j)]
        # Image of the dualized incoming map (transpose of d_j).
        image = []
        if j >= 1:
            cols_in = res.diffs[j - 1]  # columns of F_j -> F_{j-1}
            rank_prev = len(res.shifts[j - 1])
            for r in range(rank_prev):
                col = {}
                for cidx, column in enumerate(cols_in):
                    for (pos, m), c in column.items():
                        if pos == r:
                            col[(cidx, m)] = c
                if col:
                    image.append(col)
        out = module_subquotient(kernel, image, rank_j, dual_shifts, self.ring)
        self._ext[j] = out
        return out

    # -- invariants ---------------------------------------------------------------
    def annihilator(self) -> Ideal:
        """Ann(M) as the intersection of the scalar colons (N : e_i)."""
        if self._ann is not None:
            return self._ann
        shifts, rels = self.minimal_presentation()
        if not shifts:
            self._ann = unit_ideal(self.ring)
            return self._ann
        zero = (0,) * self.ring.nvars
        ann = None
        for i in range(len(shifts)):
            basis_vec = {(i, zero): 1}
            syz = syzygies_raw([basis_vec] + list(rels), len(shifts), self.ring)
            coeffs = []
            for s in syz:
                comp = vec_component(s, 0)
                if comp:
                    coeffs.append(Poly(self.ring, comp))
            colon = Ideal(self.ring, coeffs)
            ann = colon if ann is None else ann.intersect(colon)
            if ann.is_zero():
                break
        self._ann = ann
        return ann

    def dim(self) -> int:
        """Krull dimension; ZeroModuleError for the zero module."""
        if self._dim is None:
            if self.is_zero():
                raise ZeroModuleError("dimension of the zero module")
            if self.cyclic_ideal is not None:
                self._dim = self.cyclic_ideal.krull_dimension()
            else:
                self._dim = self.annihilator().krull_dimension()
        return self._dim

    def depth(self) -> int:
        """depth = n - max{j : Ext^j(M, S) != 0}; consistent with Auslander-Buchsbaum."""
        if self._depth is None:
            if self.is_zero():
                raise ZeroModuleError("depth of the zero module")
            n = self.ring.nvars
            for j in range(self.projective_dimension(), -1, -1):
                if not self.ext(j).is_zero():
                    self._depth = n - j
                    break
            else:
                raise AssertionError("no nonvanishing Ext against a nonzero module")
        return self._depth

    def is_cohen_macaulay(self) -> bool:
        return self.depth() == self.dim()

    # -- Hilbert data ----------------------------------------------------------------
    def hilbert_function(self, degrees):
        """dim_k M_d for each d in `degrees`, via standard module monomials."""
        shifts, rels = self.minimal_presentation()
        if not shifts:
            return {d: 0 for d in degrees}
        gb = module_groebner(list(rels), len(shifts), self.ring)
        key = self.ring.order.key
        n = self.ring.nvars
        per_pos = {pos: [m for (q, m) in gb.leads if q == pos] for pos in range(len(shifts))}
        out = {}
        for d in degrees:
            total = 0
            for pos, s in enumerate(shifts):
                e = d - s
                if e < 0:
                    continue
                leads = per_pos[pos]
                total += sum(1 for m in monomials_of_degree(n, e)
                             if not any(_divides(lm, m) for lm in leads))
            out[d] = total
        return out

    def hilbert_numerator(self):
        """Numerator of the Hilbert series over (1-t)^n, from the minimal resolution."""
        res = self.resolution()
        numer: dict = {}
        sign = 1
        for degs in res.shifts:
            for s in degs:
                numer[s] = numer.get(s, 0) + sign
            sign = -sign
        return {d: c for d, c in sorted(numer.items()) if c}

    def length(self):
        """Total vector-space dimension; None when the module is not Artinian."""
        if self.is_zero():
            return 0
        if self.dim() > 0:
            return None
        shifts, rels = self.minimal_presentation()
        gb = module_groebner(list(rels), len(shifts), self.ring)
        n = self.ring.nvars
        total = 0
        for pos in range(len(shifts)):
            leads = [m for (q, m) in gb.leads if q == pos]
            # dim 0 forces a pure power of every variable into each position.
            count, level, deg = 1, [(0,) * n], 0
            while True:
                nxt = set()
                for m in level:
                    for i in range(n):
                        cand = m[:i] + (m[i] + 1,) + m[i + 1:]
                        if not any(_divides(lm, cand) for lm in leads):
                            nxt.add(cand)
                if not nxt:
                    break
                count += len(nxt)
                level = sorted(nxt)
                deg += 1
                if deg > 512:
                    raise PreconditionError("length enumeration diverged")
            total += count
        return total

    def __repr__(self):
        if self.cyclic_ideal is not None:
            return f"Module(S/{self.cyclic_ideal!r})"
        return f"Module(rank {self.rank}, {len(self.relations)} relations)"


def module_subquotient(gens, image, ambient_rank, ambient_shifts, ring_: Ring) -> Module:
    """Present span(gens)/span(image) inside a free module, via one syzygy run.

    Relations of the subquotient are the syzygies of [gens | image] projected
    to the generator coordinates.  The result is returned minimalized.
    """
    if not gens:
        return Module(ring_, (), [], check=False)
    degs = [vec_degree(g, ambient_shifts) for g in gens]
    combined = list(gens) + list(image)
    syz = syzygies_raw(combined, ambient_rank, ring_)
    t = len(gens)
    rels = []
    for s in syz:
        proj = {(pos, m): c for (pos, m), c in s.items() if pos < t}
        if proj:
            rels.append(proj)
    M = Module(ring_, tuple(degs), rels)
    shifts, min_rels = M.minimal_presentation()
    return Module(ring_, shifts, min_rels, check=False)


def subquotient_presentation(A: Ideal, B: Ideal) -> Module:
    """The module A/B for nested ideals B <= A (containment is verified)."""
    if not A.contains_ideal(B):
        raise PreconditionError("subquotient requires B contained in A")
    R = A.ring
    gens_a = A.minimal_generators()
    for g in gens_a:
        if not g.is_homogeneous():
            raise PreconditionError("subquotient requires homogeneous generators")
    gens = [{(0, m): c for m, c in g.terms.items()} for g in gens_a]
    image = [{(0, m): c for m, c in g.terms.items()} for g in B.gens]
    return module_subquotient(gens, image, 1, (0,), R)


def taylor_resolution(ideal: Ideal) -> FreeResolution:
    """The Taylor complex on a monomial generating set (exact, rarely minimal).

    Independent of the syzygy pipeline, so it serves as a cross-oracle for
    monomial Betti numbers after `minimalize_complex`.
    """
    if not ideal.is_monomial():
        raise PreconditionError("Taylor complex needs monomial generators")
    R = ideal.ring
    gens = []
    seen = set()
    for g in ideal.gens:
        m = next(iter(g.terms))
        if m not in seen:
            seen.add(m)
            gens.append(m)
    # Prune non-minimal monomial generators.
    gens = [m for m in gens if not any(n != m and _divides(n, m) for n in gens)]
    g = len(gens)
    if g > 20:
        raise PreconditionError(f"Taylor complex on {g} generators would have 2^{g} faces")
    if g == 0:
        return FreeResolution(R, [(0,)], [], minimal=True)

    from itertools import combinations as _comb

    def lcm_of(subset):
        out = [0] * R.nvars
        for i in subset:
            out = [max(a, b) for a, b in zip(out, gens[i])]
        return tuple(out)

    shifts = [(0,)]
    diffs = []
    prev_faces = {(): 0}
    for k in range(1, g + 1):
        faces = list(_comb(range(g), k))
        index = {f: i for i, f in enumerate(faces)}
        shifts.append(tuple(sum(lcm_of(f)) for f in faces))
        cols = []
        for f in faces:
            col = {}
            big = lcm_of(f)
            for idx, i in enumerate(f):
                sub = tuple(x for x in f if x != i)
                small = lcm_of(sub)
                quot = tuple(a - b for a, b in zip(big, small))
                coeff = 1 if idx % 2 == 0 else R.field.p - 1
                col[(prev_faces[sub], quot)] = coeff
            cols.append(col)
        diffs.append(cols)
        prev_faces = index
    return FreeResolution(R, shifts, diffs, minimal=False)


def module_invariants(M: Module):
    """dim, depth, annihilator and Hilbert-series numerator in one record."""
    if M.is_zero():
        raise ZeroModuleError("invariants of the zero module requested")
    return {
        "dim": M.dim(),
        "depth": M.depth(),
        "annihilator": M.annihilator(),
        "hilbert_numerator": M.hilbert_numerator(),
    }
