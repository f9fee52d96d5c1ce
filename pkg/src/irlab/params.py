"""Parameter elements and systems, certified deep systems, index of reducibility.

Deep systems are built back to front: the last element is drawn from the cube
of the product of the low local-cohomology annihilators of M, and each earlier
element from the same cube ideal of the successive quotient.  The cube of the
annihilator product sits inside the cube of the (uncomputable) colon-annihilator
intersection ideal, so every certificate carries the tag "ann-product-cube" to
make the surrogate auditable.

The index of reducibility of a parameter ideal is the socle dimension of the
Artinian quotient.  Two algorithms with no shared machinery compute it and
must agree: a degreewise span computation straight from the raw generators
(plain linear algebra, no bases computed), and the common kernel of the
variable multiplication maps on the reduced monomial basis (which leans on
the Groebner engine).  Their lengths are cross-checked too; any disagreement
aborts loudly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (MethodDisagreement, PreconditionError, SearchExhausted,
                     ZeroModuleError)
from .groebner import Ideal
from .linalg import nullity_mod_p
from .modules import Module
from .ring import Poly, monomials_of_degree

_MASK = (1 << 64) - 1


class Rng:
    """Deterministic splitmix64 stream; spawn() derives independent substreams."""

    def __init__(self, seed: int):
        self.state = seed & _MASK

    @staticmethod
    def _mix(z: int) -> int:
        z = (z + 0x9E3779B97F4A7C15) & _MASK
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return (z ^ (z >> 31)) & _MASK

    def next_int(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return (z ^ (z >> 31)) & _MASK

    def below(self, n: int) -> int:
        return self.next_int() % n

    def spawn(self, index: int) -> "Rng":
        return Rng(self._mix(self.state ^ self._mix(index + 0xA5A5A5A5)))


@dataclass(frozen=True)
class StageCertificate:
    """What was checked while producing one element of a deep system."""

    index: int              # which x_i (1-based, elements are built from the top down)
    degree: int
    seed: int
    dim_before: int
    dim_after: int
    constraint_gens: tuple  # printed generators of the cube ideal used


@dataclass(frozen=True)
class ParameterSystem:
    elements: tuple
    stages: tuple
    min_degree: int
    seed: int
    method: str = "ann-product-cube"

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def ideal(self, ring_) -> Ideal:
        return Ideal(ring_, list(self.elements))

    def to_payload(self):
        return {
            "elements": [str(x) for x in self.elements],
            "stages": [{
                "index": s.index,
                "degree": s.degree,
                "seed": s.seed,
                "dim_drop": [s.dim_before, s.dim_after],
                "cube_gens": list(s.constraint_gens),
            } for s in self.stages],
            "min_degree": self.min_degree,
            "seed": self.seed,
            "method": self.method,
        }


def is_system_of_parameters(elements, ideal: Ideal) -> bool:
    """True when the elements cut the dimension of S/I down to zero, one by one."""
    M = Module.cyclic(ideal)
    if M.is_zero():
        raise ZeroModuleError("parameter systems of the zero module")
    d = M.dim()
    elems = list(elements)
    if len(elems) != d:
        return False
    current = ideal
    expected = d
    for x in elems:
        current = current + x
        expected -= 1
        if current.krull_dimension() != expected:
            return False
    return True


def find_parameter_element(ideal: Ideal, constraint: Ideal, min_degree: int,
                           rng: Rng, tries_per_degree: int = 12,
                           extra_degrees: int = 8) -> Poly:
    """A homogeneous element of `constraint`, of degree >= min_degree, that
    drops dim S/I by one.

    Candidates are random field combinations of {g * u} with g running over the
    constraint generators and u over the monomials padding g up to the target
    degree.  The degree escalates from the least achievable value; exhaustion
    raises SearchExhausted with the attempted degrees.
    """
    R = ideal.ring
    p = R.field.p
    if constraint.is_zero():
        raise PreconditionError("parameter search needs a nonzero constraint ideal")
    d = ideal.krull_dimension()
    if d < 1:
        raise PreconditionError("parameter elements need positive dimension")
    gens = [g for g in constraint.minimal_generators()]
    for g in gens:
        if not g.is_homogeneous():
            raise PreconditionError("constraint generators must be homogeneous")
    least = min(g.degree() for g in gens)
    start = max(min_degree, least, 1)
    attempted = []
    for degree in range(start, start + extra_degrees + 1):
        pool = []
        for g in gens:
            pad = degree - g.degree()
            if pad < 0:
                continue
            for mono in monomials_of_degree(R.nvars, pad):
                pool.append(g.term_mul(mono, 1))
        if not pool:
            attempted.append(degree)
            continue
        for attempt in range(tries_per_degree):
            # Sparse combinations keep the downstream bases small; the density
            # doubles per attempt until the whole pool participates, so the
            # final attempts are dense and prime avoidance is near certain.
            want = min(len(pool), 4 << attempt)
            order = list(range(len(pool)))
            for t in range(want):
                j = t + rng.below(len(pool) - t)
                order[t], order[j] = order[j], order[t]
            cand = R.zero()
            for idx in sorted(order[:want]):
                cand = cand + pool[idx].scale(1 + rng.below(p - 1))
            if cand.is_zero():
                continue
            if (ideal + cand).krull_dimension() == d - 1:
                return cand
        attempted.append(degree)
    raise SearchExhausted(
        f"no parameter element found in the constraint ideal "
        f"(degrees tried: {attempted})", attempted)


def construct_c_sop(ideal: Ideal, min_degree: int = 1, seed: int = 0) -> ParameterSystem:
    """A deep system of parameters certified through the annihilator-cube route.

    Stage i (from d down to 1) computes the cohomology-annihilator product of
    the current quotient, cubes it, and draws the element there; the recorded
    stage certificates make the construction reproducible and auditable.
    """
    from .cohomology import annihilator_data

    M = Module.cyclic(ideal)
    if M.is_zero():
        raise ZeroModuleError("deep systems of the zero module")
    d = M.dim()
    if d < 1:
        raise PreconditionError("deep systems need positive dimension")
    rng = Rng(seed)
    elements: list = [None] * d
    stages = []
    current = ideal
    for i in range(d, 0, -1):
        M_cur = Module.cyclic(current)
        ann = annihilator_data(M_cur)
        cube = ann.product.power(3)
        cube = Ideal(ideal.ring, cube.minimal_generators())
        stage_rng = rng.spawn(i)
        try:
            x = find_parameter_element(current, cube, min_degree, stage_rng)
        except SearchExhausted as exc:
            raise SearchExhausted(f"stage {i}: {exc}", exc.attempted_degrees) from exc
        dim_before = M_cur.dim()
        current = current + x
        dim_after = current.krull_dimension()
        elements[i - 1] = x
        stages.append(StageCertificate(
            index=i, degree=x.degree(), seed=stage_rng.state,
            dim_before=dim_before, dim_after=dim_after,
            constraint_gens=tuple(str(g) for g in cube.gens)))
    return ParameterSystem(tuple(elements), tuple(reversed(stages)), min_degree, seed)


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IrResult:
    value: int
    length: int
    methods: dict

    def to_payload(self):
        return {"value": self.value, "length": self.length,
                "methods": dict(self.methods), "agree": True}


def _socle_by_degreewise_spans(gens, ring_):
    """(socle dimension, length) of S/(gens) by raw degreewise linear algebra.

    Never touches the Groebner engine: in each degree e the slice J_e is
    spanned by variable shifts of J_{e-1} plus the new generators, held in
    reduced row echelon form, and the degree-e socle is

        dim{f in S_e : x_v f in J_{e+1} for all v}  -  dim J_e,

    read off matrix ranks.  Homogeneous generators and an Artinian quotient
    are required (the loop stops at the first empty slice of S/J).
    """
    from .linalg import rref_mod_p
    from .ring import monomials_of_degree

    p = ring_.field.p
    n = ring_.nvars
    gens = [g for g in gens if not g.is_zero()]
    for g in gens:
        if not g.is_homogeneous():
            raise PreconditionError("degreewise socle needs homogeneous generators")
    by_degree: dict = {}
    for g in gens:
        by_degree.setdefault(g.degree(), []).append(g)

    def densify(polys, monos):
        index = {m: i for i, m in enumerate(monos)}
        A = np.zeros((len(polys), len(monos)), dtype=np.int64)
        for r, g in enumerate(polys):
            for m, c in g.terms.items():
                A[r, index[m]] = c
        return A

    def shift_matrix(rows, monos_lo, monos_hi, v):
        index_hi = {m: i for i, m in enumerate(monos_hi)}
        cols = [index_hi[m[:v] + (m[v] + 1,) + m[v + 1:]] for m in monos_lo]
        out = np.zeros((rows.shape[0], len(monos_hi)), dtype=np.int64)
        out[:, cols] = rows
        return out

    def reduce_mod(batch, rref_rows, pivots):
        if not pivots or batch.size == 0:
            return batch % p
        return (batch - (batch[:, pivots] % p) @ rref_rows) % p

    total_socle = 0
    total_length = 0
    # slice e = 0
    monos_e = monomials_of_degree(n, 0)
    j_rows = np.zeros((0, 1), dtype=np.int64)
    j_pivots: list = []
    e = 0
    while True:
        if e > 600:
            raise PreconditionError("degreewise socle diverged; quotient not Artinian?")
        dim_e = len(monos_e)
        q_e = dim_e - len(j_pivots)
        if q_e == 0:
            break
        total_length += q_e
        # build the next slice J_{e+1}
        monos_next = monomials_of_degree(n, e + 1)
        blocks = [shift_matrix(j_rows, monos_e, monos_next, v) for v in range(n)] \
            if j_rows.size else []
        if by_degree.get(e + 1):
            blocks.append(densify(by_degree[e + 1], monos_next))
        if blocks:
            stacked = np.vstack(blocks)
            next_rows, next_pivots = rref_mod_p(stacked, p)
            next_rows = next_rows[:len(next_pivots)]
        else:
            next_rows = np.zeros((0, len(monos_next)), dtype=np.int64)
            next_pivots = []
        # socle in degree e: f with every shift landing in J_{e+1}
        identity = np.eye(dim_e, dtype=np.int64)
        shifted = [reduce_mod(shift_matrix(identity, monos_e, monos_next, v),
                              next_rows, next_pivots) for v in range(n)]
        condition = np.hstack(shifted)  # rows: monomial basis of S_e
        from .linalg import rank_mod_p
        kernel_dim = dim_e - rank_mod_p(condition, p)
        total_socle += kernel_dim - len(j_pivots)
        monos_e = monos_next
        j_rows, j_pivots = next_rows, list(next_pivots)
        e += 1
    return total_socle, total_length


def socle_dimension_artinian(artinian: Ideal) -> IrResult:
    """Socle dimension of S/J for Artinian J, by two machinery-disjoint routes."""
    R = artinian.ring
    p = R.field.p
    basis = artinian.standard_monomials()
    length = len(basis)
    if length == 0:
        raise PreconditionError("the unit ideal has no socle")
    # Route one: degreewise spans straight from the raw generators.
    by_spans, span_length = _socle_by_degreewise_spans(artinian.gens, R)
    # Route two: common kernel of the multiplication-by-variable maps on the
    # reduced monomial basis.
    index = {m: i for i, m in enumerate(basis)}
    gb = artinian.groebner()
    rows = []
    for v in range(R.nvars):
        mat = np.zeros((length, length), dtype=np.int64)
        for j, m in enumerate(basis):
            shifted = tuple(e + (1 if t == v else 0) for t, e in enumerate(m))
            nf = gb.normal_form(R.monomial(shifted))
            for mono, c in nf.terms.items():
                mat[index[mono], j] = c
        rows.append(mat)
    stacked = np.vstack(rows) if rows else np.zeros((0, length), dtype=np.int64)
    by_kernel = nullity_mod_p(stacked, p)
    if by_spans != by_kernel or span_length != length:
        raise MethodDisagreement(
            f"socle via spans = {by_spans} (length {span_length}), "
            f"via kernels = {by_kernel} (length {length})")
    return IrResult(by_kernel, length,
                    {"degreewise_spans": by_spans, "kernel_intersection": by_kernel})


def index_of_reducibility(elements, ideal: Ideal, verify: bool = True) -> IrResult:
    """ir of the parameter ideal generated by `elements` on S/I."""
    elems = list(elements)
    if verify and not is_system_of_parameters(elems, ideal):
        raise PreconditionError("the supplied elements are not a system of parameters")
    J = ideal + elems
    return socle_dimension_artinian(J)


def is_d_sequence(elements, ideal: Ideal):
    """The colon conditions ((x_1..x_i) : x_{i+1} x_j) = ((x_1..x_i) : x_j).

    Returns (True, None) or (False, (i, j)) with the first violating pair;
    indices follow the definition, so i counts prefix length and j > i.
    """
    elems = list(elements)
    d = len(elems)
    for i in range(d):
        prefix = ideal + elems[:i]
        for j in range(i, d):
            lhs = prefix.colon_element(elems[i] * elems[j])
            rhs = prefix.colon_element(elems[j])
            if lhs != rhs:
                return False, (i, j + 1)
    return True, None


def power_perturbation(system: ParameterSystem, exponents) -> list:
    """Element-wise powers of a deep system (still a deep system, same ir)."""
    return [x ** k for x, k in zip(system.elements, exponents)]
