"""The stable value of the index of reducibility, its closed-form cross-checks,
and the empirical profile of the minimum index over deep parameter ideals.

The stable value N of a module is the common index of reducibility of all
certified deep systems of parameters; it is computed from one construction and
attested by reruns under independent seeds.  For special classes closed
formulas must reproduce it:

  * Cohen-Macaulay:              N = s_d
  * generalized CM:              N = sum_i C(d, i) s_i
  * sequentially generalized CM: the filtration double sum over the quotients
  * sequentially CM:             N = sum_i s_i
  * unmixed, dim 3, depth 2:     N = 2 s_2 + s_3 + s_2(S2-closure), the closure
                                 being supplied by the caller.

The limit profile reports, per depth level n, the minimum observed index over
random parameter systems of degree n.  The true minimum ranges over an
infinite family, so the profile is labelled an empirical upper-bound estimate
and never asserted to be the limit value itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .cohomology import (annihilator_data, cm_flags, local_cohomology_length,
                         socle_dimensions)
from .errors import PreconditionError, SearchExhausted
from .filtration import classify_sequential, unmixed_component
from .groebner import Ideal
from .modules import Module
from .params import (IrResult, ParameterSystem, Rng, construct_c_sop,
                     index_of_reducibility)
from .ring import monomials_of_degree


@dataclass(frozen=True)
class CrossCheck:
    name: str
    applicable: bool
    value: int | None = None
    matches: bool | None = None
    note: str = ""

    def to_payload(self):
        return {"applicable": self.applicable, "value": self.value,
                "matches": self.matches, "note": self.note}


@dataclass(frozen=True)
class StableValueReport:
    value: int
    witness: ParameterSystem
    ir: IrResult
    socle: tuple
    cross_checks: dict
    seed: int

    def all_applicable_match(self) -> bool:
        return all(c.matches for c in self.cross_checks.values()
                   if c.applicable and c.matches is not None)

    def to_payload(self):
        return {
            "N": self.value,
            "witness": self.witness.to_payload(),
            "socle_dims": list(self.socle),
            "cross_checks": {k: v.to_payload() for k, v in sorted(self.cross_checks.items())},
            "seed": self.seed,
        }


def formula_gcm(M: Module):
    """Binomial socle formula for generalized CM modules, with the depth
    threshold 2*n0 below which parameter ideals must sit for it to bite.

    Returns (value, threshold) or None when the module is not generalized CM.
    """
    flags = cm_flags(M)
    if not flags.is_generalized_cm:
        return None
    d = M.dim()
    s = socle_dimensions(M)
    value = sum(comb(d, i) * s[i] for i in range(d + 1))
    if d >= 1:
        n0 = annihilator_data(M).n0
        threshold = 2 * n0 if n0 is not None else None
    else:
        threshold = 0
    return value, threshold


def formula_seq(ideal: Ideal):
    """Filtration double-sum formula for sequentially generalized CM modules.

    Evaluates, over the dimension filtration D_0 <= ... <= D_t = M,

        s_0(M) + sum_{i<t} sum_{j=1..d_{i+1}} (C(d_{i+1}, j) - C(d_i, j)) s_j(M/D_i)

    and, when the module is sequentially CM, verifies the collapse to
    sum_i s_i(M).  Returns (value, collapse_value_or_None) or None when not
    sequentially generalized CM.
    """
    cls = classify_sequential(ideal)
    if not cls.is_sequentially_gcm:
        return None
    filt = cls.filtration
    M = Module.cyclic(ideal)
    s_m = socle_dimensions(M)
    # Filtration dims with the zero/finite-length step flattened to 0.
    dims = [max(0, d) for d in filt.dims] + [filt.top_dim]
    quotient_ideals = list(filt.ideals)  # M/D_i = S/K_i for i = 0..t-1
    t = len(quotient_ideals)
    value = s_m[0]
    for i in range(t):
        Q = Module.cyclic(quotient_ideals[i])
        s_q = socle_dimensions(Q)
        d_i, d_next = dims[i], dims[i + 1]
        for j in range(1, d_next + 1):
            weight = comb(d_next, j) - comb(d_i, j)
            if weight and j < len(s_q.values):
                value += weight * s_q[j]
    collapse = None
    if cls.is_sequentially_cm:
        collapse = s_m.total()
        if collapse != value:
            raise AssertionError(
                f"filtration formula {value} disagrees with socle sum {collapse} "
                f"on a sequentially CM module")
    return value, collapse


def _s2_cokernel(summands, ideal: Ideal) -> Module:
    """Cokernel of the diagonal map S/I -> (+) S/J_k, presented directly."""
    R = ideal.ring
    m = len(summands)
    rels = []
    for k, J in enumerate(summands):
        for g in J.gens:
            rels.append({(k, mono): c for mono, c in g.terms.items()})
    zero = (0,) * R.nvars
    rels.append({(k, zero): 1 for k in range(m)})
    return Module(R, (0,) * m, rels)


def formula_dim3(ideal: Ideal, s2, checks: dict | None = None) -> int:
    """Stable value of an unmixed module of dimension 3 and depth 2, from its
    supplied S2-closure: 2*s_2(M) + s_3(M) + s_2(S2).

    `s2` is either a list of ideals (the closure splits as a direct sum of the
    cyclic quotients, injecting M diagonally) or a Module.  For the list form
    the injection is verified (the summand intersection must be exactly I) and
    the cokernel is checked to be zero or Cohen-Macaulay of dimension <= 1.
    """
    M = Module.cyclic(ideal)
    if M.is_zero():
        raise PreconditionError("zero module")
    if M.dim() != 3:
        raise PreconditionError(f"dimension is {M.dim()}, need 3")
    if M.depth() != 2:
        raise PreconditionError(f"depth is {M.depth()}, need 2")
    if unmixed_component(ideal) != ideal:
        raise PreconditionError("module is not unmixed")
    n = ideal.ring.nvars
    s = socle_dimensions(M)
    if isinstance(s2, Module):
        s2_socle = s2.ext(n - 2).minimal_generator_count()
        cok_note = "closure given as a raw presentation; cokernel not checked"
    else:
        summands = [J if isinstance(J, Ideal) else Ideal(ideal.ring, J) for J in s2]
        inter = summands[0]
        for J in summands[1:]:
            inter = inter.intersect(J)
        if inter != ideal:
            raise PreconditionError(
                "summand intersection differs from the defining ideal; "
                "the diagonal map would not be injective")
        D = _s2_cokernel(summands, ideal)
        if D.is_zero():
            cok_note = "cokernel is zero (module already S2)"
        else:
            dim_d = D.dim()
            if dim_d > 1 or not D.is_cohen_macaulay():
                raise PreconditionError(
                    f"cokernel of the closure is not CM of dimension <= 1 "
                    f"(dim {dim_d}, depth {D.depth()})")
            cok_note = f"cokernel is CM of dimension {dim_d}"
        s2_socle = sum(Module.cyclic(J).ext(n - 2).minimal_generator_count()
                       for J in summands)
    if checks is not None:
        checks["cokernel"] = cok_note
        checks["s2_h2_socle"] = s2_socle
    return 2 * s[2] + s[3] + s2_socle


def deep_element_kills_h2(s2, element, ring_) -> bool:
    """Whether the given element annihilates H^2 of the supplied closure.

    This is the one piece of the standard-system hypothesis on the closure
    that the dimension-3 formula leans on; it is checked directly as membership
    of the element in the Ext annihilators.
    """
    n = ring_.nvars
    summands = [J if isinstance(J, Ideal) else Ideal(ring_, J) for J in s2]
    for J in summands:
        E = Module.cyclic(J).ext(n - 2)
        if E.is_zero():
            continue
        if not E.annihilator().contains(element):
            return False
    return True


def stable_value(ideal: Ideal, seed: int = 0, s2=None) -> StableValueReport:
    """The stable value from one certified deep system, with every applicable
    closed formula evaluated against it."""
    M = Module.cyclic(ideal)
    witness = construct_c_sop(ideal, 1, seed)
    ir = index_of_reducibility(list(witness), ideal)
    N = ir.value
    s = socle_dimensions(M)
    flags = cm_flags(M)
    checks = {}

    if flags.is_cm:
        checks["cm_top_socle"] = CrossCheck("cm_top_socle", True, s.top(), s.top() == N)
    else:
        checks["cm_top_socle"] = CrossCheck("cm_top_socle", False)

    g = formula_gcm(M)
    if g is not None:
        value, threshold = g
        checks["gcm_binomial"] = CrossCheck(
            "gcm_binomial", True, value, value == N,
            note=f"deep threshold 2*n0 = {threshold}")
    else:
        checks["gcm_binomial"] = CrossCheck("gcm_binomial", False)

    fs = formula_seq(ideal)
    if fs is not None:
        value, collapse = fs
        checks["seq_filtration_sum"] = CrossCheck(
            "seq_filtration_sum", True, value, value == N,
            note="collapses to the socle sum" if collapse is not None else "")
    else:
        checks["seq_filtration_sum"] = CrossCheck("seq_filtration_sum", False)

    total = s.total()
    cls = classify_sequential(ideal)
    checks["socle_sum"] = CrossCheck(
        "socle_sum", cls.is_sequentially_cm, total,
        (total == N) if cls.is_sequentially_cm else None,
        note=f"lower bound {total} <= {N}" if total <= N else
             f"BOUND VIOLATED: {total} > {N}")

    if s2 is not None:
        notes: dict = {}
        try:
            value = formula_dim3(ideal, s2, notes)
            killed = deep_element_kills_h2(s2, witness.elements[0], ideal.ring) \
                if not isinstance(s2, Module) else True
            checks["dim3_closure"] = CrossCheck(
                "dim3_closure", True, value, value == N,
                note=f"{notes.get('cokernel', '')}; deep element kills closure H^2: {killed}")
        except PreconditionError as exc:
            checks["dim3_closure"] = CrossCheck("dim3_closure", False, note=str(exc))

    return StableValueReport(N, witness, ir, tuple(s), checks, seed)


def stability_suite(ideal: Ideal, trials: int = 5, seed: int = 0,
                    min_degrees=(1, 2, 3)) -> list:
    """Indices of reducibility of `trials` independently seeded deep systems.

    Mixes the requested minimum degrees across trials; all values must agree
    for the stable value to deserve its name.
    """
    rng = Rng(seed)
    out = []
    for t in range(trials):
        n = min_degrees[t % len(min_degrees)]
        sub = rng.spawn(t)
        system = construct_c_sop(ideal, n, sub.state)
        out.append(index_of_reducibility(list(system), ideal).value)
    return out


def goto_suzuki_bound(M: Module):
    """Diagnostic ceiling for generalized CM modules:
    sum_{i<d} C(d,i) * length(H^i) + s_d.  None when not applicable."""
    flags = cm_flags(M)
    if not flags.is_generalized_cm:
        return None
    d = M.dim()
    s = socle_dimensions(M)
    total = s.top()
    for i in range(d):
        li = local_cohomology_length(M, i)
        if li is None:
            return None
        total += comb(d, i) * li
    return total


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LimitLevel:
    n: int
    requested: int
    completed: int
    min_ir: int
    deep_system_ir: int
    histogram: dict
    below_top_socle: int
    failures: int

    def to_payload(self):
        return {"n": self.n, "samples": self.completed, "min_ir": self.min_ir,
                "deep_system_ir": self.deep_system_ir,
                "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
                "below_top_socle": self.below_top_socle,
                "failures": self.failures}


@dataclass(frozen=True)
class LimitProfile:
    levels: tuple
    top_socle: int
    stable: int
    seed: int

    def to_payload(self):
        return {"levels": [lv.to_payload() for lv in self.levels],
                "top_socle_lower_bound": self.top_socle,
                "stable_upper_bound": self.stable,
                "estimate_kind": "empirical upper-bound estimate",
                "seed": self.seed}


def random_sop(ideal: Ideal, degree: int, rng: Rng, retries: int = 40):
    """A random system of parameters with all elements homogeneous of the
    given degree; None when the per-element retry budget runs out."""
    R = ideal.ring
    p = R.field.p
    d = ideal.krull_dimension()
    monos = monomials_of_degree(R.nvars, degree)
    current = ideal
    elems = []
    for i in range(d):
        target = d - i - 1
        found = None
        for _ in range(retries):
            cand = R.zero()
            for m in monos:
                c = rng.below(p)
                if c:
                    cand = cand + R.monomial(m, c)
            if cand.is_zero():
                continue
            if (current + cand).krull_dimension() == target:
                found = cand
                break
        if found is None:
            return None
        elems.append(found)
        current = current + found
    return elems


def limit_profile(ideal: Ideal, n_max: int = 4, samples_per_n: int = 25,
                  seed: int = 0) -> LimitProfile:
    """Minimum observed index of reducibility per degree level n = 1..n_max.

    Each level samples random degree-n systems of parameters and also includes
    one certified deep system of minimum degree n, so the stable value is
    always realized; samples dipping under the top socle dimension are counted
    separately (the socle surjection that forces the lower bound only holds for
    deep enough parameter ideals).
    """
    M = Module.cyclic(ideal)
    s = socle_dimensions(M)
    rng = Rng(seed)
    stable = index_of_reducibility(
        list(construct_c_sop(ideal, 1, rng.spawn(0).state)), ideal).value
    levels = []
    for n in range(1, n_max + 1):
        level_rng = rng.spawn(n)
        histogram: dict = {}
        failures = 0
        completed = 0
        min_ir = None
        for k in range(samples_per_n):
            q = random_sop(ideal, n, level_rng.spawn(k))
            if q is None:
                failures += 1
                continue
            value = index_of_reducibility(q, ideal, verify=False).value
            histogram[value] = histogram.get(value, 0) + 1
            completed += 1
            min_ir = value if min_ir is None else min(min_ir, value)
        try:
            deep = construct_c_sop(ideal, n, level_rng.spawn(10**6).state)
            deep_ir = index_of_reducibility(list(deep), ideal).value
        except SearchExhausted:
            deep_ir = stable
        histogram[deep_ir] = histogram.get(deep_ir, 0) + 1
        min_ir = deep_ir if min_ir is None else min(min_ir, deep_ir)
        below = sum(cnt for v, cnt in histogram.items() if v < s.top())
        levels.append(LimitLevel(n, samples_per_n, completed, min_ir, deep_ir,
                                 histogram, below, failures))
    return LimitProfile(tuple(levels), s.top(), stable, seed)
