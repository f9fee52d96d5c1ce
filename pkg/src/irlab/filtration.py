"""Unmixed components, dimension filtrations, and sequential CM classification.

The largest submodule of S/I of dimension <= s is cut out by saturating I at
the annihilators of the low local cohomology: saturating successively by
Ann H^0, ..., Ann H^s removes exactly the primary components whose primes have
dimension <= s (each such prime contains the matching annihilator, and no
higher-dimensional prime does).  Stacking these saturations for s = 0..d-1
yields the dimension filtration deterministically; the randomized
parameter-element route below must agree with it, and does on every test.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError, ZeroModuleError
from .groebner import Ideal, _divides, _mono_lcm, maximal_ideal
from .modules import Module, subquotient_presentation


def unmixed_component(ideal: Ideal, seed: int = 0, report: dict | None = None) -> Ideal:
    """The ideal K with K/I the largest lower-dimensional submodule of S/I.

    Finds a parameter element x inside the product of the low cohomology
    annihilators and saturates: K = (I : x^inf).  The result is independent of
    the element chosen; `report`, when given, records the element and whether
    a single colon already agreed with the full saturation.
    """
    from .cohomology import annihilator_data
    from .params import Rng, find_parameter_element

    M = Module.cyclic(ideal)
    if M.is_zero():
        raise ZeroModuleError("unmixed component of the zero module")
    if M.dim() < 1:
        raise PreconditionError("unmixed component needs positive dimension")
    constraint = annihilator_data(M).product
    x = find_parameter_element(ideal, constraint, 1, Rng(seed))
    one_colon = ideal.colon_element(x)
    K = one_colon
    while True:
        nxt = K.colon_element(x)
        if nxt == K:
            break
        K = nxt
    if report is not None:
        report["element"] = str(x)
        report["single_colon_sufficed"] = one_colon == K
    return K


def module_is_unmixed(M: Module) -> bool:
    """No associated primes below the top dimension.

    An associated prime of dimension i shows up exactly as an i-dimensional
    component of Ext^{n-i}(M, S), so unmixedness reads off the Ext dimensions.
    """
    if M.is_zero():
        raise ZeroModuleError("unmixedness of the zero module")
    n = M.ring.nvars
    d = M.dim()
    for i in range(d):
        E = M.ext(n - i)
        if not E.is_zero() and E.dim() == i:
            return False
    return True


# Alias used by the cohomology layer for non-cyclic presentations.
module_lower_dimensional_part_is_zero = module_is_unmixed


@dataclass(frozen=True)
class DimensionFiltration:
    """Ideals K_0 <= ... <= K_{t-1} presenting the dimension filtration of S/I.

    D_i = K_i/I; the top step D_t = M itself is implicit.  K_0 is the
    saturation of I at the maximal ideal, so D_0 is the finite-length part
    (K_0 = I encodes D_0 = 0).  `dims` lists dim D_i for the stored steps,
    with -1 standing for the zero module; `top_dim` is dim M.
    """

    base: Ideal
    ideals: tuple
    dims: tuple
    top_dim: int

    @property
    def length(self) -> int:
        """Number of quotient steps D_i/D_{i-1}, i = 1..t."""
        return len(self.ideals)

    def step_modules(self):
        """The quotients D_1/D_0, ..., D_t/D_{t-1} as presented modules."""
        out = []
        chain = list(self.ideals)
        for lower, upper in zip(chain, chain[1:]):
            out.append(subquotient_presentation(upper, lower))
        if chain:
            out.append(Module.cyclic(chain[-1]))
        return out

    def nonzero_steps(self):
        return [(K, d) for K, d in zip(self.ideals, self.dims) if d >= 0]

    def satisfies_dimension_condition(self) -> bool:
        ds = [d for d in self.dims if d >= 0] + [self.top_dim]
        return all(a < b for a, b in zip(ds, ds[1:]))


def dimension_filtration(ideal: Ideal) -> DimensionFiltration:
    """The dimension filtration of S/I, by stacked annihilator saturations."""
    from .cohomology import annihilator_data

    M = Module.cyclic(ideal)
    if M.is_zero():
        raise ZeroModuleError("dimension filtration of the zero module")
    d = M.dim()
    if d == 0:
        return DimensionFiltration(ideal, (), (), 0)
    ann = annihilator_data(M)
    chain = [ideal.saturation(maximal_ideal(ideal.ring))]
    for s in range(1, d):
        chain.append(chain[-1].saturation(ann[s]))
    kept = [chain[0]]
    for K in chain[1:]:
        if K != kept[-1]:
            kept.append(K)
    dims = []
    for K in kept:
        if K == ideal:
            dims.append(-1)
        else:
            dims.append(ideal.colon(K).krull_dimension())
    filt = DimensionFiltration(ideal, tuple(kept), tuple(dims), d)
    if not filt.satisfies_dimension_condition():
        raise AssertionError("dimension filtration failed the dimension condition")
    return filt


# ---------------------------------------------------------------------------
# Monomial irreducible decomposition: the classical splitting recursion, kept
# free of the Groebner engine so it can serve as an independent oracle.

def _monomial_gens(ideal: Ideal):
    gens = []
    for g in ideal.gens:
        if not g.is_monomial():
            raise PreconditionError("decomposition implemented for monomial ideals only")
        gens.append(next(iter(g.terms)))
    return _prune_divisible(gens)


def _prune_divisible(monos):
    out = []
    for m in sorted(set(monos), key=sum):
        if not any(_divides(k, m) for k in out):
            out.append(m)
    return out


def _mono_intersect(gens_a, gens_b):
    return _prune_divisible([_mono_lcm(a, b) for a in gens_a for b in gens_b])


def monomial_primary_decomposition(ideal: Ideal):
    """Irredundant decomposition of a monomial ideal into irreducible ones.

    Splits a mixed generator m = u * w (u a pure variable power, w coprime to
    u) via I = (I + u) cap (I + w) and recurses; leaves are generated by pure
    variable powers.  The intersection of the returned components is verified
    to equal the input.
    """
    R = ideal.ring
    gens = _monomial_gens(ideal)
    if not gens:
        raise PreconditionError("the zero ideal has no primary decomposition here")

    guard = [0]

    def split(gs):
        guard[0] += 1
        if guard[0] > 4096:
            raise PreconditionError("decomposition generator blow-up guard tripped")
        for m in gs:
            support = [i for i, e in enumerate(m) if e]
            if len(support) > 1:
                v = support[0]
                u = tuple(m[v] if i == v else 0 for i in range(len(m)))
                w = tuple(0 if i == v else m[i] for i in range(len(m)))
                return split(_prune_divisible(gs + [u])) + split(_prune_divisible(gs + [w]))
        return [tuple(sorted(gs))]

    components = {c for c in split(gens)}
    # Irredundance: drop any component containing the intersection of the others.
    comps = [list(c) for c in sorted(components)]
    changed = True
    while changed:
        changed = False
        for i in range(len(comps)):
            others = comps[:i] + comps[i + 1:]
            if not others:
                continue
            inter = others[0]
            for o in others[1:]:
                inter = _mono_intersect(inter, o)
            if all(any(_divides(g, m) for g in comps[i]) for m in inter):
                comps.pop(i)
                changed = True
                break
    inter = comps[0]
    for o in comps[1:]:
        inter = _mono_intersect(inter, o)
    if set(inter) != set(gens):
        raise AssertionError("decomposition does not intersect back to the input")
    return [Ideal(R, [R.monomial(m) for m in c]) for c in comps]


def top_dimensional_intersection(ideal: Ideal) -> Ideal:
    """Intersection of the maximal-dimension components of a monomial ideal.

    Oracle counterpart of `unmixed_component` on monomial input.
    """
    comps = monomial_primary_decomposition(ideal)
    top = max(c.krull_dimension() for c in comps)
    gens = None
    for c in comps:
        if c.krull_dimension() == top:
            cg = _monomial_gens(c)
            gens = cg if gens is None else _mono_intersect(gens, cg)
    R = ideal.ring
    return Ideal(R, [R.monomial(m) for m in gens])


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SequentialClassification:
    is_sequentially_cm: bool
    is_sequentially_gcm: bool
    steps: tuple  # (dim, depth, is_cm, is_gcm) per quotient D_i/D_{i-1}
    filtration: DimensionFiltration


def _gcm_flag(M: Module) -> bool:
    n = M.ring.nvars
    d = M.dim()
    for i in range(d):
        E = M.ext(n - i)
        if not E.is_zero() and E.dim() > 0:
            return False
    return True


def classify_sequential(ideal: Ideal) -> SequentialClassification:
    """Test the dimension-filtration quotients for (generalized) CM-ness."""
    filt = dimension_filtration(ideal)
    steps = []
    all_cm = True
    all_gcm = True
    for Q in filt.step_modules():
        dim_q, depth_q = Q.dim(), Q.depth()
        cm = dim_q == depth_q
        gcm = cm or _gcm_flag(Q)
        steps.append((dim_q, depth_q, cm, gcm))
        all_cm = all_cm and cm
        all_gcm = all_gcm and gcm
    return SequentialClassification(all_cm, all_gcm, tuple(steps), filt)


def is_good_sop(elements, ideal: Ideal, filtration=None, verify_sop: bool = True):
    """Check the vanishing intersections that make a sop good for a filtration.

    For each stored step (K_i, d_i), the part of S/I generated by the tail
    elements x_{d_i+1}, ..., x_d must meet K_i/I in 0, i.e.
    K_i cap ((tail) + I) <= I.  Returns (ok, witness) with the first violating
    polynomial; the zero step passes trivially.
    """
    from .params import is_system_of_parameters

    elems = list(elements)
    if verify_sop and not is_system_of_parameters(elems, ideal):
        raise PreconditionError("good-sop check requires a verified system of parameters")
    filt = filtration or dimension_filtration(ideal)
    if isinstance(filt, (list, tuple)):
        # user-supplied chain of ideals: dim of each step K/I via (I : K)
        steps = [(K, -1 if K == ideal else ideal.colon(K).krull_dimension())
                 for K in filt]
        dims = [d for _, d in steps if d >= 0] + [Module.cyclic(ideal).dim()]
        if not all(a < b for a, b in zip(dims, dims[1:])):
            raise PreconditionError("supplied filtration violates the dimension condition")
    else:
        steps = list(zip(filt.ideals, filt.dims))
    for K, d_i in steps:
        if d_i < 0:
            continue
        tail = elems[d_i:]
        if not tail:
            continue
        T = ideal + tail
        inter = K.intersect(T)
        for g in inter.gens:
            if not ideal.contains(g):
                return False, g
    return True, None
