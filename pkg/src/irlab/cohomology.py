"""Local-cohomology-derived numbers, all read through graded duality.

For a module M over the ambient ring S in n variables:

  * socle dimension of H^i  =  minimal generator count of Ext^{n-i}(M, S)
  * annihilator of H^i      =  annihilator of Ext^{n-i}(M, S)
  * Hilbert function of H^i in degree j  =  that of Ext^{n-i}(M, S) in -n-j

The Stanley-Reisner route (links of the associated simplicial complex) gives
an independent oracle for the Hilbert functions when the defining ideal is
square-free monomial; everything is over the same prime field, and the
characteristic is part of every report.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .errors import PreconditionError, ZeroModuleError
from .groebner import Ideal, unit_ideal
from .linalg import rank_mod_p
from .modules import Module
from .ring import monomials_of_degree


@dataclass(frozen=True)
class SocleVector:
    """s_i = socle dimension of the i-th local cohomology, i = 0..dim."""

    values: tuple

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def total(self) -> int:
        return sum(self.values)

    def top(self) -> int:
        return self.values[-1]


def socle_dimensions(M: Module) -> SocleVector:
    """Socle dimensions of H^0..H^d, as generator counts of the dual Ext modules."""
    if M.is_zero():
        raise ZeroModuleError("socle dimensions of the zero module")
    n = M.ring.nvars
    d = M.dim()
    if M._socle is None:
        M._socle = SocleVector(tuple(M.ext(n - i).minimal_generator_count()
                                     for i in range(d + 1)))
    return M._socle


@dataclass(frozen=True)
class AnnihilatorData:
    """Annihilators of the below-top local cohomology and their product.

    `n0` is the least power of the maximal ideal killing every H^i, i < dim;
    it exists exactly when all the annihilators are m-primary or unit (the
    finite-length situation) and is None otherwise.
    """

    annihilators: tuple  # Ideal for each i in 0..d-1
    product: Ideal
    n0: int | None

    def __getitem__(self, i) -> Ideal:
        return self.annihilators[i]


def _least_power_inside(target: Ideal, cap: int = 64) -> int | None:
    """Least k with m^k contained in `target`, or None below the cap."""
    R = target.ring
    gb = target.groebner()
    for k in range(cap + 1):
        if all(gb.contains(R.monomial(m)) for m in monomials_of_degree(R.nvars, k)):
            return k
    return None


def annihilator_data(M: Module) -> AnnihilatorData:
    if M.is_zero():
        raise ZeroModuleError("annihilator data of the zero module")
    d = M.dim()
    if d < 1:
        raise PreconditionError("annihilator data needs positive dimension")
    n = M.ring.nvars
    anns = []
    for i in range(d):
        if i == 0 and M.cyclic_ideal is not None:
            # Ann H^0 = (I : saturation of I): the finite-length part is
            # sat(I)/I, so no Ext computation is needed for this slot.  The
            # duality route Ann Ext^n must agree, and is cross-checked in tests.
            from .groebner import maximal_ideal
            I = M.cyclic_ideal
            sat = I.saturation(maximal_ideal(M.ring))
            anns.append(unit_ideal(M.ring) if sat == I else I.colon(sat))
            continue
        E = M.ext(n - i)
        anns.append(unit_ideal(M.ring) if E.is_zero() else E.annihilator())
    product = unit_ideal(M.ring)
    for a in anns:
        product = product.product(Ideal(M.ring, a.minimal_generators()))
    product = Ideal(M.ring, product.minimal_generators())
    n0 = None
    if all(a.is_unit() or a.krull_dimension() <= 0 for a in anns):
        candidates = [0]
        for a in anns:
            if a.is_unit():
                continue
            k = _least_power_inside(a)
            if k is None:
                candidates = None
                break
            candidates.append(k)
        n0 = max(candidates) if candidates is not None else None
    return AnnihilatorData(tuple(anns), product, n0)


@dataclass(frozen=True)
class CmFlags:
    is_cm: bool
    is_generalized_cm: bool
    is_unmixed: bool


def cm_flags(M: Module) -> CmFlags:
    """Cohen-Macaulay, generalized-CM, and unmixedness of a nonzero module."""
    if M.is_zero():
        raise ZeroModuleError("flags of the zero module")
    d = M.dim()
    depth = M.depth()
    is_cm = depth == d
    n = M.ring.nvars
    gcm = True
    for i in range(d):
        E = M.ext(n - i)
        if not E.is_zero() and E.dim() > 0:
            gcm = False
            break
    if d == 0:
        unmixed = True
    elif M.cyclic_ideal is not None:
        from .filtration import unmixed_component
        unmixed = unmixed_component(M.cyclic_ideal) == M.cyclic_ideal
    else:
        from .filtration import module_lower_dimensional_part_is_zero
        unmixed = module_lower_dimensional_part_is_zero(M)
    return CmFlags(is_cm, gcm, unmixed)


# ---------------------------------------------------------------------------
# Stanley-Reisner oracle.

class SimplicialComplex:
    """Faces of the complex dual to a square-free monomial ideal."""

    def __init__(self, nvars: int, faces):
        self.nvars = nvars
        self.faces = set(faces)  # frozensets, including frozenset() when nonvoid

    @staticmethod
    def from_squarefree_ideal(ideal: Ideal) -> "SimplicialComplex":
        for g in ideal.gens:
            if not g.is_monomial():
                raise PreconditionError("Stanley-Reisner complex needs a monomial ideal")
            (expo,) = g.terms
            if any(e > 1 for e in expo):
                raise PreconditionError("Stanley-Reisner complex needs square-free generators")
        if ideal.is_unit():
            return SimplicialComplex(ideal.ring.nvars, [])
        n = ideal.ring.nvars
        nonfaces = [frozenset(i for i, e in enumerate(next(iter(g.terms))) if e)
                    for g in ideal.gens]
        faces = []
        for k in range(n + 1):
            for combo in combinations(range(n), k):
                f = frozenset(combo)
                if not any(nf <= f for nf in nonfaces):
                    faces.append(f)
        return SimplicialComplex(n, faces)

    def is_void(self) -> bool:
        return not self.faces

    def dim(self) -> int:
        """Dimension of the complex; -1 when only the empty face is present."""
        return max(len(f) for f in self.faces) - 1

    def link(self, face) -> "SimplicialComplex":
        face = frozenset(face)
        lk = [g for g in self.faces if not (face & g) and (face | g) in self.faces]
        return SimplicialComplex(self.nvars, lk)

    def k_faces(self, k: int):
        return sorted((tuple(sorted(f)) for f in self.faces if len(f) == k + 1))

    def reduced_cohomology_dim(self, k: int, p: int) -> int:
        """dim of the k-th reduced simplicial cohomology over F_p.

        Over a field this equals the reduced homology dimension, computed from
        boundary-matrix ranks.  Conventions: the complex {empty face} has a
        one-dimensional (-1)-st cohomology; the void complex has none.
        """
        if self.is_void():
            return 0
        faces_k = self.k_faces(k)
        faces_km1 = self.k_faces(k - 1) if k >= 0 else []
        faces_kp1 = self.k_faces(k + 1)

        def boundary(rows_faces, cols_faces):
            # matrix of d: C_cols -> C_rows (drop one vertex, alternating signs)
            idx = {f: i for i, f in enumerate(rows_faces)}
            A = np.zeros((len(rows_faces), len(cols_faces)), dtype=np.int64)
            for j, f in enumerate(cols_faces):
                for pos in range(len(f)):
                    sub = f[:pos] + f[pos + 1:]
                    if sub in idx:
                        A[idx[sub], j] = 1 if pos % 2 == 0 else p - 1
            return A

        if k == -1:
            # reduced: C_{-1} = k spanned by the empty face
            dim_c = 1
            rank_down = 0
            rank_up = rank_mod_p(np.ones((1, len(self.k_faces(0)))), p) \
                if self.k_faces(0) else 0
        else:
            dim_c = len(faces_k)
            if dim_c == 0:
                return 0
            if k == 0:
                down = np.ones((1, dim_c), dtype=np.int64)  # augmentation to C_{-1}
            else:
                down = boundary(faces_km1, faces_k)
            rank_down = rank_mod_p(down, p)
            up = boundary(faces_k, faces_kp1)
            rank_up = rank_mod_p(up, p) if faces_kp1 else 0
        return dim_c - rank_down - rank_up


def hochster_hilbert(ideal: Ideal, i: int, degrees) -> dict:
    """Hilbert function of H^i of S/I on `degrees`, for square-free monomial I.

    Sums reduced link cohomology over the faces of the associated complex:
    the face F contributes in degree -j with multiplicity C(j-1, |F|-1), and
    the empty face contributes only in degree 0.
    """
    R = ideal.ring
    p = R.field.p
    complex_ = SimplicialComplex.from_squarefree_ideal(ideal)
    face_dims = {}
    for face in complex_.faces:
        lk = complex_.link(face)
        h = lk.reduced_cohomology_dim(i - len(face) - 1, p)
        if h:
            face_dims[face] = h
    out = {}
    for deg in degrees:
        if deg > 0:
            out[deg] = 0
            continue
        j = -deg
        total = 0
        for face, h in face_dims.items():
            f = len(face)
            if f == 0:
                total += h if j == 0 else 0
            elif j >= 1:
                total += h * comb(j - 1, f - 1)
        out[deg] = total
    return out


def local_cohomology_hilbert(M: Module, i: int, degrees) -> dict:
    """Hilbert function of H^i(M) on `degrees`, through the Ext dual.

    dim H^i(M)_j equals dim Ext^{n-i}(M, S)_{-n-j}.
    """
    n = M.ring.nvars
    E = M.ext(n - i)
    if E.is_zero():
        return {d: 0 for d in degrees}
    dual = E.hilbert_function([-n - d for d in degrees])
    return {d: dual[-n - d] for d in degrees}


def local_cohomology_length(M: Module, i: int):
    """Length of H^i(M) when finite (the dual Ext is Artinian), else None."""
    n = M.ring.nvars
    E = M.ext(n - i)
    if E.is_zero():
        return 0
    return E.length()
