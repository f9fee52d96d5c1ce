import pytest

from irlab.cohomology import socle_dimensions
from irlab.errors import PreconditionError, SearchExhausted
from irlab.groebner import Ideal, maximal_ideal, unit_ideal
from irlab.modules import Module
from irlab.params import (Rng, construct_c_sop, find_parameter_element,
                          index_of_reducibility, is_d_sequence,
                          is_system_of_parameters, power_perturbation)


# -- rng ----------------------------------------------------------------------

def test_rng_deterministic():
    a = [Rng(42).next_int() for _ in range(5)]
    b = [Rng(42).next_int() for _ in range(5)]
    assert a == b


def test_rng_spawn_streams_differ():
    root = Rng(7)
    assert Rng(7).spawn(0).next_int() != Rng(7).spawn(1).next_int()
    assert root.spawn(3).next_int() == Rng(7).spawn(3).next_int()


# -- systems of parameters -------------------------------------------------------

def test_variables_are_a_sop_of_the_plane(R2):
    x, y = R2.gens()
    assert is_system_of_parameters([x, y], Ideal(R2, []))


def test_non_sop_detected(plane_and_line):
    R = plane_and_line.ring
    assert not is_system_of_parameters([R.variable("y"), R.variable("z")],
                                       plane_and_line)


def test_sop_of_plane_line(plane_and_line):
    R = plane_and_line.ring
    assert is_system_of_parameters([R.parse("y - x"), R.parse("z")], plane_and_line)


def test_wrong_length_is_not_a_sop(plane_and_line):
    R = plane_and_line.ring
    assert not is_system_of_parameters([R.parse("y - x")], plane_and_line)


# -- parameter element search ------------------------------------------------------

def test_find_parameter_element_unconstrained(plane_and_line):
    R = plane_and_line.ring
    x = find_parameter_element(plane_and_line, unit_ideal(R), 1, Rng(3))
    assert x.is_homogeneous() and x.degree() >= 1
    assert (plane_and_line + x).krull_dimension() == 1


def test_find_parameter_element_in_maximal_ideal(R2):
    x = find_parameter_element(Ideal(R2, []), maximal_ideal(R2), 1, Rng(1))
    assert x.degree() == 1


def test_find_respects_min_degree(plane_and_line):
    R = plane_and_line.ring
    x = find_parameter_element(plane_and_line, unit_ideal(R), 3, Rng(3))
    assert x.degree() >= 3


def test_search_exhausts_inside_top_component(plane_and_line):
    # everything in (x) contains the plane, so the dimension never drops
    R = plane_and_line.ring
    with pytest.raises(SearchExhausted) as err:
        find_parameter_element(plane_and_line, Ideal(R, [R.variable("x")]), 1,
                               Rng(0), tries_per_degree=3, extra_degrees=2)
    assert err.value.attempted_degrees


# -- certified deep systems -----------------------------------------------------------

def test_c_sop_on_cm_ring(R2):
    system = construct_c_sop(Ideal(R2, []), 2, seed=9)
    assert len(system) == 2
    for x in system:
        assert x.degree() >= 2 and x.is_homogeneous()
    assert is_system_of_parameters(list(system), Ideal(R2, []))
    # CM quotients have unit constraint ideals at every stage
    for stage in system.stages:
        assert stage.constraint_gens == ("1",)


def test_c_sop_two_planes_3d(two_planes_3d):
    system = construct_c_sop(two_planes_3d, 1, seed=2)
    assert len(system) == 3
    result = index_of_reducibility(list(system), two_planes_3d)
    assert result.value == 4
    # stage certificates expose the dimension drops
    drops = [(s.dim_before, s.dim_after) for s in sorted(system.stages,
                                                         key=lambda s: -s.index)]
    assert drops == [(3, 2), (2, 1), (1, 0)]
    # the first-built element is constrained to the annihilator cube of M
    top_stage = max(system.stages, key=lambda s: s.index)
    assert top_stage.degree >= 3


def test_c_sop_plane_line(plane_and_line):
    system = construct_c_sop(plane_and_line, 1, seed=5)
    result = index_of_reducibility(list(system), plane_and_line)
    assert result.value == 2


def test_c_sop_payload_roundtrip(plane_and_line):
    system = construct_c_sop(plane_and_line, 1, seed=5)
    payload = system.to_payload()
    assert payload["method"] == "ann-product-cube"
    assert len(payload["elements"]) == 2
    assert all({"index", "degree", "seed", "dim_drop", "cube_gens"} <=
               set(st.keys()) for st in payload["stages"])


# -- index of reducibility --------------------------------------------------------------

def test_regular_sequence_is_irreducible(R2):
    x, y = R2.gens()
    result = index_of_reducibility([x, y], Ideal(R2, []))
    assert result.value == 1
    assert result.length == 1


def test_shallow_sop_can_dip_below_the_stable_value(plane_and_line):
    R = plane_and_line.ring
    result = index_of_reducibility([R.parse("y - x"), R.parse("z")], plane_and_line)
    assert result.value == 1
    assert result.length == 2


def test_ir_methods_agree_and_are_recorded(two_planes_origin):
    system = construct_c_sop(two_planes_origin, 1, seed=0)
    result = index_of_reducibility(list(system), two_planes_origin)
    assert result.methods["degreewise_spans"] == result.methods["kernel_intersection"]
    assert result.value == 4


def test_ir_rejects_non_sop(plane_and_line):
    R = plane_and_line.ring
    with pytest.raises(PreconditionError):
        index_of_reducibility([R.variable("y"), R.variable("z")], plane_and_line)


def test_ir_at_least_top_socle_for_deep_systems(plane_and_line, two_planes_3d,
                                                two_planes_origin):
    for I in (plane_and_line, two_planes_origin, two_planes_3d):
        s_top = socle_dimensions(Module.cyclic(I)).top()
        system = construct_c_sop(I, 1, seed=13)
        assert index_of_reducibility(list(system), I).value >= s_top


def test_ir_bounded_by_length(plane_and_line):
    system = construct_c_sop(plane_and_line, 2, seed=1)
    result = index_of_reducibility(list(system), plane_and_line)
    assert 1 <= result.value <= result.length


# -- d-sequences ---------------------------------------------------------------------------

def test_regular_sequence_is_a_d_sequence(R3):
    ok, witness = is_d_sequence(list(R3.gens()), Ideal(R3, []))
    assert ok and witness is None


def test_constructed_systems_are_d_sequences(plane_and_line, two_planes_origin):
    for I in (plane_and_line, two_planes_origin):
        system = construct_c_sop(I, 1, seed=3)
        ok, witness = is_d_sequence(list(system), I)
        assert ok, witness


def test_d_sequence_violation_has_witness(R2):
    x, y = R2.gens()
    # (x^2, x*y): ((x^2) : x^2 y^2) is everything while ((x^2) : x*y) = (x)
    bad_ok, bad_witness = is_d_sequence([x * x, x * y], Ideal(R2, []))
    assert not bad_ok
    assert bad_witness == (1, 2)


# -- certified-system properties ---------------------------------------------------------------

def test_power_perturbation_keeps_ir(plane_and_line):
    system = construct_c_sop(plane_and_line, 1, seed=8)
    base = index_of_reducibility(list(system), plane_and_line).value
    rng = Rng(21)
    for _ in range(3):
        powers = [1 + rng.below(2) for _ in system.elements]
        perturbed = power_perturbation(system, powers)
        assert is_system_of_parameters(perturbed, plane_and_line)
        assert index_of_reducibility(perturbed, plane_and_line).value == base


def test_drop_last_element_recursion(two_planes_origin):
    """Dropping the last element passes to the quotient with the same ir."""
    from irlab.cohomology import annihilator_data

    I = two_planes_origin
    system = construct_c_sop(I, 1, seed=6)
    elems = list(system)
    full = index_of_reducibility(elems, I).value
    quotient = I + elems[-1]
    rest = elems[:-1]
    assert is_system_of_parameters(rest, quotient)
    assert index_of_reducibility(rest, quotient).value == full
    # re-certify from scratch: each remaining element still sits in the cube
    # ideal of its stage quotient (the stage quotients are unchanged)
    current = quotient
    for i in range(len(rest), 0, -1):
        cube = annihilator_data(Module.cyclic(current)).product.power(3)
        assert cube.contains(rest[i - 1])
        current = current + rest[i - 1]
