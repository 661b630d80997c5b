from __future__ import annotations

import pytest

from skeletal.classification import (
    brute_force_orbit_count,
    classify,
    congruent,
    fine_lengths,
    flag_orbits,
    flag_stabilizer_order,
    has_face_mirrors,
    is_regular,
    is_simply_flag_transitive,
    mirror_vector,
    schlafli_data,
    symmetries_between_flags,
    two_orbit_class,
    vertex_figure_name,
)
from shapes import CUBE, CUBIC, cuboctahedron, icosidodecahedron
from skeletal.construction import family, generate_from_chiral, two_skeleton, wythoff
from skeletal.errors import NotTwoOrbit
from skeletal.geometry import Vec3
from skeletal.incidence import interior_flags

# --------------------------------------------------------------------------- symmetry search


def test_cube_flag_pairs_have_one_symmetry():
    k = wythoff(CUBE)
    fl = interior_flags(k)
    for psi in fl[::7]:
        assert len(symmetries_between_flags(k, fl[0], psi)) == 1


def test_skeleton_flag_stabilizer():
    k = two_skeleton(CUBIC, 3)
    phi = next(f for f in interior_flags(k) if f.vertex == k.index[Vec3(0, 0, 0)])
    assert len(symmetries_between_flags(k, phi, phi)) == 2


def test_cuboctahedron_triangle_to_square_empty():
    k = cuboctahedron()
    fl = interior_flags(k)
    tri = next(f for f in fl if len(k.faces[f.face].ids) == 3)
    sq = next(f for f in fl if len(k.faces[f.face].ids) == 4)
    assert len(symmetries_between_flags(k, tri, sq)) == 0


# --------------------------------------------------------------------------- orbits


@pytest.mark.parametrize("make,expected", [(lambda: wythoff(CUBE), 1), (cuboctahedron, 2), (icosidodecahedron, 2)])
def test_orbits_match_brute_force(make, expected):
    k = make()
    assert flag_orbits(k).count == brute_force_orbit_count(k) == expected


def test_two_orbit_classes():
    assert two_orbit_class(cuboctahedron()) == "2_{0,1}"
    assert two_orbit_class(icosidodecahedron()) == "2_{0,1}"
    with pytest.raises(NotTwoOrbit):
        two_orbit_class(wythoff(CUBE))


def test_chiral_instance_class():
    k = generate_from_chiral(family("Q").instance(1, 1), 3)
    assert two_orbit_class(k) == "2_{}"


def test_regularity_predicates():
    cube = wythoff(CUBE)
    assert is_regular(cube) and is_simply_flag_transitive(cube)
    sk = two_skeleton(CUBIC, 3)
    assert is_regular(sk) and not is_simply_flag_transitive(sk) and flag_stabilizer_order(sk) == 2
    assert not is_regular(cuboctahedron())


def test_face_mirrors():
    assert has_face_mirrors(two_skeleton(CUBIC, 3))[0]
    # the cube's face planes are not among its nine mirror planes
    assert not has_face_mirrors(wythoff(CUBE))[0]


# --------------------------------------------------------------------------- derived data


def test_mirror_vectors():
    assert mirror_vector(wythoff(CUBE)) == (2, 2, 2)
    assert mirror_vector(generate_from_chiral(family("Q").instance(0, 1), 3)) == (2, 1, 2)


def test_schlafli_and_fine_lengths():
    cube = wythoff(CUBE)
    assert schlafli_data(cube) == (4, 3)
    assert fine_lengths(cube)["petrie"] == 6
    assert fine_lengths(generate_from_chiral(family("P").instance(1, -1), 3))["petrie"] == 4


def test_vertex_figure_names():
    assert vertex_figure_name(two_skeleton(CUBIC, 3)) == "octahedron"


def test_congruence_up_to_similarity():
    cube = wythoff(CUBE)
    other = generate_from_chiral(family("P2").instance(0, 1), None)
    assert congruent(cube, other)
    assert not congruent(cube, cuboctahedron())


def test_cube_record():
    rec = classify(wythoff(CUBE))
    assert (rec.r, rec.schlafli, rec.flag_orbits, rec.flag_stabilizer_order) == (2, "{4,3}", 1, 1)
    assert rec.g2_census == "C2"
