import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import brute_force_bonds, diamond_structure, random_rotation
from mxv.errors import BadIndex, CellTooSmall, DegenerateGeometry, DuplicatePick, NeedsLattice
from mxv.geometry import (
    angle,
    cart_to_frac,
    detect_bonds,
    dihedral,
    distance,
    frac_to_cart,
    make_supercell,
    measure_selection,
)
from mxv.model import Lattice, structure_from_arrays

TRICLINIC = Lattice(vectors=[[3.1, 0.0, 0.0], [-1.2, 4.2, 0.0], [0.4, 0.7, 5.3]])


def test_frac_to_cart_basics():
    assert np.allclose(frac_to_cart([0, 0, 0], TRICLINIC), [0, 0, 0])
    assert np.allclose(frac_to_cart([1, 0, 0], TRICLINIC), TRICLINIC.vectors[0])
    assert np.allclose(frac_to_cart([0, 1, 0], TRICLINIC), TRICLINIC.vectors[1])


@settings(deadline=None, max_examples=50)
@given(st.lists(st.floats(-2, 2, allow_nan=False), min_size=3, max_size=3))
def test_frac_cart_roundtrip(f):
    f = np.array(f)
    back = cart_to_frac(frac_to_cart(f, TRICLINIC), TRICLINIC)
    assert np.allclose(back, f, atol=1e-12)


def test_supercell_counts():
    base = diamond_structure()
    assert len(make_supercell(base, 5, 5, 5)) == 1000
    assert len(make_supercell(base, 1, 1, 1)) == 8


def test_supercell_identity_preserves_geometry():
    base = diamond_structure()
    one = make_supercell(base, 1, 1, 1)
    assert np.allclose(one.positions(), base.positions())
    assert np.allclose(one.lattice.vectors, base.lattice.vectors)


def test_supercell_serials_and_lattice():
    base = diamond_structure()
    sup = make_supercell(base, 2, 1, 1)
    assert [a.serial for a in sup.atoms] == list(range(1, 17))
    assert np.allclose(sup.lattice.vectors[0], base.lattice.vectors[0] * 2)
    # (original, p, q, r) ordering: copies of atom 0 come first
    assert np.allclose(sup.atoms[1].position - sup.atoms[0].position,
                       base.lattice.vectors[0])


def test_supercell_composition():
    base = diamond_structure()
    via_two = make_supercell(make_supercell(base, 2, 1, 1), 1, 2, 1)
    direct = make_supercell(base, 2, 2, 1)
    got = np.array(sorted(map(tuple, np.round(via_two.positions(), 9))))
    ref = np.array(sorted(map(tuple, np.round(direct.positions(), 9))))
    assert np.allclose(got, ref, atol=1e-9)
    assert np.allclose(via_two.lattice.vectors, direct.lattice.vectors)


def test_supercell_copies_properties():
    s = structure_from_arrays(["Fe"], [[0, 0, 0]], lattice=Lattice(np.eye(3) * 4),
                              properties=[{"spin": 2.0}])
    sup = make_supercell(s, 2, 1, 1)
    assert all(a.properties["spin"] == 2.0 for a in sup.atoms)


def test_supercell_requires_lattice():
    s = structure_from_arrays(["C"], [[0, 0, 0]])
    with pytest.raises(NeedsLattice):
        make_supercell(s, 2, 2, 2)


# --- bonds ---

def test_two_carbons_bond_within_radius_sum():
    s = structure_from_arrays(["C", "C"], [[0, 0, 0], [1.42, 0, 0]])
    bonds = detect_bonds(s, 1.0)
    # 2 * 0.76 = 1.52 >= 1.42
    assert len(bonds) == 1
    assert bonds[0].length == pytest.approx(1.42)
    assert bonds[0].image == (0, 0, 0)


def test_half_factor_removes_bond():
    s = structure_from_arrays(["C", "C"], [[0, 0, 0], [1.42, 0, 0]])
    assert detect_bonds(s, 0.5) == []


def test_lower_floor_rejects_overlapping_atoms():
    s = structure_from_arrays(["C", "C"], [[0, 0, 0], [0.3, 0, 0]])
    assert detect_bonds(s, 1.0) == []


def test_diamond_degree_four_with_periodic_images():
    s = diamond_structure()
    bonds = detect_bonds(s, 1.15)
    degree = np.zeros(8, dtype=int)
    for b in bonds:
        degree[b.i] += 1
        degree[b.j] += 1
    assert list(degree) == [4] * 8
    nn = 5.43 * np.sqrt(3) / 4
    assert all(b.length == pytest.approx(nn, abs=1e-9) for b in bonds)


def test_bonds_match_brute_force_oracle_random_cells():
    rng = np.random.default_rng(11)
    for trial in range(4):
        n = rng.integers(4, 20)
        lat = Lattice(np.eye(3) * 9.0 + rng.normal(size=(3, 3)) * 0.5)
        pos = rng.uniform(0, 8, size=(n, 3))
        species = rng.choice(["C", "N", "O", "Si", "Fe"], size=n)
        s = structure_from_arrays(list(species), pos, lattice=lat)
        for factor in rng.uniform(0.5, 1.3, size=3):
            got = {(b.i, b.j, b.image) for b in detect_bonds(s, factor)}
            want, lengths = brute_force_bonds(s, factor)
            assert got == want, f"trial {trial} factor {factor}"
            for b in detect_bonds(s, factor):
                assert b.length == pytest.approx(lengths[(b.i, b.j, b.image)], rel=1e-12)


def test_bonds_sorted_and_unique():
    s = diamond_structure()
    bonds = detect_bonds(s, 1.15)
    keys = [(b.i, b.j, b.image) for b in bonds]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)
    assert all(b.i < b.j for b in bonds)


def test_cell_shorter_than_cutoff_is_refused():
    s = structure_from_arrays(["Cs", "Cs"], [[0, 0, 0], [1.5, 0, 0]],
                              lattice=Lattice(np.eye(3) * 2.0))
    with pytest.raises(CellTooSmall):
        detect_bonds(s, 1.0)  # 2 * 2.44 = 4.88 > 2.0


def test_molecule_bonds_need_no_lattice():
    s = structure_from_arrays(["O", "H", "H"],
                              [[0, 0, 0], [0.96, 0, 0], [-0.24, 0.93, 0]])
    bonds = detect_bonds(s, 1.0)
    assert {(b.i, b.j) for b in bonds} == {(0, 1), (0, 2)}


# --- scalar measurements ---

def test_distance():
    assert distance([0, 0, 0], [3, 4, 0]) == pytest.approx(5.0)


def test_angle_collinear_and_right():
    assert angle([1, 0, 0], [0, 0, 0], [-1, 0, 0]) == pytest.approx(180.0)
    assert angle([1, 0, 0], [0, 0, 0], [0, 1, 0]) == pytest.approx(90.0)


def test_tetrahedral_angle():
    # methane-like: arccos(-1/3)
    p = np.array([[1, 1, 1], [0, 0, 0], [1, -1, -1]], dtype=float)
    assert angle(*p) == pytest.approx(np.degrees(np.arccos(-1 / 3)), abs=1e-9)


def test_angle_degenerate():
    with pytest.raises(DegenerateGeometry):
        angle([0, 0, 0], [0, 0, 0], [1, 0, 0])


def test_dihedral_trans_and_eclipsed():
    trans = [[0, 1, 0], [0, 0, 0], [1, 0, 0], [1, -1, 0]]
    assert dihedral(*trans) == pytest.approx(180.0)
    cis = [[0, 1, 0], [0, 0, 0], [1, 0, 0], [1, 1, 0]]
    assert dihedral(*cis) == pytest.approx(0.0, abs=1e-12)


def test_dihedral_sign_convention_and_range():
    plus = dihedral([0, 1, 0], [0, 0, 0], [1, 0, 0], [1, 0, 1])
    assert plus == pytest.approx(90.0)
    minus = dihedral([0, 1, 0], [0, 0, 0], [1, 0, 0], [1, 0, -1])
    assert minus == pytest.approx(-90.0)


def test_dihedral_collinear_arms():
    with pytest.raises(DegenerateGeometry):
        dihedral([0, 0, 0], [1, 0, 0], [2, 0, 0], [3, 0, 0])


def test_rigid_motion_invariance():
    rng = np.random.default_rng(3)
    pts = rng.normal(size=(4, 3)) * 2.0
    d0 = distance(pts[0], pts[1])
    a0 = angle(pts[0], pts[1], pts[2])
    t0 = dihedral(*pts)
    for _ in range(25):
        rot = random_rotation(rng)
        shift = rng.normal(size=3) * 5
        moved = pts @ rot.T + shift
        assert distance(moved[0], moved[1]) == pytest.approx(d0, abs=1e-9)
        assert angle(moved[0], moved[1], moved[2]) == pytest.approx(a0, abs=1e-9)
        assert dihedral(*moved) == pytest.approx(t0, abs=1e-9)


def test_dihedral_flips_sign_under_mirror():
    rng = np.random.default_rng(4)
    pts = rng.normal(size=(4, 3))
    mirrored = pts * np.array([1, 1, -1])
    assert dihedral(*mirrored) == pytest.approx(-dihedral(*pts), abs=1e-9)


# --- measure_selection ---

def test_measure_two_picks():
    s = diamond_structure()
    r = measure_selection(s, [1, 5])
    assert len(r.distances) == 1
    assert r.angles == ()
    assert r.dihedral is None
    assert r.distances[0] == pytest.approx(5.43 * np.sqrt(3) / 4, abs=1e-9)


def test_measure_counts_follow_pick_count():
    s = diamond_structure()
    r3 = measure_selection(s, [1, 5, 2])
    assert len(r3.distances) == 2 and len(r3.angles) == 1 and r3.dihedral is None
    r4 = measure_selection(s, [1, 5, 2, 6])
    assert len(r4.distances) == 3 and len(r4.angles) == 2 and r4.dihedral is not None


def test_measure_collinear_picks_flag_dihedral():
    s = structure_from_arrays(["C"] * 4,
                              [[0, 0, 0], [1, 0, 0], [2, 0, 0], [3, 0, 0]])
    r = measure_selection(s, [1, 2, 3, 4])
    assert r.dihedral is None
    assert "dihedral" in r.degenerate
    assert r.angles == (180.0, 180.0)


def test_measure_composition_matches_scalar_ops():
    s = diamond_structure()
    r = measure_selection(s, [1, 5, 4, 8])
    pos = {a.serial: a.position for a in s.atoms}
    assert r.distances[0] == pytest.approx(distance(pos[1], pos[5]))
    assert r.distances[1] == pytest.approx(distance(pos[5], pos[4]))
    assert r.angles[0] == pytest.approx(angle(pos[1], pos[5], pos[4]))
    assert r.dihedral == pytest.approx(dihedral(pos[1], pos[5], pos[4], pos[8]))


def test_measure_duplicate_pick():
    with pytest.raises(DuplicatePick):
        measure_selection(diamond_structure(), [1, 1])


def test_measure_bad_index():
    with pytest.raises(BadIndex):
        measure_selection(diamond_structure(), [1, 99])
    with pytest.raises(BadIndex):
        measure_selection(diamond_structure(), [])
