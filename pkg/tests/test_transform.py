import numpy as np
import pytest

from segmap import catalog
from segmap.errors import ValidationError
from segmap.fermion import FermionOperator
from segmap.framework import derive_sets
from segmap.oracle import dense_ladder, dense_qubit
from segmap.pauli import PauliString, QubitOperator
from segmap.transform import ladder_image, map_hamiltonian, map_ladder, mapping_pauli_weight

from conftest import H_2SP, H_BK, H_JW, catalog_families


def test_jw_ladder_form():
    sets = derive_sets(catalog.jw(5))
    z = [(k, "Z") for k in range(3)]
    expected = QubitOperator({PauliString(z + [(3, "X")]): 0.5, PauliString(z + [(3, "Y")]): 0.5j})
    assert map_ladder(3, False, sets) == expected


def test_single_mode_base_case():
    sets = derive_sets(catalog.jw(1))
    assert map_ladder(0, False, sets) == QubitOperator({"X0": 0.5, "Y0": 0.5j})
    assert map_ladder(0, True, sets) == QubitOperator({"X0": 0.5, "Y0": -0.5j})


def test_parity_ladder_form():
    sets = derive_sets(catalog.parity(4))
    got = map_ladder(1, False, sets)
    assert got == QubitOperator({"Z0 X1 X2 X3": 0.5, "Y1 X2 X3": 0.5j})
    # dense check against the occupation-basis operator through the encoding
    from segmap.oracle import encoding_permutation
    perm = encoding_permutation(catalog.parity(4))
    np.testing.assert_allclose(perm.T @ dense_qubit(got, 4).matrix @ perm, dense_ladder(1, False, 4).matrix)


def test_ladder_image_has_two_half_terms():
    sets = derive_sets(catalog.msp(12, (2, 3, 2)))
    for j in range(12):
        img = ladder_image(j, True, sets)
        assert len(img.operator) == 2
        assert sorted(abs(c) for _, c in img.operator.items()) == [0.5, 0.5]


def test_ladder_mode_out_of_range():
    with pytest.raises(ValidationError):
        map_ladder(4, False, derive_sets(catalog.jw(4)))


@pytest.mark.parametrize("M", [2, 3, 5])
def test_creation_is_conjugate_transpose(M):
    for _, fam in catalog_families(M):
        sets = derive_sets(fam)
        for j in range(M):
            a = dense_qubit(map_ladder(j, False, sets), M).matrix
            c = dense_qubit(map_ladder(j, True, sets), M).matrix
            np.testing.assert_allclose(c, a.conj().T, atol=1e-15)
            assert map_ladder(j, True, sets) == map_ladder(j, False, sets).dagger()


@pytest.mark.parametrize("desc, expected", [("jw", H_JW), ("bk", H_BK), ("2sp:w=2", H_2SP)])
def test_h2_listings(h2, desc, expected):
    op = map_hamiltonian(h2, catalog.sets_from_descriptor(desc, 4))
    assert len(op) == 15
    assert set(op) == {PauliString.from_str(k) for k in expected}
    for key, value in expected.items():
        assert op[key] == pytest.approx(value, abs=1e-5)
        assert abs(op[key].imag) < 1e-12


def test_hamiltonian_output_is_canonically_ordered(h2):
    op = map_hamiltonian(h2, catalog.sets_from_descriptor("jw", 4))
    keys = list(op)
    assert keys == sorted(keys, key=PauliString.sort_key)


def test_hamiltonian_mode_mismatch(h2):
    with pytest.raises(ValidationError, match="modes"):
        map_hamiltonian(h2, derive_sets(catalog.jw(5)))


def test_empty_hamiltonian_maps_to_zero():
    assert len(map_hamiltonian(FermionOperator(3), derive_sets(catalog.jw(3)))) == 0


def test_constant_term_kept():
    op = FermionOperator.from_terms(2, [(0.7, [])])
    assert map_hamiltonian(op, derive_sets(catalog.bk_tree(2))) == QubitOperator({"I": 0.7})


def test_pauli_weight_examples():
    assert mapping_pauli_weight(derive_sets(catalog.jw(8))) == 8
    assert mapping_pauli_weight(derive_sets(catalog.bk_tree(8))) == 4
    w = mapping_pauli_weight(derive_sets(catalog.msp(12, (2, 3, 2))))
    assert w <= 5
    # exact value by enumerating every term of every ladder image
    sets = derive_sets(catalog.msp(12, (2, 3, 2)))
    brute = max(p.weight for j in range(12) for d in (0, 1) for p in map_ladder(j, bool(d), sets))
    assert w == brute == 5


@pytest.mark.parametrize("M", [1, 4, 9, 16])
def test_weight_within_set_sizes(M):
    for _, fam in catalog_families(M) if M < 9 else [("bk", catalog.bk_tree(M)), ("jw", catalog.jw(M))]:
        sets = derive_sets(fam)
        bound = max(len(sets.U[j]) + len(sets.P[j]) + 1 for j in range(M))
        assert mapping_pauli_weight(sets) == bound
