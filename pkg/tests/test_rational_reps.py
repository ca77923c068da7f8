from __future__ import annotations

import pytest

from fusionreps.characters import character_table
from fusionreps.presets import group_preset
from fusionreps.rational_reps import (cyclic_detection_matrix, linearization_witness, ritter_segal_basis,
                                      schur_index_report)

P_GROUPS = ["C2xC2", "C4", "C9", "D8", "Q8", "SD16", "C3xC3", "C4xC2"]


@pytest.mark.parametrize("name", P_GROUPS)
def test_basis_size_is_cyclic_class_count(name):
    S = group_preset(name)
    rs = ritter_segal_basis(S)
    assert len(rs) == len(S.subgroups().cyclic_classes())
    assert all(chi.is_rational() for chi in rs.characters)
    # every complex irreducible appears in exactly one orbit
    covered = sorted(i for orb in rs.orbits for i in orb)
    assert covered == list(range(len(character_table(S))))


@pytest.mark.parametrize("name", P_GROUPS)
def test_detection_and_linearization(name):
    S = group_preset(name)
    rs = ritter_segal_basis(S)
    assert cyclic_detection_matrix(S, rs).nonsingular
    assert linearization_witness(S, rs).spans_equal


@pytest.mark.parametrize("name,degrees", [("C4", [1, 1, 2]), ("Q8", [1, 1, 1, 1, 4]), ("SD16", [1, 1, 1, 1, 2, 4])])
def test_degrees(name, degrees):
    assert sorted(ritter_segal_basis(group_preset(name)).degrees) == degrees


def test_schur_index_of_quaternions():
    rep = schur_index_report(group_preset("Q8"))
    assert rep.index == 2
    assert schur_index_report(group_preset("D8")).index == 1
