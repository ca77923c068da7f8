from __future__ import annotations

import pytest

from fusionreps.fusion import fusion_from_spec, select_subgroup, trivial_fusion
from fusionreps.presets import FUSION_PRESETS, group_preset

from conftest import fusion

SYLOW_PRESETS = [k for k in FUSION_PRESETS if k != "S4-on-V"]


def brute_force_maps(F, H):
    """Conjugation maps H -> S computed directly in G."""
    G, emb, local = F.G, F.embed, F.local
    out = set()
    for g in range(G.order):
        imgs = [G.conj(g, emb[x]) for x in H.sorted]
        if all(y in local for y in imgs):
            out.add(tuple(local[y] for y in imgs))
    return out


@pytest.mark.parametrize("spec", ["A4", "S4", "SL2-3", "C5-semidirect-C4", "S3@2", "S4-on-V"])
def test_hom_sets_match_direct_conjugation(spec):
    F = fusion(spec)
    for H in F.subgroups.subgroups:
        assert set(F.hom_to_S(H)) == brute_force_maps(F, H)


@pytest.mark.parametrize("spec", SYLOW_PRESETS)
def test_sylow_presets_saturated(spec):
    F = fusion(spec)
    assert F.is_sylow
    assert F.is_saturated().saturated


def test_s4_on_v_fails_sylow_axiom():
    v = fusion("S4-on-V").is_saturated()
    assert not v.saturated
    assert v.axiom == "sylow"
    assert v.witness["aut_F_order"] == 6 and v.witness["aut_S_order"] == 1


@pytest.mark.parametrize("spec,n_classes", [("A4", 3), ("S4", 7), ("SL2-3", 4), ("A6", 6), ("S3", 2), ("PGL3-3", 8)])
def test_fusion_class_counts(spec, n_classes):
    assert len(fusion(spec).fusion_classes) == n_classes


def test_trivial_fusion_is_conjugation_in_S():
    S = group_preset("D8")
    F = trivial_fusion(S)
    assert len(F.fusion_classes) == S.subgroups().n_classes
    assert F.is_trivial_fusion


def test_selectors():
    G = group_preset("S4")
    H, p = select_subgroup(G, "auto:3")
    assert (H.order, p) == (3, 3)
    H, p = select_subgroup(G, "gens:[[1,0,3,2],[2,3,0,1]]")
    assert (H.order, p) == (4, 2)
    cls = G.subgroups()
    c8 = next(c for c in range(cls.n_classes) if cls.class_order(c) == 8)
    H, p = select_subgroup(G, f"label:{cls.labels[c8]}")
    assert (H.order, p) == (8, 2)


def test_fusion_spec_prime_suffix():
    F = fusion_from_spec("S3@2")
    assert (F.prime, F.S.order) == (2, 2)
