import itertools

import pytest

from fincat import structures as st
from fincat.core import UnsupportedStructureError, opposite
from fincat.instances import p_primary_candidate

import helpers


def test_special_objects(finset3, finab4, pointed3):
    assert st.terminal_object(finset3) == 1
    assert st.initial_object(finset3) == 0
    assert st.zero_object(finset3) is None
    assert st.zero_object(finab4) == 0
    assert st.zero_object(pointed3) == 0
    assert not st.is_pointed(finset3) and st.is_pointed(finab4)


def test_terminal_limit(finset3):
    t = st.limit(finset3, "terminal")
    assert t is not None and t.apex == 1 and t.legs == ()
    assert st.is_limit(finset3, "terminal", (), 1, ())
    assert not st.is_limit(finset3, "terminal", (), 2, ())


def test_finset_pullback_matches_fiber_product(finset3):
    """Table pullbacks agree with the set-level fiber product size."""
    backend = finset3.backend
    checked = 0
    for f in finset3.morphisms():
        for g in finset3.morphisms():
            if finset3.cod[f] != finset3.cod[g]:
                continue
            pb = st.pullback(finset3, f, g)
            gf, gg = backend.graphs[f], backend.graphs[g]
            size = sum(
                1
                for x in range(backend.sizes[finset3.dom[f]])
                for y in range(backend.sizes[finset3.dom[g]])
                if gf[x] == gg[y]
            )
            if size <= 3:
                assert pb is not None
                assert backend.sizes[pb.apex] == size
                checked += 1
            # a fiber product bigger than every object cannot be present
            elif pb is not None:
                assert backend.sizes[pb.apex] <= 3
    assert checked > 500


def test_finset_equalizer_oracle(finset3):
    backend = finset3.backend
    for a in finset3.objects():
        for b in finset3.objects():
            for f, g in itertools.combinations(finset3.hom(a, b), 2):
                eq = st.limit(finset3, "equalizer", (f, g))
                size = sum(
                    1
                    for x in range(backend.sizes[a])
                    if backend.graphs[f][x] == backend.graphs[g][x]
                )
                assert eq is not None
                assert backend.sizes[eq.apex] == size


def test_kernel_of_surjection(finab4):
    b = finab4.backend
    z4, z2 = b.group_index((4,)), b.group_index((2,))
    surj = b.locate(finab4, z4, z2, ((1,),))
    k = st.kernel(finab4, surj)
    assert k is not None
    assert finab4.obj_labels[k.apex] == "Z2"
    assert b.matrices[k.legs[0]] == ((2,),)


def test_cokernel_pair_of_injection(finset3):
    inj = finset3.hom(1, 2)[0]
    cp = st.cokernel_pair(finset3, inj)
    assert cp is not None
    assert finset3.obj_labels[cp.apex] == "3"
    assert len(cp.legs) == 2
    assert st.is_colimit(finset3, "cokernel-pair", (inj,), cp.apex, cp.legs)


def test_limit_colimit_duality(finset3):
    """The canonical limit in the category matches the canonical colimit in
    the opposite, leg for leg, and the direct cocone recheck accepts it."""
    op = opposite(finset3)
    pairs = 0
    for f in finset3.morphisms():
        for g in finset3.morphisms():
            if finset3.cod[f] != finset3.cod[g] or f > 30 or g > 30:
                continue
            pb = st.pullback(finset3, f, g)
            po = st.pushout(op, f, g)
            assert (pb is None) == (po is None)
            if pb is not None:
                assert (pb.apex, pb.legs) == (po.apex, po.legs)
                assert st.is_colimit(op, "pushout", (f, g), po.apex, po.legs)
            pairs += 1
    assert pairs > 100


def test_every_returned_limit_passes_recheck(finab4):
    for f in finab4.morphisms():
        kp = st.kernel_pair(finab4, f)
        if kp is not None:
            assert st.is_limit(finab4, "kernel-pair", (f,), kp.apex, kp.legs)
        ck = st.cokernel(finab4, f)
        if ck is not None:
            assert st.is_colimit(finab4, "cokernel", (f,), ck.apex, ck.legs)


def test_classification_finset(finset3):
    prof = st.classify_morphisms(finset3)
    backend = finset3.backend
    for m in finset3.morphisms():
        assert prof[m].mono == backend.is_injective(m)
        assert prof[m].epi == backend.is_surjective(finset3, m)
        assert prof[m].epi == prof[m].split_epi
        assert prof[m].normal_mono is None  # no zero object
        if prof[m].iso:
            assert prof[m].mono and prof[m].epi and prof[m].split_mono


def test_classification_finab_abelian(finab4):
    prof = st.classify_morphisms(finab4)
    for m in finab4.morphisms():
        assert prof[m].mono == prof[m].normal_mono
        assert prof[m].epi == prof[m].normal_epi == prof[m].regular_epi
        if prof[m].split_epi:
            assert prof[m].epi
        if prof[m].normal_epi:
            assert prof[m].regular_epi


def test_profile_flag_implications(pointed3):
    prof = st.classify_morphisms(pointed3)
    for m in pointed3.morphisms():
        p = prof[m]
        if p.iso:
            assert p.mono and p.epi and p.split_mono and p.split_epi
            assert p.regular_epi and p.normal_mono and p.normal_epi
        if p.normal_epi:
            assert p.regular_epi
        if p.regular_epi:
            assert p.epi


def test_pointed_kernel_classes(pointed3, finab4):
    """Monos have zero kernel and epis zero cokernel in pointed tables."""
    for cat in (pointed3, finab4):
        prof = st.classify_morphisms(cat)
        for m in cat.morphisms():
            if prof[m].mono:
                assert prof[m].zero_kernel is True
            if prof[m].epi:
                assert prof[m].zero_cokernel is True


def test_finab_z4_profile(finab4):
    b = finab4.backend
    z4, z2 = b.group_index((4,)), b.group_index((2,))
    surj = b.locate(finab4, z4, z2, ((1,),))
    prof = st.classify_morphisms(finab4)
    assert prof[surj].normal_epi and prof[surj].regular_epi
    assert not prof[surj].split_mono


def test_normal_factorizations(finab4, pointed3, finset3):
    ids = finab4.identity[1]
    nf = st.normal_factorizations(finab4, ids)
    assert nf.normal_epi_zero_kernel is not None
    e, m = nf.normal_epi_zero_kernel
    assert finab4.composition[(m, e)] == ids
    assert st.has_normal_epi_zero_kernel_factorizations(finab4)
    assert st.has_zero_cokernel_normal_mono_factorizations(finab4)
    # pointed sets: collapse of one point factors quotient-then-injection
    collapse = pointed3.backend.graphs.index((0, 0, 1))
    nf = st.normal_factorizations(pointed3, collapse)
    assert nf.normal_epi_zero_kernel is not None
    with pytest.raises(UnsupportedStructureError):
        st.normal_factorizations(finset3, 0)


def test_biproducts(finab4, pointed3):
    b = finab4.backend
    z2, z3, z22 = b.group_index((2,)), b.group_index((3,)), b.group_index((2, 2))
    bp = st.biproduct(finab4, z2, z2)
    assert bp is not None and bp.apex == z22
    assert st.biproduct(finab4, z2, z3) is None
    # pointed sets never upgrade their coproducts to biproducts
    assert st.biproduct(pointed3, 1, 1) is None


def test_hom_addition_is_group_addition(finab4):
    b = finab4.backend
    z2, z4 = b.group_index((2,)), b.group_index((4,))
    table = st.hom_addition(finab4, z4, z2)
    assert table is not None
    for f in finab4.hom(z4, z2):
        for g in finab4.hom(z4, z2):
            mf, mg = b.matrices[f], b.matrices[g]
            expected = tuple(
                tuple((x + y) % 2 for x, y in zip(rf, rg)) for rf, rg in zip(mf, mg)
            )
            assert b.matrices[table[(f, g)]] == expected


def test_exactness_finab(finab4):
    rep = st.check_exactness_properties(finab4)
    assert rep.pointed and rep.regular and rep.coregular
    assert rep.protomodular and rep.additive
    assert rep.homological and rep.almost_abelian


def test_exactness_finset(finset3):
    rep = st.check_exactness_properties(finset3)
    assert not rep.pointed and not rep.homological


def test_exactness_pointed_sets(pointed3):
    rep = st.check_exactness_properties(pointed3)
    assert rep.pointed
    assert not rep.additive
    assert rep.details["additive"]["failure"]["pair"] == ["P2", "P2"]
    assert not rep.protomodular and not rep.homological


def test_exactness_budget():
    from fincat.core import ResourceBudgetError

    diamond = helpers.diamond_lattice()
    with pytest.raises(ResourceBudgetError):
        st.check_exactness_properties(diamond, budget=3)
