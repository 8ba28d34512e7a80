import pytest

from fincat.core import (
    FinCat,
    MorClass,
    StructuralError,
    all_morphisms,
    constant_functor,
    full_subcategory,
    identity_functor,
    is_iso_closed_in_arrows,
    is_retract_closed,
    iso_class,
    opposite,
    validate_category,
    validate_functor,
)

import helpers


def test_terminal_category_is_valid():
    cat = helpers.terminal_category()
    assert validate_category(cat).ok
    assert cat.n_objects == 1 and cat.n_morphisms == 1


def test_validation_catches_broken_composite():
    arrow = helpers.arrow_category()
    bad = FinCat(
        n_objects=arrow.n_objects,
        dom=arrow.dom,
        cod=arrow.cod,
        identity=arrow.identity,
        composition={**arrow.composition, (1, 2): 0},
        obj_labels=arrow.obj_labels,
        mor_labels=arrow.mor_labels,
    )
    report = validate_category(bad)
    assert not report.ok
    assert any("composition entry" in v for v in report.violations)


def test_validation_catches_missing_pair():
    arrow = helpers.arrow_category()
    comp = dict(arrow.composition)
    del comp[(2, 1)]
    bad = FinCat(
        n_objects=arrow.n_objects,
        dom=arrow.dom,
        cod=arrow.cod,
        identity=arrow.identity,
        composition=comp,
    )
    report = validate_category(bad)
    assert any("missing from table" in v for v in report.violations)


def test_validation_catches_unit_failure():
    # A two-element "monoid" where composing with the unit moves elements.
    bad = helpers.monoid_category([0, 1], [[0, 0], [1, 1]])
    report = validate_category(bad)
    assert not report.ok


def test_validation_catches_associativity():
    # x*x = 1 and x*1 = x forces (x x) x != x (x x) under a broken table.
    bad = helpers.monoid_category([0, 1, 2], [[0, 1, 2], [1, 2, 2], [2, 2, 1]])
    report = validate_category(bad)
    assert not report.ok
    assert any("associativity" in v for v in report.violations)


def test_opposite_is_componentwise_involution(finset3, finab4):
    for cat in (finset3, finab4, helpers.diamond_lattice()):
        op = opposite(cat)
        assert validate_category(op).ok
        assert opposite(op) == cat
        assert op.n_morphisms == cat.n_morphisms


def test_iso_class_is_two_sided_inverses(finset3):
    backend = finset3.backend
    isos = iso_class(finset3)
    for m in finset3.morphisms():
        bijective = (
            finset3.dom[m] == finset3.cod[m] and backend.is_injective(m)
        )
        assert (m in isos) == bijective
    # sizes 0..3 give 0!, 1!, 2!, 3! bijections
    assert len(isos) == 1 + 1 + 2 + 6


def test_iso_class_transfers_to_opposite(finset3):
    op = opposite(finset3)
    assert iso_class(finset3).members == iso_class(op).members


def test_retract_closure_of_isos_and_all(finset2):
    assert is_retract_closed(finset2, iso_class(finset2)).closed
    assert is_retract_closed(finset2, all_morphisms(finset2)).closed


def test_retract_closure_witness():
    # In the two-element group the identity is a retract of the involution
    # (conjugate by it), so {s} alone is not retract closed.
    cat = helpers.z2_group()
    report = is_retract_closed(cat, MorClass.of(cat, {1}))
    assert not report.closed
    w = report.witness
    assert w.outer == 1 and w.inner == 0
    comp = cat.composition
    assert comp[(w.retr_dom, w.sect_dom)] == cat.identity[cat.dom[w.inner]]
    assert comp[(w.sect_cod, w.inner)] == comp[(w.outer, w.sect_dom)]
    assert comp[(w.inner, w.retr_dom)] == comp[(w.retr_cod, w.outer)]


def test_retract_closure_in_idempotent_monoid():
    # With only the trivial section-retraction pair, every class is closed.
    cat = helpers.split_idempotent_monoid()
    assert is_retract_closed(cat, MorClass.of(cat, {1})).closed


def test_iso_closure_in_arrows(finset2):
    isos = iso_class(finset2)
    assert is_iso_closed_in_arrows(finset2, isos).closed
    # one half of a swapped-pair class is not iso closed
    swap = next(
        m
        for m in finset2.morphisms()
        if m in isos.members and not finset2.is_identity(m)
    )
    ident = finset2.identity[finset2.dom[swap]]
    report = is_iso_closed_in_arrows(finset2, MorClass.of(finset2, {swap}))
    assert not report.closed and report.witness.inner == ident


def test_functor_validation(finset2):
    assert validate_functor(identity_functor(finset2)).ok
    assert validate_functor(constant_functor(finset2, 1)).ok
    broken = identity_functor(finset2)
    mutated = list(broken.mor_map)
    target, other = finset2.hom(1, 2)[:2]
    mutated[target] = other
    from fincat.core import Functor

    report = validate_functor(
        Functor(finset2, finset2, broken.obj_map, tuple(mutated))
    )
    assert not report.ok


def test_full_subcategory(finab4):
    b = finab4.backend
    emb = full_subcategory(finab4, [0, b.group_index((3,))])
    assert validate_category(emb.sub).ok
    assert emb.sub.n_objects == 2
    assert emb.sub.obj_labels == ("0", "Z3")
    for m in emb.sub.morphisms():
        sup = emb.mor_to_sup[m]
        assert emb.mor_from_sup[sup] == m


def test_morclass_ops(finset2):
    isos = iso_class(finset2)
    alls = all_morphisms(finset2)
    assert (isos & alls).members == isos.members
    assert (alls - isos) | isos == alls
    assert isos <= alls
    with pytest.raises(StructuralError):
        MorClass.of(finset2, {finset2.n_morphisms})
