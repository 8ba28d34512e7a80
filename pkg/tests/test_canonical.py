import pytest

from fincat import canonical as cn
from fincat import lifting as lf
from fincat.core import UnsupportedStructureError, all_morphisms, iso_class

import helpers


def test_named_class_resolution(finset3):
    assert cn.named_class(finset3, "All").members == all_morphisms(finset3).members
    assert cn.named_class(finset3, "Iso").members == iso_class(finset3).members
    with pytest.raises(Exception):
        cn.named_class(finset3, "Bogus")
    with pytest.raises(UnsupportedStructureError):
        cn.named_class(finset3, "NormMono")  # no zero object
    with pytest.raises(UnsupportedStructureError):
        cn.named_class(finset3, "FullVertexSurj")  # not a graph backend


def test_finset_sum_is_mono(finset3):
    """Every injection exhibits its codomain as a coproduct with the
    complement, so the coproduct-injection class is the mono class."""
    assert cn.named_class(finset3, "Sum").members == cn.named_class(finset3, "Mono").members


def test_finset_splitepi_is_epi(finset3):
    assert (
        cn.named_class(finset3, "SplitEpi").members
        == cn.named_class(finset3, "Epi").members
    )


def test_sum_in_terminal_category():
    cat = helpers.terminal_category()
    assert cn.named_class(cat, "Sum").members == {0}


def test_graph_sum_artifact(graph21, graph22):
    """At one edge the table carries two collapse morphisms that pass the
    coproduct test because no three-vertex graph is present to refute
    them; one more edge restores the expected containment in the monos."""
    sums21 = cn.named_class(graph21, "Sum")
    monos21 = cn.named_class(graph21, "Mono")
    extras = sums21.members - monos21.members
    assert len(extras) == 2
    sums22 = cn.named_class(graph22, "Sum")
    monos22 = cn.named_class(graph22, "Mono")
    assert sums22.members <= monos22.members


def test_graph_right_lifters_of_mono(graph22):
    monos = cn.named_class(graph22, "Mono")
    sepi = cn.named_class(graph22, "SplitEpi")
    msq = lf.class_operator(graph22, monos, "right")
    assert msq.members <= sepi.members
    assert msq.members != sepi.members
    assert msq.members == cn.named_class(graph22, "FullVertexSurj").members


def test_left_of_splitepi_on_coproduct_hosts(pointed2):
    """The section characterization and the lifting operator agree on every
    instance with all binary coproducts (the call itself audits this)."""
    hosts = [
        helpers.terminal_category(),
        helpers.chain3(),
        helpers.diamond_lattice(),
        helpers.wedge_poset(),
    ]
    for cat in hosts:
        left = cn.left_of_splitepi(cat)
        operator = lf.class_operator(cat, cn.named_class(cat, "SplitEpi"), "left")
        assert left.members == operator.members
        sums = cn.named_class(cat, "Sum")
        assert sums.members <= left.members


def test_left_of_splitepi_requires_coproducts(finset3):
    with pytest.raises(UnsupportedStructureError):
        cn.left_of_splitepi(finset3)


def test_sum_splitepi_on_lattice():
    """On a lattice every morphism is a coproduct injection, the split epis
    are the identities, and the pullback-stability route gives a wfs."""
    cat = helpers.diamond_lattice()
    rep = cn.verify_sum_splitepi_wfs(cat)
    assert rep.all_binary_coproducts
    assert rep.hypothesis_used == "sum_pullback_stable"
    assert rep.wfs
    assert cn.named_class(cat, "Sum").members == all_morphisms(cat).members
    assert cn.named_class(cat, "SplitEpi").members == iso_class(cat).members


def test_sum_splitepi_terminal_degenerate():
    rep = cn.verify_sum_splitepi_wfs(helpers.terminal_category())
    assert rep.wfs


def test_sum_splitepi_finset_truncation(finset3):
    """The pullback-stability hypothesis is detected, the lifting conditions
    hold, and only the factorization clause fails at this size."""
    rep = cn.verify_sum_splitepi_wfs(finset3)
    assert rep.hypothesis_used == "sum_pullback_stable"
    assert not rep.all_binary_coproducts
    assert rep.wfs_report.lifting.ok
    assert rep.wfs_report.left_operator.ok and rep.wfs_report.right_operator.ok
    assert not rep.wfs_report.factorization.ok
    assert not rep.wfs


def test_sum_splitepi_finab_route(finab4):
    """The additive instance fails pullback stability (an inclusion into a
    cyclic group of larger order pulls back off the class) but satisfies
    the pointed route."""
    rep = cn.verify_sum_splitepi_wfs(finab4)
    assert not rep.sum_pullback_stable.ok
    assert rep.pointed_split_monos_in_sum.ok
    assert rep.hypothesis_used == "pointed_split_monos_in_sum"
    assert not rep.wfs  # factorization again needs middles beyond the bound
    assert not rep.wfs_report.factorization.ok


def test_injectives_finset(finset3):
    rep = cn.verify_injectives_wfs(finset3)
    assert [finset3.obj_label(o) for o in rep.injectives] == ["1", "2", "3"]
    assert rep.enough_injectives.ok
    assert not rep.all_binary_products
    msq = lf.class_operator(finset3, cn.named_class(finset3, "Mono"), "right")
    assert msq.members == cn.named_class(finset3, "Epi").members


def test_injectives_terminal():
    rep = cn.verify_injectives_wfs(helpers.terminal_category())
    assert rep.wfs and rep.enough_injectives.ok
