"""Named morphism classes and the concrete wfs constructions built from
coproduct injections, split epimorphisms, and injective objects."""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    AuditError,
    FinCat,
    MorClass,
    MorId,
    ObjId,
    StructuralError,
    UnsupportedStructureError,
    all_morphisms,
    iso_set,
)
from .instances import GraphBackend
from .lifting import Check, WfsReport, check_wfs, class_operator, pullback_stable
from .structures import (
    binary_coproduct,
    binary_product,
    classify_morphisms,
    is_colimit,
    is_pointed,
    mediating_from_colimit,
)

NAMED_CLASSES = (
    "All",
    "Iso",
    "Mono",
    "Epi",
    "SplitMono",
    "SplitEpi",
    "RegEpi",
    "NormMono",
    "NormEpi",
    "ZeroKer",
    "ZeroCoker",
    "Sum",
    "FullVertexSurj",
)


def coproduct_injections(cat: FinCat) -> MorClass:
    """Morphisms that are an injection of some binary coproduct diagram.

    The quantifier is existential over all coproduct diagrams in the
    table, not over a chosen coproduct per pair of objects, so the class
    is diagram-independent.
    """
    if "sum_class" in cat._cache:
        return cat._cache["sum_class"]
    members = []
    for f in cat.morphisms():
        b = cat.cod[f]
        found = False
        for other in cat.objects():
            for g in cat.hom(other, b):
                if is_colimit(
                    cat, "binary-coproduct", (cat.dom[f], other), b, (f, g)
                ):
                    found = True
                    break
            if found:
                break
        if found:
            members.append(f)
    out = MorClass.of(cat, members)
    cat._cache["sum_class"] = out
    return out


def has_binary_coproducts(cat: FinCat) -> bool:
    return all(
        binary_coproduct(cat, a, b) is not None
        for a in cat.objects()
        for b in cat.objects()
    )


def has_binary_products(cat: FinCat) -> bool:
    return all(
        binary_product(cat, a, b) is not None
        for a in cat.objects()
        for b in cat.objects()
    )


def named_class(cat: FinCat, name: str) -> MorClass:
    """Resolve one of the named classes by exhaustive computation."""
    if name not in NAMED_CLASSES:
        raise StructuralError(f"unknown class name {name!r}")
    if name == "All":
        return all_morphisms(cat)
    if name == "Iso":
        return MorClass(cat, iso_set(cat))
    if name == "Sum":
        return coproduct_injections(cat)
    if name == "FullVertexSurj":
        backend = cat.backend
        if not isinstance(backend, GraphBackend):
            raise UnsupportedStructureError(
                "full and vertex-surjective is a graph-backend class"
            )
        return MorClass(cat, backend.full_vertex_surjective(cat))
    profiles = classify_morphisms(cat)
    flag = {
        "Mono": "mono",
        "Epi": "epi",
        "SplitMono": "split_mono",
        "SplitEpi": "split_epi",
        "RegEpi": "regular_epi",
        "NormMono": "normal_mono",
        "NormEpi": "normal_epi",
        "ZeroKer": "zero_kernel",
        "ZeroCoker": "zero_cokernel",
    }[name]
    if flag in ("normal_mono", "normal_epi", "zero_kernel", "zero_cokernel"):
        if not is_pointed(cat):
            raise UnsupportedStructureError(f"{name} needs a zero object")
    return MorClass.of(
        cat,
        [m for m in cat.morphisms() if getattr(profiles[m], flag) is True],
    )


def left_of_splitepi(cat: FinCat) -> MorClass:
    """Left lifting class of the split epis via the section characterization.

    f: A -> B belongs exactly when some k: B -> A+B satisfies k f = (first
    injection) and (cograph of f) k = identity.  The lifting-operator
    computation of the same class is run alongside and must agree; a
    mismatch is an engine bug, never a property of the input.
    """
    comp = cat.composition
    members = []
    for f in cat.morphisms():
        a, b = cat.dom[f], cat.cod[f]
        cop = binary_coproduct(cat, a, b)
        if cop is None:
            raise UnsupportedStructureError(
                f"no coproduct of {cat.obj_label(a)} and {cat.obj_label(b)}"
            )
        inj_a, inj_b = cop.legs
        cograph = mediating_from_colimit(
            cat, cop, b, (f, cat.identity[b])
        )
        assert len(cograph) == 1
        p = cograph[0]
        if any(
            comp[(k, f)] == inj_a and comp[(p, k)] == cat.identity[b]
            for k in cat.hom(b, cop.apex)
        ):
            members.append(f)
    out = MorClass.of(cat, members)
    operator = class_operator(cat, named_class(cat, "SplitEpi"), "left")
    if out.members != operator.members:
        raise AuditError(
            "section characterization disagrees with the lifting operator: "
            f"{sorted(out.members ^ operator.members)}"
        )
    return out


@dataclass(frozen=True)
class SumSplitEpiReport:
    """Verdict for the (coproduct injections, split epis) candidate wfs."""

    all_binary_coproducts: bool
    sum_pullback_stable: Check
    pointed_split_monos_in_sum: Check
    hypothesis_used: str
    wfs_report: WfsReport

    @property
    def wfs(self) -> bool:
        return self.wfs_report.wfs

    def doc(self, cat: FinCat) -> dict:
        return {
            "all_binary_coproducts": self.all_binary_coproducts,
            "hypothesis_used": self.hypothesis_used,
            "sum_pullback_stable": self.sum_pullback_stable.doc(cat),
            "pointed_split_monos_in_sum": self.pointed_split_monos_in_sum.doc(cat),
            "wfs": self.wfs_report.doc(cat),
        }


def verify_sum_splitepi_wfs(cat: FinCat) -> SumSplitEpiReport:
    """Detect which sufficient hypothesis holds, then run the wfs check.

    The wfs verdict is reported even when neither hypothesis holds, with
    hypothesis_used = "none".  Whether every binary coproduct exists is
    reported rather than required: a truncated table can carry the class
    of coproduct injections without being closed under coproducts.
    """
    sums = named_class(cat, "Sum")
    split_epis = named_class(cat, "SplitEpi")
    stable = pullback_stable(cat, sums)
    if is_pointed(cat):
        split_monos = named_class(cat, "SplitMono")
        extra = sorted(split_monos.members - sums.members)
        pointed_route = (
            Check(True) if not extra else Check(False, {"split_mono": extra[0]})
        )
    else:
        pointed_route = Check(False, note="no zero object")
    if stable.ok and pointed_route.ok:
        used = "both"
    elif stable.ok:
        used = "sum_pullback_stable"
    elif pointed_route.ok:
        used = "pointed_split_monos_in_sum"
    else:
        used = "none"
    return SumSplitEpiReport(
        all_binary_coproducts=has_binary_coproducts(cat),
        sum_pullback_stable=stable,
        pointed_split_monos_in_sum=pointed_route,
        hypothesis_used=used,
        wfs_report=check_wfs(cat, sums, split_epis),
    )


@dataclass(frozen=True)
class InjectivesReport:
    all_binary_products: bool
    injectives: tuple[ObjId, ...]
    enough_injectives: Check
    wfs_report: WfsReport

    @property
    def wfs(self) -> bool:
        return self.wfs_report.wfs

    def doc(self, cat: FinCat) -> dict:
        return {
            "all_binary_products": self.all_binary_products,
            "injectives": [cat.obj_label(o) for o in self.injectives],
            "enough_injectives": self.enough_injectives.doc(cat),
            "wfs": self.wfs_report.doc(cat),
        }


def injective_objects(cat: FinCat) -> tuple[ObjId, ...]:
    """Objects with the extension property against every mono of the table."""
    comp = cat.composition
    monos = named_class(cat, "Mono")
    out = []
    for i in cat.objects():
        injective = True
        for m in sorted(monos.members):
            a, b = cat.dom[m], cat.cod[m]
            for f in cat.hom(a, i):
                if not any(comp[(g, m)] == f for g in cat.hom(b, i)):
                    injective = False
                    break
            if not injective:
                break
        if injective:
            out.append(i)
    return tuple(out)


def verify_injectives_wfs(cat: FinCat) -> InjectivesReport:
    """Enough-injectives detection plus the (Mono, right lifters) wfs check.

    Whether every binary product exists is reported, not required, for the
    same truncation reason as the coproduct-injection check.
    """
    monos = named_class(cat, "Mono")
    injs = injective_objects(cat)
    inj_set = set(injs)
    missing = None
    for a in cat.objects():
        if not any(
            cat.cod[m] in inj_set for m in sorted(monos.members) if cat.dom[m] == a
        ):
            missing = a
            break
    enough = Check(True) if missing is None else Check(False, {"object": cat.obj_label(missing)})
    right = class_operator(cat, monos, "right")
    return InjectivesReport(
        all_binary_products=has_binary_products(cat),
        injectives=injs,
        enough_injectives=enough,
        wfs_report=check_wfs(cat, monos, right),
    )
