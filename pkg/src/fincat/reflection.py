"""Reflective subcategories, firm reflectivity, cartesian morphism classes,
simplicity, semi-left-exactness, and the one-step factorization formulas.

Simplicity is judged by its definition: the right class coincides with the
class of morphisms whose unit-naturality square is a pullback.  The
equivalent induced-morphism criterion needs a pullback per morphism, which
a truncated table may lack; it is evaluated over the morphisms whose
pullback exists and the rest are reported as coverage gaps.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    AuditError,
    FinCat,
    MorClass,
    MorId,
    ObjId,
    PreconditionError,
    UnsupportedStructureError,
    iso_set,
)
from .lifting import Check, check_cancellation, check_fs, class_operator
from .structures import (
    initial_object,
    is_limit,
    mediating_from_colimit,
    mediating_to_limit,
    pullback,
    pushout,
    terminal_object,
)


@dataclass(frozen=True)
class FixedSubcategories:
    """Objects fixed by the right class over the terminal object and by the
    left class under the initial object; either side is None with a reason
    when the needed object is missing."""

    over_terminal: frozenset[int] | None
    over_terminal_reason: str
    under_initial: frozenset[int] | None
    under_initial_reason: str

    def doc(self, cat: FinCat) -> dict:
        return {
            "right_fixed": sorted(cat.obj_label(o) for o in self.over_terminal)
            if self.over_terminal is not None
            else None,
            "right_fixed_reason": self.over_terminal_reason,
            "left_fixed": sorted(cat.obj_label(o) for o in self.under_initial)
            if self.under_initial is not None
            else None,
            "left_fixed_reason": self.under_initial_reason,
        }


def fixed_subcategories(
    cat: FinCat, left: MorClass, right: MorClass
) -> FixedSubcategories:
    term = terminal_object(cat)
    init = initial_object(cat)
    if term is None:
        over, over_reason = None, "no terminal object"
    else:
        over = frozenset(
            b for b in cat.objects() if cat.hom(b, term)[0] in right.members
        )
        over_reason = "ok"
    if init is None:
        under, under_reason = None, "no initial object"
    else:
        under = frozenset(
            a for a in cat.objects() if cat.hom(init, a)[0] in left.members
        )
        under_reason = "ok"
    return FixedSubcategories(over, over_reason, under, under_reason)


@dataclass(frozen=True)
class ReflectionData:
    """A reflective subcategory with materialized reflector and unit."""

    cat: FinCat
    objects: frozenset[int]
    robj: tuple[int, ...]
    rmor: tuple[int, ...]
    unit: tuple[int, ...]


@dataclass(frozen=True)
class CoreflectionData:
    cat: FinCat
    objects: frozenset[int]
    sobj: tuple[int, ...]
    smor: tuple[int, ...]
    counit: tuple[int, ...]


def _is_universal_into(cat, sub: frozenset, a: ObjId, b: ObjId, r: MorId) -> bool:
    comp = cat.composition
    for b2 in sorted(sub):
        fib: dict[int, int] = {}
        for t in cat.hom(b, b2):
            c = comp[(t, r)]
            fib[c] = fib.get(c, 0) + 1
        for u in cat.hom(a, b2):
            if fib.get(u, 0) != 1:
                return False
    return True


def build_reflection(cat: FinCat, objects) -> ReflectionData | None:
    """Search a reflection of every object into the given full subcategory.

    Deterministic choice (lowest reflecting object, least unit).  All
    universal candidates found for one object must have isomorphic
    reflecting objects; anything else is an engine fault.
    """
    sub = frozenset(objects)
    isos = iso_set(cat)
    robj: list[int] = []
    unit: list[int] = []
    for a in cat.objects():
        winners = []
        for b in sorted(sub):
            for r in cat.hom(a, b):
                if _is_universal_into(cat, sub, a, b, r):
                    winners.append((b, r))
        if not winners:
            return None
        first = winners[0]
        for b, _ in winners[1:]:
            if not any(m in isos for m in cat.hom(first[0], b)):
                raise AuditError(
                    "two non-isomorphic reflections of the same object"
                )
        robj.append(first[0])
        unit.append(first[1])
    comp = cat.composition
    rmor: list[int] = []
    for f in cat.morphisms():
        a, b = cat.dom[f], cat.cod[f]
        target = comp[(unit[b], f)]
        cands = [
            t for t in cat.hom(robj[a], robj[b]) if comp[(t, unit[a])] == target
        ]
        if len(cands) != 1:
            raise AuditError("unit naturality does not determine the reflector")
        rmor.append(cands[0])
    return ReflectionData(cat, sub, tuple(robj), tuple(rmor), tuple(unit))


def _is_couniversal_from(cat, sub: frozenset, b: ObjId, a: ObjId, s: MorId) -> bool:
    comp = cat.composition
    for a2 in sorted(sub):
        fib: dict[int, int] = {}
        for t in cat.hom(a2, a):
            c = comp[(s, t)]
            fib[c] = fib.get(c, 0) + 1
        for u in cat.hom(a2, b):
            if fib.get(u, 0) != 1:
                return False
    return True


def build_coreflection(cat: FinCat, objects) -> CoreflectionData | None:
    sub = frozenset(objects)
    isos = iso_set(cat)
    sobj: list[int] = []
    counit: list[int] = []
    for b in cat.objects():
        winners = []
        for a in sorted(sub):
            for s in cat.hom(a, b):
                if _is_couniversal_from(cat, sub, b, a, s):
                    winners.append((a, s))
        if not winners:
            return None
        first = winners[0]
        for a, _ in winners[1:]:
            if not any(m in isos for m in cat.hom(first[0], a)):
                raise AuditError(
                    "two non-isomorphic coreflections of the same object"
                )
        sobj.append(first[0])
        counit.append(first[1])
    comp = cat.composition
    smor: list[int] = []
    for f in cat.morphisms():
        a, b = cat.dom[f], cat.cod[f]
        target = comp[(f, counit[a])]
        cands = [
            t for t in cat.hom(sobj[a], sobj[b]) if comp[(counit[b], t)] == target
        ]
        if len(cands) != 1:
            raise AuditError("counit naturality does not determine the coreflector")
        smor.append(cands[0])
    return CoreflectionData(cat, sub, tuple(sobj), tuple(smor), tuple(counit))


def validate_reflection(rd: ReflectionData) -> list[str]:
    """Audit the reflection data: typing, naturality, functoriality."""
    cat = rd.cat
    comp = cat.composition
    bad = []
    for a in cat.objects():
        if rd.robj[a] not in rd.objects:
            bad.append(f"reflector sends {a} outside the subcategory")
        u = rd.unit[a]
        if cat.dom[u] != a or cat.cod[u] != rd.robj[a]:
            bad.append(f"unit of {a} has wrong endpoints")
        if not _is_universal_into(cat, rd.objects, a, rd.robj[a], u):
            bad.append(f"unit of {a} is not universal")
    for f in cat.morphisms():
        a, b = cat.dom[f], cat.cod[f]
        if comp[(rd.rmor[f], rd.unit[a])] != comp[(rd.unit[b], f)]:
            bad.append(f"unit naturality fails at morphism {f}")
    for (g, f), gf in cat.composition.items():
        if comp[(rd.rmor[g], rd.rmor[f])] != rd.rmor[gf]:
            bad.append(f"reflector is not functorial at ({g}, {f})")
    return bad


def naturality_square_is_pullback(cat: FinCat, rd: ReflectionData, f: MorId) -> bool:
    """Whether the unit-naturality square of f is a pullback square."""
    a, b = cat.dom[f], cat.cod[f]
    return is_limit(
        cat,
        "pullback",
        (rd.rmor[f], rd.unit[b]),
        a,
        (rd.unit[a], f),
    )


def inverted_and_cartesian(
    cat: FinCat, rd: ReflectionData
) -> tuple[MorClass, MorClass]:
    """(morphisms inverted by the reflector, cartesian morphisms).

    A morphism is cartesian exactly when its own naturality square
    satisfies the pullback property; no separate pullback object has to
    exist for the test to be meaningful.
    """
    isos = iso_set(cat)
    inverted = MorClass.of(
        cat, [f for f in cat.morphisms() if rd.rmor[f] in isos]
    )
    cartesian = MorClass.of(
        cat,
        [
            f
            for f in cat.morphisms()
            if naturality_square_is_pullback(cat, rd, f)
        ],
    )
    return inverted, cartesian


@dataclass(frozen=True)
class FirmReflectionReport:
    """The three equivalent descriptions of the fixed subcategory, plus the
    cancellation supplement for when the left class is exactly the inverted
    class."""

    hypotheses_ok: bool
    hypothesis_notes: tuple[str, ...]
    i_fixed_subcategory: Check
    ii_firmness: Check
    iii_left_inverted: Check
    left_equals_inverted: bool
    cancellation_4: Check

    @property
    def conditions_agree(self) -> bool:
        return (
            len({self.i_fixed_subcategory.ok, self.ii_firmness.ok, self.iii_left_inverted.ok})
            == 1
        )

    @property
    def supplement_holds(self) -> bool:
        return self.left_equals_inverted == self.cancellation_4.ok

    def doc(self, cat: FinCat) -> dict:
        return {
            "hypotheses_ok": self.hypotheses_ok,
            "hypothesis_notes": list(self.hypothesis_notes),
            "i": self.i_fixed_subcategory.doc(cat),
            "ii": self.ii_firmness.doc(cat),
            "iii": self.iii_left_inverted.doc(cat),
            "conditions_agree": self.conditions_agree,
            "left_equals_inverted": self.left_equals_inverted,
            "cancellation_4": self.cancellation_4.doc(cat),
            "supplement_holds": self.supplement_holds,
        }


def verify_firm_reflection(
    cat: FinCat, left: MorClass, right: MorClass, rd: ReflectionData
) -> FirmReflectionReport:
    notes = []
    fs_rep = check_fs(cat, left, right)
    if not fs_rep.fs:
        notes.append("the class pair is not a factorization system")
    bad_units = [a for a in cat.objects() if rd.unit[a] not in left.members]
    if bad_units:
        notes.append("some unit component lies outside the left class")

    fixed = fixed_subcategories(cat, left, right)
    if fixed.over_terminal is None:
        i = Check(False, note=fixed.over_terminal_reason)
    elif fixed.over_terminal == rd.objects:
        i = Check(True)
    else:
        diff = sorted(fixed.over_terminal ^ rd.objects)
        i = Check(False, {"object": cat.obj_label(diff[0])})

    ii = Check(True)
    for e in sorted(left.members):
        b = cat.cod[e]
        if b in rd.objects and not _is_universal_into(
            cat, rd.objects, cat.dom[e], b, e
        ):
            ii = Check(False, {"e": e})
            break

    isos = iso_set(cat)
    iii = Check(True)
    for e in sorted(left.members):
        if rd.rmor[e] not in isos:
            iii = Check(False, {"e": e, "image": rd.rmor[e]})
            break

    inverted = frozenset(f for f in cat.morphisms() if rd.rmor[f] in isos)
    return FirmReflectionReport(
        hypotheses_ok=not notes,
        hypothesis_notes=tuple(notes),
        i_fixed_subcategory=i,
        ii_firmness=ii,
        iii_left_inverted=iii,
        left_equals_inverted=left.members == inverted,
        cancellation_4=check_cancellation(cat, left, "4"),
    )


@dataclass(frozen=True)
class SimplicityReport:
    simple: bool
    cartesian_vs_right: Check
    induced_criterion: Check
    criterion_missing_pullbacks: tuple[int, ...]
    induced_fs_ok: bool | None
    fixed_matches: bool | None

    @property
    def criterion_complete(self) -> bool:
        return not self.criterion_missing_pullbacks

    def doc(self, cat: FinCat) -> dict:
        return {
            "simple": self.simple,
            "cartesian_vs_right": self.cartesian_vs_right.doc(cat),
            "induced_criterion": self.induced_criterion.doc(cat),
            "criterion_missing_pullbacks": [
                cat.mor_label(f) for f in self.criterion_missing_pullbacks
            ],
            "induced_fs_ok": self.induced_fs_ok,
            "fixed_subcategory_matches": self.fixed_matches,
        }


def check_simple(
    cat: FinCat, left: MorClass, right: MorClass, rd: ReflectionData
) -> SimplicityReport:
    """Simplicity of a reflective factorization system.

    The verdict is the definitional one: the right class equals the
    cartesian class.  The induced-morphism criterion (factor through the
    pullback of the reflected morphism along the unit, and ask the first
    stage to be inverted) is evaluated wherever that pullback exists and
    must agree with the verdict when nothing is missing.
    """
    comp = cat.composition
    isos = iso_set(cat)
    inverted, cartesian = inverted_and_cartesian(cat, rd)
    if cartesian.members == right.members:
        cart_check = Check(True)
    else:
        diff = sorted(cartesian.members ^ right.members)
        cart_check = Check(False, {"morphism": diff[0]})

    missing: list[int] = []
    criterion = Check(True)
    for f in cat.morphisms():
        a, b = cat.dom[f], cat.cod[f]
        pb = pullback(cat, rd.rmor[f], rd.unit[b])
        if pb is None:
            missing.append(f)
            continue
        meds = mediating_to_limit(cat, pb, a, (rd.unit[a], f))
        assert len(meds) == 1, "pullback property must give one mediator"
        if criterion.ok and rd.rmor[meds[0]] not in isos:
            criterion = Check(False, {"f": f, "induced": meds[0]})

    simple = cart_check.ok
    induced_fs_ok = None
    fixed_matches = None
    if simple:
        induced_fs_ok = check_fs(cat, inverted, cartesian).fs
        fixed = fixed_subcategories(cat, inverted, cartesian)
        fixed_matches = fixed.over_terminal == rd.objects
    return SimplicityReport(
        simple=simple,
        cartesian_vs_right=cart_check,
        induced_criterion=criterion,
        criterion_missing_pullbacks=tuple(missing),
        induced_fs_ok=induced_fs_ok,
        fixed_matches=fixed_matches,
    )


@dataclass(frozen=True)
class SemiLeftExactReport:
    i_left_stable_along_right: Check
    i_missing: int
    ii_reflector_preserves: Check
    ii_missing: int
    iii_unit_pullbacks_reflect: Check
    iii_missing: int
    implies_simple_ok: bool | None

    @property
    def semi_left_exact(self) -> bool:
        return (
            self.i_left_stable_along_right.ok
            and self.ii_reflector_preserves.ok
            and self.iii_unit_pullbacks_reflect.ok
        )

    @property
    def fragment_complete(self) -> bool:
        return self.i_missing == 0 and self.ii_missing == 0 and self.iii_missing == 0

    @property
    def conditions_agree(self) -> bool:
        return (
            len(
                {
                    self.i_left_stable_along_right.ok,
                    self.ii_reflector_preserves.ok,
                    self.iii_unit_pullbacks_reflect.ok,
                }
            )
            == 1
        )

    def doc(self, cat: FinCat) -> dict:
        return {
            "semi_left_exact": self.semi_left_exact,
            "i": self.i_left_stable_along_right.doc(cat),
            "i_missing_pullbacks": self.i_missing,
            "ii": self.ii_reflector_preserves.doc(cat),
            "ii_missing_pullbacks": self.ii_missing,
            "iii": self.iii_unit_pullbacks_reflect.doc(cat),
            "iii_missing_pullbacks": self.iii_missing,
            "conditions_agree": self.conditions_agree,
            "fragment_complete": self.fragment_complete,
            "implies_simple_ok": self.implies_simple_ok,
        }


def check_semi_left_exact(
    cat: FinCat, left: MorClass, right: MorClass, rd: ReflectionData
) -> SemiLeftExactReport:
    """The three equivalent semi-left-exactness conditions, fragment-scoped."""
    comp = cat.composition

    i = Check(True)
    i_missing = 0
    for e in sorted(left.members):
        for m in sorted(right.members):
            if cat.cod[e] != cat.cod[m]:
                continue
            pb = pullback(cat, e, m)
            if pb is None:
                i_missing += 1
                continue
            if i.ok and pb.legs[1] not in left.members:
                i = Check(False, {"e": e, "m": m, "pullback": pb.legs[1]})

    ii = Check(True)
    ii_missing = 0
    for m in sorted(right.members):
        for g in cat.to_object(cat.cod[m]):
            pb = pullback(cat, m, g)
            if pb is None:
                ii_missing += 1
                continue
            image_ok = is_limit(
                cat,
                "pullback",
                (rd.rmor[m], rd.rmor[g]),
                rd.robj[pb.apex],
                (rd.rmor[pb.legs[0]], rd.rmor[pb.legs[1]]),
            )
            if ii.ok and not image_ok:
                ii = Check(False, {"m": m, "g": g})

    iii = Check(True)
    iii_missing = 0
    for a in cat.objects():
        for b in sorted(rd.objects):
            for g in cat.hom(b, rd.robj[a]):
                pb = pullback(cat, rd.unit[a], g)
                if pb is None:
                    iii_missing += 1
                    continue
                proj = pb.legs[1]
                if iii.ok and not _is_universal_into(
                    cat, rd.objects, pb.apex, b, proj
                ):
                    iii = Check(False, {"object": a, "g": g, "projection": proj})

    report = SemiLeftExactReport(
        i_left_stable_along_right=i,
        i_missing=i_missing,
        ii_reflector_preserves=ii,
        ii_missing=ii_missing,
        iii_unit_pullbacks_reflect=iii,
        iii_missing=iii_missing,
        implies_simple_ok=None,
    )
    if report.semi_left_exact:
        simple = check_simple(cat, left, right, rd)
        report = SemiLeftExactReport(
            i_left_stable_along_right=i,
            i_missing=i_missing,
            ii_reflector_preserves=ii,
            ii_missing=ii_missing,
            iii_unit_pullbacks_reflect=iii,
            iii_missing=iii_missing,
            implies_simple_ok=simple.simple,
        )
    return report


@dataclass(frozen=True)
class StageFactorization:
    """One-step factorization of f through the unit (or counit) square.

    The two membership criteria that hold even without simplicity are
    recorded as (lhs, rhs) pairs: on the right side, "outer stage iso iff
    f in the left class" and "inner stage in the right class iff f is";
    dually on the left side.
    """

    first: MorId
    second: MorId
    apex: ObjId
    iso_criterion: tuple[bool, bool]
    membership_criterion: tuple[bool, bool]
    stages_in_classes: tuple[bool, bool]

    def doc(self, cat: FinCat) -> dict:
        return {
            "first": cat.mor_label(self.first),
            "second": cat.mor_label(self.second),
            "middle": cat.obj_label(self.apex),
            "iso_criterion": list(self.iso_criterion),
            "membership_criterion": list(self.membership_criterion),
            "stages_in_classes": list(self.stages_in_classes),
        }


def derived_classes_of_reflection(
    cat: FinCat, rd: ReflectionData
) -> tuple[MorClass, MorClass]:
    """(inverted class, its unique-lifting right partner), cached."""
    key = ("rd_classes", rd.unit)
    out = cat._cache.get(key)
    if out is None:
        isos = iso_set(cat)
        left = MorClass.of(cat, [f for f in cat.morphisms() if rd.rmor[f] in isos])
        right = class_operator(cat, left, "right", unique=True)
        out = (left, right)
        cat._cache[key] = out
    return out


def derived_classes_of_coreflection(
    cat: FinCat, cd: CoreflectionData
) -> tuple[MorClass, MorClass]:
    key = ("cd_classes", cd.counit)
    out = cat._cache.get(key)
    if out is None:
        isos = iso_set(cat)
        right = MorClass.of(cat, [f for f in cat.morphisms() if cd.smor[f] in isos])
        left = class_operator(cat, right, "left", unique=True)
        out = (left, right)
        cat._cache[key] = out
    return out


def simple_factorization(
    cat: FinCat,
    data,
    f: MorId,
    side: str = "right",
) -> StageFactorization:
    """Factor f through the unit pullback (side right, reflection data) or
    the counit pushout (side left, coreflection data)."""
    isos = iso_set(cat)
    if side == "right":
        rd: ReflectionData = data
        a, b = cat.dom[f], cat.cod[f]
        pb = pullback(cat, rd.rmor[f], rd.unit[b])
        if pb is None:
            raise UnsupportedStructureError(
                f"no pullback for the unit square of {cat.describe(f)}"
            )
        meds = mediating_to_limit(cat, pb, a, (rd.unit[a], f))
        assert len(meds) == 1
        first, second, apex = meds[0], pb.legs[1], pb.apex
        left, right = derived_classes_of_reflection(cat, rd)
        return StageFactorization(
            first=first,
            second=second,
            apex=apex,
            iso_criterion=(second in isos, f in left.members),
            membership_criterion=(first in right.members, f in right.members),
            stages_in_classes=(first in left.members, second in right.members),
        )
    if side == "left":
        cd: CoreflectionData = data
        a, b = cat.dom[f], cat.cod[f]
        po = pushout(cat, cd.smor[f], cd.counit[a])
        if po is None:
            raise UnsupportedStructureError(
                f"no pushout for the counit square of {cat.describe(f)}"
            )
        meds = mediating_from_colimit(cat, po, b, (cd.counit[b], f))
        assert len(meds) == 1
        first, second, apex = po.legs[1], meds[0], po.apex
        left, right = derived_classes_of_coreflection(cat, cd)
        return StageFactorization(
            first=first,
            second=second,
            apex=apex,
            iso_criterion=(first in isos, f in right.members),
            membership_criterion=(second in left.members, f in left.members),
            stages_in_classes=(first in left.members, second in right.members),
        )
    raise PreconditionError("side must be 'right' or 'left'")
