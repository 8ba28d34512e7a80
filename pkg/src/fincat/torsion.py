"""Torsion theories as bireflective factorization systems: annihilator
identities, the nine-cell kernel/cokernel diagram, normality, standard
torsion pairs, and the correspondence with simple reflective systems.

The nine normality conditions are always evaluated independently and their
mutual equivalence is enforced as a hard audit: a genuine disagreement
would be a reportable discovery, so it raises rather than returning a
verdict.
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
    objects_isomorphic,
    opposite,
)
from .lifting import (
    Check,
    check_cancellation,
    check_fs,
    class_operator,
    factor_through,
    pullback_stable,
    three_for_two,
)
from .reflection import (
    CoreflectionData,
    ReflectionData,
    build_coreflection,
    build_reflection,
    check_semi_left_exact,
    check_simple,
    validate_reflection,
)
from .structures import (
    _is_coequalizer_of,
    _is_equalizer_of,
    check_exactness_properties,
    classify_morphisms,
    cokernel,
    has_normal_epi_zero_kernel_factorizations,
    has_zero_cokernel_normal_mono_factorizations,
    is_colimit,
    is_limit,
    is_pointed,
    kernel,
    object_is_zero,
    pushout,
    zero_morphism,
    zero_object,
)


@dataclass(frozen=True)
class TorsionTheoryData:
    cat: FinCat
    left: MorClass
    right: MorClass
    torsion: frozenset[int]
    torsion_free: frozenset[int]
    reflection: ReflectionData
    coreflection: CoreflectionData


@dataclass(frozen=True)
class TorsionReport:
    fs_ok: bool
    left_cancellation: Check
    right_cancellation: Check
    left_three_for_two: Check
    right_three_for_two: Check
    pointed: bool
    data: TorsionTheoryData | None
    note: str = ""

    @property
    def is_torsion_theory(self) -> bool:
        return self.fs_ok and self.left_cancellation.ok and self.right_cancellation.ok

    def doc(self, cat: FinCat) -> dict:
        out = {
            "torsion_theory": self.is_torsion_theory,
            "fs": self.fs_ok,
            "left_cancellation_4": self.left_cancellation.doc(cat),
            "right_cancellation_4op": self.right_cancellation.doc(cat),
            "left_three_for_two": self.left_three_for_two.doc(cat),
            "right_three_for_two": self.right_three_for_two.doc(cat),
            "pointed": self.pointed,
        }
        if self.data is not None:
            out["torsion_objects"] = sorted(
                cat.obj_label(o) for o in self.data.torsion
            )
            out["torsion_free_objects"] = sorted(
                cat.obj_label(o) for o in self.data.torsion_free
            )
        if self.note:
            out["note"] = self.note
        return out


def check_torsion_theory(cat: FinCat, left: MorClass, right: MorClass) -> TorsionReport:
    """A torsion theory is a factorization system whose two classes both
    satisfy the reflective and coreflective cancellations; with a zero
    object the torsion and torsion-free parts are carved out by factoring
    the unique morphisms out of and into it."""
    fs_rep = check_fs(cat, left, right)
    c4 = check_cancellation(cat, left, "4")
    c4op = check_cancellation(cat, right, "4op")
    t32_left = three_for_two(cat, left)
    t32_right = three_for_two(cat, right)
    verdict = fs_rep.fs and c4.ok and c4op.ok
    if verdict and (t32_left.ok != c4.ok or t32_right.ok != c4op.ok):
        raise AuditError("cancellation and two-out-of-three disagree on an fs")
    pointed = is_pointed(cat)
    data = None
    note = ""
    if verdict and pointed:
        z = zero_object(cat)
        sobj, counit, robj, unit = [], [], [], []
        for c in cat.objects():
            into = factor_through(cat, left, right, cat.hom(z, c)[0])
            outof = factor_through(cat, left, right, cat.hom(c, z)[0])
            assert into and outof, "a verified fs must factor everything"
            sobj.append(cat.dom[into[0][1]])
            counit.append(into[0][1])
            robj.append(cat.cod[outof[0][0]])
            unit.append(outof[0][0])
        torsion = frozenset(
            a for a in cat.objects() if cat.hom(z, a)[0] in left.members
        )
        torsion_free = frozenset(
            b for b in cat.objects() if cat.hom(b, z)[0] in right.members
        )
        comp = cat.composition
        rmor, smor = [], []
        for f in cat.morphisms():
            a, b = cat.dom[f], cat.cod[f]
            cands = [
                t
                for t in cat.hom(robj[a], robj[b])
                if comp[(t, unit[a])] == comp[(unit[b], f)]
            ]
            if len(cands) != 1:
                raise AuditError("torsion-free reflector is not determined")
            rmor.append(cands[0])
            cands = [
                t
                for t in cat.hom(sobj[a], sobj[b])
                if comp[(counit[b], t)] == comp[(f, counit[a])]
            ]
            if len(cands) != 1:
                raise AuditError("torsion coreflector is not determined")
            smor.append(cands[0])
        rd = ReflectionData(cat, torsion_free, tuple(robj), tuple(rmor), tuple(unit))
        cd = CoreflectionData(cat, torsion, tuple(sobj), tuple(smor), tuple(counit))
        bad = validate_reflection(rd)
        if bad:
            raise AuditError("materialized reflection fails audit: " + bad[0])
        data = TorsionTheoryData(cat, left, right, torsion, torsion_free, rd, cd)
    elif verdict:
        note = "no zero object, torsion parts not extracted"
    return TorsionReport(
        fs_ok=fs_rep.fs,
        left_cancellation=c4,
        right_cancellation=c4op,
        left_three_for_two=t32_left,
        right_three_for_two=t32_right,
        pointed=pointed,
        data=data,
        note=note,
    )


@dataclass(frozen=True)
class AnnihilatorsReport:
    """The eight descriptions of the classes and parts of a torsion theory,
    each recomputed from scratch and compared."""

    left_is_inverted: Check
    left_is_orthogonal: Check
    right_is_coinverted: Check
    right_is_orthogonal: Check
    torsion_is_reflected_to_zero: Check
    torsion_is_left_annihilator: Check
    free_is_coreflected_to_zero: Check
    free_is_right_annihilator: Check

    @property
    def all_hold(self) -> bool:
        return all(
            c.ok
            for c in (
                self.left_is_inverted,
                self.left_is_orthogonal,
                self.right_is_coinverted,
                self.right_is_orthogonal,
                self.torsion_is_reflected_to_zero,
                self.torsion_is_left_annihilator,
                self.free_is_coreflected_to_zero,
                self.free_is_right_annihilator,
            )
        )

    def doc(self, cat: FinCat) -> dict:
        return {
            "all_hold": self.all_hold,
            "left_is_inverted": self.left_is_inverted.doc(cat),
            "left_is_orthogonal": self.left_is_orthogonal.doc(cat),
            "right_is_coinverted": self.right_is_coinverted.doc(cat),
            "right_is_orthogonal": self.right_is_orthogonal.doc(cat),
            "torsion_is_reflected_to_zero": self.torsion_is_reflected_to_zero.doc(cat),
            "torsion_is_left_annihilator": self.torsion_is_left_annihilator.doc(cat),
            "free_is_coreflected_to_zero": self.free_is_coreflected_to_zero.doc(cat),
            "free_is_right_annihilator": self.free_is_right_annihilator.doc(cat),
        }


def _set_check(declared: frozenset, computed: frozenset, kind: str) -> Check:
    if declared == computed:
        return Check(True)
    diff = sorted(declared ^ computed)
    return Check(False, {kind: diff[0]})


def verify_annihilators(tt: TorsionTheoryData) -> AnnihilatorsReport:
    cat = tt.cat
    isos = iso_set(cat)
    z = zero_object(cat)
    rd, cd = tt.reflection, tt.coreflection

    inverted = frozenset(f for f in cat.morphisms() if rd.rmor[f] in isos)
    coinverted = frozenset(f for f in cat.morphisms() if cd.smor[f] in isos)
    orth_left = class_operator(cat, tt.right, "left", unique=True).members
    orth_right = class_operator(cat, tt.left, "right", unique=True).members
    r_zero = frozenset(a for a in cat.objects() if object_is_zero(cat, rd.robj[a]))
    s_zero = frozenset(b for b in cat.objects() if object_is_zero(cat, cd.sobj[b]))

    def annihilates(a: ObjId, b: ObjId) -> bool:
        zm = zero_morphism(cat, a, b)
        return all(m == zm for m in cat.hom(a, b))

    left_ann = frozenset(
        a
        for a in cat.objects()
        if all(annihilates(a, b) for b in sorted(tt.torsion_free))
    )
    right_ann = frozenset(
        b
        for b in cat.objects()
        if all(annihilates(a, b) for a in sorted(tt.torsion))
    )
    return AnnihilatorsReport(
        left_is_inverted=_set_check(tt.left.members, inverted, "morphism"),
        left_is_orthogonal=_set_check(tt.left.members, orth_left, "morphism"),
        right_is_coinverted=_set_check(tt.right.members, coinverted, "morphism"),
        right_is_orthogonal=_set_check(tt.right.members, orth_right, "morphism"),
        torsion_is_reflected_to_zero=_set_check(tt.torsion, r_zero, "object"),
        torsion_is_left_annihilator=_set_check(tt.torsion, left_ann, "object"),
        free_is_coreflected_to_zero=_set_check(tt.torsion_free, s_zero, "object"),
        free_is_right_annihilator=_set_check(tt.torsion_free, right_ann, "object"),
    )


@dataclass(frozen=True)
class ClosureReport:
    """Closure of an annihilator pair under kernels, quotients, and
    extensions."""

    hypotheses_ok: bool
    zero_kernel_into_free: Check
    zero_cokernel_out_of_torsion: Check
    left_extensions_free: Check
    normal_quotient_extensions_torsion: Check
    extension_closed_free: Check | None
    has_coker_ker_factorizations: bool

    def doc(self, cat: FinCat) -> dict:
        return {
            "hypotheses_ok": self.hypotheses_ok,
            "p1_zero_kernel_into_free": self.zero_kernel_into_free.doc(cat),
            "p2_zero_cokernel_out_of_torsion": self.zero_cokernel_out_of_torsion.doc(cat),
            "p3_left_extensions_free": self.left_extensions_free.doc(cat),
            "p4_extensions_torsion": self.normal_quotient_extensions_torsion.doc(cat),
            "extension_closed_free": self.extension_closed_free.doc(cat)
            if self.extension_closed_free
            else None,
            "has_coker_ker_factorizations": self.has_coker_ker_factorizations,
        }


def verify_torsion_closure(cat: FinCat, torsion, torsion_free) -> ClosureReport:
    """The four closure properties of a mutually annihilating pair."""
    torsion = frozenset(torsion)
    torsion_free = frozenset(torsion_free)
    z = zero_object(cat)
    if z is None:
        raise UnsupportedStructureError("closure properties need a zero object")

    def annihilates(a, b):
        zm = zero_morphism(cat, a, b)
        return all(m == zm for m in cat.hom(a, b))

    left_ann = frozenset(
        a for a in cat.objects() if all(annihilates(a, b) for b in torsion_free)
    )
    right_ann = frozenset(
        b for b in cat.objects() if all(annihilates(a, b) for a in torsion)
    )
    hypotheses_ok = torsion == left_ann and torsion_free == right_ann

    profiles = classify_morphisms(cat)
    p1 = Check(True)
    for k in cat.morphisms():
        if profiles[k].zero_kernel is True and cat.cod[k] in torsion_free:
            if cat.dom[k] not in torsion_free:
                p1 = Check(False, {"k": k})
                break
    p2 = Check(True)
    for p in cat.morphisms():
        if profiles[p].zero_cokernel is True and cat.dom[p] in torsion:
            if cat.cod[p] not in torsion:
                p2 = Check(False, {"p": p})
                break
    p3 = Check(True)
    p4 = Check(True)
    ext = Check(True)
    for p in cat.morphisms():
        ker = kernel(cat, p)
        if ker is None:
            continue
        a, b, c = ker.apex, cat.dom[p], cat.cod[p]
        if p3.ok and a in torsion_free and c in torsion_free and b not in torsion_free:
            p3 = Check(False, {"p": p, "kernel": ker.legs[0]})
        zm = zero_morphism(cat, a, b)
        if _is_coequalizer_of(cat, p, ker.legs[0], zm):
            if ext.ok and a in torsion_free and c in torsion_free and b not in torsion_free:
                ext = Check(False, {"p": p, "kernel": ker.legs[0]})
    for k in cat.morphisms():
        cok = cokernel(cat, k)
        if cok is None:
            continue
        a, b, c = cat.dom[k], cat.cod[k], cok.apex
        if p4.ok and a in torsion and c in torsion and b not in torsion:
            p4 = Check(False, {"k": k, "cokernel": cok.legs[0]})
    has_fact = has_normal_epi_zero_kernel_factorizations(cat)
    return ClosureReport(
        hypotheses_ok=hypotheses_ok,
        zero_kernel_into_free=p1,
        zero_cokernel_out_of_torsion=p2,
        left_extensions_free=p3,
        normal_quotient_extensions_torsion=p4,
        extension_closed_free=ext if has_fact else ext,
        has_coker_ker_factorizations=has_fact,
    )


@dataclass(frozen=True)
class NineCellDiagram:
    """The kernel/cokernel grid of one object under a torsion theory."""

    obj: ObjId
    torsion_part: ObjId
    kernel_part: ObjId
    quotient_part: ObjId
    free_part: ObjId
    counit: MorId
    unit: MorId
    kernel_mor: MorId
    quotient_mor: MorId
    alpha: MorId
    beta: MorId
    unit_normal_epi: bool
    counit_normal_mono: bool
    squares: dict = field(compare=False)
    alpha_matches_counit: bool = False
    beta_matches_unit: bool = False

    def doc(self, cat: FinCat) -> dict:
        return {
            "object": cat.obj_label(self.obj),
            "torsion_part": cat.obj_label(self.torsion_part),
            "kernel_part": cat.obj_label(self.kernel_part),
            "quotient_part": cat.obj_label(self.quotient_part),
            "free_part": cat.obj_label(self.free_part),
            "counit": cat.mor_label(self.counit),
            "unit": cat.mor_label(self.unit),
            "kernel": cat.mor_label(self.kernel_mor),
            "quotient": cat.mor_label(self.quotient_mor),
            "alpha": cat.mor_label(self.alpha),
            "beta": cat.mor_label(self.beta),
            "unit_normal_epi": self.unit_normal_epi,
            "counit_normal_mono": self.counit_normal_mono,
            "squares": dict(self.squares),
            "alpha_matches_counit": self.alpha_matches_counit,
            "beta_matches_unit": self.beta_matches_unit,
        }


def build_nine_cell(tt: TorsionTheoryData, c: ObjId) -> NineCellDiagram:
    """Assemble the grid at one object and verify its square verdicts.

    Needs the kernel of the unit and the cokernel of the counit; missing
    ones raise.  The expected pullback/pushout pattern is computed, not
    assumed, so a hypothesis failure shows up as a falsified square.
    """
    cat = tt.cat
    comp = cat.composition
    z = zero_object(cat)
    rd, cd = tt.reflection, tt.coreflection
    sigma, rho = cd.counit[c], rd.unit[c]
    sc, rc = cd.sobj[c], rd.robj[c]
    ker = kernel(cat, rho)
    cok = cokernel(cat, sigma)
    if ker is None or cok is None:
        raise UnsupportedStructureError(
            f"missing kernel or cokernel at {cat.obj_label(c)}"
        )
    kc, kappa = ker.apex, ker.legs[0]
    qc, pi = cok.apex, cok.legs[0]

    alphas = [x for x in cat.hom(sc, kc) if comp[(kappa, x)] == sigma]
    if len(alphas) != 1:
        raise AuditError("kernel property must induce a unique comparison")
    alpha = alphas[0]
    betas = [x for x in cat.hom(qc, rc) if comp[(x, pi)] == rho]
    if len(betas) != 1:
        raise AuditError("cokernel property must induce a unique comparison")
    beta = betas[0]

    squares = {
        "square1_pullback": is_limit(
            cat, "pullback", (kappa, sigma), sc, (alpha, cat.identity[sc])
        ),
        "square2_pullback": is_limit(
            cat, "pullback", (pi, cat.hom(z, qc)[0]), sc, (sigma, cat.hom(sc, z)[0])
        ),
        "square2_pushout": is_colimit(
            cat, "pushout", (sigma, cat.hom(sc, z)[0]), qc, (pi, cat.hom(z, qc)[0])
        ),
        "square3_pullback": is_limit(
            cat, "pullback", (rho, cat.hom(z, rc)[0]), kc, (kappa, cat.hom(kc, z)[0])
        ),
        "square3_pushout": is_colimit(
            cat, "pushout", (kappa, cat.hom(kc, z)[0]), rc, (rho, cat.hom(z, rc)[0])
        ),
        "square4_pushout": is_colimit(
            cat, "pushout", (pi, rho), rc, (beta, cat.identity[rc])
        ),
    }

    isos = iso_set(cat)
    alpha_matches = any(
        comp[(cd.counit[kc], j)] == alpha
        for j in cat.hom(sc, cd.sobj[kc])
        if j in isos
    )
    beta_matches = any(
        comp[(j, rd.unit[qc])] == beta
        for j in cat.hom(rd.robj[qc], rc)
        if j in isos
    )

    profiles = classify_morphisms(cat)
    return NineCellDiagram(
        obj=c,
        torsion_part=sc,
        kernel_part=kc,
        quotient_part=qc,
        free_part=rc,
        counit=sigma,
        unit=rho,
        kernel_mor=kappa,
        quotient_mor=pi,
        alpha=alpha,
        beta=beta,
        unit_normal_epi=bool(profiles[rho].normal_epi),
        counit_normal_mono=bool(profiles[sigma].normal_mono),
        squares=squares,
        alpha_matches_counit=alpha_matches,
        beta_matches_unit=beta_matches,
    )


@dataclass(frozen=True)
class NormalityReport:
    vectors: dict[int, tuple[bool, ...]]
    equivalences: dict[int, dict]
    normal: bool

    def doc(self, cat: FinCat) -> dict:
        return {
            "normal": self.normal,
            "conditions": {
                cat.obj_label(c): list(v) for c, v in sorted(self.vectors.items())
            },
            "membership_equivalences": {
                cat.obj_label(c): e for c, e in sorted(self.equivalences.items())
            },
        }


NORMALITY_CONDITION_NAMES = (
    "i_quotient_after_kernel_zero",
    "ii_unit_kernel_of_quotient_zero",
    "iii_quotient_of_quotient_iso",
    "iv_quotient_part_free",
    "v_counit_cokernel_on_kernel_zero",
    "vi_kernel_of_kernel_iso",
    "vii_kernel_part_torsion",
    "viii_zero_into_quotient_right",
    "ix_kernel_to_zero_left",
)


def check_normal(tt: TorsionTheoryData, simple: bool | None = None) -> NormalityReport:
    """Evaluate the nine normality conditions independently on every object.

    The nine answers must agree on each object; a disagreement raises with
    the full condition vector, because it would separate notions the
    equivalence theorem says cannot be separated.  When the theory is known
    simple, normality itself is enforced.
    """
    cat = tt.cat
    comp = cat.composition
    z = zero_object(cat)
    rd, cd = tt.reflection, tt.coreflection
    isos = iso_set(cat)
    vectors = {}
    equivalences = {}
    for c in cat.objects():
        cell = build_nine_cell(tt, c)
        kc, qc = cell.kernel_part, cell.quotient_part

        ker_q = kernel(cat, rd.unit[qc])
        cok_k = cokernel(cat, cd.counit[kc])
        ker_k = kernel(cat, rd.unit[kc])
        cok_q = cokernel(cat, cd.counit[qc])
        if ker_q is None or cok_k is None or ker_k is None or cok_q is None:
            raise UnsupportedStructureError(
                f"missing derived kernel or cokernel at {cat.obj_label(c)}"
            )
        vec = (
            comp[(cell.quotient_mor, cell.kernel_mor)]
            == zero_morphism(cat, kc, qc),
            object_is_zero(cat, ker_q.apex),
            cok_q.legs[0] in isos,
            qc in tt.torsion_free,
            object_is_zero(cat, cok_k.apex),
            ker_k.legs[0] in isos,
            kc in tt.torsion,
            cat.hom(z, qc)[0] in tt.right.members,
            cat.hom(kc, z)[0] in tt.left.members,
        )
        if len(set(vec)) != 1:
            raise AuditError(
                "the nine normality conditions disagree at object "
                f"{cat.obj_label(c)}: "
                + ", ".join(
                    f"{name}={val}" for name, val in zip(NORMALITY_CONDITION_NAMES, vec)
                )
            )
        vectors[c] = vec

        mem = {
            "object_free": c in tt.torsion_free,
            "kernel_part_free": kc in tt.torsion_free,
            "kernel_part_zero": object_is_zero(cat, kc),
            "object_torsion": c in tt.torsion,
            "quotient_part_torsion": qc in tt.torsion,
            "quotient_part_zero": object_is_zero(cat, qc),
        }
        if not (
            mem["object_free"] == mem["kernel_part_free"] == mem["kernel_part_zero"]
        ) or not (
            mem["object_torsion"]
            == mem["quotient_part_torsion"]
            == mem["quotient_part_zero"]
        ):
            raise AuditError(
                f"membership equivalences fail at {cat.obj_label(c)}: {mem}"
            )
        equivalences[c] = mem

    normal = all(v[0] for v in vectors.values())
    if simple and not normal:
        raise AuditError("a simple torsion theory must be normal")
    return NormalityReport(vectors=vectors, equivalences=equivalences, normal=normal)


@dataclass(frozen=True)
class StandardReport:
    zero_homs: Check
    sequences: Check
    hereditary: Check
    cohereditary: Check

    @property
    def standard(self) -> bool:
        return self.zero_homs.ok and self.sequences.ok

    def doc(self, cat: FinCat) -> dict:
        return {
            "standard": self.standard,
            "zero_homs": self.zero_homs.doc(cat),
            "short_exact_sequences": self.sequences.doc(cat),
            "hereditary": self.hereditary.doc(cat),
            "cohereditary": self.cohereditary.doc(cat),
        }


def check_standard(cat: FinCat, torsion, torsion_free) -> StandardReport:
    """The classical two conditions on a pair of full subcategories, plus
    the hereditary and cohereditary flags."""
    torsion = frozenset(torsion)
    torsion_free = frozenset(torsion_free)
    if not is_pointed(cat):
        raise UnsupportedStructureError("standard torsion pairs need a zero object")
    zero_homs = Check(True)
    for a in sorted(torsion):
        for b in sorted(torsion_free):
            zm = zero_morphism(cat, a, b)
            extra = [m for m in cat.hom(a, b) if m != zm]
            if extra:
                zero_homs = Check(False, {"morphism": extra[0]})
                break
        if not zero_homs.ok:
            break

    sequences = Check(True)
    for c in cat.objects():
        found = False
        for b in sorted(torsion_free):
            for q in cat.hom(c, b):
                ker = kernel(cat, q)
                if ker is None or ker.apex not in torsion:
                    continue
                zm = zero_morphism(cat, ker.apex, c)
                if _is_coequalizer_of(cat, q, ker.legs[0], zm):
                    found = True
                    break
            if found:
                break
        if not found:
            sequences = Check(False, {"object": cat.obj_label(c)})
            break

    profiles = classify_morphisms(cat)
    hereditary = Check(True)
    for k in cat.morphisms():
        if (
            profiles[k].normal_mono is True
            and cat.cod[k] in torsion
            and cat.dom[k] not in torsion
        ):
            hereditary = Check(False, {"k": k})
            break
    cohereditary = Check(True)
    for p in cat.morphisms():
        if (
            profiles[p].normal_epi is True
            and cat.dom[p] in torsion_free
            and cat.cod[p] not in torsion_free
        ):
            cohereditary = Check(False, {"p": p})
            break
    return StandardReport(zero_homs, sequences, hereditary, cohereditary)


@dataclass(frozen=True)
class StandardCorrespondenceReport:
    standard: StandardReport
    fs_ok: bool
    reflective: Check
    simple: bool
    fixed_free_matches: bool
    fixed_torsion_matches: bool
    units_normal_epi: Check
    counits_normal_mono: Check
    homological: bool
    op_homological: bool
    torsion_theory_ok: bool | None
    normal: bool | None
    round_trip_exact: bool | None
    jt2_stability: Check
    jt2_i_semilocalization: bool
    jt2_ii_quasifibration: Check
    jt2_iii_extension_pushout: Check
    jt2_iii_missing: int
    jt2_agree: bool | None

    def doc(self, cat: FinCat) -> dict:
        return {
            "standard": self.standard.doc(cat),
            "fs": self.fs_ok,
            "reflective": self.reflective.doc(cat),
            "simple": self.simple,
            "fixed_free_matches": self.fixed_free_matches,
            "fixed_torsion_matches": self.fixed_torsion_matches,
            "units_normal_epi": self.units_normal_epi.doc(cat),
            "counits_normal_mono": self.counits_normal_mono.doc(cat),
            "homological": self.homological,
            "op_homological": self.op_homological,
            "torsion_theory": self.torsion_theory_ok,
            "normal": self.normal,
            "round_trip_exact": self.round_trip_exact,
            "jt2_stability_hypothesis": self.jt2_stability.doc(cat),
            "jt2_i_semilocalization": self.jt2_i_semilocalization,
            "jt2_ii_quasifibration": self.jt2_ii_quasifibration.doc(cat),
            "jt2_iii_extension_pushout": self.jt2_iii_extension_pushout.doc(cat),
            "jt2_iii_missing_pushouts": self.jt2_iii_missing,
            "jt2_agree": self.jt2_agree,
        }


def verify_standard_correspondence(
    cat: FinCat, torsion, torsion_free
) -> StandardCorrespondenceReport:
    """From a standard pair to a simple reflective factorization system and,
    in a homological setting, back again through normality."""
    torsion = frozenset(torsion)
    torsion_free = frozenset(torsion_free)
    standard = check_standard(cat, torsion, torsion_free)
    if not standard.standard:
        raise PreconditionError("the pair is not a standard torsion theory")
    rd = build_reflection(cat, torsion_free)
    if rd is None:
        raise PreconditionError("the torsion-free part is not reflective")
    isos = iso_set(cat)
    left = MorClass.of(cat, [f for f in cat.morphisms() if rd.rmor[f] in isos])
    right = class_operator(cat, left, "right", unique=True)
    fs_ok = check_fs(cat, left, right).fs
    reflective = check_cancellation(cat, left, "4")
    simple = check_simple(cat, left, right, rd).simple

    from .reflection import fixed_subcategories

    fixed = fixed_subcategories(cat, left, right)
    fixed_free = fixed.over_terminal == torsion_free
    fixed_torsion = fixed.under_initial == torsion

    profiles = classify_morphisms(cat)
    units_ne = Check(True)
    for a in cat.objects():
        if profiles[rd.unit[a]].normal_epi is not True:
            units_ne = Check(False, {"unit": rd.unit[a]})
            break
    cd = build_coreflection(cat, torsion)
    counits_nm = Check(False, note="torsion part is not coreflective")
    if cd is not None:
        counits_nm = Check(True)
        for b in cat.objects():
            if profiles[cd.counit[b]].normal_mono is not True:
                counits_nm = Check(False, {"counit": cd.counit[b]})
                break

    exact = check_exactness_properties(cat)
    op = opposite(cat)
    exact_op = check_exactness_properties(op)

    torsion_ok = None
    normal = None
    round_trip = None
    if exact.homological:
        trep = check_torsion_theory(cat, left, right)
        torsion_ok = trep.is_torsion_theory
        if torsion_ok and trep.data is not None:
            normal = check_normal(trep.data, simple=simple).normal
            if exact_op.homological:
                recovered = check_standard(
                    cat, trep.data.torsion, trep.data.torsion_free
                )
                round_trip = (
                    recovered.standard
                    and trep.data.torsion == torsion
                    and trep.data.torsion_free == torsion_free
                )

    norm_epis = MorClass.of(
        cat, [f for f in cat.morphisms() if profiles[f].normal_epi is True]
    )
    jt2_stability = pullback_stable(cat, norm_epis)
    sle = check_semi_left_exact(cat, left, right, rd)
    jt2_i = sle.semi_left_exact

    from .prefibration import check_prefibration, reflector_as_prefibration

    try:
        rp = reflector_as_prefibration(cat, left, right)
        fresh = check_prefibration(rp.functor)
        if fresh.ok:
            base = rp.embedding.sub
            bisos = iso_set(base)
            bad_eps = [
                key
                for key, (w, v, eps) in sorted(fresh.witness.lifts.items())
                if eps not in bisos
            ]
            jt2_ii = (
                Check(True)
                if not bad_eps
                else Check(False, note="a counit comparison is not invertible")
            )
        else:
            jt2_ii = Check(False, note="reflector is not a prefibration")
    except (PreconditionError, UnsupportedStructureError) as exc:
        jt2_ii = Check(False, note=str(exc))

    closure = verify_torsion_closure(cat, torsion, torsion_free)
    jt2_iii = Check(True)
    missing = 0
    if closure.extension_closed_free is not None and not closure.extension_closed_free.ok:
        jt2_iii = closure.extension_closed_free
    if jt2_iii.ok:
        for c in cat.objects():
            ker = kernel(cat, rd.unit[c])
            if ker is None:
                missing += 1
                continue
            a = ker.apex
            po = pushout(cat, ker.legs[0], rd.unit[a])
            if po is None:
                missing += 1
                continue
            pushed = po.legs[1]
            if profiles[pushed].normal_mono is not True:
                jt2_iii = Check(False, {"object": cat.obj_label(c), "pushed": pushed})
                break

    jt2_agree = None
    if jt2_stability.ok and missing == 0:
        jt2_agree = jt2_i == jt2_ii.ok == jt2_iii.ok
    return StandardCorrespondenceReport(
        standard=standard,
        fs_ok=fs_ok,
        reflective=reflective,
        simple=simple,
        fixed_free_matches=fixed_free,
        fixed_torsion_matches=fixed_torsion,
        units_normal_epi=units_ne,
        counits_normal_mono=counits_nm,
        homological=exact.homological,
        op_homological=exact_op.homological,
        torsion_theory_ok=torsion_ok,
        normal=normal,
        round_trip_exact=round_trip,
        jt2_stability=jt2_stability,
        jt2_i_semilocalization=jt2_i,
        jt2_ii_quasifibration=jt2_ii,
        jt2_iii_extension_pushout=jt2_iii,
        jt2_iii_missing=missing,
        jt2_agree=jt2_agree,
    )
