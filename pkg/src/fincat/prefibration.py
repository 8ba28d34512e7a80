"""Prefibrations: universal lifts along a functor, cartesian classes, the
induced factorization system, and the round trip with simple reflective
systems."""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    AuditError,
    FinCat,
    Functor,
    MorClass,
    MorId,
    ObjId,
    PreconditionError,
    SubcategoryEmbedding,
    UnsupportedStructureError,
    full_subcategory,
    iso_set,
    validate_functor,
)
from .lifting import Check, check_cancellation, check_fs, three_for_two
from .reflection import (
    ReflectionData,
    build_reflection,
    check_semi_left_exact,
    check_simple,
    fixed_subcategories,
    inverted_and_cartesian,
)
from .structures import is_limit, mediating_to_limit, pullback, terminal_object


@dataclass(frozen=True)
class PrefibrationWitness:
    """Chosen universal lifts for every (object, base morphism) pair.

    ``lifts`` maps (c, g) with g a base morphism into P(c) to the triple
    (lift object, projection into c, base comparison); ``eta`` holds the
    unit component at every morphism of the total category.
    """

    functor: Functor
    lifts: dict[tuple[int, int], tuple[int, int, int]]
    eta: tuple[int, ...]


@dataclass(frozen=True)
class PrefibrationReport:
    ok: bool
    witness: PrefibrationWitness | None
    failure: dict | None

    def doc(self, cat: FinCat, base: FinCat) -> dict:
        out = {"prefibration": self.ok}
        if self.failure is not None:
            out["failure"] = {
                k: (base.mor_label(v) if k == "base_morphism" else cat.obj_label(v) if k == "object" else cat.mor_label(v))
                for k, v in self.failure.items()
            }
        return out


def _universal_lift_ok(fun: Functor, c: ObjId, g: MorId, w: ObjId, v: MorId, eps: MorId) -> bool:
    """Universal property of a candidate lift (w, v, eps) at (c, g)."""
    cat, base = fun.source, fun.target
    comp, bcomp = cat.composition, base.composition
    b0 = base.dom[g]
    if cat.dom[v] != w or cat.cod[v] != c:
        return False
    if base.dom[eps] != fun.obj_map[w] or base.cod[eps] != b0:
        return False
    if bcomp[(g, eps)] != fun.mor_map[v]:
        return False
    for a in cat.objects():
        pa = fun.obj_map[a]
        hu = [u for u in base.hom(pa, b0)]
        if not hu:
            continue
        for f in cat.hom(a, c):
            pf = fun.mor_map[f]
            for u in hu:
                if bcomp[(g, u)] != pf:
                    continue
                count = 0
                for t in cat.hom(a, w):
                    if comp[(v, t)] == f and bcomp[(eps, fun.mor_map[t])] == u:
                        count += 1
                        if count > 1:
                            return False
                if count != 1:
                    return False
    return True


def _eta_components(fun: Functor, lifts) -> tuple[tuple[int, ...] | None, dict | None]:
    """Unit component at each morphism, plus the idempotency audit."""
    cat, base = fun.source, fun.target
    comp, bcomp = cat.composition, base.composition
    bisos = iso_set(base)
    eta = []
    for f in cat.morphisms():
        a, c = cat.dom[f], cat.cod[f]
        pf = fun.mor_map[f]
        w, v, eps = lifts[(c, pf)]
        ident = base.identity[fun.obj_map[a]]
        cands = [
            t
            for t in cat.hom(a, w)
            if comp[(v, t)] == f and bcomp[(eps, fun.mor_map[t])] == ident
        ]
        assert len(cands) == 1, "the universal property must give one unit"
        t = cands[0]
        pt = fun.mor_map[t]
        if pt not in bisos:
            return None, {"morphism": f, "reason": "unit image is not iso"}
        if (
            bcomp[(pt, eps)] != base.identity[base.dom[eps]]
            or bcomp[(eps, pt)] != base.identity[base.cod[eps]]
        ):
            return None, {"morphism": f, "reason": "unit image is not inverse to the comparison"}
        eta.append(t)
    return tuple(eta), None


def check_prefibration(fun: Functor) -> PrefibrationReport:
    """Search universal lifts for every (object, base morphism) pair.

    The chosen lift is canonical (least object, then least projection and
    comparison), so witnesses are reproducible.  The failure names the
    first pair with no universal lift, or the first morphism where the
    induced unit is not invertible in the base.
    """
    if not validate_functor(fun).ok:
        raise PreconditionError("the functor does not validate")
    cat, base = fun.source, fun.target
    lifts: dict[tuple[int, int], tuple[int, int, int]] = {}
    for c in cat.objects():
        pc = fun.obj_map[c]
        for g in base.to_object(pc):
            b0 = base.dom[g]
            found = None
            for w in cat.objects():
                for v in cat.hom(w, c):
                    for eps in base.hom(fun.obj_map[w], b0):
                        if _universal_lift_ok(fun, c, g, w, v, eps):
                            found = (w, v, eps)
                            break
                    if found:
                        break
                if found:
                    break
            if found is None:
                return PrefibrationReport(
                    False, None, {"object": c, "base_morphism": g}
                )
            lifts[(c, g)] = found
    eta, problem = _eta_components(fun, lifts)
    if eta is None:
        return PrefibrationReport(False, None, problem)
    return PrefibrationReport(True, PrefibrationWitness(fun, lifts, eta), None)


def validate_prefibration_witness(witness: PrefibrationWitness) -> list[str]:
    """Re-verify the given witness data directly, ignoring the search."""
    fun = witness.functor
    cat, base = fun.source, fun.target
    bad = []
    for c in cat.objects():
        pc = fun.obj_map[c]
        for g in base.to_object(pc):
            if (c, g) not in witness.lifts:
                bad.append(f"missing lift at object {c}, base morphism {g}")
                continue
            w, v, eps = witness.lifts[(c, g)]
            if not _universal_lift_ok(fun, c, g, w, v, eps):
                bad.append(f"lift at object {c}, base morphism {g} is not universal")
    eta, problem = _eta_components(fun, witness.lifts)
    if eta is None:
        bad.append(f"idempotency fails: {problem}")
    elif eta != witness.eta:
        bad.append("stored unit components disagree with the lifts")
    return bad


def _directly_cartesian(fun: Functor, f: MorId) -> bool:
    cat, base = fun.source, fun.target
    comp, bcomp = cat.composition, base.composition
    a, c = cat.dom[f], cat.cod[f]
    pf = fun.mor_map[f]
    pa = fun.obj_map[a]
    for d in cat.objects():
        pd = fun.obj_map[d]
        for h in cat.hom(d, c):
            ph = fun.mor_map[h]
            for wv in base.hom(pd, pa):
                if bcomp[(pf, wv)] != ph:
                    continue
                count = sum(
                    1
                    for t in cat.hom(d, a)
                    if comp[(f, t)] == h and fun.mor_map[t] == wv
                )
                if count != 1:
                    return False
    return True


def cart_class(fun: Functor, witness: PrefibrationWitness) -> MorClass:
    """Morphisms with invertible unit, cross-checked against the direct
    universal-property definition of a cartesian morphism."""
    cat, base = fun.source, fun.target
    bisos = iso_set(cat)
    via_eta = frozenset(
        f for f in cat.morphisms() if witness.eta[f] in bisos
    )
    direct = frozenset(
        f for f in cat.morphisms() if _directly_cartesian(fun, f)
    )
    if via_eta != direct:
        raise AuditError(
            "unit-invertibility disagrees with the direct cartesian property: "
            f"{sorted(via_eta ^ direct)}"
        )
    return MorClass(cat, via_eta)


@dataclass(frozen=True)
class InducedFsReport:
    left: MorClass
    right: MorClass
    fs_ok: bool
    reflective: Check
    preserves_terminal: bool | None
    fixed_cartesian: frozenset | None
    indiscrete: frozenset | None
    fixed_matches_indiscrete: bool | None

    def doc(self, cat: FinCat) -> dict:
        return {
            "left_size": len(self.left),
            "right_size": len(self.right),
            "fs": self.fs_ok,
            "reflective": self.reflective.doc(cat),
            "preserves_terminal": self.preserves_terminal,
            "fixed_cartesian": sorted(cat.obj_label(o) for o in self.fixed_cartesian)
            if self.fixed_cartesian is not None
            else None,
            "indiscrete": sorted(cat.obj_label(o) for o in self.indiscrete)
            if self.indiscrete is not None
            else None,
            "fixed_matches_indiscrete": self.fixed_matches_indiscrete,
        }


def induced_fs(fun: Functor, witness: PrefibrationWitness) -> InducedFsReport:
    """The (inverted, cartesian) candidate associated with a prefibration.

    Runs the factorization system check and the reflectivity cancellation,
    and when the functor preserves the terminal object also compares the
    fixed objects of the cartesian class with the indiscrete objects.
    """
    cat, base = fun.source, fun.target
    bisos = iso_set(base)
    left = MorClass.of(
        cat, [f for f in cat.morphisms() if fun.mor_map[f] in bisos]
    )
    right = cart_class(fun, witness)
    fs_ok = check_fs(cat, left, right).fs
    reflective = check_cancellation(cat, left, "4")

    preserves_terminal = None
    fixed = None
    indiscrete = None
    matches = None
    term = terminal_object(cat)
    if term is not None:
        bterm = terminal_object(base)
        preserves_terminal = (
            bterm is not None
            and all(
                len(base.hom(x, fun.obj_map[term])) == 1 for x in base.objects()
            )
        )
        if preserves_terminal:
            fixed = frozenset(
                a for a in cat.objects() if cat.hom(a, term)[0] in right.members
            )
            comp = cat.composition
            ind = []
            for a in cat.objects():
                pa = fun.obj_map[a]
                good = True
                for d in cat.objects():
                    for h in base.hom(fun.obj_map[d], pa):
                        count = sum(
                            1 for dmor in cat.hom(d, a) if fun.mor_map[dmor] == h
                        )
                        if count != 1:
                            good = False
                            break
                    if not good:
                        break
                if good:
                    ind.append(a)
            indiscrete = frozenset(ind)
            matches = fixed == indiscrete
    return InducedFsReport(
        left=left,
        right=right,
        fs_ok=fs_ok,
        reflective=reflective,
        preserves_terminal=preserves_terminal,
        fixed_cartesian=fixed,
        indiscrete=indiscrete,
        fixed_matches_indiscrete=matches,
    )


@dataclass(frozen=True)
class ReflectorPrefibration:
    functor: Functor
    witness: PrefibrationWitness
    embedding: SubcategoryEmbedding
    reflection: ReflectionData


def reflector_as_prefibration(
    cat: FinCat, left: MorClass, right: MorClass
) -> ReflectorPrefibration:
    """Restrict the reflector of a verified simple reflective system to its
    fixed subcategory and package it as a prefibration witness.

    Lift objects are the canonical pullbacks of the unit along base
    morphisms; a missing pullback raises, and a non-simple or non-reflective
    input is rejected up front.
    """
    if not check_fs(cat, left, right).fs:
        raise PreconditionError("the class pair is not a factorization system")
    if not check_cancellation(cat, left, "4").ok:
        raise PreconditionError("the left class fails the reflective cancellation")
    fixed = fixed_subcategories(cat, left, right)
    if fixed.over_terminal is None:
        raise UnsupportedStructureError(fixed.over_terminal_reason)
    rd = build_reflection(cat, fixed.over_terminal)
    if rd is None:
        raise PreconditionError("the fixed subcategory is not reflective")
    simple = check_simple(cat, left, right, rd)
    if not simple.simple:
        raise PreconditionError("the factorization system is not simple")

    emb = full_subcategory(cat, sorted(rd.objects))
    fun = Functor(
        source=cat,
        target=emb.sub,
        obj_map=tuple(emb.obj_from_sup[rd.robj[a]] for a in cat.objects()),
        mor_map=tuple(emb.mor_from_sup[rd.rmor[f]] for f in cat.morphisms()),
    )
    report = validate_functor(fun)
    if not report.ok:
        raise AuditError("restricted reflector fails functor validation")

    comp = cat.composition
    lifts: dict[tuple[int, int], tuple[int, int, int]] = {}
    for c in cat.objects():
        pc = fun.obj_map[c]
        for g in emb.sub.to_object(pc):
            gsup = emb.mor_to_sup[g]
            b0sup = cat.dom[gsup]
            pb = pullback(cat, rd.unit[c], gsup)
            if pb is None:
                raise UnsupportedStructureError(
                    f"missing pullback of the unit of {cat.obj_label(c)} along "
                    f"{cat.describe(gsup)}"
                )
            w, v, proj = pb.apex, pb.legs[0], pb.legs[1]
            eps_cands = [
                t
                for t in cat.hom(rd.robj[w], b0sup)
                if comp[(t, rd.unit[w])] == proj
            ]
            assert len(eps_cands) == 1, "the unit must mediate the projection"
            lifts[(c, g)] = (w, v, emb.mor_from_sup[eps_cands[0]])
    eta, problem = _eta_components(fun, lifts)
    if eta is None:
        raise AuditError(f"constructed lifts fail idempotency: {problem}")
    witness = PrefibrationWitness(fun, lifts, eta)
    bad = validate_prefibration_witness(witness)
    if bad:
        raise AuditError("constructed witness fails validation: " + bad[0])
    return ReflectorPrefibration(fun, witness, emb, rd)


@dataclass(frozen=True)
class CorrespondenceReport:
    """Round trip between a simple reflective system and its prefibration."""

    prefibration_ok: bool
    preserves_terminal: bool | None
    left_matches: bool
    right_matches: bool
    right_three_for_two: Check
    semi_left_exact: bool
    pullback_preservation: Check
    pullback_preservation_missing: int

    @property
    def round_trip_exact(self) -> bool:
        return self.prefibration_ok and self.left_matches and self.right_matches

    def doc(self, cat: FinCat) -> dict:
        return {
            "prefibration": self.prefibration_ok,
            "preserves_terminal": self.preserves_terminal,
            "left_matches": self.left_matches,
            "right_matches": self.right_matches,
            "right_three_for_two": self.right_three_for_two.doc(cat),
            "semi_left_exact": self.semi_left_exact,
            "pullback_preservation": self.pullback_preservation.doc(cat),
            "pullback_preservation_missing": self.pullback_preservation_missing,
            "round_trip_exact": self.round_trip_exact,
        }


def verify_prefibration_correspondence(
    cat: FinCat, left: MorClass, right: MorClass, dual: bool = False
) -> CorrespondenceReport:
    """Build the prefibration of a simple reflective system and check that
    it reproduces the classes; with ``dual`` the whole computation runs in
    the opposite category, giving the precofibration statement for the
    left class."""
    if dual:
        from .core import opposite

        op = cat._cache.get("op")
        if op is None:
            op = opposite(cat)
            cat._cache["op"] = op
        return verify_prefibration_correspondence(
            op,
            MorClass.of(op, right.members),
            MorClass.of(op, left.members),
            dual=False,
        )

    rp = reflector_as_prefibration(cat, left, right)
    fun, witness = rp.functor, rp.witness
    fresh = check_prefibration(fun)
    ind = induced_fs(fun, fresh.witness if fresh.ok else witness)
    left_matches = ind.left.members == left.members
    right_matches = ind.right.members == right.members

    sle = check_semi_left_exact(cat, left, right, rp.reflection)
    preserved = Check(True)
    missing = 0
    if sle.semi_left_exact:
        sub = rp.embedding.sub
        for m in sorted(right.members):
            for g in cat.to_object(cat.cod[m]):
                pb = pullback(cat, m, g)
                if pb is None:
                    missing += 1
                    continue
                ok = is_limit(
                    sub,
                    "pullback",
                    (fun.mor_map[m], fun.mor_map[g]),
                    fun.obj_map[pb.apex],
                    (fun.mor_map[pb.legs[0]], fun.mor_map[pb.legs[1]]),
                )
                if preserved.ok and not ok:
                    preserved = Check(False, {"m": m, "g": g})
    return CorrespondenceReport(
        prefibration_ok=fresh.ok,
        preserves_terminal=ind.preserves_terminal,
        left_matches=left_matches,
        right_matches=right_matches,
        right_three_for_two=three_for_two(cat, right),
        semi_left_exact=sle.semi_left_exact,
        pullback_preservation=preserved,
        pullback_preservation_missing=missing,
    )
