"""Limits, colimits, morphism classification, and exactness properties.

All universal properties are decided by the bijection criterion: a cone
apex is a limit exactly when composing with the legs is a bijection from
its hom-set onto the commuting cones, for every test object.  Canonical
choices (lowest apex id, lexicographically least legs) make every result
reproducible byte for byte.

Existence checks are fragment-scoped: a property quantified over diagrams
is decided over the diagrams whose (co)limits exist inside the table, and
the report carries the coverage gaps.  A finite truncation of a complete
category is never complete, so this is the only reading under which the
truncation inherits the verdicts of the ambient category.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import (
    FinCat,
    MorClass,
    ObjId,
    MorId,
    PreconditionError,
    StructuralError,
    UnsupportedStructureError,
    WorkBudget,
    iso_set,
    isos_into,
    objects_isomorphic,
    opposite,
)

LIMIT_KINDS = (
    "terminal",
    "binary-product",
    "pullback",
    "kernel",
    "kernel-pair",
    "equalizer",
)
COLIMIT_KINDS = (
    "initial",
    "binary-coproduct",
    "pushout",
    "cokernel",
    "cokernel-pair",
    "coequalizer",
)
_DUAL_KIND = dict(zip(COLIMIT_KINDS, LIMIT_KINDS))


@dataclass(frozen=True)
class LimitData:
    kind: str
    diagram: tuple[int, ...]
    apex: ObjId
    legs: tuple[MorId, ...]


@dataclass(frozen=True)
class ColimitData:
    kind: str
    diagram: tuple[int, ...]
    apex: ObjId
    legs: tuple[MorId, ...]


# ---------------------------------------------------------------------------
# fibres of composition maps, the basic enumeration tool


def postcompose_fibers(cat: FinCat, g: MorId, x: ObjId) -> dict[int, tuple[int, ...]]:
    """Group hom(x, dom g) by the composite with g."""
    key = ("postfib", g, x)
    out = cat._cache.get(key)
    if out is None:
        comp = cat.composition
        acc: dict[int, list[int]] = {}
        for v in cat.hom(x, cat.dom[g]):
            acc.setdefault(comp[(g, v)], []).append(v)
        out = {k: tuple(vs) for k, vs in acc.items()}
        cat._cache[key] = out
    return out


def precompose_fibers(cat: FinCat, f: MorId, y: ObjId) -> dict[int, tuple[int, ...]]:
    """Group hom(cod f, y) by the composite with f."""
    key = ("prefib", f, y)
    out = cat._cache.get(key)
    if out is None:
        comp = cat.composition
        acc: dict[int, list[int]] = {}
        for w in cat.hom(cat.cod[f], y):
            acc.setdefault(comp[(w, f)], []).append(w)
        out = {k: tuple(vs) for k, vs in acc.items()}
        cat._cache[key] = out
    return out


# ---------------------------------------------------------------------------
# special objects


def terminal_object(cat: FinCat) -> ObjId | None:
    if "terminal" not in cat._cache:
        found = None
        for t in cat.objects():
            if all(len(cat.hom(x, t)) == 1 for x in cat.objects()):
                found = t
                break
        cat._cache["terminal"] = found
    return cat._cache["terminal"]


def initial_object(cat: FinCat) -> ObjId | None:
    if "initial" not in cat._cache:
        found = None
        for t in cat.objects():
            if all(len(cat.hom(t, x)) == 1 for x in cat.objects()):
                found = t
                break
        cat._cache["initial"] = found
    return cat._cache["initial"]


def zero_object(cat: FinCat) -> ObjId | None:
    if "zero" not in cat._cache:
        found = None
        for t in cat.objects():
            if all(
                len(cat.hom(x, t)) == 1 and len(cat.hom(t, x)) == 1
                for x in cat.objects()
            ):
                found = t
                break
        cat._cache["zero"] = found
    return cat._cache["zero"]


def is_pointed(cat: FinCat) -> bool:
    return zero_object(cat) is not None


def zero_morphism(cat: FinCat, a: ObjId, b: ObjId) -> MorId:
    z = zero_object(cat)
    if z is None:
        raise UnsupportedStructureError("no zero object")
    key = ("zero_mor", a, b)
    out = cat._cache.get(key)
    if out is None:
        out = cat.composition[(cat.hom(z, b)[0], cat.hom(a, z)[0])]
        cat._cache[key] = out
    return out


def object_is_zero(cat: FinCat, x: ObjId) -> bool:
    z = zero_object(cat)
    if z is None:
        raise UnsupportedStructureError("no zero object")
    return objects_isomorphic(cat, x, z)


# ---------------------------------------------------------------------------
# limits


def _normalize_limit(cat, kind, diagram):
    diagram = tuple(diagram)
    if kind == "terminal":
        if diagram:
            raise StructuralError("terminal takes no diagram data")
    elif kind == "binary-product":
        if len(diagram) != 2 or not all(0 <= o < cat.n_objects for o in diagram):
            raise StructuralError("binary-product takes two object ids")
    elif kind == "pullback":
        if len(diagram) != 2:
            raise StructuralError("pullback takes a cospan (f, g)")
        f, g = diagram
        if cat.cod[f] != cat.cod[g]:
            raise StructuralError("pullback cospan must share a codomain")
    elif kind == "equalizer":
        if len(diagram) != 2:
            raise StructuralError("equalizer takes a parallel pair")
        f, g = diagram
        if cat.dom[f] != cat.dom[g] or cat.cod[f] != cat.cod[g]:
            raise StructuralError("equalizer pair must be parallel")
    elif kind in ("kernel", "kernel-pair"):
        if len(diagram) != 1:
            raise StructuralError(f"{kind} takes one morphism")
    else:
        raise StructuralError(f"unknown limit kind {kind!r}")
    return diagram


def is_limit(cat, kind, diagram, apex, legs) -> bool:
    """Independent universal-property recheck via the bijection criterion."""
    diagram = _normalize_limit(cat, kind, diagram)
    legs = tuple(legs)
    comp = cat.composition
    if kind == "kernel":
        (f,) = diagram
        zm = zero_morphism(cat, cat.dom[f], cat.cod[f])
        return is_limit(cat, "equalizer", (f, zm), apex, legs)
    if kind == "kernel-pair":
        (f,) = diagram
        return is_limit(cat, "pullback", (f, f), apex, legs)

    if kind == "terminal":
        if legs:
            return False
        return all(len(cat.hom(x, apex)) == 1 for x in cat.objects())

    if kind == "binary-product":
        a, b = diagram
        if len(legs) != 2:
            return False
        p, q = legs
        if (cat.dom[p], cat.cod[p]) != (apex, a) or (cat.dom[q], cat.cod[q]) != (apex, b):
            return False
        for x in cat.objects():
            hx = cat.hom(x, apex)
            image = {(comp[(p, h)], comp[(q, h)]) for h in hx}
            if len(image) != len(hx):
                return False
            if len(image) != len(cat.hom(x, a)) * len(cat.hom(x, b)):
                return False
        return True

    if kind == "pullback":
        f, g = diagram
        a, b = cat.dom[f], cat.dom[g]
        if len(legs) != 2:
            return False
        p, q = legs
        if (cat.dom[p], cat.cod[p]) != (apex, a) or (cat.dom[q], cat.cod[q]) != (apex, b):
            return False
        if comp[(f, p)] != comp[(g, q)]:
            return False
        for x in cat.objects():
            hx = cat.hom(x, apex)
            image = {(comp[(p, h)], comp[(q, h)]) for h in hx}
            if len(image) != len(hx):
                return False
            fib = postcompose_fibers(cat, g, x)
            cones = sum(
                len(fib.get(comp[(f, u)], ())) for u in cat.hom(x, a)
            )
            if len(image) != cones:
                return False
        return True

    if kind == "equalizer":
        f, g = diagram
        a = cat.dom[f]
        if len(legs) != 1:
            return False
        (e,) = legs
        if (cat.dom[e], cat.cod[e]) != (apex, a):
            return False
        if comp[(f, e)] != comp[(g, e)]:
            return False
        for x in cat.objects():
            hx = cat.hom(x, apex)
            image = {comp[(e, h)] for h in hx}
            if len(image) != len(hx):
                return False
            cones = sum(
                1 for u in cat.hom(x, a) if comp[(f, u)] == comp[(g, u)]
            )
            if len(image) != cones:
                return False
        return True

    raise StructuralError(f"unknown limit kind {kind!r}")


def _candidate_legs(cat, kind, diagram, apex):
    comp = cat.composition
    if kind == "terminal":
        yield ()
    elif kind == "binary-product":
        a, b = diagram
        for p in cat.hom(apex, a):
            for q in cat.hom(apex, b):
                yield (p, q)
    elif kind == "pullback":
        f, g = diagram
        a = cat.dom[f]
        fib = postcompose_fibers(cat, g, apex)
        for p in cat.hom(apex, a):
            for q in fib.get(comp[(f, p)], ()):
                yield (p, q)
    elif kind == "equalizer":
        f, g = diagram
        for e in cat.hom(apex, cat.dom[f]):
            if comp[(f, e)] == comp[(g, e)]:
                yield (e,)


def limit(cat: FinCat, kind: str, diagram=()) -> LimitData | None:
    """Canonical limit of the given shape, or None when the table has none.

    The choice rule is lowest apex id first, then lexicographically least
    legs, so re-runs return identical data.
    """
    diagram = _normalize_limit(cat, kind, diagram)
    key = ("limit", kind, diagram)
    if key in cat._cache:
        return cat._cache[key]
    if kind == "kernel":
        (f,) = diagram
        zm = zero_morphism(cat, cat.dom[f], cat.cod[f])
        inner = limit(cat, "equalizer", (f, zm))
        out = (
            LimitData("kernel", diagram, inner.apex, inner.legs)
            if inner is not None
            else None
        )
        cat._cache[key] = out
        return out
    if kind == "kernel-pair":
        (f,) = diagram
        inner = limit(cat, "pullback", (f, f))
        out = (
            LimitData("kernel-pair", diagram, inner.apex, inner.legs)
            if inner is not None
            else None
        )
        cat._cache[key] = out
        return out

    out = None
    for apex in cat.objects():
        for legs in _candidate_legs(cat, kind, diagram, apex):
            if is_limit(cat, kind, diagram, apex, legs):
                out = LimitData(kind, diagram, apex, legs)
                break
        if out is not None:
            break
    cat._cache[key] = out
    return out


def _op(cat: FinCat) -> FinCat:
    """Opposite category cached for colimit computations."""
    out = cat._cache.get("op")
    if out is None:
        out = opposite(cat)
        cat._cache["op"] = out
    return out


def colimit(cat: FinCat, kind: str, diagram=()) -> ColimitData | None:
    """Canonical colimit, computed as the dual limit on the same ids."""
    if kind not in COLIMIT_KINDS:
        raise StructuralError(f"unknown colimit kind {kind!r}")
    lim = limit(_op(cat), _DUAL_KIND[kind], diagram)
    if lim is None:
        return None
    return ColimitData(kind, lim.diagram, lim.apex, lim.legs)


def is_colimit(cat, kind, diagram, apex, legs) -> bool:
    """Direct cocone recheck, written against the original category."""
    diagram = tuple(diagram)
    legs = tuple(legs)
    comp = cat.composition
    if kind not in COLIMIT_KINDS:
        raise StructuralError(f"unknown colimit kind {kind!r}")

    if kind == "cokernel":
        (f,) = diagram
        zm = zero_morphism(cat, cat.dom[f], cat.cod[f])
        return is_colimit(cat, "coequalizer", (f, zm), apex, legs)
    if kind == "cokernel-pair":
        (f,) = diagram
        return is_colimit(cat, "pushout", (f, f), apex, legs)

    if kind == "initial":
        if legs:
            return False
        return all(len(cat.hom(apex, x)) == 1 for x in cat.objects())

    if kind == "binary-coproduct":
        a, b = diagram
        if len(legs) != 2:
            return False
        i, j = legs
        if (cat.dom[i], cat.cod[i]) != (a, apex) or (cat.dom[j], cat.cod[j]) != (b, apex):
            return False
        for x in cat.objects():
            hx = cat.hom(apex, x)
            image = {(comp[(h, i)], comp[(h, j)]) for h in hx}
            if len(image) != len(hx):
                return False
            if len(image) != len(cat.hom(a, x)) * len(cat.hom(b, x)):
                return False
        return True

    if kind == "pushout":
        f, g = diagram
        if cat.dom[f] != cat.dom[g]:
            return False
        b, c = cat.cod[f], cat.cod[g]
        if len(legs) != 2:
            return False
        q1, q2 = legs
        if (cat.dom[q1], cat.cod[q1]) != (b, apex) or (cat.dom[q2], cat.cod[q2]) != (c, apex):
            return False
        if comp[(q1, f)] != comp[(q2, g)]:
            return False
        for x in cat.objects():
            hx = cat.hom(apex, x)
            image = {(comp[(h, q1)], comp[(h, q2)]) for h in hx}
            if len(image) != len(hx):
                return False
            fib = precompose_fibers(cat, g, x)
            cocones = sum(
                len(fib.get(comp[(u, f)], ())) for u in cat.hom(b, x)
            )
            if len(image) != cocones:
                return False
        return True

    if kind == "coequalizer":
        f, g = diagram
        if cat.dom[f] != cat.dom[g] or cat.cod[f] != cat.cod[g]:
            return False
        b = cat.cod[f]
        if len(legs) != 1:
            return False
        (q,) = legs
        if (cat.dom[q], cat.cod[q]) != (b, apex):
            return False
        if comp[(q, f)] != comp[(q, g)]:
            return False
        for x in cat.objects():
            hx = cat.hom(apex, x)
            image = {comp[(h, q)] for h in hx}
            if len(image) != len(hx):
                return False
            cocones = sum(
                1 for w in cat.hom(b, x) if comp[(w, f)] == comp[(w, g)]
            )
            if len(image) != cocones:
                return False
        return True

    raise StructuralError(f"unknown colimit kind {kind!r}")


def mediating_to_limit(cat, lim: LimitData, x: ObjId, cone: tuple[int, ...]):
    """All h: x -> apex composing with the legs to the given cone."""
    comp = cat.composition
    out = []
    for h in cat.hom(x, lim.apex):
        if all(comp[(leg, h)] == c for leg, c in zip(lim.legs, cone)):
            out.append(h)
    return out


def mediating_from_colimit(cat, colim: ColimitData, x: ObjId, cocone: tuple[int, ...]):
    comp = cat.composition
    out = []
    for h in cat.hom(colim.apex, x):
        if all(comp[(h, leg)] == c for leg, c in zip(colim.legs, cocone)):
            out.append(h)
    return out


def pullback(cat, f, g):
    return limit(cat, "pullback", (f, g))


def pushout(cat, f, g):
    return colimit(cat, "pushout", (f, g))


def kernel(cat, f):
    return limit(cat, "kernel", (f,))


def cokernel(cat, f):
    return colimit(cat, "cokernel", (f,))


def kernel_pair(cat, f):
    return limit(cat, "kernel-pair", (f,))


def cokernel_pair(cat, f):
    return colimit(cat, "cokernel-pair", (f,))


def binary_product(cat, a, b):
    return limit(cat, "binary-product", (a, b))


def binary_coproduct(cat, a, b):
    return colimit(cat, "binary-coproduct", (a, b))


def square_is_pullback(cat, f, g, apex, p, q) -> bool:
    """Is the commuting square with cone (p, q) over cospan (f, g) a pullback?"""
    return is_limit(cat, "pullback", (f, g), apex, (p, q))


def square_is_pushout(cat, f, g, apex, q1, q2) -> bool:
    return is_colimit(cat, "pushout", (f, g), apex, (q1, q2))


# ---------------------------------------------------------------------------
# morphism classification


@dataclass(frozen=True)
class MorphismProfile:
    mono: bool
    epi: bool
    split_mono: bool
    split_epi: bool
    iso: bool
    regular_epi: bool
    normal_mono: bool | None
    normal_epi: bool | None
    zero_kernel: bool | None
    zero_cokernel: bool | None

    def doc(self) -> dict:
        return {
            "mono": self.mono,
            "epi": self.epi,
            "split_mono": self.split_mono,
            "split_epi": self.split_epi,
            "iso": self.iso,
            "regular_epi": self.regular_epi,
            "normal_mono": self.normal_mono,
            "normal_epi": self.normal_epi,
            "zero_kernel": self.zero_kernel,
            "zero_cokernel": self.zero_cokernel,
        }


def _is_mono(cat, f) -> bool:
    comp = cat.composition
    a = cat.dom[f]
    for x in cat.objects():
        seen = set()
        for g in cat.hom(x, a):
            c = comp[(f, g)]
            if c in seen:
                return False
            seen.add(c)
    return True


def _is_epi(cat, f) -> bool:
    comp = cat.composition
    b = cat.cod[f]
    for x in cat.objects():
        seen = set()
        for g in cat.hom(b, x):
            c = comp[(g, f)]
            if c in seen:
                return False
            seen.add(c)
    return True


def _is_coequalizer_of(cat, q, u, v) -> bool:
    """Does q itself satisfy the coequalizer property of the pair (u, v)?"""
    comp = cat.composition
    if comp[(q, u)] != comp[(q, v)]:
        return False
    b, p = cat.cod[u], cat.cod[q]
    for x in cat.objects():
        hx = cat.hom(p, x)
        image = {comp[(h, q)] for h in hx}
        if len(image) != len(hx):
            return False
        cocones = sum(
            1 for w in cat.hom(b, x) if comp[(w, u)] == comp[(w, v)]
        )
        if len(image) != cocones:
            return False
    return True


def _is_equalizer_of(cat, e, u, v) -> bool:
    comp = cat.composition
    if comp[(u, e)] != comp[(v, e)]:
        return False
    a, p = cat.dom[u], cat.dom[e]
    for x in cat.objects():
        hx = cat.hom(x, p)
        image = {comp[(e, h)] for h in hx}
        if len(image) != len(hx):
            return False
        cones = sum(1 for w in cat.hom(x, a) if comp[(u, w)] == comp[(v, w)])
        if len(image) != cones:
            return False
    return True


def _is_regular_epi(cat, f) -> bool:
    """Exhaustive coequalizer search over all parallel pairs into dom f."""
    if not _is_epi(cat, f):
        return False
    a = cat.dom[f]
    for x in cat.objects():
        hx = cat.hom(x, a)
        for u in hx:
            for v in hx:
                if _is_coequalizer_of(cat, f, u, v):
                    return True
    return False


def _is_normal_epi(cat, f) -> bool:
    """Is f a cokernel?  Uses the kernel shortcut when the kernel exists."""
    if not _is_epi(cat, f):
        return False
    k = kernel(cat, f)
    if k is not None:
        zm = zero_morphism(cat, k.apex, cat.cod[k.legs[0]])
        return _is_coequalizer_of(cat, f, k.legs[0], zm)
    a = cat.dom[f]
    for x in cat.objects():
        for g in cat.hom(x, a):
            zm = zero_morphism(cat, x, a)
            if _is_coequalizer_of(cat, f, g, zm):
                return True
    return False


def _is_normal_mono(cat, f) -> bool:
    if not _is_mono(cat, f):
        return False
    c = cokernel(cat, f)
    if c is not None:
        zm = zero_morphism(cat, cat.dom[c.legs[0]], c.apex)
        return _is_equalizer_of(cat, f, c.legs[0], zm)
    b = cat.cod[f]
    for x in cat.objects():
        for g in cat.hom(b, x):
            zm = zero_morphism(cat, b, x)
            if _is_equalizer_of(cat, f, g, zm):
                return True
    return False


def classify_morphisms(cat: FinCat) -> tuple[MorphismProfile, ...]:
    """Flags for every morphism, each decided by exhaustive search.

    Kernel and cokernel dependent flags are None when the category has no
    zero object, or when the specific (co)kernel does not exist in the
    table.
    """
    out = cat._cache.get("profiles")
    if out is not None:
        return out
    comp = cat.composition
    isos = iso_set(cat)
    pointed = is_pointed(cat)
    profiles = []
    for f in cat.morphisms():
        a, b = cat.dom[f], cat.cod[f]
        mono = _is_mono(cat, f)
        epi = _is_epi(cat, f)
        split_mono = any(comp[(r, f)] == cat.identity[a] for r in cat.hom(b, a))
        split_epi = any(comp[(f, s)] == cat.identity[b] for s in cat.hom(b, a))
        iso = f in isos
        regular_epi = _is_regular_epi(cat, f)
        if pointed:
            normal_epi = _is_normal_epi(cat, f)
            normal_mono = _is_normal_mono(cat, f)
            k = kernel(cat, f)
            zero_kernel = None if k is None else object_is_zero(cat, k.apex)
            c = cokernel(cat, f)
            zero_cokernel = None if c is None else object_is_zero(cat, c.apex)
        else:
            normal_epi = normal_mono = zero_kernel = zero_cokernel = None
        profiles.append(
            MorphismProfile(
                mono=mono,
                epi=epi,
                split_mono=split_mono,
                split_epi=split_epi,
                iso=iso,
                regular_epi=regular_epi,
                normal_mono=normal_mono,
                normal_epi=normal_epi,
                zero_kernel=zero_kernel,
                zero_cokernel=zero_cokernel,
            )
        )
    out = tuple(profiles)
    cat._cache["profiles"] = out
    return out


@dataclass(frozen=True)
class NormalFactorizations:
    """Factorizations f = m . e through the two normal routes, when present."""

    normal_epi_zero_kernel: tuple[MorId, MorId] | None
    zero_cokernel_normal_mono: tuple[MorId, MorId] | None


def normal_factorizations(cat: FinCat, f: MorId) -> NormalFactorizations:
    """Search both (cokernel-flavoured, kernel-flavoured) factorizations of f.

    Deterministic: middle object ascending, then lexicographically least
    (e, m).  Absence is reported, not raised.
    """
    if not is_pointed(cat):
        raise UnsupportedStructureError("normal factorizations need a zero object")
    comp = cat.composition
    profiles = classify_morphisms(cat)
    a, b = cat.dom[f], cat.cod[f]
    first = None
    second = None
    for w in cat.objects():
        for e in cat.hom(a, w):
            for m in cat.hom(w, b):
                if comp[(m, e)] != f:
                    continue
                if first is None and profiles[e].normal_epi and profiles[m].zero_kernel:
                    first = (e, m)
                if (
                    second is None
                    and profiles[e].zero_cokernel
                    and profiles[m].normal_mono
                ):
                    second = (e, m)
        if first is not None and second is not None:
            break
    return NormalFactorizations(first, second)


def has_normal_epi_zero_kernel_factorizations(cat: FinCat) -> bool:
    return all(
        normal_factorizations(cat, f).normal_epi_zero_kernel is not None
        for f in cat.morphisms()
    )


def has_zero_cokernel_normal_mono_factorizations(cat: FinCat) -> bool:
    return all(
        normal_factorizations(cat, f).zero_cokernel_normal_mono is not None
        for f in cat.morphisms()
    )


# ---------------------------------------------------------------------------
# biproducts and additivity


@dataclass(frozen=True)
class BiproductData:
    apex: ObjId
    proj: tuple[MorId, MorId]
    inj: tuple[MorId, MorId]


def biproduct(cat: FinCat, a: ObjId, b: ObjId) -> BiproductData | None:
    """Simultaneous product and coproduct with the unit and zero equations."""
    key = ("biproduct", a, b)
    if key in cat._cache:
        return cat._cache[key]
    if not is_pointed(cat):
        cat._cache[key] = None
        return None
    comp = cat.composition
    ida, idb = cat.identity[a], cat.identity[b]
    zba = zero_morphism(cat, b, a)
    zab = zero_morphism(cat, a, b)
    out = None
    for w in cat.objects():
        for p1 in cat.hom(w, a):
            for p2 in cat.hom(w, b):
                for i1 in cat.hom(a, w):
                    if comp[(p1, i1)] != ida or comp[(p2, i1)] != zab:
                        continue
                    for i2 in cat.hom(b, w):
                        if comp[(p2, i2)] != idb or comp[(p1, i2)] != zba:
                            continue
                        if not is_limit(cat, "binary-product", (a, b), w, (p1, p2)):
                            continue
                        if not is_colimit(
                            cat, "binary-coproduct", (a, b), w, (i1, i2)
                        ):
                            continue
                        out = BiproductData(w, (p1, p2), (i1, i2))
                        break
                    if out is not None:
                        break
                if out is not None:
                    break
            if out is not None:
                break
        if out is not None:
            break
    cat._cache[key] = out
    return out


def hom_addition(cat: FinCat, x: ObjId, y: ObjId) -> dict[tuple[int, int], int] | None:
    """The biproduct-induced addition table on hom(x, y), if computable."""
    bp = biproduct(cat, y, y)
    if bp is None:
        return None
    comp = cat.composition
    p1, p2 = bp.proj
    i1, i2 = bp.inj
    idy = cat.identity[y]
    codiag = [
        n
        for n in cat.hom(bp.apex, y)
        if comp[(n, i1)] == idy and comp[(n, i2)] == idy
    ]
    assert len(codiag) == 1, "coproduct property must give one codiagonal"
    nabla = codiag[0]
    table = {}
    for f in cat.hom(x, y):
        for g in cat.hom(x, y):
            paired = [
                h
                for h in cat.hom(x, bp.apex)
                if comp[(p1, h)] == f and comp[(p2, h)] == g
            ]
            assert len(paired) == 1, "product property must give one pairing"
            table[(f, g)] = comp[(nabla, paired[0])]
    return table


# ---------------------------------------------------------------------------
# exactness properties


@dataclass(frozen=True)
class ExactnessReport:
    pointed: bool
    regular: bool
    coregular: bool
    protomodular: bool
    additive: bool
    homological: bool
    almost_abelian: bool
    details: dict = field(compare=False, default_factory=dict)

    def doc(self) -> dict:
        return {
            "pointed": self.pointed,
            "regular": self.regular,
            "coregular": self.coregular,
            "protomodular": self.protomodular,
            "additive": self.additive,
            "homological": self.homological,
            "almost_abelian": self.almost_abelian,
            "details": self.details,
        }


def _regular_fragment(cat: FinCat, budget: WorkBudget) -> tuple[bool, dict]:
    """Coequalizers of existing kernel pairs plus stability of regular epis.

    Missing kernel pairs and missing pullbacks are coverage gaps, not
    violations; they are listed in the returned detail dict.
    """
    details: dict = {
        "missing_kernel_pairs": [],
        "missing_coequalizers": [],
        "missing_pullbacks": 0,
        "unstable_regular_epi": None,
    }
    ok = True
    profiles = classify_morphisms(cat)
    for f in cat.morphisms():
        budget.spend()
        kp = kernel_pair(cat, f)
        if kp is None:
            details["missing_kernel_pairs"].append(cat.mor_label(f))
            continue
        if colimit(cat, "coequalizer", kp.legs) is None:
            details["missing_coequalizers"].append(cat.mor_label(f))
            ok = False
    regs = [f for f in cat.morphisms() if profiles[f].regular_epi]
    for f in regs:
        b = cat.cod[f]
        for g in cat.to_object(b):
            budget.spend()
            pb = pullback(cat, f, g)
            if pb is None:
                details["missing_pullbacks"] += 1
                continue
            if not profiles[pb.legs[1]].regular_epi:
                details["unstable_regular_epi"] = {
                    "regular_epi": cat.mor_label(f),
                    "along": cat.mor_label(g),
                    "projection": cat.mor_label(pb.legs[1]),
                }
                ok = False
                break
        if not ok:
            break
    return ok, details


def _protomodular_fragment(cat: FinCat, budget: WorkBudget) -> tuple[bool, dict]:
    """Split-free reading: over every rectangle with regular-epi middle
    vertical, if the left square and the whole rectangle are pullbacks then
    so is the right square.  Quantified over squares that exist in the
    table."""
    comp = cat.composition
    profiles = classify_morphisms(cat)
    regs = [p for p in cat.morphisms() if profiles[p].regular_epi]
    for p in regs:
        b0, b1 = cat.dom[p], cat.cod[p]
        for a_ in cat.to_object(b1):
            left = pullback(cat, a_, p)
            if left is None:
                continue
            left_squares = []
            for j in isos_into(cat, left.apex):
                left_squares.append((comp[(left.legs[0], j)], comp[(left.legs[1], j)]))
            if not left_squares:
                continue
            for b_ in cat.from_object(b1):
                c1 = cat.cod[b_]
                bp = comp[(b_, p)]
                ba = comp[(b_, a_)]
                for b in cat.from_object(b0):
                    c0 = cat.cod[b]
                    fib = precompose_fibers(cat, b, c1)
                    for g in fib.get(bp, ()):
                        budget.spend()
                        right = pullback(cat, b_, g)
                        if right is not None:
                            med = [
                                h
                                for h in cat.hom(b0, right.apex)
                                if comp[(right.legs[0], h)] == p
                                and comp[(right.legs[1], h)] == b
                            ]
                            if len(med) == 1 and med[0] in iso_set(cat):
                                continue
                        whole = pullback(cat, ba, g)
                        if whole is None:
                            continue
                        for f, a in left_squares:
                            x = cat.dom[f]
                            top = comp[(b, a)]
                            med = [
                                h
                                for h in cat.hom(x, whole.apex)
                                if comp[(whole.legs[0], h)] == f
                                and comp[(whole.legs[1], h)] == top
                            ]
                            if len(med) == 1 and med[0] in iso_set(cat):
                                witness = {
                                    "middle_vertical": cat.mor_label(p),
                                    "left_bottom": cat.mor_label(a_),
                                    "right_bottom": cat.mor_label(b_),
                                    "top_left": cat.mor_label(a),
                                    "top_right": cat.mor_label(b),
                                    "left_vertical": cat.mor_label(f),
                                    "right_vertical": cat.mor_label(g),
                                }
                                return False, {"witness": witness}
    return True, {}


def _additive_fragment(cat: FinCat, budget: WorkBudget) -> tuple[bool, dict]:
    """Additivity over the reachable fragment.

    Two checks: every binary product or coproduct present in the table must
    upgrade to a biproduct (in an additive category finite products and
    coproducts coincide), and every hom-set whose codomain has a self
    biproduct must be an abelian group under the induced addition.  Pairs
    with neither product nor coproduct are coverage gaps.
    """
    details: dict = {"missing_biproducts": [], "failure": None}
    if not is_pointed(cat):
        return False, {"failure": "no zero object", "missing_biproducts": []}
    ok = True
    missing = set()
    for a in cat.objects():
        for b in cat.objects():
            budget.spend()
            bip = biproduct(cat, a, b)
            if bip is not None:
                continue
            if (
                binary_product(cat, a, b) is not None
                or binary_coproduct(cat, a, b) is not None
            ):
                details["failure"] = {
                    "reason": "product or coproduct does not carry a biproduct",
                    "pair": [cat.obj_label(a), cat.obj_label(b)],
                }
                ok = False
            else:
                missing.add(
                    "(+)".join(sorted([cat.obj_label(a), cat.obj_label(b)]))
                )
    details["missing_biproducts"] = sorted(missing)
    if not ok:
        return ok, details
    for y in cat.objects():
        if biproduct(cat, y, y) is None:
            continue
        for x in cat.objects():
            table = hom_addition(cat, x, y)
            homs = cat.hom(x, y)
            zm = zero_morphism(cat, x, y)
            group = True
            for f in homs:
                if table[(f, zm)] != f or table[(zm, f)] != f:
                    group = False
                if not any(table[(f, g)] == zm for g in homs):
                    group = False
                for g in homs:
                    if table[(f, g)] != table[(g, f)]:
                        group = False
                    for h in homs:
                        budget.spend()
                        if table[(table[(f, g)], h)] != table[(f, table[(g, h)])]:
                            group = False
            if not group:
                details["failure"] = {
                    "reason": "hom-addition is not an abelian group",
                    "hom": [cat.obj_label(x), cat.obj_label(y)],
                }
                return False, details
    return ok, details


DEFAULT_EXACTNESS_BUDGET = 50_000_000


def check_exactness_properties(
    cat: FinCat, budget: int | None = DEFAULT_EXACTNESS_BUDGET
) -> ExactnessReport:
    """Pointedness, regularity, protomodularity, additivity and derived flags.

    Raises ResourceBudgetError if the enumeration exceeds the budget; a
    verdict is never silently truncated.
    """
    wb = WorkBudget(budget)
    pointed = is_pointed(cat)
    regular, reg_details = _regular_fragment(cat, wb)
    op = _op(cat)
    coregular, coreg_details = _regular_fragment(op, wb)
    protomodular, proto_details = _protomodular_fragment(cat, wb)
    additive, add_details = _additive_fragment(cat, wb)
    homological = pointed and regular and protomodular
    almost_abelian = regular and coregular and additive
    return ExactnessReport(
        pointed=pointed,
        regular=regular,
        coregular=coregular,
        protomodular=protomodular,
        additive=additive,
        homological=homological,
        almost_abelian=almost_abelian,
        details={
            "regular": reg_details,
            "coregular": coreg_details,
            "protomodular": proto_details,
            "additive": add_details,
            "work_used": wb.used,
        },
    )
