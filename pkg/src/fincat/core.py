"""Finite categories as explicit composition tables.

Everything downstream of this module works by exhaustive scans over these
tables, so a category is validated once after construction and treated as
immutable from then on.  Derived data (hom tables, iso sets, ...) is cached
on the instance; caches never affect equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

ObjId = int
MorId = int


class StructuralError(Exception):
    """Malformed tables, indices, or file contents."""


class UnsupportedStructureError(Exception):
    """The category lacks structure the operation needs."""


class PreconditionError(Exception):
    """A stated precondition of an operation does not hold."""


class ResourceBudgetError(Exception):
    """An enumeration exceeded its configured budget."""


class AuditError(Exception):
    """A cross-check that must hold mathematically has failed.

    Either the engine has a bug, or an input slipped past an earlier
    verification step.  Never swallowed.
    """


class WorkBudget:
    """Counts coarse enumeration steps and fails loudly at the limit."""

    def __init__(self, limit: int | None = None):
        self.limit = limit
        self.used = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.limit is not None and self.used > self.limit:
            raise ResourceBudgetError(
                f"enumeration budget exceeded ({self.used} > {self.limit})"
            )


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def doc(self) -> dict:
        return {"ok": self.ok, "violations": list(self.violations)}


@dataclass(frozen=True, eq=False)
class FinCat:
    """A finite category: object count, typed morphisms, composition table.

    ``composition`` maps ``(g, f)`` to the composite ``g after f`` and is
    defined for exactly the pairs with ``cod(f) == dom(g)``.  Identities
    and morphism ids are dense 0-based indices, stable for the lifetime of
    the value.
    """

    n_objects: int
    dom: tuple[int, ...]
    cod: tuple[int, ...]
    identity: tuple[int, ...]
    composition: dict[tuple[int, int], int]
    obj_labels: tuple[str, ...] | None = None
    mor_labels: tuple[str, ...] | None = None
    backend: object | None = field(default=None, repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinCat):
            return NotImplemented
        return (
            self.n_objects == other.n_objects
            and self.dom == other.dom
            and self.cod == other.cod
            and self.identity == other.identity
            and self.composition == other.composition
            and self.obj_labels == other.obj_labels
            and self.mor_labels == other.mor_labels
        )

    @property
    def n_morphisms(self) -> int:
        return len(self.dom)

    def objects(self) -> range:
        return range(self.n_objects)

    def morphisms(self) -> range:
        return range(len(self.dom))

    def _hom_table(self):
        table = self._cache.get("hom")
        if table is None:
            rows = [
                [[] for _ in range(self.n_objects)] for _ in range(self.n_objects)
            ]
            for m in range(len(self.dom)):
                rows[self.dom[m]][self.cod[m]].append(m)
            table = tuple(tuple(tuple(cell) for cell in row) for row in rows)
            self._cache["hom"] = table
        return table

    def hom(self, a: ObjId, b: ObjId) -> tuple[MorId, ...]:
        return self._hom_table()[a][b]

    def from_object(self, a: ObjId) -> tuple[MorId, ...]:
        """All morphisms with domain ``a``, ascending."""
        table = self._cache.get("from_obj")
        if table is None:
            rows = [[] for _ in range(self.n_objects)]
            for m in range(len(self.dom)):
                rows[self.dom[m]].append(m)
            table = tuple(tuple(r) for r in rows)
            self._cache["from_obj"] = table
        return table[a]

    def to_object(self, b: ObjId) -> tuple[MorId, ...]:
        """All morphisms with codomain ``b``, ascending."""
        table = self._cache.get("to_obj")
        if table is None:
            rows = [[] for _ in range(self.n_objects)]
            for m in range(len(self.dom)):
                rows[self.cod[m]].append(m)
            table = tuple(tuple(r) for r in rows)
            self._cache["to_obj"] = table
        return table[b]

    def comp(self, g: MorId, f: MorId) -> MorId:
        try:
            return self.composition[(g, f)]
        except KeyError:
            raise StructuralError(
                f"composition undefined for ({self.describe(g)}) after ({self.describe(f)})"
            ) from None

    def composable(self, g: MorId, f: MorId) -> bool:
        return self.cod[f] == self.dom[g]

    def is_identity(self, m: MorId) -> bool:
        return self.identity[self.dom[m]] == m and self.dom[m] == self.cod[m]

    def obj_label(self, o: ObjId) -> str:
        return self.obj_labels[o] if self.obj_labels else f"X{o}"

    def mor_label(self, m: MorId) -> str:
        return self.mor_labels[m] if self.mor_labels else f"m{m}"

    def describe(self, m: MorId) -> str:
        return (
            f"{self.mor_label(m)}: "
            f"{self.obj_label(self.dom[m])} -> {self.obj_label(self.cod[m])}"
        )


def validate_category(cat: FinCat) -> ValidationReport:
    """Exhaustive well-formedness check: typing, units, associativity.

    An empty report means the tables describe a category.  Every violation
    is listed, each naming the offending entry.
    """
    bad: list[str] = []
    n, nm = cat.n_objects, len(cat.dom)
    if n < 0:
        return ValidationReport((f"negative object count {n}",))
    if len(cat.cod) != nm:
        return ValidationReport(
            (f"dom table has {nm} entries but cod table has {len(cat.cod)}",)
        )
    for m in range(nm):
        if not (0 <= cat.dom[m] < n):
            bad.append(f"morphism {m}: dom index {cat.dom[m]} out of range")
        if not (0 <= cat.cod[m] < n):
            bad.append(f"morphism {m}: cod index {cat.cod[m]} out of range")
    if len(cat.identity) != n:
        bad.append(f"identity table has {len(cat.identity)} entries, expected {n}")
    if cat.obj_labels is not None and len(cat.obj_labels) != n:
        bad.append("object label table has wrong length")
    if cat.mor_labels is not None and len(cat.mor_labels) != nm:
        bad.append("morphism label table has wrong length")
    if bad:
        return ValidationReport(tuple(bad))

    for o in range(n):
        i = cat.identity[o]
        if not (0 <= i < nm):
            bad.append(f"identity of object {o}: morphism index {i} out of range")
        elif cat.dom[i] != o or cat.cod[i] != o:
            bad.append(
                f"identity of object {o} is morphism {i} "
                f"with dom {cat.dom[i]}, cod {cat.cod[i]}"
            )
    if bad:
        return ValidationReport(tuple(bad))

    comp = cat.composition
    for (g, f), gf in comp.items():
        if not (0 <= f < nm and 0 <= g < nm and 0 <= gf < nm):
            bad.append(f"composition entry ({g}, {f}) -> {gf}: index out of range")
            continue
        if cat.cod[f] != cat.dom[g]:
            bad.append(
                f"composition entry ({g}, {f}): pair is not composable "
                f"(cod {cat.cod[f]} != dom {cat.dom[g]})"
            )
        elif cat.dom[gf] != cat.dom[f] or cat.cod[gf] != cat.cod[g]:
            bad.append(
                f"composition entry ({g}, {f}) -> {gf}: composite has "
                f"dom {cat.dom[gf]}, cod {cat.cod[gf]}, expected "
                f"dom {cat.dom[f]}, cod {cat.cod[g]}"
            )
    for f in range(nm):
        for g in cat.from_object(cat.cod[f]):
            if (g, f) not in comp:
                bad.append(f"composable pair ({g}, {f}) missing from table")
    if bad:
        return ValidationReport(tuple(bad))

    for f in range(nm):
        if comp[(cat.identity[cat.cod[f]], f)] != f:
            bad.append(f"left unit law fails for morphism {f}")
        if comp[(f, cat.identity[cat.dom[f]])] != f:
            bad.append(f"right unit law fails for morphism {f}")

    cod = cat.cod
    from_obj = [cat.from_object(o) for o in range(n)]
    for (g, f), gf in comp.items():
        for h in from_obj[cod[g]]:
            if comp[(comp[(h, g)], f)] != comp[(h, gf)]:
                bad.append(
                    f"associativity fails on (h, g, f) = ({h}, {g}, {f})"
                )
    return ValidationReport(tuple(bad))


def require_valid(cat: FinCat) -> FinCat:
    """Validate once and cache the result; raise on the first bad category."""
    if not cat._cache.get("validated", False):
        report = validate_category(cat)
        if not report.ok:
            raise StructuralError(
                "invalid category: " + "; ".join(report.violations[:5])
            )
        cat._cache["validated"] = True
    return cat


def opposite(cat: FinCat) -> FinCat:
    """The opposite category on the same object and morphism ids.

    dom and cod swap, composition transposes.  Applying it twice gives a
    value componentwise equal to the original.
    """
    return FinCat(
        n_objects=cat.n_objects,
        dom=cat.cod,
        cod=cat.dom,
        identity=cat.identity,
        composition={(f, g): v for (g, f), v in cat.composition.items()},
        obj_labels=cat.obj_labels,
        mor_labels=cat.mor_labels,
    )


@dataclass(frozen=True)
class MorClass:
    """A finite set of morphism ids of one category."""

    cat: FinCat
    members: frozenset[int]

    @staticmethod
    def of(cat: FinCat, members: Iterable[int]) -> "MorClass":
        ms = frozenset(members)
        for m in ms:
            if not (0 <= m < cat.n_morphisms):
                raise StructuralError(f"morphism id {m} out of range")
        return MorClass(cat, ms)

    def __contains__(self, m: int) -> bool:
        return m in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def _require_same_cat(self, other: "MorClass") -> None:
        if self.cat is not other.cat:
            raise PreconditionError("morphism classes live in different categories")

    def __and__(self, other: "MorClass") -> "MorClass":
        self._require_same_cat(other)
        return MorClass(self.cat, self.members & other.members)

    def __or__(self, other: "MorClass") -> "MorClass":
        self._require_same_cat(other)
        return MorClass(self.cat, self.members | other.members)

    def __sub__(self, other: "MorClass") -> "MorClass":
        self._require_same_cat(other)
        return MorClass(self.cat, self.members - other.members)

    def __le__(self, other: "MorClass") -> bool:
        self._require_same_cat(other)
        return self.members <= other.members

    def labels(self) -> list[str]:
        return [self.cat.mor_label(m) for m in sorted(self.members)]


def all_morphisms(cat: FinCat) -> MorClass:
    return MorClass(cat, frozenset(range(cat.n_morphisms)))


def _iso_data(cat: FinCat) -> dict[int, int]:
    """Map from each iso to its (unique) two-sided inverse."""
    inv = cat._cache.get("iso_inverse")
    if inv is None:
        inv = {}
        for f in cat.morphisms():
            a, b = cat.dom[f], cat.cod[f]
            for g in cat.hom(b, a):
                if (
                    cat.composition[(g, f)] == cat.identity[a]
                    and cat.composition[(f, g)] == cat.identity[b]
                ):
                    inv[f] = g
                    break
        cat._cache["iso_inverse"] = inv
    return inv


def iso_set(cat: FinCat) -> frozenset[int]:
    return frozenset(_iso_data(cat))


def iso_class(cat: FinCat) -> MorClass:
    """All morphisms with a two-sided inverse, found by brute search."""
    return MorClass(cat, iso_set(cat))


def inverse_of(cat: FinCat, m: MorId) -> MorId | None:
    return _iso_data(cat).get(m)


def objects_isomorphic(cat: FinCat, a: ObjId, b: ObjId) -> bool:
    if a == b:
        return True
    isos = iso_set(cat)
    return any(m in isos for m in cat.hom(a, b))


def isos_into(cat: FinCat, b: ObjId) -> list[MorId]:
    isos = iso_set(cat)
    return [m for m in cat.to_object(b) if m in isos]


def section_retraction_pairs(
    cat: FinCat, a: ObjId, c: ObjId
) -> tuple[tuple[MorId, MorId], ...]:
    """All pairs (s: a -> c, r: c -> a) with r after s the identity of a."""
    key = ("sect_retr", a, c)
    pairs = cat._cache.get(key)
    if pairs is None:
        comp = cat.composition
        ida = cat.identity[a]
        out = []
        for s in cat.hom(a, c):
            for r in cat.hom(c, a):
                if comp[(r, s)] == ida:
                    out.append((s, r))
        pairs = tuple(out)
        cat._cache[key] = pairs
    return pairs


@dataclass(frozen=True)
class RetractWitness:
    """A retract diagram in the arrow category.

    ``inner`` is a retract of ``outer`` via the section square
    (sect_dom, sect_cod) and retraction square (retr_dom, retr_cod);
    ``outer`` belongs to the class under test and ``inner`` does not.
    """

    inner: MorId
    outer: MorId
    sect_dom: MorId
    sect_cod: MorId
    retr_dom: MorId
    retr_cod: MorId

    def doc(self, cat: FinCat) -> dict:
        return {
            "inner": cat.mor_label(self.inner),
            "outer": cat.mor_label(self.outer),
            "section": [cat.mor_label(self.sect_dom), cat.mor_label(self.sect_cod)],
            "retraction": [
                cat.mor_label(self.retr_dom),
                cat.mor_label(self.retr_cod),
            ],
        }


@dataclass(frozen=True)
class ClosureReport:
    closed: bool
    witness: RetractWitness | None = None

    def doc(self, cat: FinCat) -> dict:
        return {
            "closed": self.closed,
            "witness": self.witness.doc(cat) if self.witness else None,
        }


def _retract_of(cat: FinCat, f: MorId, g: MorId):
    """First arrow-category retract diagram exhibiting f as a retract of g."""
    comp = cat.composition
    fa, fb = cat.dom[f], cat.cod[f]
    ga, gb = cat.dom[g], cat.cod[g]
    for s0, r0 in section_retraction_pairs(cat, fa, ga):
        gs0 = comp[(g, s0)]
        fr0 = comp[(f, r0)]
        for s1, r1 in section_retraction_pairs(cat, fb, gb):
            if comp[(s1, f)] == gs0 and comp[(r1, g)] == fr0:
                return (s0, s1, r0, r1)
    return None


def is_retract_closed(cat: FinCat, cls: MorClass) -> ClosureReport:
    """Closure of a class under retracts in the arrow category.

    On failure the returned diagram is the first one in (inner, outer,
    squares) scan order, so it is reproducible.
    """
    members = cls.members
    for f in cat.morphisms():
        if f in members:
            continue
        for g in sorted(members):
            found = _retract_of(cat, f, g)
            if found is not None:
                s0, s1, r0, r1 = found
                return ClosureReport(False, RetractWitness(f, g, s0, s1, r0, r1))
    return ClosureReport(True)


def is_iso_closed_in_arrows(cat: FinCat, cls: MorClass) -> ClosureReport:
    """Closure under isomorphism in the arrow category."""
    isos = iso_set(cat)
    comp = cat.composition
    members = cls.members
    for f in cat.morphisms():
        if f in members:
            continue
        fa, fb = cat.dom[f], cat.cod[f]
        for g in sorted(members):
            ga, gb = cat.dom[g], cat.cod[g]
            for s0 in cat.hom(fa, ga):
                if s0 not in isos:
                    continue
                gs0 = comp[(g, s0)]
                for s1 in cat.hom(fb, gb):
                    if s1 in isos and comp[(s1, f)] == gs0:
                        r0 = inverse_of(cat, s0)
                        r1 = inverse_of(cat, s1)
                        return ClosureReport(
                            False, RetractWitness(f, g, s0, s1, r0, r1)
                        )
    return ClosureReport(True)


@dataclass(frozen=True)
class Functor:
    source: FinCat
    target: FinCat
    obj_map: tuple[int, ...]
    mor_map: tuple[int, ...]

    def on_obj(self, o: ObjId) -> ObjId:
        return self.obj_map[o]

    def on_mor(self, m: MorId) -> MorId:
        return self.mor_map[m]


def validate_functor(fun: Functor) -> ValidationReport:
    """Check totality, typing, identity and composite preservation."""
    bad: list[str] = []
    src, tgt = fun.source, fun.target
    if len(fun.obj_map) != src.n_objects:
        bad.append("object map is not total")
    if len(fun.mor_map) != src.n_morphisms:
        bad.append("morphism map is not total")
    if bad:
        return ValidationReport(tuple(bad))
    for o, img in enumerate(fun.obj_map):
        if not (0 <= img < tgt.n_objects):
            bad.append(f"object map sends {o} out of range")
    for m, img in enumerate(fun.mor_map):
        if not (0 <= img < tgt.n_morphisms):
            bad.append(f"morphism map sends {m} out of range")
    if bad:
        return ValidationReport(tuple(bad))
    for m in src.morphisms():
        img = fun.mor_map[m]
        if tgt.dom[img] != fun.obj_map[src.dom[m]] or tgt.cod[img] != fun.obj_map[src.cod[m]]:
            bad.append(f"morphism {m}: image {img} has wrong dom or cod")
    for o in src.objects():
        if fun.mor_map[src.identity[o]] != tgt.identity[fun.obj_map[o]]:
            bad.append(f"identity of object {o} is not preserved")
    tcomp = tgt.composition
    for (g, f), gf in src.composition.items():
        if tcomp[(fun.mor_map[g], fun.mor_map[f])] != fun.mor_map[gf]:
            bad.append(f"composite of ({g}, {f}) is not preserved")
    return ValidationReport(tuple(bad))


def identity_functor(cat: FinCat) -> Functor:
    return Functor(
        cat,
        cat,
        tuple(range(cat.n_objects)),
        tuple(range(cat.n_morphisms)),
    )


def constant_functor(cat: FinCat, obj: ObjId) -> Functor:
    i = cat.identity[obj]
    return Functor(
        cat,
        cat,
        tuple(obj for _ in range(cat.n_objects)),
        tuple(i for _ in range(cat.n_morphisms)),
    )


@dataclass(frozen=True)
class SubcategoryEmbedding:
    """A full subcategory together with the id translation in both directions."""

    sub: FinCat
    sup: FinCat
    obj_to_sup: tuple[int, ...]
    mor_to_sup: tuple[int, ...]
    obj_from_sup: dict[int, int]
    mor_from_sup: dict[int, int]


def full_subcategory(cat: FinCat, objs: Iterable[ObjId]) -> SubcategoryEmbedding:
    objects = sorted(set(objs))
    for o in objects:
        if not (0 <= o < cat.n_objects):
            raise StructuralError(f"object id {o} out of range")
    obj_from = {o: i for i, o in enumerate(objects)}
    mors = [
        m
        for m in cat.morphisms()
        if cat.dom[m] in obj_from and cat.cod[m] in obj_from
    ]
    mor_from = {m: i for i, m in enumerate(mors)}
    sub = FinCat(
        n_objects=len(objects),
        dom=tuple(obj_from[cat.dom[m]] for m in mors),
        cod=tuple(obj_from[cat.cod[m]] for m in mors),
        identity=tuple(mor_from[cat.identity[o]] for o in objects),
        composition={
            (mor_from[g], mor_from[f]): mor_from[cat.composition[(g, f)]]
            for f in mors
            for g in mors
            if cat.cod[f] == cat.dom[g]
        },
        obj_labels=tuple(cat.obj_label(o) for o in objects)
        if cat.obj_labels
        else None,
        mor_labels=tuple(cat.mor_label(m) for m in mors)
        if cat.mor_labels
        else None,
    )
    return SubcategoryEmbedding(
        sub=sub,
        sup=cat,
        obj_to_sup=tuple(objects),
        mor_to_sup=tuple(mors),
        obj_from_sup=obj_from,
        mor_from_sup=mor_from,
    )
