"""The category file format: one JSON document per category, with named
morphism classes and optional endofunctors.

Every import is validated; exports are deterministic, so a document can be
round-tripped and diffed byte for byte.
"""

from __future__ import annotations

import json

from .core import (
    FinCat,
    Functor,
    MorClass,
    StructuralError,
    validate_category,
    validate_functor,
)

ALLOWED_KEYS = {"objects", "morphisms", "identities", "composition", "classes", "functors"}
REQUIRED_KEYS = {"objects", "morphisms", "identities", "composition"}


def category_from_doc(doc: dict) -> FinCat:
    """Build and validate a category from a parsed document.

    Unknown keys are rejected, every name must resolve, and the composition
    listing must cover exactly the composable pairs; violations surface
    verbatim.
    """
    if not isinstance(doc, dict):
        raise StructuralError("category document must be an object")
    unknown = set(doc) - ALLOWED_KEYS
    if unknown:
        raise StructuralError(f"unknown keys in category document: {sorted(unknown)}")
    missing = REQUIRED_KEYS - set(doc)
    if missing:
        raise StructuralError(f"missing keys in category document: {sorted(missing)}")

    objects = doc["objects"]
    if not isinstance(objects, list) or len(set(objects)) != len(objects):
        raise StructuralError("objects must be a list of distinct names")
    obj_index = {name: i for i, name in enumerate(objects)}

    morphisms = doc["morphisms"]
    if not isinstance(morphisms, list):
        raise StructuralError("morphisms must be a list")
    names, dom, cod = [], [], []
    for entry in morphisms:
        if not isinstance(entry, dict) or set(entry) != {"name", "dom", "cod"}:
            raise StructuralError(f"bad morphism entry: {entry!r}")
        if entry["dom"] not in obj_index or entry["cod"] not in obj_index:
            raise StructuralError(f"morphism {entry['name']!r} has unknown endpoints")
        names.append(entry["name"])
        dom.append(obj_index[entry["dom"]])
        cod.append(obj_index[entry["cod"]])
    if len(set(names)) != len(names):
        raise StructuralError("morphism names must be distinct")
    mor_index = {name: i for i, name in enumerate(names)}

    identities = doc["identities"]
    if not isinstance(identities, dict) or set(identities) != set(objects):
        raise StructuralError("identities must name one morphism per object")
    identity = []
    for name in objects:
        ident = identities[name]
        if ident not in mor_index:
            raise StructuralError(f"identity of {name!r} names unknown morphism {ident!r}")
        identity.append(mor_index[ident])

    composition = {}
    for entry in doc["composition"]:
        if not (isinstance(entry, list) and len(entry) == 3):
            raise StructuralError(f"bad composition entry: {entry!r}")
        g, f, gf = entry
        for nm in (g, f, gf):
            if nm not in mor_index:
                raise StructuralError(f"composition entry names unknown morphism {nm!r}")
        key = (mor_index[g], mor_index[f])
        if key in composition:
            raise StructuralError(f"duplicate composition entry for ({g!r}, {f!r})")
        composition[key] = mor_index[gf]

    cat = FinCat(
        n_objects=len(objects),
        dom=tuple(dom),
        cod=tuple(cod),
        identity=tuple(identity),
        composition=composition,
        obj_labels=tuple(objects),
        mor_labels=tuple(names),
    )
    report = validate_category(cat)
    if not report.ok:
        raise StructuralError(
            "imported category is invalid: " + "; ".join(report.violations[:5])
        )

    classes = doc.get("classes", {})
    if not isinstance(classes, dict):
        raise StructuralError("classes must be an object")
    for cname, members in classes.items():
        for nm in members:
            if nm not in mor_index:
                raise StructuralError(f"class {cname!r} names unknown morphism {nm!r}")

    functors = doc.get("functors", {})
    if not isinstance(functors, dict):
        raise StructuralError("functors must be an object")
    for fname, fdoc in functors.items():
        fun = _functor_from_doc(cat, obj_index, mor_index, fname, fdoc)
        if not validate_functor(fun).ok:
            raise StructuralError(f"functor {fname!r} does not validate")
    return cat


def _functor_from_doc(cat, obj_index, mor_index, fname, fdoc) -> Functor:
    if not isinstance(fdoc, dict) or set(fdoc) != {"objects", "morphisms"}:
        raise StructuralError(f"functor {fname!r} must map objects and morphisms")
    try:
        obj_map = tuple(obj_index[fdoc["objects"][name]] for name in cat.obj_labels)
        mor_map = tuple(mor_index[fdoc["morphisms"][name]] for name in cat.mor_labels)
    except KeyError as exc:
        raise StructuralError(f"functor {fname!r} has an unresolved name: {exc}")
    return Functor(cat, cat, obj_map, mor_map)


def classes_from_doc(cat: FinCat, doc: dict) -> dict[str, MorClass]:
    mor_index = {name: i for i, name in enumerate(cat.mor_labels)}
    out = {}
    for cname, members in doc.get("classes", {}).items():
        out[cname] = MorClass.of(cat, [mor_index[nm] for nm in members])
    return out


def functors_from_doc(cat: FinCat, doc: dict) -> dict[str, Functor]:
    obj_index = {name: i for i, name in enumerate(cat.obj_labels)}
    mor_index = {name: i for i, name in enumerate(cat.mor_labels)}
    return {
        fname: _functor_from_doc(cat, obj_index, mor_index, fname, fdoc)
        for fname, fdoc in doc.get("functors", {}).items()
    }


def category_to_doc(
    cat: FinCat,
    classes: dict[str, MorClass] | None = None,
    functors: dict[str, Functor] | None = None,
) -> dict:
    """Deterministic document for a category and optional named classes."""
    obj_names = [cat.obj_label(o) for o in cat.objects()]
    mor_names = [cat.mor_label(m) for m in cat.morphisms()]
    doc = {
        "objects": obj_names,
        "morphisms": [
            {"name": mor_names[m], "dom": obj_names[cat.dom[m]], "cod": obj_names[cat.cod[m]]}
            for m in cat.morphisms()
        ],
        "identities": {obj_names[o]: mor_names[cat.identity[o]] for o in cat.objects()},
        "composition": [
            [mor_names[g], mor_names[f], mor_names[gf]]
            for (g, f), gf in sorted(cat.composition.items())
        ],
    }
    if classes:
        doc["classes"] = {
            name: [mor_names[m] for m in sorted(cls.members)]
            for name, cls in sorted(classes.items())
        }
    if functors:
        doc["functors"] = {
            name: {
                "objects": {obj_names[o]: obj_names[fun.obj_map[o]] for o in cat.objects()},
                "morphisms": {
                    mor_names[m]: mor_names[fun.mor_map[m]] for m in cat.morphisms()
                },
            }
            for name, fun in sorted(functors.items())
        }
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_category(path: str) -> tuple[FinCat, dict]:
    with open(path, "r", encoding="utf-8") as handle:
        doc = json.load(handle)
    return category_from_doc(doc), doc


def save_category(path: str, doc: dict) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps(doc))
