"""Hand-built table categories and small oracle utilities for the tests."""

from __future__ import annotations

import itertools

from fincat.core import FinCat


def poset_category(elements, leq) -> FinCat:
    """Thin category of a finite preorder; morphisms are related pairs."""
    pairs = [
        (a, b)
        for a in range(len(elements))
        for b in range(len(elements))
        if leq(elements[a], elements[b])
    ]
    index = {p: i for i, p in enumerate(pairs)}
    comp = {}
    for (a, b) in pairs:
        for (b2, c) in pairs:
            if b2 == b:
                comp[(index[(b, c)], index[(a, b)])] = index[(a, c)]
    return FinCat(
        n_objects=len(elements),
        dom=tuple(p[0] for p in pairs),
        cod=tuple(p[1] for p in pairs),
        identity=tuple(index[(a, a)] for a in range(len(elements))),
        composition=comp,
        obj_labels=tuple(str(e) for e in elements),
        mor_labels=tuple(f"{elements[a]}_to_{elements[b]}" for a, b in pairs),
    )


def monoid_category(elements, table, labels=None) -> FinCat:
    """One-object category from a multiplication table; table[g][f] = g * f
    and element 0 must be the unit."""
    n = len(elements)
    comp = {(g, f): table[g][f] for g in range(n) for f in range(n)}
    return FinCat(
        n_objects=1,
        dom=(0,) * n,
        cod=(0,) * n,
        identity=(0,),
        composition=comp,
        obj_labels=("X",),
        mor_labels=tuple(labels) if labels else tuple(str(e) for e in elements),
    )


def terminal_category() -> FinCat:
    return poset_category(["x"], lambda a, b: True)


def arrow_category() -> FinCat:
    return poset_category(["a", "b"], lambda a, b: a <= b)


def chain3() -> FinCat:
    return poset_category([0, 1, 2], lambda a, b: a <= b)


def diamond_lattice() -> FinCat:
    order = {
        ("bot", "bot"), ("bot", "x"), ("bot", "y"), ("bot", "top"),
        ("x", "x"), ("x", "top"), ("y", "y"), ("y", "top"), ("top", "top"),
    }
    return poset_category(["bot", "x", "y", "top"], lambda a, b: (a, b) in order)


def wedge_poset() -> FinCat:
    order = {("x", "x"), ("y", "y"), ("c", "c"), ("x", "c"), ("y", "c")}
    return poset_category(["x", "y", "c"], lambda a, b: (a, b) in order)


def vee_poset() -> FinCat:
    order = {("a", "a"), ("x", "x"), ("y", "y"), ("a", "x"), ("a", "y")}
    return poset_category(["a", "x", "y"], lambda a, b: (a, b) in order)


def parallel_pair() -> FinCat:
    comp = {
        (0, 0): 0, (1, 1): 1,
        (1, 2): 2, (1, 3): 3, (2, 0): 2, (3, 0): 3,
    }
    return FinCat(
        n_objects=2,
        dom=(0, 1, 0, 0),
        cod=(0, 1, 1, 1),
        identity=(0, 1),
        composition=comp,
        obj_labels=("a", "b"),
        mor_labels=("ida", "idb", "f", "g"),
    )


def split_idempotent_monoid() -> FinCat:
    return monoid_category([0, 1], [[0, 1], [1, 1]], labels=("one", "e"))


def z2_group() -> FinCat:
    return monoid_category([0, 1], [[0, 1], [1, 0]], labels=("one", "s"))
