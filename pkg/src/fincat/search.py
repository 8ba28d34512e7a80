"""Counterexample search over small categories and class pairs.

Candidates stream in a fixed order (seeded instances, enumerated
composition tables, seed-driven random categories), deduplicated by a
canonical labeling, and each is fed through the relevant module checkers.
The first hit is the result, so a (target, budget, seed) triple always
reproduces the same outcome.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import catfile
from .core import FinCat, MorClass, StructuralError, iso_set, validate_category
from .lifting import (
    check_cancellation,
    check_fs,
    check_wfs,
    class_operator,
    factor_through,
)
from .reflection import build_reflection, check_semi_left_exact, check_simple, fixed_subcategories
from .structures import is_pointed, terminal_object
from .torsion import check_normal, check_torsion_theory

SEARCH_TARGETS = (
    "wfs_not_fs",
    "fs_not_reflective",
    "reflective_not_simple",
    "simple_not_semi_left_exact",
    "non_normal_torsion_theory",
)


def canonical_key(cat: FinCat, classes: tuple[frozenset, ...] = ()) -> tuple:
    """Canonical form of a small category with distinguished classes.

    Minimum over object permutations and class-preserving morphism
    relabelings of the serialized tables.  Only meant for the table sizes
    the search enumerates.
    """
    n, nm = cat.n_objects, cat.n_morphisms
    ids = set(cat.identity)
    best = None
    for obj_perm in itertools.permutations(range(n)):
        keyed = sorted(
            range(nm),
            key=lambda m: (obj_perm[cat.dom[m]], obj_perm[cat.cod[m]], m not in ids, m),
        )
        groups = []
        start = 0
        for i in range(1, nm + 1):
            if i == nm or (
                (obj_perm[cat.dom[keyed[i]]], obj_perm[cat.cod[keyed[i]]], keyed[i] not in ids)
                != (obj_perm[cat.dom[keyed[start]]], obj_perm[cat.cod[keyed[start]]], keyed[start] not in ids)
            ):
                groups.append(keyed[start:i])
                start = i
        for relabels in itertools.product(*(itertools.permutations(g) for g in groups)):
            order = [m for group in relabels for m in group]
            new_id = {m: i for i, m in enumerate(order)}
            encoding = (
                n,
                tuple((obj_perm[cat.dom[m]], obj_perm[cat.cod[m]]) for m in order),
                tuple(sorted(new_id[cat.identity[o]] for o in range(n))),
                tuple(
                    sorted(
                        (new_id[g], new_id[f], new_id[gf])
                        for (g, f), gf in cat.composition.items()
                    )
                ),
                tuple(tuple(sorted(new_id[m] for m in cls)) for cls in classes),
            )
            if best is None or encoding < best:
                best = encoding
    return best


def enumerate_categories(max_morphisms: int):
    """All composition tables with at most the given number of morphisms,
    one representative per isomorphism class, in a fixed order.

    The table filler backtracks with incremental associativity checking,
    which is what makes anything beyond four morphisms tractable.
    """
    if max_morphisms > 7:
        raise StructuralError("table enumeration is capped at 7 morphisms")
    seen = set()
    for n_obj in range(1, max_morphisms + 1):
        for extra in range(0, max_morphisms - n_obj + 1):
            for typing in itertools.product(
                itertools.product(range(n_obj), repeat=2), repeat=extra
            ):
                if list(typing) != sorted(typing):
                    continue
                dom = list(range(n_obj)) + [t[0] for t in typing]
                cod = list(range(n_obj)) + [t[1] for t in typing]
                nm = n_obj + extra
                unknown = []
                comp: dict[tuple[int, int], int] = {}
                for f in range(nm):
                    for g in range(nm):
                        if cod[f] != dom[g]:
                            continue
                        if g < n_obj:
                            comp[(g, f)] = f
                        elif f < n_obj:
                            comp[(g, f)] = g
                        else:
                            unknown.append((g, f))
                candidates = [
                    [h for h in range(nm) if dom[h] == dom[f] and cod[h] == cod[g]]
                    for (g, f) in unknown
                ]
                composable = [
                    (g, f)
                    for f in range(nm)
                    for g in range(nm)
                    if cod[f] == dom[g]
                ]

                def consistent() -> bool:
                    # Associativity over the triples whose entries exist so
                    # far; partial tables are pruned as soon as they clash.
                    for g, f in composable:
                        gf = comp.get((g, f))
                        if gf is None:
                            continue
                        for h in range(nm):
                            if cod[g] != dom[h]:
                                continue
                            hg = comp.get((h, g))
                            h_gf = comp.get((h, gf))
                            if hg is None or h_gf is None:
                                continue
                            hg_f = comp.get((hg, f))
                            if hg_f is not None and hg_f != h_gf:
                                return False
                    return True

                def assignments(idx: int):
                    if idx == len(unknown):
                        yield dict(comp)
                        return
                    g, f = unknown[idx]
                    for h in candidates[idx]:
                        comp[(g, f)] = h
                        if consistent():
                            yield from assignments(idx + 1)
                        del comp[(g, f)]

                for table in assignments(0):
                    cat = FinCat(
                        n_objects=n_obj,
                        dom=tuple(dom),
                        cod=tuple(cod),
                        identity=tuple(range(n_obj)),
                        composition=table,
                        obj_labels=tuple(f"X{i}" for i in range(n_obj)),
                        mor_labels=tuple(f"m{i}" for i in range(nm)),
                    )
                    if not validate_category(cat).ok:
                        continue
                    key = canonical_key(cat)
                    if key in seen:
                        continue
                    seen.add(key)
                    yield cat


def wfs_pairs(cat: FinCat):
    """All (E, M) weak factorization systems of one category.

    Enumerates E over subsets containing the isos, takes M as the right
    lifting class, and keeps the pairs passing the full wfs check.
    """
    isos = iso_set(cat)
    rest = [m for m in cat.morphisms() if m not in isos]
    if len(rest) > 16:
        raise StructuralError("wfs enumeration is meant for small tables")
    seen = set()
    for bits in range(1 << len(rest)):
        members = set(isos)
        for i, m in enumerate(rest):
            if bits >> i & 1:
                members.add(m)
        left = MorClass.of(cat, members)
        right = class_operator(cat, left, "right")
        key = (frozenset(left.members), frozenset(right.members))
        if key in seen:
            continue
        seen.add(key)
        if check_wfs(cat, left, right).wfs:
            yield left, right


@dataclass(frozen=True)
class SearchWitness:
    target: str
    category_doc: dict
    detail: dict


@dataclass(frozen=True)
class SearchResult:
    target: str
    witness: SearchWitness | None
    examined: int

    @property
    def found(self) -> bool:
        return self.witness is not None

    def doc(self) -> dict:
        out = {"target": self.target, "found": self.found, "examined": self.examined}
        if self.witness is not None:
            out["witness"] = {
                "detail": self.witness.detail,
                "category_file": self.witness.category_doc,
            }
        return out


def _predicate(target: str, cat: FinCat, left: MorClass, right: MorClass):
    """Apply the target's checker pipeline; a dict means a hit."""
    if target == "wfs_not_fs":
        if check_wfs(cat, left, right).wfs and not check_fs(cat, left, right).fs:
            return {"reason": "wfs holds, unique lifting fails"}
        return None
    fs_ok = check_fs(cat, left, right).fs
    if not fs_ok:
        return None
    if target == "fs_not_reflective":
        c4 = check_cancellation(cat, left, "4")
        if not c4.ok:
            return {"reason": "fs holds, left cancellation fails", "witness": c4.doc(cat)}
        return None
    c4 = check_cancellation(cat, left, "4")
    if not c4.ok:
        return None
    if target in ("reflective_not_simple", "simple_not_semi_left_exact"):
        if terminal_object(cat) is None:
            return None
        fixed = fixed_subcategories(cat, left, right)
        if fixed.over_terminal is None:
            return None
        rd = build_reflection(cat, fixed.over_terminal)
        if rd is None:
            return None
        simple = check_simple(cat, left, right, rd).simple
        if target == "reflective_not_simple":
            if not simple:
                return {"reason": "reflective fs with cartesian class differing"}
            return None
        if not simple:
            return None
        sle = check_semi_left_exact(cat, left, right, rd)
        if not sle.semi_left_exact:
            return {"reason": "simple but a pullback breaks left-class stability"}
        return None
    if target == "non_normal_torsion_theory":
        rep = check_torsion_theory(cat, left, right)
        if not rep.is_torsion_theory or rep.data is None:
            return None
        try:
            normal = check_normal(rep.data).normal
        except Exception:
            return None
        if not normal:
            return {"reason": "torsion theory failing the normality conditions"}
        return None
    raise StructuralError(f"unknown search target {target!r}")


def nonorthogonal_wfs_monoid() -> tuple[FinCat, MorClass, MorClass]:
    """A five-element monoid carrying a wfs that is not orthogonal.

    Found by exhaustive table search: an involution s, an absorbing zero z,
    and two idempotents p, q with all mixed products z.  The classes
    {1, s, p} and {1, s, q} lift against each other, but not uniquely.
    """
    comp = {}
    table = {
        (0, 0): 0, (0, 1): 1, (0, 2): 2, (0, 3): 3, (0, 4): 4,
        (1, 0): 1, (1, 1): 0, (1, 2): 2, (1, 3): 3, (1, 4): 4,
        (2, 0): 2, (2, 1): 2, (2, 2): 2, (2, 3): 2, (2, 4): 2,
        (3, 0): 3, (3, 1): 3, (3, 2): 2, (3, 3): 3, (3, 4): 2,
        (4, 0): 4, (4, 1): 4, (4, 2): 2, (4, 3): 2, (4, 4): 4,
    }
    cat = FinCat(
        n_objects=1,
        dom=(0, 0, 0, 0, 0),
        cod=(0, 0, 0, 0, 0),
        identity=(0,),
        composition=table,
        obj_labels=("X",),
        mor_labels=("one", "s", "z", "p", "q"),
    )
    return cat, MorClass.of(cat, {0, 1, 3}), MorClass.of(cat, {0, 1, 4})


def _seeded_candidates():
    from . import instances
    from .canonical import named_class

    yield nonorthogonal_wfs_monoid()
    pointed2 = instances.make_pointed_sets(2)
    finset2 = instances.make_finset(2)
    for cat in (pointed2, finset2):
        mono = named_class(cat, "Mono")
        epi = named_class(cat, "Epi")
        iso = named_class(cat, "Iso")
        allm = MorClass.of(cat, cat.morphisms())
        yield cat, mono, epi
        yield cat, epi, mono
        yield cat, iso, allm
        yield cat, allm, iso
    div6 = instances.make_finab(6, divisors_only=True)
    e6, m6 = instances.p_primary_candidate(div6, 2)
    yield div6, e6, m6


def run_search(
    target: str,
    budget: int,
    seed: int,
    table_morphisms: int = 4,
    random_rounds: int = 50,
) -> SearchResult:
    """Scan candidate (category, class pair) triples for the target.

    Exit as soon as a witness appears; otherwise exhaust the budget.  The
    candidate order is fixed and the random tail is driven by the seed, so
    results reproduce.
    """
    if target not in SEARCH_TARGETS:
        raise StructuralError(f"unknown search target {target!r}")
    if budget <= 0:
        raise StructuralError("budget must be positive")
    examined = 0
    seen = set()

    def candidates():
        yield from _seeded_candidates()
        for cat in enumerate_categories(table_morphisms):
            for left, right in wfs_pairs(cat):
                yield cat, left, right
        from .instances import random_category

        rng = random.Random(seed)
        for _ in range(random_rounds):
            cat = random_category(rng.randrange(1 << 30))
            for left, right in wfs_pairs(cat):
                yield cat, left, right

    for cat, left, right in candidates():
        if examined >= budget:
            break
        key = canonical_key(cat, (left.members, right.members)) if cat.n_morphisms <= 8 else (
            id(cat),
            frozenset(left.members),
            frozenset(right.members),
        )
        if key in seen:
            continue
        seen.add(key)
        examined += 1
        hit = _predicate(target, cat, left, right)
        if hit is not None:
            doc = catfile.category_to_doc(
                cat, classes={"E": left, "M": right}
            )
            return SearchResult(
                target, SearchWitness(target, doc, hit), examined
            )
    return SearchResult(target, None, examined)
