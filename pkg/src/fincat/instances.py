"""Concrete category generators at desk scale.

Each generator enumerates objects up to isomorphism with canonical
representatives, enumerates every morphism, and assembles the composition
table from the semantic data (function graphs, homomorphism matrices,
vertex and edge maps).  The semantic data stays attached to the category
as its ``backend`` so class computations and test oracles can consult it.

Generated tables are valid by construction; ``validate_category`` is still
run over all of them in the test suite.
"""

from __future__ import annotations

import itertools
import math
import os
import random
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    FinCat,
    MorClass,
    ResourceBudgetError,
    StructuralError,
    UnsupportedStructureError,
)
from . import snf

DEFAULT_CAPS = {
    "finset": 3,
    "finab": 8,
    "graph_v": 2,
    "graph_e": 2,
    "pointed": 3,
}


def _cap(name: str) -> int:
    env = os.environ.get(f"FINCAT_CAP_{name.upper()}")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise StructuralError(f"bad FINCAT_CAP_{name.upper()} value {env!r}")
    return DEFAULT_CAPS[name]


def _check_cap(name: str, value: int, override_cap: bool) -> None:
    limit = _cap(name)
    if value > limit and not override_cap:
        raise ResourceBudgetError(
            f"{name} bound {value} exceeds cap {limit}; "
            f"pass override_cap=True or raise FINCAT_CAP_{name.upper()} "
            "to acknowledge the cost"
        )


def _assemble(n_objects, obj_labels, mors, identity_data, compose_data, backend):
    """Build a FinCat from semantic morphism data.

    ``mors`` is a sorted list of (dom, cod, data) triples; morphism ids are
    list positions.  ``identity_data(o)`` gives the identity datum of object
    ``o`` and ``compose_data(gtriple, ftriple)`` the datum of the composite,
    receiving whole triples so that dimension-degenerate data stays typed.
    """
    index = {m: i for i, m in enumerate(mors)}
    dom = tuple(m[0] for m in mors)
    cod = tuple(m[1] for m in mors)
    identity = tuple(index[(o, o, identity_data(o))] for o in range(n_objects))
    by_dom: list[list[int]] = [[] for _ in range(n_objects)]
    for i, m in enumerate(mors):
        by_dom[m[0]].append(i)
    composition = {}
    for f, ftriple in enumerate(mors):
        fd, fc, _ = ftriple
        for g in by_dom[fc]:
            gtriple = mors[g]
            composition[(g, f)] = index[(fd, gtriple[1], compose_data(gtriple, ftriple))]
    return FinCat(
        n_objects=n_objects,
        dom=dom,
        cod=cod,
        identity=identity,
        composition=composition,
        obj_labels=tuple(obj_labels),
        mor_labels=tuple(f"m{i}" for i in range(len(mors))),
        backend=backend,
    )


# ---------------------------------------------------------------------------
# finite sets and pointed finite sets


@dataclass(frozen=True)
class FinSetBackend:
    kind: str
    sizes: tuple[int, ...]
    graphs: tuple[tuple[int, ...], ...]

    def is_injective(self, m: int) -> bool:
        g = self.graphs[m]
        return len(set(g)) == len(g)

    def is_surjective(self, cat: FinCat, m: int) -> bool:
        return set(self.graphs[m]) == set(range(self.sizes[cat.cod[m]]))


def make_finset(n_max: int, override_cap: bool = False) -> FinCat:
    """Skeletal finite sets of size 0..n_max with all functions."""
    _check_cap("finset", n_max, override_cap)
    sizes = list(range(n_max + 1))
    mors = []
    for a, sa in enumerate(sizes):
        for b, sb in enumerate(sizes):
            for graph in itertools.product(range(sb), repeat=sa):
                mors.append((a, b, graph))
    mors.sort()
    backend = FinSetBackend("finset", tuple(sizes), tuple(m[2] for m in mors))
    return _assemble(
        len(sizes),
        [str(s) for s in sizes],
        mors,
        lambda o: tuple(range(sizes[o])),
        lambda g, f: tuple(g[2][x] for x in f[2]),
        backend,
    )


def make_pointed_sets(n_max: int, override_cap: bool = False) -> FinCat:
    """Skeletal pointed finite sets of size 1..n_max, basepoint 0."""
    _check_cap("pointed", n_max, override_cap)
    sizes = list(range(1, n_max + 1))
    mors = []
    for a, sa in enumerate(sizes):
        for b, sb in enumerate(sizes):
            for rest in itertools.product(range(sb), repeat=sa - 1):
                mors.append((a, b, (0,) + rest))
    mors.sort()
    backend = FinSetBackend("pointed", tuple(sizes), tuple(m[2] for m in mors))
    return _assemble(
        len(sizes),
        [f"P{s}" for s in sizes],
        mors,
        lambda o: tuple(range(sizes[o])),
        lambda g, f: tuple(g[2][x] for x in f[2]),
        backend,
    )


# ---------------------------------------------------------------------------
# directed multigraphs


@dataclass(frozen=True)
class GraphObject:
    n_vertices: int
    edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class GraphBackend:
    kind: str
    graphs: tuple[GraphObject, ...]
    maps: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    def is_vertex_surjective(self, cat: FinCat, m: int) -> bool:
        h = self.graphs[cat.cod[m]]
        return set(self.maps[m][0]) == set(range(h.n_vertices))

    def is_full(self, cat: FinCat, m: int) -> bool:
        """Every edge between any two image vertices lifts to the preimages."""
        g = self.graphs[cat.dom[m]]
        h = self.graphs[cat.cod[m]]
        vmap, emap = self.maps[m]
        for a in range(g.n_vertices):
            for b in range(g.n_vertices):
                for j, (hs, ht) in enumerate(h.edges):
                    if (hs, ht) != (vmap[a], vmap[b]):
                        continue
                    if not any(
                        g.edges[k] == (a, b) and emap[k] == j
                        for k in range(len(g.edges))
                    ):
                        return False
        return True

    def full_vertex_surjective(self, cat: FinCat) -> frozenset[int]:
        return frozenset(
            m
            for m in cat.morphisms()
            if self.is_vertex_surjective(cat, m) and self.is_full(cat, m)
        )


def _canonical_graph(n: int, edges) -> tuple[int, tuple[tuple[int, int], ...]]:
    best = None
    for perm in itertools.permutations(range(n)):
        relabeled = tuple(sorted((perm[s], perm[t]) for s, t in edges))
        if best is None or relabeled < best:
            best = relabeled
    return (n, best if best is not None else ())


def make_fingraph(v_max: int, e_max: int, override_cap: bool = False) -> FinCat:
    """Directed multigraphs with bounded vertices and edges, up to iso.

    A morphism is a vertex map plus an edge map compatible with sources
    and targets, matching the presheaf description of multigraphs.
    """
    _check_cap("graph_v", v_max, override_cap)
    _check_cap("graph_e", e_max, override_cap)
    seen = set()
    graphs = []
    for v in range(v_max + 1):
        slots = [(s, t) for s in range(v) for t in range(v)]
        for count in range(e_max + 1):
            for combo in itertools.combinations_with_replacement(slots, count):
                key = _canonical_graph(v, combo)
                if key not in seen:
                    seen.add(key)
                    graphs.append(GraphObject(key[0], key[1]))
    graphs.sort(key=lambda g: (g.n_vertices, len(g.edges), g.edges))

    mors = []
    for a, g in enumerate(graphs):
        for b, h in enumerate(graphs):
            for vmap in itertools.product(range(h.n_vertices), repeat=g.n_vertices):
                choices = []
                ok = True
                for s, t in g.edges:
                    cands = [
                        j
                        for j, (hs, ht) in enumerate(h.edges)
                        if (hs, ht) == (vmap[s], vmap[t])
                    ]
                    if not cands:
                        ok = False
                        break
                    choices.append(cands)
                if not ok:
                    continue
                for emap in itertools.product(*choices):
                    mors.append((a, b, (vmap, emap)))
    mors.sort()
    backend = GraphBackend("fingraph", tuple(graphs), tuple(m[2] for m in mors))
    return _assemble(
        len(graphs),
        [f"G{i}" for i in range(len(graphs))],
        mors,
        lambda o: (
            tuple(range(graphs[o].n_vertices)),
            tuple(range(len(graphs[o].edges))),
        ),
        lambda g, f: (
            tuple(g[2][0][x] for x in f[2][0]),
            tuple(g[2][1][x] for x in f[2][1]),
        ),
        backend,
    )


# ---------------------------------------------------------------------------
# finite abelian groups


@dataclass(frozen=True)
class FinAbBackend:
    kind: str
    groups: tuple[tuple[int, ...], ...]
    matrices: tuple[tuple[tuple[int, ...], ...], ...]

    def group_index(self, factors) -> int:
        return self.groups.index(tuple(factors))

    def order(self, obj: int) -> int:
        return math.prod(self.groups[obj])

    def elements(self, obj: int):
        return itertools.product(*(range(d) for d in self.groups[obj]))

    def apply(self, cat: FinCat, m: int, elem) -> tuple[int, ...]:
        tgt = self.groups[cat.cod[m]]
        mat = self.matrices[m]
        return tuple(
            sum(mat[j][i] * elem[i] for i in range(len(elem))) % tgt[j]
            for j in range(len(tgt))
        )

    def element_order(self, obj: int, elem) -> int:
        out = 1
        for d, x in zip(self.groups[obj], elem):
            out = math.lcm(out, d // math.gcd(d, x))
        return out

    def locate(self, cat: FinCat, a: int, b: int, matrix) -> int:
        """Morphism id of the given reduced matrix from object a to b."""
        key = tuple(tuple(row) for row in matrix)
        for m in cat.hom(a, b):
            if self.matrices[m] == key:
                return m
        raise StructuralError("matrix is not a stored homomorphism")

    def kernel_oracle(self, cat: FinCat, f: int):
        """Kernel via presentation matrices: (factors, inclusion morphism id)."""
        a, b = cat.dom[f], cat.cod[f]
        d = list(self.groups[a])
        e = list(self.groups[b])
        n, m = len(d), len(e)
        if n == 0:
            zero = self.group_index(())
            return (), cat.identity[a] if a == zero else cat.hom(zero, a)[0]
        mat = [list(row) for row in self.matrices[f]]
        stacked = [
            mat[j] + [e[j] if k == j else 0 for k in range(m)] for j in range(m)
        ]
        if m == 0:
            # No target factors: every lattice point is a solution.
            gens = [[1 if k == i else 0 for k in range(n)] for i in range(n)]
        else:
            gens = [sol[:n] for sol in snf.integer_nullspace(stacked)]
        gens += [[d[i] if k == i else 0 for k in range(n)] for i in range(n)]
        basis = snf.column_lattice_basis(gens, n)
        bmat = [[col[i] for col in basis] for i in range(n)]
        binv = snf.exact_inverse(bmat)
        w = []
        for i in range(n):
            row = []
            for j in range(n):
                val = binv[i][j] * d[j]
                assert val.denominator == 1, "kernel lattice is not full rank"
                row.append(int(val))
            w.append(row)
        u, v, s = snf.smith_normal_form(w)
        uinv = snf.integer_inverse(u)
        cols = snf.mat_mul(bmat, uinv)
        keep = [i for i in range(n) if s[i][i] != 1]
        factors = tuple(s[i][i] for i in keep)
        incl = [tuple(cols[row][i] % d[row] for i in keep) for row in range(n)]
        return factors, self.locate(cat, self.group_index(factors), a, incl)

    def cokernel_oracle(self, cat: FinCat, f: int):
        """Cokernel via presentation matrices: (factors, projection morphism id)."""
        a, b = cat.dom[f], cat.cod[f]
        d = list(self.groups[a])
        e = list(self.groups[b])
        n, m = len(d), len(e)
        if m == 0:
            zero = self.group_index(())
            return (), cat.identity[b] if b == zero else cat.hom(b, zero)[0]
        mat = [list(row) for row in self.matrices[f]]
        stacked = [
            mat[j] + [e[j] if k == j else 0 for k in range(m)] for j in range(m)
        ]
        u, v, s = snf.smith_normal_form(stacked)
        keep = [i for i in range(m) if s[i][i] != 1]
        factors = tuple(s[i][i] for i in keep)
        proj = [tuple(u[i][col] % s[i][i] for col in range(m)) for i in keep]
        return factors, self.locate(cat, b, self.group_index(factors), proj)


def _invariant_factor_lists(order_max: int, divisors_only: bool):
    """Canonical invariant factor chains with bounded group order."""
    chains = [()]

    def extend(prefix, order):
        start = prefix[-1] if prefix else 2
        for nxt in range(start, order_max + 1):
            if nxt < 2 or (prefix and nxt % prefix[-1] != 0):
                continue
            if order * nxt > order_max:
                continue
            chain = prefix + (nxt,)
            chains.append(chain)
            extend(chain, order * nxt)

    extend((), 1)
    result = [
        c
        for c in chains
        if not divisors_only or order_max % math.prod(c) == 0
    ]
    result.sort(key=lambda c: (math.prod(c), len(c), c))
    return result


def _finab_label(factors) -> str:
    if not factors:
        return "0"
    return "x".join(f"Z{d}" for d in factors)


def make_finab(
    order_max: int, divisors_only: bool = False, override_cap: bool = False
) -> FinCat:
    """Finite abelian groups in invariant factor form with all homomorphisms.

    Objects are divisibility chains d1 | d2 | ... with group order at most
    ``order_max`` (exactly the divisors of it when ``divisors_only``, which
    keeps the instance closed under the fibre products the reflector
    machinery needs).  A morphism is the reduced integer matrix whose
    column i is the image of the i-th source generator; entry (j, i)
    ranges over the multiples of e_j / gcd(d_i, e_j) modulo e_j.
    """
    _check_cap("finab", order_max, override_cap)
    groups = _invariant_factor_lists(order_max, divisors_only)
    mors = []
    for a, d in enumerate(groups):
        for b, e in enumerate(groups):
            per_entry = []
            for j in range(len(e)):
                for i in range(len(d)):
                    step = e[j] // math.gcd(d[i], e[j])
                    per_entry.append(
                        tuple(step * k for k in range(math.gcd(d[i], e[j])))
                    )
            for flat in itertools.product(*per_entry):
                matrix = tuple(
                    tuple(flat[j * len(d) + i] for i in range(len(d)))
                    for j in range(len(e))
                )
                mors.append((a, b, matrix))
    mors.sort()

    def compose_data(gt, ft):
        src_dims = len(groups[ft[0]])
        inner = len(groups[ft[1]])
        tgt = groups[gt[1]]
        g, f = gt[2], ft[2]
        return tuple(
            tuple(
                sum(g[j][k] * f[k][i] for k in range(inner)) % tgt[j]
                for i in range(src_dims)
            )
            for j in range(len(tgt))
        )

    def identity_data(o):
        d = groups[o]
        return tuple(
            tuple(1 if i == j else 0 for i in range(len(d))) for j in range(len(d))
        )

    backend = FinAbBackend("finab", tuple(groups), tuple(m[2] for m in mors))
    return _assemble(
        len(groups),
        [_finab_label(g) for g in groups],
        mors,
        identity_data,
        compose_data,
        backend,
    )


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def p_primary_candidate(cat: FinCat, p: int) -> tuple[MorClass, MorClass]:
    """Class pair (E, M) for the p-torsion theory of a finab instance.

    E holds the morphisms restricting to a bijection on the elements of
    order coprime to p, M those restricting to a bijection on the elements
    of p-power order, both read off the matrix block structure elementwise.
    Returned unverified; the checkers decide what the pair actually is.
    """
    backend = cat.backend
    if not isinstance(backend, FinAbBackend):
        raise UnsupportedStructureError("p-primary candidates need a finab backend")
    if p < 2 or any(p % k == 0 for k in range(2, p)):
        raise StructuralError(f"{p} is not prime")

    def p_part(obj):
        return {
            el
            for el in backend.elements(obj)
            if _is_p_power(backend.element_order(obj, el), p)
        }

    def coprime_part(obj):
        return {
            el
            for el in backend.elements(obj)
            if backend.element_order(obj, el) % p != 0
        }

    e_members = []
    m_members = []
    for m in cat.morphisms():
        a, b = cat.dom[m], cat.cod[m]
        src = sorted(coprime_part(a))
        images = [backend.apply(cat, m, el) for el in src]
        if len(set(images)) == len(src) and set(images) == coprime_part(b):
            e_members.append(m)
        src = sorted(p_part(a))
        images = [backend.apply(cat, m, el) for el in src]
        if len(set(images)) == len(src) and set(images) == p_part(b):
            m_members.append(m)
    return MorClass.of(cat, e_members), MorClass.of(cat, m_members)


# ---------------------------------------------------------------------------
# random categories


def random_category(
    seed: int, max_objects: int = 3, max_morphisms: int = 16
) -> FinCat:
    """Seed-deterministic random category of sets and composition-closed maps.

    Generators are random functions between random small sets; closing
    under composition keeps associativity automatic, so every output is a
    valid category.
    """
    rng = random.Random(seed)
    sizes = [rng.randint(0, 2) for _ in range(rng.randint(1, max_objects))]

    def close(mor_set):
        mors = set(mor_set)
        grew = True
        while grew:
            grew = False
            snapshot = sorted(mors)
            for (fd, fc, fg) in snapshot:
                for (gd, gc, gg) in snapshot:
                    if gd != fc:
                        continue
                    comp = (fd, gc, tuple(gg[x] for x in fg))
                    if comp not in mors:
                        mors.add(comp)
                        grew = True
        return mors

    accepted = {(o, o, tuple(range(s))) for o, s in enumerate(sizes)}
    for _ in range(rng.randint(1, 5)):
        a = rng.randrange(len(sizes))
        b = rng.randrange(len(sizes))
        if sizes[b] == 0 and sizes[a] > 0:
            continue
        graph = tuple(rng.randrange(sizes[b]) for _ in range(sizes[a]))
        candidate = close(accepted | {(a, b, graph)})
        if len(candidate) <= max_morphisms:
            accepted = candidate

    mors = sorted(accepted)
    backend = FinSetBackend("random", tuple(sizes), tuple(m[2] for m in mors))
    return _assemble(
        len(sizes),
        [f"S{i}_{s}" for i, s in enumerate(sizes)],
        mors,
        lambda o: tuple(range(sizes[o])),
        lambda g, f: tuple(g[2][x] for x in f[2]),
        backend,
    )


def import_table(doc: dict) -> FinCat:
    """Import a category file document; the format lives in catfile."""
    from . import catfile

    return catfile.category_from_doc(doc)
