"""Detection and classification of layered solid tori.

A layered solid torus is built from a one-tetrahedron core, two of whose
faces are folded together so that the free faces form a one-vertex torus
with edge degrees 1, 2 and 3, by repeatedly layering: gluing each new
tetrahedron across both free faces so that one of its edges lands on a
single boundary edge of the complex so far.  Detection runs the same
process in reverse inside an ambient triangulation: core patterns are
recognised by a frozen table of the twelve one-tetrahedron folds whose
free faces form such a torus, and growth follows face gluings outward as
long as they keep performing a layering.  Growth is deterministic, so
each core yields one maximal layered solid torus.

Inside a triangulation coloured by a rank-2 subgroup, the tetrahedra of
a layered solid torus all share one colouring type, either II or IV; a
type II torus has exactly one boundary edge even for the whole subgroup,
and when that edge has ambient degree 4 the torus is the target of the
promotion move.
"""

from __future__ import annotations

from dataclasses import dataclass

from .colouring import TYPE_II, TYPE_IV, TYPE_NAMES, Rank2Colouring
from .errors import MixedTypesError
from .perm import EDGES, EDGE_INDEX, FACE_VERTICES, Perm, invert
from .skeleton import Skeleton
from .triangulation import Triangulation

# The twelve self-gluings (face f onto face h, permutation mapping f's
# labels to h's) of a single tetrahedron whose two free faces form a
# one-vertex torus with edge degrees (1, 2, 3).  Each is orientable, and
# this list is exactly the brute-force filter over all 36 candidates.
CORE_FOLDS: frozenset[tuple[int, int, Perm]] = frozenset(
    {
        (0, 1, (1, 2, 3, 0)),
        (0, 1, (1, 3, 0, 2)),
        (0, 2, (2, 0, 3, 1)),
        (0, 2, (2, 3, 1, 0)),
        (0, 3, (3, 0, 1, 2)),
        (0, 3, (3, 2, 0, 1)),
        (1, 2, (1, 2, 3, 0)),
        (1, 2, (3, 2, 0, 1)),
        (1, 3, (1, 3, 0, 2)),
        (1, 3, (2, 3, 1, 0)),
        (2, 3, (1, 2, 3, 0)),
        (2, 3, (2, 0, 3, 1)),
    }
)


@dataclass(frozen=True)
class LayeredSolidTorus:
    """A maximal layered solid torus found inside a triangulation.

    tets runs from the core outward in layering order.  boundary_faces
    are the two free faces of the abstract complex (they may be glued to
    something, or each other, in the ambient triangulation).
    boundary_edges are the ambient edge classes of the three boundary
    edge classes of the abstract complex, aligned with
    abstract_boundary_degrees and ordered by ascending abstract degree.
    """

    tets: tuple[int, ...]
    core: int
    boundary_faces: tuple[tuple[int, int], tuple[int, int]]
    boundary_edges: tuple[int, int, int]
    abstract_boundary_degrees: tuple[int, int, int]

    @property
    def size(self) -> int:
        return len(self.tets)


class _SlotUnionFind:
    """Edge-slot classes of a sub-complex under a chosen set of gluings."""

    def __init__(self) -> None:
        self.parent: dict[tuple[int, int], tuple[int, int]] = {}

    def _ensure(self, x: tuple[int, int]) -> None:
        if x not in self.parent:
            self.parent[x] = x

    def find(self, x: tuple[int, int]) -> tuple[int, int]:
        self._ensure(x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: tuple[int, int], y: tuple[int, int]) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def _union_across(uf: _SlotUnionFind, t: int, f: int, u: int, p: Perm) -> None:
    vs = FACE_VERTICES[f]
    for i in range(3):
        for j in range(i + 1, 3):
            a, b = vs[i], vs[j]
            uf.union((t, EDGE_INDEX[(a, b)]), (u, EDGE_INDEX[(p[a], p[b])]))


def _grow_from_core(
    tri: Triangulation, core: int, fold: tuple[int, int, Perm]
) -> tuple[list[int], tuple[tuple[int, int], tuple[int, int]],
           list[tuple[int, int]], list[int]]:
    f, h, p = fold
    tets = [core]
    in_tets = {core}
    uf = _SlotUnionFind()
    _union_across(uf, core, f, core, p)
    boundary = tuple((core, g) for g in range(4) if g not in (f, h))
    while True:
        (t1, f1), (t2, f2) = boundary
        g1 = tri.gluings[t1][f1]
        g2 = tri.gluings[t2][f2]
        if g1 is None or g2 is None:
            break
        s1, h1, p1 = g1
        s2, h2, p2 = g2
        if s1 != s2 or s1 in in_tets or h1 == h2:
            break
        sigma = s1
        x, y = (v for v in range(4) if v not in (h1, h2))
        q1, q2 = invert(p1), invert(p2)
        back1 = (t1, EDGE_INDEX[(q1[x], q1[y])])
        back2 = (t2, EDGE_INDEX[(q2[x], q2[y])])
        if uf.find(back1) != uf.find(back2):
            break
        tets.append(sigma)
        in_tets.add(sigma)
        _union_across(uf, t1, f1, sigma, p1)
        _union_across(uf, t2, f2, sigma, p2)
        boundary = ((sigma, x), (sigma, y))

    degree: dict[tuple[int, int], int] = {}
    for t in tets:
        for e in range(6):
            r = uf.find((t, e))
            degree[r] = degree.get(r, 0) + 1
    bdry_classes: set[tuple[int, int]] = set()
    for t, f in boundary:
        vs = FACE_VERTICES[f]
        for i in range(3):
            for j in range(i + 1, 3):
                bdry_classes.add(uf.find((t, EDGE_INDEX[(vs[i], vs[j])])))
    assert len(bdry_classes) == 3, "boundary is not a one-vertex torus"
    ordered = sorted(bdry_classes, key=lambda r: (degree[r], r))
    return tets, boundary, ordered, [degree[r] for r in ordered]


def find_maximal_lsts(tri: Triangulation, sk: Skeleton) -> list[LayeredSolidTorus]:
    """All maximal layered solid tori, one per distinct tetrahedron set.

    Cores are scanned in tetrahedron order and each grows greedily; two
    cores reaching the same tetrahedron set (a one-tetrahedron torus can
    match two fold patterns) are reported once.
    """
    found: list[LayeredSolidTorus] = []
    seen: set[frozenset[int]] = set()
    for t in range(tri.size):
        for f in range(4):
            g = tri.gluings[t][f]
            if g is None or g[0] != t:
                continue
            u, h, p = g
            if f > h:
                continue
            if (f, h, p) not in CORE_FOLDS:
                continue
            tets, boundary, slot_classes, degrees = _grow_from_core(tri, t, (f, h, p))
            key = frozenset(tets)
            if key in seen:
                continue
            seen.add(key)
            ambient = tuple(
                sk.edge_id(slot_t, *EDGES[slot_e])
                for slot_t, slot_e in slot_classes
            )
            found.append(
                LayeredSolidTorus(
                    tuple(tets), t, boundary, ambient, tuple(degrees)
                )
            )
    return found


def classify_lst(col: Rank2Colouring, lst: LayeredSolidTorus) -> str:
    """Colouring type of a layered solid torus: "II" or "IV".

    All tetrahedra of the torus must share one type; a mixture raises
    MixedTypesError.
    """
    types = {col.tet_types[t] for t in lst.tets}
    if types == {TYPE_II}:
        return "II"
    if types == {TYPE_IV}:
        return "IV"
    names = sorted(TYPE_NAMES[ty] for ty in types)
    raise MixedTypesError(f"layered solid torus mixes colouring types {names}")


def even_boundary_edge(col: Rank2Colouring, lst: LayeredSolidTorus) -> int:
    """The unique fully even boundary edge of a type II torus."""
    evens = {e for e in set(lst.boundary_edges) if col.edge_colours[e] == 0}
    assert len(evens) == 1, f"type II torus with {len(evens)} even boundary edges"
    return evens.pop()


def is_II4(col: Rank2Colouring, lst: LayeredSolidTorus) -> bool:
    """True when the torus is type II and its even boundary edge has
    ambient degree 4."""
    if classify_lst(col, lst) != "II":
        return False
    e = even_boundary_edge(col, lst)
    return col.skeleton.edge_degree(e) == 4


def find_degree3_bases(
    sk: Skeleton, lsts: list[LayeredSolidTorus]
) -> list[tuple[int, ...]]:
    """Ambient degree-3 edge classes met by each torus, aligned with lsts."""
    out = []
    for lst in lsts:
        classes = {
            sk.edge_id(t, a, b) for t in lst.tets for a, b in EDGES
        }
        out.append(tuple(sorted(e for e in classes if sk.edge_degree(e) == 3)))
    return out
