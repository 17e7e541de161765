"""Canonical normal surfaces dual to edge colourings.

Each coloured tetrahedron contributes at most one normal disc per
cocycle: a quadrilateral separating the even opposite pair when four
edges are odd, a triangle cutting off the apex when the odd edges form a
vertex star.  Disc boundaries are normal arcs, one per face the disc
meets, each cutting off a single vertex of that face; arcs in glued
faces are identified when their cut-off vertices correspond under the
gluing.  The resulting complex yields Euler characteristics by direct
cell counting, orientability by propagating boundary directions, and
mod-2 edge intersection classes for embedded closed components.

The surface of a rank-2 subgroup is the union of the three member
surfaces, kept as separate layers: arcs only match within a layer, so
parallel sheets through one tetrahedron stay distinct.
"""

from __future__ import annotations

from dataclasses import dataclass

from .colouring import Rank1Colouring, Rank2Colouring
from .perm import EDGES, EDGE_INDEX
from .skeleton import Skeleton


@dataclass(frozen=True)
class NormalDisc:
    layer: int
    tet: int
    kind: str  # "tri" or "quad"
    param: int  # apex vertex for tri, opposite pair index for quad


def _disc_cycle(disc: NormalDisc) -> tuple[list[int], list[int]]:
    """Boundary cycle of a disc inside its tetrahedron.

    Returns (corners, faces): corner i sits on edge corners[i] (an edge
    index 0..5), and the arc from corner i to corner i+1 runs through
    face faces[i].  The cut-off vertex of that arc is the vertex shared
    by the two corner edges.
    """
    if disc.kind == "tri":
        v = disc.param
        a, b, c = (x for x in range(4) if x != v)
        corners = [EDGE_INDEX[(v, a)], EDGE_INDEX[(v, b)], EDGE_INDEX[(v, c)]]
        faces = [c, a, b]
    else:
        a, b = EDGES[disc.param]
        c, d = EDGES[5 - disc.param]
        corners = [
            EDGE_INDEX[(a, c)],
            EDGE_INDEX[(b, c)],
            EDGE_INDEX[(b, d)],
            EDGE_INDEX[(a, d)],
        ]
        faces = [d, a, c, b]
    return corners, faces


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


@dataclass(frozen=True)
class SurfaceComponent:
    disc_indices: tuple[int, ...]
    euler_characteristic: int
    closed: bool
    orientable: bool
    embedded: bool
    dual_class: int | None  # mod-2 edge intersections; closed embedded only

    @property
    def is_sphere(self) -> bool:
        return self.closed and self.orientable and self.euler_characteristic == 2

    def classify(self) -> str:
        if not self.closed:
            word = "orientable" if self.orientable else "non-orientable"
            return f"bounded-{word}-chi-{self.euler_characteristic}"
        if self.orientable:
            return f"orientable-genus-{(2 - self.euler_characteristic) // 2}"
        return f"non-orientable-crosscaps-{2 - self.euler_characteristic}"


@dataclass(frozen=True)
class SurfaceComplex:
    skeleton: Skeleton
    discs: tuple[NormalDisc, ...]
    components: tuple[SurfaceComponent, ...]
    matched_arcs: int
    free_arcs: int

    @property
    def euler_characteristic(self) -> int:
        return sum(c.euler_characteristic for c in self.components)


def _build_complex(sk: Skeleton, discs: list[NormalDisc]) -> SurfaceComplex:
    tri = sk.tri
    cycles = [_disc_cycle(d) for d in discs]

    # Arcs indexed (disc, position); corners indexed (disc, position).
    arc_index: dict[tuple[int, int], int] = {}
    arcs: list[tuple[int, int]] = []
    corner_index: dict[tuple[int, int], int] = {}
    corners: list[tuple[int, int]] = []
    # Lookup: (layer, tet, face, cutoff vertex) -> arc id.  At most one
    # disc of a layer meets a given face cutting off a given vertex.
    by_slot: dict[tuple[int, int, int, int], int] = {}
    for di, (disc, (cs, fs)) in enumerate(zip(discs, cycles)):
        m = len(cs)
        for pos in range(m):
            corner_index[(di, pos)] = len(corners)
            corners.append((di, pos))
        for pos in range(m):
            aid = len(arcs)
            arc_index[(di, pos)] = aid
            arcs.append((di, pos))
            e1, e2 = cs[pos], cs[(pos + 1) % m]
            cutoff = (set(EDGES[e1]) & set(EDGES[e2])).pop()
            key = (disc.layer, disc.tet, fs[pos], cutoff)
            assert key not in by_slot, f"two arcs at {key}"
            by_slot[key] = aid

    def arc_ends(aid: int) -> tuple[int, int]:
        di, pos = arcs[aid]
        m = len(cycles[di][0])
        return corner_index[(di, pos)], corner_index[(di, (pos + 1) % m)]

    def arc_corner_on_edge(aid: int, edge: int) -> int:
        di, pos = arcs[aid]
        cs = cycles[di][0]
        m = len(cs)
        for p in (pos, (pos + 1) % m):
            if cs[p] == edge:
                return corner_index[(di, p)]
        raise AssertionError("arc has no corner on that edge")

    corner_uf = _UnionFind(len(corners))
    disc_uf = _UnionFind(len(discs))
    # Orientation propagation: parity 0 means two glued discs traverse
    # the shared arc oppositely, as compatible orientations must.
    sign_parent = list(range(len(discs)))
    sign_parity = [0] * len(discs)

    def sign_find(x: int) -> tuple[int, int]:
        root = x
        par = 0
        while sign_parent[root] != root:
            par ^= sign_parity[root]
            root = sign_parent[root]
        return root, par

    conflict_discs: set[int] = set()

    def sign_union(x: int, y: int, rel: int) -> None:
        rx, px = sign_find(x)
        ry, py = sign_find(y)
        if rx == ry:
            if (px ^ py) != rel:
                conflict_discs.add(x)
            return
        sign_parent[rx] = ry
        sign_parity[rx] = px ^ py ^ rel

    matched = 0
    free = 0
    matched_of: dict[int, int] = {}
    for di, (disc, (cs, fs)) in enumerate(zip(discs, cycles)):
        m = len(cs)
        for pos in range(m):
            aid = arc_index[(di, pos)]
            if aid in matched_of:
                continue
            t, f = disc.tet, fs[pos]
            g = tri.gluings[t][f]
            if g is None:
                free += 1
                continue
            u, h, p = g
            e1, e2 = cs[pos], cs[(pos + 1) % m]
            cutoff = (set(EDGES[e1]) & set(EDGES[e2])).pop()
            other = by_slot.get((disc.layer, u, h, p[cutoff]))
            if other is None:
                raise ValueError(
                    f"unmatched arc: layer {disc.layer} tet {t} face {f} "
                    f"cutting off vertex {cutoff}"
                )
            matched_of[aid] = other
            matched_of[other] = aid
            matched += 1
            dj = arcs[other][0]
            disc_uf.union(di, dj)
            # Identify corners: the endpoint on edge {cutoff, x} maps to
            # the endpoint on edge {p[cutoff], p[x]}.
            same_direction = None
            for e_here in (e1, e2):
                x = (set(EDGES[e_here]) - {cutoff}).pop()
                e_there = EDGE_INDEX[(p[cutoff], p[x])]
                c_here = arc_corner_on_edge(aid, e_here)
                c_there = arc_corner_on_edge(other, e_there)
                corner_uf.union(c_here, c_there)
                if e_here == cs[pos]:  # start corner of this arc
                    start_there, _ = arc_ends(other)
                    same_direction = c_there == start_there
            assert same_direction is not None
            sign_union(di, dj, 1 if same_direction else 0)

    # Components by disc connectivity.
    comp_of_disc = {di: disc_uf.find(di) for di in range(len(discs))}
    roots = sorted(set(comp_of_disc.values()))
    comp_id = {r: i for i, r in enumerate(roots)}
    n = len(roots)
    disc_lists: list[list[int]] = [[] for _ in range(n)]
    for di in range(len(discs)):
        disc_lists[comp_id[comp_of_disc[di]]].append(di)

    non_orientable = {comp_id[comp_of_disc[di]] for di in conflict_discs}

    # Cell counts per component.
    v_count = [0] * n
    e_count = [0] * n
    f_count = [len(ds) for ds in disc_lists]
    closed = [True] * n
    corner_roots: set[int] = set()
    for ci in range(len(corners)):
        r = corner_uf.find(ci)
        if r not in corner_roots:
            corner_roots.add(r)
            v_count[comp_id[comp_of_disc[corners[r][0]]]] += 1
    for aid, (di, _) in enumerate(arcs):
        c = comp_id[comp_of_disc[di]]
        if aid in matched_of:
            if matched_of[aid] > aid:
                e_count[c] += 1
            elif matched_of[aid] == aid:
                # An arc glued to itself would halve; the cutoff
                # correspondence cannot send an arc to itself because the
                # two faces of a gluing are distinct slots.
                raise AssertionError("arc glued to itself")
        else:
            e_count[c] += 1
            closed[c] = False

    # Mod-2 edge intersections: one per corner cell, on the common
    # ambient edge class of its slots.
    dual = [0] * n
    for r in corner_roots:
        di, pos = corners[r]
        disc = discs[di]
        edge_idx = cycles[di][0][pos]
        a, b = EDGES[edge_idx]
        cls = sk.edge_id(disc.tet, a, b)
        dual[comp_id[comp_of_disc[di]]] ^= 1 << cls

    components = []
    for c in range(n):
        dl = disc_lists[c]
        tets_by_layer: set[tuple[int, int]] = set()
        embedded = True
        for di in dl:
            key = (discs[di].layer, discs[di].tet)
            if key in tets_by_layer:
                embedded = False
            tets_by_layer.add(key)
        orientable = c not in non_orientable
        chi = v_count[c] - e_count[c] + f_count[c]
        components.append(
            SurfaceComponent(
                disc_indices=tuple(dl),
                euler_characteristic=chi,
                closed=closed[c],
                orientable=orientable,
                embedded=embedded,
                dual_class=dual[c] if (closed[c] and embedded) else None,
            )
        )
    components.sort(key=lambda comp: comp.disc_indices)
    return SurfaceComplex(sk, tuple(discs), tuple(components), matched, free)


def _layer_discs(col: Rank1Colouring, layer: int) -> list[NormalDisc]:
    out = []
    for t, (ty, det) in enumerate(zip(col.tet_types, col.tet_detail)):
        if ty == 1:
            out.append(NormalDisc(layer, t, "quad", det))
        elif ty == 2:
            out.append(NormalDisc(layer, t, "tri", det))
    return out


def canonical_dual_surface(col: Rank1Colouring) -> SurfaceComplex:
    """The normal surface dual to a single cocycle."""
    return _build_complex(col.skeleton, _layer_discs(col, 0))


def canonical_quad_surface(col: Rank2Colouring) -> SurfaceComplex:
    """Union of the three member surfaces of a rank-2 subgroup.

    Layers are the three cocycles; components never mix layers.  When
    every tetrahedron is type V this is a complex of quadrilaterals,
    three per tetrahedron in pairwise different positions.
    """
    discs: list[NormalDisc] = []
    for layer, r in enumerate(col.restrictions()):
        discs.extend(_layer_discs(r, layer))
    return _build_complex(col.skeleton, discs)


def check_arc_matching(col: Rank1Colouring) -> tuple[int, int]:
    """Count (matched, free) arcs of the dual surface.

    Raises ValueError when an arc in an interior face has no partner,
    which cannot happen for a cocycle colouring.
    """
    complex_ = canonical_dual_surface(col)
    return complex_.matched_arcs, complex_.free_arcs
