"""Identification classes of the faces, edges and vertices of a triangulation.

Edges carry an orientation sign while classes are built, so an edge that
gets identified with itself in reverse is detected and rejected: every
colouring and surface construction downstream needs well-defined edge
loops.  Class numbering is deterministic, by lowest participating slot.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidEdgeError, NotClosedError, NonOrientableError
from .perm import EDGES, EDGE_INDEX, FACE_VERTICES, sign
from .triangulation import Triangulation


class _ParityUnionFind:
    """Union-find tracking a Z2 offset of each element to its root."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.parity = [0] * size

    def find(self, x: int) -> tuple[int, int]:
        root = x
        par = 0
        while self.parent[root] != root:
            par ^= self.parity[root]
            root = self.parent[root]
        result = par
        # Path compression, rewriting parities relative to the root.
        node, p = x, result
        while self.parent[node] != node:
            nxt = self.parent[node]
            nxt_p = p ^ self.parity[node]
            self.parent[node] = root
            self.parity[node] = p
            node, p = nxt, nxt_p
        return root, result

    def union(self, x: int, y: int, rel: int) -> bool:
        """Merge with parity(x) ^ parity(y) = rel.  False on a conflict."""
        rx, px = self.find(x)
        ry, py = self.find(y)
        if rx == ry:
            return (px ^ py) == rel
        self.parent[ry] = rx
        self.parity[ry] = px ^ py ^ rel
        return True


def _classes_from_uf(uf: _ParityUnionFind, size: int) -> tuple[list[int], list[list[int]]]:
    """Deterministic ids: classes numbered by their lowest slot."""
    by_root: dict[int, list[int]] = {}
    for slot in range(size):
        root, _ = uf.find(slot)
        by_root.setdefault(root, []).append(slot)
    groups = sorted(by_root.values(), key=lambda g: g[0])
    ids = [0] * size
    for cid, group in enumerate(groups):
        for slot in group:
            ids[slot] = cid
    return ids, groups


@dataclass(frozen=True)
class Skeleton:
    """Quotient cell structure of a triangulation."""

    tri: Triangulation
    edge_class: tuple[int, ...]        # slot 6*tet + edge -> class id
    edge_classes: tuple[tuple[int, ...], ...]
    vertex_class: tuple[int, ...]      # slot 4*tet + vertex -> class id
    vertex_classes: tuple[tuple[int, ...], ...]
    face_class: tuple[int, ...]        # slot 4*tet + face -> class id
    face_classes: tuple[tuple[int, ...], ...]

    @property
    def tet_count(self) -> int:
        return self.tri.size

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_classes)

    @property
    def edge_count(self) -> int:
        return len(self.edge_classes)

    @property
    def face_count(self) -> int:
        return len(self.face_classes)

    @property
    def euler_characteristic(self) -> int:
        return self.vertex_count - self.edge_count + self.face_count - self.tet_count

    def edge_degree(self, cid: int) -> int:
        return len(self.edge_classes[cid])

    @property
    def edge_degrees(self) -> tuple[int, ...]:
        return tuple(len(g) for g in self.edge_classes)

    def degree_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for g in self.edge_classes:
            hist[len(g)] = hist.get(len(g), 0) + 1
        return dict(sorted(hist.items()))

    def edge_id(self, tet: int, a: int, b: int) -> int:
        """Class id of the edge of `tet` joining vertex labels a and b."""
        return self.edge_class[6 * tet + EDGE_INDEX[(a, b)]]

    def edge_endpoints(self, cid: int) -> tuple[int, int]:
        """Vertex class ids of the two ends, taken from the lowest slot."""
        slot = self.edge_classes[cid][0]
        tet, e = divmod(slot, 6)
        a, b = EDGES[e]
        return self.vertex_class[4 * tet + a], self.vertex_class[4 * tet + b]

    def face_edges(self, fid: int) -> tuple[int, int, int]:
        """Edge class ids around a face, with multiplicity."""
        slot = self.face_classes[fid][0]
        tet, f = divmod(slot, 4)
        u, v, w = FACE_VERTICES[f]
        return (self.edge_id(tet, u, v), self.edge_id(tet, u, w), self.edge_id(tet, v, w))


def compute_skeleton(tri: Triangulation) -> Skeleton:
    """Build all identification classes.

    Raises InvalidEdgeError when a gluing cycle identifies an edge with
    itself reversing orientation.
    """
    n = tri.size
    edges = _ParityUnionFind(6 * n)
    verts = _ParityUnionFind(4 * n)

    for t, row in enumerate(tri.gluings):
        for f, g in enumerate(row):
            if g is None:
                continue
            u, h, p = g
            if (u, h) < (t, f):
                continue  # each glued pair once
            for v in FACE_VERTICES[f]:
                verts.union(4 * t + v, 4 * u + p[v], 0)
            for a, b in ((FACE_VERTICES[f][0], FACE_VERTICES[f][1]),
                         (FACE_VERTICES[f][0], FACE_VERTICES[f][2]),
                         (FACE_VERTICES[f][1], FACE_VERTICES[f][2])):
                e = EDGE_INDEX[(a, b)]
                ia, ib = p[a], p[b]
                e2 = EDGE_INDEX[(ia, ib)]
                rel = 0 if (a < b) == (ia < ib) else 1
                if not edges.union(6 * t + e, 6 * u + e2, rel):
                    raise InvalidEdgeError(
                        f"edge {EDGES[e]} of tetrahedron {t} is identified with itself "
                        "orientation-reversingly"
                    )

    edge_ids, edge_groups = _classes_from_uf(edges, 6 * n)
    vert_ids, vert_groups = _classes_from_uf(verts, 4 * n)

    face_ids = [0] * (4 * n)
    face_groups: list[list[int]] = []
    for t in range(n):
        for f in range(4):
            slot = 4 * t + f
            g = tri.gluings[t][f]
            if g is not None and (g[0], g[1]) < (t, f):
                continue
            group = [slot] if g is None else sorted([slot, 4 * g[0] + g[1]])
            face_groups.append(group)
    face_groups.sort(key=lambda grp: grp[0])
    for fid, group in enumerate(face_groups):
        for slot in group:
            face_ids[slot] = fid

    return Skeleton(
        tri=tri,
        edge_class=tuple(edge_ids),
        edge_classes=tuple(tuple(g) for g in edge_groups),
        vertex_class=tuple(vert_ids),
        vertex_classes=tuple(tuple(g) for g in vert_groups),
        face_class=tuple(face_ids),
        face_classes=tuple(tuple(g) for g in face_groups),
    )


def orientation_signs(tri: Triangulation) -> tuple[int, ...]:
    """Per-tetrahedron signs making every gluing orientation-coherent.

    A gluing permutation between coherently oriented tetrahedra must be
    orientation-reversing on labels, so signs propagate by
    sign(other) = -sign(perm) * sign(this).  Raises NonOrientableError,
    with a closed witness path of (tet, face) hops, when no assignment
    exists.  Boundary faces are simply never crossed.
    """
    n = tri.size
    signs = [0] * n
    parent: dict[int, tuple[int, int]] = {}
    for start in range(n):
        if signs[start] != 0:
            continue
        signs[start] = 1
        queue = [start]
        while queue:
            t = queue.pop()
            for f, g in enumerate(tri.gluings[t]):
                if g is None:
                    continue
                u, _, p = g
                want = -sign(p) * signs[t]
                if signs[u] == 0:
                    signs[u] = want
                    parent[u] = (t, f)
                    queue.append(u)
                elif signs[u] != want:
                    witness = [(t, f)]
                    for end in (t, u):
                        node = end
                        while node in parent:
                            pt, pf = parent[node]
                            witness.append((pt, pf))
                            node = pt
                    raise NonOrientableError(
                        f"gluing of tetrahedron {t} face {f} closes an "
                        "orientation-reversing cycle",
                        witness=witness,
                    )
    return tuple(signs)


def check_closed_orientable(tri: Triangulation) -> tuple[int, ...]:
    """Verify the standing hypothesis for closed-manifold operations.

    Orientability is established first, so a non-orientable gluing
    pattern is reported as such even when boundary faces are present
    too.  Returns the orientation assignment.
    """
    signs = orientation_signs(tri)
    missing = tri.boundary_faces()
    if missing:
        raise NotClosedError(f"{len(missing)} boundary faces, first {missing[0]}")
    sk = compute_skeleton(tri)
    if sk.euler_characteristic != 0:
        raise NotClosedError(
            "vertex links are not all spheres "
            f"(V-E+F-T = {sk.euler_characteristic}, expected 0)"
        )
    return signs
