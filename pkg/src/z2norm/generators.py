"""Constructors for the triangulation families used throughout.

twisted_layered_loop(k) builds the k-tetrahedron one-vertex closed
orientable triangulation obtained by layering k tetrahedra in a cycle
and closing up with an orientation-twisted identification.  Its edge
classes are one central edge of degree 2k (the top/bottom circle, both
boundary circles of the starting annulus become this single loop) and k
edges of degree 4.

layered_solid_torus(seq) builds a one-vertex solid torus: a single
tetrahedron with two of its faces glued to each other, then one
tetrahedron layered per entry of seq onto the two-triangle torus
boundary.
"""

from __future__ import annotations

from .errors import BadParameterError, InvalidEdgeError
from .perm import ALL_PERMS, EDGE_INDEX, FACE_VERTICES, Perm, opposite_edge
from .skeleton import Skeleton, compute_skeleton
from .triangulation import GluingBuilder, Triangulation

# Chain step: gluing tetrahedron m+1 onto tetrahedron m.  In each
# tetrahedron the edge 01 is the layering edge, 03 and 12 form the next
# edge, 23 the one after, 02 the top circle and 13 the bottom circle.
_CHAIN_FACE_3: Perm = (0, 3, 2, 1)   # face 3 of m+1 onto face 1 of m
_CHAIN_FACE_2: Perm = (2, 1, 0, 3)   # face 2 of m+1 onto face 0 of m

# Closing step: the two free faces of tetrahedron 0 onto those of the
# last tetrahedron, reversing the layering edges and the two circles.
_CLOSE_FACE_3: Perm = (1, 2, 3, 0)   # face 3 of 0 onto face 0 of k-1
_CLOSE_FACE_2: Perm = (3, 0, 1, 2)   # face 2 of 0 onto face 1 of k-1

# One-tetrahedron solid torus: face 3 folded onto face 2.
_CORE_FOLD: Perm = (3, 0, 1, 2)


def twisted_layered_loop(k: int) -> Triangulation:
    """Closed orientable loop of k layered tetrahedra, k >= 1."""
    if k < 1:
        raise BadParameterError(f"loop length must be at least 1, got {k}")
    b = GluingBuilder(k)
    for m in range(k - 1):
        b.join(m + 1, 3, m, 1, _CHAIN_FACE_3)
        b.join(m + 1, 2, m, 0, _CHAIN_FACE_2)
    b.join(0, 3, k - 1, 0, _CLOSE_FACE_3)
    b.join(0, 2, k - 1, 1, _CLOSE_FACE_2)
    return b.build()


def loop_edge_ids(sk: Skeleton, k: int) -> tuple[int, tuple[int, ...]]:
    """(central edge class, layer edge classes 1..k) of a generated loop."""
    central = sk.edge_id(0, 0, 2)
    layers = tuple(sk.edge_id(i, 0, 1) for i in range(k))
    return central, layers


def explicit_duals(tri: Triangulation, k: int):
    """The three spanning cocycles of an even-length generated loop.

    Values per edge class: the first is odd exactly on the k layer
    edges; the second is odd on the central edge and the odd-indexed
    layer edges; the third is their sum.  Each is verified against all
    face relations before being returned.
    """
    if k < 2 or k % 2:
        raise BadParameterError(f"spanning cocycles need even loop length, got {k}")
    if tri.size != k:
        raise BadParameterError("triangulation does not match the stated length")
    sk = compute_skeleton(tri)
    central, layers = loop_edge_ids(sk, k)
    e = sk.edge_count
    phi1 = [0] * e
    phi2 = [0] * e
    phi1[central] = 0
    phi2[central] = 1
    for i, cid in enumerate(layers, start=1):
        phi1[cid] = 1
        phi2[cid] = i % 2
    phi3 = [a ^ b for a, b in zip(phi1, phi2)]
    for phi in (phi1, phi2, phi3):
        for fid in range(sk.face_count):
            e1, e2, e3 = sk.face_edges(fid)
            if phi[e1] ^ phi[e2] ^ phi[e3]:
                raise InvalidEdgeError("face relation violated by explicit cocycle")
    return tuple(phi1), tuple(phi2), tuple(phi3)


def _boundary_torus_edges(tri: Triangulation, sk: Skeleton,
                          faces: tuple[tuple[int, int], tuple[int, int]]):
    """Edge classes on a two-triangle boundary torus, or None if the two
    free faces do not form one (three shared edge classes, one vertex)."""
    (t1, f1), (t2, f2) = faces
    es1 = {sk.edge_id(t1, a, b) for a, b in _face_edge_pairs(f1)}
    es2 = {sk.edge_id(t2, a, b) for a, b in _face_edge_pairs(f2)}
    if es1 != es2 or len(es1) != 3:
        return None
    vs = {sk.vertex_class[4 * t1 + v] for v in FACE_VERTICES[f1]}
    if len(vs) != 1:
        return None
    return es1


def _face_edge_pairs(f: int):
    u, v, w = FACE_VERTICES[f]
    return ((u, v), (u, w), (v, w))


def layered_solid_torus(seq: list[int] | tuple[int, ...]) -> Triangulation:
    """Solid torus built by layering; seq entries pick the boundary edge.

    Entry 0 layers onto the boundary edge of lowest degree in the
    current complex, entry 2 onto the highest; the three boundary edge
    degrees are always pairwise distinct so the choice is unambiguous.
    """
    seq = tuple(seq)
    for step, choice in enumerate(seq):
        if choice not in (0, 1, 2):
            raise BadParameterError(f"step {step}: boundary edge choice must be 0, 1 or 2")

    n = 1 + len(seq)
    rows: list[list] = [[None] * 4 for _ in range(n)]

    def set_join(t, f, u, h, p):
        rows[t][f] = (u, h, p)
        inv = [0] * 4
        for i in range(4):
            inv[p[i]] = i
        rows[u][h] = (t, f, tuple(inv))

    set_join(0, 3, 0, 2, _CORE_FOLD)
    bnd = ((0, 0), (0, 1))

    for step, choice in enumerate(seq):
        partial = Triangulation([r[:] for r in rows[: step + 1]])
        sk = compute_skeleton(partial)
        torus = _boundary_torus_edges(partial, sk, bnd)
        if torus is None:
            raise BadParameterError("boundary lost its two-triangle torus form")
        ranked = sorted(torus, key=lambda cid: (sk.edge_degree(cid), cid))
        target = ranked[choice]
        new = step + 1
        placement = _layer_placements(partial, sk, bnd, target)
        if not placement:
            raise BadParameterError(f"step {step}: no valid layering onto that edge")
        p3, p2 = placement[0]
        set_join(new, 3, bnd[0][0], bnd[0][1], p3)
        set_join(new, 2, bnd[1][0], bnd[1][1], p2)
        bnd = ((new, 0), (new, 1))

    return Triangulation(rows)


def _layer_placements(partial: Triangulation, sk: Skeleton, bnd, target: int):
    """Gluings of a fresh tetrahedron's faces 3 and 2 onto the two
    boundary faces carrying its 01 edge onto `target` on both, filtered
    to those whose result still has valid edges and a torus boundary."""
    (t1, f1), (t2, f2) = bnd
    out = []
    for p3 in ALL_PERMS:
        if p3[3] != f1 or sk.edge_id(t1, p3[0], p3[1]) != target:
            continue
        for p2 in ALL_PERMS:
            if p2[2] != f2 or sk.edge_id(t2, p2[0], p2[1]) != target:
                continue
            rows = [list(r) for r in partial.gluings] + [[None] * 4]
            new = partial.size
            inv3 = tuple(p3.index(i) for i in range(4))
            inv2 = tuple(p2.index(i) for i in range(4))
            rows[new][3] = (t1, f1, p3)
            rows[t1][f1] = (new, 3, inv3)
            rows[new][2] = (t2, f2, p2)
            rows[t2][f2] = (new, 2, inv2)
            try:
                cand = Triangulation(rows)
                csk = compute_skeleton(cand)
            except InvalidEdgeError:
                continue
            if _boundary_torus_edges(cand, csk, ((new, 0), (new, 1))) is None:
                continue
            out.append((p3, p2))
    return out
