"""Small combinatorial tables for a single tetrahedron.

Vertices are labelled 0..3, face i is the face opposite vertex i, and a
face gluing carries a permutation of {0,1,2,3} recorded as a 4-tuple p
with p[v] the image of vertex v.  The six edges are indexed so that edge
i and edge 5 - i are opposite.
"""

from __future__ import annotations

from itertools import permutations

Perm = tuple[int, int, int, int]

IDENTITY: Perm = (0, 1, 2, 3)

# Edge i joins EDGES[i]; the opposite edge (no shared vertex) is 5 - i.
EDGES: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

EDGE_INDEX: dict[tuple[int, int], int] = {}
for _i, (_a, _b) in enumerate(EDGES):
    EDGE_INDEX[(_a, _b)] = _i
    EDGE_INDEX[(_b, _a)] = _i

# Vertices of face i, ascending.
FACE_VERTICES: tuple[tuple[int, int, int], ...] = ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2))

# The three edges lying in face i.
FACE_EDGES: tuple[tuple[int, int, int], ...] = tuple(
    tuple(EDGE_INDEX[(a, b)] for a, b in ((f[0], f[1]), (f[0], f[2]), (f[1], f[2])))
    for f in FACE_VERTICES
)

# The three edges meeting vertex v.
VERTEX_EDGES: tuple[tuple[int, int, int], ...] = tuple(
    tuple(i for i, e in enumerate(EDGES) if v in e) for v in range(4)
)

ALL_PERMS: tuple[Perm, ...] = tuple(permutations(range(4)))


def opposite_edge(e: int) -> int:
    return 5 - e


def compose(p: Perm, q: Perm) -> Perm:
    """Return p after q, i.e. v -> p[q[v]]."""
    return (p[q[0]], p[q[1]], p[q[2]], p[q[3]])


def invert(p: Perm) -> Perm:
    out = [0, 0, 0, 0]
    for v in range(4):
        out[p[v]] = v
    return tuple(out)


def sign(p: Perm) -> int:
    """+1 for even permutations, -1 for odd."""
    inv = 0
    for i in range(4):
        for j in range(i + 1, 4):
            if p[i] > p[j]:
                inv += 1
    return -1 if inv & 1 else 1


def image_edge(p: Perm, e: int) -> int:
    a, b = EDGES[e]
    return EDGE_INDEX[(p[a], p[b])]


def perm_to_str(p: Perm) -> str:
    return "".join(str(v) for v in p)


def str_to_perm(s: str) -> Perm:
    if len(s) != 4 or sorted(s) != ["0", "1", "2", "3"]:
        raise ValueError(f"not a permutation of 0123: {s!r}")
    return tuple(int(c) for c in s)
