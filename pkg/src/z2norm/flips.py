"""4-4 moves on degree-4 edges, cocycle transport, and promotion.

A degree-4 edge whose four slots lie in four distinct tetrahedra is the
axis of an octahedron: poles at the edge ends, equator through the four
other vertices in walk order.  The move deletes the axis, splits the
octahedron along one of the two equatorial diagonals, and rebuilds four
tetrahedra around the new diagonal, reattaching the eight outer faces
where the old ones pointed.  Tetrahedron count, vertex count,
orientability and first cohomology rank are all preserved; a cocycle is
carried across by reading each surviving edge through the octahedron and
giving the new diagonal the sum of two equatorial values, which the
cocycle condition on a face of the new complex forces.

Promotion repeatedly flips the even degree-4 boundary edge of a type II
layered solid torus until no such torus remains.  The axis is chosen by
the local pattern of colouring types around the flip edge: two adjacent
type III tetrahedra opposite the torus make the choice by simulating
both flips and keeping the one that leaves the tracked even edges at
their ambient degrees; every other pattern takes the first diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology import is_cocycle
from .colouring import TYPE_II, TYPE_III, TYPE_IV, Rank2Colouring, colour_rank2
from .errors import (BadParameterError, InvalidSiteError,
                     StepLimitExceededError)
from .lst import even_boundary_edge, find_maximal_lsts, is_II4
from .perm import EDGES, EDGE_INDEX, Perm, invert
from .skeleton import Skeleton, compute_skeleton
from .triangulation import Triangulation

# Abstract octahedron vertex tokens: equator 0..3, poles 4 (start end of
# the axis) and 5 (the other end).
_N, _S = 4, 5


def _walk(tri: Triangulation, sk: Skeleton, edge_class: int,
          start_slot: int | None = None) -> list[tuple[int, int, int, int]]:
    """Walk the four tetrahedra around a degree-4 edge.

    Returns one entry (tet, n, s, va) per step: labels of the two axis
    ends and of the equatorial vertex opposite the exit face.  The label
    of the fourth vertex is recoverable as the remaining one.  Raises
    InvalidSiteError when the edge does not admit the move.
    """
    if not 0 <= edge_class < sk.edge_count:
        raise BadParameterError(f"no edge class {edge_class}")
    if sk.edge_degree(edge_class) != 4:
        raise InvalidSiteError(
            f"edge {edge_class} has degree {sk.edge_degree(edge_class)}, need 4"
        )
    if start_slot is None:
        start_slot = min(
            i for i in range(6 * tri.size) if sk.edge_class[i] == edge_class
        )
    t0, e0 = divmod(start_slot, 6)
    n, s = EDGES[e0]
    va, vb = (v for v in range(4) if v not in (n, s))
    t = t0
    steps: list[tuple[int, int, int, int]] = []
    seen = set()
    for _ in range(4):
        if t in seen:
            raise InvalidSiteError(
                f"edge {edge_class}: tetrahedra around it repeat"
            )
        seen.add(t)
        steps.append((t, n, s, va))
        g = tri.gluings[t][va]
        if g is None:
            raise InvalidSiteError(f"edge {edge_class} meets the boundary")
        u, _, p = g
        n, s, va, vb = p[n], p[s], p[vb], p[va]
        t = u
    if (t, n, s, va) != steps[0]:
        raise InvalidSiteError(f"edge {edge_class}: walk does not close")
    return steps


def flippable_edges(tri: Triangulation, sk: Skeleton | None = None) -> list[int]:
    """Edge classes admitting the 4-4 move, ascending."""
    if sk is None:
        sk = compute_skeleton(tri)
    out = []
    for e in range(sk.edge_count):
        if sk.edge_degree(e) != 4:
            continue
        try:
            _walk(tri, sk, e)
        except InvalidSiteError:
            continue
        out.append(e)
    return out


@dataclass(frozen=True)
class FlipResult:
    """A performed 4-4 move.

    walk_tets and labels describe the octahedron in the rotated frame in
    which the new diagonal joins equatorial vertices 0 and 2: labels[i]
    gives the labels of (pole 4, pole 5, equator i, equator i+1) inside
    walk_tets[i].  new_ids[j] is the tetrahedron id reused for the j-th
    new tetrahedron, whose vertices are (equator 0, equator 2, w[j],
    w[j+1]) with w = (pole 4, equator 1, pole 5, equator 3).
    """

    before: Triangulation
    after: Triangulation
    edge_class: int
    axis: int
    walk_tets: tuple[int, int, int, int]
    labels: tuple[tuple[int, int, int, int], ...]
    new_ids: tuple[int, int, int, int]

    _W = (_N, 1, _S, 3)

    def new_abstract(self, j: int) -> tuple[int, int, int, int]:
        """Abstract octahedron vertices at labels 0..3 of new tet j."""
        return (0, 2, self._W[j], self._W[(j + 1) % 4])

    def abstract_old_classes(self, old_sk: Skeleton) -> dict[frozenset[int], int]:
        """Old ambient edge class of each abstract octahedron edge."""
        out: dict[frozenset[int], int] = {}
        for i in range(4):
            t = self.walk_tets[i]
            n, s, va, vb = self.labels[i]
            abstract = {n: _N, s: _S, va: i, vb: (i + 1) % 4}
            for a, b in EDGES:
                key = frozenset((abstract[a], abstract[b]))
                cls = old_sk.edge_id(t, a, b)
                assert out.setdefault(key, cls) == cls, "octahedron edge clash"
        return out


def edge_flip(
    tri: Triangulation, edge_class: int, axis: int, sk: Skeleton | None = None
) -> FlipResult:
    """Perform the 4-4 move at a degree-4 edge along one diagonal.

    axis 0 joins the equatorial vertices at walk positions 0 and 2
    (counted from the lowest slot of the edge), axis 1 the other pair.
    """
    if axis not in (0, 1):
        raise BadParameterError(f"axis must be 0 or 1, got {axis}")
    if sk is None:
        sk = compute_skeleton(tri)
    steps = _walk(tri, sk, edge_class)
    if axis == 1:
        steps = steps[1:] + steps[:1]
    walk_tets = tuple(st[0] for st in steps)
    labels = []
    for t, n, s, va in steps:
        vb = next(v for v in range(4) if v not in (n, s, va))
        labels.append((n, s, va, vb))
    labels = tuple(labels)

    new_ids = tuple(sorted(walk_tets))
    w = (_N, 1, _S, 3)

    # Outer symbol tables.  Old side: symbol -> (tet, face, abstract->label).
    old_outer: dict[frozenset[int], tuple[int, int, dict[int, int]]] = {}
    slot_symbol: dict[tuple[int, int], frozenset[int]] = {}
    for i in range(4):
        t = walk_tets[i]
        n, s, va, vb = labels[i]
        lam = {_N: n, _S: s, i: va, (i + 1) % 4: vb}
        sym_n = frozenset((_N, i, (i + 1) % 4))
        sym_s = frozenset((_S, i, (i + 1) % 4))
        old_outer[sym_n] = (t, s, lam)
        old_outer[sym_s] = (t, n, lam)
        slot_symbol[(t, s)] = sym_n
        slot_symbol[(t, n)] = sym_s

    new_outer: dict[frozenset[int], tuple[int, int, dict[int, int]]] = {}
    for j in range(4):
        abstract = (0, 2, w[j], w[(j + 1) % 4])
        lam = {abstract[v]: v for v in range(4)}
        new_outer[frozenset(abstract[1:])] = (new_ids[j], 0, lam)
        new_outer[frozenset((abstract[0], abstract[2], abstract[3]))] = (
            new_ids[j], 1, lam,
        )
    assert set(new_outer) == set(old_outer), "outer faces do not correspond"

    rows: list[list[tuple[int, int, Perm] | None]] = [
        list(r) for r in tri.gluings
    ]
    for t in walk_tets:
        rows[t] = [None] * 4
    for j in range(4):
        a, b = new_ids[j], new_ids[(j + 1) % 4]
        p: Perm = (0, 1, 3, 2)
        rows[a][2] = (b, 3, p)
        rows[b][3] = (a, 2, p)

    in_walk = set(walk_tets)
    for sym, (to, fo, lam_o) in old_outer.items():
        tn, fn, lam_n = new_outer[sym]
        g = tri.gluings[to][fo]
        if g is None:
            continue
        x, fx, p = g
        if x not in in_walk:
            r = [None] * 4
            for a_vert in sym:
                r[lam_n[a_vert]] = p[lam_o[a_vert]]
            r[fn] = p[fo]
            r = tuple(r)
            rows[tn][fn] = (x, fx, r)
            rows[x][fx] = (tn, fn, invert(r))
        else:
            sym2 = slot_symbol[(x, fx)]
            to2, fo2, lam_o2 = old_outer[sym2]
            assert (to2, fo2) == (x, fx)
            tn2, fn2, lam_n2 = new_outer[sym2]
            mu2 = {v: k for k, v in lam_o2.items()}
            r = [None] * 4
            for a_vert in sym:
                r[lam_n[a_vert]] = lam_n2[mu2[p[lam_o[a_vert]]]]
            r[fn] = fn2
            r = tuple(r)
            existing = rows[tn][fn]
            assert existing is None or existing == (tn2, fn2, r)
            rows[tn][fn] = (tn2, fn2, r)
            rows[tn2][fn2] = (tn, fn, invert(r))

    after = Triangulation(rows)
    return FlipResult(
        before=tri, after=after, edge_class=edge_class, axis=axis,
        walk_tets=walk_tets, labels=labels, new_ids=new_ids,
    )


def new_diagonal_class(flip: FlipResult, new_sk: Skeleton) -> int:
    """Edge class of the created diagonal in the flipped skeleton."""
    j0 = 0
    abstract = flip.new_abstract(j0)
    a = abstract.index(0)
    b = abstract.index(2)
    return new_sk.edge_id(flip.new_ids[j0], a, b)


def transport_cocycle(
    flip: FlipResult,
    phi: int,
    old_sk: Skeleton | None = None,
    new_sk: Skeleton | None = None,
) -> int:
    """Carry a cocycle across a flip.

    Every new edge class is read through a representative slot: outside
    the rebuilt region classes persist, inside it each abstract edge of
    the octahedron keeps its old value, and the new diagonal takes the
    sum of the two equatorial values adjacent to equator vertex 1, which
    the face they span in the new complex forces.  All slots of a class
    must agree, and the result must again be a cocycle.
    """
    if old_sk is None:
        old_sk = compute_skeleton(flip.before)
    if new_sk is None:
        new_sk = compute_skeleton(flip.after)
    octa = flip.abstract_old_classes(old_sk)
    diag_value = (
        phi >> octa[frozenset((0, 1))] & 1
    ) ^ (
        phi >> octa[frozenset((1, 2))] & 1
    )
    id_to_j = {tid: j for j, tid in enumerate(flip.new_ids)}
    out = 0
    assigned = [False] * new_sk.edge_count
    for slot in range(6 * flip.after.size):
        t, e_idx = divmod(slot, 6)
        a, b = EDGES[e_idx]
        if t in id_to_j:
            abstract = flip.new_abstract(id_to_j[t])
            key = frozenset((abstract[a], abstract[b]))
            if key == frozenset((0, 2)):
                value = diag_value
            else:
                value = phi >> octa[key] & 1
        else:
            value = phi >> old_sk.edge_id(t, a, b) & 1
        cls = new_sk.edge_class[slot]
        if assigned[cls]:
            assert (out >> cls & 1) == value, "cocycle transport inconsistent"
        else:
            assigned[cls] = True
            out |= value << cls
    assert all(assigned)
    assert is_cocycle(new_sk, out), "transported cochain is not a cocycle"
    return out


@dataclass(frozen=True)
class PromotionStep:
    edge_class: int
    axis: int
    ii4_count: int
    type_iv_lst_count: int


@dataclass(frozen=True)
class PromotionResult:
    tri: Triangulation
    phi1: int
    phi2: int
    steps: tuple[PromotionStep, ...]


def _tracked_even_mates(
    col: Rank2Colouring, walk: list[tuple[int, int, int, int]], edge_class: int
) -> set[int]:
    """Ambient classes of the even pair mates of the flip edge inside the
    type II tetrahedra around it."""
    sk = col.skeleton
    tracked = set()
    for t, n, s, _va in walk:
        if col.tet_types[t] == TYPE_II:
            mate = 5 - EDGE_INDEX[(n, s)]
            a, b = EDGES[mate]
            tracked.add(sk.edge_id(t, a, b))
    tracked.discard(edge_class)
    return tracked


def _degrees_after(
    flip: FlipResult, old_sk: Skeleton, tracked: set[int]
) -> dict[int, int] | None:
    """Ambient degree of each tracked old class after the flip, or None
    when a tracked class cannot be located in the new complex."""
    new_sk = compute_skeleton(flip.after)
    octa = flip.abstract_old_classes(old_sk)
    in_walk = set(flip.walk_tets)
    out: dict[int, int] = {}
    for cls in tracked:
        new_cls = None
        for slot in range(6 * flip.before.size):
            if old_sk.edge_class[slot] != cls:
                continue
            t, e_idx = divmod(slot, 6)
            if t in in_walk:
                continue
            a, b = EDGES[e_idx]
            new_cls = new_sk.edge_id(t, a, b)
            break
        if new_cls is None:
            # All slots sat inside the octahedron; find the class through
            # an abstract edge of matching old class.
            for key, old_cls in octa.items():
                if old_cls != cls or key == frozenset((_N, _S)):
                    continue
                for j in range(4):
                    abstract = flip.new_abstract(j)
                    pos = [v for v in range(4) if abstract[v] in key]
                    if len(pos) == 2:
                        new_cls = new_sk.edge_id(flip.new_ids[j], pos[0], pos[1])
                        break
                if new_cls is not None:
                    break
        if new_cls is None:
            return None
        out[cls] = new_sk.edge_degree(new_cls)
    return out


def _choose_axis(
    tri: Triangulation,
    sk: Skeleton,
    col: Rank2Colouring,
    edge_class: int,
    lst_tets: set[int],
) -> int:
    """Axis selection for one promotion flip.

    The walk starts at the torus tetrahedron containing the flip edge
    when that tetrahedron is unique.  When the two tetrahedra at walk
    positions (1, 2) or (2, 3) are both type III, both flips are
    simulated and the axis that keeps every tracked even edge at its old
    ambient degree wins; everything else takes axis 0.
    """
    slots = [i for i in range(6 * tri.size) if sk.edge_class[i] == edge_class]
    inside = [s for s in slots if s // 6 in lst_tets]
    if len(inside) != 1:
        return 0
    walk = _walk(tri, sk, edge_class, start_slot=inside[0])
    types = [col.tet_types[t] for t, _, _, _ in walk]
    pattern_a = types[1] == types[2] == TYPE_III
    pattern_b = types[2] == types[3] == TYPE_III
    if not (pattern_a or pattern_b):
        return 0
    tracked = _tracked_even_mates(col, walk, edge_class)
    if not tracked:
        return 0
    old_degrees = {cls: sk.edge_degree(cls) for cls in tracked}
    for axis in (0, 1):
        flip = edge_flip(tri, edge_class, axis, sk=sk)
        after = _degrees_after(flip, sk, tracked)
        if after is not None and after == old_degrees:
            return axis
    return 0


def promote_to_II4_free(
    tri: Triangulation,
    phi1: int,
    phi2: int,
    max_steps: int | None = None,
) -> PromotionResult:
    """Flip until no type II layered solid torus has an even degree-4
    boundary edge.

    Each step flips at the even boundary edge of the first such torus in
    detection order, carrying the two cocycles across.  Raises
    StepLimitExceededError with the trace so far when the budget runs
    out or a required flip is not available.
    """
    if max_steps is None:
        max_steps = 10 * tri.size * tri.size
    steps: list[PromotionStep] = []
    for _ in range(max_steps + 1):
        sk = compute_skeleton(tri)
        col = colour_rank2(sk, phi1, phi2)
        lsts = find_maximal_lsts(tri, sk)
        ii4 = [lst for lst in lsts if is_II4(col, lst)]
        iv_count = sum(
            1 for lst in lsts
            if all(col.tet_types[t] == TYPE_IV for t in lst.tets)
        )
        if not ii4:
            return PromotionResult(tri, phi1, phi2, tuple(steps))
        if len(steps) >= max_steps:
            raise StepLimitExceededError(
                f"promotion did not finish within {max_steps} steps",
                trace=[(st.ii4_count, st.type_iv_lst_count) for st in steps],
            )
        target = ii4[0]
        e = even_boundary_edge(col, target)
        try:
            axis = _choose_axis(tri, sk, col, e, set(target.tets))
            flip = edge_flip(tri, e, axis, sk=sk)
        except InvalidSiteError as exc:
            raise StepLimitExceededError(
                f"promotion stuck: {exc}",
                trace=[(st.ii4_count, st.type_iv_lst_count) for st in steps],
            ) from exc
        new_sk = compute_skeleton(flip.after)
        phi1 = transport_cocycle(flip, phi1, old_sk=sk, new_sk=new_sk)
        phi2 = transport_cocycle(flip, phi2, old_sk=sk, new_sk=new_sk)
        steps.append(PromotionStep(e, axis, len(ii4), iv_count))
        tri = flip.after
    raise AssertionError("unreachable")
