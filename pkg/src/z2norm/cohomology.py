"""GF(2) edge cochains: cocycles, coboundaries and first cohomology.

A cochain assigns 0 or 1 to every edge class and is stored as an int
bitmask, bit i holding the value on edge class i.  A cochain is a cocycle
when every face class sees an even number of odd edges (edges counted
with multiplicity around the face, so a doubled edge cancels).  The
coboundary of a vertex class flips exactly the edges with one endpoint
at that vertex.  First cohomology is cocycles modulo coboundaries; each
class gets a unique canonical representative by reduction against the
coboundary row echelon basis.
"""

from __future__ import annotations

from bisect import bisect_left

from .errors import RankTooLowError
from .skeleton import Skeleton

Mask = int


def rref_bitrows(rows: list[Mask]) -> tuple[list[Mask], list[int]]:
    """Reduced row echelon form over GF(2) with lowest-bit pivots.

    Returns (rows, pivots), both ordered by ascending pivot position.
    Deterministic for any input order: the result is the unique reduced
    echelon basis of the row space.
    """
    reduced: list[Mask] = []
    pivots: list[int] = []
    for row in rows:
        for p, b in zip(pivots, reduced):
            if row >> p & 1:
                row ^= b
        if row == 0:
            continue
        p = (row & -row).bit_length() - 1
        for i, b in enumerate(reduced):
            if b >> p & 1:
                reduced[i] = b ^ row
        pos = bisect_left(pivots, p)
        pivots.insert(pos, p)
        reduced.insert(pos, row)
    return reduced, pivots


def rank_bitrows(rows: list[Mask]) -> int:
    return len(rref_bitrows(rows)[0])


def reduce_mod(v: Mask, reduced: list[Mask], pivots: list[int]) -> Mask:
    """The unique element of v + span(reduced) vanishing on all pivots."""
    for p, b in zip(pivots, reduced):
        if v >> p & 1:
            v ^= b
    return v


def nullspace_bitrows(rows: list[Mask], width: int) -> list[Mask]:
    """Basis of {x : every row has even overlap with x}, by free column."""
    reduced, pivots = rref_bitrows(rows)
    pivset = set(pivots)
    basis: list[Mask] = []
    for c in range(width):
        if c in pivset:
            continue
        v = 1 << c
        for p, r in zip(pivots, reduced):
            if r >> c & 1:
                v |= 1 << p
        basis.append(v)
    return basis


def face_relation_rows(sk: Skeleton) -> list[Mask]:
    """One row per face class: the mod-2 sum of its three edge classes."""
    rows = []
    for fid in range(sk.face_count):
        mask = 0
        for e in sk.face_edges(fid):
            mask ^= 1 << e
        rows.append(mask)
    return rows


def is_cocycle(sk: Skeleton, phi: Mask) -> bool:
    return all((row & phi).bit_count() % 2 == 0 for row in face_relation_rows(sk))


def cocycle_basis(sk: Skeleton) -> list[Mask]:
    return nullspace_bitrows(face_relation_rows(sk), sk.edge_count)


def coboundary_rows(sk: Skeleton) -> list[Mask]:
    """The coboundary cochain of each vertex class."""
    rows = []
    for v in range(sk.vertex_count):
        mask = 0
        for e in range(sk.edge_count):
            a, b = sk.edge_endpoints(e)
            if (a == v) != (b == v):
                mask |= 1 << e
        rows.append(mask)
    return rows


class CohomologyBasis:
    """First cohomology over GF(2), with canonical class representatives.

    Attributes:
      rank: dimension of H^1.
      reps: canonical cocycle representative for each basis class.  Any
        XOR combination of reps is itself canonical, so the 2**rank - 1
        nonzero classes are exactly the nonzero combinations.
    """

    def __init__(self, sk: Skeleton):
        self.skeleton = sk
        self._cob_reduced, self._cob_pivots = rref_bitrows(coboundary_rows(sk))
        ext_reduced = list(self._cob_reduced)
        ext_pivots = list(self._cob_pivots)
        reps: list[Mask] = []
        for z in cocycle_basis(sk):
            z = reduce_mod(z, ext_reduced, ext_pivots)
            if z == 0:
                continue
            reps.append(reduce_mod(z, self._cob_reduced, self._cob_pivots))
            p = (z & -z).bit_length() - 1
            pos = bisect_left(ext_pivots, p)
            ext_pivots.insert(pos, p)
            ext_reduced.insert(pos, z)
        self.reps = reps
        self.rank = len(reps)

    def canonical_rep(self, phi: Mask) -> Mask:
        """Canonical representative of the class of the cocycle phi."""
        return reduce_mod(phi, self._cob_reduced, self._cob_pivots)


def h1_rank(sk: Skeleton) -> int:
    return CohomologyBasis(sk).rank


def enumerate_rank2_subgroups(sk: Skeleton) -> list[tuple[Mask, Mask, Mask]]:
    """All rank-2 subgroups of H^1 as sorted triples of canonical cocycles.

    Each subgroup has exactly three nonzero classes x, y, x+y; the triple
    lists their canonical representatives ascending, and the XOR of any
    two members equals the third.  Raises RankTooLowError below rank 2.
    """
    basis = CohomologyBasis(sk)
    if basis.rank < 2:
        raise RankTooLowError(
            f"first cohomology has rank {basis.rank}, need at least 2"
        )
    classes = []
    for m in range(1, 1 << basis.rank):
        v = 0
        for i in range(basis.rank):
            if m >> i & 1:
                v ^= basis.reps[i]
        classes.append((m, v))
    mask_to_rep = dict(classes)
    seen: set[frozenset[int]] = set()
    out: list[tuple[Mask, Mask, Mask]] = []
    for i, (m1, v1) in enumerate(classes):
        for m2, v2 in classes[i + 1:]:
            key = frozenset((m1, m2, m1 ^ m2))
            if key in seen:
                continue
            seen.add(key)
            triple = tuple(sorted((v1, v2, mask_to_rep[m1 ^ m2])))
            out.append(triple)  # type: ignore[arg-type]
    out.sort()
    return out
