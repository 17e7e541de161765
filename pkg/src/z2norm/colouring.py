"""Edge colourings induced by GF(2) cocycles on one-vertex triangulations.

A single cocycle splits the edges of each tetrahedron into even and odd;
the local pattern is always one of three shapes because the restriction
to a tetrahedron is a coboundary of a vertex subset.  A pair of
independent cocycles refines this to four edge colours (even for all
three classes in the subgroup, or even for exactly one) and five local
shapes.  The shape counts satisfy exact integer identities against the
degrees of the fully even edges and the Euler characteristics of the
three induced surfaces; those identities are the backbone of the
complexity certificates, so they are checked here from first
definitions.

Type numbering for a cocycle pair, by count of fully even edges in the
tetrahedron: type I has one, type II an opposite pair, type III a face,
type IV all six, type V none.  Type V tetrahedra carry a chirality once
the triangulation is oriented: the three opposite edge pairs are
monochromatic in the three non-trivial colours, and the parity of that
colour arrangement times the orientation sign is a flip-invariant tag.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .cohomology import CohomologyBasis, Mask, is_cocycle
from .errors import (BadParameterError, NonOrientableError, NotOneVertexError,
                     ZeroClassError)
from .perm import EDGES, EDGE_INDEX, FACE_EDGES, VERTEX_EDGES
from .skeleton import Skeleton, orientation_signs

# Opposite edge pairs: pair q holds edge q and edge 5 - q.
PAIRS: tuple[tuple[int, int], ...] = ((0, 5), (1, 4), (2, 3))

TYPE_I, TYPE_II, TYPE_III, TYPE_IV, TYPE_V = 1, 2, 3, 4, 5

TYPE_NAMES = {TYPE_I: "I", TYPE_II: "II", TYPE_III: "III", TYPE_IV: "IV", TYPE_V: "V"}


class TypeCounts(NamedTuple):
    I: int
    II: int
    III: int
    IV: int
    V: int


def _tet_edge_bits(sk: Skeleton, t: int, phi: Mask) -> tuple[int, ...]:
    return tuple(phi >> sk.edge_id(t, a, b) & 1 for a, b in EDGES)


@dataclass(frozen=True)
class Rank1Colouring:
    """Even/odd edge split from one cocycle, with per-tetrahedron shapes.

    tet_types[t] is 1 (one opposite pair even, rest odd), 2 (the star of
    one vertex odd, rest even) or 3 (all even).  tet_detail[t] is the
    even pair index for shape 1, the odd-star apex for shape 2, None for
    shape 3.
    """

    skeleton: Skeleton
    phi: Mask
    tet_types: tuple[int, ...]
    tet_detail: tuple[int | None, ...]

    @property
    def odd_edges(self) -> tuple[int, ...]:
        return tuple(e for e in range(self.skeleton.edge_count) if self.phi >> e & 1)

    def euler_characteristic(self) -> int:
        """Closed-form Euler characteristic of the induced surface.

        Vertices sit on odd edges, edges of the surface cross faces with
        two odd edge slots, and each shape 1 or 2 tetrahedron carries one
        disc.
        """
        sk = self.skeleton
        v = self.phi.bit_count()
        e = 0
        for fid in range(sk.face_count):
            odd_slots = sum(self.phi >> eid & 1 for eid in sk.face_edges(fid))
            assert odd_slots in (0, 2), "cocycle violated on a face"
            if odd_slots == 2:
                e += 1
        f = sum(1 for ty in self.tet_types if ty != 3)
        return v - e + f


def colour_rank1(sk: Skeleton, phi: Mask) -> Rank1Colouring:
    if not is_cocycle(sk, phi):
        raise BadParameterError("phi is not a cocycle")
    types: list[int] = []
    detail: list[int | None] = []
    for t in range(sk.tet_count):
        bits = _tet_edge_bits(sk, t, phi)
        odd = {i for i in range(6) if bits[i]}
        if not odd:
            types.append(3)
            detail.append(None)
        elif len(odd) == 4:
            even = sorted(set(range(6)) - odd)
            assert even[1] == 5 - even[0], f"tet {t}: bad even set {even}"
            types.append(1)
            detail.append(even[0])
        else:
            assert len(odd) == 3, f"tet {t}: {len(odd)} odd edges"
            apex = next(v for v in range(4) if odd == set(VERTEX_EDGES[v]))
            types.append(2)
            detail.append(apex)
    return Rank1Colouring(sk, phi, tuple(types), tuple(detail))


@dataclass(frozen=True)
class Rank2Colouring:
    """Four-colour edge split from a pair of independent cocycles.

    edge_colours[e] is 0 when the edge is even for the whole subgroup,
    otherwise the index (1..3) of the unique member it is even for, with
    member 3 the sum of the other two.  tet_detail[t] holds, per type:
    I: (position of the fully even edge, colour opposite it);
    II: (colour of the four equal edges, even pair index);
    III: (star colour, apex vertex); IV: (); V: the three pair colours
    by pair index.  chirality[t] is set only for type V tetrahedra of an
    oriented triangulation.
    """

    skeleton: Skeleton
    phi: tuple[Mask, Mask, Mask]
    edge_colours: tuple[int, ...]
    tet_types: tuple[int, ...]
    tet_detail: tuple[tuple, ...]
    chirality: tuple[int | None, ...]
    counts: TypeCounts

    @property
    def even_edges(self) -> tuple[int, ...]:
        """Edge classes even for every member of the subgroup."""
        return tuple(e for e, c in enumerate(self.edge_colours) if c == 0)

    @property
    def even_edge_count(self) -> int:
        return len(self.even_edges)

    @property
    def even_degree_sum(self) -> int:
        sk = self.skeleton
        return sum(sk.edge_degree(e) for e in self.even_edges)

    def even_degree_histogram(self) -> dict[int, int]:
        sk = self.skeleton
        hist: dict[int, int] = {}
        for e in self.even_edges:
            d = sk.edge_degree(e)
            hist[d] = hist.get(d, 0) + 1
        return dict(sorted(hist.items()))

    def restrictions(self) -> tuple[Rank1Colouring, Rank1Colouring, Rank1Colouring]:
        """The three single-cocycle colourings of the subgroup members."""
        return tuple(colour_rank1(self.skeleton, p) for p in self.phi)  # type: ignore[return-value]

    def surface_eulers(self) -> tuple[int, int, int]:
        return tuple(r.euler_characteristic() for r in self.restrictions())  # type: ignore[return-value]


def _sign3(c: tuple[int, int, int]) -> int:
    """Sign of (c[0], c[1], c[2]) as a permutation of (1, 2, 3)."""
    inv = sum(1 for i in range(3) for j in range(i + 1, 3) if c[i] > c[j])
    return -1 if inv & 1 else 1


def colour_rank2(
    sk: Skeleton, phi1: Mask, phi2: Mask, signs: tuple[int, ...] | None = None
) -> Rank2Colouring:
    """Colour the edges by the rank-2 subgroup generated by two cocycles.

    Requires a one-vertex triangulation and two cocycles spanning a
    rank-2 subgroup of first cohomology (ZeroClassError otherwise).
    signs may carry precomputed orientation signs; when omitted they are
    computed if the triangulation is orientable, else type V chirality
    stays None.
    """
    if sk.vertex_count != 1:
        raise NotOneVertexError(
            f"triangulation has {sk.vertex_count} vertices, colouring needs 1"
        )
    for phi in (phi1, phi2):
        if not is_cocycle(sk, phi):
            raise BadParameterError("input is not a cocycle")
    basis = CohomologyBasis(sk)
    for phi in (phi1, phi2, phi1 ^ phi2):
        if basis.canonical_rep(phi) == 0:
            raise ZeroClassError(
                "the two cocycles do not span a rank-2 subgroup of cohomology"
            )
    if signs is None:
        try:
            signs = orientation_signs(sk.tri)
        except NonOrientableError:
            signs = None

    phi3 = phi1 ^ phi2
    colours = tuple(
        ((phi1 >> e & 1) << 1) | (phi2 >> e & 1) for e in range(sk.edge_count)
    )

    types: list[int] = []
    detail: list[tuple] = []
    chir: list[int | None] = []
    for t in range(sk.tet_count):
        eids = tuple(sk.edge_id(t, a, b) for a, b in EDGES)
        cols = tuple(colours[e] for e in eids)
        zeros = [i for i in range(6) if cols[i] == 0]
        if len(zeros) == 6:
            types.append(TYPE_IV)
            detail.append(())
            chir.append(None)
        elif len(zeros) == 3:
            apex = next(
                (f for f in range(4) if set(zeros) == set(FACE_EDGES[f])), None
            )
            assert apex is not None, f"tet {t}: even edges {zeros} not a face"
            star_cols = {cols[i] for i in VERTEX_EDGES[apex]}
            assert len(star_cols) == 1, f"tet {t}: mixed star colours"
            types.append(TYPE_III)
            detail.append((star_cols.pop(), apex))
            chir.append(None)
        elif len(zeros) == 2:
            q = min(zeros)
            assert zeros == [q, 5 - q], f"tet {t}: even edges {zeros} not a pair"
            rest = {cols[i] for i in range(6) if i not in zeros}
            assert len(rest) == 1, f"tet {t}: mixed side colours"
            types.append(TYPE_II)
            detail.append((rest.pop(), q))
            chir.append(None)
        elif len(zeros) == 1:
            e0 = zeros[0]
            opp = 5 - e0
            i = cols[opp]
            a, b = EDGES[e0]
            c, d = EDGES[opp]
            at_c = {cols[EDGE_INDEX[(c, a)]], cols[EDGE_INDEX[(c, b)]]}
            at_d = {cols[EDGE_INDEX[(d, a)]], cols[EDGE_INDEX[(d, b)]]}
            assert len(at_c) == 1 and len(at_d) == 1, f"tet {t}: mixed end colours"
            j, k = at_c.pop(), at_d.pop()
            assert {i, j, k} == {1, 2, 3}, f"tet {t}: colours {(i, j, k)}"
            types.append(TYPE_I)
            detail.append((e0, i))
            chir.append(None)
        else:
            assert not zeros, f"tet {t}: {len(zeros)} fully even edges"
            pc = []
            for q, (x, y) in enumerate(PAIRS):
                assert cols[x] == cols[y], f"tet {t}: pair {q} not monochromatic"
                pc.append(cols[x])
            pc = tuple(pc)
            assert sorted(pc) == [1, 2, 3], f"tet {t}: pair colours {pc}"
            types.append(TYPE_V)
            detail.append(pc)
            chir.append(_sign3(pc) * signs[t] if signs is not None else None)

    counts = TypeCounts(*(sum(1 for ty in types if ty == k) for k in range(1, 6)))
    return Rank2Colouring(
        sk, (phi1, phi2, phi3), colours, tuple(types), tuple(detail), tuple(chir),
        counts,
    )


@dataclass(frozen=True)
class IdentityCheck:
    lhs: int
    rhs: int
    verdict: str  # "holds", "fails" or "not-applicable"


def verify_identities(col: Rank2Colouring) -> dict[str, IdentityCheck]:
    """Evaluate the exact counting identities for a rank-2 colouring.

    All quantities are integers; verdicts are exact comparisons.  The
    degree-three identity only applies when every edge of the
    triangulation has degree at least 3.
    """
    sk = col.skeleton
    n_i, n_ii, n_iii, n_iv, n_v = col.counts
    tcount = sk.tet_count
    e_even = col.even_edge_count
    deg_sum = col.even_degree_sum
    hist = col.even_degree_histogram()
    chi_sum = sum(col.surface_eulers())

    out: dict[str, IdentityCheck] = {}

    def record(name: str, lhs: int, rhs: int) -> None:
        out[name] = IdentityCheck(lhs, rhs, "holds" if lhs == rhs else "fails")

    record("counts_vs_euler", n_iii + 2 * n_iv - n_v, 2 * e_even - 2 + chi_sum)
    record("even_degree_sum_types", deg_sum, n_i + 2 * n_ii + 3 * n_iii + 6 * n_iv)
    record(
        "even_degree_sum_euler",
        deg_sum,
        2 * tcount - n_i - n_iii + 4 * e_even - 4 + 2 * chi_sum,
    )
    if min(sk.edge_degrees) >= 3:
        high = sum((d - 4) * n for d, n in hist.items() if d >= 5)
        record(
            "degree_three_count",
            hist.get(3, 0),
            4 + n_i + n_iii - 2 * (tcount + chi_sum) + high,
        )
    else:
        out["degree_three_count"] = IdentityCheck(0, 0, "not-applicable")
    record("type_III_parity", n_iii % 2, 0)
    record("type_V_parity", n_v % 2, 0)
    return out
