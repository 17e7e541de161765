"""Combinatorial isomorphism of triangulations via canonical relabelling.

Two triangulations are isomorphic when some bijection of tetrahedra
together with a vertex relabelling of each tetrahedron carries one gluing
table onto the other.  The canonical form is computed by breadth-first
relabelling from every anchor (start tetrahedron, start labelling) and
keeping the lexicographically smallest encoding, so equality of canonical
forms is equivalent to isomorphism.
"""

from __future__ import annotations

from .perm import ALL_PERMS, Perm, compose, invert
from .triangulation import Triangulation

# Per-face token used for unglued faces.  Sorts below every glued entry.
_OPEN = (-1, ())


def _components(tri: Triangulation) -> list[list[int]]:
    """Connected components of the face-gluing graph, each sorted."""
    seen: set[int] = set()
    out: list[list[int]] = []
    for start in range(tri.size):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            t = stack.pop()
            for g in tri.gluings[t]:
                if g is not None and g[0] not in seen:
                    seen.add(g[0])
                    comp.append(g[0])
                    stack.append(g[0])
        out.append(sorted(comp))
    return out


def _canonical_component(
    tri: Triangulation, comp: list[int]
) -> tuple[tuple, list[tuple[int, Perm]]]:
    """Canonical encoding of one connected component.

    Returns (form, labelling) where labelling[new_index] = (old_tet, rho)
    and rho maps old vertex labels of that tetrahedron to new labels.
    The form is the face-by-face gluing table under the relabelling that
    minimises it lexicographically over all anchors.
    """
    best: list[tuple] | None = None
    best_map: list[tuple[int, Perm]] | None = None
    for t0 in comp:
        for p0 in ALL_PERMS:
            rho: dict[int, Perm] = {t0: p0}
            idx: dict[int, int] = {t0: 0}
            order = [t0]
            enc: list[tuple] = []
            # -1: strictly better than best so far, 0: tied prefix.
            status = 0 if best is not None else -1
            abort = False
            i = 0
            while i < len(order) and not abort:
                t = order[i]
                rt = rho[t]
                inv_rt = invert(rt)
                for nf in range(4):
                    g = tri.gluings[t][inv_rt[nf]]
                    if g is None:
                        token = _OPEN
                    else:
                        u, _, p = g
                        if u not in rho:
                            rho[u] = compose(rt, invert(p))
                            idx[u] = len(order)
                            order.append(u)
                        token = (idx[u], compose(rho[u], compose(p, inv_rt)))
                    enc.append(token)
                    if status == 0:
                        ref = best[len(enc) - 1]  # type: ignore[index]
                        if token < ref:
                            status = -1
                        elif token > ref:
                            abort = True
                            break
                i += 1
            if abort:
                continue
            if status == -1 or best is None:
                best = enc
                best_map = [(t, rho[t]) for t in order]
    assert best is not None and best_map is not None
    return tuple(best), best_map


def canonical_form(tri: Triangulation) -> tuple:
    """Hashable invariant: equal for exactly the isomorphic triangulations."""
    forms = sorted(_canonical_component(tri, c)[0] for c in _components(tri))
    return tuple(forms)


def find_isomorphism(
    a: Triangulation, b: Triangulation
) -> tuple[list[int], list[Perm]] | None:
    """An explicit isomorphism from a to b, or None.

    Returns (tet_map, perms): tetrahedron t of a corresponds to
    tet_map[t] of b with vertex relabelling perms[t].
    """
    if a.size != b.size:
        return None
    comps_a = _components(a)
    comps_b = _components(b)
    if len(comps_a) != len(comps_b):
        return None
    canon_a = [_canonical_component(a, c) for c in comps_a]
    canon_b = [_canonical_component(b, c) for c in comps_b]
    # Pair components greedily by canonical form.
    unused = list(range(len(canon_b)))
    tet_map = [-1] * a.size
    perms: list[Perm] = [None] * a.size  # type: ignore[list-item]
    for form_a, map_a in canon_a:
        match = None
        for j in unused:
            if canon_b[j][0] == form_a:
                match = j
                break
        if match is None:
            return None
        unused.remove(match)
        map_b = canon_b[match][1]
        for (ta, ra), (tb, rb) in zip(map_a, map_b):
            tet_map[ta] = tb
            perms[ta] = compose(invert(rb), ra)
    return tet_map, perms


def are_isomorphic(a: Triangulation, b: Triangulation) -> bool:
    return find_isomorphism(a, b) is not None
