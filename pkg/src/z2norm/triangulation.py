"""Face-gluing data for pseudo-simplicial 3-manifold triangulations.

A triangulation on T tetrahedra is a table with one row per tetrahedron
and one entry per face.  An entry is either None (boundary face) or a
triple (other_tet, other_face, perm) where perm is the vertex relabelling
carrying this tetrahedron onto the other one; perm must send the vertex
opposite the glued face to the vertex opposite its image face, and the
table must be a fixed-point-free involution on glued face slots.

The text format is line-oriented:

    tri v1 2
    t0: 1/0123 - - 1/1032
    t1: 0/0123 - - 0/1032

Line 1 declares the tetrahedron count.  Each following line lists the
four face entries of one tetrahedron, `-` for a boundary face and
`<tet>/<perm>` otherwise, with the permutation written as the images of
0123 in order.  `#` starts a comment.
"""

from __future__ import annotations

from .errors import BadGluingError, TriFormatError
from .perm import Perm, invert, perm_to_str, str_to_perm

Gluing = "tuple[int, int, Perm] | None"


class Triangulation:
    """Immutable gluing table.  Index it as tri.gluings[tet][face]."""

    __slots__ = ("gluings",)

    def __init__(self, gluings):
        rows = []
        for t, row in enumerate(gluings):
            row = tuple(None if g is None else (g[0], g[1], tuple(g[2])) for g in row)
            if len(row) != 4:
                raise BadGluingError(f"tetrahedron {t} has {len(row)} face entries, need 4")
            rows.append(row)
        table = tuple(rows)
        object.__setattr__(self, "gluings", table)
        self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("Triangulation is immutable")

    def _validate(self) -> None:
        n = len(self.gluings)
        for t, row in enumerate(self.gluings):
            for f, g in enumerate(row):
                if g is None:
                    continue
                u, h, p = g
                if not (0 <= u < n):
                    raise BadGluingError(f"tetrahedron {t} face {f}: partner {u} out of range")
                if not (0 <= h < 4):
                    raise BadGluingError(f"tetrahedron {t} face {f}: partner face {h} out of range")
                if sorted(p) != [0, 1, 2, 3]:
                    raise BadGluingError(f"tetrahedron {t} face {f}: bad permutation {p}")
                if p[f] != h:
                    raise BadGluingError(
                        f"tetrahedron {t} face {f}: permutation sends face to {p[f]}, entry says {h}"
                    )
                if (u, h) == (t, f):
                    raise BadGluingError(f"tetrahedron {t} face {f} is glued to itself")
                back = self.gluings[u][h]
                if back is None or back[0] != t or back[1] != f or back[2] != invert(p):
                    raise BadGluingError(
                        f"gluing of tetrahedron {t} face {f} is not matched by tetrahedron {u} face {h}"
                    )

    @property
    def size(self) -> int:
        return len(self.gluings)

    def boundary_faces(self) -> list[tuple[int, int]]:
        return [
            (t, f)
            for t, row in enumerate(self.gluings)
            for f, g in enumerate(row)
            if g is None
        ]

    def is_face_complete(self) -> bool:
        return not self.boundary_faces()

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self.gluings == other.gluings

    def __hash__(self):
        return hash(self.gluings)

    def __repr__(self):
        return f"Triangulation(size={self.size})"


class GluingBuilder:
    """Mutable helper for assembling a gluing table one join at a time."""

    def __init__(self, size: int):
        if size < 0:
            raise BadGluingError("negative tetrahedron count")
        self._rows: list[list] = [[None] * 4 for _ in range(size)]

    def join(self, t: int, f: int, u: int, h: int, p: Perm) -> None:
        """Glue face f of tetrahedron t to face h of tetrahedron u via p."""
        p = tuple(p)
        if p[f] != h:
            raise BadGluingError(
                f"permutation {perm_to_str(p)} does not carry face {f} to face {h}"
            )
        if (t, f) == (u, h):
            raise BadGluingError(f"tetrahedron {t} face {f} glued to itself")
        for tet, face in ((t, f), (u, h)):
            if self._rows[tet][face] is not None:
                raise BadGluingError(f"tetrahedron {tet} face {face} already glued")
        self._rows[t][f] = (u, h, p)
        self._rows[u][h] = (t, f, invert(p))

    def build(self) -> Triangulation:
        return Triangulation(self._rows)


def parse_tri(text: str) -> Triangulation:
    """Parse the text format.  Raises TriFormatError with a line number."""
    lines: list[tuple[int, str]] = []
    for num, raw in enumerate(text.split("\n"), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            lines.append((num, content))

    if not lines:
        raise TriFormatError("empty input, expected header 'tri v1 <count>'")

    num, header = lines[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "tri" or parts[1] != "v1" or not parts[2].isdigit():
        raise TriFormatError("expected header 'tri v1 <count>'", num)
    count = int(parts[2])

    body = lines[1:]
    if len(body) < count:
        raise TriFormatError(
            f"header declares {count} tetrahedra but only {len(body)} rows follow", num
        )
    if len(body) > count:
        raise TriFormatError("unexpected content after last tetrahedron row", body[count][0])

    rows = []
    for i, (num, content) in enumerate(body):
        tokens = content.split()
        if tokens[0] != f"t{i}:":
            raise TriFormatError(f"expected row label 't{i}:', found {tokens[0]!r}", num)
        if len(tokens) != 5:
            raise TriFormatError(f"expected 4 face entries, found {len(tokens) - 1}", num)
        row = []
        for tok in tokens[1:]:
            if tok == "-":
                row.append(None)
                continue
            head, sep, tail = tok.partition("/")
            if not sep or not head.isdigit():
                raise TriFormatError(f"bad face entry {tok!r}, expected '-' or '<tet>/<perm>'", num)
            u = int(head)
            if u >= count:
                raise TriFormatError(f"tetrahedron index {u} out of range", num)
            try:
                p = str_to_perm(tail)
            except ValueError:
                raise TriFormatError(f"bad permutation {tail!r} in entry {tok!r}", num) from None
            row.append((u, p[len(row)], p))
        rows.append(row)

    return Triangulation(rows)


def serialize_tri(tri: Triangulation) -> str:
    """Canonical text form: one fixed rendering per triangulation."""
    out = [f"tri v1 {tri.size}"]
    for t, row in enumerate(tri.gluings):
        cells = []
        for g in row:
            if g is None:
                cells.append("-")
            else:
                cells.append(f"{g[0]}/{perm_to_str(g[2])}")
        out.append(f"t{t}: " + " ".join(cells))
    return "\n".join(out) + "\n"
