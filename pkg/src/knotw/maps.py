"""Embedded multigraphs (combinatorial maps) and their face/radial structure.

A map is stored as a rotation system: edge i owns the two darts 2i and
2i+1, dart d emanates from ``tail(d)``, and ``rot[v]`` lists the darts at
vertex v in counterclockwise order.  Faces are the orbits of
``d -> rot_next(alpha(d))``; a connected map is spherical exactly when
V - E + F = 2.

The radial structure (vertex/face incidence walks) is what nooses live
in: a noose is an alternating closed walk vertex, face, vertex, ... and
its weight is the number of vertices it passes.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class MapError(ValueError):
    pass


@dataclass
class PlanarMap:
    """Rotation-system multigraph.  Loops and parallel edges are allowed."""

    nv: int
    edges: list[tuple[int, int]]
    rot: list[list[int]]

    _face_of: list[int] = field(default=None, repr=False, compare=False)
    _faces: list[list[int]] = field(default=None, repr=False, compare=False)

    # -- dart helpers -------------------------------------------------

    def tail(self, d: int) -> int:
        return self.edges[d // 2][d % 2]

    def head(self, d: int) -> int:
        return self.edges[d // 2][1 - d % 2]

    @property
    def ne(self) -> int:
        return len(self.edges)

    @property
    def ndarts(self) -> int:
        return 2 * len(self.edges)

    def check(self) -> None:
        """Structural sanity: every dart appears once in its tail's rotation."""
        seen = [0] * self.ndarts
        for v, ring in enumerate(self.rot):
            for d in ring:
                if not 0 <= d < self.ndarts:
                    raise MapError(f"dart {d} out of range at vertex {v}")
                if self.tail(d) != v:
                    raise MapError(f"dart {d} listed at vertex {v}, tail is {self.tail(d)}")
                seen[d] += 1
        bad = [d for d, c in enumerate(seen) if c != 1]
        if bad:
            raise MapError(f"darts {bad} not used exactly once in the rotation system")

    # -- rotation neighbours ------------------------------------------

    def rot_next(self, d: int) -> int:
        ring = self.rot[self.tail(d)]
        return ring[(ring.index(d) + 1) % len(ring)]

    def rot_prev(self, d: int) -> int:
        ring = self.rot[self.tail(d)]
        return ring[(ring.index(d) - 1) % len(ring)]

    def _rot_tables(self) -> tuple[list[int], list[int]]:
        nxt = [0] * self.ndarts
        prv = [0] * self.ndarts
        for ring in self.rot:
            m = len(ring)
            for i, d in enumerate(ring):
                nxt[d] = ring[(i + 1) % m]
                prv[d] = ring[(i - 1) % m]
        return nxt, prv

    # -- faces ---------------------------------------------------------

    def faces(self) -> list[list[int]]:
        """Face orbits of d -> rot_next(d ^ 1), each a dart cycle."""
        if self._faces is None:
            nxt, _ = self._rot_tables()
            face_of = [-1] * self.ndarts
            faces = []
            for d0 in range(self.ndarts):
                if face_of[d0] >= 0:
                    continue
                cyc = []
                d = d0
                while face_of[d] < 0:
                    face_of[d] = len(faces)
                    cyc.append(d)
                    d = nxt[d ^ 1]
                faces.append(cyc)
            self._faces = faces
            self._face_of = face_of
        return self._faces

    def face_of(self, d: int) -> int:
        self.faces()
        return self._face_of[d]

    @property
    def nf(self) -> int:
        return len(self.faces())

    def euler(self) -> int:
        return self.nv - self.ne + self.nf

    def is_spherical(self) -> bool:
        return self.is_connected() and self.euler() == 2

    # -- connectivity ---------------------------------------------------

    def is_connected(self) -> bool:
        if self.nv == 0:
            return True
        seen = {0}
        stack = [0]
        adj = self.vertex_adjacency()
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.nv

    def vertex_adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.nv)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    # -- radial structure ------------------------------------------------

    def radial_nodes(self) -> int:
        """Radial node ids: vertices 0..nv-1, then faces nv..nv+nf-1."""
        return self.nv + self.nf

    def radial_edges(self) -> list[tuple[int, int]]:
        """One radial edge per corner: (tail(d), nv + face_of(d))."""
        self.faces()
        return [(self.tail(d), self.nv + self._face_of[d]) for d in range(self.ndarts)]

    def radial_adjacency(self) -> list[list[int]]:
        adj = [[] for _ in range(self.radial_nodes())]
        for a, b in self.radial_edges():
            adj[a].append(b)
            adj[b].append(a)
        return adj


def face_vertex_sets(m: PlanarMap) -> list[set[int]]:
    return [{m.tail(d) for d in cyc} for cyc in m.faces()]


def vertex_degrees(m: PlanarMap) -> list[int]:
    return [len(r) for r in m.rot]
