"""Knot / spatial-graph diagrams as combinatorial maps.

A diagram vertex is either a crossing (four slots in counterclockwise
order, the strand pairs being the opposite slot pairs (0,2) and (1,3),
with one pair marked as the over strand) or a thickened true vertex (a
cyclic sequence of slots).  Arcs join two slots.  The slot orders define
the rotation system; a diagram is valid when every slot is used exactly
once, face tracing satisfies V - E + F = 2 and the map is connected.

Crossing-free components are encoded as a degree-2 true vertex carrying
one loop arc, so every diagram has at least one vertex.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field

from .maps import PlanarMap

logger = logging.getLogger(__name__)

CROSSING = "crossing"
VERTEX = "vertex"

# slot layout of a crossing, counterclockwise
SW, SE, NE, NW = 0, 1, 2, 3


class DiagramError(ValueError):
    pass


class IllegalMove(DiagramError):
    """Raised when a Reidemeister site does not match its required pattern."""


ArcEnd = tuple[int, int]          # (vertex id, slot)
Arc = tuple[ArcEnd, ArcEnd]


@dataclass(frozen=True)
class Diagram:
    kinds: tuple[str, ...]
    degrees: tuple[int, ...]
    over_axis: tuple[int | None, ...]   # 0 -> strand (0,2) over, 1 -> strand (1,3) over
    arcs: tuple[Arc, ...]

    @property
    def crossings(self) -> list[int]:
        return [v for v, k in enumerate(self.kinds) if k == CROSSING]

    @property
    def true_vertices(self) -> list[int]:
        return [v for v, k in enumerate(self.kinds) if k == VERTEX]

    @property
    def n_crossings(self) -> int:
        return sum(1 for k in self.kinds if k == CROSSING)

    def to_map(self) -> PlanarMap:
        """Rotation-system view; arc i becomes edge i with darts 2i, 2i+1."""
        edges = []
        end_of_slot: dict[ArcEnd, int] = {}
        for i, (a, b) in enumerate(self.arcs):
            edges.append((a[0], b[0]))
            for end, dart in ((a, 2 * i), (b, 2 * i + 1)):
                if end in end_of_slot:
                    raise DiagramError(f"slot {end} used twice")
                end_of_slot[end] = dart
        rot: list[list[int]] = []
        for v, deg in enumerate(self.degrees):
            ring = []
            for s in range(deg):
                d = end_of_slot.get((v, s))
                if d is None:
                    raise DiagramError(f"slot ({v},{s}) unused")
                ring.append(d)
            rot.append(ring)
        return PlanarMap(nv=len(self.kinds), edges=edges, rot=rot)


@dataclass
class ValidationReport:
    slots_ok: bool = True
    euler_ok: bool = True
    connected: bool = True
    messages: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.slots_ok and self.euler_ok and self.connected

    def __bool__(self) -> bool:
        return self.valid


def validate(d: Diagram) -> ValidationReport:
    rep = ValidationReport()
    seen: dict[ArcEnd, int] = {}
    for i, (a, b) in enumerate(d.arcs):
        for v, s in (a, b):
            if not (0 <= v < len(d.kinds)) or not (0 <= s < d.degrees[v]):
                rep.slots_ok = False
                rep.messages.append(f"arc {i}: end ({v},{s}) references no slot")
            elif (v, s) in seen:
                rep.slots_ok = False
                rep.messages.append(f"slot ({v},{s}) used by arcs {seen[(v, s)]} and {i}")
            else:
                seen[(v, s)] = i
    used = [0] * len(d.kinds)
    for (v, _s) in seen:
        used[v] += 1
    for v, k in enumerate(d.kinds):
        if k == CROSSING and d.degrees[v] != 4:
            rep.slots_ok = False
            rep.messages.append(f"crossing {v} has degree {d.degrees[v]}")
        if k == CROSSING and d.over_axis[v] not in (0, 1):
            rep.slots_ok = False
            rep.messages.append(f"crossing {v} lacks an over marking")
        if used[v] != d.degrees[v]:
            rep.slots_ok = False
            rep.messages.append(f"vertex {v}: {used[v]} of {d.degrees[v]} slots used")
    if not rep.slots_ok:
        rep.euler_ok = False
        rep.connected = False
        return rep

    m = d.to_map()
    rep.connected = m.is_connected()
    if rep.connected:
        rep.euler_ok = m.euler() == 2
        if not rep.euler_ok:
            rep.messages.append(f"V-E+F = {m.euler()}, not a sphere embedding")
    else:
        rep.messages.append("diagram is split (not connected)")
        rep.euler_ok = m.euler() == 1 + _n_components(m)
        if not rep.euler_ok:
            rep.messages.append("some component fails the Euler check")
    return rep


def _n_components(m: PlanarMap) -> int:
    comp = [-1] * m.nv
    adj = m.vertex_adjacency()
    ncomp = 0
    for v0 in range(m.nv):
        if comp[v0] >= 0:
            continue
        stack = [v0]
        comp[v0] = ncomp
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if comp[w] < 0:
                    comp[w] = ncomp
                    stack.append(w)
        ncomp += 1
    return ncomp


@dataclass
class Shadow(PlanarMap):
    """Underlying projection graph, over/under forgotten; 4-regular at crossings."""

    kinds: list[str] = field(default_factory=list)

    def degree(self, v: int) -> int:
        return len(self.rot[v])


def shadow(d: Diagram) -> Shadow:
    rep = validate(d)
    if not rep:
        raise DiagramError("invalid diagram: " + "; ".join(rep.messages))
    m = d.to_map()
    return Shadow(nv=m.nv, edges=m.edges, rot=m.rot, kinds=list(d.kinds))


# ---------------------------------------------------------------------------
# canonical torus knot diagrams


def torus_knot_diagram(p: int, q: int) -> Diagram:
    """Closure of the braid (sigma_1 ... sigma_{p-1})^q, with (p-1)q crossings.

    For p = 1 the result is the crossing-free unknot encoding.
    """
    if p < 1 or q < 1:
        raise DiagramError("torus knot parameters must be positive")
    if p == 1:
        return Diagram(kinds=(VERTEX,), degrees=(2,), over_axis=(None,),
                       arcs=(((0, 0), (0, 1)),))

    n = (p - 1) * q
    arcs: list[Arc] = []
    open_end: list[ArcEnd | None] = [None] * (p + 1)   # lanes 1..p
    bottom: list[ArcEnd | None] = [None] * (p + 1)
    t = 0
    for _ in range(q):
        for j in range(1, p):
            for lane, slot in ((j, SW), (j + 1, SE)):
                if open_end[lane] is None:
                    bottom[lane] = (t, slot)
                else:
                    arcs.append((open_end[lane], (t, slot)))
            open_end[j] = (t, NW)
            open_end[j + 1] = (t, NE)
            t += 1
    for lane in range(1, p + 1):
        arcs.append((open_end[lane], bottom[lane]))
    assert t == n
    return Diagram(
        kinds=(CROSSING,) * n,
        degrees=(4,) * n,
        over_axis=(0,) * n,       # positive generators: SW -> NE strand over
        arcs=tuple(arcs),
    )


# ---------------------------------------------------------------------------
# Reidemeister moves
#
# Site descriptors (ids refer to the input diagram):
#   R1+ : (arc, curl, sign)       curl, sign in {0, 1}
#   R1- : (crossing, loop_arc)
#   R2+ : (dart1, dart2, over)    darts on one face, on distinct arcs
#   R2- : (face_min_dart,)        a removable bigon face
#   R3  : (face_min_dart, slide_arc)


def _rebuild(kinds, degrees, over_axis, arcs) -> Diagram:
    out = Diagram(kinds=tuple(kinds), degrees=tuple(degrees),
                  over_axis=tuple(over_axis), arcs=tuple(arcs))
    rep = validate(out)
    if not rep:
        raise IllegalMove("move produced an invalid diagram: " + "; ".join(rep.messages))
    return out


def _splice_out(d: Diagram, dead_vertices: set[int], dead_arcs: set[int],
                connector: dict[ArcEnd, ArcEnd]):
    """Delete crossings in dead_vertices and arcs in dead_arcs, splicing the
    surviving arcs through the given pass-through slot pairs.  Strands that
    close into vertex-free circles get the degree-2 loop encoding."""
    kinds = list(d.kinds)
    degrees = list(d.degrees)
    over = list(d.over_axis)
    slot_arc: dict[ArcEnd, tuple[int, ArcEnd]] = {}
    for i, (a, b) in enumerate(d.arcs):
        if i in dead_arcs:
            continue
        slot_arc[a] = (i, b)
        slot_arc[b] = (i, a)

    visited: set[int] = set()
    new_arcs: list[Arc] = []

    def walk(start: ArcEnd) -> ArcEnd:
        """Follow splices from a free end; return the far free end."""
        end = start
        while True:
            i, other = slot_arc[end]
            visited.add(i)
            if other[0] not in dead_vertices:
                return other
            end = connector[other]

    for i, (a, b) in enumerate(d.arcs):
        if i in dead_arcs or i in visited:
            continue
        if a[0] not in dead_vertices and b[0] not in dead_vertices:
            visited.add(i)
            new_arcs.append((a, b))
        elif a[0] not in dead_vertices or b[0] not in dead_vertices:
            free = a if a[0] not in dead_vertices else b
            far = walk(free)
            new_arcs.append((free, far))
    for i, (a, b) in enumerate(d.arcs):
        if i in dead_arcs or i in visited:
            continue
        # closed chain entirely through deleted crossings: a bare circle
        end = connector[b]
        visited.add(i)
        while True:
            j, other = slot_arc[end]
            if j in visited:
                break
            visited.add(j)
            end = connector[other]
        v = len(kinds)
        kinds.append(VERTEX)
        degrees.append(2)
        over.append(None)
        new_arcs.append(((v, 0), (v, 1)))

    remap = {}
    nk, ndeg, nov = [], [], []
    for v in range(len(kinds)):
        if v in dead_vertices:
            continue
        remap[v] = len(nk)
        nk.append(kinds[v])
        ndeg.append(degrees[v])
        nov.append(over[v])
    arcs = [((remap[va], sa), (remap[vb], sb)) for (va, sa), (vb, sb) in new_arcs]
    return nk, ndeg, nov, arcs


def reidemeister(d: Diagram, move: str, site: tuple) -> Diagram:
    if not validate(d):
        raise DiagramError("invalid input diagram")
    handler = {"R1+": _r1_plus, "R1-": _r1_minus, "R2+": _r2_plus,
               "R2-": _r2_minus, "R3": _r3}.get(move)
    if handler is None:
        raise IllegalMove(f"unknown move {move!r}")
    return handler(d, tuple(site))


def _r1_plus(d: Diagram, site: tuple) -> Diagram:
    try:
        arc, curl, sign = site
    except (TypeError, ValueError):
        raise IllegalMove("R1+ site must be (arc, curl, sign)") from None
    if not (0 <= arc < len(d.arcs)) or curl not in (0, 1) or sign not in (0, 1):
        raise IllegalMove(f"R1+ site {site} does not name an arc with curl/sign bits")
    kinds = list(d.kinds)
    degrees = list(d.degrees)
    over = list(d.over_axis)
    arcs = [a for i, a in enumerate(d.arcs) if i != arc]
    u, v = d.arcs[arc]
    x = len(kinds)
    kinds.append(CROSSING)
    degrees.append(4)
    over.append(sign)
    j = 1 if curl == 0 else 3
    arcs.append((u, (x, 0)))
    arcs.append(((x, 2), (x, j)))          # the kink loop
    arcs.append(((x, (j + 2) % 4), v))
    return _rebuild(kinds, degrees, over, arcs)


def _loop_sites(d: Diagram) -> list[tuple[int, int]]:
    sites = []
    for i, (a, b) in enumerate(d.arcs):
        if a[0] == b[0] and d.kinds[a[0]] == CROSSING:
            if (a[1] - b[1]) % 4 in (1, 3):
                sites.append((a[0], i))
    return sorted(sites)


def _r1_minus(d: Diagram, site: tuple) -> Diagram:
    if tuple(site) not in _loop_sites(d):
        raise IllegalMove(f"R1- site {site}: no kink loop at that crossing")
    x, _loop_arc = site
    # antipodal pass-through; the chain walk runs through the kink loop and
    # comes out at the other outer slot
    connector = {(x, s): (x, (s + 2) % 4) for s in range(4)}
    return _rebuild(*_splice_out(d, {x}, set(), connector))


def _r2_plus(d: Diagram, site: tuple) -> Diagram:
    try:
        d1, d2, ov = site
    except (TypeError, ValueError):
        raise IllegalMove("R2+ site must be (dart1, dart2, over)") from None
    m = d.to_map()
    if not (0 <= d1 < m.ndarts and 0 <= d2 < m.ndarts) or ov not in (0, 1):
        raise IllegalMove(f"R2+ site {site} out of range")
    if m.face_of(d1) != m.face_of(d2):
        raise IllegalMove(f"R2+ site {site}: darts lie on different faces")
    a1, a2 = d1 // 2, d2 // 2
    if a1 == a2:
        raise IllegalMove(f"R2+ site {site}: both darts on arc {a1}")
    # push a finger of arc a1 across arc a2 through the shared face;
    # arc ai is read in the direction of dart di.
    p1, q1 = d.arcs[a1] if d1 % 2 == 0 else d.arcs[a1][::-1]
    p2, q2 = d.arcs[a2] if d2 % 2 == 0 else d.arcs[a2][::-1]
    kinds, degrees, over = list(d.kinds), list(d.degrees), list(d.over_axis)
    x = len(kinds)
    y = x + 1
    kinds += [CROSSING, CROSSING]
    degrees += [4, 4]
    over += [0 if ov == 1 else 1] * 2      # finger strand sits on axis (0,2)
    arcs = [a for i, a in enumerate(d.arcs) if i not in (a1, a2)]
    arcs += [
        (p1, (x, 0)), ((x, 2), (y, 2)), ((y, 0), q1),
        (p2, (y, 3)), ((y, 1), (x, 3)), ((x, 1), q2),
    ]
    return _rebuild(kinds, degrees, over, arcs)


def _strand_over(d: Diagram, arc: int, x: int) -> bool:
    """Is the strand that `arc` belongs to the over strand at crossing x?"""
    for end in d.arcs[arc]:
        if end[0] == x:
            return end[1] % 2 == d.over_axis[x]
    raise IllegalMove(f"arc {arc} does not meet crossing {x}")


def _bigon_sites(d: Diagram) -> list[tuple[int]]:
    m = d.to_map()
    sites = []
    for cyc in m.faces():
        if len(cyc) != 2:
            continue
        e1, e2 = cyc[0] // 2, cyc[1] // 2
        if e1 == e2:
            continue
        (xa, _), (xb, _) = d.arcs[e1]
        if xa == xb or d.kinds[xa] != CROSSING or d.kinds[xb] != CROSSING:
            continue
        if {v for v, _ in d.arcs[e2]} != {xa, xb}:
            continue
        if _strand_over(d, e1, xa) == _strand_over(d, e1, xb):
            sites.append((min(cyc),))
    return sorted(sites)


def _r2_minus(d: Diagram, site: tuple) -> Diagram:
    if tuple(site) not in _bigon_sites(d):
        raise IllegalMove(f"R2- site {site}: no removable bigon there")
    m = d.to_map()
    cyc = m.faces()[m.face_of(site[0])]
    e1, e2 = cyc[0] // 2, cyc[1] // 2
    xa, xb = d.arcs[e1][0][0], d.arcs[e1][1][0]
    # deleting a crossing splices each strand straight through: every slot
    # passes to its antipode, and the chain walk consumes the bigon arcs
    connector = {(x, s): (x, (s + 2) % 4) for x in (xa, xb) for s in range(4)}
    res = _rebuild(*_splice_out(d, {xa, xb}, set(), connector))
    if not validate(res).connected:
        raise IllegalMove(f"R2- site {site}: removal would split the diagram")
    return res


def _triangle_sites(d: Diagram) -> list[tuple[int, int]]:
    m = d.to_map()
    sites = []
    for cyc in m.faces():
        if len(cyc) != 3:
            continue
        arcs3 = [dd // 2 for dd in cyc]
        allv = {v for a in arcs3 for v, _ in d.arcs[a]}
        if len(set(arcs3)) != 3 or len(allv) != 3:
            continue
        if any(d.kinds[v] != CROSSING for v in allv):
            continue
        for a in sorted(set(arcs3)):
            (x1, _), (x2, _) = d.arcs[a]
            if _strand_over(d, a, x1) == _strand_over(d, a, x2):
                sites.append((min(cyc), a))
    return sorted(set(sites))


def _r3(d: Diagram, site: tuple) -> Diagram:
    if tuple(site) not in _triangle_sites(d):
        raise IllegalMove(f"R3 site {site}: no slidable triangle there")
    m = d.to_map()
    face_dart, _slide_arc = site
    cyc = m.faces()[m.face_of(face_dart)]
    tri_arcs = sorted({dd // 2 for dd in cyc})
    # The triangle re-forms at the antipodal corner of each crossing: each
    # triangle arc end moves to its antipodal slot, and the outer arc that
    # occupied that antipode migrates to the triangle arc's old slot at the
    # OTHER end of the triangle arc (each strand's crossing order along the
    # triangle reverses, as in the braid relation).
    reloc: dict[ArcEnd, ArcEnd] = {}
    for a in tri_arcs:
        (u, su), (v, sv) = d.arcs[a]
        reloc[(u, su)] = (u, (su + 2) % 4)
        reloc[(v, sv)] = (v, (sv + 2) % 4)
        reloc[(u, (su + 2) % 4)] = (v, sv)
        reloc[(v, (sv + 2) % 4)] = (u, su)
    arcs = [(reloc.get(e1, e1), reloc.get(e2, e2)) for e1, e2 in d.arcs]
    return _rebuild(list(d.kinds), list(d.degrees), list(d.over_axis), arcs)


MOVES = ("R1+", "R1-", "R2+", "R2-", "R3")


def legal_sites(d: Diagram, move: str) -> list[tuple]:
    """All legal site descriptors for a move, in canonical order."""
    if move == "R1+":
        return [(a, c, s) for a in range(len(d.arcs)) for c in (0, 1) for s in (0, 1)]
    if move == "R1-":
        return _loop_sites(d)
    if move == "R2+":
        m = d.to_map()
        sites = []
        for cyc in m.faces():
            for i, d1 in enumerate(cyc):
                for d2 in cyc[i + 1:]:
                    if d1 // 2 != d2 // 2:
                        sites.extend([(d1, d2, 0), (d1, d2, 1)])
        return sorted(sites)
    if move == "R2-":
        out = []
        for s in _bigon_sites(d):
            try:
                _r2_minus(d, s)
            except IllegalMove:
                continue
            out.append(s)
        return out
    if move == "R3":
        return _triangle_sites(d)
    raise IllegalMove(f"unknown move {move!r}")


_DELTA = {"R1+": 1, "R1-": -1, "R2+": 2, "R2-": -2, "R3": 0}


def random_walk(d: Diagram, n_moves: int, seed: int, max_crossings: int) -> Diagram:
    """Apply n_moves uniformly sampled legal moves, deterministic in the seed.

    Moves that would push the crossing count above max_crossings are
    excluded before sampling; a step with no admissible move is skipped.
    """
    if n_moves < 0:
        raise DiagramError("n_moves must be nonnegative")
    rng = random.Random(seed)
    cur = d
    for step in range(n_moves):
        budget = max_crossings - cur.n_crossings
        candidates = []
        for mv in MOVES:
            if _DELTA[mv] > budget:
                continue
            candidates.extend((mv, s) for s in legal_sites(cur, mv))
        if not candidates:
            logger.info("random_walk step %d: no admissible move, skipping", step)
            continue
        mv, s = candidates[rng.randrange(len(candidates))]
        cur = reidemeister(cur, mv, s)
    return cur
