"""Oriented link diagrams as combinatorial crossing lists.

A diagram is a set of crossings plus a count of crossingless unknotted
components ("free loops").  Each crossing stores its sign and the four
incident arc identifiers split by role:

    [sign, u_in, o_in, u_out, o_out]

where u/o mark the under/over strand and in/out the orientation.  Arcs
are directed edges from an out-slot to an in-slot; the planar embedding
itself is not stored -- every operation used here (switching a crossing,
oriented smoothing, kink and same-top-bigon removal) is determined by
this data and preserves realizability, so diagrams stay honest planar
link diagrams throughout.

Builders:

* ``code_to_diagram`` -- the standard projection of a basket boundary:
  feet on a circle, each band a thin straight strip along its chord, all
  four crossings of an interleaving strip pair with the same band on top.
  Chord geometry is done in exact rational arithmetic (points on the
  rational circle) so crossing order along strands is never a float
  guess.
* ``braid_closure_diagram`` / ``torus_braid_diagram`` -- braid closures.
* ``pretzel_diagram`` / ``twist_knot_diagram`` -- vertical twist regions
  closed off left to right (used for table data preparation and tests).

The over/under rule at band-band crossings is a single global convention
(`LATER_PAGE_OVER`): the band in the later page goes on top.  With this
choice the staircase code (1,2,3,4,1,2,3,4) bounds the *left-handed*
trefoil, matching the geometric picture; the opposite choice produces
the mirror and is kept around for tests.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Optional

from .codes import FlatBasketCode

# Band in the later page passes over; fixed by requiring the staircase
# code (1,2,3,4,1,2,3,4) to bound the left-handed trefoil.
LATER_PAGE_OVER = True


class DiagramError(ValueError):
    pass


class _DegenerateGeometry(Exception):
    """Chord placement produced coincident crossings; reseed and retry."""


class LinkDiagram:
    """Mutable oriented link diagram (crossing list + free loops)."""

    __slots__ = ("crossings", "free_loops", "head", "tail", "_next_arc_id", "_next_cid")

    def __init__(self) -> None:
        self.crossings: dict[int, list[int]] = {}
        self.free_loops = 0
        # arc -> (crossing id, entering/leaving on the over strand?)
        self.head: dict[int, tuple[int, bool]] = {}
        self.tail: dict[int, tuple[int, bool]] = {}
        self._next_arc_id = 0
        self._next_cid = 0

    # -- construction ----------------------------------------------------

    def new_arc(self) -> int:
        a = self._next_arc_id
        self._next_arc_id += 1
        return a

    def add_crossing(self, sign: int, u_in: int, o_in: int, u_out: int, o_out: int) -> int:
        cid = self._next_cid
        self._next_cid += 1
        self.crossings[cid] = [sign, u_in, o_in, u_out, o_out]
        self.head[u_in] = (cid, False)
        self.head[o_in] = (cid, True)
        self.tail[u_out] = (cid, False)
        self.tail[o_out] = (cid, True)
        return cid

    @classmethod
    def from_crossings(
        cls, crossings: Iterable[tuple[int, int, int, int, int]], free_loops: int = 0
    ) -> "LinkDiagram":
        d = cls()
        max_arc = -1
        for sign, u_in, o_in, u_out, o_out in crossings:
            d.add_crossing(sign, u_in, o_in, u_out, o_out)
            max_arc = max(max_arc, u_in, o_in, u_out, o_out)
        d._next_arc_id = max_arc + 1
        d.free_loops = free_loops
        d.check()
        return d

    def copy(self) -> "LinkDiagram":
        d = LinkDiagram.__new__(LinkDiagram)
        d.crossings = {cid: rec[:] for cid, rec in self.crossings.items()}
        d.free_loops = self.free_loops
        d.head = dict(self.head)
        d.tail = dict(self.tail)
        d._next_arc_id = self._next_arc_id
        d._next_cid = self._next_cid
        return d

    def check(self) -> None:
        """Structural consistency; raises DiagramError when violated."""
        heads: dict[int, tuple[int, bool]] = {}
        tails: dict[int, tuple[int, bool]] = {}
        for cid, (sign, u_in, o_in, u_out, o_out) in self.crossings.items():
            if sign not in (1, -1):
                raise DiagramError(f"crossing {cid} has sign {sign}")
            for arc, slot in ((u_in, False), (o_in, True)):
                if arc in heads:
                    raise DiagramError(f"arc {arc} has two heads")
                heads[arc] = (cid, slot)
            for arc, slot in ((u_out, False), (o_out, True)):
                if arc in tails:
                    raise DiagramError(f"arc {arc} has two tails")
                tails[arc] = (cid, slot)
        if set(heads) != set(tails):
            raise DiagramError("arcs do not pair heads with tails")
        if heads != self.head or tails != self.tail:
            raise DiagramError("stale head/tail maps")
        if self.free_loops < 0:
            raise DiagramError("negative free loop count")

    # -- basic data --------------------------------------------------------

    def crossing_count(self) -> int:
        return len(self.crossings)

    def writhe(self) -> int:
        return sum(rec[0] for rec in self.crossings.values())

    def next_arc(self, arc: int) -> int:
        cid, over = self.head[arc]
        rec = self.crossings[cid]
        return rec[4] if over else rec[3]

    def components(self) -> list[list[int]]:
        """Closed strand components as arc cycles, ordered by smallest arc."""
        seen: set[int] = set()
        comps = []
        for start in sorted(self.head):
            if start in seen:
                continue
            cycle = []
            a = start
            while a not in seen:
                seen.add(a)
                cycle.append(a)
                a = self.next_arc(a)
            comps.append(cycle)
        return comps

    def count_components(self) -> int:
        return len(self.components()) + self.free_loops

    # -- skein moves --------------------------------------------------------

    def switch(self, cid: int) -> None:
        """Exchange over and under strand at a crossing (sign flips)."""
        sign, u_in, o_in, u_out, o_out = self.crossings[cid]
        self.crossings[cid] = [-sign, o_in, u_in, o_out, u_out]
        self.head[u_in] = (cid, True)
        self.head[o_in] = (cid, False)
        self.tail[u_out] = (cid, True)
        self.tail[o_out] = (cid, False)

    def smooth(self, cid: int) -> None:
        """Oriented smoothing: over-in joins under-out, under-in joins over-out."""
        _, u_in, o_in, u_out, o_out = self.crossings[cid]
        self._remove_with_splices({cid}, [(o_in, u_out), (u_in, o_out)])

    def _remove_passthrough(self, cids: set[int]) -> None:
        splices = []
        for cid in cids:
            _, u_in, o_in, u_out, o_out = self.crossings[cid]
            splices.append((o_in, o_out))
            splices.append((u_in, u_out))
        self._remove_with_splices(cids, splices)

    def _remove_with_splices(
        self, cids: set[int], splices: list[tuple[int, int]]
    ) -> None:
        """Delete crossings and rejoin strands along the given splices.

        Each splice (a, b) says the strand leaves dying arc-head a and
        continues into dying arc-tail b.  Chains of splices merge into the
        first arc; closed splice cycles become free loops.
        """
        for cid in cids:
            del self.crossings[cid]
        nxt = dict(splices)
        outs = set(nxt.values())
        handled: set[int] = set()
        for a0 in sorted(nxt):
            if a0 in outs:
                continue
            chain = [a0]
            cur = nxt[a0]
            while cur in nxt:
                chain.append(cur)
                cur = nxt[cur]
            chain.append(cur)
            term = chain[-1]
            head_t = self.head[term]
            self.head[a0] = head_t
            cid2, over2 = head_t
            self.crossings[cid2][2 if over2 else 1] = a0
            for x in chain[1:]:
                self.head.pop(x, None)
                self.tail.pop(x, None)
            handled.update(chain)
        for a in nxt:
            if a in handled:
                continue
            cur = a
            while cur not in handled:
                handled.add(cur)
                self.head.pop(cur, None)
                self.tail.pop(cur, None)
                cur = nxt[cur]
            self.free_loops += 1

    # -- reductions -----------------------------------------------------------

    def _find_kink(self) -> Optional[int]:
        for cid, (_s, u_in, o_in, u_out, o_out) in self.crossings.items():
            if o_out == u_in or u_out == o_in:
                return cid
        return None

    def _find_same_top_bigon(self) -> Optional[tuple[int, int]]:
        for arc, (c, over_t) in self.tail.items():
            if not over_t:
                continue
            d, over_h = self.head[arc]
            if not over_h or d == c:
                continue
            # over strand runs c -> d on top at both ends; look for the
            # matching under arc between the same two crossings.
            rec_c, rec_d = self.crossings[c], self.crossings[d]
            y1 = rec_c[3]  # u_out at c
            if self.head.get(y1) == (d, False):
                return (c, d)
            y2 = rec_d[3]  # u_out at d
            if self.head.get(y2) == (c, False):
                return (c, d)
        return None

    def simplify(self, effort: str = "basic") -> "LinkDiagram":
        """Reduce by kink removal and same-top bigon removal to a fixpoint.

        Never increases the crossing number, preserves the oriented link
        type, idempotent.  ``effort`` is accepted for interface stability;
        only the basic level exists.
        """
        if effort not in ("basic",):
            raise DiagramError(f"unknown simplification effort {effort!r}")
        while True:
            cid = self._find_kink()
            if cid is not None:
                self._remove_passthrough({cid})
                continue
            pair = self._find_same_top_bigon()
            if pair is not None:
                self._remove_passthrough(set(pair))
                continue
            break
        return self

    def simplified(self, effort: str = "basic") -> "LinkDiagram":
        return self.copy().simplify(effort)

    # -- traversal order for the skein recursion -------------------------------

    def first_bad_crossing(self) -> Optional[int]:
        """First crossing (in basepoint traversal order) whose first visit
        arrives on the under strand; None when the diagram is descending."""
        visited: set[int] = set()
        for comp in self.components():
            for arc in comp:
                cid, over = self.head[arc]
                if cid in visited:
                    continue
                if not over:
                    return cid
                visited.add(cid)
        return None

    # -- canonical-ish encoding -------------------------------------------------

    def _renumbered(self) -> tuple[tuple[tuple[int, int, int, int, int], ...], int]:
        order = sorted(self.crossings)
        arc_map: dict[int, int] = {}

        def num(a: int) -> int:
            if a not in arc_map:
                arc_map[a] = len(arc_map)
            return arc_map[a]

        rows = []
        for cid in order:
            sign, u_in, o_in, u_out, o_out = self.crossings[cid]
            rows.append((sign, num(u_in), num(o_in), num(u_out), num(o_out)))
        return tuple(rows), self.free_loops

    def memo_key(self) -> tuple:
        return self._renumbered()

    # -- serialization ------------------------------------------------------------

    def serialize(self) -> str:
        """PD-style text: one ``X u_in o_in u_out o_out sign`` line per
        crossing plus a ``loops: k`` trailer.  Round-trips bit-exactly."""
        rows, loops = self._renumbered()
        lines = [
            f"X {u_in} {o_in} {u_out} {o_out} {'+' if sign > 0 else '-'}"
            for sign, u_in, o_in, u_out, o_out in rows
        ]
        lines.append(f"loops: {loops}")
        return "\n".join(lines)

    _X_RE = re.compile(r"^X (\d+) (\d+) (\d+) (\d+) ([+-])$")
    _LOOPS_RE = re.compile(r"^loops: (\d+)$")

    @classmethod
    def parse(cls, text: str) -> "LinkDiagram":
        crossings = []
        loops = None
        for line in text.strip().splitlines():
            line = line.strip()
            if not line:
                continue
            m = cls._X_RE.match(line)
            if m:
                u_in, o_in, u_out, o_out = (int(g) for g in m.groups()[:4])
                sign = 1 if m.group(5) == "+" else -1
                crossings.append((sign, u_in, o_in, u_out, o_out))
                continue
            m = cls._LOOPS_RE.match(line)
            if m:
                loops = int(m.group(1))
                continue
            raise DiagramError(f"bad diagram line: {line!r}")
        if loops is None:
            raise DiagramError("missing 'loops:' trailer")
        return cls.from_crossings(crossings, loops)

    def __repr__(self) -> str:
        return (
            f"<LinkDiagram {len(self.crossings)} crossings, "
            f"{self.count_components()} components>"
        )


def diagram_stats(diagram: LinkDiagram) -> tuple[int, int, int]:
    """(components, writhe, crossing count)."""
    return (diagram.count_components(), diagram.writhe(), diagram.crossing_count())


# ---------------------------------------------------------------------------
# Basket code -> diagram (exact chord arrangement)
# ---------------------------------------------------------------------------

def _circle_points(count: int, seed: int) -> list[tuple[Fraction, Fraction]]:
    # Rational circle via the tangent half-angle parametrization; the
    # deterministic jitter (below half the spacing) breaks symmetric
    # alignments without changing the cyclic order.
    pts = []
    for j in range(count):
        jitter = Fraction(((j + 1) * (seed + 1) * 2654435761) % 1024, 2048)
        s = Fraction(4 * j) + jitter
        den = 1 + s * s
        pts.append(((1 - s * s) / den, 2 * s / den))
    return pts


def _cross(ax: Fraction, ay: Fraction, bx: Fraction, by: Fraction) -> Fraction:
    return ax * by - ay * bx


def code_to_diagram(
    code: FlatBasketCode, later_page_over: Optional[bool] = None
) -> LinkDiagram:
    """Standard projection of the basket boundary.

    2n feet sit on a circle in word order; each band contributes the two
    sides of a thin straight strip along its chord; each interleaving
    pair of bands meets in exactly four crossings, all with the same band
    on top (the later page by default).  Boundary orientation is induced
    from the disk, i.e. all circle arcs run counterclockwise.
    """
    over_larger = LATER_PAGE_OVER if later_page_over is None else later_page_over
    for seed in range(64):
        try:
            return _build_chord_diagram(code, over_larger, seed)
        except _DegenerateGeometry:
            continue
    raise DiagramError("no generic chord placement found")  # pragma: no cover


def _build_chord_diagram(
    code: FlatBasketCode, over_larger: bool, seed: int
) -> LinkDiagram:
    word = code.word
    two_n = len(word)
    other = code.other_foot()
    pts = _circle_points(2 * two_n, seed)

    # Side k runs from the entry point of foot k to the exit point of the
    # other foot of the same band.  Entry of foot k is circle index 2k,
    # exit is 2k+1; indices increase counterclockwise.
    side_start = [2 * k for k in range(two_n)]
    side_end = [2 * other[k] + 1 for k in range(two_n)]

    def interleaved(a: int, b: int) -> bool:
        a1, a2 = sorted((side_start[a], side_end[a]))
        b1, b2 = sorted((side_start[b], side_end[b]))
        return (a1 < b1 < a2) != (a1 < b2 < a2)

    # Exact straight-segment intersections.
    crossing_info: list[dict] = []
    on_side: dict[int, list[tuple[Fraction, int]]] = {k: [] for k in range(two_n)}
    for a in range(two_n):
        pa1, pa2 = pts[side_start[a]], pts[side_end[a]]
        da = (pa2[0] - pa1[0], pa2[1] - pa1[1])
        for b in range(a + 1, two_n):
            if word[a] == word[b] or not interleaved(a, b):
                continue
            pb1, pb2 = pts[side_start[b]], pts[side_end[b]]
            db = (pb2[0] - pb1[0], pb2[1] - pb1[1])
            denom = _cross(da[0], da[1], db[0], db[1])
            if denom == 0:
                raise _DegenerateGeometry
            wx, wy = pb1[0] - pa1[0], pb1[1] - pa1[1]
            t_a = _cross(wx, wy, db[0], db[1]) / denom
            t_b = _cross(wx, wy, da[0], da[1]) / denom
            if not (0 < t_a < 1 and 0 < t_b < 1):
                raise _DegenerateGeometry
            a_over = (word[a] > word[b]) == over_larger
            if a_over:
                sign = 1 if _cross(da[0], da[1], db[0], db[1]) > 0 else -1
            else:
                sign = 1 if _cross(db[0], db[1], da[0], da[1]) > 0 else -1
            cid = len(crossing_info)
            crossing_info.append({"a": a, "b": b, "a_over": a_over, "sign": sign})
            on_side[a].append((t_a, cid))
            on_side[b].append((t_b, cid))

    for k in range(two_n):
        on_side[k].sort()
        params = [t for t, _ in on_side[k]]
        if len(set(params)) != len(params):
            raise _DegenerateGeometry

    n_inter = len(code.interleaving_pairs())
    assert len(crossing_info) == 4 * n_inter

    # Walk the boundary: circle arc k runs from foot-exit k to foot-entry
    # k+1, then side k+1 carries the walk across the disk.
    diagram = LinkDiagram()
    slots: dict[int, dict[str, int]] = {cid: {} for cid in range(len(crossing_info))}
    visited = [False] * two_n
    for start in range(two_n):
        if visited[start]:
            continue
        first_arc = diagram.new_arc()
        cur = first_arc
        k = start
        met_crossing = False
        while True:
            visited[k] = True
            s = (k + 1) % two_n
            for _t, cid in on_side[s]:
                info = crossing_info[cid]
                over_here = info["a_over"] if info["a"] == s else not info["a_over"]
                nxt = diagram.new_arc()
                if over_here:
                    slots[cid]["o_in"] = cur
                    slots[cid]["o_out"] = nxt
                else:
                    slots[cid]["u_in"] = cur
                    slots[cid]["u_out"] = nxt
                cur = nxt
                met_crossing = True
            k = other[s]
            if k == start:
                break
        if not met_crossing:
            diagram.free_loops += 1
        else:
            # Close the component: the open tail arc is the first arc.
            for cid, sl in slots.items():
                for name in ("o_out", "u_out"):
                    if sl.get(name) == cur:
                        sl[name] = first_arc
    for cid, info in enumerate(crossing_info):
        sl = slots[cid]
        diagram.add_crossing(info["sign"], sl["u_in"], sl["o_in"], sl["u_out"], sl["o_out"])
    diagram.check()
    return diagram


# ---------------------------------------------------------------------------
# Braid closures
# ---------------------------------------------------------------------------

def braid_closure_diagram(word: Iterable[int], strands: int) -> LinkDiagram:
    """Closure of a braid word; letter +i / -i is the positive / negative
    crossing of strands i, i+1 (1-indexed).  All strands are oriented the
    same way, so positive letters give sign +1 crossings."""
    word = list(word)
    if strands < 1:
        raise DiagramError("braid needs at least one strand")
    for g in word:
        if g == 0 or abs(g) >= strands:
            raise DiagramError(f"braid letter {g} out of range for {strands} strands")
    diagram = LinkDiagram()
    starts = [diagram.new_arc() for _ in range(strands)]
    current = starts[:]
    rows = []
    for g in word:
        i = abs(g) - 1
        left, right = current[i], current[i + 1]
        new_left, new_right = diagram.new_arc(), diagram.new_arc()
        if g > 0:
            # over strand runs right-to-left
            rows.append([1, left, right, new_right, new_left])
        else:
            rows.append([-1, right, left, new_left, new_right])
        current[i], current[i + 1] = new_left, new_right
    # Closure: bottom arc of each strand is the top arc.
    rename = {}
    for j in range(strands):
        if current[j] == starts[j]:
            diagram.free_loops += 1
        else:
            rename[current[j]] = starts[j]
    for row in rows:
        for idx in range(1, 5):
            row[idx] = rename.get(row[idx], row[idx])
        diagram.add_crossing(*row)
    diagram.check()
    return diagram


def torus_braid_diagram(p: int, q: int) -> LinkDiagram:
    """Closure of (sigma_1 ... sigma_{p-1})^q on p strands; q < 0 mirrors."""
    if p < 2:
        raise DiagramError(f"torus braid needs p >= 2, got {p}")
    if q == 0:
        raise DiagramError("torus braid needs q != 0")
    letters = list(range(1, p))
    if q < 0:
        letters = [-g for g in letters]
    return braid_closure_diagram(letters * abs(q), p)


# ---------------------------------------------------------------------------
# Pretzel and twist-knot diagrams (vertical twist regions, closed off)
# ---------------------------------------------------------------------------

_PORTS = ("NW", "SW", "SE", "NE")  # counterclockwise
_OPPOSITE = {"NW": "SE", "SE": "NW", "NE": "SW", "SW": "NE"}


def pretzel_diagram(twists: Iterable[int]) -> LinkDiagram:
    """Pretzel link of vertical twist regions q_1, ..., q_k.

    Positive q: the NW-SE strand of each crossing in the region is on
    top; negative q mirrors the region.  Regions are connected top and
    bottom in the standard circular fashion.
    """
    qs = list(twists)
    if not qs or any(q == 0 for q in qs):
        raise DiagramError("pretzel regions must be nonzero")
    crossings: list[tuple[int, bool]] = []  # (region, main_over)
    strip_crossings: list[list[int]] = []
    for q in qs:
        ids = []
        for _ in range(abs(q)):
            ids.append(len(crossings))
            crossings.append((len(strip_crossings), q > 0))
        strip_crossings.append(ids)

    connections: list[tuple[tuple[int, str], tuple[int, str]]] = []
    for ids in strip_crossings:
        for a, b in zip(ids, ids[1:]):
            connections.append(((a, "SW"), (b, "NW")))
            connections.append(((a, "SE"), (b, "NE")))
    k = len(strip_crossings)
    for i in range(k):
        j = (i + 1) % k
        top_right = (strip_crossings[i][0], "NE")
        top_left = (strip_crossings[j][0], "NW")
        connections.append((top_right, top_left))
        bot_right = (strip_crossings[i][-1], "SE")
        bot_left = (strip_crossings[j][-1], "SW")
        connections.append((bot_right, bot_left))

    partner: dict[tuple[int, str], tuple[int, str]] = {}
    for pa, pb in connections:
        partner[pa] = pb
        partner[pb] = pa
    if len(partner) != 4 * len(crossings):
        raise DiagramError("pretzel wiring incomplete")  # pragma: no cover

    # Orient: each connection becomes one arc; propagate directions
    # through crossings (enter a port, leave the opposite one).
    arc_of: dict[frozenset, int] = {}
    diagram = LinkDiagram()
    for pa, pb in connections:
        arc_of[frozenset((pa, pb))] = diagram.new_arc()
    arc_dir: dict[int, tuple[tuple[int, str], tuple[int, str]]] = {}
    for pa, pb in connections:
        arc = arc_of[frozenset((pa, pb))]
        if arc in arc_dir:
            continue
        # orient this component starting here: flow pa -> pb
        cur_out, cur_in = pa, pb
        while True:
            a = arc_of[frozenset((cur_out, cur_in))]
            if a in arc_dir:
                break
            arc_dir[a] = (cur_out, cur_in)
            c, port = cur_in
            exit_port = (c, _OPPOSITE[port])
            cur_out, cur_in = exit_port, partner[exit_port]

    for cid, (_region, main_over) in enumerate(crossings):
        over_ports = ("NW", "SE") if main_over else ("NE", "SW")
        under_ports = ("NE", "SW") if main_over else ("NW", "SE")
        o_in = o_out = u_in = u_out = None
        o_entry = u_entry = None
        for arc, (out_port, in_port) in arc_dir.items():
            for c, port in (out_port,):
                if c == cid:
                    if port in over_ports:
                        o_out = arc
                    else:
                        u_out = arc
            for c, port in (in_port,):
                if c == cid:
                    if port in over_ports:
                        o_in, o_entry = arc, port
                    else:
                        u_in, u_entry = arc, port
        if None in (o_in, o_out, u_in, u_out):
            raise DiagramError("pretzel orientation failed")  # pragma: no cover
        ccw_next = {p: _PORTS[(_PORTS.index(p) + 1) % 4] for p in _PORTS}
        sign = 1 if ccw_next[o_entry] == u_entry else -1
        diagram.add_crossing(sign, u_in, o_in, u_out, o_out)
    diagram.check()
    return diagram


def twist_knot_diagram(m: int) -> LinkDiagram:
    """The m-twist knot: a clasp plus m half twists (pretzel (m, 1, 1))."""
    if m < 1:
        raise DiagramError(f"twist knots need m >= 1, got {m}")
    return pretzel_diagram([m, 1, 1])
