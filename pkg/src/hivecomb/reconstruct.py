"""Rebuilding a honeycomb from its diagram, and the operations that rest on
that: overlays, tripod witnesses, eliding, and breathing along a loop.

Reconstruction glues one small dual region per diagram vertex, walking the
finite pieces to pin the relative translations; inconsistent walks mean the
measure is not a honeycomb diagram.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .diagram import Diagram, DiagramVertex, canonical_diagram, diagram
from .errors import (DirectionViolation, EpsilonTooLarge, NotADiagram,
                     NotDominant, NotSimplyDegenerate, ParallelLinesOnly,
                     TypeDoesNotClose)
from .honeycomb import (CCW_CLASSES, Honeycomb, Tinkertoy,
                        build_tinkertoy_from_type, validate_configuration)
from .plane import (DIRECTION_ORDER, INF, Direction, PlanePoint,
                    SegmentOrRay, frac, perp_step)
from .weights import as_weight

_DIR_INDEX = {d.name: i for i, d in enumerate(DIRECTION_ORDER)}


def _polygon_sides(census):
    """Start and end corner of each dual-region side, keyed by ray class."""
    sides = {}
    cur = (0, 0, 0)
    for idx in CCW_CLASSES:
        m = census[idx]
        if m == 0:
            continue
        s = perp_step(DIRECTION_ORDER[idx])
        nxt = (cur[0] + m * s[0], cur[1] + m * s[1], cur[2] + m * s[2])
        sides[idx] = (cur, nxt)
        cur = nxt
    return sides


def _vsub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _vadd(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def reconstruct(m: Diagram) -> Honeycomb:
    """The unique honeycomb with this diagram.

    The result's tinkertoy is the type's standard-position tinkertoy, so
    honeycombs of standard tinkertoys round-trip on the nose.  NotADiagram
    explains any failure: fractional multiplicities, disconnected support,
    or region gluings that do not match up ("monodromy").
    """
    m = canonical_diagram(m.segments)
    for s in m.segments:
        if s.multiplicity.denominator != 1:
            raise NotADiagram("nonintegral-multiplicity",
                              f"piece {s} has multiplicity {s.multiplicity}")

    at = {v.location: i for i, v in enumerate(m.vertices)}
    nverts = len(m.vertices)
    adj = [[] for _ in range(nverts)]
    parent = list(range(nverts))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for s in m.segments:
        if s.is_ray:
            assert s.base in at
            continue
        a, b = at[s.base], at[s.end]
        adj[a].append((b, s.direction))
        adj[b].append((a, s.direction.opposite()))
        parent[find(a)] = find(b)
    if len({find(i) for i in range(nverts)}) > 1:
        raise NotADiagram("disconnected", "support has several components")

    census = m.ray_census()
    census = tuple(int(c) for c in census)
    try:
        whole = build_tinkertoy_from_type(census)
    except TypeDoesNotClose as ex:
        raise NotADiagram("tension", str(ex)) from ex

    local = {}  # census -> (tinkertoy, polygon sides), shared across vertices
    for v in m.vertices:
        c = tuple(int(x) for x in v.mults)
        if c not in local:
            local[c] = (build_tinkertoy_from_type(c), _polygon_sides(c))

    # walk the finite pieces, pinning each region's translation
    trans = {0: (0, 0, 0)}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        ca = tuple(int(x) for x in m.vertices[a].mults)
        for b, d in adj[a]:
            cb = tuple(int(x) for x in m.vertices[b].mults)
            ci = _DIR_INDEX[d.name]
            co = _DIR_INDEX[d.opposite().name]
            t = _vadd(trans[a],
                      _vsub(local[ca][1][ci][1], local[cb][1][co][0]))
            if b in trans:
                if trans[b] != t:
                    raise NotADiagram(
                        "monodromy",
                        f"gluings disagree at {m.vertices[b].location}")
            else:
                trans[b] = t
                queue.append(b)

    claimed = {}
    for i, v in enumerate(m.vertices):
        c = tuple(int(x) for x in v.mults)
        for w in local[c][0].vertices:
            wp = _vadd(w, trans[i])
            if wp in claimed:
                raise NotADiagram("monodromy",
                                  f"two regions claim lattice vertex {wp}")
            claimed[wp] = i

    delta = _vsub(min(claimed), min(whole.vertices))
    if ((2 * delta[0] + delta[1]) % 3 != 0
            or {_vadd(u, delta) for u in whole.vertices} != set(claimed)):
        raise NotADiagram("monodromy",
                          "regions do not tile the type's dual region")

    pos = {u: m.vertices[claimed[_vadd(u, delta)]].location
           for u in whole.vertices}
    try:
        h = validate_configuration(whole, pos)
    except DirectionViolation as ex:
        raise NotADiagram("monodromy", str(ex)) from ex
    assert diagram(h) == m
    return h


def overlay(h1: Honeycomb, h2: Honeycomb) -> Honeycomb:
    """The honeycomb whose diagram is the sum of the two diagrams."""
    pieces = list(diagram(h1).segments) + list(diagram(h2).segments)
    try:
        summed = canonical_diagram(pieces)
    except NotADiagram as ex:
        if ex.reason == "parallel-lines":
            raise ParallelLinesOnly(
                "both summands are unions of parallel lines") from ex
        raise
    return reconstruct(summed)


def prv_witness(lam, mu, w, v) -> Honeycomb:
    """Overlay of the n tripods at (lam[w(i)], mu[v(i)], -lam[w(i)]-mu[v(i)]).

    Requires lam[w(i)] + mu[v(i)] to be weakly decreasing in i; the result
    is a honeycomb whose nu-boundary reads off that dominant sum.
    """
    lam = as_weight(lam)
    mu = as_weight(mu)
    n = len(lam)
    if len(mu) != n:
        raise ValueError("lam and mu must have the same length")
    w = tuple(w)
    v = tuple(v)
    if sorted(w) != list(range(n)) or sorted(v) != list(range(n)):
        raise ValueError("w and v must be permutations of 0..n-1")
    sigma = tuple(lam[w[i]] + mu[v[i]] for i in range(n))
    if any(sigma[i] < sigma[i + 1] for i in range(n - 1)):
        raise NotDominant(f"lam[w]+mu[v] = {sigma} is not weakly decreasing")
    pieces = []
    for i in range(n):
        p = PlanePoint(lam[w[i]], mu[v[i]], -lam[w[i]] - mu[v[i]])
        for ray in (DIRECTION_ORDER[0], DIRECTION_ORDER[2], DIRECTION_ORDER[4]):
            pieces.append(SegmentOrRay(p, ray, INF))
    return reconstruct(canonical_diagram(pieces))


@dataclass(frozen=True)
class HalfEdge:
    """A boundary ray of the post-elision graph."""

    node: int
    direction: Direction
    constant: Fraction


@dataclass(frozen=True)
class ElisionEdge:
    """A maximal straight chain between two trivalent vertices."""

    a: int
    b: int
    direction: Direction  # travelling from a to b
    length: Fraction


class PostElisionGraph:
    """What remains of a diagram after straightening out its crossings."""

    def __init__(self, nodes, edges, half_edges, free_lines):
        self.nodes = tuple(nodes)
        self.edges = tuple(edges)
        self.half_edges = tuple(half_edges)
        self.free_lines = tuple(free_lines)
        parent = list(range(len(self.nodes)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        acyclic = True
        for e in self.edges:
            ra, rb = find(e.a), find(e.b)
            if ra == rb:
                acyclic = False
            parent[ra] = rb
        self.acyclic = acyclic

    def __repr__(self):
        return (f"PostElisionGraph({len(self.nodes)} nodes, "
                f"{len(self.edges)} edges, {len(self.half_edges)} rays, "
                f"acyclic={self.acyclic})")


def elide(m: Diagram) -> PostElisionGraph:
    """Erase crossings, keeping trivalent vertices and straight chains.

    Only simply degenerate diagrams qualify: every vertex a Y, inverted-Y
    or crossing, all multiplicities 1.
    """
    for v in m.vertices:
        if v.kind not in ("Y", "inverted-Y", "crossing") or max(v.mults) != 1:
            raise NotSimplyDegenerate(v)
    nodes = [v for v in m.vertices if v.kind != "crossing"]
    node_idx = {v.location: i for i, v in enumerate(nodes)}
    vert_at = {v.location: v for v in m.vertices}

    leaving = {}
    for s in m.segments:
        leaving[(s.base, s.direction.name)] = s
        if not s.is_ray:
            leaving[(s.end, s.direction.opposite().name)] = s

    edges, half_edges = [], []
    seen = set()
    used_rays = set()
    for i, v in enumerate(nodes):
        for di, d in enumerate(DIRECTION_ORDER):
            if v.mults[di] == 0:
                continue
            p = v.location
            length = Fraction(0)
            while True:
                s = leaving[(p, d.name)]
                if s.is_ray:
                    used_rays.add(s)
                    half_edges.append(HalfEdge(i, d, p[d.constant_axis]))
                    break
                q = s.end if s.base == p else s.base
                length += s.length
                wv = vert_at[q]
                if wv.kind == "crossing":
                    p = q
                    continue
                j = node_idx[q]
                key = frozenset({(i, d.name), (j, d.opposite().name)})
                if key not in seen:
                    seen.add(key)
                    edges.append(ElisionEdge(i, j, d, length))
                break

    free_lines = []
    for s in m.segments:
        if s.is_ray and s not in used_rays:
            used_rays.add(s)
            p, d = s.base, s.direction.opposite()
            while True:
                t = leaving[(p, d.name)]
                if t.is_ray:
                    used_rays.add(t)
                    free_lines.append((d.constant_axis, t.constant()))
                    break
                p = t.end if t.base == p else t.base
    return PostElisionGraph(nodes, edges, half_edges, free_lines)


def _cross2_xy(a, b):
    return a[0] * b[1] - a[1] * b[0]


def breathe_loop(h: Honeycomb, loop, epsilon) -> Honeycomb:
    """Slide the edges of a loop, preserving boundary and all directions.

    loop: trivalent diagram-vertex locations in cyclic order.  Each loop
    vertex moves along its third edge; positive epsilon moves each vertex
    of a clockwise-traversed loop outward.  Raises EpsilonTooLarge with the
    largest legal step when some edge would go negative.
    """
    eps = frac(epsilon)
    m = diagram(h)
    graph = elide(m)

    loop_pts = [p if isinstance(p, PlanePoint) else PlanePoint(*p)
                for p in loop]
    if len(loop_pts) < 3 or len(set(loop_pts)) != len(loop_pts):
        raise ValueError("a loop visits at least three distinct vertices")
    node_at = {graph.nodes[i].location: i for i in range(len(graph.nodes))}
    try:
        idxs = [node_at[p] for p in loop_pts]
    except KeyError as ex:
        raise ValueError(f"{ex.args[0]} is not a trivalent vertex") from ex

    step_dir = {}
    for e in graph.edges:
        step_dir[(e.a, e.b)] = e.direction
        step_dir[(e.b, e.a)] = e.direction.opposite()
    k = len(idxs)
    dirs = []
    for t in range(k):
        pair = (idxs[t], idxs[(t + 1) % k])
        if pair not in step_dir:
            raise ValueError(f"loop vertices {loop_pts[t]} and "
                             f"{loop_pts[(t + 1) % k]} are not joined")
        dirs.append(step_dir[pair])

    # unit-rate displacement of each loop vertex: along its third edge,
    # outward exactly when the turn is clockwise in the (x,y)-chart
    disp = {}
    for t in range(k):
        a, b = dirs[t - 1], dirs[t]
        sign = 1 if _cross2_xy(a.step, b.step) < 0 else -1
        f = _vsub(a.step, b.step)
        disp[idxs[t]] = tuple(Fraction(sign * c) for c in f)

    # moving chain lines, then crossings carried along by them
    dgn_regions = _regions_by_location(h)
    moves = {}  # tinkertoy vertex -> unit-rate displacement
    for t in range(k):
        u = idxs[t]
        members = dgn_regions[graph.nodes[u].location]
        assert len(members) == 1
        moves[next(iter(members))] = disp[u]

    cross_shift = {}  # crossing location -> {axis: shift rate}
    for t in range(k):
        u, w = idxs[t], idxs[(t + 1) % k]
        c = dirs[t]
        axis = c.constant_axis
        rate_u, rate_w = disp[u], disp[w]
        assert rate_w[axis] - rate_u[axis] == 0
        pu, pw = graph.nodes[u].location, graph.nodes[w].location
        lo, hi = sorted((pu[c.param_axis], pw[c.param_axis]))
        for x in m.vertices:
            if x.kind != "crossing" or x.location[axis] != pu[axis]:
                continue
            tpar = x.location[c.param_axis]
            if lo < tpar < hi:
                cross_shift.setdefault(x.location, {})[axis] = rate_u[axis]
    for loc, shifts in cross_shift.items():
        vec = [Fraction(0)] * 3
        for axis, s in shifts.items():
            vec[axis] = s
        free = [i for i in range(3) if i not in shifts]
        assert len(free) >= 1
        vec[free[0]] = -sum(vec)
        for w in dgn_regions[loc]:
            moves[w] = tuple(vec)

    # exact largest legal step from the finite edge lengths
    zero = (Fraction(0),) * 3
    rates = {}
    for e in h.tinkertoy.finite_edges:
        dv = _vsub(moves.get(e.head, zero), moves.get(e.tail, zero))
        step = e.direction.step
        pivot = next(i for i in range(3) if step[i] != 0)
        rate = Fraction(dv[pivot], step[pivot])
        assert all(dv[i] == rate * step[i] for i in range(3))
        if rate != 0:
            rates[e] = rate
    if eps > 0:
        bounds = [-h.edge_length(e) / r for e, r in rates.items() if r < 0]
        limit = min(bounds, default=None)
        if limit is not None and eps > limit:
            raise EpsilonTooLarge(limit)
    elif eps < 0:
        bounds = [-h.edge_length(e) / r for e, r in rates.items() if r > 0]
        limit = max(bounds, default=None)
        if limit is not None and eps < limit:
            raise EpsilonTooLarge(limit)

    pos = {v: h.position(v).translate(tuple(eps * c for c in moves[v]))
           if v in moves else h.position(v)
           for v in h.tinkertoy.vertices}
    return validate_configuration(h.tinkertoy, pos)


def _regions_by_location(h: Honeycomb):
    from .diagram import degeneracy_graph

    dgn = degeneracy_graph(h)
    return {r.location: r.members for r in dgn.regions}
