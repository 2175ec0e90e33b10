"""Hives: triangular arrays that coordinatize honeycombs.

A hive of size n assigns a rational to every lattice point (i, j) with
i, j >= 0 and i + j <= n, subject to one inequality per rhombus (pair of
edge-adjacent small triangles): the sum over the two obtuse corners minus
the sum over the two acute corners is >= 0.  Entries are stored in
antidiagonal rows from the zero corner: row r lists (r,0), (r-1,1), ..., (0,r).

Walking the triangle boundary clockwise from the zero corner, consecutive
differences read lambda, then mu, then nu; the zero-sum condition makes the
walk close up.  hive_to_honeycomb / honeycomb_to_hive realize the linear
correspondence with configurations, under which each rhombus value is the
length of one honeycomb edge.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from itertools import product

import numpy as np

from . import _kernels
from .errors import RhombusViolation
from .honeycomb import (EDGE_DIRS, Honeycomb, build_gl_tinkertoy, dual_graph,
                        is_head, validate_configuration)
from .plane import frac, perp_step
from .weights import (BoundaryTriple, as_weight, dominant_vectors, is_integral,
                      sigma_to_nu)


def hive_indices(n):
    """All (i, j) of the size-n triangle in antidiagonal row-major order."""
    return [(r - p, p) for r in range(n + 1) for p in range(r + 1)]


def _flat(i, j):
    r = i + j
    return r * (r + 1) // 2 + j


@dataclass(frozen=True)
class HiveShape:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("hive size must be at least 1")

    @property
    def size(self) -> int:
        return (self.n + 1) * (self.n + 2) // 2

    def indices(self):
        return hive_indices(self.n)

    def interior(self):
        return [(i, j) for i, j in hive_indices(self.n)
                if i >= 1 and j >= 1 and i + j <= self.n - 1]

    def boundary(self):
        return [(i, j) for i, j in hive_indices(self.n)
                if i == 0 or j == 0 or i + j == self.n]


# obtuse pairs differ by one of these steps; each maps to its two acute apexes
_APEX = {
    (0, 1): ((1, 0), (-1, 1)),
    (1, 0): ((1, -1), (0, 1)),
    (1, -1): ((0, -1), (1, 0)),
}


@dataclass(frozen=True)
class Rhombus:
    obtuse: tuple
    acute: tuple

    @property
    def corners(self):
        return self.obtuse + self.acute


def _rhombus_at(p, s):
    apex = _APEX[s]
    return Rhombus((p, (p[0] + s[0], p[1] + s[1])),
                   ((p[0] + apex[0][0], p[1] + apex[0][1]),
                    (p[0] + apex[1][0], p[1] + apex[1][1])))


def rhombi(shape):
    """Every pair of edge-adjacent small triangles, in scan order."""
    n = shape.n if isinstance(shape, HiveShape) else int(shape)
    inside = set(hive_indices(n))
    out = []
    for p in hive_indices(n):
        for s in ((0, 1), (1, 0), (1, -1)):
            r = _rhombus_at(p, s)
            if all(c in inside for c in r.corners):
                out.append(r)
    return out


class Hive:
    """An assignment of exact rationals to the size-n triangle."""

    def __init__(self, n, entries):
        self.n = n
        entries = tuple(frac(x) for x in entries)
        if len(entries) != (n + 1) * (n + 2) // 2:
            raise ValueError(f"a size-{n} hive has {(n+1)*(n+2)//2} entries, "
                             f"got {len(entries)}")
        self.entries = entries

    def value(self, i, j) -> Fraction:
        if i < 0 or j < 0 or i + j > self.n:
            raise KeyError((i, j))
        return self.entries[_flat(i, j)]

    def __getitem__(self, ij):
        return self.value(*ij)

    @property
    def shape(self) -> HiveShape:
        return HiveShape(self.n)

    @property
    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.entries)

    def first_violation(self):
        """The first rhombus (in scan order) with negative value, or None."""
        for r in rhombi(self.n):
            if rhombus_value(self, r) < 0:
                return r
        return None

    @property
    def is_valid(self) -> bool:
        return self.first_violation() is None

    def boundary_triple(self) -> BoundaryTriple:
        n = self.n
        lam = tuple(self.value(i, 0) - self.value(i - 1, 0) for i in range(1, n + 1))
        mu = tuple(self.value(n - t, t) - self.value(n - t + 1, t - 1)
                   for t in range(1, n + 1))
        nu = tuple(self.value(0, n - k) - self.value(0, n - k + 1)
                   for k in range(1, n + 1))
        return BoundaryTriple(lam, mu, nu)

    def replaced(self, ij, v) -> "Hive":
        ent = list(self.entries)
        ent[_flat(*ij)] = frac(v)
        return Hive(self.n, ent)

    def __eq__(self, other):
        return (isinstance(other, Hive) and self.n == other.n
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.n, self.entries))

    def __repr__(self):
        rows = []
        for r in range(self.n + 1):
            rows.append(" ".join(str(self.entries[_flat(r - p, p)])
                                 for p in range(r + 1)))
        return "Hive(" + " | ".join(rows) + ")"


def rhombus_value(H: Hive, r: Rhombus) -> Fraction:
    return (H[r.obtuse[0]] + H[r.obtuse[1]]
            - H[r.acute[0]] - H[r.acute[1]])


def boundary_from_weights(t: BoundaryTriple) -> dict:
    """Boundary entries as partial sums along the clockwise walk."""
    n = t.n
    out = {(0, 0): Fraction(0)}
    run = Fraction(0)
    for i in range(1, n + 1):
        run += t.lam[i - 1]
        out[(i, 0)] = run
    for s in range(1, n + 1):
        run += t.mu[s - 1]
        out[(n - s, s)] = run
    for j in range(n - 1, 0, -1):
        # walking back up the nu side: H(0,j-1) - H(0,j) = nu_{n-j+1}
        run += t.nu[n - j - 1]
        out[(0, j)] = run
    return out


def _hive_from_parts(n, boundary, interior) -> Hive:
    ent = []
    for p in hive_indices(n):
        ent.append(boundary[p] if p in boundary else interior[p])
    return Hive(n, ent)


# ---------------------------------------------------------------------------
# the linear correspondence with honeycomb configurations

def root_of(n, i, j):
    """The dual-graph point of tau_n carrying hive index (i, j)."""
    return (2 * n - 2 * i - j, -n + i - j, -n + i + 2 * j)


def hive_index_of(n, p):
    """Inverse of root_of."""
    a, b, c = p[0] - 2 * n, p[1] + n, p[2] + n
    i, j = (b - a) // 3, -(a + 2 * b) // 3
    assert root_of(n, i, j) == tuple(p)
    return (i, j)


def _gl_size(census):
    n = census[0]
    if tuple(census) != (n, 0, n, 0, n, 0):
        raise ValueError(f"not a GL_n honeycomb type: {census}")
    return n


def hive_to_honeycomb(H: Hive) -> Honeycomb:
    """Place every tau_n vertex using differences of surrounding entries."""
    for r in rhombi(H.n):
        v = rhombus_value(H, r)
        if v < 0:
            raise RhombusViolation(r, v)
    n = H.n
    t = build_gl_tinkertoy(n)
    at_root = {root_of(n, i, j): H.value(i, j) for i, j in hive_indices(n)}
    pos = {}
    for v in t.sorted_vertices:
        sign = 1 if is_head(v) else -1
        offs = [tuple(sign * s for s in d.step) for d in EDGE_DIRS]
        coords = []
        for axis in range(3):
            minus = next(o for o in offs if o[axis] == -1)
            plus = next(o for o in offs if o[axis] == 1)
            coords.append(at_root[tuple(v[k] + minus[k] for k in range(3))]
                          - at_root[tuple(v[k] + plus[k] for k in range(3))])
        pos[v] = tuple(coords)
    return validate_configuration(t, pos)


def honeycomb_to_hive(h: Honeycomb) -> Hive:
    """Invert hive_to_honeycomb, pinning the zero-corner entry to 0.

    Crossing the line of an edge with tail-to-head label d adds that edge's
    constant coordinate: H(p) - H(q) = constant whenever p - q = perp_step(d).
    The filling is path-independent for valid configurations; every dual
    edge is checked.
    """
    n = _gl_size(h.tinkertoy.type)
    std = build_gl_tinkertoy(n)
    if h.tinkertoy != std:
        # relabel vertices onto the standard tinkertoy, keeping positions
        shift = tuple(a - b for a, b in
                      zip(std.sorted_vertices[0], h.tinkertoy.sorted_vertices[0]))
        pos = {tuple(c + s for c, s in zip(v, shift)): h.position(v)
               for v in h.tinkertoy.vertices}
        return honeycomb_to_hive(validate_configuration(std, pos))
    dg = dual_graph(std)
    start = root_of(n, 0, 0)
    values = {start: Fraction(0)}
    queue = [start]
    steps = {}
    for e in std.edges:
        p, q = dg.dual_of[e]
        c = h.edge_constant(e)
        d = perp_step(e.direction)
        if tuple(a - b for a, b in zip(p, q)) == d:
            steps.setdefault(p, []).append((q, -c, e))
            steps.setdefault(q, []).append((p, c, e))
        else:
            assert tuple(a - b for a, b in zip(q, p)) == d
            steps.setdefault(q, []).append((p, -c, e))
            steps.setdefault(p, []).append((q, c, e))
    while queue:
        p = queue.pop()
        for q, delta, e in steps[p]:
            w = values[p] + delta
            if q in values:
                assert values[q] == w, f"inconsistent filling across {e}"
            else:
                values[q] = w
                queue.append(q)
    ent = [values[root_of(n, i, j)] for i, j in hive_indices(n)]
    return Hive(n, ent)


# ---------------------------------------------------------------------------
# counting and enumeration

@cache
def _scan_plan(n):
    """Constraint schedule: each rhombus fires when its last entry is set."""
    order = hive_indices(n)
    pos = {p: k for k, p in enumerate(order)}
    interior = HiveShape(n).interior()
    ipos = {p: k for k, p in enumerate(interior)}
    lower = [[] for _ in interior]
    upper = [[] for _ in interior]
    fixed = []
    for r in rhombi(n):
        inter = [c for c in r.corners if c in ipos]
        if not inter:
            fixed.append(r)
            continue
        last = max(inter, key=lambda c: pos[c])
        k = ipos[last]
        if last in r.obtuse:
            other = r.obtuse[1] if last == r.obtuse[0] else r.obtuse[0]
            lower[k].append((r.acute[0], r.acute[1], other))
        else:
            other = r.acute[1] if last == r.acute[0] else r.acute[0]
            upper[k].append((r.obtuse[0], r.obtuse[1], other))
    # the antidiagonal scan always yields at least one bound on each side
    assert all(lower) and all(upper), "unbounded interior entry in scan"
    return interior, lower, upper, fixed


@cache
def _kernel_plan(n):
    interior, lower, upper, _ = _scan_plan(n)
    iidx = np.array([_flat(i, j) for i, j in interior], dtype=np.int64)
    if not interior:
        iidx = iidx.reshape(0)

    def csr(rows):
        ptr = np.zeros(len(rows) + 1, dtype=np.int64)
        flatrows = []
        for k, row in enumerate(rows):
            ptr[k + 1] = ptr[k] + len(row)
            flatrows.extend(row)
        abc = np.array([[_flat(*a), _flat(*b), _flat(*c)] for a, b, c in flatrows],
                       dtype=np.int64).reshape(len(flatrows), 3)
        return ptr, abc

    lo_ptr, lo_abc = csr(lower)
    up_ptr, up_abc = csr(upper)
    return iidx, lo_ptr, lo_abc, up_ptr, up_abc


def _integral_boundary_array(t: BoundaryTriple):
    if not t.integral:
        raise ValueError("counting needs an integral boundary")
    n = t.n
    boundary = boundary_from_weights(t)
    entries = np.zeros((n + 1) * (n + 2) // 2, dtype=np.int64)
    for p, v in boundary.items():
        entries[_flat(*p)] = int(v)
    return entries, boundary


def _fixed_rhombi_ok(n, boundary) -> bool:
    _, _, _, fixed = _scan_plan(n)
    return all(boundary[r.obtuse[0]] + boundary[r.obtuse[1]]
               - boundary[r.acute[0]] - boundary[r.acute[1]] >= 0
               for r in fixed)


def count_lattice_hives(t: BoundaryTriple) -> int:
    """Number of integer hives with the given boundary."""
    entries, boundary = _integral_boundary_array(t)
    if not _fixed_rhombi_ok(t.n, boundary):
        return 0
    return int(_kernels.count_assignments(entries, *_kernel_plan(t.n)))


def exists_lattice_hive(t: BoundaryTriple) -> bool:
    """Whether count_lattice_hives(t) >= 1, stopping at the first witness."""
    entries, boundary = _integral_boundary_array(t)
    if not _fixed_rhombi_ok(t.n, boundary):
        return False
    return bool(_kernels.count_assignments(entries, *_kernel_plan(t.n),
                                           exists_only=True))


def enumerate_lattice_hives(t: BoundaryTriple):
    """The witnesses behind count_lattice_hives, sorted lexicographically."""
    entries, boundary = _integral_boundary_array(t)
    n = t.n
    if not _fixed_rhombi_ok(n, boundary):
        return []
    interior, lower, upper, _ = _scan_plan(n)
    ent = [int(x) for x in entries]
    K = len(interior)
    out = []
    if K == 0:
        return [Hive(n, ent)]

    def rec(k):
        if k == K:
            out.append(Hive(n, list(ent)))
            return
        lo = max(ent[_flat(*a)] + ent[_flat(*b)] - ent[_flat(*c)]
                 for a, b, c in lower[k])
        hi = min(ent[_flat(*a)] + ent[_flat(*b)] - ent[_flat(*c)]
                 for a, b, c in upper[k])
        slot = _flat(*interior[k])
        for v in range(lo, hi + 1):
            ent[slot] = v
            rec(k + 1)

    rec(0)
    return out


def decompose_tensor_product(lam, mu) -> dict:
    """Multiplicities of each dominant sigma inside the product of lam and mu."""
    lam = as_weight(lam)
    mu = as_weight(mu)
    if len(lam) != len(mu):
        raise ValueError("weights must have equal lengths")
    if not (is_integral(lam) and is_integral(mu)):
        raise ValueError("decomposition needs integral weights")
    n = len(lam)
    lo = int(lam[-1] + mu[-1])
    hi = int(lam[0] + mu[0])
    total = int(sum(lam) + sum(mu))
    out = {}
    for sigma in dominant_vectors(n, lo, hi, total):
        c = count_lattice_hives(BoundaryTriple(lam, mu, sigma_to_nu(sigma)))
        if c:
            out[sigma] = c
    return out


# ---------------------------------------------------------------------------
# flatspaces and patterns

def flatspace_decomposition(H: Hive):
    """Group small triangles across value-0 rhombi.

    Small triangles are named by their dual lattice vertices, so the result
    is directly comparable with degeneracy_graph region members.
    """
    n = H.n
    t = build_gl_tinkertoy(n)
    dg = dual_graph(t)
    parent = {v: v for v in t.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in t.finite_edges:
        p, q = (hive_index_of(n, x) for x in dg.dual_of[e])
        s = (q[0] - p[0], q[1] - p[1])
        if s not in _APEX:
            p, q = q, p
            s = (q[0] - p[0], q[1] - p[1])
        if rhombus_value(H, _rhombus_at(p, s)) == 0:
            a, b = find(e.tail), find(e.head)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for v in t.vertices:
        groups.setdefault(find(v), set()).add(v)
    return frozenset(frozenset(g) for g in groups.values())


def count_gt_patterns(lam) -> int:
    """Number of integer triangular patterns interleaving down from lam."""
    w = as_weight(lam)
    if not is_integral(w):
        raise ValueError("pattern counting needs an integral weight")
    top = tuple(int(x) for x in w)

    @cache
    def rec(row):
        if len(row) <= 1:
            return 1
        ranges = [range(row[i + 1], row[i] + 1) for i in range(len(row) - 1)]
        return sum(rec(nxt) for nxt in product(*ranges))

    return rec(top)


def _rh(H, p, q):
    s = (q[0] - p[0], q[1] - p[1])
    return rhombus_value(H, _rhombus_at(p, s))


def bz_rows(n):
    """The three families of dual-point rows, each row oriented for telescoping.

    Family 0 fixes j (mu side to nu side), family 1 fixes i (lambda side to
    mu side), family 2 fixes i+j (nu side to lambda side); full row sums are
    consecutive differences of nu, mu, lambda respectively.  Along each row
    every partial sum equals the length of some finite edge, so the partial
    sums of a valid pattern are nonnegative.
    """
    fam0 = [[(i, c) for i in range(n - c, -1, -1)] for c in range(1, n)]
    fam1 = [[(c, j) for j in range(n - c + 1)] for c in range(1, n)]
    fam2 = [[(c - j, j) for j in range(c, -1, -1)] for c in range(1, n)]
    return fam0, fam1, fam2


def bz_pattern(h: Honeycomb) -> dict:
    """Torsion for each hexagon, one facing edge length for each wedge.

    Keyed by dual index: interior points carry their hexagon's left vertical
    edge length minus the right one; boundary points (corners excluded) carry
    the length of the rhombus edge facing into the triangle on their row.
    """
    H = honeycomb_to_hive(h)
    n = H.n
    out = {}
    for i, j in HiveShape(n).interior():
        out[(i, j)] = _rh(H, (i - 1, j), (i, j)) - _rh(H, (i, j), (i + 1, j))
    for c in range(1, n):
        out[(c, 0)] = _rh(H, (c, 0), (c, 1))
        out[(n - c, c)] = _rh(H, (n - c - 1, c), (n - c, c))
        out[(0, c)] = _rh(H, (0, c), (1, c - 1))
    return out
