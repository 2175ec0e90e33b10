"""Exact geometry of the plane B = {(x,y,z) : x+y+z = 0}.

Everything here is Fraction arithmetic; no floats ever enter a geometric
predicate.  Only the six lattice directions are supported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def frac(v) -> Fraction:
    """Coerce ints, strings like "3/4", and Fractions to Fraction."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"cannot coerce {v!r} to an exact rational")


class Infinity:
    """Dedicated +infinity tag for semi-infinite edge lengths.

    Not a number and never compared equal to one; supports just enough
    arithmetic/ordering for interval work on segment lengths.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("hivecomb-infinity")

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("inf - inf")
        return self

    def __mul__(self, other):
        if other == 0:
            raise ArithmeticError("inf * 0")
        if other < 0:
            raise ArithmeticError("negative multiple of inf")
        return self

    __rmul__ = __mul__

    def __neg__(self):
        raise ArithmeticError("lengths are never negative")


INF = Infinity()


@dataclass(frozen=True)
class PlanePoint:
    """A point of B, all three coordinates stored to keep S3 symmetry literal."""

    x: Fraction
    y: Fraction
    z: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", frac(self.x))
        object.__setattr__(self, "y", frac(self.y))
        object.__setattr__(self, "z", frac(self.z))
        if self.x + self.y + self.z != 0:
            raise ValueError(f"({self.x},{self.y},{self.z}) is not in the zero-sum plane")

    @classmethod
    def from_xy(cls, x, y) -> "PlanePoint":
        x, y = frac(x), frac(y)
        return cls(x, y, -x - y)

    def coords(self):
        return (self.x, self.y, self.z)

    def __getitem__(self, axis: int) -> Fraction:
        return (self.x, self.y, self.z)[axis]

    def step(self, direction: "Direction", t) -> "PlanePoint":
        """The point  self + t * direction.step."""
        t = frac(t)
        dx, dy, dz = direction.step
        return PlanePoint(self.x + t * dx, self.y + t * dy, self.z + t * dz)

    def translate(self, vec) -> "PlanePoint":
        vx, vy, vz = vec
        return PlanePoint(self.x + frac(vx), self.y + frac(vy), self.z + frac(vz))

    def __repr__(self):
        return f"({self.x},{self.y},{self.z})"


@dataclass(frozen=True)
class Direction:
    """One of the six unit lattice steps of B."""

    name: str
    step: tuple  # integer 3-tuple summing to 0

    @property
    def constant_axis(self) -> int:
        """Index of the coordinate that stays constant along this step."""
        return self.step.index(0)

    @property
    def param_axis(self) -> int:
        """Coordinate used as the canonical parameter on lines of this axis.

        x-lines are parametrized by y, y-lines by z, z-lines by x.
        """
        return (self.constant_axis + 1) % 3

    @property
    def orientation(self) -> int:
        """+1 if the canonical parameter increases along this step."""
        return 1 if self.step[self.param_axis] > 0 else -1

    def opposite(self) -> "Direction":
        return _OPPOSITE[self.name]

    def __repr__(self):
        return self.name


NE = Direction("NE", (0, 1, -1))   # x constant; lambda rays of a GL honeycomb
SW = Direction("SW", (0, -1, 1))
NW = Direction("NW", (1, 0, -1))   # y constant
SE = Direction("SE", (-1, 0, 1))   # mu rays
E = Direction("E", (-1, 1, 0))     # z constant
W = Direction("W", (1, -1, 0))     # nu rays

#: Census order for boundary types: clockwise starting north.
DIRECTION_ORDER = (NE, E, SE, SW, W, NW)

DIRECTIONS = {d.name: d for d in DIRECTION_ORDER}
_OPPOSITE = {"NE": SW, "SW": NE, "NW": SE, "SE": NW, "E": W, "W": E}

#: Canonical positive direction on lines of each constant axis
#: (the step that increases the canonical parameter).
AXIS_POSITIVE = {0: NE, 1: SE, 2: W}


def perp_step(d: Direction) -> tuple:
    """Root-lattice step dual to an edge in direction d.

    The 90-degree rotation (x,y,z) -> (y-z, z-x, x-y) of B sends each unit
    direction to the step between the two dual-graph vertices separated by an
    edge of that direction.
    """
    x, y, z = d.step
    return (y - z, z - x, x - y)


@dataclass(frozen=True)
class SegmentOrRay:
    """A segment or ray along one of the six directions, with a multiplicity."""

    base: PlanePoint
    direction: Direction
    length: object  # positive Fraction, or INF
    multiplicity: Fraction = Fraction(1)

    def __post_init__(self):
        if self.length is not INF:
            object.__setattr__(self, "length", frac(self.length))
            if self.length <= 0:
                raise ValueError("segment length must be positive")
        object.__setattr__(self, "multiplicity", frac(self.multiplicity))
        if self.multiplicity <= 0:
            raise ValueError("multiplicity must be positive")

    @property
    def is_ray(self) -> bool:
        return self.length is INF

    @property
    def end(self) -> PlanePoint:
        if self.is_ray:
            raise ValueError("a ray has no finite endpoint")
        return self.base.step(self.direction, self.length)

    def constant(self) -> Fraction:
        return self.base[self.direction.constant_axis]

    def interval(self):
        """(lo, hi) of the canonical line parameter covered, lo <= hi.

        Either bound may be None, meaning unbounded on that side.
        """
        p = self.base[self.direction.param_axis]
        if self.direction.orientation > 0:
            hi = None if self.is_ray else p + self.length
            return (p, hi)
        lo = None if self.is_ray else p - self.length
        return (lo, p)

    def point_at_param(self, t: Fraction) -> PlanePoint:
        """Point on the carrying line with canonical parameter t."""
        axis = self.direction.constant_axis
        c = self.constant()
        coords = [None, None, None]
        coords[axis] = c
        coords[self.direction.param_axis] = t
        rem = 3 - axis - self.direction.param_axis
        coords[rem] = -c - t
        return PlanePoint(*coords)

    def __repr__(self):
        tail = "inf" if self.is_ray else str(self.length)
        m = f" x{self.multiplicity}" if self.multiplicity != 1 else ""
        return f"[{self.base} {self.direction} len={tail}{m}]"


def constant_coordinate(s: SegmentOrRay):
    """(axis index, value) of the coordinate held constant along s."""
    axis = s.direction.constant_axis
    return axis, s.base[axis]


def _interval_meet(a, b):
    """Intersection of two canonical-parameter intervals; None bounds = unbounded."""
    lo_a, hi_a = a
    lo_b, hi_b = b
    if lo_a is None:
        lo = lo_b
    elif lo_b is None:
        lo = lo_a
    else:
        lo = max(lo_a, lo_b)
    if hi_a is None:
        hi = hi_b
    elif hi_b is None:
        hi = hi_a
    else:
        hi = min(hi_a, hi_b)
    return lo, hi


def intersect(s1: SegmentOrRay, s2: SegmentOrRay):
    """Nothing (None), a transversal PlanePoint, or the collinear overlap.

    Overlaps come back as a multiplicity-1 SegmentOrRay; a single shared
    endpoint of collinear pieces comes back as a PlanePoint.
    """
    a1, c1 = constant_coordinate(s1)
    a2, c2 = constant_coordinate(s2)
    if a1 == a2:
        if c1 != c2:
            return None
        lo, hi = _interval_meet(s1.interval(), s2.interval())
        if lo is not None and hi is not None:
            if lo > hi:
                return None
            if lo == hi:
                return s1.point_at_param(lo)
            return SegmentOrRay(s1.point_at_param(lo), AXIS_POSITIVE[a1], hi - lo)
        if lo is None and hi is None:
            # two full lines; SegmentOrRay inputs cannot reach this
            raise ValueError("overlap unbounded on both sides")
        if hi is None:
            return SegmentOrRay(s1.point_at_param(lo), AXIS_POSITIVE[a1], INF)
        return SegmentOrRay(s1.point_at_param(hi), AXIS_POSITIVE[a1].opposite(), INF)
    # transversal: the two constants pin the point
    coords = [None, None, None]
    coords[a1] = c1
    coords[a2] = c2
    coords[3 - a1 - a2] = -c1 - c2
    p = PlanePoint(*coords)
    if _contains_param(s1, p) and _contains_param(s2, p):
        return p
    return None


def _contains_param(s: SegmentOrRay, p: PlanePoint) -> bool:
    t = p[s.direction.param_axis]
    lo, hi = s.interval()
    if lo is not None and t < lo:
        return False
    if hi is not None and t > hi:
        return False
    return True


def contains_point(s: SegmentOrRay, p: PlanePoint) -> bool:
    """Whether p lies on s (endpoints included)."""
    axis = s.direction.constant_axis
    if p[axis] != s.constant():
        return False
    return _contains_param(s, p)
