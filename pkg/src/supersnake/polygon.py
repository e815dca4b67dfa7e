"""Triangulated convex polygon model.

Vertices are 0..v-1 counterclockwise.  An internal arc is an unordered pair
of non-adjacent vertices, stored as a sorted tuple.  Triangulations must have
no internal triangle, equivalently there is a (unique) longest arc crossing
every arc of the triangulation; its endpoints are the middle vertices of the
two ears.

"Right of an oriented arc": traveling tail -> head with the standard
counterclockwise vertex labeling, the right side consists of the vertices
strictly between tail and head counterclockwise.  This is the geometric right
side, and it reproduces the published orderings on the worked examples.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


class TriangulationError(ValueError):
    pass


class OutOfRangeVertex(TriangulationError):
    pass


class DuplicateArc(TriangulationError):
    pass


class NotInternalArc(TriangulationError):
    pass


class CrossingArcs(TriangulationError):
    pass


class NotMaximal(TriangulationError):
    pass


class InternalTriangle(TriangulationError):
    pass


class ArcInTriangulation(TriangulationError):
    pass


class BoundaryArc(TriangulationError):
    pass


class NotLongestArc(TriangulationError):
    pass


def norm_arc(p, q):
    return (p, q) if p <= q else (q, p)


def ccw_gap(v, a, b):
    return (b - a) % v


def in_ccw_open(v, a, b, z):
    """True if z lies strictly between a and b counterclockwise."""
    return 0 < ccw_gap(v, a, z) < ccw_gap(v, a, b)


def is_boundary_pair(v, p, q):
    return ccw_gap(v, p, q) in (1, v - 1)


def is_internal_pair(v, p, q):
    return p != q and not is_boundary_pair(v, p, q)


def arcs_cross(v, a, b):
    """Transversal crossing of two chords; shared endpoints do not count."""
    (p, q), (r, s) = a, b
    if {p, q} & {r, s}:
        return False
    return in_ccw_open(v, p, q, r) != in_ccw_open(v, p, q, s)


def right_of(v, tail, head, z):
    """Is vertex z strictly to the right of the arc oriented tail -> head?"""
    return in_ccw_open(v, tail, head, z)


@dataclass(frozen=True)
class Triangulation:
    v: int
    arcs: tuple            # sorted tuple of internal arc pairs
    triangles: tuple       # sorted tuple of sorted vertex triples
    ears: tuple            # the two triangles with two boundary edges
    longest: tuple         # endpoints of the longest arc (ear middles), sorted

    @property
    def n(self):
        return len(self.arcs)

    def triangles_of_arc(self, arc):
        return tuple(t for t in self.triangles if set(arc) <= set(t))

    def triangle_with_boundary_edge(self, p, q):
        for t in self.triangles:
            if {p, q} <= set(t):
                return t
        raise KeyError((p, q))


def _is_ear(v, tri):
    bd = sum(
        1
        for i in range(3)
        for j in range(i + 1, 3)
        if is_boundary_pair(v, tri[i], tri[j])
    )
    return bd == 2


def _ear_middle(v, tri):
    """The vertex of an ear between its two boundary edges."""
    for z in tri:
        others = set(tri) - {z}
        if all(is_boundary_pair(v, z, w) for w in others):
            return z
    raise AssertionError(f"{tri} is not an ear")


def validate(v, arcs):
    """Check a maximal non-crossing arc set with no internal triangle."""
    if v < 4:
        raise OutOfRangeVertex(f"polygon needs at least 4 vertices, got {v}")
    seen = set()
    clean = []
    for p, q in arcs:
        if not (0 <= p < v and 0 <= q < v):
            raise OutOfRangeVertex(f"vertex out of range in arc ({p},{q})")
        if not is_internal_pair(v, p, q):
            raise NotInternalArc(f"({p},{q}) is not an internal arc of the {v}-gon")
        a = norm_arc(p, q)
        if a in seen:
            raise DuplicateArc(f"arc {a} given twice")
        seen.add(a)
        clean.append(a)
    for i, a in enumerate(clean):
        for b in clean[i + 1:]:
            if arcs_cross(v, a, b):
                raise CrossingArcs(f"arcs {a} and {b} cross")
    if len(clean) != v - 3:
        raise NotMaximal(
            f"{len(clean)} arcs given, a triangulation of the {v}-gon has {v - 3}"
        )

    chords = set(clean) | {norm_arc(i, (i + 1) % v) for i in range(v)}
    triangles = set()
    for i in range(v):
        p, q = i, (i + 1) % v
        # in a maximal non-crossing family there is exactly one apex spanning
        # a face with a given boundary edge (two would give crossing chords)
        apexes = [
            w for w in range(v)
            if w not in (p, q) and norm_arc(p, w) in chords and norm_arc(q, w) in chords
        ]
        assert len(apexes) == 1, (p, q, apexes)
        triangles.add(tuple(sorted((p, q, apexes[0]))))

    # every triangulation of the v-gon has v-2 triangles; a triangle with no
    # boundary edge is invisible to the enumeration above
    if len(triangles) != v - 2:
        raise InternalTriangle("triangulation contains an internal triangle")

    ears = tuple(sorted(t for t in triangles if _is_ear(v, t)))
    assert len(ears) == 2
    longest = tuple(sorted(_ear_middle(v, t) for t in ears))
    return Triangulation(v, tuple(sorted(clean)), tuple(sorted(triangles)), ears, longest)


def _region_size(v, p, arc):
    """Number of polygon vertices strictly on p's side of the arc."""
    r, s = arc
    side1 = {z for z in range(v) if in_ccw_open(v, r, s, z)}
    if p in side1:
        return len(side1)
    return v - 2 - len(side1)


def crossed_arcs_ordered(v, arcs, gamma, start):
    """Arcs of the family crossed by gamma, ordered from the start endpoint."""
    p, q = gamma
    if start == q:
        p, q = q, p
    elif start != p:
        raise ValueError("start must be an endpoint of gamma")
    crossed = [a for a in arcs if arcs_cross(v, norm_arc(p, q), a)]
    crossed.sort(key=lambda a: _region_size(v, p, a))
    return crossed


class OrientedTriangulation:
    """A triangulation with oriented longest arc, canonical arc labels,
    default arc orientations, theta labels and the positive ordering.

    Arc labels 1..n follow the crossing order along the longest arc from s;
    theta ids 1..n+1 follow the traversed triangles from s.
    """

    def __init__(self, tri: Triangulation, s, t):
        if tuple(sorted((s, t))) != tri.longest:
            raise NotLongestArc(f"({s},{t}) is not the longest arc {tri.longest}")
        self.tri = tri
        self.v = tri.v
        self.n = tri.n
        self.s = s
        self.t = t

        ordered = crossed_arcs_ordered(self.v, tri.arcs, (s, t), s)
        assert len(ordered) == self.n
        self.arc_of_label = {i + 1: a for i, a in enumerate(ordered)}
        self.label_of_arc = {a: i + 1 for i, a in enumerate(ordered)}

        self.theta_tris = self._traversed_triangles()
        self.theta_of_tri = {tr: i + 1 for i, tr in enumerate(self.theta_tris)}

        self.fan_centres = self._fan_centres()
        self.arc_dir = self._default_orientation()
        self.pos_order = positive_order_remark(self)   # theta ids, largest first
        self.pos_rank = {tid: r + 1 for r, tid in enumerate(self.pos_order)}
        self.quiver_arrows = self._quiver()

    # -- structure ---------------------------------------------------------

    def _traversed_triangles(self):
        tris = []
        prev = None
        for k in range(1, self.n + 1):
            arc = self.arc_of_label[k]
            t1, t2 = self.tri.triangles_of_arc(arc)
            if prev is None:
                entry = t1 if self.s in t1 else t2
            else:
                entry = t1 if t1 == prev else t2
            tris.append(entry)
            prev = t2 if entry == t1 else t1
        tris.append(prev)
        assert self.s in tris[0] and self.t in tris[-1]
        return tuple(tris)

    def theta(self, tid):
        from .superring import ThetaVar
        return ThetaVar(self.pos_rank[tid], tid)

    def arc_endpoints_dir(self, arc):
        return self.arc_dir[norm_arc(*arc)]

    # -- fan decomposition and default orientation --------------------------

    def _pivots(self):
        piv = []
        for k in range(1, self.n):
            shared = set(self.arc_of_label[k]) & set(self.arc_of_label[k + 1])
            assert len(shared) == 1
            piv.append(next(iter(shared)))
        return piv

    def _fan_centres(self):
        if self.n == 1:
            # a single diagonal: orienting it away from the ear vertex
            # clockwise of s reproduces the published ordering
            return ((self.s - 1) % self.v,)
        piv = self._pivots()
        centres = [piv[0]]
        for p in piv[1:]:
            if p != centres[-1]:
                centres.append(p)
        return tuple(centres)

    def _default_orientation(self):
        centres = self.fan_centres
        arc_dir = {}
        for k in range(1, self.n + 1):
            arc = self.arc_of_label[k]
            on = [c for c in centres if c in arc]
            if len(on) == 2:
                # shared between consecutive fans: directed c_i -> c_{i+1}
                lo, hi = sorted(on, key=centres.index)
                arc_dir[arc] = (lo, hi)
            elif len(on) == 1:
                c = on[0]
                w = arc[0] if arc[1] == c else arc[1]
                arc_dir[arc] = (c, w)
            else:
                raise AssertionError(f"arc {arc} touches no fan centre")
        return arc_dir

    # -- quiver --------------------------------------------------------------

    def _quiver(self):
        """Arrow list over labels 1..n; (i, j) means i -> j."""
        arrows = []
        for k in range(1, self.n):
            a = self.arc_of_label[k]
            b = self.arc_of_label[k + 1]
            shared = (set(a) & set(b)).pop()
            ea = a[0] if a[1] == shared else a[1]
            eb = b[0] if b[1] == shared else b[1]
            # the angle from a to b at the shared vertex is clockwise iff eb
            # lies counterclockwise strictly between the shared vertex and ea
            if in_ccw_open(self.v, shared, ea, eb):
                arrows.append((k, k + 1))
            else:
                arrows.append((k + 1, k))
        return tuple(arrows)

    def arrow_dirs(self):
        """Per consecutive label pair: '>' if k -> k+1 else '<'."""
        return tuple(
            ">" if (i, j) == (k, k + 1) else "<"
            for k, (i, j) in enumerate(self.quiver_arrows, start=1)
        )

    # -- arc queries ----------------------------------------------------------

    def require_not_in_t(self, gamma):
        a = norm_arc(*gamma)
        if a in self.label_of_arc:
            raise ArcInTriangulation(
                f"arc {a} is arc {self.label_of_arc[a]} of the triangulation"
            )

    def crossed_arcs(self, gamma, start=None):
        """(labels in crossing order, theta ids of the traversed triangles)."""
        p, q = gamma
        if start is None:
            start = p
        if is_boundary_pair(self.v, p, q):
            raise BoundaryArc(f"({p},{q}) is a boundary segment")
        self.require_not_in_t((p, q))
        ordered = crossed_arcs_ordered(self.v, self.tri.arcs, (p, q), start)
        labels = [self.label_of_arc[x] for x in ordered]
        end = q if start == p else p
        tris = []
        prev = None
        for arc in ordered:
            t1, t2 = self.tri.triangles_of_arc(arc)
            if prev is None:
                entry = t1 if start in t1 else t2
            else:
                entry = t1 if t1 == prev else t2
            tris.append(entry)
            prev = t2 if entry == t1 else t1
        tris.append(prev)
        assert start in tris[0] and end in tris[-1]
        return labels, [self.theta_of_tri[tr] for tr in tris]

    def first_last_triangles(self, gamma, start=None):
        """Theta ids of the first and last triangle crossed by gamma.

        For an arc of the triangulation, the two triangles it bounds."""
        a = norm_arc(*gamma)
        if a in self.label_of_arc:
            t1, t2 = self.tri.triangles_of_arc(a)
            return self.theta_of_tri[t1], self.theta_of_tri[t2]
        _, tris = self.crossed_arcs(gamma, start)
        return tris[0], tris[-1]


def positive_order_remark(ot: OrientedTriangulation):
    """Positive ordering via the boundary-edge description; theta ids, largest first."""
    v, n = ot.v, ot.n
    tri = ot.tri
    x = (ot.s - 1) % v
    ear_s = next(t for t in tri.ears if ot.s == _ear_middle(v, t))
    ear_t = next(t for t in tri.ears if t != ear_s)
    m = _ear_middle(v, ear_t)
    j = (m - x - 1) % v
    assert 2 <= j <= n + 1, (j, n)

    def tri_of_edge(a, b):
        return tri.triangle_with_boundary_edge(a % v, b % v)

    primes = {}
    for i in range(2, n + 2):
        if i <= j:
            primes[i] = tri_of_edge(x + i, x + i + 1)
        else:
            primes[i] = tri_of_edge(x + i + 1, x + i + 2)

    first_arc = norm_arc(x, (x + 2) % v)
    second_tri = next(t for t in tri.triangles_of_arc(first_arc) if t != ear_s)
    theta1_first = primes[2] == second_tri

    if theta1_first:
        ordered = [ear_s] + [primes[i] for i in range(2, n + 2)]
    else:
        ordered = [primes[i] for i in range(2, n + 2)] + [ear_s]
    return tuple(ot.theta_of_tri[tr] for tr in ordered)


def positive_order_inductive(ot: OrientedTriangulation):
    """Positive ordering via the edge-orientation recursion; theta ids, largest first.

    theta_i dominates everything after it exactly when it sits to the right
    of the oriented arc separating it from theta_{i+1}.
    """
    front, back = [], []
    for i in range(1, ot.n + 1):
        arc = ot.arc_of_label[i]
        tail, head = ot.arc_dir[arc]
        tri_i = ot.theta_tris[i - 1]
        apex = next(z for z in tri_i if z not in arc)
        if right_of(ot.v, tail, head, apex):
            front.append(i)
        else:
            back.append(i)
    return tuple(front + [ot.n + 1] + back[::-1])


def oriented(v, arcs, s, t):
    return OrientedTriangulation(validate(v, arcs), s, t)


# ---------------------------------------------------------------------------
# triangulation enumeration (for sweeps)


def all_triangulations(v):
    """All triangulations of the convex v-gon, as sorted internal-arc tuples."""

    @lru_cache(maxsize=None)
    def rec(lo, hi):
        if hi - lo < 2:
            return (frozenset(),)
        out = []
        for k in range(lo + 1, hi):
            for left in rec(lo, k):
                for right in rec(k, hi):
                    chords = set(left) | set(right)
                    if is_internal_pair(v, lo, k):
                        chords.add(norm_arc(lo, k))
                    if is_internal_pair(v, k, hi):
                        chords.add(norm_arc(k, hi))
                    out.append(frozenset(chords))
        return tuple(out)

    result = [tuple(sorted(ch)) for ch in rec(0, v - 1)]
    rec.cache_clear()
    return result


def fanless_triangulations(v):
    """Validated triangulations of the v-gon without internal triangles."""
    out = []
    for arcs in all_triangulations(v):
        try:
            out.append(validate(v, arcs))
        except InternalTriangle:
            continue
    return out


def internal_arcs(v):
    return [(p, q) for p in range(v) for q in range(p + 1, v) if is_internal_pair(v, p, q)]
