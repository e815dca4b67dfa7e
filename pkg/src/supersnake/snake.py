"""Snake graphs, d-dimer covers, twist lattices and expansion formulas.

A snake graph is laid out on the integer grid: tile i occupies the unit
square at tiles[i].pos, and each subsequent tile sits East or North of the
previous one.  Edges are keyed by their sorted endpoint pair, so edges shared
by adjacent tiles are identified automatically.

Placement of each tile follows the quadrilateral around the crossed arc: the
entry triangle occupies the bottom-left corner (its apex is the SW vertex),
the exit triangle the top-right, the crossed arc runs along the SE-NW
diagonal, and odd tiles are drawn with reversed orientation, even tiles with
the polygon's orientation.  Odd variables of the entry and exit triangles are
recorded at the bottom-left and top-right tile corners.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from . import superring as sr
from .polygon import BoundaryArc, ccw_gap, is_boundary_pair, norm_arc

SIDES = ("S", "E", "N", "W")


class NotTwistable(ValueError):
    pass


class MalformedCover(ValueError):
    pass


class MismatchedGraphs(ValueError):
    pass


def _corners(pos):
    x, y = pos
    return {
        "SW": (x, y),
        "SE": (x + 1, y),
        "NE": (x + 1, y + 1),
        "NW": (x, y + 1),
    }


def _side_edge(pos, side):
    c = _corners(pos)
    ends = {
        "S": (c["SW"], c["SE"]),
        "E": (c["SE"], c["NE"]),
        "N": (c["NW"], c["NE"]),
        "W": (c["SW"], c["NW"]),
    }[side]
    return tuple(sorted(ends))


@dataclass(frozen=True)
class Tile:
    index: int              # 1-based position along the snake
    face: int               # arc label of the crossed arc (or abstract face)
    pos: tuple              # grid position of the SW corner
    theta_bl: int           # theta id at the bottom-left corner (0 if abstract)
    theta_tr: int           # theta id at the top-right corner (0 if abstract)
    side_labels: tuple      # ((side, label), ...) for rendering

    def edge(self, side):
        return _side_edge(self.pos, side)

    def edges(self):
        return {side: self.edge(side) for side in SIDES}


@dataclass(frozen=True)
class SnakeGraph:
    n: int                  # number of even variables in the ambient ring
    tiles: tuple            # tuple[Tile, ...]
    offsets: tuple          # "E"/"N" per gluing, length d-1
    edge_arc: dict          # edge key -> arc label (int) or None for boundary
    edge_name: dict         # edge key -> printable label
    theta_vars: dict        # theta id -> ThetaVar (empty for abstract snakes)

    @property
    def d(self):
        return len(self.tiles)

    def edges(self):
        return self.edge_arc.keys()

    def vertices(self):
        verts = set()
        for e in self.edge_arc:
            verts.update(e)
        return verts

    def tile_edges(self, i):
        """Edge keys of tile i (0-based)."""
        return self.tiles[i].edges()

    def owners(self, edge):
        return tuple(
            i for i, t in enumerate(self.tiles) if edge in t.edges().values()
        )

    def boundary_edges(self):
        """Edges owned by a single tile."""
        count = {}
        for t in self.tiles:
            for e in t.edges().values():
                count[e] = count.get(e, 0) + 1
        return {e for e, c in count.items() if c == 1}

    def interior_edges(self):
        return set(self.edge_arc) - self.boundary_edges()

    def weight_exp2(self, edge, copies=1):
        """exp2 contribution of `copies` dimers on this edge (sqrt per dimer)."""
        exp2 = [0] * self.n
        arc = self.edge_arc[edge]
        if arc is not None:
            exp2[arc - 1] = copies
        return tuple(exp2)


def _apex(tri, arc):
    return next(z for z in tri if z not in arc)


def build_snake(ot, gamma, start=None):
    """Snake graph of an arc not in the triangulation."""
    labels, theta_ids = ot.crossed_arcs(gamma, start)
    d = len(labels)
    tris = [ot.theta_tris[tid - 1] for tid in theta_ids]
    v = ot.v

    tiles = []
    offsets = []
    edge_arc = {}
    edge_name = {}
    pos = (0, 0)
    for i in range(d):
        arc = ot.arc_of_label[labels[i]]
        t_in, t_out = tris[i], tris[i + 1]
        v_in, v_out = _apex(t_in, arc), _apex(t_out, arc)
        others = sorted(
            (z for z in set(arc) | {v_out}),
            key=lambda z: ccw_gap(v, v_in, z),
        )
        assert others[1] == v_out, "exit apex must sit opposite the entry apex"
        if (i + 1) % 2 == 1:  # odd tile: reversed orientation
            sw, se, ne, nw = v_in, others[2], v_out, others[0]
        else:
            sw, se, ne, nw = v_in, others[0], v_out, others[2]
        vert = {"SW": sw, "SE": se, "NE": ne, "NW": nw}
        side_pairs = {
            "S": (sw, se), "E": (se, ne), "N": (nw, ne), "W": (sw, nw),
        }
        side_labels = []
        for side, pair in side_pairs.items():
            pair = norm_arc(*pair)
            key = _side_edge(pos, side)
            if pair in ot.label_of_arc:
                arc_label = ot.label_of_arc[pair]
                name = f"x{arc_label}"
            elif is_boundary_pair(v, *pair):
                arc_label = None
                name = f"b{pair[0]},{pair[1]}"
            else:
                raise AssertionError(f"tile side {pair} is neither arc nor boundary")
            if key in edge_arc:
                assert edge_arc[key] == arc_label, "inconsistent shared edge"
            edge_arc[key] = arc_label
            edge_name[key] = name
            side_labels.append((side, name))
        tiles.append(
            Tile(i + 1, labels[i], pos, theta_ids[i], theta_ids[i + 1], tuple(side_labels))
        )
        if i + 1 < d:
            third = next(
                norm_arc(*pair)
                for pair in _tri_sides(t_out)
                if pair != arc and pair != ot.arc_of_label[labels[i + 1]]
            )
            if norm_arc(*side_pairs["E"]) == third:
                offsets.append("E")
                pos = (pos[0] + 1, pos[1])
            elif norm_arc(*side_pairs["N"]) == third:
                offsets.append("N")
                pos = (pos[0], pos[1] + 1)
            else:
                raise AssertionError("gluing edge must be the North or East side")

    theta_vars = {tid: ot.theta(tid) for tid in range(1, ot.n + 2)}
    return SnakeGraph(ot.n, tuple(tiles), tuple(offsets), edge_arc, edge_name, theta_vars)


def _tri_sides(tri):
    a, b, c = tri
    return (norm_arc(a, b), norm_arc(a, c), norm_arc(b, c))


def abstract_snake(offsets, faces=None):
    """Snake graph with given shape and formal face weights 1..d."""
    offsets = tuple(offsets)
    d = len(offsets) + 1
    if faces is None:
        faces = tuple(range(1, d + 1))
    n = max(faces)
    tiles = []
    edge_arc = {}
    edge_name = {}
    pos = (0, 0)
    positions = [pos]
    for off in offsets:
        pos = (pos[0] + 1, pos[1]) if off == "E" else (pos[0], pos[1] + 1)
        positions.append(pos)
    for i, p in enumerate(positions):
        for side in SIDES:
            key = _side_edge(p, side)
            edge_arc.setdefault(key, None)
        tiles.append(Tile(i + 1, faces[i], p, 0, 0, ()))
    # interior edges carry the face weight of neither tile; give every edge
    # weight 1 (None) so counting and lattice structure are unaffected
    for key in edge_arc:
        edge_name[key] = "e"
    return SnakeGraph(n, tuple(tiles), offsets, edge_arc, edge_name, {})


def string_dirs(snake):
    """Arrow directions of the abstract string: '>' = direct, '<' = inverse."""
    dirs = []
    for i, off in enumerate(snake.offsets):
        if i == 0:
            dirs.append(">" if off == "E" else "<")
        elif off != snake.offsets[i - 1]:  # zig-zag keeps the arrow
            dirs.append(dirs[-1])
        else:                              # straight flips it
            dirs.append(">" if dirs[-1] == "<" else "<")
    return tuple(dirs)


# ---------------------------------------------------------------------------
# covers


def freeze(cover):
    return tuple(sorted((e, m) for e, m in cover.items() if m))


def thaw(frozen):
    return {e: m for e, m in frozen}


def check_cover(snake, cover, d):
    deg = {v: 0 for v in snake.vertices()}
    for e, m in cover.items():
        if e not in snake.edge_arc:
            raise MismatchedGraphs(f"edge {e} is not an edge of this snake graph")
        if m < 0:
            raise MalformedCover("negative multiplicity")
        for vtx in e:
            deg[vtx] += m
    bad = {v: k for v, k in deg.items() if k != d}
    if bad:
        raise MalformedCover(f"vertices with degree != {d}: {bad}")


def _outline_cycle(snake):
    """Boundary edges ordered into the outline cycle.

    Every vertex of a snake graph lies on the outline and carries exactly two
    boundary edges, so the walk below closes into a single cycle."""
    boundary = snake.boundary_edges()
    adj = {}
    for e in boundary:
        for vtx in e:
            adj.setdefault(vtx, []).append(e)
    assert all(len(es) == 2 for es in adj.values())
    start_edge = min(boundary)
    cycle = [start_edge]
    cur_v = start_edge[1]
    while True:
        e = next(x for x in adj[cur_v] if x != cycle[-1])
        if e == start_edge:
            break
        cycle.append(e)
        cur_v = next(z for z in e if z != cur_v)
    assert len(cycle) == len(boundary)
    return cycle


def boundary_covers(snake, d=1):
    """(minimal, maximal) covers: d copies of the two alternating boundary matchings."""
    cycle = _outline_cycle(snake)
    west = snake.tiles[0].edge("W")
    k = cycle.index(west)
    cls_min = [e for i, e in enumerate(cycle) if i % 2 == k % 2]
    cls_max = [e for i, e in enumerate(cycle) if i % 2 != k % 2]
    mn = {e: d for e in cls_min}
    mx = {e: d for e in cls_max}
    check_cover(snake, mn, d)
    check_cover(snake, mx, d)
    return mn, mx


def min_cover(snake, d=1):
    return boundary_covers(snake, d)[0]


def max_cover(snake, d=1):
    return boundary_covers(snake, d)[1]


def twist(snake, cover, tile_index, to_vertical=None):
    """Rotate one copy of a horizontal pair into a vertical pair on a tile
    (0-based), or vice versa.  With to_vertical=None the direction must be
    unambiguous."""
    t = snake.tiles[tile_index]
    s, e, n, w = (t.edge(x) for x in ("S", "E", "N", "W"))
    has_h = cover.get(s, 0) >= 1 and cover.get(n, 0) >= 1
    has_v = cover.get(w, 0) >= 1 and cover.get(e, 0) >= 1
    if to_vertical is None:
        if has_h == has_v:
            raise NotTwistable(
                "both twist directions apply, pass to_vertical explicitly"
                if has_h else f"tile {tile_index} has no full horizontal or vertical pair"
            )
        to_vertical = has_h
    if to_vertical and not has_h:
        raise NotTwistable(f"tile {tile_index} has no horizontal pair to rotate")
    if not to_vertical and not has_v:
        raise NotTwistable(f"tile {tile_index} has no vertical pair to rotate")
    out = dict(cover)
    if to_vertical:
        take, give = (s, n), (w, e)
    else:
        take, give = (w, e), (s, n)
    for ed in take:
        out[ed] = out.get(ed, 0) - 1
        if not out[ed]:
            del out[ed]
    for ed in give:
        out[ed] = out.get(ed, 0) + 1
    return out


def all_twists(snake, cover):
    """All covers one twist away, as (new_cover, tile_index) pairs."""
    out = []
    for i, t in enumerate(snake.tiles):
        s, e, n, w = (t.edge(x) for x in ("S", "E", "N", "W"))
        if cover.get(s, 0) >= 1 and cover.get(n, 0) >= 1:
            out.append((twist(snake, cover, i, to_vertical=True), i))
        if cover.get(w, 0) >= 1 and cover.get(e, 0) >= 1:
            out.append((twist(snake, cover, i, to_vertical=False), i))
    return out


@dataclass(frozen=True)
class CoverLattice:
    snake: SnakeGraph
    d: int
    nodes: tuple            # frozen covers, canonically sorted
    index: dict             # frozen cover -> node index
    rank: tuple             # twist distance from the minimal cover
    edges: tuple            # (lower_index, upper_index, face_label)
    min_index: int
    max_index: int

    def as_dict(self):
        return {
            "nodes": [[list(e) for e in node_edges(n)] for n in self.nodes],
            "edges": [[i, j, lab] for i, j, lab in self.edges],
        }


def node_edges(frozen):
    return [((list(a), list(b)), m) for (a, b), m in frozen]


def enumerate_covers(snake, d=1):
    """Breadth-first closure of the minimal cover under single twists."""
    mn, mx = boundary_covers(snake, d)
    f_mn = freeze(mn)
    dist = {f_mn: 0}
    edges = set()
    queue = deque([mn])
    while queue:
        cur = queue.popleft()
        f_cur = freeze(cur)
        for new, tile in all_twists(snake, cur):
            f_new = freeze(new)
            if f_new not in dist:
                dist[f_new] = dist[f_cur] + 1
                queue.append(new)
            edges.add((*sorted((f_cur, f_new)), snake.tiles[tile].face))
    f_mx = freeze(mx)
    assert f_mx in dist, "maximal cover not reached by twists"
    nodes = sorted(dist, key=lambda f: (dist[f], f))
    index = {f: i for i, f in enumerate(nodes)}
    # gradedness: every twist edge joins consecutive ranks
    iedges = []
    for a, b, face in sorted(edges):
        ia, ib = index[a], index[b]
        ra, rb = dist[a], dist[b]
        assert abs(ra - rb) == 1, "twist graph is not graded by distance"
        lo, hi = (ia, ib) if ra < rb else (ib, ia)
        iedges.append((lo, hi, face))
    return CoverLattice(
        snake, d, tuple(nodes), index, tuple(dist[f] for f in nodes),
        tuple(sorted(set(iedges))), index[f_mn], index[f_mx],
    )


# ---------------------------------------------------------------------------
# weights


def cross_weight(snake):
    """exp2 of the product of all face weights."""
    exp2 = [0] * snake.n
    for t in snake.tiles:
        exp2[t.face - 1] += 2
    return tuple(exp2)


def wt_matching(snake, cover):
    """Weight of a d=1 cover as an exp2 vector (full edge weights)."""
    exp2 = [0] * snake.n
    for e, m in cover.items():
        arc = snake.edge_arc[e]
        if arc is not None:
            exp2[arc - 1] += 2 * m
    return tuple(exp2)


def cycles_of(snake, cover):
    """Cycles of single edges in a double dimer cover.

    Returns a list of (tile_span, theta_bl, theta_tr, edge_list), ordered by
    the first enclosed tile."""
    singles = [e for e, m in cover.items() if m == 1]
    deg = {}
    for e in singles:
        for vtx in e:
            deg[vtx] = deg.get(vtx, 0) + 1
    if any(k != 2 for k in deg.values()):
        raise MalformedCover("single edges do not decompose into cycles")
    unseen = set(singles)
    comps = []
    while unseen:
        comp = []
        stack = [next(iter(unseen))]
        unseen.discard(stack[0])
        while stack:
            e = stack.pop()
            comp.append(e)
            for other in list(unseen):
                if set(e) & set(other):
                    unseen.discard(other)
                    stack.append(other)
        comps.append(comp)
    out = []
    for comp in comps:
        verticals = [e for e in comp if e[0][0] == e[1][0]]
        enclosed = []
        for i, t in enumerate(snake.tiles):
            x, y = t.pos
            hits = sum(1 for (a, b) in verticals if a[1] == y and a[0] > x)
            if hits % 2 == 1:
                enclosed.append(i)
        if not enclosed:
            raise MalformedCover("cycle enclosing no tile")
        lo, hi = min(enclosed), max(enclosed)
        assert enclosed == list(range(lo, hi + 1)), "cycle must enclose a tile run"
        out.append((
            (lo, hi),
            snake.tiles[lo].theta_bl,
            snake.tiles[hi].theta_tr,
            sorted(comp),
        ))
    out.sort(key=lambda c: c[0])
    return out


def wt2(snake, cover):
    """Super weight of a double dimer cover."""
    check_cover(snake, cover, 2)
    exp2 = [0] * snake.n
    for e, m in cover.items():
        arc = snake.edge_arc[e]
        if arc is not None:
            exp2[arc - 1] += m  # sqrt of the edge weight per dimer
    word = []
    for _, bl, tr, _ in cycles_of(snake, cover):
        a, b = snake.theta_vars[bl], snake.theta_vars[tr]
        first, second = (a, b) if a.rank < b.rank else (b, a)
        word.extend([first, second])
    return sr.normalize(snake.n, [(1, tuple(exp2), tuple(word))])


# ---------------------------------------------------------------------------
# expansion formulas


def classical_expansion(ot, gamma, start=None):
    """Laurent expansion of the lambda length via d=1 dimer covers."""
    a = norm_arc(*gamma)
    if is_boundary_pair(ot.v, *a):
        return sr.one(ot.n)
    if a in ot.label_of_arc:
        return sr.x_var(ot.n, ot.label_of_arc[a])
    snake = build_snake(ot, gamma, start)
    lattice = enumerate_covers(snake, 1)
    total = sr.zero(ot.n)
    for node in lattice.nodes:
        total = total + sr.mono_expr(ot.n, wt_matching(snake, thaw(node)))
    return sr.div_monomial(total, cross_weight(snake))


def super_lambda_dimer(ot, gamma, start=None):
    """Super lambda length via the double dimer expansion."""
    a = norm_arc(*gamma)
    if is_boundary_pair(ot.v, *a):
        return sr.one(ot.n)
    if a in ot.label_of_arc:
        return sr.x_var(ot.n, ot.label_of_arc[a])
    snake = build_snake(ot, gamma, start)
    lattice = enumerate_covers(snake, 2)
    total = sr.zero(ot.n)
    for node in lattice.nodes:
        total = total + wt2(snake, thaw(node))
    return sr.div_monomial(total, cross_weight(snake))


def superimpose_decomposition(snake, cover):
    """Split a double dimer cover into two perfect matchings (doubles to both,
    each cycle split into the min/max matchings of the enclosed run)."""
    p1, p2 = {}, {}
    for e, m in cover.items():
        if m == 2:
            p1[e] = 1
            p2[e] = 1
    for (lo, hi), _, _, comp in cycles_of(snake, cover):
        sub = [snake.tiles[i] for i in range(lo, hi + 1)]
        west = sub[0].edge("W")
        # alternate around the cycle starting from the run's West edge
        ordered = _order_cycle(comp)
        k = ordered.index(west)
        for i, e in enumerate(ordered):
            (p1 if i % 2 == k % 2 else p2)[e] = 1
    check_cover(snake, p1, 1)
    check_cover(snake, p2, 1)
    return p1, p2


def _order_cycle(edges):
    adj = {}
    for e in edges:
        for vtx in e:
            adj.setdefault(vtx, []).append(e)
    start_edge = min(edges)
    ordered = [start_edge]
    cur_v = start_edge[1]
    while len(ordered) < len(edges):
        e = next(x for x in adj[cur_v] if x != ordered[-1])
        ordered.append(e)
        cur_v = next(z for z in e if z != cur_v)
    return ordered
