"""Dictionary between double dimer covers and submodule rank vectors.

The pipeline: symmetric difference with the minimal cover, completion to a
disjoint union of snake multigraphs, face function to a rank vector — and the
explicit inverse that patches boundary covers of the components back into the
minimal cover.  Multiplicities are capped at 2; higher d is compared by
counting and by abstract edge-labeled poset isomorphism only.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import snake as sn
from . import strmod
from .snake import MismatchedGraphs, SnakeGraph


class NotGood(ValueError):
    pass


class InvalidRankVector(ValueError):
    pass


@dataclass(frozen=True)
class SnakeMultigraph:
    snake: SnakeGraph
    mult: tuple                 # frozen (edge, multiplicity) pairs
    members: tuple              # tile indices (0-based) with all four edges present
    components: tuple           # maximal runs of members, as (lo, hi)
    tile_class: dict            # member tile -> 1 (all-single boundary) or 2
    good: bool
    optimal: bool

    def multiplicity(self, edge):
        return dict(self.mult).get(edge, 0)


def _component_boundary(snake, interval, i):
    """Boundary edges of tile i relative to the sub-snake on `interval`."""
    lo, hi = interval
    t = snake.tiles[i]
    shared = set()
    if i > lo:
        shared |= set(t.edges().values()) & set(snake.tiles[i - 1].edges().values())
    if i < hi:
        shared |= set(t.edges().values()) & set(snake.tiles[i + 1].edges().values())
    return [e for e in t.edges().values() if e not in shared]


def _multigraph(snake, mult):
    mult = {e: m for e, m in mult.items() if m}
    for e in mult:
        if e not in snake.edge_arc:
            raise MismatchedGraphs(f"edge {e} does not belong to the snake graph")
    members = tuple(
        i for i in range(snake.d)
        if all(mult.get(e, 0) >= 1 for e in snake.tiles[i].edges().values())
    )
    components = []
    for i in members:
        if components and components[-1][1] == i - 1:
            components[-1][1] = i
        else:
            components.append([i, i])
    components = tuple((lo, hi) for lo, hi in components)

    tile_class = {}
    good = True
    for lo, hi in components:
        for i in range(lo, hi + 1):
            bd = _component_boundary(snake, (lo, hi), i)
            ms = {mult.get(e, 0) for e in bd}
            if ms == {1}:
                tile_class[i] = 1
            elif ms == {2}:
                tile_class[i] = 2
            else:
                good = False
                tile_class[i] = max(ms)

    optimal = good
    if good:
        dirs = sn.string_dirs(snake)
        for lo, hi in components:
            for k in range(lo, hi):
                # monotone along the arrows: a double propagates through
                # the head of every arrow it sits on
                if dirs[k] == ">" and tile_class[k] > tile_class[k + 1]:
                    optimal = False
                if dirs[k] == "<" and tile_class[k] < tile_class[k + 1]:
                    optimal = False
    return SnakeMultigraph(
        snake, sn.freeze(mult), members, components, tile_class, good, optimal
    )


def symmetric_difference(snake, d1, d2):
    """Per-edge |m1 - m2| = union minus intersection of the two covers."""
    for cov in (d1, d2):
        for e in cov:
            if e not in snake.edge_arc:
                raise MismatchedGraphs(f"edge {e} does not belong to the snake graph")
    mult = {}
    for e in set(d1) | set(d2):
        m = abs(d1.get(e, 0) - d2.get(e, 0))
        if m:
            mult[e] = m
    return _multigraph(snake, mult)


def completion(s: SnakeMultigraph):
    """Add a single copy of the missing edges of every tile that shows at
    least one of its own boundary edges."""
    snake = s.snake
    mult = dict(s.mult)
    snake_boundary = snake.boundary_edges()
    for i in range(snake.d):
        own_bd = [e for e in snake.tiles[i].edges().values() if e in snake_boundary]
        if any(mult.get(e, 0) for e in own_bd):
            for e in snake.tiles[i].edges().values():
                if not mult.get(e, 0):
                    mult[e] = 1
    return _multigraph(snake, mult)


def face_function(s: SnakeMultigraph):
    """Rank vector over the ambient faces: +1 per all-single tile, +2 per
    tile with a double boundary edge."""
    if not s.good:
        raise NotGood("face function requires a good snake multigraph")
    h = [0] * s.snake.n
    for i in s.members:
        h[s.snake.tiles[i].face - 1] += s.tile_class[i]
    return tuple(h)


def tile_ranks(s: SnakeMultigraph):
    """Per-tile contribution (0/1/2) indexed by tile position."""
    if not s.good:
        raise NotGood("tile ranks require a good snake multigraph")
    return tuple(s.tile_class.get(i, 0) for i in range(s.snake.d))


# ---------------------------------------------------------------------------
# loopy strings


@dataclass(frozen=True)
class LoopyString:
    """Word of vertices and arrows; vertices carry (face label, loop flag)."""
    vertices: tuple   # ((face, has_loop), ...)
    arrows: tuple     # '>' / '<', length len(vertices) - 1


def loopy_string_of(s: SnakeMultigraph):
    """Loopy string of a good one-component snake multigraph."""
    if not s.good:
        raise NotGood("only good snake multigraphs induce loopy strings")
    if len(s.components) != 1:
        raise NotGood("loopy strings are read off one component at a time")
    lo, hi = s.components[0]
    sub_offsets = s.snake.offsets[lo:hi]
    dirs = sn.string_dirs(sn.abstract_snake(sub_offsets)) if hi > lo else ()
    verts = tuple(
        (s.snake.tiles[i].face, s.tile_class[i] == 2) for i in range(lo, hi + 1)
    )
    return LoopyString(verts, dirs)


def multigraph_of_loopy_string(ls: LoopyString):
    """Abstract good snake multigraph of a loopy string."""
    offsets = []
    for i, d in enumerate(ls.arrows):
        if i == 0:
            offsets.append("E" if d == ">" else "N")
        elif d == ls.arrows[i - 1]:     # equal arrows -> zig-zag -> turn
            offsets.append("N" if offsets[-1] == "E" else "E")
        else:                           # different arrows -> straight
            offsets.append(offsets[-1])
    snake = sn.abstract_snake(offsets, faces=tuple(f for f, _ in ls.vertices))
    mult = {}
    interval = (0, snake.d - 1)
    for i in range(snake.d):
        for e in snake.tiles[i].edges().values():
            mult[e] = 1
    for i, (_, loop) in enumerate(ls.vertices):
        if loop:
            for e in _component_boundary(snake, interval, i):
                mult[e] = 2
    return _multigraph(snake, mult)


# ---------------------------------------------------------------------------
# the two directed constructions


def submodule_of_cover(snake, cover):
    """Rank vector (by face) of the submodule attached to a double dimer cover."""
    sn.check_cover(snake, cover, 2)
    dmin = sn.min_cover(snake, 2)
    comp = completion(symmetric_difference(snake, cover, dmin))
    assert comp.good and comp.optimal
    return face_function(comp)


def cover_tile_ranks(snake, cover):
    """Per-tile 0/1/2 ranks of the submodule attached to a cover."""
    dmin = sn.min_cover(snake, 2)
    comp = completion(symmetric_difference(snake, cover, dmin))
    assert comp.good and comp.optimal
    return tile_ranks(comp)


def _outline(snake, lo, hi):
    """Edges of the outer boundary of the tile run lo..hi."""
    count = {}
    for i in range(lo, hi + 1):
        for e in snake.tiles[i].edges().values():
            count[e] = count.get(e, 0) + 1
    return {e for e, c in count.items() if c == 1}


def cover_of_submodule(snake, ranks_by_tile):
    """Double dimer cover of a rank vector given per tile position (0/1/2).

    Per component: double boundary edges not in the minimal cover survive,
    runs of rank-1 tiles become cycles (completing the closing edge at each
    end), and the minimal cover fills everything away from the components."""
    d = snake.d
    if len(ranks_by_tile) != d or any(r not in (0, 1, 2) for r in ranks_by_tile):
        raise InvalidRankVector(f"need {d} entries in 0..2, got {ranks_by_tile}")
    dirs = sn.string_dirs(snake)
    for k in range(d - 1):
        lo_r, hi_r = ranks_by_tile[k], ranks_by_tile[k + 1]
        if dirs[k] == ">" and lo_r > hi_r:
            raise InvalidRankVector("rank vector not monotone along the arrows")
        if dirs[k] == "<" and lo_r < hi_r:
            raise InvalidRankVector("rank vector not monotone along the arrows")

    dmin = sn.min_cover(snake, 2)
    components = []
    run = None
    for i in range(d):
        if ranks_by_tile[i] > 0:
            run = [i, i] if run is None else [run[0], i]
        else:
            if run is not None:
                components.append(tuple(run))
                run = None
    if run is not None:
        components.append(tuple(run))

    cover = {}
    member_tiles = set()
    for lo, hi in components:
        member_tiles.update(range(lo, hi + 1))
        # the component as a multigraph: everything single except the
        # component-boundary edges of the rank-2 tiles
        h_mult = {}
        for i in range(lo, hi + 1):
            for e in snake.tiles[i].edges().values():
                h_mult[e] = 1
        for i in range(lo, hi + 1):
            if ranks_by_tile[i] == 2:
                for e in _component_boundary(snake, (lo, hi), i):
                    h_mult[e] = 2
        # doubles not in the minimal cover
        for e, m in h_mult.items():
            if m == 2 and dmin.get(e, 0) == 0:
                cover[e] = cover.get(e, 0) + 2
        # single boundary edges, completed to cycles around rank-1 runs
        single_runs = []
        sub = None
        for i in range(lo, hi + 1):
            if ranks_by_tile[i] == 1:
                sub = [i, i] if sub is None else [sub[0], i]
            else:
                if sub is not None:
                    single_runs.append(tuple(sub))
                    sub = None
        if sub is not None:
            single_runs.append(tuple(sub))
        for p, q in single_runs:
            collected = {
                e
                for i in range(p, q + 1)
                for e in _component_boundary(snake, (lo, hi), i)
                if h_mult.get(e, 0) == 1
            }
            cyc = _outline(snake, p, q)
            missing = cyc - collected
            closing = set()
            if p > lo:
                closing |= set(snake.tiles[p].edges().values()) & set(
                    snake.tiles[p - 1].edges().values()
                )
            if q < hi:
                closing |= set(snake.tiles[q].edges().values()) & set(
                    snake.tiles[q + 1].edges().values()
                )
            assert collected <= cyc and missing <= closing
            for e in cyc:
                cover[e] = cover.get(e, 0) + 1
    # minimal cover away from the components
    for e, m in dmin.items():
        if not any(t in member_tiles for t in snake.owners(e)):
            cover[e] = cover.get(e, 0) + m
    sn.check_cover(snake, cover, 2)
    return cover


# ---------------------------------------------------------------------------
# lattice comparison


@dataclass
class BijectionReport:
    snake_offsets: tuple
    d: int
    covers: int
    submodules: int
    ok: bool
    failures: list = field(default_factory=list)

    def line(self):
        status = "ok" if self.ok else "FAIL"
        shape = "".join(self.snake_offsets) or "-"
        return (
            f"[{status}] shape={shape} d={self.d} "
            f"covers={self.covers} submodules={self.submodules}"
        )


def submodule_lattice(snake, d=2):
    """Rank vectors of the induced module of the snake's string, with Hasse
    edges labeled by the face of the changed vertex."""
    dirs = sn.string_dirs(snake)
    vectors = strmod.rank_vectors(dirs, d)
    index = {v: i for i, v in enumerate(vectors)}
    edges = []
    for v in vectors:
        for k in range(len(v)):
            w = v[:k] + (v[k] + 1,) + v[k + 1:]
            if w in index:
                edges.append((index[v], index[w], snake.tiles[k].face))
    ranks = tuple(sum(v) for v in vectors)
    return vectors, tuple(edges), ranks


def verify_lattice_isomorphism(snake, d=2):
    """Check the cover lattice and the submodule lattice agree.

    For d = 2 the explicit constructions are checked to be mutually inverse
    and to match Hasse edges with labels; for d > 2 the comparison is by
    counting plus abstract edge-labeled graded poset isomorphism."""
    lat = sn.enumerate_covers(snake, d)
    vectors, sub_edges, sub_ranks = submodule_lattice(snake, d)
    report = BijectionReport(
        snake.offsets, d, len(lat.nodes), len(vectors), ok=True
    )

    if len(lat.nodes) != len(vectors):
        report.ok = False
        report.failures.append(
            f"count mismatch: {len(lat.nodes)} covers vs {len(vectors)} submodules"
        )
        return report

    if d == 2:
        to_rank = {}
        for i, node in enumerate(lat.nodes):
            cov = sn.thaw(node)
            r = cover_tile_ranks(snake, cov)
            to_rank[i] = r
            back = cover_of_submodule(snake, r)
            if sn.freeze(back) != node:
                report.ok = False
                report.failures.append(f"round trip failed at cover {node}")
            if lat.rank[i] != sum(r):
                report.ok = False
                report.failures.append(f"grading mismatch at cover {node}")
        if sorted(to_rank.values()) != sorted(vectors):
            report.ok = False
            report.failures.append("cover images do not exhaust the submodules")
        cover_edge_set = {
            (*sorted((to_rank[i], to_rank[j])), face) for i, j, face in lat.edges
        }
        sub_edge_set = {
            (*sorted((vectors[i], vectors[j])), face) for i, j, face in sub_edges
        }
        if cover_edge_set != sub_edge_set:
            report.ok = False
            report.failures.append("Hasse edges with labels do not correspond")
    else:
        import networkx as nx

        g1 = nx.Graph()
        for i in range(len(lat.nodes)):
            g1.add_node(("c", i), rank=lat.rank[i])
        for i, j, face in lat.edges:
            g1.add_edge(("c", i), ("c", j), face=face)
        g2 = nx.Graph()
        for i, vec in enumerate(vectors):
            g2.add_node(("m", i), rank=sub_ranks[i])
        for i, j, face in sub_edges:
            g2.add_edge(("m", i), ("m", j), face=face)
        matcher = nx.algorithms.isomorphism.GraphMatcher(
            g1, g2,
            node_match=lambda a, b: a["rank"] == b["rank"],
            edge_match=lambda a, b: a["face"] == b["face"],
        )
        if not matcher.is_isomorphic():
            report.ok = False
            report.failures.append("lattices are not isomorphic as labeled posets")
    return report


def all_snake_shapes(max_tiles):
    """Offset sequences of all abstract snake graphs with up to max_tiles tiles."""
    from itertools import product as iproduct
    shapes = [()]
    for d in range(2, max_tiles + 1):
        shapes.extend(iproduct("EN", repeat=d - 1))
    return [tuple(s) for s in shapes]
