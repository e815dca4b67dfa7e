"""String modules over the path algebra of the triangulation quiver and their
dual-number extensions.

A string module is determined by a support interval of quiver vertices
(= arc labels in crossing order).  Submodules of the d-fold induced module
are encoded by rank vectors: values in 0..d, weakly monotone along the quiver
arrows inside the support.  The nilpotent loop forces the rank-r subspace of
K^d to be the span of the last r coordinates, so the rank vector determines
the submodule.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import superring as sr
from .polygon import norm_arc


@dataclass(frozen=True)
class StringModule:
    lo: int   # first supported quiver vertex (1-based arc label)
    hi: int   # last supported quiver vertex, inclusive

    @property
    def support(self):
        return range(self.lo, self.hi + 1)

    def dim_vector(self, n):
        return tuple(1 if self.lo <= i <= self.hi else 0 for i in range(1, n + 1))


@dataclass(frozen=True)
class InducedModule:
    base: StringModule
    d: int = 2


def module_of_arc(ot, gamma, start=None):
    labels, _ = ot.crossed_arcs(gamma, start)
    lo, hi = min(labels), max(labels)
    assert sorted(labels) == list(range(lo, hi + 1)), "crossed labels must be an interval"
    return StringModule(lo, hi)


def arc_of_module(ot, m: StringModule):
    """The arc whose crossed arcs are exactly the support interval."""
    from .polygon import internal_arcs, arcs_cross
    want = set(ot.arc_of_label[k] for k in m.support)
    for p, q in internal_arcs(ot.v):
        a = norm_arc(p, q)
        if a in ot.label_of_arc:
            continue
        crossed = {x for x in ot.tri.arcs if arcs_cross(ot.v, a, x)}
        if crossed == want:
            return a
    raise AssertionError(f"no arc realizes support [{m.lo}..{m.hi}]")


def rank_vectors(arrow_dirs, d):
    """Rank vectors on a path of len(arrow_dirs)+1 vertices, weakly monotone
    along the arrows; '>' at position k means an arrow k -> k+1."""
    length = len(arrow_dirs) + 1
    out = []
    for vec in product(range(d + 1), repeat=length):
        ok = True
        for k, dir_ in enumerate(arrow_dirs):
            if dir_ == ">" and vec[k] > vec[k + 1]:
                ok = False
                break
            if dir_ == "<" and vec[k] < vec[k + 1]:
                ok = False
                break
        if ok:
            out.append(vec)
    out.sort()
    return out


def submodules(ot, mod: StringModule, d=2):
    """All submodule rank vectors of the d-fold induced module, as full
    length-n tuples, canonically ordered."""
    dirs = ot.arrow_dirs()[mod.lo - 1: mod.hi - 1]
    local = rank_vectors(dirs, d)
    out = []
    for vec in local:
        full = [0] * ot.n
        for i, r in zip(mod.support, vec):
            full[i - 1] = r
        out.append(tuple(full))
    out.sort()
    return out


def grassmannian_chi(ot, mod: StringModule, e, d=2):
    """1 if some submodule of the d-fold induced module has dimension vector e."""
    e = tuple(e)
    if any(e[i - 1] and not (mod.lo <= i <= mod.hi) for i in range(1, ot.n + 1)):
        return 0
    return 1 if e in set(submodules(ot, mod, d)) else 0


def rank_one_intervals(rank, support):
    """Maximal intervals of vertices with rank exactly 1."""
    out = []
    run = None
    for i in support:
        if rank[i - 1] == 1:
            run = [i, i] if run is None else [run[0], i]
        else:
            if run is not None:
                out.append(tuple(run))
                run = None
    if run is not None:
        out.append(tuple(run))
    return out


def f_of(ot, mod: StringModule, rank):
    """Summands of the quotient by the largest induced submodule (d = 2):
    one string module per maximal rank-1 interval."""
    return [StringModule(lo, hi) for lo, hi in rank_one_intervals(rank, mod.support)]


def mu_of_module(ot, mod: StringModule):
    """Product of the odd variables of the first and last triangle crossed by
    the arc of the module, taken in the positive order."""
    a = ot.theta(mod.lo)        # triangle before crossing arc lo
    b = ot.theta(mod.hi + 1)    # triangle after crossing arc hi
    first, second = (a, b) if a.rank < b.rank else (b, a)
    return sr.theta_pair(ot.n, first, second)


def mu_of_submodule(ot, mod: StringModule, rank):
    out = sr.one(ot.n)
    for piece in f_of(ot, mod, rank):
        out = out * mu_of_module(ot, piece)
    return out


# ---------------------------------------------------------------------------
# index


def index_monomial(ot, gamma, start=None):
    """wt(P_min)/cross as an exp2 vector with even entries."""
    from . import snake as sn
    snake = sn.build_snake(ot, gamma, start)
    wt_min = sn.wt_matching(snake, sn.min_cover(snake, 1))
    cross = sn.cross_weight(snake)
    return tuple(a - b for a, b in zip(wt_min, cross))


def _rank_of_matrix(rows):
    """Row rank by exact Gaussian elimination over the rationals."""
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    pivot_row = 0
    for col in range(cols):
        pivot = next((r for r in range(pivot_row, len(mat)) if mat[r][col]), None)
        if pivot is None:
            continue
        mat[pivot_row], mat[pivot] = mat[pivot], mat[pivot_row]
        inv = 1 / mat[pivot_row][col]
        mat[pivot_row] = [x * inv for x in mat[pivot_row]]
        for r in range(len(mat)):
            if r != pivot_row and mat[r][col]:
                factor = mat[r][col]
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[pivot_row])]
        pivot_row += 1
        rank += 1
    return rank


def index_oracle(ot, mod: StringModule):
    """Index from the minimal injective copresentation 0 -> M -> N0 -> N1.

    [N0]_j is the socle dimension at j; [N1]_j is the socle dimension of the
    cokernel of the injective envelope, computed here as the cokernel of the
    combined arrow maps out of j (the algebra is hereditary since the
    triangulation has no internal triangle).  Returns [N1] - [N0]."""
    dims = mod.dim_vector(ot.n)
    arrows = ot.quiver_arrows

    def arrow_matrix(i, j):
        # identity block when both ends supported, zero otherwise
        rows = dims[j - 1]
        cols = dims[i - 1]
        return [[1 if (r == c and dims[i - 1] and dims[j - 1]) else 0
                 for c in range(cols)] for r in range(rows)]

    ind = []
    for j in range(1, ot.n + 1):
        targets = [t for (srcv, t) in arrows if srcv == j]
        cols = dims[j - 1]
        stacked = []
        for t in targets:
            stacked.extend(arrow_matrix(j, t))
        if cols == 0:
            soc = 0
            rank = 0
        elif not stacked:
            soc = cols
            rank = 0
        else:
            rank = _rank_of_matrix([row for row in stacked])
            soc = cols - rank
        ext = sum(dims[t - 1] for t in targets) - rank
        ind.append(ext - soc)
    return tuple(ind)


def bilinear(ot, i, e):
    """Antisymmetrized form of the simple at i against a dimension vector,
    via arrow counts: sum_j e_j (#arrows j->i - #arrows i->j)."""
    a_in = {}
    a_out = {}
    for (p, q) in ot.quiver_arrows:
        if q == i:
            a_in[p] = a_in.get(p, 0) + 1
        if p == i:
            a_out[q] = a_out.get(q, 0) + 1
    return sum(ej * (a_in.get(j, 0) - a_out.get(j, 0))
               for j, ej in enumerate(e, start=1))
