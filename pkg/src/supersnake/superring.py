"""Exact arithmetic in Z[x_1^(+-1/2), ..., x_n^(+-1/2)] (x) Lambda(theta_1, ..., theta_{n+1}).

Conventions baked into the normal form:

* Exponents of the even variables are stored doubled (``exp2``), so every
  half-integer power is an exact integer and no rationals are needed.
* A theta word is stored sorted by positivity, largest first.  Each odd
  generator carries a ``rank`` (1 = largest in the positive order) and a
  ``tri`` label used only for printing; sorting a word multiplies the
  coefficient by the sign of the permutation, and a repeated generator
  kills the term.
* Terms are kept in a fixed total order (theta word first, then exponent
  vector lexicographically), so structural equality of two normalized
  expressions is equality of the underlying tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

Mono = tuple  # exp2 vector, length n, entries are 2 * exponent


class NonRepresentableRoot(ValueError):
    """Square root would leave the half-integer exponent grid."""


class AmbientMismatch(ValueError):
    """Operands live over a different number of even variables."""


class ThetaVar(NamedTuple):
    rank: int  # position in the positive order, 1 = largest
    tri: int   # triangle id, used for rendering

    def __str__(self):
        return f"θ{self.tri}"


@dataclass(frozen=True)
class SuperTerm:
    coeff: int
    exp2: Mono
    thetas: tuple  # tuple[ThetaVar, ...], strictly increasing rank (= decreasing positivity)


def _term_key(exp2, thetas):
    return (len(thetas), tuple(t.rank for t in thetas), exp2)


def _sort_thetas(thetas):
    """Sort a theta word largest-first; return (sign, word) or (0, ()) if repeated."""
    word = list(thetas)
    sign = 1
    # insertion sort, counting transpositions exactly
    for i in range(1, len(word)):
        j = i
        while j > 0 and word[j - 1].rank > word[j].rank:
            word[j - 1], word[j] = word[j], word[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(word, word[1:]):
        if a.rank == b.rank:
            if a.tri != b.tri:
                raise ValueError(f"two theta variables share rank {a.rank}")
            return 0, ()
    return sign, tuple(word)


@dataclass(frozen=True)
class SuperExpr:
    n: int
    terms: tuple  # tuple[SuperTerm, ...] in canonical order

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, neg(other))

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        return mul(self, other)

    def __str__(self):
        return canonical_string(self)

    def even_part(self):
        return SuperExpr(self.n, tuple(t for t in self.terms if len(t.thetas) % 2 == 0))

    def odd_part(self):
        return SuperExpr(self.n, tuple(t for t in self.terms if len(t.thetas) % 2 == 1))

    def theta_free_part(self):
        return SuperExpr(self.n, tuple(t for t in self.terms if not t.thetas))


def normalize(n, raw_terms):
    """Build a SuperExpr from (coeff, exp2, theta iterable) triples."""
    acc = {}
    for coeff, exp2, thetas in raw_terms:
        exp2 = tuple(exp2)
        if len(exp2) != n:
            raise AmbientMismatch(f"monomial has {len(exp2)} variables, ambient has {n}")
        sign, word = _sort_thetas(tuple(thetas))
        if sign == 0 or coeff == 0:
            continue
        key = (exp2, word)
        acc[key] = acc.get(key, 0) + sign * coeff
    terms = [
        SuperTerm(c, exp2, word)
        for (exp2, word), c in acc.items()
        if c != 0
    ]
    terms.sort(key=lambda t: _term_key(t.exp2, t.thetas))
    return SuperExpr(n, tuple(terms))


def zero(n):
    return SuperExpr(n, ())


def const(n, c):
    return normalize(n, [(c, (0,) * n, ())])


def one(n):
    return const(n, 1)


def mono_expr(n, exp2, coeff=1, thetas=()):
    return normalize(n, [(coeff, exp2, thetas)])


def x_var(n, i, exp2=2):
    """x_i^(exp2/2) as an expression; i is 1-based."""
    e = [0] * n
    e[i - 1] = exp2
    return mono_expr(n, tuple(e))


def unit_mono(n):
    return (0,) * n


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_neg(a):
    return tuple(-x for x in a)


def _check_ambient(a, b):
    if a.n != b.n:
        raise AmbientMismatch(f"ambient sizes differ: {a.n} vs {b.n}")


def add(a, b):
    _check_ambient(a, b)
    return normalize(a.n, [(t.coeff, t.exp2, t.thetas) for t in a.terms + b.terms])


def neg(a):
    return SuperExpr(a.n, tuple(SuperTerm(-t.coeff, t.exp2, t.thetas) for t in a.terms))


def mul(a, b):
    _check_ambient(a, b)
    raw = []
    for ta in a.terms:
        for tb in b.terms:
            raw.append((ta.coeff * tb.coeff, mono_mul(ta.exp2, tb.exp2), ta.thetas + tb.thetas))
    return normalize(a.n, raw)


def div_monomial(a, m):
    """Divide by the monomial with exponent vector m (exact in the Laurent ring)."""
    m = tuple(m)
    if len(m) != a.n:
        raise AmbientMismatch(f"monomial has {len(m)} variables, ambient has {a.n}")
    inv = mono_neg(m)
    return SuperExpr(a.n, tuple(SuperTerm(t.coeff, mono_mul(t.exp2, inv), t.thetas) for t in a.terms))


def sqrt_monomial(m):
    """Halve an exponent vector; defined only on the even sublattice."""
    if any(e % 2 for e in m):
        raise NonRepresentableRoot(f"square root of {m} leaves the half-integer grid")
    return tuple(e // 2 for e in m)


def theta_pair(n, a, b):
    """The positive-order product of two distinct odd generators, coefficient +1."""
    return normalize(n, [(1, (0,) * n, (a, b))])


# ---------------------------------------------------------------------------
# rendering and parsing


def _exp_str(e):
    # e is the doubled exponent
    if e % 2 == 0:
        return str(e // 2)
    return f"{e}/2"


def _render_term(t):
    factors = []
    for i, e in enumerate(t.exp2):
        if e == 0:
            continue
        if e == 2:
            factors.append(f"x{i + 1}")
        else:
            factors.append(f"x{i + 1}^({_exp_str(e)})")
    theta = "".join(str(v) for v in t.thetas)
    c = t.coeff
    sign = "-" if c < 0 else ""
    mag = abs(c)
    if not factors and not theta:
        return f"{sign}{mag}"
    body = "*".join(factors + ([theta] if theta else []))
    if mag == 1:
        return f"{sign}{body}"
    return f"{sign}{mag}*{body}"


def canonical_string(a):
    if not a.terms:
        return "0"
    return " + ".join(_render_term(t) for t in a.terms)


def parse_expr(text, n, theta_rank):
    """Inverse of canonical_string.  theta_rank maps triangle id -> positive rank."""
    text = text.strip()
    if text == "0":
        return zero(n)
    raw = []
    for chunk in text.split(" + "):
        chunk = chunk.strip()
        sign = 1
        if chunk.startswith("-"):
            sign = -1
            chunk = chunk[1:]
        coeff = 1
        exp2 = [0] * n
        thetas = []
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError("empty factor")
            if factor[0] == "θ":
                for piece in factor.split("θ"):
                    if piece == "":
                        continue
                    tri = int(piece)
                    thetas.append(ThetaVar(theta_rank[tri], tri))
            elif factor[0] == "x":
                if "^" in factor:
                    name, _, power = factor.partition("^")
                    power = power.strip("()")
                    if "/" in power:
                        num, _, den = power.partition("/")
                        if int(den) != 2:
                            raise ValueError(f"bad exponent denominator in {factor}")
                        e2 = int(num)
                    else:
                        e2 = 2 * int(power)
                else:
                    name = factor
                    e2 = 2
                idx = int(name[1:])
                if not 1 <= idx <= n:
                    raise ValueError(f"variable {name} out of range")
                exp2[idx - 1] += e2
            else:
                coeff *= int(factor)
        raw.append((sign * coeff, tuple(exp2), tuple(thetas)))
    return normalize(n, raw)
