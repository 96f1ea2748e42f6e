"""Partitions and the rational group algebra of the symmetric group.

Permutations are tuples in one-line notation, 0-indexed: p[i] is the
image of i.  Products compose right-to-left: (p * q)(i) = p[q[i]].
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache


# ---------------------------------------------------------------- partitions

def is_partition(parts):
    return all(a >= b for a, b in zip(parts, parts[1:])) and all(p > 0 for p in parts)


def partitions_of(n):
    """All partitions of n, reverse-lexicographic: (n) first, (1^n) last."""
    assert n >= 0

    def gen(rest, maxpart):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, maxpart), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return list(gen(n, n)) if n else [()]


def transpose(lam):
    """Conjugate partition (flip the Young diagram)."""
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > c) for c in range(lam[0]))


def covers(lam):
    """All partitions obtained from lam by removing one box."""
    assert sum(lam) >= 1
    out = []
    for i in range(len(lam)):
        if i == len(lam) - 1 or lam[i] > lam[i + 1]:
            mu = list(lam)
            mu[i] -= 1
            if mu[i] == 0:
                mu.pop(i)
            out.append(tuple(mu))
    return out


def contains(lam, mu):
    """mu subseteq lam as Young diagrams."""
    return len(mu) <= len(lam) and all(mu[i] <= lam[i] for i in range(len(mu)))


def cells(lam):
    return [(r, c) for r in range(len(lam)) for c in range(lam[r])]


def hook_dimension(lam):
    """Number of standard Young tableaux, by the hook length formula."""
    n = sum(lam)
    if n == 0:
        return 1
    lamt = transpose(lam)
    denom = 1
    for r, c in cells(lam):
        denom *= (lam[r] - c) + (lamt[c] - r) - 1
    return math.factorial(n) // denom


def horizontal_strips(lam, r):
    """Partitions mu >= lam with mu/lam a horizontal r-strip (Pieri rule)."""
    rows = len(lam) + 1
    out = []

    def build(i, remaining, acc):
        if i == rows:
            if remaining == 0:
                out.append(tuple(p for p in acc if p))
            return
        lo = lam[i] if i < len(lam) else 0
        hi = acc[i - 1] if i > 0 else lo + remaining
        # horizontal strip: mu_i <= lam_{i-1}
        cap = lam[i - 1] if i > 0 else lo + remaining
        hi = min(hi, cap, lo + remaining)
        for mu_i in range(lo, hi + 1):
            build(i + 1, remaining - (mu_i - lo), acc + [mu_i])

    build(0, r, [])
    return out


# -------------------------------------------------------------- permutations

def perm_identity(n):
    return tuple(range(n))

def perm_mul(p, q):
    """(p*q)(i) = p[q[i]] -- apply q first."""
    return tuple(p[q[i]] for i in range(len(p)))

def perm_inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)

def perm_sign(p):
    seen = [False] * len(p)
    sign = 1
    for i in range(len(p)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign

def transposition(n, i, j):
    p = list(range(n))
    p[i], p[j] = p[j], p[i]
    return tuple(p)

def simple_transposition(n, k):
    """s_k = (k, k+1), 0-indexed slots k and k+1."""
    return transposition(n, k, k + 1)

def cycle_type(p):
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            lengths.append(length)
    return tuple(sorted(lengths, reverse=True))

def all_perms(n):
    return [tuple(p) for p in itertools.permutations(range(n))]


def superperm_sign(p, parities):
    """Koszul sign of permuting homogeneous letters by p.

    Letter in slot i moves to slot p[i]; each crossing of two odd letters
    contributes -1.  Independent of how p is decomposed into swaps.
    """
    n = len(p)
    assert len(parities) == n
    count = 0
    for i in range(n):
        if parities[i] % 2 == 0:
            continue
        for j in range(i + 1, n):
            if parities[j] % 2 and p[i] > p[j]:
                count += 1
    return -1 if count % 2 else 1


def permute_word(p, word, parities=None):
    """Place word[i] into slot p[i]; return (sign, new word)."""
    n = len(p)
    out = [None] * n
    for i in range(n):
        out[p[i]] = word[i]
    sign = superperm_sign(p, parities) if parities is not None else 1
    return sign, tuple(out)


# -------------------------------------------------------------- group algebra

class GroupAlgElem:
    """Element of Q[S_n]: {perm tuple: Fraction}, no zero terms."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {}
        if terms:
            for p, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[p] = c

    @classmethod
    def from_perm(cls, p, c=1):
        return cls(len(p), {tuple(p): Fraction(c)})

    @classmethod
    def one(cls, n):
        return cls(n, {perm_identity(n): Fraction(1)})

    def __add__(self, other):
        assert self.n == other.n
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, Fraction(0)) + c
            if not out[p]:
                del out[p]
        return GroupAlgElem(self.n, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return GroupAlgElem(self.n, {p: x * c for p, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if self.n != other.n:
            raise ValueError("strand count mismatch")
        out = {}
        for p, a in self.terms.items():
            for q, b in other.terms.items():
                r = perm_mul(p, q)
                out[r] = out.get(r, Fraction(0)) + a * b
                if not out[r]:
                    del out[r]
        return GroupAlgElem(self.n, out)

    __rmul__ = scale

    def __eq__(self, other):
        return isinstance(other, GroupAlgElem) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{p}" for p, c in sorted(self.terms.items()))


def ga_multiply(a, b):
    return a * b


def tau(a):
    """The involution sending each simple transposition to its negative."""
    return GroupAlgElem(a.n, {p: c * perm_sign(p) for p, c in a.terms.items()})


# ------------------------------------------------------------- Young theory

def canonical_tableau(lam):
    """Row-major filling with 0..n-1; returns {(row, col): entry}."""
    fill = {}
    k = 0
    for r, part in enumerate(lam):
        for c in range(part):
            fill[(r, c)] = k
            k += 1
    return fill


def _subgroup_perms(n, blocks):
    """All permutations of {0..n-1} preserving each block elementwise."""
    perms = [tuple(range(n))]
    out = []
    for assignment in itertools.product(*[itertools.permutations(b) for b in blocks]):
        p = list(range(n))
        for block, image in zip(blocks, assignment):
            for src, dst in zip(block, image):
                p[src] = dst
        out.append(tuple(p))
    return out


def row_symmetrizer(lam):
    n = sum(lam)
    fill = canonical_tableau(lam)
    rows = [[fill[(r, c)] for c in range(part)] for r, part in enumerate(lam)]
    return GroupAlgElem(n, {p: Fraction(1) for p in _subgroup_perms(n, rows)})


def column_antisymmetrizer(lam):
    n = sum(lam)
    fill = canonical_tableau(lam)
    lamt = transpose(lam)
    cols = [[fill[(r, c)] for r in range(lamt[c])] for c in range(len(lamt))]
    return GroupAlgElem(n, {p: Fraction(perm_sign(p)) for p in _subgroup_perms(n, cols)})


@lru_cache(maxsize=None)
def young_idempotent(lam):
    """e_lam = (f_lam / n!) a_lam b_lam for the canonical row-major filling."""
    lam = tuple(lam)
    n = sum(lam)
    assert n >= 1
    e = (row_symmetrizer(lam) * column_antisymmetrizer(lam)).scale(
        Fraction(hook_dimension(lam), math.factorial(n))
    )
    return e


@lru_cache(maxsize=None)
def transpose_conjugator(lam):
    """Permutation sending the canonical filling of lam^t to the
    transposed canonical filling of lam.

    Relabels the transpose-partition tableau so that tau(e_lam) lands in
    the block of e_{lam^t} in a controlled way; tau(e_lam) * g * e_{lam^t}
    is a nonzero element pairing the two idempotents.
    """
    lam = tuple(lam)
    lamt = transpose(lam)
    fill = canonical_tableau(lam)
    fill_t = canonical_tableau(lamt)
    n = sum(lam)
    g = [0] * n
    for (r, c), v in fill_t.items():
        g[v] = fill[(c, r)]
    return tuple(g)


# --------------------------------------------------------------- characters

@lru_cache(maxsize=None)
def mn_character(lam, mu):
    """Irreducible character chi^lam at cycle type mu (border-strip rule)."""
    lam, mu = tuple(lam), tuple(mu)
    assert sum(lam) == sum(mu)
    if not mu:
        return 1
    k, rest = mu[0], mu[1:]
    r = len(lam)
    beta = [lam[i] + (r - 1 - i) for i in range(r)]
    bset = set(beta)
    total = 0
    for b in beta:
        if b >= k and (b - k) not in bset:
            crossings = sum(1 for c in beta if b - k < c < b)
            newbeta = sorted([c for c in beta if c != b] + [b - k], reverse=True)
            newlam = tuple(
                x for x in (newbeta[i] - (r - 1 - i) for i in range(r)) if x > 0
            )
            total += (-1) ** crossings * mn_character(newlam, rest)
    return total


def central_idempotent(lam, n=None):
    """Central idempotent of the lam-isotypic block of Q[S_n], n <= 6."""
    lam = tuple(lam)
    n = n or sum(lam)
    assert n == sum(lam)
    if n > 6:
        raise ValueError("central idempotents computed only for n <= 6")
    f = hook_dimension(lam)
    terms = {}
    for p in all_perms(n):
        chi = mn_character(lam, cycle_type(perm_inverse(p)))
        if chi:
            terms[p] = Fraction(f * chi, math.factorial(n))
    return GroupAlgElem(n, terms)
