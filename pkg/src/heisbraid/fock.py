"""The decategorified layer: the quantum Fock space over Z[t, t^{-1}].

Basis monomials are multisets of (vertex, k) standing for products of
complete generators p_v^{(k)}; lowering generators are rewritten through
the three commutation cases until they hit the vacuum.
"""

from __future__ import annotations

from .laurent import LaurentPoly, quantum_integer
from .symgrp import horizontal_strips, partitions_of, transpose


class FockElement:
    """Linear combination of monomials over integer Laurent polynomials.

    A monomial is a sorted tuple of (vertex, k >= 1) pairs; the empty
    monomial is the vacuum.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                c = c if isinstance(c, LaurentPoly) else LaurentPoly({0: c})
                if c:
                    m = canonical_monomial(m)
                    cur = self.terms.get(m)
                    tot = (cur + c) if cur else c
                    if tot:
                        self.terms[m] = tot
                    elif m in self.terms:
                        del self.terms[m]

    @classmethod
    def vacuum(cls):
        return cls({(): LaurentPoly.one()})

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def generator(cls, v, k=1):
        if k == 0:
            return cls.vacuum()
        return cls({((str(v), k),): LaurentPoly.one()})

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            cur = out.get(m)
            tot = (cur + c) if cur else c
            if tot:
                out[m] = tot
            elif m in out:
                del out[m]
        return FockElement(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        if not isinstance(c, LaurentPoly):
            c = LaurentPoly({0: c})
        return FockElement({m: x * c for m, x in self.terms.items()})

    def __mul__(self, other):
        """Product in the commutative algebra generated by the p's."""
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = canonical_monomial(m1 + m2)
                c = c1 * c2
                cur = out.get(m)
                tot = (cur + c) if cur else c
                if tot:
                    out[m] = tot
                elif m in out:
                    del out[m]
        return FockElement(out)

    def __eq__(self, other):
        return isinstance(other, FockElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((m, c) for m, c in self.terms.items()))

    def is_zero(self):
        return not self.terms

    def weight_split(self):
        out = {}
        for m, c in self.terms.items():
            w = sum(k for _, k in m)
            out.setdefault(w, {})[m] = c
        return {w: FockElement(t) for w, t in out.items()}

    def render(self):
        """Deterministic plain-text rendering for golden files."""
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            mono = "*".join(f"p{v}^({k})" for v, k in m) or "1"
            parts.append(f"({self.terms[m]}) {mono}")
        return " + ".join(parts)

    __repr__ = render


def canonical_monomial(m):
    return tuple(sorted((str(v), k) for v, k in m))


def basis_of_weight(graph, n):
    """All monomials of total weight n (vertex-coloured partitions)."""

    def go(verts, rest):
        if not verts:
            return [()] if rest == 0 else []
        v, tail = verts[0], verts[1:]
        out = []
        for d in range(rest + 1):
            for lam in partitions_of(d):
                head = tuple((v, k) for k in lam)
                for t in go(tail, rest - d):
                    out.append(canonical_monomial(head + t))
        return out

    return sorted(set(go(list(graph.vertices), n)))


# ---------------------------------------------------------------- rewriting

def normal_order(graph, word):
    """Apply a PQ word (leftmost symbol last) to the vacuum.

    word: sequence of ("P"|"Q", vertex, k) with k >= 0; lowering
    generators move right through the three commutation cases until they
    annihilate the vacuum.  Returns a FockElement.
    """
    state = FockElement.vacuum()
    for kind, v, k in reversed(list(word)):
        if kind == "P":
            state = apply_p(v, k, state)
        else:
            state = apply_q(graph, v, k, state)
    return state


def apply_p(v, k, elt):
    if k == 0:
        return elt
    if k < 0:
        return FockElement.zero()
    return FockElement.generator(v, k) * elt


def apply_q(graph, i, n, elt):
    """q_i^{(n)} applied to a sum of monomials, by the commutation rules."""
    if n == 0:
        return elt
    if n < 0:
        return FockElement.zero()
    i = str(i)
    out = FockElement.zero()
    for m, c in elt.terms.items():
        out = out + _q_on_monomial(graph, i, n, m).scale(c)
    return out


def _q_on_monomial(graph, i, n, m):
    if n == 0:
        return FockElement({m: 1})
    if not m:
        return FockElement.zero()  # lowering kills the vacuum
    (j, k), rest = m[0], m[1:]
    pair = graph.pairing(i, j)
    out = FockElement.zero()
    if pair == 2:
        # q_i^{(n)} p_i^{(k)} = sum_{l>=0} [l+1] p_i^{(k-l)} q_i^{(n-l)}
        for l in range(0, min(n, k) + 1):
            inner = _q_on_monomial(graph, i, n - l, rest)
            out = out + apply_p(i, k - l, inner).scale(quantum_integer(l + 1))
    elif pair == -1:
        # q_i^{(n)} p_j^{(k)} = p_j^{(k)} q_i^{(n)} + p_j^{(k-1)} q_i^{(n-1)}
        out = out + apply_p(j, k, _q_on_monomial(graph, i, n, rest))
        out = out + apply_p(j, k - 1, _q_on_monomial(graph, i, n - 1, rest))
    else:
        out = apply_p(j, k, _q_on_monomial(graph, i, n, rest))
    return out


# ------------------------------------------------------------ Schur bridge

def schur_to_monomials(v, lam):
    """p_v^{(lam)} as a determinant in the complete generators."""
    lam = tuple(lam)
    if not lam:
        return FockElement.vacuum()
    r = len(lam)
    total = FockElement.zero()
    from .symgrp import all_perms, perm_sign

    for p in all_perms(r):
        ks = [lam[a] + p[a] - a for a in range(r)]
        if any(k < 0 for k in ks):
            continue
        term = FockElement.vacuum()
        for k in ks:
            term = term * FockElement.generator(v, k)
        total = total + term.scale(perm_sign(p))
    return total


def monomials_to_schur(m):
    """Expand a monomial into (vertex -> partition) Schur terms by Pieri.

    Returns {tuple of (vertex, partition): integer coefficient}.
    """
    per_vertex = {}
    for v, k in canonical_monomial(m):
        per_vertex.setdefault(v, []).append(k)
    out = {(): 1}
    for v in sorted(per_vertex):
        exp = {(): 1}
        for k in sorted(per_vertex[v], reverse=True):
            nxt = {}
            for lam, c in exp.items():
                for mu in horizontal_strips(lam, k):
                    nxt[mu] = nxt.get(mu, 0) + c
            exp = nxt
        new = {}
        for key, c in out.items():
            for lam, c2 in exp.items():
                k2 = key + ((v, lam),)
                new[k2] = new.get(k2, 0) + c * c2
        out = new
    return out


def schur_expand(assignment):
    """FockElement of a product of p_v^{(lam_v)} over vertices."""
    out = FockElement.vacuum()
    for v, lam in assignment:
        out = out * schur_to_monomials(v, lam)
    return out


# ------------------------------------------------------------ braid action

def sigma_fock_generator(graph, i, sign, j, n):
    """sigma_i^{+-1} on p_j^{(n)} per the three adjacency cases."""
    i, j = str(i), str(j)
    if n == 0:
        return FockElement.vacuum()
    pair = graph.pairing(i, j)
    t2 = LaurentPoly.t(-2 if sign > 0 else 2)
    t1 = LaurentPoly.t(-1 if sign > 0 else 1)
    if pair == 2:
        coeff = LaurentPoly.one()
        for _ in range(n):
            coeff = coeff * t2 * (-1)
        return schur_to_monomials(i, (1,) * n).scale(coeff)
    if pair == -1:
        out = FockElement.zero()
        for k in range(0, n + 1):
            coeff = LaurentPoly.one()
            for _ in range(n - k):
                coeff = coeff * t1 * (-1)
            term = FockElement.generator(j, k) * FockElement.generator(i, n - k)
            out = out + term.scale(coeff)
        return out
    return FockElement.generator(j, n)


def sigma_fock(graph, i, sign, elt):
    """The braid generator acting on a Fock element (multiplicatively)."""
    out = FockElement.zero()
    for m, c in elt.terms.items():
        term = FockElement.vacuum()
        for v, k in m:
            term = term * sigma_fock_generator(graph, i, sign, v, k)
        out = out + term.scale(c)
    return out


def apply_fock_word(graph, word, elt):
    """Braid word (leftmost letter outermost) acting on a Fock element."""
    for v, e in reversed(list(word)):
        elt = sigma_fock(graph, v, 1 if e > 0 else -1, elt)
    return elt


def verify_fock_braid(graph, n, word1, word2):
    """Equality of two braid word actions on the full weight-n basis."""
    for m in basis_of_weight(graph, n):
        v = FockElement({m: 1})
        if apply_fock_word(graph, word1, v) != apply_fock_word(graph, word2, v):
            return False, m
    return True, None


# -------------------------------------------------------------- the bridge

def euler_class(graph, C, v):
    """Alternating sum over a formal complex of t^shift times the word
    action, decategorifying the braid complex to the Fock action."""
    out = FockElement.zero()
    for k in C.degrees():
        sgn = -1 if k % 2 else 1
        for s in C.terms[k]:
            assert s.word is not None, "euler_class needs formal (atom) terms"
            contrib = apply_word_to_fock(graph, s.word, v)
            out = out + contrib.scale(LaurentPoly.t(s.shf) * sgn)
    return out


def apply_word_to_fock(graph, word, v):
    """Word of P/Q divided-power symbols acting on a Fock element.

    Schur-cut symbols expand through the determinant formula first.
    """
    out = v
    for kind, vertex, lam in reversed(list(word)):
        lam = tuple(lam)
        if len(lam) == 1:
            if kind == "P":
                out = apply_p(vertex, lam[0], out)
            else:
                out = apply_q(graph, vertex, lam[0], out)
            continue
        # general partition: Giambelli determinant in complete symbols
        from .symgrp import all_perms, perm_sign

        r = len(lam)
        acc = FockElement.zero()
        for p in all_perms(r):
            ks = [lam[a] + p[a] - a for a in range(r)]
            if any(k < 0 for k in ks):
                continue
            term = out
            for k in reversed(ks):
                term = apply_p(vertex, k, term) if kind == "P" else apply_q(graph, vertex, k, term)
            acc = acc + term.scale(perm_sign(p))
        out = acc
    return out
