"""Based graded superalgebras with monomial multiplication.

Both the zig-zag algebras and their wreath products have the property
that a product of two basis elements is a scalar times a single basis
element (or zero), so multiplication is stored as a function, not a
table.  Elements are sparse dicts {basis index: Fraction}.
"""

from __future__ import annotations

from fractions import Fraction

from .symgrp import all_perms, perm_identity, perm_mul, permute_word

F1 = Fraction(1)


class SuperAlgebra:
    """Finite dimensional unital superalgebra with a monomial basis."""

    def __init__(self, name, labels, degs, pars, mul_basis, unit_indices, generators):
        self.name = name
        self.labels = list(labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self.dim = len(self.labels)
        self.deg = list(degs)
        self.par = list(pars)
        self._mul_basis = mul_basis          # (i, j) -> (Fraction, k) or None
        self.unit = {i: F1 for i in unit_indices}
        self._generators = generators        # list of (name, sparse elt)
        self._mul_cache = {}

    def mul_basis(self, i, j):
        key = (i, j)
        hit = self._mul_cache.get(key, False)
        if hit is False:
            hit = self._mul_basis(i, j)
            self._mul_cache[key] = hit
        return hit

    def mul(self, x, y):
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                r = self.mul_basis(i, j)
                if r is not None:
                    c, k = r
                    v = out.get(k, 0) + a * b * c
                    if v:
                        out[k] = v
                    elif k in out:
                        del out[k]
        return out

    def generators(self):
        """Homogeneous generators (with the unit reachable from them)."""
        return self._generators

    def elt_degree(self, x):
        degs = {self.deg[i] for i in x}
        assert len(degs) <= 1, "inhomogeneous element"
        return degs.pop() if degs else 0

    def elt_parity(self, x):
        pars = {self.par[i] for i in x}
        assert len(pars) <= 1, "parity-inhomogeneous element"
        return pars.pop() if pars else 0

    def basis_elt(self, label):
        return {self.index[label]: F1}

    def describe(self, x):
        return " + ".join(f"{c}*{self.labels[i]}" for i, c in sorted(x.items()))

    def __repr__(self):
        return f"<{self.name}: dim {self.dim}>"


# ---------------------------------------------------------------- zig-zag

def build_zigzag(graph):
    """The zig-zag algebra of an oriented graph.

    Basis per vertex a: idempotent ('e', a) in degree 0 and loop ('w', a)
    in degree 2; per oriented pair of adjacent vertices: arrow ('a', a, b)
    in degree 1.  Arrows compose as (a|b)(b|a) = eps_ab * w_a, and all
    other length-two products of arrows vanish, as do longer paths.
    """
    labels, degs = [], []
    for v in graph.vertices:
        labels.append(("e", v))
        degs.append(0)
    for v in graph.vertices:
        for w in graph.adjacent(v):
            labels.append(("a", v, w))
            degs.append(1)
    for v in graph.vertices:
        labels.append(("w", v))
        degs.append(2)
    pars = [d % 2 for d in degs]
    index = {lab: i for i, lab in enumerate(labels)}

    def source(lab):
        return lab[1]

    def target(lab):
        return lab[2] if lab[0] == "a" else lab[1]

    def mul_basis(i, j):
        x, y = labels[i], labels[j]
        if target(x) != source(y):
            return None
        if x[0] == "e":
            return (F1, j)
        if y[0] == "e":
            return (F1, i)
        if x[0] == "a" and y[0] == "a":
            a, b = x[1], x[2]
            if y[2] == a:  # (a|b)(b|a) = eps_ab w_a
                return (Fraction(graph.epsilon(a, b)), index[("w", a)])
            return None  # (a|b)(b|c) = 0 for a != c
        return None  # anything involving a loop and positive degree

    unit = [index[("e", v)] for v in graph.vertices]
    gens = [(lab, {i: F1}) for i, lab in enumerate(labels) if lab[0] != "w"]
    # loops are products of arrows except at isolated vertices
    for v in graph.vertices:
        if not graph.adjacent(v):
            gens.append((("w", v), {index[("w", v)]: F1}))
    alg = SuperAlgebra(f"B({'/'.join(graph.vertices)})", labels, degs, pars, mul_basis, unit, gens)
    alg.graph = graph
    alg.kind = "zigzag"
    return alg


def zz_multiply(alg, x, y):
    return alg.mul(x, y)


# ----------------------------------------------------------------- wreath

def build_wreath(base, n):
    """The wreath product base^{tensor n} with the symmetric group.

    Basis: (word, perm) with word an n-tuple of base basis indices and
    perm in one-line notation.  The symmetric group acts by
    superpermutations using the stored parities of base elements; the
    tensor factors multiply with the usual Koszul sign.
    """
    assert n >= 0
    if n == 0:
        return build_ground_field()
    words = [()]
    for _ in range(n):
        words = [w + (i,) for w in words for i in range(base.dim)]
    perms = all_perms(n)
    labels = [(w, p) for w in words for p in perms]
    index = {lab: i for i, lab in enumerate(labels)}
    degs = [sum(base.deg[i] for i in w) for (w, p) in labels]
    pars = [sum(base.par[i] for i in w) % 2 for (w, p) in labels]

    def word_par(w):
        return [base.par[i] for i in w]

    def mul_words(w1, w2):
        """Slotwise product with the supertensor interleave sign."""
        sign = 0
        for k in range(n):
            if base.par[w2[k]]:
                sign += sum(base.par[w1[l]] for l in range(k + 1, n))
        coeff = Fraction(-1 if sign % 2 else 1)
        out = []
        for a, b in zip(w1, w2):
            r = base.mul_basis(a, b)
            if r is None:
                return None
            c, k = r
            coeff *= c
            out.append(k)
        return coeff, tuple(out)

    def mul_basis(i, j):
        (w1, p1), (w2, p2) = labels[i], labels[j]
        s, w2p = permute_word(p1, w2, word_par(w2))
        r = mul_words(w1, w2p)
        if r is None:
            return None
        c, w = r
        return (Fraction(s) * c, index[(w, perm_mul(p1, p2))])

    ident = perm_identity(n)
    unit_words = _unit_words(base, n)
    unit = [index[(w, ident)] for w in unit_words]

    gens = []
    # base generators in the first slot, padded by unit words elsewhere
    for gname, g in base.generators():
        elt = {}
        for i0, c in g.items():
            for w in _unit_words(base, n - 1):
                elt[index[((i0,) + w, ident)]] = c
        gens.append((("slot1", gname), elt))
    for k in range(n - 1):
        sk = list(range(n))
        sk[k], sk[k + 1] = sk[k + 1], sk[k]
        elt = {index[(w, tuple(sk))]: F1 for w in unit_words}
        gens.append((("s", k), elt))

    alg = SuperAlgebra(f"{base.name}^[{n}]", labels, degs, pars, mul_basis, unit, gens)
    alg.base = base
    alg.n = n
    alg.kind = "wreath"
    return alg


def _unit_words(base, n):
    """Words spanning the unit of base^{tensor n} (all choices of local units)."""
    words = [()]
    unit_idxs = sorted(base.unit)
    for _ in range(n):
        words = [w + (i,) for w in words for i in unit_idxs]
    return words


def build_ground_field():
    alg = SuperAlgebra("k", ["1"], [0], [0], lambda i, j: (F1, 0), [0], [("1", {0: F1})])
    alg.kind = "ground"
    alg.n = 0
    return alg


def wreath_embed(big, small, offset):
    """Embedding small = base^[m] -> big = base^[n] into slots offset..offset+m-1.

    Returns a function on sparse elements.  Unused slots are padded with
    local units; permutations act trivially outside the image block.
    """
    if small.kind == "ground":
        def embed0(x):
            c = x.get(0)
            return {i: c for i in big.unit} if c else {}
        return embed0
    base, m, n = small.base, small.n, big.n
    assert base is big.base and offset + m <= n
    pad_left = _unit_words(base, offset)
    pad_right = _unit_words(base, n - offset - m)
    ident_n = list(range(n))

    def embed(x):
        out = {}
        for i, c in x.items():
            w, p = small.labels[i]
            pbig = list(ident_n)
            for k in range(m):
                pbig[offset + k] = p[k] + offset
            pbig = tuple(pbig)
            for wl in pad_left:
                for wr in pad_right:
                    out[big.index[(wl + w + wr, pbig)]] = c
        return out

    return embed


_ZIGZAG = {}
_WREATH = {}


def get_zigzag(graph):
    key = graph.key()
    if key not in _ZIGZAG:
        _ZIGZAG[key] = build_zigzag(graph)
    return _ZIGZAG[key]


def get_wreath(graph, n):
    key = (graph.key(), n)
    if key not in _WREATH:
        _WREATH[key] = build_wreath(get_zigzag(graph), n) if n else build_ground_field()
    return _WREATH[key]
