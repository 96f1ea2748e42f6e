"""Formal indecomposable 1-morphisms and their concrete realizations.

An atom label is a source weight n together with a word of symbols
("P", vertex, partition) / ("Q", vertex, partition), leftmost symbol
outermost.  Registry atoms are normal ordered: all P symbols before all
Q symbols, each block holding at most one partition per vertex, blocks
sorted by vertex id.  Arbitrary words can still be realized concretely.

Realizations: a P block is a left cut B(n') * eps of the big wreath
algebra, a Q block a right cut eps * B(n) (with one grading shift down
per Q box), and a PQ atom is their tensor over the valley algebra.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .bimod import (
    Bimodule,
    ZeroModule,
    bicut_module,
    cut_left_module,
    cut_right_module,
    direct_sum,
    graded_dimension,
    hom_generators,
    hom_space,
    materialize_hom,
    regular_bimodule,
    shift,
    tensor_over,
    verify_map,
)
from .linalg import Echelon, RatMatrix
from .superalg import get_wreath, wreath_embed
from .symgrp import partitions_of, perm_identity, young_idempotent

F1 = Fraction(1)


class AtomError(ValueError):
    pass


class InvalidWeightPath(AtomError):
    pass


class AtomNotIndecomposable(AtomError):
    pass


class UnregisteredSummand(AtomError):
    pass


# ------------------------------------------------------------------ labels

def P(v, lam=(1,)):
    lam = tuple(lam) if not isinstance(lam, int) else (lam,)
    return ("P", str(v), lam)


def Q(v, lam=(1,)):
    lam = tuple(lam) if not isinstance(lam, int) else (lam,)
    return ("Q", str(v), lam)


def boxes(sym):
    return sum(sym[2])


def word_weight_path(word, n):
    """Weights visited right-to-left, starting at the source weight n."""
    path = [n]
    for sym in reversed(word):
        path.append(path[-1] + (boxes(sym) if sym[0] == "P" else -boxes(sym)))
    return path


def q_box_count(word):
    return sum(boxes(s) for s in word if s[0] == "Q")


def normal_ordered(word):
    kinds = [s[0] for s in word]
    if "P" in kinds and "Q" in kinds and kinds.index("Q") < len(kinds) - 1 - kinds[::-1].index("P"):
        return False
    pblock = [s for s in word if s[0] == "P"]
    qblock = [s for s in word if s[0] == "Q"]
    for block in (pblock, qblock):
        verts = [s[1] for s in block]
        if verts != sorted(verts) or len(set(verts)) != len(verts):
            return False
    return True


def label_name(word, n):
    if not word:
        return f"1_{n}"
    parts = []
    for kind, v, lam in word:
        lam_s = "" if lam == (1,) else "^(" + ",".join(map(str, lam)) + ")"
        parts.append(f"{kind}{v}{lam_s}")
    return " ".join(parts) + f" 1_{n}"


# ------------------------------------------------------------ realization

def young_block_idempotent(W, blocks):
    """Product of Young idempotents e_{lam} acting on consecutive slot
    blocks of the wreath algebra W, as a sparse element of W."""
    n = W.n
    elt = dict(W.unit)
    offset = 0
    ident_words = [W.labels[i][0] for i in W.unit]
    for lam in blocks:
        d = sum(lam)
        if d >= 2:
            e = young_idempotent(lam)
            perm_elt = {}
            for p, c in e.terms.items():
                big = list(range(n))
                for k in range(d):
                    big[offset + k] = p[k] + offset
                big = tuple(big)
                for wrd in ident_words:
                    idx = W.index[(wrd, big)]
                    perm_elt[idx] = perm_elt.get(idx, 0) + c
            elt = W.mul(elt, perm_elt)
        offset += d
    return elt


def color_idempotent(W, colors):
    """(e_{c_0} x e_{c_1} x ... x 1 x 1, id) summed over unit paddings."""
    base = W.base
    ident = perm_identity(W.n)
    words = [()]
    for s in range(W.n):
        if s < len(colors):
            words = [w + (base.index[("e", colors[s])],) for w in words]
        else:
            words = [w + (i,) for w in words for i in sorted(base.unit)]
    return {W.index[(w, ident)]: F1 for w in words}


class AtomRegistry:
    """Realization cache, Hom tables and decomposition engine for a graph."""

    def __init__(self, graph, max_weight=4):
        self.graph = graph
        self.max_weight = max_weight
        self._realized = {}
        self._hom = {}
        self._homdim = {}
        self._pair_cache = {}
        self._certified = {}
        self._decomp_cache = {}
        self.rng = random.Random(20240229)

    # -- algebra helpers ---------------------------------------------------
    def wreath(self, n):
        return get_wreath(self.graph, n)

    def p_block_module(self, syms, valley):
        """cut of B(valley + boxes) for a P block (leftmost outermost)."""
        d = sum(boxes(s) for s in syms)
        top = valley + d
        W = self.wreath(top)
        small = self.wreath(valley)
        colors = []
        for _, v, lam in syms:
            colors.extend([v] * sum(lam))
        eps = self.wreath_idempotent(W, colors, [s[2] for s in syms])
        return cut_left_module(W, small, wreath_embed(W, small, d), eps, 0,
                               label_name(tuple(syms), valley) + "^P")

    def q_block_module(self, syms, n):
        """cut of B(n) for a Q block; rightmost symbol takes the first slots."""
        d = sum(boxes(s) for s in syms)
        valley = n - d
        W = self.wreath(n)
        small = self.wreath(valley)
        rev = list(reversed(syms))
        colors = []
        for _, v, lam in rev:
            colors.extend([v] * sum(lam))
        eps = self.wreath_idempotent(W, colors, [s[2] for s in rev])
        return cut_right_module(W, small, wreath_embed(W, small, d), eps, -d,
                                label_name(tuple(syms), n) + "^Q")

    def wreath_idempotent(self, W, colors, young_blocks):
        eps = color_idempotent(W, colors)
        y = young_block_idempotent(W, young_blocks)
        return W.mul(eps, y)

    def realize(self, word, n):
        """Concrete bimodule of a word of symbols at source weight n."""
        word = tuple(word)
        key = (word, n)
        if key in self._realized:
            return self._realized[key]
        M = self._realize_uncached(word, n)
        self._realized[key] = M
        return M

    def _realize_uncached(self, word, n):
        path = word_weight_path(word, n)
        if min(path) < 0:
            return ZeroModule(self.wreath(max(path[-1], 0)), self.wreath(n))
        if not word:
            return regular_bimodule(self.wreath(n))
        kinds = [s[0] for s in word]
        if all(k == "P" for k in kinds):
            return self.p_block_module(list(word), n)
        if all(k == "Q" for k in kinds):
            return self.q_block_module(list(word), n)
        if normal_ordered(word):
            psyms = [s for s in word if s[0] == "P"]
            qsyms = [s for s in word if s[0] == "Q"]
            valley = n - sum(boxes(s) for s in qsyms)
            Pm = self.p_block_module(psyms, valley)
            Qm = self.q_block_module(qsyms, n)
            return tensor_over(Pm, Qm, label_name(word, n))
        return self._compose_general(word, n)

    def _compose_general(self, word, n):
        """Right-to-left composition; adjacent (Q..)(P..) blocks fuse."""
        # segment into maximal alternating blocks of same kind
        segs = []
        for sym in word:
            if segs and segs[-1][0][0] == sym[0]:
                segs[-1].append(sym)
            else:
                segs.append([sym])
        # realize from the right
        cur = None
        cur_src = n
        for seg in reversed(segs):
            kind = seg[0][0]
            d = sum(boxes(s) for s in seg)
            if kind == "P":
                Mod = self.p_block_module(seg, cur_src)
                top = cur_src + d
            else:
                Mod = self.q_block_module(seg, cur_src)
                top = cur_src - d
            if cur is None:
                cur = Mod
            else:
                cur = self._compose_modules(Mod, cur)
            cur_src = top
        return cur

    def _compose_modules(self, S, M):
        """S then M ... composition S o M as bimodules: S tensor_{mid} M."""
        # fusion: S = eps * C (cut_right over ambient C = S.algR) and
        # M = C * eps' (cut_left with M.algL = C)
        from .bimod import SpanModule

        if (
            isinstance(S, SpanModule)
            and isinstance(M, SpanModule)
            and S.cyclic is not None
            and M.cyclic is not None
            and S.cyclic.shape == "cut_right"
            and M.cyclic.shape == "cut_left"
            and S.ambient is M.ambient
            and S.algR is S.ambient
            and M.algL is M.ambient
        ):
            epsL = S.lift(S.cyclic.gen)
            epsR = M.lift(M.cyclic.gen)
            return bicut_module(
                S.ambient, S.algL, M.algR, S.embL, M.embR, epsL, epsR,
                S.shift + M.shift, f"({S.name} * {M.name})"
            )
        return tensor_over(S, M)

    # -- Hom tables ---------------------------------------------------------
    def hom_basis(self, wordA, nA, wordB, nB, degree):
        """Bimodule maps realize(A) -> realize(B) of the given degree."""
        key = (tuple(wordA), nA, tuple(wordB), nB, degree)
        if key not in self._hom:
            A = self.realize(wordA, nA)
            Bm = self.realize(wordB, nB)
            if A.dim == 0 or Bm.dim == 0:
                self._hom[key] = []
            else:
                self._hom[key] = hom_space(A, Bm, degree)
        return self._hom[key]

    def hom_dim(self, wordA, nA, wordB, nB, degree):
        key = (tuple(wordA), nA, tuple(wordB), nB, degree)
        if key in self._hom:
            return len(self._hom[key])
        hit = self._homdim.get(key)
        if hit is None:
            A = self.realize(wordA, nA)
            Bm = self.realize(wordB, nB)
            if A.dim == 0 or Bm.dim == 0:
                hit = 0
            elif A.cyclic is not None:
                hit = len(hom_generators(A, Bm, degree)[0])
            else:
                hit = len(hom_space(A, Bm, degree))
            self._homdim[key] = hit
        return hit

    def certify_atom(self, word, n):
        """End in degree 0 must be 1-dimensional, none in negative degree."""
        key = (tuple(word), n)
        hit = self._certified.get(key)
        if hit is not None:
            if hit is not True:
                raise AtomNotIndecomposable(hit)
            return
        M = self.realize(word, n)
        if M.dim == 0:
            self._certified[key] = f"{label_name(word, n)} realizes to zero"
            raise AtomNotIndecomposable(self._certified[key])
        end0 = self.hom_basis(word, n, word, n, 0)
        if len(end0) != 1:
            self._certified[key] = f"End0({label_name(word, n)}) has dim {len(end0)}"
            raise AtomNotIndecomposable(self._certified[key])
        spread = max(M.deg) - min(M.deg)
        for d in range(-spread, 0):
            if self.hom_basis(word, n, word, n, d):
                self._certified[key] = f"{label_name(word, n)} has endomorphisms in degree {d}"
                raise AtomNotIndecomposable(self._certified[key])
        self._certified[key] = True

    # -- candidate enumeration ----------------------------------------------
    def candidate_labels(self, n_src, n_tgt, max_boxes=None):
        """Normal-ordered words from weight n_src to n_tgt."""
        if max_boxes is None:
            max_boxes = n_src + n_tgt
        verts = self.graph.vertices
        out = []
        for dq in range(0, n_src + 1):
            valley = n_src - dq
            dp = n_tgt - valley
            if dp < 0 or dp + dq > max_boxes:
                continue
            for pmap in self._vertex_partitions(verts, dp):
                psyms = tuple(P(v, lam) for v, lam in pmap)
                for qmap in self._vertex_partitions(verts, dq):
                    qsyms = tuple(Q(v, lam) for v, lam in qmap)
                    out.append(psyms + qsyms)
        return out

    def _vertex_partitions(self, verts, total):
        """Assignments vertex -> nonempty partition with given total size."""
        if total == 0:
            return [()]
        out = []
        for sizes in _compositions(total, len(verts)):
            choices = []
            for v, s in zip(verts, sizes):
                if s == 0:
                    choices.append([None])
                else:
                    choices.append([(v, lam) for lam in partitions_of(s)])
            for combo in itertools.product(*choices):
                out.append(tuple(c for c in combo if c))
        return out

    # -- decomposition -------------------------------------------------------
    def decompose(self, T, n_src, n_tgt, candidates=None, max_tries=24):
        """Split a concrete bimodule into registered atoms.

        Returns (terms, Phi, Phi_inv) where terms is a list of
        (word, shift) in order and Phi maps the direct sum of the shifted
        atom realizations isomorphically onto T.
        """
        if T.dim == 0:
            return [], RatMatrix(0, 0), RatMatrix(0, 0)
        gdim_T = graded_dimension(T).coeffs
        if candidates is None:
            candidates = self.candidate_labels(n_src, n_tgt)
        # gather usable (word, shift) pairs and their hom solutions into T
        usable = []
        for word in candidates:
            M = self.realize(word, n_src)
            if M.dim == 0 or M.dim > T.dim:
                continue
            lo, hi = min(M.deg), max(M.deg)
            for s in range(min(gdim_T) - lo, max(gdim_T) - hi + 1):
                xs, p = hom_generators(M, T, s)
                if xs:
                    usable.append((word, s, M, xs, p))
        if not usable:
            raise UnregisteredSummand(f"no candidate atoms map into {T.name}")
        # multiplicities from the linear system h = H m
        k = len(usable)
        H = [[0] * k for _ in range(k)]
        h = [len(xs) for (_, _, _, xs, _) in usable]
        for a, (wa, sa, Ma, _, _) in enumerate(usable):
            for b, (wb, sb, Mb, _, _) in enumerate(usable):
                H[a][b] = self.hom_dim(wa, n_src, wb, n_src, sa - sb)
        mat = RatMatrix.from_dense([[Fraction(x) for x in row] for row in H])
        try:
            minv = mat.inverse()
        except ZeroDivisionError:
            raise UnregisteredSummand("atom Hom matrix singular; registry incomplete")
        mvec = minv.apply({i: Fraction(c) for i, c in enumerate(h) if c})
        mult = [int(mvec.get(i, 0)) for i in range(k)]
        for i in range(k):
            if mvec.get(i, Fraction(0)) != mult[i] or mult[i] < 0:
                raise UnregisteredSummand(f"non-integral multiplicity {mvec.get(i)} for "
                                          f"{label_name(usable[i][0], n_src)}")
        total = sum(m * usable[i][2].dim for i, m in enumerate(mult))
        if total != T.dim:
            raise UnregisteredSummand(f"multiplicities cover dim {total} != {T.dim}")
        # assemble invertible Phi from random combinations, materializing
        # only the chosen combinations
        terms = []
        for i, m in enumerate(mult):
            terms.extend([usable[i]] * m)
        for attempt in range(max_tries):
            cols_blocks = []
            for (word, s, M, xs, p) in terms:
                x = {}
                for xv in xs:
                    c = self.rng.randint(-4, 4)
                    if c:
                        for kk, vv in xv.items():
                            x[kk] = x.get(kk, 0) + c * vv
                x = {kk: vv for kk, vv in x.items() if vv}
                cols_blocks.append(materialize_hom(M, T, x, p))
            Phi = _hstack(T.dim, cols_blocks)
            inv = _block_inverse_by_degree(Phi, T, [(w, s, M) for (w, s, M, _, _) in terms])
            if inv is not None:
                out_terms = [(w, s) for (w, s, M, _, _) in terms]
                return out_terms, Phi, inv
        raise UnregisteredSummand(f"could not certify decomposition of {T.name}")


def _hstack(nrows, blocks):
    rows = {}
    off = 0
    for Bk in blocks:
        for r, row in Bk.rows.items():
            dst = rows.setdefault(r, {})
            for c, v in row.items():
                dst[off + c] = v
        off += Bk.ncols
    return RatMatrix(nrows, off, rows)


def _block_inverse_by_degree(Phi, T, terms):
    """Invert Phi: (+) shifted atoms -> T using degree blocks; None if singular."""
    col_deg = []
    for (w, s, M) in terms:
        col_deg.extend(d + s for d in M.deg)
    if len(col_deg) != Phi.ncols:
        return None
    by_deg = {}
    for c, d in enumerate(col_deg):
        by_deg.setdefault(d, []).append(c)
    row_by_deg = {}
    for r, d in enumerate(T.deg):
        row_by_deg.setdefault(d, []).append(r)
    if {d: len(v) for d, v in by_deg.items()} != {d: len(v) for d, v in row_by_deg.items()}:
        return None
    inv_rows = {}
    for d, cols in by_deg.items():
        rows_d = row_by_deg[d]
        sub = RatMatrix(len(rows_d), len(cols),
                        {ri: {ci: Phi.entry(r, c) for ci, c in enumerate(cols) if Phi.entry(r, c)}
                         for ri, r in enumerate(rows_d)})
        try:
            sinv = sub.inverse()
        except ZeroDivisionError:
            return None
        for ri, row in sinv.rows.items():
            inv_rows[cols[ri]] = {rows_d[ci]: v for ci, v in row.items()}
    return RatMatrix(Phi.ncols, Phi.nrows, inv_rows)


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# ------------------------------------------------------- idempotent splitting

def split_idempotent(M, E):
    """Image of an exact idempotent endomorphism as a SubModule, with
    inclusion and projection maps."""
    from .bimod import SubModule

    assert (E @ E) == E, "not an idempotent"
    span = [dict(col) for col in E.columns().values()]
    img = SubModule(M, span, f"im({M.name})")
    incl_cols = {}
    for i in range(img.dim):
        for r, c in img.lift({i: F1}).items():
            incl_cols.setdefault(r, {})[i] = c
    incl = RatMatrix(M.dim, img.dim, incl_cols)
    proj_cols = {}
    for j in range(M.dim):
        w = img.express(E.apply({j: F1}))
        for r, c in w.items():
            proj_cols.setdefault(r, {})[j] = c
    proj = RatMatrix(img.dim, M.dim, proj_cols)
    assert (proj @ incl) == RatMatrix.identity(img.dim)
    return img, incl, proj
