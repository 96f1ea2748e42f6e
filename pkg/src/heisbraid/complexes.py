"""Bounded cochain complexes of shifted word-modules with exact differentials.

A summand is a word label plus a grading shift (or an anonymous concrete
module); differentials are stored as exact rational block matrices
between the unshifted realizations.  Gaussian elimination, minimal
models, isomorphism testing and homotopy solving all run over these
blocks.
"""

from __future__ import annotations

from fractions import Fraction

from .atoms import label_name
from .bimod import (
    graded_dimension,
    hom_space,
    map_parity,
    shift as shift_module,
    tensor_map_left,
    tensor_map_right,
    tensor_over,
)
from .linalg import RatMatrix, nullspace

F1 = Fraction(1)


class ComplexError(ValueError):
    pass


class DifferentialNotSquareZero(ComplexError):
    pass


class Summand:
    """One direct summand of a term: a word label with a shift, realized
    by the registry, or an anonymous concrete module."""

    __slots__ = ("word", "shf", "module")

    def __init__(self, word, shf, module):
        self.word = word
        self.shf = shf
        self.module = module

    def key(self):
        return (self.word, self.shf)

    def name(self, n):
        if self.word is None:
            return f"[{self.module.name}]"
        nm = label_name(self.word, n)
        return nm if self.shf == 0 else f"{nm}<{self.shf}>"


class Complex:
    """terms: {cohomological degree: [Summand]}; diffs: {k: RatMatrix}."""

    def __init__(self, registry, n_src, terms, diffs, check=True):
        self.registry = registry
        self.n_src = n_src
        self.terms = {k: list(v) for k, v in terms.items() if v}
        self.diffs = dict(diffs)
        self._prune()
        if check:
            bad = self.d_squared_witness()
            if bad is not None:
                raise DifferentialNotSquareZero(f"d^2 != 0 at degree {bad}")

    # -- structure -----------------------------------------------------------
    def summand(self, registry_word, shf):
        M = self.registry.realize(registry_word, self.n_src)
        return Summand(registry_word, shf, M)

    def degrees(self):
        return sorted(self.terms)

    def dims(self, k):
        return [s.module.dim for s in self.terms.get(k, [])]

    def offsets(self, k):
        offs, t = [], 0
        for s in self.terms.get(k, []):
            offs.append(t)
            t += s.module.dim
        return offs, t

    def total_dim(self, k):
        return sum(self.dims(k))

    def diff(self, k):
        d = self.diffs.get(k)
        if d is None:
            _, src = self.offsets(k)
            _, tgt = self.offsets(k + 1)
            d = RatMatrix(tgt, src)
        return d

    def block(self, k, i, j):
        """Block of d_k from summand i at degree k to summand j at k+1."""
        offs_s, _ = self.offsets(k)
        offs_t, _ = self.offsets(k + 1)
        src = self.terms[k][i].module
        tgt = self.terms[k + 1][j].module
        d = self.diff(k)
        out = RatMatrix(tgt.dim, src.dim)
        for r in range(tgt.dim):
            row = d.rows.get(offs_t[j] + r)
            if row:
                for c in range(src.dim):
                    v = row.get(offs_s[i] + c)
                    if v:
                        out.set_entry(r, c, v)
        return out

    def _prune(self):
        """Drop zero summands and adjust the differential matrices."""
        for k in list(self.terms):
            keep = [i for i, s in enumerate(self.terms[k]) if s.module.dim > 0]
            if len(keep) != len(self.terms[k]):
                self._select(k, keep)
            if not self.terms.get(k):
                self.terms.pop(k, None)
        for k in list(self.diffs):
            if k not in self.terms or (k + 1) not in self.terms:
                self.diffs.pop(k, None)

    def _select(self, k, keep):
        """Restrict degree k to the listed summand indices."""
        old = self.terms[k]
        offs, _ = self.offsets(k)
        sel = []
        for i in keep:
            sel.extend(range(offs[i], offs[i] + old[i].module.dim))
        sel_index = {o: n for n, o in enumerate(sel)}
        self.terms[k] = [old[i] for i in keep]
        din = self.diffs.get(k - 1)
        if din is not None:
            rows = {}
            for r, row in din.rows.items():
                if r in sel_index:
                    rows[sel_index[r]] = dict(row)
            self.diffs[k - 1] = RatMatrix(len(sel), din.ncols, rows)
        dout = self.diffs.get(k)
        if dout is not None:
            rows = {}
            for r, row in dout.rows.items():
                nr = {sel_index[c]: v for c, v in row.items() if c in sel_index}
                if nr:
                    rows[r] = nr
            self.diffs[k] = RatMatrix(dout.nrows, len(sel), rows)

    def d_squared_witness(self):
        for k in self.degrees():
            if (k + 1) in self.terms and (k + 2) in self.terms:
                if not (self.diff(k + 1) @ self.diff(k)).is_zero():
                    return k
        return None

    def graded_euler_dims(self):
        """Alternating sum of graded dimensions (a quick invariant)."""
        from .laurent import LaurentPoly

        out = LaurentPoly.zero()
        for k, summands in self.terms.items():
            sgn = -1 if k % 2 else 1
            for s in summands:
                out = out + graded_dimension(s.module).shift(s.shf) * sgn
        return out

    def describe(self):
        lines = []
        for k in self.degrees():
            names = " + ".join(s.name(self.n_src) for s in self.terms[k])
            lines.append(f"  [{k}] {names}")
        return "\n".join(lines) or "  (zero complex)"

    def copy(self):
        return Complex(self.registry, self.n_src, {k: list(v) for k, v in self.terms.items()},
                       dict(self.diffs), check=False)

    def __repr__(self):
        return f"<Complex n={self.n_src}\n{self.describe()}\n>"


def make_complex(registry, n_src, term_words, diff_blocks):
    """Build and validate a complex from words and block dictionaries.

    term_words: {k: [(word, shift)]};
    diff_blocks: {(k, i, j): RatMatrix} between the unshifted realizations.
    """
    terms = {}
    for k, lst in term_words.items():
        terms[k] = [Summand(w, s, registry.realize(w, n_src)) for (w, s) in lst]
    diffs = {}
    cx = Complex(registry, n_src, terms, {}, check=False)
    for (k, i, j), blk in diff_blocks.items():
        offs_s, src = cx.offsets(k)
        offs_t, tgt = cx.offsets(k + 1)
        d = diffs.setdefault(k, RatMatrix(tgt, src))
        for r, row in blk.rows.items():
            for c, v in row.items():
                d.set_entry(offs_t[j] + r, offs_s[i] + c, v)
    return Complex(registry, n_src, cx.terms, diffs)


def one_complex(registry, n):
    """The identity complex: 1_n in degree zero."""
    return Complex(registry, n, {0: [Summand((), 0, registry.realize((), n))]}, {})


# ------------------------------------------------------------- composition

def compose_complexes(C, D, decompose=True, check=True):
    """Total complex of C after D (atom words concatenate).

    The differential is d(x (x) y) = (-1)^{hom deg of y} dC x (x) y
    + x (x) dD y.  Putting the homological Koszul sign on the left-hand
    blocks keeps every entry well defined on the balanced tensor product
    (an elementwise sign through the left factor would depend on the
    chosen representatives).  Pairwise tensors are split into registered
    atoms when `decompose` is set.
    """
    reg = C.registry
    if reg is not D.registry:
        raise ComplexError("mixed registries")
    n_src = D.n_src
    # pair bookkeeping: (kc, kd, ic, id) -> (new degree, summand slot range)
    pieces = {}
    new_terms = {}
    n_tgt = _target_weight(C)
    for kc in C.degrees():
        for kd in D.degrees():
            k = kc + kd
            for ic, sc in enumerate(C.terms[kc]):
                for jd, sd in enumerate(D.terms[kd]):
                    raw_terms, Phi, Phinv, T = _pair_split(
                        reg, C, D, sc, sd, n_src, n_tgt, decompose)
                    if T.dim == 0:
                        pieces[(kc, kd, ic, jd)] = (k, [], None, None, T)
                        continue
                    if decompose:
                        summands = [Summand(w, s + sc.shf + sd.shf, reg.realize(w, n_src))
                                    for (w, s) in raw_terms]
                    else:
                        summands = [Summand(None, 0, T)]
                    slot0 = len(new_terms.setdefault(k, []))
                    new_terms[k].extend(summands)
                    pieces[(kc, kd, ic, jd)] = (k, list(range(slot0, slot0 + len(summands))), Phi, Phinv, T)
    cx = Complex(reg, n_src, new_terms, {}, check=False)
    # assemble differentials
    diffs = {}
    for (kc, kd, ic, jd), (k, slots, Phi, Phinv, T) in pieces.items():
        if not slots:
            continue
        # C-part: (ic -> ic') (x) id
        if (kc + 1) in C.terms:
            for ic2 in range(len(C.terms[kc + 1])):
                blk = C.block(kc, ic, ic2)
                if blk.is_zero():
                    continue
                tgt_piece = pieces[(kc + 1, kd, ic2, jd)]
                if not tgt_piece[1]:
                    continue
                Tnew = tgt_piece[4]
                pf = map_parity(C.terms[kc][ic].module, C.terms[kc + 1][ic2].module, blk)
                big = tensor_map_left(T, Tnew, blk, pf)
                if kd % 2:
                    big = big.scale(-1)
                _add_piece_block(cx, diffs, k, slots, tgt_piece, big, Phi, T)
        # D-part: id (x) (jd -> jd'), Koszul sign through the left factor
        if (kd + 1) in D.terms:
            for jd2 in range(len(D.terms[kd + 1])):
                blk = D.block(kd, jd, jd2)
                if blk.is_zero():
                    continue
                tgt_piece = pieces[(kc, kd + 1, ic, jd2)]
                if not tgt_piece[1]:
                    continue
                Tnew = tgt_piece[4]
                big = tensor_map_right(T, Tnew, blk)
                _add_piece_block(cx, diffs, k, slots, tgt_piece, big, Phi, T)
    out = Complex(reg, n_src, cx.terms, diffs, check=False)
    if check:
        bad = out.d_squared_witness()
        if bad is not None:
            raise DifferentialNotSquareZero(f"composite d^2 != 0 at degree {bad}")
    return out


def _pair_split(reg, C, D, sc, sd, n_src, n_tgt, decompose):
    """Tensor of a pair of summands and (cached) atom decomposition.

    Works with the unshifted realizations; grading shifts only move the
    labels, not the matrices, so pairs are cached by their words.
    """
    if decompose and sc.word is not None and sd.word is not None:
        key = (sc.word, C.n_src, sd.word, n_src)
        hit = reg._pair_cache.get(key)
        if hit is None:
            T = tensor_over(reg.realize(sc.word, C.n_src), reg.realize(sd.word, n_src))
            if T.dim == 0:
                hit = ([], None, None, T)
            else:
                raw_terms, Phi, Phinv = reg.decompose(T, n_src, n_tgt)
                hit = (raw_terms, Phi, Phinv, T)
            reg._pair_cache[key] = hit
        return hit
    T = tensor_over(shift_module(sc.module, sc.shf), shift_module(sd.module, sd.shf))
    if T.dim == 0:
        return [], None, None, T
    if decompose:
        raw_terms, Phi, Phinv = reg.decompose(T, n_src, n_tgt)
        # labels from the shifted tensor directly: report with shift 0 offset
        return [(w, s - sc.shf - sd.shf) for (w, s) in raw_terms], Phi, Phinv, T
    return None, RatMatrix.identity(T.dim), RatMatrix.identity(T.dim), T


def formalize(C):
    """Replace anonymous summands by their atom decompositions."""
    reg = C.registry
    n_src = C.n_src
    n_tgt = _target_weight(C)
    new_terms = {}
    trans = {}  # degree -> block-diagonal change of basis (old <- new)
    for k in C.degrees():
        summands = []
        blocks = []
        for s in C.terms[k]:
            if s.word is not None:
                summands.append(s)
                blocks.append((RatMatrix.identity(s.module.dim),
                               RatMatrix.identity(s.module.dim)))
            else:
                raw_terms, Phi, Phinv = reg.decompose(s.module, n_src, n_tgt)
                summands.extend(Summand(w, sh, reg.realize(w, n_src)) for (w, sh) in raw_terms)
                blocks.append((Phi, Phinv))
        new_terms[k] = summands
        trans[k] = blocks
    diffs = {}
    for k in C.degrees():
        if (k + 1) not in C.terms:
            continue
        Phi_k = _blockdiag([b[0] for b in trans[k]])
        Phinv_k1 = _blockdiag([b[1] for b in trans[k + 1]])
        diffs[k] = Phinv_k1 @ C.diff(k) @ Phi_k
    return Complex(reg, n_src, new_terms, diffs)


def _blockdiag(blocks):
    nr = sum(b.nrows for b in blocks)
    nc = sum(b.ncols for b in blocks)
    out = RatMatrix(nr, nc)
    r0 = c0 = 0
    for b in blocks:
        for r, row in b.rows.items():
            for c, v in row.items():
                out.set_entry(r0 + r, c0 + c, v)
        r0 += b.nrows
        c0 += b.ncols
    return out


def _target_weight(C):
    for k in C.degrees():
        for s in C.terms[k]:
            if s.word is not None:
                from .atoms import word_weight_path

                return word_weight_path(s.word, C.n_src)[-1]
            if s.module.dim:
                alg = s.module.algL
                return getattr(alg, "n", 0)
    return C.n_src


def _add_piece_block(cx, diffs, k, slots, tgt_piece, big, Phi, T):
    k2, slots2, Phi2, Phinv2, T2 = tgt_piece
    mat = Phinv2 @ big @ Phi
    offs_s, src_tot = cx.offsets(k)
    offs_t, tgt_tot = cx.offsets(k + 1)
    base_s = offs_s[slots[0]]
    base_t = offs_t[slots2[0]]
    d = diffs.setdefault(k, RatMatrix(tgt_tot, src_tot))
    for r, row in mat.rows.items():
        for c, v in row.items():
            d.set_entry(base_t + r, base_s + c, d.entry(base_t + r, base_s + c) + v)


# ------------------------------------------------- elimination & minimality

def eliminable_pairs(C):
    """(k, i, j) whose summands share a word and have an invertible block.

    Grading shifts may differ: composites routinely cancel a copy of an
    atom against a shifted copy through a degree-raising differential.
    """
    out = []
    for k in C.degrees():
        if (k + 1) not in C.terms:
            continue
        for i, si in enumerate(C.terms[k]):
            for j, sj in enumerate(C.terms[k + 1]):
                if si.word is None or si.word != sj.word:
                    continue
                if si.module.dim != sj.module.dim:
                    continue
                blk = C.block(k, i, j)
                if not blk.is_zero() and blk.is_invertible():
                    out.append((k, i, j))
    return out


def gaussian_eliminate(C, k, i, j, with_maps=False):
    """Remove summand i at degree k against summand j at degree k+1.

    The block D between them must be invertible; the replacement
    differential is A - B D^{-1} C as in the cancellation rule.  With
    `with_maps`, also return (proj, incl, hty): chain maps old -> new and
    new -> old and the homotopy with incl @ proj = id - d hty - hty d.
    """
    blkD = C.block(k, i, j)
    if not blkD.is_invertible():
        raise ComplexError("EntryNotInvertible")
    Dinv = blkD.inverse()
    terms = {kk: list(v) for kk, v in C.terms.items()}
    offs_sk, tot_k = C.offsets(k)
    offs_tk, tot_k1 = C.offsets(k + 1)
    mod_i = C.terms[k][i].module
    mod_j = C.terms[k + 1][j].module
    rows_i = set(range(offs_sk[i], offs_sk[i] + mod_i.dim))
    rows_j = set(range(offs_tk[j], offs_tk[j] + mod_j.dim))

    keep_k = [x for x in range(tot_k) if x not in rows_i]
    keep_k1 = [x for x in range(tot_k1) if x not in rows_j]
    idx_k = {o: n for n, o in enumerate(keep_k)}
    idx_k1 = {o: n for n, o in enumerate(keep_k1)}

    d_k = C.diff(k)
    # blocks of d_k with respect to the split (rest + i) -> (rest + j)
    A = _submatrix(d_k, keep_k1, keep_k)
    Bm = _submatrix(d_k, keep_k1, sorted(rows_i))
    Cm = _submatrix(d_k, sorted(rows_j), keep_k)
    newd_k = A - (Bm @ Dinv @ Cm)

    diffs = dict(C.diffs)
    diffs[k] = newd_k
    if (k - 1) in C.diffs:
        diffs[k - 1] = _submatrix(C.diffs[k - 1], keep_k, range(C.diffs[k - 1].ncols))
    if (k + 1) in C.diffs:
        diffs[k + 1] = _submatrix(C.diffs[k + 1], range(C.diffs[k + 1].nrows), keep_k1)

    terms[k] = [s for x, s in enumerate(terms[k]) if x != i]
    terms[k + 1] = [s for x, s in enumerate(terms[k + 1]) if x != j]
    out = Complex(C.registry, C.n_src, terms, diffs, check=False)

    if not with_maps:
        return out

    # projection old -> new: identity away from the pair; on degree k the
    # i-part maps by 0, on k+1 the kept part corrects through -B D^{-1}
    proj = {}
    incl = {}
    hty = {}
    for kk in C.degrees():
        _, tot = C.offsets(kk)
        _, tot_new = out.offsets(kk)
        if kk == k:
            P = RatMatrix(tot_new, tot, {n: {o: F1} for n, o in [(idx_k[o], o) for o in keep_k]})
            I = RatMatrix(tot, tot_new)
            for o in keep_k:
                I.set_entry(o, idx_k[o], F1)
            corr = (Dinv @ Cm).scale(-1)  # rows_i x keep_k
            for r, row in corr.rows.items():
                for c, v in row.items():
                    I.set_entry(sorted(rows_i)[r], c, v)
            proj[kk], incl[kk] = P, I
        elif kk == k + 1:
            P = RatMatrix(tot_new, tot)
            for o in keep_k1:
                P.set_entry(idx_k1[o], o, F1)
            corr = (Bm @ Dinv).scale(-1)  # keep_k1 x rows_j
            for r, row in corr.rows.items():
                for c, v in row.items():
                    P.set_entry(r, sorted(rows_j)[c], v)
            I = RatMatrix(tot, tot_new)
            for o in keep_k1:
                I.set_entry(o, idx_k1[o], F1)
            proj[kk], incl[kk] = P, I
        else:
            _, tot2 = out.offsets(kk)
            E = RatMatrix.identity(tot)
            proj[kk], incl[kk] = E, E
        # homotopy: only component (k+1) -> (k): D^{-1} on the (j, i) block
    _, totk1 = C.offsets(k + 1)
    _, totk = C.offsets(k)
    H = RatMatrix(totk, totk1)
    ris, rjs = sorted(rows_i), sorted(rows_j)
    for r, row in Dinv.rows.items():
        for c, v in row.items():
            H.set_entry(ris[r], rjs[c], v)
    hty[k + 1] = H
    return out, proj, incl, hty


def _submatrix(M, rows, cols):
    rows = list(rows)
    cols = list(cols)
    ri = {o: n for n, o in enumerate(rows)}
    ci = {o: n for n, o in enumerate(cols)}
    out = RatMatrix(len(rows), len(cols))
    for r, row in M.rows.items():
        if r in ri:
            for c, v in row.items():
                if c in ci:
                    out.set_entry(ri[r], ci[c], v)
    return out


def minimize(C, order=None):
    """Repeated Gaussian elimination until no invertible same-label block
    remains.  `order` permutes the candidate list for confluence tests."""
    cur = C
    while True:
        cands = eliminable_pairs(cur)
        if not cands:
            return cur
        if order is not None:
            cands = order(cands)
        k, i, j = cands[0]
        cur = gaussian_eliminate(cur, k, i, j)


# ---------------------------------------------------------- chain map tools

def chain_map_ok(C, D, F):
    """F: {k: matrix realized(C,k) -> realized(D,k)} commutes with d."""
    for k in set(C.degrees()) | set(D.degrees()):
        dC = C.diff(k) if k in C.terms else None
        lhs = None
        if (k + 1) in D.terms and k in C.terms:
            Fk1 = F.get(k + 1, RatMatrix(D.total_dim(k + 1), C.total_dim(k + 1)))
            lhs = Fk1 @ C.diff(k)
            rhs = D.diff(k) @ F.get(k, RatMatrix(D.total_dim(k), C.total_dim(k)))
            if lhs != rhs:
                return False
    return True


def solve_chain_maps(C, D, degree0_only=True, hom_shift=0):
    """Basis of chain maps C -> D (label-degree zero entries).

    Entries from (word_a, s_a) to (word_b, s_b) are drawn from the Hom
    space of raw degree s_a - s_b + hom_shift.
    """
    reg = C.registry
    unknowns = []  # (k, ia, ib, matrix)
    for k in sorted(set(C.degrees()) & set(D.degrees())):
        for ia, sa in enumerate(C.terms[k]):
            for ib, sb in enumerate(D.terms[k]):
                delta = sa.shf - sb.shf + hom_shift
                basis = hom_space(sa.module, sb.module, delta)
                for f in basis:
                    unknowns.append((k, ia, ib, f))
    if not unknowns:
        return [], unknowns
    rows = {}
    # commuting equations: F_{k+1} dC_k - dD_k F_k = 0
    for u, (k, ia, ib, f) in enumerate(unknowns):
        offs_sC, _ = C.offsets(k)
        offs_sD, _ = D.offsets(k)
        big = _place_block(f, offs_sD[ib], offs_sC[ia], D.total_dim(k), C.total_dim(k))
        # as F_k: contributes -dD_k @ big at equation level k
        if (k + 1) in D.terms and k in C.terms:
            mat = (D.diff(k) @ big).scale(-1)
            _acc_rows(rows, ("eq", k), u, mat)
        # as the F at the target end of the equation one level down
        if (k - 1) in C.terms:
            mat = big @ C.diff(k - 1)
            _acc_rows(rows, ("eq", k - 1), u, mat)
    eqs = []
    for key, per_u in rows.items():
        cells = {}
        for u, mat in per_u.items():
            for r, row in mat.rows.items():
                for c, v in row.items():
                    cells.setdefault((r, c), {})[u] = cells.get((r, c), {}).get(u, 0) + v
        for cell, coeffs in cells.items():
            coeffs = {u: v for u, v in coeffs.items() if v}
            if coeffs:
                eqs.append(coeffs)
    sols = nullspace(eqs, len(unknowns))
    return sols, unknowns


def _acc_rows(rows, key, u, mat):
    rows.setdefault(key, {})[u] = mat


def _place_block(f, r0, c0, nrows, ncols):
    out = RatMatrix(nrows, ncols)
    for r, row in f.rows.items():
        for c, v in row.items():
            out.set_entry(r0 + r, c0 + c, v)
    return out


def assemble_chain_map(C, D, unknowns, coeffs):
    F = {}
    for u, (k, ia, ib, f) in enumerate(unknowns):
        c = coeffs.get(u)
        if not c:
            continue
        offs_sC, _ = C.offsets(k)
        offs_sD, _ = D.offsets(k)
        big = _place_block(f.scale(c), offs_sD[ib], offs_sC[ia], D.total_dim(k), C.total_dim(k))
        F[k] = F.get(k, RatMatrix(D.total_dim(k), C.total_dim(k))) + big
    for k in sorted(set(C.degrees()) & set(D.degrees())):
        F.setdefault(k, RatMatrix(D.total_dim(k), C.total_dim(k)))
    return F


def complexes_isomorphic(C, D, tries=40, rng=None):
    """Search for a degreewise isomorphism commuting with the differentials.

    Returns the chain iso {k: matrix} or None.  Labels must match as
    multisets in every degree for a positive answer.
    """
    import random

    rng = rng or random.Random(987)
    if C.degrees() != D.degrees():
        return None
    for k in C.degrees():
        a = sorted(s.key() for s in C.terms[k])
        b = sorted(s.key() for s in D.terms[k])
        if a != b or any(w is None for w, _ in a):
            return None
    sols, unknowns = solve_chain_maps(C, D)
    if not sols:
        return None
    for _ in range(tries):
        coeffs = {}
        for sol in sols:
            c = rng.randint(-3, 3)
            if c:
                for u, v in sol.items():
                    coeffs[u] = coeffs.get(u, 0) + c * v
        F = assemble_chain_map(C, D, unknowns, coeffs)
        if all(F[k].is_invertible() for k in F) and chain_map_ok(C, D, F):
            return F
    return None


def homotopy_between(C, D, F, G):
    """Solve F - G = dD h + h dC for h; return h or None."""
    reg = C.registry
    unknowns = []
    for k in C.degrees():
        if (k - 1) not in D.terms:
            continue
        for ia, sa in enumerate(C.terms[k]):
            for ib, sb in enumerate(D.terms[k - 1]):
                A, Bm = sa.module, sb.module
                if A.dim == 0 or Bm.dim == 0:
                    continue
                lo = min(Bm.deg) - max(A.deg)
                hi = max(Bm.deg) - min(A.deg)
                for delta in range(lo, hi + 1):
                    for f in hom_space(A, Bm, delta):
                        unknowns.append((k, ia, ib, f))
    target = {}
    for k in set(F) | set(G):
        target[k] = F.get(k, RatMatrix(D.total_dim(k), C.total_dim(k))) - G.get(
            k, RatMatrix(D.total_dim(k), C.total_dim(k)))
    eqs_cells = {}
    rhs_cells = {}
    for k, mat in target.items():
        for r, row in mat.rows.items():
            for c, v in row.items():
                rhs_cells[(k, r, c)] = v
    contribs = {}
    for u, (k, ia, ib, f) in enumerate(unknowns):
        offs_sC, _ = C.offsets(k)
        offs_sD, _ = D.offsets(k - 1)
        big = _place_block(f, offs_sD[ib], offs_sC[ia], D.total_dim(k - 1), C.total_dim(k))
        # dD_{k-1} @ h_k lands in equation degree k
        if (k - 1) in D.terms:
            mat = D.diff(k - 1) @ big
            for r, row in mat.rows.items():
                for c, v in row.items():
                    contribs.setdefault((k, r, c), {})[u] = contribs.get((k, r, c), {}).get(u, 0) + v
        # h_{k+1} @ dC_k lands in equation degree k as well (via u' at k+1)
        if (k - 1) in C.terms:
            mat = big @ C.diff(k - 1)
            for r, row in mat.rows.items():
                for c, v in row.items():
                    contribs.setdefault((k - 1, r, c), {})[u] = contribs.get((k - 1, r, c), {}).get(u, 0) + v
    # linear system contribs * h = rhs
    keys = sorted(set(contribs) | set(rhs_cells))
    rows = []
    rhs_vec = []
    for key in keys:
        rows.append(contribs.get(key, {}))
        rhs_vec.append(rhs_cells.get(key, Fraction(0)))
    from .linalg import solve

    sol = solve(rows, len(unknowns), rhs_vec)
    if sol is None:
        return None
    h = {}
    for u, c in sol.items():
        if not c:
            continue
        k, ia, ib, f = unknowns[u]
        offs_sC, _ = C.offsets(k)
        offs_sD, _ = D.offsets(k - 1)
        big = _place_block(f.scale(c), offs_sD[ib], offs_sC[ia], D.total_dim(k - 1), C.total_dim(k))
        h[k] = h.get(k, RatMatrix(D.total_dim(k - 1), C.total_dim(k))) + big
    return h
