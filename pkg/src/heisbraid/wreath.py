"""The wreath endofunctor on bimodules, maps and complexes.

M^[n] has basis (m_1 (x) ... (x) m_n, sigma); the symmetric group acts by
superpermutations in the total parity (inner plus homological), and the
differential of a wreathed complex acts slotwise with the Koszul sign
through the total parity of the slots it crosses.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .bimod import Bimodule
from .linalg import RatMatrix
from .superalg import get_wreath
from .symgrp import all_perms, perm_identity, perm_mul, permute_word, superperm_sign

F1 = Fraction(1)


class SlotCarrier:
    """Flattened basis of a bounded complex: (hom degree, summand, local).

    deg/par are the realized (shift-adjusted) degree and the inner parity;
    homdeg the cohomological degree.  Slot actions delegate to the
    summand modules; the differential matrix acts on carrier indices.
    """

    def __init__(self, cx):
        self.cx = cx
        self.entries = []
        for k in cx.degrees():
            for i, s in enumerate(cx.terms[k]):
                for loc in range(s.module.dim):
                    self.entries.append((k, i, loc))
        self.index = {e: x for x, e in enumerate(self.entries)}
        self.dim = len(self.entries)
        self.deg = []
        self.par = []
        self.homdeg = []
        for (k, i, loc) in self.entries:
            s = cx.terms[k][i]
            self.deg.append(s.module.deg[loc] + s.shf)
            self.par.append(s.module.par[loc])
            self.homdeg.append(k)

    def act(self, side, base_idx, x):
        """Base algebra element acting on carrier index x (sparse result)."""
        k, i, loc = self.entries[x]
        s = self.cx.terms[k][i]
        B1 = get_wreath(self.cx.registry.graph, 1)
        lifted = B1.index[((base_idx,), (0,))]
        if side == "L":
            res = s.module._actL_basis(lifted, loc)
        else:
            res = s.module._actR_basis(loc, lifted)
        return {self.index[(k, i, r)]: c for r, c in (res or {}).items()}

    def diff(self, x):
        """Differential applied to carrier index x (sparse result)."""
        k, i, loc = self.entries[x]
        cx = self.cx
        if (k + 1) not in cx.terms:
            return {}
        offs_s, _ = cx.offsets(k)
        offs_t, _ = cx.offsets(k + 1)
        d = cx.diff(k)
        col = offs_s[i] + loc
        out = {}
        for r, row in d.rows.items():
            v = row.get(col)
            if v:
                j = max(t for t in range(len(offs_t)) if offs_t[t] <= r)
                out[self.index[(k + 1, j, r - offs_t[j])]] = v
        return out


class WreathModule(Bimodule):
    """(total C)^{(x)n} x| S_n as a bimodule over the wreath algebras."""

    def __init__(self, carrier, n, algL, algR, name=""):
        self.carrier = carrier
        self.n = n
        words = [()]
        for _ in range(n):
            words = [w + (i,) for w in words for i in range(carrier.dim)]
        perms = all_perms(n)
        self.labels = [(w, p) for w in words for p in perms]
        self.lindex = {lab: i for i, lab in enumerate(self.labels)}
        deg = [sum(carrier.deg[i] for i in w) for (w, p) in self.labels]
        par = [sum(carrier.par[i] for i in w) % 2 for (w, p) in self.labels]
        super().__init__(algL, algR, deg, par, name or f"wreath^{n}")
        self.homdeg = [sum(carrier.homdeg[i] for i in w) for (w, p) in self.labels]

    def total_par(self, cidx):
        return (self.carrier.par[cidx] + self.carrier.homdeg[cidx]) % 2

    def word_total_pars(self, w):
        return [self.total_par(i) for i in w]

    def _act_word(self, aw, w, side):
        """Slotwise action with supertensor interleave signs.

        Returns sparse {word: coeff}.  For side L the algebra letters act
        from the left; interleave sign: a letter of the acting word
        crosses the slots of the module word before (L) / after (R) it.
        """
        carrier = self.carrier
        base = self.algL.base if side == "L" else self.algR.base
        sign = 0
        if side == "L":
            for k in range(self.n):
                if base.par[aw[k]]:
                    sign += sum(self.total_par(w[l]) for l in range(k))
        else:
            for k in range(self.n):
                if base.par[aw[k]]:
                    sign += sum(self.total_par(w[l]) for l in range(k + 1, self.n))
        out = {(): Fraction(-1 if sign % 2 else 1)}
        for k in range(self.n):
            nxt = {}
            res = carrier.act(side, aw[k], w[k])
            for wpre, c in out.items():
                for r, c2 in res.items():
                    nxt[wpre + (r,)] = nxt.get(wpre + (r,), 0) + c * c2
            out = nxt
            if not out:
                return {}
        return out

    def _actL_basis(self, aidx, midx):
        (aw, ap) = self.algL.labels[aidx]
        (w, p) = self.labels[midx]
        s1, wp = permute_word(ap, w, self.word_total_pars(w))
        res_words = self._act_word(aw, wp, "L")
        out = {}
        pnew = perm_mul(ap, p)
        for w2, c in res_words.items():
            out[self.lindex[(w2, pnew)]] = out.get(self.lindex[(w2, pnew)], 0) + c * s1
        return {k: v for k, v in out.items() if v}

    def _actR_basis(self, midx, bidx):
        (w, p) = self.labels[midx]
        (bw, bp) = self.algR.labels[bidx]
        base = self.algR.base
        s1, bwp = permute_word(p, bw, [base.par[i] for i in bw])
        res_words = self._act_word(bwp, w, "R")
        out = {}
        pnew = perm_mul(p, bp)
        for w2, c in res_words.items():
            out[self.lindex[(w2, pnew)]] = out.get(self.lindex[(w2, pnew)], 0) + c * s1
        return {k: v for k, v in out.items() if v}


def wreath_complex(cx, n):
    """The wreathed complex of a bounded complex of (B(1), B(1))-bimodules.

    Returns a Complex over the same registry at weight n whose terms are
    anonymous wreath modules graded by total homological degree, with the
    slotwise differential."""
    from .complexes import Complex, Summand

    reg = cx.registry
    graph = reg.graph
    algn = get_wreath(graph, n)
    carrier = SlotCarrier(cx)
    big = WreathModule(carrier, n, algn, algn, f"({cx.n_src}-cx)^[{n}]")

    # split by total homological degree
    by_deg = {}
    for idx, (w, p) in enumerate(big.labels):
        by_deg.setdefault(big.homdeg[idx], []).append(idx)
    subs = {}
    from .bimod import SubModule

    for k, idxs in sorted(by_deg.items()):
        span = [{i: F1} for i in idxs]
        subs[k] = SubModule(big, span, f"wreath-term[{k}]")
    terms = {k: [Summand(None, 0, subs[k])] for k in subs}

    diffs = {}
    for k in sorted(subs):
        if (k + 1) not in subs:
            continue
        D = RatMatrix(subs[k + 1].dim, subs[k].dim)
        for c in range(subs[k].dim):
            lift = subs[k].lift({c: F1})
            acc = {}
            for bigidx, coeff in lift.items():
                w, p = big.labels[bigidx]
                for j in range(n):
                    gamma = sum(big.total_par(w[l]) for l in range(j))
                    sgn = -1 if gamma % 2 else 1
                    for r, v in carrier.diff(w[j]).items():
                        w2 = w[:j] + (r,) + w[j + 1:]
                        key = big.lindex[(w2, p)]
                        acc[key] = acc.get(key, 0) + coeff * sgn * v
            img = subs[k + 1].express({kk: vv for kk, vv in acc.items() if vv})
            for r, v in img.items():
                D.set_entry(r, c, v)
        diffs[k] = D
    return Complex(reg, n, terms, diffs)


def wreath_bimodule(reg, M, n, algL, algR, name=""):
    """M^[n] for a plain bimodule M over the weight-one wreath algebras."""
    from .complexes import Complex, Summand

    cx = Complex(reg, getattr(M, "src_weight", 1),
                 {0: [Summand(None, 0, M)]}, {}, check=False)
    carrier = SlotCarrier(cx)
    return WreathModule(carrier, n, algL, algR, name or f"{M.name}^[{n}]")


def slotwise_map(Wsrc, Wtgt, mats):
    """Map (x)_j mats[j] between wreath modules over the same perm set.

    mats[j]: carrier matrix (tgt carrier x src carrier) with a declared
    total parity; Koszul sign: mats[j] crosses slots 0..j-1 of the source.
    """
    carrier_s = Wsrc.carrier
    parities = [m[1] for m in mats]
    cols = {}
    for cidx, (w, p) in enumerate(Wsrc.labels):
        acc = {(): F1}
        for j in range(Wsrc.n):
            mat, mpar = mats[j]
            gamma = 0
            if mpar % 2:
                gamma = sum(Wsrc.total_par(w[l]) for l in range(j))
            sgn = Fraction(-1 if gamma % 2 else 1)
            col = {r: row[w[j]] for r, row in mat.rows.items() if w[j] in row}
            nxt = {}
            for wpre, c in acc.items():
                for r, v in col.items():
                    nxt[wpre + (r,)] = nxt.get(wpre + (r,), 0) + c * v * sgn
            acc = nxt
            if not acc:
                break
        for w2, c in acc.items():
            if c:
                ridx = Wtgt.lindex[(w2, p)]
                cols.setdefault(ridx, {})[cidx] = c
    return RatMatrix(Wtgt.dim, Wsrc.dim, cols)


def wreath_map(Wsrc, Wtgt, f_mat, f_par=0):
    """(f (x) ... (x) f, 1) on wreath modules (not additive in f)."""
    return slotwise_map(Wsrc, Wtgt, [(f_mat, f_par)] * Wsrc.n)


def homotopy_transfer(Wsrc, Wtgt, f_mat, g_mat, h_mat, n):
    """h' = sum_{i+j=n-1} (f^i (x) h (x) g^j, 1) on wreath modules.

    With f - g = d h + h d on the slot complexes, the returned map
    satisfies f^[n] - g^[n] = d h' + h' d exactly (verified by callers).
    """
    total = RatMatrix(Wtgt.dim, Wsrc.dim)
    for i in range(n):
        mats = [(f_mat, 0)] * i + [(h_mat, 1)] + [(g_mat, 0)] * (n - 1 - i)
        total = total + slotwise_map(Wsrc, Wtgt, mats)
    return total


def sigma_complex_wreath(reg, i, n, sign):
    """Braid generator complex at weight n via wreathing the weight-one
    complex, with wreath terms split into registered atoms."""
    from .braid import sigma_complex
    from .complexes import formalize

    C1 = sigma_complex(reg, i, 1, sign, route="normalized")
    W = wreath_complex(C1, n)
    return formalize(W)
