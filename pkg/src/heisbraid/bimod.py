"""Graded super-bimodules over the based superalgebras, with exact Hom solving.

A Bimodule carries adjusted degrees (grading shifts baked in) and raw
parities.  Maps of raw-odd parity intertwine the left action on the nose
and the right action up to (-1)^{parity of the algebra element}; this is
the sign law of maps realized by right multiplication, and the global
verification suites certify it.
"""

from __future__ import annotations

from fractions import Fraction

from .laurent import LaurentPoly
from .linalg import Echelon, Quotient, RatMatrix, vec_add, vec_scale

F0 = Fraction(0)
F1 = Fraction(1)


class Bimodule:
    """Finite dimensional (algL, algR)-bimodule with explicit basis.

    deg/par are per-basis lists; actL_elt / actR_elt apply sparse algebra
    elements to sparse module vectors.  `cyclic` (optional) describes a
    bimodule generating vector and per-basis expressions used by the fast
    Hom solver.
    """

    _counter = [0]

    def __init__(self, algL, algR, deg, par, name=""):
        self.algL = algL
        self.algR = algR
        self.deg = list(deg)
        self.par = list(par)
        self.dim = len(self.deg)
        self.name = name or f"M{Bimodule._counter[0]}"
        Bimodule._counter[0] += 1
        self.cyclic = None
        self._gen_mats = {}

    # -- subclasses implement single-basis-element action ------------------
    def _actL_basis(self, aidx, midx):
        raise NotImplementedError

    def _actR_basis(self, midx, bidx):
        raise NotImplementedError

    def actL_elt(self, a, vec):
        out = {}
        for i, c in a.items():
            for m, x in vec.items():
                res = self._actL_basis(i, m)
                if res:
                    out = vec_add(out, res, c * x)
        return out

    def actR_elt(self, vec, b):
        out = {}
        for m, x in vec.items():
            for j, c in b.items():
                res = self._actR_basis(m, j)
                if res:
                    out = vec_add(out, res, c * x)
        return out

    def gen_matrix(self, side, gen_id, elt):
        """Cached matrix of a generator acting on the module."""
        key = (side, gen_id)
        mat = self._gen_mats.get(key)
        if mat is None:
            cols = {}
            for m in range(self.dim):
                v = {m: F1}
                w = self.actL_elt(elt, v) if side == "L" else self.actR_elt(v, elt)
                for r, c in w.items():
                    cols.setdefault(r, {})[m] = c
            mat = RatMatrix(self.dim, self.dim, cols)
            self._gen_mats[key] = mat
        return mat

    def left_generator_mats(self):
        return [(gid, elt, self.gen_matrix("L", gid, elt)) for gid, elt in self.algL.generators()]

    def right_generator_mats(self):
        return [(gid, elt, self.gen_matrix("R", gid, elt)) for gid, elt in self.algR.generators()]

    def degrees_used(self):
        return sorted(set(self.deg))

    def block(self, d):
        return [i for i in range(self.dim) if self.deg[i] == d]

    def __repr__(self):
        return f"<{self.name}: dim {self.dim} over ({self.algL.name}, {self.algR.name})>"


def graded_dimension(M):
    out = {}
    for d in M.deg:
        out[d] = out.get(d, 0) + 1
    return LaurentPoly(out)


class Cyclic:
    """Cyclic presentation of a bimodule used by the fast Hom solver.

    shape 'cut_left':  basis_i = a_i . gen        (a_i in algL)
    shape 'cut_right': basis_i = gen . b_i        (b_i in algR)
    shape 'pq':        basis_i = a_i . gen . b_i, with middle-compat data
    """

    def __init__(self, shape, gen, a_exprs=None, b_exprs=None, extra=None):
        self.shape = shape
        self.gen = gen
        self.a_exprs = a_exprs
        self.b_exprs = b_exprs
        self.extra = extra or {}


# ----------------------------------------------------------- span modules

class SpanModule(Bimodule):
    """Subspace of an ambient wreath algebra, closed under both actions.

    left/right actions go through embeddings embL/embR into the ambient
    algebra (identity embeddings are functions too).
    """

    def __init__(self, ambient, algL, algR, embL, embR, span_elts, shift=0, name=""):
        from .linalg import GradedEchelon

        ech = GradedEchelon(ambient.dim, ambient.deg)
        for v in span_elts:
            ech.add(v)
        pivots = ech.pivot_cols()
        rows = [dict(ech.rows[p]) for p in pivots]
        deg = [ambient.deg[p] + shift for p in pivots]
        par = [ambient.par[p] for p in pivots]
        super().__init__(algL, algR, deg, par, name)
        self.ambient = ambient
        self.embL = embL
        self.embR = embR
        self.shift = shift
        self._ech = ech
        self._pivot_index = {p: i for i, p in enumerate(pivots)}
        self.rows = rows

    def lift(self, vec):
        out = {}
        for i, c in vec.items():
            out = vec_add(out, self.rows[i], c)
        return out

    def express(self, amb_vec):
        coords = self._ech.express(amb_vec)
        assert coords is not None, "vector left the span"
        return {self._pivot_index[p]: c for p, c in coords.items()}

    def _actL_basis(self, aidx, midx):
        prod = self.ambient.mul(self.embL({aidx: F1}), self.rows[midx])
        return self.express(prod)

    def _actR_basis(self, midx, bidx):
        prod = self.ambient.mul(self.rows[midx], self.embR({bidx: F1}))
        return self.express(prod)

    def actL_elt(self, a, vec):
        prod = self.ambient.mul(self.embL(a), self.lift(vec))
        return self.express(prod)

    def actR_elt(self, vec, b):
        prod = self.ambient.mul(self.lift(vec), self.embR(b))
        return self.express(prod)


def identity_embed(x):
    return x


def cut_left_module(ambient, algR, embR, eps, shift=0, name=""):
    """ambient . eps as an (ambient, algR)-bimodule, cyclic on eps."""
    span = [ambient.mul({i: F1}, eps) for i in range(ambient.dim)]
    M = SpanModule(ambient, ambient, algR, identity_embed, embR, span, shift, name)
    gen = M.express(eps)
    a_exprs = [M.rows[i] for i in range(M.dim)]
    M.cyclic = Cyclic("cut_left", gen, a_exprs=a_exprs)
    return M


def cut_right_module(ambient, algL, embL, eps, shift=0, name=""):
    """eps . ambient as an (algL, ambient)-bimodule, cyclic on eps."""
    span = [ambient.mul(eps, {i: F1}) for i in range(ambient.dim)]
    M = SpanModule(ambient, algL, ambient, embL, identity_embed, span, shift, name)
    gen = M.express(eps)
    b_exprs = [M.rows[i] for i in range(M.dim)]
    M.cyclic = Cyclic("cut_right", gen, b_exprs=b_exprs)
    return M


def bicut_module(ambient, algL, algR, embL, embR, epsL, epsR, shift=0, name=""):
    """epsL . ambient . epsR with both actions through embeddings."""
    span = []
    for i in range(ambient.dim):
        v = ambient.mul(ambient.mul(epsL, {i: F1}), epsR)
        if v:
            span.append(v)
    return SpanModule(ambient, algL, algR, embL, embR, span, shift, name)


def regular_bimodule(ambient, name=""):
    """The algebra as a bimodule over itself (the identity 1-morphism)."""
    return cut_left_module(ambient, ambient, identity_embed, dict(ambient.unit), 0,
                           name or f"1[{ambient.name}]")


# ----------------------------------------------------------- tensor modules

class TensorModule(Bimodule):
    """M tensor_A N over A = M.algR = N.algL, with Koszul-free relations."""

    def __init__(self, M, N, name=""):
        assert M.algR is N.algL, "middle algebra mismatch"
        self.M = M
        self.N = N
        dimM, dimN = M.dim, N.dim
        self.pair_dim = dimM * dimN

        def pid(i, j):
            return i * dimN + j

        relations = []
        for gid, g in M.algR.generators():
            # (m.g) (x) n - m (x) (g.n)
            gR = M.gen_matrix("R", gid, g)
            gL = N.gen_matrix("L", gid, g)
            for i in range(dimM):
                mg = {r: row[i] for r, row in gR.rows.items() if i in row}
                for j in range(dimN):
                    gn = {r: row[j] for r, row in gL.rows.items() if j in row}
                    rel = {}
                    for r, c in mg.items():
                        rel[pid(r, j)] = rel.get(pid(r, j), F0) + c
                    for r, c in gn.items():
                        rel[pid(i, r)] = rel.get(pid(i, r), F0) - c
                    rel = {k: v for k, v in rel.items() if v}
                    if rel:
                        relations.append(rel)
        pair_degs = [M.deg[k // dimN] + N.deg[k % dimN] for k in range(self.pair_dim)]
        self.quot = Quotient(self.pair_dim, relations, degrees=pair_degs)
        deg, par = [], []
        for k in self.quot.reps:
            i, j = divmod(k, dimN)
            deg.append(M.deg[i] + N.deg[j])
            par.append((M.par[i] + N.par[j]) % 2)
        super().__init__(M.algL, N.algR, deg, par, name or f"({M.name}(x){N.name})")

        self._pid = pid
        cyc = None
        if M.cyclic and N.cyclic and M.cyclic.shape == "cut_left" and N.cyclic.shape == "cut_right":
            gen_pair = {}
            for i, c in M.cyclic.gen.items():
                for j, c2 in N.cyclic.gen.items():
                    gen_pair[pid(i, j)] = c * c2
            gen = self.quot.project(gen_pair)
            cyc = Cyclic("pq", gen)
            cyc.extra = {"M": M, "N": N}
        self.cyclic = cyc

    def project_pair(self, vec_pairs):
        return self.quot.project(vec_pairs)

    def rep_pairs(self, vec):
        """Representative in the pure-tensor pair basis."""
        return self.quot.section(vec)

    def pair_index(self, k):
        return divmod(k, self.N.dim)

    def _actL_basis(self, aidx, midx):
        return self.actL_elt({aidx: F1}, {midx: F1})

    def _actR_basis(self, midx, bidx):
        return self.actR_elt({midx: F1}, {bidx: F1})

    def actL_elt(self, a, vec):
        pairs = self.rep_pairs(vec)
        out = {}
        for k, c in pairs.items():
            i, j = self.pair_index(k)
            au = self.M.actL_elt(a, {i: F1})
            for r, c2 in au.items():
                out[self._pid(r, j)] = out.get(self._pid(r, j), F0) + c * c2
        return self.project_pair({k: v for k, v in out.items() if v})

    def actR_elt(self, vec, b):
        pairs = self.rep_pairs(vec)
        out = {}
        for k, c in pairs.items():
            i, j = self.pair_index(k)
            vb = self.N.actR_elt({j: F1}, b)
            for r, c2 in vb.items():
                out[self._pid(i, r)] = out.get(self._pid(i, r), F0) + c * c2
        return self.project_pair({k: v for k, v in out.items() if v})


def tensor_over(M, N, name=""):
    if M.algR is not N.algL:
        raise ValueError("MiddleAlgebraMismatch")
    return TensorModule(M, N, name)


def tensor_map_left(T, Tnew, f, f_parity=0):
    """f (x) id : T = M_src (x) N  ->  Tnew = M_tgt (x) N.

    An odd map crossing the right factor picks up (-1)^{parity of the
    right-hand element}; without this sign the map is not well defined on
    the balanced tensor product.
    """
    cols = {}
    for c in range(T.dim):
        pairs = T.rep_pairs({c: F1})
        acc = {}
        for k, x in pairs.items():
            i, j = T.pair_index(k)
            sign = -1 if (f_parity and T.N.par[j] % 2) else 1
            fi = {r: row[i] for r, row in f.rows.items() if i in row}
            for r, x2 in fi.items():
                key = r * Tnew.N.dim + j
                acc[key] = acc.get(key, F0) + x * x2 * sign
        out = Tnew.project_pair({k: v for k, v in acc.items() if v})
        for r, v in out.items():
            cols.setdefault(r, {})[c] = v
    return RatMatrix(Tnew.dim, T.dim, cols)


def tensor_map_right(T, Tnew, g):
    """id (x) g : T = M (x) N_src -> Tnew = M (x) N_tgt (no internal sign;
    Koszul signs of differentials are applied by the caller)."""
    cols = {}
    for c in range(T.dim):
        pairs = T.rep_pairs({c: F1})
        acc = {}
        for k, x in pairs.items():
            i, j = T.pair_index(k)
            gj = {r: row[j] for r, row in g.rows.items() if j in row}
            for r, x2 in gj.items():
                key = i * Tnew.N.dim + r
                acc[key] = acc.get(key, F0) + x * x2
        out = Tnew.project_pair({k: v for k, v in acc.items() if v})
        for r, v in out.items():
            cols.setdefault(r, {})[c] = v
    return RatMatrix(Tnew.dim, T.dim, cols)


# ------------------------------------------------------------- direct sums

class DirectSum(Bimodule):
    def __init__(self, summands, name=""):
        assert summands, "use zero_module for the empty sum"
        algL, algR = summands[0].algL, summands[0].algR
        for s in summands:
            assert s.algL is algL and s.algR is algR, "pair mismatch"
        deg, par = [], []
        self.offsets = []
        off = 0
        for s in summands:
            self.offsets.append(off)
            deg.extend(s.deg)
            par.extend(s.par)
            off += s.dim
        super().__init__(algL, algR, deg, par, name or "(+)".join(s.name for s in summands))
        self.summands = summands

    def locate(self, idx):
        for k in range(len(self.summands) - 1, -1, -1):
            if idx >= self.offsets[k]:
                return k, idx - self.offsets[k]
        raise IndexError

    def injection(self, k):
        s = self.summands[k]
        return RatMatrix(self.dim, s.dim, {self.offsets[k] + i: {i: F1} for i in range(s.dim)})

    def projection(self, k):
        s = self.summands[k]
        return RatMatrix(s.dim, self.dim, {i: {self.offsets[k] + i: F1} for i in range(s.dim)})

    def _actL_basis(self, aidx, midx):
        k, local = self.locate(midx)
        res = self.summands[k]._actL_basis(aidx, local)
        return {self.offsets[k] + r: c for r, c in res.items()} if res else {}

    def _actR_basis(self, midx, bidx):
        k, local = self.locate(midx)
        res = self.summands[k]._actR_basis(local, bidx)
        return {self.offsets[k] + r: c for r, c in res.items()} if res else {}


def direct_sum(summands, name=""):
    return DirectSum(summands, name)


class ZeroModule(Bimodule):
    def __init__(self, algL, algR):
        super().__init__(algL, algR, [], [], "0")

    def _actL_basis(self, aidx, midx):
        return {}

    def _actR_basis(self, midx, bidx):
        return {}


# ------------------------------------------------------------------ shifts

class ShiftedModule(Bimodule):
    """Same underlying actions, degrees moved by k (parity untouched: the
    parity field records the raw sign-parity of elements)."""

    def __init__(self, M, k):
        super().__init__(M.algL, M.algR, [d + k for d in M.deg], M.par,
                         f"{M.name}<{k}>")
        self.parent = M
        self.k = k
        self.cyclic = M.cyclic

    def _actL_basis(self, aidx, midx):
        return self.parent._actL_basis(aidx, midx)

    def _actR_basis(self, midx, bidx):
        return self.parent._actR_basis(midx, bidx)

    def actL_elt(self, a, vec):
        return self.parent.actL_elt(a, vec)

    def actR_elt(self, vec, b):
        return self.parent.actR_elt(vec, b)

    def __getattr__(self, attr):
        # structural attributes (lift/express/embeddings/quotient data)
        # come from the unshifted parent
        if attr == "parent":
            raise AttributeError(attr)
        return getattr(self.parent, attr)


def shift(M, k):
    if k == 0:
        return M
    if isinstance(M, ShiftedModule):
        return shift(M.parent, M.k + k)
    return ShiftedModule(M, k)


# ---------------------------------------------------------------- sub/image

class SubModule(Bimodule):
    """Submodule of a parent, spanned by given vectors (must be invariant)."""

    def __init__(self, parent, span_vecs, name=""):
        ech = Echelon(parent.dim)
        for v in span_vecs:
            ech.add(v)
        pivots = ech.pivot_cols()
        rows = [dict(ech.rows[p]) for p in pivots]
        degs = []
        pars = []
        for row in rows:
            ds = {parent.deg[i] for i in row}
            ps = {parent.par[i] for i in row}
            assert len(ds) == 1 and len(ps) == 1, "inhomogeneous submodule basis"
            degs.append(ds.pop())
            pars.append(ps.pop())
        super().__init__(parent.algL, parent.algR, degs, pars, name or f"sub({parent.name})")
        self.parent = parent
        self._ech = ech
        self._pivot_index = {p: i for i, p in enumerate(pivots)}
        self.rows = rows

    def lift(self, vec):
        out = {}
        for i, c in vec.items():
            out = vec_add(out, self.rows[i], c)
        return out

    def express(self, parent_vec):
        coords = self._ech.express(parent_vec)
        assert coords is not None, "vector not in submodule"
        return {self._pivot_index[p]: c for p, c in coords.items()}

    def _actL_basis(self, aidx, midx):
        return self.express(self.parent.actL_elt({aidx: F1}, self.rows[midx]))

    def _actR_basis(self, midx, bidx):
        return self.express(self.parent.actR_elt(self.rows[midx], {bidx: F1}))

    def actL_elt(self, a, vec):
        return self.express(self.parent.actL_elt(a, self.lift(vec)))

    def actR_elt(self, vec, b):
        return self.express(self.parent.actR_elt(self.lift(vec), b))


# ------------------------------------------------------------- Hom solving

def map_parity(M, N, F):
    """Raw parity of a homogeneous map, inferred from any nonzero entry."""
    ps = {(N.par[r] + M.par[c]) % 2 for r, row in F.rows.items() for c in row}
    assert len(ps) <= 1, "parity-inhomogeneous map"
    return ps.pop() if ps else 0


def verify_map(F, M, N, degree=None, parity=None):
    """Check homogeneity and both intertwining laws; return (ok, reason)."""
    degs = {N.deg[r] - M.deg[c] for r, row in F.rows.items() for c in row}
    if len(degs) > 1:
        return False, f"degree-inhomogeneous: {sorted(degs)}"
    if degree is not None and degs and degs != {degree}:
        return False, f"degree {degs.pop()} != {degree}"
    p = parity if parity is not None else (map_parity(M, N, F) if F.rows else 0)
    for gid, elt in M.algL.generators():
        GM = M.gen_matrix("L", gid, elt)
        GN = N.gen_matrix("L", gid, elt)
        if F @ GM != GN @ F:
            return False, f"left action of {gid} not intertwined"
    for gid, elt in M.algR.generators():
        bpar = M.algR.elt_parity(elt)
        GM = M.gen_matrix("R", gid, elt)
        GN = N.gen_matrix("R", gid, elt)
        lhs = F @ GM
        rhs = GN @ F
        if p and bpar:
            rhs = rhs.scale(-1)
        if lhs != rhs:
            return False, f"right action of {gid} not intertwined (map parity {p})"
    return True, ""


def _solve_from_constraints(N, support, constraint_mats):
    """Solve for x supported on `support` with mat @ x = 0 for each mat.

    constraint_mats entries are (matrix, sign_matrix_pairs) encoded as
    plain RatMatrix applied to x; returns list of sparse x vectors.
    """
    from .linalg import nullspace

    sup = sorted(support)
    col_of = {s: i for i, s in enumerate(sup)}
    rows = []
    for mat in constraint_mats:
        by_row = {}
        for r, row in mat.rows.items():
            ent = {col_of[c]: v for c, v in row.items() if c in col_of}
            # columns outside support are constrained to unused unknowns: the
            # constraint matrices are built over the full space, so restrict
            if ent:
                by_row[r] = ent
        rows.extend(by_row.values())
    sols = nullspace(rows, len(sup))
    return [{sup[i]: c for i, c in x.items()} for x in sols]


def hom_space(M, N, degree=0, parity=None):
    """Basis of homogeneous bimodule maps M -> N of the given degree.

    Degree is measured on the stored (adjusted) gradings.  Uses the cyclic
    fast path when M carries a cyclic presentation; the returned maps are
    full matrices, each verified by construction rules.
    """
    if M.dim == 0 or N.dim == 0:
        return []
    if isinstance(M, DirectSum):
        out = []
        for k in range(len(M.summands)):
            for f in hom_space(M.summands[k], N, degree, parity):
                out.append(f @ M.projection(k))
        return out
    if M.cyclic is not None:
        xs, p = hom_generators(M, N, degree, parity)
        return [materialize_hom(M, N, x, p) for x in xs]
    return _hom_generic(M, N, degree, parity)


def hom_generators(M, N, degree=0, parity=None):
    """Cyclic fast path, solutions only: list of generator images x and
    the common map parity (matrices via materialize_hom)."""
    if M.dim == 0 or N.dim == 0 or M.cyclic is None:
        return [], 0
    return _hom_cyclic_solve(M, N, degree, parity)


def _gen_degree(M):
    gen = M.cyclic.gen
    ds = {M.deg[i] for i in gen}
    ps = {M.par[i] for i in gen}
    assert len(ds) == 1 and len(ps) == 1, "inhomogeneous cyclic generator"
    return ds.pop(), ps.pop()


def _hom_cyclic_solve(M, N, degree, parity):
    gdeg, gpar = _gen_degree(M)
    tdeg = gdeg + degree
    support = [i for i in range(N.dim) if N.deg[i] == tdeg]
    if not support:
        return [], 0
    pset = {N.par[i] for i in support}
    assert len(pset) == 1, "mixed parity in target degree block"
    p = (pset.pop() + gpar) % 2
    if parity is not None and p != parity:
        return [], 0

    shape = M.cyclic.shape
    constraints = []
    cache = N.__dict__.setdefault("_elt_col_cache", {})

    def _mat(side, elt):
        ekey = (side, tuple(sorted(elt.items())))
        cols = {}
        for s in support:
            key = (ekey, s)
            w = cache.get(key)
            if w is None:
                w = N.actL_elt(elt, {s: F1}) if side == "L" else N.actR_elt({s: F1}, elt)
                cache[key] = w
            for r, c in w.items():
                cols.setdefault(r, {})[s] = c
        return RatMatrix(N.dim, N.dim, cols)

    def left_mat(elt):
        return _mat("L", elt)

    def right_mat(elt):
        return _mat("R", elt)

    if shape == "cut_left":
        eps = M.lift(M.cyclic.gen)  # idempotent in ambient = algL
        constraints.append(left_mat(eps) - _restrict_identity(N, support))
        for gid, elt in M.algR.generators():
            bpar = M.algR.elt_parity(elt)
            phi = M.embR(elt)
            lhs = left_mat(phi)
            rhs = right_mat(elt)
            if p and bpar:
                rhs = rhs.scale(-1)
            constraints.append(lhs - rhs)
    elif shape == "cut_right":
        eps = M.lift(M.cyclic.gen)
        constraints.append(right_mat({k: v for k, v in eps.items()}) - _restrict_identity(N, support))
        for gid, elt in M.algL.generators():
            apar = M.algL.elt_parity(elt)
            phi = M.embL(elt)
            lhs = left_mat(elt)
            rhs = right_mat(phi)
            if p and apar:
                rhs = rhs.scale(-1)
            constraints.append(lhs - rhs)
    elif shape == "pq":
        P, Q = M.cyclic.extra["M"], M.cyclic.extra["N"]
        epsP = P.lift(P.cyclic.gen)
        epsQ = Q.lift(Q.cyclic.gen)
        constraints.append(left_mat(epsP) - _restrict_identity(N, support))
        constraints.append(right_mat(epsQ) - _restrict_identity(N, support))
        mid = P.algR
        for gid, elt in mid.generators():
            cpar = mid.elt_parity(elt)
            lhs = left_mat(P.embR(elt))
            rhs = right_mat(Q.embL(elt))
            if p and cpar:
                rhs = rhs.scale(-1)
            constraints.append(lhs - rhs)
    else:
        raise ValueError(shape)

    xs = _solve_from_constraints(N, support, constraints)
    return xs, p


def _restrict_identity(N, support):
    return RatMatrix(N.dim, N.dim, {s: {s: F1} for s in support})


def materialize_hom(M, N, x, p):
    """Full matrix of the map determined by the image x of the generator."""
    shape = M.cyclic.shape
    cols = {}
    if shape == "cut_left":
        for i in range(M.dim):
            img = N.actL_elt(M.cyclic.a_exprs[i], x)
            for r, c in img.items():
                cols.setdefault(r, {})[i] = c
    elif shape == "cut_right":
        for i in range(M.dim):
            b = M.cyclic.b_exprs[i]
            img = N.actR_elt(x, b)
            if p and M.algR.elt_parity(b):
                img = vec_scale(img, Fraction(-1))
            for r, c in img.items():
                cols.setdefault(r, {})[i] = c
    elif shape == "pq":
        P, Q = M.cyclic.extra["M"], M.cyclic.extra["N"]
        for i in range(M.dim):
            k = M.quot.reps[i]
            pi, qj = M.pair_index(k)
            a = P.cyclic.a_exprs[pi]
            b = Q.cyclic.b_exprs[qj]
            img = N.actR_elt(N.actL_elt(a, x), b)
            if p and Q.algR.elt_parity(b):
                img = vec_scale(img, Fraction(-1))
            for r, c in img.items():
                cols.setdefault(r, {})[i] = c
    rows = {}
    for r, row in cols.items():
        rows[r] = row
    return RatMatrix(N.dim, M.dim, rows)


def _hom_generic(M, N, degree, parity):
    """Direct solve for F with F L(a) = L(a) F and the signed right law.

    Unknowns are the degree-compatible entries of F; each generator g
    contributes the equations (F @ G_M - sign * G_N @ F) = 0.
    """
    entries = []
    eindex = {}
    for c in range(M.dim):
        for r in range(N.dim):
            if N.deg[r] - M.deg[c] == degree:
                pp = (N.par[r] + M.par[c]) % 2
                if parity is None or pp == parity:
                    eindex[(r, c)] = len(entries)
                    entries.append((r, c))
    if not entries:
        return []
    pset = {(N.par[r] + M.par[c]) % 2 for (r, c) in entries}
    assert len(pset) == 1, "mixed-parity entry set: pass parity explicitly"
    p = pset.pop()

    rows = []

    def add_constraints(GM, GN, sign):
        eqs = {}
        # (F @ GM)[r, c0] = sum_c F[r, c] GM[c, c0]
        for (r, c), e in eindex.items():
            for c0, v in GM.rows.get(c, {}).items():
                key = (r, c0)
                eqs.setdefault(key, {})[e] = eqs.get(key, {}).get(e, F0) + v
        # (GN @ F)[r0, c] = sum_r GN[r0, r] F[r, c]
        for (r, c), e in eindex.items():
            for r0, row in GN.rows.items():
                v = row.get(r)
                if v:
                    key = (r0, c)
                    eqs.setdefault(key, {})[e] = eqs.get(key, {}).get(e, F0) - sign * v
        for eq in eqs.values():
            eq = {k: v for k, v in eq.items() if v}
            if eq:
                rows.append(eq)

    for gid, elt in M.algL.generators():
        add_constraints(M.gen_matrix("L", gid, elt), N.gen_matrix("L", gid, elt), 1)
    for gid, elt in M.algR.generators():
        bpar = M.algR.elt_parity(elt)
        sign = -1 if (p and bpar) else 1
        add_constraints(M.gen_matrix("R", gid, elt), N.gen_matrix("R", gid, elt), sign)

    from .linalg import nullspace

    sols = nullspace(rows, len(entries))
    out = []
    for x in sols:
        F = RatMatrix(N.dim, M.dim)
        for e, v in x.items():
            r, c = entries[e]
            F.set_entry(r, c, v)
        out.append(F)
    return out
