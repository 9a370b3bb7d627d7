"""Null-homotopy decisions by exact linear solves.

For a degree-0 map f between free complexes over the same algebra, dh + hd
= f is one k-linear system in the algebra coordinates of all components of
h.  Infeasibility of the system is a proof of non-homotopy over the given
backend.  The derived annihilator {a : a*id is null-homotopic} is the
projection of the solution space of a*id - (dh + hd) = 0 onto the
a-coordinates, with one witness homotopy stored per basis element.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import AMatrix, ChainMap, FreeComplex, scalar_endo
from .field import GF
from .linalg import (Matrix, in_span, kernel_basis, np_kernel, np_rref, rref,
                     solve_and_project, solve_multi)
from .monomial import TruncationError


@dataclass(frozen=True)
class Homotopy:
    """Witness maps h_i : F_i -> G_{i+1}."""

    source: FreeComplex
    target: FreeComplex
    maps: tuple  # (degree, AMatrix) pairs

    def component(self, i: int) -> AMatrix:
        for deg, m in self.maps:
            if deg == i:
                return m
        return AMatrix.zero(self.source.algebra, self.target.rank(i + 1), self.source.rank(i))

    def boundary(self) -> ChainMap:
        """The chain map dh + hd this homotopy bounds."""
        F, G = self.source, self.target
        lo = min(F.low, G.low)
        hi = max(F.top, G.top)
        comps = {}
        for i in range(lo, hi + 1):
            t1 = G.diff(i + 1).mul(self.component(i))
            t2 = self.component(i - 1).mul(F.diff(i))
            comps[i] = t1.add(t2)
        return ChainMap.from_dict(F, G, comps)


@dataclass(frozen=True)
class DerivedAnnihilator:
    """k-basis of the kernel of A -> End of the complex up to homotopy."""

    complex: FreeComplex
    basis: tuple  # algebra elements
    witnesses: tuple  # Homotopy per basis element
    window: int | None = None  # graded backend: element degrees searched

    def contains(self, a) -> bool:
        A = self.complex.algebra
        if A.kind == "artinian":
            if not self.basis:
                return A.el_is_zero(a)
            cols = Matrix.from_columns(A.field, [list(b) for b in self.basis], nrows=A.dim)
            return in_span(cols, a)
        return solve_homotopy(scalar_endo(self.complex, a)) is not None

    def is_ideal(self) -> bool:
        """Closure of the basis span under multiplication by algebra basis elements."""
        A = self.complex.algebra
        if A.kind != "artinian":
            raise TruncationError("ideal check is exact on the Artinian backend only")
        if not self.basis:
            return True
        cols = Matrix.from_columns(A.field, [list(b) for b in self.basis], nrows=A.dim)
        for a in self.basis:
            for t in range(A.dim):
                if not in_span(cols, A.el_mul(A.basis_element(t), a)):
                    return False
        return True


class _ArtinianSystem:
    """The k-linear system dh + hd = f for fixed complexes F, G."""

    def __init__(self, F: FreeComplex, G: FreeComplex):
        A = F.algebra
        if A != G.algebra:
            raise ValueError("homotopy solves need a common algebra")
        self.F, self.G, self.A = F, G, A
        self.lo = min(F.low, G.low)
        self.hi = max(F.top, G.top)
        d = A.dim
        self.h_layout = {}
        col = 0
        for i in range(self.lo, self.hi + 1):
            size = G.rank(i + 1) * F.rank(i)
            if size:
                self.h_layout[i] = col
                col += size * d
        self.ncols = col
        self.eq_layout = {}
        row = 0
        for i in range(self.lo, self.hi + 1):
            size = G.rank(i) * F.rank(i)
            if size:
                self.eq_layout[i] = row
                row += size * d
        self.nrows = row
        self.use_numpy = isinstance(A.field, GF) and A.field.numpy_safe
        self._mult_cache = {}
        self.matrix = self._assemble()

    def _L(self, element):
        key = element
        if key not in self._mult_cache:
            L = self.A.left_mult_matrix(element)
            self._mult_cache[key] = L.to_numpy() if self.use_numpy else L
        return self._mult_cache[key]

    def _assemble(self):
        A, F, G = self.A, self.F, self.G
        d = A.dim
        if self.use_numpy:
            M = np.zeros((self.nrows, self.ncols), dtype=np.int64)

            def add_block(r0, c0, L):
                M[r0:r0 + d, c0:c0 + d] = (M[r0:r0 + d, c0:c0 + d] + L) % A.field.p
        else:
            M = [[A.field.zero] * self.ncols for _ in range(self.nrows)]

            def add_block(r0, c0, L):
                f = A.field
                for a_i in range(d):
                    row = M[r0 + a_i]
                    Lr = L.rows[a_i]
                    for b_i in range(d):
                        if Lr[b_i] != f.zero:
                            row[c0 + b_i] = f.add(row[c0 + b_i], Lr[b_i])

        for i in range(self.lo, self.hi + 1):
            if i not in self.eq_layout:
                continue
            eq0 = self.eq_layout[i]
            gr, fr = G.rank(i), F.rank(i)
            # term d^G_{i+1} h_i : entry (s,t) sums dG[s,q] * h_i[q,t]
            if i in self.h_layout:
                dG = G.diff(i + 1)
                h0 = self.h_layout[i]
                for s in range(gr):
                    for q in range(dG.ncols):
                        e = dG.entries[s][q]
                        if A.el_is_zero(e):
                            continue
                        L = self._L(e)
                        for t in range(fr):
                            add_block(eq0 + (s * fr + t) * d, h0 + (q * fr + t) * d, L)
            # term h_{i-1} d^F_i : entry (s,t) sums h_{i-1}[s,q] * dF[q,t]
            if (i - 1) in self.h_layout:
                dF = F.diff(i)
                h0 = self.h_layout[i - 1]
                fr1 = F.rank(i - 1)
                for q in range(dF.nrows):
                    for t in range(fr):
                        e = dF.entries[q][t]
                        if A.el_is_zero(e):
                            continue
                        L = self._L(e)
                        for s in range(gr):
                            add_block(eq0 + (s * fr + t) * d, h0 + (s * fr1 + q) * d, L)
        return M

    def rhs_of(self, f: ChainMap) -> list:
        """Flatten the components of f into an equation-space vector."""
        A = self.A
        d = A.dim
        zero = A.field.zero
        vec = [zero] * self.nrows
        for i in range(self.lo, self.hi + 1):
            if i not in self.eq_layout:
                comp = f.component(i)
                if not comp.is_zero():
                    return None  # f lives outside the equation space: no solution
                continue
            eq0 = self.eq_layout[i]
            comp = f.component(i)
            fr = self.F.rank(i)
            for s in range(comp.nrows):
                for t in range(comp.ncols):
                    e = comp.entries[s][t]
                    for a_i in range(d):
                        vec[eq0 + (s * fr + t) * d + a_i] = e[a_i]
        return vec

    def unpack(self, x) -> Homotopy:
        A = self.A
        d = A.dim
        maps = {}
        for i, c0 in self.h_layout.items():
            gr1 = self.G.rank(i + 1)
            fr = self.F.rank(i)
            entries = []
            for q in range(gr1):
                row = []
                for t in range(fr):
                    off = c0 + (q * fr + t) * d
                    row.append(tuple(x[off:off + d]))
                entries.append(tuple(row))
            maps[i] = AMatrix(A, gr1, fr, tuple(entries))
        return Homotopy(self.F, self.G, tuple(sorted(maps.items())))

    def solve(self, fs: list) -> list:
        """Solve dh + hd = f for each f; None where infeasible."""
        rhss = [self.rhs_of(f) for f in fs]
        todo = [(k, r) for k, r in enumerate(rhss) if r is not None]
        out = [None] * len(fs)
        if todo:
            if self.use_numpy:
                sols = _np_solve_multi(self.matrix, [r for _, r in todo], self.A.field.p)
            else:
                M = Matrix.from_rows(self.A.field, [tuple(r) for r in self.matrix],
                                     ncols=self.ncols)
                sols = solve_multi(M, [tuple(r) for _, r in todo])
            for (k, _), s in zip(todo, sols):
                if s is not None:
                    out[k] = self.unpack(s)
        return out

    def annihilator(self) -> DerivedAnnihilator:
        """Project the solution space of a*id = dh + hd onto the a-coordinates."""
        A = self.A
        d = A.dim
        f = A.field
        # augmented columns: d coordinates for a, then the h unknowns;
        # equation rows for a*id: identity blocks at diagonal entries (s == t)
        if self.use_numpy:
            aug = np.zeros((self.nrows, d + self.ncols), dtype=np.int64)
            aug[:, d:] = self.matrix % f.p
        else:
            aug = [[f.zero] * (d + self.ncols) for _ in range(self.nrows)]
            for r_i, row in enumerate(self.matrix):
                arow = aug[r_i]
                for c_i, v in enumerate(row):
                    arow[d + c_i] = v
        for i in range(self.lo, self.hi + 1):
            if i not in self.eq_layout:
                continue
            eq0 = self.eq_layout[i]
            fr = self.F.rank(i)
            for s in range(fr):
                base = eq0 + (s * fr + s) * d
                if self.use_numpy:
                    for a_i in range(d):
                        aug[base + a_i, a_i] = (aug[base + a_i, a_i] - 1) % f.p
                else:
                    for a_i in range(d):
                        aug[base + a_i][a_i] = f.sub(aug[base + a_i][a_i], f.one)
        # kernel of [ -I_a | M_h ]: each kernel vector is a pair (a, h) with
        # a*id = dh + hd, so witnesses come along for free; keep the columns
        # whose a-parts grow the projected span (greedy over the canonical
        # kernel order, hence deterministic)
        if self.use_numpy:
            ker_cols = np_kernel(aug, f.p).T.tolist()
        else:
            M = Matrix.from_rows(f, [tuple(r) for r in aug], ncols=d + self.ncols)
            ker_cols = [list(c) for c in kernel_basis(M).columns()]
        basis = []
        witnesses = []
        proj_rows = []
        cur_rank = 0
        for col in ker_cols:
            a = tuple(f.from_int(x) if self.use_numpy else x for x in col[:d])
            cand = proj_rows + [a]
            r = rref(Matrix.from_rows(f, cand, ncols=d))[2]
            if r == cur_rank + 1:
                cur_rank = r
                proj_rows.append(a)
                basis.append(a)
                h = tuple(f.from_int(x) if self.use_numpy else x for x in col[d:])
                witnesses.append(self.unpack(h))
        return DerivedAnnihilator(self.F, tuple(basis), tuple(witnesses))


def _np_solve_multi(M: np.ndarray, rhss: list, p: int) -> list:
    nrows, ncols = M.shape
    k = len(rhss)
    aug = np.zeros((nrows, ncols + k), dtype=np.int64)
    aug[:, :ncols] = M % p
    for j, r in enumerate(rhss):
        aug[:, ncols + j] = [int(x) % p for x in r]
    R, pivots = np_rref(aug, p)
    rhs_pivot_rows = [i for i, pc in enumerate(pivots) if pc >= ncols]
    out = []
    for j in range(k):
        col = ncols + j
        bad = any(R[i, col] % p for i in rhs_pivot_rows)
        if bad:
            out.append(None)
            continue
        x = [0] * ncols
        for i, pc in enumerate(pivots):
            if pc < ncols:
                x[pc] = int(R[i, col])
        out.append(tuple(x))
    return out


# ---------------------------------------------------------------------------
# graded backend


class _GradedSystem:
    """Homogeneous homotopy solve of internal degree delta over the graded backend.

    Restricting to homogeneous witnesses loses nothing: the equation
    dh + hd = f is internal-degree-graded, so projecting any solution onto
    the component matching deg(f) again solves it.
    """

    def __init__(self, F: FreeComplex, G: FreeComplex, delta: int):
        A = F.algebra
        self.F, self.G, self.A, self.delta = F, G, A, delta
        self.lo = min(F.low, G.low)
        self.hi = max(F.top, G.top)
        f = A.field
        # unknown layout: per degree i, per entry (q, t): coefficients on basis(deg)
        self.h_entries = []  # (i, q, t, entry_degree, offset)
        col = 0
        for i in range(self.lo, self.hi + 1):
            ssrc = F.shift_of(i)
            stgt = G.shift_of(i + 1)
            for q in range(G.rank(i + 1)):
                for t in range(F.rank(i)):
                    deg = delta + ssrc[t] - stgt[q]
                    if deg < 0:
                        continue
                    if deg > A.truncation:
                        raise TruncationError(
                            f"homotopy entry degree {deg} above truncation")
                    nb = len(A.basis(deg))
                    if nb:
                        self.h_entries.append((i, q, t, deg, col))
                        col += nb
        self.ncols = col
        self.rows = []
        self.rhs_meta = []  # (i, s, t, eq_degree)
        self._build_rows()

    def _entry_lookup(self, i, q, t):
        for (ii, qq, tt, deg, off) in self.h_entries:
            if (ii, qq, tt) == (i, q, t):
                return deg, off
        return None

    def _build_rows(self):
        A = self.A
        f = A.field
        F, G = self.F, self.G
        for i in range(self.lo, self.hi + 1):
            ssrc = F.shift_of(i)
            stgt = G.shift_of(i)
            for s in range(G.rank(i)):
                for t in range(F.rank(i)):
                    eq_deg = self.delta + ssrc[t] - stgt[s]
                    if eq_deg < 0:
                        self.rhs_meta.append((i, s, t, eq_deg, 0))
                        continue
                    if eq_deg > A.truncation:
                        raise TruncationError(
                            f"homotopy equation degree {eq_deg} above truncation")
                    nb = len(A.basis(eq_deg))
                    block_rows = [[f.zero] * self.ncols for _ in range(nb)]
                    dG = G.diff(i + 1)
                    # term dG_{i+1}[s, q] * h_i[q, t]
                    for q in range(G.rank(i + 1)):
                        e = dG.entries[s][q]
                        if A.el_is_zero(e):
                            continue
                        found = self._entry_lookup(i, q, t)
                        if found is None:
                            continue
                        hdeg, off = found
                        mm = A.mult_map(e, hdeg)  # basis(hdeg) -> basis(hdeg + deg e)
                        for r_i in range(min(nb, mm.nrows)):
                            for c_i in range(mm.ncols):
                                v = mm.rows[r_i][c_i]
                                if v != f.zero:
                                    block_rows[r_i][off + c_i] = f.add(
                                        block_rows[r_i][off + c_i], v)
                    # term h_{i-1}[s, q] * dF_i[q, t]
                    dF = F.diff(i)
                    for q in range(F.rank(i - 1)):
                        e = dF.entries[q][t]
                        if A.el_is_zero(e):
                            continue
                        found = self._entry_lookup(i - 1, s, q)
                        if found is None:
                            continue
                        hdeg, off = found
                        mm = A.mult_map(e, hdeg)
                        for r_i in range(min(nb, mm.nrows)):
                            for c_i in range(mm.ncols):
                                v = mm.rows[r_i][c_i]
                                if v != f.zero:
                                    block_rows[r_i][off + c_i] = f.add(
                                        block_rows[r_i][off + c_i], v)
                    row0 = len(self.rows)
                    self.rows.extend(tuple(r) for r in block_rows)
                    self.rhs_meta.append((i, s, t, eq_deg, row0))

    def rhs_of(self, fmap: ChainMap):
        A = self.A
        f = A.field
        vec = [f.zero] * len(self.rows)
        for (i, s, t, eq_deg, row0) in self.rhs_meta:
            comp = fmap.component(i)
            e = comp.entries[s][t] if comp.nrows > s and comp.ncols > t else A.zero
            if eq_deg < 0:
                if not A.el_is_zero(e):
                    return None
                continue
            coords = A.coords(e, eq_deg)
            # verify f is homogeneous of the right degree
            for m, c in e:
                if sum(m) != eq_deg and c != f.zero:
                    return None
            for k, v in enumerate(coords):
                vec[row0 + k] = v
        return vec

    def solve(self, fmaps: list) -> list:
        f = self.A.field
        M = Matrix.from_rows(f, self.rows, ncols=self.ncols)
        rhss = [self.rhs_of(fm) for fm in fmaps]
        todo = [(k, r) for k, r in enumerate(rhss) if r is not None]
        out = [None] * len(fmaps)
        if todo:
            sols = solve_multi(M, [tuple(r) for _, r in todo])
            for (k, _), s in zip(todo, sols):
                if s is not None:
                    out[k] = self.unpack(s)
        return out

    def unpack(self, x) -> Homotopy:
        A = self.A
        maps = {}
        for i in range(self.lo, self.hi + 1):
            gr1, fr = self.G.rank(i + 1), self.F.rank(i)
            if gr1 * fr == 0:
                continue
            entries = [[A.zero] * fr for _ in range(gr1)]
            nontrivial = False
            for (ii, q, t, deg, off) in self.h_entries:
                if ii != i:
                    continue
                nb = len(A.basis(deg))
                coords = x[off:off + nb]
                el = A.from_coords(coords, deg)
                if el:
                    nontrivial = True
                entries[q][t] = el
            maps[i] = AMatrix(A, gr1, fr, tuple(tuple(r) for r in entries))
        return Homotopy(self.F, self.G, tuple(sorted(maps.items())))


# ---------------------------------------------------------------------------
# public operations


def is_chain_map(f: ChainMap) -> bool:
    return f.is_chain_map()


def solve_homotopy(f: ChainMap) -> Homotopy | None:
    """Find h with dh + hd = f exactly, or return None (a proof of absence).

    Every returned homotopy is re-substituted into the equation before being
    handed back.
    """
    F, G = f.source, f.target
    A = F.algebra
    if A.kind == "artinian":
        h = _ArtinianSystem(F, G).solve([f])[0]
    else:
        delta = _uniform_component_degree(f)
        if delta is None:
            return None
        h = _GradedSystem(F, G, delta).solve([f])[0]
    if h is not None:
        _check_homotopy(f, h)
    return h


def _uniform_component_degree(f: ChainMap) -> int | None:
    """Internal degree of a homogeneous degree-0 chain-map-shaped map."""
    A = f.source.algebra
    degs = set()
    for i in range(min(f.source.low, f.target.low), max(f.source.top, f.target.top) + 1):
        comp = f.component(i)
        ssrc = f.source.shift_of(i)
        stgt = f.target.shift_of(i)
        for s in range(comp.nrows):
            for t in range(comp.ncols):
                e = comp.entries[s][t]
                if A.el_is_zero(e):
                    continue
                d = A.el_degree(e)
                if d is None:
                    return None
                degs.add(d + stgt[s] - ssrc[t])
    if not degs:
        return 0
    if len(degs) > 1:
        return None
    return degs.pop()


def _check_homotopy(f: ChainMap, h: Homotopy):
    bd = h.boundary()
    for i in range(min(f.source.low, f.target.low), max(f.source.top, f.target.top) + 1):
        if not bd.component(i).sub(f.component(i)).is_zero():
            raise AssertionError("solver returned an invalid homotopy")


def homotopy_class_eq(f: ChainMap, g: ChainMap) -> bool:
    """f and g agree in the homotopy category."""
    return solve_homotopy(f.sub(g)) is not None


def is_null_homotopic(f: ChainMap) -> bool:
    return solve_homotopy(f) is not None


def derived_annihilator(F: FreeComplex, max_degree: int | None = None) -> DerivedAnnihilator:
    """Kernel of A -> End-up-to-homotopy of F, with stored witnesses.

    Artinian backend: exact.  Graded backend: homogeneous elements of each
    internal degree up to the largest feasible one are searched; the result
    carries that window.
    """
    A = F.algebra
    if A.kind == "artinian":
        ann = _ArtinianSystem(F, F).annihilator()
        for a, w in zip(ann.basis, ann.witnesses):
            _check_homotopy(scalar_endo(F, a), w)
        return ann
    basis = []
    witnesses = []
    top_degree = max_degree if max_degree is not None else A.truncation
    window = 0
    for delta in range(1, top_degree + 1):
        nb = len(A.basis(delta))
        if nb == 0:
            window = delta
            continue
        try:
            sys = _GradedSystem(F, F, delta)
        except TruncationError:
            break
        window = delta
        f = A.field
        M = Matrix.from_rows(f, sys.rows, ncols=sys.ncols)
        # augment with a-coordinates: a*id has rhs linear in the coefficients of a
        rhs_cols = []
        for k in range(nb):
            coeffs = [f.one if j == k else f.zero for j in range(nb)]
            a = A.from_coords(coeffs, delta)
            rhs_cols.append(sys.rhs_of(scalar_endo(F, a)))
        if any(r is None for r in rhs_cols):
            continue
        aug_rows = []
        for r_i, row in enumerate(M.rows):
            aug_rows.append(tuple(f.neg(rhs_cols[k][r_i]) for k in range(nb)) + row)
        aug = Matrix.from_rows(f, aug_rows, ncols=nb + sys.ncols)
        proj = solve_and_project(aug, nb)
        for col in proj.columns():
            a = A.from_coords(col, delta)
            w = sys.solve([scalar_endo(F, a)])[0]
            if w is None:
                raise AssertionError("graded annihilator element has no witness")
            basis.append(a)
            witnesses.append(w)
    return DerivedAnnihilator(F, tuple(basis), tuple(witnesses), window=window)
