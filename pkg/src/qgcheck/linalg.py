"""Sparse exact linear algebra with tensor-leg bookkeeping.

Vectors and linear maps carry an explicit list of tensor-leg dimensions;
composition and tensoring check the leg signature, which is where most
coalgebra bugs would otherwise hide.  Entries are exact cyclotomic scalars
(``Cyc``) held column-sparse, so permutation-like structure maps of group
models stay cheap even on spaces of dimension ~10^3.  Float-tier helpers
(Hermitian eigendecompositions, numeric ranks, complex matrix powers) wrap
numpy and live at the bottom of the module.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import LegMismatch, SingularMap
from .scalars import Cyc

Dims = tuple[int, ...]


def total_dim(dims: Sequence[int]) -> int:
    n = 1
    for d in dims:
        n *= d
    return n


def _strides(dims: Sequence[int]) -> list[int]:
    out = [1] * len(dims)
    for k in range(len(dims) - 2, -1, -1):
        out[k] = out[k + 1] * dims[k + 1]
    return out


def to_multi(index: int, dims: Sequence[int]) -> tuple[int, ...]:
    multi = []
    for s in _strides(dims):
        multi.append(index // s)
        index %= s
    return tuple(multi)


def from_multi(multi: Sequence[int], dims: Sequence[int]) -> int:
    idx = 0
    for i, s in zip(multi, _strides(dims)):
        idx += i * s
    return idx


def _as_cyc(value) -> Cyc:
    if isinstance(value, Cyc):
        return value
    return Cyc.rational(Fraction(value))


class Vec:
    """Sparse exact vector over a tensor product of legs."""

    __slots__ = ("dims", "data")

    def __init__(self, dims: Sequence[int], data: dict[int, Cyc] | None = None):
        self.dims: Dims = tuple(dims)
        self.data: dict[int, Cyc] = {}
        if data:
            for i, v in data.items():
                v = _as_cyc(v)
                if not v.is_zero():
                    self.data[i] = v

    @property
    def dim(self) -> int:
        return total_dim(self.dims)

    @staticmethod
    def zero(dims: Sequence[int]) -> "Vec":
        return Vec(dims)

    @staticmethod
    def basis(dims: Sequence[int], index) -> "Vec":
        if isinstance(index, (tuple, list)):
            index = from_multi(index, dims)
        return Vec(dims, {index: Cyc.one()})

    @staticmethod
    def from_list(dims: Sequence[int], values: Iterable) -> "Vec":
        return Vec(dims, {i: _as_cyc(v) for i, v in enumerate(values)})

    def get(self, index) -> Cyc:
        if isinstance(index, (tuple, list)):
            index = from_multi(index, self.dims)
        return self.data.get(index, Cyc.zero())

    def items(self):
        return self.data.items()

    def is_zero(self) -> bool:
        return not self.data

    def __add__(self, other: "Vec") -> "Vec":
        if self.dims != other.dims:
            raise LegMismatch("vector legs differ", self.dims, other.dims)
        out = dict(self.data)
        for i, v in other.data.items():
            s = out.get(i)
            out[i] = v if s is None else s + v
        return Vec(self.dims, out)

    def __sub__(self, other: "Vec") -> "Vec":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "Vec":
        c = _as_cyc(scalar)
        return Vec(self.dims, {i: c * v for i, v in self.data.items()})

    def __neg__(self) -> "Vec":
        return (-1) * self

    def tensor(self, other: "Vec") -> "Vec":
        n2 = other.dim
        out = {}
        for i, v in self.data.items():
            for j, w in other.data.items():
                out[i * n2 + j] = v * w
        return Vec(self.dims + other.dims, out)

    def conj(self) -> "Vec":
        return Vec(self.dims, {i: v.conj() for i, v in self.data.items()})

    def relabel(self, dims: Sequence[int]) -> "Vec":
        """Reinterpret the leg structure without touching coordinates."""
        if total_dim(dims) != self.dim:
            raise LegMismatch("total dimension changed in relabel", self.dims, tuple(dims))
        return Vec(dims, dict(self.data))

    def __eq__(self, other) -> bool:
        return isinstance(other, Vec) and self.dims == other.dims and self.data == other.data

    def __hash__(self):
        raise TypeError("Vec is unhashable")

    def to_numpy(self) -> np.ndarray:
        out = np.zeros(self.dim, dtype=complex)
        for i, v in self.data.items():
            out[i] = v.to_complex()
        return out

    def max_abs(self) -> float:
        return max((abs(v.to_complex()) for v in self.data.values()), default=0.0)

    def __repr__(self):
        return f"Vec(dims={self.dims}, nnz={len(self.data)})"


class LinMap:
    """Sparse exact linear map between leg-structured spaces.

    Stored column-major: ``cols[j][i]`` is the (i, j) entry.  Zero entries
    are never stored.
    """

    __slots__ = ("dom", "cod", "cols")

    def __init__(self, dom: Sequence[int], cod: Sequence[int],
                 cols: dict[int, dict[int, Cyc]] | None = None):
        self.dom: Dims = tuple(dom)
        self.cod: Dims = tuple(cod)
        self.cols: dict[int, dict[int, Cyc]] = {}
        if cols:
            for j, col in cols.items():
                clean = {i: _as_cyc(v) for i, v in col.items() if not _as_cyc(v).is_zero()}
                if clean:
                    self.cols[j] = clean

    @property
    def dom_dim(self) -> int:
        return total_dim(self.dom)

    @property
    def cod_dim(self) -> int:
        return total_dim(self.cod)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def identity(dims: Sequence[int]) -> "LinMap":
        n = total_dim(dims)
        return LinMap(dims, dims, {j: {j: Cyc.one()} for j in range(n)})

    @staticmethod
    def zero(dom: Sequence[int], cod: Sequence[int]) -> "LinMap":
        return LinMap(dom, cod)

    @staticmethod
    def from_entries(dom: Sequence[int], cod: Sequence[int], entries) -> "LinMap":
        """entries: iterable of (row, col, value)."""
        cols: dict[int, dict[int, Cyc]] = {}
        for i, j, v in entries:
            v = _as_cyc(v)
            if v.is_zero():
                continue
            col = cols.setdefault(j, {})
            col[i] = col.get(i, Cyc.zero()) + v
        return LinMap(dom, cod, cols)

    @staticmethod
    def from_columns(dom: Sequence[int], cod: Sequence[int], columns: Sequence[Vec]) -> "LinMap":
        cols = {}
        for j, v in enumerate(columns):
            if v.dims != tuple(cod):
                raise LegMismatch("column legs differ from codomain", v.dims, tuple(cod))
            if v.data:
                cols[j] = dict(v.data)
        return LinMap(dom, cod, cols)

    @staticmethod
    def from_dense(dom: Sequence[int], cod: Sequence[int], rows: Sequence[Sequence]) -> "LinMap":
        entries = []
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                entries.append((i, j, v))
        return LinMap(dom, cod, None) if not entries else LinMap.from_entries(dom, cod, entries)

    @staticmethod
    def leg_permutation(dims: Sequence[int], perm: Sequence[int]) -> "LinMap":
        """Map sending leg perm[p] of the input to output position p."""
        dims = tuple(dims)
        if sorted(perm) != list(range(len(dims))):
            raise LegMismatch(f"not a permutation of {len(dims)} legs: {perm}")
        cod = tuple(dims[p] for p in perm)
        cols = {}
        for j in range(total_dim(dims)):
            multi = to_multi(j, dims)
            out = tuple(multi[p] for p in perm)
            cols[j] = {from_multi(out, cod): Cyc.one()}
        return LinMap(dims, cod, cols)

    @staticmethod
    def flip(d1: int, d2: int) -> "LinMap":
        return LinMap.leg_permutation((d1, d2), (1, 0))

    @staticmethod
    def functional(dims: Sequence[int], values: Iterable) -> "LinMap":
        """Linear functional as a map onto the empty-leg (scalar) space."""
        return LinMap.from_entries(dims, (), ((0, j, v) for j, v in enumerate(values)))

    # -- structure ------------------------------------------------------

    def entries(self):
        for j, col in self.cols.items():
            for i, v in col.items():
                yield i, j, v

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.cols.values())

    def column(self, j) -> Vec:
        if isinstance(j, (tuple, list)):
            j = from_multi(j, self.dom)
        return Vec(self.cod, dict(self.cols.get(j, {})))

    def entry(self, i, j) -> Cyc:
        if isinstance(i, (tuple, list)):
            i = from_multi(i, self.cod)
        if isinstance(j, (tuple, list)):
            j = from_multi(j, self.dom)
        return self.cols.get(j, {}).get(i, Cyc.zero())

    def is_zero(self) -> bool:
        return not self.cols

    def __eq__(self, other) -> bool:
        return (isinstance(other, LinMap) and self.dom == other.dom
                and self.cod == other.cod and self.cols == other.cols)

    def __hash__(self):
        raise TypeError("LinMap is unhashable")

    # -- algebra ----------------------------------------------------------

    def apply(self, v: Vec) -> Vec:
        if v.dims != self.dom:
            raise LegMismatch("vector legs differ from domain", v.dims, self.dom)
        out: dict[int, Cyc] = {}
        for j, c in v.data.items():
            col = self.cols.get(j)
            if not col:
                continue
            for i, m in col.items():
                s = out.get(i)
                p = m * c
                out[i] = p if s is None else s + p
        return Vec(self.cod, out)

    def __call__(self, v: Vec) -> Vec:
        return self.apply(v)

    def __matmul__(self, other: "LinMap") -> "LinMap":
        """Composition self o other."""
        if not isinstance(other, LinMap):
            return NotImplemented
        if other.cod != self.dom:
            raise LegMismatch("composition legs differ", self.dom, other.cod)
        cols: dict[int, dict[int, Cyc]] = {}
        for j, col in other.cols.items():
            acc: dict[int, Cyc] = {}
            for k, c in col.items():
                mid = self.cols.get(k)
                if not mid:
                    continue
                for i, m in mid.items():
                    s = acc.get(i)
                    p = m * c
                    acc[i] = p if s is None else s + p
            acc = {i: v for i, v in acc.items() if not v.is_zero()}
            if acc:
                cols[j] = acc
        return LinMap(other.dom, self.cod, cols)

    def tensor(self, other: "LinMap") -> "LinMap":
        nd2, nc2 = other.dom_dim, other.cod_dim
        cols: dict[int, dict[int, Cyc]] = {}
        for j1, col1 in self.cols.items():
            for j2, col2 in other.cols.items():
                col = {}
                for i1, v1 in col1.items():
                    for i2, v2 in col2.items():
                        col[i1 * nc2 + i2] = v1 * v2
                cols[j1 * nd2 + j2] = col
        return LinMap(self.dom + other.dom, self.cod + other.cod, cols)

    def __add__(self, other: "LinMap") -> "LinMap":
        if self.dom != other.dom or self.cod != other.cod:
            raise LegMismatch("sum legs differ", (self.dom, self.cod), (other.dom, other.cod))
        cols = {j: dict(col) for j, col in self.cols.items()}
        for j, col in other.cols.items():
            mine = cols.setdefault(j, {})
            for i, v in col.items():
                s = mine.get(i)
                t = v if s is None else s + v
                if t.is_zero():
                    mine.pop(i, None)
                else:
                    mine[i] = t
        return LinMap(self.dom, self.cod, cols)

    def __sub__(self, other: "LinMap") -> "LinMap":
        return self + other.scale(-1)

    def scale(self, scalar) -> "LinMap":
        c = _as_cyc(scalar)
        if c.is_zero():
            return LinMap.zero(self.dom, self.cod)
        return LinMap(self.dom, self.cod,
                      {j: {i: c * v for i, v in col.items()} for j, col in self.cols.items()})

    def transpose(self) -> "LinMap":
        cols: dict[int, dict[int, Cyc]] = {}
        for i, j, v in self.entries():
            cols.setdefault(i, {})[j] = v
        return LinMap(self.cod, self.dom, cols)

    def conj(self) -> "LinMap":
        return LinMap(self.dom, self.cod,
                      {j: {i: v.conj() for i, v in col.items()} for j, col in self.cols.items()})

    def adjoint(self) -> "LinMap":
        return self.transpose().conj()

    def relabel(self, dom: Sequence[int], cod: Sequence[int]) -> "LinMap":
        if total_dim(dom) != self.dom_dim or total_dim(cod) != self.cod_dim:
            raise LegMismatch("total dimension changed in relabel")
        return LinMap(dom, cod, {j: dict(col) for j, col in self.cols.items()})

    def max_abs(self) -> float:
        return max((abs(v.to_complex()) for _, _, v in self.entries()), default=0.0)

    def to_numpy(self) -> np.ndarray:
        out = np.zeros((self.cod_dim, self.dom_dim), dtype=complex)
        for i, j, v in self.entries():
            out[i, j] = v.to_complex()
        return out

    def __repr__(self):
        return f"LinMap({self.dom}->{self.cod}, nnz={self.nnz})"


def tensor_all(*maps: LinMap) -> LinMap:
    out = maps[0]
    for m in maps[1:]:
        out = out.tensor(m)
    return out


def embed_on_legs(f: LinMap, legs: Sequence[int], dims: Sequence[int]) -> LinMap:
    """Matrix of f acting on the chosen legs (0-based) of an ambient space.

    Arity-preserving only: f must have as many codomain legs as domain legs,
    and the untouched legs pass through the identity.
    """
    dims = tuple(dims)
    if len(f.dom) != len(f.cod):
        raise LegMismatch("embed_on_legs requires an arity-preserving map")
    if tuple(dims[p] for p in legs) != f.dom:
        raise LegMismatch("chosen legs do not match map domain",
                          tuple(dims[p] for p in legs), f.dom)
    out_dims = list(dims)
    for pos, p in enumerate(legs):
        out_dims[p] = f.cod[pos]
    out_dims = tuple(out_dims)
    others = [p for p in range(len(dims)) if p not in legs]
    cols: dict[int, dict[int, Cyc]] = {}
    other_ranges = [range(dims[p]) for p in others]
    for jf, colf in f.cols.items():
        sub_in = to_multi(jf, f.dom)
        for rest in itertools.product(*other_ranges):
            multi_in = [0] * len(dims)
            for pos, p in enumerate(legs):
                multi_in[p] = sub_in[pos]
            for pos, p in enumerate(others):
                multi_in[p] = rest[pos]
            j = from_multi(multi_in, dims)
            col: dict[int, Cyc] = {}
            for if_, v in colf.items():
                sub_out = to_multi(if_, f.cod)
                multi_out = list(multi_in)
                for pos, p in enumerate(legs):
                    multi_out[p] = sub_out[pos]
                col[from_multi(multi_out, out_dims)] = v
            cols[j] = col
    return LinMap(dims, out_dims, cols)


def apply_on_legs(f: LinMap, legs: Sequence[int], v: Vec) -> Vec:
    """Apply f to the chosen legs (0-based) of a vector.

    Arity-preserving maps may name legs in any order; each output leg
    replaces the input leg at the same ambient position.  Maps that change
    arity need strictly ascending legs: the named legs are removed and the
    codomain block is spliced in where the first of them sat.
    """
    dims = v.dims
    if tuple(dims[p] for p in legs) != f.dom:
        raise LegMismatch("chosen legs do not match map domain",
                          tuple(dims[p] for p in legs), f.dom)
    if len(f.dom) == len(f.cod):
        out_dims = list(dims)
        for pos, p in enumerate(legs):
            out_dims[p] = f.cod[pos]
        out_dims = tuple(out_dims)
        out: dict[int, Cyc] = {}
        for idx, c in v.data.items():
            multi = list(to_multi(idx, dims))
            sub = tuple(multi[p] for p in legs)
            col = f.cols.get(from_multi(sub, f.dom))
            if not col:
                continue
            for i, m in col.items():
                sub_out = to_multi(i, f.cod)
                multi_out = list(multi)
                for pos, p in enumerate(legs):
                    multi_out[p] = sub_out[pos]
                k = from_multi(multi_out, out_dims)
                s = out.get(k)
                p_ = m * c
                out[k] = p_ if s is None else s + p_
        return Vec(out_dims, out)
    if list(legs) != sorted(legs):
        raise LegMismatch("arity-changing apply_on_legs needs ascending legs")
    others = [p for p in range(len(dims)) if p not in legs]
    insert_at = sum(1 for p in others if p < legs[0])
    out_dims = tuple([dims[p] for p in others[:insert_at]] + list(f.cod)
                     + [dims[p] for p in others[insert_at:]])
    out = {}
    for idx, c in v.data.items():
        multi = to_multi(idx, dims)
        sub = tuple(multi[p] for p in legs)
        rest = [multi[p] for p in others]
        col = f.cols.get(from_multi(sub, f.dom))
        if not col:
            continue
        for i, m in col.items():
            multi_out = rest[:insert_at] + list(to_multi(i, f.cod)) + rest[insert_at:]
            k = from_multi(multi_out, out_dims)
            s = out.get(k)
            p_ = m * c
            out[k] = p_ if s is None else s + p_
    return Vec(out_dims, out)


# -- exact elimination ----------------------------------------------------


def _row_dicts(m: LinMap) -> dict[int, dict[int, Cyc]]:
    rows: dict[int, dict[int, Cyc]] = {}
    for i, j, v in m.entries():
        rows.setdefault(i, {})[j] = v
    return rows


class _Eliminator:
    """Reduced row echelon form over the exact scalar field.

    Rows are sparse dicts; a column-incidence index keeps pivot selection
    and elimination near-linear on permutation-like matrices.
    """

    def __init__(self, rows: dict[int, dict[int, Cyc]], ncols: int,
                 aug: dict[int, dict[int, Cyc]] | None = None):
        self.rows = {i: dict(r) for i, r in rows.items() if r}
        self.aug = {i: dict(r) for i, r in (aug or {}).items()}
        self.ncols = ncols
        self.incidence: dict[int, set[int]] = {}
        for i, r in self.rows.items():
            for j in r:
                self.incidence.setdefault(j, set()).add(i)
        self.pivots: list[tuple[int, int]] = []  # (row, col)
        self.used_rows: set[int] = set()

    def _addmul(self, target: int, source_row: dict, source_aug: dict, factor: Cyc):
        row = self.rows.setdefault(target, {})
        for j, v in source_row.items():
            s = row.get(j)
            t = factor * v if s is None else s + factor * v
            if t.is_zero():
                if s is not None:
                    del row[j]
                    self.incidence[j].discard(target)
            else:
                if s is None:
                    self.incidence.setdefault(j, set()).add(target)
                row[j] = t
        if source_aug:
            arow = self.aug.setdefault(target, {})
            for j, v in source_aug.items():
                s = arow.get(j)
                t = factor * v if s is None else s + factor * v
                if t.is_zero():
                    arow.pop(j, None)
                else:
                    arow[j] = t

    def run(self):
        for col in range(self.ncols):
            cand = [i for i in self.incidence.get(col, ()) if i not in self.used_rows]
            if not cand:
                continue
            piv = min(cand, key=lambda i: (len(self.rows[i]), i))
            prow = self.rows[piv]
            paug = self.aug.get(piv, {})
            inv = prow[col].inverse()
            if inv != 1:
                for j in list(prow):
                    prow[j] = inv * prow[j]
                for j in list(paug):
                    paug[j] = inv * paug[j]
            for i in list(self.incidence.get(col, ())):
                if i == piv:
                    continue
                fac = -self.rows[i][col]
                self._addmul(i, prow, paug, fac)
            self.pivots.append((piv, col))
            self.used_rows.add(piv)
        return self


def rank(m: LinMap) -> int:
    return len(_Eliminator(_row_dicts(m), m.dom_dim).run().pivots)


def kernel(m: LinMap) -> list[Vec]:
    """Exact basis of the null space."""
    elim = _Eliminator(_row_dicts(m), m.dom_dim).run()
    pivot_cols = {c: r for r, c in elim.pivots}
    free = [j for j in range(m.dom_dim) if j not in pivot_cols]
    basis = []
    for j in free:
        data = {j: Cyc.one()}
        for c, r in pivot_cols.items():
            v = elim.rows[r].get(j)
            if v is not None:
                data[c] = -v
        basis.append(Vec(m.dom, data))
    return basis


def solve_linear(m: LinMap, b: Vec) -> tuple[Vec | None, list[Vec]]:
    """Solve m x = b exactly.

    Returns (particular solution or None when inconsistent, kernel basis);
    an inconsistent system is thereby reported distinctly from a zero kernel.
    """
    if b.dims != m.cod:
        raise LegMismatch("right-hand side legs differ from codomain", b.dims, m.cod)
    rows = _row_dicts(m)
    aug = {i: {0: v} for i, v in b.data.items()}
    elim = _Eliminator(rows, m.dom_dim, aug).run()
    # inconsistency: some unused row still has an augmented entry
    for i, arow in elim.aug.items():
        if i not in elim.used_rows and arow and not elim.rows.get(i):
            return None, kernel(m)
    data = {}
    for r, c in elim.pivots:
        v = elim.aug.get(r, {}).get(0)
        if v is not None:
            data[c] = v
    return Vec(m.dom, data), kernel(m)


def _perm_sign(seq: list[int]) -> int:
    """Parity of the permutation i -> seq[i] of {0, ..., n-1}."""
    seen = [False] * len(seq)
    sign = 1
    for start in range(len(seq)):
        if seen[start]:
            continue
        length = 0
        cur = start
        while not seen[cur]:
            seen[cur] = True
            cur = seq[cur]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det(m: LinMap) -> Cyc:
    """Exact determinant by sparse forward elimination with pivot tracking."""
    n = m.dom_dim
    if m.cod_dim != n:
        raise LegMismatch("determinant of a non-square map")
    live = {i: dict(r) for i, r in _row_dicts(m).items()}
    if len(live) < n:
        return Cyc.zero()
    incidence: dict[int, set[int]] = {}
    for k, r in live.items():
        for j in r:
            incidence.setdefault(j, set()).add(k)
    acc = Cyc.one()
    used: set[int] = set()
    pivot_rows: list[int] = []
    for col in range(n):
        cand = [k for k in incidence.get(col, ()) if k not in used]
        if not cand:
            return Cyc.zero()
        piv = min(cand, key=lambda k: (len(live[k]), k))
        pval = live[piv][col]
        acc = acc * pval
        prow = live[piv]
        for k in list(incidence.get(col, ())):
            if k == piv or k in used:
                continue
            fac = -(live[k][col] / pval)
            row = live[k]
            for j, v in prow.items():
                s = row.get(j)
                t = fac * v if s is None else s + fac * v
                if t.is_zero():
                    if s is not None:
                        del row[j]
                        incidence[j].discard(k)
                else:
                    if s is None:
                        incidence.setdefault(j, set()).add(k)
                    row[j] = t
        used.add(piv)
        pivot_rows.append(piv)
    return acc * Cyc.rational(_perm_sign(pivot_rows))


def inverse(m: LinMap) -> LinMap:
    """Exact inverse; raises SingularMap (with kernel basis) if singular."""
    n = m.dom_dim
    if m.cod_dim != n:
        raise LegMismatch("inverse of a non-square map")
    rows = _row_dicts(m)
    aug = {i: {i: Cyc.one()} for i in range(n)}
    elim = _Eliminator(rows, n, aug).run()
    if len(elim.pivots) < n:
        raise SingularMap(f"map of dimension {n} has rank {len(elim.pivots)}",
                          kernel=kernel(m))
    cols: dict[int, dict[int, Cyc]] = {}
    for r, c in elim.pivots:
        for j, v in elim.aug.get(r, {}).items():
            cols.setdefault(j, {})[c] = v
    return LinMap(m.cod, m.dom, cols)


# -- float tier -------------------------------------------------------------


def rel_residual(a: np.ndarray, b: np.ndarray) -> float:
    """Max-norm difference relative to the operand scales."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(a), initial=0.0)),
                float(np.max(np.abs(b), initial=0.0)))
    return float(np.max(np.abs(a - b), initial=0.0)) / scale


def op_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(a, dtype=complex), 2))


def unitarity_defect(u: np.ndarray) -> float:
    u = np.asarray(u, dtype=complex)
    eye = np.eye(u.shape[0])
    return max(rel_residual(u.conj().T @ u, eye), rel_residual(u @ u.conj().T, eye))


def eigh_checked(h: np.ndarray, tol: float = 1e-10):
    """Hermitian eigendecomposition with reconstruction and unitarity checks."""
    h = np.asarray(h, dtype=complex)
    herm = rel_residual(h, h.conj().T)
    if herm > tol:
        raise ValueError(f"matrix is not Hermitian within {tol} (defect {herm:.3e})")
    w, u = np.linalg.eigh(h)
    if rel_residual(u @ np.diag(w) @ u.conj().T, h) > tol or unitarity_defect(u) > tol:
        raise ValueError("eigendecomposition failed the reconstruction tolerance")
    return w, u


def rank_f(a: np.ndarray, tol: float = 1e-8) -> int:
    a = np.asarray(a, dtype=complex)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0:
        return 0
    return int(np.sum(s > tol * max(1.0, s[0])))


def span_rank(mats: Sequence[np.ndarray], tol: float = 1e-8) -> int:
    """Rank of the linear span of a family of matrices."""
    if not mats:
        return 0
    stack = np.stack([np.asarray(m, dtype=complex).ravel() for m in mats])
    return rank_f(stack, tol)


def spans_equal(fam_a: Sequence[np.ndarray], fam_b: Sequence[np.ndarray],
                tol: float = 1e-8) -> bool:
    """Do two families of matrices span the same subspace?"""
    ra = span_rank(fam_a, tol)
    rb = span_rank(fam_b, tol)
    rab = span_rank(list(fam_a) + list(fam_b), tol)
    return ra == rb == rab


def project_span(basis: Sequence[np.ndarray], x: np.ndarray):
    """Least-squares coefficients of x in span(basis) and the max-norm
    relative residual of the projection."""
    cols = np.stack([np.asarray(b, dtype=complex).ravel() for b in basis], axis=1)
    vec = np.asarray(x, dtype=complex).ravel()
    coeffs, *_ = np.linalg.lstsq(cols, vec, rcond=None)
    resid = rel_residual(cols @ coeffs, vec)
    return coeffs, resid


def power_hermitian(h: np.ndarray, z: complex, tol: float = 1e-10) -> np.ndarray:
    """h^z for a positive definite Hermitian matrix, principal branch."""
    w, u = eigh_checked(h, tol)
    if np.min(w) <= 0:
        raise ValueError(f"matrix power of a non-positive operator (min eig {np.min(w):.3e})")
    wz = np.exp(z * np.log(w.astype(complex)))
    return u @ np.diag(wz) @ u.conj().T


def power_diagonalizable(x: np.ndarray, z: complex, tol: float = 1e-8) -> np.ndarray:
    """x^z for a diagonalizable matrix with strictly positive real spectrum."""
    x = np.asarray(x, dtype=complex)
    w, v = np.linalg.eig(x)
    if np.min(w.real) <= 0 or np.max(np.abs(w.imag)) > tol * max(1.0, np.max(np.abs(w))):
        raise ValueError("matrix power requires a positive real spectrum")
    wz = np.exp(z * np.log(w.real.astype(complex)))
    return v @ np.diag(wz) @ np.linalg.inv(v)


def joint_eigenbasis(x: np.ndarray, y: np.ndarray, tol: float = 1e-8):
    """Common orthonormal eigenbasis of two commuting Hermitian matrices.

    Returns (U, ok): ok is False when the pair fails to diagonalize
    simultaneously within tolerance.
    """
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    wx, ux = np.linalg.eigh((x + x.conj().T) / 2)
    scale = max(1.0, float(np.max(np.abs(wx))))
    u = np.array(ux)
    start = 0
    while start < len(wx):
        stop = start + 1
        while stop < len(wx) and abs(wx[stop] - wx[stop - 1]) <= tol * scale:
            stop += 1
        block = ux[:, start:stop]
        comp = block.conj().T @ y @ block
        _, v = np.linalg.eigh((comp + comp.conj().T) / 2)
        u[:, start:stop] = block @ v
        start = stop
    dx = u.conj().T @ x @ u
    dy = u.conj().T @ y @ u
    ok = (rel_residual(dx, np.diag(np.diag(dx))) <= tol
          and rel_residual(dy, np.diag(np.diag(dy))) <= tol)
    return u, ok

