"""Exact linear algebra: GF(2) elimination on bit-packed rows, Smith form, signature."""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import UnsupportedInput


class SparseGF2Matrix:
    """Matrix over GF(2); row ``r`` is an int whose bit ``c`` is entry ``(r, c)``."""

    __slots__ = ("nrows", "ncols", "rows", "_cols")

    def __init__(self, nrows: int, ncols: int, rows: Optional[Sequence[int]] = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = list(rows) if rows is not None else [0] * nrows
        if len(self.rows) != nrows:
            raise UnsupportedInput(f"expected {nrows} rows, got {len(self.rows)}")
        limit = 1 << ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise UnsupportedInput("row has bits outside the column range")
        self._cols = None

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable[Tuple[int, int]]):
        """Build from (row, col) pairs; repeated pairs cancel mod 2."""
        rows = [0] * nrows
        for r, c in entries:
            rows[r] ^= 1 << c
        return cls(nrows, ncols, rows)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[int]):
        m = cls(nrows, len(columns), transpose_bits(columns, nrows))
        m._cols = list(columns)
        return m

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]]):
        nrows = len(dense)
        ncols = len(dense[0]) if nrows else 0
        rows = []
        for row in dense:
            v = 0
            for c, x in enumerate(row):
                if x % 2:
                    v |= 1 << c
            rows.append(v)
        return cls(nrows, ncols, rows)

    def columns(self) -> List[int]:
        if self._cols is None:
            self._cols = transpose_bits(self.rows, self.ncols)
        return self._cols

    def to_dense(self) -> List[List[int]]:
        return [[(r >> c) & 1 for c in range(self.ncols)] for r in self.rows]

    def matvec(self, x: int) -> int:
        """Image of the column vector ``x`` (bitmask over columns), as a bitmask over rows."""
        out = 0
        for i, r in enumerate(self.rows):
            if bin(r & x).count("1") & 1:
                out |= 1 << i
        return out

    def matmul(self, other: "SparseGF2Matrix") -> "SparseGF2Matrix":
        if self.ncols != other.nrows:
            raise UnsupportedInput("dimension mismatch in product")
        out = []
        for r in self.rows:
            acc = 0
            while r:
                low = r & -r
                acc ^= other.rows[low.bit_length() - 1]
                r ^= low
            out.append(acc)
        return SparseGF2Matrix(self.nrows, other.ncols, out)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def __repr__(self):
        return f"SparseGF2Matrix({self.nrows}x{self.ncols})"


def transpose_bits(vectors: Sequence[int], length: int) -> List[int]:
    out = [0] * length
    for j, v in enumerate(vectors):
        bit = 1 << j
        while v:
            low = v & -v
            out[low.bit_length() - 1] |= bit
            v ^= low
    return out


def _rank_of(vectors: Iterable[int]) -> int:
    pivots: Dict[int, int] = {}
    for v in vectors:
        while v:
            low = v & -v
            p = pivots.get(low)
            if p is None:
                pivots[low] = v
                break
            v ^= p
    return len(pivots)


def gf2_rank(m: SparseGF2Matrix) -> int:
    """Rank over GF(2), eliminating along whichever side is shorter."""
    if m.nrows <= m.ncols or m._cols is None:
        return _rank_of(m.rows)
    return _rank_of(m._cols)


def gf2_in_image(m: SparseGF2Matrix, v: int, vlen: Optional[int] = None) -> Tuple[bool, Optional[int]]:
    """Solve ``m x = v``; returns ``(True, x)`` or ``(False, None)``.

    ``v`` and ``x`` are bitmasks; ``vlen``, when given, must equal ``m.nrows``.
    """
    if vlen is not None and vlen != m.nrows:
        raise UnsupportedInput(f"vector length {vlen} does not match {m.nrows} rows")
    if v < 0 or v >> m.nrows:
        raise UnsupportedInput("vector has bits outside the row range")
    pivots: Dict[int, Tuple[int, int]] = {}
    for j, col in enumerate(m.columns()):
        combo = 1 << j
        while col:
            low = col & -col
            p = pivots.get(low)
            if p is None:
                pivots[low] = (col, combo)
                break
            col ^= p[0]
            combo ^= p[1]
    x = 0
    rest = v
    while rest:
        low = rest & -rest
        p = pivots.get(low)
        if p is None:
            return False, None
        rest ^= p[0]
        x ^= p[1]
    if m.matvec(x) != v:
        raise AssertionError("GF(2) witness failed verification")
    return True, x


def gf2_kernel_dim(m: SparseGF2Matrix) -> int:
    return m.ncols - gf2_rank(m)


@dataclass(frozen=True)
class IntSymMatrix:
    """Square symmetric integer matrix."""

    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise UnsupportedInput("matrix is not square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise UnsupportedInput(f"matrix not symmetric at ({i}, {j})")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    def tolist(self) -> List[List[int]]:
        return [list(r) for r in self.entries]


def int_det(a: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    m = [list(map(int, row)) for row in a]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SmithForm:
    """``U * A * V = D`` with ``D`` diagonal and ``diagonal[i] | diagonal[i+1]``."""

    diagonal: Tuple[int, ...]
    U: Tuple[Tuple[int, ...], ...]
    V: Tuple[Tuple[int, ...], ...]


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(a: Sequence[Sequence[int]]) -> SmithForm:
    m = [list(map(int, row)) for row in a]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    U = _eye(nr)
    V = _eye(nc)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        # row_dst += f * row_src
        m[dst] = [x + f * y for x, y in zip(m[dst], m[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for row in m:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    t = 0
    while t < min(nr, nc):
        nz = [(abs(m[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if m[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, nr):
                if m[i][t]:
                    add_row(i, t, -(m[i][t] // m[t][t]))
                    if m[i][t]:
                        swap_rows(t, i)
                        done = False
                        break
            if not done:
                continue
            for j in range(t + 1, nc):
                if m[t][j]:
                    add_col(j, t, -(m[t][j] // m[t][t]))
                    if m[t][j]:
                        swap_cols(t, j)
                        done = False
                        break
            if not done:
                continue
            # enforce divisibility of the remaining block
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if m[i][j] % m[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    diag = tuple(m[i][i] for i in range(min(nr, nc)))
    return SmithForm(diag, tuple(map(tuple, U)), tuple(map(tuple, V)))


def symmetric_signature(a) -> int:
    """Signature by exact congruence diagonalization over the rationals."""
    rows = a.entries if isinstance(a, IntSymMatrix) else a
    m = [[Fraction(x) for x in row] for row in rows]
    n = len(m)
    for i in range(n):
        for j in range(i):
            if m[i][j] != m[j][i]:
                raise UnsupportedInput("signature needs a symmetric matrix")
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if m[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and m[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # e_i -> e_i + e_j makes the diagonal entry 2 m[i][j] nonzero
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            piv = i
        p = m[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for r in active:
            f = m[r][piv] / p
            if f:
                for k in range(n):
                    m[r][k] -= f * m[piv][k]
                for k in range(n):
                    m[k][r] -= f * m[k][piv]
    return pos - neg
