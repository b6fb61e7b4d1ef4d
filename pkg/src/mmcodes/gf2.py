"""Dense GF(2) linear algebra on bit-packed matrices.

Rows are packed into uint64 words, LSB-first within each word; padding bits
beyond ``cols`` are always zero.  Matrices are immutable after construction
and safe to share across threads read-only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

WORD = 64


class GF2Error(Exception):
    pass


class DimensionMismatch(GF2Error):
    """Raised when two operands have incompatible shapes."""

    def __init__(self, op: str, shape_a, shape_b):
        self.op = op
        self.shape_a = tuple(shape_a)
        self.shape_b = tuple(shape_b)
        super().__init__(f"{op}: incompatible shapes {self.shape_a} and {self.shape_b}")


def _nwords(cols: int) -> int:
    return max(1, (cols + WORD - 1) // WORD)


def _popcount(words: np.ndarray) -> np.ndarray:
    return np.bitwise_count(words)


class BitMatrix:
    """An immutable rows x cols matrix over GF(2), rows bit-packed in uint64."""

    __slots__ = ("rows", "cols", "words")

    def __init__(self, rows: int, cols: int, words: np.ndarray):
        if rows < 0 or cols < 0:
            raise GF2Error(f"negative dimensions {rows}x{cols}")
        assert words.shape == (rows, _nwords(cols))
        self.rows = rows
        self.cols = cols
        self.words = words
        self._mask_padding()
        self.words.flags.writeable = False

    def _mask_padding(self):
        rem = self.cols % WORD
        if rem and self.rows:
            self.words[:, -1] &= np.uint64((1 << rem) - 1)
        if self.cols == 0:
            self.words[:] = 0

    # ---- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, np.zeros((rows, _nwords(cols)), dtype=np.uint64))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        w = np.zeros((n, _nwords(n)), dtype=np.uint64)
        for i in range(n):
            w[i, i // WORD] = np.uint64(1) << np.uint64(i % WORD)
        return cls(n, n, w)

    @classmethod
    def from_dense(cls, dense) -> "BitMatrix":
        arr = np.asarray(dense, dtype=np.uint8) % 2
        if arr.ndim != 2:
            raise GF2Error("from_dense expects a 2-D array")
        rows, cols = arr.shape
        nw = _nwords(cols)
        padded = np.zeros((rows, nw * 8), dtype=np.uint8)
        if cols:
            padded[:, : (cols + 7) // 8] = np.packbits(arr, axis=1, bitorder="little")
        words = padded.view(np.uint64).reshape(rows, nw).copy()
        return cls(rows, cols, words)

    @classmethod
    def from_row_ints(cls, row_ints, cols: int) -> "BitMatrix":
        nw = _nwords(cols)
        words = np.zeros((len(row_ints), nw), dtype=np.uint64)
        mask = (1 << WORD) - 1
        for i, r in enumerate(row_ints):
            j = 0
            while r:
                words[i, j] = r & mask
                r >>= WORD
                j += 1
        return cls(len(row_ints), cols, words)

    # ---- accessors ----------------------------------------------------

    def get(self, i: int, j: int) -> int:
        return int((self.words[i, j // WORD] >> np.uint64(j % WORD)) & np.uint64(1))

    def to_dense(self) -> np.ndarray:
        if self.cols == 0 or self.rows == 0:
            return np.zeros((self.rows, self.cols), dtype=np.uint8)
        bits = np.unpackbits(
            self.words.view(np.uint8).reshape(self.rows, -1), axis=1, bitorder="little"
        )
        return bits[:, : self.cols]

    def row_int(self, i: int) -> int:
        v = 0
        for j in range(self.words.shape[1] - 1, -1, -1):
            v = (v << WORD) | int(self.words[i, j])
        return v

    def row_ints(self) -> list[int]:
        return [self.row_int(i) for i in range(self.rows)]

    def col_ints(self) -> list[int]:
        return transpose(self).row_ints()

    def row_weights(self) -> np.ndarray:
        if self.rows == 0:
            return np.zeros(0, dtype=np.int64)
        return _popcount(self.words).sum(axis=1).astype(np.int64)

    def is_zero(self) -> bool:
        return not self.words.any()

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def tobytes(self) -> bytes:
        """Canonical byte serialization: dims header plus packed row bytes."""
        nbytes = (self.cols + 7) // 8
        body = self.words.view(np.uint8).reshape(self.rows, -1)[:, :nbytes].tobytes()
        return f"{self.rows}x{self.cols}:".encode() + body

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.shape == other.shape
            and bool(np.array_equal(self.words, other.words))
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.words.tobytes()))

    def __repr__(self):
        return f"BitMatrix({self.rows}x{self.cols})"


@dataclass(frozen=True)
class RrefCache:
    """Reduced row-echelon form of a matrix plus pivot bookkeeping.

    Membership queries reduce a vector against the pivot rows, costing
    O(rank) row XORs.
    """

    rref: BitMatrix
    pivot_cols: tuple[int, ...]
    rank: int

    def __post_init__(self):
        object.__setattr__(self, "_pivot_rows_int", self.rref.row_ints()[: self.rank])


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Product over GF(2).  Each output row is the XOR of the rows of ``b``
    selected by the bits of the corresponding row of ``a``."""
    if a.cols != b.rows:
        raise DimensionMismatch("mat_mul", a.shape, b.shape)
    out = np.zeros((a.rows, _nwords(b.cols)), dtype=np.uint64)
    if a.rows and b.rows and b.cols:
        abits = a.to_dense().astype(bool)
        for i in range(a.rows):
            sel = abits[i]
            if sel.any():
                out[i] = np.bitwise_xor.reduce(b.words[sel], axis=0)
    return BitMatrix(a.rows, b.cols, out)


def transpose(a: BitMatrix) -> BitMatrix:
    return BitMatrix.from_dense(a.to_dense().T)


def rref(a: BitMatrix) -> RrefCache:
    """Gauss-Jordan elimination over GF(2), word-parallel row XORs."""
    words = a.words.copy()
    words.flags.writeable = True
    pivots: list[int] = []
    r = 0
    for c in range(a.cols):
        if r >= a.rows:
            break
        w, b = c // WORD, np.uint64(c % WORD)
        colbits = (words[r:, w] >> b) & np.uint64(1)
        nz = np.nonzero(colbits)[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            words[[r, p]] = words[[p, r]]
        mask = ((words[:, w] >> b) & np.uint64(1)).astype(bool)
        mask[r] = False
        if mask.any():
            words[mask] ^= words[r]
        pivots.append(c)
        r += 1
    reduced = BitMatrix(a.rows, a.cols, words)
    return RrefCache(rref=reduced, pivot_cols=tuple(pivots), rank=r)


def rank(a: BitMatrix) -> int:
    return rref(a).rank


def kernel_basis(a: BitMatrix) -> BitMatrix:
    """Rows form a basis of the right null space {v : a v^T = 0}."""
    cache = rref(a)
    pivot_set = set(cache.pivot_cols)
    free_cols = [c for c in range(a.cols) if c not in pivot_set]
    dense = cache.rref.to_dense()
    basis = np.zeros((len(free_cols), a.cols), dtype=np.uint8)
    for i, f in enumerate(free_cols):
        basis[i, f] = 1
        for r, c in enumerate(cache.pivot_cols):
            if dense[r, f]:
                basis[i, c] = 1
    return BitMatrix.from_dense(basis)


def in_rowspace(cache: RrefCache, v) -> bool:
    """True iff ``v`` is a GF(2) combination of the cached rows.

    ``v`` may be a Python-int bitset or any 0/1 sequence of length cols.
    """
    if isinstance(v, int):
        x = v
        if x.bit_length() > cache.rref.cols:
            raise DimensionMismatch(
                "in_rowspace", (cache.rref.cols,), (x.bit_length(),)
            )
    else:
        vv = np.asarray(v, dtype=np.uint8) % 2
        if vv.shape != (cache.rref.cols,):
            raise DimensionMismatch("in_rowspace", (cache.rref.cols,), vv.shape)
        x = int.from_bytes(
            np.packbits(vv, bitorder="little").tobytes(), "little"
        )
    rows = cache._pivot_rows_int
    for i, c in enumerate(cache.pivot_cols):
        if (x >> c) & 1:
            x ^= rows[i]
    return x == 0


def vstack(mats: list[BitMatrix]) -> BitMatrix:
    cols = mats[0].cols
    for m in mats:
        if m.cols != cols:
            raise DimensionMismatch("vstack", (cols,), m.shape)
    words = np.vstack([m.words for m in mats])
    return BitMatrix(sum(m.rows for m in mats), cols, words.copy())
