"""Sparse text formats for check matrices: MacKay alist and MatrixMarket
coordinate pattern.  Both round-trip bit-exactly."""

from __future__ import annotations

import numpy as np

from .gf2 import BitMatrix


class FormatError(Exception):
    pass


def write_alist(m: BitMatrix) -> str:
    """MacKay alist: header "cols rows", max column/row weights, per-column
    weights, per-row weights, then 1-indexed per-column and per-row index
    lists (unpadded)."""
    dense = m.to_dense()
    col_lists = [list(np.nonzero(dense[:, j])[0] + 1) for j in range(m.cols)]
    row_lists = [list(np.nonzero(dense[i, :])[0] + 1) for i in range(m.rows)]
    col_w = [len(c) for c in col_lists]
    row_w = [len(r) for r in row_lists]
    lines = [
        f"{m.cols} {m.rows}",
        f"{max(col_w, default=0)} {max(row_w, default=0)}",
        " ".join(map(str, col_w)),
        " ".join(map(str, row_w)),
    ]
    lines += [" ".join(map(str, c)) for c in col_lists]
    lines += [" ".join(map(str, r)) for r in row_lists]
    return "\n".join(lines) + "\n"


def read_alist(text: str) -> BitMatrix:
    lines = [ln for ln in text.splitlines()]
    if len(lines) < 4:
        raise FormatError("alist: truncated header")
    try:
        cols, rows = map(int, lines[0].split())
        col_w = list(map(int, lines[2].split()))
        row_w = list(map(int, lines[3].split()))
    except ValueError as exc:
        raise FormatError(f"alist: bad header: {exc}") from exc
    if len(col_w) != cols or len(row_w) != rows:
        raise FormatError("alist: weight list lengths do not match header")
    if len(lines) < 4 + cols + rows:
        raise FormatError("alist: missing index lists")
    dense = np.zeros((rows, cols), dtype=np.uint8)
    for j in range(cols):
        idx = [int(v) for v in lines[4 + j].split() if int(v) != 0]
        if len(idx) != col_w[j]:
            raise FormatError(f"alist: column {j + 1} weight mismatch")
        for i in idx:
            dense[i - 1, j] = 1
    for i in range(rows):
        idx = [int(v) for v in lines[4 + cols + i].split() if int(v) != 0]
        if sorted(idx) != sorted(int(j + 1) for j in np.nonzero(dense[i])[0]):
            raise FormatError(f"alist: row {i + 1} inconsistent with columns")
    return BitMatrix.from_dense(dense)


MTX_HEADER = "%%MatrixMarket matrix coordinate pattern general"


def write_mtx(m: BitMatrix) -> str:
    dense = m.to_dense()
    rr, cc = np.nonzero(dense)
    lines = [MTX_HEADER, f"{m.rows} {m.cols} {len(rr)}"]
    lines += [f"{i + 1} {j + 1}" for i, j in zip(rr, cc)]
    return "\n".join(lines) + "\n"


def read_mtx(text: str) -> BitMatrix:
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("%")]
    if not lines:
        raise FormatError("mtx: empty input")
    if not text.lstrip().startswith("%%MatrixMarket"):
        raise FormatError("mtx: missing MatrixMarket banner")
    try:
        rows, cols, nnz = map(int, lines[0].split())
    except ValueError as exc:
        raise FormatError(f"mtx: bad size line: {exc}") from exc
    if len(lines) - 1 != nnz:
        raise FormatError(f"mtx: expected {nnz} entries, got {len(lines) - 1}")
    dense = np.zeros((rows, cols), dtype=np.uint8)
    for ln in lines[1:]:
        i, j = map(int, ln.split()[:2])
        if not (1 <= i <= rows and 1 <= j <= cols):
            raise FormatError(f"mtx: entry ({i},{j}) out of range")
        dense[i - 1, j - 1] = 1
    return BitMatrix.from_dense(dense)
