"""Dense GF(2) linear algebra on bit-packed vectors and matrices.

Vectors and matrix rows are stored as Python integers (bit ``i`` is
coordinate ``i``), which gives word-parallel XOR for free.  Everything here
is a pure function on immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


class SingularMatrixError(ValueError):
    """Raised when a matrix that must be invertible is rank deficient."""


@dataclass(frozen=True)
class BitVector:
    """A length-``n`` vector over GF(2), packed into a single int."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("BitVector length must be >= 1")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError("bits out of range for length %d" % self.n)

    @classmethod
    def from_bits(cls, values: Iterable[int]) -> "BitVector":
        vals = list(values)
        acc = 0
        for i, v in enumerate(vals):
            if v not in (0, 1):
                raise ValueError("entries must be 0 or 1")
            acc |= v << i
        return cls(len(vals), acc)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return BitVector(self.n, self.bits ^ other.bits)

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.n)]

    def weight(self) -> int:
        return bin(self.bits).count("1")


@dataclass(frozen=True)
class BitMatrix:
    """A dense GF(2) matrix; each row is a packed int of ``cols`` bits."""

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be >= 1")
        if len(self.data) != self.rows:
            raise ValueError("row count does not match data")
        mask = (1 << self.cols) - 1
        for r in self.data:
            if r < 0 or r & ~mask:
                raise ValueError("row bits out of range")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "BitMatrix":
        packed = [BitVector.from_bits(r).bits for r in rows]
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(packed))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.data[i])

    def column_bits(self, c: int) -> int:
        """Column ``c`` packed over row indices."""
        acc = 0
        for j, r in enumerate(self.data):
            acc |= ((r >> c) & 1) << j
        return acc

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.cols, self.rows,
                         tuple(self.column_bits(c) for c in range(self.cols)))

    def to_lists(self) -> list[list[int]]:
        return [self.row(i).to_list() for i in range(self.rows)]

    def mat_mul(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = []
        for r in self.data:
            acc = 0
            rr = r
            while rr:
                j = (rr & -rr).bit_length() - 1
                acc ^= other.data[j]
                rr &= rr - 1
            out.append(acc)
        return BitMatrix(self.rows, other.cols, tuple(out))

    def vec_mul(self, v: BitVector) -> BitVector:
        """Row-vector product v . M."""
        if v.n != self.rows:
            raise ValueError("dimension mismatch")
        acc = 0
        vv = v.bits
        while vv:
            j = (vv & -vv).bit_length() - 1
            acc ^= self.data[j]
            vv &= vv - 1
        return BitVector(self.cols, acc)


@dataclass(frozen=True)
class LinearSystem:
    """A GF(2) linear system; one coefficient column per unknown.

    ``rhs`` may be omitted (symbolic right-hand side): solvability of an
    unknown never depends on the realized right-hand side, only on the
    coefficient rows.
    """

    coefficient: BitMatrix
    rhs: Optional[BitVector] = field(default=None)

    def __post_init__(self):
        if self.rhs is not None and self.rhs.n != self.coefficient.rows:
            raise ValueError("rhs length must equal equation count")

    @property
    def unknowns(self) -> int:
        return self.coefficient.cols


def kron_power(base: BitMatrix, m: int) -> BitMatrix:
    """m-fold Kronecker power of a 2x2 matrix; m = 0 gives the 1x1 identity."""
    if base.rows != 2 or base.cols != 2:
        raise ValueError("base must be 2x2")
    if m < 0:
        raise ValueError("exponent must be >= 0")
    # build A <- A (x) base; grouping is irrelevant for powers of one matrix
    rows = [1]
    cols = 1
    for _ in range(m):
        new_rows = []
        for r in rows:
            for i in range(2):
                acc = 0
                rr = r
                while rr:
                    j = (rr & -rr).bit_length() - 1
                    acc |= base.data[i] << (2 * j)
                    rr &= rr - 1
                new_rows.append(acc)
        rows = new_rows
        cols *= 2
    return BitMatrix(cols, cols, tuple(rows))


def boolean_product(a: BitVector, b: BitVector) -> BitVector:
    """Elementwise AND of two equal-length vectors."""
    if a.n != b.n:
        raise ValueError("length mismatch")
    return BitVector(a.n, a.bits & b.bits)


def _rref_insert(basis: dict[int, int], row: int) -> int:
    """Insert ``row`` into a reduced echelon basis (pivot = first set bit).

    The invariant maintained is that no basis row contains the pivot bit of
    another.  Returns the new pivot, or -1 if the row was dependent.
    Pivoting is by the first set bit; ties cannot occur over GF(2).
    """
    v = row
    pending = v
    while pending:
        b = (pending & -pending).bit_length() - 1
        if b in basis:
            v ^= basis[b]
            pending = v >> (b + 1) << (b + 1)
        else:
            pending &= pending - 1
    if not v:
        return -1
    b = (v & -v).bit_length() - 1
    for pb, pr in basis.items():
        if (pr >> b) & 1:
            basis[pb] = pr ^ v
    basis[b] = v
    return b


def _echelon(rows: Iterable[int]) -> list[int]:
    """Reduced row echelon form; zero rows dropped."""
    basis: dict[int, int] = {}
    for r in rows:
        _rref_insert(basis, r)
    return [basis[b] for b in sorted(basis)]


def rank(mat: BitMatrix) -> int:
    """GF(2) rank."""
    return len(_echelon(list(mat.data)))


def solvable_unknowns(sys: LinearSystem) -> set[int]:
    """Unknowns uniquely determined for every consistent right-hand side.

    Unknown ``j`` is determined iff the standard basis vector e_j lies in
    the row space of the coefficient matrix, i.e. iff the reduced row
    echelon form contains the row e_j itself.
    """
    reduced = _echelon(list(sys.coefficient.data))
    out = set()
    for r in reduced:
        if r & (r - 1) == 0:  # single set bit
            out.add(r.bit_length() - 1)
    return out


def invert(mat: BitMatrix) -> BitMatrix:
    """Inverse of a full-rank square matrix over GF(2)."""
    if mat.rows != mat.cols:
        raise SingularMatrixError("matrix is not square")
    n = mat.rows
    # augment each row with an identity tag in the high bits; pivots are
    # restricted to the low n bits, so a dependent row means singularity
    mask = (1 << n) - 1
    basis: dict[int, int] = {}
    for i in range(n):
        v = mat.data[i] | (1 << (n + i))
        pending = v & mask
        while pending:
            b = (pending & -pending).bit_length() - 1
            if b in basis:
                v ^= basis[b]
                pending = (v & mask) >> (b + 1) << (b + 1)
            else:
                pending &= pending - 1
        if not v & mask:
            raise SingularMatrixError("matrix is singular")
        b = ((v & mask) & -(v & mask)).bit_length() - 1
        for pb, pr in basis.items():
            if (pr >> b) & 1:
                basis[pb] = pr ^ v
        basis[b] = v
    return BitMatrix(n, n, tuple(basis[b] >> n for b in range(n)))
