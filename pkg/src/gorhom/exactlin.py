"""Exact dense linear algebra over prime fields F_p and the rationals.

Scalars are plain python ints for F_p (residues in [0, p)) and
`fractions.Fraction` for characteristic 0, so every result is exact and
runs are bit-reproducible.  Matrices are immutable tuples-of-tuples; all
operations are pure functions returning new values, which makes them safe
to call from concurrent tasks without coordination.

Everything is dense: the matrices in this project stay well below 1000
rows, so clarity wins over asymptotics.  Row reduction picks the first
nonzero entry as pivot, deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Optional, Sequence, Union

from .errors import InputShapeError

Scalar = Union[int, Fraction]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f <= isqrt(n):
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: F_p for a prime p, or the rationals when 0."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p == 0:
            return
        if p < 0 or p >= (1 << 31) or not _is_prime(p):
            raise ValueError(f"characteristic must be 0 or a prime < 2^31, got {p}")

    @property
    def p(self) -> int:
        return self.characteristic

    def zero(self) -> Scalar:
        return 0 if self.characteristic else Fraction(0)

    def one(self) -> Scalar:
        return 1 if self.characteristic else Fraction(1)

    def coerce(self, x) -> Scalar:
        """Bring an int/Fraction/str into canonical form for this field."""
        if isinstance(x, str):
            return self.parse(x)
        p = self.characteristic
        if p:
            if isinstance(x, Fraction):
                if x.denominator % p == 0:
                    raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
                return x.numerator * pow(x.denominator, -1, p) % p
            return int(x) % p
        return Fraction(x)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        p = self.characteristic
        return (a + b) % p if p else a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        p = self.characteristic
        return (a - b) % p if p else a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        p = self.characteristic
        return (a * b) % p if p else a * b

    def neg(self, a: Scalar) -> Scalar:
        p = self.characteristic
        return (-a) % p if p else -a

    def inv(self, a: Scalar) -> Scalar:
        p = self.characteristic
        if p:
            return pow(a, -1, p)
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def parse(self, text: str) -> Scalar:
        """Parse the scalar text encoding: "num/den" or "num"."""
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            value = Fraction(int(num), int(den))
        else:
            value = Fraction(int(text))
        return self.coerce(value)

    def format(self, x: Scalar) -> str:
        if isinstance(x, Fraction):
            if x.denominator == 1:
                return str(x.numerator)
            return f"{x.numerator}/{x.denominator}"
        return str(x)

    def __str__(self):
        return f"F_{self.characteristic}" if self.characteristic else "Q"


class Mat:
    """An immutable dense matrix over a fixed FieldSpec.

    Entries live in canonical form: residues in [0, p) for F_p, Fractions
    in lowest terms for the rationals (Fraction normalizes on
    construction, so lowest terms hold by construction).
    """

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: FieldSpec, data: Sequence[Sequence], cols: Optional[int] = None):
        rows = len(data)
        if rows:
            cols = len(data[0])
        elif cols is None:
            cols = 0
        canon = []
        for row in data:
            if len(row) != cols:
                raise InputShapeError("ragged rows")
            canon.append(tuple(field.coerce(x) for x in row))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", tuple(canon))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Mat is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zeros(field: FieldSpec, rows: int, cols: int) -> "Mat":
        z = field.zero()
        return Mat(field, [[z] * cols for _ in range(rows)], cols=cols)

    @staticmethod
    def identity(field: FieldSpec, n: int) -> "Mat":
        one, zero = field.one(), field.zero()
        return Mat(field, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @staticmethod
    def from_cols(field: FieldSpec, cols: Sequence[Sequence]) -> "Mat":
        if not cols:
            return Mat.zeros(field, 0, 0)
        n = len(cols[0])
        return Mat(field, [[col[i] for col in cols] for i in range(n)], cols=len(cols))

    @staticmethod
    def col_vector(field: FieldSpec, entries: Sequence) -> "Mat":
        return Mat(field, [[x] for x in entries])

    # -- basic queries -------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.field, self.data))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in row) for row in self.data)
        return f"Mat[{self.rows}x{self.cols}]({body})"

    def is_zero(self) -> bool:
        z = self.field.zero()
        return all(x == z for row in self.data for x in row)

    def entry(self, i: int, j: int) -> Scalar:
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def col(self, j: int) -> tuple:
        return tuple(row[j] for row in self.data)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        p = self.field.characteristic
        if p:
            rows = [[(a + b) % p for a, b in zip(r, s)] for r, s in zip(self.data, other.data)]
        else:
            rows = [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)]
        return Mat(self.field, rows, cols=self.cols)

    def __sub__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        p = self.field.characteristic
        if p:
            rows = [[(a - b) % p for a, b in zip(r, s)] for r, s in zip(self.data, other.data)]
        else:
            rows = [[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)]
        return Mat(self.field, rows, cols=self.cols)

    def __neg__(self) -> "Mat":
        p = self.field.characteristic
        if p:
            rows = [[(-a) % p for a in r] for r in self.data]
        else:
            rows = [[-a for a in r] for r in self.data]
        return Mat(self.field, rows, cols=self.cols)

    def scale(self, c) -> "Mat":
        c = self.field.coerce(c)
        p = self.field.characteristic
        if p:
            rows = [[(c * a) % p for a in r] for r in self.data]
        else:
            rows = [[c * a for a in r] for r in self.data]
        return Mat(self.field, rows, cols=self.cols)

    def __mul__(self, other: "Mat") -> "Mat":
        if not isinstance(other, Mat):
            return NotImplemented
        if self.cols != other.rows:
            raise InputShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return Mat.zeros(self.field, self.rows, other.cols)
        p = self.field.characteristic
        bt = list(zip(*other.data))  # columns of other
        out = []
        for row in self.data:
            if p:
                out.append([sum(a * b for a, b in zip(row, bc)) % p for bc in bt])
            else:
                out.append([sum((a * b for a, b in zip(row, bc)), Fraction(0)) for bc in bt])
        return Mat(self.field, out)

    def transpose(self) -> "Mat":
        if self.rows == 0 or self.cols == 0:
            return Mat.zeros(self.field, self.cols, self.rows)
        return Mat(self.field, list(zip(*self.data)))

    def hstack(self, other: "Mat") -> "Mat":
        if self.rows != other.rows:
            raise InputShapeError("hstack: row counts differ")
        if self.rows == 0:
            return Mat.zeros(self.field, 0, self.cols + other.cols)
        return Mat(self.field, [r + s for r, s in zip(self.data, other.data)])

    def vstack(self, other: "Mat") -> "Mat":
        if self.cols != other.cols:
            raise InputShapeError("vstack: column counts differ")
        return Mat(self.field, list(self.data) + list(other.data), cols=self.cols)

    def select_cols(self, idx: Iterable[int]) -> "Mat":
        idx = list(idx)
        if self.rows == 0 or not idx:
            return Mat.zeros(self.field, self.rows, len(idx))
        return Mat(self.field, [[row[j] for j in idx] for row in self.data])

    def _same_shape(self, other: "Mat"):
        if self.rows != other.rows or self.cols != other.cols:
            raise InputShapeError(f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    # -- derived queries -------------------------------------------------------

    def rank(self) -> int:
        return rref(self).rank

    def kernel_basis(self) -> "Mat":
        return solve(self, Mat.zeros(self.field, self.rows, 0)).kernel

    def inverse(self) -> "Mat":
        if self.rows != self.cols:
            raise InputShapeError("inverse of non-square matrix")
        res = solve(self, Mat.identity(self.field, self.rows))
        if res.particular is None or res.kernel.cols:
            raise InputShapeError("matrix is singular")
        return res.particular

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows


@dataclass(frozen=True)
class RrefResult:
    matrix: Mat
    pivots: tuple
    rank: int


def rref(m: Mat) -> RrefResult:
    """Unique reduced row echelon form, pivot columns, rank.

    Pivoting always takes the first nonzero entry in the current column,
    so the output is reproducible across runs.
    """
    p = m.field.characteristic
    if p == 2:
        return _rref_gf2(m)
    rows = [list(r) for r in m.data]
    nrows, ncols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        if p:
            inv = pow(rows[r][c], -1, p)
            rows[r] = [(x * inv) % p for x in rows[r]]
        else:
            inv = 1 / rows[r][c]
            rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                if p:
                    rows[i] = [(x - f * y) % p for x, y in zip(rows[i], prow)]
                else:
                    rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    out = Mat(m.field, rows) if nrows else m
    return RrefResult(out, tuple(pivots), len(pivots))


def _rref_gf2(m: Mat) -> RrefResult:
    # Rows packed into ints, bit j = column j; elimination is xor.
    nrows, ncols = m.rows, m.cols
    packed = []
    for row in m.data:
        acc = 0
        for j, x in enumerate(row):
            if x:
                acc |= 1 << j
        packed.append(acc)
    pivots = []
    r = 0
    for c in range(ncols):
        bit = 1 << c
        pr = next((i for i in range(r, nrows) if packed[i] & bit), None)
        if pr is None:
            continue
        packed[r], packed[pr] = packed[pr], packed[r]
        prow = packed[r]
        for i in range(nrows):
            if i != r and packed[i] & bit:
                packed[i] ^= prow
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    data = [[(acc >> j) & 1 for j in range(ncols)] for acc in packed]
    out = Mat(m.field, data) if nrows else m
    return RrefResult(out, tuple(pivots), len(pivots))


@dataclass(frozen=True)
class SolveResult:
    """Solution of a x = b: a particular solution (or None when some column
    of b is inconsistent, with per-column flags) plus a kernel basis."""

    particular: Optional[Mat]
    kernel: Mat
    column_consistent: tuple


def solve(a: Mat, b: Mat) -> SolveResult:
    """Solve a x = b exactly for every column of b.

    kernel columns span ker(a); dim ker = cols(a) - rank(a).  The
    particular solution is the one with zeros in all free coordinates.
    """
    if a.rows != b.rows:
        raise InputShapeError(f"solve: a has {a.rows} rows but b has {b.rows}")
    field = a.field
    aug = rref(a.hstack(b))
    R = aug.matrix
    n = a.cols
    pivots = [c for c in aug.pivots if c < n]
    consistent_all = all(c < n for c in aug.pivots)
    rank = len(pivots)
    free = [c for c in range(n) if c not in set(pivots)]

    zero, one = field.zero(), field.one()
    # Kernel basis: one column per free variable.
    kcols = []
    for f in free:
        v = [zero] * n
        v[f] = one
        for r_i, c in enumerate(pivots):
            v[c] = field.neg(R.entry(r_i, f))
        kcols.append(v)
    kernel = Mat.from_cols(field, kcols) if kcols else Mat.zeros(field, n, 0)

    # Per-column consistency: column k of b is consistent unless some row
    # with zero in the first n columns has a nonzero entry at position n+k.
    bad = [False] * b.cols
    for r_i in range(rank, R.rows):
        if all(R.entry(r_i, c) == zero for c in range(n)):
            for k in range(b.cols):
                if R.entry(r_i, n + k) != zero:
                    bad[k] = True
    column_consistent = tuple(not x for x in bad)

    particular = None
    if consistent_all:
        pcols = []
        for k in range(b.cols):
            v = [zero] * n
            for r_i, c in enumerate(pivots):
                v[c] = R.entry(r_i, n + k)
            pcols.append(v)
        particular = Mat.from_cols(field, pcols) if pcols else Mat.zeros(field, n, 0)
    return SolveResult(particular, kernel, column_consistent)


def fraction_free_rank(m: Mat) -> int:
    """Rank by Bareiss-style fraction-free elimination.

    Independent of rref on purpose: it is the second elimination route used
    to cross-check rank computations.  Over F_p divisions are exact field
    divisions; over Q the matrix is cleared to integers first and the
    classical two-step division stays in Z throughout.
    """
    p = m.field.characteristic
    if m.rows == 0 or m.cols == 0:
        return 0
    if p:
        rows = [[int(x) for x in row] for row in m.data]

        def div(x, d):
            return (x * pow(d, -1, p)) % p
    else:
        rows = []
        for row in m.data:
            den = 1
            for x in row:
                den = den * x.denominator // _gcd(den, x.denominator)
            rows.append([int(x * den) for x in row])

        def div(x, d):
            q, r = divmod(x, d)
            assert r == 0, "Bareiss division must be exact"
            return q

    nrows, ncols = len(rows), len(rows[0])
    rank = 0
    prev = 1
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            fi = rows[i][c]
            rows[i] = [div(piv * rows[i][j] - fi * rows[r][j], prev) for j in range(ncols)]
            if p:
                rows[i] = [x % p for x in rows[i]]
        prev = piv
        rank += 1
        r += 1
        if r == nrows:
            break
    return rank


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a) or 1


def kron(a: Mat, b: Mat) -> Mat:
    """Kronecker product, used to vectorize intertwiner equations."""
    field = a.field
    p = field.characteristic
    out = []
    for ar in a.data:
        for br in b.data:
            row = []
            for x in ar:
                if p:
                    row.extend((x * y) % p for y in br)
                else:
                    row.extend(x * y for y in br)
            out.append(row)
    if not out:
        return Mat.zeros(field, a.rows * b.rows, a.cols * b.cols)
    return Mat(field, out)


def vec(m: Mat) -> Mat:
    """Column-stacking vectorization: vec(m) lists columns top to bottom."""
    entries = [m.entry(i, j) for j in range(m.cols) for i in range(m.rows)]
    return Mat.col_vector(m.field, entries) if entries else Mat.zeros(m.field, 0, 1)


def unvec(field: FieldSpec, v: Sequence, rows: int, cols: int) -> Mat:
    """Inverse of vec for a flat column-major sequence."""
    if rows * cols == 0:
        return Mat.zeros(field, rows, cols)
    return Mat(field, [[v[j * rows + i] for j in range(cols)] for i in range(rows)])
