"""Exact base fields: a large prime field or the rationals.

Matrices are python-flint objects (``nmod_mat`` or ``fmpq_mat``).  The
wrapper keeps the handful of operations the rest of the package needs
behind one interface so that the two modes are interchangeable.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

import flint

DEFAULT_PRIME = (1 << 62) - 57
RATIONAL_SAMPLE_BOUND = 1 << 20

PRIME = "prime-field"
RATIONALS = "rationals"


@dataclass(frozen=True)
class FieldConfig:
    mode: str = PRIME
    prime: int = DEFAULT_PRIME
    seed: int = 0

    def __post_init__(self):
        if self.mode not in (PRIME, RATIONALS):
            raise ValueError(f"unknown field mode {self.mode!r}")
        if self.mode == PRIME:
            if self.prime < (1 << 31) or self.prime >= (1 << 64):
                raise ValueError("prime must lie in [2^31, 2^64)")
            if not flint.fmpz(self.prime).is_prime():
                raise ValueError(f"{self.prime} is not prime")
        if not 0 <= self.seed < (1 << 64):
            raise ValueError("seed must be an unsigned 64-bit integer")

    def field(self) -> Field:
        return Field(self.mode, self.prime)

    def rng(self) -> random.Random:
        return random.Random(self.seed)


class Field:
    """Matrix factory and linear algebra for one exact field."""

    def __init__(self, mode: str = PRIME, prime: int = DEFAULT_PRIME):
        self.mode = mode
        self.prime = prime
        self.is_prime = mode == PRIME

    def __repr__(self):
        return f"Field({self.mode!r}, {self.prime if self.is_prime else 0})"

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.mode == other.mode
            and (not self.is_prime or self.prime == other.prime)
        )

    def __hash__(self):
        return hash((self.mode, self.prime if self.is_prime else 0))

    # -- scalars ------------------------------------------------------------

    def scalar(self, x):
        if self.is_prime:
            return flint.nmod(int(x) % self.prime, self.prime)
        if isinstance(x, Fraction):
            return flint.fmpq(x.numerator, x.denominator)
        return flint.fmpq(x)

    def random_scalar(self, rng: random.Random):
        if self.is_prime:
            return flint.nmod(rng.randrange(self.prime), self.prime)
        return flint.fmpq(rng.randint(-RATIONAL_SAMPLE_BOUND, RATIONAL_SAMPLE_BOUND))

    def is_zero(self, x) -> bool:
        return x == 0

    def to_python(self, x):
        """Plain int (prime mode, least residue) or Fraction."""
        if self.is_prime:
            return int(x)
        return Fraction(int(x.p), int(x.q))

    # -- matrix construction --------------------------------------------------

    def mat(self, rows: int, cols: int, entries: Sequence = ()):
        entries = list(entries)
        if not entries:
            entries = [0] * (rows * cols)
        if self.is_prime:
            return flint.nmod_mat(rows, cols, [int(e) % self.prime for e in entries], self.prime)
        return flint.fmpq_mat(rows, cols, [self.scalar(e) if isinstance(e, Fraction) else e for e in entries])

    def from_rows(self, rows: Sequence[Sequence], ncols: int | None = None):
        rows = [list(r) for r in rows]
        nc = ncols if ncols is not None else (len(rows[0]) if rows else 0)
        return self.mat(len(rows), nc, [e for r in rows for e in r])

    def zeros(self, rows: int, cols: int):
        return self.mat(rows, cols)

    def identity(self, n: int):
        return self.mat(n, n, [int(i == j) for i in range(n) for j in range(n)])

    def random_mat(self, rows: int, cols: int, rng: random.Random):
        if self.is_prime:
            p = self.prime
            return flint.nmod_mat(rows, cols, [rng.randrange(p) for _ in range(rows * cols)], p)
        b = RATIONAL_SAMPLE_BOUND
        return flint.fmpq_mat(rows, cols, [rng.randint(-b, b) for _ in range(rows * cols)])

    def entries(self, A) -> list[list]:
        """Entries as flint scalars, row by row."""
        return A.tolist()

    def to_python_rows(self, A) -> list[list]:
        return [[self.to_python(x) for x in row] for row in A.tolist()]

    def hstack(self, mats: Sequence, rows: int | None = None):
        mats = list(mats)
        if not mats:
            return self.zeros(rows or 0, 0)
        r = mats[0].nrows()
        lists = [m.tolist() for m in mats]
        cols = sum(m.ncols() for m in mats)
        ent = [x for i in range(r) for L in lists for x in L[i]]
        return self._raw(r, cols, ent)

    def vstack(self, mats: Sequence, cols: int | None = None):
        mats = list(mats)
        if not mats:
            return self.zeros(0, cols or 0)
        c = mats[0].ncols()
        ent = [x for m in mats for row in m.tolist() for x in row]
        return self._raw(sum(m.nrows() for m in mats), c, ent)

    def block(self, blocks: Sequence[Sequence]):
        """Assemble a 2x2-style block matrix from rows of blocks."""
        return self.vstack([self.hstack(row) for row in blocks])

    def _raw(self, r, c, ent):
        if self.is_prime:
            return flint.nmod_mat(r, c, [int(x) for x in ent], self.prime)
        return flint.fmpq_mat(r, c, ent)

    def submatrix(self, A, rows: Iterable[int] | None = None, cols: Iterable[int] | None = None):
        L = A.tolist()
        rr = list(range(A.nrows())) if rows is None else list(rows)
        cc = list(range(A.ncols())) if cols is None else list(cols)
        return self._raw(len(rr), len(cc), [L[i][j] for i in rr for j in cc])

    def row(self, A, i: int):
        return self.submatrix(A, [i], None)

    def lin_comb(self, coeffs: Sequence, mats: Sequence, rows: int, cols: int):
        out = self.zeros(rows, cols)
        for c, m in zip(coeffs, mats):
            out = out + m * c
        return out

    def equal(self, A, B) -> bool:
        return A.nrows() == B.nrows() and A.ncols() == B.ncols() and A == B

    def is_zero_mat(self, A) -> bool:
        if A.nrows() == 0 or A.ncols() == 0:
            return True
        return A == self.zeros(A.nrows(), A.ncols())

    # -- linear algebra ---------------------------------------------------------

    def rank(self, A) -> int:
        if A.nrows() == 0 or A.ncols() == 0:
            return 0
        return A.rank()

    def rref(self, A):
        """Reduced row echelon form and the list of pivot columns."""
        if A.nrows() == 0 or A.ncols() == 0:
            return A, []
        R, r = A.rref()
        L = R.tolist()
        pivots = []
        for i in range(r):
            row = L[i]
            j = next(j for j, x in enumerate(row) if x != 0)
            pivots.append(j)
        return R, pivots

    def nullspace(self, A):
        """Rows spanning ``{v : A v^T = 0}``, as a ``k x ncols`` matrix."""
        n = A.ncols()
        if A.nrows() == 0 or n == 0:
            return self.identity(n)
        R, pivots = self.rref(A)
        L = R.tolist()
        pivset = set(pivots)
        free = [j for j in range(n) if j not in pivset]
        ent = []
        zero = self.scalar(0)
        one = self.scalar(1)
        for f in free:
            v = [zero] * n
            v[f] = one
            for i, pcol in enumerate(pivots):
                v[pcol] = -L[i][f]
            ent.extend(v)
        return self._raw(len(free), n, ent)

    def left_nullspace(self, A):
        """Rows spanning ``{x : x A = 0}``."""
        return self.nullspace(A.transpose())

    def rowspace(self, A):
        """Rows of the reduced echelon form: a basis of the row space."""
        if A.nrows() == 0 or A.ncols() == 0:
            return self.zeros(0, A.ncols())
        R, pivots = self.rref(A)
        return self.submatrix(R, range(len(pivots)), None)

    def complement_rows(self, B):
        """Unit rows completing the row space of ``B`` to the whole space.

        ``B`` must have independent rows.
        """
        n = B.ncols()
        _, pivots = self.rref(B)
        ps = set(pivots)
        free = [j for j in range(n) if j not in ps]
        return self.mat(len(free), n, [int(j == f) for f in free for j in range(n)])

    def det(self, A):
        if A.nrows() != A.ncols():
            raise ValueError("determinant of a non-square matrix")
        if A.nrows() == 0:
            return self.scalar(1)
        return A.det()

    def inv(self, A):
        if A.nrows() == 0:
            return A
        return A.inv()

    def solve_left(self, A, B):
        """``X`` with ``X A = B`` (``A`` square invertible)."""
        if A.nrows() == 0:
            return self.zeros(B.nrows(), 0)
        return B * A.inv()

    def charpoly(self, A):
        if A.nrows() == 0:
            return self.poly([1])
        return A.charpoly()

    def poly(self, coeffs):
        if self.is_prime:
            return flint.nmod_poly([int(c) for c in coeffs], self.prime)
        return flint.fmpq_poly(list(coeffs))

    def poly_eval_mat(self, f, A):
        """Evaluate a polynomial at a square matrix by Horner's rule."""
        n = A.nrows()
        coeffs = f.coeffs()
        R = self.zeros(n, n)
        I = self.identity(n)
        for c in reversed(coeffs):
            R = R * A + I * c
        return R

    def factor(self, f):
        """Irreducible factors with multiplicity; prime mode only."""
        if not self.is_prime:
            raise NotImplementedError("factorization is only used over the prime field")
        _, facs = f.factor()
        return [(g, int(e)) for g, e in facs]
