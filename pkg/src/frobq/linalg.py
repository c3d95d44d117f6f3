"""Exact scalar arithmetic and sparse exact linear algebra.

Everything here is exact: rationals are arbitrary-precision fractions and
prime fields are residues with modular inverses.  No floating point is
used anywhere in the package.
"""

from fractions import Fraction

from .errors import ValidationError


class FpElement:
    """An element of the prime field F_p.

    Supports the same operators as Fraction so the elimination code is
    field-agnostic.
    """

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ValidationError(f"mixed prime fields F_{self.p} and F_{other.p}")
            return other
        if isinstance(other, int):
            return FpElement(other, self.p)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FpElement(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FpElement(self.value - other.value, self.p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FpElement(other.value - self.value, self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FpElement(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.value == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return FpElement(self.value * pow(other.value, -1, self.p), self.p)

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


class RationalField:
    """The field of rationals with exact Fraction arithmetic."""

    name = "Q"

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def scalar(self, num, den=1):
        return Fraction(num, den)

    def contains(self, x):
        return isinstance(x, (Fraction, int))

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise ValidationError(f"not a rational scalar: {x!r}")

    def parse(self, text):
        try:
            if "/" in text:
                num, den = text.split("/", 1)
                return Fraction(int(num), int(den))
            return Fraction(int(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad rational literal {text!r}: {exc}") from None

    def format(self, x):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def pivot_key(self, x):
        # Smallest nonzero magnitude keeps intermediate numerators modest.
        return abs(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The prime field F_p behind the same interface as the rationals."""

    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValidationError(f"modulus must be prime: {p}")
        self.p = p
        self.name = f"F{p}"

    @property
    def zero(self):
        return FpElement(0, self.p)

    @property
    def one(self):
        return FpElement(1, self.p)

    def scalar(self, num, den=1):
        return FpElement(num, self.p) / FpElement(den, self.p)

    def contains(self, x):
        return isinstance(x, int) or (isinstance(x, FpElement) and x.p == self.p)

    def coerce(self, x):
        if isinstance(x, FpElement):
            if x.p != self.p:
                raise ValidationError(f"scalar from F_{x.p} used in F_{self.p}")
            return x
        if isinstance(x, int):
            return FpElement(x, self.p)
        if isinstance(x, Fraction):
            return self.scalar(x.numerator, x.denominator)
        raise ValidationError(f"not an F_{self.p} scalar: {x!r}")

    def parse(self, text):
        try:
            if "/" in text:
                num, den = text.split("/", 1)
                return self.scalar(int(num), int(den))
            return FpElement(int(text), self.p)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad scalar literal {text!r}: {exc}") from None

    def format(self, x):
        return str(x.value)

    def pivot_key(self, x):
        return x.value

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


class SparseMatrix:
    """An immutable sparse matrix over one fixed field."""

    def __init__(self, nrows, ncols, entries, field=QQ):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        self.entries = {}
        for (i, j), value in entries.items():
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise ValidationError(f"entry index out of range: ({i}, {j})")
            value = field.coerce(value)
            if value != field.zero:
                self.entries[(i, j)] = value

    @classmethod
    def from_rows(cls, rows, ncols, field=QQ):
        """rows: iterable of sparse {column: scalar} dictionaries."""
        entries = {}
        rows = list(rows)
        for i, row in enumerate(rows):
            for j, value in row.items():
                entries[(i, j)] = value
        return cls(len(rows), ncols, entries, field)

    def row_dicts(self):
        rows = [{} for _ in range(self.nrows)]
        for (i, j), value in self.entries.items():
            rows[i][j] = value
        return rows

    def apply(self, vector):
        """Multiply by a sparse column vector given as {column: scalar}."""
        result = {}
        for (i, j), value in self.entries.items():
            if j in vector:
                result[i] = result.get(i, self.field.zero) + value * vector[j]
        return {i: v for i, v in result.items() if v != self.field.zero}

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.field == other.field
                and self.entries == other.entries)


class KernelBasis:
    """A basis of the null space; vectors are sparse {column: scalar} maps."""

    def __init__(self, dimension, vectors):
        self.dimension = dimension
        self.vectors = list(vectors)


def rref(matrix: SparseMatrix):
    """Reduced row echelon form and its pivot columns.

    The result is the canonical RREF, hence independent of the pivot row
    choice; rows are selected by smallest magnitude to limit coefficient
    blow-up over the rationals.
    """
    field = matrix.field
    zero = field.zero
    rows = matrix.row_dicts()
    pivots = []
    rank = 0
    for col in range(matrix.ncols):
        best = None
        for i in range(rank, len(rows)):
            value = rows[i].get(col)
            if value is not None and value != zero:
                key = field.pivot_key(value)
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            continue
        i = best[1]
        rows[rank], rows[i] = rows[i], rows[rank]
        pivot_value = rows[rank][col]
        if pivot_value != field.one:
            rows[rank] = {j: v / pivot_value for j, v in rows[rank].items()}
        pivot_row = rows[rank]
        for k in range(len(rows)):
            if k == rank:
                continue
            factor = rows[k].get(col)
            if factor is None or factor == zero:
                continue
            row = rows[k]
            for j, v in pivot_row.items():
                new = row.get(j, zero) - factor * v
                if new == zero:
                    row.pop(j, None)
                else:
                    row[j] = new
        pivots.append(col)
        rank += 1
    reduced = SparseMatrix.from_rows(rows, matrix.ncols, field)
    return reduced, pivots


def rank(matrix: SparseMatrix) -> int:
    _, pivots = rref(matrix)
    return len(pivots)


def kernel_basis(matrix: SparseMatrix) -> KernelBasis:
    """Canonical kernel basis: one free column set to 1 per non-pivot column."""
    field = matrix.field
    reduced, pivots = rref(matrix)
    pivot_of_row = {i: c for i, c in enumerate(pivots)}
    rows = reduced.row_dicts()[: len(pivots)]
    pivot_set = set(pivots)
    vectors = []
    for col in range(matrix.ncols):
        if col in pivot_set:
            continue
        vec = {col: field.one}
        for i, row in enumerate(rows):
            value = row.get(col)
            if value is not None and value != field.zero:
                vec[pivot_of_row[i]] = -value
        vectors.append(vec)
    return KernelBasis(len(vectors), vectors)
