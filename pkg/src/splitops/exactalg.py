"""Exact scalars and dense linear algebra over Q and Q(l).

Everything downstream (relation subspaces, annihilators, operator
verification) reduces to linear algebra over the rationals or over the
field Q(l) of rational functions in one formal weight parameter, written
``l`` in serialized form.  No floating point is used anywhere.

Scalars come in two kinds that are never mixed inside one matrix:

* plain rationals, represented by :class:`fractions.Fraction`;
* rational functions, represented by :class:`RatFunc` (reduced fraction
  of polynomials, monic denominator, so equal values have identical
  representations).

Row reduction is deterministic - first nonzero column, topmost unreduced
row - which makes the reduced row-echelon form of a subspace a canonical
object; two subspaces are equal iff their basis matrices are equal.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union


class ExactAlgebraError(Exception):
    """Base class for errors raised by this package."""


class ScalarKindMismatch(ExactAlgebraError):
    pass


class DimensionMismatch(ExactAlgebraError):
    pass


QQ = Fraction

# ---------------------------------------------------------------------------
# polynomials over Q, as tuples of Fractions in ascending degree


def _ptrim(c: list) -> tuple:
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def _padd(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _ptrim(out)


def _pneg(a: tuple) -> tuple:
    return tuple(-x for x in a)


def _pmul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _ptrim(out)


def _pdivmod(a: tuple, b: tuple) -> tuple:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    inv = 1 / b[-1]
    while len(r) >= len(b):
        c = r[-1] * inv
        d = len(r) - len(b)
        q[d] = c
        for i, y in enumerate(b):
            r[d + i] -= c * y
        del r[-1]
        while r and not r[-1]:
            del r[-1]
    return _ptrim(q), _ptrim(r)


def _pgcd(a: tuple, b: tuple) -> tuple:
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if a and a[-1] != 1:
        inv = 1 / a[-1]
        a = tuple(x * inv for x in a)
    return a


def _pmonic(a: tuple) -> tuple[tuple, Fraction]:
    """Return (a/lead, lead)."""
    lead = a[-1]
    if lead == 1:
        return a, lead
    inv = 1 / lead
    return tuple(x * inv for x in a), lead


_PONE = (Fraction(1),)


class RatFunc:
    """A reduced rational function in the formal weight, over Q.

    Canonical form: gcd(num, den) = 1 and den monic, so ``==`` on values
    coincides with ``==`` on representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, RatFunc):
            if den is not None:
                raise TypeError("RatFunc(num) takes no denominator")
            self.num, self.den = num.num, num.den
            return
        n = self._coerce_poly(num)
        d = _PONE if den is None else self._coerce_poly(den)
        if not d:
            raise ZeroDivisionError("rational function with zero denominator")
        if n:
            g = _pgcd(n, d)
            if len(g) > 1:
                n = _pdivmod(n, g)[0]
                d = _pdivmod(d, g)[0]
            d, lead = _pmonic(d)
            if lead != 1:
                inv = 1 / lead
                n = tuple(x * inv for x in n)
        else:
            d = _PONE
        self.num = n
        self.den = d

    @staticmethod
    def _coerce_poly(v) -> tuple:
        if isinstance(v, (int, Fraction)):
            f = Fraction(v)
            return (f,) if f else ()
        if isinstance(v, Iterable):
            return _ptrim([Fraction(x) for x in v])
        raise TypeError(f"cannot build polynomial from {v!r}")

    @classmethod
    def _raw(cls, num: tuple, den: tuple) -> "RatFunc":
        out = object.__new__(cls)
        out.num, out.den = num, den
        return out

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.den == _PONE and len(self.num) <= 1:
            return hash(self.num[0] if self.num else Fraction(0))
        return hash((self.num, self.den))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc(other)
        elif not isinstance(other, RatFunc):
            return NotImplemented
        if self.den == _PONE and other.den == _PONE:
            return RatFunc._raw(_padd(self.num, other.num), _PONE)
        return RatFunc(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(_pneg(self.num), self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc(other)
        elif not isinstance(other, RatFunc):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc(other)
        elif not isinstance(other, RatFunc):
            return NotImplemented
        if not self.num or not other.num:
            return RF_ZERO
        if self.den == _PONE and other.den == _PONE:
            return RatFunc._raw(_pmul(self.num, other.num), _PONE)
        return RatFunc(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc(other)
        elif not isinstance(other, RatFunc):
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def __rtruediv__(self, other):
        return RatFunc(other) / self

    def is_rational(self) -> bool:
        return self.den == _PONE and len(self.num) <= 1

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not a constant")
        return self.num[0] if self.num else Fraction(0)

    def evaluate(self, value: Fraction) -> Fraction:
        """Evaluate at a rational point; the denominator must not vanish."""
        value = Fraction(value)
        den = _peval(self.den, value)
        if den == 0:
            raise ZeroDivisionError(f"denominator of {self} vanishes at {value}")
        return _peval(self.num, value) / den

    def __repr__(self):
        return f"RatFunc({format_scalar(self)!r})"


def _peval(p: tuple, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


RF_ZERO = RatFunc(0)
RF_ONE = RatFunc(1)
LAMBDA = RatFunc._raw((Fraction(0), Fraction(1)), _PONE)

Scalar = Union[Fraction, RatFunc]


def scalar_kind(x) -> str:
    if isinstance(x, (Fraction, int)):
        return "q"
    if isinstance(x, RatFunc):
        return "ql"
    raise ScalarKindMismatch(f"not a scalar: {x!r}")


# ---------------------------------------------------------------------------
# serialization: "p/q", "p", "(poly)/(poly)" with variable literal "l"


def format_scalar(x: Scalar) -> str:
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, RatFunc):
        return f"({_format_poly(x.num)})/({_format_poly(x.den)})"
    raise ScalarKindMismatch(f"not a scalar: {x!r}")


def _format_poly(p: tuple) -> str:
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if not c:
            continue
        if k == 0:
            mono = ""
        elif k == 1:
            mono = "l"
        else:
            mono = f"l^{k}"
        if not mono:
            body = format_scalar(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{format_scalar(abs(c))}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    sign, first = parts[0]
    text = ("-" if sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += sign + body
    return text


def parse_scalar(text: str) -> Scalar:
    """Inverse of :func:`format_scalar`."""
    text = text.strip()
    if text.startswith("("):
        mid = text.index(")/(")
        return RatFunc(_parse_poly(text[1:mid]), _parse_poly(text[mid + 3 : -1]))
    return Fraction(text)


def _parse_poly(text: str) -> tuple:
    text = text.strip().replace("-", "+-")
    coeffs: dict[int, Fraction] = {}
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        sign = Fraction(1)
        if chunk.startswith("-"):
            sign = Fraction(-1)
            chunk = chunk[1:]
        if "l" in chunk:
            coef_s, _, tail = chunk.partition("l")
            coef = Fraction(coef_s.rstrip("*")) if coef_s.rstrip("*") else Fraction(1)
            deg = int(tail[1:]) if tail.startswith("^") else 1
        else:
            coef, deg = Fraction(chunk), 0
        coeffs[deg] = coeffs.get(deg, Fraction(0)) + sign * coef
    out = [Fraction(0)] * (max(coeffs, default=0) + 1)
    for d, c in coeffs.items():
        out[d] = c
    return _ptrim(out)


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """Immutable dense matrix over one scalar kind."""

    __slots__ = ("rows", "nrows", "ncols", "kind")

    def __init__(self, rows: Sequence[Sequence], ncols: int | None = None):
        rows = [list(r) for r in rows]
        if rows:
            width = len(rows[0])
        elif ncols is not None:
            width = ncols
        else:
            raise DimensionMismatch("empty matrix needs an explicit column count")
        kind = None
        for r in rows:
            if len(r) != width:
                raise DimensionMismatch("ragged rows")
            for x in r:
                k = scalar_kind(x)
                if kind is None:
                    kind = k
                elif kind != k:
                    raise ScalarKindMismatch("scalar kind mismatch")
        if kind is None:
            kind = "q"
        if kind == "q":
            rows = [[Fraction(x) for x in r] for r in rows]
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(rows)
        self.ncols = width
        self.kind = kind

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "Matrix":
        return cls([[Fraction(0)] * ncols for _ in range(nrows)], ncols=ncols)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ncols, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(format_scalar(x) for x in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: {body})"

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def transpose(self) -> "Matrix":
        return Matrix(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            ncols=self.nrows,
        )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch("matrix product shape mismatch")
        bt = other.transpose().rows
        return Matrix(
            [[_dot(r, c) for c in bt] for r in self.rows], ncols=other.ncols
        )

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.ncols:
            raise DimensionMismatch("vector length mismatch")
        return tuple(_dot(r, vec) for r in self.rows)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product, row-major index pairing."""
        out = []
        for a in self.rows:
            for c in other.rows:
                out.append([x * y for x in a for y in c])
        return Matrix(out, ncols=self.ncols * other.ncols)

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise DimensionMismatch("only square matrices invert")
        n = self.nrows
        aug = Matrix(
            [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)],
            ncols=2 * n,
        )
        red, pivots, rank = rref(aug)
        if rank < n or any(p >= n for p in pivots[:n]):
            raise ExactAlgebraError("matrix is singular")
        return Matrix([r[n:] for r in red.rows], ncols=n)

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)


def _dot(a: Sequence, b: Sequence):
    acc = None
    for x, y in zip(a, b):
        t = x * y
        acc = t if acc is None else acc + t
    if acc is None:
        raise DimensionMismatch("empty dot product")
    return acc


# ---------------------------------------------------------------------------
# row reduction


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...], int]:
    """Reduced row-echelon form.

    Returns ``(reduced, pivot_columns, rank)``.  Pivoting is positional
    (first nonzero column, topmost unreduced row) so the output is the
    same on every run and never depends on entry magnitudes.
    """
    if m.kind == "q":
        reduced = _rref_rational([list(r) for r in m.rows], m.ncols)
    else:
        reduced = _rref_field([list(r) for r in m.rows], m.ncols, RF_ZERO, RF_ONE)
    pivots = []
    for row in reduced:
        for j, x in enumerate(row):
            if x:
                pivots.append(j)
                break
    rank = len(pivots)
    return Matrix(reduced, ncols=m.ncols) if reduced else Matrix([], ncols=m.ncols), tuple(pivots), rank


def _rref_rational(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    # Fraction-free integer elimination: scale each row to integers, keep
    # rows gcd-trimmed so entries stay small, divide by the pivot at the end.
    irows: list[list[int]] = []
    for r in rows:
        mult = lcm(*(x.denominator for x in r)) if r else 1
        ir = [int(x * mult) for x in r]
        g = gcd(*ir) if any(ir) else 0
        if g > 1:
            ir = [x // g for x in ir]
        irows.append(ir)
    nrows = len(irows)
    pr = 0
    for c in range(ncols):
        piv = next((i for i in range(pr, nrows) if irows[i][c]), None)
        if piv is None:
            continue
        if piv != pr:
            irows[pr], irows[piv] = irows[piv], irows[pr]
        prow = irows[pr]
        a = prow[c]
        for j in range(nrows):
            row = irows[j]
            if j == pr or not row[c]:
                continue
            b = row[c]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            new = [fa * x - fb * y for x, y in zip(row, prow)]
            g2 = gcd(*new) if any(new) else 0
            if g2 > 1:
                new = [x // g2 for x in new]
            irows[j] = new
        pr += 1
        if pr == nrows:
            break
    out = []
    for row in irows:
        lead = next((x for x in row if x), None)
        if lead is None:
            continue
        out.append([Fraction(x, lead) for x in row])
    return out


def _rref_field(rows, ncols, zero, one):
    nrows = len(rows)
    pr = 0
    for c in range(ncols):
        piv = next((i for i in range(pr, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        if piv != pr:
            rows[pr], rows[piv] = rows[piv], rows[pr]
        inv = one / rows[pr][c]
        rows[pr] = [x * inv for x in rows[pr]]
        prow = rows[pr]
        for j in range(nrows):
            if j == pr or not rows[j][c]:
                continue
            f = rows[j][c]
            rows[j] = [x - f * y for x, y in zip(rows[j], prow)]
        pr += 1
        if pr == nrows:
            break
    return [r for r in rows if any(r)]


def nullspace(m: Matrix) -> "Subspace":
    """Right kernel of ``m``, as a canonical subspace of Q^ncols."""
    red, pivots, rank = rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(m.ncols) if j not in pivot_set]
    if m.kind == "q":
        zero, one = Fraction(0), Fraction(1)
    else:
        zero, one = RF_ZERO, RF_ONE
    basis = []
    for f in free:
        v = [zero] * m.ncols
        v[f] = one
        for k, p in enumerate(pivots):
            x = red.rows[k][f]
            if x:
                v[p] = -x
        basis.append(v)
    return Subspace.from_rows(m.ncols, basis)


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A linear subspace held as its unique reduced row-echelon basis."""

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient: int, basis: tuple, pivots: tuple):
        self.ambient = ambient
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def from_rows(cls, ambient: int, rows: Iterable[Sequence]) -> "Subspace":
        rows = [list(r) for r in rows]
        for r in rows:
            if len(r) != ambient:
                raise DimensionMismatch("row length differs from ambient dimension")
        if not rows:
            return cls(ambient, (), ())
        red, pivots, rank = rref(Matrix(rows, ncols=ambient))
        return cls(ambient, red.rows[:rank], pivots)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient})"

    def reduce_vector(self, vec: Sequence) -> list:
        if len(vec) != self.ambient:
            raise DimensionMismatch("vector length differs from ambient dimension")
        v = list(vec)
        for row, p in zip(self.basis, self.pivots):
            x = v[p]
            if x:
                v = [a - x * b for a, b in zip(v, row)]
        return v

    def contains_vector(self, vec: Sequence) -> bool:
        return not any(self.reduce_vector(vec))

    def leq(self, other: "Subspace") -> bool:
        if self.ambient != other.ambient:
            raise DimensionMismatch("ambient dimension mismatch")
        return all(other.contains_vector(r) for r in self.basis)

    def contains(self, other: "Subspace") -> bool:
        return other.leq(self)


def subspace_query(a: Subspace, b, mode: str) -> bool:
    """Exact membership / comparison queries.

    ``contains``: does ``a`` contain ``b`` (a vector or a subspace)?
    ``leq``: is ``a`` a subspace of ``b``?  ``equal``: mutual inclusion.
    """
    if mode == "contains":
        if isinstance(b, Subspace):
            return a.contains(b)
        return a.contains_vector(b)
    if not isinstance(b, Subspace):
        raise TypeError(f"mode {mode!r} needs two subspaces")
    if mode == "equal":
        return a == b
    if mode == "leq":
        return a.leq(b)
    raise ValueError(f"unknown mode {mode!r}")
