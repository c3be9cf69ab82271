"""Exact dense linear algebra over the rationals and prime fields.

Scalars are `fractions.Fraction` values over Q (kept in lowest terms with
positive denominator automatically) and plain ints in [0, p) over a prime
field.  Matrices are dense row-major grids; subspaces are stored as reduced
row-echelon bases, which makes subspace equality a syntactic check and lets
coordinates in a subspace be read off pivot columns directly.

Everything here is immutable after construction and all operations are pure,
so values can be shared freely between workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class FieldMismatchError(ValueError):
    pass


class DimensionError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """Base field: Q when `p` is None, otherwise the prime field F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"field characteristic must be prime, got {self.p}")

    @property
    def tag(self) -> str:
        return "Q" if self.p is None else f"F_p:{self.p}"

    @property
    def zero(self):
        return _QZERO if self.p is None else 0

    @property
    def one(self):
        return _QONE if self.p is None else 1

    def coerce(self, x):
        """Turn an int / Fraction / numeric string into a scalar of this field."""
        if self.p is None:
            return x if type(x) is Fraction else Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ValueError(f"denominator of {x} is not invertible mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, str):
            x = Fraction(x)
            return self.coerce(x)
        return int(x) % self.p

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError(f"inverse of zero in {self.tag}")
        return 1 / a if self.p is None else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def format(self, a) -> str:
        return str(a)

    def parse(self, s: str):
        try:
            return self.coerce(Fraction(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad {self.tag} scalar {s!r}: {exc}") from None

    def __repr__(self):
        return f"Field({self.tag})"


_QZERO = Fraction(0)
_QONE = Fraction(1)

Q = Field(None)

_GF_CACHE: dict[int, Field] = {}


def GF(p: int) -> Field:
    """Prime field F_p (cached so repeated calls share one object)."""
    if p not in _GF_CACHE:
        _GF_CACHE[p] = Field(p)
    return _GF_CACHE[p]


def parse_field_tag(tag: str) -> Field:
    if tag == "Q":
        return Q
    if tag.startswith("F_p:"):
        return GF(int(tag[4:]))
    raise ValueError(f"unknown field tag {tag!r}")


def _check_same_field(a: Field, b: Field):
    if a != b:
        raise FieldMismatchError(f"mixed field tags: {a.tag} vs {b.tag}")


# ---------------------------------------------------------------------------
# Matrices


class Matrix:
    """Dense matrix over a fixed field.  Treated as immutable."""

    __slots__ = ("field", "nrows", "ncols", "data")

    def __init__(self, field: Field, data, ncols: int | None = None):
        rows = [list(r) for r in data]
        if rows:
            ncols = len(rows[0]) if ncols is None else ncols
            for i, r in enumerate(rows):
                if len(r) != ncols:
                    raise DimensionError(f"row {i} has length {len(r)}, expected {ncols}")
        elif ncols is None:
            ncols = 0
        self.field = field
        self.nrows = len(rows)
        self.ncols = ncols
        self.data = rows

    @classmethod
    def from_rows(cls, field: Field, rows, ncols: int | None = None) -> "Matrix":
        return cls(field, [[field.coerce(x) for x in r] for r in rows], ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def from_cols(cls, field: Field, cols, nrows: int | None = None) -> "Matrix":
        cols = [list(c) for c in cols]
        if cols:
            nrows = len(cols[0]) if nrows is None else nrows
        elif nrows is None:
            nrows = 0
        return cls(field, [[c[i] for c in cols] for i in range(nrows)], len(cols))

    def row(self, i: int) -> list:
        return list(self.data[i])

    def col(self, j: int) -> list:
        return [r[j] for r in self.data]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [[self.data[i][j] for i in range(self.nrows)]
                                   for j in range(self.ncols)], self.nrows)

    def add(self, other: "Matrix") -> "Matrix":
        self._match(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionError("matrix addition shape mismatch")
        f = self.field
        return Matrix(f, [[f.add(a, b) for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.data, other.data)], self.ncols)

    def sub(self, other: "Matrix") -> "Matrix":
        self._match(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionError("matrix subtraction shape mismatch")
        f = self.field
        return Matrix(f, [[f.sub(a, b) for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.data, other.data)], self.ncols)

    def scale(self, c) -> "Matrix":
        f = self.field
        c = f.coerce(c)
        return Matrix(f, [[f.mul(c, a) for a in r] for r in self.data], self.ncols)

    def mul(self, other: "Matrix") -> "Matrix":
        """Matrix product, skipping zero entries of the left factor."""
        self._match(other)
        if self.ncols != other.nrows:
            raise DimensionError(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        p = self.field.p
        z = self.field.zero
        odata = other.data
        out = []
        for arow in self.data:
            acc = [z] * other.ncols
            for k, a in enumerate(arow):
                if a:
                    brow = odata[k]
                    for j, b in enumerate(brow):
                        if b:
                            acc[j] = acc[j] + a * b
            if p is not None:
                acc = [x % p for x in acc]
            out.append(acc)
        return Matrix(self.field, out, other.ncols)

    def apply(self, vec: list) -> list:
        """Matrix times column vector."""
        if len(vec) != self.ncols:
            raise DimensionError(f"vector length {len(vec)}, expected {self.ncols}")
        p = self.field.p
        z = self.field.zero
        out = []
        for row in self.data:
            acc = z
            for a, x in zip(row, vec):
                if a and x:
                    acc = acc + a * x
            out.append(acc if p is None else acc % p)
        return out

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker (tensor) product in tensor_index order."""
        self._match(other)
        f = self.field
        z = f.zero
        rows = self.nrows * other.nrows
        cols = self.ncols * other.ncols
        out = [[z] * cols for _ in range(rows)]
        for i, arow in enumerate(self.data):
            for j, a in enumerate(arow):
                if a:
                    for r, brow in enumerate(other.data):
                        orow = out[i * other.nrows + r]
                        base = j * other.ncols
                        for c, b in enumerate(brow):
                            if b:
                                orow[base + c] = f.mul(a, b)
        return Matrix(f, out, cols)

    def hstack(self, other: "Matrix") -> "Matrix":
        self._match(other)
        if self.nrows != other.nrows:
            raise DimensionError("hstack row mismatch")
        return Matrix(self.field, [ra + rb for ra, rb in zip(self.data, other.data)],
                      self.ncols + other.ncols)

    def vstack(self, other: "Matrix") -> "Matrix":
        self._match(other)
        if self.ncols != other.ncols:
            raise DimensionError("vstack column mismatch")
        return Matrix(self.field, self.data + other.data, self.ncols)

    def is_zero(self) -> bool:
        return all(not a for r in self.data for a in r)

    def rank(self) -> int:
        return len(rref(self)[1])

    def nullspace(self) -> list[list]:
        """Basis of the right kernel, one vector per free column, free vars set
        to one at their own column and zero at the others."""
        red, pivots = rref(self)
        pivset = set(pivots)
        f = self.field
        z, o = f.zero, f.one
        basis = []
        for j in range(self.ncols):
            if j in pivset:
                continue
            v = [z] * self.ncols
            v[j] = o
            for r, pc in enumerate(pivots):
                a = red.data[r][j]
                if a:
                    v[pc] = f.neg(a)
            basis.append(v)
        return basis

    def solve(self, b: list) -> list | None:
        return solve_linear(self, b)

    def inverse(self) -> "Matrix | None":
        if self.nrows != self.ncols:
            raise DimensionError("inverse of non-square matrix")
        aug = self.hstack(Matrix.identity(self.field, self.nrows))
        red, pivots = rref(aug)
        if list(pivots) != list(range(self.nrows)):
            return None
        return Matrix(self.field, [r[self.nrows:] for r in red.data], self.nrows)

    def _match(self, other: "Matrix"):
        _check_same_field(self.field, other.field)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.nrows == other.nrows and self.ncols == other.ncols
                and self.data == other.data)

    def __hash__(self):
        return hash((self.field, self.nrows, self.ncols,
                     tuple(tuple(r) for r in self.data)))

    def __repr__(self):
        return f"Matrix({self.field.tag}, {self.nrows}x{self.ncols})"


def _echelon(field: Field, rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """In-place full reduced row echelon; returns (rows, pivot columns)."""
    p = field.p
    nrows = len(rows)
    pivots = []
    pr = 0
    for c in range(ncols):
        pv = None
        for r in range(pr, nrows):
            if rows[r][c]:
                pv = r
                break
        if pv is None:
            continue
        if pv != pr:
            rows[pr], rows[pv] = rows[pv], rows[pr]
        prow = rows[pr]
        a = prow[c]
        if a != field.one:
            if p is None:
                inv = 1 / a
                rows[pr] = prow = [x * inv for x in prow]
            else:
                inv = pow(a, -1, p)
                rows[pr] = prow = [x * inv % p for x in prow]
        for r in range(nrows):
            if r != pr:
                row = rows[r]
                f = row[c]
                if f:
                    if p is None:
                        rows[r] = [x - f * y if y else x for x, y in zip(row, prow)]
                    else:
                        rows[r] = [(x - f * y) % p if y else x for x, y in zip(row, prow)]
        pivots.append(c)
        pr += 1
        if pr == nrows:
            break
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row-echelon form and pivot columns; row space is unchanged."""
    rows = [list(r) for r in m.data]
    rows, pivots = _echelon(m.field, rows, m.ncols)
    return Matrix(m.field, rows, m.ncols), tuple(pivots)


def solve_linear(a: Matrix, b: list) -> list | None:
    """Some exact solution of a.x = b, or None when inconsistent.

    Deterministic: free variables are set to zero.
    """
    if len(b) != a.nrows:
        raise DimensionError(f"rhs length {len(b)}, expected {a.nrows}")
    f = a.field
    rows = [list(r) + [f.coerce(x)] for r, x in zip(a.data, b)]
    rows, pivots = _echelon(f, rows, a.ncols + 1)
    if pivots and pivots[-1] == a.ncols:
        return None
    x = [f.zero] * a.ncols
    for r, c in enumerate(pivots):
        x[c] = rows[r][a.ncols]
    return x


# ---------------------------------------------------------------------------
# Subspaces


class Subspace:
    """Subspace of a coordinate space, stored as a reduced row-echelon basis.

    Two subspaces are equal iff their echelon bases coincide entry for entry.
    """

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: Field, ambient_dim: int, basis, pivots):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(r) for r in basis)
        self.pivots = tuple(pivots)

    @classmethod
    def from_vectors(cls, field: Field, ambient_dim: int, vectors) -> "Subspace":
        rows = []
        for v in vectors:
            v = list(v)
            if len(v) != ambient_dim:
                raise DimensionError(
                    f"vector length {len(v)} in ambient dimension {ambient_dim}")
            rows.append([field.coerce(x) for x in v])
        rows, pivots = _echelon(field, rows, ambient_dim)
        return cls(field, ambient_dim, rows[: len(pivots)], pivots)

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, [], [])

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> "Subspace":
        ident = Matrix.identity(field, ambient_dim)
        return cls(field, ambient_dim, ident.data, range(ambient_dim))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, vec: list) -> list:
        """Residual of vec after eliminating against the echelon basis.

        Zero iff vec lies in the subspace.
        """
        if len(vec) != self.ambient_dim:
            raise DimensionError("vector/ambient mismatch")
        f = self.field
        p = f.p
        w = [f.coerce(x) for x in vec]
        for row, c in zip(self.basis, self.pivots):
            a = w[c]
            if a:
                if p is None:
                    w = [x - a * y if y else x for x, y in zip(w, row)]
                else:
                    w = [(x - a * y) % p if y else x for x, y in zip(w, row)]
        return w

    def contains(self, vec: list) -> bool:
        return not any(self.reduce(vec))

    def coords(self, vec: list) -> list | None:
        """Coordinates of vec in the echelon basis (pivot reads), or None."""
        if len(vec) != self.ambient_dim:
            raise DimensionError("vector/ambient mismatch")
        if any(self.reduce(vec)):
            return None
        return [self.field.coerce(vec[c]) for c in self.pivots]

    def member_from_coords(self, coords: list) -> list:
        f = self.field
        p = f.p
        out = [f.zero] * self.ambient_dim
        for c, row in zip(coords, self.basis):
            if c:
                for j, y in enumerate(row):
                    if y:
                        out[j] = out[j] + c * y
        if p is not None:
            out = [x % p for x in out]
        return out

    def sum(self, other: "Subspace") -> "Subspace":
        self._match(other)
        return Subspace.from_vectors(self.field, self.ambient_dim,
                                     list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection via the kernel of the stacked-basis matrix."""
        self._match(other)
        du, dv = self.dim, other.dim
        if du == 0 or dv == 0:
            return Subspace.zero(self.field, self.ambient_dim)
        # Columns: u-basis coefficients then negated v-basis coefficients.
        f = self.field
        stacked = Matrix(f, [
            [self.basis[j][i] for j in range(du)]
            + [f.neg(other.basis[j][i]) for j in range(dv)]
            for i in range(self.ambient_dim)
        ], du + dv)
        vecs = []
        for sol in stacked.nullspace():
            vecs.append(self.member_from_coords(sol[:du]))
        return Subspace.from_vectors(f, self.ambient_dim, vecs)

    def is_subspace_of(self, other: "Subspace") -> bool:
        self._match(other)
        return all(other.contains(list(r)) for r in self.basis)

    def quotient_matrix(self) -> Matrix:
        """Matrix of the quotient map onto the non-pivot coordinates.

        Its kernel is exactly this subspace; rows are indexed by the
        complement coordinates in increasing order.
        """
        f = self.field
        z, o = f.zero, f.one
        pivset = set(self.pivots)
        rows = []
        for j in range(self.ambient_dim):
            if j in pivset:
                continue
            row = [z] * self.ambient_dim
            row[j] = o
            for i, pc in enumerate(self.pivots):
                a = self.basis[i][j]
                if a:
                    row[pc] = f.neg(a)
            rows.append(row)
        return Matrix(f, rows, self.ambient_dim)

    def complement_coords(self) -> list[int]:
        pivset = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in pivset]

    def _match(self, other: "Subspace"):
        _check_same_field(self.field, other.field)
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError(
                f"ambient mismatch: {self.ambient_dim} vs {other.ambient_dim}")

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.field == other.field
                and self.ambient_dim == other.ambient_dim and self.basis == other.basis)

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient_dim} over {self.field.tag})"


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    return u.sum(v)


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    return u.intersect(v)


# ---------------------------------------------------------------------------
# Tensor index bookkeeping


def tensor_index(i: int, j: int, dim_left: int, dim_right: int) -> int:
    """Flat index of basis pair (i, j); fixes the basis order of tensor squares."""
    if not (0 <= i < dim_left):
        raise IndexError(f"left index {i} out of range [0, {dim_left})")
    if not (0 <= j < dim_right):
        raise IndexError(f"right index {j} out of range [0, {dim_right})")
    return i * dim_right + j


def tensor_unindex(flat: int, dim_left: int, dim_right: int) -> tuple[int, int]:
    if not (0 <= flat < dim_left * dim_right):
        raise IndexError(f"flat index {flat} out of range [0, {dim_left * dim_right})")
    return divmod(flat, dim_right)


# ---------------------------------------------------------------------------
# Characteristic polynomials and rational root extraction


def charpoly(m: Matrix) -> list:
    """Coefficients of det(xI - m), ascending degree, via the division-free
    Berkowitz recursion (valid over Q and every F_p regardless of dimension)."""
    if m.nrows != m.ncols:
        raise DimensionError("characteristic polynomial of non-square matrix")
    f = m.field
    p = f.p
    n = m.nrows
    if n == 0:
        return [f.one]
    A = m.data
    coeffs = [f.one, f.neg(A[0][0])]  # descending: x - a00
    for r in range(1, n):
        a = A[r][r]
        R = A[r][:r]
        c = [A[i][r] for i in range(r)]
        t = [f.one, f.neg(a)]
        v = c
        for _ in range(r):
            dot = f.zero
            for x, y in zip(R, v):
                if x and y:
                    dot = dot + x * y
            t.append(f.neg(dot if p is None else dot % p))
            # v <- M v with M the leading principal r x r block
            nv = []
            for i in range(r):
                acc = f.zero
                row = A[i]
                for k in range(r):
                    x = row[k]
                    y = v[k]
                    if x and y:
                        acc = acc + x * y
                nv.append(acc if p is None else acc % p)
            v = nv
        new = []
        for i in range(r + 2):
            acc = f.zero
            lo = max(0, i - len(t) + 1)
            for j in range(lo, min(i, r) + 1):
                tv = t[i - j]
                cv = coeffs[j]
                if tv and cv:
                    acc = acc + tv * cv
            new.append(acc if p is None else acc % p)
        coeffs = new
    coeffs.reverse()
    return coeffs


def eval_poly(coeffs: list, x, field: Field):
    acc = field.zero
    for c in reversed(coeffs):
        acc = field.add(field.mul(acc, x), c)
    return acc


def _divide_linear(coeffs: list, root, field: Field) -> list | None:
    """Divide p(x) by (x - root); None if the remainder is nonzero."""
    n = len(coeffs) - 1
    out = [field.zero] * n
    acc = field.zero
    for k in range(n - 1, -1, -1):
        acc = field.add(field.mul(acc, root), coeffs[k + 1])
        out[k] = acc
    rem = field.add(field.mul(acc, root), coeffs[0])
    return None if rem else out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(coeffs: list, field: Field) -> list[tuple]:
    """Roots of the polynomial lying in the base field, with multiplicities.

    Returned sorted by root value; irreducible non-linear factors are ignored.
    """
    while len(coeffs) > 1 and not coeffs[-1]:
        coeffs = coeffs[:-1]
    if len(coeffs) <= 1:
        return []
    if field.p is not None:
        roots = []
        for lam in range(field.p):
            mult = 0
            cur = coeffs
            while len(cur) > 1:
                nxt = _divide_linear(cur, lam, field)
                if nxt is None:
                    break
                mult += 1
                cur = nxt
            if mult:
                roots.append((lam, mult))
        return roots

    roots = []
    cur = list(coeffs)
    # Factor out roots at zero first.
    zero_mult = 0
    while len(cur) > 1 and not cur[0]:
        cur = cur[1:]
        zero_mult += 1
    if zero_mult:
        roots.append((_QZERO, zero_mult))
    while len(cur) > 1:
        denom_lcm = 1
        for c in cur:
            denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
        ints = [int(c * denom_lcm) for c in cur]
        g = 0
        for c in ints:
            g = math.gcd(g, c)
        if g > 1:
            ints = [c // g for c in ints]
        lead, const = ints[-1], ints[0]
        found = None
        for q in _divisors(lead):
            for pnum in _divisors(const):
                for sign in (1, -1):
                    cand = Fraction(sign * pnum, q)
                    if eval_poly(cur, cand, Q) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        mult = 0
        while len(cur) > 1:
            nxt = _divide_linear(cur, found, Q)
            if nxt is None:
                break
            mult += 1
            cur = nxt
        roots.append((found, mult))
    roots.sort(key=lambda rm: rm[0])
    return roots
