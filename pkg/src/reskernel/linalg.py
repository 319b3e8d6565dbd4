"""Exact linear algebra over odd prime fields.

Everything here is residue arithmetic mod p; there is no floating point
anywhere. Matrices are stored as sparse triplets and elimination works on
dict rows keyed by column, which suits the signed-permutation-shaped
matrices produced elsewhere in the package (huge, a handful of entries per
row). Pivoting is deterministic (first nonzero in column order), so every
echelon basis is reproducible across runs.
"""
from __future__ import annotations

from dataclasses import dataclass

Row = dict[int, int]


def is_odd_prime(n: int) -> bool:
    if n < 3 or n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field with p elements, p an odd prime."""

    p: int

    def __post_init__(self) -> None:
        if not is_odd_prime(self.p):
            raise ValueError(f"modulus must be an odd prime, got {self.p}")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)


class SparseMatrix:
    """Sparse matrix with entries in F_p, stored as {(row, col): value}.

    Stored values are nonzero residues; duplicate coordinates are rejected.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: dict[tuple[int, int], int] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        self.entries: dict[tuple[int, int], int] = {}
        if entries:
            for (r, c), v in entries.items():
                self.set(r, c, v)

    def set(self, r: int, c: int, v: int) -> None:
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise ValueError(f"entry ({r},{c}) outside {self.rows}x{self.cols}")
        if (r, c) in self.entries:
            raise ValueError(f"duplicate entry at ({r},{c})")
        if v != 0:
            self.entries[(r, c)] = v

    def add_at(self, r: int, c: int, v: int, p: int) -> None:
        """Accumulate v into entry (r, c), dropping it if the sum vanishes."""
        cur = (self.entries.get((r, c), 0) + v) % p
        self.entries.pop((r, c), None)
        if cur:
            self.entries[(r, c)] = cur

    @classmethod
    def from_dense(cls, dense: list[list[int]], p: int) -> "SparseMatrix":
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        m = cls(rows, cols)
        for r, row in enumerate(dense):
            if len(row) != cols:
                raise ValueError("ragged dense matrix")
            for c, v in enumerate(row):
                v %= p
                if v:
                    m.entries[(r, c)] = v
        return m

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        m = cls(n, n)
        for i in range(n):
            m.entries[(i, i)] = 1
        return m

    def row_dicts(self) -> list[Row]:
        out: list[Row] = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def to_dense(self) -> list[list[int]]:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            dense[r][c] = v
        return dense

    def matvec(self, vec: Row, p: int) -> Row:
        """Apply to a sparse column vector {col: value}."""
        out: Row = {}
        for (r, c), v in self.entries.items():
            x = vec.get(c)
            if x:
                out[r] = (out.get(r, 0) + v * x) % p
        return {r: v for r, v in out.items() if v}

    def compose(self, other: "SparseMatrix", p: int) -> "SparseMatrix":
        """Matrix product self @ other mod p."""
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        by_row: dict[int, Row] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, {})[c] = v
        out = SparseMatrix(self.rows, other.cols)
        acc: dict[tuple[int, int], int] = {}
        for (r, c), v in self.entries.items():
            mid = by_row.get(c)
            if not mid:
                continue
            for c2, w in mid.items():
                key = (r, c2)
                acc[key] = (acc.get(key, 0) + v * w) % p
        out.entries = {k: v for k, v in acc.items() if v}
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, {len(self.entries)} entries)"


class Eliminator:
    """Incremental reduced-echelon accumulator over F_p.

    Rows are fed one at a time; the accumulated pivot rows always form a
    reduced echelon basis of the span so far. An inverted column index keeps
    back-substitution proportional to true fill, not to the number of rows.
    """

    def __init__(self, fp: PrimeField, reduced: bool = True):
        self.fp = fp
        self.reduced = reduced
        self.pivots: dict[int, Row] = {}
        self._users: dict[int, set[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce_vector(self, row: Row) -> Row:
        """Return row reduced against the accumulated pivot rows (a copy)."""
        p = self.fp.p
        row = {c: v % p for c, v in row.items() if v % p}
        while True:
            hit = None
            for c in row:
                if c in self.pivots and (hit is None or c < hit):
                    hit = c
            if hit is None:
                return row
            coeff = row.pop(hit)
            for c, v in self.pivots[hit].items():
                if c == hit:
                    continue
                nv = (row.get(c, 0) - coeff * v) % p
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)

    def add(self, row: Row) -> bool:
        """Insert a row; returns True when it enlarged the span."""
        p = self.fp.p
        row = self.reduce_vector(row)
        if not row:
            return False
        pc = min(row)
        inv = self.fp.inv(row[pc])
        row = {c: (v * inv) % p for c, v in row.items()}
        if self.reduced:
            for user in list(self._users.get(pc, ())):
                target = self.pivots[user]
                coeff = target.get(pc)
                if not coeff:
                    continue
                for c, v in row.items():
                    nv = (target.get(c, 0) - coeff * v) % p
                    if nv:
                        if c not in target:
                            self._users.setdefault(c, set()).add(user)
                        target[c] = nv
                    elif c in target:
                        del target[c]
                        self._users[c].discard(user)
        self.pivots[pc] = row
        for c in row:
            self._users.setdefault(c, set()).add(pc)
        return True

    def echelon_rows(self) -> list[Row]:
        return [dict(self.pivots[c]) for c in sorted(self.pivots)]

    def contains(self, row: Row) -> bool:
        return not self.reduce_vector(row)


def rref(m: SparseMatrix, fp: PrimeField) -> tuple[SparseMatrix, int]:
    """Reduced row-echelon form and rank. Canonical, hence idempotent."""
    elim = Eliminator(fp)
    for row in m.row_dicts():
        elim.add(row)
    out = SparseMatrix(m.rows, m.cols)
    for i, row in enumerate(elim.echelon_rows()):
        for c, v in row.items():
            out.entries[(i, c)] = v
    return out, elim.rank


def rank_of(m: SparseMatrix, fp: PrimeField) -> int:
    elim = Eliminator(fp, reduced=False)
    for row in m.row_dicts():
        elim.add(row)
    return elim.rank


class Subspace:
    """A subspace of F_p^ambient held as reduced-echelon row vectors.

    Rows are nonzero, pivot columns strictly increase, pivots are 1 with
    zeros above and below, which makes the representation canonical: two
    Subspaces are equal iff their rows are equal.
    """

    __slots__ = ("ambient", "rows")

    def __init__(self, ambient: int, rows: list[Row]):
        self.ambient = ambient
        self.rows = rows

    @classmethod
    def from_vectors(cls, ambient: int, vectors: list[Row], fp: PrimeField) -> "Subspace":
        elim = Eliminator(fp)
        for v in vectors:
            for c in v:
                if not (0 <= c < ambient):
                    raise ValueError(f"coordinate {c} outside ambient dimension {ambient}")
            elim.add(v)
        return cls(ambient, elim.echelon_rows())

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, [])

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, [{i: 1} for i in range(ambient)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def pivot_cols(self) -> list[int]:
        return [min(r) for r in self.rows]

    def reduce(self, vec: Row, fp: PrimeField) -> Row:
        """Canonical coset representative of vec modulo this subspace."""
        elim = Eliminator(fp)
        for r in self.rows:
            elim.pivots[min(r)] = dict(r)
        return elim.reduce_vector(vec)

    def contains(self, vec: Row, fp: PrimeField) -> bool:
        return not self.reduce(vec, fp)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.rows == other.rows

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of F^{self.ambient})"


def nullspace(m: SparseMatrix, fp: PrimeField) -> Subspace:
    """Basis of {v : m v = 0} as a Subspace of F_p^cols."""
    p = fp.p
    echelon, _ = rref(m, fp)
    rows = echelon.row_dicts()
    rows = [r for r in rows if r]
    pivot_of_row = [min(r) for r in rows]
    pivot_set = set(pivot_of_row)
    vectors: list[Row] = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vec: Row = {free: 1}
        for r, pc in zip(rows, pivot_of_row):
            coeff = r.get(free)
            if coeff:
                vec[pc] = (-coeff) % p
        vectors.append(vec)
    return Subspace.from_vectors(m.cols, vectors, fp)


def subspace_sum(a: Subspace, b: Subspace, fp: PrimeField) -> Subspace:
    if a.ambient != b.ambient:
        raise ValueError("ambient dimensions differ")
    return Subspace.from_vectors(a.ambient, a.rows + b.rows, fp)


def quotient_dim(a: Subspace, b: Subspace, fp: PrimeField) -> int:
    """dim((a + b) / b)."""
    if a.ambient != b.ambient:
        raise ValueError("ambient dimensions differ")
    return subspace_sum(a, b, fp).dim - b.dim


def intersection_dim(a: Subspace, b: Subspace, fp: PrimeField) -> int:
    if a.ambient != b.ambient:
        raise ValueError("ambient dimensions differ")
    return a.dim + b.dim - subspace_sum(a, b, fp).dim
