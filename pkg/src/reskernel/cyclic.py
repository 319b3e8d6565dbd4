"""Tensor powers S = R^(tensor p^2) with the signed cyclic rotation.

Basis words are p^2-tuples of factor basis elements, stored as tuples of
flat basis codes ordered by (degree, index). The rotation sends the last
slot to the front and picks up the Koszul sign (-1)^(d_last * (d - d_last)),
the convention under which the rotation is induced by rotating a tensored
resolution. Words of a fixed degree fall into rotation orbits of size 1, p
or p^2; the three orbit types drive everything downstream, so the
classifier cross-checks the structural descriptions (all slots equal /
p-periodic) against the observed orbit sizes and verifies that stabilizer
signs are +1, raising InternalCheckError on any mismatch.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass

from .errors import InternalCheckError
from .gradedalg import GradedAlgebra
from .linalg import SparseMatrix

Word = tuple[int, ...]

# rough per-word cost model for the memory budget guard: one m-slot tuple
# plus index/orbit bookkeeping (measured factor ~3 on CPython 3.10)
_WORD_BYTES_BASE = 64
_WORD_BYTES_PER_SLOT = 8
_BOOKKEEPING_FACTOR = 3


@dataclass(frozen=True)
class OrbitClass:
    """A rotation orbit of basis words.

    words[k] is the unsigned word of sigma^k(rep) and signs[k] the
    accumulated sign, so sigma^k(rep) = signs[k] * words[k]. type is 1
    (fixed by sigma), 2 (fixed by sigma^p only) or 3 (free orbit).
    """

    rep: Word
    words: tuple[Word, ...]
    signs: tuple[int, ...]
    type: int

    @property
    def size(self) -> int:
        return len(self.words)


class TensorPower:
    """Degree-truncated model of R^(tensor p^2) for a graded algebra R."""

    def __init__(self, algebra: GradedAlgebra, width: int | None = None):
        self.algebra = algebra
        self.p = algebra.p
        self.width = self.p * self.p
        if width is not None and width != self.width:
            raise ValueError(
                f"tensor width is fixed to p^2 = {self.width}; got {width}"
            )
        self.truncation = algebra.truncation
        # flat basis codes, ordered by (degree, index) so that code order
        # agrees with lexicographic word order
        self._code_degree: list[int] = []
        self._code_index: list[int] = []
        self._pair_code: dict[tuple[int, int], int] = {}
        for d in range(self.truncation + 1):
            for j in range(algebra.dim(d)):
                self._pair_code[(d, j)] = len(self._code_degree)
                self._code_degree.append(d)
                self._code_index.append(j)
        self._words: dict[int, tuple[Word, ...]] = {}
        self._word_index: dict[int, dict[Word, int]] = {}
        self._dims: list[int] | None = None
        self._lock = threading.Lock()

    # -- bookkeeping --------------------------------------------------------

    def code(self, degree: int, index: int) -> int:
        return self._pair_code[(degree, index)]

    def code_degree(self, c: int) -> int:
        return self._code_degree[c]

    def code_index(self, c: int) -> int:
        return self._code_index[c]

    def word_degree(self, w: Word) -> int:
        return sum(self._code_degree[c] for c in w)

    def word_labels(self, w: Word) -> list[tuple[int, str]]:
        """Serialize a word as (degree, basis-name) pairs."""
        return [
            (self._code_degree[c], self.algebra.label(self._code_degree[c], self._code_index[c]))
            for c in w
        ]

    def dims(self) -> list[int]:
        """dim S^d for d <= truncation by Kuenneth convolution (no enumeration)."""
        if self._dims is None:
            D = self.truncation
            acc = [1] + [0] * D
            r = [self.algebra.dim(d) for d in range(D + 1)]
            for _ in range(self.width):
                nxt = [0] * (D + 1)
                for i, v in enumerate(acc):
                    if not v:
                        continue
                    for j in range(D + 1 - i):
                        if r[j]:
                            nxt[i + j] += v * r[j]
                acc = nxt
            self._dims = acc
        return self._dims

    def estimate_degree_mib(self, d: int) -> float:
        """Rough memory estimate for enumerating degree d, in MiB."""
        per_word = _WORD_BYTES_BASE + _WORD_BYTES_PER_SLOT * self.width
        return self.dims()[d] * per_word * _BOOKKEEPING_FACTOR / (1024 * 1024)

    # -- word enumeration ----------------------------------------------------

    def _enumerate(self, d: int) -> tuple[Word, ...]:
        degrees = [e for e in range(d + 1) if self.algebra.dim(e)]
        maxdeg = degrees[-1] if degrees else 0
        m = self.width
        out: list[Word] = []

        def rec(slot: int, prefix: tuple[int, ...], rem: int) -> None:
            if slot == m:
                if rem == 0:
                    out.append(prefix)
                return
            if rem > (m - slot) * maxdeg:
                return
            for e in degrees:
                if e > rem:
                    break
                for j in range(self.algebra.dim(e)):
                    rec(slot + 1, prefix + (self._pair_code[(e, j)],), rem - e)

        rec(0, (), d)
        return tuple(out)

    def words(self, d: int) -> tuple[Word, ...]:
        """Lexicographically ordered basis of S^d."""
        if d < 0 or d > self.truncation:
            return ()
        with self._lock:
            cached = self._words.get(d)
        if cached is not None:
            return cached
        built = self._enumerate(d)
        with self._lock:
            self._words.setdefault(d, built)
            return self._words[d]

    def word_index(self, d: int) -> dict[Word, int]:
        with self._lock:
            cached = self._word_index.get(d)
        if cached is not None:
            return cached
        built = {w: i for i, w in enumerate(self.words(d))}
        with self._lock:
            self._word_index.setdefault(d, built)
            return self._word_index[d]

    # -- the signed rotation ---------------------------------------------------

    def sigma(self, w: Word, degree: int | None = None) -> tuple[int, Word]:
        """Rotate the last slot to the front: (sign, word)."""
        d = self.word_degree(w) if degree is None else degree
        dl = self._code_degree[w[-1]]
        sign = -1 if (dl * (d - dl)) % 2 else 1
        return sign, (w[-1],) + w[:-1]

    def sigma_power(self, w: Word, k: int, degree: int | None = None) -> tuple[int, Word]:
        d = self.word_degree(w) if degree is None else degree
        sign = 1
        for _ in range(k % self.width):
            s, w = self.sigma(w, d)
            sign *= s
        return sign, w

    def sigma_matrix(self, d: int) -> SparseMatrix:
        """Matrix of sigma on S^d in the word basis."""
        words = self.words(d)
        index = self.word_index(d)
        m = SparseMatrix(len(words), len(words))
        for j, w in enumerate(words):
            s, img = self.sigma(w, d)
            m.set(index[img], j, s % self.p)
        return m

    def one_minus_sigma(self, d: int) -> SparseMatrix:
        words = self.words(d)
        index = self.word_index(d)
        m = SparseMatrix(len(words), len(words))
        for j, w in enumerate(words):
            s, img = self.sigma(w, d)
            m.add_at(j, j, 1, self.p)
            m.add_at(index[img], j, -s, self.p)
        return m

    def norm_matrix(self, d: int) -> SparseMatrix:
        """Matrix of sum(sigma^k, k < p^2), built by explicit rotation."""
        words = self.words(d)
        index = self.word_index(d)
        m = SparseMatrix(len(words), len(words))
        for j, w in enumerate(words):
            cur, sign = w, 1
            for _ in range(self.width):
                m.add_at(index[cur], j, sign, self.p)
                s, cur = self.sigma(cur, d)
                sign *= s
        return m

    def norm_of_word(self, w: Word, degree: int | None = None) -> dict[Word, int]:
        d = self.word_degree(w) if degree is None else degree
        out: dict[Word, int] = {}
        cur, sign = w, 1
        for _ in range(self.width):
            v = (out.get(cur, 0) + sign) % self.p
            if v:
                out[cur] = v
            else:
                out.pop(cur, None)
            s, cur = self.sigma(cur, d)
            sign *= s
        return out

    # -- multiplication ---------------------------------------------------------

    def multiply_words(self, wa: Word, wb: Word) -> dict[Word, int]:
        """Product of two basis words as a word -> coefficient map.

        Slotwise product in R with the interleaving Koszul sign
        (-1)^(sum over i<j of deg(b_i) * deg(a_j)).
        """
        p = self.p
        m = self.width
        cdeg = self._code_degree
        total = sum(cdeg[c] for c in wa) + sum(cdeg[c] for c in wb)
        if total > self.truncation:
            return {}
        # suffix counts of odd-degree slots of wa
        sign = 0
        suffix_odd = 0
        odd_after = [0] * m
        for t in range(m - 1, -1, -1):
            odd_after[t] = suffix_odd
            if cdeg[wa[t]] % 2:
                suffix_odd += 1
        for t in range(m):
            if cdeg[wb[t]] % 2:
                sign += odd_after[t]
        base = (-1 if sign % 2 else 1) % p
        terms: list[tuple[int, tuple[int, ...]]] = [(base, ())]
        for t in range(m):
            da, ja = cdeg[wa[t]], self._code_index[wa[t]]
            db, jb = cdeg[wb[t]], self._code_index[wb[t]]
            slot = self.algebra.basis_product(da, ja, db, jb)
            if not slot:
                return {}
            ds = da + db
            nxt = []
            for coeff, prefix in terms:
                for j, c in slot:
                    nxt.append((coeff * c % p, prefix + (self._pair_code[(ds, j)],)))
            terms = nxt
        out: dict[Word, int] = {}
        for coeff, w in terms:
            v = (out.get(w, 0) + coeff) % p
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return out

    def multiply_elements(
        self, a: dict[Word, int], b: dict[Word, int]
    ) -> dict[Word, int]:
        """Bilinear extension of multiply_words to word-coefficient maps."""
        p = self.p
        out: dict[Word, int] = {}
        for wa, ca in a.items():
            for wb, cb in b.items():
                scale = ca * cb % p
                if not scale:
                    continue
                for w, c in self.multiply_words(wa, wb).items():
                    v = (out.get(w, 0) + scale * c) % p
                    if v:
                        out[w] = v
                    else:
                        out.pop(w, None)
        return out

    # -- orbit classification ------------------------------------------------------

    def classify_orbits(self, d: int) -> list[OrbitClass]:
        """Partition the degree-d word basis into rotation orbits.

        Representatives are lexicographically minimal. Raises
        InternalCheckError when a stabilizer sign is not +1 or the orbit
        size disagrees with the structural type description.
        """
        words = self.words(d)
        p, m = self.p, self.width
        seen: set[Word] = set()
        classes: list[OrbitClass] = []
        for w in words:
            if w in seen:
                continue
            orbit = [w]
            signs = [1]
            cur, sign = w, 1
            while True:
                s, cur = self.sigma(cur, d)
                sign *= s
                if cur == w:
                    if sign != 1:
                        raise InternalCheckError(
                            f"stabilizer sign {sign} != +1 on word {w} (degree {d})"
                        )
                    break
                orbit.append(cur)
                signs.append(sign)
            size = len(orbit)
            if size == 1:
                typ = 1
            elif size == p:
                typ = 2
            elif size == m:
                typ = 3
            else:
                raise InternalCheckError(f"orbit size {size} not in {{1, {p}, {m}}}")
            constant = all(c == w[0] for c in w)
            periodic = all(w[i] == w[(i + p) % m] for i in range(m))
            if (typ == 1) != constant or (typ == 2) != (periodic and not constant):
                raise InternalCheckError(
                    f"orbit size {size} contradicts slot structure of {w}"
                )
            seen.update(orbit)
            classes.append(OrbitClass(w, tuple(orbit), tuple(signs), typ))
        return classes
