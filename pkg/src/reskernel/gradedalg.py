"""Truncated graded-commutative algebras over F_p, built from presentations.

An algebra is the graded tensor product of single-generator factors
(exterior, truncated power, divided power), cut off at a truncation degree
D: every product landing above D is 0 by convention, and every reported
quantity is per-degree <= D, so the cutoff never bleeds into lower degrees.

Basis monomials are exponent tuples over the factors, ordered factor-major
lexicographically with exponents ascending; this fixes all downstream
echelon bases. Multiplication carries the Koszul sign for reordering odd
factors, the binomial rule for divided powers (computed mod p by Lucas'
theorem), and nilpotency rules for exterior / truncated powers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .linalg import Eliminator, PrimeField, Row, Subspace

KIND_EXTERIOR = "exterior"
KIND_TRUNCATED = "truncated_power"
KIND_DIVIDED = "divided_power"


def binom_mod(n: int, k: int, p: int) -> int:
    """Binomial coefficient C(n, k) mod p by Lucas' theorem."""
    if k < 0 or k > n:
        return 0
    out = 1
    while n or k:
        nd, kd = n % p, k % p
        if kd > nd:
            return 0
        out = out * math.comb(nd, kd) % p
        n //= p
        k //= p
    return out


@dataclass(frozen=True)
class GeneratorSpec:
    """One tensor factor: a single generator with its relation kind."""

    name: str
    degree: int
    kind: str
    exponent: int | None = None  # only for truncated_power, e >= 2

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ValueError(f"generator {self.name!r} must have positive degree")
        if self.kind == KIND_EXTERIOR:
            if self.degree % 2 == 0:
                raise ValueError(f"exterior generator {self.name!r} must have odd degree")
            if self.exponent is not None:
                raise ValueError("exterior generators take no exponent")
        elif self.kind == KIND_TRUNCATED:
            if self.exponent is None or self.exponent < 2:
                raise ValueError(f"truncated power {self.name!r} needs exponent >= 2")
            # odd-degree truncated powers of exponent >= 3 would break graded
            # commutativity mod an odd prime (x^2 = -x^2 forces x^2 = 0)
            if self.degree % 2 != 0:
                raise ValueError(f"truncated power {self.name!r} must have even degree")
        elif self.kind == KIND_DIVIDED:
            if self.degree % 2 != 0:
                raise ValueError(f"divided power {self.name!r} must have even degree")
            if self.exponent is not None:
                raise ValueError("divided power generators take no exponent")
        else:
            raise ValueError(f"unknown generator kind {self.kind!r}")


@dataclass(frozen=True)
class AlgebraSpec:
    """A presented algebra: prime, truncation degree, ordered factors."""

    p: int
    truncation: int
    factors: tuple[GeneratorSpec, ...]

    def __post_init__(self) -> None:
        PrimeField(self.p)  # validates odd prime
        if self.truncation < 0:
            raise ValueError("truncation must be >= 0")
        names = [f.name for f in self.factors]
        if len(set(names)) != len(names):
            raise ValueError("factor names must be distinct")

    def prime_field(self) -> PrimeField:
        return PrimeField(self.p)


class Element:
    """A homogeneous element: sparse coefficients over one degree's basis."""

    __slots__ = ("algebra", "degree", "coeffs")

    def __init__(self, algebra: "GradedAlgebra", degree: int, coeffs: dict[int, int]):
        self.algebra = algebra
        self.degree = degree
        p = algebra.p
        self.coeffs = {i: v % p for i, v in coeffs.items() if v % p}

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "Element") -> "Element":
        if self.algebra is not other.algebra or self.degree != other.degree:
            raise ValueError("can only add elements of equal degree in one algebra")
        out = dict(self.coeffs)
        for i, v in other.coeffs.items():
            out[i] = out.get(i, 0) + v
        return Element(self.algebra, self.degree, out)

    def scale(self, c: int) -> "Element":
        return Element(self.algebra, self.degree, {i: v * c for i, v in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return (
            self.algebra is other.algebra
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"<0 (deg {self.degree})>"
        parts = [
            f"{v}*{self.algebra.label(self.degree, i)}" for i, v in sorted(self.coeffs.items())
        ]
        return "<" + " + ".join(parts) + f" (deg {self.degree})>"


class GradedAlgebra:
    """Common surface shared by presented algebras and their quotients."""

    p: int
    truncation: int

    def dim(self, d: int) -> int:
        raise NotImplementedError

    def label(self, d: int, i: int) -> str:
        raise NotImplementedError

    def basis_product(self, d1: int, i1: int, d2: int, i2: int) -> tuple[tuple[int, int], ...]:
        """Product of basis elements as ((index, coeff), ...) in degree d1+d2."""
        raise NotImplementedError

    # -- element helpers ---------------------------------------------------

    def zero(self, degree: int) -> Element:
        return Element(self, degree, {})

    def basis_element(self, degree: int, index: int) -> Element:
        if not (0 <= index < self.dim(degree)):
            raise ValueError(f"no basis element {index} in degree {degree}")
        return Element(self, degree, {index: 1})

    def one(self) -> Element:
        return self.basis_element(0, 0)

    def multiply(self, a: Element, b: Element) -> Element:
        if a.algebra is not self or b.algebra is not self:
            raise ValueError("elements belong to a different algebra")
        d = a.degree + b.degree
        if d > self.truncation:
            return self.zero(d)
        out: dict[int, int] = {}
        for i1, c1 in a.coeffs.items():
            for i2, c2 in b.coeffs.items():
                for j, c in self.basis_product(a.degree, i1, b.degree, i2):
                    out[j] = (out.get(j, 0) + c1 * c2 * c) % self.p
        return Element(self, d, out)

    def dims(self) -> list[int]:
        return [self.dim(d) for d in range(self.truncation + 1)]


class PresentedAlgebra(GradedAlgebra):
    """Monomial-basis model of an AlgebraSpec."""

    def __init__(self, spec: AlgebraSpec):
        self.spec = spec
        self.p = spec.p
        self.truncation = spec.truncation
        self._basis: list[list[tuple[int, ...]]] = [[] for _ in range(self.truncation + 1)]
        self._enumerate_monomials()
        self._index: list[dict[tuple[int, ...], int]] = [
            {m: i for i, m in enumerate(bucket)} for bucket in self._basis
        ]
        # parity of each factor's contribution, per unit exponent
        self._factor_degrees = tuple(f.degree for f in spec.factors)

    def _exponent_range(self, f: GeneratorSpec) -> range:
        if f.kind == KIND_EXTERIOR:
            return range(0, min(1, self.truncation // f.degree) + 1)
        if f.kind == KIND_TRUNCATED:
            assert f.exponent is not None
            return range(0, min(f.exponent - 1, self.truncation // f.degree) + 1)
        return range(0, self.truncation // f.degree + 1)

    def _enumerate_monomials(self) -> None:
        factors = self.spec.factors
        D = self.truncation

        def rec(t: int, prefix: tuple[int, ...], deg: int) -> None:
            if t == len(factors):
                self._basis[deg].append(prefix)
                return
            f = factors[t]
            for a in self._exponent_range(f):
                nd = deg + a * f.degree
                if nd > D:
                    break
                rec(t + 1, prefix + (a,), nd)

        rec(0, (), 0)
        # ascending recursion already yields factor-major lexicographic order
        for bucket in self._basis:
            assert bucket == sorted(bucket)

    def dim(self, d: int) -> int:
        if d < 0 or d > self.truncation:
            return 0
        return len(self._basis[d])

    def monomial(self, d: int, i: int) -> tuple[int, ...]:
        return self._basis[d][i]

    def label(self, d: int, i: int) -> str:
        mono = self._basis[d][i]
        parts = []
        for f, a in zip(self.spec.factors, mono):
            if a == 0:
                continue
            if f.kind == KIND_DIVIDED:
                parts.append(f"{f.name}^({a})")
            elif a == 1:
                parts.append(f.name)
            else:
                parts.append(f"{f.name}^{a}")
        return "*".join(parts) if parts else "1"

    def monomial_product(
        self, m1: tuple[int, ...], m2: tuple[int, ...]
    ) -> tuple[int, tuple[int, ...]] | None:
        """Product of two monomials: (coeff, monomial), or None when zero."""
        p = self.p
        factors = self.spec.factors
        # Koszul sign: factor t of m2 passes factors u > t of m1
        sign = 0
        suffix_odd = 0
        parities1 = [0] * len(factors)
        for t in range(len(factors) - 1, -1, -1):
            parities1[t] = suffix_odd
            if (m1[t] * factors[t].degree) % 2:
                suffix_odd += 1
        for t, f in enumerate(factors):
            if (m2[t] * f.degree) % 2:
                sign += parities1[t]
        coeff = 1
        out = []
        for t, f in enumerate(factors):
            a, b = m1[t], m2[t]
            s = a + b
            if f.kind == KIND_EXTERIOR:
                if s > 1:
                    return None
            elif f.kind == KIND_TRUNCATED:
                assert f.exponent is not None
                if s >= f.exponent:
                    return None
            else:
                c = binom_mod(s, a, p)
                if c == 0:
                    return None
                coeff = coeff * c % p
            out.append(s)
        if sign % 2:
            coeff = (-coeff) % p
        return coeff, tuple(out)

    def basis_product(self, d1: int, i1: int, d2: int, i2: int) -> tuple[tuple[int, int], ...]:
        d = d1 + d2
        if d > self.truncation:
            return ()
        res = self.monomial_product(self._basis[d1][i1], self._basis[d2][i2])
        if res is None:
            return ()
        coeff, mono = res
        return ((self._index[d][mono], coeff),)


def build_algebra(spec: AlgebraSpec) -> PresentedAlgebra:
    return PresentedAlgebra(spec)


class QuotientAlgebra(GradedAlgebra):
    """A/I for a graded ideal I, on coset-representative monomials.

    Per degree d the ideal component I_d is the span of all monomial
    multiples of the given generators; representatives are the echelon
    complement of I_d in the parent's monomial basis, so reduction mod I_d
    is elimination against the stored echelon rows.
    """

    def __init__(self, parent: GradedAlgebra, generators: list[Element]):
        for g in generators:
            if g.algebra is not parent:
                raise ValueError("generator from a different algebra")
            if g.degree < 1:
                raise ValueError("ideal generators must have positive degree")
        self.parent = parent
        self.p = parent.p
        self.truncation = parent.truncation
        fp = PrimeField(self.p)
        self._ideal: list[Subspace] = []
        self._reps: list[list[int]] = []
        self._rep_pos: list[dict[int, int]] = []
        for d in range(self.truncation + 1):
            vectors: list[Row] = []
            for g in generators:
                xd = d - g.degree
                if xd < 0:
                    continue
                for i in range(parent.dim(xd)):
                    prod = parent.multiply(parent.basis_element(xd, i), g)
                    if prod.coeffs:
                        vectors.append(dict(prod.coeffs))
            ideal = Subspace.from_vectors(parent.dim(d), vectors, fp)
            pivots = set(ideal.pivot_cols())
            reps = [i for i in range(parent.dim(d)) if i not in pivots]
            self._ideal.append(ideal)
            self._reps.append(reps)
            self._rep_pos.append({pi: qi for qi, pi in enumerate(reps)})
        self._fp = fp
        self._product_cache: dict[tuple[int, int, int, int], tuple[tuple[int, int], ...]] = {}

    def dim(self, d: int) -> int:
        if d < 0 or d > self.truncation:
            return 0
        return len(self._reps[d])

    def ideal_dim(self, d: int) -> int:
        return self._ideal[d].dim

    def rep_parent_index(self, d: int, i: int) -> int:
        return self._reps[d][i]

    def label(self, d: int, i: int) -> str:
        return self.parent.label(d, self._reps[d][i])

    def reduce_parent_vector(self, d: int, vec: Row) -> dict[int, int]:
        """Parent-coordinate vector -> quotient coordinates mod I_d."""
        reduced = self._ideal[d].reduce(vec, self._fp)
        return {self._rep_pos[d][i]: v for i, v in reduced.items()}

    def basis_product(self, d1: int, i1: int, d2: int, i2: int) -> tuple[tuple[int, int], ...]:
        d = d1 + d2
        if d > self.truncation:
            return ()
        key = (d1, i1, d2, i2)
        cached = self._product_cache.get(key)
        if cached is not None:
            return cached
        pa = self.parent.basis_element(d1, self._reps[d1][i1])
        pb = self.parent.basis_element(d2, self._reps[d2][i2])
        prod = self.parent.multiply(pa, pb)
        out = tuple(sorted(self.reduce_parent_vector(d, prod.coeffs).items()))
        self._product_cache[key] = out
        return out


def quotient_algebra(algebra: GradedAlgebra, generators: list[Element]) -> QuotientAlgebra:
    return QuotientAlgebra(algebra, generators)


@dataclass(frozen=True)
class GeneratorProfile:
    """Degree -> number of minimal generators, within truncation."""

    counts: dict[int, int]
    truncation: int

    def __post_init__(self) -> None:
        for d, c in self.counts.items():
            if c < 0:
                raise ValueError("generator counts must be >= 0")
            if d == 0:
                raise ValueError("degree 0 never carries ideal generators")


def ideal_minimal_generators(algebra: GradedAlgebra) -> GeneratorProfile:
    """Minimal generator counts of the augmentation ideal, per degree.

    Graded Nakayama: in degree d the count is dim A_d minus the dimension
    of the span of all products x*y with x, y homogeneous of positive
    degrees summing to d.
    """
    fp = PrimeField(algebra.p)
    counts: dict[int, int] = {}
    for d in range(1, algebra.truncation + 1):
        if algebra.dim(d) == 0:
            continue
        elim = Eliminator(fp, reduced=False)
        for a in range(1, d):
            b = d - a
            for i1 in range(algebra.dim(a)):
                for i2 in range(algebra.dim(b)):
                    prod = algebra.basis_product(a, i1, b, i2)
                    if prod:
                        elim.add({j: c for j, c in prod})
        count = algebra.dim(d) - elim.rank
        if count:
            counts[d] = count
    return GeneratorProfile(counts, algebra.truncation)


# -- spec parsing and presets ---------------------------------------------


def _kind_from_json(kind: object) -> tuple[str, int | None]:
    if kind == KIND_EXTERIOR:
        return KIND_EXTERIOR, None
    if kind == KIND_DIVIDED:
        return KIND_DIVIDED, None
    if isinstance(kind, dict) and set(kind) == {KIND_TRUNCATED}:
        e = kind[KIND_TRUNCATED]
        if not isinstance(e, int):
            raise ValueError("truncated_power exponent must be an integer")
        return KIND_TRUNCATED, e
    raise ValueError(f"unrecognized generator kind: {kind!r}")


def algebra_spec_from_dict(doc: dict) -> AlgebraSpec:
    """Parse the documented JSON shape into an AlgebraSpec.

    {"p": int, "truncation": int,
     "factors": [{"name": str, "degree": int,
                  "kind": "exterior" | {"truncated_power": e} | "divided_power"}]}
    """
    if not isinstance(doc, dict):
        raise ValueError("algebra spec must be a JSON object")
    missing = {"p", "truncation", "factors"} - set(doc)
    if missing:
        raise ValueError(f"algebra spec missing keys: {sorted(missing)}")
    factors = []
    if not isinstance(doc["factors"], list):
        raise ValueError("factors must be a list")
    for entry in doc["factors"]:
        if not isinstance(entry, dict) or {"name", "degree", "kind"} - set(entry):
            raise ValueError(f"malformed factor entry: {entry!r}")
        kind, exponent = _kind_from_json(entry["kind"])
        factors.append(
            GeneratorSpec(str(entry["name"]), int(entry["degree"]), kind, exponent)
        )
    return AlgebraSpec(int(doc["p"]), int(doc["truncation"]), tuple(factors))


def algebra_spec_to_dict(spec: AlgebraSpec) -> dict:
    factors = []
    for f in spec.factors:
        kind: object = f.kind
        if f.kind == KIND_TRUNCATED:
            kind = {KIND_TRUNCATED: f.exponent}
        factors.append({"name": f.name, "degree": f.degree, "kind": kind})
    return {"p": spec.p, "truncation": spec.truncation, "factors": factors}


def preset_spec(name: str, p: int, truncation: int) -> AlgebraSpec:
    """Expand a named preset into a full AlgebraSpec."""
    if name == "thompson-mod-p":
        return AlgebraSpec(
            p,
            truncation,
            (
                GeneratorSpec("alpha", 1, KIND_EXTERIOR),
                GeneratorSpec("beta", 1, KIND_EXTERIOR),
                GeneratorSpec("u", 2, KIND_DIVIDED),
            ),
        )
    raise ValueError(f"unknown preset {name!r}")


PRESET_NAMES = ("thompson-mod-p",)
