"""Cyclic-group cohomology of S and the restriction to the index-p^2 subgroup.

The cohomology of the infinite cyclic group acting on S collapses to two
columns: H^0 = invariants S^sigma = ker(1 - sigma) and H^1 = coinvariants
S_sigma = coker(1 - sigma). Restriction to the index-p^2 subgroup is the
norm sum(sigma^k, k < p^2) on coinvariant classes, and its kernel is the
central object: by the orbit-type combinatorics it should be exactly the
span of type-1 and type-2 classes. kernel_basis computes both routes (the
nullspace of the norm matrix and the combinatorial span) and refuses to
continue when they disagree, since a mismatch signals a sign-convention
bug rather than a mathematical fact.

Products use the two cup maps of the collapsed model: H^0 x H^1 -> H^1 is
multiply-then-project, H^1 x H^1 -> H^2 = 0 is identically zero. Minimal
generator counts of ker(res) as an S^sigma-module come from graded
Nakayama counting over those cups. The coinvariant summand carries a
uniform cohomological degree shift of one, reported as metadata only; all
computations here are in internal degree.

The *_oracle functions recompute kernel dimensions and generator counts
from raw matrix ranks and echelon coset representatives, never consulting
orbit types; the pipelines compare the two routes degree by degree.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .cyclic import OrbitClass, TensorPower, Word
from .errors import InternalCheckError
from .gradedalg import Element, GradedAlgebra, QuotientAlgebra, quotient_algebra
from .linalg import (
    Eliminator,
    PrimeField,
    Row,
    SparseMatrix,
    Subspace,
    intersection_dim,
    nullspace,
)

COHOMOLOGICAL_SHIFT = 1  # S_sigma classes sit one cohomological degree up

WordVector = dict[Word, int]
ClassVector = dict[int, int]


@dataclass
class DegreeData:
    """Per-degree orbit data with the projection onto coinvariants."""

    degree: int
    classes: list[OrbitClass]
    # word -> (class index, link sign): [word] = sign * [rep] in S_sigma
    word_to_class: dict[Word, tuple[int, int]]
    type_counts: tuple[int, int, int]

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    def kernel_class_indices(self) -> list[int]:
        return [i for i, c in enumerate(self.classes) if c.type in (1, 2)]


@dataclass
class InvariantSpace:
    """ker(1 - sigma) on one degree, with its explicit word-vector basis."""

    degree: int
    basis: list[WordVector]

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass
class CoinvariantSpace:
    """coker(1 - sigma) on one degree: orbit representatives as coset basis."""

    degree: int
    representatives: list[Word]
    image_dim: int  # dim im(1 - sigma)

    @property
    def dim(self) -> int:
        return len(self.representatives)


class TwoColumnModel:
    """Invariants, coinvariants, restriction and cups for one tensor power."""

    def __init__(self, tensor: TensorPower):
        self.S = tensor
        self.p = tensor.p
        self.fp = PrimeField(tensor.p)
        self._degree_data: dict[int, DegreeData] = {}

    # -- per-degree structure -------------------------------------------------

    def degree_data(self, d: int) -> DegreeData:
        cached = self._degree_data.get(d)
        if cached is None:
            cached = self.build_degree_data(d)
            self._degree_data[d] = cached
        return cached

    def build_degree_data(self, d: int) -> DegreeData:
        """Pure computation of one degree's orbit data (safe to run in workers)."""
        if d > self.S.truncation:
            raise ValueError(f"degree {d} beyond truncation {self.S.truncation}")
        classes = self.S.classify_orbits(d)
        w2c: dict[Word, tuple[int, int]] = {}
        counts = [0, 0, 0]
        for ci, cls in enumerate(classes):
            counts[cls.type - 1] += 1
            for w, s in zip(cls.words, cls.signs):
                w2c[w] = (ci, s)
        return DegreeData(d, classes, w2c, (counts[0], counts[1], counts[2]))

    def adopt_degree_data(self, data: DegreeData) -> None:
        self._degree_data.setdefault(data.degree, data)

    # -- invariants and coinvariants -------------------------------------------

    def invariant_basis(self, d: int) -> list[WordVector]:
        """Basis of S^sigma in degree d: one vector per orbit class.

        Type-1 words are fixed; type-2 classes contribute the p-fold partial
        orbit sum; type-3 classes the full signed orbit sum. Each vector is
        verified to be exactly sigma-fixed.
        """
        data = self.degree_data(d)
        p = self.p
        out: list[WordVector] = []
        for cls in data.classes:
            take = {1: 1, 2: p, 3: p * p}[cls.type]
            vec = {w: s % p for w, s in zip(cls.words[:take], cls.signs[:take])}
            out.append(vec)
        for vec in out:
            if self.apply_one_minus_sigma(vec, d):
                raise InternalCheckError(f"invariant basis vector not sigma-fixed at degree {d}")
        return out

    def invariants(self, d: int) -> InvariantSpace:
        return InvariantSpace(d, self.invariant_basis(d))

    def coinvariants(self, d: int) -> CoinvariantSpace:
        data = self.degree_data(d)
        image_dim = len(self.S.words(d)) - data.n_classes
        return CoinvariantSpace(d, [c.rep for c in data.classes], image_dim)

    def dim_invariants(self, d: int) -> int:
        return self.degree_data(d).n_classes

    def dim_coinvariants(self, d: int) -> int:
        return self.degree_data(d).n_classes

    def apply_sigma(self, vec: WordVector, d: int) -> WordVector:
        p = self.p
        out: WordVector = {}
        for w, c in vec.items():
            s, img = self.S.sigma(w, d)
            v = (out.get(img, 0) + s * c) % p
            if v:
                out[img] = v
            else:
                out.pop(img, None)
        return out

    def apply_one_minus_sigma(self, vec: WordVector, d: int) -> WordVector:
        p = self.p
        out = dict(vec)
        for w, c in self.apply_sigma(vec, d).items():
            v = (out.get(w, 0) - c) % p
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return out

    def project(self, vec: WordVector, d: int) -> ClassVector:
        """Image of a degree-d vector in the coinvariants, in class coordinates."""
        data = self.degree_data(d)
        p = self.p
        out: ClassVector = {}
        for w, c in vec.items():
            ci, link = data.word_to_class[w]
            v = (out.get(ci, 0) + link * c) % p
            if v:
                out[ci] = v
            else:
                out.pop(ci, None)
        return out

    def lift_class_vector(self, t: ClassVector, d: int) -> WordVector:
        """One representative word vector for a coinvariant class vector."""
        data = self.degree_data(d)
        return {data.classes[ci].rep: c for ci, c in t.items()}

    # -- restriction -------------------------------------------------------------

    def restriction_matrix(self, d: int) -> SparseMatrix:
        """Norm map from coinvariant class coordinates into S^d."""
        data = self.degree_data(d)
        words = self.S.word_index(d)
        m = SparseMatrix(len(words), data.n_classes)
        for ci, cls in enumerate(data.classes):
            for w, c in self.S.norm_of_word(cls.rep, d).items():
                m.add_at(words[w], ci, c, self.p)
        return m

    def restriction_of_class(self, d: int, ci: int) -> WordVector:
        data = self.degree_data(d)
        return self.S.norm_of_word(data.classes[ci].rep, d)

    def kernel_basis(self, d: int) -> tuple[Subspace, list[int]]:
        """ker(res) on the coinvariants, dual-route checked.

        The nullspace of the restriction matrix must coincide with the span
        of type-1 and type-2 class coordinates; any mismatch aborts.
        """
        data = self.degree_data(d)
        linear = nullspace(self.restriction_matrix(d), self.fp)
        t12 = data.kernel_class_indices()
        combinatorial = Subspace.from_vectors(
            data.n_classes, [{ci: 1} for ci in t12], self.fp
        )
        if linear != combinatorial:
            raise InternalCheckError(
                f"kernel of restriction at degree {d}: nullspace (dim {linear.dim}) "
                f"!= type-1/type-2 span (dim {combinatorial.dim})"
            )
        return combinatorial, t12

    # -- cup products ---------------------------------------------------------------

    def cup_h0_h1(self, s: WordVector, a: int, t: ClassVector, b: int) -> ClassVector:
        """H^0 x H^1 -> H^1: multiply a representative and project back."""
        if a + b > self.S.truncation:
            raise ValueError(f"cup degree {a + b} beyond truncation {self.S.truncation}")
        prod = self.S.multiply_elements(s, self.lift_class_vector(t, b))
        return self.project(prod, a + b)

    def cup_h1_h1(self, t1: ClassVector, t2: ClassVector) -> ClassVector:
        """H^1 x H^1 -> H^2 = 0: identically the zero class."""
        return {}

    def verify_cup_well_defined(self, a: int, b: int, samples: int = 8, seed: int = 0) -> None:
        """Sample representative shifts by im(1 - sigma); classes must agree."""
        if a + b > self.S.truncation:
            raise ValueError("degree overflow")
        rng = random.Random(seed)
        words_b = self.S.words(b)
        data_b = self.degree_data(b)
        invs = self.invariant_basis(a)
        if not invs or not data_b.classes or not words_b:
            return
        for _ in range(samples):
            s = invs[rng.randrange(len(invs))]
            ci = rng.randrange(data_b.n_classes)
            rep = {data_b.classes[ci].rep: 1}
            x = {words_b[rng.randrange(len(words_b))]: rng.randrange(1, self.p)}
            shift = self.apply_one_minus_sigma(x, b)
            moved = dict(rep)
            for w, c in shift.items():
                v = (moved.get(w, 0) + c) % self.p
                if v:
                    moved[w] = v
                else:
                    moved.pop(w, None)
            lhs = self.project(self.S.multiply_elements(s, rep), a + b)
            rhs = self.project(self.S.multiply_elements(s, moved), a + b)
            if lhs != rhs:
                raise InternalCheckError(
                    f"cup product changed under representative shift at degrees ({a},{b})"
                )

    # -- kernel generator profile -----------------------------------------------------

    def kernel_generator_profile(self, max_degree: int) -> list[dict]:
        """Per-degree minimal S^sigma-module generator counts of ker(res).

        Graded Nakayama over the invariants: at degree d, count the kernel
        classes modulo the span of cup products of positive-degree
        invariants with lower-degree kernel classes. Every cup product is
        checked to land inside the kernel span.
        """
        rows: list[dict] = []
        kernel_classes: dict[int, list[int]] = {}
        for d in range(max_degree + 1):
            data = self.degree_data(d)
            _, t12 = self.kernel_basis(d)
            kernel_classes[d] = t12
            pos = {ci: k for k, ci in enumerate(t12)}
            elim = Eliminator(self.fp, reduced=False)
            for a in range(1, d + 1):
                lower = kernel_classes[d - a]
                if not lower:
                    continue
                for s in self.invariant_basis(a):
                    for ci in lower:
                        prod = self.cup_h0_h1(s, a, {ci: 1}, d - a)
                        if any(k not in pos for k in prod):
                            raise InternalCheckError(
                                f"cup product left the kernel span at degree {d}"
                            )
                        if prod:
                            elim.add({pos[k]: v for k, v in prod.items()})
            t1, t2, t3 = data.type_counts
            rows.append(
                {
                    "degree": d,
                    "dim_S": len(self.S.words(d)),
                    "orbit_counts": {"type1": t1, "type2": t2, "type3": t3},
                    "dim_invariants": data.n_classes,
                    "dim_coinvariants": data.n_classes,
                    "dim_kernel": len(t12),
                    "min_generators": len(t12) - elim.rank,
                }
            )
        return rows

    # -- the 1-bar submodule check -------------------------------------------------------

    def one_module_check(self, max_degree: int) -> dict:
        """Verify the submodule generated by the class of 1 tensor ... tensor 1.

        Cupping invariants of degree d with that class is exactly the
        projection to coinvariants; the resulting span must equal the span
        of type-1 classes and meet the type-2 span trivially, degree by
        degree.
        """
        rows = []
        for d in range(max_degree + 1):
            data = self.degree_data(d)
            n = data.n_classes
            produced = [self.project(s, d) for s in self.invariant_basis(d)]
            sub = Subspace.from_vectors(n, produced, self.fp)
            t1_span = Subspace.from_vectors(
                n, [{i: 1} for i, c in enumerate(data.classes) if c.type == 1], self.fp
            )
            t2_span = Subspace.from_vectors(
                n, [{i: 1} for i, c in enumerate(data.classes) if c.type == 2], self.fp
            )
            if sub != t1_span:
                raise InternalCheckError(
                    f"1-bar submodule differs from type-1 span at degree {d}"
                )
            meet = intersection_dim(sub, t2_span, self.fp)
            if meet != 0:
                raise InternalCheckError(
                    f"1-bar submodule meets type-2 span at degree {d} (dim {meet})"
                )
            rows.append(
                {
                    "degree": d,
                    "submodule_dim": sub.dim,
                    "type1_count": data.type_counts[0],
                    "type2_intersection_dim": meet,
                }
            )
        return {"passed": True, "rows": rows}


# -- surjectivity of the quotient map onto kernels ----------------------------------


def surjectivity_check(
    model: TwoColumnModel, generators: list[Element], max_degree: int
) -> dict:
    """Check that quotienting R maps ker(res) of S onto ker(res) of S'.

    Builds R' = R/I and S' = R'^(tensor p^2), lifts each type-1/type-2
    class of S' to the word of S with the same representative monomials,
    and confirms the lift lies in ker(res) of S and maps back onto the
    class. Returns per-degree counts; failure is flagged, not raised.
    """
    algebra = model.S.algebra
    quotient = quotient_algebra(algebra, generators)
    model_q = TwoColumnModel(TensorPower(quotient))
    p = model.p

    def map_word_to_quotient(w: Word) -> WordVector:
        # slotwise reduction mod I; representative monomials map to themselves
        terms: list[tuple[int, tuple[int, ...]]] = [(1, ())]
        for c in w:
            d_slot = model.S.code_degree(c)
            j_slot = model.S.code_index(c)
            red = quotient.reduce_parent_vector(d_slot, {j_slot: 1})
            if not red:
                return {}
            nxt = []
            for coeff, prefix in terms:
                for qj, qc in red.items():
                    nxt.append(
                        (coeff * qc % p, prefix + (model_q.S.code(d_slot, qj),))
                    )
            terms = nxt
        out: WordVector = {}
        for coeff, qw in terms:
            v = (out.get(qw, 0) + coeff) % p
            if v:
                out[qw] = v
        return out

    rows = []
    all_onto = True
    for d in range(max_degree + 1):
        data_q = model_q.degree_data(d)
        data_s = model.degree_data(d)
        lifted = 0
        t12 = data_q.kernel_class_indices()
        for ci in t12:
            rep_q = data_q.classes[ci].rep
            lift = tuple(
                model.S.code(
                    model_q.S.code_degree(c),
                    quotient.rep_parent_index(
                        model_q.S.code_degree(c), model_q.S.code_index(c)
                    ),
                )
                for c in rep_q
            )
            s_ci, _ = data_s.word_to_class[lift]
            if data_s.classes[s_ci].type != data_q.classes[ci].type:
                continue  # lift escaped the kernel: not a valid preimage
            image = map_word_to_quotient(data_s.classes[s_ci].rep)
            proj = model_q.project(image, d)
            if set(proj) == {ci}:
                lifted += 1
        onto = lifted == len(t12)
        all_onto = all_onto and onto
        rows.append(
            {
                "degree": d,
                "kernel_classes": len(t12),
                "lifted": lifted,
                "onto": onto,
            }
        )
    return {"onto": all_onto, "rows": rows}


# -- brute-force oracle ---------------------------------------------------------------


def oracle_kernel_rows(tensor: TensorPower, max_degree: int) -> list[dict]:
    """Recompute kernel dimensions and generator counts from raw matrices.

    No orbit types anywhere: coinvariants are echelon coset representatives
    modulo im(1 - sigma), the kernel is the nullspace of the norm composed
    with lifting, and Nakayama spans are accumulated from products of
    nullspace invariants with lifted kernel vectors.
    """
    fp = PrimeField(tensor.p)
    rows: list[dict] = []
    # per degree: (complement word positions, im(1-sigma) subspace, kernel basis rows)
    state: dict[int, tuple[list[int], Subspace, list[Row]]] = {}
    inv_bases: dict[int, list[WordVector]] = {}
    for d in range(max_degree + 1):
        words = tensor.words(d)
        index = tensor.word_index(d)
        n = len(words)
        m1 = tensor.one_minus_sigma(d)
        image_vectors: list[Row] = []
        for j, w in enumerate(words):
            s, img = tensor.sigma(w, d)
            vec: Row = {j: 1}
            k = index[img]
            vec[k] = (vec.get(k, 0) - s) % fp.p
            image_vectors.append({c: v for c, v in vec.items() if v % fp.p})
        image = Subspace.from_vectors(n, image_vectors, fp)
        pivots = set(image.pivot_cols())
        complement = [i for i in range(n) if i not in pivots]
        comp_pos = {wi: k for k, wi in enumerate(complement)}

        inv_rows = nullspace(m1, fp).rows
        inv_bases[d] = [{words[i]: v for i, v in row.items()} for row in inv_rows]

        # kernel of the norm on coset representatives
        norm_cols = SparseMatrix(n, len(complement))
        for k, wi in enumerate(complement):
            for w, c in tensor.norm_of_word(words[wi], d).items():
                norm_cols.add_at(index[w], k, c, fp.p)
        kernel = nullspace(norm_cols, fp)
        state[d] = (complement, image, kernel.rows)

        # Nakayama: products of positive-degree invariants with lower kernels
        elim = Eliminator(fp, reduced=False)
        for a in range(1, d + 1):
            lower = state.get(d - a)
            if lower is None or not lower[2]:
                continue
            lower_complement, _, lower_kernel = lower
            lower_words = tensor.words(d - a)
            for s_vec in inv_bases[a]:
                for krow in lower_kernel:
                    lift = {lower_words[lower_complement[k]]: v for k, v in krow.items()}
                    prod = tensor.multiply_elements(s_vec, lift)
                    reduced = image.reduce({index[w]: c for w, c in prod.items()}, fp)
                    if reduced:
                        elim.add({comp_pos[i]: v for i, v in reduced.items()})
        rows.append(
            {
                "degree": d,
                "dim_S": n,
                "dim_invariants": len(inv_rows),
                "dim_coinvariants": len(complement),
                "dim_kernel": len(kernel.rows),
                "min_generators": len(kernel.rows) - elim.rank,
            }
        )
    return rows
