"""The abelian counterexample at finite truncation.

For H a direct sum of n copies of the plane over F_p with a unipotent
order-p automorphism sigma acting diagonally, the dual action on
H^1(H, k) = k^{2n} fixes the x-duals' values and subtracts them from the
y-duals: (sigma g)(x_i) = g(x_i), (sigma g)(y_i) = g(y_i) - g(x_i). The
norm sum(sigma^i, i < p) vanishes for odd p, the invariants coincide with
im(1 - sigma) (both are the duals vanishing on every x_i), and the
obstruction quotient H^1 / (invariants + im(1 - sigma)) has dimension
exactly n, growing without bound in n.

Only H^1 is modelled; the correction from the differential into
H^3(Z/p, k) cuts the relevant term down by at most one dimension and is
reported as a bound, never computed.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalCheckError
from .linalg import (
    PrimeField,
    Row,
    SparseMatrix,
    Subspace,
    nullspace,
    subspace_sum,
)

EINFTY_CODIMENSION_BOUND = 1  # dim H^3(Z/p, k)


@dataclass(frozen=True)
class AbelianExampleConfig:
    p: int
    n: int

    def __post_init__(self) -> None:
        PrimeField(self.p)
        if self.n < 1:
            raise ValueError("need at least one copy of the plane")


@dataclass(frozen=True)
class DualSpace:
    """H^1(H, k) with its sigma-action; basis x*_1, y*_1, ..., x*_n, y*_n."""

    n: int
    labels: tuple[str, ...]
    sigma: SparseMatrix


def build_dual(cfg: AbelianExampleConfig) -> DualSpace:
    """The 2n x 2n dual action matrix: x*_i -> x*_i - y*_i, y*_i -> y*_i.

    In coordinates (a_i, b_i) = (g(x_i), g(y_i)) this is exactly
    (a, b) -> (a, b - a) per copy.
    """
    dim = 2 * cfg.n
    m = SparseMatrix(dim, dim)
    labels = []
    for i in range(cfg.n):
        xi, yi = 2 * i, 2 * i + 1
        labels += [f"x*_{i + 1}", f"y*_{i + 1}"]
        m.set(xi, xi, 1)
        m.set(yi, yi, 1)
        m.set(yi, xi, cfg.p - 1)
    return DualSpace(cfg.n, tuple(labels), m)


def norm_operator(cfg: AbelianExampleConfig) -> SparseMatrix:
    """Matrix of sum(sigma^i, i < p) on the dual space; zero for odd p."""
    dual = build_dual(cfg)
    dim = 2 * cfg.n
    acc = SparseMatrix(dim, dim)
    power = SparseMatrix.identity(dim)
    for _ in range(cfg.p):
        for (r, c), v in power.entries.items():
            acc.add_at(r, c, v, cfg.p)
        power = dual.sigma.compose(power, cfg.p)
    return acc


def _one_minus_sigma(cfg: AbelianExampleConfig) -> SparseMatrix:
    dual = build_dual(cfg)
    dim = 2 * cfg.n
    m = SparseMatrix(dim, dim)
    for i in range(dim):
        m.add_at(i, i, 1, cfg.p)
    for (r, c), v in dual.sigma.entries.items():
        m.add_at(r, c, -v, cfg.p)
    return m


def _image_subspace(m: SparseMatrix, fp: PrimeField) -> Subspace:
    columns: dict[int, Row] = {}
    for (r, c), v in m.entries.items():
        columns.setdefault(c, {})[r] = v
    return Subspace.from_vectors(m.rows, list(columns.values()), fp)


def invariants_subspace(cfg: AbelianExampleConfig) -> Subspace:
    return nullspace(_one_minus_sigma(cfg), PrimeField(cfg.p))


def image_subspace(cfg: AbelianExampleConfig) -> Subspace:
    return _image_subspace(_one_minus_sigma(cfg), PrimeField(cfg.p))


def e2_terms(cfg: AbelianExampleConfig) -> tuple[int, int, int]:
    """(dim E2^{1,1}, dim invariants, dim im(1 - sigma)).

    E2^{1,1} = ker(N)/im(1 - sigma); the equality of invariants and
    im(1 - sigma) as subspaces is asserted, not assumed.
    """
    fp = PrimeField(cfg.p)
    dim = 2 * cfg.n
    norm = norm_operator(cfg)
    ker_norm = nullspace(norm, fp)
    inv = invariants_subspace(cfg)
    img = image_subspace(cfg)
    if inv != img:
        raise InternalCheckError("invariants differ from im(1 - sigma)")
    return ker_norm.dim - img.dim, inv.dim, img.dim


def cup_with_f(cfg: AbelianExampleConfig, g: Row) -> Row:
    """Cup an invariant dual vector with the degree-one kernel generator.

    The product is the class of g in ker(N)/im(1 - sigma), returned as the
    canonical coset representative (reduction against im(1 - sigma)).
    """
    fp = PrimeField(cfg.p)
    g = {i: v % cfg.p for i, v in g.items() if v % cfg.p}
    for i in g:
        if not 0 <= i < 2 * cfg.n:
            raise ValueError("vector outside the dual space")
    inv = invariants_subspace(cfg)
    if not inv.contains(g, fp):
        raise ValueError("vector is not sigma-invariant")
    return image_subspace(cfg).reduce(g, fp)


def obstruction_dim(cfg: AbelianExampleConfig) -> int:
    """dim H^1 - dim(invariants + im(1 - sigma)); must come out to n."""
    fp = PrimeField(cfg.p)
    total = subspace_sum(invariants_subspace(cfg), image_subspace(cfg), fp)
    out = 2 * cfg.n - total.dim
    if out != cfg.n:
        raise InternalCheckError(
            f"obstruction dimension {out} != n = {cfg.n} for p = {cfg.p}"
        )
    return out


def abelian_report(cfg: AbelianExampleConfig) -> dict:
    """All reported quantities for one (p, n) configuration."""
    dim_e2_11, dim_inv, dim_img = e2_terms(cfg)
    norm = norm_operator(cfg)
    return {
        "p": cfg.p,
        "n": cfg.n,
        "dim_E2_11": dim_e2_11,
        "dim_invariants": dim_inv,
        "dim_image": dim_img,
        "obstruction_dim": obstruction_dim(cfg),
        "norm_is_zero": not norm.entries,
        # rank-1 term in filtration degree (1, 0): the map killing H and
        # sending the quotient generator to 1
        "dim_E2_10": 1,
        # the E2 term may exceed the abutment by at most this much; bound
        # only, the differential is never computed
        "e2_vs_einfty_codimension_bound": EINFTY_CODIMENSION_BOUND,
    }
