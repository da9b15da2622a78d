"""Rank oracle for the hypersurface deformation count.

For a random integer-coefficient anticanonical hypersurface, the graded
piece of its Jacobian ideal in the homogeneous coordinate ring has rank
gamma = n + 1 + sum of facet interior point counts, so the quotient has
dimension l(Delta) - gamma. That quotient dimension must agree with the
combinatorial untwisted deformation count; this module checks the
agreement by exact integer linear algebra, independently of the face-sum
formulas.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import HypothesisError
from .linalg import integer_determinant, rational_rank
from .polytope import ReflexivePair, Vector

COEFF_LOW = 1
COEFF_HIGH = 10**6
MAX_DRAWS = 5


def monomial_basis(pair: ReflexivePair) -> tuple[Vector, ...]:
    """Lattice points of delta in lexicographic order; one monomial each."""
    return pair.delta.lattice_points()


def draw_coefficients(pair: ReflexivePair, seed: int) -> dict[Vector, int]:
    """Seeded nonzero integer coefficient for every monomial, drawn in
    basis order so a seed pins the whole map."""
    rng = random.Random(seed)
    return {m: rng.randint(COEFF_LOW, COEFF_HIGH) for m in monomial_basis(pair)}


def lifted_ray_subset(pair: ReflexivePair) -> tuple[Vector, ...]:
    """Lexicographically first n+1 rays whose lifts (v, 1) are linearly
    independent. Such a subset always exists because the lifted rays span."""
    chosen: list[Vector] = []
    lifted: list[list[int]] = []
    for ray in pair.delta_polar.vertices:
        trial = lifted + [list(ray) + [1]]
        if rational_rank(trial) == len(trial):
            chosen.append(ray)
            lifted.append(list(ray) + [1])
            if len(chosen) == pair.n + 1:
                return tuple(chosen)
    raise AssertionError("lifted rays failed to span")


def euler_rows(pair: ReflexivePair, coeffs, rays=None) -> list[list[int]]:
    """One row per ray: entry at column m is lambda_m * (<m, v> + 1).

    Defaults to the independent lifted subset; pass explicit rays to build
    the full redundant system.
    """
    if rays is None:
        rays = lifted_ray_subset(pair)
    basis = monomial_basis(pair)
    return [[coeffs[m] * (_dot(m, v) + 1) for m in basis] for v in rays]


def facet_interior_pairs(pair: ReflexivePair) -> tuple[tuple[Vector, Vector], ...]:
    """(ray, interior point of its dual facet) pairs, in ray order then
    lexicographic point order. Labels the facet_interior_rows."""
    facet_of = {}
    for face in pair.delta.faces(pair.n - 1):
        (idx,) = face.active_facets
        facet_of[pair.delta.facets[idx].normal] = face
    out = []
    for ray in pair.delta_polar.vertices:
        face = facet_of[ray]
        for point in face.interior_lattice_points():
            out.append((ray, point))
    return tuple(out)


def facet_interior_rows(pair: ReflexivePair, coeffs) -> list[list[int]]:
    """One row per (ray v_i, interior point m* of the dual facet): entry at
    column m is lambda_{m-m*} * (<m-m*, v_i> + 1) when m-m* lies in delta,
    zero otherwise."""
    basis = monomial_basis(pair)
    in_delta = set(basis)
    rows = []
    for ray, star in facet_interior_pairs(pair):
        row = []
        for m in basis:
            shifted = tuple(a - b for a, b in zip(m, star))
            if shifted in in_delta:
                row.append(coeffs[shifted] * (_dot(shifted, ray) + 1))
            else:
                row.append(0)
        rows.append(row)
    return rows


def gamma(pair: ReflexivePair) -> int:
    """Target rank: n + 1 + total facet interior points of delta."""
    return pair.n + 1 + len(facet_interior_pairs(pair))


def assemble_matrix(pair: ReflexivePair, coeffs) -> list[list[int]]:
    return euler_rows(pair, coeffs) + facet_interior_rows(pair, coeffs)


@dataclass(frozen=True)
class JacobianReport:
    seed: int
    seed_used: int
    attempts: int
    rank: int
    gamma: int
    l_delta: int
    quotient: int
    formula: int
    agrees: bool
    generic: bool


def jacobian_rank_check(pair: ReflexivePair, seed: int = 0, force: bool = False) -> JacobianReport:
    """Draw coefficients, compute the exact rank, and compare the quotient
    dimension with the combinatorial deformation count.

    A draw with rank below gamma is non-generic; up to MAX_DRAWS consecutive
    seeds are tried before reporting failure (which indicates a bug, not bad
    luck, at these coefficient sizes).
    """
    from .hodge import hn21_untwisted

    if pair.n < 4 and not force:
        raise HypothesisError(
            "ambient dimension below 4; pass force to compute anyway"
        )
    g = gamma(pair)
    l_delta = len(monomial_basis(pair))
    formula = hn21_untwisted(pair, force)
    rank = -1
    seed_used = seed
    attempts = 0
    for offset in range(MAX_DRAWS):
        seed_used = seed + offset
        attempts = offset + 1
        coeffs = draw_coefficients(pair, seed_used)
        rank = rational_rank(assemble_matrix(pair, coeffs))
        assert rank <= g, "rank above row count is impossible"
        if rank == g:
            break
    generic = rank == g
    quotient = l_delta - rank
    return JacobianReport(
        seed=seed,
        seed_used=seed_used,
        attempts=attempts,
        rank=rank,
        gamma=g,
        l_delta=l_delta,
        quotient=quotient,
        formula=formula,
        agrees=generic and quotient == formula,
        generic=generic,
    )


def independent_vertex_subset(pair: ReflexivePair) -> tuple[Vector, ...]:
    """Lexicographically first n linearly independent vertices of delta,
    then the origin."""
    chosen: list[Vector] = []
    for v in pair.delta.vertices:
        if rational_rank([list(w) for w in chosen + [v]]) == len(chosen) + 1:
            chosen.append(v)
            if len(chosen) == pair.n:
                break
    assert len(chosen) == pair.n, "delta vertices failed to span"
    return tuple(chosen) + ((0,) * pair.n,)


def matrix_e(pair: ReflexivePair, monomials=None, rays=None) -> list[list[int]]:
    """The (n+1) x (n+1) pairing matrix with entries <m_i, v_j> + 1."""
    if monomials is None:
        monomials = independent_vertex_subset(pair)
    if rays is None:
        rays = lifted_ray_subset(pair)
    return [[_dot(m, v) + 1 for v in rays] for m in monomials]


def verify_matrix_p_nonsingular(pair: ReflexivePair, coeffs=None) -> bool:
    """Witness that the chosen Euler rows are independent: the pairing
    matrix on n independent vertices plus the origin has nonzero
    determinant, and scaling its rows by the (nonzero) coefficients
    multiplies the determinant by exactly their product."""
    monomials = independent_vertex_subset(pair)
    e = matrix_e(pair, monomials)
    det_e = integer_determinant(e)
    assert det_e != 0, "pairing matrix unexpectedly singular"
    if coeffs is not None:
        p = [[coeffs[m] * entry for entry in row] for m, row in zip(monomials, e)]
        scale = 1
        for m in monomials:
            scale *= coeffs[m]
        assert integer_determinant(p) == scale * det_e
    return True


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))
