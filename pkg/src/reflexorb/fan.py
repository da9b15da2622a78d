"""Rational simplicial cones, normal fans, and twisted sector data.

Box elements of a cone are the lattice points of the half-open parallelepiped
spanned by its primitive generators; they index the twisted sectors of the
associated toric orbifold. Enumeration goes through the Smith normal form of
the generator matrix, so the cost scales with the group order rather than
with any bounding box.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotSimplicialError
from .linalg import rational_rank, smith_normal_form
from .polytope import ReflexivePair, Vector


def _thread_count() -> int:
    raw = os.environ.get("REFLEXORB_THREADS", "0")
    try:
        k = int(raw)
    except ValueError:
        k = 0
    if k <= 0:
        return min(8, os.cpu_count() or 1)
    return k


def _map_in_order(fn, items):
    """Apply fn across items, possibly on a thread pool, preserving order.

    Results are merged in input order, so output never depends on scheduling.
    """
    items = list(items)
    k = _thread_count()
    if k <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=k) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class Cone:
    """Cone spanned by primitive generators. face_ids ties a normal fan cone
    back to the vertex ids of the polar face it sits over."""

    generators: tuple[Vector, ...]
    face_ids: tuple[int, ...] | None = None

    @property
    def dim(self) -> int:
        if not self.generators:
            return 0
        return rational_rank([list(g) for g in self.generators])

    def is_simplicial(self) -> bool:
        return self.dim == len(self.generators)

    def sort_key(self):
        return (len(self.generators), self.generators)


@dataclass(frozen=True)
class BoxElement:
    """A lattice point of the half-open generator parallelepiped, with its
    coefficient vector: point = sum coefficients[i] * generators[i]."""

    coefficients: tuple[Fraction, ...]
    point: Vector

    @property
    def age(self) -> Fraction:
        return sum(self.coefficients, Fraction(0))

    def is_interior(self) -> bool:
        return all(0 < a < 1 for a in self.coefficients)


@dataclass(frozen=True)
class ToricSector:
    cone: Cone
    element: BoxElement
    support_dim: int
    group_order: int

    @property
    def age(self) -> Fraction:
        return self.element.age


def quotient_group_order(cone: Cone) -> int:
    """Order of the local isotropy group: the index of the lattice spanned by
    the generators inside its saturation, via Smith normal form."""
    if not cone.generators:
        return 1
    if not cone.is_simplicial():
        raise NotSimplicialError("group order needs linearly independent generators")
    d, _, _ = smith_normal_form([list(g) for g in cone.generators])
    order = 1
    for i in range(len(cone.generators)):
        order *= d[i][i]
    assert order > 0
    return order


def box_elements(cone: Cone, interior_only: bool = False) -> tuple[BoxElement, ...]:
    """All box elements of a simplicial cone, sorted by point.

    With interior_only, keeps those with every coefficient in (0, 1); these
    are the elements supported on no proper face of the cone. The zero cone
    yields exactly the trivial element.
    """
    gens = cone.generators
    if not gens:
        triv = BoxElement((), (0,) * 0)
        return (triv,)
    if not cone.is_simplicial():
        raise NotSimplicialError("box enumeration needs linearly independent generators")
    d = len(gens)
    n = len(gens[0])
    snf, u, _ = smith_normal_form([list(g) for g in gens])
    divisors = [snf[i][i] for i in range(d)]
    assert all(x > 0 for x in divisors)
    out = []
    stack = [()]
    for di in divisors:
        stack = [t + (k,) for t in stack for k in range(di)]
    for t in stack:
        b = [Fraction(t[i], divisors[i]) for i in range(d)]
        coeffs = tuple(
            sum(b[i] * u[i][j] for i in range(d)) % 1 for j in range(d)
        )
        if interior_only and not all(0 < a < 1 for a in coeffs):
            continue
        point = []
        for j in range(n):
            x = sum(coeffs[i] * gens[i][j] for i in range(d))
            assert x.denominator == 1
            point.append(int(x))
        out.append(BoxElement(coeffs, tuple(point)))
    out.sort(key=lambda e: e.point)
    if not interior_only:
        assert len(out) == quotient_group_order(cone)
    return tuple(out)


class Fan:
    """A collection of cones closed under taking faces."""

    def __init__(self, n: int, cones):
        self.n = n
        self.cones: tuple[Cone, ...] = tuple(sorted(cones, key=Cone.sort_key))
        rays = sorted({g for c in self.cones for g in c.generators})
        self.rays: tuple[Vector, ...] = tuple(rays)

    @property
    def r(self) -> int:
        return len(self.rays)

    @classmethod
    def from_generator_sets(cls, n: int, generator_sets) -> "Fan":
        """Build a fan from maximal simplicial cones, closing under subsets."""
        seen = {(): Cone(())}
        for gens in generator_sets:
            gens = tuple(tuple(g) for g in gens)
            cone = Cone(gens)
            if not cone.is_simplicial():
                raise NotSimplicialError("from_generator_sets needs simplicial cones")
            count = len(gens)
            for mask in range(1, 2 ** count):
                sub = tuple(
                    sorted(gens[i] for i in range(count) if mask >> i & 1)
                )
                if sub not in seen:
                    seen[sub] = Cone(sub)
        return cls(n, seen.values())

    def cones_of_dim(self, dim: int) -> tuple[Cone, ...]:
        return tuple(c for c in self.cones if c.dim == dim)

    def is_simplicial(self) -> bool:
        return all(c.is_simplicial() for c in self.cones)

    def is_gorenstein(self) -> bool:
        """True when every box element of every cone has integral age."""
        if not self.is_simplicial():
            raise NotSimplicialError("Gorenstein test enumerates box elements")

        def ages_integral(cone):
            return all(e.age.denominator == 1 for e in box_elements(cone))

        return all(_map_in_order(ages_integral, self.cones))


def normal_fan(pair: ReflexivePair) -> Fan:
    """Fan over the proper faces of the polar polytope (plus the zero cone)."""
    polar = pair.delta_polar
    cones = [Cone(())]
    for face in polar.proper_faces():
        gens = tuple(sorted(face.vertices()))
        cones.append(Cone(gens, face_ids=face.vertex_ids))
    return Fan(polar.n, cones)


def toric_twisted_sectors(fan: Fan) -> tuple[ToricSector, ...]:
    """Twisted sectors of the toric orbifold: one per pair of a nonzero cone
    and an interior box element. The zero cone carries only the untwisted
    sector and is skipped."""
    if not fan.is_simplicial():
        raise NotSimplicialError("twisted sectors require a simplicial fan")
    work = [c for c in fan.cones if c.generators]

    def sectors_of(cone):
        interior = box_elements(cone, interior_only=True)
        if len(cone.generators) == 1:
            # primitive generator: the half-open segment holds no lattice point
            assert not interior
        order = quotient_group_order(cone)
        return tuple(
            ToricSector(cone, e, fan.n - cone.dim, order) for e in interior
        )

    out = []
    for group in _map_in_order(sectors_of, work):
        out.extend(group)
    return tuple(out)
