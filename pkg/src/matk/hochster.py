"""The bigraded decomposition of H*(Z_K) and an independent cell-model oracle.

``hochster_decompose`` assembles H^d(Z_K) from the reduced cohomology of all
full subcomplexes K_J, one class of degree p + |J| + 1 per class of
H-tilde^p(K_J).  ``moment_angle_cw_oracle`` computes the same groups from the
cellular chain complex of the moment-angle complex itself (one cell per pair
of a face sigma and a disjoint circle-coordinate set T, of dimension
2|sigma| + |T|), so the two never share a cell model and cross-validate each
other.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from . import exactalg
from .cochains import (
    Cochain,
    cup_multiply,
    reduced_cohomology,
)
from .exactalg import AbelianGroup, Ring
from .simplicial import SimplicialComplex


class VertexCapExceeded(ValueError):
    pass


class AmbientMismatch(ValueError):
    pass


@dataclass(frozen=True)
class CohomologyClass:
    """A class of H^*(Z_K) in its bigraded slot: a cocycle on K_J in degree p."""

    representative: Cochain

    def __post_init__(self):
        from .cochains import coboundary

        if not coboundary(self.representative).is_zero():
            raise ValueError("representative must be a cocycle")

    @property
    def complex(self) -> SimplicialComplex:
        return self.representative.complex

    @property
    def ring(self) -> Ring:
        return self.representative.ring

    @property
    def J(self) -> tuple:
        return self.representative.J

    @property
    def p(self) -> int:
        return self.representative.p

    @property
    def total_degree(self) -> int:
        return self.p + len(self.J) + 1

    def cohomology(self):
        return reduced_cohomology(self.complex, self.J, self.ring)

    def is_zero(self) -> bool:
        return self.cohomology().is_zero_class(self.representative)

    def same_class(self, other: "CohomologyClass") -> bool:
        if (self.complex, self.ring, self.J, self.p) != (other.complex, other.ring, other.J, other.p):
            return False
        return self.cohomology().are_cohomologous(self.representative, other.representative)


@dataclass
class HochsterTable:
    complex: SimplicialComplex
    ring: Ring
    by_J: dict = field(default_factory=dict)  # J tuple -> {p: AbelianGroup}
    total: dict = field(default_factory=dict)  # degree -> AbelianGroup

    def group(self, degree: int) -> AbelianGroup:
        return self.total.get(degree, AbelianGroup(0))

    def slot(self, J, p: int) -> AbelianGroup:
        J = self.complex.sort_simplex(J)
        return self.by_J.get(J, {}).get(p, AbelianGroup(0))

    def to_json(self) -> dict:
        return {
            "ring": self.ring.name(),
            "by_J": [
                {"J": list(J), "p": p, **g.to_json()}
                for J, groups in sorted(self.by_J.items())
                for p, g in sorted(groups.items())
            ],
            "total": [
                {"degree": d, **g.to_json()} for d, g in sorted(self.total.items())
            ],
        }


def hochster_decompose(K: SimplicialComplex, ring: Ring, cap: int = 24,
                       threads: int = 1) -> HochsterTable:
    """Groups of H^*(Z_K) per vertex subset J and in total per degree."""
    m = len(K.vertices)
    if m > cap:
        raise VertexCapExceeded(f"{m} vertices exceeds the 2^m subset cap {cap}")
    subsets = [
        K.sort_simplex(J)
        for size in range(m + 1)
        for J in itertools.combinations(K.vertices, size)
    ]

    def groups_of(J):
        H = reduced_cohomology(K, J, ring)
        return J, {p: g for p, g in H.groups().items() if not g.is_trivial}

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(groups_of, subsets))
    else:
        results = [groups_of(J) for J in subsets]

    table = HochsterTable(K, ring)
    per_degree: dict[int, list] = {}
    for J, groups in results:
        if groups:
            table.by_J[J] = groups
        for p, g in groups.items():
            per_degree.setdefault(p + len(J) + 1, []).append(g)
    table.total = {
        d: AbelianGroup(0).direct_sum(*gs) for d, gs in sorted(per_degree.items())
    }
    return table


def class_in_slot(K: SimplicialComplex, ring: Ring, J, p: int, coeffs) -> CohomologyClass:
    return CohomologyClass(Cochain(K, ring, J, p, coeffs))


def unit_class(K: SimplicialComplex, ring: Ring) -> CohomologyClass:
    """The degree-0 unit, carried by the empty subset in degree -1."""
    return CohomologyClass(Cochain(K, ring, (), -1, {(): ring.one}))


def product_in_hochster(a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
    """Product of classes through the cochain-level product; the zero class of
    the correct bidegree when the supports overlap."""
    if a.complex != b.complex or a.ring != b.ring:
        raise AmbientMismatch("classes live on different complexes or rings")
    rep = cup_multiply(a.representative, b.representative)
    return CohomologyClass(rep)


def _cw_cells(K: SimplicialComplex):
    """Cells (sigma, T) of the moment-angle complex, grouped by dimension."""
    verts = K.vertices
    cells: dict[int, list] = {}
    for p in range(-1, K.dim + 1):
        for sigma in K.faces(p):
            rest = [v for v in verts if v not in sigma]
            for size in range(len(rest) + 1):
                for T in itertools.combinations(rest, size):
                    dim = 2 * len(sigma) + len(T)
                    cells.setdefault(dim, []).append((sigma, T))
    for dim in cells:
        cells[dim].sort(key=lambda cell: (
            tuple(K.rank(v) for v in cell[0]), tuple(K.rank(v) for v in cell[1])))
    return cells


def moment_angle_cw_oracle(K: SimplicialComplex, ring: Ring, cap: int = 12) -> dict:
    """Cohomology of Z_K per degree from its cellular chain complex.

    The disc factor contributes cells 1, t, D with dD = t and dt = 0; a cell
    (sigma, T) is the product of D-cells over sigma and t-cells over T.  The
    boundary sign of replacing D by t in coordinate i is (-1)^(number of
    t-coordinates before i), following the vertex order.
    """
    if len(K.vertices) > cap:
        raise VertexCapExceeded(f"{len(K.vertices)} vertices exceeds the 3^m cell cap {cap}")
    cells = _cw_cells(K)
    if not cells:
        return {}
    top = max(cells)
    index = {d: {cell: i for i, cell in enumerate(cells[d])} for d in cells}

    def boundary_matrix(d):
        """Matrix of the boundary C_d -> C_{d-1} over Z."""
        rows = cells.get(d - 1, [])
        cols = cells.get(d, [])
        M = [[0] * len(cols) for _ in rows]
        if not rows or not cols:
            return M
        row_index = index[d - 1]
        for j, (sigma, T) in enumerate(cols):
            for i, v in enumerate(sigma):
                sign = (-1) ** sum(1 for t in T if K.rank(t) < K.rank(v))
                tgt = (tuple(x for x in sigma if x != v),
                       tuple(sorted(T + (v,), key=K.rank)))
                M[row_index[tgt]][j] += sign
        return M

    def delta_matrix(d):
        # coboundary C^d -> C^{d+1} is the transpose of the boundary C_{d+1} -> C_d
        rows = cells.get(d + 1, [])
        cols = cells.get(d, [])
        if not rows or not cols:
            return [[ring.zero] * len(cols) for _ in rows]
        b = boundary_matrix(d + 1)
        return [[ring.of_int(b[i][j]) for i in range(len(cols))] for j in range(len(rows))]

    out: dict[int, AbelianGroup] = {}
    deltas = {d: delta_matrix(d) for d in range(-1, top + 1)}
    for d in range(0, top + 1):
        n_d = len(cells.get(d, []))
        if n_d == 0:
            continue
        delta_d = deltas[d]
        delta_prev = deltas[d - 1]
        cycles = n_d - exactalg.rank(delta_d, ring)
        if ring.is_field:
            g = AbelianGroup(cycles - exactalg.rank(delta_prev, ring))
        else:
            diag = [x for x in exactalg.snf_diagonal(delta_prev) if x != 0] if delta_prev else []
            g = AbelianGroup(cycles - len(diag), tuple(x for x in diag if x > 1))
        if not g.is_trivial:
            out[d] = g
    return out
