"""Reduced simplicial (co)chains of full subcomplexes, with the product.

A cochain knows three gradings: the ambient complex K, the vertex subset J
(it lives on the full subcomplex K_J) and its simplicial degree p.  Cochains
with different (J, p) never mix silently; that bookkeeping is what makes the
bigraded product and the defining-system equations meaningful.

Sign conventions, fixed once here and used everywhere:

* epsilon(j, J) = (-1)^(r-1) when j is the r-th element of J in the vertex
  order, extended multiplicatively over subsets.
* coboundary: d(chi_sigma) = sum over j with j ∪ sigma a face of K_J of
  epsilon(j, j ∪ sigma) chi_{j ∪ sigma}; in degree -1,
  d(chi_empty) = sum of chi_v over vertices of K_J.
* boundary is the adjoint under the evaluation pairing.
* product: chi_L . chi_M = epsilon(L,I) epsilon(M,J) zeta epsilon(L∪M, I∪J)
  chi_{L∪M} when the ambient subsets I, J are disjoint and L∪M is a face,
  with zeta the product of epsilon(k, {k} ∪ (J minus M)) over k in I minus L;
  otherwise the product is zero.  When every vertex of I precedes every
  vertex of J the coefficient collapses to (-1)^{|I| (q+1)} for q = deg of
  the right factor; that fast path is validated against the general formula.
"""

from __future__ import annotations

import functools
import itertools
from typing import Iterable, Mapping, NamedTuple, Optional

from . import exactalg
from .exactalg import Ring, ZZ
from .simplicial import SimplicialComplex, full_subcomplex


class GradingMismatch(ValueError):
    pass


class AmbientMismatch(ValueError):
    pass


class VertexNotInSet(ValueError):
    pass


def epsilon(K: SimplicialComplex, j: str, J: Iterable[str]) -> int:
    """(-1)^(r-1) for j the r-th element of J in K's vertex order."""
    Js = sorted(set(J), key=K.rank)
    try:
        r = Js.index(j)
    except ValueError:
        raise VertexNotInSet(f"{j!r} not in {Js}") from None
    return -1 if r % 2 else 1


def epsilon_set(K: SimplicialComplex, L: Iterable[str], J: Iterable[str]) -> int:
    s = 1
    for j in set(L):
        s *= epsilon(K, j, J)
    return s


class _Graded:
    """Common machinery of Cochain and Chain: a finitely supported
    coefficient map on the p-simplices of K_J."""

    __slots__ = ("complex", "ring", "J", "p", "coeffs")

    def __init__(self, complex: SimplicialComplex, ring: Ring, J: Iterable[str],
                 p: int, coeffs: Optional[Mapping] = None):
        J = complex.sort_simplex(J)
        self.complex = complex
        self.ring = ring
        self.J = J
        self.p = p
        clean = {}
        Jset = set(J)
        for s, c in (coeffs or {}).items():
            s = complex.sort_simplex(s)
            if ring.is_zero(c):
                continue
            if len(s) != p + 1:
                raise GradingMismatch(f"simplex {s} is not {p}-dimensional")
            if not set(s) <= Jset:
                raise GradingMismatch(f"simplex {s} not inside J={list(J)}")
            if not complex.has_face(s):
                raise GradingMismatch(f"{s} is not a face of the complex")
            clean[s] = ring.add(clean.get(s, ring.zero), c) if s in clean else c
        self.coeffs = {s: c for s, c in clean.items() if not ring.is_zero(c)}

    @property
    def support(self) -> tuple:
        return tuple(sorted(self.coeffs, key=lambda s: tuple(self.complex.rank(v) for v in s)))

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, simplex):
        return self.coeffs.get(self.complex.sort_simplex(simplex), self.ring.zero)

    def _like(self, coeffs, p=None):
        return type(self)(self.complex, self.ring, self.J, self.p if p is None else p, coeffs)

    def _check_compatible(self, other):
        if self.complex != other.complex or self.ring != other.ring:
            raise AmbientMismatch("operands live on different complexes or rings")
        if self.J != other.J or self.p != other.p:
            raise GradingMismatch(
                f"gradings differ: (J={list(self.J)}, p={self.p}) vs (J={list(other.J)}, p={other.p})"
            )

    def __add__(self, other):
        self._check_compatible(other)
        out = dict(self.coeffs)
        for s, c in other.coeffs.items():
            out[s] = self.ring.add(out.get(s, self.ring.zero), c)
        return self._like(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._like({s: self.ring.neg(c) for s, c in self.coeffs.items()})

    def scale(self, c):
        return self._like({s: self.ring.mul(c, x) for s, x in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, _Graded) or type(self) is not type(other):
            return NotImplemented
        return (self.complex == other.complex and self.ring == other.ring
                and self.J == other.J and self.p == other.p and self.coeffs == other.coeffs)

    def __repr__(self):
        kind = type(self).__name__
        terms = ", ".join(
            f"{self.ring.element_to_str(c)}*{'|'.join(s) or 'empty'}"
            for s, c in sorted(self.coeffs.items())
        )
        return f"{kind}[J={','.join(self.J)} p={self.p}]({terms or '0'})"


class Cochain(_Graded):
    @staticmethod
    def chi(K: SimplicialComplex, ring: Ring, simplex, J=None) -> "Cochain":
        """The basis cochain of one simplex; J defaults to the simplex itself."""
        s = K.sort_simplex(simplex)
        return Cochain(K, ring, s if J is None else J, len(s) - 1, {s: ring.one})

    @staticmethod
    def zero(K: SimplicialComplex, ring: Ring, J, p: int) -> "Cochain":
        return Cochain(K, ring, J, p, {})


class Chain(_Graded):
    @staticmethod
    def delta(K: SimplicialComplex, ring: Ring, simplex, J=None) -> "Chain":
        s = K.sort_simplex(simplex)
        return Chain(K, ring, s if J is None else J, len(s) - 1, {s: ring.one})

    @staticmethod
    def zero(K: SimplicialComplex, ring: Ring, J, p: int) -> "Chain":
        return Chain(K, ring, J, p, {})


def coboundary(a: Cochain) -> Cochain:
    """d: C^p(K_J) -> C^{p+1}(K_J) with the augmented degree -1 convention."""
    K, ring = a.complex, a.ring
    out: dict = {}
    if a.p == -1:
        c = a.coeffs.get((), ring.zero)
        if not ring.is_zero(c):
            for v in a.J:
                out[(v,)] = c
        return Cochain(K, ring, a.J, 0, out)
    Jset = set(a.J)
    for s, c in a.coeffs.items():
        for j in Jset - set(s):
            t = K.sort_simplex(s + (j,))
            if not K.has_face(t):
                continue
            term = ring.mul(c, ring.of_int(epsilon(K, j, t)))
            out[t] = ring.add(out.get(t, ring.zero), term)
    return Cochain(K, ring, a.J, a.p + 1, out)


def boundary(x: Chain) -> Chain:
    """The boundary map, adjoint to the coboundary under evaluation."""
    K, ring = x.complex, x.ring
    out: dict = {}
    for s, c in x.coeffs.items():
        for v in s:
            t = tuple(w for w in s if w != v)
            term = ring.mul(c, ring.of_int(epsilon(K, v, s)))
            out[t] = ring.add(out.get(t, ring.zero), term)
    return Chain(K, ring, x.J, x.p - 1, out)


def evaluate(a: Cochain, x: Chain):
    """The Kronecker pairing <a, x>; gradings must agree exactly."""
    if a.complex != x.complex or a.ring != x.ring:
        raise AmbientMismatch("pairing needs one complex and one ring")
    if a.J != x.J or a.p != x.p:
        raise GradingMismatch("pairing needs matching (J, p)")
    ring = a.ring
    total = ring.zero
    for s, c in a.coeffs.items():
        if s in x.coeffs:
            total = ring.add(total, ring.mul(c, x.coeffs[s]))
    return total


def _zeta(K: SimplicialComplex, I, L, J, M) -> int:
    z = 1
    for k in set(I) - set(L):
        z *= epsilon(K, k, {k} | (set(J) - set(M)))
    return z


def cup_multiply(a: Cochain, b: Cochain) -> Cochain:
    """The cochain-level product C^p(K_I) x C^q(K_J) -> C^{p+q+1}(K_{I∪J}).

    Zero whenever I and J overlap; terms whose union simplex is not a face
    are dropped.
    """
    if a.complex != b.complex or a.ring != b.ring:
        raise AmbientMismatch("product needs one ambient complex and one ring")
    K, ring = a.complex, a.ring
    I, J = a.J, b.J
    union = K.sort_simplex(I + J)
    p_out = a.p + b.p + 1
    if set(I) & set(J):
        return Cochain.zero(K, ring, union, p_out)
    ordered = bool(I) and bool(J) and K.rank(I[-1]) < K.rank(J[0])
    lemma_sign = (-1) ** (len(I) * (b.p + 1)) if ordered else 0
    out: dict = {}
    for L, ca in a.coeffs.items():
        for M, cb in b.coeffs.items():
            s = K.sort_simplex(L + M)
            if not K.has_face(s):
                continue
            if ordered:
                sign = lemma_sign
            else:
                sign = (epsilon_set(K, L, I) * epsilon_set(K, M, J)
                        * _zeta(K, I, L, J, M) * epsilon_set(K, s, union))
            term = ring.mul(ring.mul(ca, cb), ring.of_int(sign))
            out[s] = ring.add(out.get(s, ring.zero), term)
    return Cochain(K, ring, union, p_out, out)


def cup_multiply_reference(a: Cochain, b: Cochain) -> Cochain:
    """The general-zeta formula with no fast path; used to validate the
    ordered-blocks shortcut."""
    if a.complex != b.complex or a.ring != b.ring:
        raise AmbientMismatch("product needs one ambient complex and one ring")
    K, ring = a.complex, a.ring
    I, J = a.J, b.J
    union = K.sort_simplex(I + J)
    p_out = a.p + b.p + 1
    if set(I) & set(J):
        return Cochain.zero(K, ring, union, p_out)
    out: dict = {}
    for L, ca in a.coeffs.items():
        for M, cb in b.coeffs.items():
            s = K.sort_simplex(L + M)
            if not K.has_face(s):
                continue
            sign = (epsilon_set(K, L, I) * epsilon_set(K, M, J)
                    * _zeta(K, I, L, J, M) * epsilon_set(K, s, union))
            term = ring.mul(ring.mul(ca, cb), ring.of_int(sign))
            out[s] = ring.add(out.get(s, ring.zero), term)
    return Cochain(K, ring, union, p_out, out)


def total_degree(a: Cochain) -> int:
    """Degree of the corresponding class of the moment-angle complex."""
    return a.p + len(a.J) + 1


def overline(a: Cochain) -> Cochain:
    """(-1)^(1 + total degree) a = (-1)^(p + |J|) a."""
    sign = (-1) ** (a.p + len(a.J))
    return a if sign == 1 else -a


class CohomologyBasis(NamedTuple):
    J: tuple
    p: int
    cocycle_basis: list
    coboundary_basis: list
    group: exactalg.AbelianGroup


class ReducedCohomology:
    """All reduced cohomology data of one full subcomplex K_J over one ring.

    Matrices are built from the simplex bases of K_J once; class membership
    queries reduce to exact affine solves against them.
    """

    def __init__(self, K: SimplicialComplex, J, ring: Ring):
        self.complex = K
        self.ring = ring
        self.J = K.sort_simplex(J)
        self.KJ = full_subcomplex(K, self.J)
        self.max_p = self.KJ.dim
        self._delta: dict[int, list] = {}
        self._groups: dict[int, exactalg.AbelianGroup] = {}
        self._class_data: dict[int, tuple] = {}

    def simplices(self, p: int) -> tuple:
        if p < -1 or p > self.max_p:
            return ()
        return self.KJ.faces(p)

    def vector(self, a: Cochain) -> list:
        basis = self.simplices(a.p)
        idx = {s: i for i, s in enumerate(basis)}
        v = [self.ring.zero] * len(basis)
        for s, c in a.coeffs.items():
            v[idx[s]] = c
        return v

    def cochain(self, vec, p: int) -> Cochain:
        basis = self.simplices(p)
        return Cochain(self.complex, self.ring, self.J, p,
                       {s: c for s, c in zip(basis, vec)})

    def delta_matrix(self, p: int) -> list:
        """Matrix of d: C^p -> C^{p+1} in the simplex bases."""
        if p not in self._delta:
            dom = self.simplices(p)
            cod = self.simplices(p + 1)
            idx = {s: i for i, s in enumerate(cod)}
            M = [[self.ring.zero] * len(dom) for _ in cod]
            for j, s in enumerate(dom):
                image = coboundary(self.cochain(
                    [self.ring.one if i == j else self.ring.zero for i in range(len(dom))], p))
                for t, c in image.coeffs.items():
                    M[idx[t]][j] = c
            self._delta[p] = M
        return self._delta[p]

    def group(self, p: int) -> exactalg.AbelianGroup:
        if p not in self._groups:
            n_p = len(self.simplices(p))
            if n_p == 0:
                self._groups[p] = exactalg.AbelianGroup(0)
                return self._groups[p]
            d_p = self.delta_matrix(p)
            d_prev = self.delta_matrix(p - 1) if p - 1 >= -1 else []
            r_p = exactalg.rank(d_p, self.ring) if self.simplices(p + 1) else 0
            cycles = n_p - r_p
            if self.ring.is_field:
                r_prev = exactalg.rank(d_prev, self.ring) if d_prev else 0
                self._groups[p] = exactalg.AbelianGroup(cycles - r_prev)
            else:
                diag = [d for d in exactalg.snf_diagonal(d_prev) if d != 0] if d_prev else []
                torsion = tuple(d for d in diag if d > 1)
                self._groups[p] = exactalg.AbelianGroup(cycles - len(diag), torsion)
        return self._groups[p]

    def groups(self) -> dict:
        return {p: self.group(p) for p in range(-1, self.max_p + 1)}

    def cocycle_basis(self, p: int) -> list:
        if p < -1 or p > self.max_p:
            return []
        if not self.simplices(p):
            return []
        if not self.simplices(p + 1):
            basis = exactalg.identity(len(self.simplices(p)), self.ring)
            vectors = [[row[j] for row in basis] for j in range(len(basis))]
        else:
            vectors = exactalg.kernel_basis(self.delta_matrix(p), self.ring,
                                            cols=len(self.simplices(p)))
        return [self.cochain(v, p) for v in vectors]

    def coboundary_basis(self, p: int) -> list:
        if p - 1 < -1:
            return []
        out = []
        for s in self.simplices(p - 1):
            img = coboundary(Cochain(self.complex, self.ring, self.J, p - 1,
                                     {s: self.ring.one}))
            if not img.is_zero():
                out.append(img)
        return out

    def degree_data(self, p: int) -> CohomologyBasis:
        return CohomologyBasis(self.J, p, self.cocycle_basis(p),
                               self.coboundary_basis(p), self.group(p))

    def is_cocycle(self, a: Cochain) -> bool:
        return coboundary(a).is_zero()

    def is_coboundary(self, a: Cochain) -> bool:
        self._check(a)
        if a.is_zero():
            return True
        if a.p == -1:
            return False
        sol = exactalg.solve_affine(self.delta_matrix(a.p - 1), self.vector(a), self.ring)
        return sol is not None

    def are_cohomologous(self, a: Cochain, b: Cochain) -> bool:
        return self.is_coboundary(a - b)

    def is_zero_class(self, a: Cochain) -> bool:
        return self.is_coboundary(a)

    def _check(self, a: Cochain):
        if a.complex != self.complex or a.ring != self.ring or a.J != self.J:
            raise GradingMismatch("cochain does not live on this K_J")

    def _class_machinery(self, p: int):
        """Kernel basis plus a canonical reduction of the coboundary image."""
        if p in self._class_data:
            return self._class_data[p]
        kb = exactalg.kernel_basis(self.delta_matrix(p), self.ring,
                                   cols=len(self.simplices(p))) if self.simplices(p) else []
        m = len(kb)
        Zmat = [[kb[j][i] for j in range(m)] for i in range(len(self.simplices(p)))]
        gens = []
        for b in self.coboundary_basis(p):
            vec = self.vector(b)
            sol = exactalg.solve_affine(Zmat, vec, self.ring) if m else None
            if m:
                gens.append(sol.particular)
        if self.ring.is_field:
            reducers, _ = exactalg.row_echelon(gens, self.ring) if gens else ([], [])
            reducers = [r for r in reducers if any(not self.ring.is_zero(x) for x in r)]
            data = ("field", Zmat, reducers)
        else:
            B = [[g[i] for g in gens] for i in range(m)] if gens else [[] for _ in range(m)]
            if gens and m:
                D, U, V = exactalg.smith_normal_form(B)
                diag = [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]
            else:
                U = exactalg.identity(m)
                diag = []
            data = ("Z", Zmat, U, diag)
        self._class_data[p] = data
        return data

    def class_key(self, a: Cochain) -> tuple:
        """A canonical, hashable fingerprint of the cohomology class of a."""
        self._check(a)
        if not self.is_cocycle(a):
            raise GradingMismatch("class_key needs a cocycle")
        data = self._class_machinery(a.p)
        Zmat = data[1]
        m = len(Zmat[0]) if Zmat else 0
        if m == 0:
            return ()
        sol = exactalg.solve_affine(Zmat, self.vector(a), self.ring)
        t = sol.particular
        if data[0] == "field":
            reducers = data[2]
            t = list(t)
            for r in reducers:
                pivot = next(i for i, x in enumerate(r) if not self.ring.is_zero(x))
                f = self.ring.div(t[pivot], r[pivot])
                t = [self.ring.sub(x, self.ring.mul(f, y)) for x, y in zip(t, r)]
            return tuple(t)
        _, _, U, diag = data
        s = exactalg.mat_vec(U, t, ZZ)
        out = []
        for i, x in enumerate(s):
            d = diag[i] if i < len(diag) else 0
            out.append(x % d if d else x)
        return tuple(out)

    # the canonical fingerprint doubles as the coordinate of the class
    class_of = class_key


@functools.lru_cache(maxsize=65536)
def _cached_cohomology(K: SimplicialComplex, J: tuple, ring: Ring) -> ReducedCohomology:
    return ReducedCohomology(K, J, ring)


def reduced_cohomology(K: SimplicialComplex, J, ring: Ring) -> ReducedCohomology:
    """Memoized reduced-cohomology data of K_J; safe because complexes are
    immutable after construction."""
    return _cached_cohomology(K, K.sort_simplex(J), ring)


# -- JSON interchange ---------------------------------------------------------

def cochain_to_json(a: Cochain) -> dict:
    return {
        "J": list(a.J),
        "p": a.p,
        "terms": [
            {"simplex": list(s), "coeff": a.ring.element_to_str(c)}
            for s, c in sorted(a.coeffs.items(),
                               key=lambda kv: tuple(a.complex.rank(v) for v in kv[0]))
        ],
    }


def cochain_from_json(obj: Mapping, K: SimplicialComplex, ring: Ring) -> Cochain:
    coeffs = {}
    for term in obj["terms"]:
        s = K.sort_simplex(term["simplex"])
        coeffs[s] = ring.element_from_str(term["coeff"])
    return Cochain(K, ring, obj["J"], obj["p"], coeffs)
