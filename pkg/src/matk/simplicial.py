"""Simplicial complexes on ordered vertex sets.

The vertex order is load-bearing: every sign convention downstream (coboundary
maps, cup products, defining systems) is computed from vertex ranks.  A complex
is stored by its inclusion-maximal faces; all other faces are enumerated lazily
and memoized.  Complexes are immutable and hashable, and every operation here
returns a new complex in canonical form (facets sorted by rank sequence).
"""

from __future__ import annotations

import itertools
import threading
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence


Simplex = tuple  # labels sorted by rank in the owning complex; () is the empty simplex


class SimplicialError(ValueError):
    pass


class DuplicateVertex(SimplicialError):
    pass


class FacetUsesUnknownLabel(SimplicialError):
    pass


class UnknownVertex(SimplicialError):
    pass


class SimplexNotInComplex(SimplicialError):
    pass


class LabelCollision(SimplicialError):
    pass


class EdgeNotInComplex(SimplicialError):
    pass


class OrderIncompatibleMap(SimplicialError):
    pass


class SimplicialComplex:
    """An abstract simplicial complex with a total order on its vertices.

    ``vertices`` is the ordered vertex list (position = rank); ``facets`` are
    the inclusion-maximal faces, each a tuple of labels sorted by rank.  Every
    listed vertex is a face: there are no ghost vertices.  The empty simplex
    is a face of every complex, including the empty complex.
    """

    __slots__ = ("vertices", "facets", "_rank", "_facet_sets", "_faces_by_dim", "_lock", "_hash")

    def __init__(self, vertices: Sequence[str], facets: Iterable[Sequence[str]]):
        vertices = tuple(str(v) for v in vertices)
        if len(set(vertices)) != len(vertices):
            raise DuplicateVertex(f"duplicate vertex labels in {vertices}")
        rank = {v: i for i, v in enumerate(vertices)}
        cleaned = set()
        for f in facets:
            fs = tuple(sorted({str(v) for v in f}, key=lambda v: _rank_of(rank, v)))
            cleaned.add(fs)
        # every vertex is a face; facets reduced to the inclusion-maximal family
        covered = {v for f in cleaned for v in f}
        for v in vertices:
            if v not in covered:
                cleaned.add((v,))
        maximal = []
        for f in sorted(cleaned, key=len, reverse=True):
            if not any(set(f) <= set(g) for g in maximal):
                maximal.append(f)
        self.vertices = vertices
        self.facets = tuple(sorted(maximal, key=lambda f: tuple(rank[v] for v in f)))
        self._rank = rank
        self._facet_sets = tuple(frozenset(f) for f in self.facets)
        self._faces_by_dim: dict[int, tuple] = {}
        self._lock = threading.Lock()
        self._hash = hash((self.vertices, self.facets))

    # -- basic queries ---------------------------------------------------

    def rank(self, v: str) -> int:
        try:
            return self._rank[v]
        except KeyError:
            raise UnknownVertex(f"vertex {v!r} not in complex") from None

    def sort_simplex(self, vs: Iterable[str]) -> Simplex:
        return tuple(sorted(set(vs), key=self.rank))

    def has_face(self, simplex: Iterable[str]) -> bool:
        s = set(simplex)
        if not s:
            return True  # the empty simplex is a face of every complex
        if not s <= set(self.vertices):
            return False
        return any(s <= fs for fs in self._facet_sets)

    def __contains__(self, simplex) -> bool:
        return self.has_face(simplex)

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def faces(self, p: int) -> tuple:
        """All p-dimensional faces, sorted by rank sequence.  p = -1 gives ()."""
        if p == -1:
            return ((),)
        if p < -1:
            return ()
        with self._lock:
            if p not in self._faces_by_dim:
                seen = set()
                for f in self.facets:
                    if len(f) >= p + 1:
                        seen.update(itertools.combinations(f, p + 1))
                self._faces_by_dim[p] = tuple(
                    sorted(seen, key=lambda s: tuple(self.rank(v) for v in s))
                )
            return self._faces_by_dim[p]

    def all_faces(self, include_empty: bool = False) -> list:
        out = [()] if include_empty else []
        for p in range(self.dim + 1):
            out.extend(self.faces(p))
        return out

    def f_vector(self) -> tuple:
        return tuple(len(self.faces(p)) for p in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * len(self.faces(p)) for p in range(self.dim + 1))

    def is_empty(self) -> bool:
        return not self.vertices

    # -- equality / hashing ----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertices == other.vertices and self.facets == other.facets

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"SimplicialComplex({list(self.vertices)}, {[list(f) for f in self.facets]})"


def _rank_of(rank: Mapping[str, int], v: str) -> int:
    try:
        return rank[v]
    except KeyError:
        raise FacetUsesUnknownLabel(f"facet uses unknown label {v!r}") from None


def build_complex(vertex_labels: Sequence[str], facets: Iterable[Sequence[str]]) -> SimplicialComplex:
    return SimplicialComplex(vertex_labels, facets)


def full_subcomplex(K: SimplicialComplex, J: Iterable[str]) -> SimplicialComplex:
    """The subcomplex of all faces whose vertices lie in J, with K's order."""
    J = set(J)
    for v in J:
        K.rank(v)  # raises UnknownVertex
    verts = [v for v in K.vertices if v in J]
    facets = set()
    for f, fs in zip(K.facets, K._facet_sets):
        g = tuple(v for v in f if v in J)
        if g:
            facets.add(g)
    return SimplicialComplex(verts, facets)


def _require_face(K: SimplicialComplex, I: Iterable[str]) -> Simplex:
    s = K.sort_simplex(I)
    if not K.has_face(s):
        raise SimplexNotInComplex(f"{list(I)} is not a face")
    return s


def star(K: SimplicialComplex, I: Iterable[str]) -> SimplicialComplex:
    """st_K(I): all faces J with I ∪ J a face of K."""
    s = _require_face(K, I)
    facets = [f for f, fs in zip(K.facets, K._facet_sets) if set(s) <= fs]
    verts = sorted({v for f in facets for v in f}, key=K.rank)
    return SimplicialComplex(verts, facets)


def link(K: SimplicialComplex, I: Iterable[str]) -> SimplicialComplex:
    """link_K(I): faces J disjoint from I with I ∪ J a face of K."""
    s = _require_face(K, I)
    facets = set()
    for f, fs in zip(K.facets, K._facet_sets):
        if set(s) <= fs:
            facets.add(tuple(v for v in f if v not in s))
    facets.discard(())
    verts = sorted({v for f in facets for v in f}, key=K.rank)
    return SimplicialComplex(verts, facets)


def boundary_star(K: SimplicialComplex, I: Iterable[str]) -> SimplicialComplex:
    """∂st_K(I): faces J with I ∪ J in K but I not contained in J."""
    s = _require_face(K, I)
    st = star(K, I)
    facets = set()
    for p in range(st.dim + 1):
        for f in st.faces(p):
            if not set(s) <= set(f):
                facets.add(f)
    verts = sorted({v for f in facets for v in f}, key=K.rank)
    return SimplicialComplex(verts, facets)


def star_delete(K: SimplicialComplex, I: Iterable[str]) -> SimplicialComplex:
    """sd_I(K): remove every face containing I.

    The vertex list is unchanged except when I is a single vertex, in which
    case that vertex itself is removed.
    """
    s = _require_face(K, I)
    if len(s) == 0:
        # deleting the cofaces of the empty simplex removes everything
        return SimplicialComplex((), ())
    sset = set(s)
    facets = set()
    for f, fs in zip(K.facets, K._facet_sets):
        if sset <= fs:
            # keep the maximal proper faces not containing I
            for g in itertools.combinations(f, len(f) - 1):
                if not sset <= set(g):
                    facets.add(g)
        else:
            facets.add(f)
    verts = list(K.vertices)
    if len(s) == 1:
        verts.remove(s[0])
        facets = {f for f in facets if s[0] not in f}
    return SimplicialComplex(verts, facets)


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    """K1 * K2 on the concatenated vertex order; faces are unions σ1 ⊔ σ2."""
    overlap = set(K1.vertices) & set(K2.vertices)
    if overlap:
        raise LabelCollision(f"join factors share labels {sorted(overlap)}")
    verts = K1.vertices + K2.vertices
    if K1.is_empty():
        return SimplicialComplex(verts, K2.facets)
    if K2.is_empty():
        return SimplicialComplex(verts, K1.facets)
    facets = [f1 + f2 for f1 in K1.facets for f2 in K2.facets]
    return SimplicialComplex(verts, facets)


def stellar_subdivide(K: SimplicialComplex, I: Iterable[str], new_label: str) -> SimplicialComplex:
    """stell_I(K) = (K minus the open star of I) glued with a cone on ∂st_K(I)."""
    s = _require_face(K, I)
    if len(s) < 2:
        raise SimplicialError("stellar subdivision needs a simplex with at least 2 vertices")
    if new_label in K.vertices:
        raise LabelCollision(f"label {new_label!r} already used")
    deleted = star_delete(K, s)
    bstar = boundary_star(K, s)
    verts = K.vertices + (new_label,)
    facets = set(deleted.facets)
    for f in bstar.facets:
        facets.add(f + (new_label,))
    return SimplicialComplex(verts, facets)


class VertexMap:
    """A simplicial map given by a total assignment on vertices.

    ``assignment`` sends every source vertex to a target vertex.  The map is
    *simplicial* when images of faces are faces, and *order compatible* when
    preimage blocks respect the target order: whenever φ(u) precedes φ(w) in
    the target, every preimage of φ(u) precedes every preimage of φ(w).
    Order compatibility is what makes pulled-back sign computations match.
    """

    def __init__(self, source: SimplicialComplex, target: SimplicialComplex,
                 assignment: Mapping[str, str]):
        missing = set(source.vertices) - set(assignment)
        if missing:
            raise SimplicialError(f"assignment misses source vertices {sorted(missing)}")
        for v, w in assignment.items():
            if w not in target._rank:
                raise SimplicialError(f"assignment target {w!r} not a vertex of the target")
        self.source = source
        self.target = target
        self.assignment = {v: assignment[v] for v in source.vertices}
        self._fibers: dict[str, tuple] = {}
        for v in source.vertices:
            self._fibers.setdefault(self.assignment[v], ())
        for v in source.vertices:
            w = self.assignment[v]
            self._fibers[w] = self._fibers[w] + (v,)

    def image_simplex(self, simplex: Iterable[str]) -> Simplex:
        return self.target.sort_simplex(self.assignment[v] for v in simplex)

    def fiber(self, w: str) -> tuple:
        """Source vertices mapping to the target vertex w."""
        return self._fibers.get(w, ())

    def preimage_vertices(self, W: Iterable[str]) -> tuple:
        out = [v for w in W for v in self.fiber(w)]
        return tuple(sorted(out, key=self.source.rank))

    def is_simplicial(self) -> bool:
        return all(self.target.has_face(self.image_simplex(f)) for f in self.source.facets)

    def is_surjective(self) -> bool:
        images = set()
        for p in range(self.source.dim + 1):
            for f in self.source.faces(p):
                images.add(self.image_simplex(f))
        for p in range(self.target.dim + 1):
            for f in self.target.faces(p):
                if f not in images:
                    return False
        return True

    def is_order_compatible(self) -> bool:
        # preimage blocks must be contiguous and ordered like their images
        blocks = [self.fiber(w) for w in self.target.vertices]
        flattened = [v for b in blocks for v in sorted(b, key=self.source.rank)]
        return flattened == list(self.source.vertices)

    def preimages(self, target_simplex: Iterable[str], p: int) -> list:
        """All p-simplices of the source mapping onto the given target simplex."""
        ts = self.target.sort_simplex(target_simplex)
        fibers = [self.fiber(w) for w in ts]
        if any(not f for f in fibers):
            return []
        out = []
        need = p + 1 - len(ts)
        if need < 0:
            return []
        # choose a nonempty subset of each fiber with total size p+1
        choices = []
        for fib in fibers:
            subs = []
            for r in range(1, len(fib) + 1):
                subs.extend(itertools.combinations(fib, r))
            choices.append(subs)
        for combo in itertools.product(*choices):
            vs = [v for sub in combo for v in sub]
            if len(vs) != p + 1:
                continue
            s = self.source.sort_simplex(vs)
            if self.source.has_face(s):
                out.append(s)
        return sorted(set(out), key=lambda s: tuple(self.source.rank(v) for v in s))

    def compose(self, inner: "VertexMap") -> "VertexMap":
        """self ∘ inner, for inner: K -> L and self: L -> M."""
        if inner.target != self.source:
            raise SimplicialError("composition mismatch")
        return VertexMap(inner.source, self.target,
                         {v: self.assignment[inner.assignment[v]] for v in inner.source.vertices})


def link_condition(K: SimplicialComplex, u: str, w: str) -> bool:
    """link(u) ∩ link(w) = link({u,w}), compared as face sets."""
    edge = K.sort_simplex((u, w))
    if not K.has_face(edge):
        raise EdgeNotInComplex(f"{{{u},{w}}} is not an edge")
    lu = set(link(K, (u,)).all_faces())
    lw = set(link(K, (w,)).all_faces())
    le = set(link(K, edge).all_faces())
    return (lu & lw) == le


class EdgeContraction(NamedTuple):
    complex: SimplicialComplex
    map: VertexMap
    link_condition: bool


def contract_edge(K: SimplicialComplex, edge: Iterable[str],
                  new_label: Optional[str] = None) -> EdgeContraction:
    """Contract the edge {u,w} to a fresh vertex placed at the earlier rank.

    Returns the contracted complex, the contraction map, and whether the edge
    satisfies the link condition (homotopy type is preserved exactly when it
    does; this is not enforced here).
    """
    u, w = sorted(set(edge), key=K.rank)
    s = K.sort_simplex((u, w))
    if len(s) != 2 or not K.has_face(s):
        raise EdgeNotInComplex(f"{sorted(set(edge))} is not an edge")
    ok = link_condition(K, u, w)
    if new_label is None:
        new_label = f"{u}~{w}"
        while new_label in K.vertices:
            new_label += "'"
    elif new_label in K.vertices and new_label not in (u, w):
        raise LabelCollision(f"label {new_label!r} already used")
    rename = {v: v for v in K.vertices}
    rename[u] = new_label
    rename[w] = new_label
    verts = [rename[v] for v in K.vertices if v != w]
    facets = {tuple(dict.fromkeys(rename[v] for v in f)) for f in K.facets}
    Khat = SimplicialComplex(verts, facets)
    phi = VertexMap(K, Khat, rename)
    return EdgeContraction(Khat, phi, ok)


def relabel(K: SimplicialComplex, mapping: Mapping[str, str]) -> SimplicialComplex:
    """Rename vertices injectively, keeping the order."""
    new = [mapping.get(v, v) for v in K.vertices]
    if len(set(new)) != len(new):
        raise LabelCollision("relabelling is not injective")
    return SimplicialComplex(new, [[mapping.get(v, v) for v in f] for f in K.facets])


def reorder_vertices(K: SimplicialComplex, order: Sequence[str]) -> SimplicialComplex:
    """The same face set with a new vertex order (signs downstream will differ)."""
    if sorted(order) != sorted(K.vertices):
        raise SimplicialError("new order must be a permutation of the vertex set")
    return SimplicialComplex(order, K.facets)


# -- JSON interchange ----------------------------------------------------

def complex_to_json(K: SimplicialComplex) -> dict:
    return {"vertices": list(K.vertices), "facets": [list(f) for f in K.facets]}


def complex_from_json(obj: Mapping) -> SimplicialComplex:
    return SimplicialComplex(obj["vertices"], obj["facets"])
