"""Shared test oracles, kept independent of the library code paths they check.

The homology oracle here builds boundary matrices of the augmented simplicial
chain complex by direct enumeration and reads groups off exact linear algebra.
It never touches the cochain-level machinery under test.
"""

from fractions import Fraction

from matk import exactalg
from matk.exactalg import ZZ, QQ, AbelianGroup
from matk.simplicial import SimplicialComplex


def boundary_matrix(K: SimplicialComplex, p: int):
    """Matrix of the boundary C_p -> C_{p-1} of the augmented chain complex."""
    rows = list(K.faces(p - 1))
    cols = list(K.faces(p))
    idx = {s: i for i, s in enumerate(rows)}
    M = [[0] * len(cols) for _ in rows]
    for j, s in enumerate(cols):
        for t, v in enumerate(s):
            face = s[:t] + s[t + 1:]
            M[idx[face]][j] += (-1) ** t
    return M


def reduced_homology(K: SimplicialComplex, ring=ZZ):
    """Reduced homology groups per degree -1..dim, computed from scratch."""
    if K.is_empty():
        return {-1: AbelianGroup(1) if ring.kind == "Z" else AbelianGroup(1)}
    out = {}
    for p in range(-1, K.dim + 1):
        n_p = len(K.faces(p))
        d_p = [[ring.of_int(x) for x in row] for row in boundary_matrix(K, p)]
        d_p1 = [[ring.of_int(x) for x in row] for row in boundary_matrix(K, p + 1)]
        r_p = exactalg.rank(d_p, ring) if n_p else 0
        cycles = n_p - r_p
        if ring.is_field:
            r_next = exactalg.rank(d_p1, ring)
            out[p] = AbelianGroup(cycles - r_next)
        else:
            diag = [d for d in exactalg.snf_diagonal(d_p1) if d != 0] if K.faces(p + 1) else []
            torsion = tuple(d for d in diag if d > 1)
            out[p] = AbelianGroup(cycles - len(diag), torsion)
    return out


def reduced_betti(K: SimplicialComplex, ring=QQ):
    groups = reduced_homology(K, ring)
    return {p: g.free_rank for p, g in groups.items() if g.free_rank or g.torsion}


def det(M):
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = -d
        d *= A[c][c]
        inv = 1 / A[c][c]
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] * inv
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return d


# -- small standard complexes ----------------------------------------------

def two_points(a="1", b="2"):
    return SimplicialComplex([a, b], [[a], [b]])


def cycle_complex(n, labels=None):
    labels = labels or [str(i + 1) for i in range(n)]
    edges = [[labels[i], labels[(i + 1) % n]] for i in range(n)]
    return SimplicialComplex(labels, edges)


def octahedron():
    """Boundary of the octahedron with opposite pairs (1,2), (3,4), (5,6)."""
    facets = [[a, b, c] for a in "12" for b in "34" for c in "56"]
    return SimplicialComplex(list("123456"), facets)


def simplex_boundary(labels):
    labels = list(labels)
    return SimplicialComplex(labels, [labels[:i] + labels[i + 1:] for i in range(len(labels))])


def rp2_six_vertices():
    """The 6-vertex real projective plane on vertices 0..5."""
    facets = [
        [0, 1, 2], [0, 3, 4], [0, 4, 5], [0, 1, 5], [1, 3, 5],
        [1, 3, 4], [1, 2, 4], [2, 4, 5], [2, 3, 5], [0, 2, 3],
    ]
    return SimplicialComplex([str(i) for i in range(6)], [[str(v) for v in f] for f in facets])


def fig1_complex():
    """The six-vertex graph whose moment-angle complex carries the worked
    triple product with one-dimensional indeterminacy (edge set read from the
    figure; the cohomology facts asserted in the text pin it down)."""
    edges = [
        [1, 4], [1, 5], [1, 6], [2, 4], [2, 5], [2, 6],
        [3, 5], [3, 6], [4, 6],
    ]
    return SimplicialComplex([str(i) for i in range(1, 7)], [[str(v) for v in e] for e in edges])


def joins_example_complex():
    """Two points * (hollow triangle + point) * two points, star deleted at
    {1,4}, {1,5}, {1,6}, {3,8}, {4,8}, {5,8}."""
    from matk.simplicial import join, star_delete

    K1 = two_points("1", "2")
    K2 = SimplicialComplex(["3", "4", "5", "6"], [["3", "4"], ["4", "5"], ["3", "5"], ["6"]])
    K3 = two_points("7", "8")
    K = join(join(K1, K2), K3)
    for e in (("1", "4"), ("1", "5"), ("1", "6"), ("3", "8"), ("4", "8"), ("5", "8")):
        K = star_delete(K, e)
    return K


def four_massey_complex():
    """Join of four S0 factors {i, i'} star deleted at {1,2'}, {1,3'}, {2,3'},
    {2,4'}, {3,4'} plus the extra deletions {1',2'}, {1',3'} that create the
    indeterminacy of the fourfold product."""
    from matk.simplicial import join, star_delete

    K = two_points("1", "1'")
    for i in ("2", "3", "4"):
        K = join(K, two_points(i, i + "'"))
    for e in (("1", "2'"), ("1", "3'"), ("2", "3'"), ("2", "4'"), ("3", "4'"),
              ("1'", "2'"), ("1'", "3'")):
        K = star_delete(K, e)
    return K


def contraction_example_target():
    """Triangle boundary * S0 * S0 star deleted at {1h,3,6} and {5,8}: the
    downstairs complex of the worked edge-contraction example; only the merged
    vertex carries the marked label 1h."""
    from matk.simplicial import join, star_delete

    K1 = simplex_boundary(["1h", "2", "3"])
    K2 = two_points("5", "6")
    K3 = two_points("7", "8")
    K = join(join(K1, K2), K3)
    K = star_delete(K, ("1h", "3", "6"))
    K = star_delete(K, ("5", "8"))
    return K


def contraction_example_source():
    """The eight-vertex complex that contracts onto contraction_example_target
    by {1,4} -> 1h.  Faces are all sets whose image is a face downstairs and
    whose restriction to {1,...,6} matches the drawn full subcomplex; vertex
    order interleaves the preimage blocks: 1, 4, 2, 3, 5, 6, 7, 8."""
    import itertools as it

    Khat = contraction_example_target()
    restriction = SimplicialComplex(
        ["1", "4", "2", "3", "5", "6"],
        [["1", "3", "5"], ["1", "4", "5"], ["1", "4", "6"], ["2", "3", "5"],
         ["2", "4", "5"], ["2", "3", "6"], ["2", "4", "6"]],
    )
    verts = ["1", "4", "2", "3", "5", "6", "7", "8"]
    phi = {v: ("1h" if v in ("1", "4") else v) for v in verts}
    faces = []
    for size in range(1, 6):
        for s in it.combinations(verts, size):
            image = {phi[v] for v in s}
            inner = [v for v in s if v not in ("7", "8")]
            if Khat.has_face(image) and restriction.has_face(inner):
                faces.append(s)
    return SimplicialComplex(verts, faces)


def rp2_join_spec():
    """The torsion-class construction input: the six-vertex projective plane
    joined with two S0 factors, classes chi_{012}, chi_6, chi_8."""
    from matk.cochains import Cochain
    from matk.constructions import JoinMasseySpec
    from matk.exactalg import ZZ

    K1 = rp2_six_vertices()
    K2 = two_points("6", "7")
    K3 = two_points("8", "9")
    return JoinMasseySpec(
        (K1, K2, K3),
        (
            Cochain.chi(K1, ZZ, ("0", "1", "2"), J=K1.vertices),
            Cochain.chi(K2, ZZ, ("6",), J=("6", "7")),
            Cochain.chi(K3, ZZ, ("8",), J=("8", "9")),
        ),
    )
