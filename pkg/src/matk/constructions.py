"""Two generators of non-trivial Massey products, and the maps between them.

Join route: start from factor complexes with chosen nonzero classes, star
delete the join at every sigma_i ∪ sigma_k (sigma_i in the support of a_i,
sigma_k in the deletion set P_{a_k}) for i < k, (i,k) != (1,n).  The deleted
complex carries a canonical defining system and an explicit witness cycle
that together certify the n-fold product non-trivial.

Contraction route: an edge contraction phi: K -> K-hat satisfying the link
condition pulls classes, cochains and whole defining systems back from K-hat
to K; pushing associated cocycles forward (after rewriting their supports off
the contracted edge) maps the downstairs Massey set into the upstairs one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from fractions import Fraction

from .cochains import (
    Chain,
    Cochain,
    boundary,
    coboundary,
    cup_multiply,
    epsilon,
    epsilon_set,
    evaluate,
    reduced_cohomology,
)
from .exactalg import GF, Ring
from .hochster import CohomologyClass
from .massey import (
    DefiningSystem,
    check_defining_system,
    associated_cocycle,
    enumerate_defining_systems,
)
from .simplicial import (
    OrderIncompatibleMap,
    SimplicialComplex,
    VertexMap,
    contract_edge,
    join,
    star_delete,
)


class ZeroClass(ValueError):
    pass


class InvalidSpec(ValueError):
    pass


class SupportContainsContractedEdge(ValueError):
    pass


class DiagonalTouchesEdge(ValueError):
    pass


class InvalidUpstairsSystem(ValueError):
    pass


# -- the join + star deletion construction -----------------------------------


@dataclass
class JoinMasseySpec:
    """Factors with one chosen cocycle each, plus the two free choices the
    construction depends on: the distinguished vertex of each support simplex
    and the order of each support."""

    factors: tuple
    cochains: tuple  # a_i, a Cochain on factors[i] with its own J_i
    vertex_choice: dict = field(default_factory=dict)  # simplex -> vertex
    support_order: dict = field(default_factory=dict)  # factor index -> sequence

    def __post_init__(self):
        self.factors = tuple(self.factors)
        self.cochains = tuple(self.cochains)
        if len(self.factors) != len(self.cochains):
            raise InvalidSpec("one cochain per factor")
        for K_i, a_i in zip(self.factors, self.cochains):
            if a_i.complex != K_i:
                raise InvalidSpec("cochain does not live on its factor")
        rings = {a.ring for a in self.cochains}
        if len(rings) != 1:
            raise InvalidSpec("all cochains must share one ring")

    @property
    def n(self) -> int:
        return len(self.factors)

    @property
    def ring(self) -> Ring:
        return self.cochains[0].ring

    def ordered_support(self, i: int) -> tuple:
        a = self.cochains[i]
        default = a.support
        order = self.support_order.get(i)
        if order is None:
            return default
        order = tuple(self.factors[i].sort_simplex(s) for s in order)
        if sorted(order) != sorted(default):
            raise InvalidSpec(f"support order for factor {i} is not a permutation")
        return order

    def distinguished_vertex(self, i: int, simplex) -> str:
        s = self.factors[i].sort_simplex(simplex)
        return self.vertex_choice.get(s, s[0])


def compute_P_sets(K_i: SimplicialComplex, a_i: Cochain,
                   vertex_choice: Optional[Mapping] = None,
                   support_order: Optional[Sequence] = None):
    """The deletion set P_{a} and the surviving support, per the iterated
    subsequence rule: walk the ordered support, discard everything each
    chosen simplex sweeps out, continue from the next survivor."""
    ring = a_i.ring
    H = reduced_cohomology(K_i, a_i.J, ring)
    if not H.is_cocycle(a_i):
        raise ZeroClass("construction input must be a cocycle")
    if H.is_coboundary(a_i):
        raise ZeroClass("construction input represents the zero class")
    vertex_choice = dict(vertex_choice or {})
    support = list(a_i.support)
    if support_order is not None:
        ordered = [K_i.sort_simplex(s) for s in support_order]
        if sorted(ordered) != sorted(support):
            raise InvalidSpec("support order is not a permutation of the support")
        support = ordered
    p = a_i.p

    def P_of(sigma):
        v = vertex_choice.get(sigma, sigma[0])
        if v not in sigma:
            raise InvalidSpec(f"distinguished vertex {v} not in {sigma}")
        core = set(sigma) - {v}
        return [t for t in K_i.faces(p) if t != sigma and set(sigma) & set(t) == core]

    P_total: list = []
    remaining = list(support)
    chosen = remaining[0]
    while True:
        swept = P_of(chosen)
        for t in swept:
            if t not in P_total:
                P_total.append(t)
        remaining = [s for s in remaining if s not in swept]
        pos = remaining.index(chosen) + 1
        if pos >= len(remaining):
            break
        chosen = remaining[pos]
    survivors = tuple(s for s in support if s not in P_total)
    if not P_total:
        raise InvalidSpec("empty deletion set; the class hypothesis fails")
    if not survivors:
        raise InvalidSpec("no surviving support simplex")
    return tuple(sorted(P_total, key=lambda s: tuple(K_i.rank(v) for v in s))), survivors


@dataclass(frozen=True)
class DeletionLedger:
    deletions: tuple  # (i, k, simplex) with 1-based factor indices

    def simplices(self) -> tuple:
        return tuple(s for _, _, s in self.deletions)

    def to_json(self) -> list:
        return [{"i": i, "k": k, "simplex": list(s)} for i, k, s in self.deletions]


def _spec_data(spec: JoinMasseySpec):
    data = []
    for idx in range(spec.n):
        P, survivors = compute_P_sets(
            spec.factors[idx], spec.cochains[idx],
            vertex_choice=spec.vertex_choice,
            support_order=spec.support_order.get(idx))
        data.append({
            "support": spec.ordered_support(idx),
            "P": P,
            "survivors": survivors,
        })
    return data


def construct_massey_complex(spec: JoinMasseySpec):
    """Star delete the join at every sigma_i ∪ sigma_k; the result does not
    depend on the order the pairs are processed in."""
    if spec.n < 2:
        raise InvalidSpec("need at least two factors")
    data = _spec_data(spec)
    K = spec.factors[0]
    for f in spec.factors[1:]:
        K = join(K, f)
    deletions = []
    for i in range(1, spec.n + 1):
        for k in range(i + 1, spec.n + 1):
            if (i, k) == (1, spec.n):
                continue
            for sigma_i in data[i - 1]["support"]:
                for sigma_k in data[k - 1]["P"]:
                    deletions.append((i, k, K.sort_simplex(sigma_i + sigma_k)))
    for _, _, simplex in deletions:
        K = star_delete(K, simplex)
    return K, DeletionLedger(tuple(deletions))


def _theta_join(spec: JoinMasseySpec, K, i: int, k: int, sigmas) -> int:
    """(-1)^(k-i+sum |J_l| (p_{l+1}+..+p_k)) times the distinguished-vertex
    signs of the inner factors; 1 on the diagonal."""
    if i == k:
        return 1
    ps = [a.p for a in spec.cochains]
    Js = [a.J for a in spec.cochains]
    exp = (k - i)
    for l in range(i, k):
        exp += len(Js[l - 1]) * sum(ps[l:k])
    sign = (-1) ** exp
    for l in range(i + 1, k + 1):
        sigma = sigmas[l - 1]
        v = spec.distinguished_vertex(l - 1, sigma)
        sign *= epsilon(K, v, sigma)
    return sign


def canonical_defining_system_joins(spec: JoinMasseySpec, K: SimplicialComplex) -> DefiningSystem:
    """The defining system attached to the construction: entry (i,k) sums over
    the support at position i and the survivors at positions i+1..k, removing
    the distinguished vertices of the inner simplices."""
    data = _spec_data(spec)
    ring = spec.ring
    classes = []
    for a in spec.cochains:
        lifted = Cochain(K, ring, a.J, a.p, dict(a.coeffs))
        classes.append(CohomologyClass(lifted))
    entries = {}
    n = spec.n
    for i in range(1, n + 1):
        for k in range(i + 1, n + 1):
            if (i, k) == (1, n):
                continue
            Jblock = []
            for l in range(i, k + 1):
                Jblock.extend(spec.cochains[l - 1].J)
            pblock = sum(spec.cochains[l - 1].p for l in range(i, k + 1))
            coeffs: dict = {}
            ranges = [data[i - 1]["support"]]
            ranges += [data[l - 1]["survivors"] for l in range(i + 1, k + 1)]
            for sigmas_tail in itertools.product(*ranges):
                sigmas = [None] * n
                for offset, s in enumerate(sigmas_tail):
                    sigmas[i - 1 + offset] = s
                coeff = ring.one
                for l in range(i, k + 1):
                    coeff = ring.mul(coeff, spec.cochains[l - 1].coeffs[sigmas[l - 1]])
                theta = _theta_join(spec, K, i, k, sigmas)
                drop = {spec.distinguished_vertex(l - 1, sigmas[l - 1])
                        for l in range(i + 1, k + 1)}
                verts = [v for l in range(i, k + 1) for v in sigmas[l - 1] if v not in drop]
                simplex = K.sort_simplex(verts)
                if not K.has_face(simplex):
                    raise InvalidSpec(f"canonical entry hits a deleted simplex {simplex}")
                term = ring.mul(coeff, ring.of_int(theta))
                coeffs[simplex] = ring.add(coeffs.get(simplex, ring.zero), term)
            entries[(i, k)] = Cochain(K, ring, Jblock, pblock, coeffs)
    return DefiningSystem(tuple(classes), entries)


def _cycle_pairing_with(a: Cochain):
    """A small-support cycle x with <a, x> nonzero over a's ring, or None."""
    from .massey import find_evaluating_cycle

    return find_evaluating_cycle(a, prefer_small=True)


def witness_cycle(spec: JoinMasseySpec, K: SimplicialComplex) -> Chain:
    """The explicit cycle certifying non-triviality: a pairing cycle for a_1
    joined with boundary spheres of sigma_2 ∪ sigma_n and of the inner
    simplices.  Over Z a torsion first class forces prime-field coefficients;
    the returned chain's ring records that.
    """
    data = _spec_data(spec)
    n = spec.n
    ring = spec.ring
    a1 = Cochain(K, ring, spec.cochains[0].J, spec.cochains[0].p,
                 dict(spec.cochains[0].coeffs))
    x1 = _cycle_pairing_with(a1)
    if x1 is None and ring.kind == "Z":
        for p in (2, 3, 5, 7, 11, 13):
            modp = GF(p)
            reduced = Cochain(K, modp, a1.J, a1.p,
                              {s: modp.of_int(c) for s, c in a1.coeffs.items()})
            if not reduced.is_zero():
                x1 = _cycle_pairing_with(reduced)
                if x1 is not None:
                    ring = modp
                    break
    if x1 is None:
        raise InvalidSpec("no cycle pairs nontrivially with the first class")

    sigma = [None] * (n + 1)
    for l in range(2, n):
        sigma[l] = data[l - 1]["survivors"][0]
    sigma[n] = data[n - 1]["P"][0]

    coeffs: dict = {}
    if n == 2:
        # nothing is deleted for n = 2, so a product of pairing cycles works
        a2 = _as_ring(Cochain(K, spec.ring, spec.cochains[1].J, spec.cochains[1].p,
                              dict(spec.cochains[1].coeffs)), ring) \
            if ring != spec.ring else \
            Cochain(K, ring, spec.cochains[1].J, spec.cochains[1].p,
                    dict(spec.cochains[1].coeffs))
        x2 = _cycle_pairing_with(a2)
        if x2 is None:
            raise InvalidSpec("no cycle pairs nontrivially with the second class")
        for s1, c1 in x1.coeffs.items():
            for s2, c2 in x2.coeffs.items():
                simplex = K.sort_simplex(s1 + s2)
                term = ring.mul(c1, c2)
                coeffs[simplex] = ring.add(coeffs.get(simplex, ring.zero), term)
    else:
        pair = K.sort_simplex(sigma[2] + sigma[n])
        inner = list(range(3, n))
        for s1, c1 in x1.coeffs.items():
            for w2 in pair:
                c = ring.mul(c1, ring.of_int(epsilon(K, w2, pair)))
                for ws in itertools.product(*[sigma[l] for l in inner]):
                    cc = c
                    for l, w in zip(inner, ws):
                        cc = ring.mul(cc, ring.of_int(epsilon(K, w, sigma[l])))
                    dropped = {w2, *ws}
                    verts = [v for v in s1]
                    for l in range(2, n + 1):
                        verts.extend(sigma[l])
                    simplex = K.sort_simplex([v for v in verts if v not in dropped])
                    coeffs[simplex] = ring.add(coeffs.get(simplex, ring.zero), cc)
    Jall = K.sort_simplex([v for a in spec.cochains for v in a.J])
    p_total = sum(a.p for a in spec.cochains) + 1
    x = Chain(K, ring, Jall, p_total, coeffs)
    if not boundary(x).is_zero():
        raise InvalidSpec("constructed witness chain is not a cycle")
    return x


@dataclass
class JoinCertificate:
    method: str  # "pairing", "pairing-after-moves", "enumeration-F2"
    omega: Cochain
    cycle: Optional[Chain]
    value: Optional[object]
    moves: int = 0

    @property
    def nontrivial(self) -> bool:
        return True  # only successful certificates are constructed


def _as_ring(a: Cochain, ring: Ring) -> Cochain:
    if a.ring == ring:
        return a
    if ring.kind != "Fp":
        raise InvalidSpec("can only reduce to a prime field")

    def reduce_coeff(c):
        c = Fraction(c)
        if c.denominator % ring.p == 0:
            raise InvalidSpec(f"coefficient {c} has no reduction mod {ring.p}")
        return ring.div(ring.of_int(c.numerator), ring.of_int(c.denominator))

    return Cochain(a.complex, ring, a.J, a.p,
                   {s: reduce_coeff(c) for s, c in a.coeffs.items()})


def pair_off_supports(omega: Cochain, x: Chain, move_cap: int):
    """Rewrite the cocycle and the cycle within their classes until the
    pairing is visibly nonzero or no rewriting move applies.

    Two moves, each targeting one accidental common support simplex tau:
    push the cycle across a coface of tau none of whose other faces meet the
    cocycle's support, or slide the cocycle off tau by the coboundary of a
    facet tau shares with another cycle simplex.  Returns
    (omega', x', value, moves) with value None when the loop stalls.
    """
    K = omega.complex
    ring = omega.ring
    moves = 0
    while moves <= move_cap:
        value = evaluate(omega, x)
        if not ring.is_zero(value):
            return omega, x, value, moves
        common = sorted(set(omega.support) & set(x.coeffs), key=len)
        if not common:
            return omega, x, None, moves
        tau = common[0]
        moved = False
        # replace tau in the cycle by the rest of the boundary of a coface
        for v in [v for v in omega.J if v not in tau]:
            A = K.sort_simplex(tau + (v,))
            if not K.has_face(A):
                continue
            other_faces = [f for f in itertools.combinations(A, len(tau))
                           if f != tau and f in set(omega.support)]
            if other_faces:
                continue
            eps = epsilon(K, v, A)
            correction = boundary(Chain(K, ring, x.J, x.p + 1, {A: ring.one}))
            x = x - correction.scale(ring.mul(x.coeffs[tau], ring.of_int(eps)))
            moves += 1
            moved = True
            break
        if moved:
            continue
        # slide the cocycle off tau through a shared facet of the cycle
        for t in x.coeffs:
            if t == tau or len(set(tau) & set(t)) != len(tau) - 1:
                continue
            shared = tuple(v for v in tau if v in set(t))
            eps = epsilon_set(K, set(tau) - set(shared), tau)
            d_chi = coboundary(Cochain(K, ring, omega.J, omega.p - 1,
                                       {shared: ring.one}))
            omega = omega - d_chi.scale(ring.mul(omega.coeffs[tau], ring.of_int(eps)))
            moves += 1
            moved = True
            break
        if not moved:
            return omega, x, None, moves
    return omega, x, None, moves


def certify_join_nontrivial(spec: JoinMasseySpec, K: Optional[SimplicialComplex] = None,
                            ds: Optional[DefiningSystem] = None,
                            move_cap: Optional[int] = None) -> JoinCertificate:
    """Certify that the constructed product contains no zero class.

    Pair the canonical associated cocycle against the witness cycle, rewriting
    both off their accidental common supports when needed; if the bounded
    rewriting loop stalls, fall back to exhaustive enumeration over F_2.
    """
    if K is None:
        K, _ = construct_massey_complex(spec)
    if ds is None:
        ds = canonical_defining_system_joins(spec, K)
    omega = associated_cocycle(ds)
    x = witness_cycle(spec, K)
    omega = _as_ring(omega, x.ring)
    if move_cap is None:
        move_cap = 10 * sum(len(K.faces(p)) for p in range(K.dim + 1))

    omega, x, value, moves = pair_off_supports(omega, x, move_cap)
    if value is not None:
        method = "pairing" if moves == 0 else "pairing-after-moves"
        return JoinCertificate(method, omega, x, value, moves)

    # bounded rewriting stalled: decide exactly over F_2
    f2 = GF(2)
    classes = tuple(
        CohomologyClass(_as_ring(c.representative, f2)) for c in ds.classes
    )
    verdict = enumerate_defining_systems(classes, budget=20)
    if verdict.contains_zero is False:
        return JoinCertificate("enumeration-F2", _as_ring(associated_cocycle(ds), f2),
                               None, None, moves)
    raise InvalidSpec("could not certify the constructed product non-trivial")


# -- the edge contraction calculus -------------------------------------------


def _require_contraction_map(phi: VertexMap):
    if not phi.is_order_compatible():
        raise OrderIncompatibleMap(
            "pullbacks need contiguous preimage blocks in the source order")
    if not phi.is_simplicial():
        raise InvalidUpstairsSystem("map is not simplicial")


def pullback_class(phi: VertexMap, a_hat: Cochain) -> Cochain:
    """Pull a cocycle back along a contraction: each support simplex is
    replaced by the sum of its same-dimension preimages."""
    _require_contraction_map(phi)
    ring = a_hat.ring
    J = phi.preimage_vertices(a_hat.J)
    coeffs: dict = {}
    for s_hat, c in a_hat.coeffs.items():
        for s in phi.preimages(s_hat, a_hat.p):
            coeffs[s] = ring.add(coeffs.get(s, ring.zero), c)
    a = Cochain(phi.source, ring, J, a_hat.p, coeffs)
    if not coboundary(a).is_zero():
        raise InvalidUpstairsSystem("pullback of the given cochain is not a cocycle")
    return a


def _theta_flat(sizes, ps, i, k) -> int:
    exp = 0
    for l in range(i, k):
        exp += sizes[l - 1] * sum(ps[l:k])
    return (-1) ** exp


def pullback_defining_system(phi: VertexMap, ds_hat: DefiningSystem) -> DefiningSystem:
    """Pull a whole defining system back along the contraction; the sign on
    entry (i,k) is theta * theta-hat, built from the block sizes upstairs and
    downstairs."""
    _require_contraction_map(phi)
    ring = ds_hat.ring
    n = ds_hat.n
    ps = [c.p for c in ds_hat.classes]
    sizes_down = [len(c.J) for c in ds_hat.classes]
    classes = tuple(CohomologyClass(pullback_class(phi, c.representative))
                    for c in ds_hat.classes)
    sizes_up = [len(c.J) for c in classes]
    entries = {}
    for (i, k), a_hat in ds_hat.entries.items():
        if i == k:
            continue
        sign = _theta_flat(sizes_up, ps, i, k) * _theta_flat(sizes_down, ps, i, k)
        J = phi.preimage_vertices(a_hat.J)
        p = a_hat.p
        coeffs: dict = {}
        for s_hat, c in a_hat.coeffs.items():
            term = ring.mul(c, ring.of_int(sign))
            for s in phi.preimages(s_hat, p):
                coeffs[s] = ring.add(coeffs.get(s, ring.zero), term)
        entries[(i, k)] = Cochain(phi.source, ring, J, p, coeffs)
    ds = DefiningSystem(classes, entries)
    bad = check_defining_system(ds)
    if bad:
        stages = ", ".join(f"({i},{k})" for i, k, _ in bad)
        raise InvalidUpstairsSystem(f"pulled-back system fails at {stages}")
    return ds


def phi_star_sign(phi: VertexMap, ds: DefiningSystem, i: int, k: int) -> int:
    """The sign c_{i,k} carried by the pushforward of an (i,k)-block cochain."""
    if i == k:
        return 1
    ps = [c.p for c in ds.classes]
    exp = 0
    up: set = set()
    down: set = set()
    for l in range(i, k):
        up |= set(ds.classes[l - 1].J)
        down |= {phi.assignment[v] for v in ds.classes[l - 1].J}
        exp += (len(up) - len(down)) * ps[l]
    return (-1) ** exp


def pushforward_phi_star(phi: VertexMap, a: Cochain, sign: int = 1) -> Cochain:
    """phi_*: collapse each support simplex to its image, keeping the shared
    coefficient; defined only when no support simplex degenerates and all
    preimages of one image carry equal coefficients."""
    ring = a.ring
    coeffs: dict = {}
    seen: dict = {}
    for s, c in a.coeffs.items():
        image = phi.image_simplex(s)
        if len(image) != len(s):
            raise SupportContainsContractedEdge(
                f"support simplex {s} collapses under the contraction")
        if image in seen and seen[image] != c:
            raise SupportContainsContractedEdge(
                f"preimages of {image} carry different coefficients")
        seen[image] = c
        coeffs[image] = ring.mul(c, ring.of_int(sign))
    Jhat = phi.target.sort_simplex({phi.assignment[v] for v in a.J})
    return Cochain(phi.target, ring, Jhat, a.p, coeffs)


def disjointify_defining_system(ds: DefiningSystem, edge: Iterable[str]) -> DefiningSystem:
    """Rewrite a defining system so no entry's support contains the edge.

    Innermost offending pairs are cleared first.  Clearing one simplex sigma
    from entry (i,k) subtracts the coboundary of chi_{sigma minus u} and
    corrects every entry (i',k) with i' < i and (i,k') with k' > k; u is the
    later of the two edge vertices in the vertex order.  Each pass strictly
    reduces the number of offending simplices, so the loop terminates, and the
    associated class is unchanged.
    """
    K = ds.complex
    ring = ds.ring
    u_lo, u_hi = sorted(set(edge), key=K.rank)
    edge_set = {u_lo, u_hi}
    n = ds.n

    def offending(a: Cochain):
        return sorted(s for s in a.coeffs if edge_set <= set(s))

    for i in range(1, n + 1):
        if offending(ds.a(i, i)):
            raise DiagonalTouchesEdge(f"representative {i} touches the edge")

    def total_offense(system):
        return sum(len(offending(a)) for a in system.entries.values())

    guard = total_offense(ds) + 1
    while guard >= 0:
        target = None
        for gap in range(1, n):
            for i in range(1, n - gap + 1):
                k = i + gap
                if (i, k) == (1, n):
                    continue
                bad = offending(ds.a(i, k))
                if bad:
                    target = (i, k, bad[0])
                    break
            if target:
                break
        if target is None:
            break
        i, k, sigma = target
        c_sigma = ds.a(i, k).coeffs[sigma]
        eps = epsilon(K, u_hi, sigma)
        factor = ring.mul(c_sigma, ring.of_int(eps))
        stub = Cochain(K, ring, ds.J_block(i, k), ds.p_block(i, k) - 1,
                       {tuple(v for v in sigma if v != u_hi): ring.one})
        entries = dict(ds.entries)
        entries[(i, k)] = ds.a(i, k) - coboundary(stub).scale(factor)
        for i2 in range(1, i):
            if (i2, k) == (1, n) or (i2, k) not in ds.entries:
                continue
            left = ds.a(i2, i - 1)
            entries[(i2, k)] = ds.a(i2, k) + cup_multiply(left, stub).scale(factor)
        mydeg = ds.p_block(i, k) + len(ds.J_block(i, k)) + 1
        cfac = ring.mul(factor, ring.of_int((-1) ** mydeg))
        for k2 in range(k + 1, n + 1):
            if (i, k2) == (1, n) or (i, k2) not in ds.entries:
                continue
            right = ds.a(k + 1, k2)
            entries[(i, k2)] = ds.a(i, k2) + cup_multiply(stub, right).scale(cfac)
        new_ds = DefiningSystem(ds.classes, entries)
        if total_offense(new_ds) >= total_offense(ds):
            raise InvalidSpec("support rewriting failed to make progress")
        ds = new_ds
        guard -= 1
    bad = check_defining_system(ds)
    if bad:
        stages = ", ".join(f"({i},{k})" for i, k, _ in bad)
        raise InvalidSpec(f"rewritten system fails at {stages}")
    return ds


def spec_to_json(spec: JoinMasseySpec) -> dict:
    from .cochains import cochain_to_json
    from .simplicial import complex_to_json

    return {
        "ring": spec.ring.name(),
        "factors": [complex_to_json(K) for K in spec.factors],
        "cochains": [cochain_to_json(a) for a in spec.cochains],
        "vertex_choice": [
            {"simplex": list(s), "vertex": v} for s, v in sorted(spec.vertex_choice.items())
        ],
        "support_order": {
            str(i): [list(s) for s in order] for i, order in sorted(spec.support_order.items())
        },
    }


def spec_from_json(obj: Mapping) -> JoinMasseySpec:
    from .cochains import cochain_from_json
    from .simplicial import complex_from_json

    ring = Ring.parse(obj["ring"])
    factors = tuple(complex_from_json(K) for K in obj["factors"])
    cochains = tuple(
        cochain_from_json(c, K, ring) for K, c in zip(factors, obj["cochains"])
    )
    vertex_choice = {}
    for entry in obj.get("vertex_choice", []):
        s = tuple(entry["simplex"])
        for K in factors:
            if all(v in K.vertices for v in s):
                s = K.sort_simplex(s)
                break
        vertex_choice[s] = entry["vertex"]
    support_order = {
        int(i): [tuple(s) for s in order]
        for i, order in obj.get("support_order", {}).items()
    }
    return JoinMasseySpec(factors, cochains, vertex_choice, support_order)


def contract_edges(K: SimplicialComplex, edges: Sequence, require_link: bool = True):
    """Contract a sequence of edges (named in K's labels) and compose the maps.

    Returns (K-hat, phi, all_links_ok).  Later edges may name vertices that an
    earlier contraction already merged; they are followed through the maps.
    """
    current = K
    assignment = {v: v for v in K.vertices}
    all_ok = True
    for (u, w) in edges:
        uu, ww = assignment[u], assignment[w]
        if uu == ww:
            raise ValueError(f"edge {u},{w} already collapsed")
        contracted = contract_edge(current, (uu, ww))
        all_ok = all_ok and contracted.link_condition
        if require_link and not contracted.link_condition:
            raise ValueError(f"edge {u},{w} fails the link condition")
        step = contracted.map
        assignment = {v: step.assignment[assignment[v]] for v in K.vertices}
        current = contracted.complex
    phi = VertexMap(K, current, assignment)
    return current, phi, all_ok
