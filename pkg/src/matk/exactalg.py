"""Exact linear algebra over Z, Q and prime fields.

Everything here is dense, small-scale and exact: arbitrary-precision integers,
``fractions.Fraction`` for rationals, and reduced residues for F_p.  Matrices
are plain lists of lists.  The Smith normal form pivots on the entry of least
absolute value to keep intermediate coefficients small.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence


class NotPrime(ValueError):
    pass


def _factorint(n: int) -> dict:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Ring:
    """One of Z, Q or F_p, with element arithmetic.

    Elements are ints for Z and F_p (residues in [0, p)) and Fractions for Q.
    """

    kind: str  # "Z" | "Q" | "Fp"
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Fp"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Fp":
            if self.p is None or not _is_prime(self.p):
                raise NotPrime(f"modulus {self.p!r} is not prime")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    def of_int(self, n: int):
        if self.kind == "Z":
            return int(n)
        if self.kind == "Q":
            return Fraction(n)
        return n % self.p

    @property
    def zero(self):
        return self.of_int(0)

    @property
    def one(self):
        return self.of_int(1)

    def add(self, a, b):
        return (a + b) % self.p if self.kind == "Fp" else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.kind == "Fp" else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.kind == "Fp" else a * b

    def neg(self, a):
        return (-a) % self.p if self.kind == "Fp" else -a

    def inv(self, a):
        if self.kind == "Q":
            return 1 / Fraction(a)
        if self.kind == "Fp":
            return pow(a, self.p - 2, self.p)
        raise ValueError("Z is not a field")

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def element_to_str(self, a) -> str:
        if self.kind == "Q":
            a = Fraction(a)
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(a)

    def element_from_str(self, s: str):
        s = s.strip()
        if "/" in s:
            num, den = s.split("/")
            if self.kind == "Q":
                return Fraction(int(num), int(den))
            if self.kind == "Fp":
                return self.div(self.of_int(int(num)), self.of_int(int(den)))
            raise ValueError(f"{s!r} is not an integer")
        return self.of_int(int(s))

    def name(self) -> str:
        return {"Z": "Z", "Q": "Q"}.get(self.kind, f"F{self.p}")

    @staticmethod
    def parse(name: str) -> "Ring":
        name = name.strip()
        if name == "Z":
            return ZZ
        if name == "Q":
            return QQ
        if name.startswith("Fp:"):
            return GF(int(name[3:]))
        if name.startswith("F"):
            return GF(int(name[1:]))
        raise ValueError(f"unknown ring {name!r}")


ZZ = Ring("Z")
QQ = Ring("Q")


def GF(p: int) -> Ring:
    return Ring("Fp", p)


def zeros(rows: int, cols: int, ring: Ring = ZZ):
    return [[ring.zero] * cols for _ in range(rows)]


def identity(n: int, ring: Ring = ZZ):
    M = zeros(n, n, ring)
    for i in range(n):
        M[i][i] = ring.one
    return M


def mat_mul(A, B, ring: Ring = ZZ):
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    out = zeros(n, m, ring)
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if ring.is_zero(a):
                continue
            Bt = B[t]
            row = out[i]
            for j in range(m):
                row[j] = ring.add(row[j], ring.mul(a, Bt[j]))
    return out


def mat_vec(A, x, ring: Ring = ZZ):
    return [
        _dot(row, x, ring)
        for row in A
    ]


def _dot(row, x, ring: Ring):
    s = ring.zero
    for a, b in zip(row, x):
        if not ring.is_zero(a) and not ring.is_zero(b):
            s = ring.add(s, ring.mul(a, b))
    return s


# -- Smith normal form -------------------------------------------------------


class SNFResult(NamedTuple):
    D: list  # diagonal form, same shape as the input
    U: list  # unimodular, rows x rows
    V: list  # unimodular, cols x cols


def smith_normal_form(M: Sequence[Sequence[int]]) -> SNFResult:
    """U*M*V = D with D diagonal and d1 | d2 | ... ; U, V unimodular over Z.

    Pivots on the least nonzero absolute value to limit coefficient growth.
    Diagonal entries are normalized nonnegative.
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    D = [[int(x) for x in row] for row in M]
    U = identity(rows)
    V = identity(cols)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, q):  # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):
        for r in D:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    def sweep(t0):
        """Diagonalize D[t0:, t0:] assuming everything left/above is untouched."""
        t = t0
        while True:
            piv = None
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    a = D[i][j]
                    if a != 0 and (best is None or abs(a) < best):
                        best = abs(a)
                        piv = (i, j)
            if piv is None:
                return
            swap_rows(t, piv[0])
            swap_cols(t, piv[1])
            dirty = True
            while dirty:
                dirty = False
                for i in range(t + 1, rows):
                    if D[i][t]:
                        add_row(t, i, -(D[i][t] // D[t][t]))
                        if D[i][t]:  # remainder beat the pivot: promote and restart
                            swap_rows(t, i)
                            dirty = True
                for j in range(t + 1, cols):
                    if D[t][j]:
                        add_col(t, j, -(D[t][j] // D[t][t]))
                        if D[t][j]:
                            swap_cols(t, j)
                            dirty = True
            t += 1

    sweep(0)

    # enforce the divisibility chain d1 | d2 | ...
    k = min(rows, cols)
    fixed = False
    while not fixed:
        fixed = True
        for i in range(k - 1):
            a, b = D[i][i], D[i + 1][i + 1]
            if a and b and b % a != 0:
                add_col(i + 1, i, 1)  # puts b below the pivot; redo the corner
                sweep(i)
                fixed = False
                break

    for i in range(k):
        if D[i][i] < 0:
            for rr in range(cols):
                V[rr][i] = -V[rr][i]
            for rr in range(rows):
                D[rr][i] = -D[rr][i]
    return SNFResult(D, U, V)


def snf_diagonal(M) -> list:
    """Invariant factors (diagonal of the Smith form), via sparse unit-pivot
    pre-reduction; the residual matrix gets the dense transform-tracking SNF."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    k = min(rows, cols)
    if k == 0:
        return []
    pivots, residual = _sparse_int_reduce([[int(x) for x in row] for row in M])
    if residual:
        D, _, _ = smith_normal_form(residual)
        tail = [D[i][i] for i in range(min(len(D), len(D[0])))]
    else:
        tail = []
    diag = [1] * pivots + tail
    diag.extend([0] * (k - len(diag)))
    return diag[:k]


# -- rank / kernel / affine solving ------------------------------------------


def _sparse_int_reduce(M):
    """Eliminate unit pivots of an integer matrix with exact row operations.

    Returns (pivots, residual) where the residual is the dense submatrix left
    once no entry of absolute value 1 remains.  Each eliminated pivot is an
    elementary SNF step, so the invariant factors of M are those of the
    residual prefixed by ``pivots`` ones.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set] = {}
    for i, row in enumerate(M):
        for j, a in enumerate(row):
            if a:
                rows.setdefault(i, {})[j] = int(a)
                cols.setdefault(j, set()).add(i)
    pivots = 0
    while True:
        best = None
        best_fill = None
        for i, row in rows.items():
            for j, a in row.items():
                if a in (1, -1):
                    fill = (len(row) - 1) * (len(cols[j]) - 1)
                    if best_fill is None or fill < best_fill:
                        best, best_fill = (i, j, a), fill
                        if fill == 0:
                            break
            if best_fill == 0:
                break
        if best is None:
            break
        i0, j0, v = best
        pivot_row = rows.pop(i0)
        for j in pivot_row:
            cols[j].discard(i0)
        for i in list(cols.get(j0, ())):
            row = rows[i]
            f = row[j0] * v
            for j, a in pivot_row.items():
                if j == j0:
                    continue
                new = row.get(j, 0) - f * a
                if new:
                    row[j] = new
                    cols.setdefault(j, set()).add(i)
                else:
                    if j in row:
                        del row[j]
                        cols[j].discard(i)
            del row[j0]
            cols[j0].discard(i)
            if not row:
                del rows[i]
        cols.pop(j0, None)
        pivots += 1
    live_rows = sorted(rows)
    live_cols = sorted({j for row in rows.values() for j in row})
    residual = [[rows[i].get(j, 0) for j in live_cols] for i in live_rows]
    return pivots, residual


def _sparse_modp_rank(M, p: int) -> int:
    rows: list[dict[int, int]] = []
    for row in M:
        r = {j: int(a) % p for j, a in enumerate(row) if int(a) % p}
        if r:
            rows.append(r)
    rank_count = 0
    while rows:
        rows.sort(key=len)
        pivot_row = rows.pop(0)
        j0 = next(iter(pivot_row))
        inv = pow(pivot_row[j0], p - 2, p)
        rank_count += 1
        nxt = []
        for row in rows:
            a = row.get(j0)
            if a:
                f = (a * inv) % p
                for j, b in pivot_row.items():
                    new = (row.get(j, 0) - f * b) % p
                    if new:
                        row[j] = new
                    elif j in row:
                        del row[j]
            if row:
                nxt.append(row)
        rows = nxt
    return rank_count


def _integer_entries(M):
    out = []
    for row in M:
        r = []
        for a in row:
            if isinstance(a, Fraction):
                if a.denominator != 1:
                    return None
                r.append(a.numerator)
            else:
                r.append(int(a))
        out.append(r)
    return out


def row_echelon(M, ring: Ring):
    """Reduced row echelon form over a field; returns (R, pivot_cols)."""
    if not ring.is_field:
        raise ValueError("row_echelon needs a field")
    R = [list(row) for row in M]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if not ring.is_zero(R[i][c])), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = ring.inv(R[r][c])
        R[r] = [ring.mul(inv, x) for x in R[r]]
        for i in range(rows):
            if i != r and not ring.is_zero(R[i][c]):
                f = R[i][c]
                R[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(M, ring: Ring) -> int:
    if not M or not M[0]:
        return 0
    if ring.kind == "Fp":
        return _sparse_modp_rank(M, ring.p)
    ints = _integer_entries(M)
    if ints is not None:  # rank over Q equals rank over Z
        pivots, residual = _sparse_int_reduce(ints)
        if not residual:
            return pivots
        return pivots + len(row_echelon(
            [[Fraction(a) for a in row] for row in residual], QQ)[1])
    return len(row_echelon(M, QQ)[1])


def kernel_basis(M, ring: Ring, cols: Optional[int] = None) -> list:
    """A basis of ker(M).  Over Z this generates the full integer kernel lattice."""
    rows = len(M)
    if cols is None:
        cols = len(M[0]) if rows else 0
    if cols == 0:
        return []
    if rows == 0:
        return [[ring.one if j == i else ring.zero for j in range(cols)] for i in range(cols)]
    if ring.is_field:
        R, pivots = row_echelon(M, ring)
        free = [c for c in range(cols) if c not in pivots]
        basis = []
        for fc in free:
            v = [ring.zero] * cols
            v[fc] = ring.one
            for r, pc in enumerate(pivots):
                v[pc] = ring.neg(R[r][fc])
            basis.append(v)
        return basis
    D, U, V = smith_normal_form(M)
    k = min(rows, cols)
    basis = []
    for j in range(cols):
        if j >= k or D[j][j] == 0:
            basis.append([V[i][j] for i in range(cols)])
    return basis


class AffineSolution(NamedTuple):
    particular: list
    kernel: list  # list of basis vectors


def solve_affine(A, b, ring: Ring) -> Optional[AffineSolution]:
    """Solve A x = b exactly; None when b is not in the image.

    Over a field the kernel is a vector-space basis; over Z the particular
    solution is integral and the kernel basis generates the kernel lattice.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if rows == 0:
        return AffineSolution([], kernel_basis(A, ring, cols))
    if ring.is_field:
        aug = [list(row) + [bi] for row, bi in zip(A, b)]
        R, pivots = row_echelon(aug, ring)
        if cols in pivots:
            return None
        x = [ring.zero] * cols
        for r, pc in enumerate(pivots):
            x[pc] = R[r][cols]
        return AffineSolution(x, kernel_basis(A, ring, cols))
    D, U, V = smith_normal_form(A)
    c = mat_vec(U, [int(x) for x in b], ZZ)
    k = min(rows, cols)
    y = [0] * cols
    for i in range(rows):
        d = D[i][i] if i < k else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d != 0:
                return None
            y[i] = c[i] // d
    x = mat_vec(V, y, ZZ)
    return AffineSolution(x, kernel_basis(A, ring, cols))


def column_space_basis(M, ring: Ring) -> list:
    """Independent columns of M over a field (as column vectors)."""
    if not M or not M[0]:
        return []
    rows = len(M)
    cols = len(M[0])
    _, pivots = row_echelon([[M[i][j] for j in range(cols)] for i in range(rows)], ring)
    return [[M[i][j] for i in range(rows)] for j in pivots]


# -- finitely generated abelian groups ---------------------------------------


@dataclass(frozen=True)
class AbelianGroup:
    """free_rank copies of Z plus cyclic factors with d1 | d2 | ... (each > 1)."""

    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError(f"invariant factors {self.torsion} violate divisibility")
        if any(d <= 1 for d in self.torsion):
            raise ValueError("torsion factors must exceed 1")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def direct_sum(self, *others: "AbelianGroup") -> "AbelianGroup":
        """Direct sum, renormalized to a divisibility chain of invariant factors."""
        groups = (self,) + others
        rank = sum(g.free_rank for g in groups)
        primary: dict[int, list] = {}
        for g in groups:
            for d in g.torsion:
                for p, e in _factorint(d).items():
                    primary.setdefault(p, []).append(e)
        chains = []
        for p, exps in primary.items():
            exps.sort(reverse=True)
            chains.append([p ** e for e in exps])
        width = max((len(c) for c in chains), default=0)
        factors = []
        for i in range(width):
            f = 1
            for c in chains:
                if i < len(c):
                    f *= c[i]
            factors.append(f)
        return AbelianGroup(rank, tuple(sorted(factors)))

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"C{d}" for d in self.torsion)
        return " x ".join(parts) if parts else "0"

    def to_json(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def cokernel_invariants(M, ambient_rank: int, ring: Ring) -> AbelianGroup:
    """The group (ambient space) / column-span(M)."""
    if ring.is_field:
        r = rank(M, ring)
        return AbelianGroup(ambient_rank - r)
    diag = [d for d in snf_diagonal(M) if d != 0]
    torsion = tuple(d for d in diag if d > 1)
    return AbelianGroup(ambient_rank - len(diag), torsion)
