"""Exact sparse linear algebra over Z, Q and F_p.

Provides Smith normal form with unimodular transforms, field kernels,
finitely presented module normalization, integer lattice echelons, and a
streaming mod-p row echelon used to certify ranks of large integer
matrices (a mod-p rank is a lower bound for the rank over Q, so reaching
a known upper bound proves the exact value).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .rings import QQ, ZZ, BaseRing, _is_prime

# ---------------------------------------------------------------------------
# sparse matrices
# ---------------------------------------------------------------------------


class SparseMatrix:
    """Immutable sparse matrix; entries maps (row, col) -> nonzero scalar."""

    __slots__ = ("rows", "cols", "ring", "entries")

    def __init__(self, rows: int, cols: int, entries: dict, ring: BaseRing = ZZ):
        self.rows = rows
        self.cols = cols
        self.ring = ring
        clean = {}
        for (r, c), v in entries.items():
            v = ring.coerce(v)
            if not ring.is_zero(v):
                if not (0 <= r < rows and 0 <= c < cols):
                    raise ValueError(f"entry ({r},{c}) out of bounds")
                clean[(r, c)] = v
        self.entries = clean

    @classmethod
    def from_rows(cls, row_list, cols: int, ring: BaseRing = ZZ) -> "SparseMatrix":
        """row_list: iterable of dicts col -> scalar."""
        entries = {}
        n = 0
        for r, row in enumerate(row_list):
            n = r + 1
            for c, v in row.items():
                entries[(r, c)] = v
        return cls(n, cols, entries, ring)

    @classmethod
    def from_dense(cls, data, ring: BaseRing = ZZ) -> "SparseMatrix":
        entries = {}
        for r, row in enumerate(data):
            for c, v in enumerate(row):
                if v:
                    entries[(r, c)] = v
        ncols = len(data[0]) if data else 0
        return cls(len(data), ncols, entries, ring)

    @classmethod
    def identity(cls, n: int, ring: BaseRing = ZZ) -> "SparseMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)}, ring)

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(
            self.cols,
            self.rows,
            {(c, r): v for (r, c), v in self.entries.items()},
            self.ring,
        )

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row = {}
        for (r, c), v in self.entries.items():
            by_row.setdefault(r, {})[c] = v
        o_rows = {}
        for (r, c), v in other.entries.items():
            o_rows.setdefault(r, {})[c] = v
        entries = {}
        for r, row in by_row.items():
            acc = {}
            for k, v in row.items():
                for c, w in o_rows.get(k, {}).items():
                    acc[c] = acc.get(c, 0) + v * w
            for c, v in acc.items():
                if v:
                    entries[(r, c)] = v
        return SparseMatrix(self.rows, other.cols, entries, self.ring)

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self.entries)}, {self.ring})"

    def to_json(self) -> dict:
        items = sorted(self.entries.items())
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[r, c, self.ring.scalar_str(v)] for (r, c), v in items],
        }

    @classmethod
    def from_json(cls, data: dict, ring: BaseRing = ZZ) -> "SparseMatrix":
        entries = {(r, c): ring.parse_scalar(s) for r, c, s in data["entries"]}
        return cls(data["rows"], data["cols"], entries, ring)


# ---------------------------------------------------------------------------
# Smith normal form over Z
# ---------------------------------------------------------------------------


def smith_normal_form(M: SparseMatrix):
    """Return (invariant factors, (U, V)) with U*M*V diagonal, U, V unimodular.

    The factor list has length rank(M); each factor is positive and divides
    the next.  Pivots are chosen to minimize fill-in, with lexicographic
    tie-breaking so results are deterministic.
    """
    if M.ring.kind != "Z":
        raise ValueError("Smith normal form requires integer entries")
    m, n = M.rows, M.cols
    A = [dict() for _ in range(m)]
    colidx = [set() for _ in range(n)]
    for (r, c), v in M.entries.items():
        A[r][c] = v
        colidx[c].add(r)
    U = [{r: 1} for r in range(m)]
    VT = [{c: 1} for c in range(n)]  # VT[j] = column j of V

    def set_entry(r, c, v):
        if v:
            A[r][c] = v
            colidx[c].add(r)
        else:
            if c in A[r]:
                del A[r][c]
                colidx[c].discard(r)

    def row_op(dst, src, q):
        # row dst -= q * row src
        for c, v in list(A[src].items()):
            set_entry(dst, c, A[dst].get(c, 0) - q * v)
        for c, v in list(U[src].items()):
            w = U[dst].get(c, 0) - q * v
            if w:
                U[dst][c] = w
            elif c in U[dst]:
                del U[dst][c]

    def col_op(dst, src, q):
        # col dst -= q * col src
        for r in list(colidx[src]):
            set_entry(r, dst, A[r].get(dst, 0) - q * A[r][src])
        for r, v in list(VT[src].items()):
            w = VT[dst].get(r, 0) - q * v
            if w:
                VT[dst][r] = w
            elif r in VT[dst]:
                del VT[dst][r]

    def swap_rows(a, b):
        if a == b:
            return
        for c in set(A[a]) | set(A[b]):
            colidx[c].discard(a)
            colidx[c].discard(b)
        A[a], A[b] = A[b], A[a]
        U[a], U[b] = U[b], U[a]
        for c in A[a]:
            colidx[c].add(a)
        for c in A[b]:
            colidx[c].add(b)

    def swap_cols(a, b):
        if a == b:
            return
        for r in colidx[a] | colidx[b]:
            va, vb = A[r].get(a), A[r].get(b)
            for c, v in ((a, vb), (b, va)):
                if v is None:
                    A[r].pop(c, None)
                else:
                    A[r][c] = v
        colidx[a], colidx[b] = colidx[b], colidx[a]
        VT[a], VT[b] = VT[b], VT[a]

    t = 0
    limit = min(m, n)
    while t < limit:
        # pivot choice: min fill-in proxy, then |value|, then lexicographic
        best = None
        for c in range(t, n):
            live = [r for r in colidx[c] if r >= t]
            if not live:
                continue
            cn = len(live)
            for r in live:
                rn = sum(1 for cc in A[r] if cc >= t)
                key = ((rn - 1) * (cn - 1), abs(A[r][c]), r, c)
                if best is None or key < best[0]:
                    best = (key, r, c)
        if best is None:
            break
        _, pr, pc = best
        swap_rows(t, pr)
        swap_cols(t, pc)
        while True:
            # clear column t by euclidean row steps
            moved = False
            rows_here = [r for r in colidx[t] if r != t]
            for r in rows_here:
                a = A[r].get(t)
                if not a:
                    continue
                p = A[t][t]
                q = a // p
                if q:
                    row_op(r, t, q)
                if A[r].get(t):
                    swap_rows(r, t)
                    moved = True
            if moved:
                continue
            cols_here = [c for c in list(A[t]) if c != t]
            for c in cols_here:
                a = A[t].get(c)
                if not a:
                    continue
                p = A[t][t]
                q = a // p
                if q:
                    col_op(c, t, q)
                if A[t].get(c):
                    swap_cols(c, t)
                    moved = True
            if moved:
                continue
            # row & column clean; enforce divisibility on the rest
            d = A[t][t]
            bad = None
            for c in range(t + 1, n):
                for r in colidx[c]:
                    if r > t and A[r][c] % d != 0:
                        bad = r
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_op(t, bad, -1)  # add offending row into pivot row
        if A[t][t] < 0:
            row_op(t, t, 2)  # negate row t: r_t -= 2*r_t
        t += 1

    factors = []
    for i in range(limit):
        v = A[i].get(i, 0)
        if v:
            factors.append(v)
    for a, b in zip(factors, factors[1:]):
        if b % a != 0:
            raise AssertionError("invariant factor chain broken")
    Umat = SparseMatrix.from_rows(U, m, ZZ) if m else SparseMatrix(0, 0, {})
    Vmat = SparseMatrix(
        n, n, {(r, j): v for j, col in enumerate(VT) for r, v in col.items()}, ZZ
    )
    return factors, (Umat, Vmat)


def integer_kernel(M: SparseMatrix):
    """Basis (list of dict-vectors) of the pure lattice {x in Z^n : Mx = 0}."""
    factors, (_, V) = smith_normal_form(M)
    r = len(factors)
    cols = [dict() for _ in range(M.cols)]
    for (i, j), v in V.entries.items():
        cols[j][i] = v
    return cols[r:]


def solve_integer(M: SparseMatrix, b: dict):
    """One integer solution x of Mx = b, or None."""
    factors, (U, V) = smith_normal_form(M)
    r = len(factors)
    Urows = U.row_dicts()
    ub = []
    for i in range(M.rows):
        ub.append(sum(v * b.get(c, 0) for c, v in Urows[i].items()))
    y = {}
    for i in range(M.rows):
        if i < r:
            if ub[i] % factors[i] != 0:
                return None
            y[i] = ub[i] // factors[i]
        elif ub[i] != 0:
            return None
    x = {}
    Vrows = V.row_dicts()
    for i in range(M.cols):
        s = sum(v * y.get(j, 0) for j, v in Vrows[i].items())
        if s:
            x[i] = s
    return x


# ---------------------------------------------------------------------------
# field echelon / kernels
# ---------------------------------------------------------------------------


def _field_rref(rows, ncols, ring):
    """Reduced row echelon of dict-rows over a field; returns (pivots, rows).

    pivots: ordered list of pivot columns; rows: matching reduced dict-rows
    with pivot entry 1.  Deterministic: scans columns left to right.
    """
    work = [dict(r) for r in rows]
    ech = {}  # pivot col -> row (pivot entry 1, no other pivot columns)
    for row in work:
        row = {c: v for c, v in row.items() if not ring.is_zero(v)}
        while row:
            lead = min(row)
            if lead in ech:
                coef = row[lead]
                for c, v in ech[lead].items():
                    w = ring.sub(row.get(c, ring.coerce(0)), ring.mul(coef, v))
                    if ring.is_zero(w):
                        row.pop(c, None)
                    else:
                        row[c] = w
            else:
                inv = ring.inv(row[lead])
                row = {c: ring.mul(inv, v) for c, v in row.items()}
                # clear every remaining pivot column from the new row (its
                # lead is free, but its tail may hit existing pivots)
                for pc in sorted(set(row) & set(ech)):
                    coef = row.get(pc)
                    if coef is None or ring.is_zero(coef):
                        continue
                    for c, v in ech[pc].items():
                        w = ring.sub(row.get(c, ring.coerce(0)), ring.mul(coef, v))
                        if ring.is_zero(w):
                            row.pop(c, None)
                        else:
                            row[c] = w
                # back-substitute into the existing rows
                for pc, prow in ech.items():
                    if lead in prow:
                        coef = prow[lead]
                        for c, v in row.items():
                            w = ring.sub(prow.get(c, ring.coerce(0)), ring.mul(coef, v))
                            if ring.is_zero(w):
                                prow.pop(c, None)
                            else:
                                prow[c] = w
                ech[lead] = row
                break
    pivots = sorted(ech)
    return pivots, [ech[c] for c in pivots]


def kernel_basis(M: SparseMatrix):
    """Basis of the null space of M over a field, as dict-vectors.

    Deterministic: reduced echelon pivots with the natural column order;
    each basis vector has entry 1 at its free column.
    """
    ring = M.ring
    if not ring.is_field:
        raise ValueError("kernel_basis requires field coefficients")
    pivots, rows = _field_rref(M.row_dicts(), M.cols, ring)
    pivset = set(pivots)
    basis = []
    for free in range(M.cols):
        if free in pivset:
            continue
        vec = {free: ring.coerce(1)}
        for pc, prow in zip(pivots, rows):
            v = prow.get(free)
            if v is not None and not ring.is_zero(v):
                vec[pc] = ring.neg(v)
        basis.append(vec)
    return basis


def field_rank(M: SparseMatrix) -> int:
    pivots, _ = _field_rref(M.row_dicts(), M.cols, M.ring)
    return len(pivots)


# ---------------------------------------------------------------------------
# finitely presented modules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModuleShape:
    """Normal form of a finitely presented module: free rank + torsion."""

    free_rank: int
    torsion: tuple = ()

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append(f"free^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


class FinitelyPresentedModule:
    """Generators plus a relation matrix (one row per relation)."""

    def __init__(self, ring: BaseRing, generators: int, relations: SparseMatrix):
        if relations.cols != generators:
            raise ValueError("relation matrix width must equal generator count")
        self.ring = ring
        self.generators = generators
        self.relations = relations

    def invariants(self) -> ModuleShape:
        return module_invariants(self)


def module_invariants(m: FinitelyPresentedModule) -> ModuleShape:
    """Normal form: over Z invariant factors (1s dropped) + free rank;
    over a field just the dimension."""
    if m.ring.kind == "Z":
        factors, _ = smith_normal_form(m.relations)
        torsion = tuple(d for d in factors if d != 1)
        return ModuleShape(m.generators - len(factors), torsion)
    rank = field_rank(
        SparseMatrix(
            m.relations.rows, m.relations.cols, m.relations.entries, m.ring
        )
    )
    return ModuleShape(m.generators - rank, ())


# ---------------------------------------------------------------------------
# exact integer echelon (rank over Q, spans, coordinate solves)
# ---------------------------------------------------------------------------


def _normalize_int_row(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    lead = min(row)
    if row[lead] < 0:
        row = {c: -v for c, v in row.items()}
    return row


class IntEchelon:
    """Incremental echelon of integer rows; rank is the rank over Q.

    Rows are kept primitive (gcd 1, positive leading entry).  With
    track=True each echelon row remembers an exact rational combination
    of the inserted rows, enabling coordinate solves.
    """

    def __init__(self, track: bool = False):
        self.pivots = {}  # lead col -> (row dict, combo dict | None)
        self.track = track
        self.count = 0  # rows inserted so far (for combo indexing)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, row: dict) -> bool:
        """Insert a row; returns True if it increased the rank."""
        idx = self.count
        self.count += 1
        row = {c: int(v) for c, v in row.items() if v}
        combo = {idx: Fraction(1)} if self.track else None
        while row:
            lead = min(row)
            hit = self.pivots.get(lead)
            if hit is None:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
                if row[lead] < 0:
                    g = -g
                if g != 1:
                    row = {c: v // g for c, v in row.items()}
                    if self.track:
                        combo = {k: v / g for k, v in combo.items()}
                self.pivots[lead] = (row, combo)
                return True
            prow, pcombo = hit
            a, b = prow[lead], row[lead]
            # row := a*row - b*prow  (kills the lead, stays integral)
            new = {}
            for c in set(row) | set(prow):
                v = a * row.get(c, 0) - b * prow.get(c, 0)
                if v:
                    new[c] = v
            if self.track:
                combo = {k: v * a for k, v in combo.items()}
                for k, v in pcombo.items():
                    w = combo.get(k, Fraction(0)) - b * v
                    if w:
                        combo[k] = w
                    else:
                        combo.pop(k, None)
            if new:
                g = 0
                for v in new.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
                if g > 1:
                    new = {c: v // g for c, v in new.items()}
                    if self.track:
                        combo = {k: v / g for k, v in combo.items()}
            row = new
        return False

    def reduce(self, vec: dict, ring=QQ):
        """Return (residual, coords) reducing vec against the echelon.

        coords maps inserted-row index -> rational coefficient such that
        vec = sum(coords * rows) + residual, residual having no support on
        pivot columns.  Requires track=True for meaningful coords.
        """
        residual = {c: Fraction(v) for c, v in vec.items() if v}
        coords = {}
        while residual:
            lead = min(residual)
            hit = self.pivots.get(lead)
            if hit is None:
                break
            prow, pcombo = hit
            coef = residual[lead] / prow[lead]
            for c, v in prow.items():
                w = residual.get(c, Fraction(0)) - coef * v
                if w:
                    residual[c] = w
                else:
                    residual.pop(c, None)
            if self.track and pcombo:
                for k, v in pcombo.items():
                    w = coords.get(k, Fraction(0)) + coef * v
                    if w:
                        coords[k] = w
                    else:
                        coords.pop(k, None)
        return residual, coords

    def contains(self, vec: dict) -> bool:
        residual, _ = self.reduce(vec)
        return not residual


class FieldEchelon:
    """Incremental row echelon over a field, with optional combo tracking."""

    def __init__(self, ring, track: bool = False):
        self.ring = ring
        self.track = track
        self.pivots = {}  # lead col -> (row dict with lead 1, combo | None)
        self.count = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, row: dict) -> bool:
        ring = self.ring
        idx = self.count
        self.count += 1
        row = {c: ring.coerce(v) for c, v in row.items()}
        row = {c: v for c, v in row.items() if not ring.is_zero(v)}
        combo = {idx: ring.coerce(1)} if self.track else None
        while row:
            lead = min(row)
            hit = self.pivots.get(lead)
            if hit is None:
                inv = ring.inv(row[lead])
                row = {c: ring.mul(inv, v) for c, v in row.items()}
                if self.track:
                    combo = {k: ring.mul(inv, v) for k, v in combo.items()}
                self.pivots[lead] = (row, combo)
                return True
            prow, pcombo = hit
            coef = row[lead]
            for c, v in prow.items():
                w = ring.sub(row.get(c, ring.coerce(0)), ring.mul(coef, v))
                if ring.is_zero(w):
                    row.pop(c, None)
                else:
                    row[c] = w
            if self.track:
                for k, v in pcombo.items():
                    w = ring.sub(combo.get(k, ring.coerce(0)), ring.mul(coef, v))
                    if ring.is_zero(w):
                        combo.pop(k, None)
                    else:
                        combo[k] = w
        return False

    def reduce(self, vec: dict):
        ring = self.ring
        residual = {c: ring.coerce(v) for c, v in vec.items()}
        residual = {c: v for c, v in residual.items() if not ring.is_zero(v)}
        coords = {}
        while residual:
            lead = min(residual)
            hit = self.pivots.get(lead)
            if hit is None:
                break
            prow, pcombo = hit
            coef = residual[lead]
            for c, v in prow.items():
                w = ring.sub(residual.get(c, ring.coerce(0)), ring.mul(coef, v))
                if ring.is_zero(w):
                    residual.pop(c, None)
                else:
                    residual[c] = w
            if self.track and pcombo:
                for k, v in pcombo.items():
                    w = ring.add(coords.get(k, ring.coerce(0)), ring.mul(coef, v))
                    if ring.is_zero(w):
                        coords.pop(k, None)
                    else:
                        coords[k] = w
        return residual, coords


class LatticeEchelon:
    """Incremental staircase basis of the lattice spanned by integer rows."""

    def __init__(self):
        self.pivots = {}  # lead col -> row dict

    @property
    def rank(self):
        return len(self.pivots)

    def basis_rows(self):
        return [self.pivots[c] for c in sorted(self.pivots)]

    def add(self, row: dict) -> bool:
        """Insert a row into the lattice; True if the lattice grew."""
        row = {c: int(v) for c, v in row.items() if v}
        grew = False
        while row:
            lead = min(row)
            prow = self.pivots.get(lead)
            if prow is None:
                if row[lead] < 0:
                    row = {c: -v for c, v in row.items()}
                self.pivots[lead] = row
                return True
            a, b = prow[lead], row[lead]
            if b % a == 0:
                q = b // a
                new = {}
                for c in set(row) | set(prow):
                    v = row.get(c, 0) - q * prow.get(c, 0)
                    if v:
                        new[c] = v
                row = new
            else:
                g, x, y = _xgcd(a, b)
                # new pivot = x*prow + y*row has lead entry g
                newp = {}
                for c in set(row) | set(prow):
                    v = x * prow.get(c, 0) + y * row.get(c, 0)
                    if v:
                        newp[c] = v
                # replace row by (a/g)*row - (b/g)*prow (kills lead)
                qa, qb = a // g, b // g
                new = {}
                for c in set(row) | set(prow):
                    v = qa * row.get(c, 0) - qb * prow.get(c, 0)
                    if v:
                        new[c] = v
                self.pivots[lead] = newp
                grew = True
                row = new
        return grew

    def contains(self, vec: dict) -> bool:
        vec = {c: int(v) for c, v in vec.items() if v}
        while vec:
            lead = min(vec)
            prow = self.pivots.get(lead)
            if prow is None or vec[lead] % prow[lead] != 0:
                return False
            q = vec[lead] // prow[lead]
            new = {}
            for c in set(vec) | set(prow):
                v = vec.get(c, 0) - q * prow.get(c, 0)
                if v:
                    new[c] = v
            vec = new
        return True

    def equals(self, other: "LatticeEchelon") -> bool:
        return all(other.contains(r) for r in self.basis_rows()) and all(
            self.contains(r) for r in other.basis_rows()
        )


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


# ---------------------------------------------------------------------------
# streaming mod-p echelon (rank certificates, F_p linear algebra)
# ---------------------------------------------------------------------------

CERT_PRIMES = (999983, 999979, 999961)
for _q in CERT_PRIMES:
    assert _is_prime(_q)

_FLOAT_SAFE = 1 << 20  # p below this: float64 matmul stays exact here


def _matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Exact (A @ B) mod p for int64 matrices with entries in [0, p)."""
    if A.size == 0 or B.size == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    if p < _FLOAT_SAFE and A.shape[1] * (p - 1) * (p - 1) < (1 << 53):
        C = np.rint(A.astype(np.float64) @ B.astype(np.float64)).astype(np.int64)
        return np.mod(C, p)
    # chunked int64 accumulation; keeps partial sums below 2^62
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    step = max(1, (1 << 62) // max(1, (p - 1) * (p - 1)) - 1)
    for k0 in range(0, A.shape[1], step):
        out = (out + A[:, k0 : k0 + step] @ B[k0 : k0 + step]) % p
    return out


class ModularEchelon:
    """Streaming reduced row echelon over F_p on dense int64 rows.

    Over F_p this is exact linear algebra; over Z or Q it yields a lower
    bound on the rank (reduction mod p cannot increase rank), which
    certifies the exact rank whenever a structural upper bound is hit.
    """

    def __init__(self, ncols: int, p: int = CERT_PRIMES[0]):
        self.ncols = ncols
        self.p = p
        self.rows = np.zeros((0, ncols), dtype=np.int64)
        self.piv_cols: list = []

    @property
    def rank(self) -> int:
        return len(self.piv_cols)

    def add_batch(self, batch: np.ndarray) -> int:
        """Reduce a batch of rows and absorb new pivots; returns rank gain."""
        p = self.p
        batch = np.mod(np.atleast_2d(batch).astype(np.int64), p)
        if batch.size == 0:
            return 0
        if self.piv_cols:
            coef = batch[:, self.piv_cols]
            batch = np.mod(batch - _matmul_mod(coef, self.rows, p), p)
        new_rows = []
        new_cols = []
        for i in range(batch.shape[0]):
            row = batch[i]
            for r, c in zip(new_rows, new_cols):
                f = row[c]
                if f:
                    row = np.mod(row - f * r, p)
            nz = np.nonzero(row)[0]
            if nz.size == 0:
                continue
            lead = int(nz[0])
            row = np.mod(row * pow(int(row[lead]), p - 2, p), p)
            for k in range(len(new_rows)):
                f = new_rows[k][lead]
                if f:
                    new_rows[k] = np.mod(new_rows[k] - f * row, p)
            new_rows.append(row)
            new_cols.append(lead)
        if not new_rows:
            return 0
        N = np.stack(new_rows)
        if self.piv_cols:
            coef = self.rows[:, new_cols]
            self.rows = np.mod(self.rows - _matmul_mod(coef, N, p), p)
        self.rows = np.vstack([self.rows, N]) if self.rows.size else N
        self.piv_cols.extend(new_cols)
        order = np.argsort(self.piv_cols, kind="stable")
        self.piv_cols = [self.piv_cols[i] for i in order]
        self.rows = self.rows[order]
        return len(new_cols)

    def kernel(self) -> list:
        """Kernel basis (valid when p is the base field characteristic)."""
        pivset = set(self.piv_cols)
        basis = []
        for free in range(self.ncols):
            if free in pivset:
                continue
            vec = {free: 1}
            for pc, row in zip(self.piv_cols, self.rows):
                v = int(row[free])
                if v:
                    vec[pc] = (-v) % self.p
            basis.append(vec)
        return basis


def rank_certified(rows_factory, ncols: int, upper_bound: int, batch: int = 1024):
    """Exact rank over Q of integer rows known to have rank <= upper_bound.

    Streams rows through a mod-p echelon, stopping as soon as the bound is
    reached (then rank_p = rank_Q = bound exactly).  Falls back to a second
    prime and finally to exact integer elimination when the bound is not
    attained, so the result is exact in every case.
    """
    def _hit(rank):
        if rank > upper_bound:
            # rank mod p never exceeds the rank over Q, so overshooting the
            # structural bound means the caller's bound (or the rows) are bad
            raise AssertionError("rank exceeds its structural upper bound")
        return rank == upper_bound

    for p in CERT_PRIMES[:2]:
        ech = ModularEchelon(ncols, p)
        buf = []
        for row in rows_factory():
            buf.append(row)
            if len(buf) >= batch:
                ech.add_batch(_densify(buf, ncols, p))
                buf = []
                if _hit(ech.rank):
                    return upper_bound
        if buf:
            ech.add_batch(_densify(buf, ncols, p))
        if _hit(ech.rank):
            return upper_bound
    exact = IntEchelon()
    for row in rows_factory():
        exact.add(row)
        if _hit(exact.rank):
            return upper_bound
    return exact.rank


def _densify(sparse_rows, ncols: int, p: int) -> np.ndarray:
    out = np.zeros((len(sparse_rows), ncols), dtype=np.int64)
    for i, row in enumerate(sparse_rows):
        for c, v in row.items():
            out[i, c] = v % p
    return out


# ---------------------------------------------------------------------------
# derived helpers
# ---------------------------------------------------------------------------


def subquotient_invariants(ring, sub_basis, rel_rows, ncols) -> ModuleShape:
    """Normal form of span(sub_basis)/span(rel_rows); relations must lie in
    the span (over Z: in the lattice generated by sub_basis, which holds for
    pure-kernel bases)."""
    k = len(sub_basis)
    if k == 0:
        if any(row for row in rel_rows):
            raise ValueError("relation outside submodule span")
        return ModuleShape(0, ())
    if ring.kind == "Z":
        cols = sorted({c for row in sub_basis for c in row})
        colpos = {c: i for i, c in enumerate(cols)}
        K = SparseMatrix(
            len(cols),
            k,
            {
                (colpos[c], j): sub_basis[j][c]
                for j in range(k)
                for c in sub_basis[j]
            },
            ZZ,
        )
        rel_coords = []
        for row in rel_rows:
            if any(v and c not in colpos for c, v in row.items()):
                raise ValueError("relation outside submodule span")
            b = {colpos[c]: v for c, v in row.items() if v}
            x = solve_integer(K, b)
            if x is None:
                raise ValueError("relation not in submodule lattice")
            rel_coords.append(x)
        rels = SparseMatrix.from_rows(rel_coords, k, ZZ)
        if rels.rows == 0:
            rels = SparseMatrix(0, k, {}, ZZ)
        return module_invariants(FinitelyPresentedModule(ZZ, k, rels))
    # field: dimension of sub minus rank of relations inside it
    sub_rank = len(_field_rref([dict(r) for r in sub_basis], ncols, ring)[0])
    both = _field_rref(
        [dict(r) for r in sub_basis] + [dict(r) for r in rel_rows], ncols, ring
    )
    if len(both[0]) != sub_rank:
        raise ValueError("relation outside submodule span")
    rel_rank = len(_field_rref([dict(r) for r in rel_rows], ncols, ring)[0])
    return ModuleShape(sub_rank - rel_rank, ())


def preimage_lattice(M: SparseMatrix, target_rows):
    """Basis of {x in Z^n : Mx lies in the lattice spanned by target_rows}."""
    n = M.cols
    k = len(target_rows)
    entries = dict(M.entries)
    for j, row in enumerate(target_rows):
        for r, v in row.items():
            if v:
                entries[(r, n + j)] = -v
    big = SparseMatrix(M.rows, n + k, entries, ZZ)
    ker = integer_kernel(big)
    lat = LatticeEchelon()
    for vec in ker:
        lat.add({c: v for c, v in vec.items() if c < n})
    return lat.basis_rows()
