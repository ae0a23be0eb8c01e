"""Finite-rank coordinate algebras as structure-constant data.

Full matrix algebras, the split octonions in the Zorn vector-matrix model,
commutators and associators, multiplication operators, standard derivations
and trialities.  Laws (associative / alternative / commutative) are checked
eagerly at construction, including the linearizations that make the checks
valid in every scalar extension, and cached as flags.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from .linalg import IntEchelon, _field_rref
from .rings import BaseRing


class StructureAlgebra:
    """Algebra given by a multiplication tensor over a BaseRing."""

    def __init__(
        self,
        ring: BaseRing,
        labels,
        mult,
        unit=None,
        involution=None,
        check=True,
    ):
        self.ring = ring
        self.labels = list(labels)
        self.dim = len(self.labels)
        # mult: dict (i, j) -> dict k -> scalar
        self.mult = {
            key: {k: ring.coerce(v) for k, v in vec.items() if not ring.is_zero(ring.coerce(v))}
            for key, vec in mult.items()
        }
        self.unit = None if unit is None else self._vec(unit)
        self.involution = involution  # dim x dim matrix (list of rows) or None
        self.flags = {}
        if check:
            self._verify()

    # -- element arithmetic on dict-vectors ------------------------------
    def _vec(self, x) -> dict:
        if isinstance(x, dict):
            return {k: self.ring.coerce(v) for k, v in x.items() if not self.ring.is_zero(self.ring.coerce(v))}
        return {i: self.ring.coerce(v) for i, v in enumerate(x) if not self.ring.is_zero(self.ring.coerce(v))}

    def mul(self, x: dict, y: dict) -> dict:
        ring = self.ring
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                vec = self.mult.get((i, j))
                if not vec:
                    continue
                ab = ring.mul(a, b)
                for k, c in vec.items():
                    w = ring.add(out.get(k, 0), ring.mul(ab, c))
                    if ring.is_zero(w):
                        out.pop(k, None)
                    else:
                        out[k] = w
        return out

    def add(self, x: dict, y: dict) -> dict:
        ring = self.ring
        out = dict(x)
        for k, v in y.items():
            w = ring.add(out.get(k, 0), v)
            if ring.is_zero(w):
                out.pop(k, None)
            else:
                out[k] = w
        return out

    def sub(self, x: dict, y: dict) -> dict:
        return self.add(x, {k: self.ring.neg(v) for k, v in y.items()})

    def smul(self, c, x: dict) -> dict:
        ring = self.ring
        c = ring.coerce(c)
        if ring.is_zero(c):
            return {}
        return {k: ring.mul(c, v) for k, v in x.items()}

    def conj(self, x: dict) -> dict:
        if self.involution is None:
            raise ValueError("algebra has no involution")
        ring = self.ring
        out = {}
        for j, v in x.items():
            for i in range(self.dim):
                c = self.involution[i][j]
                if not ring.is_zero(c):
                    w = ring.add(out.get(i, 0), ring.mul(c, v))
                    if ring.is_zero(w):
                        out.pop(i, None)
                    else:
                        out[i] = w
        return out

    def basis_vec(self, i: int) -> dict:
        return {i: self.ring.coerce(1)}

    def commutator(self, x: dict, y: dict) -> dict:
        return self.sub(self.mul(x, y), self.mul(y, x))

    def associator(self, x: dict, y: dict, z: dict) -> dict:
        return self.sub(self.mul(self.mul(x, y), z), self.mul(x, self.mul(y, z)))

    # -- multiplication operators ----------------------------------------
    def L(self, a: dict):
        """Left multiplication by a, as a dense matrix (rows = output)."""
        ring = self.ring
        M = [[ring.coerce(0)] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            out = self.mul(a, self.basis_vec(j))
            for i, v in out.items():
                M[i][j] = v
        return M

    def R(self, a: dict):
        ring = self.ring
        M = [[ring.coerce(0)] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            out = self.mul(self.basis_vec(j), a)
            for i, v in out.items():
                M[i][j] = v
        return M

    # -- norm and trace (involution algebras) ------------------------------
    def trace_scalar(self, x: dict):
        """t(x) with x + conj(x) = t(x) * unit; errors if not a unit multiple."""
        s = self.add(x, self.conj(x))
        return self._unit_multiple(s)

    def norm_scalar(self, x: dict):
        """N(x) with x * conj(x) = N(x) * unit."""
        return self._unit_multiple(self.mul(x, self.conj(x)))

    def norm_bilinear(self, x: dict, y: dict):
        """N(x, y) with x*conj(y) + y*conj(x) = N(x,y) * unit."""
        s = self.add(self.mul(x, self.conj(y)), self.mul(y, self.conj(x)))
        return self._unit_multiple(s)

    def _unit_multiple(self, s: dict):
        if self.unit is None:
            raise ValueError("algebra has no unit")
        ring = self.ring
        if not s:
            return ring.coerce(0)
        i, ui = next(iter(self.unit.items()))
        c = ring.div(s.get(i, ring.coerce(0)), ui)
        if self.smul(c, self.unit) != s:
            raise ValueError("element is not a multiple of the unit")
        return c

    # -- verification -------------------------------------------------------
    def _verify(self):
        ring = self.ring
        dim = self.dim
        basis = [self.basis_vec(i) for i in range(dim)]
        if self.unit is not None:
            for b in basis:
                if self.mul(self.unit, b) != b or self.mul(b, self.unit) != b:
                    raise ValueError("declared unit is not a two-sided unit")
        if self.involution is not None:
            for i in range(dim):
                twice = self.conj(self.conj(basis[i]))
                if twice != basis[i]:
                    raise ValueError("involution is not of order 2")
            for i, j in product(range(dim), repeat=2):
                lhs = self.conj(self.mul(basis[i], basis[j]))
                rhs = self.mul(self.conj(basis[j]), self.conj(basis[i]))
                if lhs != rhs:
                    raise ValueError("involution is not an anti-automorphism")
        assoc = all(
            not self.associator(basis[i], basis[j], basis[k])
            for i, j, k in product(range(dim), repeat=3)
        )
        comm = all(
            self.mul(basis[i], basis[j]) == self.mul(basis[j], basis[i])
            for i, j in product(range(dim), repeat=2)
        )
        if assoc:
            alt = True
        else:
            alt = self._check_alternative(basis)
        self.flags = {
            "associative": assoc,
            "alternative": alt,
            "commutative": comm,
            "unital": self.unit is not None,
        }

    def _check_alternative(self, basis):
        # (x,x,y) = 0 and (y,x,x) = 0 together with their linearizations,
        # which is alternativity in every scalar extension.
        dim = self.dim
        for i, j in product(range(dim), repeat=2):
            if self.associator(basis[i], basis[i], basis[j]):
                return False
            if self.associator(basis[j], basis[i], basis[i]):
                return False
        for i in range(dim):
            for k in range(i + 1, dim):
                for j in range(dim):
                    lin = self.add(
                        self.associator(basis[i], basis[k], basis[j]),
                        self.associator(basis[k], basis[i], basis[j]),
                    )
                    if lin:
                        return False
                    lin = self.add(
                        self.associator(basis[j], basis[i], basis[k]),
                        self.associator(basis[j], basis[k], basis[i]),
                    )
                    if lin:
                        return False
        return True

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        ring = self.ring
        table = []
        for (i, j), vec in sorted(self.mult.items()):
            table.append([i, j, [[k, ring.scalar_str(v)] for k, v in sorted(vec.items())]])
        data = {
            "dim": self.dim,
            "labels": self.labels,
            "unit": None
            if self.unit is None
            else [[k, ring.scalar_str(v)] for k, v in sorted(self.unit.items())],
            "table": table,
        }
        if self.involution is not None:
            data["involution"] = [
                [ring.scalar_str(v) for v in row] for row in self.involution
            ]
        return data

    @classmethod
    def from_json(cls, data: dict, ring: BaseRing) -> "StructureAlgebra":
        mult = {}
        for i, j, terms in data["table"]:
            mult[(i, j)] = {k: ring.parse_scalar(s) for k, s in terms}
        unit = None
        if data.get("unit") is not None:
            unit = {k: ring.parse_scalar(s) for k, s in data["unit"]}
        inv = None
        if data.get("involution") is not None:
            inv = [[ring.parse_scalar(s) for s in row] for row in data["involution"]]
        return cls(ring, data["labels"], mult, unit=unit, involution=inv)

    def __repr__(self):
        tags = ",".join(k for k, v in self.flags.items() if v)
        return f"StructureAlgebra(dim={self.dim}, {self.ring}, [{tags}])"


@dataclass
class Element:
    """Algebra element; arithmetic checks that operands share the algebra."""

    algebra: StructureAlgebra
    coords: dict

    def _match(self, other: "Element"):
        if self.algebra is not other.algebra:
            raise ValueError("elements live in different algebras")

    def __add__(self, other):
        self._match(other)
        return Element(self.algebra, self.algebra.add(self.coords, other.coords))

    def __sub__(self, other):
        self._match(other)
        return Element(self.algebra, self.algebra.sub(self.coords, other.coords))

    def __mul__(self, other):
        if isinstance(other, Element):
            self._match(other)
            return Element(self.algebra, self.algebra.mul(self.coords, other.coords))
        return Element(self.algebra, self.algebra.smul(other, self.coords))

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.algebra is other.algebra
            and self.coords == other.coords
        )


def commutator(a: Element, b: Element) -> Element:
    a._match(b)
    return Element(a.algebra, a.algebra.commutator(a.coords, b.coords))


def associator(a: Element, b: Element, c: Element) -> Element:
    a._match(b)
    a._match(c)
    return Element(a.algebra, a.algebra.associator(a.coords, b.coords, c.coords))


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def matrix_algebra(n: int, ring: BaseRing, involution: str | None = None) -> StructureAlgebra:
    """Full n x n matrix algebra with E_ij basis; E_ij E_kl = delta_jk E_il.

    involution may be "transpose" (or "identity" when n == 1).
    """
    if n < 1:
        raise ValueError("matrix algebra needs n >= 1")
    labels = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    idx = {(i, j): i * n + j for i in range(n) for j in range(n)}
    mult = {}
    for (i, j), a in idx.items():
        for (k, l), b in idx.items():
            if j == k:
                mult[(a, b)] = {idx[(i, l)]: 1}
    unit = {idx[(i, i)]: 1 for i in range(n)}
    inv = None
    if involution == "transpose" or (involution == "identity" and n == 1):
        inv = [[0] * (n * n) for _ in range(n * n)]
        for (i, j), a in idx.items():
            inv[idx[(j, i)]][a] = 1
    elif involution is not None:
        raise ValueError(f"unknown involution {involution!r}")
    return StructureAlgebra(ring, labels, mult, unit=unit, involution=inv)


def tensor_matrix_algebra(n: int, D: StructureAlgebra) -> StructureAlgebra:
    """Matrices of size n with entries in D: basis E_ij (x) d."""
    ring = D.ring
    dd = D.dim
    labels = [
        f"E{i + 1}{j + 1}*{D.labels[t]}"
        for i in range(n)
        for j in range(n)
        for t in range(dd)
    ]

    def idx(i, j, t):
        return (i * n + j) * dd + t

    mult = {}
    for i, j, t in product(range(n), range(n), range(dd)):
        for k, l, s in product(range(n), range(n), range(dd)):
            if j != k:
                continue
            vec = D.mult.get((t, s))
            if vec:
                mult[(idx(i, j, t), idx(k, l, s))] = {
                    idx(i, l, u): c for u, c in vec.items()
                }
    unit = None
    if D.unit is not None:
        unit = {}
        for i in range(n):
            for t, c in D.unit.items():
                unit[idx(i, i, t)] = c
    return StructureAlgebra(ring, labels, mult, unit=unit)


def split_octonions(ring: BaseRing) -> StructureAlgebra:
    """Split octonions as Zorn vector matrices over ring^3.

    Basis x1 = e11, x^1 = e22 and hyperbolic triples x_{1+i}, x^{1+i} with
    N(x_i, x^j) = delta_ij; standard involution zbar = t(z) 1 - z.
    """
    # coordinates: (alpha1, u in M; x in M*, alpha2) with M = ring^3
    # basis order: x1, x2, x3, x4, x^1, x^2, x^3, x^4
    labels = ["x1", "x2", "x3", "x4", "y1", "y2", "y3", "y4"]

    def make(a1, u, x, a2):
        vec = {}
        if a1:
            vec[0] = a1
        for i, c in enumerate(u):
            if c:
                vec[1 + i] = c
        if a2:
            vec[4] = a2
        for i, c in enumerate(x):
            if c:
                vec[5 + i] = c
        return vec

    def split(vec):
        a1 = vec.get(0, 0)
        a2 = vec.get(4, 0)
        u = [vec.get(1 + i, 0) for i in range(3)]
        x = [vec.get(5 + i, 0) for i in range(3)]
        return a1, u, x, a2

    def cross(p, q):
        return [
            p[1] * q[2] - p[2] * q[1],
            p[2] * q[0] - p[0] * q[2],
            p[0] * q[1] - p[1] * q[0],
        ]

    def pairdot(p, q):
        return sum(a * b for a, b in zip(p, q))

    basis_vecs = []
    basis_vecs.append(make(1, [0, 0, 0], [0, 0, 0], 0))  # x1 = e11
    for i in range(3):
        u = [0, 0, 0]
        u[i] = 1
        basis_vecs.append(make(0, u, [0, 0, 0], 0))  # x_{1+i}
    basis_vecs.append(make(0, [0, 0, 0], [0, 0, 0], 1))  # y1 = e22
    for i in range(3):
        x = [0, 0, 0]
        x[i] = 1
        basis_vecs.append(make(0, [0, 0, 0], x, 0))  # y_{1+i}

    def zorn_mul(v, w):
        a1, u, x, a2 = split(v)
        b1, vv, y, b2 = split(w)
        c1 = a1 * b1 - pairdot(u, y)
        cu = [a1 * vv[i] + b2 * u[i] + c for i, c in enumerate(cross(x, y))]
        cx = [b1 * x[i] + a2 * y[i] + c for i, c in enumerate(cross(u, vv))]
        c2 = a2 * b2 - pairdot(x, vv)
        return make(c1, cu, cx, c2)

    mult = {}
    for a in range(8):
        for b in range(8):
            prod = zorn_mul(basis_vecs[a], basis_vecs[b])
            out = {k: v for k, v in prod.items() if v}
            mult[(a, b)] = out
    unit = {0: 1, 4: 1}
    inv = [[0] * 8 for _ in range(8)]
    # zbar = (a1 + a2) * 1 - z
    for j in range(8):
        tcoef = 1 if j in (0, 4) else 0
        for i in (0, 4):
            inv[i][j] = tcoef
        inv[j][j] += -1
    alg = StructureAlgebra(ring, labels, mult, unit=unit, involution=inv)
    if not alg.flags["alternative"]:
        raise AssertionError("Zorn model failed alternativity")
    return alg


# ---------------------------------------------------------------------------
# operators on an algebra
# ---------------------------------------------------------------------------


def mat_zero(n, ring):
    return [[ring.coerce(0)] * n for _ in range(n)]


def mat_add(A, B, ring, sign=1):
    return [
        [ring.add(a, ring.mul(sign, b)) for a, b in zip(ra, rb)]
        for ra, rb in zip(A, B)
    ]


def mat_mul(A, B, ring):
    n = len(A)
    m = len(B[0])
    k = len(B)
    out = [[ring.coerce(0)] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if ring.is_zero(a):
                continue
            Bt = B[t]
            row = out[i]
            for j in range(m):
                b = Bt[j]
                if not ring.is_zero(b):
                    row[j] = ring.add(row[j], ring.mul(a, b))
    return out


def mat_bracket(A, B, ring):
    return mat_add(mat_mul(A, B, ring), mat_mul(B, A, ring), ring, sign=-1)


def mat_apply(A, x: dict, ring) -> dict:
    out = {}
    for j, v in x.items():
        for i in range(len(A)):
            c = A[i][j]
            if not ring.is_zero(c):
                w = ring.add(out.get(i, 0), ring.mul(c, v))
                if ring.is_zero(w):
                    out.pop(i, None)
                else:
                    out[i] = w
    return out


def mat_scale(c, A, ring):
    return [[ring.mul(c, v) for v in row] for row in A]


def is_derivation(A: StructureAlgebra, op) -> bool:
    ring = A.ring
    for i, j in product(range(A.dim), repeat=2):
        ei, ej = A.basis_vec(i), A.basis_vec(j)
        lhs = mat_apply(op, A.mul(ei, ej), ring)
        rhs = A.add(
            A.mul(mat_apply(op, ei, ring), ej), A.mul(ei, mat_apply(op, ej, ring))
        )
        if lhs != rhs:
            return False
    return True


def op_span_dim(ops, ring) -> int:
    """Dimension (over the fraction field) of the span of operator matrices."""
    if ring.kind == "Fp":
        rows = [
            {
                i * len(op) + j: op[i][j]
                for i in range(len(op))
                for j in range(len(op))
                if not ring.is_zero(op[i][j])
            }
            for op in ops
        ]
        n2 = len(ops[0]) ** 2 if ops else 0
        return len(_field_rref(rows, n2, ring)[0])
    ech = IntEchelon()
    for op in ops:
        row = {}
        denom = 1
        for i, r in enumerate(op):
            for j, v in enumerate(r):
                if v:
                    f = Fraction(v)
                    row[i * len(op) + j] = f
                    denom = denom * f.denominator // gcd(denom, f.denominator)
        ech.add({k: int(v * denom) for k, v in row.items()})
    return ech.rank


def standard_derivation(A: StructureAlgebra, a: dict, b: dict):
    """SD(a,b) = L_[a,b] - R_[a,b] + 3[L_b, R_a] for alternative algebras.

    This is the form satisfying the inner-derivation condition
    3x + sum[a_i, b_i] = 0 (with x = [a,b] and [L_b, R_a] = -[L_a, R_b]);
    it agrees with the classical standard derivation.
    """
    if not A.flags.get("alternative"):
        raise ValueError("standard derivations need an alternative algebra")
    ring = A.ring
    ab = A.commutator(a, b)
    op = mat_add(A.L(ab), A.R(ab), ring, sign=-1)
    br = mat_bracket(A.L(a), A.R(b), ring)
    op = mat_add(op, mat_scale(ring.coerce(-3), br, ring), ring)
    return op


# ---------------------------------------------------------------------------
# trialities
# ---------------------------------------------------------------------------


@dataclass
class Triality:
    """Operator triple with t1(ab) = t2(a) b + a t3(b)."""

    t1: list
    t2: list
    t3: list

    def components(self):
        return (self.t1, self.t2, self.t3)


def check_triality(A: StructureAlgebra, T: Triality) -> bool:
    ring = A.ring
    for i, j in product(range(A.dim), repeat=2):
        ei, ej = A.basis_vec(i), A.basis_vec(j)
        lhs = mat_apply(T.t1, A.mul(ei, ej), ring)
        rhs = A.add(
            A.mul(mat_apply(T.t2, ei, ring), ej),
            A.mul(ei, mat_apply(T.t3, ej, ring)),
        )
        if lhs != rhs:
            return False
    return True


def triality_add(S: Triality, T: Triality, ring, sign=1) -> Triality:
    return Triality(
        mat_add(S.t1, T.t1, ring, sign),
        mat_add(S.t2, T.t2, ring, sign),
        mat_add(S.t3, T.t3, ring, sign),
    )


def triality_bracket(S: Triality, T: Triality, ring) -> Triality:
    return Triality(
        mat_bracket(S.t1, T.t1, ring),
        mat_bracket(S.t2, T.t2, ring),
        mat_bracket(S.t3, T.t3, ring),
    )


def lam(A: StructureAlgebra, a: dict) -> Triality:
    """lambda(a) = (L_a, L_a + R_a, -L_a)."""
    if not A.flags.get("alternative"):
        raise ValueError("trialities need an alternative algebra")
    ring = A.ring
    La, Ra = A.L(a), A.R(a)
    return Triality(La, mat_add(La, Ra, ring), mat_scale(ring.coerce(-1), La, ring))


def rho(A: StructureAlgebra, b: dict) -> Triality:
    """rho(b) = (R_b, -R_b, L_b + R_b)."""
    if not A.flags.get("alternative"):
        raise ValueError("trialities need an alternative algebra")
    ring = A.ring
    Lb, Rb = A.L(b), A.R(b)
    return Triality(Rb, mat_scale(ring.coerce(-1), Rb, ring), mat_add(Lb, Rb, ring))


def sigma(A: StructureAlgebra, a: dict, b: dict) -> Triality:
    """sigma(a,b) = [lambda(a), rho(b)]; first component [L_a, R_b]."""
    return triality_bracket(lam(A, a), rho(A, b), A.ring)


def triality_h(A: StructureAlgebra, delta, a: dict, b: dict) -> Triality:
    """h(Delta, a, b) = (Delta, Delta, Delta) + lambda(a) - rho(b); needs 1/3."""
    if not A.ring.has_inverse_of(3):
        raise ValueError("triality decomposition needs 1/3 in the ring")
    ring = A.ring
    T = Triality([row[:] for row in delta], [row[:] for row in delta], [row[:] for row in delta])
    T = triality_add(T, lam(A, a), ring)
    return triality_add(T, rho(A, b), ring, sign=-1)


def triality_h_inverse(A: StructureAlgebra, T: Triality):
    """Inverse of h: recover (Delta, a, b) with 3a = 2 t2(1) + t3(1)."""
    if not A.ring.has_inverse_of(3):
        raise ValueError("triality decomposition needs 1/3 in the ring")
    ring = A.ring
    if A.unit is None:
        raise ValueError("need a unit")
    third = ring.inv(ring.coerce(3))
    t2_1 = mat_apply(T.t2, A.unit, ring)
    t3_1 = mat_apply(T.t3, A.unit, ring)
    a = A.smul(third, A.add(A.smul(2, t2_1), t3_1))
    b = A.smul(third, A.sub(A.smul(-1, t2_1), A.smul(2, t3_1)))
    delta = mat_add(T.t1, A.L(a), ring, sign=-1)
    delta = mat_add(delta, A.R(b), ring)
    return delta, a, b


# ---------------------------------------------------------------------------
# the g_1 operators spanning so(N)
# ---------------------------------------------------------------------------


def g1_operator(A: StructureAlgebra, a: dict, b: dict):
    """g1(a (x) b)(c) = 2(a,b,c) + L_{a bbar - b abar} c - R_{abar b - bbar a} c."""
    if A.involution is None:
        raise ValueError("g1 needs an involution")
    ring = A.ring
    abb = A.sub(A.mul(a, A.conj(b)), A.mul(b, A.conj(a)))
    bba = A.sub(A.mul(A.conj(a), b), A.mul(A.conj(b), a))
    n = A.dim
    op = mat_add(A.L(abb), A.R(bba), ring, sign=-1)
    for j in range(n):
        col = A.smul(2, A.associator(a, b, A.basis_vec(j)))
        for i, v in col.items():
            op[i][j] = ring.add(op[i][j], v)
    return op


def g1_span(A: StructureAlgebra):
    """All g1 operators on basis pairs; their span is so(A, N)."""
    ops = []
    for i in range(A.dim):
        for j in range(i + 1, A.dim):
            ops.append(g1_operator(A, A.basis_vec(i), A.basis_vec(j)))
    return ops
