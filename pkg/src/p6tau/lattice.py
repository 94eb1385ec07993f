"""Combinatorics of the rank-5 root lattice indexing the tau family.

A lattice point is an integer 6-vector (a1,...,a6) with zero sum.  The first
three entries form the charge part, the last three the mu part; both views of
one object.  This module owns the weight R, the constants c5/c6 and n entering
the bilinear relations, the first-order correction polynomials g_j/h_j and
G/H, the charge-ordering sign, and the distinguished translation by
(1,1,1,-1,-1,-1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exactalg import UniPoly, as_scalar


@dataclass(frozen=True)
class LatticePoint:
    """Element of the zero-sum lattice, stored as a raw 6-vector."""

    alpha: tuple[int, int, int, int, int, int]

    def __post_init__(self):
        a = tuple(int(x) for x in self.alpha)
        if len(a) != 6:
            raise ValueError(f"lattice point needs 6 entries, got {len(a)}")
        if sum(a) != 0:
            raise ValueError(f"entries of {a} do not sum to zero")
        object.__setattr__(self, "alpha", a)

    @property
    def charge(self) -> tuple[int, int, int]:
        return self.alpha[:3]

    @property
    def mu(self) -> tuple[int, int, int]:
        return self.alpha[3:]

    def __getitem__(self, i: int) -> int:
        return self.alpha[i]

    def __add__(self, other: "LatticePoint") -> "LatticePoint":
        return LatticePoint(tuple(a + b for a, b in zip(self.alpha, other.alpha)))

    def __sub__(self, other: "LatticePoint") -> "LatticePoint":
        return LatticePoint(tuple(a - b for a, b in zip(self.alpha, other.alpha)))

    def __neg__(self) -> "LatticePoint":
        return LatticePoint(tuple(-a for a in self.alpha))

    def to_json(self) -> list[int]:
        return list(self.alpha)

    @classmethod
    def from_json(cls, data) -> "LatticePoint":
        return cls(tuple(int(x) for x in data))

    def __str__(self):
        return "(" + ",".join(str(a) for a in self.alpha) + ")"


ORIGIN = LatticePoint((0, 0, 0, 0, 0, 0))

# translation vector whose mu part undoes its charge part
E0_VECTOR = LatticePoint((1, 1, 1, -1, -1, -1))


def delta(i: int) -> tuple[int, ...]:
    """Unit 6-vector with a 1 in (1-based) slot i."""
    if not 1 <= i <= 6:
        raise ValueError(f"index {i} out of range 1..6")
    return tuple(1 if k == i - 1 else 0 for k in range(6))


def move_vector(i: int, k: int) -> LatticePoint:
    """The root delta_i - delta_k as a lattice point."""
    return LatticePoint(tuple(a - b for a, b in zip(delta(i), delta(k))))


@dataclass(frozen=True)
class MoveIJK:
    """Index triple of a bilinear move: i,k in 1..6, middle index j in 1..3."""

    i: int
    j: int
    k: int

    def __post_init__(self):
        if not (1 <= self.i <= 6 and 1 <= self.k <= 6):
            raise ValueError(f"i,k must lie in 1..6, got ({self.i},{self.k})")
        if not 1 <= self.j <= 3:
            raise ValueError(f"j must lie in 1..3, got {self.j}")
        if len({self.i, self.j, self.k}) != 3:
            raise ValueError(f"indices must be distinct: ({self.i},{self.j},{self.k})")


def all_moves() -> list[MoveIJK]:
    """All 60 valid (i, j, k) triples, lexicographically ordered."""
    out = []
    for i in range(1, 7):
        for j in range(1, 4):
            for k in range(1, 7):
                if len({i, j, k}) == 3:
                    out.append(MoveIJK(i, j, k))
    return out


# ---------------------------------------------------------------------------
# weight and scalar data attached to a point
# ---------------------------------------------------------------------------

def r_weight(p: LatticePoint) -> int:
    """Weight (a4^2+a5^2+a6^2-a1^2-a2^2-a3^2)/2; integral on the zero-sum lattice."""
    a = p.alpha
    twice = a[3] ** 2 + a[4] ** 2 + a[5] ** 2 - a[0] ** 2 - a[1] ** 2 - a[2] ** 2
    if twice % 2:
        raise ArithmeticError(f"weight of {p} is not an integer")
    return twice // 2


def c5_c6(p: LatticePoint) -> tuple[Fraction, Fraction]:
    """The two constants shifting the log-derivative into the sigma function."""
    a = p.alpha
    c5 = -Fraction((a[0] - a[2]) ** 2, 4)
    c6 = as_scalar(r_weight(p)) + Fraction((a[0] - a[1]) * (a[0] - a[2]), 2)
    return c5, c6


def n_coeff(p: LatticePoint, m: MoveIJK) -> Fraction:
    """Constant term of the bilinear relation: n1 = R(p+di-dk)-R(p), n2 = -n1, n3 = 0."""
    if m.j == 3:
        return Fraction(0)
    n1 = r_weight(p + move_vector(m.i, m.k)) - r_weight(p)
    return as_scalar(n1) if m.j == 1 else as_scalar(-n1)


def gh_polys(j: int, n) -> tuple[UniPoly, UniPoly]:
    """First-order corrections (g_j, h_j) entering the log-derivative relation.

    g_j = t(t-1) dlog(b_j/(t(t-1)))/dt and h_j = n * t(t-1)/b_j, evaluated for
    b1 = t(t-1), b2 = t, b3 = -t^2.  Note g3 = -1: the quotient for j=3 is
    -t/(t-1), whose scaled log-derivative is -1.
    """
    n = as_scalar(n)
    t = UniPoly.t()
    if j == 1:
        return UniPoly.zero(), UniPoly.constant(n)
    if j == 2:
        return -t, (t - 1) * n
    if j == 3:
        return UniPoly.constant(-1), UniPoly.zero()
    raise ValueError(f"j must lie in 1..3, got {j}")


def big_GH(p: LatticePoint, m: MoveIJK) -> tuple[UniPoly, UniPoly]:
    """First-order polynomials G, H of the sigma-level relation for move m at p.

    With D[f] = f(p+di-dj) + f(p+dj-dk) - f(p+di-dk) - f(p) over the move's
    four points:  G = g_j - D[c5](1-t) - D[c6]/2, and with d[f] = f(p) -
    f(p+di-dk):  H = h_j + d[c5](1-t) + d[c6]/2.
    """
    p_ij = p + move_vector(m.i, m.j)
    p_jk = p + move_vector(m.j, m.k)
    p_ik = p + move_vector(m.i, m.k)
    c5a, c6a = c5_c6(p)
    c5ij, c6ij = c5_c6(p_ij)
    c5jk, c6jk = c5_c6(p_jk)
    c5ik, c6ik = c5_c6(p_ik)
    d_c5 = c5ij + c5jk - c5ik - c5a
    d_c6 = c6ij + c6jk - c6ik - c6a
    g, h = gh_polys(m.j, n_coeff(p, m))
    one_minus_t = UniPoly((1, -1))
    G = g - one_minus_t * d_c5 - UniPoly.constant(d_c6 / 2)
    H = h + one_minus_t * (c5a - c5ik) + UniPoly.constant((c6a - c6ik) / 2)
    return G, H


def sign_eps(j: int, charge) -> int:
    """Ordering sign of prepending component j to an ordered charge monomial."""
    if not 1 <= j <= 3:
        raise ValueError(f"j must lie in 1..3, got {j}")
    return -1 if sum(charge[: j - 1]) % 2 else 1


def e0_translate(p: LatticePoint) -> tuple[LatticePoint, int]:
    """Translate by (1,1,1,-1,-1,-1); the returned sign relates the tau values."""
    sign = -1 if p.alpha[1] % 2 else 1
    return p + E0_VECTOR, sign


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def ball(radius: int) -> list[LatticePoint]:
    """All lattice points within `radius` unit moves of the origin.

    A zero-sum vector is reachable in r moves iff its l1 norm is at most 2r.
    Returned in lexicographic order, so sweeps are deterministic.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    budget = 2 * radius
    points = []

    def rec(prefix, remaining_abs, total):
        idx = len(prefix)
        if idx == 5:
            last = -total
            if abs(last) <= remaining_abs:
                points.append(LatticePoint(tuple(prefix) + (last,)))
            return
        for v in range(-remaining_abs, remaining_abs + 1):
            rec(prefix + [v], remaining_abs - abs(v), total + v)

    rec([], budget, 0)
    points.sort(key=lambda p: p.alpha)
    return points


def mu_values(points) -> list[tuple[int, int, int]]:
    """Distinct mu parts of a collection of points, sorted."""
    return sorted({p.mu for p in points})


def charges_with_weight_at_least_zero(mu: tuple[int, int, int]):
    """All charge triples c with sum(c) = -sum(mu) and R(mu, c) >= 0."""
    target = -sum(mu)
    cap = mu[0] ** 2 + mu[1] ** 2 + mu[2] ** 2
    bound = int(cap ** 0.5) + 1
    out = []
    for c1, c2 in itertools.product(range(-bound, bound + 1), repeat=2):
        c3 = target - c1 - c2
        if c1 * c1 + c2 * c2 + c3 * c3 <= cap:
            out.append((c1, c2, c3))
    out.sort()
    return out
