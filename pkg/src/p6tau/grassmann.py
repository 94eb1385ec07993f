"""Tau functions from the 3-component polynomial Grassmannian.

Pipeline:  a point family of the Grassmannian is selected by three generic
row vectors (``FrameMatrix``) and an integer mu triple.  Its semi-infinite
wedge has a finite "head" of frame-vector slots over a standard tail; the
head is expanded multilinearly into basis slots, every surviving term is
sorted into canonical order, and its occupied degrees per component are
decoded (Maya correspondence) into a charge triple plus three partitions.
Each decoded term bosonizes to a product of first-times Schur polynomials,
giving one charge sector ``TauPolynomial`` per charge; the substitution
x1 = u, x2 = u + h, x3 = u + h/t then yields the one-variable tau
``TauT`` = coefficient of h^R, with the u-dependence required to cancel.

Sign bookkeeping, fixed once and pinned by the identity suites:

* slots (degree k, component a) are ordered lexicographically by (k, a),
  matching the standard tail  e1, e2, e3 at each level;
* a sorted term decomposes per component at the cost of a cross-component
  unshuffle parity, computed relative to the pure charge state of the same
  charges (the difference is a finite inversion count);
* the pure charge states themselves carry a cocycle sign ``_eta`` obtained
  by walking surface creations/annihilations component by component; it
  encodes the anticommuting charge-monomial ordering.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping

from .exactalg import ZERO, LaurentPoly, TriPoly, UniPoly, as_scalar
from .lattice import (
    LatticePoint,
    ball,
    charges_with_weight_at_least_zero,
    r_weight,
)


class SingularFrame(ValueError):
    """The three frame rows are linearly dependent."""


class GaugeDependence(ArithmeticError):
    """u-terms failed to cancel in the t-specialization (convention bug)."""


class HomogeneityViolation(ArithmeticError):
    """A tau polynomial is not homogeneous of its advertised weight."""


class MissingTau(KeyError):
    """An identity sweep asked for a point the table does not hold."""


# ---------------------------------------------------------------------------
# frames
# ---------------------------------------------------------------------------

class FrameMatrix:
    """Three generic row vectors selecting the Grassmannian point family.

    The family only depends on the rows projectively, and the wedge words of
    different mu values share their standard-basis tails only when the rows
    are unimodular: with det != 1 the cross-family bilinear identities pick
    up determinant powers while the lattice translation identity does not,
    and no single rescaling of the tau family can absorb both.  The
    constructor therefore fixes the gauge det = 1 by dividing the first row
    by the determinant of the input; every stored row is in this gauge.
    """

    __slots__ = ("rows", "dual")

    def __init__(self, rows):
        rs = tuple(tuple(as_scalar(x) for x in row) for row in rows)
        if len(rs) != 3 or any(len(r) != 3 for r in rs):
            raise ValueError("frame needs three rows of three entries")
        self.rows = rs
        d = self.det()
        if d == 0:
            raise SingularFrame(f"frame rows are dependent: {rs}")
        if d != 1:
            self.rows = (tuple(x / d for x in rs[0]),) + rs[1:]
        self.dual = self._invert_transpose()

    @classmethod
    def vandermonde(cls) -> "FrameMatrix":
        """Canonical test frame: every minor nonzero, smallest exact entries."""
        return cls(((1, 1, 1), (1, 2, 4), (1, 3, 9)))

    def det(self) -> Fraction:
        r = self.rows
        return (
            r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
        )

    def _invert_transpose(self):
        d = self.det()
        if d == 0:
            raise SingularFrame(f"frame rows are dependent: {self.rows}")
        r = self.rows
        cof = [
            [
                (r[(i + 1) % 3][(j + 1) % 3] * r[(i + 2) % 3][(j + 2) % 3]
                 - r[(i + 1) % 3][(j + 2) % 3] * r[(i + 2) % 3][(j + 1) % 3])
                for j in range(3)
            ]
            for i in range(3)
        ]
        # inverse = adjugate/det = transpose(cof)/det; dual rows are the
        # columns of the inverse, i.e. the cofactor rows over det.
        return tuple(tuple(cof[i][j] / d for j in range(3)) for i in range(3))

    def permuted(self, perm) -> "FrameMatrix":
        """Frame with rows and columns simultaneously relabeled by perm."""
        return FrameMatrix(
            tuple(tuple(self.rows[perm[j]][perm[a]] for a in range(3)) for j in range(3))
        )

    def __eq__(self, other):
        return isinstance(other, FrameMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def to_json(self):
        return [[str(x) for x in row] for row in self.rows]

    @classmethod
    def from_json(cls, data) -> "FrameMatrix":
        return cls(data)


def dual_basis(frame: FrameMatrix) -> FrameMatrix:
    """Frame whose rows are the duals of the input rows (pairing = identity)."""
    return FrameMatrix(frame.dual)


# ---------------------------------------------------------------------------
# sign machinery
# ---------------------------------------------------------------------------

def _sort_parity(slots) -> int:
    """Parity of sorting a duplicate-free slot list by (degree, component)."""
    inv = 0
    for p in range(len(slots)):
        for q in range(p + 1, len(slots)):
            if slots[p] > slots[q]:
                inv += 1
    return -1 if inv % 2 else 1


def _cross_inversions(xs, ys) -> int:
    """#{(x, y) : x in xs, y in ys, y < x} for sorted integer lists."""
    count = 0
    for x in xs:
        for y in ys:
            if y < x:
                count += 1
    return count


def _unshuffle_sign(below, charges, level: int) -> int:
    """Parity of unshuffling into component blocks, relative to the pure
    charge state with the same charges (all occupancy at >= level agrees,
    so only degrees below the cutoff contribute)."""
    delta = 0
    for b in range(3):
        for c in range(b + 1, 3):
            ref_b = range(-charges[b], level)
            ref_c = range(-charges[c], level)
            delta += _cross_inversions(below[b], below[c])
            delta -= _cross_inversions(ref_b, ref_c)
    return -1 if delta % 2 else 1


def family_sign(mu) -> int:
    """Sign normalizing the wedge word of one mu against the rest of the family.

    Individual wedge words are only canonical up to sign, and the cross-family
    bilinear identities fix the relative signs: this is the unique choice
    (modulo irrelevant separable twists) under which the pairing constant of
    every move depends on the move indices alone.  It is a parity of pairwise
    inversion-type counts of the word, depends only on the differences of the
    mu entries, and is therefore invariant under the lattice translation by
    (1,1,1,-1,-1,-1).
    """
    m1, m2, m3 = mu

    def pos(x):
        return x if x > 0 else 0

    def pairs(x):
        return x * (x - 1) // 2

    d12, d13, d21 = pos(m1 - m2), pos(m1 - m3), pos(m2 - m1)
    d23, d31, d32 = pos(m2 - m3), pos(m3 - m1), pos(m3 - m2)
    total = (
        pairs(d21) + pairs(d31) + pairs(d32)
        + d12 * d31 + d12 * d32 + d13 * d21
        + d13 * d23 + d21 * d23 + d31 * d32
    )
    return -1 if total % 2 else 1


_ETA_CACHE: dict[tuple[int, int, int], int] = {(0, 0, 0): 1}


def _eta(charges: tuple[int, int, int]) -> int:
    """Sign attached to the pure charge state, from walking the canonical
    path of surface creations (charge up) / annihilations (charge down),
    component 1 first, each step carrying the charge-monomial reordering
    sign times the parity of the occupied slots jumped over."""
    charges = tuple(charges)
    cached = _ETA_CACHE.get(charges)
    if cached is not None:
        return cached
    eta = 1
    beta = [0, 0, 0]
    for a in range(3):
        target = charges[a]
        while beta[a] != target:
            reorder = -1 if sum(beta[:a]) % 2 else 1
            if beta[a] < target:
                jumped = sum(max(0, beta[b] - beta[a] - 1) for b in range(3))
                jumped += sum(1 for b in range(a) if beta[b] > beta[a])
                beta[a] += 1
            else:
                jumped = sum(max(0, beta[b] - beta[a]) for b in range(3))
                jumped += sum(1 for b in range(a) if beta[b] >= beta[a])
                beta[a] -= 1
            eta *= reorder * (-1 if jumped % 2 else 1)
    _ETA_CACHE[charges] = eta
    return eta


# ---------------------------------------------------------------------------
# wedge expansion and Maya decoding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WedgeTerm:
    """One signed basis term of the expanded head: charges, partitions,
    reordering sign, and the product of frame coefficients."""

    charges: tuple[int, int, int]
    partitions: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    sign: int
    coefficient: Fraction


def _partition_from_below(occupied_below, level: int, charge: int) -> tuple[int, ...]:
    parts = []
    n = len(occupied_below)
    for i, s in enumerate(occupied_below):
        lam = (level - n) + i - s
        parts.append(lam)
    while parts and parts[-1] == 0:
        parts.pop()
    if any(p < 0 for p in parts) or any(
        parts[i] < parts[i + 1] for i in range(len(parts) - 1)
    ):
        raise AssertionError(f"bad Maya decode: {occupied_below} -> {parts}")
    return tuple(parts)


def expand_wedge(mu, frame: FrameMatrix) -> list[WedgeTerm]:
    """Multilinear expansion of the finite head of the wedge for mu.

    Head slots are (component j, degree k) for k = mu_j .. max(mu)-1; the
    wedge word is taken with its slots sorted by (degree, row index), the
    same level-local order as the standard tail.  (Grouping the slots by row
    instead twists the family by a mu-dependent sign that leaks into the
    cross-family bilinear identities.)  Each slot is replaced by the three
    basis options weighted by the frame row; terms hitting one basis slot
    twice vanish; the rest are sorted and decoded.  mu = (0,0,0) gives the
    single vacuum term.
    """
    mu = tuple(int(m) for m in mu)
    level = max(mu)
    head = sorted(
        ((j, k) for j in range(3) for k in range(mu[j], level)),
        key=lambda jk: (jk[1], jk[0]),
    )
    word_sign = family_sign(mu)
    terms: list[WedgeTerm] = []
    for assignment in itertools.product(range(3), repeat=len(head)):
        coeff = Fraction(1)
        slots = []
        seen = set()
        dead = False
        for (j, k), a in zip(head, assignment):
            w = frame.rows[j][a]
            if w == 0:
                dead = True
                break
            key = (k, a)
            if key in seen:
                dead = True
                break
            seen.add(key)
            coeff *= w
            slots.append(key)
        if dead:
            continue
        below = ([], [], [])
        for k, a in slots:
            below[a].append(k)
        for lst in below:
            lst.sort()
        charges = tuple(len(below[a]) - level for a in range(3))
        partitions = tuple(
            _partition_from_below(below[a], level, charges[a]) for a in range(3)
        )
        weight = Fraction(sum(m * m for m in mu) - sum(c * c for c in charges), 2)
        if sum(sum(p) for p in partitions) != weight:
            raise AssertionError(f"degree bookkeeping broke at mu={mu}, term {slots}")
        sign = word_sign * _sort_parity(slots) * _unshuffle_sign(below, charges, level) * _eta(charges)
        terms.append(WedgeTerm(charges, partitions, sign, coeff))
    return terms


# ---------------------------------------------------------------------------
# bosonization: Jacobi-Trudi over first-times elementary Schur polynomials
# ---------------------------------------------------------------------------

def elementary_schur(k: int) -> UniPoly:
    """S_k specialized to first times: x^k / k! for k >= 0, else 0."""
    if k < 0:
        return UniPoly.zero()
    return UniPoly.monomial(Fraction(1, factorial(k)), k)


def schur_first_times(partition) -> UniPoly:
    """s_lambda at first times via the Jacobi-Trudi determinant
    det(S_{lambda_i - i + j})."""
    lam = tuple(partition)
    n = len(lam)
    if n == 0:
        return UniPoly.constant(1)
    rows = [[elementary_schur(lam[i] - (i + 1) + (j + 1)) for j in range(n)] for i in range(n)]
    cache: dict[tuple[int, frozenset], UniPoly] = {}

    def minor(i: int, cols: frozenset) -> UniPoly:
        if i == n:
            return UniPoly.constant(1)
        key = (i, cols)
        got = cache.get(key)
        if got is not None:
            return got
        acc = UniPoly.zero()
        for pos, j in enumerate(sorted(cols)):
            entry = rows[i][j]
            if entry.is_zero():
                continue
            sub = minor(i + 1, cols - {j})
            term = entry * sub
            acc = acc + (term if pos % 2 == 0 else -term)
        cache[key] = acc
        return acc

    return minor(0, frozenset(range(n)))


def bosonize(term: WedgeTerm) -> TriPoly:
    """Image of one wedge term in the three first times:
    sign * coefficient * prod_a s_{lambda^(a)}(x_a)."""
    factors = [schur_first_times(p) for p in term.partitions]
    out = TriPoly.constant(term.sign * term.coefficient)
    for axis, poly in enumerate(factors):
        expanded = TriPoly()
        for k, v in out.terms.items():
            for e, c in enumerate(poly.coeffs):
                if c == 0:
                    continue
                nk = list(k)
                nk[axis] += e
                nk = tuple(nk)
                s = expanded.terms.get(nk, ZERO) + v * c
                if s == 0:
                    expanded.terms.pop(nk, None)
                else:
                    expanded.terms[nk] = s
        out = expanded
    return out


# ---------------------------------------------------------------------------
# tau polynomials and their t-specialization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TauPolynomial:
    """One charge sector of an expanded wedge, as a polynomial in the
    three first times; homogeneous of degree equal to its weight."""

    mu: tuple[int, int, int]
    charge: tuple[int, int, int]
    poly: TriPoly

    @property
    def weight(self) -> int:
        return r_weight(self.point)

    @property
    def point(self) -> LatticePoint:
        return LatticePoint(self.charge + self.mu)


@dataclass(frozen=True)
class TauT:
    """Tau specialized to the single variable t, tagged with its point."""

    point: LatticePoint
    T: LaurentPoly
    weight: int

    def is_zero(self) -> bool:
        return self.T.is_zero()

    def to_json(self) -> dict:
        return {"point": self.point.to_json(), "weight": self.weight, "T": self.T.to_json()}

    @classmethod
    def from_json(cls, d: Mapping) -> "TauT":
        return cls(LatticePoint.from_json(d["point"]), LaurentPoly.from_json(d["T"]), int(d["weight"]))


def tau_in_x(mu, charge, frame: FrameMatrix) -> TauPolynomial:
    """Charge sector of the expanded wedge; zero unless sum(charge) = -sum(mu)."""
    mu = tuple(int(m) for m in mu)
    charge = tuple(int(c) for c in charge)
    if sum(mu) + sum(charge) != 0:
        return TauPolynomial(mu, charge, TriPoly.zero())
    acc = TriPoly.zero()
    for term in expand_wedge(mu, frame):
        if term.charges == charge:
            acc = acc + bosonize(term)
    tp = TauPolynomial(mu, charge, acc)
    _check_homogeneous(tp)
    return tp


def _check_homogeneous(tp: TauPolynomial) -> None:
    deg = tp.poly.homogeneous_degree()
    if deg is None:
        return
    if deg != tp.weight:
        raise HomogeneityViolation(
            f"sector {tp.charge} of mu={tp.mu} has degree {deg}, weight {tp.weight}"
        )


def specialize_to_t(tp: TauPolynomial) -> TauT:
    """Substitute x1 = u, x2 = u + h, x3 = u + h/t and strip h^R.

    The u-terms must cancel identically (translation invariance of the
    sector); any survivor raises GaugeDependence rather than being dropped.
    """
    point = tp.point
    weight = r_weight(point)
    if tp.poly.is_zero():
        return TauT(point, LaurentPoly.zero(), weight)
    acc: dict[tuple[int, int, int], Fraction] = {}
    for (d1, d2, d3), c in tp.poly.terms.items():
        for m2 in range(d2 + 1):
            c2 = comb(d2, m2)
            for m3 in range(d3 + 1):
                key = (d1 + d2 - m2 + d3 - m3, m2 + m3, -m3)
                val = c * c2 * comb(d3, m3)
                s = acc.get(key, ZERO) + val
                if s == 0:
                    acc.pop(key, None)
                else:
                    acc[key] = s
    t_coeffs: dict[int, Fraction] = {}
    for (u_pow, h_pow, t_pow), v in acc.items():
        if u_pow > 0:
            raise GaugeDependence(
                f"u^{u_pow} survives in sector {tp.charge} of mu={tp.mu}"
            )
        if h_pow != weight:
            raise HomogeneityViolation(
                f"h^{h_pow} term in sector {tp.charge} of mu={tp.mu}, weight {weight}"
            )
        t_coeffs[t_pow] = t_coeffs.get(t_pow, ZERO) + v
    if not t_coeffs:
        return TauT(point, LaurentPoly.zero(), weight)
    lo = min(t_coeffs)
    hi = max(t_coeffs)
    return TauT(point, LaurentPoly(lo, [t_coeffs.get(n, ZERO) for n in range(lo, hi + 1)]), weight)


def seed_table(mu, frame: FrameMatrix) -> dict[tuple[int, int, int], TauT]:
    """Every TauT of the mu family with weight >= 0, zeros stored explicitly."""
    mu = tuple(int(m) for m in mu)
    sectors: dict[tuple[int, int, int], TriPoly] = {}
    for term in expand_wedge(mu, frame):
        sectors[term.charges] = sectors.get(term.charges, TriPoly.zero()) + bosonize(term)
    out: dict[tuple[int, int, int], TauT] = {}
    for charge in charges_with_weight_at_least_zero(mu):
        tp = TauPolynomial(mu, charge, sectors.get(charge, TriPoly.zero()))
        _check_homogeneous(tp)
        out[charge] = specialize_to_t(tp)
    return out


# ---------------------------------------------------------------------------
# tables over the lattice
# ---------------------------------------------------------------------------

class TauTable:
    """Tau functions indexed by lattice points, computed from one frame.

    Entries are stored for every requested point, zero taus included, so
    identity sweeps can assert vanishing products.  Points outside the
    initial ball are computed on demand and cached.
    """

    def __init__(self, frame: FrameMatrix | None, entries: dict[LatticePoint, TauT] | None = None,
                 radius: int | None = None):
        self.frame = frame
        self.entries: dict[LatticePoint, TauT] = dict(entries or {})
        self.radius = radius
        self._mu_cache: dict[tuple[int, int, int], dict[tuple[int, int, int], TauT]] = {}

    @classmethod
    def build(cls, frame: FrameMatrix, radius: int) -> "TauTable":
        table = cls(frame, radius=radius)
        for point in ball(radius):
            table.entries[point] = table._compute(point)
        return table

    def _sectors(self, mu):
        got = self._mu_cache.get(mu)
        if got is None:
            got = seed_table(mu, self.frame)
            self._mu_cache[mu] = got
        return got

    def _compute(self, point: LatticePoint) -> TauT:
        weight = r_weight(point)
        if weight < 0:
            return TauT(point, LaurentPoly.zero(), weight)
        return self._sectors(point.mu)[point.charge]

    def __contains__(self, point: LatticePoint) -> bool:
        return point in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def points(self) -> list[LatticePoint]:
        return sorted(self.entries, key=lambda p: p.alpha)

    def get(self, point: LatticePoint) -> TauT:
        got = self.entries.get(point)
        if got is None:
            raise MissingTau(str(point))
        return got

    def tau(self, point: LatticePoint) -> TauT:
        """Entry for point, computing and caching it when absent."""
        got = self.entries.get(point)
        if got is None:
            if self.frame is None:
                raise MissingTau(str(point))
            got = self._compute(point)
            self.entries[point] = got
        return got

    def nonzero_points(self) -> list[LatticePoint]:
        return [p for p in self.points() if not self.entries[p].is_zero()]

    def to_json(self) -> list[dict]:
        return [self.entries[p].to_json() for p in self.points()]

    @classmethod
    def from_json(cls, entries: Iterable[Mapping], frame: FrameMatrix | None = None,
                  radius: int | None = None) -> "TauTable":
        table = cls(frame, radius=radius)
        for item in entries:
            tau = TauT.from_json(item)
            table.entries[tau.point] = tau
        return table
