"""The identity engine on tau tables.

Everything here is a verifier or a solver for one of the exact relations the
tau family satisfies: the three Toda lines, the bilinear relation for a move
(i, j, k) with its calibrated sign table, the two six-point product
identities, the sigma function with its second-order quadratic residual, and
the sigma-level relation with first-order corrections G and H.  Residuals are
exact Laurent polynomials or reduced rational functions; a relation holds iff
its residual is literally zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactalg import LaurentPoly, RationalFunction, UniPoly, as_scalar
from .grassmann import MissingTau, TauT, TauTable
from .lattice import (
    LatticePoint,
    MoveIJK,
    all_moves,
    big_GH,
    c5_c6,
    move_vector,
    n_coeff,
    r_weight,
)


class ConfigurationMismatch(ValueError):
    """The four tau points do not form the move's parallelogram."""


class ZeroTau(ArithmeticError):
    """A sigma function was requested for the zero tau."""


class DegenerateK(ArithmeticError):
    """The log-derivative argument K vanishes identically."""


class NoConsistentSign(ArithmeticError):
    """No single sign makes the bilinear relation hold for a move."""


class InsufficientData(ValueError):
    """The table held no informative configuration for a move."""


# directional derivatives d_j = b_j(t) d/dt
B_POLYS = {
    1: LaurentPoly(1, (-1, 1)),   # t(t-1)
    2: LaurentPoly(1, (1,)),      # t
    3: LaurentPoly(2, (-1,)),     # -t^2
}


@dataclass(frozen=True)
class DirectionalDerivative:
    """d_j = b_j(t) d/dt with b1 = t(t-1), b2 = t, b3 = -t^2."""

    j: int

    @property
    def b(self) -> LaurentPoly:
        return B_POLYS[self.j]

    def __call__(self, T: LaurentPoly) -> LaurentPoly:
        return self.b * T.derivative()


@dataclass(frozen=True)
class SigmaFn:
    """Sigma function of a nonzero tau: t(t-1) dlogT/dt + c5(t-1) - c6/2."""

    point: LatticePoint
    sigma: RationalFunction


@dataclass(frozen=True)
class VQuad:
    """The four parameters (v1..v4) attached to a lattice point."""

    v1: Fraction
    v2: Fraction
    v3: Fraction
    v4: Fraction

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.v1, self.v2, self.v3, self.v4)

    def product(self) -> Fraction:
        return self.v1 * self.v2 * self.v3 * self.v4


@dataclass(frozen=True)
class EpsTable:
    """Calibrated sign for each valid move triple (i, j, k)."""

    signs: dict

    def __getitem__(self, key) -> int:
        if isinstance(key, MoveIJK):
            key = (key.i, key.j, key.k)
        return self.signs[key]

    def to_json(self) -> dict[str, int]:
        return {f"{i},{j},{k}": s for (i, j, k), s in sorted(self.signs.items())}

    @classmethod
    def from_json(cls, d) -> "EpsTable":
        return cls({tuple(int(x) for x in key.split(",")): int(v) for key, v in d.items()})


# ---------------------------------------------------------------------------
# Toda lines
# ---------------------------------------------------------------------------

TODA_PAIRS = ((1, 2), (1, 3), (2, 3))


def toda_product(tau: TauT, pair: tuple[int, int]) -> LaurentPoly:
    """Left side of the Toda line for the given neighbor pair, evaluated at tau.

    Contract: equals T(p + d_a - d_b) * T(p + d_b - d_a) for pair (a, b).
    All three lines are (half the) second Hirota derivative D_1^(a) D_1^(b)
    applied to tau*tau and pushed through the t-substitution; the leading
    coefficient of T*T'' is b_a(t) b_b(t), which for the pair (2, 3) is -t^3
    (t * -t^2), not +t^3.
    """
    T = tau.T
    R = as_scalar(tau.weight)
    dT = T.derivative()
    ddT = dT.derivative()
    t = LaurentPoly(1, (1,))
    t2 = LaurentPoly(2, (1,))
    tm1 = LaurentPoly(0, (-1, 1))
    if pair == (1, 2):
        return R * T * T - tm1 * t2 * dT * dT + t2 * T * (dT + tm1 * ddT)
    if pair == (1, 3):
        one_minus_2t = LaurentPoly(0, (1, -2))
        return t2 * (t * tm1 * dT * dT + T * (one_minus_2t * dT - t * tm1 * ddT))
    if pair == (2, 3):
        return t2 * (t * dT * dT - T * (dT + t * ddT))
    raise ValueError(f"pair must be one of {TODA_PAIRS}, got {pair}")


def toda_neighbors(point: LatticePoint, pair: tuple[int, int]):
    a, b = pair
    v = move_vector(a, b)
    return point + v, point - v


# ---------------------------------------------------------------------------
# bilinear relation for a move
# ---------------------------------------------------------------------------

def _check_configuration(t_a: TauT, t_ik: TauT, t_ij: TauT, t_jk: TauT, m: MoveIJK):
    base = t_a.point
    expect = (
        (t_ik, base + move_vector(m.i, m.k)),
        (t_ij, base + move_vector(m.i, m.j)),
        (t_jk, base + move_vector(m.j, m.k)),
    )
    for tau, point in expect:
        if tau.point != point:
            raise ConfigurationMismatch(
                f"tau at {tau.point} does not sit at {point} for move {m}"
            )


def bilinear_combination(t_a: TauT, t_ik: TauT, m: MoveIJK) -> LaurentPoly:
    """Tik d_j(Ta) - Ta d_j(Tik) + n_j Ta Tik, the move's left side."""
    dj = DirectionalDerivative(m.j)
    n = n_coeff(t_a.point, m)
    return t_ik.T * dj(t_a.T) - t_a.T * dj(t_ik.T) + n * t_a.T * t_ik.T


def bilinear_residual(t_a: TauT, t_ik: TauT, t_ij: TauT, t_jk: TauT,
                      m: MoveIJK, eps: int) -> LaurentPoly:
    """Left side minus eps * Tij * Tjk; zero iff the relation holds with eps."""
    _check_configuration(t_a, t_ik, t_ij, t_jk, m)
    return bilinear_combination(t_a, t_ik, m) - eps * (t_ij.T * t_jk.T)


def solve_fourth(t_a: TauT, t_ik: TauT, t_ij: TauT, m: MoveIJK, eps: int) -> TauT:
    """Solve the bilinear relation for the fourth tau, by exact division."""
    if t_ij.T.is_zero():
        raise ZeroDivisionError("cannot divide by the zero tau")
    base = t_a.point
    if t_ik.point != base + move_vector(m.i, m.k) or t_ij.point != base + move_vector(m.i, m.j):
        raise ConfigurationMismatch(f"inputs do not match move {m} at {base}")
    target = base + move_vector(m.j, m.k)
    numerator = bilinear_combination(t_a, t_ik, m)
    quotient = numerator.exact_divide(eps * t_ij.T)
    return TauT(target, quotient, r_weight(target))


# ---------------------------------------------------------------------------
# six-point product identities
# ---------------------------------------------------------------------------

def eps_pair(a: int, b: int) -> int:
    """Ordering sign for two unit charges: +1 when a <= b, else -1."""
    return 1 if a <= b else -1


def eps_block_inversions(i: int, j: int, k: int) -> int:
    """Closed form of the move sign: parity of same-block inversions.

    Count the pairs of the word (i, j, k) that are out of order and live in
    the same index block ({1,2,3} or {4,5,6}); the sign is -1 for an odd
    count.  `calibrate_eps` recovers exactly this table from tau data; the
    closed form is kept so the calibration has something to be checked
    against.
    """
    word = (i, j, k)
    inversions = 0
    for a in range(3):
        for b in range(a + 1, 3):
            x, y = word[a], word[b]
            if (x <= 3) == (y <= 3) and y < x:
                inversions += 1
    return -1 if inversions % 2 else 1


def _table_tau(table: TauTable, six) -> LaurentPoly:
    point = LatticePoint(tuple(six))
    return table.get(point).T


def miwa_first_residual(table: TauTable, base, ell: int) -> LaurentPoly:
    """Six-point residual with one index ell in 4..6; base is a raw 6-vector
    whose entries sum to -2."""
    if not 4 <= ell <= 6:
        raise ValueError(f"ell must lie in 4..6, got {ell}")
    b = tuple(base)

    def at(*idxs):
        shifted = list(b)
        for i in idxs:
            shifted[i - 1] += 1
        return _table_tau(table, shifted)

    return at(2, 3) * at(1, ell) - at(1, 3) * at(2, ell) + at(1, 2) * at(3, ell)


def miwa_second_residual(table: TauTable, base, k: int, ell: int, i: int, j: int) -> LaurentPoly:
    """Six-point residual with k != ell in 1..3 and i != j in 4..6."""
    if not (1 <= k <= 3 and 1 <= ell <= 3 and k != ell):
        raise ValueError(f"need distinct k, ell in 1..3, got ({k},{ell})")
    if not (4 <= i <= 6 and 4 <= j <= 6 and i != j):
        raise ValueError(f"need distinct i, j in 4..6, got ({i},{j})")
    b = tuple(base)

    def at(*idxs):
        shifted = list(b)
        for idx in idxs:
            shifted[idx - 1] += 1
        return _table_tau(table, shifted)

    return (
        eps_pair(k, ell) * at(ell, i) * at(k, j)
        + eps_pair(ell, k) * at(k, i) * at(ell, j)
        + eps_pair(j - 3, i - 3) * at(k, ell) * at(i, j)
    )


def miwa_residuals(table: TauTable, base, indices) -> tuple[LaurentPoly, LaurentPoly]:
    """Both six-point residuals at one index choice (k, ell, i, j).

    The first identity depends only on (base, i); the second on all four.
    """
    k, ell, i, j = indices
    return (
        miwa_first_residual(table, base, i),
        miwa_second_residual(table, base, k, ell, i, j),
    )


# ---------------------------------------------------------------------------
# sigma functions and the quadratic second-order residual
# ---------------------------------------------------------------------------

def sigma_of(tau: TauT) -> SigmaFn:
    """sigma = t(t-1) T'/T + c5 (t-1) - c6/2, as a reduced rational function."""
    if tau.T.is_zero():
        raise ZeroTau(f"no sigma at {tau.point}: tau is zero")
    m, P = tau.T.split()
    c5, c6 = c5_c6(tau.point)
    t = UniPoly.t()
    linear = (t - 1) * (as_scalar(m) + c5) - UniPoly.constant(c6 / 2)
    num = t * (t - 1) * P.derivative() + linear * P
    return SigmaFn(tau.point, RationalFunction(num, P))


def v_of_point(p: LatticePoint) -> VQuad:
    a = p.alpha
    half_sum = Fraction(a[0] + a[2], 2)
    return VQuad(
        half_sum + a[3],
        half_sum + a[4],
        half_sum + a[5],
        Fraction(a[0] - a[2], 2),
    )


def via_params(v: VQuad) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Painleve VI coefficients (alpha, beta, gamma, delta) from the v quadruple."""
    alpha = Fraction((v.v3 - v.v4) ** 2, 2)
    beta = -Fraction((v.v1 + v.v2) ** 2, 2)
    gamma = Fraction((v.v1 - v.v2) ** 2, 2)
    delta = Fraction(1 - (v.v3 + v.v4 + 1) ** 2, 2)
    return alpha, beta, gamma, delta


def jmo_residual_with_v(sigma: RationalFunction, v: VQuad) -> RationalFunction:
    """Residual of the second-order quadratic sigma equation for given v.

    sigma'(t(t-1) sigma'')^2 + (sigma'[2 sigma - (2t-1) sigma'] + v1v2v3v4)^2
    - prod_k (sigma' + v_k^2), cleared over the common denominator D^8.
    """
    N, D = sigma.num, sigma.den
    A = N.derivative() * D - N * D.derivative()          # sigma' = A / D^2
    B = A.derivative() * D - 2 * A * D.derivative()      # sigma'' = B / D^3
    t = UniPoly.t()
    tt1 = t * (t - 1)
    two_t_minus_1 = UniPoly((-1, 2))
    c = v.product()
    D2 = D * D
    D4 = D2 * D2
    middle = 2 * A * N * D - two_t_minus_1 * (A * A) + c * D4
    lhs = tt1 * tt1 * A * (B * B) + middle * middle
    rhs = UniPoly.constant(1)
    for vk in v.as_tuple():
        rhs = rhs * (A + (vk * vk) * D2)
    return RationalFunction(lhs - rhs, D4 * D4)


def jmo_residual(s: SigmaFn) -> RationalFunction:
    """Residual of the sigma equation at s.point's own v quadruple."""
    return jmo_residual_with_v(s.sigma, v_of_point(s.point))


# ---------------------------------------------------------------------------
# sigma-level relation for a move
# ---------------------------------------------------------------------------

def sigma_backlund_residual(s_a: SigmaFn, s_ik: SigmaFn, s_ij: SigmaFn,
                            s_jk: SigmaFn, m: MoveIJK) -> RationalFunction:
    """Denominator-free residual of the sigma-level relation:

    (sij + sjk - sik - sa - G) * K - t(t-1) * K',  K = sa - sik + H.

    Zero iff the relation holds; the log derivative never appears as such.
    """
    base = s_a.point
    expect = (
        (s_ik, base + move_vector(m.i, m.k)),
        (s_ij, base + move_vector(m.i, m.j)),
        (s_jk, base + move_vector(m.j, m.k)),
    )
    for s, point in expect:
        if s.point != point:
            raise ConfigurationMismatch(
                f"sigma at {s.point} does not sit at {point} for move {m}"
            )
    G, H = big_GH(base, m)
    K = s_a.sigma - s_ik.sigma + RationalFunction(H)
    if K.is_zero():
        raise DegenerateK(f"K vanishes for move {m} at {base}")
    t = UniPoly.t()
    lhs = s_ij.sigma + s_jk.sigma - s_ik.sigma - s_a.sigma - RationalFunction(G)
    return lhs * K - RationalFunction(t * (t - 1)) * K.derivative()


# ---------------------------------------------------------------------------
# sign calibration
# ---------------------------------------------------------------------------

def iter_move_configurations(table: TauTable, m: MoveIJK):
    """All (Ta, Tik, Tij, Tjk) quadruples of the move fully inside the table."""
    vi_k = move_vector(m.i, m.k)
    vi_j = move_vector(m.i, m.j)
    vj_k = move_vector(m.j, m.k)
    for base in table.points():
        try:
            yield (
                table.get(base),
                table.get(base + vi_k),
                table.get(base + vi_j),
                table.get(base + vj_k),
            )
        except MissingTau:
            continue


def calibrate_eps(table: TauTable) -> EpsTable:
    """Determine, per move, the unique sign making the bilinear relation hold.

    The sign must be the same for every base point; a point-dependent sign or
    an unmatchable configuration raises NoConsistentSign, an uninformative
    table (no configuration with a nonzero right side) InsufficientData.
    """
    signs: dict[tuple[int, int, int], int] = {}
    for m in all_moves():
        sign = None
        for t_a, t_ik, t_ij, t_jk in iter_move_configurations(table, m):
            lhs = bilinear_combination(t_a, t_ik, m)
            rhs = t_ij.T * t_jk.T
            if rhs.is_zero():
                if not lhs.is_zero():
                    raise NoConsistentSign(
                        f"move {m} at {t_a.point}: left side nonzero, product zero"
                    )
                continue
            if lhs == rhs:
                found = 1
            elif lhs == -rhs:
                found = -1
            else:
                raise NoConsistentSign(f"move {m} at {t_a.point}: no sign matches")
            if sign is None:
                sign = found
            elif sign != found:
                raise NoConsistentSign(f"move {m}: sign depends on the base point")
        if sign is None:
            raise InsufficientData(f"no informative configuration for move {m}")
        signs[(m.i, m.j, m.k)] = sign
    return EpsTable(signs)
