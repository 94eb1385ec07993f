"""The correspondence between the 6-index lattice and the F4(1) root lattice.

Lattice points map linearly onto 5-vectors (v0, v1..v4) whose last four
entries are all integers or all half-odd-integers; the images of the moves
d_i - d_j (j <= 3) are, up to translations by e0, the short roots.  The
executable content: the simple-root dictionary, the three short-root sets
with their validation, single sigma steps and Toda steps driven from the
A5-side engine, and the symmetry actions (parameter permutations with even
sign flips, and the frame/time relabelings inducing Moebius maps of t).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .backlund import SigmaFn, VQuad, big_GH, toda_product
from .exactalg import RationalFunction, UniPoly, as_scalar
from .grassmann import TauT, TauTable
from .lattice import E0_VECTOR, LatticePoint, MoveIJK, move_vector, r_weight


class OddSignCount(ValueError):
    """A parameter symmetry was requested with an odd number of sign flips."""


class ValidationFailure(AssertionError):
    """A short-root set failed its defining checks."""


class MissingPreimage(KeyError):
    """An F4 vector arrived without its 6-index preimage."""


@dataclass(frozen=True)
class F4Vector:
    """Point of the affine lattice: integer v0, v1..v4 all integral or all
    half-odd-integral."""

    v0: int
    v: tuple[Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self):
        vs = tuple(as_scalar(x) for x in self.v)
        if any(x.denominator not in (1, 2) for x in vs):
            raise ValueError(f"entries {vs} are not integers or half-integers")
        denoms = {x.denominator for x in vs}
        if len(denoms) != 1:
            raise ValueError(f"entries {vs} mix integers and half-odd-integers")
        object.__setattr__(self, "v", vs)
        object.__setattr__(self, "v0", int(self.v0))

    def __add__(self, other: "F4Vector") -> "F4Vector":
        return F4Vector(self.v0 + other.v0,
                        tuple(a + b for a, b in zip(self.v, other.v)))

    def __sub__(self, other: "F4Vector") -> "F4Vector":
        return F4Vector(self.v0 - other.v0,
                        tuple(a - b for a, b in zip(self.v, other.v)))

    def __neg__(self) -> "F4Vector":
        return F4Vector(-self.v0, tuple(-a for a in self.v))

    def finite_norm(self) -> Fraction:
        """Squared length of (v1..v4); the v0 direction is null."""
        return sum(x * x for x in self.v)

    def to_json(self) -> list:
        return [self.v0] + [str(x) for x in self.v]

    @classmethod
    def from_json(cls, data) -> "F4Vector":
        return cls(int(data[0]), tuple(as_scalar(x) for x in data[1:]))

    def __str__(self):
        return f"({self.v0}; " + ", ".join(str(x) for x in self.v) + ")"


def a5_to_f4(p: LatticePoint) -> F4Vector:
    """v0 = a1, v_i = (a1+a3)/2 + a_{3+i}, v4 = (a1-a3)/2."""
    a = p.alpha
    half_sum = Fraction(a[0] + a[2], 2)
    return F4Vector(
        a[0],
        (half_sum + a[3], half_sum + a[4], half_sum + a[5], Fraction(a[0] - a[2], 2)),
    )


def e0_in_a5() -> LatticePoint:
    """The preimage (1,1,1,-1,-1,-1) of the null direction e0."""
    return E0_VECTOR


E0_F4 = F4Vector(1, (0, 0, 0, 0))


def basis_e(k: int) -> F4Vector:
    """e_k for k = 0..4."""
    if k == 0:
        return E0_F4
    return F4Vector(0, tuple(Fraction(1 if i == k else 0) for i in range(1, 5)))


# ---------------------------------------------------------------------------
# simple roots and short-root sets
# ---------------------------------------------------------------------------

def _comb(*terms) -> F4Vector:
    """Linear combination of (coefficient, e-index) pairs."""
    v0 = Fraction(0)
    v = [Fraction(0)] * 4
    for coeff, k in terms:
        c = as_scalar(coeff)
        e = basis_e(k)
        v0 += c * e.v0
        for i in range(4):
            v[i] += c * e.v[i]
    return F4Vector(int(v0), tuple(v))


SIMPLE_ROOT_TABLE: tuple[tuple[F4Vector, LatticePoint], ...] = (
    (_comb((1, 0), (-1, 1), (-1, 2)), LatticePoint((1, 3, 1, -2, -2, -1))),
    (_comb((1, 2), (-1, 3)), LatticePoint((0, 0, 0, 0, 1, -1))),
    (_comb((1, 3), (-1, 4)), LatticePoint((0, 0, 2, -1, -1, 0))),
    (_comb((1, 4)), LatticePoint((0, -1, -2, 1, 1, 1))),
    (
        _comb((Fraction(1, 2), 1), (Fraction(-1, 2), 2), (Fraction(-1, 2), 3), (Fraction(-1, 2), 4)),
        LatticePoint((0, 1, 1, 0, -1, -1)),
    ),
)


def simple_roots_check() -> list[dict]:
    """Verify each tabulated simple root against the image of its preimage."""
    report = []
    for target, preimage in SIMPLE_ROOT_TABLE:
        image = a5_to_f4(preimage)
        report.append(
            {
                "root": target.to_json(),
                "preimage": preimage.to_json(),
                "image": image.to_json(),
                "match": image == target,
            }
        )
    return report


@dataclass(frozen=True)
class ShortRootSet:
    """One of the three five-element short-root sets, with its move preimages."""

    label: int
    elements: tuple[F4Vector, ...]
    preimages: tuple[LatticePoint, ...]


def short_sets() -> tuple[ShortRootSet, ShortRootSet, ShortRootSet]:
    """The sets S1, S2, S3: images of the moves with fixed middle index.

    S_j collects the five images of d_i - d_j (i != j); S1 is listed with the
    opposite overall sign (images of d_1 - d_i), matching how the union of
    +-S_j covers all short roots.  Each element is validated to have squared
    length 1 after dropping the null component and to be the image of a move,
    up to a translation by e0.
    """
    sets = []
    for label, orient in ((1, -1), (2, 1), (3, 1)):
        elems = []
        pres = []
        for i in range(1, 7):
            if i == label:
                continue
            move = move_vector(i, label) if orient == 1 else move_vector(label, i)
            pres.append(move)
            elems.append(a5_to_f4(move))
        sets.append(ShortRootSet(label, tuple(elems), tuple(pres)))
    for s in sets:
        for vec, pre in zip(s.elements, s.preimages):
            if vec.finite_norm() != 1:
                raise ValidationFailure(f"{vec} in S{s.label} is not short")
            stripped = F4Vector(0, vec.v)
            matched = False
            for i, j in itertools.permutations(range(1, 7), 2):
                if j > 3:
                    continue
                img = a5_to_f4(move_vector(i, j))
                for sign in (1, -1):
                    cand = img if sign == 1 else -img
                    if F4Vector(0, cand.v) == stripped and (cand.v0 - vec.v0) == 0:
                        matched = True
            if not matched:
                raise ValidationFailure(f"{vec} is not a move image up to e0 shifts")
    return tuple(sets)


# ---------------------------------------------------------------------------
# propositions as executable steps
# ---------------------------------------------------------------------------

def _find_move_labels(base: LatticePoint, p_ik: LatticePoint, p_ij: LatticePoint,
                      p_jk: LatticePoint) -> MoveIJK:
    """Recover (i, j, k) from the four points of a move configuration."""
    d_ij = tuple(a - b for a, b in zip(p_ij.alpha, base.alpha))
    d_jk = tuple(a - b for a, b in zip(p_jk.alpha, base.alpha))
    try:
        i = d_ij.index(1) + 1
        j = d_ij.index(-1) + 1
        j2 = d_jk.index(1) + 1
        k = d_jk.index(-1) + 1
    except ValueError as exc:
        raise MissingPreimage(f"points around {base} are not a move square") from exc
    if j != j2 or sorted(d_ij, reverse=True) != [1, 0, 0, 0, 0, -1]:
        raise MissingPreimage(f"points around {base} are not a move square")
    move = MoveIJK(i, j, k)
    if p_ik != base + move_vector(i, k):
        raise MissingPreimage(f"points around {base} are not a move square")
    return move


def sigma_step(known: tuple[SigmaFn, SigmaFn, SigmaFn], j: int,
               gamma1: F4Vector, gamma2: F4Vector,
               gamma1_pre: LatticePoint, gamma2_pre: LatticePoint) -> SigmaFn:
    """Produce the fourth sigma of a short-root step from the three known ones.

    `known` holds sigma at beta, beta + gamma1 - gamma2, and either
    beta - gamma2 (then sigma at beta + gamma1 is computed) or beta + gamma1
    (then beta - gamma2 is computed); gamma1, gamma2 are drawn from the same
    S_j, and their 6-index preimages fix the move square the relation is
    solved on.
    """
    s_beta, s_mid, s_third = known
    sets = short_sets()
    s_j = sets[j - 1]
    for gamma, pre in ((gamma1, gamma1_pre), (gamma2, gamma2_pre)):
        if gamma not in s_j.elements:
            raise ValueError(f"{gamma} does not lie in S{j}")
        if a5_to_f4(pre) != gamma:
            raise MissingPreimage(f"{pre} is not a preimage of {gamma}")
    expect_mid = s_beta.point + gamma1_pre - gamma2_pre
    if s_mid.point != expect_mid:
        raise MissingPreimage("second sigma does not sit at beta+g1-g2")
    if s_third.point == s_beta.point - gamma2_pre:
        target_point = s_beta.point + gamma1_pre
    elif s_third.point == s_beta.point + gamma1_pre:
        target_point = s_beta.point - gamma2_pre
    else:
        raise MissingPreimage("third sigma sits at neither beta-g2 nor beta+g1")
    points = {
        s_beta.point: s_beta,
        s_mid.point: s_mid,
        s_third.point: s_third,
    }
    # locate the move square among the four points
    quad = [s_beta.point, expect_mid,
            s_beta.point + gamma1_pre, s_beta.point - gamma2_pre]
    for base, ik in itertools.permutations(quad, 2):
        diff = tuple(a - b for a, b in zip(ik.alpha, base.alpha))
        if sorted(diff, reverse=True) != [1, 0, 0, 0, 0, -1]:
            continue
        rest = [q for q in quad if q not in (base, ik)]
        for p_ij, p_jk in itertools.permutations(rest, 2):
            try:
                move = _find_move_labels(base, ik, p_ij, p_jk)
            except MissingPreimage:
                continue
            if move.j != j:
                continue
            if base not in points or ik not in points:
                continue
            known_of = {pt: points[pt] for pt in (base, ik) if pt in points}
            unknown_slot = "ij" if p_ij == target_point else ("jk" if p_jk == target_point else None)
            if unknown_slot is None:
                continue
            other = p_jk if unknown_slot == "ij" else p_ij
            if other not in points:
                continue
            return _solve_sigma(points[base], points[ik], points[other], move, target_point)
    raise MissingPreimage("no move square fits the step")


def _solve_sigma(s_a: SigmaFn, s_ik: SigmaFn, s_known: SigmaFn, m: MoveIJK,
                 target: LatticePoint) -> SigmaFn:
    from .backlund import DegenerateK

    G, H = big_GH(s_a.point, m)
    K = s_a.sigma - s_ik.sigma + RationalFunction(H)
    if K.is_zero():
        raise DegenerateK(f"K vanishes for move {m} at {s_a.point}")
    t = UniPoly.t()
    log_term = RationalFunction(t * (t - 1)) * K.derivative() / K
    total = s_a.sigma + s_ik.sigma + RationalFunction(G) + log_term
    return SigmaFn(target, total - s_known.sigma)


# Toda steps: the three admissible gamma vectors and their neighbor pairs.
TODA_GAMMAS: tuple[tuple[F4Vector, tuple[int, int]], ...] = (
    (a5_to_f4(move_vector(1, 2)), (1, 2)),
    (a5_to_f4(move_vector(3, 2)), (2, 3)),
    (a5_to_f4(move_vector(1, 3)), (1, 3)),
)


def toda_gamma_table() -> list[dict]:
    """Images of the six charge moves, recording which Toda line each drives."""
    out = []
    for a, b in ((1, 2), (1, 3), (2, 3)):
        for sign in (1, -1):
            move = move_vector(a, b) if sign == 1 else move_vector(b, a)
            out.append({
                "move": move.to_json(),
                "image": a5_to_f4(move).to_json(),
                "pair": [a, b],
            })
    return out


def toda_step_f4(t_beta: TauT, t_known: TauT, gamma: F4Vector) -> TauT:
    """Given tau at beta and at beta +- gamma, produce tau at beta -+ gamma.

    gamma must be one of the three tabulated short vectors; the step divides
    the Toda product at beta by the known neighbor, exactly.
    """
    for vec, pair in TODA_GAMMAS:
        if gamma in (vec, -vec):
            break
    else:
        raise ValueError(f"{gamma} is not one of the Toda step vectors")
    if t_beta.is_zero():
        raise ZeroDivisionError("Toda step needs a nonzero center tau")
    a, b = pair
    v = move_vector(a, b)
    if t_known.point == t_beta.point + v:
        target = t_beta.point - v
    elif t_known.point == t_beta.point - v:
        target = t_beta.point + v
    else:
        raise MissingPreimage(f"{t_known.point} is not a {pair} neighbor of {t_beta.point}")
    product = toda_product(t_beta, pair)
    quotient = product.exact_divide(t_known.T)
    return TauT(target, quotient, r_weight(target))


# ---------------------------------------------------------------------------
# symmetry actions
# ---------------------------------------------------------------------------

def d4_action(v: VQuad, perm: tuple[int, int, int, int], signs: tuple[int, int, int, int]) -> VQuad:
    """Permute the four parameters and flip an even number of signs."""
    if sorted(perm) != [0, 1, 2, 3]:
        raise ValueError(f"{perm} is not a permutation of 0..3")
    if any(s not in (1, -1) for s in signs):
        raise ValueError("signs must be +-1")
    if signs.count(-1) % 2:
        raise OddSignCount(f"odd number of sign flips in {signs}")
    vs = v.as_tuple()
    new = tuple(signs[i] * vs[perm[i]] for i in range(4))
    return VQuad(*new)


PERMUTATION_T_MAPS = {
    (0, 1, 2): "t",
    (1, 0, 2): "t/(t-1)",
    (2, 1, 0): "1-t",
    (0, 2, 1): "1/t",
    (1, 2, 0): "(t-1)/t",
    (2, 0, 1): "1/(1-t)",
}


def permute_point(p: LatticePoint, perm: tuple[int, int, int]) -> LatticePoint:
    """Permute charge and mu parts simultaneously: entry a of the new point
    is entry perm[a] of the old one, per block."""
    a = p.alpha
    return LatticePoint(
        tuple(a[perm[i]] for i in range(3)) + tuple(a[3 + perm[i]] for i in range(3))
    )


def component_permute(perm: tuple[int, int, int], table: TauTable):
    """Tau table for the relabeled frame, with the per-point comparison signs.

    The frame rows and columns are relabeled together by perm, every lattice
    point has charge and mu parts permuted, and the tau polynomials in the
    relabeled times satisfy tau'(x o perm) = +- tau(x); the t-level relation
    follows through the induced Moebius map of t, which is also reported.
    """
    if table.frame is None:
        raise ValueError("table carries no frame")
    new_frame = table.frame.permuted(perm)
    new_table = TauTable(new_frame, radius=table.radius)
    signs: dict[LatticePoint, int | None] = {}
    from .grassmann import tau_in_x

    inverse = tuple(perm.index(a) for a in range(3))
    for p in table.points():
        q = permute_point(p, perm)
        new_table.entries[q] = new_table.tau(q)
        # compare at the level of the three first times: the new table's
        # variable a is the old variable perm[a]
        tp_old = tau_in_x(p.mu, p.charge, table.frame)
        tp_new = tau_in_x(q.mu, q.charge, new_frame)
        permuted = tp_new.poly.permute_vars(inverse)
        if tp_old.poly.is_zero():
            signs[p] = None if permuted.is_zero() else 0
        elif permuted == tp_old.poly:
            signs[p] = 1
        elif permuted == -tp_old.poly:
            signs[p] = -1
        else:
            signs[p] = 0
    t_map = PERMUTATION_T_MAPS[tuple(perm)]
    return new_table, signs, t_map
