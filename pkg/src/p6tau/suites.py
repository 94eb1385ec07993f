"""Identity suites over a tau table, shared by the CLI and the test suite.

Each suite sweeps every admissible configuration inside the table, checks an
exact residual, and reports the configurations that fail (with the term count
of the offending residual).  A table passes a suite iff the failure list is
empty; nothing is tolerance-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .backlund import (
    DegenerateK,
    InsufficientData,
    NoConsistentSign,
    TODA_PAIRS,
    bilinear_residual,
    calibrate_eps,
    eps_block_inversions,
    iter_move_configurations,
    jmo_residual,
    jmo_residual_with_v,
    miwa_first_residual,
    miwa_second_residual,
    sigma_backlund_residual,
    sigma_of,
    solve_fourth,
    toda_neighbors,
    toda_product,
    v_of_point,
)
from .exactalg import LaurentPoly, RationalFunction, UniPoly
from .f4 import (
    TODA_GAMMAS,
    a5_to_f4,
    component_permute,
    d4_action,
    short_sets,
    sigma_step,
    simple_roots_check,
    toda_step_f4,
)
from .grassmann import MissingTau, TauT, TauTable, tau_in_x
from .lattice import LatticePoint, all_moves, ball, e0_translate, move_vector


@dataclass
class SuiteReport:
    name: str
    checks: int = 0
    failures: list = field(default_factory=list)
    configurations: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, terms: int = 0, **labels):
        self.checks += 1
        entry = {**labels, "ok": bool(ok)}
        if not ok:
            entry["terms"] = terms
            self.failures.append(entry)
        self.configurations.append(entry)

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "checks": self.checks,
            "passed": self.passed,
            "failures": self.failures,
            "configurations": self.configurations,
            "notes": self.notes,
        }


def _terms(poly) -> int:
    if isinstance(poly, LaurentPoly):
        return sum(1 for c in poly.coeffs if c != 0)
    if isinstance(poly, RationalFunction):
        return sum(1 for c in poly.num.coeffs if c != 0)
    return 0


# ---------------------------------------------------------------------------
# construction-level suites
# ---------------------------------------------------------------------------

def suite_vacuum_charge(table: TauTable) -> SuiteReport:
    """Vacuum normalization and the charge selection rule on every family."""
    rep = SuiteReport("vacuum-charge")
    origin = LatticePoint((0, 0, 0, 0, 0, 0))
    vac = table.tau(origin)
    rep.record(vac.T == LaurentPoly.constant(1), _terms(vac.T - 1), check="vacuum")
    from .grassmann import expand_wedge

    for mu in sorted({p.mu for p in table.points()}):
        for term in expand_wedge(mu, table.frame):
            if sum(term.charges) + sum(mu) != 0:
                rep.record(False, 1, check="charge-selection", mu=list(mu),
                           charges=list(term.charges))
        rep.record(True, check="charge-selection", mu=list(mu))
        # a mismatched charge sector is identically zero
        off = tuple(-m for m in mu)
        off = (off[0] + 1, off[1], off[2])
        tp = tau_in_x(mu, off, table.frame)
        rep.record(tp.poly.is_zero(), len(tp.poly.terms), check="off-charge-zero",
                   mu=list(mu))
    return rep


def _euler_identity_holds(poly, weight: int) -> bool:
    """sum_a x_a d(poly)/dx_a == weight * poly, exactly."""
    from .exactalg import TriPoly

    acc = TriPoly.zero()
    for axis in range(3):
        part = poly.partial(axis)
        lifted = TriPoly()
        for key, val in part.terms.items():
            nk = list(key)
            nk[axis] += 1
            lifted.terms[tuple(nk)] = val
        acc = acc + lifted
    return acc == weight * poly


def suite_homogeneity(table: TauTable) -> SuiteReport:
    """Euler identity and translation invariance of every charge sector."""
    rep = SuiteReport("homogeneity")
    for p in table.points():
        tp = tau_in_x(p.mu, p.charge, table.frame)
        if tp.poly.is_zero():
            continue
        euler = _euler_identity_holds(tp.poly, tp.weight)
        rep.record(euler, 0 if euler else 1, check="euler", point=p.to_json())
        gradient = tp.poly.partial(0) + tp.poly.partial(1) + tp.poly.partial(2)
        rep.record(gradient.is_zero(), len(gradient.terms), check="translation-invariance",
                   point=p.to_json())
    return rep


# ---------------------------------------------------------------------------
# identity suites
# ---------------------------------------------------------------------------

def suite_toda(table: TauTable) -> SuiteReport:
    rep = SuiteReport("toda")
    for p in table.points():
        tau = table.get(p)
        for pair in TODA_PAIRS:
            plus, minus = toda_neighbors(p, pair)
            try:
                t_plus, t_minus = table.get(plus), table.get(minus)
            except MissingTau:
                continue
            residual = toda_product(tau, pair) - t_plus.T * t_minus.T
            rep.record(residual.is_zero(), _terms(residual),
                       point=p.to_json(), pair=list(pair))
    return rep


def suite_bilinear(table: TauTable) -> SuiteReport:
    rep = SuiteReport("bilinear")
    try:
        eps = calibrate_eps(table)
    except (NoConsistentSign, InsufficientData) as exc:
        rep.record(False, 1, check="calibration", error=str(exc))
        return rep
    rep.notes["eps_table"] = eps.to_json()
    formula_matches = all(
        eps[(m.i, m.j, m.k)] == eps_block_inversions(m.i, m.j, m.k) for m in all_moves()
    )
    rep.notes["eps_matches_closed_form"] = formula_matches
    for m in all_moves():
        sign = eps[(m.i, m.j, m.k)]
        for t_a, t_ik, t_ij, t_jk in iter_move_configurations(table, m):
            residual = bilinear_residual(t_a, t_ik, t_ij, t_jk, m, sign)
            rep.record(residual.is_zero(), _terms(residual),
                       move=[m.i, m.j, m.k], base=t_a.point.to_json())
            if not t_ij.is_zero():
                solved = solve_fourth(t_a, t_ik, t_ij, m, sign)
                rep.record(solved.T == t_jk.T, _terms(solved.T - t_jk.T),
                           check="solve-fourth", move=[m.i, m.j, m.k],
                           base=t_a.point.to_json())
    if not formula_matches:
        rep.record(False, 0, check="eps-closed-form")
    return rep


def miwa_bases(table: TauTable):
    """Candidate 6-vectors beta (entries summing to -2) near the table."""
    seen = set()
    for p in table.points():
        for da in range(1, 7):
            for db in range(da + 1, 7):
                base = list(p.alpha)
                base[da - 1] -= 1
                base[db - 1] -= 1
                seen.add(tuple(base))
    return sorted(seen)


def suite_miwa(table: TauTable) -> SuiteReport:
    rep = SuiteReport("miwa")
    for base in miwa_bases(table):
        for ell in (4, 5, 6):
            try:
                res = miwa_first_residual(table, base, ell)
            except MissingTau:
                continue
            rep.record(res.is_zero(), _terms(res), identity=1, base=list(base), ell=ell)
        for k, ell in itertools.permutations((1, 2, 3), 2):
            for i, j in itertools.permutations((4, 5, 6), 2):
                try:
                    res = miwa_second_residual(table, base, k, ell, i, j)
                except MissingTau:
                    continue
                rep.record(res.is_zero(), _terms(res), identity=2, base=list(base),
                           indices=[k, ell, i, j])
    return rep


def suite_translation(table: TauTable, radius: int = 1) -> SuiteReport:
    rep = SuiteReport("translation")
    for p in ball(radius):
        q, sign = e0_translate(p)
        residual = table.tau(p).T - sign * table.tau(q).T
        rep.record(residual.is_zero(), _terms(residual), point=p.to_json())
    return rep


def suite_jmo(table: TauTable) -> SuiteReport:
    rep = SuiteReport("jmo")
    for p in table.nonzero_points():
        res = jmo_residual(sigma_of(table.get(p)))
        rep.record(res.is_zero(), _terms(res), point=p.to_json())
    return rep


def suite_sigma_backlund(table: TauTable) -> SuiteReport:
    rep = SuiteReport("sigma-backlund")
    degenerate = 0
    for m in all_moves():
        sign = eps_block_inversions(m.i, m.j, m.k)
        for t_a, t_ik, t_ij, t_jk in iter_move_configurations(table, m):
            if any(t.is_zero() for t in (t_a, t_ik, t_ij, t_jk)):
                continue
            s = tuple(sigma_of(t) for t in (t_a, t_ik, t_ij, t_jk))
            try:
                res = sigma_backlund_residual(*s, m)
            except DegenerateK:
                degenerate += 1
                continue
            rep.record(res.is_zero(), _terms(res), move=[m.i, m.j, m.k],
                       base=t_a.point.to_json())
            # implication: the bilinear residual vanishes on the same square
            bil = bilinear_residual(t_a, t_ik, t_ij, t_jk, m, sign)
            rep.record(bil.is_zero() and res.is_zero(), _terms(res),
                       check="implication", move=[m.i, m.j, m.k],
                       base=t_a.point.to_json())
    rep.notes["degenerate_K"] = degenerate
    return rep


# ---------------------------------------------------------------------------
# correspondence and symmetry suites
# ---------------------------------------------------------------------------

def suite_f4(table: TauTable) -> SuiteReport:
    rep = SuiteReport("f4")
    for p in table.points():
        try:
            a5_to_f4(p)
            ok = True
        except ValueError:
            ok = False
        rep.record(ok, 0 if ok else 1, check="membership", point=p.to_json())
    roots = simple_roots_check()
    rep.notes["simple_roots"] = roots
    for row in roots:
        rep.record(row["match"], 0 if row["match"] else 1, check="simple-root",
                   root=row["root"])
    try:
        sets = short_sets()
        rep.record(True, check="short-sets")
    except Exception:
        rep.record(False, 1, check="short-sets")
        return rep
    rep.notes["toda_gamma_pairs"] = [
        {"gamma": vec.to_json(), "pair": list(pair)} for vec, pair in TODA_GAMMAS
    ]
    # Toda steps round-trip
    for vec, pair in TODA_GAMMAS:
        a, b = pair
        v = move_vector(a, b)
        for p in table.points():
            t_beta = table.get(p)
            if t_beta.is_zero():
                continue
            try:
                t_plus, t_minus = table.get(p + v), table.get(p - v)
            except MissingTau:
                continue
            if t_plus.is_zero():
                continue
            stepped = toda_step_f4(t_beta, t_plus, vec)
            rep.record(stepped.T == t_minus.T, _terms(stepped.T - t_minus.T),
                       check="toda-step", point=p.to_json(), pair=list(pair))
    # sigma steps round-trip
    for s_set in sets:
        combos = list(zip(s_set.elements, s_set.preimages))
        for (g1, p1), (g2, p2) in itertools.permutations(combos, 2):
            for p in table.points():
                try:
                    t_b = table.get(p)
                    t_mid = table.get(p + p1 - p2)
                    t_minus = table.get(p - p2)
                    t_target = table.get(p + p1)
                except MissingTau:
                    continue
                if any(t.is_zero() for t in (t_b, t_mid, t_minus, t_target)):
                    continue
                try:
                    got = sigma_step(
                        (sigma_of(t_b), sigma_of(t_mid), sigma_of(t_minus)),
                        s_set.label, g1, g2, p1, p2,
                    )
                except DegenerateK:
                    continue
                want = sigma_of(t_target)
                rep.record(got.sigma == want.sigma,
                           _terms(got.sigma - want.sigma),
                           check="sigma-step", set=s_set.label,
                           point=p.to_json())
    return rep


D4_SAMPLES = (
    ((0, 1, 2, 3), (1, 1, 1, 1)),
    ((1, 0, 2, 3), (-1, -1, 1, 1)),
    ((3, 2, 1, 0), (1, -1, -1, 1)),
    ((2, 3, 0, 1), (-1, -1, -1, -1)),
    ((1, 2, 3, 0), (1, 1, 1, 1)),
)


def suite_symmetry(table: TauTable) -> SuiteReport:
    rep = SuiteReport("symmetry")
    t = UniPoly.t()
    for p in table.nonzero_points():
        v = v_of_point(p)
        sigma = sigma_of(table.get(p)).sigma
        probe = sigma + RationalFunction(t)  # nonzero residual probe
        base_res = jmo_residual_with_v(probe, v)
        for perm, signs in D4_SAMPLES:
            w = d4_action(v, perm, signs)
            squares_ok = sorted(x * x for x in w.as_tuple()) == sorted(
                x * x for x in v.as_tuple()
            )
            product_ok = w.product() == v.product()
            value_ok = jmo_residual_with_v(probe, w) == base_res
            rep.record(squares_ok and product_ok and value_ok,
                       0 if value_ok else _terms(base_res),
                       check="d4", point=p.to_json(), perm=list(perm),
                       signs=list(signs))
    # frame/time relabelings
    sub = TauTable(table.frame, radius=1)
    for q in ball(1):
        sub.entries[q] = table.tau(q)
    maps = {}
    for perm in itertools.permutations(range(3)):
        _, signs, t_map = component_permute(perm, sub)
        bad = [p.to_json() for p, s in signs.items() if s == 0]
        maps["".join(str(x + 1) for x in perm)] = t_map
        rep.record(not bad, len(bad), check="component-permute", perm=list(perm),
                   mismatches=bad)
    rep.notes["t_maps"] = maps
    # lattice translation
    for p in ball(1):
        q, sign = e0_translate(p)
        residual = table.tau(p).T - sign * table.tau(q).T
        rep.record(residual.is_zero(), _terms(residual), check="translation",
                   point=p.to_json())
    return rep


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

SUITES = {
    "toda": suite_toda,
    "bilinear": suite_bilinear,
    "miwa": suite_miwa,
    "jmo": suite_jmo,
    "sigma-backlund": suite_sigma_backlund,
    "f4": suite_f4,
    "symmetry": suite_symmetry,
}


def run_suites(table: TauTable, names) -> list[SuiteReport]:
    reports = []
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
        reports.append(SUITES[name](table))
    return reports


def perturb_table(table: TauTable, point: LatticePoint, bump=1) -> TauTable:
    """Copy of the table with one tau coefficient shifted (negative control)."""
    twisted = TauTable(table.frame, dict(table.entries), radius=table.radius)
    tau = twisted.get(point)
    bumped = tau.T + LaurentPoly.monomial(bump, tau.T.min_degree if not tau.T.is_zero() else 0)
    twisted.entries[point] = TauT(point, bumped, tau.weight)
    return twisted
