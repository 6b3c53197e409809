"""Reider-type decision procedure on a polarized threefold.

A nonzero class in ``H^1(K_X (x) L (x) I_Z)`` with ``Z`` of length ``alpha``
produces an extension ``O_X[1] -> E -> L (x) I_Z``.  The functions here
follow the numerical life of that object: its twisted Chern character, the
range of ``t`` where it must be unstable, the numerical type of a
destabilizing subobject and which hypothesis rules it out, and finally the
curve case together with the constants it yields for adjoint bundles.

All twisted quantities use ``B = L/2``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import chern
from .chern import (
    CurveClassData,
    General,
    NumClass,
    Points,
    PolarizedGeometry,
    Proportional,
    check_hodge,
    discriminant_L,
    ideal_sheaf_class,
    line_bundle_class,
    shift_negate,
    tensor_L,
    twisted,
)
from .errors import (
    NegativeTSquare,
    NonpositiveDegree,
    NonpositiveKappa,
    NonProportionalC1,
    UnknownC1Square,
    ZeroRank,
)
from .poly import Poly
from .rational import RationalLike, as_fraction
from .tilt import HALF

# f'(b0) * 3r / L.Delta, pinned against the finite-difference oracle in the tests
DERIVATIVE_CONSTANT = Fraction(1)


def _alpha(alpha) -> int:
    if isinstance(alpha, bool) or not isinstance(alpha, int) or alpha < 1:
        raise ValueError(f"alpha must be a positive integer, got {alpha!r}")
    return alpha


# -- the extension object -------------------------------------------------


def twisted_line_ideal(geom: PolarizedGeometry, alpha: int) -> NumClass:
    """``ch~(L (x) I_Z) = (1, L/2, L^2/8, L^3/48 - alpha)``."""
    return twisted(tensor_L(ideal_sheaf_class(geom, Points(alpha)), 1), HALF)


def twisted_shifted_structure_sheaf(geom: PolarizedGeometry) -> NumClass:
    """``ch~(O_X[1])``."""
    return twisted(shift_negate(line_bundle_class(geom, 0)), HALF)


def twisted_curve_ideal(geom: PolarizedGeometry, LC: RationalLike, ch3OC: RationalLike = 0) -> NumClass:
    """``ch~(L (x) I_C)``; only ``ch~_3`` depends on ``ch_3(O_C)``."""
    curve = CurveClassData(LC, ch3OC=ch3OC)
    return twisted(tensor_L(ideal_sheaf_class(geom, chern.Curve(curve)), 1), HALF)


def extension_class(geom: PolarizedGeometry, alpha: int) -> NumClass:
    """``ch~(E) = (0, L, 0, d/24 - alpha)`` at twist ``1/2``."""
    alpha = _alpha(alpha)
    e = chern.sum(twisted_line_ideal(geom, alpha), twisted_shifted_structure_sheaf(geom))
    closed = NumClass(0, Proportional(1), 0, Fraction(geom.d, 24) - alpha, geom, HALF)
    assert e == closed, (e, closed)
    return e


@dataclass(frozen=True)
class Threshold:
    t: Fraction


@dataclass(frozen=True)
class StableForAllSmallT:
    pass


def min_unstable_t(geom: PolarizedGeometry, alpha: int) -> Union[Threshold, StableForAllSmallT]:
    """Smallest ``t`` at which ``E`` still satisfies the strong BG inequality.

    ``d/24 - alpha <= t d / 3`` holds iff ``t >= 1/8 - 3 alpha / d``; below a
    positive threshold ``E`` cannot be semistable.
    """
    alpha = _alpha(alpha)
    if geom.d <= 24 * alpha:
        return StableForAllSmallT()
    return Threshold(Fraction(1, 8) - Fraction(3 * alpha, geom.d))


# -- conditions (A), (B), (C) ---------------------------------------------


@dataclass(frozen=True)
class VolumeCheck:
    holds: bool
    lhs: int
    rhs: int


@dataclass(frozen=True)
class DivisorCheck:
    divisor: General
    applicable: bool
    holds: bool


@dataclass(frozen=True)
class CurveCheck:
    curve: CurveClassData
    holds: bool


@dataclass(frozen=True)
class ConditionReport:
    alpha: int
    cond_A: VolumeCheck
    cond_B: tuple
    cond_C: tuple
    all_pass: bool
    note: str = "only the supplied divisor and curve classes were checked"


def check_conditions(
    geom: PolarizedGeometry,
    alpha: int,
    divisors: Sequence[General] = (),
    curves: Sequence[CurveClassData] = (),
) -> ConditionReport:
    """Audit ``L^3 > 49a``, ``L^2.D >= 7a`` and ``L.C >= 3a`` on the given candidates.

    (B) constrains integral ``D`` with ``L^2.D > 0`` and ``L.D^2 < alpha``;
    other divisors are reported as not applicable.
    """
    alpha = _alpha(alpha)
    cond_a = VolumeCheck(geom.d > 49 * alpha, geom.d, 49 * alpha)
    cond_b = []
    for i, div in enumerate(divisors):
        if div.q2 is None:
            raise UnknownC1Square(f"divisor {i} needs L.D^2")
        check_hodge(div, geom, index=i)
        applicable = div.integral and div.q1 > 0 and div.q2 < alpha
        cond_b.append(DivisorCheck(div, applicable, not applicable or div.q1 >= 7 * alpha))
    cond_c = tuple(CurveCheck(c, c.degLC >= 3 * alpha) for c in curves)
    all_pass = cond_a.holds and all(b.holds for b in cond_b) and all(c.holds for c in cond_c)
    return ConditionReport(alpha, cond_a, tuple(cond_b), cond_c, all_pass)


def reider_rhs(kappa: RationalLike, alpha: RationalLike) -> Fraction:
    """``12 alpha + (kappa^2 + 36 alpha^2) / kappa``."""
    kappa, alpha = as_fraction(kappa), as_fraction(alpha)
    if kappa <= 0:
        raise NonpositiveKappa(f"kappa must be positive, got {kappa}")
    return 12 * alpha + (kappa * kappa + 36 * alpha * alpha) / kappa


def reider_rhs_derivative(kappa: RationalLike, alpha: RationalLike) -> Fraction:
    """d/dkappa of :func:`reider_rhs`, i.e. ``(kappa^2 - 36 alpha^2) / kappa^2``."""
    kappa, alpha = as_fraction(kappa), as_fraction(alpha)
    if kappa <= 0:
        raise NonpositiveKappa(f"kappa must be positive, got {kappa}")
    return (kappa * kappa - 36 * alpha * alpha) / (kappa * kappa)


# -- destabilizing subobjects ---------------------------------------------


class VerdictKind(enum.Enum):
    INCONSISTENT_INPUT = "InconsistentInput"
    CONTRADICTS_VOLUME = "ContradictsVolume"
    EXCLUDED_BY_ASSUMPTION_B = "ExcludedByAssumptionB"
    CURVE_CASE = "CurveCase"
    NO_CONTRADICTION = "NoContradiction"


@dataclass(frozen=True)
class TraceStep:
    name: str
    lhs: Fraction
    relation: str
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return {
            "<=": self.lhs <= self.rhs,
            "<": self.lhs < self.rhs,
            ">=": self.lhs >= self.rhs,
            ">": self.lhs > self.rhs,
            "==": self.lhs == self.rhs,
        }[self.relation]


@dataclass(frozen=True)
class DestabilizerVerdict:
    kind: VerdictKind
    trace: tuple
    failed: tuple = ()
    bound: Optional[Fraction] = None
    note: str = ""


def classify_destabilizer(r: int, gamma: General, geom: PolarizedGeometry, alpha: int) -> DestabilizerVerdict:
    """Decide which hypothesis excludes a destabilizing factor of rank ``r``.

    ``gamma`` is ``Gamma = L - ch_1(U)/r`` through ``L^2.Gamma`` and
    ``L.Gamma^2``.  The candidate must satisfy

        (I)   L^2.Gamma <= L.Gamma^2 + 6 alpha
        (II)  (d/2)(1 - 1/r) <= L^2.Gamma < d/2

    and the Hodge index ``(L.Gamma^2) d <= (L^2.Gamma)^2``.  A Hodge failure
    is reported in the verdict rather than raised: when the volume bound is
    exceeded it is exactly the step where the chain breaks.
    """
    alpha = _alpha(alpha)
    if isinstance(r, bool) or not isinstance(r, int) or r < 1:
        raise ValueError(f"rank must be a positive integer, got {r!r}")
    if gamma.q2 is None:
        raise UnknownC1Square("classification needs L.Gamma^2")
    d = Fraction(geom.d)
    q1, q2 = gamma.q1, gamma.q2
    six_a = 6 * alpha

    step_i = TraceStep("(I) L^2.G <= L.G^2 + 6a", q1, "<=", q2 + six_a)
    step_ii_lo = TraceStep("(II) (d/2)(1 - 1/r) <= L^2.G", d / 2 * (1 - Fraction(1, r)), "<=", q1)
    step_ii_hi = TraceStep("(II) L^2.G < d/2", q1, "<", d / 2)
    step_hodge = TraceStep("Hodge (L.G^2) d <= (L^2.G)^2", q2 * d, "<=", q1 * q1)
    trace = [step_i, step_ii_lo, step_ii_hi]

    failed = []
    if not step_i.holds:
        failed.append("I")
    if not (step_ii_lo.holds and step_ii_hi.holds):
        failed.append("II")
    if failed:
        return DestabilizerVerdict(VerdictKind.INCONSISTENT_INPUT, tuple(trace), tuple(failed))

    if r > 1:
        trace += [
            TraceStep("d/4 <= (d/2)(1 - 1/r)", d / 4, "<=", d / 2 * (1 - Fraction(1, r))),
            step_hodge,
            TraceStep("L.G^2 <= 6a (Hodge with (I), (II))", q2, "<=", Fraction(six_a)),
            TraceStep("d/4 <= L.G^2 + 6a <= 12a", d / 4, "<=", Fraction(12 * alpha)),
        ]
        if d > 48 * alpha:
            return DestabilizerVerdict(
                VerdictKind.CONTRADICTS_VOLUME, tuple(trace), bound=Fraction(48 * alpha),
                note="a factor of rank > 1 forces d <= 48 alpha",
            )
        if not step_hodge.holds:
            return DestabilizerVerdict(VerdictKind.INCONSISTENT_INPUT, tuple(trace), ("Hodge",))
        return DestabilizerVerdict(
            VerdictKind.NO_CONTRADICTION, tuple(trace),
            note="d <= 48 alpha, so assumption (A) already fails",
        )

    if q1 == 0:
        trace.append(TraceStep("L^2.G == 0", q1, "==", Fraction(0)))
        return DestabilizerVerdict(
            VerdictKind.CURVE_CASE, tuple(trace),
            note=(
                "A = L (x) I_W with dim W <= 1; a zero-dimensional W has its wall at "
                "t0 = 1/8 by the twisted ch_2, so its exclusion is not asserted here"
            ),
        )

    kappa = q2
    if kappa >= alpha:
        rhs = reider_rhs(kappa, alpha)
        trace += [
            step_hodge,
            TraceStep("(L.G^2) d <= (L.G^2 + 6a)^2", kappa * d, "<=", (kappa + six_a) ** 2),
            TraceStep("d <= 12a + (k^2 + 36a^2)/k", d, "<=", rhs),
            TraceStep("12a + (k^2 + 36a^2)/k <= 49a for k >= a", rhs, "<=", Fraction(49 * alpha))
            if kappa <= six_a else
            TraceStep("k <= 6a", kappa, "<=", Fraction(six_a)),
        ]
        if d > rhs:
            return DestabilizerVerdict(VerdictKind.CONTRADICTS_VOLUME, tuple(trace), bound=rhs)
        if not step_hodge.holds:
            return DestabilizerVerdict(VerdictKind.INCONSISTENT_INPUT, tuple(trace), ("Hodge",))
        return DestabilizerVerdict(
            VerdictKind.NO_CONTRADICTION, tuple(trace),
            note="d is within the volume bound, so assumption (A) already fails",
        )

    if gamma.integral and q1 >= 1:
        trace += [
            TraceStep("k = L.G^2 < a", kappa, "<", Fraction(alpha)),
            TraceStep("L^2.G <= L.G^2 + 6a < 7a", q1, "<", Fraction(7 * alpha)),
            TraceStep("(B) requires L^2.G >= 7a", q1, ">=", Fraction(7 * alpha)),
        ]
        return DestabilizerVerdict(VerdictKind.EXCLUDED_BY_ASSUMPTION_B, tuple(trace))
    return DestabilizerVerdict(
        VerdictKind.NO_CONTRADICTION, tuple(trace),
        note="(B) only constrains integral classes with L^2.G >= 1",
    )


# -- the curve case -------------------------------------------------------


class ChainVerdict(enum.Enum):
    EMPTY = "Empty"
    BOUNDARY = "Boundary"
    NONEMPTY = "Nonempty"


@dataclass(frozen=True)
class CurveCaseChain:
    interval: tuple
    lattice_step: Fraction
    lattice_points: tuple
    verdict: ChainVerdict
    l_delta: Fraction
    note: str = ""

    @property
    def contradiction(self) -> bool:
        return self.verdict is not ChainVerdict.NONEMPTY


def curve_case_chain(geom: PolarizedGeometry, alpha: int, LC: RationalLike) -> CurveCaseChain:
    """Admissible ``ch~_3(A)`` for ``A = L (x) I_C`` destabilizing ``E``.

    From below, ``2 ch~_3(A) - (d/24 - alpha)`` is a non-negative integer;
    from above, the strong BG inequality for ``A`` at its wall gives
    ``ch~_3(A) <= L.ch~_2(A) / 6 = d/48 - L.C/6``.
    """
    alpha = _alpha(alpha)
    LC = as_fraction(LC)
    if LC <= 0:
        raise NonpositiveDegree(f"L.C must be positive, got {LC}")
    d = geom.d
    a = twisted_curve_ideal(geom, LC)
    lo = Fraction(d, 48) - Fraction(alpha, 2)
    hi = a.ch2L / 6
    assert hi == Fraction(d, 48) - LC / 6
    step = Fraction(1, 2)
    points = []
    p = lo
    while p <= hi:
        points.append(p)
        p += step
    if lo > hi:
        verdict = ChainVerdict.EMPTY
        note = "no admissible ch~_3(A): the vanishing holds against this curve class"
    elif lo == hi:
        verdict = ChainVerdict.BOUNDARY
        note = (
            "equality throughout forces L.Delta(A) = 0, but L.Delta(L (x) I_C) = 2 L.C != 0"
        )
    else:
        verdict = ChainVerdict.NONEMPTY
        note = "the inequalities leave room for a destabilizing curve"
    return CurveCaseChain((lo, hi), step, tuple(points), verdict, discriminant_L(a), note)


# -- the equality case ----------------------------------------------------


@dataclass(frozen=True)
class DerivativeReport:
    fprime: Fraction
    L_delta: Fraction
    ratio: Optional[Fraction]


def strong_bg_defect(ch: NumClass) -> Poly:
    """``f(b) = ch~_3 - (omega^2/18) L^2.ch~_1`` along ``nu_{T(b)L, bL} = 0``.

    ``T(b)^2 = 6 (L.ch_2 - b c d + b^2 r d / 2) / (r d)`` keeps the slope at
    zero; with it ``f`` is a polynomial in ``b``.
    """
    plain = twisted(ch, 0)
    if not isinstance(plain.c1, Proportional):
        raise NonProportionalC1("the equality case needs ch_1 proportional to L")
    if plain.r == 0:
        raise ZeroRank("the equality case needs nonzero rank")
    r, c, h, x = plain.r, plain.c1.c, plain.ch2L, plain.ch3
    d = plain.d
    b = Poly.x()
    t_sq = Fraction(6) / (r * d) * (h - c * d * b + r * d / 2 * b ** 2)
    return (
        x - h * b + c * d / 2 * b ** 2 - r * d / 6 * b ** 3
        - Fraction(1, 18) * t_sq * (c - r * b) * d
    )


def conj_equal_derivative(ch: NumClass, b0: RationalLike, geom: PolarizedGeometry) -> DerivativeReport:
    b0 = as_fraction(b0)
    plain = twisted(ch, 0)
    if plain.geom != geom:
        raise chern.GeometryMismatch("class lives on a different geometry")
    f = strong_bg_defect(plain)
    c = plain.c1.c
    t_sq = Fraction(6) / (plain.r * geom.d) * (plain.ch2L - c * geom.d * b0 + plain.r * geom.d / 2 * b0 ** 2)
    if t_sq <= 0:
        raise NegativeTSquare(f"T^2 = {t_sq} at b0 = {b0}")
    fprime = f.derivative()(b0)
    l_delta = discriminant_L(plain)
    return DerivativeReport(fprime, l_delta, fprime / l_delta if l_delta else None)


# -- consequences for adjoint bundles -------------------------------------


@dataclass(frozen=True)
class FujitaCounterexample:
    d: int
    q1: int
    q2: int
    LC: int
    failed: tuple
    n_failing: int = 1

    def key(self) -> tuple:
        return (self.d, self.q1, self.q2, self.LC)


@dataclass(frozen=True)
class FujitaReport:
    m: int
    alpha: int
    grid_bound: int
    d_min: int
    passed: bool
    counterexamples: tuple
    tuples_checked: int
    tuples_failing: int
    backend: str = ""
    note: str = ""


def fujita_verify(
    m: int,
    alpha: int,
    grid_bound: int,
    d_min: int = 1,
    workers: Optional[int] = None,
) -> FujitaReport:
    """Check (A)(B)(C) for ``mL`` over every integer tuple on the grid.

    Tuples ``(d, L^2.D, L.D^2, L.C)`` range over ``d_min..bound``,
    ``1..bound``, ``0..bound`` and ``1..bound`` subject to the Hodge index;
    for ``mL`` they scale to ``(m^3 d, m^2 L^2.D, m L.D^2, m L.C)``.
    Counterexamples are reported one per failing ``d``: the lexicographically
    first failing tuple, with the number of failing tuples sharing that ``d``.
    """
    from . import kernels
    from .errors import EmptyGrid

    alpha = _alpha(alpha)
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")
    if grid_bound < 1:
        raise EmptyGrid(f"grid bound must be at least 1, got {grid_bound}")
    d_min = max(1, d_min)
    result = kernels.fujita_scan(m, alpha, grid_bound, d_min, workers=workers)
    ces = tuple(
        FujitaCounterexample(d, q1, q2, 1, kernels.decode_mask(mask), count)
        for d, count, q1, q2, mask in result.rows
    )
    note = ""
    if m == 3 and alpha == 1 and d_min < 2:
        note = "K_X + 3L needs L^3 >= 2; pass d_min=2 to impose it"
    return FujitaReport(
        m, alpha, grid_bound, d_min, not ces, ces,
        result.checked, sum(c.n_failing for c in ces), result.backend, note,
    )


@dataclass(frozen=True)
class L5Report:
    m3: int
    kxc: int
    d: int
    LC: int
    MC: int
    ch3t_A: Fraction
    ch3_L_OC: Fraction
    ch3_OC: Fraction
    g_a: Fraction
    deg_KL_on_C: Fraction
    parity_obstruction: bool
    admissible_ch3t_A: tuple = field(default=())


def l5_analysis(m3: int, kxc: int) -> L5Report:
    """The only curve that can obstruct very ampleness of ``K_X + L`` for ``L = M^5``.

    With ``alpha = 2``, ``L.C < 6`` and ``L.C`` a multiple of 5 force
    ``M.C = 1``.  ``ch~_3(A)`` is then pinned to ``d/48 - 1``, which fixes
    ``ch_3(O_C)`` and, through Riemann-Roch, the genus.
    """
    if isinstance(m3, bool) or not isinstance(m3, int) or m3 < 1:
        raise ValueError(f"M^3 must be a positive integer, got {m3!r}")
    geom = PolarizedGeometry(125 * m3)
    d, LC = geom.d, 5
    chain = curve_case_chain(geom, 2, LC)
    (ch3t_a,) = chain.lattice_points
    assert ch3t_a == Fraction(d, 48) - 1

    # A = L (x) I_C at twist 1/2 with the pinned ch~_3; untwist to read off ch_3
    a_twisted = twisted_curve_ideal(geom, LC)
    a = twisted(NumClass(a_twisted.r, a_twisted.c1, a_twisted.ch2L, ch3t_a, geom, HALF), 0)
    ch3_l_oc = line_bundle_class(geom, 1).ch3 - a.ch3
    ch3_oc = ch3_l_oc - LC
    g_a = chern.arithmetic_genus(ch3_oc, kxc)
    return L5Report(
        m3=m3, kxc=kxc, d=d, LC=LC, MC=1,
        ch3t_A=ch3t_a, ch3_L_OC=ch3_l_oc, ch3_OC=ch3_oc, g_a=g_a,
        deg_KL_on_C=Fraction(kxc + LC),
        parity_obstruction=kxc % 2 == 0,
        admissible_ch3t_A=chain.lattice_points,
    )
