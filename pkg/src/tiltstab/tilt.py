"""Slope functions, walls and Bogomolov-Gieseker checks.

Tilt slopes use the rescaled parameter ``t = T^2/6`` for ``omega = T L``::

    nu_t = (L.ch~_2 - t d ch~_0) / L^2.ch~_1

which is ``T`` times the unscaled slope, so every comparison between slopes
at the same ``omega`` is unaffected.  A slope whose denominator vanishes is
``+inf`` (:data:`PLUS_INFINITY`); finite slopes are exact fractions, and the
two compare correctly against each other.

Heart membership is only ever needed as sign conditions on these numbers,
e.g. a sheaf of positive rank in the tilted heart has ``L^2.ch~_1 > 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .chern import NumClass, discriminant_L, twisted
from .errors import InfiniteSlope, NonpositiveT, ZeroRank
from .rational import RationalLike, as_fraction

PLUS_INFINITY = math.inf
ExtendedRational = Union[Fraction, float]

HALF = Fraction(1, 2)


def is_infinite(value: ExtendedRational) -> bool:
    return value == PLUS_INFINITY


def _positive_t(t: RationalLike) -> Fraction:
    t = as_fraction(t)
    if t <= 0:
        raise NonpositiveT(f"t must be positive, got {t}")
    return t


def mu_slope(ch: NumClass, b: RationalLike) -> ExtendedRational:
    """Mumford slope ``L^2.ch~_1 / (d ch~_0)`` at twist ``b``."""
    ch = twisted(ch, as_fraction(b))
    if ch.r == 0:
        return PLUS_INFINITY
    return ch.q1 / (ch.d * ch.r)


def nu_slope(ch: NumClass, t: RationalLike, b: RationalLike = HALF) -> ExtendedRational:
    t = _positive_t(t)
    ch = twisted(ch, as_fraction(b))
    if ch.q1 == 0:
        return PLUS_INFINITY
    return (ch.ch2L - t * ch.d * ch.r) / ch.q1


@dataclass(frozen=True)
class ClassicalBGReport:
    l_delta: Fraction
    satisfied: bool


def classical_bg_check(ch: NumClass) -> ClassicalBGReport:
    """``L.Delta >= 0`` (for ``mu = 0`` this is ``L.ch~_2 <= 0``)."""
    l_delta = discriminant_L(ch)
    return ClassicalBGReport(l_delta, l_delta >= 0)


@dataclass(frozen=True)
class BGReport:
    nu_is_zero: bool
    lhs: Fraction
    rhs: Fraction
    satisfied: bool
    slack: Fraction


def strong_bg_check(ch: NumClass, t: RationalLike, b: RationalLike = HALF) -> BGReport:
    """Evaluate ``ch~_3 <= (t/3) L^2.ch~_1``.

    The inequality is only claimed for semistable objects with ``nu_t = 0``;
    that condition is reported in ``nu_is_zero`` rather than enforced.
    """
    t = _positive_t(t)
    ch = twisted(ch, as_fraction(b))
    lhs = ch.ch3
    rhs = t / 3 * ch.q1
    return BGReport(
        nu_is_zero=ch.ch2L == ch.d * t * ch.r,
        lhs=lhs,
        rhs=rhs,
        satisfied=lhs <= rhs,
        slack=rhs - lhs,
    )


@dataclass(frozen=True)
class Wall:
    t: Fraction


@dataclass(frozen=True)
class NoWall:
    note: str = ""


@dataclass(frozen=True)
class AlwaysEqual:
    pass


WallResult = Union[Wall, NoWall, AlwaysEqual]


def wall(ch_a: NumClass, ch_e: NumClass, b: RationalLike = HALF) -> WallResult:
    """Solve ``nu_t(a) = nu_t(e)`` for ``t > 0``.

    Cross-multiplying gives ``t d (r_e q_a - r_a q_e) = h_e q_a - h_a q_e``
    with ``q`` the twisted ``L^2.ch~_1`` and ``h`` the twisted ``L.ch~_2``.
    """
    b = as_fraction(b)
    a = twisted(ch_a, b)
    e = twisted(ch_e, b)
    if a.q1 == 0 or e.q1 == 0:
        raise InfiniteSlope("wall equation degenerates when a slope is +inf")
    coeff = a.d * (e.r * a.q1 - a.r * e.q1)
    const = e.ch2L * a.q1 - a.ch2L * e.q1
    if coeff == 0:
        return AlwaysEqual() if const == 0 else NoWall("slopes differ by a constant")
    t = const / coeff
    if t <= 0:
        return NoWall(f"crossing at non-positive t = {t}")
    return Wall(t)


def eta(ch: NumClass) -> Fraction:
    """``(L^2.ch_1 - 2 L.ch_2) / rk`` of the untwisted character."""
    plain = twisted(ch, 0)
    if plain.r == 0:
        raise ZeroRank("eta needs nonzero rank")
    return (plain.q1 - 2 * plain.ch2L) / plain.r


@dataclass(frozen=True)
class EtaWallEquivalence:
    t0: Fraction
    eta_value: Fraction
    bound_6alpha_holds: bool
    strong_bg_at_t0_holds: bool


def eta_wall_equivalence(ch_a: NumClass, geom, alpha: int) -> EtaWallEquivalence:
    """Compare the strong BG inequality for ``E`` at ``A``'s wall with ``eta(A) <= 6 alpha``.

    ``t0 = L.ch~_2(A) / (rk(A) d)`` is where ``nu_t(A)`` vanishes.
    """
    from .reider import extension_class

    a = twisted(ch_a, HALF)
    if a.r == 0:
        raise ZeroRank("the destabilizing candidate needs nonzero rank")
    t0 = a.ch2L / (a.r * geom.d)
    report = strong_bg_check(extension_class(geom, alpha), t0)
    value = eta(ch_a)
    return EtaWallEquivalence(
        t0=t0,
        eta_value=value,
        bound_6alpha_holds=value <= 6 * alpha,
        strong_bg_at_t0_holds=report.satisfied,
    )


def heart_sign_ok(ch: NumClass, b: RationalLike = HALF) -> bool:
    """Necessary sign condition for membership in the tilted heart.

    Every object there has ``L^2.ch~_1 >= 0``, strictly so for a sheaf of
    positive rank.
    """
    ch = twisted(ch, as_fraction(b))
    return ch.q1 > 0 if ch.r > 0 else ch.q1 >= 0
