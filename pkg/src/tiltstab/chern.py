"""Numerical Chern characters reduced against a polarization.

A class on a polarized threefold ``(X, L)`` is stored only through its
intersection numbers with powers of ``L``::

    r = ch_0,  q1 = L^2.ch_1,  q2 = L.ch_1^2 (optional),  ch2L = L.ch_2,  ch_3

All quantities are point-class multiples held as :class:`fractions.Fraction`.
``d = L^3`` is a positive integer.

Every :class:`NumClass` also records the twist ``b`` its components are
expressed in: the stored numbers are those of ``e^{-bL} ch(E)``.  Plain
Chern characters have ``twist == 0``; :func:`twisted` re-expresses the same
object at another twist, whereas :func:`tensor_L` changes the object.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Union

from .errors import (
    GeometryMismatch,
    HodgeIndexViolation,
    InvalidGeometry,
    MissingCh3,
    UnknownC1Square,
)
from .rational import RationalLike, as_fraction

__all__ = [
    "PolarizedGeometry",
    "Proportional",
    "General",
    "C1Data",
    "NumClass",
    "CurveClassData",
    "Points",
    "Curve",
    "check_hodge",
    "make_class",
    "line_bundle_class",
    "ideal_sheaf_class",
    "tensor_L",
    "twisted",
    "shift_negate",
    "scale",
    "sum",
    "discriminant_L",
    "dualize_L",
    "arithmetic_genus",
    "integrality_lint",
]

@dataclass(frozen=True)
class PolarizedGeometry:
    d: int
    kx_pairings: Optional[tuple] = None

    def __post_init__(self):
        if isinstance(self.d, bool) or not isinstance(self.d, int):
            d = as_fraction(self.d)
            if d.denominator != 1:
                raise InvalidGeometry(f"L^3 must be an integer, got {d}")
            object.__setattr__(self, "d", d.numerator)
        if self.d <= 0:
            raise InvalidGeometry(f"L^3 must be positive, got {self.d}")
        pairings = self.kx_pairings
        if pairings is not None:
            items = pairings.items() if isinstance(pairings, Mapping) else pairings
            normalized = []
            for name, value in items:
                if isinstance(value, bool) or as_fraction(value).denominator != 1:
                    raise InvalidGeometry(f"K_X.{name} must be an integer, got {value!r}")
                normalized.append((str(name), int(as_fraction(value))))
            object.__setattr__(self, "kx_pairings", tuple(sorted(normalized)))

    @property
    def kx_available(self) -> bool:
        return self.kx_pairings is not None

    def kx(self, name: str) -> int:
        if self.kx_pairings is None:
            raise KeyError(name)
        return dict(self.kx_pairings)[name]


@dataclass(frozen=True)
class Proportional:
    """``ch_1 = c L``."""

    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", as_fraction(self.c))

    def q1(self, d: int) -> Fraction:
        return self.c * d

    def q2(self, d: int) -> Fraction:
        return self.c * self.c * d

    @property
    def integral(self) -> bool:
        return self.c.denominator == 1


@dataclass(frozen=True)
class General:
    """A divisor class known through ``L^2.D`` and optionally ``L.D^2``."""

    q1: Fraction
    q2: Optional[Fraction] = None
    integral: bool = True

    def __post_init__(self):
        object.__setattr__(self, "q1", as_fraction(self.q1))
        if self.q2 is not None:
            object.__setattr__(self, "q2", as_fraction(self.q2))


C1Data = Union[Proportional, General]


def _q1(c1: C1Data, d: int) -> Fraction:
    return c1.q1(d) if isinstance(c1, Proportional) else c1.q1


def _q2(c1: C1Data, d: int) -> Optional[Fraction]:
    return c1.q2(d) if isinstance(c1, Proportional) else c1.q2


def check_hodge(c1: C1Data, geom: PolarizedGeometry, index: Optional[int] = None) -> None:
    """Raise :class:`HodgeIndexViolation` unless ``(L^2.D)^2 >= d (L.D^2)``."""
    if isinstance(c1, General) and c1.q2 is not None:
        if c1.q1 * c1.q1 < geom.d * c1.q2:
            where = "" if index is None else f" (divisor {index})"
            raise HodgeIndexViolation(
                f"Hodge index violated{where}: (L^2.D)^2 = {c1.q1 ** 2} < "
                f"L^3 * L.D^2 = {geom.d * c1.q2}",
                index=index,
            )


@dataclass(frozen=True)
class NumClass:
    r: Fraction
    c1: C1Data
    ch2L: Fraction
    ch3: Fraction
    geom: PolarizedGeometry
    twist: Fraction = field(default=Fraction(0))

    def __post_init__(self):
        for name in ("r", "ch2L", "ch3", "twist"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))

    @property
    def d(self) -> int:
        return self.geom.d

    @property
    def q1(self) -> Fraction:
        """``L^2.ch_1`` in this class's twist."""
        return _q1(self.c1, self.geom.d)

    @property
    def q2(self) -> Optional[Fraction]:
        """``L.ch_1^2`` in this class's twist, or ``None`` if unknown."""
        return _q2(self.c1, self.geom.d)

    def components(self) -> tuple:
        """``(r, L^2.ch_1, L.ch_2, ch_3)``."""
        return (self.r, self.q1, self.ch2L, self.ch3)

    def __str__(self) -> str:
        from .rational import format_rational as f

        if isinstance(self.c1, Proportional):
            c1 = f"{f(self.c1.c)}L"
        else:
            c1 = f"[L2D={f(self.c1.q1)}]"
        return f"({f(self.r)}, {c1}, {f(self.ch2L)}, {f(self.ch3)})"


@dataclass(frozen=True)
class CurveClassData:
    degLC: Fraction
    kxc: Optional[int] = None
    ch3OC: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "degLC", as_fraction(self.degLC))
        if self.ch3OC is not None:
            object.__setattr__(self, "ch3OC", as_fraction(self.ch3OC))


@dataclass(frozen=True)
class Points:
    """A zero-dimensional subscheme of length ``alpha``."""

    alpha: int


@dataclass(frozen=True)
class Curve:
    curve: CurveClassData


def make_class(
    geom: PolarizedGeometry,
    r: RationalLike,
    c1: C1Data,
    ch2L: RationalLike,
    ch3: RationalLike,
    twist: RationalLike = 0,
    lint: bool = False,
) -> NumClass:
    if not isinstance(geom, PolarizedGeometry):
        raise InvalidGeometry("geom must be a PolarizedGeometry")
    check_hodge(c1, geom)
    ch = NumClass(r, c1, ch2L, ch3, geom, twist)
    if lint:
        for message in integrality_lint(ch):
            warnings.warn(message, stacklevel=2)
    return ch


def integrality_lint(ch: NumClass) -> list:
    """Warnings for data that no honest sheaf on a threefold can carry."""
    untwisted = twisted(ch, 0)
    messages = []
    if untwisted.r.denominator != 1:
        messages.append(f"rank {untwisted.r} is not an integer")
    if (6 * untwisted.ch3).denominator != 1:
        messages.append(f"ch_3 = {untwisted.ch3} is not in (1/6)Z")
    return messages


def line_bundle_class(geom: PolarizedGeometry, m: RationalLike) -> NumClass:
    """``ch(L^m) = e^{mL}``."""
    m = as_fraction(m)
    d = geom.d
    return NumClass(Fraction(1), Proportional(m), m * m * d / 2, m ** 3 * d / 6, geom)


def ideal_sheaf_class(geom: PolarizedGeometry, kind) -> NumClass:
    """Chern character of ``I_Z`` (points) or ``I_C`` (a curve)."""
    if isinstance(kind, Points):
        alpha = kind.alpha
        if isinstance(alpha, bool) or not isinstance(alpha, int) or alpha < 0:
            raise ValueError(f"length must be a non-negative integer, got {alpha!r}")
        return NumClass(Fraction(1), Proportional(0), Fraction(0), Fraction(-alpha), geom)
    if isinstance(kind, Curve):
        curve = kind.curve
        if curve.ch3OC is None:
            raise MissingCh3("curve class needs ch_3(O_C) to build its ideal sheaf")
        return NumClass(Fraction(1), Proportional(0), -curve.degLC, -curve.ch3OC, geom)
    raise TypeError(f"unknown subscheme kind {kind!r}")


def tensor_L(ch: NumClass, m: RationalLike) -> NumClass:
    """Tensor by ``L^m``: multiply the character by ``e^{mL}``.

    The twist tag is unchanged since this is a different object.
    """
    m = as_fraction(m)
    d = ch.geom.d
    r, q1 = ch.r, ch.q1
    if isinstance(ch.c1, Proportional):
        c1 = Proportional(ch.c1.c + m * r)
    else:
        q2 = ch.c1.q2
        if q2 is not None:
            q2 = q2 + 2 * m * r * q1 + m * m * r * r * d
        c1 = General(q1 + m * r * d, q2, ch.c1.integral)
    ch2L = ch.ch2L + m * q1 + m * m * d * r / 2
    ch3 = ch.ch3 + m * ch.ch2L + m * m * q1 / 2 + m ** 3 * d * r / 6
    return NumClass(r, c1, ch2L, ch3, ch.geom, ch.twist)


def twisted(ch: NumClass, b: RationalLike) -> NumClass:
    """The same object expressed as ``e^{-bL} ch``."""
    b = as_fraction(b)
    if b == ch.twist:
        return ch
    moved = tensor_L(ch, ch.twist - b)
    return NumClass(moved.r, moved.c1, moved.ch2L, moved.ch3, ch.geom, b)


def shift_negate(ch: NumClass) -> NumClass:
    """Chern character of ``E[1]``."""
    if isinstance(ch.c1, Proportional):
        c1 = Proportional(-ch.c1.c)
    else:
        c1 = General(-ch.c1.q1, ch.c1.q2, ch.c1.integral)
    return NumClass(-ch.r, c1, -ch.ch2L, -ch.ch3, ch.geom, ch.twist)


def scale(ch: NumClass, k: RationalLike) -> NumClass:
    """``k * ch`` (e.g. ``E^{(+)k}`` for positive integer ``k``)."""
    k = as_fraction(k)
    if isinstance(ch.c1, Proportional):
        c1 = Proportional(k * ch.c1.c)
    else:
        q2 = None if ch.c1.q2 is None else k * k * ch.c1.q2
        c1 = General(k * ch.c1.q1, q2, ch.c1.integral)
    return NumClass(k * ch.r, c1, k * ch.ch2L, k * ch.ch3, ch.geom, ch.twist)


def sum(ch_a: NumClass, ch_b: NumClass) -> NumClass:  # noqa: A001 - module-level API name
    """Chern character of an extension of ``ch_b`` by ``ch_a``.

    ``ch_b`` is re-expressed in ``ch_a``'s twist first.  ``L.ch_1^2`` is not
    additive, so mixing in any General ``ch_1`` leaves it unknown.
    """
    if ch_a.geom != ch_b.geom:
        raise GeometryMismatch(f"L^3 = {ch_a.geom.d} vs {ch_b.geom.d}")
    ch_b = twisted(ch_b, ch_a.twist)
    if isinstance(ch_a.c1, Proportional) and isinstance(ch_b.c1, Proportional):
        c1 = Proportional(ch_a.c1.c + ch_b.c1.c)
    else:
        c1 = General(ch_a.q1 + ch_b.q1, None, ch_a.c1.integral and ch_b.c1.integral)
    return NumClass(
        ch_a.r + ch_b.r, c1, ch_a.ch2L + ch_b.ch2L, ch_a.ch3 + ch_b.ch3, ch_a.geom, ch_a.twist
    )


def discriminant_L(ch: NumClass) -> Fraction:
    """``L.Delta = L.ch_1^2 - 2 ch_0 L.ch_2``; independent of the twist."""
    q2 = ch.q2
    if q2 is None:
        raise UnknownC1Square("L.ch_1^2 is unknown for this class")
    return q2 - 2 * ch.r * ch.ch2L


def dualize_L(ch: NumClass) -> NumClass:
    """Chern character of ``D_L(E) = E^v[1] (x) L``, in ``ch``'s twist."""
    plain = twisted(ch, 0)
    if isinstance(plain.c1, Proportional):
        c1 = Proportional(plain.c1.c)
    else:
        c1 = General(plain.c1.q1, plain.c1.q2, plain.c1.integral)
    # dual flips odd degrees, the shift flips everything
    dual_shift = NumClass(-plain.r, c1, -plain.ch2L, plain.ch3, ch.geom)
    return twisted(tensor_L(dual_shift, 1), ch.twist)


def arithmetic_genus(ch3OC: RationalLike, kxc: int) -> Fraction:
    """``g_a(C)`` from Riemann-Roch: ``1 - g_a = ch_3(O_C) - K_X.C / 2``."""
    return 1 - as_fraction(ch3OC) + Fraction(kxc, 2)
