"""Dimension arithmetic over {0, 1, 2, ...} together with aleph-0.

Used for the separable-Hilbert-space case analysis: given

    k = dim N(B),  m = dim X/R(A),  n = dim Y/R(B),  l = dim N(C)

with k <= m and n <= l, the product condition k + l = m + n is enough to
choose embeddings J1 (k into m) and J2 (n into l) whose quotients have the
same dimension.  In finite dimensions that quotient is forced (m - k); once a
space is infinite the choice of embedding starts to matter.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import total_ordering

from .errors import HypothesisViolated, NotEmbeddable


@total_ordering
class ExtDim:
    """A finite dimension or aleph-0. ``ExtDim(None)`` is aleph-0."""

    __slots__ = ("value",)

    def __init__(self, value: int | None):
        if value is not None and (not isinstance(value, int) or isinstance(value, bool) or value < 0):
            raise ValueError(f"dimension must be a nonnegative int or None, got {value!r}")
        self.value = value

    @classmethod
    def parse(cls, token) -> "ExtDim":
        if isinstance(token, ExtDim):
            return token
        if isinstance(token, int):
            return cls(token)
        t = str(token).strip().lower()
        if t in ("inf", "aleph0", "aleph_0", "ℵ₀", "ℵ0"):
            return ALEPH0
        if t.isdigit():
            return cls(int(t))
        raise ValueError(f"bad dimension token {token!r}: use a nonnegative integer or 'inf'")

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def __add__(self, other) -> "ExtDim":
        other = ExtDim.parse(other)
        if self.value is None or other.value is None:
            return ALEPH0
        return ExtDim(self.value + other.value)

    __radd__ = __add__

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = ExtDim(other)
        if not isinstance(other, ExtDim):
            return NotImplemented
        return self.value == other.value

    def __lt__(self, other) -> bool:
        other = ExtDim.parse(other)
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value

    def __hash__(self) -> int:
        return hash(("ExtDim", self.value))

    def __repr__(self) -> str:
        return "Aleph0" if self.value is None else f"Finite({self.value})"

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)

    def to_json(self):
        return "inf" if self.value is None else self.value


ALEPH0 = ExtDim(None)


def finite(n: int) -> ExtDim:
    return ExtDim(n)


def cancel(x: ExtDim, total: ExtDim) -> ExtDim:
    """The unique y with x + y = total, for finite x <= total."""
    if not x.is_finite:
        raise ValueError("only a finite summand can be cancelled")
    if total < x:
        raise ValueError(f"{x} is larger than {total}")
    return ALEPH0 if not total.is_finite else ExtDim(total.value - x.value)


@dataclass(frozen=True)
class CodimSet:
    """Either a single dimension or every dimension in {0, 1, ..., aleph-0}."""

    everything: bool
    value: ExtDim | None = None

    def __contains__(self, q) -> bool:
        return self.everything or self.value == ExtDim.parse(q)

    def intersect(self, other: "CodimSet") -> "CodimSet | None":
        if self.everything:
            return other
        if other.everything:
            return self
        return self if self.value == other.value else None

    def minimum(self) -> ExtDim:
        return ExtDim(0) if self.everything else self.value

    def to_json(self):
        return "everything" if self.everything else [self.value.to_json()]


def achievable_codims(k, m) -> CodimSet:
    """Possible dim(target / R(J)) over left-invertible J from a k-space into an m-space."""
    k, m = ExtDim.parse(k), ExtDim.parse(m)
    if k > m:
        raise NotEmbeddable(f"a {k}-dimensional space does not embed into a {m}-dimensional one")
    if m.is_finite:
        return CodimSet(False, ExtDim(m.value - k.value))
    if k.is_finite:
        return CodimSet(False, ALEPH0)
    return CodimSet(True)


CASE_LABELS = ("I.1", "I.2", "II.1", "II.2", "III.1", "III.2", "IV.1", "IV.2")


def case_label(k, m, l) -> str:
    """Which case of the analysis (k, m, l) falls into.

    I: k < m, l <= m     II: k < m < l     III: k = m, l <= m     IV: k = m < l
    Subcase .1 when the deciding space (m for I/III, l for II/IV) is infinite.
    """
    k, m, l = (ExtDim.parse(v) for v in (k, m, l))
    if k > m:
        raise HypothesisViolated("k > m")
    if k < m:
        if l <= m:
            return "I.1" if not m.is_finite else "I.2"
        return "II.1" if not l.is_finite else "II.2"
    if l <= m:
        return "III.1" if not m.is_finite else "III.2"
    return "IV.1" if not l.is_finite else "IV.2"


@dataclass(frozen=True)
class QuotientWitness:
    witness_codim: ExtDim
    case_label: str

    def to_json(self) -> dict:
        return {"witness_codim": self.witness_codim.to_json(), "case_label": self.case_label}


def decide_quotient_iso(k, m, n, l) -> QuotientWitness:
    """A common quotient dimension for some J1: k -> m and J2: n -> l.

    Requires k <= m, n <= l and k + l = m + n. When several witnesses exist
    the smallest one is returned.
    """
    k, m, n, l = (ExtDim.parse(v) for v in (k, m, n, l))
    if k > m:
        raise HypothesisViolated("k > m")
    if n > l:
        raise HypothesisViolated("n > l")
    if k + l != m + n:
        raise HypothesisViolated("k + l != m + n")
    common = achievable_codims(k, m).intersect(achievable_codims(n, l))
    if common is None:
        # cannot happen under the hypotheses; kept loud rather than silent
        raise AssertionError(f"no common codimension for {(k, m, n, l)}")
    return QuotientWitness(common.minimum(), case_label(k, m, l))


def grid(max_finite: int = 5):
    """All quadruples over {0..max_finite} plus aleph-0."""
    values = [ExtDim(i) for i in range(max_finite + 1)] + [ALEPH0]
    return itertools.product(values, repeat=4)


def satisfies_hypotheses(k, m, n, l) -> bool:
    return k <= m and n <= l and k + l == m + n
