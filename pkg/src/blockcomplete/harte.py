"""Harte's ghost-of-an-index identity and the invertible-factor relations,
checked on finite matrices.

Finite-dimensional spaces are isomorphic exactly when their dimensions
agree, and a product of spaces has the sum of the dimensions, so every
isomorphism of products below reduces to an equality of integer sums.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .errors import ShapeMismatch, TNotInvertible
from .exact import Mat, is_invertible, rank
from .subspace import image, kernel


@dataclass(frozen=True)
class GhostReport:
    alphaT: int
    alphaS: int
    alphaST: int
    betaT: int
    betaS: int
    betaST: int
    lhs: int
    rhs: int
    holds: bool

    def to_json(self) -> dict:
        return asdict(self)


def _alpha_beta(m: Mat) -> tuple[int, int]:
    r = rank(m)
    return m.cols - r, m.rows - r


def ghost_identity(S: Mat, T: Mat) -> GhostReport:
    """For T: X -> Y and S: Y -> Z compare
    dim N(T) + dim N(S) + dim Z/R(ST) with dim N(ST) + dim Y/R(T) + dim Z/R(S)."""
    if S.cols != T.rows:
        raise ShapeMismatch(f"S is {S.shape}, T is {T.shape}: not composable")
    aT, bT = _alpha_beta(T)
    aS, bS = _alpha_beta(S)
    aST, bST = _alpha_beta(S @ T)
    lhs = aT + aS + bST
    rhs = aST + bT + bS
    return GhostReport(aT, aS, aST, bT, bS, bST, lhs, rhs, lhs == rhs)


@dataclass(frozen=True)
class Lemma11Report:
    range_TS_iso_range_S: bool
    range_ST_eq_range_S: bool
    kernel_ST_iso_kernel_S: bool
    kernel_TS_eq_kernel_S: bool

    @property
    def holds(self) -> bool:
        return all(asdict(self).values())

    def to_json(self) -> dict:
        out = asdict(self)
        out["holds"] = self.holds
        return out


def lemma11_check(S: Mat, T: Mat) -> Lemma11Report:
    """Relations between S and its products with an invertible T.

    R(TS) and N(ST) are only isomorphic to R(S) and N(S) (dimension check),
    whereas R(ST) and N(TS) coincide with R(S) and N(S) as subspaces.
    """
    if T.rows != T.cols or S.rows != S.cols or S.rows != T.rows:
        raise ShapeMismatch(f"S {S.shape} and T {T.shape} must be square of one size")
    if not is_invertible(T):
        raise TNotInvertible("T must be invertible")
    TS, ST = T @ S, S @ T
    return Lemma11Report(
        range_TS_iso_range_S=rank(TS) == rank(S),
        range_ST_eq_range_S=image(ST) == image(S),
        kernel_ST_iso_kernel_S=(ST.cols - rank(ST)) == (S.cols - rank(S)),
        kernel_TS_eq_kernel_S=kernel(TS) == kernel(S),
    )


@dataclass(frozen=True)
class SplittingReport:
    """Ghost identities for the three factor splittings of a 3x3 completion,
    and the dimension relations they yield when M is invertible."""

    first_two_vs_last_three: GhostReport
    first_three_vs_last_two: GhostReport
    middle_two_vs_last_two: GhostReport
    M_invertible: bool
    # only meaningful when M is invertible; None otherwise
    alphaC_eq_beta_tail: bool | None
    alpha_head_eq_betaA: bool | None
    alphaB_plus_beta_mid_eq_betaB_plus_betaA: bool | None

    def to_json(self) -> dict:
        return asdict(self)


def theorem_splittings(factors: list[Mat]) -> SplittingReport:
    """Feed the partial products of a five-factor decomposition to the ghost identity.

    ``factors`` is the output of ``complete3.factorize``: the first is
    diag(I, I, C), the third diag(I, B, I) and the fifth diag(A, I, I).
    """
    if len(factors) != 5:
        raise ShapeMismatch("expected five factors")
    f1, f2, f3, f4, f5 = factors
    S, T = f1 @ f2, f3 @ f4 @ f5
    S2, T2 = S @ f3, f4 @ f5
    S3, T3 = f2 @ f3, T2
    g1, g2, g3 = ghost_identity(S, T), ghost_identity(S2, T2), ghost_identity(S3, T3)
    M = S @ T
    inv = is_invertible(M)

    # recover the diagonal defects from the padded factors: padding by
    # identities changes neither kernel nor cokernel dimensions
    alphaC, _ = _alpha_beta(f1)
    alphaB, betaB = _alpha_beta(f3)
    _, betaA = _alpha_beta(f5)
    if inv:
        r1 = alphaC == g1.betaT
        r2 = g2.alphaS == betaA
        r3 = alphaB + g3.betaST == betaB + betaA
    else:
        r1 = r2 = r3 = None
    return SplittingReport(g1, g2, g3, inv, r1, r2, r3)
