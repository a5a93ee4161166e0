"""Invertible completions of 3x3 upper triangular block matrices

    M = [[A, D, E],
         [0, B, F],
         [0, 0, C]]

with the diagonal A, B, C fixed and D, E, F free.

Each diagonal operator maps a domain space to a codomain space whose
dimensions may differ (A: X -> X', B: Y -> Y', C: Z -> Z').  With square
blocks the problem degenerates (injective means invertible), so the
rectangular setting is what makes left-invertible-but-not-invertible A
and friends possible at finite scale.  Cokernels are taken in the
codomains: beta(A) = dim X' - rank A and so on.

In finite dimensions every operator is Fredholm, so the three dimension
conditions checked by :func:`check_conditions` are necessary *and*
sufficient; :func:`construct_completion` builds the witness.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .errors import Infeasible, NotSquare, SchemaError, ShapeMismatch, Singular
from .exact import Mat, block_assemble, inverse, is_invertible, kernel_basis, rank
from .subspace import (
    Subspace, complement, embed, image, is_direct_sum, iso, kernel, linear_map_from_values,
)


@dataclass(frozen=True)
class Instance3:
    A: Mat
    B: Mat
    C: Mat

    @property
    def dims(self) -> dict[str, int]:
        return {
            "X": self.A.cols, "X'": self.A.rows,
            "Y": self.B.cols, "Y'": self.B.rows,
            "Z": self.C.cols, "Z'": self.C.rows,
        }

    def to_json(self) -> dict:
        return {"A": self.A.to_json(), "B": self.B.to_json(), "C": self.C.to_json()}

    @classmethod
    def from_json(cls, obj) -> "Instance3":
        if not isinstance(obj, dict):
            raise SchemaError("", "instance must be a JSON object with A, B, C")
        for key in "ABC":
            if key not in obj:
                raise SchemaError(key, "missing")
        return cls(*(Mat.from_json(obj[k], k) for k in "ABC"))


@dataclass(frozen=True)
class Completion3:
    D: Mat
    E: Mat
    F: Mat

    def to_json(self) -> dict:
        return {"D": self.D.to_json(), "E": self.E.to_json(), "F": self.F.to_json()}

    @classmethod
    def from_json(cls, obj) -> "Completion3":
        if not isinstance(obj, dict):
            raise SchemaError("", "completion must be a JSON object with D, E, F")
        for key in "DEF":
            if key not in obj:
                raise SchemaError(key, "missing")
        return cls(*(Mat.from_json(obj[k], k) for k in "DEF"))

    @classmethod
    def zero(cls, inst: Instance3) -> "Completion3":
        return cls(
            Mat.zeros(inst.A.rows, inst.B.cols),
            Mat.zeros(inst.A.rows, inst.C.cols),
            Mat.zeros(inst.B.rows, inst.C.cols),
        )


@dataclass(frozen=True)
class FeasibilityReport:
    a_left_invertible: bool
    c_right_invertible: bool
    alphaB: int
    alphaC: int
    betaA: int
    betaB: int
    b1: bool
    b2: bool
    c_iso: bool
    feasible: bool

    @property
    def first_failure(self) -> str | None:
        """First failing condition in the fixed order a, b1, b2, c."""
        if not (self.a_left_invertible and self.c_right_invertible):
            return "a"
        if not self.b1:
            return "b1"
        if not self.b2:
            return "b2"
        if not self.c_iso:
            return "c"
        return None

    def to_json(self) -> dict:
        out = asdict(self)
        out["first_failure"] = self.first_failure
        return out


@dataclass(frozen=True)
class ConstructionTrace:
    X1: Subspace
    Y1: Subspace
    Y2: Subspace
    Z1: Subspace
    NB: Subspace
    NC: Subspace
    J1: Mat
    J2: Mat
    RJ1: Subspace
    RJ1_prime: Subspace
    RJ2: Subspace
    RJ2_prime: Subspace
    J: Mat

    def to_json(self) -> dict:
        return {k: v.to_json() for k, v in self.__dict__.items()}


@dataclass(frozen=True)
class Certificate:
    M: Mat
    M_inverse: Mat

    def to_json(self) -> dict:
        return {"M": self.M.to_json(), "M_inverse": self.M_inverse.to_json()}


def check_conditions(inst: Instance3) -> FeasibilityReport:
    A, B, C = inst.A, inst.B, inst.C
    rA, rB, rC = rank(A), rank(B), rank(C)
    a_ok = rA == A.cols
    c_ok = rC == C.rows
    alphaB, alphaC = B.cols - rB, C.cols - rC
    betaA, betaB = A.rows - rA, B.rows - rB
    b1 = alphaB <= betaA
    b2 = betaB <= alphaC
    c_iso = alphaB + alphaC == betaA + betaB
    return FeasibilityReport(
        a_left_invertible=a_ok, c_right_invertible=c_ok,
        alphaB=alphaB, alphaC=alphaC, betaA=betaA, betaB=betaB,
        b1=b1, b2=b2, c_iso=c_iso,
        feasible=a_ok and c_ok and b1 and b2 and c_iso,
    )


def construct_completion(inst: Instance3) -> tuple[Completion3, ConstructionTrace]:
    """Build D, E, F making M invertible, following the constructive proof.

    Decompositions used (all canonical, see ``subspace.complement``)::

        X' = X1 + R(A)      Y' = Y1 + R(B)
        Y  = Y2 + N(B)      Z  = Z1 + N(C)
        X1 = R(J1)' + R(J1)     N(C) = R(J2)' + R(J2)

    D is J1 on N(B) and zero on Y2; F is J2^{-1} on R(J2) and zero on
    Z1 + R(J2)'; E is the bridge isomorphism J on R(J2)' and zero elsewhere.
    """
    report = check_conditions(inst)
    if not report.feasible:
        raise Infeasible(report.first_failure, report)
    A, B, C = inst.A, inst.B, inst.C

    X1 = complement(image(A))
    Y1 = complement(image(B))
    NB = kernel(B)
    Y2 = complement(NB)
    NC = kernel(C)
    Z1 = complement(NC)

    J1 = embed(NB.dim, X1)
    J2 = embed(Y1.dim, NC)
    RJ1 = Subspace(A.rows, J1)
    RJ2 = Subspace(C.cols, J2)
    RJ1_prime = complement(RJ1, within=X1)
    RJ2_prime = complement(RJ2, within=NC)
    J = iso(RJ2_prime, RJ1_prime)

    # D: Y -> X', basis of Y ordered (Y2 | N(B))
    D = linear_map_from_values(
        Y2.basis.hstack(NB.basis),
        Mat.zeros(A.rows, Y2.dim).hstack(J1),
    )
    # E and F: Z -> ..., basis of Z ordered (Z1 | R(J2)' | R(J2)); R(J2) enters through J2's columns
    z_basis = Z1.basis.hstack(RJ2_prime.basis, J2)
    F = linear_map_from_values(
        z_basis,
        Mat.zeros(B.rows, Z1.dim + RJ2_prime.dim).hstack(Y1.basis),
    )
    E = linear_map_from_values(
        z_basis,
        Mat.zeros(A.rows, Z1.dim).hstack(RJ1_prime.basis, Mat.zeros(A.rows, RJ2.dim)),
    )
    trace = ConstructionTrace(
        X1=X1, Y1=Y1, Y2=Y2, Z1=Z1, NB=NB, NC=NC, J1=J1, J2=J2,
        RJ1=RJ1, RJ1_prime=RJ1_prime, RJ2=RJ2, RJ2_prime=RJ2_prime, J=J,
    )
    return Completion3(D, E, F), trace


def trace_checks(inst: Instance3, trace: ConstructionTrace) -> dict[str, bool]:
    """Every structural invariant of a construction trace, evaluated exactly."""
    A, B, C = inst.A, inst.B, inst.C
    t = trace
    J_on_prime = t.J @ t.RJ2_prime.basis
    return {
        "X1+R(A)=X'": is_direct_sum(Subspace.full(A.rows), t.X1, image(A)),
        "Y1+R(B)=Y'": is_direct_sum(Subspace.full(B.rows), t.Y1, image(B)),
        "Y2+N(B)=Y": is_direct_sum(Subspace.full(B.cols), t.Y2, t.NB),
        "Z1+N(C)=Z": is_direct_sum(Subspace.full(C.cols), t.Z1, t.NC),
        "X1=R(J1)'+R(J1)": is_direct_sum(t.X1, t.RJ1_prime, t.RJ1),
        "N(C)=R(J2)'+R(J2)": is_direct_sum(t.NC, t.RJ2_prime, t.RJ2),
        "J1 left invertible": kernel_basis(t.J1).cols == 0,
        "J1 into X1": t.X1.contains(t.J1),
        "J2 left invertible": kernel_basis(t.J2).cols == 0,
        "J2 into N(C)": t.NC.contains(t.J2),
        "J bijective R(J2)'->R(J1)'": (
            t.RJ1_prime.dim == t.RJ2_prime.dim
            and Subspace(A.rows, J_on_prime) == t.RJ1_prime
        ),
    }


def assemble(inst: Instance3, comp: Completion3) -> Mat:
    A, B, C = inst.A, inst.B, inst.C
    return block_assemble(
        [[A, comp.D, comp.E], [None, B, comp.F], [None, None, C]],
        [A.rows, B.rows, C.rows],
        [A.cols, B.cols, C.cols],
    )


def certify(M: Mat) -> Certificate:
    """Exact inverse of ``M``; ``Singular`` (with a kernel vector) otherwise."""
    if M.rows != M.cols:
        raise NotSquare(f"a {M.rows}x{M.cols} matrix cannot be invertible")
    return Certificate(M, inverse(M))


def factorize(inst: Instance3, comp: Completion3) -> list[Mat]:
    """Five factors whose product is ``assemble(inst, comp)``:

    diag(I, I, C) * [[I,0,E],[0,I,F],[0,0,I]] * diag(I, B, I)
                  * [[I,D,0],[0,I,0],[0,0,I]] * diag(A, I, I)

    The second and fourth factors are unipotent, hence invertible for any D, E, F.
    """
    A, B, C = inst.A, inst.B, inst.C
    D, E, F = comp.D, comp.E, comp.F
    xp, yp, zp = A.rows, B.rows, C.rows
    x, y, z = A.cols, B.cols, C.cols
    if D.shape != (xp, y) or E.shape != (xp, z) or F.shape != (yp, z):
        raise ShapeMismatch("completion blocks do not match the diagonal")
    I = Mat.identity
    f1 = block_assemble([[I(xp), None, None], [None, I(yp), None], [None, None, C]],
                        [xp, yp, zp], [xp, yp, z])
    f2 = block_assemble([[I(xp), None, E], [None, I(yp), F], [None, None, I(z)]],
                        [xp, yp, z], [xp, yp, z])
    f3 = block_assemble([[I(xp), None, None], [None, B, None], [None, None, I(z)]],
                        [xp, yp, z], [xp, y, z])
    f4 = block_assemble([[I(xp), D, None], [None, I(y), None], [None, None, I(z)]],
                        [xp, y, z], [xp, y, z])
    f5 = block_assemble([[A, None, None], [None, I(y), None], [None, None, I(z)]],
                        [xp, y, z], [x, y, z])
    return [f1, f2, f3, f4, f5]


def product(factors) -> Mat:
    out = factors[0]
    for f in factors[1:]:
        out = out @ f
    return out


@dataclass(frozen=True)
class Lemma12Report:
    A_invertible: bool
    B_invertible: bool
    C_invertible: bool
    M_invertible: bool
    holds: bool

    def to_json(self) -> dict:
        return asdict(self)


def lemma12_check(inst: Instance3, comp: Completion3) -> Lemma12Report:
    """Among A, B, C and M, three invertible forces the fourth."""
    flags = [
        is_invertible(inst.A), is_invertible(inst.B), is_invertible(inst.C),
        is_invertible(assemble(inst, comp)),
    ]
    holds = sum(flags) != 3
    return Lemma12Report(*flags, holds=holds)


def singular_witness(M: Mat) -> Mat | None:
    """A nonzero kernel vector of ``M``, or None if ``M`` is injective."""
    k = kernel_basis(M)
    return k.select_columns([0]) if k.cols else None


__all__ = [
    "Instance3", "Completion3", "FeasibilityReport", "ConstructionTrace", "Certificate",
    "Lemma12Report", "check_conditions", "construct_completion", "trace_checks", "assemble",
    "certify", "factorize", "product", "lemma12_check", "singular_witness", "Singular",
]
