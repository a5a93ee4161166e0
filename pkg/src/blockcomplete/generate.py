"""Seeded random instances.

All randomness goes through ``random.Random`` (Mersenne Twister, MT19937),
seeded explicitly, so a given seed produces the same instance on every
platform.  Matrices of a prescribed rank are built as L * [I_r 0; 0 0] * U
with L, U unit triangular integer matrices, which keeps them integral and
pins the rank exactly (over Q and over every prime field).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

from .complete3 import Completion3, Instance3, check_conditions
from .errors import UnsatisfiableBounds
from .exact import Mat


def unit_lower(n: int, rng: random.Random, bound: int = 2) -> Mat:
    return Mat(n, n, (1 if i == j else (rng.randint(-bound, bound) if j < i else 0)
                      for i in range(n) for j in range(n)))


def unit_upper(n: int, rng: random.Random, bound: int = 2) -> Mat:
    return Mat(n, n, (1 if i == j else (rng.randint(-bound, bound) if j > i else 0)
                      for i in range(n) for j in range(n)))


def random_invertible(n: int, rng: random.Random, bound: int = 2) -> Mat:
    return unit_lower(n, rng, bound) @ unit_upper(n, rng, bound)


def rank_template(rows: int, cols: int, r: int) -> Mat:
    return Mat(rows, cols, (1 if i == j and i < r else 0 for i in range(rows) for j in range(cols)))


def random_rank(rows: int, cols: int, r: int, rng: random.Random, bound: int = 2) -> Mat:
    if r > min(rows, cols):
        raise ValueError(f"rank {r} impossible for a {rows}x{cols} matrix")
    return random_invertible(rows, rng, bound) @ rank_template(rows, cols, r) @ random_invertible(cols, rng, bound)


_PRIME = 2_147_483_647


def surely_invertible(m: Mat) -> bool:
    """Cheap one-sided invertibility test for integer matrices.

    Full rank modulo a prime forces a nonzero determinant, so True is always
    correct; False may (rarely) be wrong.  Only used to filter random draws.
    """
    if m.rows != m.cols:
        return False
    p = _PRIME
    rows = m.mod(p)
    n = m.rows
    for c in range(n):
        sel = next((i for i in range(c, n) if rows[i][c]), None)
        if sel is None:
            return False
        rows[c], rows[sel] = rows[sel], rows[c]
        inv = pow(rows[c][c], p - 2, p)
        pr = rows[c]
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                f = f * inv % p
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], pr)]
    return True


def random_matrix(rows: int, cols: int, rng: random.Random, bound: int = 2) -> Mat:
    return Mat(rows, cols, (rng.randint(-bound, bound) for _ in range(rows * cols)))


def _conditions(x, xp, y, yp, z, zp, rb):
    # A: x -> xp injective, C: z -> zp surjective, B of rank rb
    beta_a, alpha_c = xp - x, z - zp
    alpha_b, beta_b = y - rb, yp - rb
    return (x <= xp and zp <= z and alpha_b <= beta_a and beta_b <= alpha_c
            and alpha_b + alpha_c == beta_a + beta_b)


@lru_cache(maxsize=None)
def feasible_shapes(max_dim: int) -> tuple:
    """Every (x, x', y, y', z, z', rank B) with all dimensions <= max_dim admitting a completion."""
    r = range(max_dim + 1)
    return tuple(
        (x, xp, y, yp, z, zp, rb)
        for x, xp, y, yp, z, zp in itertools.product(r, repeat=6)
        for rb in range(min(y, yp) + 1)
        if _conditions(x, xp, y, yp, z, zp, rb)
    )


def feasible3(rng: random.Random, max_dim: int = 4, bound: int = 2) -> Instance3:
    shapes = feasible_shapes(max_dim)
    if not shapes:
        raise UnsatisfiableBounds(f"no feasible shape with dimensions <= {max_dim}")
    x, xp, y, yp, z, zp, rb = rng.choice(shapes)
    return Instance3(
        random_rank(xp, x, x, rng, bound),
        random_rank(yp, y, rb, rng, bound),
        random_rank(zp, z, zp, rng, bound),
    )


def random3(rng: random.Random, max_dim: int = 4, bound: int = 2) -> Instance3:
    mats = []
    for _ in range(3):
        rows, cols = rng.randint(0, max_dim), rng.randint(0, max_dim)
        mats.append(random_rank(rows, cols, rng.randint(0, min(rows, cols)), rng, bound))
    return Instance3(*mats)


def infeasible3(rng: random.Random, max_dim: int = 4, bound: int = 2) -> Instance3:
    if max_dim < 1:
        raise UnsatisfiableBounds("an infeasible instance needs some dimension >= 1")
    for _ in range(10_000):
        inst = random3(rng, max_dim, bound)
        if not check_conditions(inst).feasible:
            return inst
    raise UnsatisfiableBounds("could not draw an infeasible instance")  # pragma: no cover


@dataclass(frozen=True)
class GenSpec:
    kind: str
    seed: int = 0
    max_dim: int = 4
    bound: int = 2
    n: int = 4

    KINDS = ("feasible3", "infeasible3", "random3", "randomN")


def generate(spec: GenSpec) -> dict:
    """Instance JSON for ``spec``; identical specs give identical output."""
    from .nblock import random_instance_n

    if spec.max_dim < 0 or spec.bound < 0:
        raise UnsatisfiableBounds("bounds must be nonnegative")
    rng = random.Random(spec.seed)
    if spec.kind == "feasible3":
        return feasible3(rng, spec.max_dim, spec.bound).to_json()
    if spec.kind == "infeasible3":
        return infeasible3(rng, spec.max_dim, spec.bound).to_json()
    if spec.kind == "random3":
        return random3(rng, spec.max_dim, spec.bound).to_json()
    if spec.kind == "randomN":
        if spec.n < 2:
            raise UnsatisfiableBounds("n must be at least 2")
        return random_instance_n(rng, spec.n, spec.max_dim, spec.bound).to_json()
    raise ValueError(f"unknown kind {spec.kind!r}; choose from {', '.join(GenSpec.KINDS)}")


def random_completion3(inst: Instance3, rng: random.Random, bound: int = 2) -> Completion3:
    return Completion3(
        random_matrix(inst.A.rows, inst.B.cols, rng, bound),
        random_matrix(inst.A.rows, inst.C.cols, rng, bound),
        random_matrix(inst.B.rows, inst.C.cols, rng, bound),
    )


def invertible_square3(rng: random.Random, max_dim: int = 3, bound: int = 2):
    """Invertible square diagonal blocks and a random completion (M is then invertible)."""
    dims = [rng.randint(1, max_dim) for _ in range(3)]
    inst = Instance3(*(random_invertible(d, rng, bound) for d in dims))
    return inst, random_completion3(inst, rng, bound)
