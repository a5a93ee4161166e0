"""n x n upper triangular block matrices T with prescribed diagonal D_1..D_n.

Block i of the diagonal maps a domain space X_i (dimension ``domain_dims[i]``)
to a codomain X_i' (``codomain_dims[i]``).  For n > 3 only necessary
conditions for an invertible completion are known; :func:`reduce` exposes
the matrix that carries them, and :func:`search_completion_n` is a purely
exploratory random search.

Block indices in ``CompletionN`` are 1-based, matching the usual A_ij
notation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .complete3 import Completion3, Instance3
from .errors import NotInvertible, SchemaError, ShapeMismatch
from .exact import Mat, block_assemble, block_diag, inverse, is_invertible, kernel_basis, offsets, rank
from .subspace import complement, image, kernel


@dataclass(frozen=True)
class InstanceN:
    diagonals: tuple[Mat, ...]

    def __post_init__(self):
        object.__setattr__(self, "diagonals", tuple(self.diagonals))
        if len(self.diagonals) < 2:
            raise ShapeMismatch("need at least two diagonal blocks")

    @property
    def n(self) -> int:
        return len(self.diagonals)

    @property
    def domain_dims(self) -> list[int]:
        return [d.cols for d in self.diagonals]

    @property
    def codomain_dims(self) -> list[int]:
        return [d.rows for d in self.diagonals]

    @classmethod
    def from_instance3(cls, inst: Instance3) -> "InstanceN":
        return cls((inst.A, inst.B, inst.C))

    def to_json(self) -> dict:
        return {"n": self.n, "diagonals": [d.to_json() for d in self.diagonals]}

    @classmethod
    def from_json(cls, obj) -> "InstanceN":
        if not isinstance(obj, dict) or "diagonals" not in obj:
            raise SchemaError("diagonals", "missing")
        diags = obj["diagonals"]
        if not isinstance(diags, list) or len(diags) < 2:
            raise SchemaError("diagonals", "expected a list of at least two matrices")
        if "n" in obj and obj["n"] != len(diags):
            raise SchemaError("n", f"says {obj['n']} but {len(diags)} diagonals given")
        return cls(tuple(Mat.from_json(d, f"diagonals[{i}]") for i, d in enumerate(diags)))


@dataclass(frozen=True)
class CompletionN:
    """Strictly upper blocks keyed by 1-based (i, j), i < j. Absent blocks are zero."""

    blocks: dict = field(default_factory=dict)

    def get(self, inst: InstanceN, i: int, j: int) -> Mat:
        b = self.blocks.get((i, j))
        shape = (inst.codomain_dims[i - 1], inst.domain_dims[j - 1])
        if b is None:
            return Mat.zeros(*shape)
        if b.shape != shape:
            raise ShapeMismatch(f"block ({i},{j}) is {b.shape}, expected {shape}")
        return b

    @classmethod
    def from_completion3(cls, comp: Completion3) -> "CompletionN":
        return cls({(1, 2): comp.D, (1, 3): comp.E, (2, 3): comp.F})

    def to_json(self) -> dict:
        return {"blocks": {f"{i},{j}": m.to_json() for (i, j), m in sorted(self.blocks.items())}}

    @classmethod
    def from_json(cls, obj) -> "CompletionN":
        if not isinstance(obj, dict) or not isinstance(obj.get("blocks"), dict):
            raise SchemaError("blocks", "expected an object keyed by 'i,j'")
        blocks = {}
        for key, m in obj["blocks"].items():
            try:
                i, j = (int(t) for t in key.split(","))
            except ValueError:
                raise SchemaError(f"blocks.{key}", "key must look like 'i,j'") from None
            if not 1 <= i < j:
                raise SchemaError(f"blocks.{key}", "need 1 <= i < j")
            blocks[(i, j)] = Mat.from_json(m, f"blocks.{key}")
        return cls(blocks)


def assemble_n(inst: InstanceN, comp: CompletionN) -> Mat:
    n = inst.n
    for (i, j) in comp.blocks:
        if not 1 <= i < j <= n:
            raise ShapeMismatch(f"block ({i},{j}) is not strictly upper for n={n}")
    grid = [
        [inst.diagonals[i] if i == j else (comp.get(inst, i + 1, j + 1) if j > i else None)
         for j in range(n)]
        for i in range(n)
    ]
    return block_assemble(grid, inst.codomain_dims, inst.domain_dims)


@dataclass(frozen=True)
class NecessaryReport:
    alphas: tuple[int, ...]
    betas: tuple[int, ...]
    first_left_invertible: bool
    last_right_invertible: bool
    kernel_embeds: bool
    cokernel_embeds: bool
    sums_equal: bool

    @property
    def cond_a(self) -> bool:
        return self.first_left_invertible and self.last_right_invertible

    @property
    def cond_b(self) -> bool:
        return self.kernel_embeds and self.cokernel_embeds

    @property
    def cond_c(self) -> bool:
        return self.sums_equal

    @property
    def holds(self) -> bool:
        return self.cond_a and self.cond_b and self.cond_c

    def to_json(self) -> dict:
        return {
            "alphas": list(self.alphas), "betas": list(self.betas),
            "first_left_invertible": self.first_left_invertible,
            "last_right_invertible": self.last_right_invertible,
            "kernel_embeds": self.kernel_embeds, "cokernel_embeds": self.cokernel_embeds,
            "sums_equal": self.sums_equal,
            "a": self.cond_a, "b": self.cond_b, "c": self.cond_c, "holds": self.holds,
        }


def check_necessary_n(inst: InstanceN) -> NecessaryReport:
    """Necessary conditions for an invertible completion (sufficient only for n <= 3).

    a) D_1 injective, D_n surjective
    b) dim N(D_2) <= dim X_1'/R(D_1) and dim X_{n-1}'/R(D_{n-1}) <= dim N(D_n)
    c) sum of dim N(D_i), i >= 2, equals sum of dim X_i'/R(D_i), i <= n-1
    """
    ranks = [rank(d) for d in inst.diagonals]
    alphas = tuple(d.cols - r for d, r in zip(inst.diagonals, ranks))
    betas = tuple(d.rows - r for d, r in zip(inst.diagonals, ranks))
    return NecessaryReport(
        alphas=alphas, betas=betas,
        first_left_invertible=alphas[0] == 0,
        last_right_invertible=betas[-1] == 0,
        kernel_embeds=alphas[1] <= betas[0],
        cokernel_embeds=betas[-2] <= alphas[-1],
        sums_equal=sum(alphas[1:]) == sum(betas[:-1]),
    )


@dataclass(frozen=True)
class ReductionArtifacts:
    U: Mat
    V: Mat
    reduced: Mat
    extracted_B: Mat
    kernel_dims: tuple[int, ...]
    cokernel_dims: tuple[int, ...]
    # row/column layout of `reduced`: per block, (range part, cokernel part) and (complement part, kernel part)
    row_split: tuple[tuple[int, int], ...]
    col_split: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {
            "U": self.U.to_json(), "V": self.V.to_json(),
            "reduced": self.reduced.to_json(), "extracted_B": self.extracted_B.to_json(),
            "kernel_dims": list(self.kernel_dims), "cokernel_dims": list(self.cokernel_dims),
        }


def reduce(inst: InstanceN, comp: CompletionN) -> ReductionArtifacts:
    """Change coordinates so that T splits into invertible pieces plus the
    kernel-to-cokernel matrix B.

    Domain block i is rewritten in the basis (complement of N(D_i) | N(D_i)),
    codomain block i in (R(D_i) | complement of R(D_i)).  In those coordinates
    each D_i becomes [[P_i, 0], [0, 0]] with P_i invertible.  Each P_i is then
    used as a pivot, in increasing i, to clear its block row and block column.
    What survives outside the pivots sits in (cokernel rows) x (kernel columns);
    restricted to cokernels of D_1..D_{n-1} and kernels of D_2..D_n it is the
    block upper triangular matrix B.
    """
    T = assemble_n(inst, comp)
    if not is_invertible(T):
        k = kernel_basis(T) if T.rows == T.cols else None
        witness = k.select_columns([0]) if k is not None and k.cols else None
        raise NotInvertible("the completed matrix is not invertible", rank(T), witness)

    dom_blocks, cod_blocks, row_split, col_split = [], [], [], []
    for D in inst.diagonals:
        N = kernel(D)
        Q = complement(N)
        R = image(D)
        K = complement(R)
        dom_blocks.append(Q.basis.hstack(N.basis))
        cod_blocks.append(R.basis.hstack(K.basis))
        col_split.append((Q.dim, N.dim))
        row_split.append((R.dim, K.dim))
    P_dom = block_diag(*dom_blocks)
    P_cod_inv = inverse(block_diag(*cod_blocks))
    work = P_cod_inv @ T @ P_dom

    ro = offsets(inst.codomain_dims)
    co = offsets(inst.domain_dims)
    U_ops = Mat.identity(T.rows)
    V_ops = Mat.identity(T.cols)
    nrows, ncols = T.rows, T.cols
    for s in range(inst.n):
        r = row_split[s][0]
        if r == 0:
            continue
        prow = list(range(ro[s], ro[s] + r))
        pcol = list(range(co[s], co[s] + r))
        pinv = inverse(work.submatrix(prow, pcol))
        # rows: subtract multiples of the pivot rows to clear the pivot columns elsewhere
        other_rows = [i for i in range(nrows) if i not in set(prow)]
        mult = work.submatrix(other_rows, pcol) @ pinv
        L = _elementary(nrows, other_rows, prow, mult)
        work = L @ work
        U_ops = L @ U_ops
        # columns: same for the pivot rows
        other_cols = [j for j in range(ncols) if j not in set(pcol)]
        mult = pinv @ work.submatrix(prow, other_cols)
        C = _elementary(ncols, pcol, other_cols, mult)
        work = work @ C
        V_ops = V_ops @ C

    U = U_ops @ P_cod_inv
    V = P_dom @ V_ops
    reduced = U @ T @ V

    coker_rows = [ro[i] + row_split[i][0] + t for i in range(inst.n - 1) for t in range(row_split[i][1])]
    ker_cols = [co[j] + col_split[j][0] + t for j in range(1, inst.n) for t in range(col_split[j][1])]
    extracted = reduced.submatrix(coker_rows, ker_cols)
    return ReductionArtifacts(
        U=U, V=V, reduced=reduced, extracted_B=extracted,
        kernel_dims=tuple(c[1] for c in col_split[1:]),
        cokernel_dims=tuple(r[1] for r in row_split[:-1]),
        row_split=tuple(row_split), col_split=tuple(col_split),
    )


def _elementary(size: int, rows: list[int], cols: list[int], mult: Mat) -> Mat:
    """Identity minus ``mult`` placed at (rows, cols)."""
    data = Mat.identity(size).tolist()
    for a, i in enumerate(rows):
        for b, j in enumerate(cols):
            data[i][j] -= mult[a, b]
    return Mat.from_rows(data, size)


def extracted_invertible(art: ReductionArtifacts) -> bool:
    B = art.extracted_B
    return B.rows == B.cols and rank(B) == B.rows


def reduced_shape_ok(art: ReductionArtifacts) -> bool:
    """``reduced`` is zero outside the pivot blocks and the (cokernel x kernel) region."""
    ro, co = [0], [0]
    for r, k in art.row_split:
        ro.append(ro[-1] + r + k)
    for q, k in art.col_split:
        co.append(co[-1] + q + k)
    pivot_cells, coker_rows, ker_cols = set(), set(), set()
    for s, ((r, k), (q, kk)) in enumerate(zip(art.row_split, art.col_split)):
        for a in range(r):
            for b in range(r):
                pivot_cells.add((ro[s] + a, co[s] + b))
        coker_rows.update(range(ro[s] + r, ro[s] + r + k))
        ker_cols.update(range(co[s] + q, co[s] + q + kk))
    M = art.reduced
    for i in range(M.rows):
        for j in range(M.cols):
            if M[i, j] and (i, j) not in pivot_cells and not (i in coker_rows and j in ker_cols):
                return False
    return True


@dataclass(frozen=True)
class SearchOutcome:
    completion: CompletionN
    trial: int


def _random_completion(inst: InstanceN, rng: random.Random, bound: int) -> CompletionN:
    blocks = {}
    for i in range(1, inst.n + 1):
        for j in range(i + 1, inst.n + 1):
            rows, cols = inst.codomain_dims[i - 1], inst.domain_dims[j - 1]
            blocks[(i, j)] = Mat(rows, cols, (rng.randint(-bound, bound) for _ in range(rows * cols)))
    return CompletionN(blocks)


def search_completion_n(inst: InstanceN, seed: int, trials: int, entry_bound: int) -> SearchOutcome | None:
    """Try the zero completion, then ``trials - 1`` seeded random ones.

    Returns the first that makes T invertible. ``None`` proves nothing.
    """
    if sum(inst.codomain_dims) != sum(inst.domain_dims):
        return None
    rng = random.Random(seed)
    for t in range(trials):
        comp = CompletionN() if t == 0 else _random_completion(inst, rng, entry_bound)
        if is_invertible(assemble_n(inst, comp)):
            return SearchOutcome(comp, t)
    return None


def random_instance_n(rng: random.Random, n: int, max_dim: int = 3, bound: int = 2) -> InstanceN:
    from .generate import random_rank

    diags = []
    for _ in range(n):
        rows, cols = rng.randint(0, max_dim), rng.randint(0, max_dim)
        diags.append(random_rank(rows, cols, rng.randint(0, min(rows, cols)), rng, bound))
    return InstanceN(tuple(diags))


def random_invertible_completion_n(rng: random.Random, n: int, max_total: int = 15,
                                   max_dim: int = 4, bound: int = 2,
                                   attempts: int = 5) -> tuple[InstanceN, CompletionN]:
    """An instance together with a completion making T invertible.

    Dimensions and diagonal ranks are drawn freely (subject only to equal
    total domain and codomain size and the staircase counting bound that any
    invertible block triangular matrix obeys); off-diagonal blocks are random.
    Draws that do not come out invertible are discarded.
    """
    from .generate import random_rank, surely_invertible

    for _ in range(10_000):
        dom = [rng.randint(0, max_dim) for _ in range(n)]
        total = sum(dom)
        if total == 0 or total > max_total:
            continue
        cod = _random_composition(total, n, max_dim, rng)
        if cod is None:
            continue
        # rows in blocks >= s can only be covered by columns in blocks >= s
        if any(sum(cod[s:]) > sum(dom[s:]) for s in range(n)):
            continue
        diags = tuple(
            random_rank(cod[i], dom[i], rng.randint(0, min(cod[i], dom[i])), rng, bound)
            for i in range(n)
        )
        inst = InstanceN(diags)
        for _ in range(attempts):
            comp = _random_completion(inst, rng, bound)
            if surely_invertible(assemble_n(inst, comp)):
                return inst, comp
    raise RuntimeError("could not draw an invertible completion")  # pragma: no cover


def _random_composition(total: int, parts: int, max_part: int, rng: random.Random):
    for _ in range(100):
        cuts = sorted(rng.randint(0, total) for _ in range(parts - 1))
        comp = [b - a for a, b in zip([0] + cuts, cuts + [total])]
        if max(comp) <= max_part:
            return comp
    return None
