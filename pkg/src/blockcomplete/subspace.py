"""Linear subspaces of Q^d in canonical form, plus complements and embeddings.

A subspace is identified by the RREF of its spanning vectors laid out as rows.
Its ``basis`` is always that canonical row set read as columns, so two equal
subspaces carry identical bases and every downstream choice (complement,
embedding) is reproducible.

Complements are plain linear complements. No inner product is involved.
"""

from __future__ import annotations

from .errors import DimMismatch, SchemaError, ShapeMismatch, TooBig
from .exact import Mat, image_basis, inverse, kernel_basis, rank, rref


class Subspace:
    __slots__ = ("ambient_dim", "basis", "canonical_rows", "pivots")

    def __init__(self, ambient_dim: int, spanning: Mat | None = None):
        if spanning is None:
            spanning = Mat.zeros(ambient_dim, 0)
        if spanning.rows != ambient_dim:
            raise ShapeMismatch(
                f"spanning vectors have {spanning.rows} coordinates, ambient is {ambient_dim}")
        reduced, pivots, r = rref(spanning.T)
        self.ambient_dim = ambient_dim
        self.canonical_rows = reduced.block(0, r, 0, ambient_dim)
        self.basis = self.canonical_rows.T
        self.pivots = pivots

    @classmethod
    def full(cls, d: int) -> "Subspace":
        return cls(d, Mat.identity(d))

    @classmethod
    def zero(cls, d: int) -> "Subspace":
        return cls(d)

    @property
    def dim(self) -> int:
        return self.basis.cols

    def contains(self, vectors: Mat) -> bool:
        """True if every column of ``vectors`` lies in the subspace."""
        if vectors.rows != self.ambient_dim:
            raise ShapeMismatch("vector length does not match ambient dimension")
        return rank(self.basis.hstack(vectors)) == self.dim

    def coordinates(self, vectors: Mat) -> Mat:
        """Coordinates of the columns of ``vectors`` in this subspace's basis.

        Because the basis comes from RREF rows, the coordinate of basis vector
        i is just the entry at its pivot position.
        """
        if not self.contains(vectors):
            raise ValueError("vectors are not in the subspace")
        return vectors.submatrix(self.pivots, range(vectors.cols))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.canonical_rows == other.canonical_rows

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.canonical_rows))

    def __repr__(self) -> str:
        return f"Subspace(ambient={self.ambient_dim}, dim={self.dim}, rows={self.canonical_rows!r})"

    def to_json(self) -> dict:
        return {"ambient": self.ambient_dim, "basis": self.basis.to_json()}

    @classmethod
    def from_json(cls, obj, field: str = "subspace") -> "Subspace":
        if not isinstance(obj, dict) or "ambient" not in obj or "basis" not in obj:
            raise SchemaError(field, "expected an object with ambient and basis")
        amb = obj["ambient"]
        if not isinstance(amb, int) or isinstance(amb, bool) or amb < 0:
            raise SchemaError(f"{field}.ambient", "must be a nonnegative integer")
        basis = Mat.from_json(obj["basis"], f"{field}.basis")
        if basis.rows != amb:
            raise SchemaError(f"{field}.basis", f"expected {amb} rows, got {basis.rows}")
        return cls(amb, basis)


def span(vectors: Mat) -> Subspace:
    return Subspace(vectors.rows, vectors)


def kernel(m: Mat) -> Subspace:
    return Subspace(m.cols, kernel_basis(m))


def image(m: Mat) -> Subspace:
    return Subspace(m.rows, image_basis(m))


def join(*subspaces: Subspace) -> Subspace:
    d = subspaces[0].ambient_dim
    basis = Mat.zeros(d, 0)
    for s in subspaces:
        basis = basis.hstack(s.basis)
    return Subspace(d, basis)


def is_direct_sum(whole: Subspace, *parts: Subspace) -> bool:
    """Whether ``whole`` is the internal direct sum of ``parts``."""
    basis = Mat.zeros(whole.ambient_dim, 0)
    for p in parts:
        basis = basis.hstack(p.basis)
    total = sum(p.dim for p in parts)
    return total == whole.dim and rank(basis) == total and join(*parts) == whole


def _coordinate_complement(s: Subspace) -> Mat:
    # unit vectors at the non-pivot positions of the canonical rows
    pivot_set = set(s.pivots)
    free = [j for j in range(s.ambient_dim) if j not in pivot_set]
    return Mat.identity(s.ambient_dim).select_columns(free)


def complement(s: Subspace, within: Subspace | None = None) -> Subspace:
    """A linear complement of ``s`` (inside ``within`` if given, else the ambient space).

    The complement is spanned by the unit vectors e_j at the non-pivot
    positions of ``s``'s canonical rows. Inside a proper subspace W the same
    rule is applied in W's coordinates and mapped back through W's basis.
    """
    if within is None:
        return Subspace(s.ambient_dim, _coordinate_complement(s))
    if within.ambient_dim != s.ambient_dim:
        raise ShapeMismatch("subspaces live in different ambient spaces")
    coords = Subspace(within.dim, within.coordinates(s.basis))
    return Subspace(s.ambient_dim, within.basis @ _coordinate_complement(coords))


def quotient_dim(ambient_dim: int, s: Subspace) -> int:
    if s.ambient_dim != ambient_dim:
        raise ShapeMismatch(f"subspace lives in Q^{s.ambient_dim}, not Q^{ambient_dim}")
    return ambient_dim - s.dim


def embed(source_dim: int, target: Subspace) -> Mat:
    """Left-invertible map Q^source_dim -> ambient with image inside ``target``.

    Uses the first ``source_dim`` canonical basis columns of the target.
    """
    if source_dim > target.dim:
        raise TooBig(f"cannot embed dimension {source_dim} into a {target.dim}-dimensional subspace")
    return target.basis.select_columns(range(source_dim))


def linear_map_from_values(domain_basis: Mat, values: Mat) -> Mat:
    """The unique map sending column i of ``domain_basis`` (square, invertible) to column i of ``values``."""
    if domain_basis.rows != domain_basis.cols:
        raise ShapeMismatch("domain basis must be square")
    if values.cols != domain_basis.cols:
        raise ShapeMismatch("need one image per basis vector")
    return values @ inverse(domain_basis)


def iso(source: Subspace, target: Subspace) -> Mat:
    """Map of the source ambient space into the target ambient space that sends
    source basis vector i to target basis vector i and kills the canonical
    complement of ``source``."""
    if source.dim != target.dim:
        raise DimMismatch(f"no isomorphism between dimensions {source.dim} and {target.dim}")
    comp = complement(source)
    domain = source.basis.hstack(comp.basis)
    values = target.basis.hstack(Mat.zeros(target.ambient_dim, comp.dim))
    return linear_map_from_values(domain, values)
