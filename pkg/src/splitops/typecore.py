"""Presentations of binary quadratic regular operads with a splitting star.

The central object is :class:`TypePresentation`: an ordered generator
basis, a distinguished "star" vector whose associativity splits into the
relations, and a basis of relation elements.  A relation element is a
pair of m x m rational matrices (L, R) encoding the arity-3 identity

    sum_ij L[i][j] (x g_i y) g_j z  =  sum_ij R[i][j] x g_i (y g_j z).

Relation elements flatten to vectors of length 2*m^2 - the L block
row-major, then the R block row-major.  Every subspace comparison in the
package goes through this one flattening convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .exactalg import (
    DimensionMismatch,
    ExactAlgebraError,
    Matrix,
    Subspace,
    format_scalar,
)


class InvalidPresentation(ExactAlgebraError):
    """Raised when an operation requires a valid presentation and gets none."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class GeneratorSpace:
    """Named, ordered basis of binary operations."""

    name: str
    labels: tuple[str, ...]

    def __post_init__(self):
        if not self.labels:
            raise InvalidPresentation("a type needs at least one generator")
        if len(set(self.labels)) != len(self.labels):
            raise InvalidPresentation(f"duplicate generator labels in {self.name!r}")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)


class RelationElement:
    """One element of the double tensor square, as an (L, R) matrix pair."""

    __slots__ = ("left", "right")

    def __init__(self, left: Matrix, right: Matrix):
        if left.nrows != left.ncols or right.nrows != right.ncols:
            raise DimensionMismatch("relation matrices must be square")
        if left.nrows != right.nrows:
            raise DimensionMismatch("relation matrices must share one size")
        if left.kind != "q" or right.kind != "q":
            raise DimensionMismatch("relation matrices are rational")
        self.left = left
        self.right = right

    @property
    def size(self) -> int:
        return self.left.nrows

    def flatten(self) -> tuple[Fraction, ...]:
        return tuple(x for r in self.left.rows for x in r) + tuple(
            x for r in self.right.rows for x in r
        )

    @classmethod
    def unflatten(cls, vec: Sequence, m: int) -> "RelationElement":
        if len(vec) != 2 * m * m:
            raise DimensionMismatch("flattened relation has length 2*m^2")
        left = Matrix([vec[i * m : (i + 1) * m] for i in range(m)], ncols=m)
        right = Matrix(
            [vec[m * m + i * m : m * m + (i + 1) * m] for i in range(m)], ncols=m
        )
        return cls(left, right)

    def is_zero(self) -> bool:
        return self.left.is_zero() and self.right.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, RelationElement)
            and self.left == other.left
            and self.right == other.right
        )

    def __hash__(self):
        return hash((self.left, self.right))

    def __repr__(self):
        return f"RelationElement(m={self.size})"


def tensor_square_vector(u: Sequence[Fraction], v: Sequence[Fraction]) -> Matrix:
    """Coefficient matrix of u (x) v in the tensor square."""
    return Matrix([[a * b for b in v] for a in u], ncols=len(v))


def star_associativity(star: Sequence[Fraction]) -> RelationElement:
    m = tensor_square_vector(star, star)
    return RelationElement(m, m)


class TypePresentation:
    """A generator space, a star vector and a relation basis.

    ``star`` may be ``None`` for dual-derived presentations whose
    associative element has not been resolved; validation is then relaxed
    and the presentation is flagged accordingly.
    """

    __slots__ = (
        "generators",
        "star",
        "relations",
        "aux",
        "star_unresolved",
        "provenance",
        "_subspace",
    )

    def __init__(
        self,
        generators: GeneratorSpace,
        star: Sequence[Fraction] | None,
        relations: Sequence[RelationElement],
        aux: Mapping[str, Sequence[Fraction]] | None = None,
        star_unresolved: bool = False,
        provenance: str = "",
    ):
        m = generators.dim
        if star is not None:
            star = tuple(Fraction(x) for x in star)
            if len(star) != m:
                raise DimensionMismatch("star length differs from generator count")
        elif not star_unresolved:
            raise InvalidPresentation("a presentation without a star must be flagged")
        for rel in relations:
            if rel.size != m:
                raise DimensionMismatch("relation size differs from generator count")
        self.generators = generators
        self.star = star
        self.relations = tuple(relations)
        self.aux = {k: tuple(Fraction(x) for x in v) for k, v in (aux or {}).items()}
        self.star_unresolved = star_unresolved
        self.provenance = provenance
        self._subspace = None

    @property
    def name(self) -> str:
        return self.generators.name

    @property
    def dim(self) -> int:
        return self.generators.dim

    @property
    def relation_subspace(self) -> Subspace:
        if self._subspace is None:
            self._subspace = Subspace.from_rows(
                2 * self.dim * self.dim, [r.flatten() for r in self.relations]
            )
        return self._subspace

    def star_relation(self) -> RelationElement:
        if self.star is None:
            raise InvalidPresentation(f"{self.name}: star unresolved")
        return star_associativity(self.star)

    def with_name(self, name: str) -> "TypePresentation":
        return TypePresentation(
            GeneratorSpace(name, self.generators.labels),
            self.star,
            self.relations,
            aux=self.aux,
            star_unresolved=self.star_unresolved,
            provenance=self.provenance,
        )

    def __repr__(self):
        star = "star unresolved" if self.star is None else "star set"
        return (
            f"TypePresentation({self.name!r}, {self.dim} generators, "
            f"{len(self.relations)} relations, {star})"
        )


@dataclass(frozen=True)
class ValidationReport:
    name: str
    relation_count: int
    relation_rank: int
    star_nonzero: bool
    star_associative: bool
    star_unresolved: bool = False
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def relations_independent(self) -> bool:
        return self.relation_rank == self.relation_count

    @property
    def valid(self) -> bool:
        if self.star_unresolved:
            return self.relations_independent
        return self.relations_independent and self.star_nonzero and self.star_associative

    def describe(self) -> str:
        lines = [
            f"type {self.name}: {'valid' if self.valid else 'INVALID'}",
            f"  relations: {self.relation_count} given, rank {self.relation_rank}",
        ]
        if self.star_unresolved:
            lines.append("  star: dual presentation, star unresolved")
        else:
            lines.append(f"  star nonzero: {self.star_nonzero}")
            lines.append(f"  star associativity in relation span: {self.star_associative}")
        lines.extend("  note: " + n for n in self.notes)
        return "\n".join(lines)


def validate(t: TypePresentation) -> ValidationReport:
    """Check independence of the relation basis and splitting associativity.

    Failures are reported, never raised.
    """
    count = len(t.relations)
    rank = t.relation_subspace.dim
    notes = []
    if t.star is None:
        return ValidationReport(
            t.name, count, rank, False, False, star_unresolved=True,
            notes=("dual presentation, star unresolved",),
        )
    star_nonzero = any(t.star)
    star_assoc = False
    if star_nonzero:
        star_assoc = t.relation_subspace.contains_vector(t.star_relation().flatten())
    if count == 0:
        notes.append("empty relation list: splitting associativity cannot hold")
    return ValidationReport(t.name, count, rank, star_nonzero, star_assoc, notes=tuple(notes))


def require_valid(t: TypePresentation) -> None:
    report = validate(t)
    if not report.valid:
        raise InvalidPresentation(f"{t.name}: invalid presentation", report)


def splitting_basis(
    t: TypePresentation,
) -> tuple[tuple[tuple[Fraction, ...], ...], tuple[RelationElement, ...]]:
    """Bases exhibiting the splitting explicitly.

    Returns a generator basis (w_1 .. w_m) with star = sum w_i and a
    relation basis (r_1 .. r_s) summing to the star associativity
    element.  Construction: complete star (resp. the associativity
    vector) to a basis, scanning candidates last-to-first, then replace
    the completed element by star minus the sum of the others.
    """
    report = validate(t)
    if not report.valid or t.star is None:
        raise InvalidPresentation("no splitting associativity", report)
    m = t.dim

    unit = [tuple(Fraction(int(i == j)) for j in range(m)) for i in range(m)]
    chosen = _complete_descending([t.star], unit, m)
    first = list(t.star)
    for v in chosen:
        first = [a - b for a, b in zip(first, v)]
    gen_basis = (tuple(first),) + tuple(chosen)

    assoc = t.star_relation().flatten()
    rel_vecs = [r.flatten() for r in t.relations]
    chosen_rel = _complete_descending([assoc], rel_vecs, len(t.relations))
    first_rel = list(assoc)
    for v in chosen_rel:
        first_rel = [a - b for a, b in zip(first_rel, v)]
    rel_basis = (RelationElement.unflatten(first_rel, m),) + tuple(
        RelationElement.unflatten(v, m) for v in chosen_rel
    )
    return gen_basis, rel_basis


def _complete_descending(seed, candidates, target_rank):
    """Greedy completion of ``seed`` to rank ``target_rank``.

    Scans ``candidates`` from the last to the first (so catalog bases
    that already sum to the seed come back unchanged) and returns the
    chosen vectors in their original order.
    """
    ambient = len(seed[0])
    picked = []
    span = Subspace.from_rows(ambient, seed)
    for v in reversed(candidates):
        if span.dim >= target_rank:
            break
        if not span.contains_vector(v):
            picked.append(v)
            span = Subspace.from_rows(ambient, list(span.basis) + [list(v)])
    if span.dim < target_rank:
        raise InvalidPresentation("candidates do not span the space")
    picked.reverse()
    return picked


def arity3_dimension(t: TypePresentation) -> int:
    """Dimension of the regular arity-3 component: 2*m^2 - dim R."""
    require_valid(t)
    m = t.dim
    dim = 2 * m * m - t.relation_subspace.dim
    if dim < 0:
        raise InvalidPresentation("relation space exceeds the free arity-3 space")
    return dim


def relabel(t: TypePresentation, mapping) -> TypePresentation:
    """Push a presentation through a generator relabelling.

    ``mapping`` is either a label bijection (dict) or an invertible
    m x m rational matrix acting on generator coordinates; relations are
    transformed on both tensor slots of both blocks and the star is
    mapped along.
    """
    m = t.dim
    if isinstance(mapping, Mapping):
        labels = t.generators.labels
        if set(mapping) != set(labels) or set(mapping.values()) != set(labels):
            raise InvalidPresentation("label map must be a bijection on the labels")
        f = Matrix(
            [
                [Fraction(int(mapping[labels[j]] == labels[i])) for j in range(m)]
                for i in range(m)
            ],
            ncols=m,
        )
    else:
        f = mapping if isinstance(mapping, Matrix) else Matrix(mapping)
        if f.nrows != m or f.ncols != m:
            raise DimensionMismatch("relabel matrix must be m x m")
    try:
        f.inverse()
    except ExactAlgebraError:
        raise InvalidPresentation("relabel map must be invertible") from None
    new_rels = [push_relation(r, f) for r in t.relations]
    new_star = f.apply(t.star) if t.star is not None else None
    new_aux = {k: f.apply(v) for k, v in t.aux.items()}
    return TypePresentation(
        t.generators,
        new_star,
        new_rels,
        aux=new_aux,
        star_unresolved=t.star is None,
        provenance=t.provenance,
    )


def push_relation(rel: RelationElement, f: Matrix) -> RelationElement:
    """Image of a relation element under a generator map on both slots."""
    ft = f.transpose()
    return RelationElement(f @ rel.left @ ft, f @ rel.right @ ft)


def format_relation(rel: RelationElement, labels: Sequence[str]) -> str:
    """Human-readable identity, e.g. ``(x lt y) lt z = x lt (y lt z) + ...``."""

    def side(mat: Matrix, shape: str) -> str:
        parts = []
        for i, row in enumerate(mat.rows):
            for j, c in enumerate(row):
                if not c:
                    continue
                if shape == "left":
                    term = f"(x {labels[i]} y) {labels[j]} z"
                else:
                    term = f"x {labels[i]} (y {labels[j]} z)"
                if c == 1:
                    parts.append(("+", term))
                elif c == -1:
                    parts.append(("-", term))
                else:
                    parts.append(("+" if c > 0 else "-", f"{format_scalar(abs(c))}*{term}"))
        if not parts:
            return "0"
        sign, first = parts[0]
        text = ("-" if sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    return f"{side(rel.left, 'left')} = {side(rel.right, 'right')}"
