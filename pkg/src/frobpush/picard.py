"""Picard-lattice classes, variety descriptors, and formal direct sums.

A ``Decomposition`` is a finite multiset of summands (line-bundle classes,
plus spinor twists on quadrics) with exact integer multiplicities, tagged by
the variety it lives on.  All values here are immutable; every operation
returns a fresh object, so unrestricted concurrent use is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar, Iterable, Iterator, Optional, Union

from .errors import (
    DeterminantUnsupportedError,
    InvalidParameterError,
    LatticeMismatchError,
    NotFSplitError,
    RankUndefinedError,
)

Basis = tuple[str, ...]


@dataclass(frozen=True)
class PicClass:
    """An integer vector of coordinates against a named lattice basis."""

    coords: tuple[int, ...]
    basis: Basis

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        object.__setattr__(self, "basis", tuple(self.basis))
        if len(self.coords) != len(self.basis):
            raise LatticeMismatchError(
                f"{len(self.coords)} coordinates against basis {self.basis}"
            )

    @classmethod
    def zero(cls, basis: Basis) -> "PicClass":
        return cls((0,) * len(basis), tuple(basis))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def _check(self, other: "PicClass") -> None:
        if self.basis != other.basis:
            raise LatticeMismatchError(f"{self.basis} vs {other.basis}")

    def __add__(self, other: "PicClass") -> "PicClass":
        self._check(other)
        return PicClass(tuple(a + b for a, b in zip(self.coords, other.coords)), self.basis)

    def __sub__(self, other: "PicClass") -> "PicClass":
        self._check(other)
        return PicClass(tuple(a - b for a, b in zip(self.coords, other.coords)), self.basis)

    def __neg__(self) -> "PicClass":
        return PicClass(tuple(-a for a in self.coords), self.basis)

    def scaled(self, k: int) -> "PicClass":
        return PicClass(tuple(k * a for a in self.coords), self.basis)

    def __repr__(self) -> str:
        return f"PicClass({self.coords}, basis={self.basis})"


@dataclass(frozen=True)
class Line:
    """A line-bundle summand, rank 1."""

    cls: PicClass


@dataclass(frozen=True)
class Spinor:
    """A spinor-bundle twist S(j); only meaningful on quadrics."""

    j: int


Summand = Union[Line, Spinor]


# ---------------------------------------------------------------------------
# Variety descriptors.  Each carries its dimension and the admissible ordered
# bases of its class lattice (first one is the default).
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProjSpace:
    d: int
    tag: ClassVar[str] = "projspace"

    def __post_init__(self) -> None:
        if self.d < 1:
            raise InvalidParameterError(f"projective space needs d >= 1; got d={self.d}")

    @property
    def dim(self) -> int:
        return self.d

    @property
    def bases(self) -> tuple[Basis, ...]:
        return (("H",),)


@dataclass(frozen=True)
class Product:
    """A product of two projective spaces P^r x P^s."""

    r: int
    s: int
    tag: ClassVar[str] = "product"

    def __post_init__(self) -> None:
        if self.r < 1 or self.s < 1:
            raise InvalidParameterError(f"product needs r, s >= 1; got ({self.r}, {self.s})")

    @property
    def dim(self) -> int:
        return self.r + self.s

    @property
    def bases(self) -> tuple[Basis, ...]:
        return (("H1", "H2"),)


@dataclass(frozen=True)
class Hirzebruch:
    """The ruled surface P(O + O(-eps)) over P^1; C0 is the negative section."""

    eps: int
    tag: ClassVar[str] = "hirzebruch"

    def __post_init__(self) -> None:
        if self.eps < 0:
            raise InvalidParameterError(f"hirzebruch needs eps >= 0; got eps={self.eps}")

    @property
    def dim(self) -> int:
        return 2

    @property
    def bases(self) -> tuple[Basis, ...]:
        return (("C0", "f"),)


@dataclass(frozen=True)
class LinearBlowup:
    """Blowup of P^d along a linear subspace of dimension r-1.

    Two bases coexist: ("H", "H'") from the projective-bundle structure over
    P^{d-r}, and ("H", "E") with the exceptional divisor, related by
    H = H' + E.
    """

    d: int
    r: int
    tag: ClassVar[str] = "blowup-linear"

    def __post_init__(self) -> None:
        if self.d < 2 or not 1 <= self.r <= self.d - 1:
            raise InvalidParameterError(
                f"linear blowup needs d >= 2 and 1 <= r <= d-1; got (d={self.d}, r={self.r})"
            )

    @property
    def dim(self) -> int:
        return self.d

    @property
    def bases(self) -> tuple[Basis, ...]:
        return (("H", "H'"), ("H", "E"))


@dataclass(frozen=True)
class VeroneseConeBlowup:
    """Blowup at the vertex of the cone over the eps-th Veronese image of P^d.

    Realized as the P^1-bundle P(O + O(eps)) over P^d; basis ("H", "H'")
    with H = E + eps*H'.
    """

    d: int
    eps: int
    tag: ClassVar[str] = "veronese-cone"

    def __post_init__(self) -> None:
        if self.d < 1 or self.eps < 1:
            raise InvalidParameterError(
                f"veronese cone blowup needs d >= 1, eps >= 1; got (d={self.d}, eps={self.eps})"
            )

    @property
    def dim(self) -> int:
        return self.d + 1

    @property
    def bases(self) -> tuple[Basis, ...]:
        return (("H", "H'"),)


@dataclass(frozen=True)
class SegreConeBlowup:
    """Blowup at the vertex of the cone over the Segre image of P^r x P^s.

    Basis ("H", "G1", "G2") with E = H - G1 - G2.
    """

    r: int
    s: int
    tag: ClassVar[str] = "segre-cone"

    def __post_init__(self) -> None:
        if self.r < 1 or self.s < 1:
            raise InvalidParameterError(
                f"segre cone blowup needs r, s >= 1; got ({self.r}, {self.s})"
            )

    @property
    def dim(self) -> int:
        return self.r + self.s + 1

    @property
    def bases(self) -> tuple[Basis, ...]:
        return (("H", "G1", "G2"),)


@dataclass(frozen=True)
class Quadric:
    """The smooth d-dimensional quadric, d >= 3; summands may include spinors."""

    d: int
    tag: ClassVar[str] = "quadric"

    def __post_init__(self) -> None:
        if self.d < 3:
            raise InvalidParameterError(
                f"quadric decompositions need d >= 3 (lower d is covered by "
                f"projspace/product); got d={self.d}"
            )

    @property
    def dim(self) -> int:
        return self.d

    @property
    def bases(self) -> tuple[Basis, ...]:
        return (("O(1)",),)

    @property
    def spinor_rank(self) -> int:
        return 2 ** (self.d // 2)


@dataclass(frozen=True)
class RationalNormalCone:
    """Projective cone over the rational normal curve of degree eps."""

    eps: int

    def __post_init__(self) -> None:
        if self.eps < 1:
            raise InvalidParameterError(f"cone needs eps >= 1; got eps={self.eps}")

    @property
    def dim(self) -> int:
        return 2


@dataclass(frozen=True)
class VeroneseCone:
    """Projective cone over the eps-th Veronese image of P^d."""

    d: int
    eps: int

    def __post_init__(self) -> None:
        if self.d < 1 or self.eps < 1:
            raise InvalidParameterError(
                f"veronese cone needs d >= 1, eps >= 1; got (d={self.d}, eps={self.eps})"
            )

    @property
    def dim(self) -> int:
        return self.d + 1


@dataclass(frozen=True)
class SegreCone:
    """Projective cone over the Segre image of P^r x P^s."""

    r: int
    s: int

    def __post_init__(self) -> None:
        if self.r < 1 or self.s < 1:
            raise InvalidParameterError(f"segre cone needs r, s >= 1; got ({self.r}, {self.s})")

    @property
    def dim(self) -> int:
        return self.r + self.s + 1


ConeKind = Union[RationalNormalCone, VeroneseCone, SegreCone]


@dataclass(frozen=True)
class ConeP:
    """The singular projective cone itself; classes are Weil divisor classes.

    For the Segre kind two bases coexist: the projective ("L1", "L2") and the
    affine-chart single generator ("L",), where the relation L1 + L2 ~ 0 has
    been imposed and L stands for the class of L1.  For the other kinds the
    class group near the vertex is generated by the ruling L with eps*L
    Cartier, so classes are only meaningful modulo eps; decompositions use
    representatives -k*L with 0 <= k <= eps-1.
    """

    kind: ConeKind
    tag: ClassVar[str] = "cone-p"

    @property
    def dim(self) -> int:
        return self.kind.dim

    @property
    def bases(self) -> tuple[Basis, ...]:
        if isinstance(self.kind, SegreCone):
            return (("L1", "L2"), ("L",))
        return (("L",),)


VarietyDescriptor = Union[
    ProjSpace,
    Product,
    Hirzebruch,
    LinearBlowup,
    VeroneseConeBlowup,
    SegreConeBlowup,
    Quadric,
    ConeP,
    "SplitBundleTotalSpace",
]


@dataclass(frozen=True)
class SplitBundleTotalSpace:
    """Total space of a split vector bundle over a base variety.

    Its class lattice is the base lattice (pullback is an isomorphism), so
    decompositions on it reuse the base basis.
    """

    base: VarietyDescriptor
    twists: tuple[PicClass, ...]
    tag: ClassVar[str] = "split-bundle"

    def __post_init__(self) -> None:
        object.__setattr__(self, "twists", tuple(self.twists))
        if not self.twists:
            raise InvalidParameterError("split bundle needs at least one twist")
        for t in self.twists:
            if t.basis not in self.base.bases:
                raise LatticeMismatchError(f"twist basis {t.basis} not on base")

    @property
    def dim(self) -> int:
        return self.base.dim + len(self.twists)

    @property
    def bases(self) -> tuple[Basis, ...]:
        return self.base.bases


def summand_rank(summand: Summand, variety: VarietyDescriptor) -> int:
    if isinstance(summand, Line):
        return 1
    if not isinstance(variety, Quadric):
        raise InvalidParameterError("spinor summands only live on quadrics")
    return variety.spinor_rank


class Decomposition:
    """A finite multiset of summands with exact multiplicities.

    ``support_only`` marks decompositions (quadrics) where some
    multiplicities are unknown; those entries carry ``None``.
    """

    __slots__ = ("variety", "basis", "entries", "support_only")

    def __init__(
        self,
        variety: VarietyDescriptor,
        items: Iterable[tuple[Summand, Optional[int]]],
        basis: Optional[Basis] = None,
        support_only: bool = False,
    ) -> None:
        basis = tuple(basis) if basis is not None else variety.bases[0]
        if basis not in variety.bases:
            raise LatticeMismatchError(f"basis {basis} is not a basis of {variety}")
        merged: dict[Summand, Optional[int]] = {}
        for summand, mult in items:
            if isinstance(summand, Line):
                if summand.cls.basis != basis:
                    raise LatticeMismatchError(
                        f"summand basis {summand.cls.basis} vs decomposition basis {basis}"
                    )
            elif not isinstance(variety, Quadric):
                raise InvalidParameterError("spinor summands only live on quadrics")
            if mult is None:
                if not support_only:
                    raise InvalidParameterError(
                        "unknown multiplicities require support_only=True"
                    )
                merged[summand] = None
                continue
            if mult < 0:
                raise InvalidParameterError(f"multiplicity must be >= 0; got {mult}")
            if mult == 0:
                continue
            prev = merged.get(summand, 0)
            merged[summand] = None if prev is None else prev + mult
        object.__setattr__(self, "variety", variety)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "entries", merged)
        object.__setattr__(self, "support_only", support_only)

    # -- basic views --------------------------------------------------------

    def items(self) -> Iterator[tuple[Summand, Optional[int]]]:
        return iter(self.entries.items())

    def sorted_items(self) -> list[tuple[Summand, Optional[int]]]:
        def key(pair: tuple[Summand, Optional[int]]):
            summand = pair[0]
            if isinstance(summand, Line):
                return (0, tuple(-c for c in summand.cls.coords))
            return (1, (-summand.j,))

        return sorted(self.entries.items(), key=key)

    @property
    def is_empty(self) -> bool:
        return not self.entries

    def trivial_class(self) -> PicClass:
        return PicClass.zero(self.basis)

    def multiplicity(self, summand: Summand) -> int:
        mult = self.entries.get(summand, 0)
        if mult is None:
            raise RankUndefinedError(f"multiplicity of {summand} is unknown")
        return mult

    def trivial_multiplicity(self) -> int:
        return self.multiplicity(Line(self.trivial_class()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Decomposition):
            return NotImplemented
        return (
            self.variety == other.variety
            and self.basis == other.basis
            and self.support_only == other.support_only
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        body = ", ".join(
            f"{s}: {'?' if m is None else m}" for s, m in self.sorted_items()
        )
        return f"Decomposition({self.variety}, {{{body}}})"

    # -- algebra -------------------------------------------------------------

    def rank(self) -> int:
        if self.support_only:
            raise RankUndefinedError("rank undefined for a support-only decomposition")
        return sum(
            mult * summand_rank(summand, self.variety)
            for summand, mult in self.entries.items()
        )

    def dual(self) -> "Decomposition":
        """Dualize summand-wise: O(c) -> O(-c) and S(j) -> S(1-j)."""
        items: list[tuple[Summand, Optional[int]]] = []
        for summand, mult in self.entries.items():
            if isinstance(summand, Line):
                items.append((Line(-summand.cls), mult))
            else:
                items.append((Spinor(1 - summand.j), mult))
        return Decomposition(self.variety, items, self.basis, self.support_only)

    def twist(self, cls: PicClass) -> "Decomposition":
        """Tensor with the line bundle of class ``cls``.

        On quadrics the spinor index shifts by the single coordinate of
        ``cls``.
        """
        if cls.basis != self.basis:
            raise LatticeMismatchError(
                f"twist class basis {cls.basis} vs decomposition basis {self.basis}"
            )
        items: list[tuple[Summand, Optional[int]]] = []
        for summand, mult in self.entries.items():
            if isinstance(summand, Line):
                items.append((Line(summand.cls + cls), mult))
            else:
                items.append((Spinor(summand.j + cls.coords[0]), mult))
        return Decomposition(self.variety, items, self.basis, self.support_only)

    def det(self) -> PicClass:
        """Determinant class: the multiplicity-weighted sum of line classes."""
        if self.support_only:
            raise RankUndefinedError("determinant undefined for support-only data")
        total = PicClass.zero(self.basis)
        for summand, mult in self.entries.items():
            if not isinstance(summand, Line):
                raise DeterminantUnsupportedError(
                    "determinant undefined with spinor summands present"
                )
            assert mult is not None
            total = total + summand.cls.scaled(mult)
        return total

    def remove_trivial(self) -> "Decomposition":
        """Strip exactly one copy of the trivial line bundle."""
        trivial = Line(self.trivial_class())
        mult = self.entries.get(trivial)
        if mult is None and trivial in self.entries:
            raise NotFSplitError("trivial summand present but with unknown multiplicity")
        if not mult:
            raise NotFSplitError("no trivial summand to remove")
        items = [(s, m) for s, m in self.entries.items() if s != trivial]
        if mult > 1:
            items.append((trivial, mult - 1))
        return Decomposition(self.variety, items, self.basis, self.support_only)


def change_basis(decomp: Decomposition, target: Basis) -> Decomposition:
    """Rewrite a linear-blowup decomposition between ("H","H'") and ("H","E").

    With H = H' + E the coordinate map is (a, b) -> (a + b, -b) in both
    directions (it is an involution).
    """
    target = tuple(target)
    if not isinstance(decomp.variety, LinearBlowup):
        raise LatticeMismatchError("basis change is only defined on linear blowups")
    if target not in decomp.variety.bases:
        raise LatticeMismatchError(f"{target} is not a basis of {decomp.variety}")
    if target == decomp.basis:
        return decomp
    items: list[tuple[Summand, Optional[int]]] = []
    for summand, mult in decomp.entries.items():
        assert isinstance(summand, Line)
        a, b = summand.cls.coords
        items.append((Line(PicClass((a + b, -b), target)), mult))
    return Decomposition(decomp.variety, items, target, decomp.support_only)
