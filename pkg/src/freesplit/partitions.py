"""Direction-set partition calculus for splittings relative to a fixed rose.

The vertex of an N-petal rose carries 2N half-edge germs, called
*directions* and written ``x1+, x1-, ..., xN+, xN-``.  A splitting disjoint
from the rose is described by a two-sided partition of the direction set,
and every pairwise predicate used downstream (thick, ideal, crossing, rose
compatible, cagey) reduces to finite set arithmetic on the two sides.

All values are immutable and hashable; every operation is a pure function,
so exhaustive scans can be evaluated concurrently without shared state.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, NamedTuple, Tuple

#: Inclusive bounds accepted by the exhaustive enumerators.  The universe
#: holds 2**(2N-1) - 1 bipartitions, which stops being desk scale past 7.
MIN_RANK = 3
MAX_RANK = 7


class Direction(NamedTuple):
    """One half-edge germ at the rose vertex: a petal index and a sign."""

    index: int
    sign: int

    def opposite(self) -> "Direction":
        return Direction(self.index, -self.sign)

    @property
    def key(self) -> Tuple[int, int]:
        # Sort order used everywhere: x1+ < x1- < x2+ < x2- < ...
        return (self.index, 0 if self.sign > 0 else 1)

    def encode(self) -> str:
        return "x%d%s" % (self.index, "+" if self.sign > 0 else "-")

    @classmethod
    def parse(cls, text: str) -> "Direction":
        text = text.strip()
        if len(text) < 3 or text[0] != "x" or text[-1] not in "+-":
            raise ValueError("bad direction %r (expected e.g. 'x2+')" % (text,))
        try:
            index = int(text[1:-1])
        except ValueError:
            raise ValueError("bad direction %r (expected e.g. 'x2+')" % (text,)) from None
        if index < 1:
            raise ValueError("direction index must be >= 1, got %r" % (text,))
        return cls(index, 1 if text[-1] == "+" else -1)


def all_directions(rank: int) -> frozenset:
    """The full set of 2N directions at the vertex of the N-rose."""
    return frozenset(Direction(i, s) for i in range(1, rank + 1) for s in (1, -1))


def sorted_directions(side: Iterable[Direction]) -> Tuple[Direction, ...]:
    return tuple(sorted(side, key=lambda d: d.key))


def side_key(side: Iterable[Direction]) -> Tuple[Tuple[int, int], ...]:
    """Canonical comparable encoding of a direction set."""
    return tuple(d.key for d in sorted_directions(side))


def encode_side(side: Iterable[Direction]) -> Tuple[str, ...]:
    return tuple(d.encode() for d in sorted_directions(side))


def separates_pair(side: frozenset, index: int) -> bool:
    """True iff exactly one of ``x_index^+``, ``x_index^-`` lies in ``side``."""
    return (Direction(index, 1) in side) != (Direction(index, -1) in side)


def separated_pairs(side: frozenset, rank: int) -> Tuple[int, ...]:
    return tuple(i for i in range(1, rank + 1) if separates_pair(side, i))


def separates_some_pair(side: frozenset, rank: int) -> bool:
    return any(separates_pair(side, i) for i in range(1, rank + 1))


@dataclass(frozen=True)
class Partition:
    """A two-block split of the 2N directions.

    Canonical orientation: ``side1`` is the side *not* containing ``x1+``;
    passing the sides the other way round swaps them on construction, so
    equality and hashing see the partition as an unordered pair of sides.
    """

    rank: int
    side1: frozenset
    side2: frozenset

    def __post_init__(self):
        if self.rank < MIN_RANK:
            raise ValueError("partition rank must be >= %d, got %d" % (MIN_RANK, self.rank))
        side1 = frozenset(self.side1)
        side2 = frozenset(self.side2)
        if Direction(1, 1) in side1:
            side1, side2 = side2, side1
        object.__setattr__(self, "side1", side1)
        object.__setattr__(self, "side2", side2)
        if not self.side1 or not self.side2:
            raise ValueError("both sides of a partition must be nonempty")
        dirs = all_directions(self.rank)
        if self.side1 & self.side2:
            raise ValueError("partition sides must be disjoint")
        if (self.side1 | self.side2) != dirs:
            raise ValueError("partition sides must cover all %d directions" % (2 * self.rank))

    @classmethod
    def of(cls, rank: int, side: Iterable[Direction]) -> "Partition":
        """Build the partition with the given set as one side."""
        side = frozenset(side)
        return cls(rank, side, all_directions(rank) - side)

    @classmethod
    def parse(cls, rank: int, text: str) -> "Partition":
        """Parse a comma-separated list of directions as one side, e.g. ``"x2+,x3-"``."""
        items = [piece for piece in text.split(",") if piece.strip()]
        if not items:
            raise ValueError("empty partition side spec")
        side = frozenset(Direction.parse(piece) for piece in items)
        for d in side:
            if d.index > rank:
                raise ValueError("direction %s exceeds rank %d" % (d.encode(), rank))
        return cls.of(rank, side)

    @property
    def key(self) -> Tuple:
        return (self.rank, side_key(self.side1))

    def encode(self) -> str:
        return ",".join(encode_side(self.side1))

    def to_json(self) -> dict:
        return {"rank": self.rank, "side1": list(encode_side(self.side1))}

    def __repr__(self):
        return "Partition(%d, {%s})" % (self.rank, self.encode())


def _check_pair(p: Partition, q: Partition) -> None:
    if p.rank != q.rank:
        raise ValueError("partitions have different ranks: %d vs %d" % (p.rank, q.rank))


def is_thick(p: Partition) -> bool:
    """True iff both sides hold at least two directions (a genuine blow-up edge)."""
    return len(p.side1) >= 2 and len(p.side2) >= 2


def is_ideal(p: Partition) -> bool:
    """True iff some pair {xi+, xi-} is split across the two sides.

    Such partitions are exactly the ones determining nonseparating
    splittings; the singleton partitions are the (trivial) petal edges.
    """
    return separates_some_pair(p.side1, p.rank)


@dataclass(frozen=True)
class CornerSets:
    """The four intersections ``k_ij = side_i(p) & side_j(q)`` of a pair.

    The four sets always partition the full direction set; all four are
    nonempty exactly when the pair crosses.
    """

    k11: frozenset
    k12: frozenset
    k21: frozenset
    k22: frozenset

    def __post_init__(self):
        corners = self.as_tuple()
        for a, b in itertools.combinations(corners, 2):
            if a & b:
                raise ValueError("corner sets must be pairwise disjoint")

    def as_tuple(self) -> Tuple[frozenset, frozenset, frozenset, frozenset]:
        return (self.k11, self.k12, self.k21, self.k22)

    def to_json(self) -> dict:
        return {
            name: list(encode_side(side))
            for name, side in zip(("k11", "k12", "k21", "k22"), self.as_tuple())
        }


def corner_sets(p: Partition, q: Partition) -> CornerSets:
    """The four corner sets of the pair, under canonical orientations."""
    _check_pair(p, q)
    return CornerSets(
        k11=p.side1 & q.side1,
        k12=p.side1 & q.side2,
        k21=p.side2 & q.side1,
        k22=p.side2 & q.side2,
    )


def crosses(p: Partition, q: Partition) -> bool:
    """True iff all four corner sets are nonempty (the spheres meet in a circle)."""
    _check_pair(p, q)
    return bool(
        p.side1 & q.side1 and p.side1 & q.side2 and p.side2 & q.side1 and p.side2 & q.side2
    )


def compatible(p: Partition, q: Partition) -> bool:
    """Negation of :func:`crosses`: some corner is empty, so the pair refines."""
    return not crosses(p, q)


def all_alignments(p: Partition, q: Partition) -> Tuple[Tuple[frozenset, frozenset], ...]:
    """Every ordered choice (side of p, side of q) with empty intersection.

    Used to check alignment-independence of predicates; distinct compatible
    partitions admit exactly one such choice, an equal pair admits two.
    """
    _check_pair(p, q)
    pairs = []
    for a in (p.side1, p.side2):
        for b in (q.side1, q.side2):
            if not (a & b):
                pairs.append((a, b))
    return tuple(pairs)


def aligned_sides(p: Partition, q: Partition) -> Optional[Tuple[frozenset, frozenset]]:
    """A choice of disjoint sides for a compatible pair, or None when crossing.

    Tie-break: among valid choices, the lexicographically least pair of
    canonical side encodings.
    """
    choices = all_alignments(p, q)
    if not choices:
        return None
    return min(choices, key=lambda ab: (side_key(ab[0]), side_key(ab[1])))


def _require_ideal(p: Partition, name: str) -> None:
    if not is_ideal(p):
        raise ValueError("%s must be ideal (it separates no pair): {%s}" % (name, p.encode()))


def rose_compatible(p: Partition, q: Partition) -> bool:
    """True iff the common refinement of two distinct ideal edges is a two-petal rose.

    The pair must be compatible, and the union of the aligned disjoint
    sides must separate some pair {xi+, xi-}; otherwise the refinement is a
    two-edge loop (circle splitting).  The verdict does not depend on which
    valid alignment is chosen.
    """
    _check_pair(p, q)
    _require_ideal(p, "p")
    _require_ideal(q, "q")
    if p == q:
        raise ValueError("rose compatibility is defined for distinct partitions")
    sides = aligned_sides(p, q)
    if sides is None:
        return False
    a, b = sides
    return separates_some_pair(a | b, p.rank)


def circle_compatible(p: Partition, q: Partition) -> bool:
    """Compatible ideal edges of distinct splittings whose refinement is a two-edge loop."""
    if class_of(p) == class_of(q):
        return False
    return compatible(p, q) and not rose_compatible(p, q)


def is_cagey(p: Partition, q: Partition) -> bool:
    """Combinatorial test for a crossing pair whose boundary splitting is a cage.

    Requires: the pair crosses, each corner set determines an ideal edge,
    and the union of every two distinct corner sets separates some pair.
    """
    _check_pair(p, q)
    _require_ideal(p, "p")
    _require_ideal(q, "q")
    if not crosses(p, q):
        return False
    corners = corner_sets(p, q).as_tuple()
    rank = p.rank
    if not all(separates_some_pair(c, rank) for c in corners):
        return False
    return all(
        separates_some_pair(a | b, rank) for a, b in itertools.combinations(corners, 2)
    )


@dataclass(frozen=True)
class SplittingClass:
    """A splitting in the universe, as an identified class of partitions.

    Each petal of the rose is represented by two partitions (the two
    singleton sides {xi+} and {xi-}); both map to the class ``petal(i)``.
    Thick partitions represent pairwise distinct splittings and each is its
    own class.
    """

    kind: str  # "petal" | "thick"
    petal_index: Optional[int]
    representative: Partition

    def __post_init__(self):
        if self.kind not in ("petal", "thick"):
            raise ValueError("kind must be 'petal' or 'thick'")
        if (self.kind == "petal") != (self.petal_index is not None):
            raise ValueError("petal classes carry an index, thick classes do not")

    @property
    def rank(self) -> int:
        return self.representative.rank

    def representatives(self) -> Tuple[Partition, ...]:
        """All partitions determining this splitting (two for a petal)."""
        if self.kind == "thick":
            return (self.representative,)
        i, rank = self.petal_index, self.rank
        return (
            Partition.of(rank, {Direction(i, 1)}),
            Partition.of(rank, {Direction(i, -1)}),
        )

    @property
    def key(self) -> Tuple:
        if self.kind == "petal":
            return (0, self.petal_index, ())
        return (1, 0, self.representative.key)

    def encode(self) -> str:
        if self.kind == "petal":
            return "petal:%d" % self.petal_index
        return self.representative.encode()

    def __repr__(self):
        return "SplittingClass(%s)" % self.encode()


def petal_class(rank: int, index: int) -> SplittingClass:
    if not (1 <= index <= rank):
        raise ValueError("petal index %d out of range for rank %d" % (index, rank))
    rep = Partition.of(rank, {Direction(index, 1)})
    return SplittingClass("petal", index, rep)


def class_of(p: Partition) -> SplittingClass:
    """The splitting class of a partition (petal classes identified)."""
    if len(p.side1) == 1:
        (d,) = p.side1
        return petal_class(p.rank, d.index)
    if len(p.side2) == 1:
        (d,) = p.side2
        return petal_class(p.rank, d.index)
    return SplittingClass("thick", None, p)


def parse_class(rank: int, text: str) -> SplittingClass:
    """Parse ``"petal:3"`` or a side spec such as ``"x1-,x2+"``."""
    text = text.strip()
    if text.startswith("petal:"):
        return petal_class(rank, int(text[len("petal:"):]))
    return class_of(Partition.parse(rank, text))


def classes_compatible(s: SplittingClass, t: SplittingClass) -> bool:
    """Compatibility of splittings: petals never cross anything in the universe."""
    if s.rank != t.rank:
        raise ValueError("classes have different ranks")
    if s.kind == "petal" or t.kind == "petal":
        return True
    return compatible(s.representative, t.representative)


def classes_rose_compatible(s: SplittingClass, t: SplittingClass) -> bool:
    """Rose compatibility on classes; independent of representative choice."""
    if s == t:
        raise ValueError("rose compatibility is defined for distinct splittings")
    return rose_compatible(s.representative, t.representative)


def classes_cagey(s: SplittingClass, t: SplittingClass) -> bool:
    if s == t:
        raise ValueError("caginess is defined for distinct splittings")
    return is_cagey(s.representative, t.representative)


def _check_rank_guard(rank: int, max_rank: int) -> None:
    if not (MIN_RANK <= rank <= max_rank):
        raise ValueError(
            "rank %d outside the enumeration guard [%d, %d]" % (rank, MIN_RANK, max_rank)
        )


def enumerate_ideal_edges(rank: int, thick_only: bool = False,
                          max_rank: int = MAX_RANK) -> list:
    """All ideal partitions at the given rank, canonically oriented and sorted.

    The base direction ``x1+`` is pinned to side2, so candidate side1 sets
    range over the nonempty subsets of the remaining 2N-1 directions.
    """
    _check_rank_guard(rank, max_rank)
    rest = sorted_directions(all_directions(rank) - {Direction(1, 1)})
    found = []
    for size in range(1, len(rest) + 1):
        for combo in itertools.combinations(rest, size):
            p = Partition.of(rank, combo)
            if not is_ideal(p):
                continue
            if thick_only and not is_thick(p):
                continue
            found.append(p)
    found.sort(key=lambda p: p.key)
    return found


def enumerate_splitting_classes(rank: int, max_rank: int = MAX_RANK) -> list:
    """All splitting classes of the universe: N petals plus the thick ideal edges."""
    classes = [petal_class(rank, i) for i in range(1, rank + 1)]
    classes.extend(
        class_of(p) for p in enumerate_ideal_edges(rank, thick_only=True, max_rank=max_rank)
    )
    classes.sort(key=lambda c: c.key)
    return classes


def count_splitting_classes(rank: int, max_rank: int = MAX_RANK) -> int:
    return len(enumerate_splitting_classes(rank, max_rank=max_rank))
