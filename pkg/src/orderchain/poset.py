"""Finite posets on the labels 0..d-1 and the order-theoretic enumerations
built on them.

Subsets of elements are plain ``int`` bit masks: bit ``i`` set means
element ``i`` is present. Every enumeration returns masks in ascending
numeric order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import CycleError, EmptySetError, NotAntichainError, SizeError

MAX_ELEMENTS = 64
MAX_LINEAR_EXTENSION_D = 20


def bit(i: int) -> int:
    return 1 << i


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Poset:
    """A partial order on ``range(d)``.

    ``down[i]`` is the mask of elements ``<= i`` and ``up[i]`` the mask of
    elements ``>= i``; both include ``i`` itself. ``names`` is cosmetic and
    ignored by equality.
    """

    d: int
    down: tuple[int, ...]
    up: tuple[int, ...] = field(repr=False)
    names: tuple[str, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not 1 <= self.d <= MAX_ELEMENTS:
            raise ValueError(f"poset size must be in 1..{MAX_ELEMENTS}, got {self.d}")
        if len(self.down) != self.d or len(self.up) != self.d:
            raise ValueError("relation masks do not match d")
        if self.names is not None and len(self.names) != self.d:
            raise ValueError("names must list one label per element")
        full = (1 << self.d) - 1
        for i in range(self.d):
            if not self.down[i] >> i & 1:
                raise ValueError(f"relation is not reflexive at {i}")
            if self.down[i] & ~full:
                raise ValueError("relation mentions elements outside 0..d-1")
            # antisymmetry: nothing else is both below and above i
            if self.down[i] & self.up[i] != bit(i):
                raise CycleError(f"element {i} lies on a cycle")
            for j in bits(self.down[i]):
                if self.down[j] & ~self.down[i]:
                    raise ValueError("relation is not transitive")
                if not self.up[j] >> i & 1:
                    raise ValueError("up and down masks disagree")

    @classmethod
    def from_leq(cls, leq: Sequence[Sequence[bool]], names=None) -> "Poset":
        """Build from a full ``d x d`` relation, ``leq[i][j]`` meaning i <= j."""
        d = len(leq)
        down = tuple(mask_of(i for i in range(d) if leq[i][j]) for j in range(d))
        up = tuple(mask_of(j for j in range(d) if leq[i][j]) for i in range(d))
        return cls(d, down, up, names)

    @property
    def leq(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(
            tuple(bool(self.up[i] >> j & 1) for j in range(self.d)) for i in range(self.d)
        )

    @property
    def full(self) -> int:
        return (1 << self.d) - 1

    def less(self, i: int, j: int) -> bool:
        return i != j and bool(self.up[i] >> j & 1)

    def comparable(self, i: int, j: int) -> bool:
        return bool((self.up[i] | self.down[i]) >> j & 1)

    def comparable_mask(self, i: int) -> int:
        """Elements comparable to ``i``, excluding ``i``."""
        return (self.up[i] | self.down[i]) & ~bit(i)

    def label(self, i: int) -> str:
        return self.names[i] if self.names else str(i)

    def is_ideal(self, mask: int) -> bool:
        return all(self.down[i] & ~mask == 0 for i in bits(mask))

    def is_antichain(self, mask: int) -> bool:
        return all(self.comparable_mask(i) & mask == 0 for i in bits(mask))

    def is_chain(self, mask: int) -> bool:
        return all((self.comparable_mask(i) | bit(i)) & mask == mask for i in bits(mask))

    def renamed(self, names) -> "Poset":
        return Poset(self.d, self.down, self.up, tuple(names) if names else None)


class XWitness(NamedTuple):
    """An induced copy of the five-element poset X: a, b < c < g, h."""

    a: int
    b: int
    c: int
    g: int
    h: int


def _check_index(d: int, i: int):
    if not isinstance(i, int) or not 0 <= i < d:
        raise IndexError(f"element label {i!r} out of range 0..{d - 1}")


def poset_from_covers(d: int, covers: Iterable[tuple[int, int]], names=None) -> Poset:
    """Reflexive-transitive closure of the relation ``i < j`` for each pair."""
    if not 1 <= d <= MAX_ELEMENTS:
        raise ValueError(f"poset size must be in 1..{MAX_ELEMENTS}, got {d}")
    succ = [0] * d
    for i, j in covers:
        _check_index(d, i)
        _check_index(d, j)
        if i == j:
            raise ValueError(f"cover pair ({i}, {j}) relates an element to itself")
        succ[i] |= bit(j)

    up = [0] * d
    for i in range(d):
        seen = bit(i)
        stack = [i]
        while stack:
            k = stack.pop()
            new = succ[k] & ~seen
            seen |= new
            stack.extend(bits(new))
        up[i] = seen
    for i in range(d):
        for j in bits(up[i] & ~bit(i)):
            if up[j] >> i & 1:
                raise CycleError(f"cover relation has a directed cycle through {i} and {j}")
    down = [0] * d
    for i in range(d):
        for j in bits(up[i]):
            down[j] |= bit(i)
    return Poset(d, tuple(down), tuple(up), tuple(names) if names else None)


def cover_pairs(p: Poset) -> list[tuple[int, int]]:
    """Pairs (i, j) where j covers i, in lexicographic order."""
    out = []
    for i in range(p.d):
        above = p.up[i] & ~bit(i)
        for j in bits(above):
            # nothing strictly between i and j
            if above & p.down[j] == bit(j):
                out.append((i, j))
    return out


def is_connected_subset(p: Poset, s: int) -> bool:
    """Whether the comparability graph induced on ``s`` is connected."""
    if s == 0:
        raise EmptySetError("connectivity of the empty set is undefined")
    start = s & -s
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for i in bits(frontier):
            nxt |= p.comparable_mask(i)
        nxt &= s & ~seen
        seen |= nxt
        frontier = nxt
    return seen == s


def linear_extension_order(p: Poset) -> list[int]:
    """Some topological order of the elements (smallest down-set first)."""
    return sorted(range(p.d), key=lambda i: (popcount(p.down[i]), i))


def enumerate_ideals(p: Poset) -> list[int]:
    order = linear_extension_order(p)
    out = []

    def grow(k, current):
        if k == len(order):
            out.append(current)
            return
        x = order[k]
        grow(k + 1, current)
        if p.down[x] & ~current == bit(x):
            grow(k + 1, current | bit(x))

    grow(0, 0)
    out.sort()
    return out


def enumerate_antichains(p: Poset) -> list[int]:
    out = []

    def grow(k, current, blocked):
        if k == p.d:
            out.append(current)
            return
        grow(k + 1, current, blocked)
        if not blocked >> k & 1:
            grow(k + 1, current | bit(k), blocked | p.comparable_mask(k))

    grow(0, 0, 0)
    out.sort()
    return out


def max_of(p: Poset, s: int) -> int:
    return mask_of(i for i in bits(s) if p.up[i] & s == bit(i))


def min_of(p: Poset, s: int) -> int:
    return mask_of(i for i in bits(s) if p.down[i] & s == bit(i))


def down_closure(p: Poset, s: int) -> int:
    out = 0
    for i in bits(s):
        out |= p.down[i]
    return out


def up_closure(p: Poset, s: int) -> int:
    out = 0
    for i in bits(s):
        out |= p.up[i]
    return out


def ideal_generated_by(p: Poset, a: int) -> int:
    """The ideal whose maximal elements are the antichain ``a``."""
    if not p.is_antichain(a):
        raise NotAntichainError(f"mask {a:#x} is not an antichain")
    return down_closure(p, a)


def maximal_chains(p: Poset) -> list[int]:
    """All maximal chains, i.e. saturated chains from a minimal to a maximal
    element, walked along covers."""
    succ = [0] * p.d
    for i, j in cover_pairs(p):
        succ[i] |= bit(j)
    out = []

    def walk(i, chain):
        if not succ[i]:
            out.append(chain)
            return
        for j in bits(succ[i]):
            walk(j, chain | bit(j))

    for m in bits(min_of(p, p.full)):
        walk(m, bit(m))
    out.sort()
    return out


def count_linear_extensions(p: Poset) -> int:
    """e(P) by dynamic programming over the lattice of ideals."""
    if p.d > MAX_LINEAR_EXTENSION_D:
        raise SizeError(f"linear extension count is guarded at d <= {MAX_LINEAR_EXTENSION_D}")
    ways = {0: 1}
    for ideal in enumerate_ideals(p):
        if ideal:
            ways[ideal] = sum(ways[ideal ^ bit(x)] for x in bits(max_of(p, ideal)))
    return ways[p.full]


def find_X_subposet(p: Poset) -> XWitness | None:
    """Lexicographically first (a, b, c, g, h) with a < b, g < h as labels,
    a || b, g || h and a, b < c < g, h. Such five elements always induce X."""
    if p.d < 5:
        return None
    for a, b in combinations(range(p.d), 2):
        if p.comparable(a, b):
            continue
        # c must sit above both a and b
        for c in bits(p.up[a] & p.up[b]):
            above = p.up[c] & ~bit(c)
            for g in bits(above):
                rest = above & ~p.comparable_mask(g) & ~bit(g) & ~((1 << g) - 1)
                if rest:
                    return XWitness(a, b, c, g, (rest & -rest).bit_length() - 1)
    return None
