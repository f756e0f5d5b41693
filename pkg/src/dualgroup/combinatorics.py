"""Hops, runs and partitions of [n] = {0, 1, ..., n}.

Subsets are stored as integer bit masks (bit v set <=> v in the subset).
A hop is a set of disjoint nonempty subsets; a partition of [n] is a
complete hop.  Textual notation follows the digit convention: elements of
a block are concatenated, blocks are separated by commas ("13,4" is
{{1,3},{4}}), so only labels 0-9 can be written this way.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Iterator

MAX_N = 14
MAX_ENUM_N = 8


# -- subsets as bit masks ----------------------------------------------------

def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for v in elements:
        if v < 0:
            raise ValueError(f"negative element {v}")
        m |= 1 << v
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def full_mask(n: int) -> int:
    """Mask of [n] = {0, ..., n}."""
    return (1 << (n + 1)) - 1


def complement(mask: int, n: int) -> int:
    return full_mask(n) & ~mask


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def mask_text(mask: int) -> str:
    els = elements_of(mask)
    if any(v > 9 for v in els):
        raise ValueError("digit notation only covers labels 0-9")
    return "".join(str(v) for v in els)


# -- hops ---------------------------------------------------------------------

@dataclass(frozen=True)
class Hop:
    """A set of pairwise-disjoint nonempty subsets, canonically ordered by
    minimum element."""

    blocks: tuple[int, ...]

    def __post_init__(self):
        seen = 0
        for b in self.blocks:
            if b <= 0:
                raise ValueError("hop blocks must be nonempty")
            if seen & b:
                raise ValueError("hop blocks must be disjoint")
            seen |= b
        object.__setattr__(self, "blocks", tuple(sorted(self.blocks, key=lowest)))

    @classmethod
    def parse(cls, text: str) -> "Hop":
        text = text.strip().strip("(){}").replace(" ", "")
        if not text:
            return cls(())
        blocks = []
        for part in text.split(","):
            if not part or not part.isdigit():
                raise ValueError(f"bad hop block {part!r} in {text!r}")
            if len(set(part)) != len(part):
                raise ValueError(f"repeated element in block {part!r}")
            blocks.append(mask_of(int(c) for c in part))
        return cls(tuple(blocks))

    @property
    def support(self) -> int:
        m = 0
        for b in self.blocks:
            m |= b
        return m

    def __len__(self) -> int:
        return len(self.blocks)

    def __contains__(self, block: int) -> bool:
        return block in self.blocks

    def covers(self, i: int) -> bool:
        """i in-in H: some block contains i."""
        return bool(self.support >> i & 1)

    def block_of(self, i: int) -> int:
        for b in self.blocks:
            if b >> i & 1:
                return b
        raise KeyError(f"{i} is not covered by {self}")

    def together(self, i: int, j: int) -> bool:
        return together(i, j, self)

    def separate(self, i: int, j: int) -> bool:
        return not together(i, j, self)

    def pure(self) -> "Hop":
        """The pure hop on the same elements (all singletons)."""
        return Hop(tuple(1 << v for v in elements_of(self.support)))

    def run(self) -> "Hop":
        """The run on the same elements (one block)."""
        s = self.support
        return Hop((s,) if s else ())

    def is_pure(self) -> bool:
        return all(b & (b - 1) == 0 for b in self.blocks)

    def is_run(self) -> bool:
        return len(self.blocks) == 1

    def without(self, i: int) -> "Hop":
        """H \\ i: drop i from its block, removing the block if it empties."""
        out = []
        for b in self.blocks:
            b2 = b & ~(1 << i)
            if b2:
                out.append(b2)
        return Hop(tuple(out))

    def text(self) -> str:
        return ",".join(mask_text(b) for b in self.blocks)

    def __str__(self) -> str:
        return self.text()


def together(i: int, j: int, hop: Hop) -> bool:
    """True iff i and j lie in a common block of ``hop``."""
    if i == j:
        raise ValueError("together() needs two distinct elements")
    if not hop.covers(i) or not hop.covers(j):
        raise ValueError(f"{i} and {j} must both be covered by {hop}")
    return hop.block_of(i) == hop.block_of(j)


def separate(i: int, j: int, hop: Hop) -> bool:
    return not together(i, j, hop)


# -- partitions of [n] ----------------------------------------------------------

@dataclass(frozen=True)
class Partition(Hop):
    """A complete hop across [n] with at least two blocks."""

    n: int = 0

    def __post_init__(self):
        super().__post_init__()
        if not 1 <= self.n <= MAX_N:
            raise ValueError(f"n must lie in 1..{MAX_N}, got {self.n}")
        if self.support != full_mask(self.n):
            raise ValueError(f"blocks {self.blocks} do not cover [0..{self.n}]")
        if len(self.blocks) < 2:
            raise ValueError("a partition needs at least two blocks")

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Partition":
        hop = Hop.parse(text)
        if n is None:
            n = hop.support.bit_length() - 1
        return cls(hop.blocks, n)

    @classmethod
    def of(cls, blocks: Iterable[int], n: int) -> "Partition":
        return cls(tuple(blocks), n)

    @property
    def tomo_degree(self) -> int:
        """k for a k-tomo: number of blocks minus one."""
        return len(self.blocks) - 1

    def sort_key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(elements_of(b) for b in self.blocks)

    def __lt__(self, other: "Partition") -> bool:
        return self.sort_key() < other.sort_key()

    def relabel(self, perm: tuple[int, ...]) -> "Partition":
        """Image under the vertex map v -> perm[v]."""
        return Partition(tuple(mask_of(perm[v] for v in elements_of(b))
                               for b in self.blocks), self.n)


def _set_partitions(elements: list[int]) -> Iterator[list[int]]:
    # restricted-growth recursion: place each element into an existing block or a new one
    if not elements:
        yield []
        return
    first, rest = elements[0], elements[1:]
    for sub in _set_partitions(rest):
        for idx in range(len(sub)):
            yield sub[:idx] + [sub[idx] | (1 << first)] + sub[idx + 1:]
        yield [1 << first] + sub


@lru_cache(maxsize=None)
def _all_partitions(n: int) -> tuple[Partition, ...]:
    parts = [Partition(tuple(p), n) for p in _set_partitions(list(range(n + 1))) if len(p) >= 2]
    return tuple(sorted(parts, key=Partition.sort_key))


def enumerate_partitions(n: int, min_blocks: int = 3, max_blocks: int | None = None) -> list[Partition]:
    """All partitions of [n] into at least ``min_blocks`` blocks, canonical order."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if min_blocks < 2:
        raise ValueError("min_blocks must be at least 2")
    if n > MAX_ENUM_N:
        raise ValueError(f"partition enumeration is capped at n <= {MAX_ENUM_N}")
    hi = n + 1 if max_blocks is None else max_blocks
    return [p for p in _all_partitions(n) if min_blocks <= len(p) <= hi]


def tomo_partitions(n: int) -> list[Partition]:
    """P(n): the partitions of [n] into three or more blocks."""
    return enumerate_partitions(n, 3)


def stirling2(m: int, k: int) -> int:
    """Stirling number of the second kind, via the explicit alternating sum."""
    if m < 0 or k < 0:
        raise ValueError("m and k must be non-negative")
    if k > m:
        return 0
    if k == 0:
        return 1 if m == 0 else 0
    total = sum((-1) ** (k - j) * comb(k, j) * j ** m for j in range(1, k + 1))
    q, r = divmod(total, factorial(k))
    assert r == 0
    return q


def tomo_count(n: int) -> int:
    """Number of components of a statomorphism: sum_{k>=3} S(n+1, k)."""
    return sum(stirling2(n + 1, k) for k in range(3, n + 2))


def compatible_through(p: Partition, q: Partition) -> int | None:
    """The unique block I with I in p and I^C in q, or None."""
    if p.n != q.n:
        raise ValueError("partitions of different ground sets")
    found = [b for b in p.blocks if complement(b, p.n) in q.blocks]
    if len(found) > 1:
        # only possible when p = q has exactly two blocks
        raise AssertionError(f"{p} and {q} compatible through several blocks: {found}")
    return found[0] if found else None


def compose_partitions(p: Partition, q: Partition) -> Partition:
    """P o Q = (P minus I) union (Q minus I^C)."""
    i = compatible_through(p, q)
    if i is None:
        raise ValueError(f"{p} and {q} are not compatible")
    ic = complement(i, p.n)
    blocks = [b for b in p.blocks if b != i] + [b for b in q.blocks if b != ic]
    return Partition(tuple(blocks), p.n)
