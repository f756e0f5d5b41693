"""The graph group Gra(n+1), S_{n+1}, and the embedding of DG_n in their
semidirect product.

Graphs on the vertices 0..n are bit vectors over the edges (i, j), i < j,
indexed in lexicographic order; the group law is XOR.  Permutations are
image tuples and compose right to left, ``(s * t)[v] == s[t[v]]``.

The semidirect product uses the right action of S_{n+1} on graphs:

    (g1, s1) * (g2, s2) = (s2^-1 . g1 + g2, s1 * s2)

where ``s . g`` relabels vertex v as s[v].  With this law the generator
images X_i -> (e_{0i}, (0 i)) reproduce both products written out in the
proof of injectivity,

    X_i X_j X_i     -> (e_0i + e_ij + e_j0, (i j))
    X_i X_j X_i X_k -> (e_kj + e_ij + e_ki + e_0k, (i j)(0 k)).
"""

from __future__ import annotations

import enum
import random
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, factorial
from typing import Iterable, Sequence

from . import gf2
from .combinatorics import MAX_N

Word = tuple[int, ...]


# -- words --------------------------------------------------------------------

def parse_word(text: str | Iterable[int]) -> Word:
    """Digit string ("12131213") or iterable of generator indices."""
    if isinstance(text, str):
        text = text.strip().replace(".", "").replace(" ", "")
        if text and not text.isdigit():
            raise ValueError(f"bad word {text!r}")
        return tuple(int(c) for c in text)
    return tuple(int(c) for c in text)


def format_word(word: Sequence[int]) -> str:
    return "".join(str(c) for c in word)


def check_word(word: Sequence[int], n: int) -> None:
    for c in word:
        if not 1 <= c <= n:
            raise ValueError(f"generator index {c} out of range 1..{n}")


# -- edges and graphs ---------------------------------------------------------

@lru_cache(maxsize=None)
def edge_list(n: int) -> tuple[tuple[int, int], ...]:
    """Edges of the complete graph on 0..n in lexicographic order."""
    return tuple(combinations(range(n + 1), 2))


@lru_cache(maxsize=None)
def _edge_bit_table(n: int) -> tuple[tuple[int, ...], ...]:
    table = [[0] * (n + 1) for _ in range(n + 1)]
    for idx, (i, j) in enumerate(edge_list(n)):
        table[i][j] = table[j][i] = 1 << idx
    return tuple(tuple(r) for r in table)


def edge_index(i: int, j: int, n: int) -> int:
    if i == j:
        raise ValueError("no loops")
    if i > j:
        i, j = j, i
    return i * n - i * (i - 1) // 2 + (j - i - 1)


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must lie in 1..{MAX_N}, got {n}")


@dataclass(frozen=True, order=True)
class LabeledGraph:
    """A subgraph of the complete graph on vertices 0..n."""

    n: int
    bits: int = 0

    def __post_init__(self):
        _check_n(self.n)
        if self.bits < 0 or self.bits >> comb(self.n + 1, 2):
            raise ValueError("edge bits out of range")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], n: int) -> "LabeledGraph":
        t = _edge_bit_table(n)
        bits = 0
        for i, j in edges:
            if not (0 <= i <= n and 0 <= j <= n) or i == j:
                raise ValueError(f"bad edge ({i}, {j}) for n={n}")
            bits ^= t[i][j]
        return cls(n, bits)

    @classmethod
    def parse(cls, text: str, n: int) -> "LabeledGraph":
        """Comma-separated two-digit edges, e.g. "01,02,31,32"."""
        text = text.strip()
        if not text:
            return cls(n)
        edges = []
        for tok in text.split(","):
            tok = tok.strip()
            if len(tok) != 2 or not tok.isdigit():
                raise ValueError(f"bad edge token {tok!r}")
            edges.append((int(tok[0]), int(tok[1])))
        return cls.from_edges(edges, n)

    @classmethod
    def empty(cls, n: int) -> "LabeledGraph":
        return cls(n)

    @classmethod
    def complete(cls, n: int, vertices: Iterable[int] | None = None) -> "LabeledGraph":
        vs = range(n + 1) if vertices is None else sorted(vertices)
        return cls.from_edges(combinations(vs, 2), n)

    @classmethod
    def edge(cls, i: int, j: int, n: int) -> "LabeledGraph":
        return cls.from_edges([(i, j)], n)

    def edges(self) -> list[tuple[int, int]]:
        return [e for idx, e in enumerate(edge_list(self.n)) if self.bits >> idx & 1]

    @property
    def num_edges(self) -> int:
        return bin(self.bits).count("1")

    def valencies(self) -> list[int]:
        val = [0] * (self.n + 1)
        for i, j in self.edges():
            val[i] += 1
            val[j] += 1
        return val

    def __add__(self, other: "LabeledGraph") -> "LabeledGraph":
        if other.n != self.n:
            raise ValueError("graphs on different vertex sets")
        return LabeledGraph(self.n, self.bits ^ other.bits)

    __xor__ = __add__

    def relabel(self, perm: "Perm | Sequence[int]") -> "LabeledGraph":
        """s . g: the edge {i, j} becomes {s[i], s[j]}."""
        img = perm.image if isinstance(perm, Perm) else perm
        t = _edge_bit_table(self.n)
        bits = 0
        for i, j in self.edges():
            bits |= t[img[i]][img[j]]
        return LabeledGraph(self.n, bits)

    def is_empty(self) -> bool:
        return self.bits == 0

    def text(self) -> str:
        return ",".join(f"{i}{j}" for i, j in self.edges())

    def __str__(self) -> str:
        return "{" + self.text() + "}"

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        lines += [f"  {v};" for v in range(self.n + 1)]
        lines += [f"  {i} -- {j};" for i, j in self.edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- permutations -------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Perm:
    """A permutation of 0..n as an image tuple, image[v] = s(v)."""

    image: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.image) != list(range(len(self.image))):
            raise ValueError(f"{self.image} is not a permutation")

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(n + 1)))

    @classmethod
    def transposition(cls, i: int, j: int, n: int) -> "Perm":
        img = list(range(n + 1))
        img[i], img[j] = img[j], img[i]
        return cls(tuple(img))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Perm":
        img = list(range(n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(tuple(img))

    @property
    def n(self) -> int:
        return len(self.image) - 1

    def __call__(self, v: int) -> int:
        return self.image[v]

    def __mul__(self, other: "Perm") -> "Perm":
        return Perm(tuple(self.image[v] for v in other.image))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.image)
        for v, w in enumerate(self.image):
            inv[w] = v
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(v == w for v, w in enumerate(self.image))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(len(self.image)):
            if start in seen or self.image[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            v = self.image[start]
            while v != start:
                cyc.append(v)
                seen.add(v)
                v = self.image[v]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"


# -- the semidirect product ---------------------------------------------------

@dataclass(frozen=True, order=True)
class DualityElement:
    """An element (graph, perm) of Gra(n+1) x| S_{n+1}."""

    graph: LabeledGraph
    perm: Perm

    def __post_init__(self):
        if self.graph.n != self.perm.n:
            raise ValueError("graph and permutation on different vertex sets")

    @property
    def n(self) -> int:
        return self.graph.n

    @classmethod
    def identity(cls, n: int) -> "DualityElement":
        return cls(LabeledGraph(n), Perm.identity(n))

    def __mul__(self, other: "DualityElement") -> "DualityElement":
        g = self.graph.relabel(other.perm.inverse()) + other.graph
        return DualityElement(g, self.perm * other.perm)

    def inverse(self) -> "DualityElement":
        return DualityElement(self.graph.relabel(self.perm), self.perm.inverse())

    def __pow__(self, k: int) -> "DualityElement":
        if k < 0:
            return self.inverse() ** (-k)
        out = DualityElement.identity(self.n)
        for _ in range(k):
            out = out * self
        return out

    def is_identity(self) -> bool:
        return self.graph.is_empty() and self.perm.is_identity()

    def key(self) -> tuple[int, tuple[int, ...]]:
        return (self.graph.bits, self.perm.image)

    def __str__(self) -> str:
        return f"({self.graph}, {self.perm})"


def psi_generator(i: int, n: int) -> DualityElement:
    """Image of X_i: (e_{0i}, (0 i))."""
    _check_n(n)
    if not 1 <= i <= n:
        raise ValueError(f"generator index {i} out of range 1..{n}")
    return DualityElement(LabeledGraph.edge(0, i, n), Perm.transposition(0, i, n))


def eval_word(word: str | Sequence[int], n: int) -> DualityElement:
    """Product of the generator images, left to right as written."""
    w = parse_word(word)
    check_word(w, n)
    out = DualityElement.identity(n)
    for c in w:
        out = out * psi_generator(c, n)
    return out


def square_graph(i: int, j: int, k: int, n: int) -> LabeledGraph:
    """The 4-cycle 0 - i - k - j - 0, image of (X_i X_j X_i X_k)^2."""
    if len({i, j, k}) != 3:
        raise ValueError("square_graph needs distinct i, j, k")
    for v in (i, j, k):
        if not 1 <= v <= n:
            raise ValueError(f"index {v} out of range 1..{n}")
    return LabeledGraph.from_edges([(0, i), (0, j), (k, i), (k, j)], n)


def square_word(i: int, j: int, k: int) -> Word:
    return (i, j, i, k) * 2


def is_kernel_graph(g: LabeledGraph) -> bool:
    """Every vertex of even valency and an even number of edges."""
    return g.num_edges % 2 == 0 and all(v % 2 == 0 for v in g.valencies())


# -- the kernel K_{n+1} ---------------------------------------------------------

def kernel_dimension(n: int) -> int:
    return (n + 1) * (n - 2) // 2


def _kernel_constraints(n: int) -> list[int]:
    t = _edge_bit_table(n)
    rows = []
    for v in range(n + 1):
        r = 0
        for w in range(n + 1):
            if w != v:
                r |= t[v][w]
        rows.append(r)
    rows.append((1 << comb(n + 1, 2)) - 1)
    return rows


def _four_cycles(n: int) -> list[int]:
    # all S_{n+1}-relabelings of square graphs: every 4-cycle on 0..n
    t = _edge_bit_table(n)
    out = []
    for a, b, c, d in combinations(range(n + 1), 4):
        for p, q, r, s in ((a, b, c, d), (a, b, d, c), (a, c, b, d)):
            out.append(t[p][q] | t[q][r] | t[r][s] | t[s][p])
    return out


def kernel_basis(n: int) -> list[LabeledGraph]:
    """GF(2) basis of the even-valency, even-edge-count graphs, in RREF."""
    _check_n(n)
    if n < 2:
        raise ValueError("kernel_basis needs n >= 2")
    basis = gf2.nullspace(_kernel_constraints(n), comb(n + 1, 2))
    if len(basis) != kernel_dimension(n):
        raise AssertionError(f"kernel dimension {len(basis)} != {kernel_dimension(n)}")
    squares = gf2.rref(_four_cycles(n))
    if squares != basis:
        raise AssertionError("span of square graphs differs from the parity kernel")
    return [LabeledGraph(n, b) for b in basis]


def kernel_elements(n: int) -> list[LabeledGraph]:
    """All 2^dim kernel graphs (n <= 6), sorted by edge bits."""
    if n > 6:
        raise ValueError("kernel_elements is limited to n <= 6")
    basis = [g.bits for g in kernel_basis(n)]
    elems = [0]
    for b in basis:
        elems += [e ^ b for e in elems]
    return [LabeledGraph(n, e) for e in sorted(elems)]


def dg_order(n: int) -> int:
    """|DG_n| = 2^((n+1)(n-2)/2) (n+1)!."""
    if n < 2:
        raise ValueError("dg_order needs n >= 2")
    return 2 ** kernel_dimension(n) * factorial(n + 1)


# -- enumeration and membership -------------------------------------------------

BFS_MAX_N = 5


def bfs_enumerate(n: int, allow_large: bool = False) -> list[DualityElement]:
    """All elements of Psi(DG_n), by closure of the generators.

    Sorted by (perm image, edge bits).  n = 6 (about 8.2e7 elements) needs
    ``allow_large``.
    """
    if n < 2:
        raise ValueError("bfs_enumerate needs n >= 2")
    if n > BFS_MAX_N and not (allow_large and n == 6):
        raise ValueError(f"bfs_enumerate is limited to n <= {BFS_MAX_N} (n = 6 needs allow_large)")
    return [DualityElement(LabeledGraph(n, bits), Perm(img))
            for bits, img in sorted(_closure(n), key=lambda kv: (kv[1], kv[0]))]


def _closure(n: int) -> set[tuple[int, tuple[int, ...]]]:
    # left multiplication by X_i: (e_0i, l_i) * (g, s) = (s^-1 . e_0i + g, l_i s)
    t = _edge_bit_table(n)
    ident = tuple(range(n + 1))
    seen = {(0, ident)}
    queue = deque([(0, ident, ident)])
    while queue:
        bits, img, inv = queue.popleft()
        for i in range(1, n + 1):
            nb = bits ^ t[inv[0]][inv[i]]
            ni = list(img)
            for v in range(n + 1):
                if ni[v] == 0:
                    ni[v] = i
                elif ni[v] == i:
                    ni[v] = 0
            ni = tuple(ni)
            key = (nb, ni)
            if key not in seen:
                seen.add(key)
                nv = list(inv)
                nv[0], nv[i] = nv[i], nv[0]
                queue.append((nb, ni, tuple(nv)))
    return seen


def transposition_word(perm: Perm, strategy: str = "smallest",
                       rng: random.Random | None = None) -> Word:
    """A word w in the X_i with eval_word(w).perm == perm.

    ``strategy`` picks which displaced point to move when 0 is fixed:
    "smallest", "largest" or "random" (needs ``rng``).
    """
    n = perm.n
    cur = list(perm.image)
    letters = []
    while any(v != w for v, w in enumerate(cur)):
        j = cur[0]
        if j == 0:
            moved = [v for v in range(1, n + 1) if cur[v] != v]
            if strategy == "smallest":
                j = moved[0]
            elif strategy == "largest":
                j = moved[-1]
            elif strategy == "random":
                j = (rng or random).choice(moved)
            else:
                raise ValueError(f"unknown strategy {strategy!r}")
        # cur <- cur o (0 j)
        cur[0], cur[j] = cur[j], cur[0]
        letters.append(j)
    return tuple(reversed(letters))


def element_of_dg(x: DualityElement, word: Sequence[int] | None = None) -> bool:
    """Membership in Psi(DG_n): x times a word with the same permutation,
    inverted, must land in the kernel."""
    w = transposition_word(x.perm) if word is None else tuple(word)
    h = eval_word(w, x.n)
    if h.perm != x.perm:
        raise ValueError("word does not realise the permutation of x")
    return is_kernel_graph(x.graph + h.graph)


# -- centre -------------------------------------------------------------------------

def centre_order(n: int) -> int:
    """|Z(DG_n)|: central elements are the S_{n+1}-invariant kernel graphs."""
    if n < 2:
        raise ValueError("centre_order needs n >= 2")
    invariant = [LabeledGraph.empty(n), LabeledGraph.complete(n)]
    return sum(1 for g in invariant if is_kernel_graph(g))


def invariant_graphs(n: int) -> list[LabeledGraph]:
    """Graphs fixed by every transposition (0 i); brute force, n <= 4."""
    if n > 4:
        raise ValueError("invariant_graphs brute force is limited to n <= 4")
    gens = [Perm.transposition(0, i, n) for i in range(1, n + 1)]
    out = []
    for bits in range(1 << comb(n + 1, 2)):
        g = LabeledGraph(n, bits)
        if all(g.relabel(s) == g for s in gens):
            out.append(g)
    return out


def centre_order_bruteforce(n: int, elements: list[DualityElement] | None = None) -> int:
    """Count elements of the full enumeration commuting with every generator."""
    if n > 4:
        raise ValueError("brute-force centre is limited to n <= 4")
    elements = bfs_enumerate(n) if elements is None else elements
    gens = [psi_generator(i, n) for i in range(1, n + 1)]
    return sum(1 for x in elements if all(x * g == g * x for g in gens))


# -- splitting ---------------------------------------------------------------------

class SplitStatus(enum.Enum):
    SPLIT_WITNESS_FOUND = "SPLIT_WITNESS_FOUND"
    WITNESS_CRITERION_FAILS = "WITNESS_CRITERION_FAILS"
    KNOWN_NONSPLIT = "KNOWN_NONSPLIT"


@dataclass
class SplittingReport:
    n: int
    status: SplitStatus
    gamma_in_kernel: bool
    gamma_edges: int
    gamma_valency: int
    relations: dict[str, bool] = field(default_factory=dict)
    section_found: bool | None = None
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "status": self.status.value,
            "gamma_in_kernel": self.gamma_in_kernel,
            "gamma_edges": self.gamma_edges,
            "gamma_valency": self.gamma_valency,
            "relations": self.relations,
            "section_found": self.section_found,
            "note": self.note,
        }


def gamma_graph(i: int, j: int, n: int) -> LabeledGraph:
    """Complete graph on [n] minus {i, j}."""
    return LabeledGraph.complete(n, [v for v in range(n + 1) if v not in (i, j)])


def check_section_relations(images: dict[int, DualityElement], n: int) -> dict[str, bool]:
    """Coxeter relations of S_{n+1} on the images of X_1..X_n, with the
    third family compared to the square graph as in the semidirect model."""
    ident = DualityElement.identity(n)
    inv_ok = all((images[i] * images[i]) == ident for i in images)
    braid_ok = all(((images[i] * images[j]) ** 3) == ident
                   for i, j in permutations(images, 2))
    square_ok = True
    for i, j, k in permutations(images, 3):
        y = images[i] * images[j] * images[i] * images[k]
        if y * y != DualityElement(square_graph(i, j, k, n), Perm.identity(n)):
            square_ok = False
            break
    return {"involution": inv_ok, "braid": braid_ok, "square": square_ok}


def verify_splitting(n: int, search: bool = True) -> SplittingReport:
    """Test the complete-graph section X_j -> (gamma_{0j}, (0 j)).

    When ``search`` is set and n <= 4 an exhaustive search for a section
    of DG_n -> S_{n+1} is also run (``section_found``).
    """
    if n < 3:
        raise ValueError("verify_splitting needs n >= 3")
    gammas = {j: gamma_graph(0, j, n) for j in range(1, n + 1)}
    g1 = gammas[1]
    in_k = all(is_kernel_graph(g) for g in gammas.values())
    report = SplittingReport(n, SplitStatus.WITNESS_CRITERION_FAILS, in_k,
                             g1.num_edges, n - 2)
    if in_k:
        images = {j: DualityElement(g, Perm.transposition(0, j, n)) for j, g in gammas.items()}
        report.relations = check_section_relations(images, n)
        if all(report.relations.values()):
            report.status = SplitStatus.SPLIT_WITNESS_FOUND
    if n == 3:
        report.status = SplitStatus.KNOWN_NONSPLIT
        report.note = "non-split for n = 3 (published result)"
    elif n == 4 and report.status is SplitStatus.WITNESS_CRITERION_FAILS:
        report.note = "this witness fails; DG_4 still splits via another section"
    elif n % 4 == 0 and n >= 8:
        report.note = "splitting for n >= 8 divisible by 4 is an open question"
    if search and n <= 4:
        report.section_found = find_section(n) is not None
    return report


def find_section(n: int) -> dict[int, DualityElement] | None:
    """Exhaustive search for y_i in Psi(DG_n) over (0 i) with y_i^2 = 1,
    (y_i y_j)^3 = 1 and (y_i y_j y_i y_k)^2 = 1; n <= 4."""
    if not 2 <= n <= 4:
        raise ValueError("find_section is limited to 2 <= n <= 4")
    ident = DualityElement.identity(n)
    kern = kernel_elements(n)
    cands = {}
    for i in range(1, n + 1):
        x = psi_generator(i, n)
        cands[i] = [y for y in (DualityElement(k, Perm.identity(n)) * x for k in kern)
                    if y * y == ident]
    chosen: dict[int, DualityElement] = {}

    def ok(i: int) -> bool:
        y = chosen[i]
        for j in chosen:
            if j == i:
                continue
            if (y * chosen[j]) ** 3 != ident:
                return False
        for a, b, c in permutations(chosen, 3):
            if i not in (a, b, c):
                continue
            z = chosen[a] * chosen[b] * chosen[a] * chosen[c]
            if z * z != ident:
                return False
        return True

    def rec(i: int) -> bool:
        if i > n:
            return True
        for y in cands[i]:
            chosen[i] = y
            if ok(i) and rec(i + 1):
                return True
            del chosen[i]
        return False

    return dict(chosen) if rec(1) else None
