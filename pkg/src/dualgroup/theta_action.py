"""Parameter spaces over a point base and the action of words on them.

Every building bundle is a coordinate space Z^d.  For a run R of {1..n}
the dimension d(R) is chosen freely; a subset J containing 0 names the
dual space E_J = E_{J^C}^*, so d(J) = d(J^C).  A parameter vector has one
integer tensor per partition of [n] into three or more blocks, with one
axis per block in canonical block order.

Partitions are always written in fixed ("absolute") labels: the tensor
spaces never move.  Applying X_a to a bundle whose zero label currently
sits at z swaps z with the absolute image v of a, so each letter is one
step ``theta_edge(z, v)``.  The paper's Example for the triple case prints
results in the relabelled ("own") indices of E^{X_1}; ``own_labels``
reproduces that view.

Arrays may carry leading batch axes; everything below broadcasts over them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import factorial
from typing import Sequence

import numpy as np

from .combinatorics import (
    Partition, compatible_through, compose_partitions, complement, elements_of,
    full_mask, mask_of, stirling2, tomo_partitions,
)
from .group_model import LabeledGraph, check_word, parse_word

INT_LIMIT = 2 ** 62


# -- bundle dimensions ----------------------------------------------------------

@dataclass(frozen=True)
class BundleAssignment:
    """Dimensions of the building bundles E_R, R a nonempty subset of {1..n}."""

    n: int
    dims: tuple[tuple[int, int], ...]   # sorted (mask, dim) pairs

    def __post_init__(self):
        want = {m << 1 for m in range(1, 1 << self.n)}
        have = dict(self.dims)
        if set(have) != want:
            raise ValueError("dims must cover every nonempty run of {1..n}")
        if any(d < 1 for d in have.values()):
            raise ValueError("dimensions must be positive")
        object.__setattr__(self, "dims", tuple(sorted(have.items())))
        object.__setattr__(self, "_map", have)

    @classmethod
    def from_map(cls, n: int, dims: dict[int, int]) -> "BundleAssignment":
        return cls(n, tuple(dims.items()))

    @classmethod
    def uniform(cls, n: int, d: int = 1) -> "BundleAssignment":
        return cls(n, tuple((m << 1, d) for m in range(1, 1 << n)))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator, max_dim: int = 2) -> "BundleAssignment":
        return cls(n, tuple((m << 1, int(rng.integers(1, max_dim + 1)))
                            for m in range(1, 1 << n)))

    @property
    def max_dim(self) -> int:
        return max(d for _, d in self.dims)

    def dim(self, mask: int) -> int:
        """d(J) for any nonempty proper subset J of [n]."""
        if mask & 1:
            mask = complement(mask, self.n)
        return self._map[mask]

    def shape(self, p: Partition) -> tuple[int, ...]:
        return tuple(self.dim(b) for b in p.blocks)

    def relabel(self, perm: Sequence[int]) -> "BundleAssignment":
        """Dimensions seen through the labels v -> perm[v]: d'(J) = d(perm(J))."""
        out = {}
        for m in range(1, 1 << self.n):
            mask = m << 1
            out[mask] = self.dim(mask_of(perm[v] for v in elements_of(mask)))
        return BundleAssignment.from_map(self.n, out)


# -- tomos and composition --------------------------------------------------------

@dataclass
class Tomo:
    """A tensor on V_P; axes follow the canonical block order of P."""

    partition: Partition
    tensor: np.ndarray

    def __post_init__(self):
        if self.tensor.ndim < len(self.partition.blocks):
            raise ValueError("tensor has fewer axes than the partition has blocks")


@lru_cache(maxsize=None)
def _compose_plan(p: Partition, q: Partition, through: int):
    i_c = complement(through, p.n)
    if through not in p.blocks or i_c not in q.blocks:
        raise ValueError(f"{p} and {q} are not compatible through {through}")
    result = compose_partitions(p, q)
    label = {b: idx for idx, b in enumerate(result.blocks)}
    c = len(label)
    sub_p = [Ellipsis] + [c if b == through else label[b] for b in p.blocks]
    sub_q = [Ellipsis] + [c if b == i_c else label[b] for b in q.blocks]
    return sub_p, sub_q, [Ellipsis] + list(range(c)), result


def compose_arrays(a: np.ndarray, p: Partition, b: np.ndarray, q: Partition,
                   through: int | None = None) -> tuple[np.ndarray, Partition]:
    """Contract the ``through`` axis of a with the complementary axis of b."""
    if through is None:
        through = compatible_through(p, q)
        if through is None:
            raise ValueError(f"{p} and {q} are not compatible")
    sub_p, sub_q, sub_out, result = _compose_plan(p, q, through)
    return np.einsum(a, sub_p, b, sub_q, sub_out), result


def compose_tomos(phi: Tomo, psi: Tomo, dims: BundleAssignment | None = None) -> Tomo:
    """phi o psi over the block through which the partitions are compatible."""
    if dims is not None:
        for t in (phi, psi):
            if t.tensor.shape[-len(t.partition.blocks):] != dims.shape(t.partition):
                raise ValueError(f"tensor shape does not match dims on {t.partition}")
    arr, part = compose_arrays(phi.tensor, phi.partition, psi.tensor, psi.partition)
    return Tomo(part, arr)


# -- parameter vectors ----------------------------------------------------------------

class ParamVector:
    """phi = (phi_P) for P in P(n), over the given bundle dimensions."""

    def __init__(self, dims: BundleAssignment, comps: dict[Partition, np.ndarray] | None = None,
                 batch: tuple[int, ...] = ()):
        self.dims = dims
        self.n = dims.n
        self.batch = tuple(batch)
        comps = dict(comps or {})
        self.comps: dict[Partition, np.ndarray] = {}
        for p in tomo_partitions(self.n):
            shape = self.batch + dims.shape(p)
            arr = comps.pop(p, None)
            if arr is None:
                arr = np.zeros(shape, dtype=np.int64)
            else:
                arr = np.asarray(arr)
                if arr.shape != shape:
                    raise ValueError(f"component {p} has shape {arr.shape}, expected {shape}")
            self.comps[p] = arr
        if comps:
            raise ValueError(f"not tomo partitions of [{self.n}]: {sorted(map(str, comps))}")

    @classmethod
    def _raw(cls, dims: BundleAssignment, comps: dict, batch: tuple[int, ...]) -> "ParamVector":
        # trusted constructor: comps already complete and in canonical order
        out = cls.__new__(cls)
        out.dims, out.n, out.batch, out.comps = dims, dims.n, tuple(batch), comps
        return out

    @classmethod
    def zeros(cls, dims: BundleAssignment, batch: tuple[int, ...] = ()) -> "ParamVector":
        return cls(dims, batch=batch)

    @classmethod
    def random(cls, dims: BundleAssignment, rng: np.random.Generator, low: int = -3,
               high: int = 3, batch: tuple[int, ...] = ()) -> "ParamVector":
        comps = {p: rng.integers(low, high + 1, size=tuple(batch) + dims.shape(p), dtype=np.int64)
                 for p in tomo_partitions(dims.n)}
        return cls(dims, comps, batch)

    @classmethod
    def single(cls, dims: BundleAssignment, p: Partition | str, tensor=None) -> "ParamVector":
        """One nonzero component; ``tensor`` defaults to all ones."""
        if isinstance(p, str):
            p = Partition.parse(p, dims.n)
        if tensor is None:
            tensor = np.ones(dims.shape(p), dtype=np.int64)
        return cls(dims, {p: np.asarray(tensor)})

    def __getitem__(self, p: Partition | str) -> np.ndarray:
        if isinstance(p, str):
            p = Partition.parse(p, self.n)
        return self.comps[p]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParamVector) or other.dims != self.dims:
            return NotImplemented if not isinstance(other, ParamVector) else False
        return all(np.array_equal(self.comps[p], other.comps[p]) for p in self.comps)

    def __add__(self, other: "ParamVector") -> "ParamVector":
        return ParamVector(self.dims, {p: self.comps[p] + other.comps[p] for p in self.comps}, self.batch)

    def __neg__(self) -> "ParamVector":
        return ParamVector(self.dims, {p: -a for p, a in self.comps.items()}, self.batch)

    def __sub__(self, other: "ParamVector") -> "ParamVector":
        return self + (-other)

    def support(self) -> list[Partition]:
        return [p for p, a in self.comps.items() if np.any(a != 0)]

    def max_abs(self) -> int:
        flat = np.concatenate([a.reshape(-1) for a in self.comps.values()])
        return int(np.max(np.abs(flat))) if flat.size else 0

    def as_object(self) -> "ParamVector":
        return ParamVector(self.dims, {p: a.astype(object) for p, a in self.comps.items()}, self.batch)

    @classmethod
    def stack(cls, vectors: Sequence["ParamVector"]) -> "ParamVector":
        """Batch unbatched vectors over the same dimensions along a new axis."""
        dims = vectors[0].dims
        if any(v.dims != dims or v.batch for v in vectors):
            raise ValueError("stack needs unbatched vectors over the same dims")
        return cls(dims, {p: np.stack([v.comps[p] for v in vectors]) for p in vectors[0].comps},
                   (len(vectors),))

    def take(self, idx: int) -> "ParamVector":
        """One member of a batched vector."""
        if not self.batch:
            raise ValueError("not a batched vector")
        return ParamVector(self.dims, {p: a[idx] for p, a in self.comps.items()}, self.batch[1:])

    def relabel(self, perm: Sequence[int]) -> "ParamVector":
        """The same data indexed by new labels: the component at P moves to
        perm^-1(P), so that ``out[Q] == self[perm(Q)]`` up to axis order."""
        inv = [0] * len(perm)
        for v, w in enumerate(perm):
            inv[w] = v
        dims = self.dims.relabel(perm)
        comps = {}
        nb = len(self.batch)
        for p, arr in self.comps.items():
            q = p.relabel(tuple(inv))
            # axis t of the new tensor is the block q.blocks[t] = inv(p.blocks[s])
            src = [p.blocks.index(mask_of(perm[v] for v in elements_of(b))) for b in q.blocks]
            comps[q] = np.transpose(arr, list(range(nb)) + [nb + s for s in src])
        return ParamVector(dims, comps, self.batch)

    def to_json(self) -> str:
        if self.batch:
            raise ValueError("batched vectors are not serialisable")
        return json.dumps({
            "schema": 1,
            "n": self.n,
            "dims": {str(m): d for m, d in self.dims.dims},
            "components": {p.text(): np.asarray(a).tolist() for p, a in self.comps.items()},
        }, sort_keys=False)

    @classmethod
    def from_json(cls, text: str) -> "ParamVector":
        data = json.loads(text)
        n = int(data["n"])
        dims = BundleAssignment.from_map(n, {int(m): int(d) for m, d in data["dims"].items()})
        comps = {Partition.parse(k, n): np.array(v, dtype=np.int64)
                 for k, v in data["components"].items()}
        return cls(dims, comps)


# -- factorisations --------------------------------------------------------------------

@dataclass(frozen=True)
class Chain:
    """One term (-1)^j phi_{Q_1} o ... o phi_{Q_j}; Q_i and Q_{i+1} meet
    through ``through[i]`` (a block of Q_1 o ... o Q_i)."""

    factors: tuple[Partition, ...]
    through: tuple[int, ...]

    @property
    def sign(self) -> int:
        return -1 if len(self.factors) % 2 else 1

    def text(self) -> str:
        s = "+" if self.sign > 0 else "-"
        return s + " o ".join(f"({q.text()})" for q in self.factors)


def _ordered_set_partitions(items: tuple[int, ...]):
    if not items:
        yield ()
        return
    n = len(items)
    for r in range(1, n + 1):
        for first in combinations(items, r):
            rest = tuple(x for x in items if x not in first)
            for tail in _ordered_set_partitions(rest):
                yield (first,) + tail


@lru_cache(maxsize=None)
def factorizations(p: Partition, u: int, v: int) -> tuple[Chain, ...]:
    """Oriented factorisations of P with u and v separate in every factor.

    The chain runs from the u-block U to the v-block V: the base blocks
    (all others) are split into ordered groups G_1..G_j, R_0 = U^C and
    R_i = R_{i-1} minus G_i, so R_j = V, and Q_i = {R_{i-1}^C, R_i} + G_i.
    Each chain is listed once; its reversal describes the same product.
    """
    n = p.n
    if p.together(u, v):
        return ()
    ub, vb = p.block_of(u), p.block_of(v)
    base = tuple(b for b in p.blocks if b not in (ub, vb))
    out = []
    for groups in _ordered_set_partitions(base):
        r_prev = complement(ub, n)
        factors, through = [], []
        for g in groups:
            r = r_prev
            for b in g:
                r &= ~b
            factors.append(Partition((complement(r_prev, n), r) + g, n))
            through.append(r)
            r_prev = r
        assert r_prev == vb
        out.append(Chain(tuple(factors), tuple(through[:-1])))
    return tuple(out)


def lemma_tuples(n: int, u: int, v: int, max_len: int | None = None) -> dict[Partition, list[tuple[Partition, ...]]]:
    """Literal search for tuples (Q_1..Q_j) meeting the side conditions:
    u, v separate in each Q_i, consecutive compatibility through I_i,
    I_i != I_{i+1}^C, keyed by the product.  Independent of
    ``factorizations``; used as a cross-check."""
    max_len = n - 1 if max_len is None else max_len
    parts = [q for q in tomo_partitions(n) if q.separate(u, v)]
    by_block: dict[int, list[Partition]] = {}
    for q in parts:
        for b in q.blocks:
            by_block.setdefault(b, []).append(q)
    found: dict[Partition, list[tuple[Partition, ...]]] = {}

    def extend(seq: list[Partition], prod: Partition, used: int | None):
        found.setdefault(prod, []).append(tuple(seq))
        if len(seq) == max_len:
            return
        last = seq[-1]
        for i_blk in last.blocks:
            if i_blk == used:          # I_i must differ from I_{i-1}^C
                continue
            if i_blk not in prod.blocks:
                continue
            for q in by_block.get(complement(i_blk, n), ()):
                seq.append(q)
                extend(seq, compose_partitions_through(prod, q, i_blk), complement(i_blk, n))
                seq.pop()

    for q in parts:
        extend([q], q, None)
    return found


def compose_partitions_through(p: Partition, q: Partition, through: int) -> Partition:
    i_c = complement(through, p.n)
    blocks = [b for b in p.blocks if b != through] + [b for b in q.blocks if b != i_c]
    return Partition(tuple(blocks), p.n)


# -- theta ------------------------------------------------------------------------------

def fubini(m: int) -> int:
    """Number of ordered set partitions of an m-set."""
    return sum(factorial(k) * stirling2(m, k) for k in range(m + 1))


def _headroom_ok(phi: ParamVector) -> bool:
    # a product of j <= n-1 tensors summed over d^(j-1) indices, for each chain
    if any(a.dtype == object for a in phi.comps.values()):
        return True
    n = phi.n
    b = max(phi.max_abs(), 1)
    d = phi.dims.max_dim
    return (fubini(n - 1) + 1) * b ** max(n - 1, 1) * d ** max(n - 2, 0) < INT_LIMIT


@lru_cache(maxsize=None)
def _edge_plan(n: int, u: int, v: int):
    """Per component: None to copy, else a list of (sign, operand indices,
    einsum sublists) with one multi-operand contraction per chain."""
    parts = tomo_partitions(n)
    index = {p: i for i, p in enumerate(parts)}
    plan = []
    for p in parts:
        if p.together(u, v):
            plan.append(None)
            continue
        out_label = {b: t for t, b in enumerate(p.blocks)}
        terms = []
        for ch in factorizations(p, u, v):
            ops = tuple(index[q] for q in ch.factors)
            if len(ops) == 1:
                terms.append((ch.sign, ops, None))
                continue
            base = len(p.blocks)
            subs = []
            for i, q in enumerate(ch.factors):
                sub = [Ellipsis]
                for b in q.blocks:
                    if i > 0 and b == complement(ch.through[i - 1], n):
                        sub.append(base + i - 1)
                    elif i < len(ch.through) and b == ch.through[i]:
                        sub.append(base + i)
                    else:
                        sub.append(out_label[b])
                subs.append(sub)
            terms.append((ch.sign, ops, subs))
        plan.append((terms, [Ellipsis] + list(range(len(p.blocks)))))
    return plan


def theta_edge(u: int, v: int, phi: ParamVector) -> ParamVector:
    """One generator step in absolute labels: the current zero label u is
    exchanged with v."""
    if u == v or not (0 <= u <= phi.n and 0 <= v <= phi.n):
        raise ValueError(f"bad edge ({u}, {v})")
    if not _headroom_ok(phi):
        phi = phi.as_object()
    arrs = list(phi.comps.values())
    out = []
    for arr, entry in zip(arrs, _edge_plan(phi.n, u, v)):
        if entry is None:
            out.append(arr)
            continue
        terms, sub_out = entry
        total = None
        for sign, ops, subs in terms:
            if subs is None:
                term = arrs[ops[0]]
            else:
                args = []
                for i, sub in zip(ops, subs):
                    args += [arrs[i], sub]
                term = np.einsum(*args, sub_out)
            if total is None:
                total = term if sign > 0 else -term
            elif sign > 0:
                total = total + term
            else:
                total = total - term
        out.append(total)
    return ParamVector._raw(phi.dims, dict(zip(phi.comps, out)), phi.batch)


def theta_generator(k: int, phi: ParamVector) -> ParamVector:
    """theta_{X_k}(phi) for a bundle in its own labels (zero label 0)."""
    if not 1 <= k <= phi.n:
        raise ValueError(f"generator index {k} out of range 1..{phi.n}")
    return theta_edge(0, k, phi)


def theta_word(word: str | Sequence[int], phi: ParamVector, own_labels: bool = False) -> ParamVector:
    """Apply the letters of ``word`` in reading order.

    With ``own_labels`` the result is indexed by the labels of E^W rather
    than the fixed labels of E.
    """
    w = parse_word(word)
    check_word(w, phi.n)
    tau = list(range(phi.n + 1))   # own label -> absolute label
    z = 0
    for a in w:
        v = tau[a]
        phi = theta_edge(z, v, phi)
        tau[0], tau[a] = tau[a], tau[0]
        z = v
    if own_labels:
        phi = phi.relabel(tau)
    return phi


def word_edges(word: str | Sequence[int], n: int) -> list[tuple[int, int]]:
    """The absolute edges exchanged by the letters of ``word``."""
    w = parse_word(word)
    check_word(w, n)
    tau = list(range(n + 1))
    z = 0
    out = []
    for a in w:
        v = tau[a]
        out.append((min(z, v), max(z, v)))
        tau[0], tau[a] = tau[a], tau[0]
        z = v
    return out


def sign_of(g: LabeledGraph, p: Partition) -> int:
    """(-1)^(number of edges of g joining different blocks of p)."""
    return -1 if sum(1 for i, j in g.edges() if p.separate(i, j)) % 2 else 1


def sign_action(g: LabeledGraph, phi: ParamVector) -> ParamVector:
    if g.n != phi.n:
        raise ValueError("graph and parameter vector have different n")
    return ParamVector(phi.dims, {p: a if sign_of(g, p) > 0 else -a for p, a in phi.comps.items()},
                       phi.batch)


# -- decomposed elements and statomorphisms -----------------------------------------------

def runs_avoiding(n: int, k: int) -> list[int]:
    """Nonempty subsets of [n] minus {k}, as masks in increasing order."""
    ground = full_mask(n) & ~(1 << k)
    out = []
    sub = ground
    while sub:
        out.append(sub)
        sub = (sub - 1) & ground
    return sorted(out)


@dataclass
class DecomposedElement:
    """Coordinates e_R for the runs R over [n] minus {k}."""

    n: int
    k: int
    coords: dict[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        if set(self.coords) != set(runs_avoiding(self.n, self.k)):
            raise ValueError("coordinates must be indexed by exactly the runs avoiding k")

    @classmethod
    def random(cls, n: int, k: int, dims: BundleAssignment, rng: np.random.Generator,
               batch: tuple[int, ...] = (), low: int = -3, high: int = 3) -> "DecomposedElement":
        return cls(n, k, {r: rng.integers(low, high + 1, size=tuple(batch) + (dims.dim(r),), dtype=np.int64)
                          for r in runs_avoiding(n, k)})

    def __eq__(self, other) -> bool:
        return (isinstance(other, DecomposedElement) and (self.n, self.k) == (other.n, other.k)
                and all(np.array_equal(self.coords[r], other.coords[r]) for r in self.coords))


@lru_cache(maxsize=None)
def _stato_plan(n: int, k: int):
    plan = []
    parts = tomo_partitions(n)
    for r in runs_avoiding(n, k):
        rc = complement(r, n)
        terms = []
        for p in parts:
            if rc in p.blocks:
                m = len(p.blocks)
                out_axis = p.blocks.index(rc)
                others = [b for b in p.blocks if b != rc]
                terms.append((p, others, [Ellipsis] + list(range(m)),
                              [[Ellipsis, p.blocks.index(b)] for b in others], [Ellipsis, out_axis]))
        plan.append((r, terms))
    return plan


def apply_statomorphism(k: int, phi: ParamVector, e: DecomposedElement) -> DecomposedElement:
    """Omega^k(phi)(e): f_R = e_R + sum over P containing R^C of phi_P
    evaluated on the e-coordinates of the other blocks."""
    if e.k != k or e.n != phi.n:
        raise ValueError("element and statomorphism index sets differ")
    out = {}
    for r, terms in _stato_plan(phi.n, k):
        f = e.coords[r]
        if f.shape[-1] != phi.dims.dim(r):
            raise ValueError(f"coordinate {r} has the wrong dimension")
        for p, others, sub_p, subs, sub_out in terms:
            args = [phi.comps[p], sub_p]
            for b, s in zip(others, subs):
                args += [e.coords[b], s]
            f = f + np.einsum(*args, sub_out)
        out[r] = f
    return DecomposedElement(phi.n, k, out)


def extract_parameters(stato, n: int, dims: BundleAssignment) -> ParamVector:
    """Recover phi from a map e -> Omega^0(phi)(e) by probing basis inputs.

    For P with 0-block R^C, set the coordinates of the other blocks to
    basis vectors and everything else to zero; f_R - e_R is then the
    single entry phi_P[...]."""
    comps = {}
    for p in tomo_partitions(n):
        rc = p.block_of(0)
        r = complement(rc, n)
        arr = np.zeros(dims.shape(p), dtype=object)
        others = [b for b in p.blocks if b != rc]
        for idx in product(*(range(dims.dim(b)) for b in others)):
            coords = {s: np.zeros(dims.dim(s), dtype=np.int64) for s in runs_avoiding(n, 0)}
            for b, i in zip(others, idx):
                coords[b][i] = 1
            e = DecomposedElement(n, 0, coords)
            f = stato(e)
            val = f.coords[r] - e.coords[r]
            key = list(idx)
            key.insert(p.blocks.index(rc), slice(None))
            arr[tuple(key)] = val
        comps[p] = arr.astype(np.int64)
    return ParamVector(dims, comps)


def pairing(e: DecomposedElement, e2: DecomposedElement) -> np.ndarray:
    """<e, e'> = sum over runs S containing 0 (avoiding k) of e_{S^C} . e'_S."""
    if e.k != 0 or e2.k == 0 or e.n != e2.n:
        raise ValueError("pairing needs an element over {1..n} and one over [n] minus k")
    n, k = e.n, e2.k
    total = 0
    for s in runs_avoiding(n, k):
        if s & 1:
            total = total + np.sum(e.coords[complement(s, n)] * e2.coords[s], axis=-1)
    return total


@dataclass
class PairingReport:
    ok: bool
    k: int
    trials: int
    counterexample: dict | None = None

    def as_dict(self) -> dict:
        return {"ok": self.ok, "k": self.k, "trials": self.trials,
                "counterexample": self.counterexample}


def verify_pairing(k: int, phi: ParamVector, trials: int, rng: np.random.Generator) -> PairingReport:
    """Check <e, e'> = <Omega^0(phi) e, Omega^k(psi) e'> with psi =
    theta_generator(k, phi), for random e, e' over a common base point."""
    n = phi.n
    if not 1 <= k <= n:
        raise ValueError(f"k out of range 1..{n}")
    if phi.batch:
        raise ValueError("verify_pairing takes an unbatched vector")
    psi = theta_generator(k, phi)
    e = DecomposedElement.random(n, 0, phi.dims, rng, (trials,))
    e2 = DecomposedElement.random(n, k, phi.dims, rng, (trials,))
    shared = [r for r in runs_avoiding(n, 0) if not r >> k & 1]
    for r in shared:
        e2.coords[r] = e.coords[r].copy()
    f = apply_statomorphism(0, phi, e)
    f2 = apply_statomorphism(k, psi, e2)
    lhs = pairing(e, e2)
    rhs = pairing(f, f2)
    bad = np.nonzero(lhs != rhs)[0]
    base_bad = [r for r in shared if not np.array_equal(f.coords[r], f2.coords[r])]
    if len(bad) == 0 and not base_bad:
        return PairingReport(True, k, trials)
    t = int(bad[0]) if len(bad) else 0
    cx = {
        "trial": t,
        "lhs": int(lhs[t]),
        "rhs": int(rhs[t]),
        "base_mismatch": [format_mask(r) for r in base_bad],
        "e": {format_mask(r): v[t].tolist() for r, v in e.coords.items()},
        "e_prime": {format_mask(r): v[t].tolist() for r, v in e2.coords.items()},
    }
    return PairingReport(False, k, trials, cx)


def format_mask(mask: int) -> str:
    return "".join(str(v) for v in elements_of(mask))


def square_kernel_words(n: int, pairs: bool = True) -> list[str]:
    """All (X_iX_jX_iX_k)^2 words and, optionally, all products of two."""
    singles = ["".join(map(str, (i, j, i, k) * 2))
               for i in range(1, n + 1) for j in range(1, n + 1) for k in range(1, n + 1)
               if len({i, j, k}) == 3]
    if not pairs:
        return singles
    return singles + [a + b for a in singles for b in singles]
