"""Relators for DG_n, their check in the graph model, and coset enumeration
for the n = 4 presentation.

The enumerator is HLT (scan each relator from each live coset, defining
new cosets as needed, then complete the row) with coincidence processing
through a union-find parent array.  All generators are involutions, so a
definition c.x = d also records d.x = c and no inverse columns are kept.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations, permutations

import numpy as np

from .group_model import eval_word, format_word, parse_word

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

DEFAULT_CAP = 1_000_000

# AK = P and AD = MQ in the K_5 catalogue, written as relators
EXTRA_RELATORS_4 = ("12131213" "14131413" "42434243",
                    "12131213" "12141214" "24342434" "14341434")
# the same two relations as usually printed; the first word is a shorter
# relator rather than a truncation, and gives the same group
PRINTED_RELATORS_4 = ("12131213" "1413141" "4243424",
                      "12131213" "12141214" "24342434" "14341434")


@dataclass
class RelationSet:
    n: int
    relators: list[tuple[int, ...]]

    def words(self) -> list[str]:
        return [format_word(r) for r in self.relators]


def rels_relators(n: int) -> list[tuple[int, ...]]:
    """X_i^2, (X_iX_j)^3 for i < j and (X_iX_jX_iX_k)^4 over distinct i, j, k."""
    if n < 2:
        raise ValueError("relators need n >= 2")
    idx = range(1, n + 1)
    out = [(i, i) for i in idx]
    out += [(i, j) * 3 for i, j in combinations(idx, 2)]
    out += [(i, j, i, k) * 4 for i, j, k in permutations(idx, 3)]
    return out


def standard_relators(n: int, extra: bool = True) -> RelationSet:
    rels = rels_relators(n)
    if n == 4 and extra:
        rels += [parse_word(w) for w in EXTRA_RELATORS_4]
    return RelationSet(n, rels)


@dataclass
class RelatorReport:
    n: int
    ok: bool
    checked: int
    failures: list[dict] = field(default_factory=list)


def verify_relators(n: int, relators: list | None = None) -> RelatorReport:
    """Every relator must evaluate to the identity under Psi."""
    if n > 6:
        raise ValueError("verify_relators is limited to n <= 6")
    rels = standard_relators(n).relators if relators is None else [parse_word(r) for r in relators]
    failures = []
    for r in rels:
        x = eval_word(r, n)
        if not x.is_identity():
            failures.append({"word": format_word(r), "image": str(x)})
    return RelatorReport(n, not failures, len(rels), failures)


# -- coset enumeration ----------------------------------------------------------------

class CosetStatus(enum.Enum):
    COMPLETE = "COMPLETE"
    DIVERGED = "DIVERGED"


@dataclass
class CosetResult:
    status: CosetStatus
    cosets: int           # live cosets at the end (or when the cap was hit)
    defined: int          # total cosets ever defined
    coincidences: int
    trace: list[tuple[str, int, int]] = field(default_factory=list)

    @property
    def order(self) -> int | None:
        return self.cosets if self.status is CosetStatus.COMPLETE else None


EV_DEFINE, EV_COINCIDE = 1, 2


def _hlt(rel_flat, rel_start, rel_len, ngen, cap, trace_cap):
    table = np.full((cap, ngen), -1, dtype=np.int32)
    parent = np.arange(cap, dtype=np.int32)
    queue = np.empty(cap, dtype=np.int32)
    events = np.zeros((trace_cap, 3), dtype=np.int32)
    nev = 0
    ncos = 1
    ncoinc = 0
    diverged = False
    c = 0
    while c < ncos and not diverged:
        if parent[c] != c:
            c += 1
            continue
        nrel = rel_start.shape[0]
        for ri in range(nrel + 1):
            if parent[c] != c or diverged:
                break
            # ri == nrel: complete the row of c
            if ri == nrel:
                for x in range(ngen):
                    if table[c, x] < 0 and parent[c] == c:
                        if ncos >= cap:
                            diverged = True
                            break
                        d = ncos
                        ncos += 1
                        table[c, x] = d
                        table[d, x] = c
                        if nev < trace_cap:
                            events[nev, 0] = EV_DEFINE
                            events[nev, 1] = c
                            events[nev, 2] = d
                        nev += 1
                break
            s = rel_start[ri]
            ln = rel_len[ri]
            f = c
            i = 0
            b = c
            j = ln - 1
            pending_a = -1
            pending_b = -1
            while True:
                while i <= j and table[f, rel_flat[s + i]] >= 0:
                    f = table[f, rel_flat[s + i]]
                    i += 1
                if i > j:
                    if f != b:
                        pending_a = f
                        pending_b = b
                    break
                while j >= i and table[b, rel_flat[s + j]] >= 0:
                    b = table[b, rel_flat[s + j]]
                    j -= 1
                if j < i:
                    pending_a = f
                    pending_b = b
                    break
                if i == j:
                    x = rel_flat[s + i]
                    table[f, x] = b
                    table[b, x] = f
                    break
                if ncos >= cap:
                    diverged = True
                    break
                d = ncos
                ncos += 1
                x = rel_flat[s + i]
                table[f, x] = d
                table[d, x] = f
                if nev < trace_cap:
                    events[nev, 0] = EV_DEFINE
                    events[nev, 1] = f
                    events[nev, 2] = d
                nev += 1
            if pending_a < 0 or pending_a == pending_b:
                continue
            # coincidence processing
            if nev < trace_cap:
                events[nev, 0] = EV_COINCIDE
                events[nev, 1] = pending_a
                events[nev, 2] = pending_b
            nev += 1
            qh = 0
            qt = 0
            # merge(pending_a, pending_b)
            u = pending_a
            while parent[u] != u:
                u = parent[u]
            v = pending_b
            while parent[v] != v:
                v = parent[v]
            if u != v:
                if u > v:
                    u, v = v, u
                parent[v] = u
                queue[qt] = v
                qt += 1
                ncoinc += 1
            while qh < qt:
                g = queue[qh]
                qh += 1
                for x in range(ngen):
                    dl = table[g, x]
                    if dl < 0:
                        continue
                    table[g, x] = -1
                    if dl != g:
                        table[dl, x] = -1
                    mu = g
                    while parent[mu] != mu:
                        mu = parent[mu]
                    nu = dl
                    while parent[nu] != nu:
                        nu = parent[nu]
                    a2 = -1
                    b2 = -1
                    if table[mu, x] >= 0:
                        a2 = nu
                        b2 = table[mu, x]
                    elif table[nu, x] >= 0:
                        a2 = mu
                        b2 = table[nu, x]
                    else:
                        table[mu, x] = nu
                        table[nu, x] = mu
                    if a2 >= 0:
                        while parent[a2] != a2:
                            a2 = parent[a2]
                        while parent[b2] != b2:
                            b2 = parent[b2]
                        if a2 != b2:
                            if a2 > b2:
                                a2, b2 = b2, a2
                            parent[b2] = a2
                            queue[qt] = b2
                            qt += 1
                            ncoinc += 1
        c += 1
    live = 0
    for k in range(ncos):
        if parent[k] == k:
            live += 1
    return diverged, live, ncos, ncoinc, events, nev


_hlt_jit = numba.njit(cache=True)(_hlt) if numba is not None else None


def coset_enumerate(relators: list | None = None, ngen: int = 4, cap: int = DEFAULT_CAP,
                    trace: bool = False, trace_cap: int = 10_000, jit: bool = True) -> CosetResult:
    """Enumerate cosets of the trivial subgroup in <X_1..X_ngen | relators>,
    all X_i involutions.  Defaults to the n = 4 presentation."""
    if relators is None:
        relators = standard_relators(4).relators
    rels = [parse_word(r) for r in relators]
    for r in rels:
        if not r or any(not 1 <= a <= ngen for a in r):
            raise ValueError(f"bad relator {format_word(r)}")
    flat = np.array([a - 1 for r in rels for a in r], dtype=np.int32)
    lens = np.array([len(r) for r in rels], dtype=np.int32)
    starts = np.concatenate([[0], np.cumsum(lens)[:-1]]).astype(np.int32)
    fn = _hlt_jit if (jit and _hlt_jit is not None) else _hlt
    tc = trace_cap if trace else 1
    diverged, live, ncos, ncoinc, events, nev = fn(flat, starts, lens, ngen, cap, tc)
    ev = []
    if trace:
        names = {EV_DEFINE: "define", EV_COINCIDE: "coincidence"}
        ev = [(names[int(k)], int(a), int(b)) for k, a, b in events[:min(nev, tc)]]
    status = CosetStatus.DIVERGED if diverged else CosetStatus.COMPLETE
    return CosetResult(status, int(live), int(ncos), int(ncoinc), ev)


def extra_relator_subsets(cap: int = DEFAULT_CAP) -> dict[str, CosetResult]:
    """Coset counts for rels plus each subset of the two extra relators."""
    base = rels_relators(4)
    out = {}
    for mask in range(4):
        chosen = [EXTRA_RELATORS_4[t] for t in range(2) if mask >> t & 1]
        key = "+".join(["rels"] + [f"extra{t + 1}" for t in range(2) if mask >> t & 1])
        out[key] = coset_enumerate(base + [parse_word(w) for w in chosen], 4, cap)
    return out
