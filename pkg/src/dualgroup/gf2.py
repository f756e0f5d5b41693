"""GF(2) linear algebra on int bit vectors (bit j = coordinate j)."""

from __future__ import annotations


def _pivot(v: int) -> int:
    return (v & -v).bit_length() - 1


def rref(rows: list[int]) -> list[int]:
    """Reduced row-echelon form; pivot of a row is its lowest set bit.

    Returned rows are nonzero and sorted by pivot.
    """
    basis: list[int] = []
    for r in rows:
        for b in basis:
            if r >> _pivot(b) & 1:
                r ^= b
        if r:
            p = _pivot(r)
            basis = [b ^ r if b >> p & 1 else b for b in basis]
            basis.append(r)
    return sorted(basis, key=_pivot)


def rank(rows: list[int]) -> int:
    return len(rref(rows))


def in_span(v: int, basis_rref: list[int]) -> bool:
    for b in basis_rref:
        if v >> _pivot(b) & 1:
            v ^= b
    return v == 0


def nullspace(constraints: list[int], ncols: int) -> list[int]:
    """Basis (in RREF) of {x : popcount(x & c) even for every constraint c}."""
    red = rref(constraints)
    pivots = {_pivot(r): r for r in red}
    out = []
    for f in range(ncols):
        if f in pivots:
            continue
        x = 1 << f
        for p, r in pivots.items():
            if r >> f & 1:
                x |= 1 << p
        out.append(x)
    return rref(out)
