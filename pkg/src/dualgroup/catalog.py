"""The 32 elements of K_5 under their catalogue labels, and the two tables
built from them: signs on the 25 2-tomos and the multiplication table."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from importlib import resources

from .combinatorics import Partition
from .group_model import LabeledGraph, Perm, eval_word, is_kernel_graph
from .theta_action import sign_of

N = 4

SQUARE_WORDS = {
    "A": "1213", "B": "1312", "C": "2321", "D": "1214", "E": "1412", "F": "2421",
    "K": "1413", "L": "1314", "M": "4341", "P": "4243", "Q": "4342", "R": "2324",
}
PRODUCTS = {"T": ("A", "D"), "U": ("B", "F"), "V": ("A", "Q")}
UPPER = list(SQUARE_WORDS) + list(PRODUCTS)

# row order of the sign table: 2+2+1 partitions first, then 3+1+1
ROW_ORDER = [
    "0;12;34", "0;13;24", "0;14;23",
    "02;1;34", "03;1;24", "04;1;23",
    "01;2;34", "03;14;2", "04;13;2",
    "01;24;3", "02;14;3", "04;12;3",
    "01;23;4", "02;13;4", "03;12;4",
    "012;3;4", "013;2;4", "014;2;3",
    "023;1;4", "024;1;3", "034;1;2",
    "0;123;4", "0;124;3", "0;134;2", "0;1;234",
]


def row_partition(text: str) -> Partition:
    return Partition.parse(text.replace(";", ","), N)


def row_text(p: Partition) -> str:
    return p.text().replace(",", ";")


@dataclass(frozen=True)
class K5Element:
    label: str
    graph: LabeledGraph
    word: str | None = None


class Catalog:
    """Label <-> graph lookup for K_5."""

    def __init__(self, elements: list[K5Element]):
        self.elements = elements
        self.by_label = {e.label: e for e in elements}
        self.by_bits = {e.graph.bits: e for e in elements}
        if len(self.by_bits) != len(elements):
            raise AssertionError("two catalogue labels share a graph")

    def __getitem__(self, label: str) -> K5Element:
        return self.by_label[label]

    def __len__(self) -> int:
        return len(self.elements)

    def label_of(self, g: LabeledGraph) -> str:
        try:
            return self.by_bits[g.bits].label
        except KeyError:
            raise KeyError(f"graph {g} is not in the catalogue") from None

    def product(self, *labels: str) -> str:
        g = LabeledGraph.empty(N)
        for lab in labels:
            g = g + self.by_label[lab].graph
        return self.label_of(g)


def build_k5_catalog() -> Catalog:
    elems = [K5Element("I", LabeledGraph.empty(N), "")]
    for lab, w in SQUARE_WORDS.items():
        x = eval_word(w * 2, N)
        if not x.perm.is_identity():
            raise AssertionError(f"{lab} does not lie over the identity")
        elems.append(K5Element(lab, x.graph, w * 2))
    graphs = {e.label: e.graph for e in elems}
    for lab, (a, b) in PRODUCTS.items():
        g = graphs[a] + graphs[b]
        graphs[lab] = g
        elems.append(K5Element(lab, g, SQUARE_WORDS[a] * 2 + SQUARE_WORDS[b] * 2))
    full = LabeledGraph.complete(N)
    elems.append(K5Element("i", full))
    for lab in UPPER:
        elems.append(K5Element(lab.lower(), graphs[lab] + full))
    for e in elems:
        if not is_kernel_graph(e.graph):
            raise AssertionError(f"{e.label} is not a kernel graph")
    return Catalog(elems)


# -- sign table --------------------------------------------------------------------

@dataclass
class SignTable:
    rows: list[str]
    columns: list[str]
    cells: list[list[int]]

    def to_csv(self) -> str:
        out = ["partition," + ",".join(self.columns)]
        for r, vals in zip(self.rows, self.cells):
            out.append(r + "," + ",".join("+" if v > 0 else "-" for v in vals))
        return "\n".join(out) + "\n"

    def to_json(self) -> str:
        return json.dumps({"schema": 1, "columns": self.columns,
                           "rows": {r: vals for r, vals in zip(self.rows, self.cells)}})

    def diff(self, other: "SignTable") -> list[str]:
        out = []
        if self.rows != other.rows or self.columns != other.columns:
            out.append("row or column headers differ")
            return out
        for r, a, b in zip(self.rows, self.cells, other.cells):
            for c, x, y in zip(self.columns, a, b):
                if x != y:
                    out.append(f"{r} {c}: {x:+d} != {y:+d}")
        return out


def generate_action_table(cat: Catalog | None = None) -> SignTable:
    cat = cat or build_k5_catalog()
    rows = [row_partition(r) for r in ROW_ORDER]
    cells = [[sign_of(cat[c].graph, p) for c in UPPER] for p in rows]
    return SignTable([row_text(p) for p in rows], list(UPPER), cells)


def _read_data(name: str) -> str:
    return resources.files("dualgroup").joinpath("data", name).read_text()


def golden_action_table() -> SignTable:
    reader = csv.reader(io.StringIO(_read_data("table1.csv")))
    header = next(reader)
    rows, cells = [], []
    for rec in reader:
        rows.append(row_text(row_partition(rec[0])))
        cells.append([1 if c == "+" else -1 for c in rec[1:]])
    return SignTable(rows, header[1:], cells)


# -- multiplication table --------------------------------------------------------------

@dataclass
class MultTable:
    labels: list[str]
    entries: dict[tuple[str, str], str]

    def upper_rows(self) -> list[str]:
        return self.labels[:-1]

    def upper_cols(self) -> list[str]:
        return self.labels[1:]

    def cell(self, a: str, b: str) -> str:
        return self.entries[(a, b)]

    def to_csv(self) -> str:
        """Upper triangle in the printed layout; the letter l stands for ell."""
        out = ["label," + ",".join(self.upper_cols())]
        for i, a in enumerate(self.upper_rows()):
            vals = [self.entries[(a, b)] if j > i else ""
                    for j, b in enumerate(self.labels) if j > 0]
            out.append(a + "," + ",".join(vals))
        return "\n".join(out) + "\n"

    def to_json(self) -> str:
        return json.dumps({"schema": 1, "labels": self.labels,
                           "products": {a: {b: self.entries[(a, b)] for b in self.labels}
                                        for a in self.labels}})

    def diff_upper(self, golden: dict[tuple[str, str], str]) -> list[str]:
        return [f"{a}{b}: {self.entries[(a, b)]} != {v}"
                for (a, b), v in sorted(golden.items()) if self.entries[(a, b)] != v]


def generate_mult_table(cat: Catalog | None = None) -> MultTable:
    cat = cat or build_k5_catalog()
    entries = {(a, b): cat.product(a, b) for a in UPPER for b in UPPER}
    return MultTable(list(UPPER), entries)


def golden_mult_table() -> dict[tuple[str, str], str]:
    reader = csv.reader(io.StringIO(_read_data("table2.csv")))
    cols = next(reader)[1:]
    out = {}
    for rec in reader:
        for c, v in zip(cols, rec[1:]):
            if v:
                out[(rec[0], c)] = v
    return out


# -- conjugation and figures ----------------------------------------------------------

def conjugate(label: str, g: int, cat: Catalog | None = None) -> str:
    """The label of X_g x X_g: relabel the graph by (0 g)."""
    if not 1 <= g <= N:
        raise ValueError(f"generator index {g} out of range 1..{N}")
    cat = cat or build_k5_catalog()
    return cat.label_of(cat[label].graph.relabel(Perm.transposition(0, g, N)))


def figure_dot(labels: str = "TUV", cat: Catalog | None = None) -> str:
    cat = cat or build_k5_catalog()
    return "".join(cat[lab].graph.to_dot(lab) for lab in labels)
