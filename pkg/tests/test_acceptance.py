"""The twelve acceptance criteria, each timed and reported on one line."""

from contextlib import contextmanager
from itertools import permutations
from time import perf_counter

import numpy as np

from dualgroup import catalog
from dualgroup.combinatorics import Partition, tomo_partitions
from dualgroup.group_model import (
    DualityElement, LabeledGraph, Perm, SplitStatus, bfs_enumerate, centre_order,
    centre_order_bruteforce, dg_order, eval_word, is_kernel_graph, kernel_basis,
    square_graph, square_word, verify_splitting,
)
from dualgroup.presentation import (
    CosetStatus, coset_enumerate, rels_relators, standard_relators, verify_relators,
)
from dualgroup.theta_action import (
    BundleAssignment, ParamVector, Tomo, compose_tomos, sign_action,
    square_kernel_words, theta_generator, theta_word, verify_pairing,
)


@contextmanager
def criterion(capsys, num, title, limit):
    notes = []
    t0 = perf_counter()
    line = f"AC{num:<2} FAIL  {title}"
    try:
        yield notes
        dt = perf_counter() - t0
        assert dt < limit, f"took {dt:.2f} s, limit {limit} s"
        extra = f"; {'; '.join(notes)}" if notes else ""
        line = f"AC{num:<2} PASS  {title} ({dt:.2f} s, limit {limit} s{extra})"
    except BaseException as exc:
        line = f"AC{num:<2} FAIL  {title}: {exc}"
        raise
    finally:
        with capsys.disabled():
            print("\n" + line)


def test_ac01_order_vs_enumeration(capsys):
    with criterion(capsys, 1, "order formula vs BFS enumeration, n = 2, 3, 4", 5):
        for n, want in [(2, 6), (3, 96), (4, 3840)]:
            assert dg_order(n) == want
            assert len(bfs_enumerate(n)) == want


def test_ac02_kernel_characterisation(capsys):
    with criterion(capsys, 2, "kernel = even-valency, even-size graphs, n = 3, 4", 5):
        for n, dim in [(3, 2), (4, 5)]:
            over_id = {x.graph.bits for x in bfs_enumerate(n) if x.perm.is_identity()}
            m = (n + 1) * n // 2
            parity = {b for b in range(1 << m) if is_kernel_graph(LabeledGraph(n, b))}
            assert over_id == parity
            assert len(kernel_basis(n)) == dim
            assert len(over_id) == 2 ** dim


def test_ac03_table1(capsys):
    with criterion(capsys, 3, "Table 1: 375 signs", 1) as notes:
        table = catalog.generate_action_table()
        diff = table.diff(catalog.golden_action_table())
        assert diff == [], diff
        cells = sum(len(r) for r in table.cells)
        assert cells == 375
        notes.append(f"{cells} cells match")


def test_ac04_table2(capsys):
    with criterion(capsys, 4, "Table 2: K_5 multiplication", 1) as notes:
        cat = catalog.build_k5_catalog()
        table = catalog.generate_mult_table(cat)
        golden = catalog.golden_mult_table()
        assert table.diff_upper(golden) == []
        assert cat.product("A", "D") == "T"
        assert cat.product("B", "F") == "U"
        assert cat.product("A", "Q") == "V"
        assert cat.product("A", "K") == "P"
        assert cat.product("A", "D") == cat.product("M", "Q")
        assert table.cell("T", "U") == "V" and table.cell("U", "V") == "T"
        notes.append(f"{len(golden)} filled cells match")


def test_ac05_centre(capsys):
    with criterion(capsys, 5, "centre: brute force n = 3, 4 and formula n = 5..8", 30):
        for n, z in [(3, 1), (4, 2)]:
            assert centre_order_bruteforce(n) == z == centre_order(n)
        assert [centre_order(n) for n in (5, 6, 7, 8)] == [1, 1, 1, 2]


def test_ac06_splitting(capsys):
    with criterion(capsys, 6, "splitting witness n = 6; criterion fails n = 4, 5", 1):
        r6 = verify_splitting(6, search=False)
        assert r6.status is SplitStatus.SPLIT_WITNESS_FOUND and r6.gamma_in_kernel
        assert r6.relations == {"involution": True, "braid": True, "square": True}
        for n in (4, 5):
            assert verify_splitting(n, search=False).status is SplitStatus.WITNESS_CRITERION_FAILS


def test_ac07_relation_suite(capsys):
    with criterion(capsys, 7, "relators map to 1 and squares to the square graph, n <= 6", 10):
        for n in range(3, 7):
            assert verify_relators(n, rels_relators(n)).ok
            ident = Perm.identity(n)
            for i, j, k in permutations(range(1, n + 1), 3):
                x = eval_word(square_word(i, j, k), n)
                assert x == DualityElement(square_graph(i, j, k, n), ident)


def test_ac08_presentation_order(capsys):
    with criterion(capsys, 8, "coset enumeration: 3840 with rels4, cap exceeded without", 60) as notes:
        full = coset_enumerate(standard_relators(4).relators, 4)
        assert full.status is CosetStatus.COMPLETE and full.cosets == 3840
        bare = coset_enumerate(rels_relators(4), 4)
        assert bare.status is CosetStatus.DIVERGED
        notes.append(f"rels alone hit the cap with {bare.cosets} live cosets")


def test_ac09_theta_vs_graphs(capsys):
    with criterion(capsys, 9, "theta_word = sign_action on kernel words, n = 3, 4", 60) as notes:
        checked = 0
        for n in (3, 4):
            words = square_kernel_words(n)
            configs = [BundleAssignment.uniform(n, 2),
                       BundleAssignment.random(n, np.random.default_rng(100 + n), 2)]
            for dims in configs:
                phi = ParamVector.stack([ParamVector.random(dims, np.random.default_rng(s))
                                         for s in range(10)])
                # products do contribute: a single letter is not a pure sign on big tomos
                one = theta_generator(1, phi)
                assert any(not np.array_equal(np.abs(one[p]), np.abs(phi[p]))
                           for p in tomo_partitions(n) if len(p.blocks) >= 4)
                for w in words:
                    x = eval_word(w, n)
                    assert x.perm.is_identity()
                    assert theta_word(w, phi) == sign_action(x.graph, phi), w
                    checked += 1
        notes.append(f"{checked} word x dims checks, 10 seeds each")


def test_ac10_lemma_examples(capsys):
    with criterion(capsys, 10, "worked examples of the X_k action", 5) as notes:
        n = 3
        dims = BundleAssignment.uniform(n, 1)
        rng = np.random.default_rng(0)
        for _ in range(5):
            phi = ParamVector(dims, {p: rng.integers(-9, 10, size=(1,) * len(p.blocks))
                                     for p in tomo_partitions(n)})
            psi = theta_word("1", phi, own_labels=True)
            f = lambda t: int(phi[t].reshape(-1)[0])
            g = lambda t: int(psi[t].reshape(-1)[0])
            assert g("2,13,0") == -f("1,2,03")
            assert g("2,3,01") == f("2,3,01")
            assert g("3,12,0") == -f("3,1,02")
            assert g("3,02,1") == -f("12,3,0")
            assert g("23,1,0") == -f("23,1,0")
            assert g("03,2,1") == -f("31,2,0")
            assert g("0,2,3,1") == (-f("1,2,3,0") + f("1,2,03") * f("0,3,12")
                                    + f("1,3,02") * f("0,2,13"))
        notes.append("printed (31,2,0) entry read as -(03,2,1)")

        def term(phi, *names):
            t = Tomo(Partition.parse(names[0], 4), phi[names[0]])
            for name in names[1:]:
                t = compose_tomos(t, Tomo(Partition.parse(name, 4), phi[name]))
            return t.tensor

        dims4 = BundleAssignment.random(4, np.random.default_rng(1), 2)
        for seed in range(5):
            phi = ParamVector.random(dims4, np.random.default_rng(seed))
            psi = theta_generator(1, phi)
            want = (-phi["1,2,3,04"] + term(phi, "04,2,13", "1,3,024")
                    + term(phi, "04,3,12", "1,2,034"))
            assert np.array_equal(psi["1,2,3,04"], want)
        # basis tensors, one entry at a time
        for p in ("1,2,3,04", "04,2,13", "1,3,024"):
            part = Partition.parse(p, 4)
            for idx in np.ndindex(*dims4.shape(part)):
                arr = np.zeros(dims4.shape(part), dtype=np.int64)
                arr[idx] = 1
                phi = ParamVector.single(dims4, part, arr)
                psi = theta_generator(1, phi)
                want = (-phi["1,2,3,04"] + term(phi, "04,2,13", "1,3,024")
                        + term(phi, "04,3,12", "1,2,034"))
                assert np.array_equal(psi["1,2,3,04"], want)


def test_ac11_pairing(capsys):
    with criterion(capsys, 11, "pairing oracle, n = 3, 4, all k, 100 trials each", 30) as notes:
        total = 0
        for n in (3, 4):
            for k in range(1, n + 1):
                for seed in range(100):
                    rng = np.random.default_rng(1000 * n + 10 * k + seed)
                    dims = BundleAssignment.random(n, rng, 2)
                    rep = verify_pairing(k, ParamVector.random(dims, rng), 3, rng)
                    assert rep.ok, ("decomposed pairing disagrees", n, k, seed, rep.counterexample)
                    total += 1
        notes.append(f"{total} trials")


def test_ac12_partition_counts(capsys):
    with criterion(capsys, 12, "partition counts 7, 36, 171, 813", 5):
        assert [len(tomo_partitions(n)) for n in (3, 4, 5, 6)] == [7, 36, 171, 813]
