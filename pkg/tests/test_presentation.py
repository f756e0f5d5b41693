import pytest

from dualgroup.group_model import bfs_enumerate, dg_order, parse_word
from dualgroup.presentation import (
    EXTRA_RELATORS_4, PRINTED_RELATORS_4, CosetStatus, coset_enumerate, extra_relator_subsets,
    rels_relators, standard_relators, verify_relators,
)


def test_relator_sets():
    assert standard_relators(2).words() == ["11", "22", "121212"]
    r3 = standard_relators(3).words()
    assert "1213" * 4 in r3 and "2321" * 4 in r3
    r4 = standard_relators(4).words()
    assert "12131213" "14131413" "42434243" in r4
    assert "12131213" "12141214" "24342434" "14341434" in r4
    assert len(r4) == len(rels_relators(4)) + 2


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_relators_hold_in_graph_model(n):
    rep = verify_relators(n)
    assert rep.ok and rep.checked == len(standard_relators(n).relators)


def test_mutated_relator_fails():
    rep = verify_relators(3, ["1213" * 3])
    assert not rep.ok
    assert rep.failures[0]["word"] == "121312131213"


def test_printed_extra_relators_are_relators_too():
    assert verify_relators(4, list(PRINTED_RELATORS_4)).ok
    assert verify_relators(4, list(EXTRA_RELATORS_4)).ok
    res = coset_enumerate(rels_relators(4) + [parse_word(w) for w in PRINTED_RELATORS_4], 4)
    assert res.cosets == 3840


@pytest.mark.parametrize("jit", [True, False])
def test_small_enumerations(jit):
    assert coset_enumerate(standard_relators(2).relators, 2, jit=jit).cosets == 6
    assert coset_enumerate(standard_relators(3).relators, 3, jit=jit).cosets == 96


def test_dg4_order_three_ways():
    res = coset_enumerate()
    assert res.status is CosetStatus.COMPLETE
    assert res.cosets == dg_order(4) == len(bfs_enumerate(4)) == 3840


def test_rels_alone_diverges():
    res = coset_enumerate(rels_relators(4), 4)
    assert res.status is CosetStatus.DIVERGED and res.order is None


def test_extra_relator_subsets():
    res = extra_relator_subsets()
    assert res["rels"].status is CosetStatus.DIVERGED
    assert res["rels+extra1+extra2"].cosets == 3840
    for key in ("rels+extra1", "rels+extra2"):
        assert res[key].status is CosetStatus.COMPLETE
        assert res[key].cosets % 3840 == 0


def test_trace_and_validation():
    res = coset_enumerate(standard_relators(3).relators, 3, trace=True)
    assert res.trace and res.trace[0][0] == "define"
    assert sum(1 for t in res.trace if t[0] == "define") == res.defined - 1
    with pytest.raises(ValueError):
        coset_enumerate(["15"], 4)
