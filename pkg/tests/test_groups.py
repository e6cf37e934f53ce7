import numpy as np
import pytest

from scharlau.errors import BadSpec, BadTable
from scharlau.groups import (FiniteGroup, all_subgroups, builtin, centralizer, class_of,
                             conjugacy_classes, cyclic, find_partition, format_table, gpq,
                             left_cosets, parse_table, prime_order_subgroups, quaternion8,
                             read_table, set_stabilizer)
from scharlau.verify import sl2_group

from oracles import orbit_classes, prime_subgroup_census

KLEIN_TABLE = """group-table v1
4
0 1 2 3
1 0 3 2
2 3 0 1
3 2 1 0
"""


@pytest.fixture
def klein(tmp_path):
    path = tmp_path / "v4.txt"
    path.write_text(KLEIN_TABLE)
    return builtin(f"table:{path}")


def test_builtins():
    assert cyclic(1).order == 1
    G = gpq(7, 3)
    assert G.order == 21 and not G.is_abelian()
    Q = quaternion8()
    assert Q.order == 8 and int((Q.element_orders() == 2).sum()) == 1
    assert builtin("sl2:5").order == 120
    assert builtin("cyclic:6").is_abelian()


@pytest.mark.parametrize("spec", ["gpq:7:5", "gpq:8:3", "cyclic:0", "cyclic", "dihedral:4",
                                  "sl2:4", "gpq:7"])
def test_bad_specs(spec):
    with pytest.raises(BadSpec):
        builtin(spec)


def test_conjugacy_class_examples(G5, g21):
    assert len(conjugacy_classes(cyclic(5))) == 5
    assert len(conjugacy_classes(G5)) == 9
    # 5 classes for the order-21 group, counted by the loop oracle
    assert len(orbit_classes(g21.table.tolist())) == 5
    assert len(conjugacy_classes(g21)) == 5


@pytest.mark.parametrize("spec", ["quaternion8", "gpq:7:3", "gpq:11:5", "sl2:5", "cyclic:12"])
def test_classes_match_oracle(spec):
    G = builtin(spec)
    mine = [list(m) for _, m in conjugacy_classes(G)]
    assert mine == orbit_classes(G.table.tolist())
    for rep, members in conjugacy_classes(G):
        assert rep == members[0]


def test_centralizer_examples(G17, sp17):
    assert len(centralizer(G17, 0)) == 4896
    assert len(centralizer(G17, G17.id_of(sp17.V))) == 18
    assert len(centralizer(G17, G17.id_of(sp17.Delta))) == 16


def test_set_stabilizer_examples(G17, sp17):
    from scharlau.verify import special_sets
    sets = special_sets(G17, sp17)
    assert len(set_stabilizer(G17, {0})) == 4896
    stab = set_stabilizer(G17, sets["W<V>"])
    assert {G17.elements[g] for g in stab} == {sp17.identity, sp17.neg_identity}
    assert len(set_stabilizer(G17, sets["<V>"])) == 36


def test_prime_order_subgroup_examples(G17, g21):
    census = lambda G: sorted((len(H), 1) for H in prime_order_subgroups(G))
    assert census(cyclic(6)) == [(2, 1), (3, 1)]
    counts = {}
    for H in prime_order_subgroups(G17):
        counts[len(H)] = counts.get(len(H), 0) + 1
    # brute-force census over raw matrices: 1 of order 2, 136 of order 3, 18 of order 17
    assert counts == {2: 1, 3: 136, 17: 18}
    counts = {}
    for H in prime_order_subgroups(g21):
        counts[len(H)] = counts.get(len(H), 0) + 1
    assert counts == prime_subgroup_census(g21.table.tolist()) == {7: 1, 3: 7}


@pytest.mark.parametrize("spec", ["quaternion8", "gpq:7:3", "sl2:5", "cyclic:30", "gpq:13:3"])
def test_prime_order_subgroup_properties(spec):
    G = builtin(spec)
    subs = prime_order_subgroups(G)
    assert len({H.elements for H in subs}) == len(subs)
    orders = G.element_orders()
    owner = {}
    for H in subs:
        assert H.is_closed()
        assert int(orders[H.elements[1]]) == len(H)
        for g in H.elements[1:]:
            assert g not in owner
            owner[g] = H
    from scharlau.modp import is_prime
    assert set(owner) == {g for g in range(G.order) if is_prime(int(orders[g]))}


def test_left_cosets(G17, sp17):
    G6 = cyclic(6)
    assert left_cosets(G6, range(6)) == [tuple(range(6))]
    assert left_cosets(G6, [0, 3]) == [(0, 3), (1, 4), (2, 5)]
    HT = G17.cyclic_subgroup(G17.id_of(sp17.T))
    cosets = left_cosets(G17, HT)
    assert len(cosets) == 288 and all(len(c) == 17 for c in cosets)
    flat = sorted(g for c in cosets for g in c)
    assert flat == list(range(4896))
    assert [c[0] for c in cosets] == sorted(c[0] for c in cosets)


def test_orbit_stabilizer_exhaustive(G17):
    for G in (G17, sl2_group(13), builtin("gpq:11:5"), quaternion8()):
        sizes = {}
        for _, members in conjugacy_classes(G):
            for g in members:
                sizes[g] = len(members)
        eq = G.table == G.table.T  # eq[g, x]: g and x commute
        cent = eq.sum(axis=0)
        assert all(sizes[x] * int(cent[x]) == G.order for x in range(G.order))
        for x in range(0, G.order, max(1, G.order // 50)):
            assert len(centralizer(G, x)) == int(cent[x])


def test_find_partition_examples(g21, klein):
    P = find_partition(g21)
    assert P.check() and sorted(len(b) for b in P.blocks) == [3] * 7 + [7]
    P5 = find_partition(cyclic(5))
    assert len(P5) == 1 and P5.blocks[0].elements == tuple(range(5))
    PK = find_partition(klein)
    assert PK.check() and [len(b) for b in PK.blocks] == [2, 2, 2]
    for P in (P, P5, PK):
        G = P.parent
        assert sum(len(b) - 1 for b in P.blocks) == G.order - 1


def test_find_partition_none_for_quaternion():
    # every subgroup of Q8 contains -1, so no partition exists
    assert find_partition(quaternion8()) is None


def test_table_roundtrip(tmp_path, g21):
    path = tmp_path / "g21.txt"
    path.write_text(format_table(g21))
    H = read_table(path)
    assert np.array_equal(H.table, g21.table)


@pytest.mark.parametrize("text, where", [
    ("group table\n2\n0 1\n1 0\n", "line 1"),
    ("group-table v1\nx\n", "line 2"),
    ("group-table v1\n2\n0 1\n1 0 0\n", "line 4"),
    ("group-table v1\n2\n0 1\n1 2\n", "line 4"),
    ("group-table v1\n3\n0 1 2\n1 1 0\n2 0 1\n", "line 4"),
    ("group-table v1\n2\n1 0\n0 1\n", "identity"),
    ("group-table v1\n3\n0 1 2\n1 0 2\n", "expected 3"),
])
def test_table_rejections(text, where):
    with pytest.raises(BadTable, match=where):
        parse_table(text)


def test_nonassociative_latin_square_rejected():
    # a loop of order 5 that is not a group
    t = [[0, 1, 2, 3, 4],
         [1, 0, 3, 4, 2],
         [2, 4, 0, 1, 3],
         [3, 2, 4, 0, 1],
         [4, 3, 1, 2, 0]]
    with pytest.raises(BadTable, match="associative"):
        FiniteGroup(t)


def test_all_subgroups_counts():
    assert len(all_subgroups(quaternion8())) == 6
    assert len(all_subgroups(cyclic(12))) == 6
    assert len(all_subgroups(gpq(7, 3))) == 10
