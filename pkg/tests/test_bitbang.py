import json
from itertools import combinations

import pytest

from phaseweb import bitbang
from phaseweb.algebra import Algebra
from phaseweb.bitbang import (
    CORRECTED_MAPPING,
    PAPER_MAPPING,
    SpinorState,
    classify_transformation,
    coexclusion_pairs,
    derive,
    pci_table,
    quaternion_check,
    spinor_states,
    tetrahedra,
    transition_edges,
)
from phaseweb.errors import NotABlade, PhaseWebError


class TestDerive:
    @pytest.mark.parametrize("branch", ["main", "tilde"])
    @pytest.mark.parametrize("sig", [1, -1])
    def test_all_steps_hold(self, branch, sig):
        steps = derive(branch, sig)
        assert [s.index for s in steps] == [0, 1, 2, 3, 4]
        assert all(s.verify() for s in steps)

    def test_main_symbols(self):
        assert [s.symbol for s in derive()] == ["Void", "1_0", "~1_0", "1_1", "1_2"]
        assert derive()[2].justification == "1 + 1 = -1"

    def test_tilde_branch_rejoins(self):
        main, tilde = derive("main"), derive("tilde")
        assert tilde[1].symbol == "~1_0" and tilde[2].symbol == "1_0"
        assert bitbang.symbols_after(main, 2) == bitbang.symbols_after(tilde, 2) == {"1_0", "~1_0"}

    def test_rules(self):
        assert [s.rule for s in derive()] == ["void-split", "void-split", "mod3-sum", "arity1-coex", "true-coex"]

    def test_checks_are_live(self):
        step = derive()[2]
        step.check = lambda: False
        assert not step.verify()

    def test_json(self):
        doc = json.loads(json.dumps([s.to_json() for s in derive()]))
        assert all(d["holds"] for d in doc)
        assert "1 + 0" in doc[1]["commentary"]

    def test_unknown_branch(self):
        with pytest.raises(PhaseWebError):
            derive("sideways")


class TestQuaternions:
    def test_printed_mapping_minus_one(self):
        rep = quaternion_check(-1, PAPER_MAPPING)
        assert len(rep.relations) == 9 and rep.all_hold

    def test_printed_mapping_plus_one_fails_cyclic(self):
        rep = quaternion_check(1, PAPER_MAPPING)
        holds = {r["relation"]: r["holds"] for r in rep.relations}
        assert all(holds[f"e{i}^2 = -1"] for i in (1, 2, 3))
        assert not holds["e1e2 = e3"]
        alg = Algebra(3)
        assert alg.gp(alg.s(1, 2), alg.s(2, 3)) == -alg.s(3, 1) == alg.s(1, 3)

    def test_corrected_mapping_plus_one(self):
        assert quaternion_check(1, CORRECTED_MAPPING).all_hold

    def test_defaults(self):
        assert quaternion_check(-1).all_hold and quaternion_check(1).all_hold
        assert quaternion_check().signature == quaternion_check(-1).signature

    def test_multivector_mapping(self):
        alg = Algebra(3, -1)
        assert quaternion_check(-1, [alg.s(1, 2), alg.s(2, 3), alg.s(3, 1)]).all_hold

    def test_bad_mappings(self):
        with pytest.raises(NotABlade):
            quaternion_check(-1, [(1, 2), (1, 2), (2, 3)])
        alg = Algebra(3)
        with pytest.raises(NotABlade):
            quaternion_check(-1, [alg.s(1), alg.s(1, 2), alg.s(2, 3)])
        with pytest.raises(NotABlade):
            quaternion_check(-1, [(1, 2), (2, 3)])


class TestStates:
    def test_rows(self):
        states = spinor_states()
        assert [s.index for s in states] == list(range(7, -1, -1))
        assert states[0].bits == (1, 1, 1)
        assert SpinorState.from_index(4).bits == (1, -1, -1)

    def test_pairs(self):
        assert coexclusion_pairs() == [(7, 0), (6, 1), (5, 2), (4, 3)]
        for a, b in coexclusion_pairs():
            sa, sb = SpinorState.from_index(a), SpinorState.from_index(b)
            assert sa.bits == tuple(-x for x in sb.bits) and sa.distance(sb) == 3

    def test_index_range(self):
        with pytest.raises(PhaseWebError):
            SpinorState.from_index(8)


class TestTetrahedra:
    def test_families(self):
        assert tetrahedra() == [[0, 3, 5, 6], [1, 2, 4, 7]]

    def test_parity(self):
        a, b = tetrahedra()
        assert {SpinorState.from_index(i).parity for i in a} == {-1}
        assert {SpinorState.from_index(i).parity for i in b} == {1}

    def test_complete_graphs(self):
        edges = {frozenset(e) for e in transition_edges(2)}
        for fam in tetrahedra():
            assert {frozenset(p) for p in combinations(fam, 2)} <= edges
        assert len(edges) == 12
        a, b = tetrahedra()
        cross3 = {frozenset(e) for e in transition_edges(3)}
        assert all(not (set(e) & set(a) and set(e) & set(b)) for e in edges)
        assert cross3 == {frozenset(p) for p in coexclusion_pairs()}

    def test_cube(self):
        assert bitbang.one_flip_connected()
        assert len(transition_edges(1)) == 12

    def test_exports(self):
        doc = bitbang.tetrahedra_json()
        assert [f["parity"] for f in doc["families"]] == [-1, 1]
        dot = bitbang.tetrahedra_dot()
        assert dot.startswith("graph tetrahedra {") and "7 -- 0 [style=dashed];" in dot


# rows of the flip table read off the printed x/- pattern,
# columns sisj sk sjsk si sksi sj
PCI_PRINTED = ["x--xx-", "--xxxx", "-x-x-x"]


class TestPci:
    def expected_cells(self, flipped):
        f = set(flipped)
        base = {c: c in f for c in ("si", "sj", "sk")}
        pair = {
            "sisj": base["si"] != base["sj"],
            "sjsk": base["sj"] != base["sk"],
            "sksi": base["sk"] != base["si"],
        }
        return {**base, **pair}

    def test_totals(self):
        assert [r.total for r in pci_table()] == [3, 0, 3]

    def test_cells_match_rule(self):
        for row in pci_table():
            assert row.cells == self.expected_cells(row.flipped)

    def test_cells_literal(self):
        text = ["".join("x" if r.cells[c] else "-" for c in bitbang.PCI_COLUMNS) for r in pci_table()]
        assert text == PCI_PRINTED
        assert [r.pci for r in pci_table()][1] == {"P": False, "C": False, "I": False}

    def test_transformations(self):
        assert [r.transformation for r in pci_table()] == ["reflection", "rotation", "reflection"]

    def test_classify(self):
        assert classify_transformation(["sj"]) == "reflection"
        assert classify_transformation(["sj", "sk"]) == "rotation"
        with pytest.raises(PhaseWebError):
            classify_transformation([])
        with pytest.raises(PhaseWebError):
            classify_transformation(["s9"])
