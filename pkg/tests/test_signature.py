import random

import pytest

from npnmatch.boolfn import Cube, TruthTable, apply_np_transform, cube_of
from npnmatch.signature import (
    PHASE_NEGATIVE,
    PHASE_POSITIVE,
    PHASE_UNDETERMINED,
    SSValue,
    compute_ss_vector,
    determine_phases,
    dump_first_order,
    first_order_value,
    vectors_compatible,
)
from npnmatch.symmetry import build_symmetry_classes, first_order_pairs

from cases import (
    CASE4_F,
    CASE4_G,
    CASE5_F,
    CASE5_G,
    CASE7_F,
    CASE7_G,
    TRIO_A,
    TRIO_B,
    TRIO_C,
)
from test_boolfn import random_table, random_transform


def ss(f, cube=Cube(), sym=None, identified=None, prev=None):
    if sym is None:
        sym = build_symmetry_classes(f)
    return compute_ss_vector(f, cube, sym, identified, prev)


class TestFirstOrderValue:
    def test_trio_vectors(self):
        assert dump_first_order(first_order_pairs(TRIO_A)) == "{(2,2),(1,3),(2,2)}"
        assert dump_first_order(first_order_pairs(TRIO_B)) == "{(3,1),(2,2),(2,2)}"
        assert dump_first_order(first_order_pairs(TRIO_C)) == "{(3,1),(1,3),(3,1)}"

    def test_restricted_value(self):
        assert first_order_value(CASE5_F, cube_of((0, True)), 1) == (5, 6)

    def test_constant_true(self):
        f = TruthTable.constant(3, True)
        for i in range(3):
            assert first_order_value(f, Cube(), i) == (4, 4)

    def test_variable_in_cube_rejected(self):
        with pytest.raises(ValueError):
            first_order_value(TRIO_A, cube_of((1, True)), 1)


class TestComputeSSVector:
    def test_case4_initial(self):
        assert ss(CASE4_F).dump() == (
            "{(4, 4, 2, 0, 1),(4, 4, 2, 0, 1),(4, 4, -1, -1, 1),(5, 3, -1, -1, 0)}"
        )
        assert ss(CASE4_G).dump() == (
            "{(3, 5, -1, -1, 0),(4, 4, 2, 1, 1),(4, 4, -1, -1, 1),(4, 4, 2, 1, 1)}"
        )

    def test_case5_initial(self):
        assert ss(CASE5_F).dump() == (
            "{(11, 5, -1, -1, 0),(8, 8, -1, -1, 3),(10, 6, -1, -1, 1),"
            "(9, 7, -1, -1, 2),(9, 7, -1, -1, 2)}"
        )
        assert ss(CASE5_G).dump() == (
            "{(5, 11, -1, -1, 0),(8, 8, -1, -1, 3),(10, 6, -1, -1, 1),"
            "(9, 7, -1, -1, 2),(9, 7, -1, -1, 2)}"
        )

    def test_case5_refined_after_split(self):
        prev = ss(CASE5_F)
        identified = [True, False, True, False, False]
        v = ss(CASE5_F, cube_of((0, True)), identified=identified, prev=prev)
        assert v.dump() == (
            "{(0, 0, -1, -1, 0),(5, 6, -1, -1, 3),(0, 0, -1, -1, 1),"
            "(6, 5, -1, -1, 2),(6, 5, -1, -1, 2)}"
        )

    def test_case7_initial(self):
        assert ss(CASE7_F).dump() == (
            "{(30, 16, 2, 0, 1),(30, 16, 2, 1, 1),(31, 15, -1, -1, 0),"
            "(16, 30, 2, 1, 1),(30, 16, 2, 0, 1),(24, 22, -1, -1, 2),(22, 24, -1, -1, 2)}"
        )
        assert ss(CASE7_G).dump() == (
            "{(16, 30, 2, 0, 1),(22, 24, -1, -1, 2),(16, 30, 2, 0, 1),"
            "(30, 16, 2, 3, 1),(30, 16, 2, 3, 1),(15, 31, -1, -1, 0),(24, 22, -1, -1, 2)}"
        )

    def test_refinement_never_merges(self):
        rng = random.Random(17)
        for _ in range(30):
            n = rng.randint(2, 6)
            f = random_table(rng, n)
            sym = build_symmetry_classes(f)
            prev = compute_ss_vector(f, Cube(), sym)
            i = rng.randrange(n)
            identified = [False] * n
            identified[i] = True
            cur = compute_ss_vector(
                f, cube_of((i, rng.random() < 0.5)), sym, identified, prev
            )
            for a in range(n):
                for b in range(a + 1, n):
                    if prev[a].group != prev[b].group:
                        assert cur[a].group != cur[b].group

    def test_counts_sum_to_restricted_size(self):
        rng = random.Random(29)
        f = random_table(rng, 5)
        cube = cube_of((2, True))
        v = ss(f, cube)
        restricted = f.bits & cube.mask(5)
        for i in range(5):
            if i != 2:
                assert v[i].pos_count + v[i].neg_count == restricted.bit_count()


class TestDeterminePhases:
    def test_case4_phases(self):
        assert determine_phases(ss(CASE4_F)) == [-1, -1, -1, 0]
        assert determine_phases(ss(CASE4_G)) == [1, -1, -1, -1]

    def test_balanced_is_undetermined(self):
        v = ss(TruthTable.constant(2, True))
        assert determine_phases(v) == [PHASE_UNDETERMINED, PHASE_UNDETERMINED]

    def test_identified_keeps_record(self):
        identified = [True, False, False, False]
        v = ss(CASE4_F, identified=identified, prev=ss(CASE4_F))
        rec = [PHASE_NEGATIVE, -1, -1, -1]
        assert determine_phases(v, rec)[0] == PHASE_NEGATIVE


class TestVectorsCompatible:
    def test_case4_pair(self):
        assert vectors_compatible(ss(CASE4_F), ss(CASE4_G))

    def test_trio_mismatch(self):
        assert not vectors_compatible(ss(TRIO_A), ss(TRIO_C))

    def test_self(self):
        v = ss(CASE5_F)
        assert vectors_compatible(v, v)

    def test_single_bit_flip_detected(self):
        rng = random.Random(41)
        f = random_table(rng, 4)
        g = TruthTable(4, f.bits ^ 1)
        vf, vg = ss(f), ss(g)
        # one flipped minterm shifts every per-variable count by one
        assert not vectors_compatible(vf, vg)

    def test_np_invariance_of_canonical_multiset(self):
        rng = random.Random(43)
        for _ in range(25):
            n = rng.randint(1, 5)
            f = random_table(rng, n)
            t = random_transform(rng, n, allow_output=False)
            h = apply_np_transform(f, t)
            mf = sorted(v.canonical for v in ss(f).values)
            mh = sorted(v.canonical for v in ss(h).values)
            assert mf == mh


def test_ss_value_canonical():
    assert SSValue(3, 5, -1, -1, 0).canonical == (5, 3)
    assert SSValue(5, 3, -1, -1, 0).canonical == (5, 3)
