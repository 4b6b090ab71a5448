from fractions import Fraction

import pytest

import rohull

ZERO = [[0, 0], [0, 0]]
E11 = [[1, 0], [0, 0]]
E12 = [[0, 1], [0, 0]]
I2 = [[1, 0], [0, 1]]


def test_commands_listed():
    assert set(rohull.commands()) == {
        "staircase", "tri-spiral", "sym-spiral", "five-point",
        "t4-detect", "pc-hull", "hausdorff", "usc-probe",
    }


def test_five_point_coefficients():
    report = rohull.run("five-point", epsilon=Fraction(1, 2))
    assert report["pass"]
    assert rohull.to_fraction(report["mu"]) == [Fraction(16, 3), Fraction(7, 3), Fraction(41, 6), Fraction(65, 24)]
    assert Fraction(report["gap"]["squared"]) == Fraction(9, 169)


def test_staircase_chain_reaches_corner():
    report = rohull.run("staircase", N=4)
    assert report["pass"]
    assert report["final_point"] == ["0", "1"]


def test_t4_detect_with_inline_input():
    quad = [[[0, 0], [0, 0]], [[1, 0], [0, 0]], [[2, 0], [0, 0]], [[3, 0], [0, 0]]]
    report = rohull.run("t4-detect", input=quad)
    assert report["found"] == 0
    assert len(report["failures"]) == 24


def test_rank_one_and_lamination():
    assert rohull.rank_one_connected(ZERO, E11)
    assert not rohull.rank_one_connected(ZERO, I2)
    k = [ZERO, E11, E12]
    assert rohull.l2_contains(k, [[Fraction(1, 3), Fraction(1, 3)], [0, 0]])
    assert not rohull.l2_contains(k, [[Fraction(2, 3), Fraction(2, 3)], [0, 0]])
    assert not rohull.l2_contains([ZERO, I2], [[Fraction(1, 2), 0], [0, Fraction(1, 2)]])


def test_pc_hull_matches_l2_on_triangle():
    k = [ZERO, E11, E12]
    hull = rohull.pc_hull(k)
    assert len(hull["planes"]) == 1
    for x in ([["1/4", "1/4"], [0, 0]], [["3/4", "1/2"], [0, 0]], [[0, 0], ["1/2", 0]]):
        assert rohull.pc_contains(k, x) == rohull.l2_contains(k, x)


def test_caratheodory_centroid():
    k = [ZERO, E11, E12]
    out = rohull.caratheodory(k, [["1/3", "1/3"], [0, 0]])
    assert rohull.to_fraction(out["weights"]) == [Fraction(1, 3)] * 3
    assert rohull.caratheodory(k, [[1, 1], [0, 0]]) is None


def test_float_mode():
    assert rohull.l2_contains([ZERO, E11], [[0.5, 0.0], [0.0, 0.0]], mode="float")
    report = rohull.run("sym-spiral", xi3=0.001)
    assert report["pass"]


def test_errors_are_raised():
    with pytest.raises(rohull.UsageError):
        rohull.run("no-such-command")
    with pytest.raises(rohull.UsageError):
        rohull.run("sym-spiral", mode="exact")
    with pytest.raises(rohull.RoHullError):
        rohull.pc_hull([E11, [[0, 0], [0, 1]]])
