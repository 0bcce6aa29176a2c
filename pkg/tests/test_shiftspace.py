import numpy as np
import pytest

from src.errors import ConfigError
from src.metricspace.alphabet import discrete
from src.shiftspace import (
    PointBatch,
    ShiftSystem,
    SymbolicPoint,
    bowen_distances,
    bowen_metric,
    bowen_reach,
    constant_observable,
    dump_points,
    load_points,
    pairwise_bowen,
    product_metric,
    product_system,
    shift_apply,
    windowed_observable,
)
from src.shiftspace.points import as_batch
from src.shiftspace.system import pair_point, weighted_sums


def test_points_are_stored_canonically():
    padded = SymbolicPoint.from_window(5, [0, 0, 1, 0], tail=0)
    bare = SymbolicPoint.from_window(7, [1], tail=0)
    assert padded == bare
    assert padded.lo == 0
    assert padded.hi == 7
    assert padded.at(7) == 1
    assert padded.at(-100) == 0


def test_shift_apply_moves_coordinates():
    x = SymbolicPoint.from_window(0, [1, 0, 1, 1], tail=0)
    shifted = shift_apply(x, 2)
    assert [shifted.at(n) for n in range(-2, 2)] == [1, 0, 1, 1]
    assert shift_apply(shifted, -2) == x


def test_point_lines_round_trip():
    points = [SymbolicPoint.from_window(-2, [1, 1, 0], tail=0), SymbolicPoint.constant(1)]
    text = dump_points(points)
    assert text.endswith("\n")
    assert load_points(text) == points


def test_malformed_point_line():
    with pytest.raises(ConfigError, match="Malformed point line"):
        SymbolicPoint.from_line("0 1 : 1 0")


def test_batch_alignment_pads_with_tail():
    batch = PointBatch.from_points(
        [SymbolicPoint.from_window(0, [1], 0), SymbolicPoint.from_window(2, [1], 0)]
    )
    np.testing.assert_array_equal(batch.aligned(-1, 3), [[0, 1, 0, 0, 0], [0, 0, 0, 1, 0]])
    assert batch.point(1) == SymbolicPoint.from_window(2, [1], 0)


def test_batch_needs_one_tail():
    with pytest.raises(ConfigError, match="share one tail"):
        PointBatch.from_points([SymbolicPoint.constant(0), SymbolicPoint.constant(1)])


def test_weighted_sums_matches_direct_sum():
    diff = np.array([[1.0, 0.0, 0.5, 0.0, 2.0]])
    offsets = np.abs(np.arange(5)[:, None] - np.arange(5)[None, :])
    expected = (2.0 ** -offsets) @ diff[0]
    np.testing.assert_allclose(weighted_sums(diff)[0], expected)


def test_product_metric_single_disagreement(two_shift):
    a = two_shift.tail_point()
    at_zero = SymbolicPoint.from_window(0, [1], 0)
    at_three = SymbolicPoint.from_window(3, [1], 0)
    assert product_metric(two_shift, a, at_zero)[0] == pytest.approx(1.0)
    assert product_metric(two_shift, a, at_three)[0] == pytest.approx(0.125)


def test_bowen_metric_grows_with_n(two_shift):
    a = two_shift.tail_point()
    at_three = SymbolicPoint.from_window(3, [1], 0)
    assert bowen_metric(two_shift, a, at_three, 3)[0] == pytest.approx(0.5)
    assert bowen_metric(two_shift, a, at_three, 4)[0] == pytest.approx(1.0)


def test_distinct_tails_carry_truncation_error(two_shift):
    distance, error = product_metric(
        two_shift, SymbolicPoint.constant(0), SymbolicPoint.constant(1)
    )
    assert error > two_shift.slack
    assert abs(distance - 3.0) <= error


def test_bowen_distances_batch(two_shift, words):
    batch = words(3)
    distances, _ = bowen_distances(two_shift, batch.take([0]), batch, 3)
    assert distances[0] == 0.0
    assert (distances[1:] >= 1.0).all()


def test_pairwise_bowen_is_symmetric_for_any_worker_count(two_shift, words):
    batch = words(4)
    serial, _ = pairwise_bowen(two_shift, batch, 4, workers=1)
    threaded, _ = pairwise_bowen(two_shift, batch, 4, workers=3)
    np.testing.assert_array_equal(serial, threaded)
    np.testing.assert_array_equal(serial, serial.T)


def test_bowen_reach_certified_and_conservative(two_shift):
    center = as_batch(two_shift.tail_point())
    # differs at coordinate 2 only, so d_n is 1/4, 1/2 then 1
    target = as_batch(SymbolicPoint.from_window(2, [1], 0))
    assert bowen_reach(two_shift, center, target, 0.5, 5)[0, 0] == 1
    # the conservative test admits the boundary distance 1/2
    assert bowen_reach(two_shift, center, target, 0.5, 5, certified=False)[0, 0] == 2
    assert bowen_reach(two_shift, center, target, 0.6, 5)[0, 0] == 2


def test_orbit_length_must_be_positive(two_shift):
    with pytest.raises(ConfigError, match="orbit length"):
        bowen_metric(two_shift, two_shift.tail_point(), two_shift.tail_point(), 0)


def test_check_point_rejects_foreign_symbols(two_shift):
    with pytest.raises(ConfigError, match="outside"):
        two_shift.check_point(SymbolicPoint.from_window(0, [2], 0))


def test_product_system_pairs_coordinates():
    first, second = ShiftSystem(discrete(2)), ShiftSystem(discrete(3))
    product = product_system(first, second)
    x = SymbolicPoint.from_window(0, [1], 0)
    y = SymbolicPoint.from_window(1, [2], 0)
    paired = pair_point(3, x, y)
    assert paired.at(0) == 3
    assert paired.at(1) == 2
    # d' on the product is the sum of the factor distances
    tail = product.tail_point()
    expected = product_metric(first, first.tail_point(), x)[0] + product_metric(
        second, second.tail_point(), y
    )[0]
    assert product_metric(product, tail, paired)[0] == pytest.approx(expected)


def test_product_system_needs_shared_radius():
    with pytest.raises(ConfigError, match="shared truncation radius"):
        product_system(ShiftSystem(discrete(2), 8), ShiftSystem(discrete(2), 16))


def test_coordinate_valuation_average(two_shift, valuation):
    x = SymbolicPoint.from_window(0, [1, 0, 1, 0], 0)
    np.testing.assert_array_equal(valuation.orbit_values(x, 4), [[1, 0, 1, 0]])
    assert valuation(x) == 1.0
    assert valuation.modulus(0.5) == 0.0
    assert valuation.modulus(1.5) == 1.0


def test_windowed_observable(two_shift):
    phi = windowed_observable(two_shift.alphabet, [0.5, 0.0, 0.5])
    x = SymbolicPoint.from_window(-1, [1, 0, 0], 0)
    assert phi(x) == pytest.approx(0.5)
    assert phi.value_range == (0.0, 1.0)
    # each of coordinates -1 and +1 may disagree at d' < 0.6
    assert phi.modulus(0.6) == pytest.approx(1.0)
    assert phi.modulus(0.4) == 0.0


def test_windowed_observable_needs_odd_window(two_shift):
    with pytest.raises(ConfigError, match="odd length"):
        windowed_observable(two_shift.alphabet, [1.0, 1.0])


def test_constant_observable():
    phi = constant_observable(2.5)
    assert phi.is_constant
    assert phi(SymbolicPoint.constant(1)) == 2.5
    assert phi.modulus_table([0.1, 0.2]) == {0.1: 0.0, 0.2: 0.0}
