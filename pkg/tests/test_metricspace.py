import numpy as np
import pytest

from src.errors import ConfigError, ResolutionError
from src.metricspace import build_alphabet
from src.metricspace.alphabet import (
    cantor,
    dense,
    discrete,
    dump_alphabet,
    interval_grid,
    load_alphabet,
    product_alphabet,
    single_point,
    verify_metric,
)
from src.metricspace.covers import (
    ball_membership,
    box_dimension_estimate,
    build_cover,
    cover_count,
    greedy_net,
)

NOT_A_METRIC = [[0, 1, 5], [1, 0, 1], [5, 1, 0]]


def test_interval_grid_geometry():
    grid = interval_grid(points=11)
    assert grid.size == 11
    assert grid.diam == pytest.approx(1.0)
    assert grid.resolution == pytest.approx(0.1)
    assert grid.distance(0, 10) == pytest.approx(1.0)


def test_cantor_endpoints():
    space = cantor(depth=2)
    assert space.size == 4
    np.testing.assert_allclose(np.sort(space.coords[:, 0]), [0, 2 / 9, 6 / 9, 8 / 9])
    assert space.resolution == pytest.approx(1 / 9)


def test_discrete_and_single_point():
    space = discrete(3)
    assert space.labels == ("a", "b", "c")
    assert space.diam == 1.0
    assert space.symbol("c") == 2
    assert single_point().diam == 0.0


def test_unknown_symbol_label():
    with pytest.raises(ConfigError, match="Unknown symbol label"):
        discrete(2).symbol("z")


def test_product_alphabet_sum_metric():
    first, second = discrete(2), discrete(3, tail_symbol=1)
    product = product_alphabet(first, second)
    assert product.size == 6
    assert product.tail_symbol == 1
    assert product.labels[4] == "b|b"
    # (a, a) against (b, b) differs in both factors
    assert product.distance(0, 4) == pytest.approx(2.0)
    assert product.distance(0, 3) == pytest.approx(1.0)


def test_build_alphabet_registry():
    assert build_alphabet("discrete", size=4).size == 4
    product = build_alphabet(
        "product",
        factors=[
            {"kind": "discrete", "params": {"size": 2}},
            {"kind": "interval_grid", "params": {"points": 3}},
        ],
    )
    assert product.size == 6
    assert product.coords is None


def test_build_alphabet_unknown_kind():
    with pytest.raises(ConfigError, match="Unsupported alphabet generator"):
        build_alphabet("hilbert_cube")


def test_build_alphabet_bad_params():
    with pytest.raises(ConfigError, match="Bad parameters"):
        build_alphabet("cantor", points=3)


def test_product_needs_two_factors():
    with pytest.raises(ConfigError, match="two factors"):
        build_alphabet("product", factors=[{"kind": "discrete"}])


def test_verify_metric_passes_generators():
    for space in (interval_grid(points=9), cantor(depth=3), discrete(4)):
        report = verify_metric(space)
        assert report.passed
        assert report.exhaustive


def test_verify_metric_lists_triangle_violation():
    report = verify_metric(dense(NOT_A_METRIC))
    assert not report.passed
    triangles = [v for v in report.violations if v.kind == "triangle"]
    assert triangles
    assert max(v.excess for v in triangles) == pytest.approx(3.0)


def test_verify_metric_asymmetry_and_diagonal():
    report = verify_metric(dense([[0.5, 1.0], [2.0, 0.0]]))
    kinds = {v.kind for v in report.violations}
    assert {"diagonal", "asymmetry"} <= kinds


def test_dense_round_trip():
    space = dense([[0, 2], [2, 0]], labels=["p", "q"], tail_symbol=1)
    loaded = load_alphabet(dump_alphabet(space))
    assert loaded.labels == ("p", "q")
    assert loaded.tail_symbol == 1
    assert loaded.distance(0, 1) == 2.0


def test_ball_membership_keeps_boundary():
    grid = interval_grid(points=5)
    membership = ball_membership(grid, 0.25)
    assert sorted(membership[2].indices.tolist()) == [1, 2, 3]


def test_cover_count_greedy_and_exact():
    greedy, exact = cover_count(interval_grid(points=11), 0.1)
    # each closed ball holds three grid points
    assert exact == 4
    assert greedy >= exact


def test_greedy_net_is_separated():
    grid = interval_grid(points=101)
    net = greedy_net(grid, 0.1)
    distances = grid.distance_matrix[np.ix_(net, net)]
    off_diagonal = distances[~np.eye(len(net), dtype=bool)]
    assert off_diagonal.min() > 0.1


def test_box_dimension_of_interval():
    report = box_dimension_estimate([interval_grid(points=1025)], [0.1, 0.05, 0.025])
    assert report.fitted_slope == pytest.approx(1.0, abs=0.15)
    assert len(report.rows) == 3
    assert all(row.exact_count is None for row in report.rows)


def test_box_dimension_of_cantor_set():
    eps = [3.0**-k for k in range(2, 7)]
    report = box_dimension_estimate([cantor(depth=6), cantor(depth=8)], eps)
    assert report.resolution == pytest.approx(3.0**-8)
    assert report.fitted_slope == pytest.approx(np.log(2) / np.log(3), abs=0.05)


def test_box_dimension_resolution_guard():
    with pytest.raises(ResolutionError, match="not below"):
        box_dimension_estimate([interval_grid(points=11)], [0.1, 0.05])


def test_box_dimension_rejects_increasing_grid():
    with pytest.raises(ConfigError, match="strictly decreasing"):
        box_dimension_estimate([interval_grid(points=101)], [0.05, 0.1])


def test_build_cover_bounds():
    cover = build_cover(interval_grid(points=101), 0.2)
    assert cover.diam_bound <= 0.2 + 1e-9
    assert cover.lebesgue_bound >= 0.05
    assert all(element.radius == pytest.approx(0.1) for element in cover.elements)
    assert sum(element.size for element in cover.elements) >= 101


def test_build_cover_rejects_radius_above_diameter():
    with pytest.raises(ConfigError, match="cover radius"):
        build_cover(interval_grid(points=11), 1.5)
