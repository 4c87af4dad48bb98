import math

import pytest

from tailasym.extreal import format_value, log_ratio, parse_value


def test_positive_ratio():
    assert log_ratio(0.7, 0.2) == math.log(0.7) - math.log(0.2)


def test_zero_conventions():
    assert log_ratio(0.0, 0.3) == -math.inf
    assert log_ratio(0.3, 0.0) == math.inf
    assert log_ratio(0.0, 0.0) == 0.0


def test_swap_negates_exactly():
    for num, den in [(0.7, 0.2), (1e-9, 0.4), (0.123456, 0.654321)]:
        assert log_ratio(num, den) == -log_ratio(den, num)


def test_tiny_negative_noise_clamped():
    assert log_ratio(-1e-13, 0.5) == -math.inf
    assert log_ratio(0.5, -1e-13) == math.inf


def test_real_negative_rejected():
    with pytest.raises(ValueError):
        log_ratio(-0.1, 0.5)
    with pytest.raises(ValueError):
        log_ratio(0.5, -0.1)


@pytest.mark.parametrize("x", [0.0, -1.5, 2.25, math.inf, -math.inf, 1e-300])
def test_format_parse_round_trip(x):
    assert parse_value(format_value(x)) == x


def test_inf_tokens():
    assert format_value(math.inf) == "+inf"
    assert format_value(-math.inf) == "-inf"
    assert parse_value("inf") == math.inf
    assert math.isnan(parse_value("nan"))
