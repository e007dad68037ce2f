from fractions import Fraction

import pytest

from tmpsolve.datasets import LINE_PLUS_THREE_THRESHOLD, line_plus_three_family, nine_point_family


@pytest.fixture
def nine_point_43():
    """Nine-point data at beta_40 = 20, beta_30 = 4/5."""
    return nine_point_family(Fraction(4, 5), 20)


@pytest.fixture
def nine_point_zero():
    return nine_point_family(0, 20)


@pytest.fixture
def line_plus_three():
    return line_plus_three_family(LINE_PLUS_THREE_THRESHOLD + 1)
