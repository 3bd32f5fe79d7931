import pytest

from xorland.gf2 import BitMatrix
from xorland.landscape import Instance


@pytest.fixture
def eq1_matrix() -> BitMatrix:
    """The 4x4 complement-of-identity matrix (k = 3)."""
    return BitMatrix.from_rows(
        [[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 0]], k_regular=3
    )


@pytest.fixture
def eq1_instance(eq1_matrix) -> Instance:
    return Instance(matrix=eq1_matrix, k=3)
