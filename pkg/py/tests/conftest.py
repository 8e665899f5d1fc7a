import sys
from pathlib import Path

import pytest

PY_DIR = Path(__file__).resolve().parents[1]
if str(PY_DIR) not in sys.path:
    sys.path.insert(0, str(PY_DIR))

from cf_core import Marker, SegmentedCF  # noqa: E402


@pytest.fixture
def aligned_4_7():
    """m_{4/7} (with its trailing 2 dropped) against m_{3/7}, split into segments and markers."""
    return SegmentedCF(
        ((2,), (2,), (0, 0), (2,), (0, 0), (2,)),
        (Marker.TWO, Marker.ONEONE, Marker.TWO, Marker.ONEONE, Marker.TWO),
    )
