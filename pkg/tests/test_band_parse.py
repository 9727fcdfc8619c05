import numpy as np
import pytest

from mxv.errors import BandCountMismatch, TruncatedBand
from mxv.parsers import parse_band

SIMPLE = b"""1 0 -0.45
1.0 0.0 0.0 0.0 1.0 0.0 0.0 0.0 1.0
1
2 0.0 0.0 0.0 0.5 0.0 0.0 g X
1 0.0 0.0 0.0
-0.5
1 0.5 0.0 0.0
-0.4
"""


def test_single_band_two_kpoints():
    b = parse_band(SIMPLE)
    assert b.n_bands == 1
    assert b.spin_channels == 1
    assert b.chem_potential == -0.45
    assert len(b.segments) == 1
    seg = b.segments[0]
    assert seg.n_points == 2
    assert seg.label_start == "g" and seg.label_end == "X"
    assert np.allclose(seg.eigenvalues[0, :, 0], [-0.5, -0.4])
    assert np.allclose(seg.kpoints[1], [0.5, 0, 0])


def test_spin_switch_one_reads_two_channels():
    data = b"""1 1 0.0
1 0 0 0 1 0 0 0 1
1
1 0 0 0 0 0 0 G G
1 0.0 0.0 0.0
-0.5
1 0.0 0.0 0.0
-0.3
"""
    b = parse_band(data)
    assert b.spin_channels == 2
    assert b.segments[0].eigenvalues[0, 0, 0] == -0.5
    assert b.segments[0].eigenvalues[1, 0, 0] == -0.3


def test_wrapped_eigenvalue_lines_equal_unwrapped():
    # oracle: the same 8 eigenvalues serialized two ways
    eig = [-0.8, -0.7, -0.6, -0.5, -0.4, -0.3, -0.2, -0.1]
    head = b"8 0 0.0\n1 0 0 0 1 0 0 0 1\n1\n1 0 0 0 0 0 0 G G\n"
    one = head + b"8 0.0 0.0 0.0\n" + " ".join(map(str, eig)).encode() + b"\n"
    wrapped = head + b"8 0.0 0.0 0.0\n" + b"\n".join(
        " ".join(map(str, eig[i:i + 3])).encode() for i in range(0, 8, 3)) + b"\n"
    b1 = parse_band(one)
    b2 = parse_band(wrapped)
    assert np.array_equal(b1.segments[0].eigenvalues, b2.segments[0].eigenvalues)


def test_quoted_labels_are_stripped():
    data = SIMPLE.replace(b"g X", b"'g' \"X\"")
    b = parse_band(data)
    assert b.segments[0].label_start == "g"
    assert b.segments[0].label_end == "X"


def test_band_count_mismatch():
    data = SIMPLE.replace(b"1 0.0 0.0 0.0\n-0.5", b"2 0.0 0.0 0.0\n-0.5")
    with pytest.raises(BandCountMismatch):
        parse_band(data)


def test_truncated_band():
    with pytest.raises(TruncatedBand):
        parse_band(SIMPLE[:80])
    with pytest.raises(TruncatedBand):
        parse_band(b"1 3 0.0\n1 0 0 0 1 0 0 0 1\n0\n")  # spin switch 3 unsupported


def test_reciprocal_matrix_shape():
    b = parse_band(SIMPLE)
    assert b.reciprocal.shape == (3, 3)
    assert np.allclose(b.reciprocal, np.eye(3))
