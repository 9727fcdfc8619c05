import pytest

from helpers import diamond_dat_bytes, diamond_xyz_bytes, fd3m_cif_text
from mxv.errors import UnknownFormat
from mxv.parsers import detect_format, parse_any

XYZ_SINGLE = b"3\nwater\nO 0 0 0\nH 0 0.76 0.59\nH 0 -0.76 0.59\n"
XYZ_MULTI = XYZ_SINGLE + b"3\nwater again\nO 0 0 0\nH 0 0.76 0.59\nH 0 -0.76 0.6\n"
CUBE_MIN = (b"comment 1\ncomment 2\n"
            b"1 0.0 0.0 0.0\n2 1.0 0.0 0.0\n2 0.0 1.0 0.0\n2 0.0 0.0 1.0\n"
            b"1 1.0 0.0 0.0 0.0\n"
            b"1.0 1.0 1.0 1.0 1.0 1.0 1.0 1.0\n")
BAND_MIN = (b"1 0 -0.5\n1 0 0 0 1 0 0 0 1\n1\n"
            b"2 0 0 0 0.5 0 0 G X\n"
            b"1 0.0 0.0 0.0\n-0.5\n1 0.5 0.0 0.0\n-0.4\n")


def test_extension_matrix():
    # one fixture per supported viewer/file-type pairing
    cases = [
        ("si.xyz", XYZ_SINGLE, "xyz"),
        ("si.xyz", XYZ_MULTI, "xyz_multi"),
        ("si.cif", fd3m_cif_text().encode(), "cif"),
        ("si.dat", diamond_dat_bytes(), "openmx_dat"),
        ("run.md", XYZ_MULTI, "openmx_md"),
        ("rho.cube", CUBE_MIN, "cube"),
        ("si.Band", BAND_MIN, "band"),
    ]
    for name, head, kind in cases:
        d = detect_format(name, head[:4096])
        assert d.kind == kind, name
        assert d.confidence == "by_extension", name


def test_md_extension_wins_over_xyz_like_content():
    # multi-frame xyz layout under .md maps to the trajectory format
    d = detect_format("run.md", XYZ_MULTI)
    assert d.kind == "openmx_md"


def test_content_detection_without_extension():
    assert detect_format("geom.txt", XYZ_SINGLE).kind == "xyz"
    assert detect_format("geom.txt", XYZ_SINGLE).confidence == "by_content"
    assert detect_format("x", XYZ_MULTI).kind == "xyz_multi"
    assert detect_format("x", fd3m_cif_text().encode()).kind == "cif"
    assert detect_format("x", diamond_dat_bytes()).kind == "openmx_dat"
    assert detect_format("x", CUBE_MIN).kind == "cube"
    assert detect_format("x", BAND_MIN).kind == "band"


def test_extension_with_inconsistent_content_falls_back():
    d = detect_format("si.cube", XYZ_SINGLE)
    assert d.kind == "xyz"
    assert d.confidence == "by_content"


def test_unknown_format_raises():
    with pytest.raises(UnknownFormat):
        detect_format("mystery.bin", b"\x00\x01\x02 nothing structured here")


def test_detect_stable_under_whitespace_noise():
    # content-preserving whitespace changes must not flip the detection
    for name, data in [("a.xyz", XYZ_SINGLE), ("a.dat", diamond_dat_bytes()),
                       ("a.cube", CUBE_MIN), ("a.Band", BAND_MIN)]:
        base = detect_format(name, data).kind
        noisy = data.replace(b" ", b"  ").replace(b"\n", b"\r\n")
        assert detect_format(name, noisy).kind == base, name


def test_parse_follows_detection_for_every_fixture():
    cases = [
        ("si.xyz", XYZ_SINGLE), ("si.xyz", XYZ_MULTI),
        ("si.cif", fd3m_cif_text().encode()), ("si.dat", diamond_dat_bytes()),
        ("run.md", XYZ_MULTI), ("rho.cube", CUBE_MIN), ("si.Band", BAND_MIN),
        ("si.xyz", diamond_xyz_bytes()),
    ]
    for name, data in cases:
        detected, payload = parse_any(name, data)
        assert payload is not None, (name, detected)
