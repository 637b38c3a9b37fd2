import json

import pytest

from legladder.modes import CoeffVector, ModeIndex, Truncation, is_admissible, lattice


@pytest.mark.parametrize("l,m,ok", [
    (0, 0, True),
    (2, 3, False),
    (3, -3, True),
    (-1, 0, False),
    (5, 5, True),
    (5, -6, False),
])
def test_is_admissible(l, m, ok):
    assert is_admissible(l, m) is ok


def test_mode_index_rejects_inadmissible():
    with pytest.raises(ValueError):
        ModeIndex(2, 3)
    with pytest.raises(ValueError):
        ModeIndex(-1, 0)


def test_mode_index_ordering():
    assert ModeIndex(1, -1) < ModeIndex(1, 0) < ModeIndex(1, 1) < ModeIndex(2, -2)


def test_lattice_smallest_windows():
    assert lattice(Truncation(0)) == [ModeIndex(0, 0)]
    assert lattice(Truncation(1)) == [ModeIndex(0, 0), ModeIndex(1, -1),
                                      ModeIndex(1, 0), ModeIndex(1, 1)]


def test_lattice_count_is_square():
    # size (l_max + 1)^2 since sum of (2l + 1) telescopes
    assert len(lattice(Truncation(3))) == 16
    for l_max in range(0, 51, 10):
        modes = lattice(Truncation(l_max))
        assert len(modes) == (l_max + 1) ** 2
        assert all(is_admissible(mode.l, mode.m) for mode in modes)


def test_truncation_membership_and_validation():
    trunc = Truncation(2)
    assert ModeIndex(2, -2) in trunc
    assert ModeIndex(3, 0) not in trunc
    assert trunc.size == 9
    with pytest.raises(ValueError):
        Truncation(-1)


def test_coeff_vector_prunes_zeros():
    trunc = Truncation(2)
    v = CoeffVector({ModeIndex(0, 0): 1.0, ModeIndex(1, 1): 0.0}, trunc)
    assert ModeIndex(1, 1) not in v.entries
    assert v == CoeffVector({ModeIndex(0, 0): 1.0}, trunc)


def test_coeff_vector_rejects_out_of_window():
    with pytest.raises(ValueError):
        CoeffVector({ModeIndex(3, 0): 1.0}, Truncation(2))


def test_coeff_vector_arithmetic():
    trunc = Truncation(2)
    a = CoeffVector.unit(1, 0, trunc)
    b = CoeffVector.unit(2, 1, trunc)
    c = 2.0 * a + b
    assert c.get(ModeIndex(1, 0)) == 2.0
    assert c.get(ModeIndex(2, 1)) == 1.0
    assert (c - c).norm() == 0.0
    assert abs(c.norm() ** 2 - 5.0) < 1e-15
    assert a.dot(b) == 0.0
    assert a.dot(c) == 2.0


def test_coeff_vector_truncation_mismatch():
    with pytest.raises(ValueError):
        CoeffVector.unit(0, 0, Truncation(1)).dot(CoeffVector.unit(0, 0, Truncation(2)))


def test_coeff_vector_json_roundtrip_real(tmp_path):
    trunc = Truncation(3)
    v = CoeffVector({ModeIndex(3, -2): -0.25, ModeIndex(0, 0): 1.5}, trunc)
    path = tmp_path / "v.json"
    v.save(path)
    data = json.loads(path.read_text())
    assert data["l_max"] == 3
    # canonical ordering and no imaginary column for real vectors
    assert [row["l"] for row in data["entries"]] == [0, 3]
    assert all("im" not in row for row in data["entries"])
    assert CoeffVector.load(path) == v


def test_coeff_vector_json_roundtrip_complex(tmp_path):
    trunc = Truncation(2)
    v = CoeffVector({ModeIndex(1, 1): 1.0 + 2.0j}, trunc)
    path = tmp_path / "v.json"
    v.save(path)
    data = json.loads(path.read_text())
    assert data["entries"][0]["im"] == 2.0
    assert CoeffVector.load(path) == v


def test_byte_stable_serialization(tmp_path):
    trunc = Truncation(4)
    v = CoeffVector({ModeIndex(4, 0): 0.1, ModeIndex(2, -1): 3.0}, trunc)
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    v.save(p1)
    v.save(p2)
    assert p1.read_bytes() == p2.read_bytes()
