import pytest

from bordcalc import tables
from bordcalc.golden import CHECKSUMS, GOLDEN, checksum
from bordcalc.tables import CacheFormatError, GroupDescriptor


def test_group_examples():
    assert tables.group("spinh", 20).as_tuple() == (20, 19, 2)
    assert tables.group("spin", 3).as_tuple() == (3, 0, 0)
    assert tables.group("spinc", 98).as_tuple() == (98, 7338, 12237)


def test_describe():
    assert tables.group("spinh", 20).describe("spinh") == "pi_20 MSpinh = Z^19 + (Z/2)^2"


def test_degree_zero():
    assert [g.as_tuple() for g in tables.table("spin", 0)] == [(0, 1, 0)]


def test_last_spinc_row():
    assert tables.table("spinc", 99)[-1].as_tuple() == (99, 0, 9090)


def test_invalid_inputs():
    with pytest.raises(ValueError):
        tables.group("spin", -1)
    with pytest.raises(ValueError):
        GroupDescriptor(0, -1, 0)


@pytest.mark.parametrize("theory", ["spin", "spinc", "spinh"])
def test_prefix_stability(theory):
    # a longer table reads the same low degrees off a larger truncation
    short = tables.table(theory, 99)
    long = tables.table(theory, 400)
    assert long[:100] == short


def test_golden_all_rows():
    rep = tables.verify_golden()
    assert rep.ok, rep.lines()
    assert rep.checked == 300


def test_golden_fault_injection():
    golden = {k: list(v) for k, v in GOLDEN.items()}
    n, r, t = golden["spinh"][37]
    golden["spinh"][37] = (n, r, t + 1)
    rep = tables.verify_golden(99, golden)
    assert rep.mismatches == [("spinh", 37, (r, t + 1), (r, t))]
    assert rep.lines()[0] == "299/300 golden rows match"


def test_golden_zero_range():
    rep = tables.verify_golden(0)
    assert rep.ok and rep.checked == 3


def test_golden_checksums():
    for name, rows in GOLDEN.items():
        assert len(rows) == 100
        assert checksum(rows) == CHECKSUMS[name]


def test_cache_round_trip(tmp_path):
    rows = tables.table("spinh", 150, tmp_path)
    path = tables.cache_path(tmp_path, "spinh", 150)
    raw = path.read_bytes()
    assert raw.startswith(b"#theory=spinh nmax=150 version=")
    assert tables.read_cache(path, "spinh", 150) == rows
    # second call reads the cache and leaves it untouched
    assert tables.table("spinh", 150, tmp_path) == rows
    assert path.read_bytes() == raw
    tables.write_cache(path, "spinh", 150, rows)
    assert path.read_bytes() == raw


def test_cache_bad_header(tmp_path):
    rows = tables.table("spin", 20)
    path = tmp_path / "x.tsv"
    tables.write_cache(path, "spin", 20, rows)
    with pytest.raises(CacheFormatError):
        tables.read_cache(path, "spin", 21)
    with pytest.raises(CacheFormatError):
        tables.read_cache(path, "spinc", 20)
    path.write_text(path.read_text().replace("\n1\t", "\n7\t", 1))
    with pytest.raises(CacheFormatError):
        tables.read_cache(path, "spin", 20)


def test_corrupt_cache_is_recomputed(tmp_path):
    path = tables.cache_path(tmp_path, "spin", 30)
    path.write_text("garbage\n")
    rows = tables.table("spin", 30, tmp_path)
    assert rows == tables.table("spin", 30)
    assert tables.read_cache(path, "spin", 30) == rows
