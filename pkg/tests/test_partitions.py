import pytest

from bordcalc.partitions import ORACLE_MAX, build_partition_table, partition_oracle


def test_empty_table():
    t = build_partition_table(0)
    assert t.p_values == (1,)
    assert t.p1_values == (1,)


def test_small_values():
    assert build_partition_table(10).p_values[10] == 42
    assert build_partition_table(24).p_values[24] == 1575


@pytest.mark.parametrize("n, expected", [(0, 1), (5, 7), (10, 42)])
def test_oracle_values(n, expected):
    assert partition_oracle(n) == expected


def test_oracle_rejects_large():
    with pytest.raises(ValueError):
        partition_oracle(ORACLE_MAX + 1)
    with pytest.raises(ValueError):
        partition_oracle(-1)


def test_recurrence_matches_enumeration():
    table = build_partition_table(ORACLE_MAX)
    for n in range(ORACLE_MAX + 1):
        assert table.p_values[n] == partition_oracle(n), n


def test_invariants():
    t = build_partition_table(500)
    assert t.p1_values[1] == 0
    for n in range(1, 501):
        assert t.p1_values[n] == t.p_values[n] - t.p_values[n - 1] >= 0
        assert t.p_values[n] >= t.p_values[n - 1]


def test_smaller_tables_are_prefixes():
    big = build_partition_table(300)
    small = build_partition_table(40)
    assert big.p_values[:41] == small.p_values
    assert small.max_n == 40


def test_prefix_sums():
    t = build_partition_table(5)
    assert t.prefix_sums() == (1, 2, 4, 7, 12, 19)


def test_large_value_is_exact():
    # p(1000), a 32-digit number
    assert build_partition_table(1000).p(1000) == 24061467864032622473692149727991


def test_negative_rejected():
    with pytest.raises(ValueError):
        build_partition_table(-1)
