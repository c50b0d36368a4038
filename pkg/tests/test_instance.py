import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from momkp import Instance, InstanceFormatError, generate_zmkp, parse_instance, serialize_instance
from momkp.instance import read_instance, write_instance

TEXT = """c tiny
p momkp 3 1 2
w 10
i 5 1 4
i 2 7 3
i 6 6 5
"""


def test_parse_basic():
    inst = parse_instance(TEXT)
    assert (inst.n, inst.m, inst.p) == (3, 1, 2)
    assert inst.capacities.tolist() == [10]
    assert inst.profits.tolist() == [[5, 1], [2, 7], [6, 6]]
    assert inst.weights.tolist() == [[4], [3], [5]]


def test_round_trip_canonical():
    inst = parse_instance(TEXT)
    canon = serialize_instance(inst)
    assert serialize_instance(parse_instance(canon)) == canon
    assert parse_instance(canon) == inst


def test_arrays_read_only():
    inst = parse_instance(TEXT)
    with pytest.raises(ValueError):
        inst.profits[0, 0] = 9


def test_n_must_be_positive():
    with pytest.raises(InstanceFormatError, match="n must be positive"):
        parse_instance("p momkp 0 2 2\nw 1 1\n")


def test_missing_item_lines():
    text = "p momkp 3 1 2\nw 10\ni 1 1 1\ni 2 2 2\n"
    with pytest.raises(InstanceFormatError, match="expected 3 item lines"):
        parse_instance(text)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("w 10\n", "capacity line before header"),
        ("p momkp 1 1 2\n", "missing capacity line"),
        ("p momkp 1 1 2\nw 10\ni 1 2\n", "item line needs 3"),
        ("p momkp 1 1 2\nw -1\ni 1 2 3\n", "negative coefficient"),
        ("p momkp 1 1 2\nw 10\ni 1 x 3\n", "non-integer"),
        ("p momkp 1 2 2\nw 10\ni 1 2 3 4\n", "expected 2 capacities"),
        ("q 1\n", "unknown line tag"),
        ("", "missing header"),
    ],
)
def test_format_errors(text, fragment):
    with pytest.raises(InstanceFormatError, match=fragment):
        parse_instance(text)


def test_error_carries_line_number():
    with pytest.raises(InstanceFormatError) as info:
        parse_instance("p momkp 1 1 2\nw 10\ni 1 2\n")
    assert info.value.line == 3


def test_oversized_item_warns():
    with pytest.warns(UserWarning, match="exceed a capacity"):
        inst = parse_instance("p momkp 2 1 2\nw 5\ni 1 1 9\ni 1 1 2\n")
    assert inst.oversized_items().tolist() == [0]


def test_file_round_trip(tmp_path):
    inst = generate_zmkp(12, 3, 4)
    path = tmp_path / "x.txt"
    write_instance(inst, path, comment="hello")
    assert read_instance(path) == inst
    assert path.read_text().startswith("c hello\np momkp 12 3 3\n")


@settings(max_examples=50, deadline=None)
@given(n=st.integers(1, 40), p=st.sampled_from([2, 3, 4]), seed=st.integers(0, 2**63))
def test_generated_round_trip(n, p, seed):
    inst = generate_zmkp(n, p, seed)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert parse_instance(serialize_instance(inst)) == inst


def test_generator_bounds_and_capacities():
    for seed in range(20):
        inst = generate_zmkp(60, 3, seed)
        assert inst.m == inst.p == 3
        for arr in (inst.profits, inst.weights):
            assert arr.min() >= 10 and arr.max() <= 100
        total = inst.weights.sum(axis=0)
        assert ((2 * inst.capacities <= total) & (total <= 2 * inst.capacities + 1)).all()


def test_capacity_is_half_total():
    # two items, weights 10 and 30 in the constraint -> capacity 20
    inst = Instance(np.array([[1, 1], [1, 1]]), np.array([[10], [30]]), np.array([20]))
    assert int(inst.weights.sum() // 2) == int(inst.capacities[0])


def test_generator_deterministic_and_seed_sensitive():
    a = generate_zmkp(30, 2, 7)
    assert a == generate_zmkp(30, 2, 7)
    assert serialize_instance(a) == serialize_instance(generate_zmkp(30, 2, 7))
    assert a != generate_zmkp(30, 2, 8)


@pytest.mark.parametrize("p", [1, 5])
def test_generator_rejects_arity(p):
    with pytest.raises(ValueError, match="unsupported arity"):
        generate_zmkp(10, p, 0)


def test_generator_uniformity_chi_square():
    values = np.concatenate([generate_zmkp(500, 4, s).profits.ravel() for s in range(5)])
    counts = np.bincount(values - 10, minlength=91)
    expected = len(values) / 91
    chi2 = ((counts - expected) ** 2 / expected).sum()
    # 90 degrees of freedom; the 0.999 quantile is about 137
    assert chi2 < 137
