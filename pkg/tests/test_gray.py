import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rktrace.gray import (
    BinaryWord,
    gray_element,
    gray_map,
    gray_map_ints,
    gray_map_recursive,
    hamming_via_character_sum,
    lee_table,
    lee_weight,
    lee_weight_ints,
)
from rktrace.ring import make_ring

R1 = make_ring(1, 1)
R2 = make_ring(1, 2)


def test_phi1_examples():
    assert gray_map([R1.zero]).to_list() == [0, 0]
    assert gray_map([R1.monomial(1)]).to_list() == [1, 1]
    assert gray_map([R1.one]).to_list() == [0, 1]


def test_phi2_top_monomial():
    assert gray_map([R2.monomial(0b11)]).to_list() == [1, 1, 1, 1]


@pytest.mark.parametrize("k", range(1, 5))
def test_lee_weight_examples(k):
    spec = make_ring(1, k)
    assert lee_weight([spec.zero]) == 0
    assert lee_weight([spec.monomial(spec.size - 1)]) == 1 << k
    assert lee_weight([spec.one]) == 1


def test_phi0_identity():
    assert gray_element(0, 0) == 0 and gray_element(1, 0) == 1


@pytest.mark.parametrize("k", range(0, 4))
def test_single_coordinate_linear_and_injective(k):
    size = 1 << (1 << k)
    images = [gray_element(c, k) for c in range(size)]
    assert len(set(images)) == size
    for a in range(size):
        for b in range(size):
            assert gray_element(a ^ b, k) == images[a] ^ images[b]


@pytest.mark.parametrize("k", range(0, 5))
def test_table_matches_vector_recursion(k):
    rng = random.Random(k)
    top = 1 << (1 << k)
    for n in (1, 2, 5, 12):
        values = [rng.randrange(top) for _ in range(n)]
        assert gray_map_ints(values, k) == gray_map_recursive(values, k)


@pytest.mark.parametrize("k", range(1, 4))
def test_vector_layout(k):
    # bit j*n + i of the image is bit j of the image of coordinate i
    values = [3, 0, 1, (1 << (1 << k)) - 1]
    word = gray_map_ints(values, k)
    n = len(values)
    assert word.length == n << k
    for i, v in enumerate(values):
        g = gray_element(v, k)
        for j in range(1 << k):
            assert word[j * n + i] == (g >> j) & 1


@pytest.mark.parametrize("k", [1, 2, 3])
def test_distance_preserving(k):
    rng = random.Random(10 + k)
    top = 1 << (1 << k)
    for _ in range(300):
        n = rng.randint(1, 20)
        x = [rng.randrange(top) for _ in range(n)]
        y = [rng.randrange(top) for _ in range(n)]
        diff = [a ^ b for a, b in zip(x, y)]
        dh = (gray_map_ints(x, k) ^ gray_map_ints(y, k)).weight
        assert lee_weight_ints(diff, k) == dh
        assert gray_map_ints(diff, k) == gray_map_ints(x, k) ^ gray_map_ints(y, k)


def test_rejects_non_binary_coefficients():
    big = make_ring(2, 1)
    with pytest.raises(ValueError):
        gray_map([big.from_coeffs([2, 0])])
    with pytest.raises(ValueError):
        gray_map_ints([4], 1)


def test_gray_map_accepts_binary_elements_of_larger_ring():
    big = make_ring(2, 1)
    assert gray_map([big.from_coeffs([1, 1])]) == gray_map([R1.from_coeffs([1, 1])])


def test_hamming_via_character_sum_examples():
    assert hamming_via_character_sum(BinaryWord.from_list([0, 0, 0, 0])) == 0
    assert hamming_via_character_sum(BinaryWord.from_list([1, 0, 1])) == 2


def test_hamming_via_character_sum_random():
    rng = random.Random(2024)
    for _ in range(10_000):
        n = rng.randint(0, 64)
        w = BinaryWord(rng.getrandbits(n) if n else 0, n)
        assert hamming_via_character_sum(w) == bin(w.bits).count("1")


@settings(max_examples=200)
@given(st.lists(st.integers(0, 1), max_size=70))
def test_binaryword_roundtrips(bits):
    w = BinaryWord.from_list(bits)
    assert w.to_list() == bits
    assert BinaryWord.from_string(w.to_string()) == w
    assert BinaryWord.from_hex(w.to_hex(), len(bits)) == w


def test_hex_layout_little_endian():
    w = BinaryWord.from_string("10000100")
    # bit 0 -> digit 0 value 1; bit 5 -> digit 1 value 2
    assert w.to_hex() == "12"


def test_lee_table_sizes():
    assert lee_table(1) == (0, 1, 2, 1)
    assert len(lee_table(4)) == 1 << 16
