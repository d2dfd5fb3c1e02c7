import json
import random
from itertools import combinations

import pytest

from rktrace import gf2, sss


@pytest.fixture(scope="module")
def s21():
    return sss.build_scheme(2, 1, seed=11)


@pytest.fixture(scope="module")
def access21(s21):
    return sss.minimal_access_sets(s21)


def toy_scheme():
    # [5, 2] code with rows 11100, 00111
    return sss.scheme_from_generator([0b00111, 0b11100], 5)


def test_dimensions(s21):
    assert (s21.length, s21.dimension) == (24, 20)
    assert s21.participants == list(range(1, 24))
    for h in s21.dealer_matrix:
        assert all(gf2.dot(h, g) == 0 for g in s21.generator)


def test_dimensions_31():
    s = sss.build_scheme(3, 1)
    assert (s.length, s.dimension) == (112, 106)


def test_build_rejects_m1():
    with pytest.raises(ValueError):
        sss.build_scheme(1, 1)


def test_bad_secret_position():
    with pytest.raises(ValueError):
        sss.scheme_from_generator([0b11], 2, secret_position=2)


def test_dependent_generator_rejected():
    with pytest.raises(ValueError):
        sss.scheme_from_generator([0b11, 0b11], 2)


def test_deal_is_deterministic(s21):
    assert sss.deal(s21, 1) == sss.deal(s21, 1)
    assert sss.deal(s21, 0, seed=3) == sss.deal(s21, 0, seed=3)


def test_deal_rejects_non_bit(s21):
    with pytest.raises(ValueError):
        sss.deal(s21, 2)


@pytest.mark.parametrize("secret", [0, 1])
def test_full_coalition_recovers(s21, secret):
    shares = sss.deal(s21, secret, seed=5)
    assert sss.reconstruct(s21, s21.participants, shares) == secret


def test_access_structure_21(access21):
    assert len(access21.minimal_sets) == 8
    assert sorted({len(t) for t in access21.minimal_sets}) == [11, 15]
    assert access21.dictators == (15,)
    assert access21.to_json()["dictators"] == [15]


def test_minimal_sets_match_massey(s21, access21):
    # T is minimal iff some codeword has support T + {0}
    words = set(gf2.span(s21.generator))
    for t in access21.minimal_sets:
        assert sum(1 << j for j in (0,) + t) in words


@pytest.mark.parametrize("secret", [0, 1])
def test_minimal_sets_reconstruct_and_proper_subsets_fail(s21, access21, secret):
    for seed in range(3):
        shares = sss.deal(s21, secret, seed=seed)
        for t in access21.minimal_sets:
            assert sss.reconstruct(s21, t, shares) == secret
            for drop in t:
                assert sss.reconstruct(s21, [i for i in t if i != drop], shares) is None


def test_empty_and_dictatorless_coalitions(s21, access21):
    shares = sss.deal(s21, 1)
    assert sss.reconstruct(s21, [], shares) is None
    without = [i for i in s21.participants if i not in access21.dictators]
    assert sss.reconstruct(s21, without, shares) is None


def test_authorized_iff_contains_minimal_set(s21, access21):
    rng = random.Random(2)
    shares = sss.deal(s21, 1)
    minimal = [set(t) for t in access21.minimal_sets]
    for _ in range(300):
        t = set(rng.sample(s21.participants, rng.randint(0, 23)))
        expected = any(a <= t for a in minimal)
        assert (sss.reconstruct(s21, t, shares) is not None) == expected


def test_random_round_trips(s21, access21):
    rng = random.Random(99)
    for _ in range(100):
        secret = rng.randint(0, 1)
        shares = sss.deal(s21, secret, seed=rng.getrandbits(32))
        t = rng.choice(access21.minimal_sets)
        extra = rng.sample(s21.participants, 4)
        assert sss.reconstruct(s21, set(t) | set(extra), shares) == secret


def test_reconstruct_errors(s21):
    shares = sss.deal(s21, 0)
    with pytest.raises(ValueError):
        sss.reconstruct(s21, [0], shares)
    with pytest.raises(ValueError):
        sss.reconstruct(s21, [24], shares)
    partial = {i: b for i, b in shares.items() if i != 3}
    with pytest.raises(KeyError):
        sss.reconstruct(s21, [3], partial)


def test_access_structure_larger():
    acc = sss.minimal_access_sets(sss.build_scheme(3, 1))
    assert (len(acc.minimal_sets), acc.dictators) == (32, (63,))


# perfectness -------------------------------------------------------------


def brute_counts(scheme, coalition, shares):
    counts = [0, 0]
    cols = scheme.columns
    for u in range(1 << scheme.dimension):
        if all(gf2.dot(u, cols[i]) == shares[i] for i in coalition):
            counts[gf2.dot(u, cols[scheme.secret_position])] += 1
    return tuple(counts)


def test_counts_match_brute_force_on_toy():
    s = toy_scheme()
    assert s.dimension == 3
    for secret in (0, 1):
        for seed in range(4):
            shares = sss.deal(s, secret, seed=seed)
            for r in range(len(s.participants) + 1):
                for t in combinations(s.participants, r):
                    assert sss.consistent_message_counts(s, t, shares) == brute_counts(s, t, shares)


def test_toy_access_structure():
    acc = sss.minimal_access_sets(toy_scheme())
    # codewords through position 0: 00111 and 11011
    assert acc.minimal_sets == ((1, 2), (1, 3, 4))
    assert acc.dictators == (1,)


def test_unauthorized_counts_split_evenly(s21, access21):
    rng = random.Random(4)
    minimal = [set(t) for t in access21.minimal_sets]
    probed = 0
    while probed < 40:
        t = set(rng.sample(s21.participants, rng.randint(0, 22)))
        if any(a <= t for a in minimal):
            continue
        shares = sss.deal(s21, rng.randint(0, 1), seed=probed)
        c0, c1 = sss.consistent_message_counts(s21, t, shares)
        assert c0 == c1 > 0
        assert sss.perfectness_probe(s21, t, trials=4)
        probed += 1


def test_authorized_counts_are_one_sided(s21, access21):
    shares = sss.deal(s21, 1)
    c0, c1 = sss.consistent_message_counts(s21, access21.minimal_sets[0], shares)
    assert c0 == 0 and c1 > 0


def test_probe_rejects_authorized(s21, access21):
    with pytest.raises(ValueError):
        sss.perfectness_probe(s21, access21.minimal_sets[0])


# share files -------------------------------------------------------------


def test_share_file_round_trip(s21):
    shares = sss.deal(s21, 1, seed=8)
    doc = sss.share_file(s21, 8, shares)
    assert doc["rng"] == sss.RNG_ID
    meta, loaded = sss.load_share_file(json.dumps(doc))
    assert loaded == shares
    assert meta == {"m": 2, "k": 1, "seed": 8, "secret_position": 0}


@pytest.mark.parametrize(
    "text",
    [
        '{"m": 2, "k": 1, "seed": 0, "secret_position": 0}',
        '{"m": 2, "k": 1, "seed": 0, "secret_position": 0, "shares": [{"participant": 1}]}',
        '{"m": 2, "k": 1, "seed": 0, "secret_position": 0, "shares": [{"participant": 1, "bit": 2}]}',
        '{"shares": []}',
    ],
)
def test_malformed_share_files(text):
    with pytest.raises(ValueError):
        sss.load_share_file(text)
