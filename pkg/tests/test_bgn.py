import random

import pytest

from inferguard import bgn, pairing as pr

BACKENDS = ['mock64', 'real32']


@pytest.fixture(params=BACKENDS)
def keyed(request):
    return request.getfixturevalue(request.param)


def test_toy_real_params(toy_real):
    params, sk = toy_real
    assert sk.q1.bit_length() == 8 and sk.q2.bit_length() == 8
    assert params.n == sk.q1 * sk.q2
    grp = params.group
    P, Q = grp.gpow(3), grp.gpow(5)
    # e(aP, bQ) = e(P, Q)^(ab)
    assert grp.pair(grp.pow(P, 7), grp.pow(Q, 11)) == grp.pow2(grp.pair(P, Q), 77)
    assert grp.pair(grp.g, grp.g) != grp.one2


def test_mock_n():
    params, _ = bgn.mock_params(5, 7)
    assert params.n == 35


def test_gen_params_deterministic():
    a = bgn.gen_params(64, 30000, 42)
    b = bgn.gen_params(64, 30000, 42)
    assert a[0] == b[0] and a[1] == b[1]
    assert a[0].to_text() == b[0].to_text()


def test_generator_full_order(real32):
    params, sk = real32
    g = params.g
    p = params.descriptor['p']
    assert pr.on_curve(g, p)
    assert pr.ec_mul(g, params.n, p) is None
    assert pr.ec_mul(g, sk.q1, p) is not None and pr.ec_mul(g, sk.q2, p) is not None


def test_encrypt_zero_is_identity(keyed):
    params, sk = keyed
    c = bgn.encrypt1(params, 0, 0)
    assert c.element == params.group.one
    assert bgn.decrypt(sk, c) == 0


def test_round_trip_and_fixed_r(keyed):
    params, sk = keyed
    assert bgn.decrypt(sk, bgn.encrypt1(params, 7)) == 7
    assert bgn.encrypt1(params, 3, 5) == bgn.encrypt1(params, 3, 5)
    assert bgn.encrypt1(params, 3).element != bgn.encrypt1(params, 3).element


def test_additive(keyed):
    params, sk = keyed
    E = lambda x: bgn.encrypt1(params, x)
    assert bgn.decrypt(sk, bgn.add_l1(E(3), E(4))) == 7
    c = E(9)
    assert bgn.add_l1(c, bgn.encrypt1(params, 0, 0)) == c
    assert bgn.decrypt(sk, bgn.add_l1(E(params.n - 1), E(2))) == 1


def test_scalar(keyed):
    params, sk = keyed
    c = bgn.encrypt1(params, 5, 123)
    assert bgn.decrypt(sk, bgn.smul(c, 3)) == 15
    assert bgn.decrypt(sk, bgn.smul(c, 0)) == 0
    # the inverse encrypts n - 5 under randomizer -123
    assert bgn.smul(c, -1).element == bgn.encrypt1(params, params.n - 5, -123 % params.n).element
    assert bgn.neg(c) == bgn.smul(c, -1)


def test_pairing_ops(keyed):
    params, sk = keyed
    E = lambda x: bgn.encrypt1(params, x)
    assert bgn.decrypt(sk, bgn.pair(E(3), E(4))) == 12
    assert bgn.decrypt(sk, bgn.pair(E(0), E(9))) == 0
    s = bgn.add_l2(bgn.pair(E(2), E(3)), bgn.pair(E(1), E(4)))
    assert bgn.decrypt(sk, s) == 10
    assert bgn.decrypt(sk, bgn.encrypt2(params, 6)) == 6


def test_decrypt_bounds(keyed):
    params, sk = keyed
    assert bgn.decrypt(sk, bgn.encrypt1(params, 23905), bound=23905) == 23905
    assert bgn.decrypt(sk, bgn.encrypt1(params, 0, 17), bound=10) == 0
    with pytest.raises(bgn.OutOfRange):
        bgn.decrypt(sk, bgn.encrypt1(params, 11), bound=10)


def test_open_randomizer(keyed):
    params, _ = keyed
    c = bgn.encrypt1(params, 0, 77)
    assert bgn.open_randomizer(c, 0, 77)
    assert not bgn.open_randomizer(bgn.encrypt1(params, 1, 77), 0, 77)
    assert not bgn.open_randomizer(c, 0, 78)
    assert bgn.open_zero2(bgn.encrypt2(params, 0, 5), 5)
    assert not bgn.open_zero2(bgn.encrypt2(params, 1, 5), 5)


def test_serialization(keyed):
    params, _ = keyed
    c1 = bgn.encrypt1(params, 12)
    c2 = bgn.pair(c1, c1)
    assert bgn.from_bytes(params, c1.to_bytes()) == c1
    assert bgn.from_bytes(params, c2.to_bytes(), 2) == c2
    assert bgn.from_bytes(params, bgn.encrypt1(params, 0, 0).to_bytes()).element == params.group.one
    with pytest.raises(bgn.BGNError):
        bgn.from_bytes(params, c1.to_bytes(), 2)
    assert bgn.PublicParams.from_text(params.to_text()) == params


def test_bad_point_rejected(real32):
    params, _ = real32
    b = bytearray(bgn.encrypt1(params, 1).to_bytes())
    b[-1] ^= 1
    with pytest.raises(bgn.BGNError):
        bgn.from_bytes(params, bytes(b))


def test_backend_mismatch(mock64, real32):
    with pytest.raises(bgn.BGNError):
        bgn.add_l1(bgn.encrypt1(mock64[0], 1), bgn.encrypt1(real32[0], 1))


def test_disclosure(keyed):
    params, sk = keyed
    assert bgn.validate_disclosure(params, sk)
    assert not bgn.validate_disclosure(params, bgn.PrivateKey(sk.q1, sk.q2, sk.beta + 1, sk.gen_seed))
    assert not bgn.validate_disclosure(params, bgn.PrivateKey(sk.q1, sk.q1, sk.beta, sk.gen_seed))


def test_key_text_round_trip(real32):
    _, sk = real32
    assert bgn.PrivateKey.from_text(sk.to_text()) == sk


def test_backend_equivalence():
    """Same primes, both backends, random straight-line programs."""
    rng = random.Random(9)
    real, sk = bgn.gen_params(32, 1 << 12, rng)
    mock, msk = bgn.mock_params(sk.q1, sk.q2, sk.beta, 1 << 12)
    for _ in range(10):
        xs = [rng.randrange(10) for _ in range(3)]
        k = rng.randrange(1, 5)
        got = []
        for params, key in ((real, sk), (mock, msk)):
            a, b, c = (bgn.encrypt1(params, x, rng=rng) for x in xs)
            v = bgn.add_l2(bgn.pair(bgn.smul(a, k), b), bgn.pair(c, c))
            got.append(bgn.decrypt(key, v))
        assert got[0] == got[1] == k * xs[0] * xs[1] + xs[2] ** 2
