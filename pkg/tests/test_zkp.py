import itertools
import random

import numpy as np
import pytest

from inferguard import bgn, fuzzycommit as fc, rmcode, selftest
from inferguard.zkp import (FIAT_SHAMIR, INTERACTIVE, FixedCoins, ProverInputs, ProverRefusal, Transcript,
                            compose_prove, compose_verify, prove_bit, prove_decode, prove_hamming, prove_owf,
                            prove_shuffle, simulate_transcript, verify_bit, verify_decode, verify_hamming,
                            verify_owf, verify_shuffle, verify_simulated)
from inferguard.zkp import bits as bitproofs
from inferguard.zkp import codec, decode as dec, owf, shuffle
from inferguard.zkp.transcript import TranscriptError, bits_of

LAM = 8
MODES = [INTERACTIVE, FIAT_SHAMIR]


@pytest.fixture(params=['mock64', 'real32'])
def keyed(request):
    return request.getfixturevalue(request.param)


def tr(mode=INTERACTIVE, seed=0):
    return Transcript(mode, coins=random.Random(seed))


def enc(params, bits, rng):
    rs = [rng.randrange(params.n) for _ in bits]
    grp = params.group
    return [grp.mul(grp.gpow(int(b)), grp.hpow(r)) for b, r in zip(bits, rs)], rs


class Query:
    """Honest prover inputs for a filter at a chosen distance from its codeword."""

    def __init__(self, params, sk, spec, flips, rng):
        x = rmcode.int_to_word(rng.getrandbits(spec.m + 1), spec.m)
        d = rmcode.encode(spec, x)
        b = d.copy()
        b[rng.sample(range(spec.l), flips)] ^= 1
        self.b, self.d, self.x = b.tolist(), d.tolist(), x
        self.a, self.r = enc(params, self.b, rng)
        self.rc = [rng.randrange(params.n) for _ in self.d]
        self.rx = [rng.randrange(params.n) for _ in x]
        self.key = fc.owf_setup(params, rng)
        self.C = fc.commit(params, self.key, x)
        self.inp = ProverInputs(self.b, self.r, self.d, self.rc, x, self.rx, self.key.kappa, self.key.s)


# bit proofs

@pytest.mark.parametrize('mode', MODES)
@pytest.mark.parametrize('b', [0, 1])
def test_bit_completeness(keyed, mode, b):
    params, _ = keyed
    rng = random.Random(b)
    (c,), (r,) = enc(params, [b], rng)
    t = tr(mode)
    pf = prove_bit(params, c, b, r, LAM, t, rng)
    assert verify_bit(params, c, pf, LAM, t.verifier_view())


def test_bit_soundness_enumeration(keyed):
    params, _ = keyed
    acc = selftest.cheat_bit(params, LAM, random.Random(2))
    assert 1 - acc / 2 ** LAM >= 1 - 2 ** -LAM


def test_honest_bit_proof_all_challenges(mock64):
    params, _ = mock64
    rng = random.Random(3)
    cs, rs = enc(params, [1], rng)
    commits, state = bitproofs.commit(params, cs, [1], rs, LAM, rng)
    for v in range(1 << LAM):
        chal = bits_of(v, LAM)
        assert bitproofs.check(params, cs, commits, chal, bitproofs.respond(params, state, chal)) == -1


def test_bit_proof_tampered(mock64):
    params, _ = mock64
    rng = random.Random(4)
    cs, rs = enc(params, [0, 1, 1], rng)
    t = tr()
    pf = bitproofs.prove_bits(params, cs, [0, 1, 1], rs, LAM, t, rng=rng)
    e0, z0, z1 = pf.responses[1][0]
    pf.responses[1][0] = (e0, (z0 + 1) % params.n, z1)
    assert not bitproofs.verify_bits(params, cs, pf, LAM, t.verifier_view())


# shuffle

def test_shuffle_identity(keyed):
    params, _ = keyed
    rng = random.Random(5)
    grp = params.group
    inp = [grp.Gpow(j) for j in range(4)]
    s = [rng.randrange(params.n) for _ in inp]
    out = shuffle.apply(params, inp, [0, 1, 2, 3], s)
    t = tr()
    pf = prove_shuffle(params, inp, out, [0, 1, 2, 3], s, LAM, t, rng)
    assert verify_shuffle(params, inp, out, pf, LAM, t.verifier_view())


@pytest.mark.parametrize('mode', MODES)
def test_shuffle_random(mock64, mode):
    params, _ = mock64
    rng = random.Random(6)
    grp = params.group
    inp = [grp.mul2(grp.Gpow(j), grp.Hpow(rng.randrange(params.n))) for j in range(6)]
    pi = shuffle.random_perm(6, rng)
    s = [rng.randrange(params.n) for _ in inp]
    out = shuffle.apply(params, inp, pi, s)
    t = tr(mode)
    pf = prove_shuffle(params, inp, out, pi, s, LAM, t, rng)
    assert verify_shuffle(params, inp, out, pf, LAM, t.verifier_view())
    bad = list(out)
    bad[0], bad[1] = bad[1], grp.mul2(bad[0], grp.G)
    assert not verify_shuffle(params, inp, bad, pf, LAM, t.verifier_view())


def test_shuffle_replaced_output_enumeration(mock64):
    """3 ciphertexts, one output swapped for an unrelated one; the cheater
    commits to auxiliary shuffles and must answer every challenge string."""
    params, _ = mock64
    rng = random.Random(7)
    grp = params.group
    inp = [grp.mul2(grp.Gpow(j + 1), grp.Hpow(rng.randrange(params.n))) for j in range(3)]
    pi = [2, 0, 1]
    s = [rng.randrange(params.n) for _ in inp]
    out = shuffle.apply(params, inp, pi, s)
    out[1] = grp.Gpow(99)
    # honest-style commitment: auxiliary shuffles of inp with known openings
    aux, state = shuffle.commit(params, inp, LAM, rng)
    accepted = 0
    for v in range(1 << LAM):
        chal = bits_of(v, LAM)
        resp = shuffle.respond(params, state, pi, s, chal)
        accepted += shuffle.check(params, inp, out, aux, chal, resp)
    assert accepted == 1                      # only the all-zero challenge
    # best cheater: simulate for a guessed challenge
    acc = selftest.cheat_distance(params, LAM, rng, delta=2)
    assert 1 - acc / 2 ** LAM >= 1 - 2 ** -LAM


def test_shuffle_single_element(mock64):
    params, _ = mock64
    grp = params.group
    inp = [grp.Gpow(3)]
    out = shuffle.apply(params, inp, [0], [11])
    t = tr()
    pf = prove_shuffle(params, inp, out, [0], [11], LAM, t)
    assert verify_shuffle(params, inp, out, pf, LAM, t.verifier_view())


# hamming

def _ham(params, sk, q, spec, delta, mode=INTERACTIVE):
    grp = params.group
    c = [grp.mul(grp.gpow(v), grp.hpow(r)) for v, r in zip(q.d, q.rc)]
    t = tr(mode)
    pf = prove_hamming(params, sk.theta, q.b, q.r, q.d, q.rc, q.a, c, delta, LAM, t, random.Random(1))
    return verify_hamming(params, q.a, pf, delta, LAM, t.verifier_view()), pf


@pytest.mark.parametrize('flips', [0, 3, 5])
def test_hamming_completeness(keyed, flips):
    params, sk = keyed
    spec = rmcode.make_spec(4, 13)
    q = Query(params, sk, spec, flips, random.Random(flips))
    ok, pf = _ham(params, sk, q, spec, 5)
    assert ok
    if flips == 0:
        # the opened entry is the image of f[0] = D, which encrypts 0
        assert pf.shuffled_f[pf.zero_index] == params.group.Hpow(pf.zero_rand)


def test_hamming_delta_zero(mock64):
    params, sk = mock64
    spec = rmcode.make_spec(4, 13)
    q = Query(params, sk, spec, 0, random.Random(8))
    assert _ham(params, sk, q, spec, 0)[0]


def test_hamming_refuses_above_delta(mock64):
    params, sk = mock64
    spec = rmcode.make_spec(4, 13)
    q = Query(params, sk, spec, 6, random.Random(9))
    with pytest.raises(ProverRefusal) as ei:
        _ham(params, sk, q, spec, 5)
    assert ei.value.distance == 6


def test_hamming_cheat_above_delta(mock64):
    """A prover ignoring the refusal: swap one shuffled entry for E(0) and
    reuse an honest shuffle proof. Rejected for every nonzero challenge."""
    params, sk = mock64
    grp = params.group
    spec = rmcode.make_spec(4, 13)
    q = Query(params, sk, spec, 4, random.Random(10))
    c = [grp.mul(grp.gpow(v), grp.hpow(r)) for v, r in zip(q.d, q.rc)]
    from inferguard.zkp import hamming as ham
    f = ham.candidates(params, ham.distance_element(params, q.a, c), 3)
    rng = random.Random(11)
    assert all(x != grp.one2 and not any(grp.Hpow(r) == x for r in range(50)) for x in f)
    pi = shuffle.random_perm(4, rng)
    s = [rng.randrange(params.n) for _ in f]
    F = shuffle.apply(params, f, pi, s)
    F[0] = grp.Hpow(5)
    aux, state = shuffle.commit(params, f, LAM, rng)
    accepted = sum(shuffle.check(params, f, F, aux, bits_of(v, LAM),
                                 shuffle.respond(params, state, pi, s, bits_of(v, LAM)))
                   for v in range(1 << LAM))
    assert accepted <= 1


# decode

@pytest.mark.parametrize('m,l', [(3, 8)])
def test_decode_exhaustive_words(keyed, m, l):
    params, sk = keyed
    spec = rmcode.make_spec(m, l)
    rng = random.Random(12)
    grp = params.group
    for v in range(1 << (m + 1)):
        x = rmcode.int_to_word(v, m)
        d = rmcode.encode(spec, x).tolist()
        c, rc = enc(params, d, rng)
        rx = [rng.randrange(params.n) for _ in x]
        t = tr(seed=v)
        pf = prove_decode(params, sk.theta, c, d, rc, x, rx, spec, LAM, t, rng)
        assert verify_decode(params, c, pf, spec, LAM, t.verifier_view())
        if v == 0:
            assert all(grp.Hpow(o) == A for o, A in zip(pf.openings, dec.aggregates(params, c, pf.enc_info, spec)))


def test_decode_flipped_info_bit(mock64):
    params, sk = mock64
    spec = rmcode.make_spec(3, 8)
    rng = random.Random(13)
    for v in range(16):
        x = rmcode.int_to_word(v, 3)
        d = rmcode.encode(spec, x).tolist()
        c, rc = enc(params, d, rng)
        for i in range(4):
            x2 = list(x)
            x2[i] ^= 1
            rx = [rng.randrange(params.n) for _ in x2]
            t = tr()
            pf = prove_decode(params, sk.theta, c, d, rc, tuple(x2), rx, spec, LAM, t, rng)
            assert not verify_decode(params, c, pf, spec, LAM, t.verifier_view())


def test_decode_non_codeword(mock64):
    """c encrypts a word that is not a codeword: no information word passes."""
    params, sk = mock64
    spec = rmcode.make_spec(3, 8)
    rng = random.Random(14)
    d = rmcode.encode(spec, (0, 1, 1, 0)).tolist()
    d[5] ^= 1
    c, rc = enc(params, d, rng)
    for v in range(16):
        x = rmcode.int_to_word(v, 3)
        rx = [rng.randrange(params.n) for _ in x]
        t = tr()
        pf = prove_decode(params, sk.theta, c, d, rc, x, rx, spec, LAM, t, rng)
        assert not verify_decode(params, c, pf, spec, LAM, t.verifier_view())


@pytest.mark.parametrize('K', range(1, 13))
def test_chunked_weight_uniqueness(K):
    """sum 2^j c_j = 0 mod q2 with c_j in {-1,0,1} forces c = 0 for K up to the
    chunk size of toy parameters whose smaller prime has K+2 bits or more."""
    params, sk = bgn.gen_params(max(16, 2 * (K + 2) + 2), 1 << 4, random.Random(K), backend=bgn.MOCK)
    assert dec.chunk_size(params) >= K
    q = min(sk.q1, sk.q2)
    w = 2 ** np.arange(K)
    combos = np.array(list(itertools.product((-1, 0, 1), repeat=K)))
    sums = combos @ w
    zero = (sums % q == 0)
    assert zero.sum() == 1 and not combos[zero].any()


# owf

@pytest.mark.parametrize('mode', MODES)
def test_owf_completeness(keyed, mode):
    params, sk = keyed
    rng = random.Random(15)
    x = (1, 0, 1, 1)
    rx = [rng.randrange(params.n) for _ in x]
    key = fc.owf_setup(params, rng)
    C = fc.commit(params, key, x).element.element
    enc_info = dec.encrypt_info(params, x, rx)
    t = tr(mode)
    pf = prove_owf(params, key.kappa, key.s, rmcode.word_to_int(x), rx, LAM, t, rng)
    assert verify_owf(params, key.s_hat.element, C, enc_info, pf, LAM, t.verifier_view())


def test_owf_wrong_kappa_enumeration(mock64):
    params, _ = mock64
    acc = selftest.cheat_kappa(params, LAM, random.Random(16))
    assert 1 - acc / 2 ** LAM >= 1 - 2 ** -LAM


def test_owf_wrong_word(keyed):
    params, sk = keyed
    assert selftest.cheat_commit_word(params, LAM, random.Random(17), sk.theta) == 0


# composition

@pytest.mark.parametrize('mode', MODES)
def test_compose_completeness(keyed, mode):
    params, sk = keyed
    spec = rmcode.make_spec(5, 23)
    q = Query(params, sk, spec, 4, random.Random(18))
    t = tr(mode)
    pf = compose_prove(params, sk.theta, q.a, q.inp, spec, 11, LAM, t, random.Random(1))
    v = compose_verify(params, q.a, q.C.element.element, q.key.s_hat.element, pf, spec, 11, LAM, t.verifier_view())
    assert v.ok, v
    data = codec.encode_full(params, pf)
    pf2 = codec.decode_full(params, data)
    assert codec.encode_full(params, pf2) == data
    assert compose_verify(params, q.a, q.C.element.element, q.key.s_hat.element, pf2, spec, 11, LAM,
                          t.verifier_view()).ok


def test_compose_rejects_swapped_filter(mock64):
    """a from a filter far from the proven codeword."""
    params, sk = mock64
    spec = rmcode.make_spec(5, 23)
    q = Query(params, sk, spec, 2, random.Random(19))
    other = Query(params, sk, spec, 2, random.Random(20))
    assert sum(x != y for x, y in zip(other.b, q.d)) > 4
    t = tr()
    pf = compose_prove(params, sk.theta, q.a, q.inp, spec, 4, LAM, t, random.Random(1))
    v = compose_verify(params, other.a, q.C.element.element, q.key.s_hat.element, pf, spec, 4, LAM,
                       t.verifier_view())
    assert not v.ok and v.failed == 'hamming'


def test_compose_rejects_other_commitment(mock64):
    params, sk = mock64
    spec = rmcode.make_spec(5, 23)
    q = Query(params, sk, spec, 2, random.Random(21))
    x2 = tuple(1 - v for v in q.x)
    C2 = fc.commit(params, q.key, x2).element.element
    t = tr()
    pf = compose_prove(params, sk.theta, q.a, q.inp, spec, 11, LAM, t, random.Random(1))
    v = compose_verify(params, q.a, C2, q.key.s_hat.element, pf, spec, 11, LAM, t.verifier_view())
    assert not v.ok and v.failed == 'owf'


def test_codec_errors(mock64):
    params, sk = mock64
    spec = rmcode.make_spec(3, 8)
    q = Query(params, sk, spec, 1, random.Random(22))
    pf = compose_prove(params, sk.theta, q.a, q.inp, spec, 4, LAM, tr(), random.Random(1))
    data = codec.encode_full(params, pf)
    with pytest.raises(codec.CodecError):
        codec.decode_full(params, data[:-3])
    with pytest.raises(codec.CodecError):
        codec.decode_full(params, data + b'\0')
    with pytest.raises(codec.CodecError):
        codec.decode_full(params, b'\x09' + data[1:])


# simulators

@pytest.mark.parametrize('kind', ['bit', 'shuffle', 'owf_phase2', 'hamming'])
def test_simulators(keyed, kind):
    params, _ = keyed
    rng = random.Random(23)
    grp = params.group
    n = params.n
    if kind == 'bit':
        pub = dict(params=params, cs=[grp.mul(grp.gpow(2), grp.hpow(5))], lam=LAM)
    elif kind == 'shuffle':
        inp = [grp.Gpow(j) for j in range(3)]
        pub = dict(params=params, inp=inp, out=[grp.Gpow(7)] * 3, lam=LAM)
    elif kind == 'owf_phase2':
        pub = dict(params=params, U=grp.mul(grp.gpow(9), grp.hpow(3)), lam=LAM)
    else:
        a, _ = enc(params, [rng.getrandbits(1) for _ in range(6)], rng)
        pub = dict(params=params, a=a, delta=2, lam=LAM)
    tr_, pf = simulate_transcript(kind, pub, random.Random(24), rng)
    assert verify_simulated(kind, pub, tr_, pf)


@pytest.mark.parametrize('eta', [0, 1])
def test_owf_simulator_both_coins(mock64, eta):
    params, _ = mock64
    grp = params.group
    U = grp.gpow(12345)
    pub = dict(params=params, U=U, lam=LAM)
    coins = FixedCoins([(1 << LAM) - 1 if eta else 0])
    tr_, pf = simulate_transcript('owf_phase2', pub, coins, random.Random(25))
    assert tr_.challenges[-1][1] == (0 if eta == 0 else (1 << LAM) - 1)
    assert verify_simulated('owf_phase2', pub, tr_, pf)


# transcripts

def test_fiat_shamir_deterministic():
    a, b = Transcript(FIAT_SHAMIR), Transcript(FIAT_SHAMIR)
    for t in (a, b):
        t.append('x', b'123')
    assert a.challenge('c', 40) == b.challenge('c', 40)
    c = Transcript(FIAT_SHAMIR)
    c.append('x', b'124')
    assert c.challenge('c', 40) != a.challenges[0][1]


def test_transcript_errors():
    with pytest.raises(TranscriptError):
        Transcript('bogus')
    with pytest.raises(TranscriptError):
        FixedCoins([]).getrandbits(3)
    with pytest.raises(TranscriptError):
        Transcript(FIAT_SHAMIR).draw(8)
    t = tr()
    t.challenge('a', 8)
    v = t.verifier_view()
    with pytest.raises(TranscriptError):
        v.challenge('b', 8)
