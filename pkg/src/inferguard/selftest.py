"""Small-parameter oracles: exhaustive RM decoding against brute force,
proof soundness under full challenge enumeration, simulator acceptance and
a mock/real backend differential test. Each check returns (name, ok, detail).
"""

import itertools
import random

import numpy as np

from . import bgn, rmcode
from .zkp import bits as bitproofs
from .zkp import decode as dec
from .zkp import owf, shuffle
from .zkp.simulate import simulate_transcript, verify_simulated
from .zkp.transcript import INTERACTIVE, Transcript, bits_of


def brute_force_decode(spec, y):
    """All nearest codewords (information words) by exhaustive search."""
    y = np.asarray(y, dtype=np.uint8)
    best, words = None, []
    for v in range(1 << (spec.m + 1)):
        x = rmcode.int_to_word(v, spec.m)
        dist = int(np.count_nonzero(rmcode.encode(spec, x) ^ y))
        if best is None or dist < best:
            best, words = dist, [x]
        elif dist == best:
            words.append(x)
    return words, best


def rm_exhaustive(m):
    """Round trip for every word and correction of every error pattern of
    weight <= t at full length; agreement with the brute-force decoder."""
    spec = rmcode.make_spec(m, 1 << m)
    t = ((1 << (m - 1)) - 1) // 2
    cases = bad = 0
    for v in range(1 << (m + 1)):
        x = rmcode.int_to_word(v, m)
        cw = rmcode.encode(spec, x)
        for w in range(t + 1):
            for pos in itertools.combinations(range(spec.l), w):
                y = cw.copy()
                y[list(pos)] ^= 1
                words, _ = brute_force_decode(spec, y)
                cases += 1
                if words != [x] or rmcode.decode(spec, y) != x:
                    bad += 1
    return ('rm m=%d exhaustive' % m, bad == 0, '%d cases, %d disagreements' % (cases, bad))


def toy_params(seed=7):
    # q2 > 2^12 keeps chunked openings sound for small codes
    rng = random.Random(seed)
    return bgn.gen_params(16, 1 << 10, rng, backend=bgn.MOCK)


def _rate(accepts, total):
    return 1 - accepts / total


def cheat_bit(params, lam, rng, theta=None):
    """Non-bit plaintext: the best cheater simulates against a guessed challenge."""
    grp = params.group
    c = grp.mul(grp.gpow(2), grp.hpow(rng.randrange(params.n)))
    guess = bits_of(rng.getrandbits(lam), lam)
    pf = bitproofs.simulate(params, [c], lam, guess, rng)
    acc = sum(bitproofs.check(params, [c], pf.commits, bits_of(v, lam), pf.responses) == -1
              for v in range(1 << lam))
    return acc


def cheat_distance(params, lam, rng, theta=None, delta=4):
    """Distance above delta: no candidate encrypts zero, so the cheater swaps
    one shuffled output for E(0) and must survive the shuffle check."""
    grp = params.group
    inp = [grp.mul2(grp.Gpow(j + 1), grp.Hpow(rng.randrange(params.n))) for j in range(delta + 1)]
    pi = shuffle.random_perm(delta + 1, rng)
    out = shuffle.apply(params, inp, pi, [rng.randrange(params.n) for _ in inp])
    out[0] = grp.Hpow(rng.randrange(params.n))
    guess = bits_of(rng.getrandbits(lam), lam)
    pf = shuffle.simulate(params, inp, out, lam, guess, rng)
    return sum(shuffle.check(params, inp, out, pf.aux, bits_of(v, lam), pf.responses)
               for v in range(1 << lam))


def cheat_decode(params, lam, rng, theta, m=3):
    """Information word inconsistent with the codeword: algebraic, no challenge helps."""
    spec = rmcode.make_spec(m, 1 << m)
    grp = params.group
    n = params.n
    bad = 0
    for v in range(1 << (m + 1)):
        x = rmcode.int_to_word(v, m)
        d = rmcode.encode(spec, x).tolist()
        wrong = rmcode.int_to_word(v ^ (1 << rng.randrange(m + 1)), m)
        rc = [rng.randrange(n) for _ in d]
        rx = [rng.randrange(n) for _ in wrong]
        c = [grp.mul(grp.gpow(b), grp.hpow(r)) for b, r in zip(d, rc)]
        tr = Transcript(INTERACTIVE, coins=rng.getrandbits(64))
        pf = dec.prove_decode(params, theta, c, d, rc, wrong, rx, spec, lam, tr, rng)
        if dec.verify_decode(params, c, pf, spec, lam, tr.verifier_view()):
            bad += 1
    return bad


def cheat_kappa(params, lam, rng, theta=None):
    """Commitment under kappa' != kappa: phase 1 opens, phase 2 needs a guess."""
    grp = params.group
    n = params.n
    kappa, s, x = rng.randrange(1, n), rng.randrange(n), rng.randrange(16)
    kappa2 = (kappa + 1 + rng.randrange(n - 1)) % n or 1
    s_hat = grp.mul(grp.gpow(s), grp.hpow(kappa))
    C = grp.mul(grp.gpow(x), grp.hpow(kappa2))
    U = owf.u_element(params, C, s_hat)
    guess = bits_of(rng.getrandbits(lam), lam)
    rounds = owf.simulate_phase2(params, U, guess, rng)
    ws = [w for w, _ in rounds]
    zs = [z for _, z in rounds]
    return sum(owf.check(params, U, ws, bits_of(v, lam), zs) for v in range(1 << lam))


def cheat_commit_word(params, lam, rng, theta=None, m=3):
    """Commitment to x' while the encrypted bits hold x: phase 1 cannot open."""
    grp = params.group
    n = params.n
    bad = 0
    for v in range(1 << (m + 1)):
        x = rmcode.int_to_word(v, m)
        v2 = v ^ (1 << rng.randrange(m + 1))
        rx = [rng.randrange(n) for _ in x]
        kappa, s = rng.randrange(1, n), rng.randrange(n)
        enc_info = dec.encrypt_info(params, x, rx)
        C = grp.mul(grp.gpow(v2), grp.hpow(kappa))
        s_hat = grp.mul(grp.gpow(s), grp.hpow(kappa))
        tr = Transcript(INTERACTIVE, coins=rng.getrandbits(64))
        pf = owf.prove_owf(params, kappa, s, v2, rx, lam, tr, rng)
        if owf.verify_owf(params, s_hat, C, enc_info, pf, lam, tr.verifier_view()):
            bad += 1
    return bad


def zkp_soundness(lam=8, seed=1):
    params, sk = toy_params(seed)
    rng = random.Random(seed)
    total = 1 << lam
    floor = 1 - 2.0 ** -lam
    out = []
    for name, fn in (('non-bit plaintext', cheat_bit), ('distance above delta', cheat_distance),
                     ('wrong kappa', cheat_kappa)):
        acc = fn(params, lam, rng, sk.theta)
        rate = _rate(acc, total)
        out.append(('zkp cheat: %s' % name, rate >= floor, 'rejection %.6f over %d challenges' % (rate, total)))
    for name, fn in (('inconsistent information word', cheat_decode),
                     ('wrong word in commitment', cheat_commit_word)):
        bad = fn(params, lam, rng, sk.theta)
        out.append(('zkp cheat: %s' % name, bad == 0, '%d accepted' % bad))
    return out


def zkp_simulation(lam=8, seed=2, trials=5):
    params, _ = toy_params(seed)
    grp = params.group
    rng = random.Random(seed)
    n = params.n
    ok = 0
    total = 0
    for _ in range(trials):
        cs = [grp.mul(grp.gpow(rng.getrandbits(1)), grp.hpow(rng.randrange(n))) for _ in range(3)]
        inp = [grp.mul2(grp.Gpow(rng.randrange(9)), grp.Hpow(rng.randrange(n))) for _ in range(4)]
        out = shuffle.apply(params, inp, shuffle.random_perm(4, rng), [rng.randrange(n) for _ in inp])
        U = grp.mul(grp.gpow(rng.randrange(n)), grp.one)
        a = [grp.mul(grp.gpow(rng.getrandbits(1)), grp.hpow(rng.randrange(n))) for _ in range(6)]
        cases = [('bit', dict(params=params, cs=cs, lam=lam)),
                 ('shuffle', dict(params=params, inp=inp, out=out, lam=lam)),
                 ('owf_phase2', dict(params=params, U=U, lam=lam)),
                 ('hamming', dict(params=params, a=a, delta=3, lam=lam))]
        for kind, pub in cases:
            tr, pf = simulate_transcript(kind, pub, random.Random(rng.getrandbits(32)), rng)
            total += 1
            ok += bool(verify_simulated(kind, pub, tr, pf))
    return [('zkp simulators', ok == total, '%d/%d simulated transcripts accepted' % (ok, total))]


def backend_differential(programs=20, seed=3, bits=32):
    """Random straight-line programs evaluated under both backends with the
    same primes; decryptions must agree with each other and with plaintext."""
    rng = random.Random(seed)
    real, sk = bgn.gen_params(bits, 1 << 12, rng, backend=bgn.REAL)
    mock, msk = bgn.mock_params(sk.q1, sk.q2, sk.beta, 1 << 12)
    bad = 0
    for _ in range(programs):
        xs = [rng.randrange(8) for _ in range(4)]
        res = []
        for params, key in ((real, sk), (mock, msk)):
            cs = [bgn.encrypt1(params, x, rng=rng) for x in xs]
            s = bgn.add_l1(bgn.smul(cs[0], 3), cs[1])
            p = bgn.add_l2(bgn.pair(s, cs[2]), bgn.encrypt2(params, xs[3], rng=rng))
            res.append((bgn.decrypt(key, s), bgn.decrypt(key, p)))
        want = (3 * xs[0] + xs[1], (3 * xs[0] + xs[1]) * xs[2] + xs[3])
        if res[0] != res[1] or res[0] != want:
            bad += 1
    return [('backend differential', bad == 0, '%d programs, %d mismatches' % (programs, bad))]


def run_all(quick=False):
    out = [rm_exhaustive(3)]
    if not quick:
        out.append(rm_exhaustive(4))
    out += zkp_soundness()
    out += zkp_simulation()
    out += backend_differential(programs=5 if quick else 20)
    return out
