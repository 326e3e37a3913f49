"""Proof that the encrypted filter a and the encrypted codeword c lie within
Hamming distance delta.

D = prod e(a_i c_i^-1, a_i c_i^-1) encrypts sum (b_i - d_i)^2 = d_h.
f[j] = D * G^-j for j = 0..delta; exactly f[d_h] encrypts 0. The prover
shuffles f, proves the shuffle, and opens the zero entry.
"""

from dataclasses import dataclass

from . import bits as bitproofs
from . import shuffle
from .common import Op, enc_list, op_pair, rng_or_default
from .transcript import bits_of


class ProverRefusal(ValueError):
    """Honest prover cannot prove: distance exceeds delta."""

    def __init__(self, distance, delta):
        super().__init__('distance %d exceeds delta %d' % (distance, delta))
        self.distance = distance
        self.delta = delta


@dataclass
class HammingProof:
    c: list
    bits_a: object
    bits_c: object
    shuffled_f: list
    shuffle_proof: object
    zero_index: int
    zero_rand: int


def distance_element(params, a, c):
    grp = params.group
    D = grp.one2
    for ai, ci in zip(a, c):
        diff = grp.mul(ai, grp.inv(ci))
        D = grp.mul2(D, grp.pair(diff, diff))
    return D


def candidates(params, D, delta):
    grp = params.group
    Ginv = grp.inv2(grp.G)
    f = [D]
    for _ in range(delta):
        f.append(grp.mul2(f[-1], Ginv))
    return f


def _absorb_c(tr, params, a, c):
    grp = params.group
    tr.append('hamming:a', enc_list(grp, a))
    tr.append('hamming:c', enc_list(grp, c))


def prove_hamming(params, theta, b, r, d, rc, a, c, delta, lam, tr, rng=None):
    """b, r: filter bits and randomizers of a; d, rc: codeword bits and
    randomizers of c. theta = log_g h (from the private key)."""
    rng = rng_or_default(rng)
    n = params.n
    grp = params.group
    dh = sum(1 for x, y in zip(b, d) if x != y)
    if dh > delta:
        raise ProverRefusal(dh, delta)
    _absorb_c(tr, params, a, c)
    bits_a = bitproofs.prove_bits(params, a, b, r, lam, tr, 'bits_a', rng)
    bits_c = bitproofs.prove_bits(params, c, d, rc, lam, tr, 'bits_c', rng)
    D = distance_element(params, a, c)
    rho = 0
    for bi, ri, di, rci in zip(b, r, d, rc):
        o = Op((int(bi) - int(di)) % n, (ri - rci) % n)
        rho = (rho + op_pair(o, o, theta, n).r) % n
    f = candidates(params, D, delta)
    N = delta + 1
    pi = shuffle.random_perm(N, rng)
    s = [rng.randrange(n) for _ in range(N)]
    F = shuffle.apply(params, f, pi, s)
    tr.append('hamming:F', enc_list(grp, F, 2))
    sp = shuffle.prove_shuffle(params, f, F, pi, s, lam, tr, rng)
    k = pi.index(dh)
    zr = (rho + s[k]) % n
    tr.append('hamming:open', k.to_bytes(4, 'big') + zr.to_bytes((n.bit_length() + 7) // 8, 'big'))
    return HammingProof(c, bits_a, bits_c, F, sp, k, zr)


def verify_hamming(params, a, proof, delta, lam, tr):
    grp = params.group
    n = params.n
    c = proof.c
    if len(c) != len(a) or len(proof.shuffled_f) != delta + 1:
        return False
    _absorb_c(tr, params, a, c)
    if not bitproofs.verify_bits(params, a, proof.bits_a, lam, tr, 'bits_a'):
        return False
    if not bitproofs.verify_bits(params, c, proof.bits_c, lam, tr, 'bits_c'):
        return False
    f = candidates(params, distance_element(params, a, c), delta)
    tr.append('hamming:F', enc_list(grp, proof.shuffled_f, 2))
    if not shuffle.verify_shuffle(params, f, proof.shuffled_f, proof.shuffle_proof, lam, tr):
        return False
    k, zr = proof.zero_index, proof.zero_rand
    if not 0 <= k <= delta or not 0 <= zr < n:
        return False
    tr.append('hamming:open', k.to_bytes(4, 'big') + zr.to_bytes((n.bit_length() + 7) // 8, 'big'))
    return grp.Hpow(zr) == proof.shuffled_f[k]


def simulate(params, a, delta, lam, tr, rng=None):
    """HVZK simulator: draws the verifier's coins itself (interactive mode) and
    outputs an accepting proof without the filter bits or randomizers."""
    rng = rng_or_default(rng)
    grp = params.group
    n = params.n
    l = len(a)
    # arbitrary bit encryptions for c; the bit proofs for a are simulated
    d = [rng.getrandbits(1) for _ in range(l)]
    rc = [rng.randrange(n) for _ in range(l)]
    c = [grp.mul(grp.gpow(x), grp.hpow(r)) for x, r in zip(d, rc)]
    _absorb_c(tr, params, a, c)
    # coins are fixed before the simulated commitments, then recorded after
    ca = tr.draw(lam * l)
    bits_a = bitproofs.simulate(params, a, lam, bits_of(ca, lam * l), rng)
    bitproofs.absorb(tr, params, 'bits_a', bits_a.commits)
    tr.record('bits_a', ca, lam * l)
    bits_c = bitproofs.prove_bits(params, c, d, rc, lam, tr, 'bits_c', rng)
    f = candidates(params, distance_element(params, a, c), delta)
    N = delta + 1
    k = rng.randrange(N)
    zr = rng.randrange(n)
    F = [grp.mul2(grp.Gpow(rng.randrange(n)), grp.Hpow(rng.randrange(n))) for _ in range(N)]
    F[k] = grp.Hpow(zr)
    tr.append('hamming:F', enc_list(grp, F, 2))
    cs = tr.draw(lam)
    sp = shuffle.simulate(params, f, F, lam, bits_of(cs, lam), rng)
    shuffle.absorb(tr, params, sp.aux)
    tr.record('shuffle', cs, lam)
    tr.append('hamming:open', k.to_bytes(4, 'big') + zr.to_bytes((n.bit_length() + 7) // 8, 'big'))
    return HammingProof(c, bits_a, bits_c, F, sp, k, zr)

