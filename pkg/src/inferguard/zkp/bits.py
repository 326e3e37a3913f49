"""Proof that ciphertexts encrypt 0 or 1.

Per round, an OR of two Schnorr-style proofs over base h with a one-bit
challenge: either c = h^r or c g^-1 = h^r. The prover simulates the false
branch. lam rounds give soundness 1 - 2^-lam.
"""

from dataclasses import dataclass

from .common import rng_or_default
from .transcript import bits_of


@dataclass
class BitProof:
    commits: list      # per ciphertext, per round: (t0, t1)
    responses: list    # per ciphertext, per round: (e0, z0, z1)


def _branches(grp, c):
    return c, grp.mul(c, grp.inv(grp.g))


def commit(params, cs, bs, rs, lam, rng=None):
    """First move. Returns (commits, state)."""
    grp = params.group
    n = params.n
    rng = rng_or_default(rng)
    commits, state = [], []
    for c, b, r in zip(cs, bs, rs):
        Y = _branches(grp, c)
        cr, sr = [], []
        for _ in range(lam):
            k = rng.randrange(n)
            es = rng.getrandbits(1)
            zs = rng.randrange(n)
            ts = grp.hpow(zs)
            if es:
                ts = grp.mul(ts, grp.inv(Y[1 - b]))
            t = [None, None]
            t[b] = grp.hpow(k)
            t[1 - b] = ts
            cr.append(tuple(t))
            sr.append((b, r, k, es, zs))
        commits.append(cr)
        state.append(sr)
    return commits, state


def respond(params, state, chal):
    """chal: flat list of challenge bits, one per (ciphertext, round)."""
    n = params.n
    out = []
    it = iter(chal)
    for sr in state:
        rr = []
        for b, r, k, es, zs in sr:
            e = next(it)
            eb = e ^ es
            zb = (k + eb * r) % n
            if b == 0:
                rr.append((eb, zb, zs))
            else:
                rr.append((es, zs, zb))
        out.append(rr)
    return out


def check(params, cs, commits, chal, responses):
    """Index of the first failing ciphertext, or -1 if all pass."""
    grp = params.group
    it = iter(chal)
    for idx, (c, cr, rr) in enumerate(zip(cs, commits, responses)):
        Y = _branches(grp, c)
        if len(cr) != len(rr):
            return idx
        for (t0, t1), (e0, z0, z1) in zip(cr, rr):
            e = next(it)
            e1 = e ^ e0
            if e0 not in (0, 1):
                return idx
            r0 = grp.mul(t0, Y[0]) if e0 else t0
            r1 = grp.mul(t1, Y[1]) if e1 else t1
            if grp.hpow(z0) != r0 or grp.hpow(z1) != r1:
                return idx
    return -1


def absorb(tr, params, label, commits):
    grp = params.group
    tr.append(label + ':commit', b''.join(grp.enc1(t0) + grp.enc1(t1) for cr in commits for t0, t1 in cr))


def prove_bits(params, cs, bs, rs, lam, tr, label='bits', rng=None):
    commits, state = commit(params, cs, bs, rs, lam, rng)
    absorb(tr, params, label, commits)
    nb = lam * len(cs)
    chal = bits_of(tr.challenge(label, nb), nb)
    return BitProof(commits, respond(params, state, chal))


def verify_bits(params, cs, proof, lam, tr, label='bits'):
    if len(proof.commits) != len(cs) or len(proof.responses) != len(cs):
        return False
    if any(len(cr) != lam for cr in proof.commits):
        return False
    absorb(tr, params, label, proof.commits)
    nb = lam * len(cs)
    chal = bits_of(tr.challenge(label, nb), nb)
    return check(params, cs, proof.commits, chal, proof.responses) == -1


def prove_bit(params, c, b, r, lam, tr, rng=None):
    return prove_bits(params, [c], [b], [r], lam, tr, 'bit', rng)


def verify_bit(params, c, proof, lam, tr):
    return verify_bits(params, [c], proof, lam, tr, 'bit')


def simulate(params, cs, lam, chal, rng=None):
    """HVZK simulator: given the challenge bits up front, produce an accepting
    proof without any opening."""
    grp = params.group
    n = params.n
    rng = rng_or_default(rng)
    it = iter(chal)
    commits, responses = [], []
    for c in cs:
        Y = _branches(grp, c)
        cr, rr = [], []
        for _ in range(lam):
            e = next(it)
            e0 = rng.getrandbits(1)
            e1 = e ^ e0
            z0, z1 = rng.randrange(n), rng.randrange(n)
            t0 = grp.hpow(z0)
            if e0:
                t0 = grp.mul(t0, grp.inv(Y[0]))
            t1 = grp.hpow(z1)
            if e1:
                t1 = grp.mul(t1, grp.inv(Y[1]))
            cr.append((t0, t1))
            rr.append((e0, z0, z1))
        commits.append(cr)
        responses.append(rr)
    return BitProof(commits, responses)
