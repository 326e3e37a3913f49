"""Proof that the encrypted codeword c decodes to the encrypted information
word enc_info.

Every surviving decoding pair (j', j'') of info bit i must satisfy
d[j'] XOR d[j''] = x_i. The XOR is computed at level 2 as
L[j'] L[j''] e(c[j'], c[j''])^-2 with L[j] = e(c[j], g), i.e. a + b - 2ab.
Differences to the lifted x_i are aggregated in chunks with weights 2^k and
each chunk aggregate is opened as zero. An anchor equation d[0] = x0 pins
the constant term. Together the equations force d = encode(x).
"""

from dataclasses import dataclass

from . import bits as bitproofs
from .common import Op, enc_list, op_pair, rng_or_default


@dataclass
class DecodeProof:
    enc_info: list
    info_bits: object
    openings: list


def chunk_size(params):
    # |sum of +-2^k, k < K| < 2^K <= q2, so a zero opening forces every term to 0
    return max(1, params.prime_bits - 2)


def _chunks(seq, K):
    return [seq[i:i + K] for i in range(0, len(seq), K)]


def _aggregate(grp, diffs):
    acc = grp.one2
    for e in reversed(diffs):
        acc = grp.mul2(grp.mul2(acc, acc), e)
    return acc


def aggregates(params, c, enc_info, spec):
    """Verifier-side aggregate elements, in canonical order."""
    grp = params.group
    K = chunk_size(params)
    L = {}

    def lift(j):
        if j not in L:
            L[j] = grp.pair(c[j], grp.g)
        return L[j]

    out = []
    for i, (lo, hi) in enumerate(spec.all_pairs, 1):
        Xinv = grp.inv2(grp.pair(enc_info[i], grp.g))
        diffs = []
        for j1, j2 in zip(lo.tolist(), hi.tolist()):
            P = grp.pair(c[j1], c[j2])
            xor = grp.mul2(grp.mul2(lift(j1), lift(j2)), grp.inv2(grp.mul2(P, P)))
            diffs.append(grp.mul2(xor, Xinv))
        out.extend(_aggregate(grp, ch) for ch in _chunks(diffs, K))
    out.append(grp.mul2(lift(0), grp.inv2(grp.pair(enc_info[0], grp.g))))
    return out


def opening_rands(params, theta, d, rc, x, rx, spec):
    """Prover-side randomizers of the aggregates (plaintexts are 0 when honest)."""
    n = params.n
    K = chunk_size(params)
    one = Op(1, 0)
    Lop = [op_pair(Op(int(dj), r), one, theta, n) for dj, r in zip(d, rc)]
    out = []
    for i, (lo, hi) in enumerate(spec.all_pairs, 1):
        Xop = op_pair(Op(x[i], rx[i]), one, theta, n)
        rs = []
        for j1, j2 in zip(lo.tolist(), hi.tolist()):
            P = op_pair(Op(int(d[j1]), rc[j1]), Op(int(d[j2]), rc[j2]), theta, n)
            rs.append((Lop[j1].r + Lop[j2].r - 2 * P.r - Xop.r) % n)
        for ch in _chunks(rs, K):
            out.append(sum(r << k for k, r in enumerate(ch)) % n)
    out.append((Lop[0].r - op_pair(Op(x[0], rx[0]), one, theta, n).r) % n)
    return out


def _absorb(tr, params, enc_info):
    tr.append('decode:info', enc_list(params.group, enc_info))


def _absorb_open(tr, params, openings):
    w = (params.n.bit_length() + 7) // 8
    tr.append('decode:open', b''.join(o.to_bytes(w, 'big') for o in openings))


def encrypt_info(params, x, rx):
    grp = params.group
    return [grp.mul(grp.gpow(b), grp.hpow(r)) for b, r in zip(x, rx)]


def prove_decode(params, theta, c, d, rc, x, rx, spec, lam, tr, rng=None):
    rng = rng_or_default(rng)
    enc_info = encrypt_info(params, x, rx)
    _absorb(tr, params, enc_info)
    info_bits = bitproofs.prove_bits(params, enc_info, list(x), rx, lam, tr, 'bits_info', rng)
    openings = opening_rands(params, theta, d, rc, x, rx, spec)
    _absorb_open(tr, params, openings)
    return DecodeProof(enc_info, info_bits, openings)


def verify_decode(params, c, proof, spec, lam, tr):
    grp = params.group
    if len(proof.enc_info) != spec.m + 1 or len(c) != spec.l:
        return False
    _absorb(tr, params, proof.enc_info)
    if not bitproofs.verify_bits(params, proof.enc_info, proof.info_bits, lam, tr, 'bits_info'):
        return False
    agg = aggregates(params, c, proof.enc_info, spec)
    if len(agg) != len(proof.openings):
        return False
    _absorb_open(tr, params, proof.openings)
    return all(grp.Hpow(r) == A for r, A in zip(proof.openings, agg))
