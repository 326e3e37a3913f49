"""Binary encoding of proofs: length-prefixed sub-proof blobs with 1-byte kind
tags, in canonical order (bits a, bits c, Hamming, decode, info bits, OWF)."""

import struct

import numpy as np

from .bits import BitProof
from .compose import FullProof
from .decode import DecodeProof
from .hamming import HammingProof
from .owf import OwfProof
from .shuffle import ShuffleProof

K_BITS_A, K_BITS_C, K_HAMMING, K_DECODE, K_BITS_INFO, K_OWF = 1, 2, 3, 4, 5, 6


class CodecError(ValueError):
    pass


class Writer:
    def __init__(self, params):
        self.grp = params.group
        self.iw = (params.n.bit_length() + 7) // 8
        self.parts = []

    def u32(self, v):
        self.parts.append(struct.pack('>I', v))

    def num(self, v):
        self.parts.append(v.to_bytes(self.iw, 'big'))

    def nums(self, vs):
        self.u32(len(vs))
        self.parts.append(b''.join(v.to_bytes(self.iw, 'big') for v in vs))

    def e1(self, vs):
        self.u32(len(vs))
        self.parts.append(b''.join(self.grp.enc1(v) for v in vs))

    def e2(self, vs):
        self.u32(len(vs))
        self.parts.append(b''.join(self.grp.enc2(v) for v in vs))

    def bits(self, vs):
        self.u32(len(vs))
        self.parts.append(np.packbits(np.asarray(vs, dtype=np.uint8), bitorder='little').tobytes())

    def perm(self, vs):
        self.u32(len(vs))
        self.parts.append(np.asarray(vs, dtype='>u4').tobytes())

    def getvalue(self):
        return b''.join(self.parts)


class Reader:
    def __init__(self, params, data):
        self.grp = params.group
        self.iw = (params.n.bit_length() + 7) // 8
        self.ew = 2 * self.grp.width
        self.data = memoryview(data)
        self.pos = 0

    def take(self, k):
        if self.pos + k > len(self.data):
            raise CodecError('truncated proof')
        b = bytes(self.data[self.pos:self.pos + k])
        self.pos += k
        return b

    def u32(self):
        return struct.unpack('>I', self.take(4))[0]

    def num(self):
        return int.from_bytes(self.take(self.iw), 'big')

    def nums(self):
        k = self.u32()
        b = self.take(k * self.iw)
        w = self.iw
        return [int.from_bytes(b[i * w:(i + 1) * w], 'big') for i in range(k)]

    def e1(self):
        k = self.u32()
        b = self.take(k * self.ew)
        w = self.ew
        return [self.grp.dec1(b[i * w:(i + 1) * w]) for i in range(k)]

    def e2(self):
        k = self.u32()
        b = self.take(k * self.ew)
        w = self.ew
        return [self.grp.dec2(b[i * w:(i + 1) * w]) for i in range(k)]

    def bits(self):
        k = self.u32()
        b = self.take((k + 7) // 8)
        return np.unpackbits(np.frombuffer(b, dtype=np.uint8), count=k, bitorder='little').tolist()

    def perm(self):
        k = self.u32()
        return np.frombuffer(self.take(4 * k), dtype='>u4').astype(np.int64).tolist()

    def done(self):
        if self.pos != len(self.data):
            raise CodecError('trailing bytes in proof')


def _put_bits(w, bp):
    flat_t = [t for cr in bp.commits for pair in cr for t in pair]
    w.u32(len(bp.commits))
    w.u32(len(bp.commits[0]) if bp.commits else 0)
    w.e1(flat_t)
    w.bits([e0 for rr in bp.responses for e0, _, _ in rr])
    w.nums([z for rr in bp.responses for _, z0, z1 in rr for z in (z0, z1)])


def _get_bits(r):
    count, lam = r.u32(), r.u32()
    ts = r.e1()
    e0 = r.bits()
    zs = r.nums()
    if len(ts) != 2 * count * lam or len(e0) != count * lam or len(zs) != 2 * count * lam:
        raise CodecError('bit proof size mismatch')
    commits, resp = [], []
    for i in range(count):
        commits.append([(ts[2 * (i * lam + j)], ts[2 * (i * lam + j) + 1]) for j in range(lam)])
        resp.append([(e0[i * lam + j], zs[2 * (i * lam + j)], zs[2 * (i * lam + j) + 1]) for j in range(lam)])
    return BitProof(commits, resp)


def _blob(params, kind, fill):
    w = Writer(params)
    fill(w)
    body = w.getvalue()
    return bytes([kind]) + struct.pack('>I', len(body)) + body


def encode_full(params, proof):
    hp, dp, op = proof.hamming, proof.decode, proof.owf

    def ham_core(w):
        w.e1(hp.c)
        w.e2(hp.shuffled_f)
        w.u32(len(hp.shuffle_proof.aux))
        for A, (perm, rer) in zip(hp.shuffle_proof.aux, hp.shuffle_proof.responses):
            w.e2(A)
            w.perm(perm)
            w.nums(rer)
        w.u32(hp.zero_index)
        w.num(hp.zero_rand)

    def dec_core(w):
        w.e1(dp.enc_info)
        w.nums(dp.openings)

    def owf_core(w):
        w.num(op.r_open)
        w.e1([x for x, _ in op.rounds])
        w.nums([z for _, z in op.rounds])

    return b''.join([
        _blob(params, K_BITS_A, lambda w: _put_bits(w, hp.bits_a)),
        _blob(params, K_BITS_C, lambda w: _put_bits(w, hp.bits_c)),
        _blob(params, K_HAMMING, ham_core),
        _blob(params, K_DECODE, dec_core),
        _blob(params, K_BITS_INFO, lambda w: _put_bits(w, dp.info_bits)),
        _blob(params, K_OWF, owf_core),
    ])


def decode_full(params, data):
    mv = memoryview(data)
    pos = 0
    blobs = []
    for kind in (K_BITS_A, K_BITS_C, K_HAMMING, K_DECODE, K_BITS_INFO, K_OWF):
        if pos + 5 > len(mv) or mv[pos] != kind:
            raise CodecError('expected sub-proof kind %d' % kind)
        ln = struct.unpack('>I', bytes(mv[pos + 1:pos + 5]))[0]
        if pos + 5 + ln > len(mv):
            raise CodecError('truncated sub-proof')
        blobs.append(Reader(params, bytes(mv[pos + 5:pos + 5 + ln])))
        pos += 5 + ln
    if pos != len(mv):
        raise CodecError('trailing bytes after proof')
    ra, rc, rh, rd, ri, ro = blobs
    bits_a, bits_c = _get_bits(ra), _get_bits(rc)
    c = rh.e1()
    F = rh.e2()
    lam = rh.u32()
    aux, resp = [], []
    for _ in range(lam):
        aux.append(rh.e2())
        resp.append((rh.perm(), rh.nums()))
    k = rh.u32()
    zr = rh.num()
    enc_info = rd.e1()
    openings = rd.nums()
    info_bits = _get_bits(ri)
    r_open = ro.num()
    ws = ro.e1()
    zs = ro.nums()
    if len(ws) != len(zs):
        raise CodecError('owf round mismatch')
    for b in blobs:
        b.done()
    hp = HammingProof(c, bits_a, bits_c, F, ShuffleProof(aux, resp), k, zr)
    return FullProof(hp, DecodeProof(enc_info, info_bits, openings), OwfProof(r_open, list(zip(ws, zs))))
