"""The composed query proof over one shared transcript."""

from dataclasses import dataclass

from . import decode as dec
from . import hamming as ham
from . import owf
from .common import Verdict, rng_or_default


@dataclass
class FullProof:
    hamming: ham.HammingProof
    decode: dec.DecodeProof
    owf: owf.OwfProof


@dataclass
class ProverInputs:
    b: list          # filter bits
    r: list          # randomizers of a
    d: list          # codeword bits
    rc: list         # randomizers of c
    x: tuple         # information word
    rx: list         # randomizers of enc_info
    kappa: int
    s: int


def compose_prove(params, theta, a, inp, spec, delta, lam, tr, rng=None):
    rng = rng_or_default(rng)
    grp = params.group
    c = [grp.mul(grp.gpow(int(v)), grp.hpow(r)) for v, r in zip(inp.d, inp.rc)]
    hp = ham.prove_hamming(params, theta, inp.b, inp.r, inp.d, inp.rc, a, c, delta, lam, tr, rng)
    dp = dec.prove_decode(params, theta, c, inp.d, inp.rc, inp.x, inp.rx, spec, lam, tr, rng)
    x_int = sum(int(v) << i for i, v in enumerate(inp.x))
    op = owf.prove_owf(params, inp.kappa, inp.s, x_int, inp.rx, lam, tr, rng)
    return FullProof(hp, dp, op)


def compose_verify(params, a, C, s_hat, proof, spec, delta, lam, tr):
    """C and s_hat are raw level-1 elements. Returns a Verdict naming the first
    failing sub-proof."""
    try:
        if not ham.verify_hamming(params, a, proof.hamming, delta, lam, tr):
            return Verdict(False, 'hamming')
        if not dec.verify_decode(params, proof.hamming.c, proof.decode, spec, lam, tr):
            return Verdict(False, 'decode')
        if not owf.verify_owf(params, s_hat, C, proof.decode.enc_info, proof.owf, lam, tr):
            return Verdict(False, 'owf')
    except (ValueError, IndexError, TypeError) as e:
        return Verdict(False, 'malformed', str(e))
    return Verdict(True)
