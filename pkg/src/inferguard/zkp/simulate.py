"""Honest-verifier simulators. Each returns (transcript, proof) produced
without secret inputs; the verifier's coins come from challenge_source and
are recorded so the verifier replays them."""

from . import bits as bitproofs
from . import hamming as ham
from . import owf
from . import shuffle
from .common import enc_list
from .transcript import INTERACTIVE, Transcript, bits_of


def simulate_transcript(kind, public, challenge_source=None, rng=None):
    """kind: 'bit', 'shuffle', 'owf_phase2' or 'hamming'.

    public inputs:
      bit         params, cs, lam
      shuffle     params, inp, out, lam
      owf_phase2  params, U, lam
      hamming     params, a, delta, lam
    """
    tr = Transcript(INTERACTIVE, coins=challenge_source)
    params, lam = public['params'], public['lam']
    if kind == 'bit':
        cs = public['cs']
        nb = lam * len(cs)
        v = tr.draw(nb)
        proof = bitproofs.simulate(params, cs, lam, bits_of(v, nb), rng)
        bitproofs.absorb(tr, params, 'bits', proof.commits)
        tr.record('bits', v, nb)
    elif kind == 'shuffle':
        v = tr.draw(lam)
        proof = shuffle.simulate(params, public['inp'], public['out'], lam, bits_of(v, lam), rng)
        shuffle.absorb(tr, params, proof.aux)
        tr.record('shuffle', v, lam)
    elif kind == 'owf_phase2':
        v = tr.draw(lam)
        proof = owf.simulate_phase2(params, public['U'], bits_of(v, lam), rng)
        tr.append('owf:w', enc_list(params.group, [w for w, _ in proof]))
        tr.record('owf', v, lam)
    elif kind == 'hamming':
        proof = ham.simulate(params, public['a'], public['delta'], lam, tr, rng)
    else:
        raise ValueError('unknown proof kind %r' % kind)
    return tr, proof


def verify_simulated(kind, public, tr, proof):
    params, lam = public['params'], public['lam']
    vt = tr.verifier_view()
    if kind == 'bit':
        return bitproofs.verify_bits(params, public['cs'], proof, lam, vt, 'bits')
    if kind == 'shuffle':
        return shuffle.verify_shuffle(params, public['inp'], public['out'], proof, lam, vt)
    if kind == 'owf_phase2':
        vt.append('owf:w', enc_list(params.group, [w for w, _ in proof]))
        chal = bits_of(vt.challenge('owf', lam), lam)
        return owf.check(params, public['U'], [w for w, _ in proof], chal, [z for _, z in proof])
    if kind == 'hamming':
        return ham.verify_hamming(params, public['a'], proof, public['delta'], lam, vt)
    raise ValueError('unknown proof kind %r' % kind)
