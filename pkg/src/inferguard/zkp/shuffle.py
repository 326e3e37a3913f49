"""Cut-and-choose verifiable shuffle of level-2 ciphertexts.

Convention: out[k] = inp[pi[k]] * H^s[k]. Each of lam rounds publishes an
auxiliary shuffle aux[k] = inp[sigma[k]] * H^u[k]; challenge 0 opens
inp -> aux, challenge 1 opens aux -> out via tau = sigma^-1 o pi.
"""

from dataclasses import dataclass

from .common import enc_list, rng_or_default
from .transcript import bits_of


@dataclass
class ShuffleProof:
    aux: list         # lam lists of elements
    responses: list   # lam pairs (perm, rerands)


def apply(params, inp, perm, rer):
    grp = params.group
    return [grp.mul2(inp[perm[k]], grp.Hpow(rer[k])) for k in range(len(perm))]


def random_perm(N, rng):
    p = list(range(N))
    rng.shuffle(p)
    return p


def commit(params, inp, lam, rng=None):
    rng = rng_or_default(rng)
    N = len(inp)
    aux, state = [], []
    for _ in range(lam):
        sigma = random_perm(N, rng)
        u = [rng.randrange(params.n) for _ in range(N)]
        aux.append(apply(params, inp, sigma, u))
        state.append((sigma, u))
    return aux, state


def respond(params, state, pi, s, chal):
    out = []
    for (sigma, u), e in zip(state, chal):
        if e == 0:
            out.append((sigma, u))
        else:
            inv = [0] * len(sigma)
            for k, v in enumerate(sigma):
                inv[v] = k
            tau = [inv[pi[k]] for k in range(len(pi))]
            v = [(s[k] - u[tau[k]]) % params.n for k in range(len(pi))]
            out.append((tau, v))
    return out


def _is_perm(p, N):
    return len(p) == N and sorted(p) == list(range(N))


def check(params, inp, out, aux, chal, responses):
    N = len(inp)
    if len(out) != N or len(aux) != len(chal) or len(responses) != len(chal):
        return False
    for A, e, (perm, rer) in zip(aux, chal, responses):
        if len(A) != N or len(rer) != N or not _is_perm(perm, N):
            return False
        if e == 0:
            if apply(params, inp, perm, rer) != list(A):
                return False
        elif apply(params, A, perm, rer) != list(out):
            return False
    return True


def absorb(tr, params, aux):
    tr.append('shuffle:aux', b''.join(enc_list(params.group, A, 2) for A in aux))


def prove_shuffle(params, inp, out, pi, s, lam, tr, rng=None):
    aux, state = commit(params, inp, lam, rng)
    absorb(tr, params, aux)
    chal = bits_of(tr.challenge('shuffle', lam), lam)
    return ShuffleProof(aux, respond(params, state, pi, s, chal))


def verify_shuffle(params, inp, out, proof, lam, tr):
    if len(proof.aux) != lam:
        return False
    absorb(tr, params, proof.aux)
    chal = bits_of(tr.challenge('shuffle', lam), lam)
    return check(params, inp, out, proof.aux, chal, proof.responses)


def simulate(params, inp, out, lam, chal, rng=None):
    """Accepting proof for any (inp, out) given the challenges in advance."""
    rng = rng_or_default(rng)
    grp = params.group
    N = len(inp)
    aux, resp = [], []
    for e in chal:
        perm = random_perm(N, rng)
        rer = [rng.randrange(params.n) for _ in range(N)]
        if e == 0:
            A = apply(params, inp, perm, rer)
        else:
            # need out[k] = A[perm[k]] * H^rer[k]
            A = [None] * N
            for k in range(N):
                A[perm[k]] = grp.mul2(out[k], grp.Hpow(-rer[k]))
        aux.append(A)
        resp.append((perm, rer))
    return ShuffleProof(aux, resp)
