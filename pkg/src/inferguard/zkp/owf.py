"""Proof that the commitment E(x, kappa) uses the bitwise-encrypted x and the
key kappa pinned by s_hat = E(s, kappa).

Phase 1: X = prod enc_info[i]^(2^i) = E(x, R); X * C^-1 = E(0, R - kappa)
is opened as zero.
Phase 2: U = C * s_hat^-1 = E(x - s, 0) has a trivial randomizer. lam
rounds of w = g^rho, coin eta, response rho or rho + u.
"""

from dataclasses import dataclass

from .common import rng_or_default
from .transcript import bits_of


@dataclass
class OwfProof:
    r_open: int
    rounds: list   # (w, response)


def weighted(params, enc_info):
    grp = params.group
    X = grp.one
    for e in reversed(enc_info):
        X = grp.mul(grp.mul(X, X), e)
    return X


def phase1_element(params, enc_info, C):
    grp = params.group
    return grp.mul(weighted(params, enc_info), grp.inv(C))


def u_element(params, C, s_hat):
    grp = params.group
    return grp.mul(C, grp.inv(s_hat))


def commit(params, lam, rng=None):
    rng = rng_or_default(rng)
    grp = params.group
    rhos = [rng.randrange(params.n) for _ in range(lam)]
    return [grp.gpow(r) for r in rhos], rhos


def respond(params, rhos, u, chal):
    return [(r + e * u) % params.n for r, e in zip(rhos, chal)]


def check(params, U, ws, chal, resp):
    grp = params.group
    if len(ws) != len(chal) or len(resp) != len(chal):
        return False
    for w, e, z in zip(ws, chal, resp):
        if grp.gpow(z) != (grp.mul(w, U) if e else w):
            return False
    return True


def _w(params):
    return (params.n.bit_length() + 7) // 8


def prove_owf(params, kappa, s, x_int, rx, lam, tr, rng=None):
    n = params.n
    R = sum(r << i for i, r in enumerate(rx)) % n
    r_open = (R - kappa) % n
    tr.append('owf:open', r_open.to_bytes(_w(params), 'big'))
    ws, rhos = commit(params, lam, rng)
    tr.append('owf:w', b''.join(params.group.enc1(w) for w in ws))
    chal = bits_of(tr.challenge('owf', lam), lam)
    resp = respond(params, rhos, (x_int - s) % n, chal)
    tr.append('owf:z', b''.join(z.to_bytes(_w(params), 'big') for z in resp))
    return OwfProof(r_open, list(zip(ws, resp)))


def verify_owf(params, s_hat, C, enc_info, proof, lam, tr):
    grp = params.group
    if len(proof.rounds) != lam or not 0 <= proof.r_open < params.n:
        return False
    tr.append('owf:open', proof.r_open.to_bytes(_w(params), 'big'))
    if grp.hpow(proof.r_open) != phase1_element(params, enc_info, C):
        return False
    ws = [w for w, _ in proof.rounds]
    resp = [z for _, z in proof.rounds]
    tr.append('owf:w', b''.join(grp.enc1(w) for w in ws))
    chal = bits_of(tr.challenge('owf', lam), lam)
    if any(not 0 <= z < params.n for z in resp):
        return False
    tr.append('owf:z', b''.join(z.to_bytes(_w(params), 'big') for z in resp))
    return check(params, u_element(params, C, s_hat), ws, chal, resp)


def simulate_phase2(params, U, chal, rng=None):
    """Simulator: pick the response rho first; w = g^rho, or g^rho U^-1 when eta = 1."""
    rng = rng_or_default(rng)
    grp = params.group
    out = []
    for e in chal:
        rho = rng.randrange(params.n)
        w = grp.gpow(rho)
        if e:
            w = grp.mul(w, grp.inv(U))
        out.append((w, rho))
    return out
