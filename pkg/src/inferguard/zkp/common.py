"""Shared helpers: openings (plaintext, randomizer) tracked by the prover
alongside the group elements the verifier computes."""

import secrets


class Op:
    """Opening of a ciphertext: plaintext x and randomizer r, both mod n."""
    __slots__ = ('x', 'r')

    def __init__(self, x, r):
        self.x = x
        self.r = r

    def __repr__(self):
        return 'Op(%d, %d)' % (self.x, self.r)


def op_pair(a, b, theta, n):
    # e(g^x h^r, g^y h^s) = G^{xy} H^{xs + yr + theta rs}
    return Op(a.x * b.x % n, (a.x * b.r + b.x * a.r + theta * a.r * b.r) % n)


def op_add(a, b, n):
    return Op((a.x + b.x) % n, (a.r + b.r) % n)


def op_mul(a, k, n):
    return Op(a.x * k % n, a.r * k % n)


def rng_or_default(rng):
    return rng if rng is not None else secrets.SystemRandom()


def enc_list(grp, elems, level=1):
    f = grp.enc1 if level == 1 else grp.enc2
    return b''.join(f(e) for e in elems)


class Verdict:
    def __init__(self, ok, failed=None, detail=''):
        self.ok = ok
        self.failed = failed
        self.detail = detail

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return 'Verdict(ok)' if self.ok else 'Verdict(failed=%s %s)' % (self.failed, self.detail)
