"""Proof transcripts. Interactive mode draws challenges from a coin source
(the verifier); fiat_shamir mode hashes the transcript prefix."""

import hashlib
import random
import secrets

INTERACTIVE, FIAT_SHAMIR = 'interactive', 'fiat_shamir'


class TranscriptError(ValueError):
    pass


class FixedCoins:
    """Coin source replaying a given sequence of challenge integers."""

    def __init__(self, values):
        self.values = list(values)

    def getrandbits(self, k):
        if not self.values:
            raise TranscriptError('fixed coin source exhausted')
        return self.values.pop(0) & ((1 << k) - 1)


class Transcript:
    def __init__(self, mode=INTERACTIVE, coins=None, domain=b'inferguard/v1'):
        if mode not in (INTERACTIVE, FIAT_SHAMIR):
            raise TranscriptError('unknown mode %r' % mode)
        self.mode = mode
        self.coins = coins if coins is not None else secrets.SystemRandom()
        if isinstance(self.coins, int):
            self.coins = random.Random(self.coins)
        self.messages = []
        self.challenges = []
        self._h = hashlib.sha256(domain)
        self._replay = None

    def append(self, label, data):
        if isinstance(data, str):
            data = data.encode()
        self.messages.append((label, data))
        lb = label.encode()
        self._h.update(len(lb).to_bytes(2, 'big') + lb + len(data).to_bytes(8, 'big'))
        self._h.update(data)

    def challenge(self, label, nbits):
        if self._replay is not None:
            if not self._replay:
                raise TranscriptError('no recorded challenge for %r' % label)
            lab, v = self._replay.pop(0)
            if lab != label:
                raise TranscriptError('challenge order mismatch: %r vs %r' % (lab, label))
        elif self.mode == FIAT_SHAMIR:
            seed = self._h.copy()
            seed.update(b'challenge:' + label.encode())
            base = seed.digest()
            out = b''
            ctr = 0
            while len(out) * 8 < nbits:
                out += hashlib.sha256(base + ctr.to_bytes(4, 'big')).digest()
                ctr += 1
            v = int.from_bytes(out, 'big') >> (len(out) * 8 - nbits) if nbits else 0
        else:
            v = self.coins.getrandbits(nbits) if nbits else 0
        self.record(label, v, nbits)
        return v

    def draw(self, nbits):
        """Simulator side: fix the verifier's coins before the commitments exist.
        Only meaningful for an honest verifier, hence interactive mode only."""
        if self.mode != INTERACTIVE:
            raise TranscriptError('simulation requires interactive mode')
        return self.coins.getrandbits(nbits) if nbits else 0

    def record(self, label, v, nbits):
        self.challenges.append((label, v))
        self.append('chal:' + label, v.to_bytes((nbits + 7) // 8, 'big'))

    def verifier_view(self):
        """Fresh transcript for the verifier. Fiat-Shamir recomputes challenges;
        interactive mode replays the coins this transcript issued."""
        t = Transcript(self.mode)
        if self.mode == INTERACTIVE:
            t._replay = list(self.challenges)
        return t


def bits_of(v, count):
    """Challenge integer -> list of `count` bits, most significant first."""
    return [(v >> (count - 1 - i)) & 1 for i in range(count)]
