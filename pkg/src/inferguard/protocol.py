"""End-to-end matching protocol: the client encrypts its Bloom filter and
proves the fuzzy commitment matches it; the server checks the proof, applies
inference control and returns one encrypted Hamming distance per database
entry."""

import random
import secrets
import threading
from dataclasses import dataclass

from . import bgn, fuzzycommit as fc, grams, rmcode
from .zkp import Transcript, compose_prove, compose_verify
from .zkp.compose import ProverInputs

CONFIG_MISMATCH = 'config_mismatch'
VERDICTS = fc.VERDICTS + (CONFIG_MISMATCH,)


class ClientRefusal(ValueError):
    """The filter lies farther than delta from its codeword; no honest proof exists."""

    def __init__(self, distance, delta):
        super().__init__('filter is %d bits from its codeword (delta=%d)' % (distance, delta))
        self.distance = distance
        self.delta = delta


class ProtocolCorruption(ValueError):
    pass


@dataclass
class QueryMessage:
    client_id: str
    a: list                      # raw level-1 elements
    commitment: fc.FuzzyCommitment
    proof: object                # FullProof or None
    config_digest: bytes


@dataclass
class ResponseMessage:
    verdict: str
    distances: list              # CipherL1 per database entry, empty unless answered

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError('bad verdict %r' % self.verdict)
        if bool(self.distances) and self.verdict != fc.ANSWERED:
            raise ValueError('distances only accompany an answered verdict')


@dataclass
class ClientState:
    filter: grams.BloomFilter
    info_word: tuple
    codeword_distance: int


@dataclass
class ClientKeys:
    params: bgn.PublicParams
    sk: bgn.PrivateKey
    owf: fc.OwfKey


def client_keys(config, seed=None):
    params, sk = bgn.gen_params(config.bit_size, max(config.resolved_l(), 1 << 15), seed,
                                backend=config.backend)
    owf_seed = None if seed is None else random.Random('owf/%s' % seed)
    return ClientKeys(params, sk, fc.owf_setup(params, owf_seed))


def _transcript(ctx, coins=None):
    return Transcript(ctx.config.transcript, coins=coins)


def client_build_query(genome, ctx, keys, client_id='client', rng=None, prove=True, coins=None,
                       filt=None, tr=None):
    """Returns (QueryMessage, ClientState)."""
    rng = rng or secrets.SystemRandom()
    params = keys.params
    grp = params.group
    n = params.n
    bf = filt if filt is not None else ctx.filter(genome)
    b = bf.bits.tolist()
    x, dvec = rmcode.reencode(ctx.spec, bf.bits)
    dist = grams.hamming(bf, grams.BloomFilter(dvec.copy(), bf.l, bf.hash_seed))
    if prove and dist > ctx.delta:
        raise ClientRefusal(dist, ctx.delta)
    r = [rng.randrange(n) for _ in b]
    a = [grp.mul(grp.gpow(v), grp.hpow(ri)) for v, ri in zip(b, r)]
    C = fc.commit(params, keys.owf, x)
    proof = None
    if prove:
        d = dvec.tolist()
        rc = [rng.randrange(n) for _ in d]
        rx = [rng.randrange(n) for _ in x]
        inp = ProverInputs(b, r, d, rc, x, rx, keys.owf.kappa, keys.owf.s)
        tr = tr or _transcript(ctx, coins)
        proof = compose_prove(params, keys.sk.theta, a, inp, ctx.spec, ctx.delta, ctx.config.lam, tr, rng)
    msg = QueryMessage(client_id, a, C, proof, ctx.digest())
    return msg, ClientState(bf, x, dist)


def encrypted_distance(params, a, bB, rng=None):
    """E(sum b_A xor b_B): a_i where b_B = 0, g a_i^-1 where b_B = 1, multiplied,
    then rerandomized."""
    grp = params.group
    acc = grp.one
    ones = 0
    for ai, bit in zip(a, bB):
        if bit:
            acc = grp.mul(acc, grp.inv(ai))
            ones += 1
        else:
            acc = grp.mul(acc, ai)
    acc = grp.mul(acc, grp.gpow(ones))
    if rng is not None:
        acc = grp.mul(acc, grp.hpow(rng.randrange(params.n)))
    return bgn.CipherL1(acc, params)


def server_handle(query, db, store, ctx, params, s_hat, require_proof=True, rng=None, tr=None):
    """Check order: config digest, proof, similarity, budget. The server holds
    no private key."""
    if query.config_digest != ctx.digest() or len(query.a) != ctx.l:
        return ResponseMessage(CONFIG_MISMATCH, [])
    cb = query.commitment.to_bytes()
    if require_proof:
        ok = query.proof is not None
        if ok:
            vt = tr.verifier_view() if tr is not None else _transcript(ctx)
            ok = compose_verify(params, query.a, query.commitment.element.element, s_hat.element,
                                query.proof, ctx.spec, ctx.delta, ctx.config.lam, vt).ok
        if not ok:
            store.record(query.client_id, cb, fc.REJECTED_PROOF)
            return ResponseMessage(fc.REJECTED_PROOF, [])
    verdict = store.check_and_record(query.client_id, cb)
    if verdict != fc.ANSWERED:
        return ResponseMessage(verdict, [])
    rng = rng or secrets.SystemRandom()
    return ResponseMessage(fc.ANSWERED, [encrypted_distance(params, query.a, f.bits.tolist(), rng) for f in db])


def client_decrypt_response(resp, sk, bound):
    if resp.verdict != fc.ANSWERED:
        raise ValueError('response not answered: %s' % resp.verdict)
    out = []
    for c in resp.distances:
        try:
            out.append(bgn.decrypt(sk, c, bound))
        except bgn.OutOfRange:
            raise ProtocolCorruption('distance outside [0, %d]' % bound)
    return out


class Server:
    """Server state: database filters, history, and per-client pinned
    parameters and s_hat from setup."""

    def __init__(self, ctx, db_filters, store, require_proof=True, seed=None):
        self.ctx = ctx
        self.db = db_filters
        self.store = store
        self.require_proof = require_proof
        self.clients = {}
        self._lock = threading.Lock()
        self.rng = random.Random(seed) if seed is not None else secrets.SystemRandom()

    def register(self, client_id, params, sk_disclosed, s_hat):
        """Setup: validate the disclosed key material, pin params and s_hat,
        keep nothing secret."""
        if not bgn.validate_disclosure(params, sk_disclosed):
            return False
        if s_hat.params != params:
            return False
        with self._lock:
            if client_id in self.clients and self.clients[client_id][1].to_bytes() != s_hat.to_bytes():
                # s_hat is pinned for the life of the history
                return False
            self.clients[client_id] = (params, s_hat)
        return True

    def session(self, client_id):
        with self._lock:
            return self.clients.get(client_id)

    def handle(self, query, tr=None):
        sess = self.session(query.client_id)
        if sess is None:
            return ResponseMessage(CONFIG_MISMATCH, [])
        params, s_hat = sess
        return server_handle(query, self.db, self.store, self.ctx, params, s_hat,
                             self.require_proof, self.rng, tr)
