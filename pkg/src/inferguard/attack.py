"""Goodrich's Mastermind-style genome extraction attack, the randomized
multi-round variant, and the Bloom-filter sensitivity scans used to pick a
detection threshold.

Counting model: with reference r0 and deviation strings r_k (every character
shifted k places in the alphabet), each position of the target matches
exactly one r_k. For a segment S, c_k(S) counts positions in S where r_k
matches. Querying r0 with S replaced by r_k gives a score whose difference
to score(r0) is c_k(S) - c_0(S) under a black-peg (Hamming) score.
"""

import csv
import io
import random
import statistics
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import bgn, fuzzycommit as fc, genomes, grams, protocol

FIRST_WITHHELD, SKIP = 'first_withheld', 'skip'


class OracleFailure(RuntimeError):
    pass


class ScoreOracle:
    """answer(query) -> int score, or None when withheld."""

    def __init__(self):
        self.issued = 0
        self.answered = 0
        self.withheld = 0

    def _count(self, score):
        self.issued += 1
        if score is None:
            self.withheld += 1
        else:
            self.answered += 1
        return score


class StringOracle(ScoreOracle):
    """Plaintext oracle over the target string.

    metric: 'hamming' (black-peg score), 'edit' (Levenshtein) or 'bloom'
    (Hamming distance of the Bloom filters under ctx).
    detect: a query is withheld when its string Hamming distance to some
    earlier submission is below detect (0 disables detection).
    budget: maximum number of answered queries (None = unlimited).
    """

    def __init__(self, target, metric='hamming', detect=0, budget=None, ctx=None):
        super().__init__()
        self.target = target
        self.metric = metric
        self.detect = detect
        self.budget = budget
        self.ctx = ctx
        self._tcode = _codes(target)
        # raw codes, plus a 2-bit packed copy while every query is pure ACGT
        self._raw = np.zeros((64, len(target)), dtype=np.uint8)
        self._hist = np.zeros((64, -(-len(target) // 32)), dtype=np.uint64)
        self._nh = 0
        self._wide = False
        if metric == 'bloom':
            self._tf = ctx.filter(target)

    def _similar(self, qc):
        if self.detect <= 0 or self._nh == 0:
            return False
        if self._wide or not _narrow(qc):
            d = np.count_nonzero(self._raw[:self._nh] != qc, axis=1)
        else:
            z = self._hist[:self._nh] ^ self._pack(qc)
            d = np.bitwise_count((z | (z >> np.uint64(1))) & _LOW).sum(axis=1, dtype=np.int64)
        return bool((d < self.detect).any())

    @staticmethod
    def _pack(qc):
        buf = np.zeros(-(-len(qc) // 32) * 32, dtype=np.uint8)
        buf[:len(qc)] = qc - 1
        b = buf.reshape(-1, 4)
        return (b[:, 0] | b[:, 1] << 2 | b[:, 2] << 4 | b[:, 3] << 6).view(np.uint64)

    def _remember(self, qc):
        if self.detect <= 0:
            return
        if self._nh == len(self._raw):
            self._raw = np.concatenate([self._raw, np.zeros_like(self._raw)])
            self._hist = np.concatenate([self._hist, np.zeros_like(self._hist)])
        self._raw[self._nh] = qc
        self._wide = self._wide or not _narrow(qc)
        if not self._wide:
            self._hist[self._nh] = self._pack(qc)
        self._nh += 1

    def score(self, q):
        if self.metric == 'hamming':
            return int(np.count_nonzero(_codes(q) != self._tcode))
        if self.metric == 'edit':
            return grams.edit_distance(q, self.target)
        if self.metric == 'bloom':
            return grams.hamming(self.ctx.filter(q), self._tf)
        raise ValueError('unknown metric %r' % self.metric)

    def answer(self, q):
        if len(q) != len(self.target):
            raise OracleFailure('query length mismatch')
        qc = _codes(q)
        if self._similar(qc):
            self._remember(qc)
            return self._count(None)
        self._remember(qc)
        if self.budget is not None and self.answered >= self.budget:
            return self._count(None)
        return self._count(self.score(q))


class ProtocolOracle(ScoreOracle):
    """Runs each query through the protocol: client query construction, the
    server's proof check and inference control (commitment equality), and
    client decryption. The server database holds the target.

    exact_score returns the plaintext string Hamming distance for answered
    queries instead of the Bloom distance, keeping detection unchanged.
    """

    def __init__(self, target, ctx, keys=None, budget=None, prove=False, exact_score=False,
                 seed=0, client_id='attacker'):
        super().__init__()
        self.target = target
        self.ctx = ctx
        self.exact_score = exact_score
        self.prove = prove
        self.rng = random.Random(seed)
        if keys is None:
            cfg = ctx.config
            params, sk = bgn.gen_params(cfg.bit_size, max(ctx.l, 1 << 15), random.Random(seed), backend='mock')
            keys = protocol.ClientKeys(params, sk, fc.owf_setup(params, random.Random(seed + 1)))
        self.keys = keys
        self.store = fc.HistoryStore(budget if budget is not None else 1 << 62)
        self.server = protocol.Server(ctx, [ctx.filter(target)], self.store, require_proof=prove, seed=seed)
        if not self.server.register(client_id, keys.params, keys.sk, keys.owf.s_hat):
            raise OracleFailure('setup rejected')
        self.client_id = client_id
        self._tcode = _codes(target)

    def answer(self, q):
        try:
            msg, _ = protocol.client_build_query(q, self.ctx, self.keys, self.client_id, self.rng,
                                                 prove=self.prove)
        except protocol.ClientRefusal as e:
            raise OracleFailure(str(e))
        resp = self.server.handle(msg)
        if resp.verdict != fc.ANSWERED:
            if resp.verdict in (protocol.CONFIG_MISMATCH, fc.REJECTED_PROOF):
                raise OracleFailure(resp.verdict)
            return self._count(None)
        d = protocol.client_decrypt_response(resp, self.keys.sk, self.ctx.l)[0]
        if self.exact_score:
            d = int(np.count_nonzero(_codes(q) != self._tcode))
        return self._count(d)


_CODE = np.zeros(256, dtype=np.uint8)
for _i, _c in enumerate(b'ACGTNRYSWKMBDHV#'):
    _CODE[_c] = _i + 1


_LOW = np.uint64(0x5555555555555555)


def _narrow(qc):
    return qc.min() >= 1 and qc.max() <= 4


def _codes(s):
    return _CODE[np.frombuffer(s.encode('latin-1'), dtype=np.uint8)]


@dataclass
class AttackResult:
    guess: str
    accuracy: float
    queries_issued: int
    queries_answered: int
    trace: list = field(default_factory=list)
    fallback_queries: int = 0
    votes: object = None
    aborted: str = ''


def accuracy(guess, target):
    if not target:
        return 0.0
    return sum(1 for a, b in zip(guess, target) if a == b) / len(target)


def deviation_strings(r0, alphabet):
    """r_k for k = 0..j-1: each character moved k places further in the alphabet."""
    j = len(alphabet)
    idx = {c: i for i, c in enumerate(alphabet)}
    return [''.join(alphabet[(idx[c] + k) % j] for c in r0) for k in range(j)]


def _solve(size, active, d):
    """Counts c_k for a segment of `size` positions given d_k = c_k - c_0 (when
    0 is active) or d_k = c_k (otherwise) for active k except the pivot.
    Returns (counts, consistent)."""
    pivot = active[0]
    if pivot == 0:
        num = size - sum(d.values())
        c0, rem = divmod(num, len(active))
        counts = {0: c0}
        for k in active[1:]:
            counts[k] = d[k] + c0
        ok = rem == 0
    else:
        counts = dict(d)
        counts[pivot] = size - sum(d.values())
        ok = True
    ok = ok and all(0 <= v <= size for v in counts.values())
    return counts, ok


def _clamp(counts, size):
    c = {k: max(0, min(size, v)) for k, v in counts.items()}
    return c


def goodrich_attack(oracle, alphabet, length, r0, stop_rule=FIRST_WITHHELD, target=None,
                    max_queries=None, requery=True):
    """Breadth-first halving over segments. Returns AttackResult with a
    per-position vote matrix (soft votes c_k/|S| on unresolved segments)."""
    j = len(alphabet)
    if j < 2:
        raise ValueError('alphabet needs at least two characters')
    if len(r0) != length:
        raise ValueError('reference length mismatch')
    devs = deviation_strings(r0, alphabet)
    aidx = {c: i for i, c in enumerate(alphabet)}
    dev_codes = np.array([[aidx[c] for c in s] for s in devs], dtype=np.int64)
    votes = np.zeros((length, j))
    result = AttackResult('', 0.0, 0, 0)
    start_issued, start_answered = oracle.issued, oracle.answered
    fallback = 0
    stopped = ''

    def ask(q):
        if max_queries is not None and oracle.issued - start_issued >= max_queries:
            return None
        return oracle.answer(q)

    def query_segment(lo, hi, k):
        return r0[:lo] + devs[k][lo:hi] + r0[hi:]

    frontier = []   # (lo, hi, counts) finished segments
    try:
        H0 = ask(r0)
        if H0 is None:
            stopped = 'withheld'
        else:
            d = {}
            for k in range(1, j):
                s = ask(devs[k])
                if s is None:
                    stopped = 'withheld'
                    break
                d[k] = H0 - s
            if not stopped:
                counts, ok = _solve(length, list(range(j)), d)
                queue = deque([(0, length, _clamp(counts, length))])
                while queue:
                    lo, hi, counts = queue.popleft()
                    active = [k for k in sorted(counts) if counts[k] > 0]
                    if stopped or hi - lo == 1 or len(active) <= 1:
                        frontier.append((lo, hi, counts))
                        continue
                    mid = (lo + hi) // 2
                    d = {}
                    for k in active[1:]:
                        s = ask(query_segment(lo, mid, k))
                        if s is None:
                            break
                        d[k] = H0 - s
                    if len(d) < len(active) - 1:
                        if stop_rule == FIRST_WITHHELD:
                            stopped = 'withheld'
                        frontier.append((lo, hi, counts))
                        continue
                    left, ok = _solve(mid - lo, active, d)
                    right = {k: counts[k] - left.get(k, 0) for k in active}
                    if not ok or any(not 0 <= v <= hi - mid for v in right.values()):
                        if not requery:
                            left = _clamp(left, mid - lo)
                            right = _clamp({k: counts[k] - left[k] for k in active}, hi - mid)
                        else:
                            # scores are not black-peg consistent: measure the right
                            # half directly instead of deriving it
                            dr = {}
                            for k in active[1:]:
                                s = ask(query_segment(mid, hi, k))
                                fallback += 1
                                if s is None:
                                    break
                                dr[k] = H0 - s
                            left = _clamp(left, mid - lo)
                            if len(dr) == len(active) - 1:
                                right = _clamp(_solve(hi - mid, active, dr)[0], hi - mid)
                            else:
                                right = _clamp({k: counts[k] - left[k] for k in active}, hi - mid)
                    queue.append((lo, mid, left))
                    queue.append((mid, hi, right))
                frontier.extend(queue)
    except OracleFailure as e:
        stopped = 'oracle failure: %s' % e
    for lo, hi, counts in frontier:
        size = hi - lo
        tot = sum(counts.values()) or 1
        for k, c in counts.items():
            if c <= 0:
                continue
            w = c / tot if tot != size else c / size
            cols = dev_codes[k, lo:hi]
            votes[np.arange(lo, hi), cols] += w
    guess = ''.join(alphabet[i] for i in np.argmax(votes, axis=1))
    result.guess = guess
    result.votes = votes
    result.queries_issued = oracle.issued - start_issued
    result.queries_answered = oracle.answered - start_answered
    result.fallback_queries = fallback
    result.aborted = stopped if stopped.startswith('oracle') else ''
    tgt = target if target is not None else getattr(oracle, 'target', None)
    if tgt is not None:
        result.accuracy = accuracy(guess, tgt)
        result.trace = [result.accuracy]
    return result


def randomized_attack(oracle, rounds, entropy, alphabet='ACGT', length=None, stop_rule=FIRST_WITHHELD,
                      target=None, max_queries=None):
    """Fresh random r0 per round; per-position votes accumulate across rounds
    and the guess is the plurality (ties to the earlier alphabet character)."""
    if rounds < 1:
        raise ValueError('rounds must be >= 1')
    rng = entropy if isinstance(entropy, random.Random) else random.Random(entropy)
    tgt = target if target is not None else getattr(oracle, 'target', None)
    length = length or len(tgt)
    total = np.zeros((length, len(alphabet)))
    trace = []
    issued0, answered0 = oracle.issued, oracle.answered
    aborted = ''
    guess = ''
    for _ in range(rounds):
        r0 = genomes.random_genome(length, rng, alphabet)
        left = None if max_queries is None else max_queries - (oracle.issued - issued0)
        if left is not None and left <= 0:
            break
        res = goodrich_attack(oracle, alphabet, length, r0, stop_rule, tgt, max_queries=left)
        total += res.votes
        guess = ''.join(alphabet[i] for i in np.argmax(total, axis=1))
        if tgt is not None:
            trace.append(accuracy(guess, tgt))
        if res.aborted:
            aborted = res.aborted
            break
    return AttackResult(guess, trace[-1] if trace else 0.0, oracle.issued - issued0,
                        oracle.answered - answered0, trace, votes=total, aborted=aborted)


# sensitivity analysis

def sensitivity_scan(base, u, gap, ctx, rng=None):
    """Bit changes caused by u substitutions spaced `gap` apart."""
    if u == 0:
        return 0
    rng = rng or random.Random(0)
    mutated = genomes.spaced_substitutions(base, u, gap, rng, alphabet=ctx.config.alphabet)
    return grams.hamming(ctx.filter(base), ctx.filter(mutated))


def sensitivity_curve(ctx, gaps, u, trials, seed=0, bases=None):
    """Rows (gap, u, mean_bits, std_bits)."""
    rng = random.Random(seed)
    bases = bases or ctx.population(trials, seed)
    rows = []
    for gap in gaps:
        vals = [sensitivity_scan(bases[t % len(bases)], u, gap, ctx, rng) for t in range(trials)]
        rows.append((gap, u, statistics.fmean(vals), statistics.pstdev(vals)))
    return rows


def mean_bits(ctx, u, gap, trials, seed=0, bases=None):
    rng = random.Random(seed)
    bases = bases or ctx.population(min(trials, 20), seed)
    return statistics.fmean(sensitivity_scan(bases[t % len(bases)], u, gap, ctx, rng) for t in range(trials))


def detection_threshold_table(ctx, thresholds, trials=20, max_u=80, seed=0, scattered_gap=None):
    """For each bit threshold T: the largest consecutive-edit count and the
    largest scattered-edit count (gap >= qmax) whose mean filter change stays
    within T, for every smaller count as well."""
    gap = scattered_gap or ctx.config.qmax
    bases = ctx.population(min(trials, 20), seed)
    L = len(bases[0])
    cons = [0.0]
    scat = [0.0]
    top = max(thresholds)
    u = 1
    while u <= max_u and (cons[-1] <= top or scat[-1] <= top):
        cons.append(mean_bits(ctx, u, 1, trials, seed + u, bases) if cons[-1] <= top else float('inf'))
        if scat[-1] <= top and (u - 1) * gap < L:
            scat.append(mean_bits(ctx, u, gap, trials, seed + 1000 + u, bases))
        else:
            scat.append(float('inf'))
        u += 1
    rows = []
    for T in thresholds:
        rows.append((T, _max_within(cons, T), _max_within(scat, T)))
    return rows, cons, scat


def _max_within(curve, T):
    u = 0
    while u + 1 < len(curve) and curve[u + 1] <= T:
        u += 1
    return u


# experiment runners

ATTACK_HEADER = ['threshold', 'round', 'seed', 'queries_issued', 'queries_answered', 'accuracy']
SENS_HEADER = ['gap', 'u', 'mean_bits', 'std_bits']


def attack_experiment(thresholds, seeds, length=1024, rounds=1, budget=None, alphabet='ACGT',
                      metric='hamming', ctx=None, seed_base=0):
    """Rows for the attack CSV; one row per (threshold, seed, round)."""
    rows = []
    for T in thresholds:
        for s in range(seeds):
            seed = seed_base + s
            rng = random.Random(seed)
            target = genomes.random_genome(length, rng, alphabet)
            oracle = StringOracle(target, metric=metric, detect=T, budget=budget, ctx=ctx)
            res = randomized_attack(oracle, rounds, random.Random(seed + 10 ** 6), alphabet)
            for rd, acc in enumerate(res.trace, 1):
                rows.append((T, rd, seed, res.queries_issued, res.queries_answered, acc))
    return rows


def to_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator='\n')
    w.writerow(header)
    for r in rows:
        w.writerow(['%.6f' % v if isinstance(v, float) else v for v in r])
    return buf.getvalue()
