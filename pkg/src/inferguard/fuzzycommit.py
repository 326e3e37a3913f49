"""Deterministic fuzzy commitment OWF(x, kappa) = E(x, kappa) and the
server-side history that drives inference control."""

import os
import threading
import time
from dataclasses import dataclass

from . import bgn
from .rmcode import word_to_int

ANSWERED = 'answered'
WITHHELD_SIMILAR = 'withheld_similar'
WITHHELD_BUDGET = 'withheld_budget'
REJECTED_PROOF = 'rejected_proof'
VERDICTS = (ANSWERED, WITHHELD_SIMILAR, WITHHELD_BUDGET, REJECTED_PROOF)

FRESH, SIMILAR = 'fresh', 'similar'
WITHIN, EXHAUSTED = 'within', 'exhausted'

DEFAULT_BUDGET = 35000


class StorageError(OSError):
    pass


@dataclass(frozen=True)
class OwfKey:
    kappa: int
    s: int
    s_hat: bgn.CipherL1


@dataclass(frozen=True)
class FuzzyCommitment:
    element: bgn.CipherL1

    def to_bytes(self):
        return self.element.to_bytes()

    @classmethod
    def from_bytes(cls, params, b):
        return cls(bgn.from_bytes(params, b))


def owf_setup(params, seed=None):
    rng = bgn._rng(seed)
    kappa = rng.randrange(1, params.n)
    s = rng.randrange(params.n)
    return OwfKey(kappa, s, bgn.encrypt1(params, s, kappa))


def commit(params, key, x):
    return FuzzyCommitment(bgn.encrypt1(params, word_to_int(x), key.kappa))


@dataclass(frozen=True)
class QueryRecord:
    client_id: str
    commitment: bytes
    timestamp: int
    verdict: str

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError('bad verdict %r' % self.verdict)
        if '\t' in self.client_id or '\n' in self.client_id:
            raise ValueError('client id may not contain tabs or newlines')

    def to_line(self):
        return '%s\t%s\t%s\t%d\n' % (self.client_id, self.commitment.hex(), self.verdict, self.timestamp)

    @classmethod
    def from_line(cls, line):
        cid, hx, verdict, ts = line.rstrip('\n').split('\t')
        return cls(cid, bytes.fromhex(hx), int(ts), verdict)


class HistoryStore:
    """Append-only per-client history, optionally persisted one record per line.

    All access goes through one lock; check_and_record makes the
    similarity check, budget check and append one atomic step.
    """

    def __init__(self, budget_limit=DEFAULT_BUDGET, path=None, scope='client'):
        self.budget_limit = budget_limit
        self.path = path
        self.scope = scope
        self._lock = threading.Lock()
        self._records = []
        self._seen = {}       # scope key -> set of commitment bytes (non-rejected)
        self._answered = {}
        if path and os.path.exists(path):
            try:
                with open(path) as f:
                    for line in f:
                        if line.strip():
                            self._index(QueryRecord.from_line(line))
            except (OSError, ValueError) as e:
                raise StorageError('cannot load history: %s' % e)

    def _key(self, client):
        return '*' if self.scope == 'global' else client

    def _index(self, rec):
        self._records.append(rec)
        if rec.verdict != REJECTED_PROOF:
            self._seen.setdefault(self._key(rec.client_id), set()).add(rec.commitment)
        if rec.verdict == ANSWERED:
            self._answered[rec.client_id] = self._answered.get(rec.client_id, 0) + 1

    def _append(self, rec):
        if self.path:
            try:
                with open(self.path, 'a') as f:
                    f.write(rec.to_line())
            except OSError as e:
                raise StorageError('cannot write history: %s' % e)
        self._index(rec)

    def records(self, client=None):
        with self._lock:
            return [r for r in self._records if client is None or r.client_id == client]

    def answered(self, client):
        with self._lock:
            return self._answered.get(client, 0)

    def record(self, client, commitment, verdict, timestamp=None):
        rec = QueryRecord(client, bytes(commitment), int(time.time() if timestamp is None else timestamp), verdict)
        with self._lock:
            self._append(rec)
        return rec

    def _similar(self, client, cb):
        return cb in self._seen.get(self._key(client), ())

    def _exhausted(self, client):
        return self._answered.get(client, 0) >= self.budget_limit

    def check_and_record(self, client, commitment, timestamp=None):
        """Atomic similarity + budget check; records and returns the verdict."""
        cb = bytes(commitment)
        with self._lock:
            if self._similar(client, cb):
                v = WITHHELD_SIMILAR
            elif self._exhausted(client):
                v = WITHHELD_BUDGET
            else:
                v = ANSWERED
            ts = int(time.time() if timestamp is None else timestamp)
            self._append(QueryRecord(client, cb, ts, v))
        return v


def _cbytes(c):
    return c.to_bytes() if isinstance(c, FuzzyCommitment) else bytes(c)


def check_similar(store, client, c):
    with store._lock:
        return SIMILAR if store._similar(client, _cbytes(c)) else FRESH


def check_budget(store, client):
    with store._lock:
        return EXHAUSTED if store._exhausted(client) else WITHIN
