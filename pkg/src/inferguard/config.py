"""Shared configuration, profiles, and the derived protocol context."""

import dataclasses
import hashlib
import os
import random
from dataclasses import dataclass, fields

from . import genomes, grams, rmcode


class ConfigError(ValueError):
    pass


@dataclass
class Config:
    profile: str = 'desk'
    qmin: int = 8
    qmax: int = 10
    p: float = 0.5
    gram_count: int = 1024     # n in the length formula; l = required_length(p, 1, n)
    l: int = 0                 # 0 = derive from p and gram_count
    m: int = 11
    delta: int = -1            # -1 = floor(l/2), the bound every decoded filter meets
    lam: int = 40
    hash_seed: int = 0x5eed
    backend: str = 'real'
    bit_size: int = 64
    budget_limit: int = 35000
    history_path: str = 'history.tsv'
    history_scope: str = 'client'
    alphabet: str = 'ACGT'
    genome_length: int = 1024
    freq_threshold: int = 2
    dup_fraction: float = 0.05
    reference_seed: int = 2013
    db_size: int = 8
    transcript: str = 'fiat_shamir'
    host: str = '127.0.0.1'
    port: int = 7741

    def resolved_l(self):
        return self.l or grams.required_length(self.p, 1, self.gram_count)

    def resolved_delta(self):
        return self.resolved_l() // 2 if self.delta < 0 else self.delta

    def validate(self):
        if not 0 < self.p < 1:
            raise ConfigError('p must lie in (0, 1)')
        if not 1 <= self.qmin <= self.qmax:
            raise ConfigError('need 1 <= qmin <= qmax')
        l = self.resolved_l()
        if l > 1 << self.m:
            raise ConfigError('l = %d exceeds 2^m = %d' % (l, 1 << self.m))
        if not 0 <= self.resolved_delta() < l:
            raise ConfigError('delta must lie in [0, l)')
        if self.lam < 1:
            raise ConfigError('lambda must be positive')
        if self.backend not in ('real', 'mock'):
            raise ConfigError('backend must be real or mock')
        if self.history_scope not in ('client', 'global'):
            raise ConfigError('history_scope must be client or global')
        if self.transcript not in ('interactive', 'fiat_shamir'):
            raise ConfigError('transcript must be interactive or fiat_shamir')
        return self

    def to_text(self):
        return ''.join('%s=%s\n' % (f.name, getattr(self, f.name)) for f in fields(self))


PROFILES = {
    'desk': dict(profile='desk', qmin=8, qmax=10, gram_count=1024, m=11, genome_length=1024),
    # 40-bit grams only extend through repeats, so a substitution touches ~qmin grams
    'paper': dict(profile='paper', qmin=20, qmax=40, gram_count=16569, m=15, genome_length=16569),
}

ALIASES = {'lambda': 'lam'}


def _coerce(name, value):
    kind = {f.name: f.type for f in fields(Config)}[name]
    try:
        if kind in (int, 'int'):
            return int(str(value), 0)
        if kind in (float, 'float'):
            return float(value)
    except ValueError:
        raise ConfigError('bad value for %s: %r' % (name, value))
    return str(value)


def load(path=None, profile=None, env=None, **overrides):
    """Profile defaults < config file < IG_* environment < explicit overrides."""
    env = os.environ if env is None else env
    vals = {}
    filevals = {}
    if path:
        try:
            with open(path) as f:
                text = f.read()
        except OSError as e:
            raise ConfigError('cannot read config: %s' % e)
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            if '=' not in line:
                raise ConfigError('bad config line: %r' % line)
            k, v = (s.strip() for s in line.split('=', 1))
            filevals[ALIASES.get(k, k)] = v
    envvals = {}
    for k, v in env.items():
        if k.startswith('IG_'):
            envvals[ALIASES.get(k[3:].lower(), k[3:].lower())] = v
    prof = profile or overrides.get('profile') or envvals.get('profile') or filevals.get('profile') or 'desk'
    if prof not in PROFILES:
        raise ConfigError('unknown profile %r' % prof)
    vals.update(PROFILES[prof])
    names = {f.name for f in fields(Config)}
    for src in (filevals, envvals, {k: v for k, v in overrides.items() if v is not None}):
        for k, v in src.items():
            if k not in names:
                raise ConfigError('unknown config key %r' % k)
            vals[k] = _coerce(k, v)
    vals['profile'] = prof
    return Config(**vals).validate()


@dataclass
class Context:
    """Everything both parties derive from the shared config."""
    config: Config
    dictionary: grams.GramDictionary
    spec: rmcode.CodeSpec
    l: int
    delta: int
    reference: str

    def digest(self):
        c = self.config
        shared = 'qmin=%d qmax=%d p=%r l=%d m=%d delta=%d lam=%d seed=%d alphabet=%s dict=%s' % (
            c.qmin, c.qmax, c.p, self.l, c.m, self.delta, c.lam, c.hash_seed, c.alphabet,
            self.dictionary.digest())
        return hashlib.sha256(shared.encode()).digest()

    def filter(self, genome):
        return grams.genome_filter(genome, self.dictionary, self.l, self.config.hash_seed)

    def population(self, count, seed):
        return genomes.population(self.reference, count, random.Random(seed), alphabet=self.config.alphabet)


_ctx_cache = {}


def context(config):
    key = config.to_text()
    if key not in _ctx_cache:
        rng = random.Random(config.reference_seed)
        ref = genomes.reference(config.genome_length, rng, config.dup_fraction, alphabet=config.alphabet)
        gd = grams.train_dictionary([ref], config.qmin, config.qmax, config.freq_threshold)
        l = config.resolved_l()
        _ctx_cache[key] = Context(dataclasses.replace(config), gd, rmcode.make_spec(config.m, l), l,
                                  config.resolved_delta(), ref)
    return _ctx_cache[key]
