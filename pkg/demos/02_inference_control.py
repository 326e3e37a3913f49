"""The server refuses to answer a query it has seen before.

Each query carries a deterministic commitment to the decoded Reed-Muller
information word of the filter. Identical genomes always collide; a single
substitution collides only part of the time.
"""
import random

from inferguard import config, fuzzycommit as fc, genomes, protocol

cfg = config.load(profile='desk', backend='mock', lam=8)
ctx = config.context(cfg)
keys = protocol.client_keys(cfg, seed=1)
g = ctx.population(1, seed=5)[0]

bob = protocol.Server(ctx, [ctx.filter(g)], fc.HistoryStore(), seed=1)
bob.register('eve', keys.params, keys.sk, keys.owf.s_hat)

for label, s in [('first query', g), ('same genome again', g)]:
    msg, _ = protocol.client_build_query(s, ctx, keys, 'eve')
    print('%-20s %s' % (label, bob.handle(msg).verdict))

rng = random.Random(7)
hits = 0
for _ in range(50):
    a = protocol.client_build_query(g, ctx, keys, prove=False)[0].commitment
    b = protocol.client_build_query(genomes.substitute(g, rng.randrange(len(g)), rng), ctx, keys, prove=False)[0].commitment
    hits += a == b
print('one substitution keeps the commitment in %d of 50 trials' % hits)
