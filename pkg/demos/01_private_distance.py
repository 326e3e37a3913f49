"""Two parties, one encrypted Hamming distance.

Alice encrypts her genome's Bloom filter bit by bit and proves it is well
formed. Bob computes the encrypted distance to each database entry without
ever seeing her bits, and only Alice can decrypt the result.
"""
import random

from inferguard import config, fuzzycommit as fc, genomes, grams, protocol

cfg = config.load(profile='desk', backend='mock')
ctx = config.context(cfg)
keys = protocol.client_keys(cfg, seed=1)

pop = ctx.population(4, seed=1)
alice = genomes.mutate(pop[0], 12, random.Random(2))
db = [ctx.filter(g) for g in pop]

bob = protocol.Server(ctx, db, fc.HistoryStore(), seed=3)
bob.register('alice', keys.params, keys.sk, keys.owf.s_hat)

msg, state = protocol.client_build_query(alice, ctx, keys, 'alice')
resp = bob.handle(msg)
print('verdict:', resp.verdict)
for i, d in enumerate(protocol.client_decrypt_response(resp, keys.sk, ctx.l)):
    print('entry %d: encrypted %4d  plaintext %4d' % (i, d, grams.hamming(state.filter, db[i])))
