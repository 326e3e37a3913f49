"""Recovering a hidden string from similarity scores, with and without
the server's near-duplicate detection."""
import random
import statistics

from inferguard import attack, genomes

L = 1024
target = genomes.random_genome(L, random.Random(1))
start = genomes.random_genome(L, random.Random(2))

res = attack.goodrich_attack(attack.StringOracle(target), 'ACGT', L, start)
print('no detection: accuracy %.3f after %d queries' % (res.accuracy, res.queries_issued))

for T in (8, 16, 32):
    rows = attack.attack_experiment([T], 5, length=L, rounds=5)
    by_round = [statistics.mean(r[5] for r in rows if r[1] == k) for k in range(1, 6)]
    print('threshold %2d: accuracy by round %s' % (T, ' '.join('%.2f' % a for a in by_round)))
