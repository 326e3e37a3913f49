"""How many filter bits do u substitutions flip?

Consecutive edits share grams, so the cost grows by about one bit per extra
edit. Scattered edits each pay the full single-edit cost.
"""
from inferguard import attack, config

ctx = config.context(config.load(profile='desk', backend='mock'))
q = ctx.config.qmax
for u in (1, 2, 4, 8):
    cons = attack.mean_bits(ctx, u, 1, 20)
    scat = attack.mean_bits(ctx, u, q, 20)
    print('u=%d  consecutive %6.1f bits   scattered %6.1f bits' % (u, cons, scat))
