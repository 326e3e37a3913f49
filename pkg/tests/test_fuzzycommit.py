import random

import pytest

from inferguard import bgn, config, fuzzycommit as fc, rmcode


def test_owf_setup(mock64):
    params, _ = mock64
    a = fc.owf_setup(params, random.Random(3))
    b = fc.owf_setup(params, random.Random(3))
    assert a == b
    assert bgn.open_randomizer(a.s_hat, a.s, a.kappa)
    assert fc.owf_setup(params, random.Random(4)).kappa != a.kappa


def test_commit_deterministic_and_injective(real32):
    params, _ = real32
    key = fc.owf_setup(params, random.Random(1))
    x = (1, 0, 1, 1)
    assert fc.commit(params, key, x).to_bytes() == fc.commit(params, key, x).to_bytes()
    words = {fc.commit(params, key, rmcode.int_to_word(v, 3)).to_bytes() for v in range(16)}
    assert len(words) == 16
    c = fc.commit(params, key, x)
    assert fc.FuzzyCommitment.from_bytes(params, c.to_bytes()) == c


def test_similarity_scoping():
    st = fc.HistoryStore()
    assert fc.check_similar(st, 'alice', b'c1') == fc.FRESH
    st.record('alice', b'c1', fc.ANSWERED)
    assert fc.check_similar(st, 'alice', b'c1') == fc.SIMILAR
    assert fc.check_similar(st, 'bob', b'c1') == fc.FRESH
    g = fc.HistoryStore(scope='global')
    g.record('alice', b'c1', fc.ANSWERED)
    assert fc.check_similar(g, 'bob', b'c1') == fc.SIMILAR


def test_rejected_proofs_do_not_pollute():
    st = fc.HistoryStore()
    st.record('alice', b'c1', fc.REJECTED_PROOF)
    assert fc.check_similar(st, 'alice', b'c1') == fc.FRESH


def test_budget():
    st = fc.HistoryStore(budget_limit=35000)
    st._answered['alice'] = 34999
    assert fc.check_budget(st, 'alice') == fc.WITHIN
    assert fc.check_budget(fc.HistoryStore(budget_limit=0), 'alice') == fc.EXHAUSTED


def test_check_and_record_counts():
    st = fc.HistoryStore(budget_limit=2)
    assert st.check_and_record('a', b'1') == fc.ANSWERED
    assert st.check_and_record('a', b'1') == fc.WITHHELD_SIMILAR
    assert st.answered('a') == 1
    assert st.check_and_record('a', b'2') == fc.ANSWERED
    assert st.check_and_record('a', b'3') == fc.WITHHELD_BUDGET
    assert st.answered('a') == 2
    assert [r.verdict for r in st.records('a')] == [fc.ANSWERED, fc.WITHHELD_SIMILAR, fc.ANSWERED,
                                                    fc.WITHHELD_BUDGET]


def test_persistence(tmp_path):
    p = str(tmp_path / 'h.tsv')
    st = fc.HistoryStore(path=p)
    st.check_and_record('a', b'\x01\x02', timestamp=5)
    st2 = fc.HistoryStore(path=p)
    assert st2.records() == st.records()
    assert st2.check_and_record('a', b'\x01\x02') == fc.WITHHELD_SIMILAR
    assert open(p).readline() == 'a\t0102\tanswered\t5\n'


def test_storage_errors(tmp_path):
    p = tmp_path / 'bad.tsv'
    p.write_text('not a record\n')
    with pytest.raises(fc.StorageError):
        fc.HistoryStore(path=str(p))
    st = fc.HistoryStore(path=str(tmp_path / 'missing' / 'h.tsv'))
    with pytest.raises(fc.StorageError):
        st.check_and_record('a', b'1')


def test_record_validation():
    with pytest.raises(ValueError):
        fc.QueryRecord('a\tb', b'', 0, fc.ANSWERED)
    with pytest.raises(ValueError):
        fc.QueryRecord('a', b'', 0, 'maybe')


def test_concurrent_check_and_record():
    import threading
    st = fc.HistoryStore(budget_limit=50)
    out = []

    def worker(i):
        for k in range(20):
            out.append(st.check_and_record('c', b'%d' % (k % 10)))

    ts = [threading.Thread(target=worker, args=(i,)) for i in range(4)]
    for t in ts:
        t.start()
    for t in ts:
        t.join()
    assert out.count(fc.ANSWERED) == 10


def test_mismatch_rate_falls_with_length():
    """Decoded-word changes under 20 random filter bit flips: rarer at the
    full length than at desk length (both far above the 10% target)."""
    rates = []
    for prof in ('desk', 'paper'):
        ctx = config.context(config.load(profile=prof, env={}, backend='mock'))
        rng = random.Random(4)
        changed = trials = 0
        for g in ctx.population(30, 4):
            b = ctx.filter(g).bits
            x = rmcode.decode(ctx.spec, b)
            for _ in range(5):
                y = b.copy()
                y[rng.sample(range(ctx.l), 20)] ^= 1
                changed += rmcode.decode(ctx.spec, y) != x
                trials += 1
        rates.append(changed / trials)
    assert rates[1] < rates[0]
