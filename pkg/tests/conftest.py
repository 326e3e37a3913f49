import random

import pytest

from inferguard import bgn, config, fuzzycommit as fc, protocol


def pytest_addoption(parser):
    parser.addoption('--long', action='store_true', default=False, help='run full-scale tests')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--long'):
        return
    skip = pytest.mark.skip(reason='needs --long')
    for item in items:
        if 'long' in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope='session')
def desk_cfg():
    return config.load(profile='desk', env={}, backend='mock')


@pytest.fixture(scope='session')
def desk_ctx(desk_cfg):
    return config.context(desk_cfg)


@pytest.fixture(scope='session')
def mock_keys(desk_cfg):
    return protocol.client_keys(desk_cfg, seed=11)


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture(scope='session')
def toy_mock():
    return bgn.mock_params(5, 7)


@pytest.fixture(scope='session')
def toy_real():
    return bgn.gen_params(16, 1 << 14, random.Random(0), backend=bgn.REAL)


@pytest.fixture(scope='session')
def real32():
    return bgn.gen_params(32, 1 << 15, random.Random(5), backend=bgn.REAL)


@pytest.fixture(scope='session')
def mock64():
    return bgn.gen_params(64, 1 << 15, random.Random(5), backend=bgn.MOCK)


def fresh_store(**kw):
    return fc.HistoryStore(**kw)


# acceptance report: one line per criterion, printed after the run

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section('acceptance criteria')
    for n in sorted(ACCEPTANCE):
        ok, name, detail = ACCEPTANCE[n]
        terminalreporter.write_line('%s  %2d. %s: %s' % ('PASS' if ok else 'FAIL', n, name, detail))
