"""inferguard command line: keygen, setup, serve, query, attack, sensitivity, selftest."""

import argparse
import logging
import os
import random
import sys

from . import attack, bgn, config as cfgmod, fuzzycommit as fc, grams, protocol, wire

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_NETWORK, EXIT_REJECTED, EXIT_WITHHELD = 0, 1, 2, 3, 4, 5

log = logging.getLogger('inferguard')


def _ints(s):
    return [int(v) for v in s.split(',') if v.strip()]


def _load(args):
    over = {}
    if args.backend:
        over['backend'] = args.backend
    for kv in args.set or ():
        if '=' not in kv:
            raise cfgmod.ConfigError('--set expects key=value, got %r' % kv)
        k, v = kv.split('=', 1)
        over[cfgmod.ALIASES.get(k, k)] = v
    return cfgmod.load(args.config, args.profile, **over)


# key files

def write_keys(path, keys):
    os.makedirs(path, exist_ok=True)
    with open(os.path.join(path, 'params.txt'), 'w') as f:
        f.write(keys.params.to_text())
    secret = keys.sk.to_text() + 'kappa=%d\ns=%d\n' % (keys.owf.kappa, keys.owf.s)
    fn = os.path.join(path, 'secret.txt')
    with open(fn, 'w') as f:
        f.write(secret)
    os.chmod(fn, 0o600)


def read_keys(path):
    try:
        with open(os.path.join(path, 'params.txt')) as f:
            params = bgn.PublicParams.from_text(f.read())
        with open(os.path.join(path, 'secret.txt')) as f:
            text = f.read()
    except (OSError, KeyError, ValueError) as e:
        raise cfgmod.ConfigError('cannot read keys from %s: %s' % (path, e))
    kv = bgn.parse_kv(text)
    sk = bgn.PrivateKey.from_text(text)
    kappa, s = int(kv['kappa']), int(kv['s'])
    owf = fc.OwfKey(kappa, s, bgn.encrypt1(params, s, kappa))
    return protocol.ClientKeys(params, sk, owf)


def _genome(args, ctx):
    if args.genome:
        return grams.read_genome(args.genome, ctx.config.alphabet)
    # synthetic sample from the shared population
    return ctx.population(args.sample + 1, args.seed)[args.sample]


# subcommands

def cmd_keygen(args, cfg):
    keys = protocol.client_keys(cfg, args.seed)
    write_keys(args.out, keys)
    print('wrote %s (backend=%s, n has %d bits)' % (args.out, keys.params.backend, keys.params.n.bit_length()))
    return EXIT_OK


def _connect(args, cfg, ctx, keys):
    c = wire.Client(args.host or cfg.host, args.port or cfg.port)
    c.setup(args.client_id, ctx, keys)
    return c


def cmd_setup(args, cfg):
    ctx = cfgmod.context(cfg)
    keys = read_keys(args.keys)
    c = _connect(args, cfg, ctx, keys)
    c.close()
    print('setup accepted for %s' % args.client_id)
    return EXIT_OK


def server_app(cfg, args):
    ctx = cfgmod.context(cfg)
    if args.db:
        db = [ctx.filter(grams.read_genome(p, cfg.alphabet)) for p in args.db]
    else:
        db = [ctx.filter(g) for g in ctx.population(cfg.db_size, args.seed)]
    store = fc.HistoryStore(cfg.budget_limit, cfg.history_path, cfg.history_scope)
    return protocol.Server(ctx, db, store, require_proof=not args.no_proof)


def cmd_serve(args, cfg):
    app = server_app(cfg, args)
    host, port = args.host or cfg.host, args.port or cfg.port
    try:
        srv = wire.serve(app, host, port)
    except OSError as e:
        print('cannot bind %s:%d: %s' % (host, port, e), file=sys.stderr)
        return EXIT_NETWORK
    print('serving %d entries on %s:%d' % (len(app.db), host, srv.server_address[1]), flush=True)
    try:
        srv.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        srv.server_close()
    return EXIT_OK


def cmd_query(args, cfg):
    ctx = cfgmod.context(cfg)
    keys = read_keys(args.keys)
    genome = _genome(args, ctx)
    try:
        msg, state = protocol.client_build_query(genome, ctx, keys, args.client_id, prove=not args.no_proof)
    except protocol.ClientRefusal as e:
        print('refused: %s' % e, file=sys.stderr)
        return EXIT_FAIL
    c = _connect(args, cfg, ctx, keys)
    try:
        resp = c.query(keys.params, msg)
    finally:
        c.close()
    if resp.verdict == fc.REJECTED_PROOF:
        print('rejected_proof', file=sys.stderr)
        return EXIT_REJECTED
    if resp.verdict in (fc.WITHHELD_SIMILAR, fc.WITHHELD_BUDGET):
        print(resp.verdict, file=sys.stderr)
        return EXIT_WITHHELD
    if resp.verdict == protocol.CONFIG_MISMATCH:
        print('config_mismatch', file=sys.stderr)
        return EXIT_CONFIG
    for i, d in enumerate(protocol.client_decrypt_response(resp, keys.sk, ctx.l)):
        print('%d\t%d' % (i, d))
    return EXIT_OK


def _emit(text, out):
    if out:
        with open(out, 'w') as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def cmd_attack(args, cfg):
    length = args.length or (cfg.genome_length if args.long else 1024)
    if args.oracle == 'protocol':
        ctx = cfgmod.context(cfg)
        rows = []
        for s in range(args.seeds):
            seed = args.seed + s
            target = ctx.population(1, seed)[0]
            oracle = attack.ProtocolOracle(target, ctx, budget=args.budget, seed=seed,
                                           exact_score=args.score == 'exact')
            res = attack.randomized_attack(oracle, args.rounds, random.Random(seed + 10 ** 6), cfg.alphabet)
            for rd, acc in enumerate(res.trace, 1):
                rows.append(('commit', rd, seed, res.queries_issued, res.queries_answered, acc))
    else:
        ctx = cfgmod.context(cfg) if args.score == 'bloom' else None
        rows = attack.attack_experiment(_ints(args.thresholds), args.seeds, length, args.rounds, args.budget,
                                        cfg.alphabet, 'bloom' if args.score == 'bloom' else 'hamming', ctx,
                                        seed_base=args.seed)
    _emit(attack.to_csv(attack.ATTACK_HEADER, rows), args.out)
    return EXIT_OK


def cmd_sensitivity(args, cfg):
    ctx = cfgmod.context(cfg)
    if args.table:
        rows, _, _ = attack.detection_threshold_table(ctx, _ints(args.table), args.trials, seed=args.seed)
        _emit(attack.to_csv(['threshold', 'max_consecutive', 'max_scattered'], rows), args.out)
    else:
        rows = attack.sensitivity_curve(ctx, _ints(args.gaps), args.u, args.trials, args.seed)
        _emit(attack.to_csv(attack.SENS_HEADER, rows), args.out)
    return EXIT_OK


def cmd_selftest(args, cfg):
    from . import selftest
    ok = True
    for name, passed, detail in selftest.run_all(quick=args.quick):
        print('%s %s: %s' % ('PASS' if passed else 'FAIL', name, detail))
        ok = ok and passed
    return EXIT_OK if ok else EXIT_FAIL


def parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='key=value config file')
    common.add_argument('--seed', type=int, default=0)
    common.add_argument('--profile', choices=sorted(cfgmod.PROFILES))
    common.add_argument('--backend', choices=('mock', 'real'))
    common.add_argument('--long', action='store_true', help='full-scale runs')
    common.add_argument('--set', action='append', metavar='KEY=VALUE', help='override one config key')
    common.add_argument('-v', '--verbose', action='store_true')

    net = argparse.ArgumentParser(add_help=False)
    net.add_argument('--host')
    net.add_argument('--port', type=int)

    client = argparse.ArgumentParser(add_help=False)
    client.add_argument('--keys', default='keys', help='directory written by keygen')
    client.add_argument('--client-id', default='client')

    p = argparse.ArgumentParser(prog='inferguard', description=__doc__)
    sub = p.add_subparsers(dest='cmd', required=True)

    s = sub.add_parser('keygen', parents=[common], help='generate encryption and commitment keys')
    s.add_argument('--out', default='keys')
    s.set_defaults(fn=cmd_keygen)

    s = sub.add_parser('setup', parents=[common, net, client], help='setup handshake only')
    s.set_defaults(fn=cmd_setup)

    s = sub.add_parser('serve', parents=[common, net], help='run the matching server')
    s.add_argument('--db', nargs='*', help='FASTA files (default: synthetic population)')
    s.add_argument('--no-proof', action='store_true', help='skip proof verification')
    s.set_defaults(fn=cmd_serve)

    s = sub.add_parser('query', parents=[common, net, client], help='one end-to-end query')
    g = s.add_mutually_exclusive_group()
    g.add_argument('--genome', help='FASTA or plain sequence file')
    g.add_argument('--sample', type=int, default=0, help='synthetic population member')
    s.add_argument('--no-proof', action='store_true')
    s.set_defaults(fn=cmd_query)

    s = sub.add_parser('attack', parents=[common], help='attack experiments to CSV')
    s.add_argument('--thresholds', default='0,8,16,32')
    s.add_argument('--seeds', type=int, default=10)
    s.add_argument('--rounds', type=int, default=1)
    s.add_argument('--length', type=int, default=0)
    s.add_argument('--budget', type=int)
    s.add_argument('--score', choices=('exact', 'bloom'), default='exact')
    s.add_argument('--oracle', choices=('string', 'protocol'), default='string')
    s.add_argument('--out')
    s.set_defaults(fn=cmd_attack)

    s = sub.add_parser('sensitivity', parents=[common], help='Bloom filter sensitivity scans')
    s.add_argument('--gaps', default='1,2,4,8,16,32,64')
    s.add_argument('--u', type=int, default=2)
    s.add_argument('--trials', type=int, default=100)
    s.add_argument('--table', help='comma-separated bit thresholds')
    s.add_argument('--out')
    s.set_defaults(fn=cmd_sensitivity)

    s = sub.add_parser('selftest', parents=[common], help='small-parameter oracles')
    s.add_argument('--quick', action='store_true')
    s.set_defaults(fn=cmd_selftest)
    return p


def main(argv=None):
    args = parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')
    try:
        cfg = _load(args)
        return args.fn(args, cfg)
    except cfgmod.ConfigError as e:
        print('config error: %s' % e, file=sys.stderr)
        return EXIT_CONFIG
    except (wire.WireError, OSError) as e:
        if isinstance(e, fc.StorageError):
            print('storage error: %s' % e, file=sys.stderr)
            return EXIT_FAIL
        print('network error: %s' % e, file=sys.stderr)
        return EXIT_NETWORK
    except grams.GramError as e:
        print('input error: %s' % e, file=sys.stderr)
        return EXIT_FAIL


if __name__ == '__main__':
    sys.exit(main())
