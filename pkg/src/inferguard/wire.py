"""Byte-stream framing and message payloads.

frame = [version 0x01][type][4-byte big-endian payload length][payload]
"""

import socket
import socketserver
import struct

from . import bgn, fuzzycommit as fc
from .protocol import ProtocolCorruption, QueryMessage, ResponseMessage, VERDICTS
from .zkp import codec

VERSION = 0x01
HELLO, ACK, QUERY, RESPONSE, ERROR = 0x01, 0x02, 0x10, 0x11, 0x7F
TYPES = (HELLO, ACK, QUERY, RESPONSE, ERROR)
MAX_FRAME = 1 << 30


class WireError(Exception):
    pass


def frame(ftype, payload):
    return struct.pack('>BBI', VERSION, ftype, len(payload)) + payload


def _recv_exact(sock, k):
    buf = bytearray()
    while len(buf) < k:
        chunk = sock.recv(min(k - len(buf), 1 << 20))
        if not chunk:
            raise WireError('connection closed')
        buf += chunk
    return bytes(buf)


def send_frame(sock, ftype, payload):
    sock.sendall(frame(ftype, payload))


def recv_frame(sock):
    head = _recv_exact(sock, 6)
    ver, ftype, ln = struct.unpack('>BBI', head)
    if ver != VERSION:
        raise WireError('unsupported version %d' % ver)
    if ftype not in TYPES:
        raise WireError('unknown frame type 0x%02x' % ftype)
    if ln > MAX_FRAME:
        raise WireError('frame too large')
    return ftype, _recv_exact(sock, ln)


def parse_frame(data):
    """Frame bytes -> (type, payload); for tests and offline use."""
    if len(data) < 6:
        raise WireError('short frame')
    ver, ftype, ln = struct.unpack('>BBI', data[:6])
    if ver != VERSION or ftype not in TYPES or len(data) != 6 + ln:
        raise WireError('malformed frame')
    return ftype, data[6:]


# payloads

def _str(s):
    b = s.encode()
    return struct.pack('>H', len(b)) + b


def _take_str(b, pos):
    (k,) = struct.unpack('>H', b[pos:pos + 2])
    return b[pos + 2:pos + 2 + k].decode(), pos + 2 + k


def encode_hello(client_id, config_digest, params, sk, s_hat):
    """Setup handshake with the key-validity disclosure (primes and generator
    derivation seed). The server validates and does not retain the key."""
    text = 'client_id=%s\nconfig_digest=%s\ns_hat=%s\n' % (client_id, config_digest.hex(), s_hat.to_bytes().hex())
    text += ''.join('disclose_' + line + '\n' for line in sk.to_text().splitlines())
    text += params.to_text()
    return text.encode()


def decode_hello(payload):
    kv = bgn.parse_kv(payload.decode())
    params = bgn.PublicParams.from_text(payload.decode())
    disc = bgn.PrivateKey(int(kv['disclose_q1']), int(kv['disclose_q2']), int(kv['disclose_beta']),
                          bytes.fromhex(kv['disclose_gen_seed']))
    s_hat = bgn.from_bytes(params, bytes.fromhex(kv['s_hat']))
    return kv['client_id'], bytes.fromhex(kv['config_digest']), params, disc, s_hat


def encode_query(params, q):
    grp = params.group
    parts = [_str(q.client_id), q.config_digest,
             struct.pack('>I', len(q.a)), b''.join(grp.enc1(e) for e in q.a)]
    cb = q.commitment.to_bytes()
    parts.append(struct.pack('>H', len(cb)) + cb)
    pb = codec.encode_full(params, q.proof) if q.proof is not None else b''
    parts.append(struct.pack('>I', len(pb)) + pb)
    return b''.join(parts)


def peek_client(payload):
    return _take_str(payload, 0)[0]


def decode_query(params, payload):
    try:
        cid, pos = _take_str(payload, 0)
        digest = payload[pos:pos + 32]
        pos += 32
        (k,) = struct.unpack('>I', payload[pos:pos + 4])
        pos += 4
        w = 2 * params.group.width
        a = [params.group.dec1(payload[pos + i * w:pos + (i + 1) * w]) for i in range(k)]
        pos += k * w
        (cl,) = struct.unpack('>H', payload[pos:pos + 2])
        commitment = fc.FuzzyCommitment.from_bytes(params, payload[pos + 2:pos + 2 + cl])
        pos += 2 + cl
        (pl,) = struct.unpack('>I', payload[pos:pos + 4])
        pos += 4
        proof = codec.decode_full(params, payload[pos:pos + pl]) if pl else None
        if pos + pl != len(payload):
            raise WireError('trailing bytes in query')
    except (struct.error, ValueError, IndexError) as e:
        raise WireError('malformed query: %s' % e)
    return QueryMessage(cid, a, commitment, proof, digest)


VERDICT_CODE = {v: i for i, v in enumerate(VERDICTS)}


def encode_response(resp):
    parts = [bytes([VERDICT_CODE[resp.verdict]]), struct.pack('>I', len(resp.distances))]
    parts += [c.to_bytes() for c in resp.distances]
    return b''.join(parts)


def decode_response(params, payload):
    try:
        verdict = VERDICTS[payload[0]]
        (k,) = struct.unpack('>I', payload[1:5])
        w = bgn.elem_size(params)
        if len(payload) != 5 + k * w:
            raise WireError('bad response length')
        ds = [bgn.from_bytes(params, payload[5 + i * w:5 + (i + 1) * w]) for i in range(k)]
    except (IndexError, struct.error, bgn.BGNError) as e:
        raise ProtocolCorruption('malformed response: %s' % e)
    return ResponseMessage(verdict, ds)


# serving loop

class _Handler(socketserver.BaseRequestHandler):
    def handle(self):
        server = self.server.app
        sock = self.request
        while True:
            try:
                ftype, payload = recv_frame(sock)
            except WireError:
                return
            try:
                if ftype == HELLO:
                    cid, digest, params, disc, s_hat = decode_hello(payload)
                    if digest != server.ctx.digest():
                        send_frame(sock, ERROR, b'config mismatch')
                    elif not server.register(cid, params, disc, s_hat):
                        send_frame(sock, ERROR, b'key disclosure rejected')
                    else:
                        send_frame(sock, ACK, b'ok')
                elif ftype == QUERY:
                    sess = server.session(peek_client(payload))
                    if sess is None:
                        send_frame(sock, ERROR, b'setup required')
                        continue
                    q = decode_query(sess[0], payload)
                    send_frame(sock, RESPONSE, encode_response(server.handle(q)))
                else:
                    send_frame(sock, ERROR, b'unexpected frame')
            except (WireError, ValueError, KeyError) as e:
                send_frame(sock, ERROR, str(e).encode()[:500])
            except fc.StorageError as e:
                send_frame(sock, ERROR, ('server error: %s' % e).encode())


class TCPServer(socketserver.ThreadingMixIn, socketserver.TCPServer):
    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, addr, app):
        self.app = app
        super().__init__(addr, _Handler)


def serve(app, host, port):
    return TCPServer((host, port), app)


class Client:
    def __init__(self, host, port, timeout=600):
        try:
            self.sock = socket.create_connection((host, port), timeout=timeout)
        except OSError as e:
            raise WireError('cannot connect: %s' % e)

    def close(self):
        self.sock.close()

    def setup(self, client_id, ctx, keys):
        send_frame(self.sock, HELLO, encode_hello(client_id, ctx.digest(), keys.params, keys.sk, keys.owf.s_hat))
        ftype, payload = recv_frame(self.sock)
        if ftype != ACK:
            raise WireError('setup refused: %s' % payload.decode(errors='replace'))

    def query(self, params, q):
        send_frame(self.sock, QUERY, encode_query(params, q))
        ftype, payload = recv_frame(self.sock)
        if ftype == ERROR:
            raise WireError(payload.decode(errors='replace'))
        if ftype != RESPONSE:
            raise WireError('unexpected frame type 0x%02x' % ftype)
        return decode_response(params, payload)
