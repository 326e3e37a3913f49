"""Zero-knowledge proofs binding an encrypted Bloom filter to a fuzzy commitment."""

from .bits import prove_bit, prove_bits, verify_bit, verify_bits
from .compose import FullProof, ProverInputs, compose_prove, compose_verify
from .decode import prove_decode, verify_decode
from .hamming import ProverRefusal, prove_hamming, verify_hamming
from .owf import prove_owf, verify_owf
from .shuffle import prove_shuffle, verify_shuffle
from .simulate import simulate_transcript, verify_simulated
from .transcript import FIAT_SHAMIR, INTERACTIVE, FixedCoins, Transcript
