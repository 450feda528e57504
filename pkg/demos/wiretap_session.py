"""One complete wiretap transmission, bit by bit.

Alice sends a short secret over a noiseless channel to Bob while Eve
taps the wire through a BEC.  The demo shows the encoding, Bob's exact
recovery, Eve's partial view, and the long-run fraction of message
content Eve actually pins down.

Run:  python demos/wiretap_session.py
"""

import numpy as np

from wiretap_bec import codes, simulate
from wiretap_bec.gf2 import BitVector

M = 3
K = 2
P = 0.5

rng = np.random.default_rng(42)
code = codes.make_code(codes.REED_MULLER, M, K, P)
print("Reed-Muller code, n = %d, k = %d, message rows %s" %
      (code.n, code.k, list(code.message_positions)))

message = BitVector.from_bits([1, 0])
cw = simulate.encode(message, code, rng)
print("message   :", message.to_list())
print("input u   :", cw.u.to_list(), " (message bits + random fill)")
print("codeword x:", cw.x.to_list())

decoded = simulate.bob_decode(cw.x, code)
print("Bob decodes:", decoded.to_list(), "->",
      "ok" if decoded == message else "MISMATCH")

obs = simulate.eve_channel(cw.x, P, rng)
pretty = ["?" if z == simulate.ERASED else str(z) for z in obs.z]
print("Eve sees  :", pretty, " (? = erased, p = %.1f)" % P)

frac = simulate.empirical_pinned_bits(code, P, trials=20_000, seed=0)
print()
print("Across 20000 transmissions Eve pins down %.1f%% of the message" %
      (100 * frac))
print("content on average; the secrecy bounds in wiretap_bec.secrecy turn")
print("that residue into a guaranteed distance-from-uniform budget.")
