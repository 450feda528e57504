"""Bit-channel TVD profiles at n = 128: how fast do the two families polarize?

Walks through the core objects of the package: build a code, profile its
bit-channels under the eavesdropper's BEC, and look at the sorted TVD
curve.  A channel with TVD near 0 is useless to Eve (carry a message bit
there); one near 1/2 is transparent to her (spend it on random fill).
The interesting question is how many channels sit in between.

Run:  python demos/tvd_profiles.py
"""

from wiretap_bec import bitchannel, codes

M = 7
P = 0.4
TRIALS = 50_000

print("Eavesdropper: BEC(p = %.1f), blocklength n = %d" % (P, 1 << M))
print()

profiles = {}
for family in codes.FAMILIES:
    code = codes.make_code(family, M, 0, P)
    mode = bitchannel.PastMode.full_past()
    if family == codes.POLAR:
        # polar full-past profiles have a closed form; no sampling needed
        prof = bitchannel.exactness_upgrade(code, P, mode)
    else:
        prof = bitchannel.mc_erasure_profile(code, P, mode,
                                             trials=TRIALS, seed=0)
    profiles[family] = prof

for family, prof in profiles.items():
    tvds = sorted(prof.tvd)
    mid = sum(1 for t in tvds if 0.05 < t < 0.45)
    label = "exact" if prof.trials == 0 else "%d trials" % prof.trials
    print("%-12s (%s)" % (family, label))
    print("  smallest five TVDs: %s" % ["%.4f" % t for t in tvds[:5]])
    print("  largest five TVDs:  %s" % ["%.4f" % t for t in tvds[-5:]])
    print("  channels still in the intermediate band (0.05, 0.45): %d" % mid)
    print()

rm_mid = sum(1 for t in profiles[codes.REED_MULLER].tvd if 0.05 < t < 0.45)
polar_mid = sum(1 for t in profiles[codes.POLAR].tvd if 0.05 < t < 0.45)
print("Reed-Muller leaves %d channels undecided vs %d for polar:" %
      (rm_mid, polar_mid))
print("the sharper split is what buys Reed-Muller its higher secrecy rate")
print("at short blocklengths.")
