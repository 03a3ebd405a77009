"""
Lower bounds from the four extremizer families
==============================================

Each family puts wavepackets at every frequency of a delta-lattice and
compares the mixed norm of the sum to the l^2 sum of the pieces.  The ratio
grows like a power of 1/delta, and each family realises one term of the
lower bound.  d = 1 throughout; the bush at delta = 1/16 takes ~30 s on one
core.
"""
from mixdec.families import (FamilyParams, build_family, fit_exponent, predicted_exponent,
                             ratios_for_spec)

experiments = [
    ("bush", (10, 10), [1 / 4, 1 / 8, 1 / 16], {}),
    ("tunedbush", (2, 10), [1 / 4, 1 / 8], {}),
    ("space", (2, 1), [1 / 4, 1 / 8], {"sep_exponent": 3}),
    ("time", (1, 2), [1 / 4, 1 / 8], {"sep_exponent": 3}),
]

for kind, (q, r), deltas, kw in experiments:
    samples = []
    for delta in deltas:
        spec = build_family(kind, FamilyParams(delta=delta, **kw))
        s = ratios_for_spec(spec, [(q, r)])[0]
        samples.append(s)
        print(f"{kind:9s} delta={delta:<7g} packets={spec.n_packets:5d} ratio={s.ratio:.4f}")
    fit = fit_exponent(samples)
    print(f"  slope {fit.slope:.3f}, predicted {float(predicted_exponent(kind, q, r, 1)):.3f}\n")

# the plain bush cannot see (2, 10): its term is negative there
print("bush term at (2, 10):", float(predicted_exponent("bush", 2, 10, 1)))
