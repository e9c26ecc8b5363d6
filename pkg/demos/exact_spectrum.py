"""Walk through the exact measurement spectrum of order finding.

For n = 15, x = 7 the order is r = 4, which divides q = 256, so the
distribution over the first register is four perfect peaks of height 1/4.
Shrinking the register to a single qubit (q = 2) collapses the observable to
two values carrying no order information, which is the degenerate case the
auditor flags.
"""

import numpy as np

from shorsim import FactoringInstance, build_spectrum, choose_q, good_c_set

instance = FactoringInstance.create(15, 7)
s, q = choose_q(15)
print(f"n = {instance.n}, x = {instance.x}: true order r = {instance.r}")
print(f"register-1 needs s = {s} qubits, q = {q}; "
      f"register-2 needs ell = {instance.ell}\n")

table = build_spectrum(instance, q)
support = np.flatnonzero(table.marginals)
print(f"support of the marginal distribution: {support.tolist()}")
for c in support:
    print(f"  P(c = {c:3d}) = {table.marginals[c]:.12g}   "
          f"{{rc}}_q = {table.signed_residues[c]:4d}   "
          f"good = {bool(table.good_flags[c])}")
print(f"every other c has probability exactly "
      f"{float(table.marginals[1])!r} (true zero, not rounding dust)")
print(f"normalization: {table.marginals.sum():.12g}")
print(f"good c set coincides with the support: "
      f"{sorted(good_c_set(instance.r, q)) == support.tolist()}\n")

# Now the single-qubit register. Every c becomes "good" vacuously and the
# two observable values are equally likely no matter what r is.
tiny = build_spectrum(instance, 2)
print("same instance with q = 2 (single-qubit first register):")
for c, p, t, flag in tiny.rows():
    print(f"  P(c = {c}) = {p:.12g}   {{rc}}_q = {t}   good = {flag}")
print("the observable c is either 0 or 1; c/q is 0 or 1/2, and no "
      "continued fraction of those values can reach a denominator of 4")
