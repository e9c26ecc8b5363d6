"""Audit register configurations for factoring 15.

Two configurations side by side: the textbook sizing (8 + 4 qubits) passes
every check; a single-qubit first register fails the q >= n^2 condition,
cannot distinguish the candidate fractions, and additionally admits a
hard-wired modular-exponentiation shortcut, which the report attaches as a
note.
"""

from shorsim import RegisterConfig, audit, bound_argument_applicability

reference = RegisterConfig(n=15, register1_qubits=8, register2_qubits=4)
print(audit(reference).to_text())

single = RegisterConfig(n=15, register1_qubits=1, register2_qubits=4)
report = audit(single)
print(report.to_text())

# The q >= n^2 condition is not an aesthetic preference: with q = 2 the
# probability-floor derivation has no room to operate either.
for config in (single, reference):
    appl = bound_argument_applicability(config, x=7)
    print(f"s = {config.register1_qubits:d}: {appl.explanation}")
