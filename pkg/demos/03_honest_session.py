"""
A complete honest sharing session
=================================

The dealer prepares L runs, shuffles each player's qubits independently,
sacrifices u runs for stabilizer checks and reveals the slot positions of
the runs that carry the secret only to the intended players.
"""

from qss.experiments import run_trials, summarize
from qss.protocol import ProtocolConfig, run_session, view_violations
from qss.variants import KN, Restricted2N

# %%
# A restricted (2, 5) scheme: blocks {1, 2} and {3, 4, 5}.
config = ProtocolConfig(Restricted2N(5, 2), L=12, secret_bits=(0, 1, 1, 0),
                        seed=1, coalitions=[(1, 3), (2, 5)])
res = run_session(config)
print("aborted:", res.aborted)
for coalition, bits in res.reconstructed.items():
    print(coalition, "->", bits)

# %%
# Events of the session, with who can see them.
for e in res.transcript.events[:8]:
    print(e.seq, e.actor, e.event_kind, e.audience)

# %%
# Player 1's view never contains labels or permutations.
print("violations:", view_violations(res.transcript, 1))

# %%
# A (3, 4) Dicke scheme run many times.
config = ProtocolConfig(KN(4, 3, 1), L=12, secret_bits=(1, 0, 1))
summary = summarize(run_trials(config, 200, seed=3), 3)
print(summary.to_csv())
