"""
Catching an intercept-resend eavesdropper
=========================================

Eve measures every qubit in flight in the Z basis and forwards it. The
GHZ coherence is gone, so each X/Y check product becomes a coin flip and
the session aborts with probability 1 - 2^-u.
"""

from qss.experiments import attack_sweep, run_trials, summarize
from qss.protocol import InterceptResendZ, ProtocolConfig
from qss.variants import NN

config = ProtocolConfig(NN(3), L=12, secret_bits=(0, 1), u=4, eve=InterceptResendZ())
summary = summarize(run_trials(config, 1000, seed=0), 0)
print(f"per-check pass rate {summary.check_pass_rate():.3f}")
print(f"detection rate      {summary.detection_rate:.3f} (expected {1 - 2**-4:.3f})")

# %%
# Partial tapping and more checks.
rows = attack_sweep(config, taps=[0.0, 0.25, 0.5, 1.0], trials=400, seed=1, check_counts=[2, 4, 8])
for row in rows:
    print(f"tap={row['tap_probability']:.2f} u={row['u']}  detected {row['detection_rate']:.3f}"
          f"  [{row['ci_low']:.3f}, {row['ci_high']:.3f}]")
