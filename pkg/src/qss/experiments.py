"""Seeded session batches, summary statistics and attack sweeps.

Trial ``i`` of a batch with master seed ``S`` runs with session seed
``(S, i)``; :class:`numpy.random.SeedSequence` turns that pair into the
session's independent random streams.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from statsmodels.stats.proportion import proportion_confint

from .protocol import InterceptResendZ, ProtocolConfig, SessionResult, Transcript, run_session

SUMMARY_FIELDS = ("seed", "trials", "metric", "key", "count", "total", "rate")
SWEEP_FIELDS = ("tap_probability", "u", "trials", "detected", "detection_rate", "ci_low", "ci_high")


def trial_seed(master_seed: int, index: int) -> tuple[int, int]:
    return (int(master_seed), int(index))


def run_trials(config: ProtocolConfig, trials: int, seed: int) -> list[SessionResult]:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    return [run_session(config.with_seed(trial_seed(seed, i))) for i in range(trials)]


@dataclass
class StatsSummary:
    seed: int
    trials: int = 0
    aborted: int = 0
    detected: int = 0
    # coalition key -> [correct bits, total bits]
    accuracy: dict[str, list[int]] = field(default_factory=dict)
    # check setting -> [passed, total]
    checks: dict[str, list[int]] = field(default_factory=dict)

    @property
    def abort_rate(self) -> float:
        return self.aborted / self.trials

    @property
    def detection_rate(self) -> float:
        return self.detected / self.trials

    def reconstruction_accuracy(self, coalition) -> float:
        key = coalition if isinstance(coalition, str) else _coalition_key(coalition)
        ok, total = self.accuracy[key]
        return ok / total

    def check_pass_rate(self, setting: str | None = None) -> float:
        items = [self.checks[setting]] if setting else list(self.checks.values())
        passed = sum(p for p, _ in items)
        total = sum(t for _, t in items)
        return passed / total

    def rows(self) -> list[dict]:
        def row(metric, key, count, total):
            rate = f"{count / total:.6f}" if total else ""
            return dict(seed=self.seed, trials=self.trials, metric=metric, key=key,
                        count=count, total=total, rate=rate)

        out = [row("abort", "", self.aborted, self.trials),
               row("detection", "", self.detected, self.trials)]
        out += [row("accuracy", k, *v) for k, v in sorted(self.accuracy.items())]
        out += [row("check_pass", k, *v) for k, v in sorted(self.checks.items())]
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=SUMMARY_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.rows())
        return buf.getvalue()


def _coalition_key(coalition) -> str:
    return "-".join(str(i) for i in coalition)


def _bump(table: dict, key: str, hit: int, total: int = 1) -> None:
    entry = table.setdefault(key, [0, 0])
    entry[0] += hit
    entry[1] += total


def summarize(results: list[SessionResult], seed: int) -> StatsSummary:
    s = StatsSummary(seed)
    for res in results:
        s.trials += 1
        s.aborted += res.aborted
        s.detected += res.eve_detected
        for c in res.checks:
            _bump(s.checks, c.setting, int(c.passed))
        for coalition, bits in res.reconstructed.items():
            correct = sum(int(g == b) for g, b in zip(bits, res.config.secret_bits))
            _bump(s.accuracy, _coalition_key(coalition), correct, len(bits))
    return s


def recount(transcripts: list[Transcript], seed: int) -> StatsSummary:
    """Rebuild the summary from transcript events alone."""
    s = StatsSummary(seed)
    for t in transcripts:
        s.trials += 1
        secret = t.of_kind("secret")[0].payload["secret"]
        verdicts = t.of_kind("verification")
        final = verdicts[-1].payload
        if final["result"] == "abort":
            s.aborted += 1
            s.detected += final.get("reason") == "mismatch"
        for e in t.of_kind("verify_detail"):
            for _run, setting, expected, product in e.payload["checks"]:
                _bump(s.checks, setting, int(expected == product))
        for e in t.of_kind("reconstruct"):
            bits = e.payload["bits"]
            correct = sum(int(g == b) for g, b in zip(bits, secret))
            _bump(s.accuracy, _coalition_key(e.payload["coalition"]), correct, len(bits))
    return s


def wilson_interval(successes: int, trials: int, alpha: float = 0.05) -> tuple[float, float]:
    low, high = proportion_confint(successes, trials, alpha=alpha, method="wilson")
    return float(low), float(high)


def attack_sweep(
    config: ProtocolConfig,
    taps: list[float],
    trials: int,
    seed: int,
    check_counts: list[int] | None = None,
) -> list[dict]:
    """Detection rate of intercept-resend Eve per (tap probability, u)."""
    if any(not 0.0 <= p <= 1.0 for p in taps):
        raise ValueError("tap probabilities must lie in [0, 1]")
    players = config.eve.players if config.eve is not None else None
    rows = []
    for u in check_counts or [config.u]:
        for p in taps:
            cfg = ProtocolConfig(
                config.variant, config.L, config.secret_bits, config.seed, u,
                InterceptResendZ(players, p), config.coalitions,
            )
            results = run_trials(cfg, trials, seed)
            detected = sum(r.eve_detected for r in results)
            low, high = wilson_interval(detected, trials)
            rows.append({
                "tap_probability": p, "u": u, "trials": trials, "detected": detected,
                "detection_rate": detected / trials, "ci_low": low, "ci_high": high,
            })
    return rows


def sweep_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SWEEP_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (f"{v:.6f}" if isinstance(v, float) else v) for k, v in row.items()})
    return buf.getvalue()

