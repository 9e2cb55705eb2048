"""Two-user asynchronous rendezvous simulation.

User 1 hops ``seq1(t mod P1)``; user 2 hops ``seq2((t + d) mod P2)`` for a
relative drift d.  Times are reported with the +1 convention, so meeting in
slot 0 gives TTR 1.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass
from math import lcm, sqrt
from typing import Callable, Iterable, Sequence

import numpy as np

from .core import ChSequence, PreconditionError, counter_draws
from .machseq import general_mach_sequence, ideal_ch
from .orthoch import ortho_ch, replace_unavailable

Generator = Callable[[Sequence[int], int], ChSequence]

CSV_HEADER = ("drift", "seed", "n1", "n2", "G", "T", "Tsharp")
UNMET = -1  # CSV sentinel for "no rendezvous within the horizon"


@dataclass(frozen=True)
class RendezvousReport:
    drift: int
    ttr: int | None
    per_channel: dict[int, int | None]
    t_sharp: int | None
    common_channels: tuple[int, ...]
    n1: int
    n2: int
    seed: int | None = None

    @property
    def G(self) -> int:
        return len(self.common_channels)

    def csv_row(self) -> tuple:
        return (
            self.drift,
            "" if self.seed is None else self.seed,
            self.n1, self.n2, self.G,
            UNMET if self.ttr is None else self.ttr,
            UNMET if self.t_sharp is None else self.t_sharp,
        )


def _avail(seq: ChSequence, avail: Iterable[int] | None) -> tuple[int, ...]:
    if avail is None:
        return tuple(range(seq.channel_universe))
    chans = tuple(sorted(set(int(c) for c in avail)))
    if not chans:
        raise PreconditionError("available channel set is empty")
    stray = set(seq.values.tolist()) - set(chans)
    if stray:
        raise PreconditionError(f"sequence hops on unavailable channels {sorted(stray)}")
    return chans


def common_channels(avail1: Iterable[int], avail2: Iterable[int]) -> tuple[int, ...]:
    common = tuple(sorted(set(avail1) & set(avail2)))
    if not common:
        raise PreconditionError("no common channel: rendezvous is impossible")
    return common


def _first_true(mask: np.ndarray) -> np.ndarray:
    """Index of the first True per row, -1 where a row has none."""
    first = mask.argmax(axis=1)
    return np.where(mask.any(axis=1), first, -1)


def meet_times(v1: np.ndarray, v2: np.ndarray, drifts: np.ndarray, horizon: int,
               channels: Sequence[int]) -> tuple[np.ndarray, dict[int, np.ndarray]]:
    """Vectorised kernel: first-meet slot (0-based, -1 if none) for each drift,
    overall and per channel."""
    t = np.arange(horizon)
    x1 = v1[t % v1.size]
    x2 = v2[(t[None, :] + drifts[:, None]) % v2.size]
    eq = x2 == x1[None, :]
    overall = _first_true(eq)
    per = {k: _first_true(eq & (x1 == k)[None, :]) for k in channels}
    return overall, per


def _reports(v1, v2, drifts, horizon, common, n1, n2, seed) -> list[RendezvousReport]:
    overall, per = meet_times(v1, v2, np.asarray(drifts, dtype=np.int64), horizon, common)
    out = []
    for idx, d in enumerate(drifts):
        per_channel = {k: (int(per[k][idx]) + 1 if per[k][idx] >= 0 else None) for k in common}
        met = list(per_channel.values())
        t_sharp = None if any(v is None for v in met) else max(met)
        ttr = int(overall[idx]) + 1 if overall[idx] >= 0 else None
        out.append(RendezvousReport(int(d), ttr, per_channel, t_sharp, tuple(common), n1, n2, seed))
    return out


def default_horizon(seq1: ChSequence, seq2: ChSequence) -> int:
    return 2 * max(seq1.period, seq2.period)


def run(seq1: ChSequence, seq2: ChSequence, drift: int, horizon: int | None = None,
        avail1: Iterable[int] | None = None, avail2: Iterable[int] | None = None,
        seed: int | None = None) -> RendezvousReport:
    a1, a2 = _avail(seq1, avail1), _avail(seq2, avail2)
    common = common_channels(a1, a2)
    h = default_horizon(seq1, seq2) if horizon is None else horizon
    if h < 1:
        raise PreconditionError("horizon must be at least 1")
    return _reports(seq1.values, seq2.values, [drift], h, common, len(a1), len(a2), seed)[0]


def run_all_drifts(seq1: ChSequence, seq2: ChSequence, avail1=None, avail2=None,
                   horizon: int | None = None, seed: int | None = None) -> list[RendezvousReport]:
    """Reports for every drift in one joint period of the two sequences."""
    a1, a2 = _avail(seq1, avail1), _avail(seq2, avail2)
    common = common_channels(a1, a2)
    h = default_horizon(seq1, seq2) if horizon is None else horizon
    drifts = list(range(lcm(seq1.period, seq2.period)))
    out: list[RendezvousReport] = []
    chunk = max(1, 4_000_000 // max(h, 1))  # bound the (drifts x horizon) working set
    for start in range(0, len(drifts), chunk):
        out.extend(_reports(seq1.values, seq2.values, drifts[start:start + chunk], h,
                            common, len(a1), len(a2), seed))
    return out


def user_seeds(seed: int) -> tuple[int, int]:
    """Distinct generator seeds for the two users derived from one sweep seed."""
    return 2 * seed, 2 * seed + 1


@dataclass(frozen=True)
class SweepResult:
    metric: str
    value: int | None  # None when some run never met within the horizon
    witness: tuple[int, int] | None  # (drift, seed) attaining the value
    runs: int
    unmet: int
    reports: tuple[RendezvousReport, ...] = ()


def sweep(gen1: Generator, gen2: Generator, avail1: Sequence[int], avail2: Sequence[int],
          seeds: Iterable[int], horizon: int | None = None) -> list[RendezvousReport]:
    common_channels(avail1, avail2)
    reports: list[RendezvousReport] = []
    for seed in seeds:
        s1, s2 = user_seeds(seed)
        seq1, seq2 = gen1(avail1, s1), gen2(avail2, s2)
        reports.extend(run_all_drifts(seq1, seq2, avail1, avail2, horizon, seed))
    return reports


def _worst(reports: Sequence[RendezvousReport], metric: str, attr: str) -> SweepResult:
    worst_val, witness, unmet = -1, None, 0
    unmet_witness = None
    for rep in reports:
        v = getattr(rep, attr)
        if v is None:
            unmet += 1
            if unmet_witness is None:
                unmet_witness = (rep.drift, rep.seed)
            continue
        if v > worst_val:
            worst_val, witness = v, (rep.drift, rep.seed)
    if unmet:
        return SweepResult(metric, None, unmet_witness, len(reports), unmet, tuple(reports))
    return SweepResult(metric, worst_val, witness, len(reports), 0, tuple(reports))


def mttr_sweep(gen1: Generator, gen2: Generator, avail1, avail2, seeds=(0,),
               horizon: int | None = None) -> SweepResult:
    return _worst(sweep(gen1, gen2, avail1, avail2, seeds, horizon), "MTTR", "ttr")


def mcttr_sweep(gen1: Generator, gen2: Generator, avail1, avail2, seeds=(0,),
                horizon: int | None = None) -> SweepResult:
    return _worst(sweep(gen1, gen2, avail1, avail2, seeds, horizon), "MCTTR", "t_sharp")


def summarize(reports: Sequence[RendezvousReport]) -> tuple[SweepResult, SweepResult]:
    return _worst(reports, "MTTR", "ttr"), _worst(reports, "MCTTR", "t_sharp")


@dataclass(frozen=True)
class EttrEstimate:
    mean: float
    stderr: float
    trials: int
    unmet: int
    drift_model: str = "uniform-random drift over one joint period"


def ettr_estimate(gen1: Generator, gen2: Generator, avail1, avail2, trials: int,
                  rng_seed: int = 0, horizon: int | None = None) -> EttrEstimate:
    """Monte-Carlo ETTR over uniform drifts and fresh generator seeds.

    Trials that never meet within the horizon are counted in ``unmet`` and
    left out of the mean.
    """
    if trials < 1:
        raise PreconditionError("trials must be >= 1")
    common_channels(avail1, avail2)
    rng = np.random.default_rng(rng_seed)
    ttrs = []
    unmet = 0
    for _ in range(trials):
        s1, s2 = user_seeds(int(rng.integers(0, 2**31)))
        seq1, seq2 = gen1(avail1, s1), gen2(avail2, s2)
        period = lcm(seq1.period, seq2.period)
        drift = int(rng.integers(0, period))
        h = default_horizon(seq1, seq2) if horizon is None else horizon
        v1, v2 = seq1.values, seq2.values
        # Plain loop: the expected meeting time is short, vectorising the whole horizon is wasteful.
        p1, p2 = v1.size, v2.size
        t_meet = None
        for t in range(h):
            if v1[t % p1] == v2[(t + drift) % p2]:
                t_meet = t + 1
                break
        if t_meet is None:
            unmet += 1
        else:
            ttrs.append(t_meet)
    arr = np.asarray(ttrs, dtype=float)
    mean = float(arr.mean()) if arr.size else float("nan")
    stderr = float(arr.std(ddof=1) / sqrt(arr.size)) if arr.size > 1 else 0.0
    return EttrEstimate(mean, stderr, trials, unmet)


# -- sequence generators: gen(avail, seed) -> ChSequence ---------------------

def ortho_generator(n_channels: int, r: int | None = None) -> Generator:
    def gen(avail: Sequence[int], seed: int) -> ChSequence:
        forced = r if (r is not None and r in avail) else None
        return ortho_ch(avail, n_channels, seed, forced)
    return gen


def _replaced(base: ChSequence, avail: Sequence[int], seed: int, label: str) -> ChSequence:
    chans = sorted(set(avail))
    if chans == list(range(base.channel_universe)):
        return base
    bad = [c for c in chans if not 0 <= c < base.channel_universe]
    if bad:
        raise PreconditionError(f"channels {bad} outside [0, {base.channel_universe})")
    values = replace_unavailable(base.values, chans, seed)
    return ChSequence(values, base.channel_universe, f"{base.provenance},{label},seed={seed}")


def ideal_generator(L: int) -> Generator:
    base = ideal_ch(L)

    def gen(avail: Sequence[int], seed: int) -> ChSequence:
        return _replaced(base, avail, seed, "replace=per-slot")
    return gen


def general_generator(n_channels: int) -> Generator:
    base = general_mach_sequence(n_channels)

    def gen(avail: Sequence[int], seed: int) -> ChSequence:
        return _replaced(base, avail, seed, "replace=per-slot")
    return gen


def random_generator(n_channels: int, period: int = 128) -> Generator:
    """Reference random algorithm: an independent uniform pick from ``avail`` each slot."""
    def gen(avail: Sequence[int], seed: int) -> ChSequence:
        chans = np.asarray(sorted(set(avail)), dtype=np.int64)
        picks = counter_draws(seed, period, chans.size, stream=2)
        return ChSequence(chans[picks], n_channels, f"random:period={period},seed={seed}")
    return gen


def constant_generator(n_channels: int, channel: int = 0) -> Generator:
    def gen(avail: Sequence[int], seed: int) -> ChSequence:
        return ChSequence(np.array([channel]), n_channels, f"constant:{channel}")
    return gen


# -- export ------------------------------------------------------------------

def reports_to_csv(reports: Iterable[RendezvousReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for rep in reports:
        w.writerow(rep.csv_row())
    return buf.getvalue()


def summary_document(period: int, bound: int, result: SweepResult, **extra) -> str:
    doc = {
        "period": period,
        "metric": result.metric,
        "bound": bound,
        "observed_max": result.value,
        "witness": None if result.witness is None else {"drift": result.witness[0], "seed": result.witness[1]},
        "runs": result.runs,
        "unmet": result.unmet,
        "pass": result.value is not None and result.value <= bound,
    }
    doc.update(extra)
    return json.dumps(doc, indent=2, sort_keys=True)


def report_dict(rep: RendezvousReport) -> dict:
    d = asdict(rep)
    d["G"] = rep.G
    d["per_channel"] = {str(k): v for k, v in rep.per_channel.items()}
    return d
