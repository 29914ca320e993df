"""Seeded verification campaigns.

Each trial draws its own generator from ``(seed, trial)`` so a report can
be reproduced trial by trial, and reports serialize with sorted keys so
the same arguments give the same bytes.
"""
from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from math import gcd

from .catalog import catalog
from .constructions import (clasper_surgery, random_cmk_clasper, realization_clasper,
                            realize_milnor, unlink)
from .diagram import format_slice_word
from .milnor import MagnusData, all_indices, r_of

__all__ = ["TrialResult", "VerificationReport", "verify_theorem1", "verify_cmk",
           "TRIAL_LINKS", "NONINVARIANCE_INDEX", "same_residue"]

TRIAL_LINKS = ("unlink-2", "unlink-3", "hopf", "hopf-alt", "trefoil", "whitehead",
               "whitehead-alt", "borromean", "borromean-alt")

# r(I) = k+1 indices realized by one clasper with k+1 leaves on component 1
NONINVARIANCE_INDEX = {1: (1, 1, 2, 2), 2: (1, 1, 1, 2, 3), 3: (1, 1, 1, 1, 2, 3)}


@dataclass
class TrialResult:
    trial: int
    link: str
    component: int
    checked: int
    failures: list = field(default_factory=list)
    higher_changed: int = 0
    crossings: int = 0
    provenance: list = field(default_factory=list)
    dump: dict | None = None

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class VerificationReport:
    campaign: str
    seed: int
    trials: int
    config: dict
    results: list = field(default_factory=list)
    noninvariance: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(not r["failures"] for r in self.results) and all(
            n["changed"] for n in self.noninvariance)

    @property
    def failures(self) -> int:
        return sum(1 for r in self.results if r["failures"]) + sum(
            1 for n in self.noninvariance if not n["changed"])

    def to_json(self) -> str:
        body = {"campaign": self.campaign, "seed": self.seed, "trials": self.trials,
                "config": self.config, "passed": self.passed, "failures": self.failures,
                "results": self.results, "noninvariance": self.noninvariance}
        return json.dumps(body, sort_keys=True, indent=1)

    def summary(self) -> str:
        checked = sum(r["checked"] for r in self.results)
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{self.campaign} seed={self.seed} trials={self.trials}: {status}",
                 f"  invariance: {checked} index checks, {self.failures} failing trials"]
        moved = sum(1 for r in self.results if r["higher_changed"])
        lines.append(f"  trials that changed some higher invariant: {moved}")
        for n in self.noninvariance:
            lines.append(f"  realize {n['index']}: mu {n['before']} -> {n['after']} "
                         f"(delta {n['delta']}, {n['max_leaves_on_one_component']} leaves on one component)")
        return "\n".join(lines)


def same_residue(a, b) -> bool:
    """Equal as residues modulo the common indeterminacy."""
    g = gcd(a.delta, b.delta)
    return a.value == b.value if g == 0 else (a.value - b.value) % g == 0


def trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(f"{seed}:{trial}")


def _compare(before, after, indices, k):
    failures = []
    higher = 0
    checked = 0
    for I in indices:
        a, b = before.mu_bar(I), after.mu_bar(I)
        if r_of(I) <= k:
            checked += 1
            if not same_residue(a, b):
                failures.append({"index": list(I), "before": [a.value, a.delta],
                                 "after": [b.value, b.delta]})
        elif not same_residue(a, b):
            higher += 1
    return checked, failures, higher


def _run_trials(campaign, seed, trials, max_len, k, make_clasper, links):
    results = []
    for t in range(trials):
        rng = trial_rng(seed, t)
        name = rng.choice(links)
        d = catalog(name)
        c = rng.randrange(1, d.n_components + 1)
        clasper = make_clasper(d, c, rng)
        d2 = clasper_surgery(d, clasper)
        q = max_len - 1
        before, after = MagnusData(d, q), MagnusData(d2, q)
        indices = all_indices(d.n_components, max_len)
        checked, failures, higher = _compare(before, after, indices, k)
        res = TrialResult(t, name, c, checked, failures, higher, d2.n_crossings,
                          list(d2.provenance[-1:]))
        if failures:
            res.dump = {"word": format_slice_word(d.word), "clasper": clasper.to_json()}
        results.append(asdict(res) | {"passed": res.passed})
    return results


def verify_theorem1(k: int, max_index_length: int = 6, trials: int = 100, seed: int = 0,
                    links=TRIAL_LINKS, noninvariance: bool = True) -> VerificationReport:
    """Self C_k-moves keep every mu-bar with r(I) <= k; some r(I) = k+1 invariant moves."""
    if k < 1 or trials < 0 or max_index_length < 2:
        raise ValueError("need k >= 1, trials >= 0 and index length >= 2")
    report = VerificationReport("theorem1", seed, trials,
                                {"k": k, "max_index_length": max_index_length, "links": list(links)})

    def make(d, c, rng):
        return random_cmk_clasper(d, k, c, k + 1, rng)
    report.results = _run_trials("theorem1", seed, trials, max_index_length, k, make, links)
    I = NONINVARIANCE_INDEX.get(k)
    if noninvariance and I is not None and len(I) <= max_index_length:
        report.noninvariance.append(noninvariance_check(I))
    return report


def noninvariance_check(I) -> dict:
    """mu(I) on the unlink versus after one realizing clasper surgery."""
    n = max(I)
    clasper = realization_clasper(I)
    before = MagnusData(unlink(n), len(I) - 1).mu_bar(I)
    after = MagnusData(realize_milnor(I, budget=None), len(I) - 1).mu_bar(I)
    counts = [sum(1 for lf in clasper.leaves if lf.component == c) for c in range(1, n + 1)]
    return {"index": list(I), "r": r_of(I), "before": before.value, "after": after.value,
            "delta": after.delta, "clasper": clasper.to_json(),
            "max_leaves_on_one_component": max(counts),
            "changed": before.value == 0 and abs(after.signed_residue) == 1}


def verify_cmk(m: int, k: int, trials: int = 100, seed: int = 0, max_index_length: int = 5,
               links=TRIAL_LINKS) -> VerificationReport:
    """Degree-m claspers with k+1 leaves on one component keep mu-bar with r(I) <= k."""
    if not m >= k >= 1 or trials < 0:
        raise ValueError("need m >= k >= 1 and trials >= 0")
    report = VerificationReport("cmk", seed, trials,
                                {"m": m, "k": k, "max_index_length": max_index_length, "links": list(links)})

    def make(d, c, rng):
        return random_cmk_clasper(d, m, c, k + 1, rng)
    report.results = _run_trials("cmk", seed, trials, max_index_length, k, make, links)
    return report
