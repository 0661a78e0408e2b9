"""Growth measurements, set generators, seeded sweeps and extremal search."""
from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Iterable

import numpy as np

from .conditions import check_hypothesis_thm1, check_hypothesis_thm2
from .energy import cs_growth_check, dilate_energy, energy_sum_over_ratios
from .errors import BadModel, HypothesisUnsatisfied, NTooLarge
from .field import FieldTable
from .sets import (FSet, classify_case, difference_set, dilate, distance_composite,
                   normalize as normalize_set, square_set, sumset)
from .subfields import subfield

log = logging.getLogger(__name__)

MODELS = ("uniform", "interval", "subfield_coset", "geometric")
OBJECTIVES = ("delta", "maxpair", "shifted")
CSV_COLUMNS = ("p", "k", "q", "model", "seed", "n", "size_sum", "size_sq_sum", "size_shift",
               "delta", "hyp1", "hyp2", "case", "exp_sum", "exp_sq_sum", "exp_shift", "exp_delta")

# (numerator, denominator) of the exponent excess in each growth bound
THM1_EXCESS = (1, 21)
THM2_EXCESS = (1, 42)
COR_EXCESS = (1, 84)


def exceeds_power(size: int, n: int, excess: tuple[int, int]) -> bool:
    """size >= n ** (1 + u/v), decided exactly as size**v >= n**(v+u)."""
    u, v = excess
    return size**v >= n ** (v + u)


def _exponent(size: int, n: int) -> float | None:
    if n < 2:
        return None
    return round(math.log(size) / math.log(n), 6)


@dataclass
class GrowthRecord:
    p: int
    k: int
    q: int
    model: str
    seed: int | None
    n: int
    size_sum: int
    size_sq_sum: int
    size_shift: int
    delta: int
    hyp1: bool
    hyp2: bool
    case: str
    exp_sum: float | None
    exp_sq_sum: float | None
    exp_shift: float | None
    exp_delta: float | None
    size_sq: int = 0
    size_diff_sq: int = 0
    case_r: int | None = None
    case_witness: tuple | None = None
    cs_energy: int = 0
    cs_lhs: int = 0
    cs_rhs: int = 0
    cs_epsilon: float | None = None
    chain_r: int | None = None
    chain_ok: bool | None = None
    elements: list = field(default_factory=list)

    @property
    def size_maxpair(self) -> int:
        return max(self.size_sum, self.size_sq_sum)

    @property
    def cs_holds(self) -> bool:
        return self.cs_lhs <= self.cs_rhs

    def csv_row(self) -> list[str]:
        row = []
        for col in CSV_COLUMNS:
            v = getattr(self, col)
            if v is None:
                row.append("")
            elif isinstance(v, bool):
                row.append("true" if v else "false")
            elif isinstance(v, float):
                row.append(f"{v:.6f}")
            else:
                row.append(str(v))
        return row

    def to_dict(self) -> dict:
        d = asdict(self)
        d["case_witness"] = list(self.case_witness) if self.case_witness else None
        return d


def pigeonhole_chain(A: FSet) -> tuple[int, bool]:
    """Least-energy ratio r and the exact check |A + rA| * E+(A, rA) >= |A|^4."""
    res = energy_sum_over_ratios(A)
    r = res.witness_r
    size = len(sumset(A, dilate(r, A)))
    # rA as a multiset has |A| points, so Cauchy-Schwarz gives (|A| |A|)^2 <= |supp| E
    return r, size * res.witness_energy >= len(A) ** 4


def measure(A: FSet, model: str = "given", seed: int | None = None,
            normalize: bool = False, chain: bool = True) -> GrowthRecord:
    if normalize:
        A = normalize_set(A)
    F = A.field
    n = len(A)
    sq = square_set(A)
    d2 = square_set(difference_set(A, A))
    size_sum = len(sumset(A, A))
    size_sq_sum = len(sumset(sq, sq))
    size_shift = len(sumset(A, sq))
    delta = len(distance_composite(A))
    if n >= 2:
        label = classify_case(A)
        case, case_r, case_w = label.label, label.r, label.witness
    else:
        case, case_r, case_w = "n/a", None, None
    cs = cs_growth_check(A)
    chain_r = chain_ok = None
    if chain and n >= 2:
        chain_r, chain_ok = pigeonhole_chain(A)
    return GrowthRecord(
        p=F.p, k=F.k, q=F.q, model=model, seed=seed, n=n,
        size_sum=size_sum, size_sq_sum=size_sq_sum, size_shift=size_shift, delta=delta,
        hyp1=check_hypothesis_thm1(A).passed, hyp2=check_hypothesis_thm2(A).passed,
        case=case,
        exp_sum=_exponent(size_sum, n), exp_sq_sum=_exponent(size_sq_sum, n),
        exp_shift=_exponent(size_shift, n), exp_delta=_exponent(delta, n),
        size_sq=len(sq), size_diff_sq=len(d2), case_r=case_r, case_witness=case_w,
        cs_energy=cs.energy, cs_lhs=cs.lhs, cs_rhs=cs.rhs, cs_epsilon=cs.epsilon,
        chain_r=chain_r, chain_ok=chain_ok, elements=A.to_list(),
    )


def generate(model: str, F: FieldTable, n: int, seed: int | None = None, *,
             subfield_degree: int | None = None, dilation: int | None = None) -> FSet:
    """Deterministic test sets.

    uniform: n distinct elements; interval: {0..n-1} (prime fields only);
    subfield_coset: n elements of aG; geometric: {g^0..g^(n-1)} for the
    field's primitive element g.
    """
    if model not in MODELS:
        raise BadModel(f"unknown model {model!r}; choose from {', '.join(MODELS)}")
    if n < 0 or n > F.q:
        raise NTooLarge(f"n = {n} exceeds q = {F.q}")
    if model == "interval":
        if F.k != 1:
            raise BadModel("interval model needs a prime field")
        return FSet(F, range(n))
    if model == "geometric":
        if n > F.q - 1:
            raise NTooLarge(f"geometric model has at most q-1 = {F.q - 1} elements")
        return FSet.from_indices(F, F.exp[:n])
    rng = np.random.default_rng(seed)
    if model == "uniform":
        if seed is None:
            raise ValueError("uniform model needs a seed")
        return FSet.from_indices(F, rng.choice(F.q, size=n, replace=False))
    # subfield_coset
    if subfield_degree is None:
        subfield_degree = next(d for d in range(1, F.k + 1) if F.k % d == 0 and F.p**d >= n)
    G = subfield(F, subfield_degree)
    if n > G.size:
        raise NTooLarge(f"n = {n} exceeds |G| = {G.size}")
    if dilation is None:
        if seed is None:
            raise ValueError("subfield_coset model needs a seed or an explicit dilation")
        dilation = int(rng.integers(1, F.q))
    coset = dilate(dilation, G.elements).elements
    if n == len(coset):
        return FSet.from_indices(F, coset)
    if seed is None:
        return FSet.from_indices(F, coset[:n])
    return FSet.from_indices(F, rng.choice(coset, size=n, replace=False))


def trial_seed(seed: int, n: int, trial: int) -> int:
    return int(np.random.SeedSequence([seed, n, trial]).generate_state(1)[0])


@dataclass(frozen=True)
class BoundTally:
    name: str
    hypothesis: str
    passed: int
    total: int
    passed_hyp: int
    total_hyp: int

    @property
    def fraction(self) -> float:
        return self.passed / self.total if self.total else float("nan")

    @property
    def fraction_hyp(self) -> float | None:
        return self.passed_hyp / self.total_hyp if self.total_hyp else None


def tally(records: list[GrowthRecord]) -> list[BoundTally]:
    """Pass counts of the three growth bounds with constant 1, over all
    records and over those meeting the matching hypothesis."""
    specs = (
        ("delta >= n^(1+1/21)", "hyp1", lambda r: exceeds_power(r.delta, r.n, THM1_EXCESS)),
        ("max(|A+A|,|A^2+A^2|) >= n^(1+1/42)", "hyp2",
         lambda r: exceeds_power(r.size_maxpair, r.n, THM2_EXCESS)),
        ("|A+A^2| >= n^(1+1/84)", "hyp2", lambda r: exceeds_power(r.size_shift, r.n, COR_EXCESS)),
    )
    out = []
    for name, hyp, ok in specs:
        hits = [ok(r) for r in records]
        gated = [h for h, r in zip(hits, records) if getattr(r, hyp)]
        out.append(BoundTally(name, hyp, sum(hits), len(hits), sum(gated), len(gated)))
    return out


@dataclass
class SweepResult:
    records: list[GrowthRecord]
    tallies: list[BoundTally]

    def to_csv(self) -> str:
        return records_to_csv(self.records)


def parse_n_range(text: str) -> list[int]:
    """'6..10' -> [6..10]; '4,8,16' -> [4, 8, 16]; '10' -> [10]."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise ValueError(f"empty n range {text!r}")
    return out


def sweep(model: str, F: FieldTable, n_values: Iterable[int], trials: int, seed: int,
          **gen_kwargs) -> SweepResult:
    """One record per (n, trial), in that order; each record's seed regenerates its set."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    records = []
    for n in n_values:
        for t in range(trials):
            s = trial_seed(seed, n, t)
            A = generate(model, F, n, s, **gen_kwargs)
            records.append(measure(A, model=model, seed=s))
    return SweepResult(records, tally(records))


def records_to_csv(records: list[GrowthRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(r.csv_row())
    return buf.getvalue()


# Extremal search


def objective_value(A: FSet, objective: str) -> int:
    if objective == "delta":
        return len(distance_composite(A))
    sq = square_set(A)
    if objective == "maxpair":
        return max(len(sumset(A, A)), len(sumset(sq, sq)))
    if objective == "shifted":
        return len(sumset(A, sq))
    raise ValueError(f"unknown objective {objective!r}; choose from {', '.join(OBJECTIVES)}")


def _hypothesis_fn(objective: str, hypothesis: str):
    if hypothesis == "auto":
        hypothesis = "thm1" if objective == "delta" else "thm2"
    return hypothesis, {
        "thm1": lambda A: check_hypothesis_thm1(A).passed,
        "thm2": lambda A: check_hypothesis_thm2(A).passed,
        "none": lambda A: True,
    }[hypothesis]


@dataclass
class SearchState:
    objective: str
    hypothesis: str
    seed: int
    current: FSet
    current_value: int
    best: FSet
    best_value: int
    start_value: int
    iterations: int = 0
    accepted: int = 0
    rejected_hypothesis: int = 0
    best_excluded_value: int | None = None
    history: list[int] = field(default_factory=list)
    best_record: GrowthRecord | None = None


def extremal_search(F: FieldTable, n: int, iterations: int, seed: int, objective: str = "delta",
                    hypothesis: str = "auto", start: FSet | None = None) -> SearchState:
    """Hill climbing over n-subsets by random single-element swaps.

    A swap is kept when the objective does not increase and the set still
    meets the hypothesis.  ``iterations`` counts the evaluation of the start
    set, so ``iterations=1`` only evaluates the start.
    """
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}")
    if not 2 <= n <= F.q:
        raise NTooLarge(f"need 2 <= n <= q = {F.q}, got {n}")
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    hyp_name, hyp_ok = _hypothesis_fn(objective, hypothesis)
    rng = np.random.default_rng(seed)

    if start is None:
        candidates = [FSet(F, range(n))] if F.k == 1 else []
        for _ in range(1000):
            candidates.append(FSet.from_indices(F, rng.choice(F.q, size=n, replace=False)))
        start = next((c for c in candidates if hyp_ok(c)), None)
        if start is None:
            raise HypothesisUnsatisfied(
                f"no {hyp_name}-passing start set of size {n} found; try hypothesis='none'")
    elif len(start) != n:
        raise ValueError("start set has the wrong size")
    elif not hyp_ok(start):
        raise HypothesisUnsatisfied(f"start set fails {hyp_name}")

    value = objective_value(start, objective)
    st = SearchState(objective, hyp_name, seed, start, value, start, value, value,
                     iterations=1, history=[value])
    for _ in range(iterations - 1):
        st.iterations += 1
        cur = st.current.elements
        out = int(rng.choice(cur))
        inn = int(rng.choice(np.flatnonzero(~st.current.bits)))
        mask = st.current.bits.copy()
        mask[out] = False
        mask[inn] = True
        cand = FSet.from_mask(F, mask)
        v = objective_value(cand, objective)
        if v <= st.current_value:
            if hyp_ok(cand):
                st.current, st.current_value = cand, v
                st.accepted += 1
                if v < st.best_value:
                    st.best, st.best_value = cand, v
            else:
                st.rejected_hypothesis += 1
                if st.best_excluded_value is None or v < st.best_excluded_value:
                    st.best_excluded_value = v
                    log.debug("excluded %s with %s=%d (fails %s)", cand, objective, v, hyp_name)
        st.history.append(st.best_value)
    st.best_record = measure(st.best, model="search", seed=seed)
    return st
