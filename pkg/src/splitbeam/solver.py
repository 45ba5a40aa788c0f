"""End-to-end decision procedures.

Two routes decide set splitting: the optical pipeline (build the delay
device, simulate every path, classify arrival moments against the full
blocked set) and a deliberately dumb brute-force oracle that scans all
masks and checks the raw containment predicate, touching no devices,
timelines, or moment sets. Equality of the two on small instances is the
correctness argument for the pipeline. Subset sum gets the same pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import (
    EnumerationLimitError,
    ExactMoment,
    Partition,
    SplitInstance,
    SubsetMask,
    SubsetSumInstance,
    splits_family,
)
from .device import build_set_splitting_device, build_subset_sum_device
from .moments import blocked_moments_full
from .sim import DEFAULT_SIM_CAP, SubsetSumDetection, detect_subset_sum, simulate

DEFAULT_ORACLE_CAP = 24
_ORACLE_BLOCK = 1 << 15


class Decision(Enum):
    SOLVABLE = "solvable"
    UNSOLVABLE = "unsolvable"


class Method(Enum):
    OPTICAL = "optical"
    ORACLE = "oracle"


@dataclass(frozen=True)
class SplitAnswer:
    decision: Decision
    partition: Partition | None
    solution_moment: int | None
    method: Method

    @property
    def solvable(self) -> bool:
        return self.decision is Decision.SOLVABLE

    def validate_against(self, inst: SplitInstance) -> bool:
        """Re-verify the returned partition against the raw family masks."""
        if not self.solvable:
            return self.partition is None and self.solution_moment is None
        return (
            self.partition is not None
            and self.solution_moment == self.partition.a1
            and self.partition.n == inst.n
            and splits_family(inst.family, self.partition.a1)
        )


def solve_optical(inst: SplitInstance, *, cap: int = DEFAULT_SIM_CAP) -> SplitAnswer:
    """Decide set splitting through the delay-device pipeline.

    Builds the device, simulates all arrivals, computes the two-sided
    blocked set, and reports the smallest arrival moment outside it. A
    set-splitting timeline arrives at every moment of [0, 2**n), so the
    smallest unblocked moment is the smallest solution arrival.
    """
    device = build_set_splitting_device(inst.n)
    timeline = simulate(device, cap=cap)
    blocked = blocked_moments_full(inst)
    k = blocked.first_absent()
    if k is None:
        return SplitAnswer(Decision.UNSOLVABLE, None, None, Method.OPTICAL)
    mask = timeline.witness_for(k)
    if mask is None or not splits_family(inst.family, mask):
        raise AssertionError(f"optical pipeline produced an invalid witness for moment {k}")
    return SplitAnswer(
        Decision.SOLVABLE, Partition.from_mask(mask, inst.n), k, Method.OPTICAL
    )


def _blocked_flags(family, masks: np.ndarray) -> np.ndarray:
    blocked = np.zeros(len(masks), dtype=bool)
    for f in family:
        part = masks & f
        np.logical_or(blocked, part == f, out=blocked)
        np.logical_or(blocked, part == 0, out=blocked)
    return blocked


def solve_oracle(inst: SplitInstance, *, cap: int = DEFAULT_ORACLE_CAP) -> SplitAnswer:
    """Brute-force verifier: scan masks ascending, check containment directly.

    Works block by block so the scan stays vectorized while still
    returning the first solution in ascending mask order; independent of
    the device, simulation, and moment machinery by construction.
    """
    n = inst.n
    if n > cap:
        raise EnumerationLimitError(
            f"instance too large to enumerate: n={n} exceeds the oracle cap {cap}"
        )
    total = 1 << n
    for lo in range(0, total, _ORACLE_BLOCK):
        masks = np.arange(lo, min(lo + _ORACLE_BLOCK, total), dtype=np.int64)
        free = np.flatnonzero(~_blocked_flags(inst.family, masks))
        if free.size:
            m = lo + int(free[0])
            return SplitAnswer(
                Decision.SOLVABLE, Partition.from_mask(m, n), m, Method.ORACLE
            )
    return SplitAnswer(Decision.UNSOLVABLE, None, None, Method.ORACLE)


def oracle_solution_masks(inst: SplitInstance, *, cap: int = DEFAULT_ORACLE_CAP) -> list[int]:
    """Every solution mask, by the same exhaustive containment scan."""
    n = inst.n
    if n > cap:
        raise EnumerationLimitError(
            f"instance too large to enumerate: n={n} exceeds the oracle cap {cap}"
        )
    masks = np.arange(1 << n, dtype=np.int64)
    return np.flatnonzero(~_blocked_flags(inst.family, masks)).tolist()


def solve_subset_sum(inst: SubsetSumInstance, *, cap: int = DEFAULT_SIM_CAP) -> SubsetSumDetection:
    """Decide subset sum through the pipeline: build, simulate, detect."""
    device = build_subset_sum_device(inst)
    timeline = simulate(device, cap=cap)
    return detect_subset_sum(timeline, inst.target)


def subset_sum_oracle(inst: SubsetSumInstance, *, cap: int = DEFAULT_ORACLE_CAP) -> SubsetSumDetection:
    """Direct enumeration of all subset sums, no device or arrays involved.

    The running list is grown value by value in mask order, so the first
    index holding the target is the smallest witness mask.
    """
    n = inst.n
    if n > cap:
        raise EnumerationLimitError(
            f"instance too large to enumerate: n={n} exceeds the oracle cap {cap}"
        )
    sums = [0]
    for v in inst.values:
        sums += [s + v for s in sums]
    moment = ExactMoment(inst.target, n)
    try:
        mask: SubsetMask | None = sums.index(inst.target)
    except ValueError:
        return SubsetSumDetection(False, None, moment)
    return SubsetSumDetection(True, mask, moment)
