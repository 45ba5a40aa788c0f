"""Delay-graph construction.

Both devices are chains of n layers between a source and a destination
node. Each layer offers two parallel arcs: a "take" arc whose base delay
encodes one element, and a zero-base-delay "skip" arc. A beam split at
every layer therefore traverses all 2**n take/skip combinations, and each
complete path accumulates the take delays of its chosen layers. The
uniform epsilon pad every physical arc needs is presentation metadata,
not arc data, so core delays stay integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .core import MAX_UNIVERSE, SubsetMask, SubsetSumInstance, _check_mask, _check_universe


class DeviceKind(Enum):
    SUBSET_SUM = "subset-sum"
    SET_SPLITTING = "set-splitting"


@dataclass(frozen=True)
class ArcPair:
    """One layer's pair of parallel arcs (base delays, epsilon excluded)."""

    take_delay: int
    skip_delay: int = 0

    def __post_init__(self):
        if self.take_delay < 0 or self.skip_delay != 0:
            raise ValueError("take delay must be nonnegative and skip delay zero")


@dataclass(frozen=True)
class DelayDevice:
    """A layered delay graph, one ArcPair per element."""

    kind: DeviceKind
    layers: tuple[ArcPair, ...]
    target: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        if not 1 <= len(self.layers) <= MAX_UNIVERSE:
            raise ValueError(f"device must have between 1 and {MAX_UNIVERSE} layers")

    @property
    def n(self) -> int:
        return len(self.layers)

    @property
    def take_delays(self) -> tuple[int, ...]:
        return tuple(arc.take_delay for arc in self.layers)

    def path_core_delay(self, mask: SubsetMask) -> int:
        """Total base delay of the complete path taking exactly the masked layers."""
        _check_mask(mask, self.n)
        total = 0
        while mask:
            low = mask & -mask
            total += self.layers[low.bit_length() - 1].take_delay
            mask ^= low
        return total

    def dump(self) -> str:
        """Human-readable arc table."""
        lines = [f"device kind={self.kind.value} n={self.n}"]
        if self.target is not None:
            lines.append(f"target={self.target}")
        for i, arc in enumerate(self.layers, start=1):
            lines.append(f"layer {i}: take={arc.take_delay} skip={arc.skip_delay}")
        return "\n".join(lines)


def build_set_splitting_device(n: int) -> DelayDevice:
    """Device whose layer i take delay is 2**(i-1).

    Powers of two are the smallest values making every subset sum distinct,
    so the arrival moment of a path, read as a binary integer, is exactly
    the mask of the layers it took.
    """
    _check_universe(n)
    return DelayDevice(
        DeviceKind.SET_SPLITTING,
        tuple(ArcPair(1 << i) for i in range(n)),
    )


def build_subset_sum_device(inst: SubsetSumInstance) -> DelayDevice:
    """Device whose layer i take delay is the i-th input value."""
    return DelayDevice(
        DeviceKind.SUBSET_SUM,
        tuple(ArcPair(v) for v in inst.values),
        target=inst.target,
    )
