"""Arrival-moment analysis for the set-splitting device.

Because the take delays are the powers of two, the moment k at which a
beam arrives is numerically identical to the bitmask of the subset that
produced it: decoding is free. A family set f rules out every moment
whose subset is a superset of f (that side swallows f whole) and, under
the full two-sided semantics, every moment whose subset is disjoint from
f (the other side swallows it). The union of those ruled-out moments is
the blocked set; any arrival outside it is a solution.

Two variants of the blocked set are deliberately shipped:

* ``blocked_moments_literal`` collects superset moments only, i.e. it
  checks the arriving side but never its complement. It exists so the
  one-sided construction can be reproduced and golden-tested exactly.
* ``blocked_moments_full`` also reflects the check onto the complement
  side, matching the actual problem predicate. The solver uses this one;
  the two differ precisely on moments whose complement (but not the
  subset itself) contains a family set.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

import numpy as np

from .core import (
    EnumerationLimitError,
    SplitInstance,
    SubsetMask,
    _check_universe,
    complement,
    iter_submasks,
    splits_family,
)

# A 2**n-bit Python int is used as a bitset while it stays affordable
# (n <= 28 means at most 32 MiB); beyond that only the sorted sparse
# representation is possible, and enumeration is capped.
BITSET_MAX_N = 28
SPARSE_ENUM_CAP = 1 << 24


class MomentSet:
    """An immutable set of integer moments in [0, 2**n).

    Representation switches between a dense bitset and a sorted tuple at
    density 1/64: superset unions are dense for small instances, sparse
    for large constrained ones, and neither representation is affordable
    across the whole range.
    """

    __slots__ = ("n", "_bits", "_members")

    def __init__(self, n: int, *, _bits: int | None = None, _members: tuple[int, ...] | None = None):
        _check_universe(n)
        self.n = n
        self._bits = _bits
        self._members = _members

    @classmethod
    def from_iterable(cls, n: int, moments: Iterable[int]) -> "MomentSet":
        _check_universe(n)
        members = sorted(set(moments))
        if members and (members[0] < 0 or members[-1] >= (1 << n)):
            raise ValueError(f"moments must lie in [0, 2**{n})")
        if cls._dense_enough(n, len(members)):
            arr = np.zeros(1 << n, dtype=np.uint8)
            arr[members] = 1
            bits = int.from_bytes(np.packbits(arr, bitorder="little").tobytes(), "little")
            return cls(n, _bits=bits)
        return cls(n, _members=tuple(members))

    @classmethod
    def _from_bits(cls, n: int, bits: int) -> "MomentSet":
        if cls._dense_enough(n, bits.bit_count()):
            return cls(n, _bits=bits)
        return cls(n, _members=tuple(_bit_positions(bits, n)))

    @staticmethod
    def _dense_enough(n: int, size: int) -> bool:
        return n <= BITSET_MAX_N and size * 64 >= (1 << n)

    def __len__(self) -> int:
        if self._bits is not None:
            return self._bits.bit_count()
        return len(self._members)

    def __contains__(self, k: int) -> bool:
        if not 0 <= k < (1 << self.n):
            return False
        if self._bits is not None:
            return (self._bits >> k) & 1 == 1
        return _tuple_contains(self._members, k)

    def __iter__(self) -> Iterator[int]:
        if self._bits is not None:
            yield from _bit_positions(self._bits, self.n)
        else:
            yield from self._members

    def to_list(self) -> list[int]:
        return list(self)

    def __or__(self, other: "MomentSet") -> "MomentSet":
        if not isinstance(other, MomentSet):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("cannot union moment sets over different universes")
        if self.n <= BITSET_MAX_N:
            return MomentSet._from_bits(self.n, self._as_bits() | other._as_bits())
        return MomentSet.from_iterable(self.n, list(self._members) + list(other._members))

    def _as_bits(self) -> int:
        if self._bits is not None:
            return self._bits
        bits = 0
        for k in self._members:
            bits |= 1 << k
        return bits

    def complement_set(self) -> "MomentSet":
        """Moments of [0, 2**n) not in this set."""
        total = 1 << self.n
        missing = total - len(self)
        if self.n <= BITSET_MAX_N:
            full = (1 << total) - 1
            return MomentSet._from_bits(self.n, full & ~self._as_bits())
        if missing > SPARSE_ENUM_CAP:
            raise EnumerationLimitError(
                f"complement too large to enumerate: {missing} moments exceed the cap {SPARSE_ENUM_CAP}"
            )
        return MomentSet.from_iterable(self.n, _gaps(self._members, total))

    def reflect(self) -> "MomentSet":
        """The set {2**n - 1 - k} of complement-side images."""
        top = (1 << self.n) - 1
        return MomentSet.from_iterable(self.n, (top - k for k in self))

    def covers_all(self) -> bool:
        return len(self) == (1 << self.n)

    def first_absent(self) -> int | None:
        """Smallest moment of [0, 2**n) not in the set, or None if it covers all."""
        if self._bits is not None:
            total = 1 << self.n
            free = ~self._bits & ((1 << total) - 1)
            if free == 0:
                return None
            return (free & -free).bit_length() - 1
        expected = 0
        for k in self._members:
            if k != expected:
                return expected
            expected += 1
        return expected if expected < (1 << self.n) else None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MomentSet):
            return NotImplemented
        # identical contents always normalize to the identical representation
        return (self.n, self._bits, self._members) == (other.n, other._bits, other._members)

    def __hash__(self) -> int:
        return hash((self.n, self._bits, self._members))

    def __repr__(self) -> str:
        shown = ",".join(str(k) for k in list(self)[:16])
        suffix = ",..." if len(self) > 16 else ""
        return f"MomentSet(n={self.n}, size={len(self)}, {{{shown}{suffix}}})"


def _bit_positions(bits: int, n: int) -> list[int]:
    if bits == 0:
        return []
    buf = bits.to_bytes(((1 << n) + 7) >> 3, "little")
    flags = np.unpackbits(np.frombuffer(buf, dtype=np.uint8), bitorder="little")
    return np.flatnonzero(flags).tolist()


def _tuple_contains(members: tuple[int, ...], k: int) -> bool:
    i = bisect_left(members, k)
    return i < len(members) and members[i] == k


def _gaps(members: tuple[int, ...], total: int) -> Iterator[int]:
    expected = 0
    for k in members:
        while expected < k:
            yield expected
            expected += 1
        expected = k + 1
    while expected < total:
        yield expected
        expected += 1


class WatchPolarity(Enum):
    WATCH_BLOCKED = "blocked"
    WATCH_SOLUTIONS = "solutions"


@dataclass(frozen=True)
class WatchStrategy:
    """The smaller moment list to monitor at the destination, with its meaning."""

    moments: MomentSet
    polarity: WatchPolarity


def decode_moment(k: int, n: int) -> SubsetMask:
    """Subset mask encoded by arrival moment ``k``.

    With power-of-two take delays the decomposition of k into powers of
    two is unique, so the mask is numerically k itself; this function is
    the range-checked statement of that fact.
    """
    _check_universe(n)
    if not 0 <= k < (1 << n):
        raise ValueError(f"moment {k} out of range [0, 2**{n})")
    return k


def encode_moment(mask: SubsetMask, n: int) -> int:
    """Arrival moment of the path taking exactly the masked layers."""
    _check_universe(n)
    if not 0 <= mask < (1 << n):
        raise ValueError(f"mask {mask} out of range for universe size {n}")
    return mask


def _spread(bits: int, free: SubsetMask) -> int:
    # Doubles the moment set once per free element: shifting the bitset
    # left by 2**p adds element p's delay to every member.
    while free:
        low = free & -free
        bits |= bits << low
        free ^= low
    return bits


def superset_moments(f: SubsetMask, n: int, *, cap: int = SPARSE_ENUM_CAP) -> MomentSet:
    """Moments whose decoded subset includes ``f``.

    Exactly the 2**(n - popcount(f)) integers k with k & f == f, built by
    ranging over the subsets of the complement of f and OR-ing f in.
    """
    _check_universe(n)
    if f == 0:
        raise ValueError("family sets must be nonempty: every moment is a superset of the empty set")
    if not 0 < f < (1 << n):
        raise ValueError(f"mask {f} out of range for universe size {n}")
    free = complement(f, n)
    if n <= BITSET_MAX_N:
        return MomentSet._from_bits(n, _spread(1 << f, free))
    count = 1 << (n - f.bit_count())
    if count > cap:
        raise EnumerationLimitError(
            f"superset moments too large to enumerate: {count} moments exceed the cap {cap}"
        )
    return MomentSet.from_iterable(n, (f | s for s in iter_submasks(free)))


def blocked_moments_literal(inst: SplitInstance, *, cap: int = SPARSE_ENUM_CAP) -> MomentSet:
    """One-sided blocked set: union of the superset moments of every family set.

    This checks only whether the arriving subset contains a family set; a
    family set swallowed by the complement side goes unnoticed. Kept for
    exact reproduction of the one-sided construction; decisions should use
    :func:`blocked_moments_full`.
    """
    if inst.n <= BITSET_MAX_N:
        bits = 0
        for f in inst.family:
            bits |= _spread(1 << f, complement(f, inst.n))
        return MomentSet._from_bits(inst.n, bits)
    return _sparse_union(inst, cap, two_sided=False)


def blocked_moments_full(inst: SplitInstance, *, cap: int = SPARSE_ENUM_CAP) -> MomentSet:
    """Two-sided blocked set: moments whose subset or its complement contains a family set.

    Equals the literal set united with its reflection k -> 2**n - 1 - k,
    because the complement of the subset decoding k is the subset decoding
    the reflected moment.
    """
    if inst.n <= BITSET_MAX_N:
        bits = 0
        for f in inst.family:
            # one spread covers both sides: seed with the superset base (f)
            # and the disjoint base (0), then range over the free elements
            bits |= _spread((1 << f) | 1, complement(f, inst.n))
        return MomentSet._from_bits(inst.n, bits)
    return _sparse_union(inst, cap, two_sided=True)


def _sparse_union(inst: SplitInstance, cap: int, *, two_sided: bool) -> MomentSet:
    members: set[int] = set()
    for f in inst.family:
        free = complement(f, inst.n)
        count = (2 if two_sided else 1) << (inst.n - f.bit_count())
        if count > cap or len(members) + count > 4 * cap:
            raise EnumerationLimitError(
                f"blocked moments too large to enumerate: {count} new moments exceed the cap {cap}"
            )
        for s in iter_submasks(free):
            members.add(f | s)
            if two_sided:
                members.add(s)
    return MomentSet.from_iterable(inst.n, members)


def choose_watch(blocked: MomentSet) -> WatchStrategy:
    """Pick the smaller side to monitor.

    If fewer than half of all moments are blocked, watch those (an arrival
    there is a non-solution); otherwise watch the complement, where any
    arrival is a solution. Either way the watched list never exceeds
    2**(n-1) moments.
    """
    half = 1 << (blocked.n - 1)
    if len(blocked) < half:
        return WatchStrategy(blocked, WatchPolarity.WATCH_BLOCKED)
    return WatchStrategy(blocked.complement_set(), WatchPolarity.WATCH_SOLUTIONS)


def is_solution_moment(k: int, inst: SplitInstance) -> bool:
    """True iff an arrival at moment ``k`` announces a valid split.

    Checked directly on the decoded subset and its complement against the
    raw family masks; equivalent to k not being in the full blocked set.
    """
    mask = decode_moment(k, inst.n)
    return splits_family(inst.family, mask)
