"""Domain types shared by every stage of the pipeline.

Subsets of the universe are plain Python ints used as bitmasks: bit (i-1)
set means element i is in the subset (element indices are 1-based in all
text formats, 0-based as bit positions internally). The universe size is
capped at 63 so every arrival moment fits exact unsigned 64-bit
arithmetic; no arbitrary-precision layer is needed or wanted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

MAX_UNIVERSE = 63

#: A subset of the universe encoded as a bitmask.
SubsetMask = int


class ParseError(ValueError):
    """Malformed instance text. Carries the 1-based offending line number."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class EnumerationLimitError(ValueError):
    """An operation would enumerate more states than its configured cap."""


def _check_universe(n: int) -> None:
    if not 1 <= n <= MAX_UNIVERSE:
        raise ValueError(f"universe size must be in [1, {MAX_UNIVERSE}], got {n}")


def _check_mask(mask: int, n: int) -> None:
    if not 0 <= mask < (1 << n):
        raise ValueError(f"mask {mask} out of range for universe size {n}")


def complement(mask: SubsetMask, n: int) -> SubsetMask:
    """Complement of a subset within a universe of ``n`` elements."""
    _check_universe(n)
    _check_mask(mask, n)
    return ((1 << n) - 1) ^ mask


def splits_family(family: Iterable[SubsetMask], mask: SubsetMask) -> bool:
    """True iff neither ``mask`` nor its complement wholly contains any family set.

    This is the raw decision predicate: for every set f, the partition
    (mask, ~mask) must cut f, i.e. 0 < f & mask < f.
    """
    for f in family:
        part = f & mask
        if part == 0 or part == f:
            return False
    return True


def mask_to_indices(mask: SubsetMask) -> tuple[int, ...]:
    """1-based element indices of the set bits, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def indices_to_mask(indices: Iterable[int], n: int) -> SubsetMask:
    _check_universe(n)
    mask = 0
    for i in indices:
        if not 1 <= i <= n:
            raise ValueError(f"element index {i} out of range [1, {n}]")
        mask |= 1 << (i - 1)
    return mask


def format_mask(mask: SubsetMask) -> str:
    """Render a subset as ``{1,3,4}`` with 1-based indices."""
    return "{" + ",".join(str(i) for i in mask_to_indices(mask)) + "}"


def iter_submasks(mask: SubsetMask) -> Iterator[SubsetMask]:
    """All submasks of ``mask`` (including 0 and mask itself), ascending."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


@dataclass(frozen=True)
class SplitInstance:
    """A set-splitting problem: universe of ``n`` elements and a family of subsets.

    The question: can the universe be partitioned into two sides such that
    no family set lies wholly inside either side?
    """

    n: int
    family: tuple[SubsetMask, ...] = ()

    def __post_init__(self):
        _check_universe(self.n)
        object.__setattr__(self, "family", tuple(self.family))
        for f in self.family:
            if f == 0:
                raise ValueError("family sets must be nonempty")
            _check_mask(f, self.n)

    def with_set(self, mask: SubsetMask) -> "SplitInstance":
        """A new instance with one more family set."""
        return SplitInstance(self.n, self.family + (mask,))


@dataclass(frozen=True)
class SubsetSumInstance:
    """A subset-sum problem: positive integer values and a positive target."""

    values: tuple[int, ...]
    target: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if not self.values:
            raise ValueError("value list must be nonempty")
        if len(self.values) > MAX_UNIVERSE:
            raise ValueError(f"at most {MAX_UNIVERSE} values supported, got {len(self.values)}")
        for v in self.values:
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"values must be positive integers, got {v!r}")
        if sum(self.values) >= 1 << 63:
            raise ValueError("sum of values must fit signed 64-bit arithmetic")
        if not isinstance(self.target, int) or self.target < 1:
            raise ValueError(f"target must be a positive integer, got {self.target!r}")

    @property
    def n(self) -> int:
        return len(self.values)

    def subset_sum(self, mask: SubsetMask) -> int:
        """Sum of the values selected by ``mask``."""
        _check_mask(mask, self.n)
        total = 0
        while mask:
            low = mask & -mask
            total += self.values[low.bit_length() - 1]
            mask ^= low
        return total


@dataclass(frozen=True)
class Partition:
    """A two-sided partition of the universe, both sides as bitmasks."""

    a1: SubsetMask
    a2: SubsetMask

    def __post_init__(self):
        if self.a1 < 0 or self.a2 < 0:
            raise ValueError("partition sides must be nonnegative masks")
        if self.a1 & self.a2:
            raise ValueError("partition sides overlap")
        union = self.a1 | self.a2
        if union == 0 or (union & (union + 1)) != 0:
            raise ValueError("partition sides must cover a contiguous universe")

    @classmethod
    def from_mask(cls, mask: SubsetMask, n: int) -> "Partition":
        return cls(mask, complement(mask, n))

    @property
    def n(self) -> int:
        return (self.a1 | self.a2).bit_length()


@dataclass(frozen=True)
class ExactMoment:
    """An arrival moment kept in exact integer form.

    ``core`` is the sum of the selected arc base delays, in base delay
    units. ``hops`` counts traversed arcs; every arc also carries one
    uniform pad of length epsilon, so a complete path through an n-layer
    device always has hops == n and epsilon contributes a constant offset.
    Physical time is computed only at presentation.
    """

    core: int
    hops: int

    def __post_init__(self):
        if self.core < 0 or self.hops < 0:
            raise ValueError("moment components must be nonnegative")

    def physical_seconds(self, unit_delay: float, epsilon: float) -> float:
        return self.core * unit_delay + self.hops * epsilon

    def __str__(self) -> str:
        return f"{self.core}+{self.hops}eps"


@dataclass(frozen=True)
class DyadicIntensity:
    """Exact beam intensity ``numerator / 2**exponent``, kept in lowest terms.

    A beam is halved at every splitter, so every intensity in the model is
    a dyadic rational; keeping them exact makes conservation checks
    bit-exact instead of float-approximate.
    """

    numerator: int
    exponent: int

    def __post_init__(self):
        num, exp = self.numerator, self.exponent
        if num < 0 or exp < 0:
            raise ValueError("intensity components must be nonnegative")
        if num == 0:
            exp = 0
        else:
            trailing = (num & -num).bit_length() - 1
            shift = min(trailing, exp)
            num >>= shift
            exp -= shift
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "exponent", exp)

    @classmethod
    def one(cls) -> "DyadicIntensity":
        return cls(1, 0)

    @classmethod
    def zero(cls) -> "DyadicIntensity":
        return cls(0, 0)

    @classmethod
    def from_paths(cls, paths: int, n: int) -> "DyadicIntensity":
        """Intensity of ``paths`` coalesced beams in an n-layer device."""
        return cls(paths, n)

    def __add__(self, other: "DyadicIntensity") -> "DyadicIntensity":
        if not isinstance(other, DyadicIntensity):
            return NotImplemented
        exp = max(self.exponent, other.exponent)
        num = (self.numerator << (exp - self.exponent)) + (
            other.numerator << (exp - other.exponent)
        )
        return DyadicIntensity(num, exp)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def as_float(self) -> float:
        return self.numerator / (1 << self.exponent)

    def __str__(self) -> str:
        if self.exponent == 0:
            return str(self.numerator)
        return f"{self.numerator}/{1 << self.exponent}"


def _logical_lines(text: str | bytes) -> Iterator[tuple[int, list[str]]]:
    """Yield (line_no, fields) for each non-blank line, comments stripped."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line_no, line.split()


def _parse_int(token: str, line_no: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} is not an integer: {token!r}", line_no) from None


def parse_split_instance(text: str | bytes) -> SplitInstance:
    """Parse the line-oriented set-splitting instance format.

    One ``n <int>`` line first, then zero or more ``f <i1> ... <ik>`` lines
    with 1-based distinct element indices. ``#`` starts a comment, blank
    lines are ignored. Every malformed construct raises :class:`ParseError`
    with the offending line number.
    """
    n: int | None = None
    family: list[int] = []
    for line_no, fields in _logical_lines(text):
        tag = fields[0]
        if tag == "n":
            if n is not None:
                raise ParseError("duplicate 'n' line", line_no)
            if len(fields) != 2:
                raise ParseError("expected exactly 'n <int>'", line_no)
            n = _parse_int(fields[1], line_no, "universe size")
            if not 1 <= n <= MAX_UNIVERSE:
                raise ParseError(
                    f"universe size must be in [1, {MAX_UNIVERSE}], got {n}", line_no
                )
        elif tag == "f":
            if n is None:
                raise ParseError("'f' line before the 'n' line", line_no)
            if len(fields) == 1:
                raise ParseError("family set has no elements", line_no)
            mask = 0
            for token in fields[1:]:
                i = _parse_int(token, line_no, "element index")
                if not 1 <= i <= n:
                    raise ParseError(f"index {i} out of range [1, {n}]", line_no)
                bit = 1 << (i - 1)
                if mask & bit:
                    raise ParseError(f"duplicate index {i} in family set", line_no)
                mask |= bit
            family.append(mask)
        else:
            raise ParseError(f"unknown directive {tag!r}", line_no)
    if n is None:
        raise ParseError("missing 'n' line")
    return SplitInstance(n, tuple(family))


def serialize_split_instance(inst: SplitInstance) -> str:
    lines = [f"n {inst.n}"]
    for f in inst.family:
        lines.append("f " + " ".join(str(i) for i in mask_to_indices(f)))
    return "\n".join(lines) + "\n"


def parse_subset_sum_instance(text: str | bytes) -> SubsetSumInstance:
    """Parse the subset-sum format: a ``values`` line and a ``target`` line."""
    values: tuple[int, ...] | None = None
    target: int | None = None
    for line_no, fields in _logical_lines(text):
        tag = fields[0]
        if tag == "values":
            if values is not None:
                raise ParseError("duplicate 'values' line", line_no)
            if len(fields) == 1:
                raise ParseError("'values' line has no values", line_no)
            parsed = tuple(_parse_int(t, line_no, "value") for t in fields[1:])
            for v in parsed:
                if v < 1:
                    raise ParseError(f"values must be positive, got {v}", line_no)
            values = parsed
        elif tag == "target":
            if target is not None:
                raise ParseError("duplicate 'target' line", line_no)
            if len(fields) != 2:
                raise ParseError("expected exactly 'target <int>'", line_no)
            target = _parse_int(fields[1], line_no, "target")
            if target < 1:
                raise ParseError(f"target must be positive, got {target}", line_no)
        else:
            raise ParseError(f"unknown directive {tag!r}", line_no)
    if values is None:
        raise ParseError("missing 'values' line")
    if target is None:
        raise ParseError("missing 'target' line")
    try:
        return SubsetSumInstance(values, target)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def serialize_subset_sum_instance(inst: SubsetSumInstance) -> str:
    return (
        "values " + " ".join(str(v) for v in inst.values) + f"\ntarget {inst.target}\n"
    )
