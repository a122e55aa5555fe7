"""Exact sumset computation over finite integer sets.

Two independent routes compute the same objects:

* a fast path on dense bit vectors (Python ints double as arbitrary-width
  bit vectors; bit i of a vector with offset o means the integer o+i is an
  attainable sum), and
* a naive path that enumerates tuples or subsets directly, kept slow and
  obvious so it can serve as an oracle for the fast path.

Every operation is a pure function of its inputs; concurrent callers need
no coordination.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations, combinations_with_replacement
from math import comb

from .errors import ArityError, OracleRefusedError
from .intset import HSet, IntSet, checked_int64

DEFAULT_ORACLE_CAP = 1_000_000


class SumsetKind(Enum):
    ORDINARY = "ordinary"      # repetition allowed
    RESTRICTED = "restricted"  # summands pairwise distinct


@dataclass(frozen=True)
class SumBitmap:
    """Dense bit-vector form of a sum set.

    Bit i of `bits` set means the integer `offset + i` is attainable.
    Vectors are sized from the exact attainable range, never a global
    universe, so popcount always equals the cardinality.
    """

    offset: int
    bits: int

    @property
    def popcount(self) -> int:
        return self.bits.bit_count()

    @property
    def is_empty(self) -> bool:
        return self.bits == 0

    def to_intset(self) -> IntSet:
        out = []
        bits = self.bits
        while bits:
            low = bits & -bits
            out.append(self.offset + low.bit_length() - 1)
            bits ^= low
        return IntSet(tuple(out))

    @classmethod
    def from_intset(cls, s: IntSet) -> SumBitmap:
        if s.is_empty:
            return cls(0, 0)
        base = s.min
        bits = 0
        for a in s.elements:
            bits |= 1 << (a - base)
        return cls(base, bits)


def _convolve(x: int, y: int) -> int:
    # sumset-add of two zero-based bit vectors; walk the sparser operand
    if x.bit_count() < y.bit_count():
        x, y = y, x
    out = 0
    while y:
        low = y & -y
        out |= x << (low.bit_length() - 1)
        y ^= low
    return out


def _require_nonempty(A: IntSet) -> None:
    if A.is_empty:
        raise ArityError("sumsets of the empty set are undefined")


def _check_ordinary_range(A: IntSet, h: int) -> None:
    checked_int64(h * A.min)
    checked_int64(h * A.max)


def _check_restricted_range(A: IntSet, h: int) -> None:
    if h > len(A):
        return
    checked_int64(sum(A.elements[:h]))
    checked_int64(sum(A.elements[-h:]))


def h_fold(A: IntSet, h: int) -> IntSet:
    """Sums of exactly h elements of A, repetition allowed.

    h = 0 gives {0}, h = 1 gives A back. The vector for hA is built by
    shifted-OR folding with doubling: partial sumsets for 2A, 4A, ... are
    combined following the binary expansion of h. Working on the set
    translated to start at 0 keeps every partial vector anchored at its own
    minimum for free.
    """
    _require_nonempty(A)
    if h < 0:
        raise ArityError("multiplicity must be nonnegative")
    if h == 0:
        return IntSet((0,))
    _check_ordinary_range(A, h)
    t = A.min
    base = 0
    for a in A.elements:
        base |= 1 << (a - t)
    acc = 1  # {0}, the empty-sum vector
    power = base
    remaining = h
    while remaining:
        if remaining & 1:
            acc = _convolve(acc, power)
        remaining >>= 1
        if remaining:
            power = _convolve(power, power)
    return SumBitmap(h * t, acc).to_intset()


def h_fold_restricted(A: IntSet, h: int) -> IntSet:
    """Sums of h pairwise distinct elements of A.

    h = 0 gives {0}, h = |A| the singleton total, h > |A| the empty set.
    Classic cardinality-indexed subset-sum DP: B[j] is the vector of sums of
    j distinct elements; scanning elements in increasing order and updating
    j descending prevents reuse.
    """
    _require_nonempty(A)
    if h < 0:
        raise ArityError("multiplicity must be nonnegative")
    if h == 0:
        return IntSet((0,))
    if h > len(A):
        return IntSet(())
    _check_restricted_range(A, h)
    t = A.min
    B = [0] * (h + 1)
    B[0] = 1
    for idx, a in enumerate(A.elements):
        e = a - t
        for j in range(min(h, idx + 1), 0, -1):
            if B[j - 1]:
                B[j] |= B[j - 1] << e
    bits = B[h]
    offset = h * t
    # re-anchor: the DP vector has dead low bits below the true minimum
    slide = (bits & -bits).bit_length() - 1
    return SumBitmap(offset + slide, bits >> slide).to_intset()


def union_sumset(A: IntSet, H: HSet, kind: SumsetKind) -> IntSet:
    """Union of the h-fold sumsets of A over all multiplicities h in H.

    Restricted entries with h > |A| contribute nothing; h = 0 contributes
    {0} under either kind.
    """
    _require_nonempty(A)
    if H.is_empty:
        raise ArityError("union over an empty multiplicity set is undefined")
    parts = _sumset_parts(A, H, kind)
    if not parts:
        return IntSet(())
    return _union_bitmaps(parts).to_intset()


def _sumset_parts(A: IntSet, H: HSet, kind: SumsetKind) -> list[SumBitmap]:
    fold = h_fold if kind is SumsetKind.ORDINARY else h_fold_restricted
    parts = []
    for h in H.elements:
        piece = fold(A, h)
        if not piece.is_empty:
            parts.append(SumBitmap.from_intset(piece))
    return parts


def _union_bitmaps(parts: list[SumBitmap]) -> SumBitmap:
    base = min(p.offset for p in parts)
    bits = 0
    for p in parts:
        bits |= p.bits << (p.offset - base)
    return SumBitmap(base, bits)


def naive_h_fold(
    A: IntSet, h: int, kind: SumsetKind, cap: int = DEFAULT_ORACLE_CAP
) -> IntSet:
    """Direct tuple/subset enumeration; the independent oracle.

    Refuses inputs whose enumeration count exceeds `cap` rather than
    grinding; the fast path has no such limit.
    """
    _require_nonempty(A)
    if h < 0:
        raise ArityError("multiplicity must be nonnegative")
    k = len(A)
    if kind is SumsetKind.ORDINARY:
        count = comb(k + h - 1, h) if h > 0 else 1
        _check_ordinary_range(A, h)
    else:
        count = comb(k, h)
        _check_restricted_range(A, h)
    if count > cap:
        raise OracleRefusedError(
            f"naive enumeration of {count} tuples exceeds cap {cap}"
        )
    picker = combinations_with_replacement if kind is SumsetKind.ORDINARY else combinations
    sums = {sum(tup) for tup in picker(A.elements, h)}
    return IntSet(tuple(sorted(sums)))


def sumset_ladder(A: IntSet, h_max: int, kind: SumsetKind) -> list[SumBitmap]:
    """All of 0A..h_max·A (or restricted) in one pass; the batch path.

    Used by the exhaustive verifier, which unions many H over one A.
    Ordinary vectors grow by folding one element layer per step; restricted
    ones fall out of a single DP sweep. Ladder vectors may carry dead low
    bits below the true minimum (position arithmetic is unaffected); entries
    beyond |A| in restricted mode are empty.
    """
    _require_nonempty(A)
    if kind is SumsetKind.ORDINARY:
        _check_ordinary_range(A, h_max)
    else:
        # the extreme sum can sit at an intermediate multiplicity when signs
        # mix, so check every prefix and suffix sum up to the ladder height
        running = 0
        for a in A.elements[: min(h_max, len(A))]:
            running = checked_int64(running + a)
        running = 0
        for a in A.elements[-min(h_max, len(A)) :][::-1]:
            running = checked_int64(running + a)
    t = A.min
    shifted = tuple(a - t for a in A.elements)
    ladder = [SumBitmap(0, 1)]
    if kind is SumsetKind.ORDINARY:
        cur = 1
        for h in range(1, h_max + 1):
            nxt = 0
            for e in shifted:
                nxt |= cur << e
            cur = nxt
            ladder.append(SumBitmap(h * t, cur))
    else:
        top = min(h_max, len(A))
        B = [0] * (top + 1)
        B[0] = 1
        for idx, e in enumerate(shifted):
            for j in range(min(top, idx + 1), 0, -1):
                if B[j - 1]:
                    B[j] |= B[j - 1] << e
        for j in range(1, h_max + 1):
            bits = B[j] if j <= top else 0
            ladder.append(SumBitmap(j * t, bits))
    return ladder
