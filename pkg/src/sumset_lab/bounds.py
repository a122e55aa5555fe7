"""Lower-bound formulas for sumset sizes, and their extremal witnesses.

Each formula is an exact integer function of the cardinality k of the base
set and the multiplicity set H. `evaluate` compares a formula against the
true size computed by the engine and reports whether the bound is met with
equality; `catalog_bound` is the dispatch used both here and by the
exhaustive verifier.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import SumsetKind, union_sumset
from .errors import HypothesisError, UnsupportedClassError
from .intset import HSet, IntSet, SetClass, classify, dilate, make_interval


@dataclass(frozen=True)
class BoundFormula:
    """Identifier plus parameters of one catalog formula."""

    identifier: str
    k: int
    multiplicities: tuple[int, ...]


@dataclass(frozen=True)
class BoundOutcome:
    """Applicability and value of the catalog bound for one (kind, class)."""

    applicable: bool
    value: int
    formula: BoundFormula | None
    reason: str | None


@dataclass(frozen=True)
class BoundReport:
    """Comparison of a computed sumset size against the applicable bound.

    When no formula applies, bound_value is 0 and is_equality is False;
    otherwise computed_size >= bound_value always holds and is_equality
    records exact equality.
    """

    kind: SumsetKind
    computed_size: int
    bound_value: int
    formula: BoundFormula | None
    is_equality: bool
    hypotheses_met: bool
    reason: str | None


def bound_h_fold(k: int, h: int) -> int:
    """Minimum size of the h-fold sumset of a k-element integer set."""
    if k < 1 or h < 1:
        raise HypothesisError(f"need k >= 1 and h >= 1, got k={k}, h={h}")
    return h * (k - 1) + 1


def bound_h_fold_restricted(k: int, h: int) -> int:
    """Minimum size of the h-fold restricted sumset; needs 1 <= h <= k."""
    if k < 1 or h < 1:
        raise HypothesisError(f"need k >= 1 and h >= 1, got k={k}, h={h}")
    if h > k:
        raise HypothesisError(f"restricted multiplicity {h} exceeds cardinality {k}")
    return h * (k - h) + 1


def _require_positive_h(H: HSet) -> None:
    if H.is_empty:
        raise HypothesisError("empty multiplicity set")
    if not H.all_positive:
        raise HypothesisError("multiplicity set must be positive for catalog bounds")


def bound_union(k: int, H: HSet, zero_in_A: bool) -> int:
    """Minimum size of the union sumset HA over positive multiplicities.

    For sets of k positive integers the value is max(H)*(k-1) + |H|; when
    0 is an element of A every smaller fold is absorbed by the largest one
    and the value drops to max(H)*(k-1) + 1.
    """
    _require_positive_h(H)
    if k < 1:
        raise HypothesisError(f"need k >= 1, got {k}")
    tail = 1 if zero_in_A else H.r
    return H.max * (k - 1) + tail


def bound_union_restricted(k: int, H: HSet, zero_in_A: bool) -> int:
    """Minimum size of the restricted union sumset over positive H.

    With h_0 = 0 and H = {h_1 < ... < h_r}:
      positive A:   sum_i (h_i - h_{i-1}) * (k - h_i)     + r,  h_r <= k
      0 in A:       sum_i (h_i - h_{i-1}) * (k - h_i - 1) + h_1 + r,  h_r <= k-1
    """
    _require_positive_h(H)
    if k < 1:
        raise HypothesisError(f"need k >= 1, got {k}")
    hs = H.elements
    cap = k - 1 if zero_in_A else k
    if hs[-1] > cap:
        raise HypothesisError(
            f"max multiplicity {hs[-1]} exceeds the cap {cap} for k={k}"
        )
    total = 0
    prev = 0
    for h in hs:
        total += (h - prev) * (k - h - (1 if zero_in_A else 0))
        prev = h
    if zero_in_A:
        total += hs[0]
    return total + len(hs)


def catalog_bound(kind: SumsetKind, k: int, H: HSet, zero_in_A: bool) -> BoundOutcome:
    """Select and evaluate the applicable formula, or explain why none is.

    A multiplicity 0 in H is stripped when 0 is an element of A (the 0-fold
    contributes only {0}, which the positive folds already cover, so the
    union is literally unchanged); with 0 outside A no catalog formula
    covers the enlarged union and the outcome is inapplicable.
    """
    hs = H.elements
    note = None
    if not hs:
        return BoundOutcome(False, 0, None, "empty multiplicity set")
    if hs[0] == 0:
        if len(hs) == 1:
            return BoundOutcome(False, 0, None, "H = {0} has no applicable bound")
        if not zero_in_A:
            return BoundOutcome(
                False, 0, None, "0 in H with 0 not in A is outside the catalog"
            )
        hs = hs[1:]
        note = "multiplicity 0 stripped (contributes nothing when 0 is in A)"
    positive = HSet(hs)
    if kind is SumsetKind.ORDINARY:
        value = bound_union(k, positive, zero_in_A)
        ident = "union-zero" if zero_in_A else "union-positive"
    else:
        cap = k - 1 if zero_in_A else k
        if hs[-1] > cap:
            return BoundOutcome(
                False,
                0,
                None,
                f"max multiplicity {hs[-1]} exceeds the cap {cap} for k={k}",
            )
        value = bound_union_restricted(k, positive, zero_in_A)
        ident = "union-restricted-zero" if zero_in_A else "union-restricted-positive"
    return BoundOutcome(True, value, BoundFormula(ident, k, hs), note)


def extremal_example(
    k: int, r: int, kind: SumsetKind, zero_in_A: bool
) -> tuple[IntSet, HSet]:
    """The witness pair achieving the corresponding bound with equality.

    Positive case: A = [1, k] with H = [1, r]; zero case: A = [0, k-1].
    Restricted kinds need r <= k (positive) resp. r <= k-1 (with zero).
    """
    if k < 1 or r < 1:
        raise HypothesisError(f"need k >= 1 and r >= 1, got k={k}, r={r}")
    if kind is SumsetKind.RESTRICTED:
        cap = k - 1 if zero_in_A else k
        if r > cap:
            raise HypothesisError(
                f"restricted witness needs r <= {cap} for k={k}, got r={r}"
            )
    A = make_interval(0, k - 1) if zero_in_A else make_interval(1, k)
    return A, HSet(tuple(range(1, r + 1)))


def evaluate(
    A: IntSet, H: HSet, kinds: tuple[SumsetKind, ...] | None = None
) -> list[BoundReport]:
    """Size-vs-bound reports for (A, H), one per requested kind.

    Sign-homogeneous negative sets are reduced by reflection (sizes are
    invariant under dilation by -1); mixed-sign sets are refused since no
    catalog formula covers them.
    """
    set_class = classify(A)
    if set_class is SetClass.MIXED:
        raise UnsupportedClassError(
            "mixed-sign sets have well-defined sumsets but no catalog bound"
        )
    work = A
    reflected = False
    if set_class in (SetClass.ALL_NEGATIVE, SetClass.ZERO_REST_NEGATIVE):
        work = dilate(A, -1)
        reflected = True
    zero_in = work.elements[0] == 0
    k = len(work)
    if kinds is None:
        kinds = (SumsetKind.ORDINARY, SumsetKind.RESTRICTED)
    reports = []
    for kind in kinds:
        size = len(union_sumset(work, H, kind))
        outcome = catalog_bound(kind, k, H, zero_in)
        reason = outcome.reason
        if reflected:
            prefix = "reduced by reflection to a nonnegative set"
            reason = prefix if reason is None else f"{prefix}; {reason}"
        reports.append(
            BoundReport(
                kind=kind,
                computed_size=size,
                bound_value=outcome.value,
                formula=outcome.formula,
                is_equality=outcome.applicable and size == outcome.value,
                hypotheses_met=outcome.applicable,
                reason=reason,
            )
        )
    return reports
