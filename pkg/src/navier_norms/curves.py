"""Piecewise admissibility curves r -> r_tilde for the mixed norms of the
velocity and its first two gradients, plus the refined curves obtained by
further interpolation and Sobolev embedding.

Each curve is a list of CurveBranch objects with half-open or closed validity
intervals.  Where two branches share a closed breakpoint they must agree
there; a disagreement raises BranchMismatch rather than silently picking one
(continuity at the breakpoints is part of what the engine verifies).
Branches stated as strict inequalities evaluate to their boundary value with
``open_bound=True``.  Values r_tilde <= 0 are reported inadmissible, never
clamped.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .errors import BranchMismatch, NoBranch, OutOfRange
from .extrational import INF, ExtRational, Q

__all__ = [
    "CurvePoint",
    "CurveBranch",
    "derivative_curve",
    "refined_curve",
    "gn_shift_grad1",
    "sample_curve",
    "curve_points_to_rows",
    "REFINED_TARGETS",
]


@dataclass(frozen=True)
class CurvePoint:
    """One evaluated point of a curve, with its admissibility verdict."""

    r: ExtRational
    r_tilde: Optional[ExtRational]
    admissible: bool
    reason: str = ""
    open_bound: bool = False
    branch_id: str = ""


@dataclass(frozen=True)
class CurveBranch:
    """A rule r -> r_tilde valid on an interval with explicit endpoint flags."""

    branch_id: str
    lo: ExtRational
    hi: ExtRational
    lo_closed: bool
    hi_closed: bool
    rule: Callable[[ExtRational], ExtRational]
    open_bound: bool = False

    def contains(self, r: ExtRational) -> bool:
        if r < self.lo or (r == self.lo and not self.lo_closed):
            return False
        if r > self.hi or (r == self.hi and not self.hi_closed):
            return False
        return True

    def evaluate(self, r: ExtRational) -> CurvePoint:
        try:
            rt = self.rule(r)
        except ZeroDivisionError:
            return CurvePoint(
                r=r,
                r_tilde=None,
                admissible=False,
                reason="rule undefined (pole)",
                open_bound=self.open_bound,
                branch_id=self.branch_id,
            )
        if rt.is_finite and rt <= Q(0):
            return CurvePoint(
                r=r,
                r_tilde=rt,
                admissible=False,
                reason="r_tilde <= 0",
                open_bound=self.open_bound,
                branch_id=self.branch_id,
            )
        return CurvePoint(
            r=r,
            r_tilde=rt,
            admissible=True,
            open_bound=self.open_bound,
            branch_id=self.branch_id,
        )


def _linear_rule(a: Fraction, b: Fraction) -> Callable[[ExtRational], ExtRational]:
    """Rule from the relation a/r_tilde + b/r = c folded as 1/r_tilde = c/a - (b/a)/r.

    Stored directly as 1/r_tilde = a + b/r to keep call sites explicit.
    """

    def rule(r: ExtRational) -> ExtRational:
        inv_rt = Q(a) + Q(b) * r.inv()
        return inv_rt.inv()

    return rule


def _ratio_rule(num, den) -> Callable[[ExtRational], ExtRational]:
    """Rule r -> num(r)/den(r) for polynomial coefficient lists (ascending)."""

    def peval(coeffs, rf: Fraction) -> Fraction:
        return sum((Fraction(c) * rf**i for i, c in enumerate(coeffs)), Fraction(0))

    def rule(r: ExtRational) -> ExtRational:
        rf = r.as_fraction()
        d = peval(den, rf)
        if d == 0:
            raise ZeroDivisionError
        return ExtRational(peval(num, rf) / d)

    return rule


# Velocity / gradient curves.  Relations, written as 1/r_tilde = a + b/r:
#   k=0:  4/rt + 6/r = 3  on [2,6]   -> 1/rt = 3/4 - (3/2)/r
#         1/rt + 3/r = 1  on [6,inf] -> 1/rt = 1 - 3/r
#   k=1:  1/rt + 3/r = 2  on [2,3]   -> 1/rt = 2 - 3/r
#         rt = r(r-4)/(4r^2-13r+6)   on (3,6]
#   k=2:  2/rt + 3/r = 4  on (1,3/2) -> 1/rt = 2 - (3/2)/r
#         rt = 2r(3r-4)/(13r^2-26r+12) on [3/2,2)
#         1/rt + 6/r = 9  on [2,inf) -> 1/rt = 9 - 6/r
#
# The k=1 branches are discontinuous at r=3 (values 1 vs -1); the breakpoint
# is assigned to the first branch, whose value there is the admissible one.
_DERIVATIVE_BRANCHES = {
    0: [
        CurveBranch("k0_energy", Q(2), Q(6), True, True, _linear_rule(Fraction(3, 4), Fraction(-3, 2))),
        CurveBranch("k0_high", Q(6), INF, True, True, _linear_rule(Fraction(1), Fraction(-3))),
    ],
    1: [
        CurveBranch("k1_low", Q(2), Q(3), True, True, _linear_rule(Fraction(2), Fraction(-3))),
        CurveBranch("k1_mid", Q(3), Q(6), False, True, _ratio_rule([0, -4, 1], [6, -13, 4])),
    ],
    2: [
        CurveBranch("k2_low", Q(1), Q(3, 2), False, False, _linear_rule(Fraction(2), Fraction(-3, 2))),
        CurveBranch("k2_mid", Q(3, 2), Q(2), True, False, _ratio_rule([0, -8, 6], [12, -26, 13])),
        CurveBranch("k2_high", Q(2), INF, True, False, _linear_rule(Fraction(9), Fraction(-6))),
    ],
}

# Refined curves from further interpolation / Sobolev embedding.
#   grad2:  1/rt + 1/r  > 3/2 (boundary rt = 2r/(3r-2))   on (1, 4/3]
#           1/rt + 3/r  > 3   (boundary rt = r/(3(r-1)))  on (4/3, 3/2)
#           1/rt + 3/r  = 3                                on [3/2, 2]
#           1/rt + 15/r = 9                                on [2, inf)
#   grad1:  1/rt + 3/r  = 2                                on (2, 6]
#           1/rt + 15/r = 4                                on (6, inf)
#   velocity: 1/rt + 3/r = 1                               on (6, inf)
_REFINED_BRANCHES = {
    "grad2": [
        CurveBranch("grad2_lowest", Q(1), Q(4, 3), False, True, _ratio_rule([0, 2], [-2, 3]), open_bound=True),
        CurveBranch("grad2_low", Q(4, 3), Q(3, 2), False, False, _ratio_rule([0, 1], [-3, 3]), open_bound=True),
        CurveBranch("grad2_mid", Q(3, 2), Q(2), True, True, _linear_rule(Fraction(3), Fraction(-3))),
        CurveBranch("grad2_high", Q(2), INF, True, False, _linear_rule(Fraction(9), Fraction(-15))),
    ],
    "grad1": [
        CurveBranch("grad1_low", Q(2), Q(6), False, True, _linear_rule(Fraction(2), Fraction(-3))),
        CurveBranch("grad1_high", Q(6), INF, False, False, _linear_rule(Fraction(4), Fraction(-15))),
    ],
    "velocity": [
        CurveBranch("velocity_high", Q(6), INF, False, False, _linear_rule(Fraction(1), Fraction(-3))),
    ],
}

REFINED_TARGETS = tuple(_REFINED_BRANCHES)


def _evaluate(branches, r: ExtRational, label: str) -> CurvePoint:
    hits = [b for b in branches if b.contains(r)]
    if not hits:
        raise NoBranch(f"r={r} outside every branch of the {label} curve")
    points = [b.evaluate(r) for b in hits]
    if len(points) > 1:
        values = {p.r_tilde for p in points}
        if len(values) != 1:
            raise BranchMismatch(
                f"{label} branches {[p.branch_id for p in points]} disagree at "
                f"r={r}: {[str(p.r_tilde) for p in points]}"
            )
    return points[0]


def derivative_curve(k: int, r: ExtRational) -> CurvePoint:
    """Time exponent r_tilde paired with the spatial exponent r for the k-th
    gradient's mixed norm, k in {0, 1, 2}.

    r = inf is only meaningful for k = 0.  Points where the stated rule yields
    r_tilde <= 0 are returned with admissible=False.
    """
    if k not in _DERIVATIVE_BRANCHES:
        raise OutOfRange(f"k={k} outside {{0,1,2}}")
    r = Q(r)
    if r.is_infinite and k != 0:
        raise NoBranch(f"r=inf only allowed for k=0, got k={k}")
    if r <= Q(1):
        raise OutOfRange(f"r={r} must exceed 1")
    return _evaluate(_DERIVATIVE_BRANCHES[k], r, f"k={k}")


def refined_curve(target: str, r: ExtRational) -> CurvePoint:
    """Refined curve for one of the targets grad2, grad1, velocity."""
    if target not in _REFINED_BRANCHES:
        raise OutOfRange(f"target={target!r} not in {REFINED_TARGETS}")
    r = Q(r)
    if r <= Q(1) or r.is_infinite:
        raise OutOfRange(f"r={r} must be finite and > 1")
    return _evaluate(_REFINED_BRANCHES[target], r, target)


def gn_shift_grad1(r: ExtRational) -> CurvePoint:
    """First-gradient curve derived from the second-gradient one through the
    Gagliardo-Nirenberg substitution r2 = 3r/(3+r).

    Closed forms: 2r/(3(r-1)) for r < 3; 2r(5r-12)/(17r^2-54r+36) on [3, 6);
    r/(7r-6) for r >= 6.
    """
    r = Q(r)
    if r <= Q(1) or r.is_infinite:
        raise OutOfRange(f"r={r} must be finite and > 1")
    r2 = (Q(3) * r) / (Q(3) + r)
    point = _evaluate(_DERIVATIVE_BRANCHES[2], r2, "k=2 (shifted)")
    return CurvePoint(
        r=r,
        r_tilde=point.r_tilde,
        admissible=point.admissible,
        reason=point.reason,
        open_bound=point.open_bound,
        branch_id=f"gn_shift[{point.branch_id}]",
    )


def sample_curve(
    selector,
    r_min: ExtRational,
    r_max: ExtRational,
    n: int,
) -> list[CurvePoint]:
    """Evaluate a curve on n equispaced rational nodes in [r_min, r_max].

    ``selector`` is an integer k (gradient order) or a refined-target name.
    Per-point NoBranch is converted into an inadmissible point rather than
    aborting the sweep.
    """
    r_min, r_max = Q(r_min), Q(r_max)
    if not (r_min.is_finite and r_max.is_finite and r_min < r_max):
        raise OutOfRange("need finite r_min < r_max")
    if n < 2:
        raise OutOfRange("need n >= 2 sample points")
    lo, hi = r_min.as_fraction(), r_max.as_fraction()
    step = (hi - lo) / (n - 1)
    evaluate = (
        (lambda r: derivative_curve(selector, r))
        if isinstance(selector, int)
        else (lambda r: refined_curve(selector, r))
    )
    points = []
    for i in range(n):
        r = ExtRational(lo + i * step)
        try:
            points.append(evaluate(r))
        except NoBranch as exc:
            points.append(
                CurvePoint(r=r, r_tilde=None, admissible=False, reason=str(exc))
            )
    return points


def curve_points_to_rows(selector, points) -> list[dict]:
    """Serializable rows with exact numerator/denominator pairs.

    +infinity is encoded as the pair (1, 0); an undefined r_tilde as (0, 0).
    """
    rows = []
    for p in points:
        if p.r_tilde is None:
            rt_num, rt_den = 0, 0
        else:
            rt_num, rt_den = p.r_tilde.numerator, p.r_tilde.denominator
        rows.append(
            {
                "k": selector,
                "r_num": p.r.numerator,
                "r_den": p.r.denominator,
                "rtilde_num": rt_num,
                "rtilde_den": rt_den,
                "admissible": p.admissible,
                "open_bound": p.open_bound,
                "branch_id": p.branch_id,
            }
        )
    return rows
