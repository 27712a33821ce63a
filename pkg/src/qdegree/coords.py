"""Root and coordinate layer: the rescaled simple roots, coroot pairings,
conversion between residue coordinates z and block coordinates s, and the
nested specialization points.

A point lambda with character |det_m|^(s_1) x ... x |det_m|^(s_d) is stored
by its s-vector.  The residue coordinates z_1, ..., z_(d-1) parametrize
lambda = sum_j z_j * atilde_j, where atilde_j is the rescaled simple root
normalized so that  t * <alpha_l^vee, sum z_j atilde_j> = z_l - ((d-l-1)/(d-l)) z_(l+1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .model import OutOfRangeError, SetupParams
from .qform import AffineExponent, ExponentValue, as_exponent


def z_var(j: int) -> str:
    return f"z{j}"


@dataclass(frozen=True)
class Weight:
    """A point in s-coordinates; entries are affine expressions (constants
    included) in the residue variables.  Only differences of entries matter;
    fully numeric weights are normalized to sum zero.
    """

    s: tuple[AffineExponent, ...]

    @staticmethod
    def make(entries: Iterable[ExponentValue]) -> "Weight":
        fixed = tuple(as_exponent(e) for e in entries)
        if all(e.is_constant for e in fixed):
            mean = sum((e.const for e in fixed), Fraction(0)) / len(fixed)
            fixed = tuple(AffineExponent.constant(e.const - mean) for e in fixed)
        return Weight(fixed)

    @property
    def dim(self) -> int:
        return len(self.s)

    @property
    def is_numeric(self) -> bool:
        return all(e.is_constant for e in self.s)

    def entry(self, k: int) -> AffineExponent:
        return self.s[k - 1]

    def difference(self, i: int, j: int) -> AffineExponent:
        """The pairing of the composite coroot joining blocks i < j: s_i - s_j."""
        return self.s[i - 1] - self.s[j - 1]

    def shift(self, c: ExponentValue) -> "Weight":
        c = as_exponent(c)
        return Weight(tuple(e + c for e in self.s))

    def as_fractions(self) -> tuple[Fraction, ...]:
        if not self.is_numeric:
            raise ValueError("weight has symbolic entries")
        return tuple(e.const for e in self.s)


def alpha_tilde(p: SetupParams, j: int) -> Weight:
    """The rescaled simple root atilde_j in s-coordinates.

    Entry j is (1/t)(d-j)/(d-j+1), entries after j are -1/(t(d-j+1)), earlier
    entries vanish; the vector sums to zero and is the unique multiple of
    e_j - (e_(j+1) + ... + e_d)/(d-j) reproducing the coroot pairing below.
    """
    if not 1 <= j <= p.d - 1:
        raise OutOfRangeError(f"root index {j} outside [1, {p.d - 1}]")
    head = Fraction(p.d - j, p.t * (p.d - j + 1))
    tail = Fraction(-1, p.t * (p.d - j + 1))
    entries = [Fraction(0)] * (j - 1) + [head] + [tail] * (p.d - j)
    return Weight(tuple(AffineExponent.constant(c) for c in entries))


def pairing_coroot(p: SetupParams, l: int, weight: Weight) -> AffineExponent:
    """<alpha_l^vee, lambda> = s_l - s_(l+1) for 1 <= l <= d-1."""
    if not 1 <= l <= p.d - 1:
        raise OutOfRangeError(f"coroot index {l} outside [1, {p.d - 1}]")
    return weight.difference(l, l + 1)


def z_to_s(p: SetupParams, z_values: Sequence[ExponentValue]) -> Weight:
    """The weight sum_j z_j * atilde_j for given z-values (rational or affine)."""
    if len(z_values) != p.d - 1:
        raise OutOfRangeError(f"expected {p.d - 1} z-values, got {len(z_values)}")
    entries = [AffineExponent.constant(0) for _ in range(p.d)]
    for j, z in enumerate(z_values, start=1):
        root = alpha_tilde(p, j)
        zj = as_exponent(z)
        for k in range(p.d):
            entries[k] = entries[k] + zj.scale(root.s[k].const)
    return Weight.make(entries)


def generic_weight(p: SetupParams) -> Weight:
    """The symbolic weight sum_j z_j * atilde_j in the variables z1..z(d-1)."""
    return z_to_s(p, [AffineExponent.variable(z_var(j)) for j in range(1, p.d)])


@dataclass(frozen=True)
class ResiduePlan:
    """Nested specialization points (z_(d-1), r_(d-1)), ..., (z_1, r_1),
    innermost first; r_l = t (d - l + 1) / 2.
    """

    points: tuple[tuple[str, Fraction], ...]

    def __iter__(self):
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def point(self, l: int) -> Fraction:
        for name, r in self.points:
            if name == z_var(l):
                return r
        raise OutOfRangeError(f"no residue point for level {l}")


def residue_point(p: SetupParams, l: int) -> Fraction:
    if not 1 <= l <= p.d - 1:
        raise OutOfRangeError(f"level {l} outside [1, {p.d - 1}]")
    return Fraction(p.t * (p.d - l + 1), 2)


def residue_plan(p: SetupParams) -> ResiduePlan:
    return ResiduePlan(tuple((z_var(l), residue_point(p, l))
                             for l in range(p.d - 1, 0, -1)))


def discrete_series_point(p: SetupParams) -> Weight:
    """The point with consecutive differences 1: s = ((d-1)/2, ..., (-d+1)/2)."""
    return z_to_s(p, [residue_point(p, l) for l in range(1, p.d)])
