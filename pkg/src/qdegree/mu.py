"""The Harish-Chandra mu-function as an exact factored form.

mu is the product over block pairs i < j of a rank-one factor depending only
on the difference x = s_i - s_j.  Each factor is even in x, vanishes to
second order at x = 0, and has simple poles at x = +-1.  Merging the blocks
l..d and peeling off block l-1 gives the level ratio in a single variable,
which telescopes to a closed two-over-two form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coords import Weight, generic_weight, z_to_s
from .model import OutOfRangeError, SetupParams
from .qform import AffineExponent, ExponentValue, FactoredForm, as_exponent


def rank_one_factor(p: SetupParams, x: ExponentValue) -> FactoredForm:
    """The pair factor q^(a+2t) (1-q^(tx))(1-q^(-tx)) / ((1-q^(t(x+1)))(1-q^(t(1-x)))).

    The normalization q^(a+2t) is the unique per-pair constant whose telescoped
    level products reproduce the closed level ratios; the telescoping tests pin
    it down.  Vanishes (second order) at x = 0; poles at x = +-1 raise.
    """
    tx = as_exponent(x).scale(p.t)
    t_const = AffineExponent.constant(p.t)
    return (FactoredForm.q_power(AffineExponent.constant(p.a + 2 * p.t))
            * FactoredForm.binomial(tx) * FactoredForm.binomial(-tx)
            * FactoredForm.binomial(tx + t_const, -1)
            * FactoredForm.binomial(t_const - tx, -1))


def mu_full(p: SetupParams, weight: Weight) -> FactoredForm:
    """Product of rank-one factors over all block pairs 1 <= i < j <= d.

    Depends only on the differences s_i - s_j, hence is invariant under a
    common shift of all entries.
    """
    if weight.dim != p.d:
        raise OutOfRangeError(f"weight has {weight.dim} entries, expected {p.d}")
    out = FactoredForm.one()
    for i in range(1, p.d + 1):
        for j in range(i + 1, p.d + 1):
            out = out * rank_one_factor(p, weight.difference(i, j))
    return out


def mu_level_ratio_closed(p: SetupParams, l: int, var: str = "z") -> FactoredForm:
    """The level ratio joining block l-1 to the merged block l..d, closed form:

        q^((d-l+1)a) (1-q^(t(d-l)/2 - z))(1-q^(t(d-l)/2 + z))
                   / ((1-q^(-t(d-l)/2 - t - z))(1-q^(-t(d-l)/2 - t + z)))
    """
    p.check_level(l, low=2)
    half = Fraction(p.t * (p.d - l), 2)
    z = AffineExponent.variable(var)
    return (FactoredForm.q_power(AffineExponent.constant((p.d - l + 1) * p.a))
            * FactoredForm.binomial(AffineExponent.constant(half) - z)
            * FactoredForm.binomial(AffineExponent.constant(half) + z)
            / FactoredForm.binomial(AffineExponent.constant(-half - p.t) - z)
            / FactoredForm.binomial(AffineExponent.constant(-half - p.t) + z))


def mu_level_ratio_telescoped(p: SetupParams, l: int, var: str = "z") -> FactoredForm:
    """The same level ratio as the product of its rank-one factors.

    The pairs (l-1, j) for j = l..d, at the nested specialization, sit at
    x_j = z/t - (d-l)/2 + (j-l); the product telescopes to the closed form.
    """
    p.check_level(l, low=2)
    out = FactoredForm.one()
    for j in range(l, p.d + 1):
        x = AffineExponent.variable(var, coeff=Fraction(1, p.t),
                                    const=Fraction(-(p.d - l), 2) + (j - l))
        out = out * rank_one_factor(p, x)
    return out


@dataclass(frozen=True)
class PoleHyperplane:
    """The locus s_i - s_j = level for a block pair i < j, level in {0, +1, -1}."""

    i: int
    j: int
    level: int


def pole_hyperplanes(p: SetupParams) -> tuple[PoleHyperplane, ...]:
    """All loci where mu may vanish or blow up: s_i - s_j in {0, +1, -1}."""
    return tuple(PoleHyperplane(i, j, level)
                 for i in range(1, p.d + 1)
                 for j in range(i + 1, p.d + 1)
                 for level in (0, 1, -1))


def on_pole_locus(p: SetupParams, weight: Weight) -> tuple[PoleHyperplane, ...]:
    """The listed hyperplanes containing a numeric weight (empty if regular)."""
    values = weight.as_fractions()
    hits = []
    for h in pole_hyperplanes(p):
        if values[h.i - 1] - values[h.j - 1] == h.level:
            hits.append(h)
    return tuple(hits)


def mu_on_z(p: SetupParams, z_values=None) -> FactoredForm:
    """mu at the weight sum_j z_j atilde_j (symbolic in z1..z(d-1) by default)."""
    if z_values is None:
        return mu_full(p, generic_weight(p))
    return mu_full(p, z_to_s(p, z_values))
