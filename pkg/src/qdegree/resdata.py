"""Residue data: iterated residues along the nested specialization points,
the per-level residue datum with its measure prefactor, and the fully
specialized scalar that feeds the degree formula.

The datum at level l is  (m logq / t)^(d-l) * 1/(d-l+1)  times the iterated
residue Res_(z_l = r_l) ... Res_(z_(d-1) = r_(d-1)), leaving z_1..z_(l-1)
free.  At l = 1 everything is specialized; the (logq)^(d-1) prefactor then
cancels the d-1 simple-pole residues exactly, so the scalar has log grade 0
and closed form

    (m/t)^(d-1) (1/d) q^(a d(d-1)/2) q^(t d(d-1)/2) (q^t - 1)^d / (q^(td) - 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .coords import ResiduePlan, residue_plan
from .model import SetupParams
from .mu import mu_on_z
from .qform import FactoredForm, SumForm, as_sum, residue


@dataclass(frozen=True)
class ResidueDatumResult:
    """Residue datum at one level: prefactor bookkeeping plus the value,
    a sum form in the surviving variables z_1..z_(l-1).
    """

    level: int
    prefactor_log_grade: int
    value: SumForm


def iterated_residue(f: Union[FactoredForm, SumForm], plan: ResiduePlan,
                     stop_at: int = 1) -> SumForm:
    """Apply residues at (z_k, r_k) for k = d-1 down to stop_at, innermost first."""
    out = as_sum(f)
    for name, point in plan:
        level = int(name[1:])
        if level < stop_at:
            break
        out = residue(out, name, point)
    return out


def res_al(p: SetupParams, psi: Union[FactoredForm, SumForm], l: int,
           drop_level_inverse: bool = False) -> ResidueDatumResult:
    """The level-l residue datum of psi (given in the z-variables).

    ``drop_level_inverse`` omits the 1/(d-l+1) factor; it exists only for
    fault-injection checks and must stay False in real computations.
    """
    p.check_level(l)
    inner = iterated_residue(psi, residue_plan(p), stop_at=l)
    scale = Fraction(p.m, p.t) ** (p.d - l)
    if not drop_level_inverse:
        scale /= p.d - l + 1
    prefactor = FactoredForm.from_constant(scale, log_grade=p.d - l)
    return ResidueDatumResult(l, p.d - l, inner * prefactor)


def res_a1_mu(p: SetupParams, drop_level_inverse: bool = False) -> FactoredForm:
    """The fully specialized scalar datum of mu; no variables, log grade 0."""
    datum = res_al(p, mu_on_z(p), 1, drop_level_inverse=drop_level_inverse)
    return datum.value.single_term()


def residue_closed_form(p: SetupParams) -> FactoredForm:
    """Closed form of res_a1_mu:  (m/t)^(d-1) (1/d) q^((a+t) d(d-1)/2) (q^t-1)^d / (q^(td)-1)."""
    half_pairs = Fraction(p.d * (p.d - 1), 2)
    out = (FactoredForm.from_constant(Fraction(p.m, p.t) ** (p.d - 1) / p.d)
           * FactoredForm.q_power((p.a + p.t) * half_pairs)
           * FactoredForm.binomial(p.t).scale(-1) ** p.d
           / FactoredForm.binomial(p.t * p.d).scale(-1))
    return out
