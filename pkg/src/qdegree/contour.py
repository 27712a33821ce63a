"""Numeric oracle: quadrature of mu over shifted compact tori against the
sum of residue-data terms.

The left side integrates mu over the product of circles Re(z_l) = R_l with
the unfolded prefactor (logq/2pi)^(d-1) (m/t)^(d-1); trapezoidal nodes on the
period 2pi/logq give spectral accuracy.  The right side unfolds the shift of
each circle to the unitary axis.  Every crossed pole contributes a residue
term:

  * the nested chain gives, for each level l, the datum res_al(mu, l)
    integrated over the unitary torus in z_1..z_(l-1) with the measure
    factor (d-l+1) (m/t)^(l-1) (logq/2pi)^(l-1) -- at l = 1 this is
    d times the fully specialized scalar;
  * for d = 3 the unfolding also crosses the two tilted pair hyperplanes
    z_1 = t + z_2/2 and z_1 = t - z_2/2 (levels +1 of the pairs (1,2) and
    (1,3)), whose residues are integrated over the unitary z_2 circle.

With the default chamber shift R_l = r_l + t/2 + 1/4 these are exactly the
crossed poles for d <= 3, and the two sides agree to machine precision.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

import numpy as np

from .checks import CheckReport
from .coords import generic_weight, residue_point, z_var
from .model import SetupParams
from .mu import mu_on_z
from .qform import (AffineExponent, DivisionByZeroError, FactoredForm,
                    SumForm, as_sum, residue)
from .resdata import res_al


class ShiftOnPoleError(ValueError):
    """The requested contour passes through (or hugs) a pole hyperplane."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Contour quadrature parameters.

    ``nodes`` is the per-circle node count (a power of two, at least 16);
    ``shift`` is the vector of real parts R_1..R_(d-1), defaulting to the
    chamber point r_l + t/2 + 1/4.
    """

    q: float
    nodes: int = 256
    shift: tuple[float, ...] | None = None
    tolerance: float = 1e-8

    def __post_init__(self):
        if self.q <= 1:
            raise ValueError(f"q must exceed 1, got {self.q}")
        if self.nodes < 16 or self.nodes & (self.nodes - 1):
            raise ValueError(f"nodes must be a power of two >= 16, got {self.nodes}")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")


def default_shift(p: SetupParams) -> tuple[float, ...]:
    """Chamber point beyond every crossed pole: R_l = r_l + t/2 + 1/4."""
    return tuple(float(residue_point(p, l)) + p.t / 2 + 0.25 for l in range(1, p.d))


def _shift_of(p: SetupParams, spec: QuadratureSpec) -> tuple[float, ...]:
    shift = spec.shift if spec.shift is not None else default_shift(p)
    if len(shift) != p.d - 1:
        raise ValueError(f"shift must have {p.d - 1} entries, got {len(shift)}")
    return shift


def _check_shift_off_poles(p: SetupParams, shift: tuple[float, ...],
                           margin: float = 1e-9) -> None:
    """Reject contours whose real parts meet a pole hyperplane of mu.

    Poles sit where t*(s_i - s_j) = +-t up to imaginary periods, so a real
    part exactly at +-t puts a pole on the contour for some node phases.
    """
    weight = generic_weight(p)
    assignment = {z_var(j): complex(shift[j - 1]) for j in range(1, p.d)}
    for i in range(1, p.d + 1):
        for j in range(i + 1, p.d + 1):
            x = weight.difference(i, j).scale(p.t).evaluate(assignment).real
            for level in (p.t, -p.t):
                if abs(x - level) < margin:
                    raise ShiftOnPoleError(
                        f"contour Re(t(s_{i}-s_{j})) = {x} sits on the pole level {level}")


def _eval_grid(f: Union[FactoredForm, SumForm], q: float,
               arrays: Mapping[str, np.ndarray]) -> np.ndarray:
    """Vectorized eval_numeric over complex node arrays."""
    lnq = math.log(q)
    shape = np.broadcast_shapes(*(a.shape for a in arrays.values())) if arrays else ()
    total = np.zeros(shape, dtype=complex)
    for term in as_sum(f).terms:
        exponent = float(term.monomial.const) + sum(
            float(c) * arrays[v] for v, c in term.monomial.coeffs)
        value = complex(term.constant) * lnq ** term.log_grade * np.exp(lnq * exponent)
        for e, mult in term.binomials:
            exponent = float(e.const) + sum(float(c) * arrays[v] for v, c in e.coeffs)
            factor = 1.0 - np.exp(lnq * exponent)
            if mult < 0 and np.abs(factor).min() < 1e-12:
                raise DivisionByZeroError(
                    f"denominator factor (1 - q^({e})) vanishes on the contour")
            value = value * factor ** mult
        total = total + value
    return total


def _unitary_nodes(q: float, nodes: int) -> np.ndarray:
    period = 2 * math.pi / math.log(q)
    return 1j * period * np.arange(nodes) / nodes


def lhs_contour(p: SetupParams, spec: QuadratureSpec) -> complex:
    """(logq/2pi)^(d-1) (m/t)^(d-1) times the iterated box integral of mu
    over the shifted circles; equals (m/t)^(d-1) times the node mean.
    """
    if p.d == 1:
        return 1 + 0j
    shift = _shift_of(p, spec)
    for l in range(1, p.d):
        if shift[l - 1] <= float(residue_point(p, l)):
            raise ShiftOnPoleError(
                f"R_{l} = {shift[l - 1]} is not beyond the residue point r_{l}")
    _check_shift_off_poles(p, shift)
    axes = np.meshgrid(*[_unitary_nodes(spec.q, spec.nodes)] * (p.d - 1),
                       indexing="ij", sparse=True)
    arrays = {z_var(j): shift[j - 1] + axes[j - 1] for j in range(1, p.d)}
    mean = complex(_eval_grid(mu_on_z(p), spec.q, arrays).mean())
    return (Fraction(p.m, p.t) ** (p.d - 1)) * mean


def _offchain_sum(p: SetupParams) -> SumForm:
    """Residues of mu across the tilted hyperplanes z_1 = t -+ z_2/2 (d = 3).

    These are the level +1 loci of the pairs (1,2) and (1,3); both are
    crossed when z_1 is shifted to the unitary axis.  Each residue is taken
    by recentering with an auxiliary variable and extracting at its origin.
    """
    f = mu_on_z(p)
    total = SumForm.zero()
    for sign in (Fraction(1, 2), Fraction(-1, 2)):
        recentered = f.substitute(z_var(1), AffineExponent.make(p.t, {"u": 1, z_var(2): sign}))
        total = total + residue(recentered, "u", 0)
    return total


def _check_offchain_chamber(p: SetupParams, shift: tuple[float, ...]) -> None:
    """The d = 3 crossing inventory is valid for t < R_2 < 2t, R_1 > t + R_2/2."""
    r1, r2 = shift
    if not (p.t < r2 < 2 * p.t and r1 > p.t + r2 / 2):
        raise ShiftOnPoleError(
            f"shift {shift} leaves the supported chamber "
            f"(need t < R_2 < 2t and R_1 > t + R_2/2 for d = 3)")


@dataclass(frozen=True)
class DecompositionReport:
    """Both sides of the residue decomposition with the per-term breakdown."""

    lhs: complex
    rhs: complex
    chain_terms: tuple[complex, ...]  # indexed by level l = 1..d
    offchain_term: complex
    relative_error: float


def residue_terms(p: SetupParams, spec: QuadratureSpec,
                  drop_level_inverse: bool = False) -> tuple[tuple[complex, ...], complex]:
    """Per-level chain terms and the off-chain term of the unfolded right side."""
    if p.d > 3:
        raise ValueError("residue decomposition is implemented for d <= 3")
    ratio = Fraction(p.m, p.t)
    nodes = _unitary_nodes(spec.q, spec.nodes)
    f = mu_on_z(p)
    chain = []
    for l in range(1, p.d + 1):
        datum = res_al(p, f, l, drop_level_inverse=drop_level_inverse).value
        if l == 1:
            mean = complex(datum.single_term().eval_numeric(spec.q))
        else:
            axes = np.meshgrid(*[nodes] * (l - 1), indexing="ij", sparse=True)
            arrays = {z_var(j): axes[j - 1] for j in range(1, l)}
            mean = complex(_eval_grid(datum, spec.q, arrays).mean())
        chain.append((p.d - l + 1) * (ratio ** (l - 1)) * mean)
    offchain = 0j
    if p.d == 3:
        shift = _shift_of(p, spec)
        _check_offchain_chamber(p, shift)
        values = _eval_grid(_offchain_sum(p), spec.q, {z_var(2): nodes})
        offchain = math.log(spec.q) * (ratio ** 2) * complex(values.mean())
    return tuple(chain), offchain


def rhs_residue_sum(p: SetupParams, spec: QuadratureSpec,
                    drop_level_inverse: bool = False) -> complex:
    """Sum of all residue terms of the unfolded decomposition."""
    chain, offchain = residue_terms(p, spec, drop_level_inverse=drop_level_inverse)
    return sum(chain, 0j) + offchain


def decomposition_report(p: SetupParams, spec: QuadratureSpec,
                         drop_level_inverse: bool = False) -> DecompositionReport:
    lhs = lhs_contour(p, spec)
    chain, offchain = residue_terms(p, spec, drop_level_inverse=drop_level_inverse)
    rhs = sum(chain, 0j) + offchain
    rel = abs(lhs - rhs) / max(abs(lhs), 1.0)
    return DecompositionReport(lhs, rhs, chain, offchain, rel)


def verify_residue_decomposition(p: SetupParams, spec: QuadratureSpec,
                                 drop_level_inverse: bool = False) -> CheckReport:
    """Pass iff |lhs - rhs| / max(|lhs|, 1) <= spec.tolerance."""
    start = time.perf_counter()
    name = f"contour d={p.d} q={spec.q} t={p.t} m={p.m} a={p.a}"
    report = decomposition_report(p, spec, drop_level_inverse=drop_level_inverse)
    elapsed = int(1000 * (time.perf_counter() - start))
    status = "pass" if report.relative_error <= spec.tolerance else "fail"
    return CheckReport(name, status, f"{report.relative_error:.3e}", elapsed)
