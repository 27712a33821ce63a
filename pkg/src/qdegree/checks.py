"""Named verification outcomes and the symbolic identity suites run by the
CLI and the acceptance tests.  Every symbolic check is exact: pass means the
canonical quotient of the two sides is literally 1.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from . import coords, model, mu
from .qform import AffineExponent, FactoredForm


@dataclass(frozen=True)
class CheckReport:
    """One verification outcome.

    ``detail`` is "1" for a symbolic pass, the canonical quotient for a
    symbolic failure, or the max relative error for a numeric check.
    """

    name: str
    status: str  # pass | fail | error
    detail: str
    elapsed_ms: int

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def canonical_quotient(a: FactoredForm, b: FactoredForm) -> FactoredForm:
    """a / b in canonical form; equals 1 iff a and b are the same function."""
    return a / b


def _report(name: str, ok: bool, detail_fail: str, start: float) -> CheckReport:
    elapsed = int(1000 * (time.perf_counter() - start))
    if ok:
        return CheckReport(name, "pass", "1", elapsed)
    return CheckReport(name, "fail", detail_fail, elapsed)


# ---------------------------------------------------------------------------
# Parameter grids
# ---------------------------------------------------------------------------

DEFAULT_D_MAX = 6
DEFAULT_M_SET = (1, 2, 3, 6)
DEFAULT_T_SET = (1, 2, 3)
DEFAULT_A_SET = (0, 1, 2)


def theorem_grid(d_max: int = DEFAULT_D_MAX,
                 m_set: Iterable[int] = DEFAULT_M_SET,
                 a_set: Iterable[int] = DEFAULT_A_SET) -> Iterator[model.SetupParams]:
    """All (m, d, t, a) with d <= d_max, m in m_set, t | m, a in a_set."""
    for d in range(1, d_max + 1):
        for m in m_set:
            for t in range(1, m + 1):
                if m % t:
                    continue
                for a in a_set:
                    yield model.validate(m, d, t, a)


# ---------------------------------------------------------------------------
# Identity suites
# ---------------------------------------------------------------------------

def pairing_reports(d_max: int = 8, t_set: Iterable[int] = (1, 2, 3)) -> list[CheckReport]:
    """Coroot pairing identity and the nested specialization point.

    For every d and l:  t <alpha_l^vee, sum z_j atilde_j> = z_l - ((d-l-1)/(d-l)) z_(l+1),
    and the specialization point maps to s = ((d-1)/2, ..., (-d+1)/2).
    """
    out = []
    for d in range(2, d_max + 1):
        for t in t_set:
            start = time.perf_counter()
            p = model.validate(t, d, t, 0)
            w = coords.generic_weight(p)
            ok = True
            detail = "1"
            for l in range(1, d):
                got = coords.pairing_coroot(p, l, w).scale(t)
                want = AffineExponent.variable(coords.z_var(l))
                if l + 1 < d:
                    want = want - AffineExponent.variable(
                        coords.z_var(l + 1), coeff=Fraction(d - l - 1, d - l))
                if got != want:
                    ok = False
                    detail = f"l={l}: {got} != {want}"
                    break
            if ok:
                point = coords.discrete_series_point(p).as_fractions()
                want_s = tuple(Fraction(d - 1, 2) - k for k in range(d))
                if point != want_s:
                    ok = False
                    detail = f"point {point} != {want_s}"
            out.append(_report(f"pairing d={d} t={t}", ok, detail, start))
    return out


def ratio_reports(d_max: int = DEFAULT_D_MAX,
                  t_set: Iterable[int] = DEFAULT_T_SET,
                  a_set: Iterable[int] = DEFAULT_A_SET) -> list[CheckReport]:
    """Telescoped pair products equal the closed level ratios, canonically."""
    out = []
    for d in range(2, d_max + 1):
        for t in t_set:
            for a in a_set:
                start = time.perf_counter()
                p = model.validate(t, d, t, a)
                ok = True
                detail = "1"
                for l in range(2, d + 1):
                    quotient = canonical_quotient(mu.mu_level_ratio_telescoped(p, l),
                                                  mu.mu_level_ratio_closed(p, l))
                    if not quotient.is_one:
                        ok = False
                        detail = f"l={l}: {quotient.render()}"
                        break
                out.append(_report(f"ratio d={d} t={t} a={a}", ok, detail, start))
    return out


def residue_reports(d_max: int = DEFAULT_D_MAX,
                    m_set: Iterable[int] = DEFAULT_M_SET,
                    a_set: Iterable[int] = DEFAULT_A_SET) -> list[CheckReport]:
    """The fully specialized residue datum equals its closed form, log grade 0."""
    from .resdata import res_a1_mu, residue_closed_form

    out = []
    for p in theorem_grid(d_max, m_set, a_set):
        start = time.perf_counter()
        got = res_a1_mu(p)
        quotient = canonical_quotient(got, residue_closed_form(p))
        ok = quotient.is_one and got.log_grade == 0
        detail = "1" if ok else f"quotient {quotient.render()} log_grade {got.log_grade}"
        out.append(_report(f"residue m={p.m} d={p.d} t={p.t} a={p.a}", ok, detail, start))
    return out


def theorem_reports(d_max: int = DEFAULT_D_MAX,
                    m_set: Iterable[int] = DEFAULT_M_SET,
                    a_set: Iterable[int] = DEFAULT_A_SET,
                    drop_level_inverse: bool = False) -> list[CheckReport]:
    """Assembled degree equals the closed-form degree on the whole grid."""
    from .degree import verify_theorem

    return [verify_theorem(p, drop_level_inverse=drop_level_inverse)
            for p in theorem_grid(d_max, m_set, a_set)]
