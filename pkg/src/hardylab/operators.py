"""Composition operators T_t f = f o phi_t on H^p(U).

The exact norm ``phi_1'(inf)^{-t/p}`` is primary; quadrature-based ratios are
only lower-bound falsifiers.  Strong continuity and the generator identity
``Gamma f = G f'`` are probed on fixed test functions.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (ConvergenceError, HardyLabError, NotApplicable, ParamError,
                     UnboundedOperator)
from .hardy import (HardyFunction, Membership, Verdict, e_n, hardy_function, hardy_norm,
                    membership, omega)
from .maps import AnalyticMap, cauchy_derivative
from .semigroup import (GeneratorInfo, SemigroupFamily, angular_derivative_profile,
                        delta_limit, generator, sampled_infimum)

UNBOUNDED_THRESHOLD = 1e-2
CONSISTENCY_RTOL = 1e-3
NORM_RTOL = 1e-6


class Boundedness(str, enum.Enum):
    BOUNDED = "Bounded"
    UNBOUNDED = "Unbounded"
    INCONCLUSIVE = "Inconclusive"


class DomainVerdict(str, enum.Enum):
    IN_DOMAIN = "InDomain"
    NOT_IN_DOMAIN = "NotInDomain"
    INCONCLUSIVE = "Inconclusive"


_DOMAIN_OF = {Membership.MEMBER: DomainVerdict.IN_DOMAIN,
              Membership.NON_MEMBER: DomainVerdict.NOT_IN_DOMAIN,
              Membership.INCONCLUSIVE: DomainVerdict.INCONCLUSIVE}


@dataclass
class BoundednessVerdict:
    verdict: Boundedness
    phi1_inf: float | None
    delta: float | None
    phi1_inf_estimate: float | None = None
    consistent: bool | None = None
    note: str = ""

    def norm_at(self, t: float, p: float) -> float:
        if self.verdict is not Boundedness.BOUNDED:
            raise UnboundedOperator("T_t is not bounded on H^p")
        return self.phi1_inf ** (-t / p)


def _derivative_fn(f: HardyFunction):
    if f.map.deriv is not None:
        return f.map.deriv
    func = f.map.func
    return lambda z: cauchy_derivative(func, z)


def compose_apply(f: HardyFunction, phi: AnalyticMap) -> HardyFunction:
    """f o phi."""
    ff, pf = f.map.func, phi.func
    deriv = None
    if f.map.deriv is not None and phi.deriv is not None:
        fd, pd = f.map.deriv, phi.deriv
        deriv = lambda z: fd(pf(z)) * pd(z)  # noqa: E731
    return hardy_function(f"{f.label}o{phi.name}", lambda z: ff(pf(z)), deriv)


def classify_boundedness(fam: SemigroupFamily, p: float, info: GeneratorInfo | None = None) -> BoundednessVerdict:
    """Bounded / Unbounded from the ray estimate of phi_1'(inf), cross-checked with delta."""
    if not p > 0:
        raise ParamError("p must be positive")
    prof = angular_derivative_profile(fam.at(1.0))
    estimate = max(0.0, prof.limit.real)
    note = ""
    if estimate < UNBOUNDED_THRESHOLD:
        trend = np.abs(prof.vertical)
        if np.all(np.diff(trend[-4:]) < 0):
            return BoundednessVerdict(Boundedness.UNBOUNDED, 0.0, None, estimate,
                                      note="phi_1(z)/z decays along the ray")
        return BoundednessVerdict(Boundedness.INCONCLUSIVE, None, None, estimate,
                                  note="small ray estimate without decreasing trend")
    if not prof.rays_agree():
        return BoundednessVerdict(Boundedness.INCONCLUSIVE, None, None, estimate, note="rays disagree")
    if sampled_infimum(fam.at(1.0)) < estimate * (1 - CONSISTENCY_RTOL) - CONSISTENCY_RTOL:
        note = "Julia-Caratheodory infimum below ray estimate"
    phi1 = fam.closed_form_phi1_inf if fam.closed_form_phi1_inf is not None else estimate
    delta = None
    consistent = None
    try:
        info = info if info is not None else generator(fam, resolve_dw=False)
        delta = delta_limit(info)
    except HardyLabError as exc:
        note = note or f"delta unavailable: {exc}"
    if delta is not None:
        consistent = abs(math.exp(delta) - estimate) <= CONSISTENCY_RTOL * estimate
    verdict = Boundedness.BOUNDED if (consistent is not False and not note.startswith("Julia")) else Boundedness.INCONCLUSIVE
    return BoundednessVerdict(verdict, phi1, delta, estimate, consistent, note)


def operator_norm(fam: SemigroupFamily, p: float, t: float, verdict: BoundednessVerdict | None = None) -> float:
    """||T_t|| = phi_1'(inf)^{-t/p}."""
    if t < 0:
        raise ParamError("t must be >= 0")
    v = verdict if verdict is not None else classify_boundedness(fam, p)
    if v.verdict is not Boundedness.BOUNDED:
        raise UnboundedOperator(f"{fam.name}: T_t is {v.verdict.value}")
    return v.norm_at(t, p)


def empirical_norm_lower_bound(fam: SemigroupFamily, p: float, t: float, testset,
                               verdict: BoundednessVerdict | None = None) -> float:
    """max over the test set of ||f o phi_t||_p / ||f||_p."""
    v = verdict if verdict is not None else classify_boundedness(fam, p)
    if v.verdict is not Boundedness.BOUNDED:
        raise UnboundedOperator(f"{fam.name}: T_t is {v.verdict.value}")
    phi = fam.at(t)
    best = 0.0
    for f in testset:
        base = hardy_norm(f, p)
        moved = hardy_norm(compose_apply(f, phi), p)
        for est in (base, moved):
            if est.verdict is not Verdict.CONVERGED:
                raise ConvergenceError(f"norm of {f.label} not converged ({est.note})")
        best = max(best, moved.value / base.value)
    return best


def difference(f: HardyFunction, phi: AnalyticMap) -> HardyFunction:
    ff, pf = f.map.func, phi.func
    return hardy_function(f"T{f.label}-{f.label}", lambda z: ff(pf(z)) - ff(z))


def strong_continuity_probe(fam: SemigroupFamily, f: HardyFunction, p: float, t_seq) -> list[float]:
    """||T_t f - f||_p for each t in ``t_seq``."""
    if not 1 <= p < math.inf:
        raise ParamError("continuity probes need 1 <= p < inf")
    res = []
    for t in t_seq:
        est = hardy_norm(difference(f, fam.at(t)), p)
        if est.verdict is not Verdict.CONVERGED:
            raise ConvergenceError(f"residual norm at t={t} not converged ({est.note})")
        res.append(est.value)
    return res


def gamma_apply(info: GeneratorInfo, f: HardyFunction) -> HardyFunction:
    """Gamma f = G f'."""
    g = info.G.func
    fd = _derivative_fn(f)
    return hardy_function(f"G*{f.label}'", lambda z: g(z) * fd(z))


def domain_check(info: GeneratorInfo, f: HardyFunction, p: float) -> DomainVerdict:
    """Whether f lies in the domain of Gamma, i.e. G f' is in H^p."""
    return _DOMAIN_OF[membership(gamma_apply(info, f), p)]


def generator_residual(fam: SemigroupFamily, info: GeneratorInfo, f: HardyFunction, p: float, t: float) -> float:
    """||(T_t f - f)/t - G f'||_p."""
    if not t > 0:
        raise ParamError("t must be positive")
    ff, pf = f.map.func, fam.at(t).func
    gf = gamma_apply(info, f).map.func
    quotient = hardy_function("quotient", lambda z: (ff(pf(z)) - ff(z)) / t - gf(z))
    est = hardy_norm(quotient, p)
    if est.verdict is not Verdict.CONVERGED:
        raise ConvergenceError(f"generator residual norm not converged ({est.note})")
    return est.value


@dataclass(frozen=True)
class GrowthProbe:
    n: tuple
    lower_bounds: tuple
    floors: tuple
    g_omega_norm: float


def nonuniform_growth_probe(fam: SemigroupFamily, info: GeneratorInfo, p: float, n_max: int) -> GrowthProbe:
    """L_n = ||G e_n'||_p with the floors (n / pi^{1/p}) ||G omega'||_p."""
    if not 1 <= p < math.inf:
        raise ParamError("growth probe needs 1 <= p < inf")
    g_omega = gamma_apply(info, omega(p))
    est = hardy_norm(g_omega, p)
    if membership(g_omega, p, est) is not Membership.MEMBER:
        raise NotApplicable("G omega' is not in H^p")
    ns = tuple(range(1, n_max + 1))
    lows = []
    for n in ns:
        e = hardy_norm(gamma_apply(info, e_n(n, p)), p)
        if e.verdict is not Verdict.CONVERGED:
            raise ConvergenceError(f"||G e_{n}'|| not converged ({e.note})")
        lows.append(e.value)
    floors = tuple(n / math.pi ** (1 / p) * est.value for n in ns)
    return GrowthProbe(ns, tuple(lows), floors, est.value)
