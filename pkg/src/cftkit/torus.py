"""Torus partition functions: compact boson, Majorana and Dirac fermions,
and the diagonal minimal models M(P, Q)."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Optional, Tuple

from .errors import DomainError, InsufficientOrderError
from .qseries import TWO_PI_I, _check_tol, as_tau, eta_eval, theta_eval
from .virasoro import (
    character_numerator,
    kac_class_representatives,
    kac_weight,
    minimal_central_charge,
    minimal_m,
)


def _check_radius(r):
    if not (r > 0 and math.isfinite(float(r))):
        raise DomainError(f"radius must be positive and finite, got {r}")


def _radius_squared(r):
    """r^2 as a Fraction when r is exact or r^2 is a float rounding away from
    a small rational (sqrt(2) -> 2, 2/3 -> 4/9). Exact rho makes the duality
    r -> 2/r an exact relabeling of lattice terms."""
    if isinstance(r, (int, Fraction)):
        return Fraction(r) ** 2
    rho = float(r) ** 2
    snap = Fraction(rho).limit_denominator(10**6)
    if abs(float(snap) - rho) <= 4e-15 * rho:
        return snap
    return Fraction(rho)


def _lattice_cutoff(tau2: float, rho: Fraction, tol: float) -> int:
    # every dropped term has E >= (M+1)^2 * min(1/rho, rho/4); this minimum
    # is invariant under rho -> 4/rho so dual radii get the same cutoff
    mu = float(min(1 / rho, rho / 4))
    M = 0
    while math.exp(-2 * math.pi * tau2 * mu * (M + 1) ** 2) >= tol * 1e-2:
        M += 1
    return M


def boson_lattice_sum(tau, r, tol: float = 1e-12, cutoff: Optional[int] = None) -> Tuple[complex, int]:
    """sum_{|e|,|m| <= M} q^{h_{e,m}} qbar^{hbar_{e,m}}, before dividing by |eta|^2.

    Each term is exp(2 pi i tau1 e m - 2 pi tau2 E) with E = e^2/r^2 + m^2 r^2/4
    computed exactly in rho = r^2. Real and imaginary parts are accumulated
    with ``math.fsum``, which rounds once, so the value does not depend on
    term order. Returns the sum and the cutoff M used."""
    t = as_tau(tau)
    _check_radius(r)
    _check_tol(tol)
    rho = _radius_squared(r)
    M = _lattice_cutoff(t.imag, rho, tol) if cutoff is None else cutoff
    re, im = [], []
    for e in range(-M, M + 1):
        for m in range(-M, M + 1):
            E = float(Fraction(e * e) / rho + Fraction(m * m) * rho / 4)
            mod = math.exp(-2 * math.pi * t.imag * E)
            ph = 2 * math.pi * t.real * e * m
            re.append(mod * math.cos(ph))
            im.append(mod * math.sin(ph))
    return complex(math.fsum(re), math.fsum(im)), M


def z_boson(tau, r, tol: float = 1e-12) -> complex:
    """Compact boson at radius r: lattice sum over (e, m) divided by |eta|^2."""
    t = as_tau(tau)
    lattice, _ = boson_lattice_sum(t, r, tol)
    return lattice / abs(eta_eval(t, tol * 1e-2)) ** 2


def z_boson_poisson(tau, r, tol: float = 1e-12) -> complex:
    """The same partition function after Poisson resummation over e:

        (1/|eta|^2) sum_{p,m} r/sqrt(2 tau2) exp(-(pi r^2/2)((p - m tau1)^2/tau2 + tau2 m^2)).

    Agrees with :func:`z_boson` to rounding."""
    t = as_tau(tau)
    _check_radius(r)
    _check_tol(tol)
    r = float(r)
    t1, t2 = t.real, t.imag
    a = math.pi * r * r / 2
    pref = r / math.sqrt(2 * t2)
    floor = tol * 1e-3 / max(pref, 1.0)
    terms = []
    m = 0
    while True:
        row_peak = 0.0
        for mm in {m, -m}:
            centre = round(mm * t1)
            step = 0
            while True:
                fresh = 0.0
                for p in {centre + step, centre - step}:
                    x = math.exp(-a * ((p - mm * t1) ** 2 / t2 + t2 * mm * mm))
                    terms.append(x)
                    fresh = max(fresh, x)
                row_peak = max(row_peak, fresh)
                if fresh < floor and step > 0:
                    break
                step += 1
        if row_peak < floor and m > 0:
            break
        m += 1
    return pref * math.fsum(terms) / abs(eta_eval(t, tol * 1e-2)) ** 2 + 0j


def large_radius_asymptote(tau, r) -> float:
    """Leading large-r behaviour of the compact boson, r / (sqrt(2 Im tau) |eta|^2).
    Only the p = m = 0 term of the Poisson sum survives as r grows."""
    t = as_tau(tau)
    _check_radius(r)
    return float(r) / (math.sqrt(2 * t.imag) * abs(eta_eval(t)) ** 2)


def z_majorana(tau, tol: float = 1e-12) -> float:
    """(|theta_3| + |theta_4| + |theta_2|) / (2 |eta|), all at w = 0."""
    t = as_tau(tau)
    _check_tol(tol)
    th = sum(abs(theta_eval(i, 0, t, tol * 1e-2)) for i in (2, 3, 4))
    return th / (2 * abs(eta_eval(t, tol * 1e-2)))


def z_majorana_products(tau, tol: float = 1e-12) -> float:
    """Majorana Z from the trace over the NS and R sectors, written as
    infinite products in q and qbar."""
    t = as_tau(tau)
    _check_tol(tol)
    q = cmath.exp(TWO_PI_I * t)
    qh = cmath.exp(1j * math.pi * t)
    ns_plus = ns_minus = r_plus = 1.0
    n = 1
    while True:
        qn = q**n
        qnh = qn / qh
        ns_plus *= abs(1 + qnh) ** 2
        ns_minus *= abs(1 - qnh) ** 2
        r_plus *= abs(1 + qn) ** 2
        if abs(qnh) < tol * 1e-3:
            break
        n += 1
    aq = abs(q)
    return 0.5 * aq ** (-1 / 24) * (ns_plus + ns_minus + 2 * aq ** (1 / 8) * r_plus)


def z_dirac(tau, tol: float = 1e-12) -> float:
    """(|theta_3/eta|^2 + |theta_4/eta|^2 + |theta_2/eta|^2) / 2."""
    t = as_tau(tau)
    _check_tol(tol)
    eta = abs(eta_eval(t, tol * 1e-2))
    th = sum(abs(theta_eval(i, 0, t, tol * 1e-2)) ** 2 for i in (2, 3, 4))
    return th / (2 * eta * eta)


def z_minimal(P: int, Q: int, tau, qseries_order=None, tol: float = 1e-12) -> float:
    """Diagonal modular invariant of M(P, Q):

        |q|^{(1-c)/12} / |eta|^2 * sum_{(p,q) classes} |q^h N_{p,q}(q)|^2

    with N the alternating k-sum numerator, truncated below
    ``qseries_order``. With no order given, one is chosen from tol."""
    t = as_tau(tau)
    _check_tol(tol)
    c = minimal_central_charge(P, Q)
    m = minimal_m(P, Q)
    aq = math.exp(-2 * math.pi * t.imag)
    if qseries_order is None:
        qseries_order = 1
        while aq**qseries_order / (1 - aq) >= tol * 1e-3:
            qseries_order += 1
    order = Fraction(qseries_order)
    # tail of a numerator with unit coefficients and distinct exponents
    tail = aq ** float(order) / (1 - aq)
    pref = aq ** (float(1 - c) / 12) / abs(eta_eval(t, tol * 1e-2)) ** 2
    total = 0.0
    err = 0.0
    for p, q in kac_class_representatives(P, Q):
        h = kac_weight(p, q, m)
        num = character_numerator(P, Q, p, q, order).evaluate(t)
        scale = aq ** (2 * float(h))
        total += scale * abs(num) ** 2
        err += scale * (2 * abs(num) * tail + tail * tail)
    if pref * err > tol:
        raise InsufficientOrderError(
            f"q-series order {qseries_order} leaves a tail of about {pref * err:.3g} > tol={tol}"
        )
    return pref * total
