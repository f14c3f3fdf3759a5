"""Universal generating functions for singularity classes of functions on
curves: the multisingularity series NA (smooth-fiber case), its marked
variant MA, the nodal-fiber pair NI' / NI'', the contributions RA, RI, R0,
the assembled residual-class series R, and the monosingularity series.

Everything is exact; a requested codimension bounds the weighted t-degree
(and the z-degree of the monosingularity series).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .series import Series, tvar


def _vars(trunc_t, trunc_aux, relations=False):
    kw = dict(trunc_t=trunc_t, trunc_aux=trunc_aux, relations=relations)
    return {name: Series.var(name, **kw) for name in ("psi", "nu", "nu1", "nu2", "z", "h")}


def _falling(psi, nu, start, count):
    """(psi - start*nu)(psi - (start+1)*nu)...  with `count` factors."""
    out = Series.one(psi.trunc_t, psi.trunc_aux)
    for j in range(start, start + count):
        out = out * (psi - j * nu)
    return out


def _exp_core(codim, trunc_aux):
    """exp(sum_i t_i h^(i+1) / nu), truncated."""
    arg = Series.zero(codim, trunc_aux)
    for i in range(1, codim + 1):
        arg = arg + Series.var(tvar(i), trunc_t=codim, trunc_aux=trunc_aux) \
            * Series.var("h", i + 1, trunc_t=codim, trunc_aux=trunc_aux) \
            * Series.var("nu", -1, trunc_t=codim, trunc_aux=trunc_aux)
    return arg.exp()


@lru_cache(maxsize=None)
def build_NA(codim):
    """Multisingularity series for the smooth-fiber family:
    NA = 1 + sum_{m>=2} psi(psi-nu)...(psi-(m-1)nu) P_m with
    1 + P_2 h^2 + P_3 h^3 + ... = exp(sum_i t_i h^(i+1)/nu).
    """
    trunc_aux = 2 * codim
    v = _vars(codim, trunc_aux)
    core = _exp_core(codim, trunc_aux)
    na = Series.one(codim, trunc_aux)
    for m in range(2, trunc_aux + 1):
        pm = core.coeff_of_var("h", m)
        if pm:
            na = na + v["psi"] * _falling(v["psi"], v["nu"], 1, m - 1) * pm
    return na


@lru_cache(maxsize=None)
def build_MA(codim):
    """Marked variant with a distinguished critical point tracked by z:
    MA = 1 + sum_{n>=1} (psi-nu)...(psi-n nu) Q_n with
    1 + Q_1 h + Q_2 h^2 + ... = exp(sum_i t_i h^(i+1)/nu) / (1 - z h).
    """
    trunc_aux = 2 * codim
    v = _vars(codim, trunc_aux)
    core = _exp_core(codim, trunc_aux)
    geom = Series.one(codim, trunc_aux)
    for j in range(1, trunc_aux + 1):
        geom = geom + Series.var("z", j, trunc_t=codim, trunc_aux=trunc_aux) \
            * Series.var("h", j, trunc_t=codim, trunc_aux=trunc_aux)
    core = core * geom
    ma = Series.one(codim, trunc_aux)
    for n in range(1, trunc_aux + 1):
        qn = core.coeff_of_var("h", n)
        if qn:
            ma = ma + _falling(v["psi"], v["nu"], 1, n) * qn
    return ma


@lru_cache(maxsize=None)
def build_NI(codim):
    """The nodal-fiber pair (NI', NI'').

    NI' is the product of two copies of NA with nu renamed to nu1 and nu2;
    NI'' replaces z^n by (n+1) t_n in psi*z*MA(nu1)*MA(nu2).
    """
    na = build_NA(codim)
    ni_prime = na.substitute({"nu": Series.var("nu1")}) \
        * na.substitute({"nu": Series.var("nu2")})
    ma = build_MA(codim)
    m1 = ma.substitute({"nu": Series.var("nu1")})
    m2 = ma.substitute({"nu": Series.var("nu2")})
    marked = Series.var("psi", trunc_t=codim, trunc_aux=2 * codim) \
        * Series.var("z", trunc_t=codim, trunc_aux=2 * codim) * m1 * m2
    ni_dblprime = marked.replace_z_by_t()
    return ni_prime, ni_dblprime


@lru_cache(maxsize=None)
def build_RA(codim):
    """A-contribution: (psi/nu) RA = log NA, so RA = nu*log(NA)/psi.
    Every coefficient is polynomial in psi, nu; a division failure here is
    a correctness alarm, not a recoverable condition.
    """
    na = build_NA(codim)
    ra = (Series.var("nu", trunc_t=codim, trunc_aux=2 * codim) * (na - 1).log1p()) \
        .div_exact(Series.var("psi"))
    assert ra.is_polynomial(), "RA coefficients must be polynomial"
    return ra


@lru_cache(maxsize=None)
def build_R0(codim):
    """0-contribution: RA at nu = 0 (well defined since RA is polynomial)."""
    return build_RA(codim).substitute({"nu": 0})


@lru_cache(maxsize=None)
def build_RI(codim):
    """I-contribution: psi(nu1+nu2)/(nu1 nu2) RI = log(NI' + NI'')."""
    ni_prime, ni_dblprime = build_NI(codim)
    total = ni_prime + ni_dblprime
    lg = (total - 1).log1p()
    num = Series.var("nu1", trunc_t=codim, trunc_aux=2 * codim) \
        * Series.var("nu2", trunc_t=codim, trunc_aux=2 * codim) * lg
    ri = num.div_exact(Series.var("psi")).div_exact(
        Series.var("nu1") + Series.var("nu2"))
    assert ri.is_polynomial(), "RI coefficients must be polynomial"
    return ri


@dataclass(frozen=True)
class ContributionTriple:
    """The unique splitting of a residual class modulo nu*nu1 = nu*nu2 = 0."""
    r0: Series
    ra: Series
    ri: Series


@lru_cache(maxsize=None)
def assemble_R(codim):
    """Full residual-class series R = RA + RI - R0 in the quotient ring,
    together with its contribution triple.  The coefficient of t_m in R is
    the universal monosingularity class of codimension m in the source.
    """
    ra = build_RA(codim)
    ri = build_RI(codim)
    r0 = build_R0(codim)
    r_full = (ra.with_relations(True) + ri.with_relations(True)
              - r0.with_relations(True))
    return ContributionTriple(r0=r0, ra=ra, ri=ri), r_full


def split_contributions(r):
    """ra = r(psi,nu,0,0), ri = r(psi,0,nu1,nu2), r0 = r(psi,0,0,0)."""
    ra = r.substitute({"nu1": 0, "nu2": 0}).with_relations(False)
    ri = r.substitute({"nu": 0}).with_relations(False)
    r0 = r.substitute({"nu": 0, "nu1": 0, "nu2": 0}).with_relations(False)
    return ContributionTriple(r0=r0, ra=ra, ri=ri)


def _l_series(codim, nu_name, trunc_aux):
    """L(psi,nu;z) = 1 + (psi-nu)z + (psi-nu)(psi-2nu)z^2 + ..."""
    psi = Series.var("psi", trunc_t=codim, trunc_aux=trunc_aux)
    nu = Series.var(nu_name, trunc_t=codim, trunc_aux=trunc_aux)
    out = Series.one(codim, trunc_aux)
    for m in range(1, trunc_aux + 1):
        out = out + _falling(psi, nu, 1, m) \
            * Series.var("z", m, trunc_t=codim, trunc_aux=trunc_aux)
    return out


@lru_cache(maxsize=None)
def mono_series(codim):
    """Generating series sum_i [A_i(X)] z^i in the quotient ring:
    L(psi,nu;z) plus the node part
    nu1 nu2/(nu1+nu2) (L1/nu1 + L2/nu2 + d/dz(z^2 L1 L2))
    minus the 0-part 1/(1 - psi z).
    """
    # the derivative lowers z-degree by one, so build one z-order higher
    aux = codim + 1
    nu1 = Series.var("nu1", trunc_t=codim, trunc_aux=aux)
    nu2 = Series.var("nu2", trunc_t=codim, trunc_aux=aux)
    l_a = _l_series(codim, "nu", aux)
    l1 = _l_series(codim, "nu1", aux)
    l2 = _l_series(codim, "nu2", aux)
    z2 = Series.var("z", 2, trunc_t=codim, trunc_aux=aux + 2)
    deriv = (z2.with_trunc(codim, aux + 2) * l1.with_trunc(codim, aux + 2)
             * l2.with_trunc(codim, aux + 2)).diff("z")
    node_num = nu2 * l1 + nu1 * l2 + nu1 * nu2 * deriv.with_trunc(codim, aux)
    node = node_num.div_exact(Series.var("nu1") + Series.var("nu2"))
    zero_part = Series.zero(codim, aux)
    for m in range(codim + 1):
        zero_part = zero_part + Series.var("psi", m, trunc_t=codim, trunc_aux=aux) \
            * Series.var("z", m, trunc_t=codim, trunc_aux=aux)
    full = (l_a.with_relations(True) + node.with_relations(True)
            - zero_part.with_relations(True))
    return full.with_trunc(codim, codim).with_relations(True)


@dataclass(frozen=True)
class UniversalTables:
    """All universal series at a fixed codimension."""
    na: Series
    ma: Series
    ni_prime: Series
    ni_dblprime: Series
    ra: Series
    r0: Series
    ri: Series
    r_full: Series
    mono: Series
    codim: int


@lru_cache(maxsize=None)
def build_tables(codim):
    if codim < 0:
        raise ValueError("codim must be >= 0")
    ni_prime, ni_dblprime = build_NI(codim)
    trip, r_full = assemble_R(codim)
    return UniversalTables(
        na=build_NA(codim), ma=build_MA(codim),
        ni_prime=ni_prime, ni_dblprime=ni_dblprime,
        ra=trip.ra, r0=trip.r0, ri=trip.ri, r_full=r_full,
        mono=mono_series(codim), codim=codim)
