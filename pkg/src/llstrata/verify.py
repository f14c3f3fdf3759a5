"""Cross-validation sweeps: every structural invariant of the calculus,
the closed-form comparisons, and the agreement between the equivariant
degree pipeline and the permutation-factorization oracle.

Known literature discrepancies (the published stratum-degree closed form
off the generic stratum, the published t1^2 coefficient of the
A-contribution) are reported as informational entries, never as failures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import universal
from .permoracle import oracle_for_stratum
from .series import Series
from .unfolding import (FamilySpec, MultisingularityType, P_TABLE,
                        exp_fstar_classes, family_series, generic_degree,
                        gysin, p_polynomial, specialize, stratum_report,
                        tau_poly_coeffs)


@dataclass
class CheckResult:
    name: str
    passed: bool | None  # None marks an informational entry
    details: str = ""

    @property
    def status(self):
        if self.passed is None:
            return "INFO"
        return "PASS" if self.passed else "FAIL"


def partitions_up_to(weight):
    """All partitions of every weight 0..weight, including the empty one."""
    def gen(n, maxp):
        if n == 0:
            yield ()
            return
        for p in range(min(n, maxp), 0, -1):
            for rest in gen(n - p, p):
                yield (p,) + rest
    out = [()]
    for d in range(1, weight + 1):
        out.extend(gen(d, d))
    return out


def laurent_families(max_sheets):
    return [FamilySpec.laurent(k, l)
            for l in range(1, max_sheets) for k in range(1, l + 1)
            if k + l <= max_sheets]


# -- individual checks -----------------------------------------------

_P_EXPECTED = {
    (2,): {(0, 1): Fraction(1), (0, 0): Fraction(-1)},
    (1, 1): {(1, 1): Fraction(1, 2), (0, 1): Fraction(-2), (0, 0): Fraction(1)},
    (3,): {(0, 2): Fraction(1), (0, 1): Fraction(-5), (1, 0): Fraction(2)},
    (2, 1): {(1, 2): Fraction(1), (0, 2): Fraction(-6), (1, 1): Fraction(-1),
             (0, 1): Fraction(18), (1, 0): Fraction(-6)},
    (1, 1, 1): {(2, 2): Fraction(1, 6), (1, 2): Fraction(-2),
                (0, 2): Fraction(20, 3), (1, 1): Fraction(1),
                (0, 1): Fraction(-40, 3), (1, 0): Fraction(4)},
}


def check_p_table():
    bad = []
    for parts, want in _P_EXPECTED.items():
        poly = p_polynomial(MultisingularityType(parts))
        if poly.as_dict() != want:
            bad.append(f"{parts}: got {poly}")
    return CheckResult("P-table rows (symbolic)", not bad, "; ".join(bad) or
                       f"{len(_P_EXPECTED)} rows reproduced")


def check_generic_degrees(max_total=8):
    from math import factorial
    bad = []
    count = 0
    for fam in laurent_families(max_total):
        k, l = fam.k, fam.l
        want = Fraction(factorial(k + l - 1) * k ** (k + 1) * l ** (l + 1),
                        factorial(k) * factorial(l))
        count += 1
        if generic_degree(fam) != want:
            bad.append(fam.label())
    for n in range(1, max_total + 1):
        count += 1
        if generic_degree(FamilySpec.polynomial(n)) != Fraction((n + 1) ** (n - 1)):
            bad.append(f"polynomial(n={n})")
    return CheckResult("generic map degrees", not bad,
                       "; ".join(bad) or f"{count} families checked")


def check_oracle_sweep(max_sheets=6, cache=None):
    bad = []
    count = 0
    for fam in laurent_families(max_sheets):
        for parts in partitions_up_to(fam.param_count):
            mu = MultisingularityType(parts)
            rep = stratum_report(fam, mu)
            try:
                _, cnt = oracle_for_stratum(fam, mu, cache=cache)
            except ValueError:
                cnt = Fraction(0)
            count += 1
            if rep.hurwitz != cnt:
                bad.append(f"{fam.label()} mu={mu.label()}: "
                           f"pipeline {rep.hurwitz} vs oracle {cnt}")
    return CheckResult("oracle agreement (Laurent)", not bad,
                       "; ".join(bad) or f"{count} strata checked, 0 mismatches")


def check_polynomial_sweep(max_n=4, cache=None):
    bad = []
    count = 0
    for n in range(1, max_n + 1):
        fam = FamilySpec.polynomial(n)
        for parts in partitions_up_to(n):
            mu = MultisingularityType(parts)
            rep = stratum_report(fam, mu)
            try:
                _, cnt = oracle_for_stratum(fam, mu, cache=cache)
            except ValueError:
                cnt = Fraction(0)
            count += 1
            if rep.deg_LL != (n + 1) * cnt:
                bad.append(f"n={n} mu={mu.label()}: "
                           f"deg_LL {rep.deg_LL} vs (n+1)*oracle {(n + 1) * cnt}")
    return CheckResult("oracle agreement (polynomial)", not bad,
                       "; ".join(bad) or f"{count} strata checked, 0 mismatches")


def _tau(deg, coeff=1):
    return Series.var("tau", deg, coeff=coeff) if deg else Series.const(coeff)


def check_known_classes(max_sheets=8):
    bad = []
    trip, _ = universal.assemble_R(2)
    a2x = trip.ri.coeff_of_t({2: 1})
    if a2x != (Series.var("psi", 2) - Series.var("nu1") * Series.var("nu2")):
        bad.append(f"A2(X) universal form: {a2x}")
    nip, nipp = universal.build_NI(2)
    a11y = (nip + nipp).coeff_of_t({1: 2})
    psi, nu1, nu2 = (Series.var(v) for v in ("psi", "nu1", "nu2"))
    closed_num = psi * (nu1 + nu2) * (psi ** 3 * (nu1 + nu2)
                                      - 4 * psi ** 2 * nu1 * nu2
                                      + 2 * nu1 ** 2 * nu2 ** 2)
    closed = closed_num.div_exact(2 * nu1 ** 2 * nu2 ** 2)
    if a11y != closed:
        bad.append("A11(Y) closed form differs from the t1^2 coefficient")
    for fam in laurent_families(max_sheets):
        k, l = fam.k, fam.l
        spec_a2 = specialize(a2x, fam)
        if spec_a2 != _tau(2, k * l * (k * l - 1)):
            bad.append(f"A2 at {fam.label()}")
        if gysin(spec_a2, fam, "p") != _tau(1, Fraction((k + l) * (k * l - 1))):
            bad.append(f"sigma2 at {fam.label()}")
        spec_a11 = specialize(a11y, fam)
        s11 = Fraction((k + l) * (k * l * (k + l) - 4 * k * l + 2), 2)
        if gysin(spec_a11, fam, "q") != _tau(1, s11):
            bad.append(f"sigma11 at {fam.label()}")
    return CheckResult("known class values", not bad, "; ".join(bad) or
                       "A2(X), sigma_2, sigma_{1,1}, A11(Y) all reproduced")


def check_empty_strata():
    cases = [(FamilySpec.laurent(1, 1), (2,)),
             (FamilySpec.laurent(1, 1), (1, 1)),
             (FamilySpec.laurent(1, 2), (1, 1))]
    bad = []
    for fam, parts in cases:
        rep = stratum_report(fam, MultisingularityType(parts))
        if not rep.empty or rep.deg_LL != 0:
            bad.append(f"{fam.label()} mu={parts}")
    return CheckResult("empty strata vanish", not bad,
                       "; ".join(bad) or f"{len(cases)} strata identically zero")


def check_structural(max_codim=6):
    bad = []
    tabs = universal.build_tables(max_codim)
    for name, s in (("RA", tabs.ra), ("RI", tabs.ri), ("R0", tabs.r0),
                    ("R", tabs.r_full)):
        if not s.is_polynomial():
            bad.append(f"{name} has a negative exponent")
    swap = {"nu1": "nu2", "nu2": "nu1"}
    for name, s in (("RI", tabs.ri), ("NI'", tabs.ni_prime),
                    ("NI''", tabs.ni_dblprime), ("mono", tabs.mono)):
        if s.rename(swap) != s:
            bad.append(f"{name} not symmetric under nu1 <-> nu2")
    for name, s in (("NA", tabs.na), ("NI'+NI''", tabs.ni_prime + tabs.ni_dblprime)):
        for prof in s.t_profiles():
            w = sum(i * e for i, e in prof.items())
            coeff = s.coeff_of_t(prof)
            if coeff and coeff.homogeneous_class_degree() != w:
                bad.append(f"{name} coefficient of {prof} not homogeneous")
    for m in range(1, max_codim + 1):
        if tabs.mono.coeff_of_var("z", m) != tabs.r_full.coeff_of_t({m: 1}):
            bad.append(f"mono/multi mismatch at order {m}")
    trip = universal.split_contributions(tabs.r_full)
    if trip.ra != tabs.ra or trip.ri != tabs.ri or trip.r0 != tabs.r0:
        bad.append("contribution splitting round-trip failed")
    if tabs.ra.substitute({"nu": 0}) != tabs.r0:
        bad.append("RA at nu=0 differs from R0")
    if tabs.ri.substitute({"nu1": 0, "nu2": 0}) != tabs.r0:
        bad.append("RI at nu1=nu2=0 differs from R0")
    return CheckResult(f"structural properties (codim <= {max_codim})", not bad,
                       "; ".join(bad) or "polynomiality, symmetry, homogeneity, "
                       "mono/multi and splitting all hold")


def check_exp_fstar(max_codim=4, max_sheets=6, max_n=4):
    bad = []
    fams = laurent_families(max_sheets) + \
        [FamilySpec.polynomial(n) for n in range(1, max_n + 1)]
    for fam in fams:
        if exp_fstar_classes(fam, max_codim) != family_series(fam, max_codim):
            bad.append(fam.label())
    return CheckResult(f"exp f_* route (codim <= {max_codim})", not bad,
                       "; ".join(bad) or f"{len(fams)} families agree")


def check_route_independence(max_order=4, max_sheets=6, max_n=5):
    bad = []
    fams = laurent_families(max_sheets) + \
        [FamilySpec.polynomial(n) for n in range(1, max_n + 1)]
    mono = universal.mono_series(max_order)
    for fam in fams:
        spec_mono = specialize(mono, fam)
        direct = family_series(fam, max_order)
        for m in range(1, max_order + 1):
            x_route = gysin(spec_mono.coeff_of_var("z", m), fam, "p")
            y_route = gysin(direct.coeff_of_t({m: 1}), fam, "q")
            if x_route != y_route:
                bad.append(f"{fam.label()} order {m}")
    return CheckResult(f"caustic-type X/Y route independence (order <= {max_order})",
                       not bad, "; ".join(bad) or f"{len(fams)} families agree")


def erratum_notes():
    """Documented literature discrepancies, reported informationally."""
    notes = []
    fam = FamilySpec.polynomial(3)
    mu = MultisingularityType.of(2)
    rep = stratum_report(fam, mu)
    notes.append(CheckResult(
        "erratum: published stratum-degree closed form (polynomial family)", None,
        f"n=3 caustic: printed closed form {rep.closed_form_printed}, "
        f"pipeline/oracle-backed {rep.deg_LL}"))
    ra = universal.build_RA(2)
    got = ra.coeff_of_t({1: 2})
    psi, nu = Series.var("psi"), Series.var("nu")
    printed = -(psi - nu) * (2 * psi - nu)
    notes.append(CheckResult(
        "erratum: printed t1^2 coefficient of the A-contribution", None,
        f"printed {printed}, computed {got}; both specialize to "
        f"{got.substitute({'nu': 0})} at nu=0"))
    return notes


def run_all(max_sheets=6, max_codim=6, cache=None):
    """Run every check; heavy sweeps honor the limits."""
    results = [
        check_p_table(),
        check_generic_degrees(max_total=max(max_sheets, 8)),
        check_known_classes(max_sheets=max(max_sheets, 8)),
        check_empty_strata(),
        check_structural(max_codim=max_codim),
        check_exp_fstar(max_codim=min(4, max_codim), max_sheets=max_sheets),
        check_route_independence(max_order=min(4, max_codim), max_sheets=max_sheets),
        check_oracle_sweep(max_sheets=max_sheets, cache=cache),
        check_polynomial_sweep(max_n=4, cache=cache),
    ]
    results.extend(erratum_notes())
    return results
