"""Exact calculus of universal residual classes for singularities of
functions on curves, with Lyashko-Looijenga degrees and double Hurwitz
numbers for the polynomial and Laurent unfolding families."""

from .series import Series, NotDivisibleError, tvar
from .universal import (ContributionTriple, UniversalTables, assemble_R,
                        build_MA, build_NA, build_NI, build_R0, build_RA,
                        build_RI, build_tables, mono_series,
                        split_contributions)
from .unfolding import (ClosedForm, FamilySpec, InterpolationError,
                        MultisingularityType, StratumReport, SymmetricPoly,
                        closed_form_degree, exp_fstar_classes, family_series,
                        generic_degree, gysin, hurwitz_number, p_polynomial,
                        specialize, stratum_report)
from .permoracle import (FactorizationQuery, OracleCache,
                         count_factorizations, oracle_for_stratum)
from .verify import CheckResult, run_all

__all__ = [
    "Series", "NotDivisibleError", "tvar",
    "ContributionTriple", "UniversalTables", "assemble_R", "build_MA",
    "build_NA", "build_NI", "build_R0", "build_RA", "build_RI",
    "build_tables", "mono_series", "split_contributions",
    "ClosedForm", "FamilySpec", "InterpolationError", "MultisingularityType",
    "StratumReport", "SymmetricPoly", "closed_form_degree",
    "exp_fstar_classes", "family_series", "generic_degree", "gysin",
    "hurwitz_number", "p_polynomial", "specialize", "stratum_report",
    "FactorizationQuery", "OracleCache", "count_factorizations",
    "oracle_for_stratum",
    "CheckResult", "run_all",
]

__version__ = "1.0.0"
