"""Exact q-expansion arithmetic for (quasi-)modular forms.

The package computes truncated q-expansions with exact rational coefficients,
implements the differential algebra of quasi-modular forms with constructive
weight-4/6 reduction certificates, half-integral-weight Hecke operators on the
Kohnen plus space, the Shimura-Borcherds lift, and batch verification of the
integrality ("magnetic") identities the library is built around.
"""

from .series import (
    AntiderivativeError,
    DomainError,
    IntegralityReport,
    PrecisionError,
    QSeries,
    SeriesError,
    UsageError,
    antiderivative,
    coefficient,
    delta,
    integrality_check,
    inv,
    linear_combine,
    mul,
    pow_int,
    substitute_power,
)
from .forms import (
    ConsistencyError,
    FormName,
    discriminant,
    e24,
    eisenstein,
    hk_operator_apply,
    j_invariant,
    named_form,
    quasi_monomial,
    specific_d_apply,
    theta,
)

__all__ = [
    "AntiderivativeError",
    "ConsistencyError",
    "DomainError",
    "FormName",
    "IntegralityReport",
    "PrecisionError",
    "QSeries",
    "SeriesError",
    "UsageError",
    "antiderivative",
    "coefficient",
    "delta",
    "discriminant",
    "e24",
    "eisenstein",
    "hk_operator_apply",
    "integrality_check",
    "inv",
    "j_invariant",
    "linear_combine",
    "mul",
    "named_form",
    "pow_int",
    "quasi_monomial",
    "specific_d_apply",
    "substitute_power",
    "theta",
]

__version__ = "0.1.0"
