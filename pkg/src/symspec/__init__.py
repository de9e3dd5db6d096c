"""Spectral analysis of Bergman-type and Szego-type integral operators
on irreducible bounded symmetric domains.

The package computes, in exact rational or sign-tracked logarithmic
arithmetic, the eigenvalue sequences of the operators, classifies them
(bounded / compact / finite rank / Schatten S_p), evaluates Schatten
norms, traces and related integrals by graded series summation, and
cross-checks every closed form with independent numerical oracles
(polar quadrature and Monte Carlo sampling on matrix balls).
"""

from symspec.domains import DomainParams, TableRow, classification_table, make_domain
from symspec.gindikin import (
    FMembership,
    GammaPoleError,
    PochhammerValue,
    SignedLogValue,
    dim_block_sum,
    dim_pm,
    gamma_omega,
    in_F,
    pochhammer,
)
from symspec.integrate import (
    MCEstimate,
    PolarSpec,
    mc_trace,
    polar_integral,
    sample_point,
    trace_quadrature,
)
from symspec.partitions import Partition, enumerate_by_weight, enumerate_graded
from symspec.spectral import (
    BerezinReport,
    ClassificationReport,
    OperatorSpec,
    SeriesEstimate,
    berezin_report,
    classify,
    eigenvalue,
    hs_norm_sq,
    j_integral,
    schatten_norm,
    trace_closed,
    trace_series,
)

__version__ = "0.1.0"

__all__ = [
    "DomainParams",
    "TableRow",
    "make_domain",
    "classification_table",
    "Partition",
    "enumerate_by_weight",
    "enumerate_graded",
    "SignedLogValue",
    "PochhammerValue",
    "FMembership",
    "GammaPoleError",
    "gamma_omega",
    "pochhammer",
    "in_F",
    "dim_pm",
    "dim_block_sum",
    "OperatorSpec",
    "ClassificationReport",
    "SeriesEstimate",
    "BerezinReport",
    "eigenvalue",
    "classify",
    "schatten_norm",
    "trace_series",
    "trace_closed",
    "hs_norm_sq",
    "berezin_report",
    "j_integral",
    "PolarSpec",
    "MCEstimate",
    "polar_integral",
    "trace_quadrature",
    "mc_trace",
    "sample_point",
]
