"""Number-law analysis of integer corpora: Benford, Zipf and discrete Gamma fits."""

import json as _json

from . import _core
from ._core import (
    ConfigError,
    DegenerateError,
    DomainError,
    EmptyCorpusError,
    IngestError,
    NumlawError,
    benford_pmf,
    extract_csv_column,
    extract_numbers,
    gamma_density,
    js_divergence,
    kl_divergence,
    mape,
    r_squared,
    sample_benford_digits,
    sample_gamma_lengths,
    sample_zipf,
    zipf_value,
)

__all__ = [
    "ConfigError",
    "DegenerateError",
    "DomainError",
    "EmptyCorpusError",
    "IngestError",
    "NumlawError",
    "analyze",
    "benford_pmf",
    "compute_stats",
    "estimate_cutoff",
    "extract_csv_column",
    "extract_numbers",
    "fit",
    "gamma_density",
    "js_divergence",
    "kl_divergence",
    "mape",
    "r_squared",
    "sample_benford_digits",
    "sample_gamma_lengths",
    "sample_zipf",
    "zipf_value",
]


def compute_stats(values):
    return _json.loads(_core.compute_stats(list(values)))


def fit(kind, support, observed):
    """Fit one law ("benford", "zipf", "gamma", "gamma_beta_zero") and return the result dict."""
    return _json.loads(_core.fit(kind, list(support), list(observed)))


def analyze(corpora, labels=None, years=None, analyses=("digit", "frequency", "length"), cutoff=False):
    """Build the full report for one or more integer corpora and return it as a dict."""
    corpora = [list(c) for c in corpora]
    if labels is None:
        labels = [f"corpus{i}" for i in range(len(corpora))]
    if years is None:
        years = [None] * len(corpora)
    return _json.loads(_core.analyze(corpora, list(labels), list(years), list(analyses), cutoff))


def estimate_cutoff(system, count, lower, alpha, initial, beta=0.0, damped=True):
    return _json.loads(_core.estimate_cutoff(system, count, lower, alpha, initial, beta, damped))
