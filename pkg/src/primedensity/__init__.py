"""Prime-counting oracles, density estimators, and a fitted correction model.

The package has three layers: exact integer ground truth (`counting`),
real-valued estimators of the prime count (`approx`), and the machinery that
connects them: the correction function f with pi(x) = x/(ln x - f(x))
(`correction`), a from-scratch Levenberg-Marquardt refit of its closed-form
model (`fitting`), and reproduction reports for the published comparison
tables with errata detection (`reference`, `tables`).
"""

from .approx import (ApproxMethod, FitParams, LEGENDRE_B, PUBLISHED_FIT,
                     conjecture_pi, estimate, f_hat, gauss_ratio, legendre, li,
                     riemann_r_gram, riemann_r_mobius, zeta_int)
from .correction import (FDataset, FSample, Provenance, ResidualReport,
                         build_dataset, correction_profile, dataset_from_csv,
                         dataset_to_csv, f_exact, published_dataset,
                         residual_table, scan_discontinuities)
from .counting import (PiSource, PiValue, PrimeTable, mobius, mobius_sieve,
                       prime_pi_fast, prime_pi_sieve, primes_in_range,
                       sieve_primes)
from .errors import (CapacityError, DomainError, FitSingularError, PoleError,
                     PrimeDensityError)
from .fitting import FitOptions, FitResult, fit_lm, numeric_jacobian
from .tables import (CorrectionReport, EstimatorReport, Erratum,
                     build_correction_report, build_powers_report,
                     build_small_x_report, round_half_away_from_zero)

__version__ = "0.1.0"

__all__ = [
    "ApproxMethod", "CapacityError", "CorrectionReport", "DomainError",
    "Erratum", "EstimatorReport", "FDataset", "FSample", "FitOptions",
    "FitParams", "FitResult", "FitSingularError", "LEGENDRE_B", "PUBLISHED_FIT",
    "PiSource", "PiValue", "PoleError", "PrimeDensityError", "PrimeTable",
    "Provenance", "ResidualReport", "build_correction_report", "build_dataset",
    "build_powers_report", "build_small_x_report", "conjecture_pi",
    "correction_profile", "dataset_from_csv", "dataset_to_csv", "estimate",
    "f_exact", "f_hat", "fit_lm", "gauss_ratio", "legendre", "li", "mobius",
    "mobius_sieve", "numeric_jacobian", "prime_pi_fast", "prime_pi_sieve",
    "primes_in_range", "published_dataset", "residual_table",
    "riemann_r_gram", "riemann_r_mobius", "round_half_away_from_zero",
    "scan_discontinuities", "sieve_primes", "zeta_int", "__version__",
]
