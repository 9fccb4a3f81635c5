"""Wolstenholme-type congruences modulo p^k: fast exact computation plus oracles."""

from .bernoulli import bern_exact, bern_mod_via_sum, power_sum_mod, theorem_inputs
from .binomial import binom_downward, binom_exact_mod, binom_upward
from .checks import CheckOutcome
from .harmonic import elem_sym, elem_sym_bruteforce, harmonic_sum, telescoped_chain
from .modmath import ModulusPower, Residue, Valuation, batch_inv, inv, make_modulus, mul, power, valuation
from .primes import PrimeRange, primes_in
from .theorems import PrimeReport, build_report, theorem1_conditions, theorem2_conditions

__version__ = "0.1.0"
