"""Frobenius classes of primes read off linear recurrences.

Detect how a monic integer polynomial factors modulo primes from the
remainders x^n mod C(x), check the congruences these imply for Fibonacci-,
Padovan/Perrin-, cyclotomic- and tau-type sequences, and cross-check against
full factorization over F_p (Berlekamp, Cantor-Zassenhaus).
"""

from .arith import is_prime, legendre, mod_inv, mod_pow, primes_in_range
from .classify import (
    CycleType,
    S3Class,
    ScanReport,
    chebotarev_scan,
    cycle_type,
    is_totally_split,
    padovan_class_by_quadratic_form,
    padovan_classify,
    perrin_pseudoprime_scan,
    quad_classify,
    s3_classify,
)
from .cyclotomic import cyclo_lucas, cyclotomic_poly, euler_phi, moebius, residue_rule_table
from .factor import FactorizationResult, berlekamp, ddf, edf_cz, factor_full, squarefree_decompose
from .parse import parse_poly
from .polyring import IntPoly, ModPoly, discriminant, divrem_monic, lucas_apply, remainder_power, remainder_power_exact
from .recurrence import LinRec, lucas_initials, term_exact, term_mod
from .tau import delta_l, tau_table

__version__ = "0.1.0"
