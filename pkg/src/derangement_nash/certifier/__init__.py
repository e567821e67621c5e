"""Certificates for eliminant degree, density, irreducibility and Galois group."""

from .counts import CountCheck, count_check, derangement, mixed_volume_full, permanent_brute
from .galois import (
    CERTIFIED,
    INCONCLUSIVE,
    IRREDUCIBLE,
    REDUCIBLE,
    DensityReport,
    GaloisCertificate,
    IrreducibilityResult,
    certify_full_symmetric,
    certify_irreducible,
    check_dense,
)
from .instance import InstanceCertificate, certify_instance
