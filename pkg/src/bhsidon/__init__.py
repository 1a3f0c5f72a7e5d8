"""Sidon sets of order h and phi-Sidon systems built from finite-field discrete logs."""
from .admissibility import (AdmissibleProgression, ExceptionalPrimeSet, admissible_primes,
                            admissible_progression, cross_validate, exceptional_primes,
                            lemma_witness)
from .builder import (ConstructionCertificate, build_system, classical_lower_bound,
                      density_table, lower_bound_witness)
from .classical import (RepProfile, SidonSet, bose_chowla_set, check_mod_implies_plain,
                        is_bhg, rep_ordered, rep_orbit)
from .errors import (CeilingExceeded, HypothesisViolation, InvalidInput, SidonError,
                     VerificationFailed)
from .ff_tower import (FieldElement, FieldTower, dlog, find_generator, find_irreducible,
                       make_tower, subfield_elements)
from .linear_forms import (LinearForm, SidonSystem, VerificationReport, counting_bound,
                           density_constant, evaluate, is_phi_sidon, mixed_radix_system,
                           system_profile, translate)
from .oracle import ExtremalResult, exact_classical, exact_system, oracle_vs_construction

__version__ = "0.1.0"
