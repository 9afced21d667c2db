"""Exact transvectant calculus for SL2 x SL2 and certification of the
double-bundle non-degeneracy condition for bi-forms of bidegree (3, b)."""

from .exact_linalg import RatMatrix, binomial, kernel_basis, rank, solve_membership
from .forms import BiForm, BinaryForm, GroupElement, act, monomial, partial_derivative
from .formio import parse_biform, print_biform
from .schedule import Schedule, schedule_for
from .transvectants import TransvectantSpec, bi_transvect, transvect
from .verifier import VerificationReport, verify, verify_generic, verify_range, verify_witness
from .witnesses import WitnessSet, tamper, witnesses_for

__version__ = "0.1.0"
