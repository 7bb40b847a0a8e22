"""hftlab: numerical laboratory for the half-line/half-plane transform pair.

Forward and inverse transforms between L2(0, inf) and square-summable
holomorphic functions on the upper half-plane, the conjugate operator
pair (multiplication / i hbar d/ds) built on them, deficiency-index and
spectrum diagnostics, the Friedrichs realisation of the squared
derivative operator with its positive root, the Moebius action of
SL(2, R), and a free-particle energy/time demonstration.
"""
from .grids import QuadratureGrid, gauss_laguerre_grid, uniform_grid
from .hft import (
    DomainError, InputError, RangeGuardError, TruncationError,
    HalfPlanePoint, SampledHalfLineFunction, HardyLineSample, InverseReport,
    forward_hft, forward_hft_line, inverse_hft, line_norm_sq, hardy_sup_norm,
    hardy_norm_sq, polarization_inner_product, sample_profile,
)
from .operators import (
    Representation, DomainReport, PreconditionError,
    apply_S, apply_Z, commutator_residual, symmetry_defect, domain_membership,
    boundary_value, differentiate,
)
from .extensions import (
    DeficiencyReport, KernelCandidate, TridiagonalOperator,
    SpectralDecomposition, SpectrumReport, PositivityError,
    deficiency_indices, residual_membership_Z, build_friedrichs_zsq,
    sqrt_friedrichs, noncommutation_witness, spectrum_report,
)
from .mobius import (
    MobiusTransform, UnsupportedTransformError, ExtendedInterval,
    identity, dilation, translation, inversion,
    mobius_apply, mobius_compose, mobius_inverse, boundary_action,
    transform_hft_pair, TransformedPair,
)
from .freeparticle import (
    FreeParticleConfig, time_eigenfunction, smeared_energy_eigenfunction,
    delta_overlap, time_representation, phase_slope, schrodinger_residual,
    free_particle_map,
)
from .profiles import PROFILES, SUITE, Profile, get_profile

__version__ = "0.1.0"
