"""frobpush: exact decompositions of Frobenius pushforwards on a catalog of
varieties, trace-kernel positivity verdicts, and F-signature arithmetic.

All computations are exact (big integers and rationals); every closed form is
cross-checked against an independent brute-force oracle in the test and
verification suites.
"""

from .combinat import (
    PrimePower,
    binom,
    bounded_power_coefficients,
    composition_count,
    composition_count_oracle,
    eulerian,
    floor_residue,
    shifted_sum_identity_holds,
    sum_identity_holds,
)
from .picard import (
    ConeP,
    Decomposition,
    Hirzebruch,
    Line,
    LinearBlowup,
    PicClass,
    Product,
    ProjSpace,
    Quadric,
    RationalNormalCone,
    SegreCone,
    SegreConeBlowup,
    Spinor,
    SplitBundleTotalSpace,
    VeroneseCone,
    VeroneseConeBlowup,
    change_basis,
)
from .catalog import (
    PullbackRequest,
    blowup_multiplicity,
    hirzebruch_block_multiplicities,
    hirzebruch_closed_multiplicities,
    pushforward_hirzebruch,
    pushforward_linear_blowup,
    pushforward_product,
    pushforward_projective_space,
    pushforward_segre_cone,
    pushforward_veronese_cone,
    quadric_pushforward_support,
    split_bundle_requests,
    veronese_cone_blocks,
)
from .restriction import (
    blowup_chart_counts,
    restrict,
    restrict_blowup_to_exceptional,
    restrict_hirzebruch_to_section,
    restrict_segre_to_exceptional,
    restrict_veronese_to_exceptional,
)
from .positivity import (
    QuadricKernelReport,
    Verdict,
    VerdictStatus,
    Witness,
    ample_verdict,
    classify_class,
    determinant_twist_sum,
    kernel_restriction_verdict,
    quadric_kernel_verdict,
    structure_pushforward,
    trace_kernel,
    volume_identity,
)
from .localalg import (
    cone_pushforward,
    f_signature,
    f_signature_convergent,
    splitting_number,
)

__version__ = "0.1.0"
