"""Weighted zero-sum constants over Z_n.

Exact C/D/E constant computation with certified witnesses, plus
exhaustive verifiers for the supporting statements.  The heavy lifting
lives in the compiled _core module; this package only re-exports it and
adds a few constructors.
"""

from ._core import (  # noqa: F401
    CapExceeded,
    Certificate,
    CheckpointCorrupt,
    ConstantResult,
    Error,
    HypothesisUnmet,
    LemmaReport,
    LowerBoundClaim,
    Modulus,
    NotFound,
    ResidueSet,
    SearchStats,
    Sequence,
    UnsupportedPrime,
    WeightPair,
    __version__,
    bad_pair,
    bundle_to_json,
    c_lower_witness,
    cache_resolve_path,
    certificate_from_json,
    certificate_to_json,
    check_certificate,
    claim_to_json,
    compute_constant,
    d_lower_witness,
    dilate_set,
    e_lower_witness,
    extend_with_zeros,
    find_bad_sequence_of_length,
    find_zero_sum_subsequence,
    is_ab_zero_sum,
    is_good,
    lemma_names,
    lemma_report_to_json,
    lemma_summary,
    lemma_supports,
    nonresidues,
    quadratic_residues,
    recheck_claim,
    restricted_sumset,
    result_to_json,
    sumset,
    units,
    validate_witness,
    verify_lemma,
)


def qp_weights(p):
    """(Q_p, {1}) weight pair for an odd prime p."""
    m = Modulus(p)
    return WeightPair(quadratic_residues(m), ResidueSet(p, [1]))


def weights(n, a, b=(1,)):
    """Weight pair from explicit residue lists."""
    return WeightPair(ResidueSet(n, list(a)), ResidueSet(n, list(b)))
