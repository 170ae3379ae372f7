#include "cnz/errors.hpp"

namespace cnz {

const char* errc_name(errc c) {
  switch (c) {
    case errc::division_by_zero: return "DivisionByZero";
    case errc::arity_mismatch: return "ArityMismatch";
    case errc::all_points_singular: return "AllPointsSingular";
    case errc::singular_point: return "SingularPoint";
    case errc::not_skew_symmetrizable: return "NotSkewSymmetrizable";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::not_skew_symmetric: return "NotSkewSymmetric";
    case errc::illegal_quiver: return "IllegalQuiver";
    case errc::sign_incoherent: return "SignIncoherent";
    case errc::zero_vector: return "ZeroVector";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::empty_sequence: return "EmptySequence";
    case errc::not_nilpotent: return "NotNilpotent";
    case errc::not_fully_mutated: return "NotFullyMutated";
    case errc::not_reddening: return "NotReddening";
    case errc::not_signed_permutation: return "NotSignedPermutation";
    case errc::no_convergence: return "NoConvergence";
    case errc::singular_jacobian: return "SingularJacobian";
    case errc::not_dynkin_shape: return "NotDynkinShape";
    case errc::invariant_violation: return "InvariantViolation";
    case errc::self_folded_edge: return "SelfFoldedEdge";
    case errc::bad_incidence: return "BadIncidence";
    case errc::domain_error: return "DomainError";
    case errc::parse_error: return "ParseError";
  }
  return "UnknownError";
}

}  // namespace cnz
