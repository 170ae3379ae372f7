#pragma once

#include <stdexcept>
#include <string>

namespace cnz {

// Every failure mode exposed through the public API carries one of these
// codes so callers (and the CLI exit-code mapping) can branch on them.
enum class errc {
  division_by_zero,
  arity_mismatch,
  all_points_singular,
  singular_point,
  not_skew_symmetrizable,
  index_out_of_range,
  not_skew_symmetric,
  illegal_quiver,
  sign_incoherent,
  zero_vector,
  length_mismatch,
  empty_sequence,
  not_nilpotent,
  not_fully_mutated,
  not_reddening,
  not_signed_permutation,
  no_convergence,
  singular_jacobian,
  not_dynkin_shape,
  invariant_violation,
  self_folded_edge,
  bad_incidence,
  domain_error,
  parse_error,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace cnz
