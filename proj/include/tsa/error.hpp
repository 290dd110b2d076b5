#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tsa {

enum class ErrorCode {
  duplicate_edge,
  self_loop,
  id_out_of_range,
  profile_length_mismatch,
  length_mismatch,
  empty_profile,
  same_node,
  probability_out_of_range,
  unknown_sender,
  invalid_seed_stance,
  count_exceeds_pool,
  parse_error,
  inconsistent_ids,
  bad_stance_value,
  missing_key,
  range_violation,
  io_error,
  schema_version_mismatch,
  infeasible_edge_count,
  missing_truth_entry,
  malformed_trace,
  invalid_argument,
};

std::string_view to_string(ErrorCode code);

struct SourceLocation {
  std::string file;
  std::size_t line = 0;
  std::size_t column = 0;
};

// All user-facing failures (bad input, bad parameters) surface as tsa::Error.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  Error(ErrorCode code, const std::string& message, SourceLocation where);

  ErrorCode code() const noexcept { return code_; }
  const std::optional<SourceLocation>& where() const noexcept { return where_; }

 private:
  ErrorCode code_;
  std::optional<SourceLocation> where_;
};

// Broken internal invariant; the CLI maps this to exit code 2.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tsa
