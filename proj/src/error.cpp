#include "tsa/error.hpp"

namespace tsa {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::duplicate_edge: return "DuplicateEdge";
    case ErrorCode::self_loop: return "SelfLoop";
    case ErrorCode::id_out_of_range: return "IdOutOfRange";
    case ErrorCode::profile_length_mismatch: return "ProfileLengthMismatch";
    case ErrorCode::length_mismatch: return "LengthMismatch";
    case ErrorCode::empty_profile: return "EmptyProfile";
    case ErrorCode::same_node: return "SameNode";
    case ErrorCode::probability_out_of_range: return "ProbabilityOutOfRange";
    case ErrorCode::unknown_sender: return "UnknownSender";
    case ErrorCode::invalid_seed_stance: return "InvalidSeedStance";
    case ErrorCode::count_exceeds_pool: return "CountExceedsPool";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::inconsistent_ids: return "InconsistentIds";
    case ErrorCode::bad_stance_value: return "BadStanceValue";
    case ErrorCode::missing_key: return "MissingKey";
    case ErrorCode::range_violation: return "RangeViolation";
    case ErrorCode::io_error: return "IoError";
    case ErrorCode::schema_version_mismatch: return "SchemaVersionMismatch";
    case ErrorCode::infeasible_edge_count: return "InfeasibleEdgeCount";
    case ErrorCode::missing_truth_entry: return "MissingTruthEntry";
    case ErrorCode::malformed_trace: return "MalformedTrace";
    case ErrorCode::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::string with_location(ErrorCode code, const std::string& message,
                          const SourceLocation& where) {
  std::string out(to_string(code));
  out += ": ";
  out += where.file;
  out += ':';
  out += std::to_string(where.line);
  out += ':';
  out += std::to_string(where.column);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

Error::Error(ErrorCode code, const std::string& message, SourceLocation where)
    : std::runtime_error(with_location(code, message, where)),
      code_(code),
      where_(std::move(where)) {}

}  // namespace tsa
