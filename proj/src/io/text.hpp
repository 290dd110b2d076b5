#pragma once

// Line-oriented parsing helpers shared by the file loaders.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tsa/error.hpp"
#include "tsa/graph.hpp"

namespace tsa::io::detail {

struct Field {
  std::string_view text;
  std::size_t column = 1;  // 1-based
};

class LineReader {
 public:
  explicit LineReader(const std::filesystem::path& path);

  // Next line that is neither blank nor a '#' comment. Strips a trailing '\r'.
  bool next(std::string& line);
  std::size_t line_number() const noexcept { return line_no_; }
  const std::string& file() const noexcept { return file_; }

  [[noreturn]] void fail(ErrorCode code, const std::string& message, std::size_t column) const;

 private:
  std::ifstream in_;
  std::string file_;
  std::size_t line_no_ = 0;
};

std::vector<Field> split(std::string_view line, char sep);

// Three-column CSV row ("id,id,stance"). Returns nullopt for the column-name
// line `header` when it is the first data line.
struct CsvTriple {
  Field node;
  Field topic;
  Field stance;
};
std::optional<CsvTriple> read_triple(LineReader& reader, const std::string& line,
                                     std::string_view header, bool first_line);

Stance parse_stance(const LineReader& reader, const Field& field);

// Label -> dense id lookup over a label table.
class SymbolTable {
 public:
  SymbolTable() = default;
  explicit SymbolTable(const std::vector<std::string>& labels);
  std::optional<std::uint32_t> find(std::string_view label) const;

 private:
  std::unordered_map<std::string, std::uint32_t> ids_;
};

// Sorted, de-duplicated labels in natural order.
std::vector<std::string> canonical_labels(std::vector<std::string> labels);

std::ifstream open_input(const std::filesystem::path& path);

}  // namespace tsa::io::detail
