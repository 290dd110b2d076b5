#include "text.hpp"

#include <algorithm>
#include <charconv>

#include "tsa/io.hpp"

namespace tsa::io {

namespace {

std::string_view trim(std::string_view s, std::size_t& offset) {
  std::size_t b = 0;
  while (b < s.size() && (s[b] == ' ' || s[b] == '\t')) ++b;
  std::size_t e = s.size();
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
  offset += b;
  return s.substr(b, e - b);
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string_view strip_zeros(std::string_view s) {
  std::size_t i = 0;
  while (i + 1 < s.size() && s[i] == '0') ++i;
  return s.substr(i);
}

}  // namespace

bool label_less(std::string_view a, std::string_view b) {
  const bool na = all_digits(a);
  const bool nb = all_digits(b);
  if (na != nb) return na;
  if (!na) return a < b;
  const auto sa = strip_zeros(a);
  const auto sb = strip_zeros(b);
  if (sa.size() != sb.size()) return sa.size() < sb.size();
  if (sa != sb) return sa < sb;
  return a < b;
}

std::string format_stance(Stance s) {
  switch (s) {
    case Stance::unknown: return "-1";
    case Stance::oppose: return "0";
    case Stance::neutral: return "0.5";
    case Stance::support: return "1";
  }
  return "-1";
}

}  // namespace tsa::io

namespace tsa::io::detail {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  return in;
}

LineReader::LineReader(const std::filesystem::path& path)
    : in_(open_input(path)), file_(path.string()) {}

bool LineReader::next(std::string& line) {
  while (std::getline(in_, line)) {
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i == line.size() || line[i] == '#') continue;
    return true;
  }
  if (in_.bad()) throw Error(ErrorCode::io_error, "read failure on " + file_);
  return false;
}

void LineReader::fail(ErrorCode code, const std::string& message, std::size_t column) const {
  throw Error(code, message, SourceLocation{file_, line_no_, column});
}

std::vector<Field> split(std::string_view line, char sep) {
  std::vector<Field> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    const auto raw = line.substr(start, pos == std::string_view::npos ? line.size() - start
                                                                       : pos - start);
    std::size_t col = start;
    const auto text = sep == '\t' ? raw : trim(raw, col);
    out.push_back(Field{text, col + 1});
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<CsvTriple> read_triple(LineReader& reader, const std::string& line,
                                     std::string_view header, bool first_line) {
  auto fields = split(line, ',');
  if (fields.size() != 3) {
    reader.fail(ErrorCode::parse_error,
                "expected 3 comma-separated fields, got " + std::to_string(fields.size()),
                fields.size() > 3 ? fields[3].column : line.size() + 1);
  }
  if (first_line) {
    std::string joined;
    for (std::size_t i = 0; i < 3; ++i) {
      if (i) joined += ',';
      joined += fields[i].text;
    }
    if (joined == header) return std::nullopt;
  }
  for (const auto& f : fields) {
    if (f.text.empty()) reader.fail(ErrorCode::parse_error, "empty field", f.column);
  }
  return CsvTriple{fields[0], fields[1], fields[2]};
}

Stance parse_stance(const LineReader& reader, const Field& field) {
  double value = 0.0;
  const auto* first = field.text.data();
  const auto* last = first + field.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    reader.fail(ErrorCode::parse_error, "not a number: '" + std::string(field.text) + "'",
                field.column);
  }
  auto stance = stance_from_value(value);
  if (!stance) {
    reader.fail(ErrorCode::bad_stance_value,
                "stance " + std::string(field.text) + " not in {-1, 0, 0.5, 1}", field.column);
  }
  return *stance;
}

SymbolTable::SymbolTable(const std::vector<std::string>& labels) {
  ids_.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    ids_.emplace(labels[i], static_cast<std::uint32_t>(i));
  }
}

std::optional<std::uint32_t> SymbolTable::find(std::string_view label) const {
  auto it = ids_.find(std::string(label));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> canonical_labels(std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end(),
            [](const std::string& a, const std::string& b) { return label_less(a, b); });
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

}  // namespace tsa::io::detail
