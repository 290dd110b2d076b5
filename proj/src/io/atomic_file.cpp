#include <system_error>

#include "tsa/error.hpp"
#include "tsa/io.hpp"

namespace tsa::io {

AtomicFile::AtomicFile(std::filesystem::path path)
    : path_(std::move(path)), tmp_(path_.string() + ".tmp") {
  out_ = std::make_unique<std::ofstream>(tmp_, std::ios::binary | std::ios::trunc);
  if (!*out_) throw Error(ErrorCode::io_error, "cannot open " + tmp_.string() + " for writing");
}

AtomicFile::~AtomicFile() {
  if (committed_) return;
  out_.reset();
  std::error_code ec;
  std::filesystem::remove(tmp_, ec);
}

std::ostream& AtomicFile::stream() { return *out_; }

void AtomicFile::commit() {
  out_->flush();
  if (!*out_) throw Error(ErrorCode::io_error, "write failure on " + tmp_.string());
  out_->close();
  std::error_code ec;
  std::filesystem::rename(tmp_, path_, ec);
  if (ec) throw Error(ErrorCode::io_error, "cannot rename to " + path_.string() + ": " + ec.message());
  committed_ = true;
}

void write_text_atomic(const std::filesystem::path& path, std::string_view content) {
  AtomicFile file(path);
  file.stream().write(content.data(), static_cast<std::streamsize>(content.size()));
  file.commit();
}

}  // namespace tsa::io
