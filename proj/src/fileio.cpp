#include "tweetpol/fileio.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>

#include "tweetpol/corpus_io.hpp"
#include "tweetpol/error.hpp"

namespace tweetpol {

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorCode::IoError, "short write to " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot rename into " + path.string());
  }
}

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
    throw Error(ErrorCode::IoError, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_file(path)); }

std::string to_hex_float(double value) {
  char buf[64];
  const bool negative = std::signbit(value);
  const double magnitude = negative ? -value : value;
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, magnitude, std::chars_format::hex);
  std::string body(buf, ptr);
  if (body == "inf" || body == "nan") return (negative ? "-" : "") + body;
  return (negative ? "-0x" : "0x") + body;
}

double from_hex_float(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  if (!(text.starts_with("0x") || text.starts_with("0X"))) {
    throw Error(ErrorCode::InvalidArgument, "bad hex float '" + std::string(text) + "'");
  }
  text.remove_prefix(2);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value,
                                   std::chars_format::hex);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorCode::InvalidArgument, "bad hex float '" + std::string(text) + "'");
  }
  return negative ? -value : value;
}

}  // namespace tweetpol
