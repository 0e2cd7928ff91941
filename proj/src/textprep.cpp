#include "tweetpol/textprep.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <cstdint>
#include <stdexcept>

namespace tweetpol::textprep {

namespace {

const icu::Normalizer2& nfc() {
  static const icu::Normalizer2* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalizer unavailable");
    return n;
  }();
  return *instance;
}

bool is_word_cp(UChar32 c) {
  return c >= 0 && (u_hasBinaryProperty(c, UCHAR_ALPHABETIC) || u_isdigit(c));
}

bool is_handle_byte(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

bool is_scheme_byte(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '+' || c == '.' || c == '-';
}

UChar32 code_point_at(std::string_view s, std::size_t i) {
  if (i >= s.size()) return -1;
  UChar32 c = 0;
  auto offset = static_cast<int32_t>(i);
  U8_NEXT(reinterpret_cast<const uint8_t*>(s.data()), offset, static_cast<int32_t>(s.size()), c);
  return c;
}

UChar32 last_code_point(std::string_view s) {
  if (s.empty()) return -1;
  UChar32 c = 0;
  auto offset = static_cast<int32_t>(s.size());
  U8_PREV(reinterpret_cast<const uint8_t*>(s.data()), 0, offset, c);
  return c;
}

bool is_space_at(std::string_view s, std::size_t i, std::size_t& width) {
  UChar32 c = 0;
  auto offset = static_cast<int32_t>(i);
  U8_NEXT(reinterpret_cast<const uint8_t*>(s.data()), offset, static_cast<int32_t>(s.size()), c);
  width = static_cast<std::size_t>(offset) - i;
  return c >= 0 && u_isUWhiteSpace(c);
}

std::string fold_case(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  u = nfc().normalize(u, status);
  u.toLower(icu::Locale::getRoot());
  u = nfc().normalize(u, status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU normalization failed");
  std::string out;
  u.toUTF8String(out);
  return out;
}

std::string strip_hashtags(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '#') {
      out.push_back(s[i++]);
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] == '#') ++j;
    if (!is_word_cp(code_point_at(s, j))) out.append(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename OnMention>
std::string replace_mentions(std::string_view s, OnMention&& on_mention) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '@') {
      const UChar32 prev = last_code_point(out);
      std::size_t j = i + 1;
      while (j < s.size() && is_handle_byte(s[j])) ++j;
      if (j > i + 1 && !(is_word_cp(prev) || prev == '_')) {
        on_mention(s.substr(i + 1, j - i - 1));
        out.append(kUserToken);
        i = j;
        continue;
      }
    }
    out.push_back(s[i++]);
  }
  return out;
}

std::string replace_urls(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t copied = 0;
  std::size_t search = 0;
  while (true) {
    const std::size_t sep = s.find("://", search);
    if (sep == std::string_view::npos) break;
    std::size_t start = sep;
    while (start > copied && is_scheme_byte(s[start - 1])) --start;
    while (start < sep && !(s[start] >= 'a' && s[start] <= 'z')) ++start;
    std::size_t end = sep + 3;
    std::size_t width = 1;
    while (end < s.size() && !is_space_at(s, end, width)) end += width;
    if (start == sep || end == sep + 3) {
      search = sep + 1;
      continue;
    }
    out.append(s.substr(copied, start - copied));
    out.append(kUrlToken);
    copied = end;
    search = end;
  }
  out.append(s.substr(copied));
  return out;
}

std::string normalize_once(std::string_view text) {
  std::string s = fold_case(text);
  s = strip_hashtags(s);
  s = replace_mentions(s, [](std::string_view) {});
  s = replace_urls(s);
  return s;
}

}  // namespace

std::string normalize(std::string_view text) {
  std::string current = normalize_once(text);
  // Rare interactions (e.g. a dropped '#' letting a combining mark compose)
  // can change the result again; iterate to the fixpoint.
  for (int round = 0; round < 8; ++round) {
    std::string next = normalize_once(current);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

static std::size_t sentinel_length(std::string_view rest) {
  for (std::string_view sentinel : {kUrlToken, kUserToken}) {
    if (rest.starts_with(sentinel)) return sentinel.size();
  }
  return 0;
}

TokenStream tokenize(std::string_view normalized) {
  TokenStream tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  const auto* bytes = reinterpret_cast<const uint8_t*>(normalized.data());
  const auto length = static_cast<int32_t>(normalized.size());
  std::size_t i = 0;
  while (i < normalized.size()) {
    if (normalized[i] == '<') {
      if (const std::size_t n = sentinel_length(normalized.substr(i)); n > 0) {
        flush();
        tokens.emplace_back(normalized.substr(i, n));
        i += n;
        continue;
      }
    }
    UChar32 c = 0;
    auto offset = static_cast<int32_t>(i);
    U8_NEXT(bytes, offset, length, c);
    if (is_word_cp(c)) {
      current.append(normalized.substr(i, static_cast<std::size_t>(offset) - i));
    } else {
      flush();
    }
    i = static_cast<std::size_t>(offset);
  }
  flush();
  return tokens;
}

TokenStream analyze(std::string_view text) { return tokenize(normalize(text)); }

std::vector<std::string> extract_mentions(std::string_view text) {
  std::vector<std::string> handles;
  const std::string s = strip_hashtags(fold_case(text));
  replace_mentions(s, [&](std::string_view handle) { handles.emplace_back(handle); });
  return handles;
}

}  // namespace tweetpol::textprep
