#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tweetpol::textprep {

inline constexpr std::string_view kUrlToken = "<url>";
inline constexpr std::string_view kUserToken = "<user>";

/// Lowercase, whitespace-free, non-empty tokens in document order.
using TokenStream = std::vector<std::string>;

/// NFC + full lowercase, then tweet hygiene:
///   - runs of '#' directly before a letter/digit are dropped (hashtag word kept)
///   - "@handle" ([a-z0-9_]+, not preceded by a word character) becomes <user>
///   - scheme://... up to the next whitespace becomes <url>, where the scheme
///     is [a-z][a-z0-9+.-]*
/// Invalid UTF-8 is replaced by U+FFFD. Idempotent.
std::string normalize(std::string_view text);

/// Splits normalized text into maximal runs of alphabetic/decimal-digit code
/// points; the <url> and <user> sentinels are kept whole, everything else is a
/// separator.
TokenStream tokenize(std::string_view normalized);

/// tokenize(normalize(text)).
TokenStream analyze(std::string_view text);

/// Lowercased handles (without '@') of the mentions normalize() would replace.
std::vector<std::string> extract_mentions(std::string_view text);

}  // namespace tweetpol::textprep
