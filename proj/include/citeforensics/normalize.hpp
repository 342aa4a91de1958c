#pragma once

#include <string>
#include <string_view>

namespace citeforensics {

/// Canonical form of a raw bibliography entry, used for fuzzy matching:
/// compatibility-folds common typographic characters (fullwidth forms,
/// ligatures, super/subscript digits), lowercases, strips punctuation,
/// collapses whitespace runs (all Unicode whitespace) to single ASCII
/// spaces, and trims. Total, deterministic, and idempotent; bytes that are
/// not valid UTF-8 are interpreted as Latin-1.
std::string normalize_reference(std::string_view raw);

/// True for code points with the Unicode White_Space property.
bool is_unicode_whitespace(char32_t cp);

}  // namespace citeforensics
