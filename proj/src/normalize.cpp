#include "citeforensics/normalize.hpp"

#include <array>
#include <cstdint>

namespace citeforensics {

namespace {

// Permissive UTF-8 decode: on malformed sequences each offending byte is
// taken as its Latin-1 code point, so the function is total on any input.
char32_t decode_utf8(std::string_view s, std::size_t& i) {
    const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    const unsigned char b0 = byte(i);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    std::size_t len = 0;
    char32_t cp = 0;
    char32_t min_cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
        min_cp = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
        min_cp = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
        min_cp = 0x10000;
    } else {
        ++i;
        return b0;  // stray continuation or invalid lead byte
    }
    if (i + len > s.size()) {
        ++i;
        return b0;
    }
    for (std::size_t k = 1; k < len; ++k) {
        const unsigned char bk = byte(i + k);
        if ((bk & 0xC0) != 0x80) {
            ++i;
            return b0;
        }
        cp = (cp << 6) | (bk & 0x3F);
    }
    if (cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        ++i;
        return b0;  // overlong or out of range
    }
    i += len;
    return cp;
}

void encode_utf8(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Compatibility fold for characters that commonly vary between reference
// formatters. Returns the number of code points written to `out` (1..3).
std::size_t fold(char32_t cp, std::array<char32_t, 3>& out) {
    // Fullwidth ASCII block.
    if (cp >= 0xFF01 && cp <= 0xFF5E) {
        out[0] = cp - 0xFEE0;
        return 1;
    }
    switch (cp) {
        case 0x00AA: out[0] = U'a'; return 1;  // feminine ordinal
        case 0x00BA: out[0] = U'o'; return 1;  // masculine ordinal
        case 0x00B9: out[0] = U'1'; return 1;
        case 0x00B2: out[0] = U'2'; return 1;
        case 0x00B3: out[0] = U'3'; return 1;
        case 0x2071: out[0] = U'i'; return 1;
        case 0x207F: out[0] = U'n'; return 1;
        case 0xFB00: out[0] = U'f'; out[1] = U'f'; return 2;
        case 0xFB01: out[0] = U'f'; out[1] = U'i'; return 2;
        case 0xFB02: out[0] = U'f'; out[1] = U'l'; return 2;
        case 0xFB03: out[0] = U'f'; out[1] = U'f'; out[2] = U'i'; return 3;
        case 0xFB04: out[0] = U'f'; out[1] = U'f'; out[2] = U'l'; return 3;
        case 0xFB05:
        case 0xFB06: out[0] = U's'; out[1] = U't'; return 2;
        default: break;
    }
    if (cp == 0x2070 || (cp >= 0x2074 && cp <= 0x2079)) {  // superscript digits
        out[0] = U'0' + (cp - 0x2070);
        return 1;
    }
    if (cp >= 0x2080 && cp <= 0x2089) {  // subscript digits
        out[0] = U'0' + (cp - 0x2080);
        return 1;
    }
    out[0] = cp;
    return 1;
}

char32_t to_lower_basic(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;  // Latin-1 uppercase
    return cp;
}

// Stripped without acting as a separator (zero-width and soft-hyphen class).
bool is_invisible(char32_t cp) {
    return cp == 0x00AD || (cp >= 0x200B && cp <= 0x200F) || cp == 0xFEFF;
}

bool is_punct_or_symbol(char32_t cp) {
    if (cp <= 0x7F) {
        return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
               (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
    }
    if (cp >= 0xA1 && cp <= 0xBF) return true;  // Latin-1 punctuation and symbols
    if (cp == 0xD7 || cp == 0xF7) return true;
    if (cp >= 0x2010 && cp <= 0x2027) return true;  // dashes, quotes, daggers
    if (cp >= 0x2030 && cp <= 0x205E) return true;  // per-mille .. general punct
    if (cp >= 0x2E00 && cp <= 0x2E7F) return true;  // supplemental punctuation
    if (cp >= 0x3001 && cp <= 0x303F) return true;  // CJK punctuation
    return false;
}

}  // namespace

bool is_unicode_whitespace(char32_t cp) {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D:
        case 0x20: case 0x85: case 0xA0: case 0x1680:
        case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

std::string normalize_reference(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    std::size_t i = 0;
    std::array<char32_t, 3> folded{};
    while (i < raw.size()) {
        const char32_t cp = decode_utf8(raw, i);
        const std::size_t n = fold(cp, folded);
        for (std::size_t k = 0; k < n; ++k) {
            char32_t c = to_lower_basic(folded[k]);
            if (is_unicode_whitespace(c) || (c < 0x20) || c == 0x7F) {
                if (!out.empty()) pending_space = true;
                continue;
            }
            if (is_invisible(c) || is_punct_or_symbol(c)) continue;
            if (pending_space) {
                out.push_back(' ');
                pending_space = false;
            }
            encode_utf8(c, out);
        }
    }
    return out;
}

}  // namespace citeforensics
