#include <doctest.h>

#include <random>
#include <vector>

#include "citeforensics/normalize.hpp"
#include "testutil.hpp"

using citeforensics::is_unicode_whitespace;
using citeforensics::normalize_reference;

namespace {

std::string encode_utf8(char32_t cp) {
    std::string out;
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
    return out;
}

// The complete White_Space code point list the normalizer must honour.
const std::vector<char32_t> kWhitespace = {
    0x09,   0x0A,   0x0B,   0x0C,   0x0D,   0x20,   0x85,   0xA0,
    0x1680, 0x2000, 0x2001, 0x2002, 0x2003, 0x2004, 0x2005, 0x2006,
    0x2007, 0x2008, 0x2009, 0x200A, 0x2028, 0x2029, 0x202F, 0x205F,
    0x3000};

}  // namespace

TEST_CASE("normalize_reference strips punctuation, lowercases, collapses spaces") {
    CHECK(normalize_reference("Smith,  J. (2020).  Title.") == "smith j 2020 title");
}

TEST_CASE("normalize_reference of empty input is empty") {
    CHECK(normalize_reference("") == "");
    CHECK(normalize_reference("  \t ") == "");
    CHECK(normalize_reference("(...)") == "");
}

TEST_CASE("unicode whitespace variants normalize identically to ASCII spaces") {
    const std::string base = "doe r 2019 on networks";
    for (const char32_t ws : kWhitespace) {
        REQUIRE(is_unicode_whitespace(ws));
        std::string variant = "Doe,";
        variant += encode_utf8(ws);
        variant += "R.";
        variant += encode_utf8(ws);
        variant += encode_utf8(ws);
        variant += "(2019).";
        variant += encode_utf8(ws);
        variant += "On Networks.";
        CHECK(normalize_reference(variant) == base);
    }
}

TEST_CASE("normalize_reference folds typographic variants") {
    CHECK(normalize_reference("“Quoted” — title") == "quoted title");
    CHECK(normalize_reference("ＡＢＣ １２") == "abc 12");  // fullwidth
    CHECK(normalize_reference("eﬃcient") == "efficient");                  // ligature
    CHECK(normalize_reference("CAFÉ") == "café");  // Latin-1 lowercase kept
}

TEST_CASE("normalize_reference is idempotent and pure on random inputs") {
    std::mt19937_64 rng(7);
    const std::string alphabet =
        "abcXYZ 019.,;:()[]\"'éÉ– ﬁａ";
    for (int trial = 0; trial < 500; ++trial) {
        std::string raw;
        const std::size_t len = rng() % 60;
        for (std::size_t i = 0; i < len; ++i) raw += alphabet[rng() % alphabet.size()];
        const std::string once = normalize_reference(raw);
        CHECK(normalize_reference(once) == once);
        CHECK(normalize_reference(raw) == once);  // equal raws, equal normals
    }
}

TEST_CASE("normalize_reference is total on arbitrary bytes") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::string raw;
        const std::size_t len = rng() % 40;
        for (std::size_t i = 0; i < len; ++i) {
            raw += static_cast<char>(rng() % 256);
        }
        const std::string once = normalize_reference(raw);
        CHECK(normalize_reference(once) == once);
    }
}
