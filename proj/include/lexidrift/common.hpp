#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lexidrift {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Polarity : uint8_t { Positive = 0, Negative = 1 };

inline const char* to_string(Polarity p) {
    return p == Polarity::Positive ? "POS" : "NEG";
}

inline Polarity polarity_from_string(std::string_view s) {
    if (s == "POS" || s == "POSITIVE") return Polarity::Positive;
    if (s == "NEG" || s == "NEGATIVE") return Polarity::Negative;
    throw Error("unknown polarity label '" + std::string(s) + "' (expected POS or NEG)");
}

// Identifies one (language, domain) pair, e.g. ("spa", "bible").
struct LangDomainTag {
    std::string language;  // ISO-639-3 style: 2-3 lowercase letters + optional suffix
    std::string domain;

    LangDomainTag() : language("und"), domain("unspecified") {}
    LangDomainTag(std::string lang, std::string dom);

    std::string str() const { return language + ":" + domain; }
    bool operator==(const LangDomainTag&) const = default;
};

// --- small string / number helpers used by the loaders -------------------

std::vector<std::string> split_whitespace(std::string_view text);
std::vector<std::string> split_char(std::string_view text, char sep);

// Strict parsers: the whole token must be consumed.
double parse_double(std::string_view token, const std::string& context);
int64_t parse_int(std::string_view token, const std::string& context);

// Locale-independent "%.<digits>g" formatting for deterministic output files.
std::string fmt_g(double value, int significant_digits);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace lexidrift
