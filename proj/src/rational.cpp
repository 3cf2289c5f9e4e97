#include "rgames/rational.hpp"

#include <sstream>
#include <stdexcept>

namespace rgames {

namespace {

std::string_view trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool is_integer_token(std::string_view s) {
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

}  // namespace

std::optional<Rational> try_parse_rational(std::string_view text) {
    text = trim(text);
    if (text.empty()) return std::nullopt;
    size_t slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_integer_token(text)) return std::nullopt;
        return Rational(Integer(std::string(text)));
    }
    std::string_view num = trim(text.substr(0, slash));
    std::string_view den = trim(text.substr(slash + 1));
    if (!is_integer_token(num) || !is_integer_token(den)) return std::nullopt;
    Integer d{std::string(den)};
    if (d == 0) return std::nullopt;
    return Rational(Integer(std::string(num)), d);
}

Rational parse_rational(std::string_view text) {
    auto r = try_parse_rational(text);
    if (!r) throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    return *r;
}

std::string to_string(const Rational& r) {
    std::string s = numerator(r).convert_to<std::string>();
    if (denominator(r) != 1) {
        s += '/';
        s += denominator(r).convert_to<std::string>();
    }
    return s;
}

std::string to_string(const std::vector<Rational>& values) {
    std::string out;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ", ";
        out += to_string(values[i]);
    }
    return out;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::vector<Rational> parse_rational_list(std::string_view text) {
    std::vector<Rational> out;
    std::string token;
    std::istringstream in{std::string(text)};
    std::string chunk;
    while (std::getline(in, chunk, ',')) {
        std::istringstream parts(chunk);
        std::string word;
        while (parts >> word) out.push_back(parse_rational(word));
    }
    return out;
}

}  // namespace rgames
