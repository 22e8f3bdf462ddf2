#include "fabsched/num.hpp"

#include <cctype>
#include <numeric>

namespace fabsched {

namespace {

__int128 cross(const Rat& a, const Rat& b) {
    return static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den;
}

} // namespace

Rat Rat::of(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    return Rat{n, d};
}

bool operator==(const Rat& a, const Rat& b) { return cross(a, b) == 0; }
bool operator<(const Rat& a, const Rat& b) { return cross(a, b) < 0; }

std::string Rat::str() const {
    if (den == 1) return std::to_string(num);
    // decimal denominators print exactly; anything else falls back to n/d
    std::int64_t d = den;
    int tens = 0;
    while (d % 10 == 0) { d /= 10; ++tens; }
    while (d % 5 == 0) { d /= 5; ++tens; }
    while (d % 2 == 0) { d /= 2; ++tens; }
    if (d != 1) return std::to_string(num) + "/" + std::to_string(den);
    // scale numerator to den = 10^tens
    __int128 scaled = static_cast<__int128>(num);
    __int128 pow = 1;
    for (int i = 0; i < tens; ++i) pow *= 10;
    scaled = scaled * (pow / den);
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string digits;
    if (scaled == 0) digits = "0";
    while (scaled > 0) { digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(scaled % 10))); scaled /= 10; }
    while (static_cast<int>(digits.size()) <= tens) digits.insert(digits.begin(), '0');
    digits.insert(digits.end() - tens, '.');
    while (digits.back() == '0') digits.pop_back();
    if (digits.back() == '.') digits.pop_back();
    return (neg ? "-" : "") + digits;
}

Rat parse_decimal(const std::string& text) {
    size_t i = 0;
    auto fail = [&]() { throw std::invalid_argument("bad decimal: '" + text + "'"); };
    if (text.empty()) fail();
    std::int64_t mantissa = 0;
    int frac_digits = 0;
    bool any_digit = false, seen_dot = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            if (mantissa > (INT64_MAX - 9) / 10) fail();
            mantissa = mantissa * 10 + (c - '0');
            if (seen_dot) ++frac_digits;
            any_digit = true;
        } else if (c == '.') {
            if (seen_dot) fail();
            seen_dot = true;
        } else if (c == 'e' || c == 'E') {
            break;
        } else {
            fail();
        }
    }
    if (!any_digit) fail();
    int exponent = 0;
    if (i < text.size()) { // exponent part
        ++i;
        bool neg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
        if (i >= text.size()) fail();
        for (; i < text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail();
            exponent = exponent * 10 + (text[i] - '0');
            if (exponent > 18) fail();
        }
        if (neg) exponent = -exponent;
    }
    int shift = exponent - frac_digits; // value = mantissa * 10^shift
    std::int64_t num = mantissa, den = 1;
    for (; shift > 0; --shift) {
        if (num > INT64_MAX / 10) fail();
        num *= 10;
    }
    for (; shift < 0; ++shift) {
        if (den > INT64_MAX / 10) fail();
        den *= 10;
    }
    return Rat::of(num, den);
}

std::string kwh_str(CentiKwh centi) {
    bool neg = centi < 0;
    if (neg) centi = -centi;
    std::int64_t whole = centi / 100, rest = centi % 100;
    std::string s = (neg ? "-" : "") + std::to_string(whole) + ".";
    s += static_cast<char>('0' + rest / 10);
    s += static_cast<char>('0' + rest % 10);
    s += '0'; // three decimals to match the published tables
    return s;
}

} // namespace fabsched
