#pragma once

// Exact scalar arithmetic used for objective values. Machine power is stored
// in hundredths of a KW, so utilisation and on-time energies are plain int64
// counts of centi-KWh. The weighted objective mixes hours with centi-KWh
// under a rational weight, hence the small exact fraction type below.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fabsched {

using CentiKwh = std::int64_t; // energy in 1/100 KWh

struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1; // > 0 always

    static Rat of(std::int64_t n, std::int64_t d = 1);

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;

    friend bool operator==(const Rat& a, const Rat& b);
    friend bool operator<(const Rat& a, const Rat& b);
    friend bool operator<=(const Rat& a, const Rat& b) { return a < b || a == b; }
};

// Parses a nonnegative decimal such as "0.5", "1", ".25" or "1e-8" into an
// exact fraction. Throws std::invalid_argument on malformed input.
Rat parse_decimal(const std::string& text);

// Formats centi-KWh as a fixed three-decimal KWh string ("9.450").
std::string kwh_str(CentiKwh centi);

} // namespace fabsched
