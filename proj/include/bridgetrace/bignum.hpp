#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "bridgetrace/errors.hpp"
#include "bridgetrace/hexutil.hpp"

namespace bridgetrace {

// Token amounts routinely exceed 64 bits (18-decimals tokens), so raw values
// are exact unsigned 256-bit integers and all ratios are exact rationals.
// Floats appear only when rendering reports.
using U256 = boost::multiprecision::uint256_t;
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

namespace bignum {

inline U256 parse_dec(std::string_view s) {
    if (s.empty()) throw ValidationError("empty decimal integer");
    U256 v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw ValidationError("invalid decimal digit in: " + std::string(s));
        v = v * 10 + (c - '0');
    }
    return v;
}

inline std::string to_dec(const U256& v) { return v.str(); }

inline U256 from_be_bytes(const std::uint8_t* data, std::size_t n) {
    U256 v = 0;
    for (std::size_t i = 0; i < n; ++i) v = (v << 8) | data[i];
    return v;
}

// Big-endian, left-padded to `width` bytes.
inline Bytes to_be_bytes(const U256& v, std::size_t width = 32) {
    Bytes out(width, 0);
    U256 x = v;
    for (std::size_t i = 0; i < width && x != 0; ++i) {
        out[width - 1 - i] = static_cast<std::uint8_t>(x & 0xff);
        x >>= 8;
    }
    if (x != 0) throw ValidationError("integer does not fit in " + std::to_string(width) + " bytes");
    return out;
}

inline U256 pow10(unsigned n) {
    U256 v = 1;
    for (unsigned i = 0; i < n; ++i) v *= 10;
    return v;
}

// Rounds an exact rational in [0,1] to a percentage with two decimals,
// round-half-up. Used for report rendering only.
inline std::string percent_2dp(const BigRat& r) {
    BigInt num = boost::multiprecision::numerator(r) * 10000 * 2;
    BigInt den = boost::multiprecision::denominator(r);
    BigInt scaled = (num / den + 1) / 2; // half-up in units of 0.01%
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string digits = scaled.str();
    while (digits.size() < 3) digits.insert(digits.begin(), '0');
    std::string s = digits.substr(0, digits.size() - 2) + "." + digits.substr(digits.size() - 2);
    if (neg) s.insert(s.begin(), '-');
    return s + "%";
}

// Exact rational rendered as a plain decimal with up to `max_frac` fractional
// digits (trailing zeros trimmed), truncating beyond that.
inline std::string rational_to_decimal(const BigRat& r, unsigned max_frac = 18) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    bool neg = num < 0;
    if (neg) num = -num;
    BigInt ip = num / den;
    BigInt rem = num % den;
    std::string s = (neg ? "-" : "") + ip.str();
    if (rem == 0) return s;
    std::string frac;
    for (unsigned i = 0; i < max_frac && rem != 0; ++i) {
        rem *= 10;
        frac += (rem / den).str();
        rem %= den;
    }
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) s += "." + frac;
    return s;
}

} // namespace bignum
} // namespace bridgetrace
