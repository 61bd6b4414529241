#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>
#include <vector>

#include "bridgetrace/errors.hpp"

namespace bridgetrace {

using Bytes = std::vector<std::uint8_t>;

namespace hexutil {

inline int nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

inline Bytes parse(std::string_view s) {
    if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) s.remove_prefix(2);
    if (s.size() % 2 != 0) throw ValidationError("hex string has odd length: " + std::string(s));
    Bytes out(s.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        int hi = nibble(s[2 * i]);
        int lo = nibble(s[2 * i + 1]);
        if (hi < 0 || lo < 0) throw ValidationError("invalid hex digit in: " + std::string(s));
        out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
    }
    return out;
}

inline std::string encode(const std::uint8_t* data, std::size_t n, bool prefix = true) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(2 * n + 2);
    if (prefix) s += "0x";
    for (std::size_t i = 0; i < n; ++i) {
        s += digits[data[i] >> 4];
        s += digits[data[i] & 0xf];
    }
    return s;
}

inline std::string encode(const Bytes& b, bool prefix = true) {
    return encode(b.data(), b.size(), prefix);
}

} // namespace hexutil

// 20-byte account/contract address. Parsed case-insensitively, rendered
// lowercase with 0x prefix. Comparison is byte-wise.
struct Address {
    std::array<std::uint8_t, 20> bytes{};

    static Address parse(std::string_view s) {
        Bytes raw = hexutil::parse(s);
        if (raw.size() != 20)
            throw ValidationError("address must be 20 bytes, got " + std::to_string(raw.size()) +
                                  ": " + std::string(s));
        Address a;
        std::memcpy(a.bytes.data(), raw.data(), 20);
        return a;
    }

    static Address from_bytes(const std::uint8_t* data, std::size_t n) {
        if (n != 20) throw ValidationError("address must be 20 bytes, got " + std::to_string(n));
        Address a;
        std::memcpy(a.bytes.data(), data, 20);
        return a;
    }

    std::string to_string() const { return hexutil::encode(bytes.data(), bytes.size()); }

    bool is_zero() const {
        for (auto b : bytes)
            if (b) return false;
        return true;
    }

    auto operator<=>(const Address&) const = default;
};

// 32-byte identifier (transaction hash, topic word).
struct Hash32 {
    std::array<std::uint8_t, 32> bytes{};

    static Hash32 parse(std::string_view s) {
        Bytes raw = hexutil::parse(s);
        if (raw.size() != 32)
            throw ValidationError("hash must be 32 bytes, got " + std::to_string(raw.size()) +
                                  ": " + std::string(s));
        Hash32 h;
        std::memcpy(h.bytes.data(), raw.data(), 32);
        return h;
    }

    static Hash32 from_bytes(const std::uint8_t* data, std::size_t n) {
        if (n != 32) throw ValidationError("hash must be 32 bytes, got " + std::to_string(n));
        Hash32 h;
        std::memcpy(h.bytes.data(), data, 32);
        return h;
    }

    std::string to_string() const { return hexutil::encode(bytes.data(), bytes.size()); }

    auto operator<=>(const Hash32&) const = default;
};

} // namespace bridgetrace
