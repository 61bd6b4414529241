#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <string_view>

#include "bridgetrace/hexutil.hpp"

namespace bridgetrace {

// Self-contained keccak-256 (original Keccak padding 0x01, not NIST SHA-3).
// Selector and event-topic computation is load-bearing for the whole codec,
// so this stays dependency-free and carries its own test vectors.
namespace keccak_detail {

constexpr std::array<std::uint64_t, 24> round_constants = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL, 0x8000000080008000ULL,
    0x000000000000808bULL, 0x0000000080000001ULL, 0x8000000080008081ULL, 0x8000000000008009ULL,
    0x000000000000008aULL, 0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL, 0x8000000000008003ULL,
    0x8000000000008002ULL, 0x8000000000000080ULL, 0x000000000000800aULL, 0x800000008000000aULL,
    0x8000000080008081ULL, 0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL};

constexpr std::array<unsigned, 24> rotations = {1,  3,  6,  10, 15, 21, 28, 36, 45, 55, 2,  14,
                                                27, 41, 56, 8,  25, 43, 62, 18, 39, 61, 20, 44};

constexpr std::array<unsigned, 24> pi_lanes = {10, 7,  11, 17, 18, 3, 5,  16, 8,  21, 24, 4,
                                               15, 23, 19, 13, 12, 2, 20, 14, 22, 9,  6,  1};

inline std::uint64_t rotl(std::uint64_t x, unsigned n) { return (x << n) | (x >> (64 - n)); }

inline void permute(std::uint64_t s[25]) {
    for (int round = 0; round < 24; ++round) {
        std::uint64_t c[5];
        for (int i = 0; i < 5; ++i) c[i] = s[i] ^ s[i + 5] ^ s[i + 10] ^ s[i + 15] ^ s[i + 20];
        for (int i = 0; i < 5; ++i) {
            std::uint64_t d = c[(i + 4) % 5] ^ rotl(c[(i + 1) % 5], 1);
            for (int j = 0; j < 25; j += 5) s[j + i] ^= d;
        }
        std::uint64_t t = s[1];
        for (int i = 0; i < 24; ++i) {
            unsigned j = pi_lanes[i];
            std::uint64_t tmp = s[j];
            s[j] = rotl(t, rotations[i]);
            t = tmp;
        }
        for (int j = 0; j < 25; j += 5) {
            std::uint64_t row[5];
            for (int i = 0; i < 5; ++i) row[i] = s[j + i];
            for (int i = 0; i < 5; ++i) s[j + i] = row[i] ^ (~row[(i + 1) % 5] & row[(i + 2) % 5]);
        }
        s[0] ^= round_constants[round];
    }
}

} // namespace keccak_detail

inline Hash32 keccak256(const std::uint8_t* data, std::size_t len) {
    constexpr std::size_t rate = 136; // 1088-bit rate for 256-bit output
    std::uint64_t state[25] = {};
    std::uint8_t block[rate];

    while (len >= rate) {
        for (std::size_t i = 0; i < rate / 8; ++i) {
            std::uint64_t lane;
            std::memcpy(&lane, data + i * 8, 8); // little-endian hosts only
            state[i] ^= lane;
        }
        keccak_detail::permute(state);
        data += rate;
        len -= rate;
    }

    std::memset(block, 0, rate);
    if (len) std::memcpy(block, data, len);
    block[len] ^= 0x01;
    block[rate - 1] ^= 0x80;
    for (std::size_t i = 0; i < rate / 8; ++i) {
        std::uint64_t lane;
        std::memcpy(&lane, block + i * 8, 8);
        state[i] ^= lane;
    }
    keccak_detail::permute(state);

    Hash32 out;
    std::memcpy(out.bytes.data(), state, 32);
    return out;
}

inline Hash32 keccak256(const Bytes& b) { return keccak256(b.data(), b.size()); }

inline Hash32 keccak256(std::string_view s) {
    return keccak256(reinterpret_cast<const std::uint8_t*>(s.data()), s.size());
}

} // namespace bridgetrace
