#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bridgetrace/bignum.hpp"
#include "bridgetrace/hexutil.hpp"

namespace bridgetrace {

// A chain as a bridge sees it: a human name plus the bridge-internal numeric
// code used in deposit events. Numeric codes differ across bridges.
struct ChainId {
    std::string name;
    std::uint64_t numeric_id = 0;

    bool operator==(const ChainId& o) const { return name == o.name; }
    bool operator!=(const ChainId& o) const { return !(*this == o); }
};

// Exact raw integer plus the token's decimal count. The decimal value is
// raw / 10^decimals, always handled as an exact rational.
struct TokenAmount {
    U256 raw = 0;
    unsigned decimals = 18;

    TokenAmount() = default;
    TokenAmount(U256 r, unsigned d) : raw(std::move(r)), decimals(d) {
        if (d > 77) throw ValidationError("token decimals out of range: " + std::to_string(d));
    }

    BigRat as_rational() const { return BigRat(BigInt(raw), BigInt(bignum::pow10(decimals))); }

    std::string to_string() const { return bignum::rational_to_decimal(as_rational(), decimals); }

    bool operator==(const TokenAmount& o) const { return as_rational() == o.as_rational(); }
};

enum class TxStatus : std::uint8_t { Failure = 0, Success = 1 };

struct Transaction {
    Hash32 hash;
    std::uint64_t block_number = 0;
    std::uint32_t tx_index = 0; // position within the block
    std::uint64_t timestamp = 0;
    Address from;
    std::optional<Address> to; // absent for contract creation
    TokenAmount value{0, 18};  // native, 18 decimals
    Bytes input;
    TxStatus status = TxStatus::Success;
    bool traced = true; // false when the ingest endpoint served no call traces
};

enum class CallKind : std::uint8_t { External = 0, Call = 1, Delegate = 2, Static = 3 };

struct TraceCall {
    Hash32 tx_hash;
    std::uint32_t index = 0; // preorder position in the call tree
    CallKind kind = CallKind::Call;
    Address caller;
    Address callee;
    TokenAmount value{0, 18};
    Bytes input;
};

struct LogEntry {
    Hash32 tx_hash;
    std::uint32_t log_index = 0;
    Address emitter;
    std::vector<Hash32> topics; // 1..4 words, topics[0] = event signature hash
    Bytes data;
};

struct BlockHeader {
    std::uint64_t number = 0;
    std::uint64_t timestamp = 0;
};

using ChainRecord = std::variant<Transaction, TraceCall, LogEntry, BlockHeader>;

inline const char* call_kind_name(CallKind k) {
    switch (k) {
        case CallKind::External: return "external";
        case CallKind::Call: return "call";
        case CallKind::Delegate: return "delegate";
        case CallKind::Static: return "static";
    }
    return "call";
}

inline CallKind call_kind_from_name(const std::string& s) {
    if (s == "external") return CallKind::External;
    if (s == "call") return CallKind::Call;
    if (s == "delegate") return CallKind::Delegate;
    if (s == "static") return CallKind::Static;
    throw ValidationError("unknown call kind: " + s);
}

// Conventional sentinel for the chain's native asset in places that
// otherwise hold a token contract address.
inline Address native_asset() {
    Address a;
    a.bytes.fill(0xee);
    return a;
}

} // namespace bridgetrace
