#pragma once

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bridgetrace/bignum.hpp"
#include "bridgetrace/chain.hpp"
#include "bridgetrace/keccak.hpp"

namespace bridgetrace::abi {

class DecodeError : public ValidationError {
public:
    explicit DecodeError(const std::string& msg) : ValidationError(msg) {}
};

// Type descriptor for the standard contract ABI encoding. Supported:
// uintN/intN, bool, address, bytesN, bytes, string, fixed/dynamic arrays and
// one level of tuples. Deeper tuple nesting is rejected on parse.
struct AbiType {
    enum class Kind { Uint, Int, Bool, Address, FixedBytes, Bytes, String, Array, FixedArray, Tuple };

    Kind kind = Kind::Uint;
    unsigned bits = 256;        // Uint/Int width
    unsigned size = 0;          // FixedBytes byte count; FixedArray length
    std::vector<AbiType> elems; // Array/FixedArray element at [0]; Tuple members

    static AbiType uint_t(unsigned bits = 256) { return {Kind::Uint, bits, 0, {}}; }
    static AbiType int_t(unsigned bits = 256) { return {Kind::Int, bits, 0, {}}; }
    static AbiType bool_t() { return {Kind::Bool, 0, 0, {}}; }
    static AbiType address_t() { return {Kind::Address, 0, 0, {}}; }
    static AbiType fixed_bytes_t(unsigned n) { return {Kind::FixedBytes, 0, n, {}}; }
    static AbiType bytes_t() { return {Kind::Bytes, 0, 0, {}}; }
    static AbiType string_t() { return {Kind::String, 0, 0, {}}; }
    static AbiType array_t(AbiType elem) { return {Kind::Array, 0, 0, {std::move(elem)}}; }
    static AbiType fixed_array_t(AbiType elem, unsigned n) {
        return {Kind::FixedArray, 0, n, {std::move(elem)}};
    }
    static AbiType tuple_t(std::vector<AbiType> members) {
        return {Kind::Tuple, 0, 0, std::move(members)};
    }

    bool dynamic() const {
        switch (kind) {
            case Kind::Bytes:
            case Kind::String:
            case Kind::Array: return true;
            case Kind::FixedArray: return elems[0].dynamic();
            case Kind::Tuple:
                for (const auto& m : elems)
                    if (m.dynamic()) return true;
                return false;
            default: return false;
        }
    }

    // Size of this type's slot in a head block.
    std::size_t head_size() const {
        if (dynamic()) return 32;
        switch (kind) {
            case Kind::FixedArray: return std::size_t(size) * elems[0].head_size();
            case Kind::Tuple: {
                std::size_t s = 0;
                for (const auto& m : elems) s += m.head_size();
                return s;
            }
            default: return 32;
        }
    }

    std::string canonical() const {
        switch (kind) {
            case Kind::Uint: return "uint" + std::to_string(bits);
            case Kind::Int: return "int" + std::to_string(bits);
            case Kind::Bool: return "bool";
            case Kind::Address: return "address";
            case Kind::FixedBytes: return "bytes" + std::to_string(size);
            case Kind::Bytes: return "bytes";
            case Kind::String: return "string";
            case Kind::Array: return elems[0].canonical() + "[]";
            case Kind::FixedArray: return elems[0].canonical() + "[" + std::to_string(size) + "]";
            case Kind::Tuple: {
                std::string s = "(";
                for (std::size_t i = 0; i < elems.size(); ++i) {
                    if (i) s += ",";
                    s += elems[i].canonical();
                }
                return s + ")";
            }
        }
        return "";
    }

    // Parses a solidity type string such as "uint256[3][]". Tuple components
    // come from the JSON ABI "components" array.
    static AbiType parse(const std::string& text, const nlohmann::json* components = nullptr,
                         int tuple_depth = 0) {
        std::size_t bracket = text.find('[');
        std::string base = text.substr(0, bracket);
        AbiType t = parse_base(base, components, tuple_depth);
        while (bracket != std::string::npos) {
            std::size_t close = text.find(']', bracket);
            if (close == std::string::npos)
                throw ValidationError("unbalanced array brackets in type: " + text);
            std::string len = text.substr(bracket + 1, close - bracket - 1);
            if (len.empty()) {
                t = array_t(std::move(t));
            } else {
                unsigned n = static_cast<unsigned>(std::stoul(len));
                if (n == 0) throw ValidationError("zero-length fixed array in type: " + text);
                t = fixed_array_t(std::move(t), n);
            }
            bracket = text.find('[', close);
        }
        return t;
    }

private:
    static AbiType parse_base(const std::string& base, const nlohmann::json* components,
                              int tuple_depth) {
        auto parse_bits = [&](std::size_t prefix_len) -> unsigned {
            if (base.size() == prefix_len) return 256;
            unsigned bits = static_cast<unsigned>(std::stoul(base.substr(prefix_len)));
            if (bits == 0 || bits > 256 || bits % 8 != 0)
                throw ValidationError("invalid integer width in type: " + base);
            return bits;
        };
        if (base == "bool") return bool_t();
        if (base == "address") return address_t();
        if (base == "string") return string_t();
        if (base == "bytes") return bytes_t();
        if (base.rfind("bytes", 0) == 0) {
            unsigned n = static_cast<unsigned>(std::stoul(base.substr(5)));
            if (n == 0 || n > 32) throw ValidationError("invalid fixed bytes size: " + base);
            return fixed_bytes_t(n);
        }
        if (base.rfind("uint", 0) == 0) return uint_t(parse_bits(4));
        if (base.rfind("int", 0) == 0) return int_t(parse_bits(3));
        if (base == "tuple") {
            if (tuple_depth >= 1)
                throw ValidationError("tuple nesting deeper than one level is not supported");
            if (!components || !components->is_array())
                throw ValidationError("tuple type requires a components array");
            std::vector<AbiType> members;
            for (const auto& c : *components) {
                const nlohmann::json* sub =
                    c.contains("components") ? &c.at("components") : nullptr;
                members.push_back(parse(c.at("type").get<std::string>(), sub, tuple_depth + 1));
            }
            return tuple_t(std::move(members));
        }
        throw ValidationError("unsupported ABI type: " + base);
    }
};

// Decoded parameter value. A small closed tree rather than a variant tower.
struct AbiValue {
    enum class Kind { Uint, Int, Bool, Address, Bytes, String, List };

    Kind kind = Kind::Uint;
    U256 num = 0;     // Uint
    BigInt snum = 0;  // Int
    bool flag = false;
    Address addr;
    Bytes raw;        // Bytes / FixedBytes payloads (also opaque indexed topics)
    std::string text;
    std::vector<AbiValue> items; // arrays and tuples

    static AbiValue uint(U256 v) {
        AbiValue a;
        a.kind = Kind::Uint;
        a.num = std::move(v);
        return a;
    }
    static AbiValue integer(BigInt v) {
        AbiValue a;
        a.kind = Kind::Int;
        a.snum = std::move(v);
        return a;
    }
    static AbiValue boolean(bool v) {
        AbiValue a;
        a.kind = Kind::Bool;
        a.flag = v;
        return a;
    }
    static AbiValue address(Address v) {
        AbiValue a;
        a.kind = Kind::Address;
        a.addr = v;
        return a;
    }
    static AbiValue bytes(Bytes v) {
        AbiValue a;
        a.kind = Kind::Bytes;
        a.raw = std::move(v);
        return a;
    }
    static AbiValue string(std::string v) {
        AbiValue a;
        a.kind = Kind::String;
        a.text = std::move(v);
        return a;
    }
    static AbiValue list(std::vector<AbiValue> v) {
        AbiValue a;
        a.kind = Kind::List;
        a.items = std::move(v);
        return a;
    }

    bool operator==(const AbiValue& o) const {
        if (kind != o.kind) return false;
        switch (kind) {
            case Kind::Uint: return num == o.num;
            case Kind::Int: return snum == o.snum;
            case Kind::Bool: return flag == o.flag;
            case Kind::Address: return addr == o.addr;
            case Kind::Bytes: return raw == o.raw;
            case Kind::String: return text == o.text;
            case Kind::List: return items == o.items;
        }
        return false;
    }
};

struct AbiParam {
    std::string name;
    AbiType type;
    bool indexed = false; // events only
};

struct AbiFunction {
    std::string name;
    std::vector<AbiParam> params;

    std::string signature() const {
        AbiType tuple = AbiType::tuple_t(param_types());
        return name + tuple.canonical();
    }

    std::array<std::uint8_t, 4> selector() const {
        Hash32 h = keccak256(signature());
        return {h.bytes[0], h.bytes[1], h.bytes[2], h.bytes[3]};
    }

    std::vector<AbiType> param_types() const {
        std::vector<AbiType> ts;
        for (const auto& p : params) ts.push_back(p.type);
        return ts;
    }
};

struct AbiEvent {
    std::string name;
    std::vector<AbiParam> params;

    std::string signature() const {
        std::vector<AbiType> ts;
        for (const auto& p : params) ts.push_back(p.type);
        return name + AbiType::tuple_t(std::move(ts)).canonical();
    }

    Hash32 topic0() const { return keccak256(signature()); }

    std::size_t indexed_count() const {
        std::size_t n = 0;
        for (const auto& p : params) n += p.indexed ? 1 : 0;
        return n;
    }
};

struct DecodedCall {
    bool known = false;
    std::string function; // for unknown selectors: "unknown_0x<selector>"
    std::vector<std::pair<std::string, AbiValue>> params;
};

struct DecodedEvent {
    bool known = false;
    std::string name; // for unknown topics: topic0 hex
    Address emitter;
    std::vector<std::pair<std::string, AbiValue>> params;

    const AbiValue* find(const std::string& param) const {
        for (const auto& [n, v] : params)
            if (n == param) return &v;
        return nullptr;
    }
};

namespace detail {

inline void put_word(Bytes& out, const Bytes& word32) {
    out.insert(out.end(), word32.begin(), word32.end());
}

inline U256 read_uint_word(const Bytes& data, std::size_t off) {
    if (off + 32 > data.size()) throw DecodeError("payload too short at offset " + std::to_string(off));
    return bignum::from_be_bytes(data.data() + off, 32);
}

inline void check_type(bool ok, const std::string& what) {
    if (!ok) throw ValidationError("value does not match ABI type: " + what);
}

// Canonical encoding of one value; dynamic values get their full tail block.
inline Bytes encode_value(const AbiType& t, const AbiValue& v);

inline Bytes encode_composite(const std::vector<AbiType>& types,
                              const std::vector<AbiValue>& values) {
    if (types.size() != values.size())
        throw ValidationError("arity mismatch: expected " + std::to_string(types.size()) +
                              " values, got " + std::to_string(values.size()));
    std::size_t head_total = 0;
    for (const auto& t : types) head_total += t.head_size();
    Bytes head, tail;
    for (std::size_t i = 0; i < types.size(); ++i) {
        Bytes enc = encode_value(types[i], values[i]);
        if (types[i].dynamic()) {
            put_word(head, bignum::to_be_bytes(U256(head_total + tail.size())));
            tail.insert(tail.end(), enc.begin(), enc.end());
        } else {
            head.insert(head.end(), enc.begin(), enc.end());
        }
    }
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
}

inline Bytes encode_value(const AbiType& t, const AbiValue& v) {
    switch (t.kind) {
        case AbiType::Kind::Uint: {
            check_type(v.kind == AbiValue::Kind::Uint, t.canonical());
            if (t.bits < 256 && v.num >= (U256(1) << t.bits))
                throw ValidationError("uint" + std::to_string(t.bits) + " overflow");
            return bignum::to_be_bytes(v.num);
        }
        case AbiType::Kind::Int: {
            check_type(v.kind == AbiValue::Kind::Int, t.canonical());
            BigInt lo = -(BigInt(1) << (t.bits - 1));
            BigInt hi = (BigInt(1) << (t.bits - 1)) - 1;
            if (v.snum < lo || v.snum > hi)
                throw ValidationError("int" + std::to_string(t.bits) + " overflow");
            BigInt tw = v.snum < 0 ? v.snum + (BigInt(1) << 256) : v.snum;
            return bignum::to_be_bytes(U256(tw));
        }
        case AbiType::Kind::Bool: {
            check_type(v.kind == AbiValue::Kind::Bool, "bool");
            return bignum::to_be_bytes(U256(v.flag ? 1 : 0));
        }
        case AbiType::Kind::Address: {
            check_type(v.kind == AbiValue::Kind::Address, "address");
            Bytes w(32, 0);
            std::copy(v.addr.bytes.begin(), v.addr.bytes.end(), w.begin() + 12);
            return w;
        }
        case AbiType::Kind::FixedBytes: {
            check_type(v.kind == AbiValue::Kind::Bytes && v.raw.size() == t.size, t.canonical());
            Bytes w(32, 0);
            std::copy(v.raw.begin(), v.raw.end(), w.begin());
            return w;
        }
        case AbiType::Kind::Bytes:
        case AbiType::Kind::String: {
            Bytes payload;
            if (t.kind == AbiType::Kind::Bytes) {
                check_type(v.kind == AbiValue::Kind::Bytes, "bytes");
                payload = v.raw;
            } else {
                check_type(v.kind == AbiValue::Kind::String, "string");
                payload.assign(v.text.begin(), v.text.end());
            }
            Bytes out = bignum::to_be_bytes(U256(payload.size()));
            out.insert(out.end(), payload.begin(), payload.end());
            out.resize(32 + (payload.size() + 31) / 32 * 32, 0);
            return out;
        }
        case AbiType::Kind::Array: {
            check_type(v.kind == AbiValue::Kind::List, "array");
            Bytes out = bignum::to_be_bytes(U256(v.items.size()));
            std::vector<AbiType> ts(v.items.size(), t.elems[0]);
            Bytes body = encode_composite(ts, v.items);
            out.insert(out.end(), body.begin(), body.end());
            return out;
        }
        case AbiType::Kind::FixedArray: {
            check_type(v.kind == AbiValue::Kind::List && v.items.size() == t.size, t.canonical());
            std::vector<AbiType> ts(t.size, t.elems[0]);
            return encode_composite(ts, v.items);
        }
        case AbiType::Kind::Tuple: {
            check_type(v.kind == AbiValue::Kind::List, "tuple");
            return encode_composite(t.elems, v.items);
        }
    }
    throw InternalError("unreachable ABI kind");
}

// Strict decoder. `base` is the start of the enclosing composite block
// (dynamic offsets are relative to it); `extent` tracks the furthest byte
// consumed so callers can reject trailing garbage.
inline AbiValue decode_value(const AbiType& t, const Bytes& data, std::size_t base,
                             std::size_t off, std::size_t& extent);

inline std::vector<AbiValue> decode_composite(const std::vector<AbiType>& types, const Bytes& data,
                                              std::size_t base, std::size_t& extent) {
    std::vector<AbiValue> out;
    std::size_t off = base;
    for (const auto& t : types) {
        if (t.dynamic()) {
            U256 rel = read_uint_word(data, off);
            if (rel > data.size()) throw DecodeError("dynamic offset out of bounds");
            std::size_t target = base + static_cast<std::size_t>(rel);
            if (target >= data.size() + 1) throw DecodeError("dynamic offset out of bounds");
            extent = std::max(extent, off + 32);
            out.push_back(decode_value(t, data, target, target, extent));
            off += 32;
        } else {
            out.push_back(decode_value(t, data, base, off, extent));
            off += t.head_size();
        }
    }
    extent = std::max(extent, off);
    return out;
}

inline AbiValue decode_value(const AbiType& t, const Bytes& data, std::size_t base,
                             std::size_t off, std::size_t& extent) {
    switch (t.kind) {
        case AbiType::Kind::Uint: {
            U256 v = read_uint_word(data, off);
            extent = std::max(extent, off + 32);
            if (t.bits < 256 && v >= (U256(1) << t.bits))
                throw DecodeError("uint" + std::to_string(t.bits) + " has nonzero padding");
            return AbiValue::uint(v);
        }
        case AbiType::Kind::Int: {
            U256 v = read_uint_word(data, off);
            extent = std::max(extent, off + 32);
            BigInt s(v);
            bool neg = (v >> 255) != 0;
            if (neg) s -= (BigInt(1) << 256);
            if (t.bits < 256) {
                BigInt lo = -(BigInt(1) << (t.bits - 1));
                BigInt hi = (BigInt(1) << (t.bits - 1)) - 1;
                if (s < lo || s > hi)
                    throw DecodeError("int" + std::to_string(t.bits) + " not sign-extended");
            }
            return AbiValue::integer(s);
        }
        case AbiType::Kind::Bool: {
            U256 v = read_uint_word(data, off);
            extent = std::max(extent, off + 32);
            if (v > 1) throw DecodeError("bool word not 0 or 1");
            return AbiValue::boolean(v == 1);
        }
        case AbiType::Kind::Address: {
            U256 v = read_uint_word(data, off);
            extent = std::max(extent, off + 32);
            if ((v >> 160) != 0) throw DecodeError("address word has nonzero padding");
            return AbiValue::address(Address::from_bytes(data.data() + off + 12, 20));
        }
        case AbiType::Kind::FixedBytes: {
            if (off + 32 > data.size()) throw DecodeError("payload too short for fixed bytes");
            for (std::size_t i = t.size; i < 32; ++i)
                if (data[off + i]) throw DecodeError("fixed bytes word has nonzero padding");
            extent = std::max(extent, off + 32);
            return AbiValue::bytes(Bytes(data.begin() + off, data.begin() + off + t.size));
        }
        case AbiType::Kind::Bytes:
        case AbiType::Kind::String: {
            U256 len_word = read_uint_word(data, off);
            if (len_word > data.size()) throw DecodeError("bytes length out of bounds");
            std::size_t len = static_cast<std::size_t>(len_word);
            std::size_t padded = (len + 31) / 32 * 32;
            if (off + 32 + padded > data.size()) throw DecodeError("payload too short for bytes");
            for (std::size_t i = len; i < padded; ++i)
                if (data[off + 32 + i]) throw DecodeError("bytes padding not zero");
            extent = std::max(extent, off + 32 + padded);
            auto begin = data.begin() + off + 32;
            if (t.kind == AbiType::Kind::Bytes) return AbiValue::bytes(Bytes(begin, begin + len));
            return AbiValue::string(std::string(begin, begin + len));
        }
        case AbiType::Kind::Array: {
            U256 count_word = read_uint_word(data, off);
            if (count_word > data.size()) throw DecodeError("array length out of bounds");
            std::size_t count = static_cast<std::size_t>(count_word);
            extent = std::max(extent, off + 32);
            std::vector<AbiType> ts(count, t.elems[0]);
            return AbiValue::list(decode_composite(ts, data, off + 32, extent));
        }
        case AbiType::Kind::FixedArray: {
            std::vector<AbiType> ts(t.size, t.elems[0]);
            return AbiValue::list(decode_composite(ts, data, off, extent));
        }
        case AbiType::Kind::Tuple: {
            return AbiValue::list(decode_composite(t.elems, data, off, extent));
        }
    }
    throw InternalError("unreachable ABI kind");
}

} // namespace detail

// Registry of function and event definitions, keyed by selector / topic0.
// Events can additionally be scoped to a specific emitter address; scoped
// definitions win over global ones on decode.
class AbiSet {
public:
    void add(const AbiFunction& f) { functions_.emplace(f.selector(), f); }
    void add(const AbiEvent& e) { events_.emplace(e.topic0(), e); }
    void add_scoped(const Address& emitter, const AbiEvent& e) {
        scoped_events_.emplace(std::make_pair(emitter, e.topic0()), e);
        events_.emplace(e.topic0(), e);
    }

    // Standard JSON ABI as emitted by solidity toolchains.
    void add_json(const nlohmann::json& abi_array,
                  const std::optional<Address>& emitter = std::nullopt) {
        if (!abi_array.is_array()) throw ValidationError("ABI must be a JSON array");
        for (const auto& item : abi_array) {
            std::string type = item.value("type", "function");
            if (type == "function") {
                AbiFunction f;
                f.name = item.at("name").get<std::string>();
                for (const auto& in : item.value("inputs", nlohmann::json::array())) {
                    const nlohmann::json* comp =
                        in.contains("components") ? &in.at("components") : nullptr;
                    f.params.push_back(
                        {in.value("name", ""), AbiType::parse(in.at("type").get<std::string>(), comp),
                         false});
                }
                add(f);
            } else if (type == "event") {
                if (item.value("anonymous", false)) continue; // unsupported, skip
                AbiEvent e;
                e.name = item.at("name").get<std::string>();
                for (const auto& in : item.value("inputs", nlohmann::json::array())) {
                    const nlohmann::json* comp =
                        in.contains("components") ? &in.at("components") : nullptr;
                    e.params.push_back(
                        {in.value("name", ""), AbiType::parse(in.at("type").get<std::string>(), comp),
                         in.value("indexed", false)});
                }
                if (e.indexed_count() > 3)
                    throw ValidationError("event " + e.name + " has more than 3 indexed params");
                if (emitter)
                    add_scoped(*emitter, e);
                else
                    add(e);
            }
        }
    }

    const AbiFunction* function_by_selector(const std::array<std::uint8_t, 4>& sel) const {
        auto it = functions_.find(sel);
        return it == functions_.end() ? nullptr : &it->second;
    }

    const AbiFunction* function_by_name(const std::string& name, std::size_t arity) const {
        for (const auto& [sel, f] : functions_)
            if (f.name == name && f.params.size() == arity) return &f;
        return nullptr;
    }

    const AbiEvent* event_for(const Address& emitter, const Hash32& topic0) const {
        auto sit = scoped_events_.find(std::make_pair(emitter, topic0));
        if (sit != scoped_events_.end()) return &sit->second;
        auto it = events_.find(topic0);
        return it == events_.end() ? nullptr : &it->second;
    }

private:
    std::map<std::array<std::uint8_t, 4>, AbiFunction> functions_;
    std::map<Hash32, AbiEvent> events_;
    std::map<std::pair<Address, Hash32>, AbiEvent> scoped_events_;
};

// Calldata -> structured call. Unknown selectors are a valid class, not an
// error; they come back as an unknown-function marker.
inline DecodedCall decode_input(const Bytes& input, const AbiSet& abis) {
    if (input.size() < 4)
        throw DecodeError("calldata shorter than 4-byte selector (" +
                          std::to_string(input.size()) + " bytes)");
    std::array<std::uint8_t, 4> sel = {input[0], input[1], input[2], input[3]};
    const AbiFunction* f = abis.function_by_selector(sel);
    if (!f) {
        DecodedCall c;
        c.known = false;
        c.function = "unknown_" + hexutil::encode(sel.data(), sel.size());
        return c;
    }
    Bytes payload(input.begin() + 4, input.end());
    std::size_t extent = 0;
    std::vector<AbiValue> values = detail::decode_composite(f->param_types(), payload, 0, extent);
    if (extent != payload.size())
        throw DecodeError("calldata for " + f->signature() + " has " +
                          std::to_string(payload.size() - extent) + " trailing bytes");
    DecodedCall c;
    c.known = true;
    c.function = f->name;
    for (std::size_t i = 0; i < values.size(); ++i)
        c.params.emplace_back(f->params[i].name, std::move(values[i]));
    return c;
}

// Structured call -> canonical calldata; inverse of decode_input.
inline Bytes encode_input(const DecodedCall& call, const AbiSet& abis) {
    const AbiFunction* f = abis.function_by_name(call.function, call.params.size());
    if (!f)
        throw ValidationError("no ABI function named " + call.function + " with " +
                              std::to_string(call.params.size()) + " params");
    std::vector<AbiValue> values;
    for (const auto& [name, v] : call.params) values.push_back(v);
    auto sel = f->selector();
    Bytes out(sel.begin(), sel.end());
    try {
        Bytes body = detail::encode_composite(f->param_types(), values);
        out.insert(out.end(), body.begin(), body.end());
    } catch (const ValidationError& e) {
        throw ValidationError("encoding " + f->signature() + ": " + std::string(e.what()));
    }
    return out;
}

// Log -> structured event. Indexed params decode from topics, the rest from
// the data block, in ABI order. Unmatched topics come back opaque. Indexed
// dynamic values are only their hash on the wire; they decode as 32 raw bytes.
inline DecodedEvent decode_log(const LogEntry& log, const AbiSet& abis) {
    if (log.topics.empty()) throw DecodeError("log has no topic0");
    DecodedEvent ev;
    ev.emitter = log.emitter;
    const AbiEvent* def = abis.event_for(log.emitter, log.topics[0]);
    if (!def) {
        ev.known = false;
        ev.name = log.topics[0].to_string();
        return ev;
    }
    if (log.topics.size() - 1 != def->indexed_count())
        throw DecodeError("event " + def->name + " expects " +
                          std::to_string(def->indexed_count()) + " indexed topics, log has " +
                          std::to_string(log.topics.size() - 1));
    std::vector<AbiType> data_types;
    for (const auto& p : def->params)
        if (!p.indexed) data_types.push_back(p.type);
    std::size_t extent = 0;
    std::vector<AbiValue> data_values;
    try {
        data_values = detail::decode_composite(data_types, log.data, 0, extent);
    } catch (const DecodeError& e) {
        throw DecodeError("event " + def->name + " data: " + std::string(e.what()));
    }
    if (extent != log.data.size())
        throw DecodeError("event " + def->name + " data has trailing bytes");

    ev.known = true;
    ev.name = def->name;
    std::size_t topic_i = 1, data_i = 0;
    for (const auto& p : def->params) {
        if (p.indexed) {
            const Hash32& word = log.topics[topic_i++];
            if (p.type.dynamic()) {
                ev.params.emplace_back(p.name,
                                       AbiValue::bytes(Bytes(word.bytes.begin(), word.bytes.end())));
            } else {
                Bytes w(word.bytes.begin(), word.bytes.end());
                std::size_t ext = 0;
                ev.params.emplace_back(p.name, detail::decode_value(p.type, w, 0, 0, ext));
            }
        } else {
            ev.params.emplace_back(p.name, std::move(data_values[data_i++]));
        }
    }
    return ev;
}

// Event -> (topics, data); inverse of decode_log for non-dynamic indexed params.
inline LogEntry encode_log(const AbiEvent& def, const Address& emitter,
                           const std::vector<AbiValue>& values) {
    if (values.size() != def.params.size())
        throw ValidationError("event " + def.name + " arity mismatch");
    LogEntry log;
    log.emitter = emitter;
    log.topics.push_back(def.topic0());
    std::vector<AbiType> data_types;
    std::vector<AbiValue> data_values;
    for (std::size_t i = 0; i < def.params.size(); ++i) {
        const auto& p = def.params[i];
        if (p.indexed) {
            Bytes enc = p.type.dynamic() ? Bytes(keccak256(detail::encode_value(p.type, values[i]))
                                                     .bytes.begin(),
                                                 keccak256(detail::encode_value(p.type, values[i]))
                                                     .bytes.end())
                                         : detail::encode_value(p.type, values[i]);
            log.topics.push_back(Hash32::from_bytes(enc.data(), 32));
        } else {
            data_types.push_back(p.type);
            data_values.push_back(values[i]);
        }
    }
    log.data = detail::encode_composite(data_types, data_values);
    return log;
}

// Builtin fungible-token transfer event; token movements ride on it.
inline const AbiEvent& erc20_transfer_event() {
    static const AbiEvent ev = {
        "Transfer",
        {{"from", AbiType::address_t(), true},
         {"to", AbiType::address_t(), true},
         {"value", AbiType::uint_t(256), false}}};
    return ev;
}

inline const Hash32& erc20_transfer_topic() {
    static const Hash32 t = erc20_transfer_event().topic0();
    return t;
}

} // namespace bridgetrace::abi
