#pragma once

#include <json.hpp>

#include <string>

#include "bridgetrace/chain.hpp"

// JSONL wire format for the fixture store. One object per line, insertion
// order preserved so identical records serialize to identical bytes.
// Hex fields are 0x-prefixed lowercase; amounts are decimal strings.

namespace bridgetrace::recordio {

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const Transaction& tx) {
    ordered_json j;
    j["hash"] = tx.hash.to_string();
    j["block"] = tx.block_number;
    j["tx_index"] = tx.tx_index;
    j["timestamp"] = tx.timestamp;
    j["from"] = tx.from.to_string();
    if (tx.to)
        j["to"] = tx.to->to_string();
    else
        j["to"] = nullptr;
    j["value"] = bignum::to_dec(tx.value.raw);
    j["input"] = hexutil::encode(tx.input);
    j["status"] = tx.status == TxStatus::Success ? 1 : 0;
    if (!tx.traced) j["traced"] = false;
    return j;
}

inline Transaction tx_from_json(const ordered_json& j) {
    Transaction tx;
    tx.hash = Hash32::parse(j.at("hash").get<std::string>());
    tx.block_number = j.at("block").get<std::uint64_t>();
    tx.tx_index = j.at("tx_index").get<std::uint32_t>();
    tx.timestamp = j.at("timestamp").get<std::uint64_t>();
    tx.from = Address::parse(j.at("from").get<std::string>());
    if (!j.at("to").is_null()) tx.to = Address::parse(j.at("to").get<std::string>());
    tx.value = TokenAmount(bignum::parse_dec(j.at("value").get<std::string>()), 18);
    tx.input = hexutil::parse(j.at("input").get<std::string>());
    tx.status = j.at("status").get<int>() ? TxStatus::Success : TxStatus::Failure;
    tx.traced = j.value("traced", true);
    return tx;
}

inline ordered_json to_json(const TraceCall& c) {
    ordered_json j;
    j["tx_hash"] = c.tx_hash.to_string();
    j["index"] = c.index;
    j["kind"] = call_kind_name(c.kind);
    j["caller"] = c.caller.to_string();
    j["callee"] = c.callee.to_string();
    j["value"] = bignum::to_dec(c.value.raw);
    j["input"] = hexutil::encode(c.input);
    return j;
}

inline TraceCall trace_from_json(const ordered_json& j) {
    TraceCall c;
    c.tx_hash = Hash32::parse(j.at("tx_hash").get<std::string>());
    c.index = j.at("index").get<std::uint32_t>();
    c.kind = call_kind_from_name(j.at("kind").get<std::string>());
    c.caller = Address::parse(j.at("caller").get<std::string>());
    c.callee = Address::parse(j.at("callee").get<std::string>());
    c.value = TokenAmount(bignum::parse_dec(j.at("value").get<std::string>()), 18);
    c.input = hexutil::parse(j.at("input").get<std::string>());
    return c;
}

inline ordered_json to_json(const LogEntry& l) {
    ordered_json j;
    j["tx_hash"] = l.tx_hash.to_string();
    j["log_index"] = l.log_index;
    j["emitter"] = l.emitter.to_string();
    auto topics = ordered_json::array();
    for (const auto& t : l.topics) topics.push_back(t.to_string());
    j["topics"] = std::move(topics);
    j["data"] = hexutil::encode(l.data);
    return j;
}

inline LogEntry log_from_json(const ordered_json& j) {
    LogEntry l;
    l.tx_hash = Hash32::parse(j.at("tx_hash").get<std::string>());
    l.log_index = j.at("log_index").get<std::uint32_t>();
    l.emitter = Address::parse(j.at("emitter").get<std::string>());
    for (const auto& t : j.at("topics")) l.topics.push_back(Hash32::parse(t.get<std::string>()));
    l.data = hexutil::parse(j.at("data").get<std::string>());
    return l;
}

inline ordered_json to_json(const BlockHeader& h) {
    ordered_json j;
    j["number"] = h.number;
    j["timestamp"] = h.timestamp;
    return j;
}

inline BlockHeader header_from_json(const ordered_json& j) {
    BlockHeader h;
    h.number = j.at("number").get<std::uint64_t>();
    h.timestamp = j.at("timestamp").get<std::uint64_t>();
    return h;
}

inline std::string to_line(const ChainRecord& rec) {
    return std::visit([](const auto& r) { return to_json(r).dump(); }, rec);
}

} // namespace bridgetrace::recordio
