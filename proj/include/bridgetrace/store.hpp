#pragma once

#include <algorithm>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "bridgetrace/chain.hpp"
#include "bridgetrace/keccak.hpp"
#include "bridgetrace/recordio.hpp"

namespace bridgetrace {

// Append-only fixture store: a directory of JSON-Lines files, one file per
// (chain, record kind). The in-memory index is rebuilt on open. Single
// writer, any number of reader threads; records are immutable once appended.
class FixtureStore {
public:
    explicit FixtureStore(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_);
        for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
            if (!entry.is_directory()) continue;
            load_chain(entry.path().filename().string());
        }
    }

    const std::filesystem::path& dir() const { return dir_; }

    // Appends fresh records, skipping duplicates by key. The whole batch is
    // validated first; a malformed record rejects the batch, naming its index.
    std::size_t append(const ChainId& chain, const std::vector<ChainRecord>& records) {
        std::unique_lock lock(mu_);
        ChainData& cd = chains_[chain.name];

        // Pass 1: validate against current state plus earlier batch entries.
        struct Staged {
            const ChainRecord* rec;
            bool fresh;
        };
        std::vector<Staged> staged;
        std::set<Hash32> batch_tx;
        std::set<std::pair<Hash32, std::uint32_t>> batch_trace, batch_log;
        std::set<Hash32> batch_external; // txs gaining an external frame in this batch
        std::map<std::uint64_t, std::uint64_t> batch_headers;
        for (std::size_t i = 0; i < records.size(); ++i) {
            const ChainRecord& rec = records[i];
            bool fresh = true;
            try {
                if (const auto* tx = std::get_if<Transaction>(&rec)) {
                    fresh = !cd.tx_by_hash.count(tx->hash) && !batch_tx.count(tx->hash);
                    if (fresh) batch_tx.insert(tx->hash);
                } else if (const auto* tc = std::get_if<TraceCall>(&rec)) {
                    auto key = std::make_pair(tc->tx_hash, tc->index);
                    fresh = !cd.trace_keys.count(key) && !batch_trace.count(key);
                    if (fresh && tc->kind == CallKind::External) {
                        if (tc->index != 0)
                            throw ValidationError("external frame must have index 0");
                        if (cd.external_seen.count(tc->tx_hash) || batch_external.count(tc->tx_hash))
                            throw ValidationError("second external frame for tx " +
                                                  tc->tx_hash.to_string());
                        batch_external.insert(tc->tx_hash);
                    }
                    if (fresh) batch_trace.insert(key);
                } else if (const auto* lg = std::get_if<LogEntry>(&rec)) {
                    if (lg->topics.size() > 4)
                        throw ValidationError("log has more than 4 topics");
                    auto key = std::make_pair(lg->tx_hash, lg->log_index);
                    fresh = !cd.log_keys.count(key) && !batch_log.count(key);
                    if (fresh) batch_log.insert(key);
                } else if (const auto* hd = std::get_if<BlockHeader>(&rec)) {
                    auto it = cd.headers.find(hd->number);
                    auto bit = batch_headers.find(hd->number);
                    if (it != cd.headers.end() || bit != batch_headers.end()) {
                        std::uint64_t prev_ts =
                            it != cd.headers.end() ? it->second : bit->second;
                        if (prev_ts != hd->timestamp)
                            throw ValidationError("conflicting timestamp for block " +
                                                  std::to_string(hd->number));
                        fresh = false;
                    } else {
                        check_header_neighbors(cd, batch_headers, *hd);
                        batch_headers.emplace(hd->number, hd->timestamp);
                    }
                }
            } catch (const ValidationError& e) {
                throw ValidationError("record at index " + std::to_string(i) + ": " + e.what());
            }
            staged.push_back({&rec, fresh});
        }

        // Pass 2: commit fresh records to memory and disk.
        std::size_t appended = 0;
        for (const auto& s : staged) {
            if (!s.fresh) continue;
            commit(chain.name, cd, *s.rec);
            ++appended;
        }
        flush_streams(chain.name);
        return appended;
    }

    // Smallest block number whose timestamp is >= t. Headers must cover t.
    std::uint64_t block_at_or_after(const ChainId& chain, std::uint64_t t) const {
        std::shared_lock lock(mu_);
        const ChainData& cd = chain_ref(chain.name);
        if (cd.headers_sorted.empty())
            throw DataGapError("no headers stored for chain " + chain.name);
        std::uint64_t lo = cd.headers_sorted.front().timestamp;
        std::uint64_t hi = cd.headers_sorted.back().timestamp;
        if (t < lo || t > hi)
            throw DataGapError("timestamp " + std::to_string(t) + " outside stored header range [" +
                               std::to_string(lo) + ", " + std::to_string(hi) + "] on chain " +
                               chain.name);
        auto it = std::partition_point(cd.headers_sorted.begin(), cd.headers_sorted.end(),
                                       [&](const BlockHeader& h) { return h.timestamp < t; });
        return it->number;
    }

    // Covered timestamp interval [first, last] of stored headers.
    std::pair<std::uint64_t, std::uint64_t> header_time_range(const ChainId& chain) const {
        std::shared_lock lock(mu_);
        const ChainData& cd = chain_ref(chain.name);
        if (cd.headers_sorted.empty())
            throw DataGapError("no headers stored for chain " + chain.name);
        return {cd.headers_sorted.front().timestamp, cd.headers_sorted.back().timestamp};
    }

    // All transactions in [from_block, to_block] where addr appears as
    // sender, recipient, trace caller/callee, or token-transfer recipient.
    // Ordered by (block_number, tx_index).
    std::vector<Transaction> txs_touching(const ChainId& chain, const Address& addr,
                                          std::uint64_t from_block, std::uint64_t to_block) const {
        std::shared_lock lock(mu_);
        auto cit = chains_.find(chain.name);
        if (cit == chains_.end()) return {};
        const ChainData& cd = cit->second;
        auto ait = cd.addr_txs.find(addr);
        if (ait == cd.addr_txs.end()) return {};
        std::vector<Transaction> out;
        for (const Hash32& h : ait->second) {
            auto tit = cd.tx_by_hash.find(h);
            if (tit == cd.tx_by_hash.end()) continue;
            const Transaction& tx = cd.txs[tit->second];
            if (tx.block_number >= from_block && tx.block_number <= to_block) out.push_back(tx);
        }
        std::sort(out.begin(), out.end(), [](const Transaction& a, const Transaction& b) {
            return std::make_pair(a.block_number, a.tx_index) <
                   std::make_pair(b.block_number, b.tx_index);
        });
        return out;
    }

    std::vector<Transaction> txs_in_block_range(const ChainId& chain, std::uint64_t from_block,
                                                std::uint64_t to_block) const {
        std::shared_lock lock(mu_);
        auto cit = chains_.find(chain.name);
        if (cit == chains_.end()) return {};
        const ChainData& cd = cit->second;
        std::vector<Transaction> out;
        auto it = cd.block_txs.lower_bound(std::make_tuple(from_block, 0u, Hash32{}));
        for (; it != cd.block_txs.end() && std::get<0>(*it) <= to_block; ++it) {
            out.push_back(cd.txs[cd.tx_by_hash.at(std::get<2>(*it))]);
        }
        return out;
    }

    std::optional<Transaction> tx_by_hash(const ChainId& chain, const Hash32& h) const {
        std::shared_lock lock(mu_);
        auto cit = chains_.find(chain.name);
        if (cit == chains_.end()) return std::nullopt;
        auto tit = cit->second.tx_by_hash.find(h);
        if (tit == cit->second.tx_by_hash.end()) return std::nullopt;
        return cit->second.txs[tit->second];
    }

    std::vector<TraceCall> traces_of(const ChainId& chain, const Hash32& tx_hash) const {
        std::shared_lock lock(mu_);
        auto cit = chains_.find(chain.name);
        if (cit == chains_.end()) return {};
        const ChainData& cd = cit->second;
        std::vector<TraceCall> out;
        auto lo = cd.trace_keys.lower_bound(std::make_pair(tx_hash, 0u));
        for (auto it = lo; it != cd.trace_keys.end() && it->first == tx_hash; ++it)
            out.push_back(cd.traces[cd.trace_index.at(*it)]);
        return out;
    }

    std::vector<LogEntry> logs_of(const ChainId& chain, const Hash32& tx_hash) const {
        std::shared_lock lock(mu_);
        auto cit = chains_.find(chain.name);
        if (cit == chains_.end()) return {};
        const ChainData& cd = cit->second;
        std::vector<LogEntry> out;
        auto lo = cd.log_keys.lower_bound(std::make_pair(tx_hash, 0u));
        for (auto it = lo; it != cd.log_keys.end() && it->first == tx_hash; ++it)
            out.push_back(cd.logs[cd.log_index.at(*it)]);
        return out;
    }

    std::vector<Transaction> all_txs(const ChainId& chain) const {
        std::shared_lock lock(mu_);
        auto cit = chains_.find(chain.name);
        if (cit == chains_.end()) return {};
        std::vector<Transaction> out(cit->second.txs.begin(), cit->second.txs.end());
        std::sort(out.begin(), out.end(), [](const Transaction& a, const Transaction& b) {
            return std::make_pair(a.block_number, a.tx_index) <
                   std::make_pair(b.block_number, b.tx_index);
        });
        return out;
    }

    std::size_t count_txs(const ChainId& chain) const { return count_of(chain, RecordKind::Tx); }
    std::size_t count_traces(const ChainId& chain) const {
        return count_of(chain, RecordKind::Trace);
    }
    std::size_t count_logs(const ChainId& chain) const { return count_of(chain, RecordKind::Log); }
    std::size_t count_headers(const ChainId& chain) const {
        return count_of(chain, RecordKind::Header);
    }

    std::vector<std::string> chain_names() const {
        std::shared_lock lock(mu_);
        std::vector<std::string> out;
        for (const auto& [name, _] : chains_) out.push_back(name);
        return out;
    }

    // Digest over every JSONL file, keyed by relative path. Used by run
    // manifests to pin inputs and compare reruns.
    Hash32 digest() const {
        std::shared_lock lock(mu_);
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::recursive_directory_iterator(dir_))
            if (entry.is_regular_file()) files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        Bytes acc;
        for (const auto& f : files) {
            std::string rel = std::filesystem::relative(f, dir_).generic_string();
            std::ifstream in(f, std::ios::binary);
            std::string content((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
            Hash32 h = keccak256(content);
            acc.insert(acc.end(), rel.begin(), rel.end());
            acc.push_back(0);
            acc.insert(acc.end(), h.bytes.begin(), h.bytes.end());
        }
        return keccak256(acc);
    }

private:
    enum class RecordKind { Tx, Trace, Log, Header };

    struct ChainData {
        std::deque<Transaction> txs;
        std::deque<TraceCall> traces;
        std::deque<LogEntry> logs;
        std::map<Hash32, std::size_t> tx_by_hash;
        std::map<std::pair<Hash32, std::uint32_t>, std::size_t> trace_index;
        std::map<std::pair<Hash32, std::uint32_t>, std::size_t> log_index;
        std::set<std::pair<Hash32, std::uint32_t>> trace_keys;
        std::set<std::pair<Hash32, std::uint32_t>> log_keys;
        std::set<Hash32> external_seen;
        std::map<std::uint64_t, std::uint64_t> headers; // number -> timestamp
        std::vector<BlockHeader> headers_sorted;
        std::map<Address, std::set<Hash32>> addr_txs;
        std::set<std::tuple<std::uint64_t, std::uint32_t, Hash32>> block_txs;
    };

    static const Hash32& transfer_topic() {
        static const Hash32 t = keccak256("Transfer(address,address,uint256)");
        return t;
    }

    const ChainData& chain_ref(const std::string& name) const {
        auto it = chains_.find(name);
        if (it == chains_.end()) throw DataGapError("no data stored for chain " + name);
        return it->second;
    }

    std::size_t count_of(const ChainId& chain, RecordKind k) const {
        std::shared_lock lock(mu_);
        auto it = chains_.find(chain.name);
        if (it == chains_.end()) return 0;
        switch (k) {
            case RecordKind::Tx: return it->second.txs.size();
            case RecordKind::Trace: return it->second.traces.size();
            case RecordKind::Log: return it->second.logs.size();
            case RecordKind::Header: return it->second.headers.size();
        }
        return 0;
    }

    void check_header_neighbors(const ChainData& cd,
                                const std::map<std::uint64_t, std::uint64_t>& batch,
                                const BlockHeader& h) const {
        auto check = [&](std::uint64_t num, std::uint64_t ts) {
            if (num < h.number && ts > h.timestamp)
                throw ValidationError("non-monotone header timestamps at block " +
                                      std::to_string(h.number));
            if (num > h.number && ts < h.timestamp)
                throw ValidationError("non-monotone header timestamps at block " +
                                      std::to_string(h.number));
        };
        auto it = cd.headers.lower_bound(h.number);
        if (it != cd.headers.end()) check(it->first, it->second);
        if (it != cd.headers.begin()) {
            auto prev = std::prev(it);
            check(prev->first, prev->second);
        }
        auto bit = batch.lower_bound(h.number);
        if (bit != batch.end()) check(bit->first, bit->second);
        if (bit != batch.begin()) {
            auto prev = std::prev(bit);
            check(prev->first, prev->second);
        }
    }

    void index_tx_addresses(ChainData& cd, const Transaction& tx) {
        cd.addr_txs[tx.from].insert(tx.hash);
        if (tx.to) cd.addr_txs[*tx.to].insert(tx.hash);
    }

    void commit(const std::string& chain, ChainData& cd, const ChainRecord& rec) {
        if (const auto* tx = std::get_if<Transaction>(&rec)) {
            cd.txs.push_back(*tx);
            cd.tx_by_hash.emplace(tx->hash, cd.txs.size() - 1);
            cd.block_txs.insert(std::make_tuple(tx->block_number, tx->tx_index, tx->hash));
            index_tx_addresses(cd, *tx);
            write_line(chain, "tx.jsonl", recordio::to_json(*tx).dump());
        } else if (const auto* tc = std::get_if<TraceCall>(&rec)) {
            cd.traces.push_back(*tc);
            auto key = std::make_pair(tc->tx_hash, tc->index);
            cd.trace_index.emplace(key, cd.traces.size() - 1);
            cd.trace_keys.insert(key);
            if (tc->kind == CallKind::External) cd.external_seen.insert(tc->tx_hash);
            cd.addr_txs[tc->caller].insert(tc->tx_hash);
            cd.addr_txs[tc->callee].insert(tc->tx_hash);
            write_line(chain, "trace.jsonl", recordio::to_json(*tc).dump());
        } else if (const auto* lg = std::get_if<LogEntry>(&rec)) {
            cd.logs.push_back(*lg);
            auto key = std::make_pair(lg->tx_hash, lg->log_index);
            cd.log_index.emplace(key, cd.logs.size() - 1);
            cd.log_keys.insert(key);
            if (lg->topics.size() == 3 && lg->topics[0] == transfer_topic()) {
                Address recipient = Address::from_bytes(lg->topics[2].bytes.data() + 12, 20);
                cd.addr_txs[recipient].insert(lg->tx_hash);
            }
            write_line(chain, "log.jsonl", recordio::to_json(*lg).dump());
        } else if (const auto* hd = std::get_if<BlockHeader>(&rec)) {
            cd.headers.emplace(hd->number, hd->timestamp);
            insert_sorted_header(cd, *hd);
            write_line(chain, "header.jsonl", recordio::to_json(*hd).dump());
        }
    }

    static void insert_sorted_header(ChainData& cd, const BlockHeader& h) {
        if (cd.headers_sorted.empty() || cd.headers_sorted.back().number < h.number) {
            cd.headers_sorted.push_back(h);
            return;
        }
        auto it = std::lower_bound(cd.headers_sorted.begin(), cd.headers_sorted.end(), h,
                                   [](const BlockHeader& a, const BlockHeader& b) {
                                       return a.number < b.number;
                                   });
        cd.headers_sorted.insert(it, h);
    }

    void write_line(const std::string& chain, const char* file, const std::string& line) {
        std::filesystem::path p = dir_ / chain / file;
        std::filesystem::create_directories(p.parent_path());
        auto key = p.string();
        auto it = streams_.find(key);
        if (it == streams_.end()) {
            it = streams_.emplace(key, std::ofstream(p, std::ios::app | std::ios::binary)).first;
            if (!it->second) throw InternalError("cannot open store file " + key);
        }
        it->second << line << '\n';
    }

    void flush_streams(const std::string& chain) {
        std::string prefix = (dir_ / chain).string();
        for (auto& [path, os] : streams_)
            if (path.compare(0, prefix.size(), prefix) == 0) os.flush();
    }

    void load_chain(const std::string& chain) {
        ChainData& cd = chains_[chain];
        auto load = [&](const char* file, auto parse, auto apply) {
            std::filesystem::path p = dir_ / chain / file;
            if (!std::filesystem::exists(p)) return;
            std::ifstream in(p);
            std::string line;
            std::size_t lineno = 0;
            while (std::getline(in, line)) {
                ++lineno;
                if (line.empty()) continue;
                try {
                    apply(parse(recordio::ordered_json::parse(line)));
                } catch (const std::exception& e) {
                    throw ValidationError("corrupt store file " + p.string() + " line " +
                                          std::to_string(lineno) + ": " + e.what());
                }
            }
        };
        load("header.jsonl", recordio::header_from_json, [&](const BlockHeader& h) {
            cd.headers.emplace(h.number, h.timestamp);
            insert_sorted_header(cd, h);
        });
        load("tx.jsonl", recordio::tx_from_json, [&](const Transaction& tx) {
            cd.txs.push_back(tx);
            cd.tx_by_hash.emplace(tx.hash, cd.txs.size() - 1);
            cd.block_txs.insert(std::make_tuple(tx.block_number, tx.tx_index, tx.hash));
            index_tx_addresses(cd, tx);
        });
        load("trace.jsonl", recordio::trace_from_json, [&](const TraceCall& tc) {
            cd.traces.push_back(tc);
            auto key = std::make_pair(tc.tx_hash, tc.index);
            cd.trace_index.emplace(key, cd.traces.size() - 1);
            cd.trace_keys.insert(key);
            if (tc.kind == CallKind::External) cd.external_seen.insert(tc.tx_hash);
            cd.addr_txs[tc.caller].insert(tc.tx_hash);
            cd.addr_txs[tc.callee].insert(tc.tx_hash);
        });
        load("log.jsonl", recordio::log_from_json, [&](const LogEntry& lg) {
            cd.logs.push_back(lg);
            auto key = std::make_pair(lg.tx_hash, lg.log_index);
            cd.log_index.emplace(key, cd.logs.size() - 1);
            cd.log_keys.insert(key);
            if (lg.topics.size() == 3 && lg.topics[0] == transfer_topic()) {
                Address recipient = Address::from_bytes(lg.topics[2].bytes.data() + 12, 20);
                cd.addr_txs[recipient].insert(lg.tx_hash);
            }
        });
    }

    std::filesystem::path dir_;
    mutable std::shared_mutex mu_;
    std::map<std::string, ChainData> chains_;
    std::map<std::string, std::ofstream> streams_;
};

} // namespace bridgetrace
