#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "otds/bytes.hpp"

namespace otds::kv {

// OTDS-KV artifact file: a header line "otds-kv v1 <record-type>" followed by
// one "key = hex" line per field. Keys are unique, hex is lowercase, and
// readers reject keys outside the record type's schema.
class KvRecord {
public:
    KvRecord() = default;
    explicit KvRecord(std::string record_type) : type_(std::move(record_type)) {}

    const std::string &type() const { return type_; }

    void set(const std::string &key, std::span<const std::uint8_t> value);
    void set_u64(const std::string &key, std::uint64_t value);

    bool has(const std::string &key) const { return fields_.contains(key); }
    const Bytes &get(const std::string &key) const;  // throws KvError if absent
    std::uint64_t get_u64(const std::string &key) const;

    // throws KvError if any present key is outside `allowed`
    void restrict_keys(const std::vector<std::string> &allowed) const;

    // keys sharing a "prefix.N" shape, in index order
    std::vector<Bytes> get_list(const std::string &prefix) const;
    void set_list(const std::string &prefix, const std::vector<Bytes> &values);

    std::string serialize() const;
    static KvRecord parse(const std::string &text);

    void save(const std::filesystem::path &path) const;
    static KvRecord load(const std::filesystem::path &path);

private:
    std::string type_;
    std::map<std::string, Bytes> fields_;
};

}  // namespace otds::kv
