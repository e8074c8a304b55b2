#include "otds/kv.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "otds/errors.hpp"

namespace otds::kv {

void KvRecord::set(const std::string &key, std::span<const std::uint8_t> value) {
    fields_[key] = Bytes(value.begin(), value.end());
}

void KvRecord::set_u64(const std::string &key, std::uint64_t value) {
    Bytes b;
    put_u64le(b, value);
    fields_[key] = std::move(b);
}

const Bytes &KvRecord::get(const std::string &key) const {
    auto it = fields_.find(key);
    if (it == fields_.end()) throw KvError("missing key: " + key);
    return it->second;
}

std::uint64_t KvRecord::get_u64(const std::string &key) const {
    const auto &b = get(key);
    if (b.size() != 8) throw KvError("bad integer width for key: " + key);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
    return v;
}

void KvRecord::restrict_keys(const std::vector<std::string> &allowed) const {
    for (const auto &[key, _] : fields_) {
        std::string base = key;
        if (auto dot = key.rfind('.'); dot != std::string::npos &&
                                       key.find_first_not_of("0123456789", dot + 1) ==
                                           std::string::npos &&
                                       dot + 1 < key.size())
            base = key.substr(0, dot) + ".*";
        if (std::find(allowed.begin(), allowed.end(), base) == allowed.end() &&
            std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw KvError("unknown key: " + key);
    }
}

std::vector<Bytes> KvRecord::get_list(const std::string &prefix) const {
    std::size_t present = 0;
    for (const auto &[key, _] : fields_) {
        if (key.rfind(prefix + ".", 0) == 0 &&
            key.find_first_not_of("0123456789", prefix.size() + 1) == std::string::npos &&
            key.size() > prefix.size() + 1)
            ++present;
    }
    std::vector<Bytes> out;
    for (std::size_t i = 0; i < present; ++i) {
        auto it = fields_.find(prefix + "." + std::to_string(i));
        if (it == fields_.end()) throw KvError("gap in list: " + prefix);
        out.push_back(it->second);
    }
    return out;
}

void KvRecord::set_list(const std::string &prefix, const std::vector<Bytes> &values) {
    for (std::size_t i = 0; i < values.size(); ++i)
        fields_[prefix + "." + std::to_string(i)] = values[i];
}

std::string KvRecord::serialize() const {
    std::ostringstream out;
    out << "otds-kv v1 " << type_ << "\n";
    for (const auto &[key, value] : fields_) out << key << " = " << to_hex(value) << "\n";
    return out.str();
}

KvRecord KvRecord::parse(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw KvError("empty file");
    const std::string magic = "otds-kv v1 ";
    if (line.rfind(magic, 0) != 0) throw KvError("bad header line");
    KvRecord record(line.substr(magic.size()));
    if (record.type_.empty()) throw KvError("missing record type");

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto sep = line.find(" = ");
        if (sep == std::string::npos) throw KvError("malformed line: " + line);
        std::string key = line.substr(0, sep);
        std::string hex = line.substr(sep + 3);
        if (key.empty()) throw KvError("empty key");
        if (record.fields_.contains(key)) throw KvError("duplicate key: " + key);
        try {
            record.fields_[key] = from_hex(hex);
        } catch (const DecodeError &e) {
            throw KvError("bad hex for key " + key + ": " + e.what());
        }
    }
    return record;
}

void KvRecord::save(const std::filesystem::path &path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw KvError("cannot open file for writing: " + path.string());
    out << serialize();
}

KvRecord KvRecord::load(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw KvError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

}  // namespace otds::kv
