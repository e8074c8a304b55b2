// otds — command-line front end for single-use delegatable signatures over a
// file-persisted simulated ledger.
//
// Exit codes: 0 success, 1 cryptographic rejection (bad proof, consumed
// contract, failed verification), 2 usage error, 3 I/O or decode error.

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "otds/kv.hpp"
#include "otds/scheme.hpp"

namespace fs = std::filesystem;
using namespace otds;
namespace g = otds::group;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

g::Backend parse_backend(const std::string &name) {
    if (name == "toy") return g::Backend::Toy;
    if (name == "production") return g::Backend::Production;
    throw CLI::ValidationError("--backend must be 'toy' or 'production'");
}

Rng make_rng(const std::optional<std::uint64_t> &seed) {
    return seed ? Rng(*seed) : Rng::from_entropy();
}

// Exclusive advisory lock held for the lifetime of the object.
class FileLock {
public:
    explicit FileLock(const fs::path &path) {
        fd_ = ::open((path.string() + ".lock").c_str(), O_RDWR | O_CREAT, 0644);
        if (fd_ >= 0) ::flock(fd_, LOCK_EX);
    }
    ~FileLock() {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }
    FileLock(const FileLock &) = delete;
    FileLock &operator=(const FileLock &) = delete;

private:
    int fd_ = -1;
};

ledger::Ledger load_or_create_ledger(const fs::path &path) {
    if (fs::exists(path)) return ledger::Ledger::load(path);
    return ledger::Ledger{};
}

Bytes read_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    return Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

g::Backend record_backend(const kv::KvRecord &record) {
    const auto &b = record.get("backend");
    if (b.size() != 1 || b[0] > 1) throw KvError("bad backend field");
    return static_cast<g::Backend>(b[0]);
}

void set_backend(kv::KvRecord &record, g::Backend backend) {
    std::uint8_t b = static_cast<std::uint8_t>(backend);
    record.set("backend", std::span<const std::uint8_t>(&b, 1));
}

// --- key files ---

void write_user_keys(const fs::path &path, g::Backend backend, const scheme::UserKeys &keys) {
    kv::KvRecord record("user-keys");
    set_backend(record, backend);
    record.set("usk_sig", g::scalar_encode(keys.usk_sig));
    record.set("upk_sig", g::element_encode(keys.upk_sig));
    record.set("usk_dl", g::scalar_encode(keys.usk_dl));
    record.set("upk_dl", g::element_encode(keys.upk_dl));
    record.save(path);
}

std::pair<g::Backend, scheme::UserKeys> read_user_keys(const fs::path &path) {
    auto record = kv::KvRecord::load(path);
    if (record.type() != "user-keys") throw KvError("not a user-keys file: " + path.string());
    record.restrict_keys({"backend", "usk_sig", "upk_sig", "usk_dl", "upk_dl"});
    auto backend = record_backend(record);
    scheme::UserKeys keys;
    keys.usk_sig = g::scalar_decode(backend, record.get("usk_sig"));
    keys.upk_sig = g::element_decode(backend, record.get("upk_sig"));
    keys.usk_dl = g::scalar_decode(backend, record.get("usk_dl"));
    keys.upk_dl = g::element_decode(backend, record.get("upk_dl"));
    return {backend, keys};
}

void write_delegate_keys(const fs::path &path, g::Backend backend,
                         const scheme::DelegateKeys &keys) {
    kv::KvRecord record("delegate-keys");
    set_backend(record, backend);
    record.set("dsk", g::scalar_encode(keys.dsk));
    record.set("dpk", g::element_encode(keys.dpk));
    record.save(path);
}

std::pair<g::Backend, scheme::DelegateKeys> read_delegate_keys(const fs::path &path) {
    auto record = kv::KvRecord::load(path);
    if (record.type() != "delegate-keys")
        throw KvError("not a delegate-keys file: " + path.string());
    record.restrict_keys({"backend", "dsk", "dpk"});
    auto backend = record_backend(record);
    scheme::DelegateKeys keys;
    keys.dsk = g::scalar_decode(backend, record.get("dsk"));
    keys.dpk = g::element_decode(backend, record.get("dpk"));
    return {backend, keys};
}

void write_judge_keys(const fs::path &path, g::Backend backend,
                      const encryption::JudgeKeys &keys) {
    kv::KvRecord record("judge-keys");
    set_backend(record, backend);
    record.set("jsk", g::scalar_encode(keys.jsk));
    record.set("jpk", g::element_encode(keys.jpk));
    record.save(path);
}

std::pair<g::Backend, encryption::JudgeKeys> read_judge_keys(const fs::path &path) {
    auto record = kv::KvRecord::load(path);
    if (record.type() != "judge-keys") throw KvError("not a judge-keys file: " + path.string());
    record.restrict_keys({"backend", "jsk", "jpk"});
    auto backend = record_backend(record);
    encryption::JudgeKeys keys;
    keys.jsk = g::scalar_decode(backend, record.get("jsk"));
    keys.jpk = g::element_decode(backend, record.get("jpk"));
    return {backend, keys};
}

// --- handle files ---

void write_handle(const fs::path &path, const scheme::DelegationHandle &handle) {
    kv::KvRecord record("handle");
    set_backend(record, handle.pp.backend);
    record.set("contract_id", handle.contract_id);
    std::uint8_t variant = static_cast<std::uint8_t>(contracts::variant_of(handle.payload));
    record.set("variant", std::span<const std::uint8_t>(&variant, 1));
    record.set_u64("n", handle.n);
    if (handle.esk) record.set("esk", g::scalar_encode(*handle.esk));
    std::visit(
        [&record](const auto &p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, contracts::BasicPayload>) {
                record.set("y", g::element_encode(p.y));
            } else {
                record.set("upk_dl", g::element_encode(p.upk_dl));
                std::vector<Bytes> keys;
                for (const auto &k : p.delegate_keys) keys.push_back(g::element_encode(k));
                record.set_list("delegate_pk", keys);
                if constexpr (std::is_same_v<T, contracts::AccountablePayload>)
                    record.set("jpk", g::element_encode(p.jpk));
            }
        },
        handle.payload);
    record.save(path);
}

scheme::DelegationHandle read_handle(const fs::path &path) {
    auto record = kv::KvRecord::load(path);
    if (record.type() != "handle") throw KvError("not a handle file: " + path.string());
    record.restrict_keys(
        {"backend", "contract_id", "variant", "n", "esk", "y", "upk_dl", "delegate_pk.*", "jpk"});
    auto backend = record_backend(record);
    scheme::DelegationHandle handle;
    handle.pp = g::par_gen(backend);
    const auto &id = record.get("contract_id");
    if (id.size() != 32) throw KvError("bad contract_id length");
    std::copy(id.begin(), id.end(), handle.contract_id.begin());
    handle.n = static_cast<std::uint32_t>(record.get_u64("n"));
    const auto &variant = record.get("variant");
    if (variant.size() != 1 || variant[0] > 2) throw KvError("bad variant field");
    if (record.has("esk")) handle.esk = g::scalar_decode(backend, record.get("esk"));
    switch (static_cast<contracts::Variant>(variant[0])) {
        case contracts::Variant::Basic:
            handle.payload = contracts::BasicPayload{g::element_decode(backend, record.get("y"))};
            break;
        case contracts::Variant::Designated:
        case contracts::Variant::Accountable: {
            auto upk_dl = g::element_decode(backend, record.get("upk_dl"));
            std::vector<g::GroupElement> keys;
            for (const auto &k : record.get_list("delegate_pk"))
                keys.push_back(g::element_decode(backend, k));
            if (keys.empty()) throw KvError("handle has no delegate keys");
            if (variant[0] == 1) {
                handle.payload = contracts::DesignatedPayload{upk_dl, std::move(keys)};
            } else {
                handle.payload = contracts::AccountablePayload{
                    upk_dl, std::move(keys), g::element_decode(backend, record.get("jpk"))};
            }
            break;
        }
    }
    return handle;
}

// --- trigger and signature files ---

void write_trigger(const fs::path &path, g::Backend backend, const ledger::ContractId &id,
                   const contracts::Trigger &trig) {
    kv::KvRecord record("trigger");
    set_backend(record, backend);
    record.set("contract_id", id);
    record.set("trigger", trig.encode());
    record.save(path);
}

std::tuple<g::Backend, ledger::ContractId, contracts::Trigger> read_trigger(const fs::path &path) {
    auto record = kv::KvRecord::load(path);
    if (record.type() != "trigger") throw KvError("not a trigger file: " + path.string());
    record.restrict_keys({"backend", "contract_id", "trigger"});
    auto backend = record_backend(record);
    const auto &id_bytes = record.get("contract_id");
    if (id_bytes.size() != 32) throw KvError("bad contract_id length");
    ledger::ContractId id{};
    std::copy(id_bytes.begin(), id_bytes.end(), id.begin());
    return {backend, id, contracts::Trigger::decode(backend, record.get("trigger"))};
}

void write_signature(const fs::path &path, const ledger::ContractId &id,
                     const scheme::MessageSignature &sig) {
    kv::KvRecord record("signature");
    record.set("contract_id", id);
    record.set("h", sig.h);
    if (sig.sigma) record.set("sigma", *sig.sigma);
    record.save(path);
}

std::pair<ledger::ContractId, scheme::MessageSignature> read_signature(const fs::path &path) {
    auto record = kv::KvRecord::load(path);
    if (record.type() != "signature") throw KvError("not a signature file: " + path.string());
    record.restrict_keys({"contract_id", "h", "sigma"});
    const auto &id_bytes = record.get("contract_id");
    if (id_bytes.size() != 32) throw KvError("bad contract_id length");
    ledger::ContractId id{};
    std::copy(id_bytes.begin(), id_bytes.end(), id.begin());
    scheme::MessageSignature sig;
    const auto &h = record.get("h");
    if (h.size() != 32) throw KvError("bad hash length");
    std::copy(h.begin(), h.end(), sig.h.begin());
    if (record.has("sigma")) {
        const auto &sigma = record.get("sigma");
        if (sigma.size() != 32) throw KvError("bad sigma length");
        Hash32 s{};
        std::copy(sigma.begin(), sigma.end(), s.begin());
        sig.sigma = s;
    }
    return {id, sig};
}

ledger::ContractId parse_contract_id(const std::string &hex) {
    auto bytes = from_hex(hex);
    if (bytes.size() != 32) throw DecodeError("contract id must be 32 bytes of hex");
    ledger::ContractId id{};
    std::copy(bytes.begin(), bytes.end(), id.begin());
    return id;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"single-use delegatable signatures over a simulated ledger"};
    app.require_subcommand(1);

    std::optional<std::uint64_t> seed;
    app.add_option("--seed", seed, "deterministic randomness seed");

    int exit_code = kExitOk;

    // keygen-user / keygen-delegate / keygen-judge
    auto add_keygen = [&app, &seed](const std::string &name, int kind) {
        auto *cmd = app.add_subcommand(name, "generate " + name.substr(7) + " key material");
        auto out = std::make_shared<std::string>();
        auto backend_s = std::make_shared<std::string>("production");
        cmd->add_option("--out", *out, "output key file")->required();
        cmd->add_option("--backend", *backend_s, "group backend (toy|production)");
        cmd->callback([&seed, out, backend_s, kind]() {
            auto backend = parse_backend(*backend_s);
            auto pp = scheme::par_gen(backend);
            auto rng = make_rng(seed);
            if (kind == 0) {
                write_user_keys(*out, backend, scheme::ukgen(pp, rng));
            } else if (kind == 1) {
                write_delegate_keys(*out, backend, scheme::dkgen(pp, rng));
            } else {
                write_judge_keys(*out, backend, encryption::eg_keygen(pp, rng));
            }
        });
    };
    add_keygen("keygen-user", 0);
    add_keygen("keygen-delegate", 1);
    add_keygen("keygen-judge", 2);

    // delegate
    {
        auto *cmd = app.add_subcommand("delegate", "deploy a delegation contract");
        auto user_path = std::make_shared<std::string>();
        auto variant_name = std::make_shared<std::string>("basic");
        auto delegate_pks = std::make_shared<std::vector<std::string>>();
        auto judge_pk = std::make_shared<std::string>();
        auto n = std::make_shared<std::uint32_t>(1);
        auto ledger_path = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        cmd->add_option("--user", *user_path, "user key file")->required();
        cmd->add_option("--variant", *variant_name, "basic|designated|accountable");
        cmd->add_option("--delegate-pk", *delegate_pks, "delegate key file (repeatable)");
        cmd->add_option("--judge-pk", *judge_pk, "judge key file (accountable)");
        cmd->add_option("--n", *n, "permitted trigger count");
        cmd->add_option("--ledger", *ledger_path, "ledger file")->required();
        cmd->add_option("--out", *out, "output handle file")->required();
        cmd->callback([&, user_path, variant_name, delegate_pks, judge_pk, n, ledger_path, out]() {
            auto [backend, user] = read_user_keys(*user_path);
            scheme::VariantRequest request;
            if (*variant_name == "basic") {
                request.variant = contracts::Variant::Basic;
            } else if (*variant_name == "designated") {
                request.variant = contracts::Variant::Designated;
            } else if (*variant_name == "accountable") {
                request.variant = contracts::Variant::Accountable;
            } else {
                throw CLI::ValidationError("--variant must be basic|designated|accountable");
            }
            for (const auto &path : *delegate_pks)
                request.delegate_pks.push_back(read_delegate_keys(path).second.dpk);
            if (!judge_pk->empty()) request.jpk = read_judge_keys(*judge_pk).second.jpk;

            FileLock lock(*ledger_path);
            auto ledger = load_or_create_ledger(*ledger_path);
            auto rng = make_rng(seed);
            auto handle = scheme::delegate(ledger, user, request, *n, rng);
            ledger.save(*ledger_path);
            write_handle(*out, handle);
            std::cout << "contract " << to_hex(handle.contract_id) << " deployed\n";
        });
    }

    // sign
    {
        auto *cmd = app.add_subcommand("sign", "produce a signature and trigger");
        auto role = std::make_shared<std::string>();
        auto handle_path = std::make_shared<std::string>();
        auto key_path = std::make_shared<std::string>();
        auto msg_path = std::make_shared<std::string>();
        auto hiding = std::make_shared<bool>(false);
        auto out_trigger = std::make_shared<std::string>();
        auto out_sig = std::make_shared<std::string>();
        cmd->add_option("--role", *role, "user|delegate")->required();
        cmd->add_option("--handle", *handle_path, "delegation handle file")->required();
        cmd->add_option("--key", *key_path, "signer key file (user or delegate keys)")->required();
        cmd->add_option("--msg-file", *msg_path, "message file")->required();
        cmd->add_flag("--hiding", *hiding, "blind the stored message hash");
        cmd->add_option("--out-trigger", *out_trigger, "output trigger file")->required();
        cmd->add_option("--out-sig", *out_sig, "output signature file")->required();
        cmd->callback([&, role, handle_path, key_path, msg_path, hiding, out_trigger, out_sig]() {
            auto handle = read_handle(*handle_path);
            auto msg = read_file(*msg_path);
            auto rng = make_rng(seed);
            std::pair<scheme::MessageSignature, contracts::Trigger> result;
            if (*role == "user") {
                auto [backend, user] = read_user_keys(*key_path);
                result = scheme::usign(handle, user, msg, *hiding, rng);
            } else if (*role == "delegate") {
                auto [backend, delegate] = read_delegate_keys(*key_path);
                result = scheme::dsign(handle, delegate, msg, *hiding, rng);
            } else {
                throw CLI::ValidationError("--role must be user or delegate");
            }
            write_trigger(*out_trigger, handle.pp.backend, handle.contract_id, result.second);
            write_signature(*out_sig, handle.contract_id, result.first);
        });
    }

    // submit
    {
        auto *cmd = app.add_subcommand("submit", "submit a trigger to the ledger");
        auto ledger_path = std::make_shared<std::string>();
        auto trigger_path = std::make_shared<std::string>();
        cmd->add_option("--ledger", *ledger_path, "ledger file")->required();
        cmd->add_option("--trigger", *trigger_path, "trigger file")->required();
        cmd->callback([&, ledger_path, trigger_path]() {
            auto [backend, id, trig] = read_trigger(*trigger_path);
            FileLock lock(*ledger_path);
            auto ledger = ledger::Ledger::load(*ledger_path);
            auto result = ledger.submit_trigger(id, trig);
            ledger.save(*ledger_path);
            std::cout << contracts::to_string(result.status) << "\n";
            if (result.status != contracts::TriggerStatus::Accepted) exit_code = kExitRejected;
        });
    }

    // verify
    {
        auto *cmd = app.add_subcommand("verify", "verify a signature against the ledger");
        auto ledger_path = std::make_shared<std::string>();
        auto user_path = std::make_shared<std::string>();
        auto msg_path = std::make_shared<std::string>();
        auto sig_path = std::make_shared<std::string>();
        cmd->add_option("--ledger", *ledger_path, "ledger file")->required();
        cmd->add_option("--user", *user_path, "user key file (public part used)")->required();
        cmd->add_option("--msg-file", *msg_path, "message file")->required();
        cmd->add_option("--sig", *sig_path, "signature file")->required();
        cmd->callback([&, ledger_path, user_path, msg_path, sig_path]() {
            auto ledger = ledger::Ledger::load(*ledger_path);
            auto [backend, user] = read_user_keys(*user_path);
            auto msg = read_file(*msg_path);
            auto [id, sig] = read_signature(*sig_path);
            if (scheme::verify(ledger, user.upk_sig, msg, sig, id)) {
                std::cout << "valid\n";
            } else {
                std::cout << "invalid\n";
                exit_code = kExitRejected;
            }
        });
    }

    // judge-open
    {
        auto *cmd = app.add_subcommand("judge-open", "open accountable triggers");
        auto ledger_path = std::make_shared<std::string>();
        auto judge_path = std::make_shared<std::string>();
        auto contract_hex = std::make_shared<std::string>();
        cmd->add_option("--ledger", *ledger_path, "ledger file")->required();
        cmd->add_option("--judge", *judge_path, "judge key file")->required();
        cmd->add_option("--contract", *contract_hex, "contract id (hex)")->required();
        cmd->callback([&, ledger_path, judge_path, contract_hex]() {
            auto ledger = ledger::Ledger::load(*ledger_path);
            auto [backend, judge] = read_judge_keys(*judge_path);
            auto id = parse_contract_id(*contract_hex);
            const auto *record = ledger.get_contract(id);
            if (record == nullptr) {
                std::cout << "unknown contract\n";
                exit_code = kExitRejected;
                return;
            }
            auto signers = scheme::judge_open(judge, *record);
            for (const auto &pk : signers) std::cout << to_hex(g::element_encode(pk)) << "\n";
        });
    }

    // ledger-show
    {
        auto *cmd = app.add_subcommand("ledger-show", "print the chain and contract states");
        auto ledger_path = std::make_shared<std::string>();
        cmd->add_option("--ledger", *ledger_path, "ledger file")->required();
        cmd->callback([&, ledger_path]() {
            auto ledger = ledger::Ledger::load(*ledger_path);
            for (const auto &block : ledger.blocks()) {
                std::cout << "block " << block.height << " " << to_hex(block.block_hash) << " ("
                          << block.transactions.size() << " tx)\n";
                for (const auto &tx : block.transactions) {
                    if (tx.kind == ledger::Transaction::Kind::Deploy) {
                        std::cout << "  deploy "
                                  << to_hex(ledger::Ledger::contract_id_for(
                                         contracts::ContractSpec::decode(tx.body)))
                                  << "\n";
                    } else {
                        std::cout << "  trigger " << to_hex(tx.contract_id)
                                  << (tx.accepted ? " accepted" : " rejected") << "\n";
                    }
                }
            }
        });
    }

    // let `--seed` appear after the subcommand name as well
    for (auto *sub : app.get_subcommands([](const CLI::App *) { return true; }))
        sub->fallthrough(true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    } catch (const KvError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const DecodeError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const DeployError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRejected;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return exit_code;
}
