#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

// run the CLI binary with stderr folded into stdout
RunResult run(const std::string &args) {
    std::string cmd = std::string(OTDS_CLI_PATH) + " " + args + " 2>&1";
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[256];
    while (fgets(buf, sizeof buf, pipe) != nullptr) out += buf;
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path fresh_dir(const std::string &name) {
    auto dir = fs::temp_directory_path() / ("otds_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

std::string read_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string q(const fs::path &p) { return "\"" + p.string() + "\""; }

// full scripted flow in `dir`; returns the verify output
void run_basic_flow(const fs::path &dir, const std::string &backend) {
    write_file(dir / "msg.txt", "hello otds");
    CHECK(run("keygen-user --seed 1 --backend " + backend + " --out " + q(dir / "user.kv"))
              .exit_code == 0);
    auto del = run("delegate --seed 2 --user " + q(dir / "user.kv") + " --ledger " +
                   q(dir / "ledger.bin") + " --out " + q(dir / "handle.kv"));
    CHECK(del.exit_code == 0);
    CHECK(del.output.find("deployed") != std::string::npos);
    CHECK(run("sign --seed 3 --role user --handle " + q(dir / "handle.kv") + " --key " +
              q(dir / "user.kv") + " --msg-file " + q(dir / "msg.txt") + " --out-trigger " +
              q(dir / "trigger.kv") + " --out-sig " + q(dir / "sig.kv"))
              .exit_code == 0);
    auto sub = run("submit --ledger " + q(dir / "ledger.bin") + " --trigger " +
                   q(dir / "trigger.kv"));
    CHECK(sub.exit_code == 0);
    CHECK(sub.output.find("accepted") != std::string::npos);
    auto ver = run("verify --ledger " + q(dir / "ledger.bin") + " --user " + q(dir / "user.kv") +
                   " --msg-file " + q(dir / "msg.txt") + " --sig " + q(dir / "sig.kv"));
    CHECK(ver.exit_code == 0);
    CHECK(ver.output == "valid\n");
}

}  // namespace

TEST_CASE("scripted basic flow succeeds end to end") {
    auto dir = fresh_dir("flow");
    run_basic_flow(dir, "production");

    SUBCASE("second submission of a fresh trigger is rejected with exit 1") {
        CHECK(run("sign --seed 4 --role user --handle " + q(dir / "handle.kv") + " --key " +
                  q(dir / "user.kv") + " --msg-file " + q(dir / "msg.txt") + " --out-trigger " +
                  q(dir / "trigger2.kv") + " --out-sig " + q(dir / "sig2.kv"))
                  .exit_code == 0);
        auto sub = run("submit --ledger " + q(dir / "ledger.bin") + " --trigger " +
                       q(dir / "trigger2.kv"));
        CHECK(sub.exit_code == 1);
        CHECK(sub.output.find("consumed") != std::string::npos);
    }

    SUBCASE("verification against a different message fails with exit 1") {
        write_file(dir / "other.txt", "tampered");
        auto ver = run("verify --ledger " + q(dir / "ledger.bin") + " --user " +
                       q(dir / "user.kv") + " --msg-file " + q(dir / "other.txt") + " --sig " +
                       q(dir / "sig.kv"));
        CHECK(ver.exit_code == 1);
        CHECK(ver.output == "invalid\n");
    }

    SUBCASE("ledger-show lists the deploy and the accepted trigger") {
        auto show = run("ledger-show --ledger " + q(dir / "ledger.bin"));
        CHECK(show.exit_code == 0);
        CHECK(show.output.find("deploy") != std::string::npos);
        CHECK(show.output.find("trigger") != std::string::npos);
        CHECK(show.output.find(" accepted") != std::string::npos);
    }
}

TEST_CASE("delegated accountable flow with judge opening") {
    auto dir = fresh_dir("judge");
    write_file(dir / "msg.txt", "delegated message");
    CHECK(run("keygen-user --seed 1 --out " + q(dir / "user.kv")).exit_code == 0);
    CHECK(run("keygen-delegate --seed 2 --out " + q(dir / "del.kv")).exit_code == 0);
    CHECK(run("keygen-judge --seed 3 --out " + q(dir / "judge.kv")).exit_code == 0);
    auto del = run("delegate --seed 4 --user " + q(dir / "user.kv") +
                   " --variant accountable --delegate-pk " + q(dir / "del.kv") +
                   " --judge-pk " + q(dir / "judge.kv") + " --ledger " + q(dir / "ledger.bin") +
                   " --out " + q(dir / "handle.kv"));
    CHECK(del.exit_code == 0);
    auto id = del.output.substr(del.output.find("contract ") + 9, 64);
    CHECK(run("sign --seed 5 --role delegate --handle " + q(dir / "handle.kv") + " --key " +
              q(dir / "del.kv") + " --msg-file " + q(dir / "msg.txt") + " --out-trigger " +
              q(dir / "trigger.kv") + " --out-sig " + q(dir / "sig.kv"))
              .exit_code == 0);
    CHECK(run("submit --ledger " + q(dir / "ledger.bin") + " --trigger " + q(dir / "trigger.kv"))
              .exit_code == 0);

    auto open = run("judge-open --ledger " + q(dir / "ledger.bin") + " --judge " +
                    q(dir / "judge.kv") + " --contract " + id);
    CHECK(open.exit_code == 0);
    // the opened key is the delegate's public key from its key file
    auto del_file = read_file(dir / "del.kv");
    auto dpk_pos = del_file.find("dpk = ");
    REQUIRE(dpk_pos != std::string::npos);
    auto dpk_hex = del_file.substr(dpk_pos + 6, 64);
    CHECK(open.output == dpk_hex + "\n");
}

TEST_CASE("fixed seeds give byte-identical artifacts") {
    auto a = fresh_dir("det_a");
    auto b = fresh_dir("det_b");
    run_basic_flow(a, "production");
    run_basic_flow(b, "production");
    for (const char *name :
         {"user.kv", "handle.kv", "trigger.kv", "sig.kv", "ledger.bin"})
        CHECK(read_file(a / name) == read_file(b / name));
}

TEST_CASE("committed golden vectors reproduce exactly") {
    auto dir = fresh_dir("golden");
    auto golden = fs::path(OTDS_GOLDEN_DIR);
    CHECK(run("keygen-user --seed 42 --backend production --out " + q(dir / "user.kv"))
              .exit_code == 0);
    CHECK(read_file(dir / "user.kv") == read_file(golden / "user-keys-seed42.kv"));
    CHECK(run("keygen-user --seed 42 --backend toy --out " + q(dir / "user-toy.kv"))
              .exit_code == 0);
    CHECK(read_file(dir / "user-toy.kv") == read_file(golden / "user-keys-toy-seed42.kv"));

    run_basic_flow(dir, "production");
    CHECK(read_file(dir / "sig.kv") == read_file(golden / "sig-flow.kv"));
    CHECK(read_file(dir / "trigger.kv") == read_file(golden / "trigger-flow.kv"));
}

TEST_CASE("usage and i/o errors use distinct exit codes") {
    auto dir = fresh_dir("err");
    CHECK(run("no-such-command").exit_code == 2);
    CHECK(run("keygen-user").exit_code == 2);  // missing --out
    CHECK(run("keygen-user --backend nope --out " + q(dir / "x.kv")).exit_code == 2);
    CHECK(run("verify --ledger " + q(dir / "missing.bin") + " --user " + q(dir / "missing.kv") +
              " --msg-file " + q(dir / "missing.txt") + " --sig " + q(dir / "missing.kv"))
              .exit_code == 3);
    // corrupt key file
    write_file(dir / "bad.kv", "otds-kv v1 user-keys\nbackend = zz\n");
    CHECK(run("delegate --user " + q(dir / "bad.kv") + " --ledger " + q(dir / "l.bin") +
              " --out " + q(dir / "h.kv"))
              .exit_code == 3);
}
