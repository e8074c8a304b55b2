#pragma once

#include <stdexcept>
#include <string>

namespace otds {

// Malformed or non-canonical byte encodings.
struct DecodeError : std::runtime_error {
    explicit DecodeError(const std::string &what) : std::runtime_error(what) {}
};

// Prover invoked with a witness that does not satisfy the statement.
struct WitnessError : std::invalid_argument {
    explicit WitnessError(const std::string &what) : std::invalid_argument(what) {}
};

// Contract deployment rejected by the ledger.
struct DeployError : std::runtime_error {
    explicit DeployError(const std::string &what) : std::runtime_error(what) {}
};

// Operation not supported for the contract's variant.
struct UnsupportedVariant : std::runtime_error {
    explicit UnsupportedVariant(const std::string &what) : std::runtime_error(what) {}
};

// Malformed OTDS-KV artifact file.
struct KvError : std::runtime_error {
    explicit KvError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace otds
