#pragma once

#include <stdexcept>
#include <string>

namespace agora {

// Parameter outside its documented domain (bad N/k/p, odd k, ...).
class ParamError : public std::invalid_argument {
public:
    explicit ParamError(const std::string& what) : std::invalid_argument(what) {}
};

// Structurally invalid input data (bad catalog line, mismatched eval sizes, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Backend call failed. retriable() distinguishes transient transport trouble
// from permanent protocol violations.
class BackendError : public std::runtime_error {
public:
    BackendError(const std::string& what, bool retriable)
        : std::runtime_error(what), retriable_(retriable) {}
    bool retriable() const { return retriable_; }

private:
    bool retriable_;
};

// Backend replied but the reply could not be interpreted. Keeps the raw
// reply so callers can log what the model actually said.
class ReplyParseError : public std::runtime_error {
public:
    ReplyParseError(const std::string& what, std::string raw_reply)
        : std::runtime_error(what + " (raw reply: \"" + raw_reply + "\")"),
          raw_reply_(std::move(raw_reply)) {}
    const std::string& raw_reply() const { return raw_reply_; }

private:
    std::string raw_reply_;
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Snapshot produced by an incompatible format version.
class SnapshotVersionError : public std::runtime_error {
public:
    SnapshotVersionError(int found, int expected)
        : std::runtime_error("snapshot format version " + std::to_string(found) +
                             " does not match expected version " + std::to_string(expected)),
          found_(found), expected_(expected) {}
    int found() const { return found_; }
    int expected() const { return expected_; }

private:
    int found_;
    int expected_;
};

} // namespace agora
