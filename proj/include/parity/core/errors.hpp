#pragma once

#include <stdexcept>
#include <string>

namespace parity {

// Transient transport-layer failure. Backends retry these internally; if the
// retry budget is exhausted the last TransportError propagates.
class TransportError : public std::runtime_error {
 public:
  explicit TransportError(const std::string& what) : std::runtime_error(what) {}
};

// The backend answered but the payload did not match the wire contract.
class ProtocolError : public std::runtime_error {
 public:
  explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

// The backend does not implement the requested operation (e.g. raw-prefix
// continuation on a pure chat API).
class UnsupportedCapability : public std::runtime_error {
 public:
  explicit UnsupportedCapability(const std::string& what) : std::runtime_error(what) {}
};

// A judge reply that contains no recognizable Decision token.
class UnparseableVerdict : public std::runtime_error {
 public:
  explicit UnparseableVerdict(const std::string& what) : std::runtime_error(what) {}
};

// Wraps any failure raised while running one architecture on one question so
// callers always know which question was in flight.
class RunError : public std::runtime_error {
 public:
  RunError(const std::string& question_id, const std::string& what)
      : std::runtime_error("question " + question_id + ": " + what), question_id_(question_id) {}
  const std::string& question_id() const { return question_id_; }

 private:
  std::string question_id_;
};

}  // namespace parity
