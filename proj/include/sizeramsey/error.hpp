#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace sizeramsey {

enum class ErrorKind {
  InvalidArgument,   // precondition on inputs violated
  NotLinear,         // hypergraph has two edges sharing >= 2 vertices
  BudgetExceeded,    // enumeration / size budget exceeded
  NotACycle,         // vertex sequence is not a cycle of the reference graph
  NotAPath,
  NotATree,
  NoSolution,        // e.g. lift arithmetic has no integer solution
  StageFailure,      // a search stage could not reach its target
  RetriesExhausted,
  VerificationFailed,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Structured error: a kind, a human-readable message and a JSON payload
/// carrying witnesses or diagnostic statistics.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, nlohmann::json details = nlohmann::json::object())
      : std::runtime_error(message), kind_(kind), details_(std::move(details)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const nlohmann::json& details() const noexcept { return details_; }

  nlohmann::json to_json() const {
    return {{"kind", std::string(to_string(kind_))}, {"message", what()}, {"details", details_}};
  }

 private:
  ErrorKind kind_;
  nlohmann::json details_;
};

}  // namespace sizeramsey
