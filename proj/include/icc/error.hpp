// Error type shared by all modules: a kind tag plus structured detail,
// so the CLI can emit machine-readable diagnostics.
#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

namespace icc {

enum class ErrorKind {
  Parse,
  MissingInnerSet,
  IdOutOfRange,
  DuplicateEdge,
  SelfLoop,
  NotInnerVertex,
  PreconditionViolation,
  IPathNotUnique,
  VertexNotOnAnyCycle,
  CcvTie,
  PreCentralDuplicate,
  OuterCyclesPresent,
  SelectionConflict,
  NotDecodable,
  NotIcStructure,
  LengthMismatch,
  LimitExceeded,
  BadDocument,
  Usage,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        nlohmann::ordered_json detail = nlohmann::ordered_json::object())
      : std::runtime_error(message), kind(kind), detail(std::move(detail)) {}

  ErrorKind kind;
  nlohmann::ordered_json detail;
};

}  // namespace icc
