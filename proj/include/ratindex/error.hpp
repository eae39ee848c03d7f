#pragma once

#include <stdexcept>
#include <string>

namespace ratindex {

/// Failure categories. Values mirror rx_status in ratindex.h.
enum class ErrorCode : int {
  Syntax = 1,
  UndeclaredSymbol = 2,
  DuplicateSymbol = 3,
  EmptyLanguage = 4,
  Alphabet = 5,
  Unbalanced = 6,
  CapExceeded = 7,
  NotReachable = 8,
  Unrealizable = 9,
  MalformedPartition = 10,
  NonChainRule = 11,
  NonBinaryPredicate = 12,
  UnknownEdbLabel = 13,
  BudgetExceeded = 14,
  DegenerateInput = 15,
  InvalidArgument = 16,
  Io = 17,
  Internal = 18,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ratindex
