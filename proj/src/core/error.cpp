#include "ratindex/error.hpp"

namespace ratindex {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Syntax: return "syntax error";
    case ErrorCode::UndeclaredSymbol: return "undeclared symbol";
    case ErrorCode::DuplicateSymbol: return "duplicate symbol";
    case ErrorCode::EmptyLanguage: return "empty language";
    case ErrorCode::Alphabet: return "symbol not in alphabet";
    case ErrorCode::Unbalanced: return "unbalanced word";
    case ErrorCode::CapExceeded: return "cap exceeded";
    case ErrorCode::NotReachable: return "not reachable";
    case ErrorCode::Unrealizable: return "unrealizable triple";
    case ErrorCode::MalformedPartition: return "malformed partition";
    case ErrorCode::NonChainRule: return "non-chain rule";
    case ErrorCode::NonBinaryPredicate: return "non-binary predicate";
    case ErrorCode::UnknownEdbLabel: return "unknown edb label";
    case ErrorCode::BudgetExceeded: return "budget exceeded";
    case ErrorCode::DegenerateInput: return "degenerate input";
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Io: return "i/o error";
    case ErrorCode::Internal: return "internal error";
  }
  return "unknown error";
}

}  // namespace ratindex
