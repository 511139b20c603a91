#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hatlab {

enum class ErrorCode {
  ZeroSize,
  InvalidInstance,
  CyclicHearing,
  InvalidAssignment,
  StrategyRangeError,
  InvalidStrategy,
  SweepTooLarge,
  OverlapError,
  CoverageError,
  RelationMismatch,
  BlockSizeMismatch,
  TooManyBlocks,
  NeedsTwoColors,
  NotHNSA,
  NotHNSF,
  NotHBSF,
  BudgetExceeded,
  ShapeMismatch,
  NotRepresentable,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

class HatError : public std::runtime_error {
 public:
  HatError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Carries the asking indices of one hearing cycle, in edge order.
class CyclicHearingError : public HatError {
 public:
  explicit CyclicHearingError(std::vector<int> witness);
  const std::vector<int>& witness() const noexcept { return witness_; }

 private:
  std::vector<int> witness_;
};

class BudgetExceededError : public HatError {
 public:
  BudgetExceededError(ErrorCode code, unsigned long long required, unsigned long long budget,
                      const std::string& what);
  unsigned long long required() const noexcept { return required_; }
  unsigned long long budget() const noexcept { return budget_; }

 private:
  unsigned long long required_;
  unsigned long long budget_;
};

}  // namespace hatlab
