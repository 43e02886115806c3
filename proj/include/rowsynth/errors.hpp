#ifndef ROWSYNTH_ERRORS_HPP_
#define ROWSYNTH_ERRORS_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rowsynth {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed strand, symbol or text input.
class InputError : public Error {
 public:
  using Error::Error;
};

// An action in a schedule is not legal at the slot where it appears.
class ScheduleValidationError : public Error {
 public:
  ScheduleValidationError(std::size_t slot, const std::string& what)
      : Error("slot " + std::to_string(slot) + ": " + what), slot_(slot) {}
  std::size_t slot() const noexcept { return slot_; }

 private:
  std::size_t slot_;
};

// The schedule ends before every strand is fully synthesized.
class IncompleteScheduleError : public Error {
 public:
  using Error::Error;
};

class UnsupportedAlphabetError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A DP table that does not belong to the strands it is used with.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class BudgetExceededError : public Error {
 public:
  BudgetExceededError(std::uint64_t required, std::uint64_t budget)
      : Error("enumeration needs " + std::to_string(required) +
              " interleavings, budget is " + std::to_string(budget)),
        required_(required) {}
  std::uint64_t required() const noexcept { return required_; }

 private:
  std::uint64_t required_;
};

// Bad experiment configuration (incompatible policy/alphabet, bad values).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Non-stochastic or otherwise malformed transition matrix.
class MatrixError : public Error {
 public:
  using Error::Error;
};

}  // namespace rowsynth

#endif  // ROWSYNTH_ERRORS_HPP_
