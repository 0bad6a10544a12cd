#pragma once

#include <stdexcept>
#include <string>

namespace becgw {

// Bad configuration or a violated physical precondition. The CLI maps this
// to exit code 2. The message names the offending field or invariant.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical method failed to reach its requested accuracy. Carries the
// accuracy actually achieved so callers can report it. CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double requested, double achieved)
      : std::runtime_error(what + " (requested " + std::to_string(requested) +
                           ", achieved " + std::to_string(achieved) + ")"),
        requested_(requested),
        achieved_(achieved) {}

  double requested() const { return requested_; }
  double achieved() const { return achieved_; }

 private:
  double requested_;
  double achieved_;
};

}  // namespace becgw
