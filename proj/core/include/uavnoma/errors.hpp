#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace uavnoma {

// Invalid scenario or experiment configuration. Carries one message per
// offending field.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);

  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

// No entry of the covering table has a small-disk radius within the LoS
// radius.
class UncoverableArea : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A matching operation would place more than q devices on one SS unit.
class QuotaViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dinkelbach iteration did not reach the residual threshold.
class IterationLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Brute-force power oracle refuses clusters above its size guard.
class ClusterTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The alternating matching / power loop did not reach a fixed point.
class OuterIterationLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace uavnoma
