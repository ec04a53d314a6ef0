#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace klic {

// Base class for every failure raised by this library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: wrong dimensions, non-finite entries, bad indices.
class invalid_input : public error {
 public:
  using error::error;
};

// Configuration rejected before any computation starts.
class invalid_config : public error {
 public:
  using error::error;
};

// A matrix required to be positive definite failed its factorization.
class singular_matrix : public error {
 public:
  using error::error;
};

// A basis or Gram matrix lost full column rank.
class rank_deficient : public error {
 public:
  using error::error;
};

// Statistic input is degenerate (e.g. zero eigenvalues where a log is taken).
class degenerate_input : public error {
 public:
  using error::error;
};

// Monte Carlo budget too small for the requested false-alarm level.
class insufficient_trials : public error {
 public:
  using error::error;
};

// Wraps a failure inside a Monte Carlo trial with enough context to replay it.
class trial_error : public error {
 public:
  trial_error(std::uint64_t trial, std::uint64_t base_seed, const std::string& what_arg)
      : error("trial " + std::to_string(trial) + " (seed " + std::to_string(base_seed) +
              "): " + what_arg),
        trial_(trial),
        base_seed_(base_seed) {}

  std::uint64_t trial() const noexcept { return trial_; }
  std::uint64_t base_seed() const noexcept { return base_seed_; }

 private:
  std::uint64_t trial_;
  std::uint64_t base_seed_;
};

}  // namespace klic
