#pragma once

#include <stdexcept>
#include <string>

namespace tempercore {

/// Rejected input: a precondition on caller-supplied data failed.
class input_error : public std::invalid_argument {
public:
  explicit input_error(const std::string& msg) : std::invalid_argument(msg) {}
};

/// A numerical procedure failed to converge or produced unusable output.
class numerical_error : public std::runtime_error {
public:
  numerical_error(const std::string& msg, double last, double previous)
      : std::runtime_error(msg), last_estimate(last), previous_estimate(previous) {}
  explicit numerical_error(const std::string& msg)
      : std::runtime_error(msg), last_estimate(0), previous_estimate(0) {}

  double last_estimate;
  double previous_estimate;
};

/// Structural defect in a constructed object (reducible chain, singular system).
class structure_error : public std::runtime_error {
public:
  explicit structure_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two objects cannot be compared (mismatched grids or stationary laws).
class incomparable_error : public std::invalid_argument {
public:
  explicit incomparable_error(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Not enough data to form the requested estimate.
class insufficient_data_error : public std::invalid_argument {
public:
  explicit insufficient_data_error(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Bad experiment configuration.
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tempercore
