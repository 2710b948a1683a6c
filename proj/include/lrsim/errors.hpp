#pragma once

#include <stdexcept>
#include <string>

namespace lrsim {

/// Invalid configuration or violated precondition; nothing was simulated.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Quadrature did not reach its tolerance, or another numerical routine failed.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// A statistic is undefined for the given data (e.g. zero coincidences).
class UndefinedStatistic : public std::domain_error {
 public:
  explicit UndefinedStatistic(const std::string& what) : std::domain_error(what) {}
};

/// Retained event streams exceeded the configured cap.
class EventOverflow : public std::runtime_error {
 public:
  explicit EventOverflow(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lrsim
