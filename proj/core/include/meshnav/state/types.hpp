#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace meshnav {

// Every sensor instance carries a unique positive identifier.
using InstanceId = std::int32_t;

// Violated operation contract (bad dimensions, unknown ids, non-PSD input, ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Query into an empty/too-short history.
class HistoryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace meshnav
