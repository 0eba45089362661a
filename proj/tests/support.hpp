#pragma once

#include <optional>

#include "mimo3way/error.hpp"

// Code of the mimo3way::Error thrown by f, or nullopt if none is thrown.
template <class F>
std::optional<mimo3way::ErrorCode> error_code_of(F&& f) {
  try {
    f();
  } catch (const mimo3way::Error& e) {
    return e.code();
  }
  return std::nullopt;
}
