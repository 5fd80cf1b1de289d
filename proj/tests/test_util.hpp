#pragma once

#include "irp/error.hpp"
#include "irp/world_state.hpp"

#include <doctest.h>

#include <functional>
#include <string>
#include <vector>

namespace testutil {

inline irp::Atom at(std::string p, std::vector<std::string> args) {
  return {std::move(p), std::move(args)};
}

// Code of the irp::Error thrown by f; fails the test if nothing is thrown.
inline irp::ErrorCode code_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const irp::Error &e) {
    return e.code();
  }
  FAIL("expected an irp::Error");
  return irp::ErrorCode::InvalidArgument;
}

} // namespace testutil
