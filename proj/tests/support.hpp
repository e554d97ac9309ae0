#pragma once

#include <filesystem>
#include <functional>
#include <string>

#include "kstab/error.hpp"
#include "kstab/rational.hpp"

namespace kstab::testing {

inline Rational R(const std::string& s) { return Rational::parse(s); }

inline std::filesystem::path data_dir() { return KSTAB_TEST_DATA_DIR; }

// Kind of the kstab::Error thrown by f, or "" when nothing is thrown.
inline std::string error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return "";
}

}  // namespace kstab::testing
