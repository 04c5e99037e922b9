#pragma once

#include <boost/version.hpp>

#include <string>

namespace profmatch {

inline constexpr const char* version = "0.1.0";

/// Arithmetic used for weights: 64-bit and 128-bit fast paths when the
/// weights provably fit, Boost cpp_int otherwise.
inline std::string arithmetic_backend() {
  return "int64/int128 fast paths + boost::multiprecision::cpp_int (Boost " + std::to_string(BOOST_VERSION / 100000) +
         "." + std::to_string(BOOST_VERSION / 100 % 1000) + ")";
}

}  // namespace profmatch
