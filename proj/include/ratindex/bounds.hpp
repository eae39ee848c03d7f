#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ratindex {

using BigInt = boost::multiprecision::cpp_int;

enum class BoundClass {
  Linear,                 // c·n²
  Dimension,              // c·(|N|n²)^d
  Oscillation,            // c·|N|^{2k}·n^{4k}
  Superlinear,            // c·n⁴
  Ultralinear,            // c·n^{2k}
  UltralinearDimension,   // c·(|N|n²)^k, the dimension route for the same k
};

struct BoundFormula {
  BoundClass kind = BoundClass::Linear;
  std::uint64_t nonterminals = 1;  // |N|
  unsigned k = 1;
  unsigned d = 1;
  std::uint64_t constant = 1;       // calibration constant c
};

BoundClass parse_bound_class(std::string_view name);
const char* bound_class_name(BoundClass c);

/// Exact value of the formula at n.
BigInt bound_value(const BoundFormula& f, std::uint64_t n);

/// Least-squares slope of log(value) against log(n). Needs at least four
/// points, positive values, and two distinct n; otherwise throws
/// ErrorCode::DegenerateInput.
double fit_growth(const std::vector<std::pair<double, double>>& points);

}  // namespace ratindex
