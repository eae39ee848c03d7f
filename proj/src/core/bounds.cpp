#include "ratindex/bounds.hpp"

#include <cmath>

#include "ratindex/error.hpp"

namespace ratindex {

BoundClass parse_bound_class(std::string_view name) {
  if (name == "linear") return BoundClass::Linear;
  if (name == "dimension") return BoundClass::Dimension;
  if (name == "oscillation") return BoundClass::Oscillation;
  if (name == "superlinear") return BoundClass::Superlinear;
  if (name == "ultralinear") return BoundClass::Ultralinear;
  if (name == "ultralinear-dimension") return BoundClass::UltralinearDimension;
  throw Error(ErrorCode::InvalidArgument, "unknown bound class '" + std::string(name) + "'");
}

const char* bound_class_name(BoundClass c) {
  switch (c) {
    case BoundClass::Linear: return "linear";
    case BoundClass::Dimension: return "dimension";
    case BoundClass::Oscillation: return "oscillation";
    case BoundClass::Superlinear: return "superlinear";
    case BoundClass::Ultralinear: return "ultralinear";
    case BoundClass::UltralinearDimension: return "ultralinear-dimension";
  }
  return "?";
}

BigInt bound_value(const BoundFormula& f, std::uint64_t n) {
  using boost::multiprecision::pow;
  const BigInt bn = n;
  const BigInt nt = f.nonterminals;
  BigInt v;
  switch (f.kind) {
    case BoundClass::Linear: v = bn * bn; break;
    case BoundClass::Dimension: v = pow(BigInt(nt * bn * bn), f.d); break;
    case BoundClass::Oscillation: v = pow(nt, 2 * f.k) * pow(bn, 4 * f.k); break;
    case BoundClass::Superlinear: v = pow(bn, 4); break;
    case BoundClass::Ultralinear: v = pow(bn, 2 * f.k); break;
    case BoundClass::UltralinearDimension: v = pow(BigInt(nt * bn * bn), f.k); break;
  }
  return v * f.constant;
}

double fit_growth(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 4) throw Error(ErrorCode::DegenerateInput, "need at least 4 points");
  double sx = 0, sy = 0;
  for (auto [n, v] : points) {
    if (!(n > 0) || !(v > 0)) throw Error(ErrorCode::DegenerateInput, "n and value must be positive");
    sx += std::log(n);
    sy += std::log(v);
  }
  const double m = static_cast<double>(points.size());
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (auto [n, v] : points) {
    double dx = std::log(n) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(v) - my);
  }
  if (sxx == 0) throw Error(ErrorCode::DegenerateInput, "all points share the same n");
  return sxy / sxx;
}

}  // namespace ratindex
