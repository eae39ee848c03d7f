#include <doctest.h>

#include <cmath>

#include "ratindex/bounds.hpp"
#include "ratindex/error.hpp"

using namespace ratindex;

TEST_CASE("known values") {
  CHECK(bound_value({BoundClass::Linear}, 10) == 100);
  CHECK(bound_value({BoundClass::Dimension, 3, 1, 2}, 2) == 144);
  CHECK(bound_value({BoundClass::Oscillation, 2, 1}, 3) == 324);
  CHECK(bound_value({BoundClass::Superlinear}, 3) == 81);
  CHECK(bound_value({BoundClass::Ultralinear, 5, 3}, 2) == 64);
  CHECK(bound_value({BoundClass::UltralinearDimension, 2, 2}, 3) == 324);
  BoundFormula scaled{BoundClass::Linear};
  scaled.constant = 7;
  CHECK(bound_value(scaled, 3) == 63);
}

TEST_CASE("big values do not overflow") {
  BigInt v = bound_value({BoundClass::Oscillation, 10, 5}, 1000);
  // 10^10 * 1000^20 = 10^70
  BigInt expect = 1;
  for (int i = 0; i < 70; ++i) expect *= 10;
  CHECK(v == expect);
}

TEST_CASE("class names round trip") {
  for (auto c : {BoundClass::Linear, BoundClass::Dimension, BoundClass::Oscillation, BoundClass::Superlinear,
                 BoundClass::Ultralinear, BoundClass::UltralinearDimension})
    CHECK(parse_bound_class(bound_class_name(c)) == c);
  CHECK_THROWS_AS(parse_bound_class("cubic"), Error);
}

TEST_CASE("growth fit on synthetic data") {
  std::vector<std::pair<double, double>> sq, quart;
  for (double n = 2; n <= 40; n += 3) {
    sq.emplace_back(n, n * n);
    quart.emplace_back(n, 5 * std::pow(n, 4));
  }
  CHECK(std::abs(fit_growth(sq) - 2.0) < 1e-9);
  CHECK(std::abs(fit_growth(quart) - 4.0) < 1e-9);
}

TEST_CASE("degenerate inputs") {
  auto code = [](std::vector<std::pair<double, double>> pts) {
    try {
      fit_growth(pts);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Internal;
  };
  CHECK(code({{1, 1}, {2, 4}, {3, 9}}) == ErrorCode::DegenerateInput);
  CHECK(code({{1, 1}, {2, 4}, {3, 0}, {4, 16}}) == ErrorCode::DegenerateInput);
  CHECK(code({{2, 1}, {2, 4}, {2, 3}, {2, 16}}) == ErrorCode::DegenerateInput);
}
