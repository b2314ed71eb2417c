#pragma once

// Shared fixtures for the unit suites.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <unordered_set>
#include <vector>

#include "ffdist/counting.hpp"
#include "ffdist/field.hpp"
#include "ffdist/geometry.hpp"
#include "ffdist/rng.hpp"

namespace tt {

using namespace ffdist;

inline FieldPtr F9() {
  static FieldPtr f = Field::extension(3, 2, std::array<std::uint16_t, 3>{1, 0, 1});
  return f;
}
inline FieldPtr F25() {
  static FieldPtr f = Field::extension(5, 2, std::array<std::uint16_t, 3>{1, 1, 1});
  return f;
}
inline FieldPtr F27() {
  static FieldPtr f = Field::extension(3, 3, std::array<std::uint16_t, 4>{1, 2, 0, 1});
  return f;
}
inline FieldPtr F49() {
  static FieldPtr f = Field::extension(7, 2, std::array<std::uint16_t, 3>{1, 0, 1});
  return f;
}
inline FieldPtr F81() {
  static FieldPtr f = Field::extension(3, 4, std::array<std::uint16_t, 5>{2, 1, 0, 0, 1});
  return f;
}

inline Point pt(const Space& sp, std::initializer_list<int> coords) {
  std::vector<Fe> v;
  for (int c : coords) v.push_back(sp.field->from_int(c));
  return Point(sp, std::move(v));
}

inline PointSet mkset(const Space& sp, std::initializer_list<std::initializer_list<int>> pts) {
  std::vector<std::uint64_t> codes;
  for (auto c : pts) codes.push_back(pt(sp, c).code());
  return PointSet(sp, std::move(codes));
}

inline PairSet mkpairs(const Space& sp,
                       std::initializer_list<std::pair<std::initializer_list<int>,
                                                       std::initializer_list<int>>> pairs) {
  std::vector<std::uint64_t> codes;
  for (const auto& [x, y] : pairs)
    codes.push_back(pt(sp, x).code() * sp.points + pt(sp, y).code());
  return PairSet(sp, std::move(codes));
}

inline std::vector<std::uint64_t> random_codes(std::uint64_t cap, std::uint64_t n,
                                               SplitMix64& rng) {
  std::unordered_set<std::uint64_t> chosen;
  std::vector<std::uint64_t> out;
  while (out.size() < n) {
    const std::uint64_t c = rng.below(cap);
    if (chosen.insert(c).second) out.push_back(c);
  }
  return out;
}

inline PointSet random_point_set(const Space& sp, std::uint64_t n, SplitMix64& rng) {
  return PointSet(sp, random_codes(sp.points, n, rng));
}

inline PairSet random_pair_set(const Space& sp, std::uint64_t n, SplitMix64& rng) {
  return PairSet(sp, random_codes(sp.points * sp.points, n, rng));
}

inline std::vector<Point> materialize(const PointSet& X) {
  std::vector<Point> pts;
  pts.reserve(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) pts.push_back(X.point(i));
  return pts;
}

}  // namespace tt
