#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "ffdist/field.hpp"

namespace ffdist {

/// Dense tables over F_q^d (indicators, norm tables, transform grids) are
/// refused above this many cells.
inline constexpr std::uint64_t kDenseCellCap = std::uint64_t{1} << 22;

/// Ambient space F_q^d. Point codes are the mixed-radix encoding
/// sum_i code(x_i) * q^i (coordinate 0 least significant), which for
/// extension fields coincides with plain base-p digits over k*d slots.
struct Space {
  FieldPtr field;
  int dim = 0;
  std::uint64_t points = 0;  // q^dim

  Space() = default;
  Space(FieldPtr f, int d);

  bool same_as(const Space& o) const noexcept;
};

/// Point of F_q^d.
class Point {
 public:
  Point(Space sp, std::vector<Fe> coords);
  static Point from_code(const Space& sp, std::uint64_t code);

  const Space& space() const noexcept { return sp_; }
  std::span<const Fe> coords() const noexcept { return c_; }
  const Fe& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  std::uint64_t code() const noexcept;

  friend bool operator==(const Point& a, const Point& b) noexcept;

 private:
  Space sp_;
  std::vector<Fe> c_;
};

/// Duplicate-free set of points, kept as a sorted code list. A dense 0/1
/// indicator over F_q^d is materialized on demand (capacity-guarded).
class PointSet {
 public:
  explicit PointSet(Space sp);  // empty
  PointSet(Space sp, std::vector<std::uint64_t> codes);  // dedups eagerly
  static PointSet from_points(const Space& sp, std::span<const Point> pts);
  static PointSet full_space(const Space& sp);

  const Space& space() const noexcept { return sp_; }
  std::size_t size() const noexcept { return codes_.size(); }
  bool empty() const noexcept { return codes_.empty(); }
  std::span<const std::uint64_t> codes() const noexcept { return codes_; }
  bool contains(std::uint64_t code) const noexcept;
  Point point(std::size_t i) const;

  std::vector<std::uint8_t> indicator() const;

 private:
  Space sp_;
  std::vector<std::uint64_t> codes_;  // sorted, unique
};

PointSet set_union(const PointSet& a, const PointSet& b);

/// Duplicate-free set of ordered pairs of points, kept as sorted codes
/// x*q^d + y. Requires q^d < 2^31 so pair codes fit in 64 bits.
class PairSet {
 public:
  explicit PairSet(Space sp);
  PairSet(Space sp, std::vector<std::uint64_t> pair_codes);
  static PairSet from_codes(const Space& sp,
                            std::span<const std::pair<std::uint64_t, std::uint64_t>> xy);

  const Space& space() const noexcept { return sp_; }
  std::size_t size() const noexcept { return codes_.size(); }
  bool empty() const noexcept { return codes_.empty(); }
  std::span<const std::uint64_t> pair_codes() const noexcept { return codes_; }
  std::pair<std::uint64_t, std::uint64_t> xy(std::size_t i) const;
  bool contains(std::uint64_t x_code, std::uint64_t y_code) const noexcept;

  /// FNV-1a over the sorted pair codes; used as certificate provenance.
  std::uint64_t content_hash() const noexcept;

 private:
  Space sp_;
  std::vector<std::uint64_t> codes_;
};

/// The distance function ||x-y||_s = sum_i a_i (x_i - y_i)^s with every
/// a_i nonzero. s = 2, a = (1,...,1) is the usual distance.
struct NormSpec {
  Space space;
  int s = 2;
  std::vector<Fe> a;

  NormSpec(Space sp, int s_exp, std::vector<Fe> coeffs);
  static NormSpec usual(const Space& sp);
};

Fe norm(const Point& x, const Point& y, const NormSpec& n);

/// Norm value codes for every point of F_q^d against the origin, indexed by
/// point code. Spheres are its level sets; the transform path bins with it.
std::vector<std::uint32_t> norm_table(const NormSpec& n);

/// The attained values { ||x-y||_s : x in X, y in Y }, sorted by code.
std::vector<Fe> distance_set(const PointSet& X, const PointSet& Y, const NormSpec& n);

/// The attained pairs { (||x1-y1||_s, ||x2-y2||_s) } over ordered pairs of
/// elements of E, sorted by (first, second) code.
std::vector<std::pair<Fe, Fe>> two_param_distance_set(const PairSet& E, const NormSpec& n);

/// { w : ||w - 0||_s = r }. Spheres over all r partition F_q^d.
PointSet sphere(const Fe& r, const NormSpec& n);

/// Nonempty fibers E_y = { x : (x,y) in E }, keyed by the base point code y.
std::map<std::uint64_t, PointSet> fibers(const PairSet& E);

PointSet translate(const PointSet& X, const Point& c);
PointSet scale(const PointSet& X, const Fe& lambda);

}  // namespace ffdist
