#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ffdist/geometry.hpp"

namespace ffdist {

/// Exact multiplicities r(u) = #{(x,y) in X x Y : ||x-y||_s = u}, indexed
/// densely by value code. sum_u r(u) = |X||Y|; the support is the distance
/// set; the second moment is the quadruple count Q.
struct DistanceSpectrum {
  Space space;
  std::vector<std::int64_t> counts;  // size q
  std::int64_t nX = 0;
  std::int64_t nY = 0;

  std::int64_t total() const;
  std::int64_t support_size() const;
  std::int64_t second_moment() const;
};

/// Direct O(|X||Y|) enumeration. The exact oracle every other spectrum path
/// must match bit for bit.
DistanceSpectrum spectrum_naive(const PointSet& X, const PointSet& Y, const NormSpec& n);

/// Transform-accelerated spectrum: the difference multiset via the additive
/// group DFT of (Z_p)^{k*d}, binned by sphere. Identical to spectrum_naive on
/// every input; rounded transform values farther than 0.25 from an integer
/// raise internal_error. Needs dense q^d tables (capacity-guarded).
DistanceSpectrum spectrum_fft(const PointSet& X, const PointSet& Y, const NormSpec& n);

/// Q = sum_u r(u)^2: ordered quadruples (x,y,x',y') with ||x-y|| = ||x'-y'||.
std::int64_t quadruple_count(const DistanceSpectrum& spec);

/// T = #{(x,y,y') in X x Y x Y : ||x-y|| = ||x-y'||}, via per-apex
/// q-bucket histograms in O(|X||Y| + |X|q).
std::int64_t triple_count(const PointSet& X, const PointSet& Y, const NormSpec& n);

struct UnionTriples {
  PointSet Z;
  std::int64_t tprime = 0;
};

/// Z = X u Y and T' = #{(a,b,c) in Z^3 : ||a-b|| = ||a-c||}.
UnionTriples union_triple_count(const PointSet& X, const PointSet& Y, const NormSpec& n);

/// Exact reduced fraction with a double view for reporting.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational reduced(std::int64_t num, std::int64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Every counting quantity of the isosceles-chain argument, with the exact
/// inequalities asserted:
///   delta * Q >= |X|^2 |Y|^2,  Q <= |X| * T,  T <= T'.
/// The measured ratio T' / (|Z|^3/p + p^(2/3)|Z|^(5/3) + p^(1/4)|Z|^2) is
/// reported, never asserted against a constant, and only in the prime-field
/// usual-distance configuration (k = 1, s = 2, a = 1).
struct ChainReport {
  std::int64_t nX = 0, nY = 0, nZ = 0;
  std::int64_t delta = 0;   // |Delta(X,Y)|
  std::int64_t Q = 0;
  std::int64_t T = 0;
  std::int64_t Tprime = 0;
  Rational cs_lower;        // |X|^2 |Y|^2 / Q  (0/1 when Q = 0)
  std::optional<double> pham_rhs;
  std::optional<double> pham_ratio;
};

ChainReport chain_report(const PointSet& X, const PointSet& Y, const NormSpec& n);

}  // namespace ffdist
