#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

#include "ffdist/counting.hpp"
#include "ffdist/geometry.hpp"

namespace ffdist {

/// Split of a pair set's fibers at a size threshold tau: heavy base points
/// are those with |E_y| > tau. Carries the pigeonhole lower bound
/// max(0, ceil((|E| - tau q^d) / q^d)), which |heavy| always meets.
struct HeavyFiberDecomposition {
  std::int64_t tau = 0;
  PointSet heavy;
  std::map<std::uint64_t, std::int64_t> fiber_sizes;  // nonempty fibers only
  std::int64_t pigeonhole_lower_bound = 0;
};

HeavyFiberDecomposition heavy_fibers(const PairSet& E, std::int64_t tau);

/// floor((C/2) * q^((d+1)/2)), the heavy-fiber threshold for constant C > 0.
/// Computed as the floor of a real power.
std::int64_t default_tau(std::uint64_t q, int d, double C);

/// One certified slice of the two-parameter distance set: a heavy witness
/// pair (z,t) at distance u together with every value of Delta^s(E_z, E_t).
struct CertificateEntry {
  Fe u;
  std::uint64_t z_code = 0;
  std::uint64_t t_code = 0;
  std::vector<Fe> values_v;  // sorted by code
};

/// A verified subset of the two-parameter distance set, built by the
/// heavy-fiber construction. Records enough provenance (space, |E|, a
/// content hash, tau) to refuse mismatched verification requests.
struct Certificate {
  Space space;
  int s = 2;
  std::int64_t tau = 0;
  bool exhaustive = false;
  std::uint64_t e_size = 0;
  std::uint64_t e_hash = 0;
  std::vector<CertificateEntry> entries;  // sorted by u code; distinct u

  /// All certified (v, u) pairs, sorted.
  std::vector<std::pair<Fe, Fe>> certified_pairs() const;

  std::int64_t certified_count() const;

  /// min over entries of |values_v|; reported so the uniformity the argument
  /// leans on is measured rather than assumed. -1 when empty.
  std::int64_t min_values_size() const;
};

/// Runs the heavy-fiber construction. For each attained heavy-heavy distance
/// u the witness pair is the lexicographically smallest (z,t) in mixed-radix
/// point order, so output is deterministic. With exhaustive = true, values_v
/// unions Delta^s(E_z, E_t) over every heavy pair realizing u instead of the
/// single chosen witness.
Certificate certify(const PairSet& E, const NormSpec& n, std::int64_t tau,
                    bool exhaustive = false);

/// Re-derives every entry from E and throws internal_error on any mismatch:
/// heavy membership of (z,t), ||z-t||_s = u, values_v = Delta^s(E_z, E_t),
/// and an explicit witness (x,y) for each certified value.
void verify_certificate(const Certificate& cert, const PairSet& E, const NormSpec& n);

/// |certified_pairs| / |Delta_{d,d}^s(E)| in [0,1]; denominator by direct
/// enumeration. Usage error when the certificate was not produced from E.
Rational coverage_ratio(const Certificate& cert, const PairSet& E, const NormSpec& n);

/// Line-oriented text form: one entry per line, "u  z  t  v-list" with the
/// textual element encoding, prefixed by '#' header comments.
void serialize(const Certificate& cert, std::ostream& out);

}  // namespace ffdist
