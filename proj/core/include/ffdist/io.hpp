#pragma once

#include <iosfwd>
#include <string>

#include "ffdist/geometry.hpp"

namespace ffdist {

// Point-set / pair-set file format (ffdist-v1):
//   line 1:  ffdist-v1
//   line 2:  p=<p> k=<k> d=<d> s=<s> a=<a1>,...,<ad>
//   line 3:  modulus=<c0>:<c1>:...:<ck>        (present iff k > 1)
//   then one point per line: d elements separated by spaces; pair sets use
//   2d elements per line. Elements use the textual encoding of field_core.
//   Lines starting with '#' are comments.

struct LoadedPointSet {
  NormSpec norm;
  PointSet set;
};

struct LoadedPairSet {
  NormSpec norm;
  PairSet set;
};

LoadedPointSet load_point_set(std::istream& in);
LoadedPairSet load_pair_set(std::istream& in);

void save_point_set(std::ostream& out, const PointSet& X, const NormSpec& n);
void save_pair_set(std::ostream& out, const PairSet& E, const NormSpec& n);

// Convenience wrappers that surface the path in error messages.
LoadedPointSet load_point_set_file(const std::string& path);
LoadedPairSet load_pair_set_file(const std::string& path);
void save_point_set_file(const std::string& path, const PointSet& X, const NormSpec& n);
void save_pair_set_file(const std::string& path, const PairSet& E, const NormSpec& n);

}  // namespace ffdist
