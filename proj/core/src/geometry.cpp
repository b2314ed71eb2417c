#include "ffdist/geometry.hpp"

#include <algorithm>

#include "internal.hpp"

namespace ffdist {
namespace {

void check_same_space(const Space& a, const Space& b, const char* what) {
  if (!a.same_as(b)) throw usage_error(std::string(what) + ": ambient spaces differ");
}

}  // namespace

// ---------------------------------------------------------------------------
// Space

Space::Space(FieldPtr f, int d) : field(std::move(f)), dim(d) {
  if (!field) throw usage_error("Space requires a field");
  if (dim < 1) throw usage_error("Space dimension must be >= 1");
  points = 1;
  const std::uint64_t q = field->q();
  for (int i = 0; i < dim; ++i) {
    if (points > (std::uint64_t{1} << 62) / q)
      throw capacity_error("q^d exceeds the supported point-code range");
    points *= q;
  }
}

bool Space::same_as(const Space& o) const noexcept {
  return dim == o.dim && field && o.field && field->same_as(*o.field);
}

// ---------------------------------------------------------------------------
// Point

Point::Point(Space sp, std::vector<Fe> coords) : sp_(std::move(sp)), c_(std::move(coords)) {
  if (c_.size() != static_cast<std::size_t>(sp_.dim))
    throw usage_error("point has wrong number of coordinates");
  for (const Fe& e : c_) {
    if (!e.attached() || !e.field()->same_as(*sp_.field))
      throw usage_error("point coordinate belongs to a different field");
  }
}

Point Point::from_code(const Space& sp, std::uint64_t code) {
  if (code >= sp.points) throw usage_error("point code out of range [0, q^d)");
  std::vector<Fe> coords;
  coords.reserve(static_cast<std::size_t>(sp.dim));
  const std::uint64_t q = sp.field->q();
  for (int i = 0; i < sp.dim; ++i) {
    coords.push_back(sp.field->element(static_cast<std::uint32_t>(code % q)));
    code /= q;
  }
  return Point(sp, std::move(coords));
}

std::uint64_t Point::code() const noexcept {
  const std::uint64_t q = sp_.field->q();
  std::uint64_t r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = r * q + c_[i].code();
  return r;
}

bool operator==(const Point& a, const Point& b) noexcept {
  return a.sp_.same_as(b.sp_) && a.c_ == b.c_;
}

// ---------------------------------------------------------------------------
// PointSet

PointSet::PointSet(Space sp) : sp_(std::move(sp)) {}

PointSet::PointSet(Space sp, std::vector<std::uint64_t> codes)
    : sp_(std::move(sp)), codes_(std::move(codes)) {
  for (std::uint64_t c : codes_)
    if (c >= sp_.points) throw usage_error("point code out of range [0, q^d)");
  std::sort(codes_.begin(), codes_.end());
  codes_.erase(std::unique(codes_.begin(), codes_.end()), codes_.end());
}

PointSet PointSet::from_points(const Space& sp, std::span<const Point> pts) {
  std::vector<std::uint64_t> codes;
  codes.reserve(pts.size());
  for (const Point& pt : pts) {
    check_same_space(sp, pt.space(), "PointSet::from_points");
    codes.push_back(pt.code());
  }
  return PointSet(sp, std::move(codes));
}

PointSet PointSet::full_space(const Space& sp) {
  if (sp.points > kDenseCellCap)
    throw capacity_error("full space has " + std::to_string(sp.points) +
                         " points; dense cap is " + std::to_string(kDenseCellCap));
  std::vector<std::uint64_t> codes(sp.points);
  for (std::uint64_t i = 0; i < sp.points; ++i) codes[i] = i;
  return PointSet(sp, std::move(codes));
}

bool PointSet::contains(std::uint64_t code) const noexcept {
  return std::binary_search(codes_.begin(), codes_.end(), code);
}

Point PointSet::point(std::size_t i) const {
  return Point::from_code(sp_, codes_.at(i));
}

std::vector<std::uint8_t> PointSet::indicator() const {
  if (sp_.points > kDenseCellCap)
    throw capacity_error("indicator over q^d = " + std::to_string(sp_.points) +
                         " cells exceeds the dense cap " + std::to_string(kDenseCellCap));
  std::vector<std::uint8_t> ind(sp_.points, 0);
  for (std::uint64_t c : codes_) ind[c] = 1;
  return ind;
}

PointSet set_union(const PointSet& a, const PointSet& b) {
  check_same_space(a.space(), b.space(), "set_union");
  std::vector<std::uint64_t> merged;
  merged.reserve(a.size() + b.size());
  std::merge(a.codes().begin(), a.codes().end(), b.codes().begin(), b.codes().end(),
             std::back_inserter(merged));
  return PointSet(a.space(), std::move(merged));
}

// ---------------------------------------------------------------------------
// PairSet

namespace {
void check_pair_capacity(const Space& sp) {
  if (sp.points >= (std::uint64_t{1} << 31))
    throw capacity_error("pair sets require q^d < 2^31 so pair codes fit 64 bits");
}
}  // namespace

PairSet::PairSet(Space sp) : sp_(std::move(sp)) { check_pair_capacity(sp_); }

PairSet::PairSet(Space sp, std::vector<std::uint64_t> pair_codes)
    : sp_(std::move(sp)), codes_(std::move(pair_codes)) {
  check_pair_capacity(sp_);
  const std::uint64_t cap = sp_.points * sp_.points;
  for (std::uint64_t c : codes_)
    if (c >= cap) throw usage_error("pair code out of range [0, q^2d)");
  std::sort(codes_.begin(), codes_.end());
  codes_.erase(std::unique(codes_.begin(), codes_.end()), codes_.end());
}

PairSet PairSet::from_codes(const Space& sp,
                            std::span<const std::pair<std::uint64_t, std::uint64_t>> xy) {
  check_pair_capacity(sp);
  std::vector<std::uint64_t> codes;
  codes.reserve(xy.size());
  for (auto [x, y] : xy) {
    if (x >= sp.points || y >= sp.points) throw usage_error("pair component out of range [0, q^d)");
    codes.push_back(x * sp.points + y);
  }
  return PairSet(sp, std::move(codes));
}

std::pair<std::uint64_t, std::uint64_t> PairSet::xy(std::size_t i) const {
  const std::uint64_t c = codes_.at(i);
  return {c / sp_.points, c % sp_.points};
}

bool PairSet::contains(std::uint64_t x_code, std::uint64_t y_code) const noexcept {
  if (x_code >= sp_.points || y_code >= sp_.points) return false;
  return std::binary_search(codes_.begin(), codes_.end(), x_code * sp_.points + y_code);
}

std::uint64_t PairSet::content_hash() const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint64_t c : codes_) {
    for (int i = 0; i < 8; ++i) {
      h ^= (c >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// NormSpec

NormSpec::NormSpec(Space sp, int s_exp, std::vector<Fe> coeffs)
    : space(std::move(sp)), s(s_exp), a(std::move(coeffs)) {
  if (s < 2) throw usage_error("norm exponent s must be >= 2");
  if (a.size() != static_cast<std::size_t>(space.dim))
    throw usage_error("norm needs exactly d coefficients");
  for (const Fe& ai : a) {
    if (!ai.attached() || !ai.field()->same_as(*space.field))
      throw usage_error("norm coefficient belongs to a different field");
    if (ai.is_zero()) throw usage_error("norm coefficients must be nonzero");
  }
}

NormSpec NormSpec::usual(const Space& sp) {
  std::vector<Fe> ones(static_cast<std::size_t>(sp.dim), sp.field->one());
  return NormSpec(sp, 2, std::move(ones));
}

// ---------------------------------------------------------------------------
// norm and bulk tables

Fe norm(const Point& x, const Point& y, const NormSpec& n) {
  check_same_space(x.space(), n.space, "norm");
  check_same_space(y.space(), n.space, "norm");
  const Field& f = *n.space.field;
  Fe acc = f.zero();
  for (int i = 0; i < n.space.dim; ++i)
    acc = acc + n.a[static_cast<std::size_t>(i)] * (x[i] - y[i]).pow(static_cast<std::uint64_t>(n.s));
  return acc;
}

std::vector<std::uint32_t> norm_table(const NormSpec& n) {
  const Space& sp = n.space;
  if (sp.points > kDenseCellCap)
    throw capacity_error("norm table over q^d = " + std::to_string(sp.points) +
                         " cells exceeds the dense cap " + std::to_string(kDenseCellCap));
  const Field& f = *sp.field;
  const std::uint32_t q = f.q();

  // per-axis contribution a_i * w^s for every element value w
  std::vector<std::vector<Fe>> g(static_cast<std::size_t>(sp.dim));
  for (int i = 0; i < sp.dim; ++i) {
    auto& gi = g[static_cast<std::size_t>(i)];
    gi.reserve(q);
    for (std::uint32_t w = 0; w < q; ++w)
      gi.push_back(n.a[static_cast<std::size_t>(i)] * f.element(w).pow(static_cast<std::uint64_t>(n.s)));
  }

  std::vector<std::uint32_t> table(sp.points);
  for (std::uint64_t code = 0; code < sp.points; ++code) {
    std::uint64_t c = code;
    Fe acc = f.zero();
    for (int i = 0; i < sp.dim; ++i) {
      acc = acc + g[static_cast<std::size_t>(i)][static_cast<std::size_t>(c % q)];
      c /= q;
    }
    table[code] = acc.code();
  }
  return table;
}

std::vector<Fe> distance_set(const PointSet& X, const PointSet& Y, const NormSpec& n) {
  check_same_space(X.space(), n.space, "distance_set");
  check_same_space(Y.space(), n.space, "distance_set");
  const Field& f = *n.space.field;
  const std::uint32_t q = f.q();

  if (X.empty() || Y.empty()) return {};

  const detail::NormKernel kernel(n);
  detail::DigitMatrix dx(X.space(), X.codes());
  detail::DigitMatrix dy(Y.space(), Y.codes());
  std::vector<std::uint8_t> seen(q, 0);
  for (std::size_t i = 0; i < X.size(); ++i) {
    const std::uint16_t* xi = dx.row(i);
    for (std::size_t j = 0; j < Y.size(); ++j) seen[kernel(xi, dy.row(j))] = 1;
  }
  std::vector<Fe> out;
  for (std::uint32_t u = 0; u < q; ++u)
    if (seen[u]) out.push_back(f.element(u));
  return out;
}

std::vector<std::pair<Fe, Fe>> two_param_distance_set(const PairSet& E, const NormSpec& n) {
  check_same_space(E.space(), n.space, "two_param_distance_set");
  const Field& f = *n.space.field;
  const std::uint64_t q = f.q();

  if (E.empty()) return {};

  const detail::NormKernel kernel(n);
  const std::uint64_t N = E.space().points;

  // decode first and second components of every pair once
  std::vector<std::uint64_t> first(E.size()), second(E.size());
  for (std::size_t i = 0; i < E.size(); ++i) {
    first[i] = E.pair_codes()[i] / N;
    second[i] = E.pair_codes()[i] % N;
  }
  detail::DigitMatrix d1(E.space(), first);
  detail::DigitMatrix d2(E.space(), second);

  std::vector<std::uint64_t> seen((q * q + 63) / 64, 0);
  for (std::size_t i = 0; i < E.size(); ++i) {
    const std::uint16_t* xi1 = d1.row(i);
    const std::uint16_t* xi2 = d2.row(i);
    for (std::size_t j = 0; j < E.size(); ++j) {
      const std::uint64_t v = kernel(xi1, d1.row(j));
      const std::uint64_t u = kernel(xi2, d2.row(j));
      const std::uint64_t bit = v * q + u;
      seen[bit >> 6] |= std::uint64_t{1} << (bit & 63);
    }
  }
  std::vector<std::pair<Fe, Fe>> out;
  for (std::uint64_t v = 0; v < q; ++v)
    for (std::uint64_t u = 0; u < q; ++u) {
      const std::uint64_t bit = v * q + u;
      if (seen[bit >> 6] & (std::uint64_t{1} << (bit & 63)))
        out.emplace_back(f.element(static_cast<std::uint32_t>(v)),
                         f.element(static_cast<std::uint32_t>(u)));
    }
  return out;
}

PointSet sphere(const Fe& r, const NormSpec& n) {
  if (!r.attached() || !r.field()->same_as(*n.space.field))
    throw usage_error("sphere radius belongs to a different field");
  const std::vector<std::uint32_t> table = norm_table(n);
  const std::uint32_t rc = r.code();
  std::vector<std::uint64_t> codes;
  for (std::uint64_t w = 0; w < n.space.points; ++w)
    if (table[w] == rc) codes.push_back(w);
  return PointSet(n.space, std::move(codes));
}

std::map<std::uint64_t, PointSet> fibers(const PairSet& E) {
  const std::uint64_t N = E.space().points;
  std::map<std::uint64_t, std::vector<std::uint64_t>> grouped;
  for (std::uint64_t pc : E.pair_codes()) grouped[pc % N].push_back(pc / N);
  std::map<std::uint64_t, PointSet> out;
  for (auto& [y, xs] : grouped) out.emplace(y, PointSet(E.space(), std::move(xs)));
  return out;
}

PointSet translate(const PointSet& X, const Point& c) {
  check_same_space(X.space(), c.space(), "translate");
  const Space& sp = X.space();
  const std::uint64_t q = sp.field->q();
  std::vector<std::uint64_t> codes;
  codes.reserve(X.size());
  for (std::uint64_t code : X.codes()) {
    std::uint64_t shifted = 0, mult = 1, cc = code;
    for (int i = 0; i < sp.dim; ++i) {
      const Fe xi = sp.field->element(static_cast<std::uint32_t>(cc % q));
      shifted += static_cast<std::uint64_t>((xi + c[i]).code()) * mult;
      cc /= q;
      mult *= q;
    }
    codes.push_back(shifted);
  }
  return PointSet(sp, std::move(codes));
}

PointSet scale(const PointSet& X, const Fe& lambda) {
  const Space& sp = X.space();
  if (!lambda.attached() || !lambda.field()->same_as(*sp.field))
    throw usage_error("scale factor belongs to a different field");
  const std::uint64_t q = sp.field->q();
  std::vector<std::uint64_t> codes;
  codes.reserve(X.size());
  for (std::uint64_t code : X.codes()) {
    std::uint64_t scaled = 0, mult = 1, cc = code;
    for (int i = 0; i < sp.dim; ++i) {
      const Fe xi = sp.field->element(static_cast<std::uint32_t>(cc % q));
      scaled += static_cast<std::uint64_t>((xi * lambda).code()) * mult;
      cc /= q;
      mult *= q;
    }
    codes.push_back(scaled);
  }
  return PointSet(sp, std::move(codes));
}

}  // namespace ffdist
