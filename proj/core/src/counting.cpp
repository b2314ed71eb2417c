#include "ffdist/counting.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "internal.hpp"

namespace ffdist {
namespace {

void check_same_space(const Space& a, const Space& b, const char* what) {
  if (!a.same_as(b)) throw usage_error(std::string(what) + ": ambient spaces differ");
}

std::int64_t checked_i64(unsigned __int128 v, const char* what) {
  if (v > static_cast<unsigned __int128>(INT64_MAX))
    throw capacity_error(std::string(what) + " exceeds the 64-bit exact-integer range");
  return static_cast<std::int64_t>(v);
}

}  // namespace

// ---------------------------------------------------------------------------
// DistanceSpectrum

std::int64_t DistanceSpectrum::total() const {
  std::int64_t t = 0;
  for (std::int64_t c : counts) t += c;
  return t;
}

std::int64_t DistanceSpectrum::support_size() const {
  std::int64_t s = 0;
  for (std::int64_t c : counts) s += (c > 0);
  return s;
}

std::int64_t DistanceSpectrum::second_moment() const {
  unsigned __int128 acc = 0;
  for (std::int64_t c : counts)
    acc += static_cast<unsigned __int128>(c) * static_cast<unsigned __int128>(c);
  return checked_i64(acc, "spectrum second moment");
}

// ---------------------------------------------------------------------------
// spectra

DistanceSpectrum spectrum_naive(const PointSet& X, const PointSet& Y, const NormSpec& n) {
  check_same_space(X.space(), n.space, "spectrum_naive");
  check_same_space(Y.space(), n.space, "spectrum_naive");
  DistanceSpectrum spec{n.space, std::vector<std::int64_t>(n.space.field->q(), 0),
                        static_cast<std::int64_t>(X.size()), static_cast<std::int64_t>(Y.size())};
  if (X.empty() || Y.empty()) return spec;

  const detail::NormKernel kernel(n);
  detail::DigitMatrix dx(X.space(), X.codes());
  detail::DigitMatrix dy(Y.space(), Y.codes());
  for (std::size_t i = 0; i < X.size(); ++i) {
    const std::uint16_t* xi = dx.row(i);
    for (std::size_t j = 0; j < Y.size(); ++j) ++spec.counts[kernel(xi, dy.row(j))];
  }
  return spec;
}

namespace {

// In-place DFT over (Z_p)^m on a p^m grid, one naive length-p pass per axis.
// sign = -1 forward, +1 inverse (inverse does NOT divide by the grid size).
void group_dft(std::vector<std::complex<double>>& data, std::uint32_t p, int m, int sign) {
  std::vector<std::complex<double>> twiddle(static_cast<std::size_t>(p) * p);
  for (std::uint32_t a = 0; a < p; ++a)
    for (std::uint32_t b = 0; b < p; ++b)
      twiddle[static_cast<std::size_t>(a) * p + b] =
          std::polar(1.0, sign * 2.0 * std::numbers::pi * (static_cast<double>(a) * b) / p);

  std::vector<std::complex<double>> line(p), out(p);
  std::uint64_t stride = 1;
  for (int axis = 0; axis < m; ++axis) {
    const std::uint64_t block = stride * p;
    for (std::uint64_t base = 0; base < data.size(); base += block) {
      for (std::uint64_t off = 0; off < stride; ++off) {
        for (std::uint32_t t = 0; t < p; ++t) line[t] = data[base + off + t * stride];
        for (std::uint32_t t = 0; t < p; ++t) {
          std::complex<double> acc = 0;
          for (std::uint32_t j = 0; j < p; ++j)
            acc += line[j] * twiddle[static_cast<std::size_t>(t) * p + j];
          out[t] = acc;
        }
        for (std::uint32_t t = 0; t < p; ++t) data[base + off + t * stride] = out[t];
      }
    }
    stride = block;
  }
}

}  // namespace

DistanceSpectrum spectrum_fft(const PointSet& X, const PointSet& Y, const NormSpec& n) {
  check_same_space(X.space(), n.space, "spectrum_fft");
  check_same_space(Y.space(), n.space, "spectrum_fft");
  const Space& sp = n.space;
  if (sp.points > kDenseCellCap)
    throw capacity_error("spectrum_fft needs dense q^d tables; q^d = " + std::to_string(sp.points) +
                         " exceeds the cap " + std::to_string(kDenseCellCap));

  DistanceSpectrum spec{sp, std::vector<std::int64_t>(sp.field->q(), 0),
                        static_cast<std::int64_t>(X.size()), static_cast<std::int64_t>(Y.size())};
  if (X.empty() || Y.empty()) return spec;

  const std::uint32_t p = sp.field->p();
  const int m = sp.field->k() * sp.dim;
  const std::uint64_t cells = sp.points;

  std::vector<std::complex<double>> fa(cells), fb(cells);
  for (std::uint64_t c : X.codes()) fa[c] = 1.0;
  for (std::uint64_t c : Y.codes()) fb[c] = 1.0;

  group_dft(fa, p, m, -1);
  group_dft(fb, p, m, -1);
  for (std::uint64_t i = 0; i < cells; ++i) fa[i] *= std::conj(fb[i]);
  group_dft(fa, p, m, +1);

  // c(w) = #{(x,y) : x - y = w}; bin by the norm level set of w.
  const std::vector<std::uint32_t> table = norm_table(n);
  const double scale = 1.0 / static_cast<double>(cells);
  for (std::uint64_t w = 0; w < cells; ++w) {
    const double value = fa[w].real() * scale;
    const double rounded = std::nearbyint(value);
    if (std::abs(value - rounded) > 0.25)
      throw internal_error("transform bin " + std::to_string(w) + " rounded by " +
                           std::to_string(std::abs(value - rounded)) + " (> 0.25)");
    spec.counts[table[w]] += static_cast<std::int64_t>(rounded);
  }
  return spec;
}

// ---------------------------------------------------------------------------
// moments and triples

std::int64_t quadruple_count(const DistanceSpectrum& spec) { return spec.second_moment(); }

namespace {

// sum over apexes of sum_u hist(u)^2, histogramming norms from each apex row
// of A against every row of B.
std::int64_t apex_isosceles_sum(const detail::DigitMatrix& da, const detail::DigitMatrix& db,
                                std::size_t na, std::size_t nb, const detail::NormKernel& kernel) {
  std::vector<std::int64_t> hist(kernel.q(), 0);
  std::vector<std::uint32_t> touched;
  touched.reserve(std::min<std::size_t>(nb, kernel.q()));
  unsigned __int128 acc = 0;
  for (std::size_t i = 0; i < na; ++i) {
    const std::uint16_t* ai = da.row(i);
    touched.clear();
    for (std::size_t j = 0; j < nb; ++j) {
      const std::uint32_t u = kernel(ai, db.row(j));
      if (hist[u]++ == 0) touched.push_back(u);
    }
    for (std::uint32_t u : touched) {
      acc += static_cast<unsigned __int128>(hist[u]) * static_cast<unsigned __int128>(hist[u]);
      hist[u] = 0;
    }
  }
  return checked_i64(acc, "isosceles triple count");
}

}  // namespace

std::int64_t triple_count(const PointSet& X, const PointSet& Y, const NormSpec& n) {
  check_same_space(X.space(), n.space, "triple_count");
  check_same_space(Y.space(), n.space, "triple_count");
  if (X.empty() || Y.empty()) return 0;
  const detail::NormKernel kernel(n);
  detail::DigitMatrix dx(X.space(), X.codes());
  detail::DigitMatrix dy(Y.space(), Y.codes());
  return apex_isosceles_sum(dx, dy, X.size(), Y.size(), kernel);
}

UnionTriples union_triple_count(const PointSet& X, const PointSet& Y, const NormSpec& n) {
  check_same_space(X.space(), n.space, "union_triple_count");
  check_same_space(Y.space(), n.space, "union_triple_count");
  UnionTriples out{set_union(X, Y), 0};
  if (out.Z.empty()) return out;
  const detail::NormKernel kernel(n);
  detail::DigitMatrix dz(out.Z.space(), out.Z.codes());
  out.tprime = apex_isosceles_sum(dz, dz, out.Z.size(), out.Z.size(), kernel);
  return out;
}

// ---------------------------------------------------------------------------
// the chain

Rational Rational::reduced(std::int64_t num, std::int64_t den) {
  if (den == 0) throw usage_error("rational with zero denominator");
  const std::int64_t g = std::gcd(num, den);
  if (g != 0) return {num / g, den / g};
  return {0, 1};
}

ChainReport chain_report(const PointSet& X, const PointSet& Y, const NormSpec& n) {
  ChainReport r;
  const DistanceSpectrum spec = spectrum_naive(X, Y, n);
  r.nX = spec.nX;
  r.nY = spec.nY;
  r.delta = spec.support_size();
  r.Q = quadruple_count(spec);
  r.T = triple_count(X, Y, n);
  const UnionTriples ut = union_triple_count(X, Y, n);
  r.nZ = static_cast<std::int64_t>(ut.Z.size());
  r.Tprime = ut.tprime;

  // |X|^2 |Y|^2 as a 128-bit product; also the Cauchy-Schwarz left side.
  const unsigned __int128 nx = static_cast<unsigned __int128>(r.nX);
  const unsigned __int128 ny = static_cast<unsigned __int128>(r.nY);
  const unsigned __int128 lhs = nx * nx * ny * ny;
  if (static_cast<unsigned __int128>(r.delta) * static_cast<unsigned __int128>(r.Q) < lhs)
    throw internal_error("chain violation: delta * Q < |X|^2 |Y|^2");
  if (static_cast<unsigned __int128>(r.Q) > nx * static_cast<unsigned __int128>(r.T))
    throw internal_error("chain violation: Q > |X| * T");
  if (r.T > r.Tprime) throw internal_error("chain violation: T > T'");

  if (r.Q > 0)
    r.cs_lower = Rational::reduced(checked_i64(lhs, "|X|^2 |Y|^2"), r.Q);
  else
    r.cs_lower = {0, 1};

  const bool usual_prime = n.space.field->k() == 1 && n.s == 2 && n.space.dim == 2 &&
                           std::all_of(n.a.begin(), n.a.end(),
                                       [&](const Fe& ai) { return ai == n.space.field->one(); });
  if (usual_prime) {
    const double p = static_cast<double>(n.space.field->p());
    const double z = static_cast<double>(r.nZ);
    const double rhs =
        z * z * z / p + std::pow(p, 2.0 / 3.0) * std::pow(z, 5.0 / 3.0) + std::pow(p, 0.25) * z * z;
    r.pham_rhs = rhs;
    if (rhs > 0) r.pham_ratio = static_cast<double>(r.Tprime) / rhs;
  }
  return r;
}

}  // namespace ffdist
