#include "ffdist/proof_engine.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "internal.hpp"

namespace ffdist {
namespace {

void check_provenance(const Certificate& cert, const PairSet& E, const NormSpec& n) {
  if (!cert.space.same_as(E.space()) || !cert.space.same_as(n.space) || cert.s != n.s ||
      cert.e_size != E.size() || cert.e_hash != E.content_hash())
    throw usage_error("certificate was not produced from this pair set and norm");
}

}  // namespace

HeavyFiberDecomposition heavy_fibers(const PairSet& E, std::int64_t tau) {
  if (tau < 0) throw usage_error("tau must be >= 0");
  const std::uint64_t N = E.space().points;

  std::map<std::uint64_t, std::int64_t> sizes;
  for (std::uint64_t pc : E.pair_codes()) ++sizes[pc % N];

  std::vector<std::uint64_t> heavy_codes;
  for (const auto& [y, sz] : sizes)
    if (sz > tau) heavy_codes.push_back(y);

  HeavyFiberDecomposition dec{tau, PointSet(E.space(), std::move(heavy_codes)), std::move(sizes), 0};

  // |E| <= q^d |heavy| + tau q^d, rearranged; |heavy| must meet the bound.
  const __int128 e = static_cast<__int128>(E.size());
  const __int128 qd = static_cast<__int128>(N);
  const __int128 excess = e - static_cast<__int128>(tau) * qd;
  if (excess > 0) dec.pigeonhole_lower_bound = static_cast<std::int64_t>((excess + qd - 1) / qd);
  if (static_cast<std::int64_t>(dec.heavy.size()) < dec.pigeonhole_lower_bound)
    throw internal_error("heavy set smaller than the pigeonhole bound");
  return dec;
}

std::int64_t default_tau(std::uint64_t q, int d, double C) {
  if (C <= 0) throw usage_error("C must be > 0");
  if (d < 1) throw usage_error("dimension must be >= 1");
  const long double power = std::pow(static_cast<long double>(q),
                                     static_cast<long double>(d + 1) / 2.0L);
  return static_cast<std::int64_t>(std::floor(static_cast<long double>(C) / 2.0L * power));
}

Certificate certify(const PairSet& E, const NormSpec& n, std::int64_t tau, bool exhaustive) {
  if (!E.space().same_as(n.space)) throw usage_error("certify: ambient spaces differ");

  Certificate cert;
  cert.space = E.space();
  cert.s = n.s;
  cert.tau = tau;
  cert.exhaustive = exhaustive;
  cert.e_size = E.size();
  cert.e_hash = E.content_hash();

  const HeavyFiberDecomposition dec = heavy_fibers(E, tau);
  const PointSet& heavy = dec.heavy;
  if (heavy.empty()) return cert;

  const Field& f = *n.space.field;
  const detail::NormKernel kernel(n);
  const detail::DigitMatrix dh(n.space, heavy.codes());

  // First witness per u in lexicographic (z,t) order; heavy codes are sorted,
  // so a row scan visits pairs in exactly that order.
  std::vector<std::pair<std::size_t, std::size_t>> witness(f.q(), {SIZE_MAX, SIZE_MAX});
  std::vector<std::uint32_t> attained;
  for (std::size_t i = 0; i < heavy.size(); ++i)
    for (std::size_t j = 0; j < heavy.size(); ++j) {
      const std::uint32_t u = kernel(dh.row(i), dh.row(j));
      if (witness[u].first == SIZE_MAX) {
        witness[u] = {i, j};
        attained.push_back(u);
      }
    }
  std::sort(attained.begin(), attained.end());

  const std::map<std::uint64_t, PointSet> fib = fibers(E);
  for (const std::uint32_t u : attained) {
    const auto [zi, ti] = witness[u];
    CertificateEntry entry;
    entry.u = f.element(u);
    entry.z_code = heavy.codes()[zi];
    entry.t_code = heavy.codes()[ti];
    if (!exhaustive) {
      entry.values_v = distance_set(fib.at(entry.z_code), fib.at(entry.t_code), n);
    } else {
      std::vector<std::uint8_t> seen(f.q(), 0);
      for (std::size_t i = 0; i < heavy.size(); ++i)
        for (std::size_t j = 0; j < heavy.size(); ++j) {
          if (kernel(dh.row(i), dh.row(j)) != u) continue;
          for (const Fe& v : distance_set(fib.at(heavy.codes()[i]), fib.at(heavy.codes()[j]), n))
            seen[v.code()] = 1;
        }
      for (std::uint32_t v = 0; v < f.q(); ++v)
        if (seen[v]) entry.values_v.push_back(f.element(v));
    }
    cert.entries.push_back(std::move(entry));
  }
  return cert;
}

std::vector<std::pair<Fe, Fe>> Certificate::certified_pairs() const {
  std::vector<std::pair<Fe, Fe>> out;
  for (const CertificateEntry& e : entries)
    for (const Fe& v : e.values_v) out.emplace_back(v, e.u);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::pair{a.first.code(), a.second.code()} < std::pair{b.first.code(), b.second.code()};
  });
  return out;
}

std::int64_t Certificate::certified_count() const {
  std::int64_t n = 0;
  for (const CertificateEntry& e : entries) n += static_cast<std::int64_t>(e.values_v.size());
  return n;
}

std::int64_t Certificate::min_values_size() const {
  if (entries.empty()) return -1;
  std::int64_t m = INT64_MAX;
  for (const CertificateEntry& e : entries)
    m = std::min(m, static_cast<std::int64_t>(e.values_v.size()));
  return m;
}

void verify_certificate(const Certificate& cert, const PairSet& E, const NormSpec& n) {
  check_provenance(cert, E, n);
  const HeavyFiberDecomposition dec = heavy_fibers(E, cert.tau);
  const std::map<std::uint64_t, PointSet> fib = fibers(E);
  const Space& sp = E.space();

  for (const CertificateEntry& entry : cert.entries) {
    if (!dec.heavy.contains(entry.z_code) || !dec.heavy.contains(entry.t_code))
      throw internal_error("certificate witness is not a heavy base point");
    const Point z = Point::from_code(sp, entry.z_code);
    const Point t = Point::from_code(sp, entry.t_code);
    if (norm(z, t, n) != entry.u)
      throw internal_error("certificate witness distance does not equal u");

    const PointSet& Ez = fib.at(entry.z_code);
    const PointSet& Et = fib.at(entry.t_code);
    if (!cert.exhaustive && distance_set(Ez, Et, n) != entry.values_v)
      throw internal_error("certificate value set differs from Delta^s(E_z, E_t)");

    // explicit witnesses: some x in E_z, y in E_t with ||x-y||_s = v
    for (const Fe& v : entry.values_v) {
      bool found = false;
      for (std::size_t i = 0; i < Ez.size() && !found; ++i)
        for (std::size_t j = 0; j < Et.size() && !found; ++j)
          found = norm(Ez.point(i), Et.point(j), n) == v;
      if (!found) throw internal_error("certified value has no witness in E_z x E_t");
    }
  }
}

Rational coverage_ratio(const Certificate& cert, const PairSet& E, const NormSpec& n) {
  check_provenance(cert, E, n);
  const std::int64_t truth = static_cast<std::int64_t>(two_param_distance_set(E, n).size());
  if (truth == 0)
    return cert.certified_count() == 0 ? Rational{1, 1} : Rational{0, 1};
  return Rational::reduced(cert.certified_count(), truth);
}

void serialize(const Certificate& cert, std::ostream& out) {
  const Field& f = *cert.space.field;
  out << "# ffdist-certificate-v1\n";
  out << "# p=" << f.p() << " k=" << f.k() << " d=" << cert.space.dim << " s=" << cert.s
      << " tau=" << cert.tau << " entries=" << cert.entries.size()
      << (cert.exhaustive ? " mode=exhaustive" : " mode=single-witness") << "\n";
  for (const CertificateEntry& e : cert.entries) {
    out << f.to_string(e.u);
    const Point z = Point::from_code(cert.space, e.z_code);
    const Point t = Point::from_code(cert.space, e.t_code);
    for (const Fe& c : z.coords()) out << ' ' << f.to_string(c);
    for (const Fe& c : t.coords()) out << ' ' << f.to_string(c);
    for (const Fe& v : e.values_v) out << ' ' << f.to_string(v);
    out << '\n';
  }
}

}  // namespace ffdist
