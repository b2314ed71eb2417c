#include "ffdist/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <unordered_set>

#include <json.hpp>

namespace ffdist {
namespace {

std::string fmt_g6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

bool usual_norm(const NormSpec& n) {
  return n.s == 2 && std::all_of(n.a.begin(), n.a.end(), [&](const Fe& ai) {
    return ai == n.space.field->one();
  });
}

// Distinct codes in [0, cap). Above half occupancy the complement is drawn
// instead, so expected rejections stay bounded.
std::vector<std::uint64_t> sample_distinct(std::uint64_t cap, std::uint64_t target,
                                           SplitMix64& rng) {
  if (target > cap)
    throw capacity_error("requested size " + std::to_string(target) +
                         " exceeds the ambient capacity " + std::to_string(cap));
  if (target == 0) return {};
  if (target <= cap / 2) {
    std::unordered_set<std::uint64_t> chosen;
    std::vector<std::uint64_t> out;
    out.reserve(target);
    while (out.size() < target) {
      const std::uint64_t c = rng.below(cap);
      if (chosen.insert(c).second) out.push_back(c);
    }
    return out;
  }
  const std::uint64_t comp = cap - target;
  std::unordered_set<std::uint64_t> excluded;
  while (excluded.size() < comp) excluded.insert(rng.below(cap));
  std::vector<std::uint64_t> out;
  out.reserve(target);
  for (std::uint64_t c = 0; c < cap; ++c)
    if (!excluded.contains(c)) out.push_back(c);
  return out;
}

std::uint64_t isqrt_floor(std::uint64_t n) {
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// smallest e in [0, max_e] with q^e >= target; requires target <= q^max_e
int subspace_exponent(std::uint64_t q, std::uint64_t target, int max_e) {
  std::uint64_t size = 1;
  for (int e = 0; e <= max_e; ++e) {
    if (size >= target) return e;
    size *= q;
  }
  return max_e;
}

PointSet sphere_union_points(const NormSpec& n, std::uint64_t target, SplitMix64& rng) {
  const Space& sp = n.space;
  if (target == 0) return PointSet(sp);
  const std::uint32_t q = sp.field->q();
  const std::vector<std::uint32_t> table = norm_table(n);
  std::vector<std::uint8_t> used(q, 0);
  std::vector<std::uint8_t> member(sp.points, 0);
  std::uint64_t count = 0;
  std::uint32_t radii_used = 0;
  while (count < target && radii_used < q) {
    const std::uint32_t r = static_cast<std::uint32_t>(rng.below(q));
    if (used[r]) continue;
    used[r] = 1;
    ++radii_used;
    for (std::uint64_t w = 0; w < sp.points; ++w)
      if (table[w] == r && !member[w]) {
        member[w] = 1;
        ++count;
      }
  }
  std::vector<std::uint64_t> codes;
  codes.reserve(count);
  for (std::uint64_t w = 0; w < sp.points; ++w)
    if (member[w]) codes.push_back(w);
  return PointSet(sp, std::move(codes));
}

PointSet product_grid_points(const Space& sp, std::uint64_t target, SplitMix64& rng) {
  if (target == 0) return PointSet(sp);
  const std::uint32_t q = sp.field->q();
  const double root = std::pow(static_cast<double>(target), 1.0 / sp.dim);
  std::uint64_t side = static_cast<std::uint64_t>(std::ceil(root - 1e-9));
  side = std::clamp<std::uint64_t>(side, 1, q);
  std::vector<std::vector<std::uint64_t>> axes;
  for (int i = 0; i < sp.dim; ++i) axes.push_back(sample_distinct(q, side, rng));
  std::vector<std::uint64_t> codes{0};
  std::uint64_t mult = 1;
  for (int i = 0; i < sp.dim; ++i) {
    std::vector<std::uint64_t> next;
    next.reserve(codes.size() * axes[static_cast<std::size_t>(i)].size());
    for (std::uint64_t base : codes)
      for (std::uint64_t v : axes[static_cast<std::size_t>(i)]) next.push_back(base + v * mult);
    codes = std::move(next);
    mult *= q;
  }
  return PointSet(sp, std::move(codes));
}

PairSet product_pairs(const NormSpec& n, std::uint64_t target, SplitMix64& rng) {
  const Space& sp = n.space;
  if (target == 0) return PairSet(sp);
  std::uint64_t na = std::max<std::uint64_t>(isqrt_floor(target), 1);
  na = std::min(na, sp.points);
  std::uint64_t nb = std::min((target + na / 2) / na, sp.points);
  nb = std::max<std::uint64_t>(nb, 1);
  const std::vector<std::uint64_t> a = sample_distinct(sp.points, na, rng);
  const std::vector<std::uint64_t> b = sample_distinct(sp.points, nb, rng);
  std::vector<std::uint64_t> codes;
  codes.reserve(a.size() * b.size());
  for (std::uint64_t x : a)
    for (std::uint64_t y : b) codes.push_back(x * sp.points + y);
  return PairSet(sp, std::move(codes));
}

}  // namespace

// ---------------------------------------------------------------------------
// names

std::string_view to_string(Theorem t) {
  switch (t) {
    case Theorem::thm11: return "thm11";
    case Theorem::thm12: return "thm12";
    case Theorem::thm13: return "thm13";
    case Theorem::thm14: return "thm14";
    case Theorem::lemma21: return "lemma21";
    case Theorem::lemma31: return "lemma31";
  }
  return "?";
}

std::string_view to_string(Generator g) {
  switch (g) {
    case Generator::uniform_random: return "uniform-random";
    case Generator::product: return "product";
    case Generator::sphere_union: return "sphere-union";
    case Generator::subspace: return "subspace";
  }
  return "?";
}

Theorem parse_theorem(std::string_view name) {
  for (Theorem t : {Theorem::thm11, Theorem::thm12, Theorem::thm13, Theorem::thm14,
                    Theorem::lemma21, Theorem::lemma31})
    if (name == to_string(t)) return t;
  throw usage_error("unknown theorem id '" + std::string(name) + "'");
}

Generator parse_generator(std::string_view name) {
  for (Generator g : {Generator::uniform_random, Generator::product, Generator::sphere_union,
                      Generator::subspace})
    if (name == to_string(g)) return g;
  throw usage_error("unknown generator '" + std::string(name) + "'");
}

bool pair_mode(Theorem t) {
  return t == Theorem::thm11 || t == Theorem::thm12 || t == Theorem::thm13 ||
         t == Theorem::thm14;
}

EmitFormat parse_format(std::string_view name) {
  if (name == "csv") return EmitFormat::csv;
  if (name == "json-lines") return EmitFormat::json_lines;
  if (name == "plot-data") return EmitFormat::plot_data;
  throw usage_error("unknown format '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// thresholds

double threshold(Theorem t, std::uint64_t q, int d) {
  if (q < 2) throw usage_error("threshold needs q >= 2");
  if (d < 1) throw usage_error("threshold needs d >= 1");
  const bool planar = t == Theorem::thm12 || t == Theorem::thm14 || t == Theorem::lemma31;
  if (planar && d != 2)
    throw usage_error(std::string("theorem '") + std::string(to_string(t)) +
                      "' is stated for d = 2, got d = " + std::to_string(d));
  const double qd = static_cast<double>(q);
  switch (t) {
    case Theorem::thm11:
    case Theorem::thm13: return std::pow(qd, (3.0 * d + 1.0) / 2.0);
    case Theorem::thm12: return std::pow(qd, 10.0 / 3.0);
    case Theorem::thm14: return std::pow(qd, 13.0 / 4.0);
    case Theorem::lemma21: return std::pow(qd, d + 1.0);
    case Theorem::lemma31: return std::pow(qd, 5.0 / 4.0);
  }
  throw usage_error("unknown theorem id");
}

// ---------------------------------------------------------------------------
// generators

PointSet sample_point_set(const NormSpec& n, Generator gen, std::uint64_t target,
                          SplitMix64& rng) {
  const Space& sp = n.space;
  if (target > sp.points)
    throw capacity_error("requested |X| = " + std::to_string(target) + " exceeds q^d = " +
                         std::to_string(sp.points));
  switch (gen) {
    case Generator::uniform_random:
      return PointSet(sp, sample_distinct(sp.points, target, rng));
    case Generator::product: return product_grid_points(sp, target, rng);
    case Generator::sphere_union: return sphere_union_points(n, target, rng);
    case Generator::subspace: {
      if (target == 0) return PointSet(sp);
      const int e = subspace_exponent(sp.field->q(), target, sp.dim);
      std::uint64_t size = 1;
      for (int i = 0; i < e; ++i) size *= sp.field->q();
      std::vector<std::uint64_t> codes(size);
      for (std::uint64_t c = 0; c < size; ++c) codes[c] = c;
      return PointSet(sp, std::move(codes));
    }
  }
  throw usage_error("unknown generator");
}

PairSet sample_pair_set(const NormSpec& n, Generator gen, std::uint64_t target,
                        SplitMix64& rng) {
  const Space& sp = n.space;
  const std::uint64_t cap = sp.points * sp.points;
  if (target > cap)
    throw capacity_error("requested |E| = " + std::to_string(target) + " exceeds q^2d = " +
                         std::to_string(cap));
  switch (gen) {
    case Generator::uniform_random: return PairSet(sp, sample_distinct(cap, target, rng));
    case Generator::product: return product_pairs(n, target, rng);
    case Generator::sphere_union: {
      if (target == 0) return PairSet(sp);
      const std::uint64_t sub = isqrt_floor(target - 1) + 1;  // ceil(sqrt(target))
      const PointSet A = sphere_union_points(n, std::min(sub, sp.points), rng);
      const PointSet B = sphere_union_points(n, std::min(sub, sp.points), rng);
      std::vector<std::uint64_t> codes;
      codes.reserve(A.size() * B.size());
      for (std::uint64_t x : A.codes())
        for (std::uint64_t y : B.codes()) codes.push_back(x * sp.points + y);
      return PairSet(sp, std::move(codes));
    }
    case Generator::subspace: {
      if (target == 0) return PairSet(sp);
      const int e = subspace_exponent(sp.field->q(), target, 2 * sp.dim);
      std::uint64_t size = 1;
      for (int i = 0; i < e; ++i) size *= sp.field->q();
      std::vector<std::uint64_t> codes(size);
      for (std::uint64_t c = 0; c < size; ++c) codes[c] = c;
      return PairSet(sp, std::move(codes));
    }
  }
  throw usage_error("unknown generator");
}

TrialInput generate(const ExperimentConfig& cfg, std::uint64_t target_size, int trial) {
  SplitMix64 rng(cfg.seed ^ static_cast<std::uint64_t>(trial));
  TrialInput input;
  if (pair_mode(cfg.theorem)) {
    input.pairs = sample_pair_set(cfg.norm, cfg.generator, target_size, rng);
  } else {
    PointSet X = sample_point_set(cfg.norm, cfg.generator, target_size, rng);
    PointSet Y = sample_point_set(cfg.norm, cfg.generator, target_size, rng);
    input.sets = std::make_pair(std::move(X), std::move(Y));
  }
  return input;
}

// ---------------------------------------------------------------------------
// sweeps

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw usage_error("trials must be >= 1");
  if (!cfg.space.same_as(cfg.norm.space)) throw usage_error("config space and norm disagree");
  const Theorem t = cfg.theorem;
  const bool planar = t == Theorem::thm12 || t == Theorem::thm14 || t == Theorem::lemma31;
  if (planar && cfg.space.dim != 2)
    throw usage_error(std::string("theorem '") + std::string(to_string(t)) +
                      "' is stated for d = 2");
  const bool wants_usual =
      t == Theorem::thm11 || t == Theorem::thm12 || t == Theorem::thm14 || t == Theorem::lemma31;
  if (wants_usual && !usual_norm(cfg.norm))
    throw usage_error(std::string("theorem '") + std::string(to_string(t)) +
                      "' is stated for the usual distance (s = 2, a = 1)");
  const bool wants_prime = t == Theorem::thm14 || t == Theorem::lemma31;
  if (wants_prime && cfg.space.field->k() != 1)
    throw usage_error(std::string("theorem '") + std::string(to_string(t)) +
                      "' is stated over prime fields");

  const std::uint64_t q = cfg.space.field->q();
  std::vector<SweepRow> rows;
  rows.reserve(cfg.sizes.size() * static_cast<std::size_t>(cfg.trials));

  for (const std::uint64_t size : cfg.sizes) {
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const auto start = std::chrono::steady_clock::now();
      SweepRow row;
      row.trial = trial;
      row.q = q;
      row.d = cfg.space.dim;
      row.s = cfg.norm.s;
      row.generator = cfg.generator;
      row.theorem = t;
      row.target_size = size;

      TrialInput input = generate(cfg, size, trial);
      if (pair_mode(t)) {
        const PairSet& E = *input.pairs;
        row.nE = E.size();
        row.delta = static_cast<std::int64_t>(two_param_distance_set(E, cfg.norm).size());
        const std::int64_t full = static_cast<std::int64_t>(q) * static_cast<std::int64_t>(q);
        row.ratio = static_cast<double>(row.delta) / static_cast<double>(full);
        row.threshold_met = row.delta == full;
      } else {
        const auto& [X, Y] = *input.sets;
        row.nX = X.size();
        row.nY = Y.size();
        const ChainReport chain = chain_report(X, Y, cfg.norm);
        row.delta = chain.delta;
        row.Q = chain.Q;
        row.T = chain.T;
        row.Tprime = chain.Tprime;
        row.cs_lower = chain.cs_lower;
        row.pham_ratio = chain.pham_ratio;
        row.ratio = static_cast<double>(row.delta) / static_cast<double>(q);
        row.threshold_met = row.delta == static_cast<std::int64_t>(q);
      }
      row.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// emission

namespace {

void reassert_chain(const SweepRow& r) {
  if (!r.Q || !r.T || !r.Tprime || !r.nX || !r.nY) return;
  const unsigned __int128 nx = *r.nX, ny = *r.nY;
  if (static_cast<unsigned __int128>(r.delta) * static_cast<unsigned __int128>(*r.Q) <
      nx * nx * ny * ny)
    throw internal_error("sweep row violates delta * Q >= |X|^2 |Y|^2");
  if (static_cast<unsigned __int128>(*r.Q) > nx * static_cast<unsigned __int128>(*r.T))
    throw internal_error("sweep row violates Q <= |X| * T");
  if (*r.T > *r.Tprime) throw internal_error("sweep row violates T <= T'");
}

template <typename T>
std::string opt_str(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string();
}

}  // namespace

void emit(std::span<const SweepRow> rows, EmitFormat format, std::ostream& out) {
  for (const SweepRow& r : rows) reassert_chain(r);

  switch (format) {
    case EmitFormat::csv: {
      out << kCsvHeader << '\n';
      for (const SweepRow& r : rows) {
        out << r.trial << ',' << r.q << ',' << r.d << ',' << r.s << ',' << to_string(r.generator)
            << ',' << to_string(r.theorem) << ',' << r.target_size << ',' << opt_str(r.nE) << ','
            << opt_str(r.nX) << ',' << opt_str(r.nY) << ',' << r.delta << ',' << opt_str(r.Q)
            << ',' << opt_str(r.T) << ',' << opt_str(r.Tprime) << ',';
        if (r.cs_lower) out << r.cs_lower->num << '/' << r.cs_lower->den;
        out << ',';
        if (r.pham_ratio) out << fmt_g6(*r.pham_ratio);
        out << ',' << fmt_g6(r.ratio) << ',' << (r.threshold_met ? '1' : '0') << '\n';
      }
      break;
    }
    case EmitFormat::json_lines: {
      for (const SweepRow& r : rows) {
        nlohmann::json j;
        j["trial"] = r.trial;
        j["q"] = r.q;
        j["d"] = r.d;
        j["s"] = r.s;
        j["generator"] = to_string(r.generator);
        j["theorem"] = to_string(r.theorem);
        j["target_size"] = r.target_size;
        if (r.nE) j["nE"] = *r.nE;
        if (r.nX) j["nX"] = *r.nX;
        if (r.nY) j["nY"] = *r.nY;
        j["delta"] = r.delta;
        if (r.Q) j["Q"] = *r.Q;
        if (r.T) j["T"] = *r.T;
        if (r.Tprime) j["Tprime"] = *r.Tprime;
        if (r.cs_lower)
          j["cs_lower"] = std::to_string(r.cs_lower->num) + "/" + std::to_string(r.cs_lower->den);
        if (r.pham_ratio) j["pham_ratio"] = *r.pham_ratio;
        j["ratio"] = r.ratio;
        j["threshold_met"] = r.threshold_met;
        j["elapsed_ms"] = r.elapsed_ms;
        out << j.dump() << '\n';
      }
      break;
    }
    case EmitFormat::plot_data: {
      std::size_t i = 0;
      while (i < rows.size()) {
        std::size_t j = i;
        double sum = 0;
        std::int64_t mn = INT64_MAX;
        while (j < rows.size() && rows[j].target_size == rows[i].target_size) {
          sum += static_cast<double>(rows[j].delta);
          mn = std::min(mn, rows[j].delta);
          ++j;
        }
        out << rows[i].target_size << ' ' << fmt_g6(sum / static_cast<double>(j - i)) << ' ' << mn
            << '\n';
        i = j;
      }
      break;
    }
  }
  if (!out) throw usage_error("emit: output stream failed");
}

}  // namespace ffdist
