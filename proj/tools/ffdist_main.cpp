// ffdist — command-line harness for exact distance-set experiments over
// small finite fields.
//
// Subcommands: distset, twoparam, count, fibers, certify, sweep, threshold.
// Exit codes: 0 success, 1 usage error, 2 capacity error, 3 internal
// consistency failure.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ffdist/counting.hpp"
#include "ffdist/errors.hpp"
#include "ffdist/experiment.hpp"
#include "ffdist/field.hpp"
#include "ffdist/geometry.hpp"
#include "ffdist/io.hpp"
#include "ffdist/proof_engine.hpp"

namespace {

using namespace ffdist;

struct GlobalOpts {
  std::uint64_t field_q = 3;
  std::string modulus;
  int dim = 2;
  int s = 2;
  std::string coeffs;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
};

std::vector<std::uint16_t> parse_modulus(const std::string& text) {
  std::vector<std::uint16_t> m;
  std::istringstream iss(text);
  std::string part;
  while (std::getline(iss, part, ':')) {
    int v = std::stoi(part);
    if (v < 0) throw usage_error("negative modulus coefficient");
    m.push_back(static_cast<std::uint16_t>(v));
  }
  return m;
}

// q -> (p, k) with p prime; q must be a prime power
std::pair<std::uint32_t, int> factor_prime_power(std::uint64_t q) {
  if (q < 3) throw usage_error("field order must be >= 3");
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  if (p == 0) return {static_cast<std::uint32_t>(q), 1};
  int k = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1)
    throw usage_error("field order " + std::to_string(q) + " is not a prime power");
  return {static_cast<std::uint32_t>(p), k};
}

NormSpec norm_from_opts(const GlobalOpts& g) {
  auto [p, k] = factor_prime_power(g.field_q);
  std::vector<std::uint16_t> mod;
  if (k > 1) {
    if (g.modulus.empty())
      throw usage_error("extension field q = " + std::to_string(g.field_q) +
                        " needs --modulus c0:c1:...:ck");
    mod = parse_modulus(g.modulus);
  } else if (!g.modulus.empty()) {
    throw usage_error("--modulus is only meaningful for extension fields");
  }
  FieldPtr field = Field::make(p, k, mod);
  Space sp(field, g.dim);
  std::vector<Fe> a;
  if (g.coeffs.empty()) {
    a.assign(static_cast<std::size_t>(g.dim), field->one());
  } else {
    std::istringstream iss(g.coeffs);
    std::string part;
    while (std::getline(iss, part, ',')) a.push_back(field->parse(part));
  }
  return NormSpec(sp, g.s, std::move(a));
}

// opens --out or falls back to stdout
class OutputSink {
 public:
  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file_.emplace(path);
      if (!*file_) throw usage_error("cannot open '" + path + "' for writing");
      path_ = path;
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void finish() {
    stream().flush();
    if (file_ && !*file_) throw usage_error("write failed for '" + path_ + "'");
  }

 private:
  std::optional<std::ofstream> file_;
  std::string path_;
};

int run_distset(const std::string& x_path, const std::string& y_path, const GlobalOpts& g) {
  LoadedPointSet lx = load_point_set_file(x_path);
  PointSet Y = lx.set;
  if (!y_path.empty()) {
    LoadedPointSet ly = load_point_set_file(y_path);
    if (!ly.set.space().same_as(lx.set.space()) || ly.norm.s != lx.norm.s || ly.norm.a != lx.norm.a)
      throw usage_error("the two input files disagree on field, dimension or norm");
    Y = ly.set;
  }
  const std::vector<Fe> delta = distance_set(lx.set, Y, lx.norm);
  OutputSink sink(g.out);
  sink.stream() << "# ffdist distset |X|=" << lx.set.size() << " |Y|=" << Y.size()
                << " |Delta|=" << delta.size() << "\n";
  for (const Fe& u : delta) sink.stream() << to_string(u) << "\n";
  sink.finish();
  return 0;
}

int run_twoparam(const std::string& e_path, const GlobalOpts& g) {
  LoadedPairSet le = load_pair_set_file(e_path);
  const auto pairs = two_param_distance_set(le.set, le.norm);
  OutputSink sink(g.out);
  sink.stream() << "# ffdist twoparam |E|=" << le.set.size() << " |Delta_dd|=" << pairs.size()
                << "\n";
  for (const auto& [v, u] : pairs)
    sink.stream() << to_string(v) << ' ' << to_string(u) << "\n";
  sink.finish();
  return 0;
}

int run_count(const std::string& x_path, const std::string& y_path, const GlobalOpts& g) {
  LoadedPointSet lx = load_point_set_file(x_path);
  PointSet Y = lx.set;
  if (!y_path.empty()) {
    LoadedPointSet ly = load_point_set_file(y_path);
    if (!ly.set.space().same_as(lx.set.space()) || ly.norm.s != lx.norm.s || ly.norm.a != lx.norm.a)
      throw usage_error("the two input files disagree on field, dimension or norm");
    Y = ly.set;
  }
  const ChainReport r = chain_report(lx.set, Y, lx.norm);
  OutputSink sink(g.out);
  auto& out = sink.stream();
  out << "nX=" << r.nX << "\nnY=" << r.nY << "\nnZ=" << r.nZ << "\ndelta=" << r.delta
      << "\nQ=" << r.Q << "\nT=" << r.T << "\nTprime=" << r.Tprime << "\ncs_lower="
      << r.cs_lower.num << '/' << r.cs_lower.den << "\n";
  char buf[64];
  if (r.pham_rhs) {
    std::snprintf(buf, sizeof(buf), "%.6g", *r.pham_rhs);
    out << "pham_rhs=" << buf << "\n";
  }
  if (r.pham_ratio) {
    std::snprintf(buf, sizeof(buf), "%.6g", *r.pham_ratio);
    out << "pham_ratio=" << buf << "\n";
  }
  sink.finish();
  return 0;
}

int run_fibers(const std::string& e_path, const GlobalOpts& g) {
  LoadedPairSet le = load_pair_set_file(e_path);
  const auto fib = fibers(le.set);
  const Space& sp = le.set.space();
  const Field& f = *sp.field;
  OutputSink sink(g.out);
  sink.stream() << "# ffdist fibers |E|=" << le.set.size() << " nonempty=" << fib.size() << "\n";
  for (const auto& [y_code, Ey] : fib) {
    const Point y = Point::from_code(sp, y_code);
    for (int i = 0; i < sp.dim; ++i) {
      if (i) sink.stream() << ' ';
      sink.stream() << f.to_string(y[i]);
    }
    sink.stream() << ' ' << Ey.size() << "\n";
  }
  sink.finish();
  return 0;
}

int run_certify(const std::string& e_path, std::int64_t tau_flag, double C, bool exhaustive,
                bool coverage, const GlobalOpts& g) {
  LoadedPairSet le = load_pair_set_file(e_path);
  const Space& sp = le.set.space();
  const std::int64_t tau =
      tau_flag >= 0 ? tau_flag : default_tau(sp.field->q(), sp.dim, C);
  const Certificate cert = certify(le.set, le.norm, tau, exhaustive);
  verify_certificate(cert, le.set, le.norm);

  OutputSink sink(g.out);
  serialize(cert, sink.stream());
  sink.finish();

  std::cerr << "tau=" << tau << " heavy_entries=" << cert.entries.size()
            << " certified=" << cert.certified_count()
            << " min_values=" << cert.min_values_size() << "\n";
  if (coverage) {
    const Rational cov = coverage_ratio(cert, le.set, le.norm);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", cov.value());
    std::cerr << "coverage=" << cov.num << '/' << cov.den << " (" << buf << ")\n";
  }
  return 0;
}

int run_sweep_cmd(const std::string& theorem, const std::string& generator,
                  const std::string& sizes_text, int trials, const GlobalOpts& g) {
  NormSpec norm = norm_from_opts(g);
  ExperimentConfig cfg{norm.space, std::move(norm), parse_generator(generator),
                       {}, trials, g.seed, parse_theorem(theorem)};
  std::istringstream iss(sizes_text);
  std::string part;
  while (std::getline(iss, part, ',')) cfg.sizes.push_back(std::stoull(part));
  if (cfg.sizes.empty()) throw usage_error("--sizes must list at least one size");

  const std::vector<SweepRow> rows = run_sweep(cfg);
  OutputSink sink(g.out);
  emit(rows, parse_format(g.format), sink.stream());
  sink.finish();
  return 0;
}

int run_threshold(const std::string& theorem, const GlobalOpts& g) {
  const double v = threshold(parse_theorem(theorem), g.field_q, g.dim);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  OutputSink sink(g.out);
  sink.stream() << buf << "\n";
  sink.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact distance-set laboratory over small finite fields"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--field", g.field_q, "field order q = p^k (odd prime power)");
  app.add_option("--modulus", g.modulus, "irreducible modulus c0:c1:...:ck (required for k > 1)");
  app.add_option("--dim", g.dim, "ambient dimension d");
  app.add_option("--s", g.s, "norm exponent s >= 2");
  app.add_option("--coeffs", g.coeffs, "norm coefficients a1,...,ad (default all 1)");
  app.add_option("--seed", g.seed, "64-bit experiment seed");
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--format", g.format, "sweep output format: csv, json-lines, plot-data");

  std::string x_path, y_path, e_path;

  CLI::App* distset = app.add_subcommand("distset", "distance set of one or two point-set files");
  distset->add_option("X", x_path, "point-set file")->required();
  distset->add_option("Y", y_path, "optional second point-set file (default: X)");

  CLI::App* twoparam =
      app.add_subcommand("twoparam", "two-parameter distance set of a pair-set file");
  twoparam->add_option("E", e_path, "pair-set file")->required();

  CLI::App* count = app.add_subcommand("count", "exact counting chain: spectrum, Q, T, T'");
  count->add_option("X", x_path, "point-set file")->required();
  count->add_option("Y", y_path, "optional second point-set file (default: X)");

  CLI::App* fib = app.add_subcommand("fibers", "nonempty fiber sizes of a pair-set file");
  fib->add_option("E", e_path, "pair-set file")->required();

  std::int64_t tau_flag = -1;
  double C = 2.0;
  bool exhaustive = false, coverage = false;
  CLI::App* cert = app.add_subcommand("certify", "heavy-fiber certificate for a pair-set file");
  cert->add_option("E", e_path, "pair-set file")->required();
  cert->add_option("--tau", tau_flag, "fiber-size threshold (default floor((C/2) q^((d+1)/2)))");
  cert->add_option("--C", C, "constant C for the default threshold (default 2)");
  cert->add_flag("--exhaustive", exhaustive, "union values over all heavy witness pairs per u");
  cert->add_flag("--coverage", coverage, "also report |certified| / |Delta_dd(E)|");

  std::string theorem, generator = "uniform-random", sizes_text;
  int trials = 1;
  CLI::App* sweep = app.add_subcommand("sweep", "seeded threshold experiment sweep");
  sweep->add_option("--theorem", theorem,
                    "thm11, thm12, thm13, thm14, lemma21 or lemma31")->required();
  sweep->add_option("--generator", generator,
                    "uniform-random, product, sphere-union or subspace");
  sweep->add_option("--sizes", sizes_text, "comma-separated target sizes")->required();
  sweep->add_option("--trials", trials, "trials per size (default 1)");

  CLI::App* thr = app.add_subcommand("threshold", "the statement's size threshold for (q, d)");
  thr->add_option("--theorem", theorem,
                  "thm11, thm12, thm13, thm14, lemma21 or lemma31")->required();

  try {
    app.parse(argc, argv);
    if (distset->parsed()) return run_distset(x_path, y_path, g);
    if (twoparam->parsed()) return run_twoparam(e_path, g);
    if (count->parsed()) return run_count(x_path, y_path, g);
    if (fib->parsed()) return run_fibers(e_path, g);
    if (cert->parsed()) return run_certify(e_path, tau_flag, C, exhaustive, coverage, g);
    if (sweep->parsed()) return run_sweep_cmd(theorem, generator, sizes_text, trials, g);
    if (thr->parsed()) return run_threshold(theorem, g);
    std::cerr << app.help() << "\n";
    return 1;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const capacity_error& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 2;
  } catch (const internal_error& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
