#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ffdist/counting.hpp"
#include "ffdist/geometry.hpp"
#include "ffdist/proof_engine.hpp"
#include "ffdist/rng.hpp"

namespace ffdist {

/// Experiment families. thm11/thm12/thm13/thm14 sweep pair sets E and
/// measure the two-parameter distance set; lemma21/lemma31 sweep point-set
/// pairs (X, Y) and measure the one-parameter set plus the counting chain.
enum class Theorem { thm11, thm12, thm13, thm14, lemma21, lemma31 };

enum class Generator { uniform_random, product, sphere_union, subspace };

std::string_view to_string(Theorem t);
std::string_view to_string(Generator g);
Theorem parse_theorem(std::string_view name);
Generator parse_generator(std::string_view name);

/// True for the modes that draw pair sets E.
bool pair_mode(Theorem t);

/// The size threshold each statement puts on its hypothesis, evaluated as a
/// real power: q^((3d+1)/2) for thm11/thm13, q^(10/3) for thm12, p^(13/4)
/// for thm14, p^(5/4) for lemma31, and the product bound q^(d+1) for
/// lemma21. d = 2 is enforced for thm12/thm14/lemma31.
double threshold(Theorem t, std::uint64_t q, int d);

struct ExperimentConfig {
  Space space;
  NormSpec norm;
  Generator generator = Generator::uniform_random;
  std::vector<std::uint64_t> sizes;
  int trials = 1;
  std::uint64_t seed = 0;
  Theorem theorem = Theorem::thm11;
};

/// One measured row of a sweep. Exact integer fields are reproducible from
/// the seed; elapsed_ms is wall clock and is therefore excluded from the
/// csv encoding (json-lines carries it).
struct SweepRow {
  int trial = 0;
  std::uint64_t q = 0;
  int d = 0;
  int s = 0;
  Generator generator = Generator::uniform_random;
  Theorem theorem = Theorem::thm11;
  std::uint64_t target_size = 0;
  std::optional<std::uint64_t> nE;
  std::optional<std::uint64_t> nX, nY;
  std::int64_t delta = 0;  // |Delta_{d,d}| in pair modes, |Delta| otherwise
  std::optional<std::int64_t> Q, T, Tprime;
  std::optional<Rational> cs_lower;
  std::optional<double> pham_ratio;
  double ratio = 0.0;      // delta / q^2 in pair modes, delta / q otherwise
  bool threshold_met = false;  // measured set reached its maximum (q^2 or q)
  std::int64_t elapsed_ms = 0;
};

/// Samples one point set with the given generator from an explicit stream.
PointSet sample_point_set(const NormSpec& n, Generator gen, std::uint64_t target,
                          SplitMix64& rng);

/// Samples one pair set with the given generator from an explicit stream.
PairSet sample_pair_set(const NormSpec& n, Generator gen, std::uint64_t target,
                        SplitMix64& rng);

/// Input for one (size, trial) cell, a deterministic function of
/// (config.seed, trial): the stream is SplitMix64 seeded with seed XOR trial.
/// Pair modes fill `pairs`; set modes fill `sets` with X drawn first, then Y
/// from the same stream.
struct TrialInput {
  std::optional<PairSet> pairs;
  std::optional<std::pair<PointSet, PointSet>> sets;
};
TrialInput generate(const ExperimentConfig& cfg, std::uint64_t target_size, int trial);

/// One row per (size, trial), ordered by (size index, trial).
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg);

enum class EmitFormat { csv, json_lines, plot_data };
EmitFormat parse_format(std::string_view name);

inline constexpr std::string_view kCsvHeader =
    "trial,q,d,s,generator,theorem,target_size,nE,nX,nY,delta,Q,T,Tprime,cs_lower,"
    "pham_ratio,ratio,threshold_met";

/// Serializes rows. csv uses the fixed header above; plot-data emits one
/// "target_size mean_delta min_delta" line per size. The counting-chain
/// inequalities are re-asserted on every row that carries them.
void emit(std::span<const SweepRow> rows, EmitFormat format, std::ostream& out);

}  // namespace ffdist
