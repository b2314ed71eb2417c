#include "ffdist/io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace ffdist {
namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream iss(line);
  std::string tok;
  while (iss >> tok) out.push_back(tok);
  return out;
}

std::uint32_t parse_u32(std::string_view text, const char* what) {
  std::uint32_t v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size())
    throw usage_error(std::string("bad ") + what + " '" + std::string(text) + "'");
  return v;
}

// value of "key=value" or nullopt
std::optional<std::string> keyed(const std::string& tok, std::string_view key) {
  if (tok.size() > key.size() + 1 && tok.compare(0, key.size(), key) == 0 &&
      tok[key.size()] == '=')
    return tok.substr(key.size() + 1);
  return std::nullopt;
}

struct Header {
  NormSpec norm;
  int d;
};

// Parses the magic, the header line and the optional modulus line; leaves the
// stream at the first data line.
Header read_header(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw usage_error("empty input; expected 'ffdist-v1' magic");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "ffdist-v1") throw usage_error("bad magic '" + line + "'; expected 'ffdist-v1'");

  if (!std::getline(in, line)) throw usage_error("missing header line");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::optional<std::uint32_t> p;
  std::optional<int> k, d, s;
  std::optional<std::string> a_text;
  for (const std::string& tok : split_ws(line)) {
    if (auto v = keyed(tok, "p")) p = parse_u32(*v, "p");
    else if (auto v2 = keyed(tok, "k")) k = static_cast<int>(parse_u32(*v2, "k"));
    else if (auto v3 = keyed(tok, "d")) d = static_cast<int>(parse_u32(*v3, "d"));
    else if (auto v4 = keyed(tok, "s")) s = static_cast<int>(parse_u32(*v4, "s"));
    else if (auto v5 = keyed(tok, "a")) a_text = *v5;
    else throw usage_error("unrecognized header token '" + tok + "'");
  }
  if (!p || !k || !d || !s || !a_text)
    throw usage_error("header must set p, k, d, s and a");

  std::vector<std::uint16_t> modulus;
  if (*k > 1) {
    if (!std::getline(in, line)) throw usage_error("missing modulus line for k > 1");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto v = keyed(line, "modulus");
    if (!v) throw usage_error("expected 'modulus=...' line for k > 1");
    std::string part;
    std::istringstream ms(*v);
    while (std::getline(ms, part, ':'))
      modulus.push_back(static_cast<std::uint16_t>(parse_u32(part, "modulus coefficient")));
  }

  FieldPtr field = Field::make(*p, *k, modulus);
  Space sp(field, *d);

  std::vector<Fe> a;
  std::string part;
  std::istringstream as(*a_text);
  while (std::getline(as, part, ',')) a.push_back(field->parse(part));
  return {NormSpec(sp, *s, std::move(a)), *d};
}

// Reads data lines, each with `per_line` elements; returns point codes
// (points) or flattened [x,y] code pairs (pairs).
std::vector<std::vector<std::uint64_t>> read_rows(std::istream& in, const Space& sp,
                                                  std::size_t per_line) {
  const Field& f = *sp.field;
  const std::uint64_t q = f.q();
  std::vector<std::vector<std::uint64_t>> rows;
  std::string line;
  std::size_t lineno = (f.k() > 1) ? 3 : 2;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') continue;
    const std::vector<std::string> toks = split_ws(line);
    if (toks.size() != per_line)
      throw usage_error("line " + std::to_string(lineno) + ": expected " +
                        std::to_string(per_line) + " elements, got " + std::to_string(toks.size()));
    std::vector<std::uint64_t> codes;
    const std::size_t points_per_row = per_line / static_cast<std::size_t>(sp.dim);
    for (std::size_t pt = 0; pt < points_per_row; ++pt) {
      std::uint64_t code = 0, mult = 1;
      for (int i = 0; i < sp.dim; ++i) {
        const Fe e = f.parse(toks[pt * static_cast<std::size_t>(sp.dim) + static_cast<std::size_t>(i)]);
        code += static_cast<std::uint64_t>(e.code()) * mult;
        mult *= q;
      }
      codes.push_back(code);
    }
    rows.push_back(std::move(codes));
  }
  return rows;
}

void write_header(std::ostream& out, const NormSpec& n) {
  const Field& f = *n.space.field;
  out << "ffdist-v1\n";
  out << "p=" << f.p() << " k=" << f.k() << " d=" << n.space.dim << " s=" << n.s << " a=";
  for (std::size_t i = 0; i < n.a.size(); ++i) {
    if (i) out << ',';
    out << f.to_string(n.a[i]);
  }
  out << '\n';
  if (f.k() > 1) {
    out << "modulus=";
    const auto m = f.modulus();
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) out << ':';
      out << m[i];
    }
    out << '\n';
  }
}

void write_point(std::ostream& out, const Space& sp, std::uint64_t code) {
  const Field& f = *sp.field;
  const std::uint64_t q = f.q();
  for (int i = 0; i < sp.dim; ++i) {
    if (i) out << ' ';
    out << f.to_string(f.element(static_cast<std::uint32_t>(code % q)));
    code /= q;
  }
}

}  // namespace

LoadedPointSet load_point_set(std::istream& in) {
  Header h = read_header(in);
  const Space& sp = h.norm.space;
  std::vector<std::uint64_t> codes;
  for (auto& row : read_rows(in, sp, static_cast<std::size_t>(h.d))) codes.push_back(row[0]);
  return {h.norm, PointSet(sp, std::move(codes))};
}

LoadedPairSet load_pair_set(std::istream& in) {
  Header h = read_header(in);
  const Space& sp = h.norm.space;
  if (sp.points >= (std::uint64_t{1} << 31))
    throw capacity_error("pair sets require q^d < 2^31");
  std::vector<std::uint64_t> codes;
  for (auto& row : read_rows(in, sp, 2 * static_cast<std::size_t>(h.d)))
    codes.push_back(row[0] * sp.points + row[1]);
  return {h.norm, PairSet(sp, std::move(codes))};
}

void save_point_set(std::ostream& out, const PointSet& X, const NormSpec& n) {
  if (!X.space().same_as(n.space)) throw usage_error("save_point_set: ambient spaces differ");
  write_header(out, n);
  for (std::uint64_t code : X.codes()) {
    write_point(out, X.space(), code);
    out << '\n';
  }
}

void save_pair_set(std::ostream& out, const PairSet& E, const NormSpec& n) {
  if (!E.space().same_as(n.space)) throw usage_error("save_pair_set: ambient spaces differ");
  write_header(out, n);
  const std::uint64_t N = E.space().points;
  for (std::uint64_t pc : E.pair_codes()) {
    write_point(out, E.space(), pc / N);
    out << ' ';
    write_point(out, E.space(), pc % N);
    out << '\n';
  }
}

LoadedPointSet load_point_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open '" + path + "' for reading");
  try {
    return load_point_set(in);
  } catch (const usage_error& e) {
    throw usage_error(path + ": " + e.what());
  }
}

LoadedPairSet load_pair_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open '" + path + "' for reading");
  try {
    return load_pair_set(in);
  } catch (const usage_error& e) {
    throw usage_error(path + ": " + e.what());
  }
}

void save_point_set_file(const std::string& path, const PointSet& X, const NormSpec& n) {
  std::ofstream out(path);
  if (!out) throw usage_error("cannot open '" + path + "' for writing");
  save_point_set(out, X, n);
  if (!out) throw usage_error("write failed for '" + path + "'");
}

void save_pair_set_file(const std::string& path, const PairSet& E, const NormSpec& n) {
  std::ofstream out(path);
  if (!out) throw usage_error("cannot open '" + path + "' for writing");
  save_pair_set(out, E, n);
  if (!out) throw usage_error("write failed for '" + path + "'");
}

}  // namespace ffdist
