#include "ffdist/field.hpp"

#include <algorithm>
#include <charconv>

namespace ffdist {
namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

using Poly = std::vector<std::uint16_t>;  // little-endian, not normalized

void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a mod m for a MONIC divisor m; destroys a.
Poly poly_rem(Poly a, const Poly& m, std::uint32_t p) {
  poly_trim(a);
  while (a.size() >= m.size()) {
    const std::uint32_t c = a.back();
    if (c != 0) {
      const std::size_t shift = a.size() - m.size();
      for (std::size_t i = 0; i < m.size(); ++i)
        a[shift + i] = static_cast<std::uint16_t>((a[shift + i] + c * (p - m[i])) % p);
    }
    a.pop_back();
    poly_trim(a);
  }
  return a;
}

bool is_irreducible(const Poly& m, std::uint32_t p) {
  const int k = static_cast<int>(m.size()) - 1;
  for (int deg = 1; deg <= k / 2; ++deg) {
    std::uint64_t count = 1;
    for (int i = 0; i < deg; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly div(deg + 1);
      std::uint64_t c = code;
      for (int i = 0; i < deg; ++i) {
        div[i] = static_cast<std::uint16_t>(c % p);
        c /= p;
      }
      div[deg] = 1;
      if (poly_rem(Poly(m), div, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// construction

FieldPtr Field::prime(std::uint32_t p) {
  if (p == 2) throw usage_error("characteristic 2 is not supported");
  if (p < 3 || !is_prime(p)) throw usage_error("p must be an odd prime, got " + std::to_string(p));
  if (p >= (1u << 15)) throw capacity_error("prime fields are supported for p < 32768, got " + std::to_string(p));
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->k_ = 1;
  f->q_ = p;
  return f;
}

FieldPtr Field::extension(std::uint32_t p, int k, std::span<const std::uint16_t> modulus) {
  if (p == 2) throw usage_error("characteristic 2 is not supported");
  if (p < 3 || !is_prime(p)) throw usage_error("p must be an odd prime, got " + std::to_string(p));
  if (k < 2) throw usage_error("extension degree must be >= 2; use Field::prime for k = 1");
  if (k > kMaxExtensionDegree || p > 13)
    throw capacity_error("extension fields are validated exhaustively only for k <= 4, p <= 13");
  if (modulus.size() != static_cast<std::size_t>(k) + 1)
    throw usage_error("modulus must have k+1 coefficients");
  if (modulus[k] != 1) throw usage_error("modulus must be monic");
  for (auto c : modulus)
    if (c >= p) throw usage_error("modulus coefficient out of range [0, p)");
  Poly m(modulus.begin(), modulus.end());
  if (!is_irreducible(m, p)) throw usage_error("modulus is reducible over F_p");

  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->k_ = k;
  std::uint32_t q = 1;
  for (int i = 0; i < k; ++i) q *= p;
  f->q_ = q;
  f->modulus_.assign(modulus.begin(), modulus.end());

  // red_[j] = t^(k+j) mod modulus. t^k = -(m_0 + ... + m_{k-1} t^{k-1});
  // later rows follow by multiplying by t and reducing once.
  std::array<std::uint16_t, kMaxExtensionDegree> row{};
  for (int i = 0; i < k; ++i) row[i] = static_cast<std::uint16_t>((p - modulus[i]) % p);
  f->red_.push_back(row);
  for (int j = 1; j < k - 1; ++j) {
    std::array<std::uint16_t, kMaxExtensionDegree> next{};
    const std::uint32_t top = row[k - 1];
    for (int i = k - 1; i > 0; --i) next[i] = row[i - 1];
    next[0] = 0;
    for (int i = 0; i < k; ++i)
      next[i] = static_cast<std::uint16_t>((next[i] + top * f->red_[0][i]) % p);
    f->red_.push_back(next);
    row = next;
  }
  return f;
}

FieldPtr Field::make(std::uint32_t p, int k, std::span<const std::uint16_t> modulus) {
  if (k == 1) {
    if (!modulus.empty()) throw usage_error("prime fields take no modulus");
    return prime(p);
  }
  return extension(p, k, modulus);
}

bool Field::same_as(const Field& o) const noexcept {
  return this == &o || (p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_);
}

// ---------------------------------------------------------------------------
// element constructors

Fe Field::zero() const noexcept {
  Fe e;
  e.field_ = this;
  return e;
}

Fe Field::one() const noexcept {
  Fe e;
  e.field_ = this;
  e.c_[0] = 1;
  return e;
}

Fe Field::element(std::uint32_t code) const {
  if (code >= q_) throw usage_error("element code " + std::to_string(code) + " out of range [0, q)");
  Fe e;
  e.field_ = this;
  for (int i = 0; i < k_; ++i) {
    e.c_[i] = static_cast<std::uint16_t>(code % p_);
    code /= p_;
  }
  return e;
}

Fe Field::from_coeffs(std::span<const std::uint16_t> coeffs) const {
  if (coeffs.size() > static_cast<std::size_t>(k_))
    throw usage_error("too many coefficients for extension degree k");
  Fe e;
  e.field_ = this;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    e.c_[i] = static_cast<std::uint16_t>(coeffs[i] % p_);
  return e;
}

Fe Field::from_int(std::int64_t v) const noexcept {
  Fe e;
  e.field_ = this;
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  e.c_[0] = static_cast<std::uint16_t>(r);
  return e;
}

// ---------------------------------------------------------------------------
// arithmetic

void Field::check_owned(const Fe& a) const {
  if (a.field_ == nullptr) throw usage_error("operation on a detached field element");
  if (a.field_ != this && !same_as(*a.field_)) throw usage_error("field element belongs to a different field");
}

void Field::check_pair(const Fe& a, const Fe& b) const {
  check_owned(a);
  check_owned(b);
}

Fe Field::add(const Fe& a, const Fe& b) const {
  check_pair(a, b);
  Fe r;
  r.field_ = this;
  for (int i = 0; i < k_; ++i) {
    std::uint32_t s = static_cast<std::uint32_t>(a.c_[i]) + b.c_[i];
    if (s >= p_) s -= p_;
    r.c_[i] = static_cast<std::uint16_t>(s);
  }
  return r;
}

Fe Field::sub(const Fe& a, const Fe& b) const {
  check_pair(a, b);
  Fe r;
  r.field_ = this;
  for (int i = 0; i < k_; ++i) {
    std::uint32_t s = static_cast<std::uint32_t>(a.c_[i]) + p_ - b.c_[i];
    if (s >= p_) s -= p_;
    r.c_[i] = static_cast<std::uint16_t>(s);
  }
  return r;
}

Fe Field::neg(const Fe& a) const {
  check_owned(a);
  Fe r;
  r.field_ = this;
  for (int i = 0; i < k_; ++i) r.c_[i] = static_cast<std::uint16_t>((p_ - a.c_[i]) % p_);
  return r;
}

Fe Field::mul(const Fe& a, const Fe& b) const {
  check_pair(a, b);
  Fe r;
  r.field_ = this;
  if (k_ == 1) {
    r.c_[0] = static_cast<std::uint16_t>(
        (static_cast<std::uint64_t>(a.c_[0]) * b.c_[0]) % p_);
    return r;
  }
  std::array<std::uint32_t, 2 * kMaxExtensionDegree - 1> prod{};
  for (int i = 0; i < k_; ++i) {
    if (a.c_[i] == 0) continue;
    for (int j = 0; j < k_; ++j) prod[i + j] += static_cast<std::uint32_t>(a.c_[i]) * b.c_[j];
  }
  // fold degrees k .. 2k-2 down through the precomputed rows of t^i mod m
  std::array<std::uint32_t, kMaxExtensionDegree> acc{};
  for (int i = 0; i < k_; ++i) acc[i] = prod[i] % p_;
  for (int i = k_; i <= 2 * k_ - 2; ++i) {
    const std::uint32_t c = prod[i] % p_;
    if (c == 0) continue;
    const auto& row = red_[i - k_];
    for (int j = 0; j < k_; ++j) acc[j] = (acc[j] + c * row[j]) % p_;
  }
  for (int i = 0; i < k_; ++i) r.c_[i] = static_cast<std::uint16_t>(acc[i]);
  return r;
}

Fe Field::pow(const Fe& a, std::uint64_t e) const {
  check_owned(a);
  Fe result = one();
  Fe base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

// ---------------------------------------------------------------------------
// text

Fe Field::parse(std::string_view text) const {
  std::vector<std::uint16_t> coeffs;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = text.find(':', pos);
    std::string_view part = text.substr(pos, next == std::string_view::npos ? next : next - pos);
    std::uint32_t v = 0;
    auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || end != part.data() + part.size())
      throw usage_error("bad field element '" + std::string(text) + "'");
    if (v >= p_)
      throw usage_error("coefficient " + std::to_string(v) + " not in [0, p) in '" + std::string(text) + "'");
    coeffs.push_back(static_cast<std::uint16_t>(v));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  if (coeffs.size() != static_cast<std::size_t>(k_))
    throw usage_error("element '" + std::string(text) + "' must have exactly " + std::to_string(k_) +
                      " coefficient(s) for this field");
  return from_coeffs(coeffs);
}

std::string Field::to_string(const Fe& e) const {
  check_owned(e);
  std::string out = std::to_string(e.c_[0]);
  for (int i = 1; i < k_; ++i) {
    out += ':';
    out += std::to_string(e.c_[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fe members

std::uint32_t Fe::code() const noexcept {
  if (field_ == nullptr) return 0;
  std::uint32_t r = 0;
  for (int i = field_->k() - 1; i >= 0; --i) r = r * field_->p() + c_[i];
  return r;
}

std::span<const std::uint16_t> Fe::coeffs() const {
  if (field_ == nullptr) throw usage_error("detached field element has no coefficients");
  return {c_.data(), static_cast<std::size_t>(field_->k())};
}

bool Fe::is_zero() const noexcept {
  for (auto v : c_)
    if (v != 0) return false;
  return true;
}

Fe Fe::operator+(const Fe& o) const {
  if (field_ == nullptr) throw usage_error("operation on a detached field element");
  return field_->add(*this, o);
}

Fe Fe::operator-(const Fe& o) const {
  if (field_ == nullptr) throw usage_error("operation on a detached field element");
  return field_->sub(*this, o);
}

Fe Fe::operator*(const Fe& o) const {
  if (field_ == nullptr) throw usage_error("operation on a detached field element");
  return field_->mul(*this, o);
}

Fe Fe::operator-() const {
  if (field_ == nullptr) throw usage_error("operation on a detached field element");
  return field_->neg(*this);
}

Fe Fe::pow(std::uint64_t e) const {
  if (field_ == nullptr) throw usage_error("operation on a detached field element");
  return field_->pow(*this, e);
}

bool operator==(const Fe& a, const Fe& b) noexcept {
  if (a.field_ == b.field_) return a.c_ == b.c_;
  if (a.field_ == nullptr || b.field_ == nullptr) return false;
  return a.field_->same_as(*b.field_) && a.c_ == b.c_;
}

std::strong_ordering operator<=>(const Fe& a, const Fe& b) noexcept {
  return a.code() <=> b.code();
}

std::string to_string(const Fe& e) {
  if (e.field() == nullptr) throw usage_error("detached field element");
  return e.field()->to_string(e);
}

}  // namespace ffdist
