#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ffdist/errors.hpp"

namespace ffdist {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Largest extension degree the exhaustive irreducibility validator accepts.
inline constexpr int kMaxExtensionDegree = 4;

/// Element of F_q, q = p^k, stored as its canonical little-endian
/// polynomial-basis coefficient vector (k residues mod p, zero-padded).
/// Equality of elements of one field is a plain bit comparison.
///
/// A default-constructed Fe is detached (no field); any arithmetic on it
/// raises usage_error. It exists so Fe works in standard containers.
class Fe {
 public:
  Fe() = default;

  const Field* field() const noexcept { return field_; }
  bool attached() const noexcept { return field_ != nullptr; }

  /// Mixed-radix code sum_i c_i p^i in [0, q).
  std::uint32_t code() const noexcept;

  std::span<const std::uint16_t> coeffs() const;

  bool is_zero() const noexcept;

  Fe operator+(const Fe& o) const;
  Fe operator-(const Fe& o) const;
  Fe operator*(const Fe& o) const;
  Fe operator-() const;

  /// a^e by repeated squaring; a^0 == 1 for every a, including 0
  /// (0^0 == 1 by convention; norm evaluation never hits it since s >= 2).
  Fe pow(std::uint64_t e) const;

  friend bool operator==(const Fe& a, const Fe& b) noexcept;
  friend bool operator!=(const Fe& a, const Fe& b) noexcept { return !(a == b); }

  /// Orders by code; both operands must belong to one field.
  friend std::strong_ordering operator<=>(const Fe& a, const Fe& b) noexcept;

 private:
  friend class Field;
  const Field* field_ = nullptr;
  std::array<std::uint16_t, kMaxExtensionDegree> c_{};
};

/// Immutable description of F_q for odd prime powers q = p^k.
///
/// k = 1 fields accept any odd prime p < 2^15. Extension fields require a
/// user-supplied monic irreducible modulus and are validated exhaustively;
/// the supported envelope for k > 1 is k <= 4, p <= 13. Characteristic 2 is
/// rejected outright.
class Field {
 public:
  /// F_p, p an odd prime.
  static FieldPtr prime(std::uint32_t p);

  /// F_{p^k}, k >= 2, from a monic degree-k modulus (k+1 little-endian
  /// coefficients over F_p, leading coefficient 1). Irreducibility is
  /// verified by exhaustive trial division.
  static FieldPtr extension(std::uint32_t p, int k,
                            std::span<const std::uint16_t> modulus);

  /// Dispatches on k; modulus required iff k > 1.
  static FieldPtr make(std::uint32_t p, int k,
                       std::span<const std::uint16_t> modulus = {});

  std::uint32_t p() const noexcept { return p_; }
  int k() const noexcept { return k_; }
  std::uint32_t q() const noexcept { return q_; }

  /// Modulus coefficients (k+1 entries) for k > 1; empty for k = 1.
  std::span<const std::uint16_t> modulus() const noexcept { return modulus_; }

  /// Structural identity: same p, k and modulus.
  bool same_as(const Field& o) const noexcept;

  Fe zero() const noexcept;
  Fe one() const noexcept;

  /// Element with the given mixed-radix code in [0, q).
  Fe element(std::uint32_t code) const;

  /// Element from explicit coefficients (at most k, reduced mod p).
  Fe from_coeffs(std::span<const std::uint16_t> coeffs) const;

  /// Embeds an integer via the prime subfield (reduces mod p).
  Fe from_int(std::int64_t v) const noexcept;

  /// Textual encoding: a decimal residue for k = 1, colon-separated
  /// little-endian coefficients for k > 1 ("2:1" is 2 + t). Parsing is
  /// strict: exactly k coefficients, each in [0, p).
  Fe parse(std::string_view text) const;
  std::string to_string(const Fe& e) const;

  // Arithmetic core backing the Fe operators.
  Fe add(const Fe& a, const Fe& b) const;
  Fe sub(const Fe& a, const Fe& b) const;
  Fe mul(const Fe& a, const Fe& b) const;
  Fe neg(const Fe& a) const;
  Fe pow(const Fe& a, std::uint64_t e) const;

 private:
  Field() = default;

  void check_owned(const Fe& a) const;
  void check_pair(const Fe& a, const Fe& b) const;

  std::uint32_t p_ = 0;
  int k_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint16_t> modulus_;
  // t^(k+j) mod modulus for j in [0, k-1), little-endian rows; empty for k=1.
  std::vector<std::array<std::uint16_t, kMaxExtensionDegree>> red_;
};

std::string to_string(const Fe& e);

}  // namespace ffdist
