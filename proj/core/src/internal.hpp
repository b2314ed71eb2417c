#pragma once

// Internal helpers shared by the geometry and counting translation units.
// Not installed.

#include <cstdint>
#include <span>
#include <vector>

#include "ffdist/geometry.hpp"

namespace ffdist::detail {

// Flat little-endian base-p digit matrix for a point-code list; k*d digits
// per row. Pairwise difference codes come straight off these rows.
struct DigitMatrix {
  int kd = 0;
  std::uint32_t p = 0;
  std::vector<std::uint16_t> digits;

  DigitMatrix(const Space& sp, std::span<const std::uint64_t> codes)
      : kd(sp.field->k() * sp.dim), p(sp.field->p()) {
    digits.resize(codes.size() * static_cast<std::size_t>(kd));
    std::size_t at = 0;
    for (std::uint64_t code : codes) {
      std::uint64_t c = code;
      for (int j = 0; j < kd; ++j) {
        digits[at++] = static_cast<std::uint16_t>(c % p);
        c /= p;
      }
    }
  }

  const std::uint16_t* row(std::size_t i) const {
    return digits.data() + i * static_cast<std::size_t>(kd);
  }
};

// Evaluates ||x - y||_s value codes from digit rows without any q^d table:
// d per-axis lookups a_i * w^s plus base-p code additions.
class NormKernel {
 public:
  explicit NormKernel(const NormSpec& n)
      : d_(n.space.dim),
        k_(n.space.field->k()),
        p_(n.space.field->p()),
        q_(n.space.field->q()) {
    const Field& f = *n.space.field;
    axis_.resize(static_cast<std::size_t>(d_) * q_);
    for (int i = 0; i < d_; ++i)
      for (std::uint32_t w = 0; w < q_; ++w)
        axis_[static_cast<std::size_t>(i) * q_ + w] =
            (n.a[static_cast<std::size_t>(i)] * f.element(w).pow(static_cast<std::uint64_t>(n.s)))
                .code();
  }

  // x, y point to k*d little-endian digits each.
  std::uint32_t operator()(const std::uint16_t* x, const std::uint16_t* y) const {
    std::uint32_t acc = 0;
    for (int i = 0; i < d_; ++i) {
      std::uint32_t w = 0;
      const int base = i * k_;
      for (int j = k_ - 1; j >= 0; --j) {
        std::uint32_t dd = static_cast<std::uint32_t>(x[base + j]) + p_ - y[base + j];
        if (dd >= p_) dd -= p_;
        w = w * p_ + dd;
      }
      acc = add_codes(acc, axis_[static_cast<std::size_t>(i) * q_ + w]);
    }
    return acc;
  }

  std::uint32_t q() const { return q_; }

 private:
  std::uint32_t add_codes(std::uint32_t a, std::uint32_t b) const {
    if (k_ == 1) {
      std::uint32_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    std::uint32_t r = 0, mult = 1;
    for (int j = 0; j < k_; ++j) {
      std::uint32_t s = a % p_ + b % p_;
      if (s >= p_) s -= p_;
      r += s * mult;
      mult *= p_;
      a /= p_;
      b /= p_;
    }
    return r;
  }

  int d_;
  int k_;
  std::uint32_t p_;
  std::uint32_t q_;
  std::vector<std::uint32_t> axis_;
};

}  // namespace ffdist::detail
