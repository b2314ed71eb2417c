#include <doctest.h>

#include <array>

#include "helpers.hpp"

using namespace ffdist;

TEST_SUITE("field") {

TEST_CASE("addition") {
  auto f5 = Field::prime(5);
  CHECK(f5->element(3) + f5->element(4) == f5->element(2));

  // identity
  for (std::uint32_t c = 0; c < 5; ++c)
    CHECK(f5->element(c) + f5->zero() == f5->element(c));

  // F9 = F3[t]/(t^2+1): (1 + t) + (2 + 2t) = 0
  auto f9 = tt::F9();
  const Fe a = f9->parse("1:1");
  const Fe b = f9->parse("2:2");
  CHECK((a + b).is_zero());
}

TEST_CASE("multiplication") {
  auto f5 = Field::prime(5);
  CHECK(f5->element(3) * f5->element(4) == f5->element(2));
  for (std::uint32_t c = 0; c < 5; ++c)
    CHECK(f5->element(c) * f5->one() == f5->element(c));

  // t * t = t^2 = -1 = 2 under t^2 + 1
  auto f9 = tt::F9();
  const Fe t = f9->parse("0:1");
  CHECK(t * t == f9->parse("2:0"));
}

TEST_CASE("powers") {
  auto f7 = Field::prime(7);
  CHECK(f7->element(3).pow(2) == f7->element(2));
  for (std::uint32_t c = 0; c < 7; ++c) CHECK(f7->element(c).pow(1) == f7->element(c));

  auto f5 = Field::prime(5);
  CHECK(f5->element(2).pow(4) == f5->one());
  CHECK(f5->zero().pow(0) == f5->one());  // 0^0 = 1 by convention
}

TEST_CASE("ring axioms on random triples") {
  const std::vector<FieldPtr> fields = {Field::prime(5), Field::prime(13), tt::F9(), tt::F27(),
                                        tt::F49()};
  SplitMix64 rng(0x5eed);
  for (int i = 0; i < 1000; ++i) {
    const FieldPtr& f = fields[static_cast<std::size_t>(i) % fields.size()];
    const Fe a = f->element(static_cast<std::uint32_t>(rng.below(f->q())));
    const Fe b = f->element(static_cast<std::uint32_t>(rng.below(f->q())));
    const Fe c = f->element(static_cast<std::uint32_t>(rng.below(f->q())));
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a * b == b * a);
    REQUIRE(a + b == b + a);
  }
}

TEST_CASE("multiplicative group order: a^(q-1) = 1 for all q <= 81") {
  std::vector<FieldPtr> fields;
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u, 43u, 47u,
                          53u, 59u, 61u, 67u, 71u, 73u, 79u})
    fields.push_back(Field::prime(p));
  fields.push_back(tt::F9());
  fields.push_back(tt::F25());
  fields.push_back(tt::F27());
  fields.push_back(tt::F49());
  fields.push_back(tt::F81());

  for (const FieldPtr& f : fields) {
    for (std::uint32_t c = 1; c < f->q(); ++c)
      REQUIRE(f->element(c).pow(f->q() - 1) == f->one());
  }
}

TEST_CASE("canonical code and text round trips") {
  for (const FieldPtr& f : {Field::prime(7), tt::F9(), tt::F27(), tt::F81()}) {
    for (std::uint32_t c = 0; c < f->q(); ++c) {
      const Fe e = f->element(c);
      CHECK(e.code() == c);
      CHECK(f->parse(f->to_string(e)) == e);
    }
  }
}

TEST_CASE("mismatched fields are rejected") {
  auto f5 = Field::prime(5);
  auto f7 = Field::prime(7);
  CHECK_THROWS_AS(f5->element(1) + f7->element(1), usage_error);
  CHECK_THROWS_AS(f5->element(2) * f7->element(2), usage_error);
  CHECK(f5->element(1) != f7->element(1));

  // structurally equal fields interoperate
  auto f5b = Field::prime(5);
  CHECK(f5->element(3) + f5b->element(4) == f5->element(2));

  Fe detached;
  CHECK_THROWS_AS(detached + f5->element(0), usage_error);
}

TEST_CASE("construction rejects bad parameters") {
  CHECK_THROWS_AS(Field::prime(2), usage_error);       // characteristic 2
  CHECK_THROWS_AS(Field::prime(9), usage_error);       // not prime
  CHECK_THROWS_AS(Field::prime(1), usage_error);
  CHECK_THROWS_AS(Field::prime(40000), capacity_error);

  const std::array<std::uint16_t, 3> reducible{2, 0, 1};  // t^2 + 2 = (t-1)(t+1) mod 3
  CHECK_THROWS_AS(Field::extension(3, 2, reducible), usage_error);
  const std::array<std::uint16_t, 3> nonmonic{1, 0, 2};
  CHECK_THROWS_AS(Field::extension(3, 2, nonmonic), usage_error);
  const std::array<std::uint16_t, 2> short_mod{1, 1};
  CHECK_THROWS_AS(Field::extension(3, 2, short_mod), usage_error);
  const std::array<std::uint16_t, 3> big_coeff{4, 0, 1};
  CHECK_THROWS_AS(Field::extension(3, 2, big_coeff), usage_error);
  const std::array<std::uint16_t, 3> f17mod{3, 0, 1};
  CHECK_THROWS_AS(Field::extension(17, 2, f17mod), capacity_error);  // p > 13 envelope
  const std::array<std::uint16_t, 6> deg5{1, 1, 0, 0, 0, 1};
  CHECK_THROWS_AS(Field::extension(3, 5, deg5), capacity_error);     // k > 4 envelope
}

TEST_CASE("strict element parsing") {
  auto f5 = Field::prime(5);
  CHECK_THROWS_AS(f5->parse("7"), usage_error);    // >= p
  CHECK_THROWS_AS(f5->parse("1:2"), usage_error);  // k = 1 takes one coefficient
  CHECK_THROWS_AS(f5->parse("x"), usage_error);
  auto f9 = tt::F9();
  CHECK_THROWS_AS(f9->parse("2"), usage_error);    // k = 2 needs two
  CHECK(f9->parse("2:1").code() == 2 + 3);
}

TEST_CASE("element ordering follows codes") {
  auto f9 = tt::F9();
  CHECK(f9->element(3) < f9->element(7));
  CHECK(f9->element(7) > f9->element(3));
}

}  // TEST_SUITE
