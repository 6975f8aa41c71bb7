#include "doctest.h"
#include "equivote/bitset.hpp"
#include "equivote/rng.hpp"

using equivote::Bitset;
using equivote::Rng;

TEST_CASE("bitset basic ops") {
  Bitset b(70);
  CHECK(b.none());
  b.set(0);
  b.set(64);
  b.set(69);
  CHECK(b.count() == 3);
  CHECK(b.test(64));
  CHECK_FALSE(b.test(63));
  CHECK(b.find_first() == 0);
  CHECK(b.find_next(0) == 64);
  CHECK(b.find_next(64) == 69);
  CHECK(b.find_next(69) == -1);

  Bitset c = b.complement();
  CHECK(c.count() == 67);
  CHECK((b & c).none());
  CHECK((b | c) == Bitset::full(70));
  CHECK(b.and_count(c) == 0);
  CHECK(b.xor_count(c) == 70);
}

TEST_CASE("bitset subset and intersection") {
  Bitset a = Bitset::of(9, {1, 3, 5});
  Bitset b = Bitset::of(9, {1, 3, 5, 7});
  CHECK(a.subset_of(b));
  CHECK_FALSE(b.subset_of(a));
  CHECK(a.intersects(b));
  CHECK_FALSE(a.intersects(Bitset::of(9, {0, 2})));
}

TEST_CASE("bitset permuted") {
  Bitset a = Bitset::of(5, {0, 1});
  std::vector<int> rot{1, 2, 3, 4, 0};
  CHECK(a.permuted(rot) == Bitset::of(5, {1, 2}));
}

TEST_CASE("bitset random round trips") {
  Rng rng(42);
  for (int t = 0; t < 50; ++t) {
    int n = 1 + rng.index(200);
    Bitset b(n);
    for (int i = 0; i < n; ++i)
      if (rng.bernoulli(0.4)) b.set(i);
    CHECK(Bitset::from_indices(n, b.to_indices()) == b);
    CHECK(b.complement().complement() == b);
    CHECK(b.count() + b.complement().count() == n);
  }
}

TEST_CASE("rng determinism and bounds") {
  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng r(9);
  for (int i = 0; i < 1000; ++i) {
    uint64_t x = r.below(13);
    CHECK(x < 13);
    double u = r.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  auto s = Rng(3).sample_indices(10, 4);
  CHECK(s.size() == 4);
  std::sort(s.begin(), s.end());
  CHECK(std::unique(s.begin(), s.end()) == s.end());
}
