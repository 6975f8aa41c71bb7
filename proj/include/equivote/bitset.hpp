#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace equivote {

// Fixed-width set of {0,..,n-1} packed into 64-bit words. Used for voter
// coalitions, graph adjacency rows and closed balls alike.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int n) : n_(n), w_(words_for(n), 0) { assert(n >= 0); }

  static Bitset full(int n) {
    Bitset b(n);
    for (auto& w : b.w_) w = ~uint64_t{0};
    b.trim();
    return b;
  }
  static Bitset of(int n, std::initializer_list<int> bits) {
    Bitset b(n);
    for (int i : bits) b.set(i);
    return b;
  }
  static Bitset from_indices(int n, const std::vector<int>& bits) {
    Bitset b(n);
    for (int i : bits) b.set(i);
    return b;
  }
  static Bitset from_word(int n, uint64_t mask) {
    assert(n <= 64);
    Bitset b(n);
    if (!b.w_.empty()) b.w_[0] = mask;
    b.trim();
    return b;
  }

  int size() const { return n_; }

  bool test(int i) const {
    assert(i >= 0 && i < n_);
    return (w_[i >> 6] >> (i & 63)) & 1;
  }
  void set(int i) {
    assert(i >= 0 && i < n_);
    w_[i >> 6] |= uint64_t{1} << (i & 63);
  }
  void reset(int i) {
    assert(i >= 0 && i < n_);
    w_[i >> 6] &= ~(uint64_t{1} << (i & 63));
  }
  void flip(int i) {
    assert(i >= 0 && i < n_);
    w_[i >> 6] ^= uint64_t{1} << (i & 63);
  }

  int count() const {
    int c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
  }
  bool any() const {
    for (uint64_t w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  Bitset operator&(const Bitset& o) const { return zip(o, [](uint64_t a, uint64_t b) { return a & b; }); }
  Bitset operator|(const Bitset& o) const { return zip(o, [](uint64_t a, uint64_t b) { return a | b; }); }
  Bitset operator^(const Bitset& o) const { return zip(o, [](uint64_t a, uint64_t b) { return a ^ b; }); }
  Bitset& operator&=(const Bitset& o) { return zip_in(o, [](uint64_t a, uint64_t b) { return a & b; }); }
  Bitset& operator|=(const Bitset& o) { return zip_in(o, [](uint64_t a, uint64_t b) { return a | b; }); }
  Bitset& operator^=(const Bitset& o) { return zip_in(o, [](uint64_t a, uint64_t b) { return a ^ b; }); }

  Bitset complement() const {
    Bitset r(n_);
    for (size_t k = 0; k < w_.size(); ++k) r.w_[k] = ~w_[k];
    r.trim();
    return r;
  }

  int and_count(const Bitset& o) const {
    assert(n_ == o.n_);
    int c = 0;
    for (size_t k = 0; k < w_.size(); ++k) c += std::popcount(w_[k] & o.w_[k]);
    return c;
  }
  int xor_count(const Bitset& o) const {
    assert(n_ == o.n_);
    int c = 0;
    for (size_t k = 0; k < w_.size(); ++k) c += std::popcount(w_[k] ^ o.w_[k]);
    return c;
  }
  bool subset_of(const Bitset& o) const {
    assert(n_ == o.n_);
    for (size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }
  bool intersects(const Bitset& o) const {
    assert(n_ == o.n_);
    for (size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & o.w_[k]) return true;
    return false;
  }

  bool operator==(const Bitset& o) const = default;
  // Lexicographic on words; a stable total order for canonical sorting.
  bool operator<(const Bitset& o) const {
    assert(n_ == o.n_);
    for (size_t k = w_.size(); k-- > 0;)
      if (w_[k] != o.w_[k]) return w_[k] < o.w_[k];
    return false;
  }

  int find_first() const { return find_next(-1); }
  int find_next(int i) const {
    for (int j = i + 1; j < n_;) {
      uint64_t w = w_[j >> 6] >> (j & 63);
      if (w) return j + std::countr_zero(w);
      j = (j | 63) + 1;
    }
    return -1;
  }
  template <class F>
  void for_each(F f) const {
    for (int i = find_first(); i >= 0; i = find_next(i)) f(i);
  }
  std::vector<int> to_indices() const {
    std::vector<int> v;
    v.reserve(count());
    for_each([&](int i) { v.push_back(i); });
    return v;
  }

  // Image under a permutation given as an image vector of length n.
  Bitset permuted(const std::vector<int>& img) const {
    assert((int)img.size() == n_);
    Bitset r(n_);
    for_each([&](int i) { r.set(img[i]); });
    return r;
  }

  uint64_t hash() const {
    uint64_t h = 1469598103934665603ull ^ (uint64_t)n_;
    for (uint64_t w : w_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return h;
  }

  uint64_t low_word() const { return w_.empty() ? 0 : w_[0]; }

  std::string to_string() const {  // bit i at position i, for diagnostics
    std::string s(n_, '0');
    for_each([&](int i) { s[i] = '1'; });
    return s;
  }

 private:
  static size_t words_for(int n) { return (size_t)(n + 63) / 64; }
  void trim() {
    if (n_ & 63) w_.back() &= (~uint64_t{0}) >> (64 - (n_ & 63));
  }
  template <class Op>
  Bitset zip(const Bitset& o, Op op) const {
    assert(n_ == o.n_);
    Bitset r(n_);
    for (size_t k = 0; k < w_.size(); ++k) r.w_[k] = op(w_[k], o.w_[k]);
    return r;
  }
  template <class Op>
  Bitset& zip_in(const Bitset& o, Op op) {
    assert(n_ == o.n_);
    for (size_t k = 0; k < w_.size(); ++k) w_[k] = op(w_[k], o.w_[k]);
    return *this;
  }

  int n_ = 0;
  std::vector<uint64_t> w_;
};

struct BitsetHash {
  size_t operator()(const Bitset& b) const { return (size_t)b.hash(); }
};

}  // namespace equivote
