#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace dtpasp {

// Fixed-width bit vector sized at construction; lexicographic comparison
// treats bit 0 as the most significant position so that ordering matches
// "subset listed by first differing atom".
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i, bool v = true) {
    if (v)
      words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    else
      words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  bool is_subset_of(const Bitset& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }
  Bitset operator&(const Bitset& other) const {
    Bitset out(n_);
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i] & other.words_[i];
    return out;
  }
  bool operator==(const Bitset&) const = default;
  bool operator<(const Bitset& other) const {
    // Bit-0-first lexicographic order.
    for (std::size_t i = 0; i < n_; ++i) {
      bool a = test(i), b = other.test(i);
      if (a != b) return b;  // absent-before-present at the first difference
    }
    return false;
  }

  std::uint64_t low_word() const { return words_.empty() ? 0 : words_[0]; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace dtpasp
