#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace mla {

/// Integer frequency vector h in Z^d.
class Frequency {
public:
  /// Components must satisfy |h_j| < 2^31 so that dot products with
  /// generating vectors stay exact in 128-bit arithmetic.
  static constexpr std::int64_t kMaxComponent = (std::int64_t{1} << 31) - 1;

  Frequency() = default;
  explicit Frequency(std::vector<std::int64_t> components);
  Frequency(std::initializer_list<std::int64_t> components);

  static Frequency zero(std::size_t dimension);

  std::size_t dimension() const { return components_.size(); }
  std::int64_t operator[](std::size_t j) const { return components_[j]; }
  std::span<const std::int64_t> components() const { return components_; }

  bool is_zero() const;
  /// Bitmask of the support {j : h_j != 0}; requires dimension <= 64.
  std::uint64_t support_mask() const;
  Frequency operator-() const;
  Frequency operator-(const Frequency& other) const;

  std::string to_string() const;

  friend auto operator<=>(const Frequency&, const Frequency&) = default;
  friend bool operator==(const Frequency&, const Frequency&) = default;

private:
  std::vector<std::int64_t> components_;
};

std::ostream& operator<<(std::ostream& os, const Frequency& h);

/// Ordered, duplicate-free collection of frequencies of one dimension.
/// The order is whatever the producer chose (lexicographic for enumerations,
/// rank order for selected index sets); duplicates are rejected on construction.
class IndexSet {
public:
  explicit IndexSet(std::size_t dimension) : dimension_(dimension) {}
  IndexSet(std::size_t dimension, std::vector<Frequency> frequencies);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return frequencies_.size(); }
  bool empty() const { return frequencies_.empty(); }

  const Frequency& operator[](std::size_t i) const { return frequencies_[i]; }
  const std::vector<Frequency>& frequencies() const { return frequencies_; }
  auto begin() const { return frequencies_.begin(); }
  auto end() const { return frequencies_.end(); }

  /// Linear search; for repeated queries sort a copy and binary search.
  bool contains(const Frequency& h) const;
  /// True when every element is also in `other`.
  bool is_subset_of(const IndexSet& other) const;
  /// Copy in lexicographic order.
  IndexSet sorted() const;

  /// One frequency per line, components separated by single spaces.
  void write_text(std::ostream& os) const;
  static IndexSet read_text(std::istream& is, std::size_t dimension);

private:
  std::size_t dimension_;
  std::vector<Frequency> frequencies_;
};

}  // namespace mla
