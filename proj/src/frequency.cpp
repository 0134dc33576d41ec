#include "mla/frequency.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mla {

namespace {

void check_components(const std::vector<std::int64_t>& components) {
  for (auto c : components) {
    if (c > Frequency::kMaxComponent || c < -Frequency::kMaxComponent)
      throw std::out_of_range("frequency component exceeds 2^31 - 1 in magnitude");
  }
}

}  // namespace

Frequency::Frequency(std::vector<std::int64_t> components)
    : components_(std::move(components)) {
  check_components(components_);
}

Frequency::Frequency(std::initializer_list<std::int64_t> components)
    : components_(components) {
  check_components(components_);
}

Frequency Frequency::zero(std::size_t dimension) {
  return Frequency(std::vector<std::int64_t>(dimension, 0));
}

bool Frequency::is_zero() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](std::int64_t c) { return c == 0; });
}

std::uint64_t Frequency::support_mask() const {
  if (components_.size() > 64)
    throw std::invalid_argument("support_mask requires dimension <= 64");
  std::uint64_t mask = 0;
  for (std::size_t j = 0; j < components_.size(); ++j)
    if (components_[j] != 0) mask |= std::uint64_t{1} << j;
  return mask;
}

Frequency Frequency::operator-() const {
  std::vector<std::int64_t> out(components_.size());
  std::transform(components_.begin(), components_.end(), out.begin(),
                 [](std::int64_t c) { return -c; });
  return Frequency(std::move(out));
}

Frequency Frequency::operator-(const Frequency& other) const {
  if (other.dimension() != dimension())
    throw std::invalid_argument("frequency dimension mismatch");
  std::vector<std::int64_t> out(components_.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = components_[j] - other.components_[j];
  return Frequency(std::move(out));
}

std::string Frequency::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Frequency& h) {
  os << '(';
  for (std::size_t j = 0; j < h.dimension(); ++j) {
    if (j) os << ',';
    os << h[j];
  }
  return os << ')';
}

IndexSet::IndexSet(std::size_t dimension, std::vector<Frequency> frequencies)
    : dimension_(dimension), frequencies_(std::move(frequencies)) {
  for (const auto& h : frequencies_)
    if (h.dimension() != dimension_)
      throw std::invalid_argument("index set entry has wrong dimension");
  std::vector<const Frequency*> order;
  order.reserve(frequencies_.size());
  for (const auto& h : frequencies_) order.push_back(&h);
  std::sort(order.begin(), order.end(),
            [](const Frequency* a, const Frequency* b) { return *a < *b; });
  auto dup = std::adjacent_find(order.begin(), order.end(),
                                [](const Frequency* a, const Frequency* b) { return *a == *b; });
  if (dup != order.end())
    throw std::invalid_argument("duplicate frequency in index set: " + (*dup)->to_string());
}

bool IndexSet::contains(const Frequency& h) const {
  return std::find(frequencies_.begin(), frequencies_.end(), h) != frequencies_.end();
}

bool IndexSet::is_subset_of(const IndexSet& other) const {
  auto mine = sorted().frequencies_;
  auto theirs = other.sorted().frequencies_;
  return std::includes(theirs.begin(), theirs.end(), mine.begin(), mine.end());
}

IndexSet IndexSet::sorted() const {
  IndexSet out(dimension_);
  out.frequencies_ = frequencies_;
  std::sort(out.frequencies_.begin(), out.frequencies_.end());
  return out;
}

void IndexSet::write_text(std::ostream& os) const {
  for (const auto& h : frequencies_) {
    for (std::size_t j = 0; j < h.dimension(); ++j) {
      if (j) os << ' ';
      os << h[j];
    }
    os << '\n';
  }
}

IndexSet IndexSet::read_text(std::istream& is, std::size_t dimension) {
  std::vector<Frequency> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<std::int64_t> c;
    std::int64_t v;
    while (ls >> v) c.push_back(v);
    if (!ls.eof() || c.size() != dimension)
      throw std::runtime_error("malformed index set line: " + line);
    out.emplace_back(std::move(c));
  }
  return IndexSet(dimension, std::move(out));
}

}  // namespace mla
