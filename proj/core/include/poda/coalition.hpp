/*
 * Copyright 2026 The poda Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PODA_COALITION_HPP_
#define PODA_COALITION_HPP_

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace poda {

// Hard limit of the bitset representation.
inline constexpr int kMaxFeatures = 64;
// Largest dimension for which every coalition is enumerated.
inline constexpr int kMaxFullEnumeration = 20;

// A subset S of the feature index set {0, ..., d-1}, stored as a bitmask.
// Bit i is set iff feature i is present.
class CoalitionKey {
 public:
  constexpr CoalitionKey() = default;
  constexpr explicit CoalitionKey(std::uint64_t bits) : bits_(bits) {}

  static constexpr CoalitionKey empty() { return CoalitionKey(); }
  static constexpr CoalitionKey full(int d) {
    return CoalitionKey(d >= 64 ? ~std::uint64_t{0}
                                : (std::uint64_t{1} << d) - 1);
  }
  static constexpr CoalitionKey singleton(int i) {
    return CoalitionKey(std::uint64_t{1} << i);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool is_empty() const { return bits_ == 0; }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1U; }
  constexpr bool is_subset_of(CoalitionKey other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr CoalitionKey with(int i) const {
    return CoalitionKey(bits_ | (std::uint64_t{1} << i));
  }
  constexpr CoalitionKey without(int i) const {
    return CoalitionKey(bits_ & ~(std::uint64_t{1} << i));
  }
  // Position of member i among the members of this coalition, counted in
  // ascending index order. Undefined when i is not a member.
  constexpr int rank_of(int i) const {
    return std::popcount(bits_ & ((std::uint64_t{1} << i) - 1));
  }

  // Member indices in ascending order.
  std::vector<int> members() const;

  // "0b" followed by d binary digits, feature d-1 first.
  std::string to_string(int d) const;
  static std::optional<CoalitionKey> parse(const std::string& text);

  constexpr bool operator==(const CoalitionKey&) const = default;

  // Canonical ordering: by cardinality, then by numeric value.
  constexpr std::strong_ordering operator<=>(const CoalitionKey& other) const {
    if (auto c = size() <=> other.size(); c != 0) return c;
    return bits_ <=> other.bits_;
  }

 private:
  std::uint64_t bits_ = 0;
};

// Every coalition of {0..d-1} with cardinality at most max_size, in canonical
// order.
std::vector<CoalitionKey> coalitions_up_to(int d, int max_size);

// Calls fn(T) for every T subset of S, including the empty set and S itself.
template <typename Fn>
void for_each_subset(CoalitionKey s, Fn&& fn) {
  std::uint64_t sub = s.bits();
  while (true) {
    fn(CoalitionKey(sub));
    if (sub == 0) break;
    sub = (sub - 1) & s.bits();
  }
}

}  // namespace poda

template <>
struct std::hash<poda::CoalitionKey> {
  std::size_t operator()(const poda::CoalitionKey& key) const noexcept {
    return std::hash<std::uint64_t>{}(key.bits());
  }
};

#endif  // PODA_COALITION_HPP_
