#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gadgetlab/rational.hpp"

namespace gadgetlab {

/// Ordered partition (I, E_1, ..., E_t) of the tuple positions. Positions are
/// 0-based here and printed 1-based. Groups are nonempty, sorted, and ordered
/// by their smallest element.
struct Profile {
  std::size_t p = 0;
  std::vector<std::size_t> internal;
  std::vector<std::vector<std::size_t>> groups;

  std::size_t external_count() const noexcept { return p - internal.size(); }
  std::size_t t() const noexcept { return groups.size(); }

  friend bool operator==(const Profile&, const Profile&) = default;
  friend auto operator<=>(const Profile&, const Profile&) = default;
};

/// Sorts and validates the parts; throws when they do not partition 0..p-1.
Profile make_profile(std::size_t p, std::vector<std::size_t> internal,
                     std::vector<std::vector<std::size_t>> groups);

/// "(I={1},E1={2,3})", 1-based.
std::string to_string(const Profile& pi);

/// Every profile of a p-tuple, in a fixed order.
std::vector<Profile> all_profiles(std::size_t p);

/// Multi-gadget version: groups are kept per gadget slot.
struct MultiProfile {
  std::size_t p = 0;
  std::vector<std::size_t> internal;
  std::vector<std::vector<std::vector<std::size_t>>> slots;

  friend bool operator==(const MultiProfile&, const MultiProfile&) = default;
};

std::string to_string(const MultiProfile& pi);

/// c^{|I|} (1-c)^{p-|I|} m(m-1)...(m-t+1) / m^{p-|I|}.
///
/// Exact when every gadget copy holds the same number of external vertices;
/// with unequal copies it is only the uniform-copy approximation. Throws when
/// m < t and the profile has external positions.
Rational profile_probability_formula(const Rational& internal_proportion, std::size_t edge_count,
                                     const Profile& pi);

}  // namespace gadgetlab
