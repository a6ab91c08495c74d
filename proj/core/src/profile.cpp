#include "gadgetlab/profile.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "gadgetlab/error.hpp"

namespace gadgetlab {

namespace {

std::string format_set(const std::vector<std::size_t>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i] + 1);
  }
  return out + "}";
}

void normalize_groups(std::vector<std::vector<std::size_t>>& groups) {
  for (auto& g : groups) std::sort(g.begin(), g.end());
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

}  // namespace

Profile make_profile(std::size_t p, std::vector<std::size_t> internal,
                     std::vector<std::vector<std::size_t>> groups) {
  std::vector<int> seen(p, 0);
  auto mark = [&](std::size_t i) {
    if (i >= p) throw Error(ErrorCode::invalid_argument, "profile position out of range");
    if (seen[i]++) throw Error(ErrorCode::invalid_argument, "profile parts overlap");
  };
  for (auto i : internal) mark(i);
  for (const auto& g : groups) {
    if (g.empty()) throw Error(ErrorCode::invalid_argument, "empty profile group");
    for (auto i : g) mark(i);
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw Error(ErrorCode::invalid_argument, "profile parts do not cover every position");
  std::sort(internal.begin(), internal.end());
  normalize_groups(groups);
  return Profile{p, std::move(internal), std::move(groups)};
}

std::string to_string(const Profile& pi) {
  std::string out = "(I=" + format_set(pi.internal);
  for (std::size_t j = 0; j < pi.groups.size(); ++j)
    out += ",E" + std::to_string(j + 1) + "=" + format_set(pi.groups[j]);
  return out + ")";
}

std::string to_string(const MultiProfile& pi) {
  std::string out = "(I=" + format_set(pi.internal);
  for (std::size_t s = 0; s < pi.slots.size(); ++s)
    for (std::size_t j = 0; j < pi.slots[s].size(); ++j)
      out += ",E" + std::to_string(s + 1) + "." + std::to_string(j + 1) + "=" +
             format_set(pi.slots[s][j]);
  return out + ")";
}

std::vector<Profile> all_profiles(std::size_t p) {
  std::vector<Profile> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p); ++mask) {
    std::vector<std::size_t> internal, rest;
    for (std::size_t i = 0; i < p; ++i) ((mask >> i) & 1 ? internal : rest).push_back(i);
    // Set partitions of `rest` via restricted growth strings.
    std::vector<std::vector<std::size_t>> groups;
    std::function<void(std::size_t)> place = [&](std::size_t idx) {
      if (idx == rest.size()) {
        out.push_back(Profile{p, internal, groups});
        return;
      }
      for (std::size_t g = 0; g < groups.size(); ++g) {
        groups[g].push_back(rest[idx]);
        place(idx + 1);
        groups[g].pop_back();
      }
      groups.push_back({rest[idx]});
      place(idx + 1);
      groups.pop_back();
    };
    place(0);
  }
  return out;
}

Rational profile_probability_formula(const Rational& c, std::size_t m, const Profile& pi) {
  if (c < 0 || c > 1) throw Error(ErrorCode::invalid_argument, "internal proportion outside [0,1]");
  std::size_t ext = pi.external_count();
  std::size_t t = pi.t();
  if (ext == 0) return pow(c, static_cast<unsigned>(pi.p));
  if (m < t)
    throw Error(ErrorCode::invalid_argument,
                "profile needs " + std::to_string(t) + " copies but only " + std::to_string(m) +
                    " edges exist");
  Rational falling = 1;
  for (std::size_t i = 0; i < t; ++i) falling *= Rational(m - i);
  return pow(c, static_cast<unsigned>(pi.internal.size())) * pow(Rational(1) - c, static_cast<unsigned>(ext)) *
         falling / pow(Rational(m), static_cast<unsigned>(ext));
}

}  // namespace gadgetlab
