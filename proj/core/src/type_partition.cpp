#include "gadgetlab/type_partition.hpp"

#include <algorithm>

#include "gadgetlab/error.hpp"

namespace gadgetlab {

namespace {

std::size_t tuple_count(std::size_t n, std::size_t len) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < len; ++i) {
    if (n != 0 && total > (std::size_t{1} << 40) / n)
      throw BudgetExceeded("type partition over " + std::to_string(n) + "^" + std::to_string(len) + " tuples");
    total *= n;
  }
  return total;
}

void decode(std::size_t code, std::size_t n, std::size_t len, std::vector<Vertex>& out) {
  out.resize(len);
  for (std::size_t i = len; i-- > 0;) {
    out[i] = static_cast<Vertex>(code % n);
    code /= n;
  }
}

std::vector<std::uint32_t> atomic_level(const Structure& s, std::size_t len, TypeInterner& interner) {
  std::size_t n = s.size();
  std::size_t count = tuple_count(n, len);
  std::size_t c = s.constants().size();
  std::size_t width = len + c;
  const auto& rels = s.language().relations();
  std::vector<std::uint32_t> out(count);
  std::vector<Vertex> tuple, ext(width), image;
  std::vector<std::size_t> idx;
  for (std::size_t code = 0; code < count; ++code) {
    decode(code, n, len, tuple);
    std::copy(tuple.begin(), tuple.end(), ext.begin());
    for (std::size_t i = 0; i < c; ++i) ext[len + i] = s.constant(i);
    std::vector<std::uint64_t> fp{0, len};
    for (std::size_t i = 0; i < width; ++i)
      for (std::size_t j = i + 1; j < width; ++j) fp.push_back(ext[i] == ext[j]);
    for (std::size_t r = 0; r < rels.size(); ++r) {
      std::size_t ar = rels[r].arity;
      idx.assign(ar, 0);
      image.resize(ar);
      std::uint64_t bits = 0;
      std::size_t nbits = 0;
      for (bool more = width > 0 || ar == 0; more;) {
        for (std::size_t i = 0; i < ar; ++i) image[i] = ext[idx[i]];
        bits = (bits << 1) | (s.contains(r, image) ? 1u : 0u);
        if (++nbits == 64) {
          fp.push_back(bits);
          bits = 0;
          nbits = 0;
        }
        more = false;
        for (std::size_t i = ar; i-- > 0;) {
          if (++idx[i] < width) {
            more = true;
            break;
          }
          idx[i] = 0;
        }
      }
      fp.push_back(bits);
    }
    out[code] = interner.intern(fp);
  }
  return out;
}

}  // namespace

std::uint32_t TypeInterner::intern(const std::vector<std::uint64_t>& fingerprint) {
  auto [it, inserted] = ids_.emplace(fingerprint, static_cast<std::uint32_t>(ids_.size()));
  return it->second;
}

std::uint32_t TypePartition::id(std::span<const Vertex> tuple) const {
  if (tuple.size() != p) throw Error(ErrorCode::invalid_argument, "tuple length differs from p");
  std::size_t code = 0;
  for (Vertex v : tuple) {
    if (v >= n) throw Error(ErrorCode::out_of_range, "vertex " + std::to_string(v) + " out of range");
    code = code * n + v;
  }
  return ids.at(code);
}

TypePartition rank_k_type_partition(const Structure& s, std::size_t k, std::size_t p, TypeInterner& interner) {
  std::size_t n = s.size();
  std::size_t top = p + k;
  tuple_count(n, top);
  // table[len][level]
  std::vector<std::vector<std::vector<std::uint32_t>>> table(top + 1);
  for (std::size_t len = p; len <= top; ++len) table[len].push_back(atomic_level(s, len, interner));
  std::vector<std::uint64_t> fp;
  for (std::size_t level = 1; level <= k; ++level) {
    for (std::size_t len = p; len + level <= top; ++len) {
      const auto& prev = table[len][level - 1];
      const auto& ext = table[len + 1][level - 1];
      std::vector<std::uint32_t> cur(prev.size());
      for (std::size_t code = 0; code < prev.size(); ++code) {
        fp.assign({1, level, prev[code]});
        std::size_t start = fp.size();
        for (std::size_t v = 0; v < n; ++v) fp.push_back(ext[code * n + v]);
        std::sort(fp.begin() + static_cast<std::ptrdiff_t>(start), fp.end());
        fp.erase(std::unique(fp.begin() + static_cast<std::ptrdiff_t>(start), fp.end()), fp.end());
        cur[code] = interner.intern(fp);
      }
      table[len].push_back(std::move(cur));
    }
  }
  TypePartition out;
  out.k = k;
  out.p = p;
  out.n = n;
  out.ids = std::move(table[p][k]);
  std::vector<std::uint32_t> distinct = out.ids;
  std::sort(distinct.begin(), distinct.end());
  out.type_count = static_cast<std::size_t>(std::unique(distinct.begin(), distinct.end()) - distinct.begin());
  return out;
}

TypePartition rank_k_type_partition(const Structure& s, std::size_t k, std::size_t p) {
  TypeInterner interner;
  return rank_k_type_partition(s, k, p, interner);
}

bool same_type(const Structure& a, std::span<const Vertex> a_tuple, const Structure& b,
               std::span<const Vertex> b_tuple, std::size_t k) {
  if (!a.language().same_symbols(b.language()))
    throw Error(ErrorCode::language_mismatch, "type comparison across different languages");
  if (a_tuple.size() != b_tuple.size()) throw Error(ErrorCode::invalid_argument, "tuple lengths differ");
  TypeInterner interner;
  auto pa = rank_k_type_partition(a, k, a_tuple.size(), interner);
  auto pb = rank_k_type_partition(b.reordered_to(a.language()), k, b_tuple.size(), interner);
  return pa.id(a_tuple) == pb.id(b_tuple);
}

}  // namespace gadgetlab
