#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gadgetlab/gadget.hpp"
#include "gadgetlab/structure.hpp"

namespace gadgetlab {

enum class Role { plain, base, gadget };

/// A parametric family of structures indexed by n >= 1.
///
/// Families (undirected graphs use the symmetric binary symbol E):
///   clique                          K_n
///   star                            S_n: center 0, leaves 1..n
///   path                            vertices 0..n, length n
///   lollipop          k, l          L_{k,l}: clique 0..k-1, path k-1, k, ..., k+l-1
///                                   (k and l default to n)
///   lollipop-alternating            L_{n,n^3} for odd n, L_{n,ceil(n^1.5)} for even n
///   marked-independent-union        K_{n^2} + I_n^R + I_{2n}^{R,S} for odd n, with the
///                                   independent sets' sizes swapped for even n
///   random-hypergraph  k, p         H^k(n,p), one sorted tuple per k-subset
///   random-hypergraph-alternating   H^k(n,p) for odd n, H^k(n,q) for even n
///                      k, p, q
///   attach-leaves      leaves       `of`(n) with `leaves` (default n) pendant vertices
///                                   marked Leaf attached to every vertex
///   fluctuating-base                K_n for odd n, K_{2^n} for even n, vertex 0 marked R
///   fluctuating-gadget              S_{2^n} for odd n, S_n for even n
///
/// Options: "mark" names a unary symbol marking vertex 0; "root_mode" picks
/// gadget roots (star: center | leaf; path: endpoints | start);
/// "symmetric" = "true" stores random 2-uniform hypergraphs symmetrically;
/// "transform" = "subdivide" 1-subdivides the result.
struct SequenceSpec {
  std::string family;
  std::map<std::string, double> params;
  std::map<std::string, std::string> options;
  std::uint64_t seed = 0;
  Role role = Role::plain;
  std::shared_ptr<const SequenceSpec> of;
};

/// Throws invalid_argument for unknown families, parameters or options.
void validate(const SequenceSpec& spec);

/// The n-th structure of the family; random families draw from the stream
/// derive_seed(seed, n).
Structure generate(const SequenceSpec& spec, std::size_t n);

/// The n-th element with its roots (star, path, fluctuating-gadget).
Gadget generate_gadget(const SequenceSpec& spec, std::size_t n);

const char* to_string(Role role) noexcept;
Role role_from_string(const std::string& name);

/// Closed-form ceil(n^{3/2}).
std::uint64_t ceil_pow_three_halves(std::uint64_t n);

/// Every (q-1)-set S and every split of its (k-1)-subsets into F_0, F_1 has
/// a witness v outside S with A u {v} an edge exactly for A in F_1.
bool check_extension_property(const Structure& hypergraph, std::size_t q, const std::string& symbol = "E");

}  // namespace gadgetlab
