#include "gadgetlab/structure.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "gadgetlab/error.hpp"

namespace gadgetlab {

namespace {

constexpr std::size_t kDenseLimit = std::size_t{1} << 24;

// n^arity when it fits under the dense-bitmap limit.
std::optional<std::size_t> dense_size(std::size_t n, std::size_t arity) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    if (n != 0 && total > kDenseLimit / n) return std::nullopt;
    total *= n;
  }
  if (total > kDenseLimit) return std::nullopt;
  return total;
}

std::size_t dense_key(std::size_t n, std::span<const Vertex> tuple) {
  std::size_t key = 0;
  for (Vertex v : tuple) key = key * n + v;
  return key;
}

}  // namespace

// ---- Language ----

Language::Language(std::vector<RelationSymbol> relations, std::vector<std::string> constants)
    : relations_(std::move(relations)), constants_(std::move(constants)) {
  std::set<std::string, std::less<>> seen;
  for (const auto& r : relations_) {
    if (r.name.empty()) throw Error(ErrorCode::invalid_argument, "empty relation name");
    if (r.arity == 0)
      throw Error(ErrorCode::invalid_argument, "relation " + r.name + " has arity 0");
    if (!seen.insert(r.name).second)
      throw Error(ErrorCode::invalid_argument, "duplicate symbol " + r.name);
  }
  for (const auto& c : constants_) {
    if (c.empty()) throw Error(ErrorCode::invalid_argument, "empty constant name");
    if (!seen.insert(c).second) throw Error(ErrorCode::invalid_argument, "duplicate symbol " + c);
  }
}

std::optional<std::size_t> Language::relation_index(std::string_view name) const {
  for (std::size_t i = 0; i < relations_.size(); ++i)
    if (relations_[i].name == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Language::constant_index(std::string_view name) const {
  for (std::size_t i = 0; i < constants_.size(); ++i)
    if (constants_[i] == name) return i;
  return std::nullopt;
}

bool Language::has_symbol(std::string_view name) const {
  return relation_index(name).has_value() || constant_index(name).has_value();
}

std::size_t Language::require_relation(std::string_view name) const {
  auto idx = relation_index(name);
  if (!idx) throw Error(ErrorCode::language_mismatch, "unknown relation symbol " + std::string(name));
  return *idx;
}

std::size_t Language::max_arity() const noexcept {
  std::size_t m = 0;
  for (const auto& r : relations_) m = std::max(m, r.arity);
  return m;
}

Language Language::with_relation(RelationSymbol symbol) const {
  auto rels = relations_;
  rels.push_back(std::move(symbol));
  return Language(std::move(rels), constants_);
}

Language Language::with_constant(std::string name) const {
  auto consts = constants_;
  consts.push_back(std::move(name));
  return Language(relations_, std::move(consts));
}

Language Language::without_relation(std::string_view name) const {
  std::vector<RelationSymbol> rels;
  for (const auto& r : relations_)
    if (r.name != name) rels.push_back(r);
  return Language(std::move(rels), constants_);
}

Language Language::without_constants() const { return Language(relations_, {}); }

bool Language::same_symbols(const Language& other) const {
  if (relations_.size() != other.relations_.size() || constants_.size() != other.constants_.size())
    return false;
  for (const auto& r : relations_) {
    auto idx = other.relation_index(r.name);
    if (!idx || other.relations_[*idx].arity != r.arity) return false;
  }
  for (const auto& c : constants_)
    if (!other.constant_index(c)) return false;
  return true;
}

// ---- Structure ----

struct Structure::Data {
  Language language;
  std::size_t size = 0;
  std::vector<std::vector<Tuple>> relations;
  std::vector<Vertex> constants;
  // Per relation: dense membership bitmap, empty when too large.
  std::vector<std::vector<bool>> dense;

  mutable std::once_flag adjacency_once;
  mutable std::vector<std::vector<Vertex>> adjacency;

  // CSR index per (relation, position): offsets over vertices, tuple ids.
  struct PositionIndex {
    std::vector<std::uint32_t> offsets;
    std::vector<std::uint32_t> ids;
  };
  mutable std::once_flag index_once;
  mutable std::vector<std::vector<PositionIndex>> index;

  void build_adjacency() const {
    adjacency.assign(size, {});
    for (const auto& rel : relations)
      for (const auto& t : rel)
        for (std::size_t i = 0; i < t.size(); ++i)
          for (std::size_t j = 0; j < t.size(); ++j)
            if (t[i] != t[j]) adjacency[t[i]].push_back(t[j]);
    for (auto& adj : adjacency) {
      std::sort(adj.begin(), adj.end());
      adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
  }

  void build_index() const {
    index.resize(relations.size());
    for (std::size_t r = 0; r < relations.size(); ++r) {
      const auto& rel = relations[r];
      std::size_t arity = language.relations()[r].arity;
      index[r].resize(arity);
      for (std::size_t pos = 0; pos < arity; ++pos) {
        auto& pi = index[r][pos];
        pi.offsets.assign(size + 1, 0);
        for (const auto& t : rel) ++pi.offsets[t[pos] + 1];
        for (std::size_t v = 0; v < size; ++v) pi.offsets[v + 1] += pi.offsets[v];
        pi.ids.resize(rel.size());
        std::vector<std::uint32_t> fill(pi.offsets.begin(), pi.offsets.end() - 1);
        for (std::size_t id = 0; id < rel.size(); ++id)
          pi.ids[fill[rel[id][pos]]++] = static_cast<std::uint32_t>(id);
      }
    }
  }
};

Structure::Structure() : data_(std::make_shared<Data>()) {}

Structure::Structure(Language language, std::size_t size, std::vector<std::vector<Tuple>> relations,
                     std::vector<Vertex> constants) {
  if (size > std::numeric_limits<Vertex>::max())
    throw Error(ErrorCode::out_of_range, "domain size too large");
  if (relations.size() != language.relations().size())
    throw Error(ErrorCode::language_mismatch, "relation count does not match language");
  if (constants.size() != language.constants().size())
    throw Error(ErrorCode::language_mismatch,
                "every constant symbol must be interpreted exactly once");
  for (std::size_t r = 0; r < relations.size(); ++r) {
    const auto& sym = language.relations()[r];
    for (const auto& t : relations[r]) {
      if (t.size() != sym.arity)
        throw Error(ErrorCode::invalid_argument,
                    "arity mismatch for " + sym.name + ": expected " + std::to_string(sym.arity) +
                        ", got " + std::to_string(t.size()));
      for (Vertex v : t)
        if (v >= size)
          throw Error(ErrorCode::out_of_range,
                      "vertex " + std::to_string(v) + " out of range in " + sym.name);
    }
    std::sort(relations[r].begin(), relations[r].end());
    relations[r].erase(std::unique(relations[r].begin(), relations[r].end()), relations[r].end());
  }
  for (std::size_t c = 0; c < constants.size(); ++c)
    if (constants[c] >= size)
      throw Error(ErrorCode::out_of_range, "constant " + language.constants()[c] +
                                               " interpreted by out-of-range vertex " +
                                               std::to_string(constants[c]));

  auto data = std::make_shared<Data>();
  data->language = std::move(language);
  data->size = size;
  data->relations = std::move(relations);
  data->constants = std::move(constants);
  data->dense.resize(data->relations.size());
  for (std::size_t r = 0; r < data->relations.size(); ++r) {
    auto total = dense_size(size, data->language.relations()[r].arity);
    if (!total) continue;
    auto& bits = data->dense[r];
    bits.assign(*total, false);
    for (const auto& t : data->relations[r]) bits[dense_key(size, t)] = true;
  }
  data_ = std::move(data);
}

const Language& Structure::language() const noexcept { return data_->language; }
std::size_t Structure::size() const noexcept { return data_->size; }

const std::vector<Tuple>& Structure::relation(std::size_t index) const {
  if (index >= data_->relations.size())
    throw Error(ErrorCode::out_of_range, "relation index out of range");
  return data_->relations[index];
}

const std::vector<Tuple>& Structure::relation(std::string_view name) const {
  return data_->relations[data_->language.require_relation(name)];
}

const std::vector<std::vector<Tuple>>& Structure::relations() const noexcept {
  return data_->relations;
}

Vertex Structure::constant(std::size_t index) const {
  if (index >= data_->constants.size())
    throw Error(ErrorCode::out_of_range, "constant index out of range");
  return data_->constants[index];
}

const std::vector<Vertex>& Structure::constants() const noexcept { return data_->constants; }

bool Structure::contains(std::size_t relation_index, std::span<const Vertex> tuple) const {
  const auto& bits = data_->dense[relation_index];
  if (!bits.empty()) return bits[dense_key(data_->size, tuple)];
  const auto& rel = data_->relations[relation_index];
  auto it = std::lower_bound(rel.begin(), rel.end(), tuple, [](const Tuple& a, std::span<const Vertex> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  return it != rel.end() && std::equal(it->begin(), it->end(), tuple.begin(), tuple.end());
}

const std::vector<std::vector<Vertex>>& Structure::gaifman_adjacency() const {
  std::call_once(data_->adjacency_once, [this] { data_->build_adjacency(); });
  return data_->adjacency;
}

std::span<const std::uint32_t> Structure::tuples_at(std::size_t rel, std::size_t position,
                                                   Vertex v) const {
  std::call_once(data_->index_once, [this] { data_->build_index(); });
  const auto& pi = data_->index[rel][position];
  return std::span<const std::uint32_t>(pi.ids.data() + pi.offsets[v],
                                        pi.offsets[v + 1] - pi.offsets[v]);
}

Structure Structure::reordered_to(const Language& target) const {
  if (!data_->language.same_symbols(target))
    throw Error(ErrorCode::language_mismatch, "languages differ in their symbols");
  if (data_->language == target) return *this;
  std::vector<std::vector<Tuple>> rels;
  for (const auto& sym : target.relations())
    rels.push_back(data_->relations[*data_->language.relation_index(sym.name)]);
  std::vector<Vertex> consts;
  for (const auto& c : target.constants())
    consts.push_back(data_->constants[*data_->language.constant_index(c)]);
  return Structure(target, data_->size, std::move(rels), std::move(consts));
}

bool Structure::identical(const Structure& other) const {
  return data_->language == other.data_->language && data_->size == other.data_->size &&
         data_->relations == other.data_->relations && data_->constants == other.data_->constants;
}

Structure RootedStructure::as_structure() const {
  const Language& lang = base.language();
  auto consts = lang.constants();
  std::vector<Vertex> values = base.constants();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (roots[i] >= base.size())
      throw Error(ErrorCode::out_of_range, "root " + std::to_string(roots[i]) + " out of range");
    std::string name = "c" + std::to_string(i + 1);
    while (lang.has_symbol(name) || std::find(consts.begin(), consts.end(), name) != consts.end())
      name = "_" + name;
    consts.push_back(name);
    values.push_back(roots[i]);
  }
  return Structure(Language(lang.relations(), std::move(consts)), base.size(), base.relations(),
                   std::move(values));
}

Structure build_structure(const Language& language, std::size_t size,
                          const std::vector<RelationData>& relations,
                          const std::vector<ConstantData>& constants) {
  std::vector<std::vector<Tuple>> rels(language.relations().size());
  for (const auto& rd : relations) {
    auto idx = language.relation_index(rd.symbol);
    if (!idx) throw Error(ErrorCode::language_mismatch, "unknown relation symbol " + rd.symbol);
    rels[*idx].insert(rels[*idx].end(), rd.tuples.begin(), rd.tuples.end());
  }
  std::vector<std::optional<Vertex>> values(language.constants().size());
  for (const auto& cd : constants) {
    auto idx = language.constant_index(cd.symbol);
    if (!idx) throw Error(ErrorCode::language_mismatch, "unknown constant symbol " + cd.symbol);
    if (values[*idx] && *values[*idx] != cd.vertex)
      throw Error(ErrorCode::invalid_argument, "constant " + cd.symbol + " interpreted twice");
    values[*idx] = cd.vertex;
  }
  std::vector<Vertex> consts;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i])
      throw Error(ErrorCode::invalid_argument,
                  "uninterpreted constant " + language.constants()[i]);
    consts.push_back(*values[i]);
  }
  return Structure(language, size, std::move(rels), std::move(consts));
}

Structure undirected_graph(std::size_t size, const std::vector<std::pair<Vertex, Vertex>>& edges,
                           const std::string& symbol) {
  std::vector<Tuple> tuples;
  tuples.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    tuples.push_back({u, v});
    tuples.push_back({v, u});
  }
  return Structure(Language({{symbol, 2}}), size, {std::move(tuples)});
}

}  // namespace gadgetlab
