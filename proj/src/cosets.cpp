#include "gradlab/cosets.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "gradlab/error.hpp"

namespace gradlab {

namespace {

constexpr std::size_t inv_column(std::size_t col) { return col ^ 1u; }

/// A word flattened to one table column per letter.
std::vector<std::size_t> columns_of(std::span<const Letter> w) {
  std::vector<std::size_t> cols;
  for (const Letter& l : w) {
    const std::size_t col = column(l.gen, l.exp < 0);
    for (int i = 0; i < std::abs(l.exp); ++i) cols.push_back(col);
  }
  return cols;
}

/// HLT enumeration state. Rows of dead cosets are dropped after each
/// coincidence, so live cosets keep their relative definition order.
class Enumerator {
 public:
  Enumerator(const Presentation& p, std::size_t max_cosets)
      : width_(2 * p.num_generators()), max_cosets_(max_cosets) {
    for (const Word& r : p.relators) relators_.push_back(columns_of(r));
    new_coset();
  }

  std::vector<std::vector<int>> run(const std::vector<Word>& subgroup_words) {
    for (const Word& w : subgroup_words) {
      scan_and_fill(0, columns_of(w));
      compact_if_needed();
    }
    std::size_t c = 0;
    while (c < table_.size()) {
      bool restart = false;
      for (const auto& rel : relators_) {
        scan_and_fill(static_cast<int>(c), rel);
        if (coincided_) {
          c = compact_and_locate(c);
          restart = true;
          break;
        }
      }
      if (restart) continue;
      for (std::size_t col = 0; col < width_; ++col) {
        if (table_[c][col] == -1) define(static_cast<int>(c), col);
      }
      ++c;
    }
    return std::move(table_);
  }

 private:
  int new_coset() {
    if (table_.size() >= max_cosets_) {
      throw ResourceExhausted("coset enumeration did not close within " + std::to_string(max_cosets_) +
                              " cosets");
    }
    table_.emplace_back(width_, -1);
    parent_.push_back(static_cast<int>(parent_.size()));
    return static_cast<int>(table_.size()) - 1;
  }

  void define(int c, std::size_t col) {
    const int d = new_coset();
    table_[static_cast<std::size_t>(c)][col] = d;
    table_[static_cast<std::size_t>(d)][inv_column(col)] = c;
  }

  void scan_and_fill(int c, const std::vector<std::size_t>& cols) {
    if (cols.empty()) return;
    int f = c;
    int b = c;
    long long i = 0;
    long long j = static_cast<long long>(cols.size()) - 1;
    while (true) {
      while (i <= j && table_[static_cast<std::size_t>(f)][cols[static_cast<std::size_t>(i)]] != -1) {
        f = table_[static_cast<std::size_t>(f)][cols[static_cast<std::size_t>(i)]];
        ++i;
      }
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && table_[static_cast<std::size_t>(b)][inv_column(cols[static_cast<std::size_t>(j)])] != -1) {
        b = table_[static_cast<std::size_t>(b)][inv_column(cols[static_cast<std::size_t>(j)])];
        --j;
      }
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        const std::size_t col = cols[static_cast<std::size_t>(i)];
        table_[static_cast<std::size_t>(f)][col] = b;
        table_[static_cast<std::size_t>(b)][inv_column(col)] = f;
        return;
      }
      define(f, cols[static_cast<std::size_t>(i)]);
    }
  }

  int rep(int k) {
    int r = k;
    while (parent_[static_cast<std::size_t>(r)] != r) r = parent_[static_cast<std::size_t>(r)];
    while (parent_[static_cast<std::size_t>(k)] != r) {
      int next = parent_[static_cast<std::size_t>(k)];
      parent_[static_cast<std::size_t>(k)] = r;
      k = next;
    }
    return r;
  }

  void merge(int k, int l, std::vector<int>& queue) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    if (k > l) std::swap(k, l);
    parent_[static_cast<std::size_t>(l)] = k;
    queue.push_back(l);
  }

  void coincidence(int a, int b) {
    coincided_ = true;
    std::vector<int> queue;
    merge(a, b, queue);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const int d = queue[q];
      for (std::size_t col = 0; col < width_; ++col) {
        const int e = table_[static_cast<std::size_t>(d)][col];
        if (e == -1) continue;
        table_[static_cast<std::size_t>(e)][inv_column(col)] = -1;
        const int f1 = rep(d);
        const int f2 = rep(e);
        const int x = table_[static_cast<std::size_t>(f1)][col];
        const int y = table_[static_cast<std::size_t>(f2)][inv_column(col)];
        if (x != -1) {
          merge(f2, x, queue);
        } else if (y != -1) {
          merge(f1, y, queue);
        } else {
          table_[static_cast<std::size_t>(f1)][col] = f2;
          table_[static_cast<std::size_t>(f2)][inv_column(col)] = f1;
        }
      }
    }
  }

  void compact_if_needed() {
    if (coincided_) compact_and_locate(0);
  }

  /// Drops dead rows and returns the new index of the first live coset at or
  /// after `c`.
  std::size_t compact_and_locate(std::size_t c) {
    coincided_ = false;
    std::vector<int> remap(table_.size(), -1);
    int live = 0;
    for (std::size_t k = 0; k < table_.size(); ++k) {
      if (parent_[k] == static_cast<int>(k)) remap[k] = live++;
    }
    std::size_t located = static_cast<std::size_t>(live);
    for (std::size_t k = c; k < table_.size(); ++k) {
      if (remap[k] != -1) {
        located = static_cast<std::size_t>(remap[k]);
        break;
      }
    }
    std::vector<std::vector<int>> next;
    next.reserve(static_cast<std::size_t>(live));
    for (std::size_t k = 0; k < table_.size(); ++k) {
      if (remap[k] == -1) continue;
      auto& row = table_[k];
      for (int& e : row) {
        if (e != -1) e = remap[static_cast<std::size_t>(e)];
      }
      next.push_back(std::move(row));
    }
    table_ = std::move(next);
    parent_.resize(table_.size());
    for (std::size_t k = 0; k < parent_.size(); ++k) parent_[k] = static_cast<int>(k);
    return located;
  }

  std::size_t width_;
  std::size_t max_cosets_;
  std::vector<std::vector<std::size_t>> relators_;
  std::vector<std::vector<int>> table_;
  std::vector<int> parent_;
  bool coincided_ = false;
};

/// Schreier generators of t as (coset, generator) pairs that are not tree edges.
struct SchreierData {
  std::vector<Word> transversal;
  std::vector<std::vector<int>> gen_id;  // gen_id[c][g]: Schreier generator index or -1 on tree edges
  std::vector<std::pair<int, int>> pairs;
};

SchreierData schreier_data(const CosetTable& t) {
  const std::size_t k = t.num_cosets();
  const std::size_t ngens = t.presentation.num_generators();
  SchreierData sd;
  sd.transversal.assign(k, Word{});
  sd.gen_id.assign(k, std::vector<int>(ngens, -1));
  std::vector<std::vector<char>> tree(k, std::vector<char>(ngens, 0));
  std::vector<char> seen(k, 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int d = queue[head];
    for (std::size_t g = 0; g < ngens; ++g) {
      for (bool inv : {false, true}) {
        const int c = t.table[static_cast<std::size_t>(d)][column(static_cast<int>(g), inv)];
        if (seen[static_cast<std::size_t>(c)]) continue;
        seen[static_cast<std::size_t>(c)] = 1;
        queue.push_back(c);
        Word step{{static_cast<int>(g), inv ? -1 : 1}};
        sd.transversal[static_cast<std::size_t>(c)] = concat(sd.transversal[static_cast<std::size_t>(d)], step);
        if (inv) {
          tree[static_cast<std::size_t>(c)][g] = 1;
        } else {
          tree[static_cast<std::size_t>(d)][g] = 1;
        }
      }
    }
  }
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t g = 0; g < ngens; ++g) {
      if (tree[c][g]) continue;
      sd.gen_id[c][g] = static_cast<int>(sd.pairs.size());
      sd.pairs.emplace_back(static_cast<int>(c), static_cast<int>(g));
    }
  }
  return sd;
}

std::vector<Word> schreier_generator_words(const CosetTable& t, const SchreierData& sd) {
  std::vector<Word> words;
  for (auto [c, g] : sd.pairs) {
    const int target = t.table[static_cast<std::size_t>(c)][column(g, false)];
    Word w = concat(sd.transversal[static_cast<std::size_t>(c)], Word{{g, 1}});
    words.push_back(concat(w, inverse(sd.transversal[static_cast<std::size_t>(target)])));
  }
  return words;
}

}  // namespace

int CosetTable::act(int coset, int gen, int exp) const {
  int c = coset;
  for (int i = 0; i < std::abs(exp); ++i) c = table[static_cast<std::size_t>(c)][column(gen, exp < 0)];
  return c;
}

int CosetTable::trace(int coset, std::span<const Letter> w) const {
  int c = coset;
  for (const Letter& l : w) c = act(c, l.gen, l.exp);
  return c;
}

void verify_table(const CosetTable& t) {
  const std::size_t width = 2 * t.presentation.num_generators();
  const std::size_t k = t.num_cosets();
  if (k == 0) throw InvariantViolation("coset table is empty");
  for (std::size_t c = 0; c < k; ++c) {
    if (t.table[c].size() != width) throw InvariantViolation("coset table row has wrong width");
    for (std::size_t col = 0; col < width; ++col) {
      const int e = t.table[c][col];
      if (e < 0 || static_cast<std::size_t>(e) >= k) throw InvariantViolation("coset table is incomplete");
      if (t.table[static_cast<std::size_t>(e)][inv_column(col)] != static_cast<int>(c)) {
        throw InvariantViolation("generator does not act as a permutation of cosets");
      }
    }
  }
  for (std::size_t c = 0; c < k; ++c) {
    for (const Word& r : t.presentation.relators) {
      if (t.trace(static_cast<int>(c), r) != static_cast<int>(c)) {
        throw InvariantViolation("relator does not close at coset " + std::to_string(c));
      }
    }
  }
  for (const Word& w : t.subgroup_words) {
    if (t.trace(0, w) != 0) throw InvariantViolation("subgroup word does not fix coset 0");
  }
}

CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup_words,
                        std::size_t max_cosets) {
  if (max_cosets < 1) throw std::invalid_argument("max_cosets must be at least 1");
  CosetTable t;
  t.presentation = p;
  t.subgroup_words = subgroup_words;
  t.table = Enumerator(p, max_cosets).run(subgroup_words);
  verify_table(t);
  return t;
}

std::vector<std::vector<int>> standardize(const std::vector<std::vector<int>>& table, int base) {
  const std::size_t k = table.size();
  std::vector<int> order{base};
  std::vector<int> remap(k, -1);
  remap[static_cast<std::size_t>(base)] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (int e : table[static_cast<std::size_t>(order[head])]) {
      if (remap[static_cast<std::size_t>(e)] == -1) {
        remap[static_cast<std::size_t>(e)] = static_cast<int>(order.size());
        order.push_back(e);
      }
    }
  }
  std::vector<std::vector<int>> out(k);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int e : table[static_cast<std::size_t>(order[i])]) out[i].push_back(remap[static_cast<std::size_t>(e)]);
  }
  return out;
}

namespace {

class LowIndexSearch {
 public:
  LowIndexSearch(const Presentation& p, const LowIndexOptions& opts)
      : p_(p), width_(2 * p.num_generators()), opts_(opts) {
    for (const Word& r : p.relators) relators_.push_back(columns_of(r));
  }

  std::vector<std::vector<std::vector<int>>> run() {
    std::vector<std::vector<int>> table(opts_.max_index, std::vector<int>(width_, -1));
    search(table, 1);
    return std::move(found_);
  }

 private:
  // Fills single-gap relator traces until nothing changes. False on conflict.
  bool deduce(std::vector<std::vector<int>>& table, std::size_t m) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t c = 0; c < m; ++c) {
        for (const auto& rel : relators_) {
          if (rel.empty()) continue;
          int f = static_cast<int>(c);
          int b = static_cast<int>(c);
          long long i = 0;
          long long j = static_cast<long long>(rel.size()) - 1;
          while (i <= j && table[static_cast<std::size_t>(f)][rel[static_cast<std::size_t>(i)]] != -1) {
            f = table[static_cast<std::size_t>(f)][rel[static_cast<std::size_t>(i)]];
            ++i;
          }
          if (i > j) {
            if (f != b) return false;
            continue;
          }
          while (j >= i && table[static_cast<std::size_t>(b)][inv_column(rel[static_cast<std::size_t>(j)])] != -1) {
            b = table[static_cast<std::size_t>(b)][inv_column(rel[static_cast<std::size_t>(j)])];
            --j;
          }
          if (j < i) {
            if (f != b) return false;
            continue;
          }
          if (i == j) {
            const std::size_t col = rel[static_cast<std::size_t>(i)];
            if (table[static_cast<std::size_t>(b)][inv_column(col)] != -1) return false;
            table[static_cast<std::size_t>(f)][col] = b;
            table[static_cast<std::size_t>(b)][inv_column(col)] = f;
            changed = true;
          }
        }
      }
    }
    return true;
  }

  bool is_class_representative(const std::vector<std::vector<int>>& table) const {
    for (std::size_t b = 1; b < table.size(); ++b) {
      if (standardize(table, static_cast<int>(b)) < table) return false;
    }
    return true;
  }

  void search(const std::vector<std::vector<int>>& table, std::size_t m) {
    if (++nodes_ > opts_.node_budget) {
      throw ResourceExhausted("low-index search exceeded node budget of " + std::to_string(opts_.node_budget));
    }
    for (std::size_t c = 0; c < m; ++c) {
      for (std::size_t col = 0; col < width_; ++col) {
        if (table[c][col] != -1) continue;
        for (std::size_t d = 0; d <= m && d < opts_.max_index; ++d) {
          if (d < m && table[d][inv_column(col)] != -1) continue;
          auto next = table;
          next[c][col] = static_cast<int>(d);
          next[d][inv_column(col)] = static_cast<int>(c);
          const std::size_t next_m = d == m ? m + 1 : m;
          if (deduce(next, next_m)) search(next, next_m);
        }
        return;
      }
    }
    std::vector<std::vector<int>> complete(table.begin(), table.begin() + static_cast<long>(m));
    if (is_class_representative(complete)) found_.push_back(std::move(complete));
  }

  const Presentation& p_;
  std::size_t width_;
  LowIndexOptions opts_;
  std::vector<std::vector<std::size_t>> relators_;
  std::vector<std::vector<std::vector<int>>> found_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

std::vector<CosetTable> low_index_subgroups(const Presentation& p, const LowIndexOptions& opts) {
  if (opts.max_index < 1) throw std::invalid_argument("max_index must be at least 1");
  auto tables = LowIndexSearch(p, opts).run();
  std::sort(tables.begin(), tables.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<CosetTable> out;
  for (auto& tab : tables) {
    CosetTable t;
    t.presentation = p;
    t.table = std::move(tab);
    t.subgroup_words = schreier_generator_words(t, schreier_data(t));
    verify_table(t);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<CosetTable> low_index_subgroups(const Presentation& p, std::size_t max_index) {
  LowIndexOptions opts;
  opts.max_index = max_index;
  return low_index_subgroups(p, opts);
}

std::size_t conjugacy_class_size(const CosetTable& t) {
  std::vector<std::vector<std::vector<int>>> seen;
  for (std::size_t b = 0; b < t.num_cosets(); ++b) {
    auto s = standardize(t.table, static_cast<int>(b));
    if (std::find(seen.begin(), seen.end(), s) == seen.end()) seen.push_back(std::move(s));
  }
  return seen.size();
}

PermRep perm_rep(const CosetTable& t) {
  const std::size_t k = t.num_cosets();
  std::vector<Perm> images;
  for (std::size_t g = 0; g < t.presentation.num_generators(); ++g) {
    std::vector<int> img(k);
    for (std::size_t c = 0; c < k; ++c) img[c] = t.table[c][column(static_cast<int>(g), false)];
    images.push_back(Perm(std::move(img)));
  }
  PermGroup group(k, images);
  return {std::move(group), std::move(images)};
}

CosetTable regular_table(const Presentation& p, std::span<const Perm> generator_images, std::size_t order_cap) {
  if (generator_images.size() != p.num_generators()) {
    throw std::invalid_argument("one image per generator is required");
  }
  const std::size_t degree = generator_images.empty() ? 0 : generator_images.front().degree();
  for (const Word& r : p.relators) {
    if (!evaluate(r, generator_images, degree).is_identity()) {
      throw std::invalid_argument("generator images do not satisfy the relators");
    }
  }
  const std::size_t ngens = p.num_generators();
  std::vector<Perm> elements{Perm::identity(degree)};
  std::unordered_map<Perm, int, PermHash> index{{elements.front(), 0}};
  std::vector<std::vector<int>> table;
  for (std::size_t head = 0; head < elements.size(); ++head) {
    table.emplace_back(2 * ngens, -1);
    for (std::size_t g = 0; g < ngens; ++g) {
      Perm next = compose(elements[head], generator_images[g]);
      auto [it, inserted] = index.try_emplace(next, static_cast<int>(elements.size()));
      if (inserted) {
        if (elements.size() >= order_cap) {
          throw ResourceExhausted("quotient order exceeds cap of " + std::to_string(order_cap));
        }
        elements.push_back(std::move(next));
      }
      table[head][column(static_cast<int>(g), false)] = it->second;
    }
  }
  for (std::size_t e = 0; e < table.size(); ++e) {
    for (std::size_t g = 0; g < ngens; ++g) {
      const int target = table[e][column(static_cast<int>(g), false)];
      table[static_cast<std::size_t>(target)][column(static_cast<int>(g), true)] = static_cast<int>(e);
    }
  }
  CosetTable t;
  t.presentation = p;
  t.table = std::move(table);
  t.subgroup_words = schreier_generator_words(t, schreier_data(t));
  verify_table(t);
  return t;
}

CosetTable normal_core_table(const CosetTable& t, std::size_t order_cap) {
  const PermRep rep = perm_rep(t);
  return regular_table(t.presentation, rep.generator_images, order_cap);
}

std::vector<Word> schreier_transversal(const CosetTable& t) { return schreier_data(t).transversal; }

SubgroupPresentation reidemeister_schreier(const CosetTable& t) {
  const SchreierData sd = schreier_data(t);
  const std::vector<std::string>& names = t.presentation.generator_names;
  SubgroupPresentation out;
  for (auto [c, g] : sd.pairs) {
    out.presentation.generator_names.push_back("s" + std::to_string(c) + "_" + names[static_cast<std::size_t>(g)]);
  }
  out.generator_words = schreier_generator_words(t, sd);
  for (std::size_t c = 0; c < t.num_cosets(); ++c) {
    for (const Word& r : t.presentation.relators) {
      Word rewritten;
      int d = static_cast<int>(c);
      for (const Letter& l : r) {
        for (int i = 0; i < std::abs(l.exp); ++i) {
          if (l.exp > 0) {
            const int id = sd.gen_id[static_cast<std::size_t>(d)][static_cast<std::size_t>(l.gen)];
            if (id >= 0) rewritten.push_back({id, 1});
            d = t.table[static_cast<std::size_t>(d)][column(l.gen, false)];
          } else {
            d = t.table[static_cast<std::size_t>(d)][column(l.gen, true)];
            const int id = sd.gen_id[static_cast<std::size_t>(d)][static_cast<std::size_t>(l.gen)];
            if (id >= 0) rewritten.push_back({id, -1});
          }
        }
      }
      out.presentation.relators.push_back(free_reduce(rewritten));
    }
  }
  return out;
}

nlohmann::json to_json(const CosetTable& t) {
  return nlohmann::json{{"strategy_version", kCosetStrategyVersion},
                        {"key", table_cache_key(t.presentation, t.subgroup_words)},
                        {"table", t.table}};
}

CosetTable table_from_json(const nlohmann::json& j, const Presentation& p, const std::vector<Word>& subgroup_words) {
  CosetTable t;
  t.presentation = p;
  t.subgroup_words = subgroup_words;
  t.table = j.at("table").get<std::vector<std::vector<int>>>();
  verify_table(t);
  return t;
}

std::string table_cache_key(const Presentation& p, const std::vector<Word>& subgroup_words) {
  std::ostringstream canon;
  canon << "v" << kCosetStrategyVersion << "|";
  for (const auto& n : p.generator_names) canon << n << ",";
  canon << "|";
  for (const Word& r : p.relators) canon << render_word(r, p.generator_names) << ";";
  canon << "|";
  for (const Word& w : subgroup_words) canon << render_word(w, p.generator_names) << ";";
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : canon.str()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

TableCache::TableCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::optional<CosetTable> TableCache::load(const Presentation& p, const std::vector<Word>& subgroup_words) const {
  const auto path = dir_ / (table_cache_key(p, subgroup_words) + ".json");
  std::ifstream in(path);
  if (!in) return std::nullopt;
  nlohmann::json j;
  in >> j;
  if (j.value("strategy_version", -1) != kCosetStrategyVersion) return std::nullopt;
  return table_from_json(j, p, subgroup_words);
}

void TableCache::store(const CosetTable& t) const {
  const auto path = dir_ / (table_cache_key(t.presentation, t.subgroup_words) + ".json");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write cache file " + path.string());
  out << to_json(t).dump();
}

CosetTable todd_coxeter_cached(const Presentation& p, const std::vector<Word>& subgroup_words,
                               std::size_t max_cosets, const TableCache* cache) {
  if (cache) {
    if (auto hit = cache->load(p, subgroup_words)) return *std::move(hit);
  }
  CosetTable t = todd_coxeter(p, subgroup_words, max_cosets);
  if (cache) cache->store(t);
  return t;
}

}  // namespace gradlab
