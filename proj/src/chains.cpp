#include "gradlab/chains.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "gradlab/cosets.hpp"
#include "gradlab/error.hpp"

namespace gradlab {

namespace {

long long checked(long long a, long long b, char op) {
  long long r = 0;
  const bool overflow = op == '*' ? __builtin_mul_overflow(a, b, &r) : __builtin_sub_overflow(a, b, &r);
  if (overflow) throw ResourceExhausted("integer overflow in Smith normal form");
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceExhausted("chain index exceeds 64 bits");
  return r;
}

/// Keeps levels whose index exceeds the previous one.
void drop_flat_levels(Chain& c, std::vector<ChainLevel> levels) {
  for (ChainLevel& level : levels) {
    if (!c.levels.empty() && level.index <= c.levels.back().index) {
      c.notes.push_back("dropped level '" + level.provenance + "': index " + std::to_string(level.index) +
                        " does not deepen the chain");
      continue;
    }
    c.levels.push_back(std::move(level));
  }
}

}  // namespace

Chain core_chain(const Presentation& p, const std::vector<std::size_t>& bounds, std::size_t max_order) {
  if (bounds.empty()) throw std::invalid_argument("core chain needs at least one bound");
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (bounds[i] < 1 || (i > 0 && bounds[i] <= bounds[i - 1])) {
      throw std::invalid_argument("core chain bounds must be positive and increasing");
    }
  }
  Chain c;
  c.group = p;
  std::vector<ChainLevel> levels;
  for (std::size_t bound : bounds) {
    ChainLevel level;
    level.provenance = "core<=" + std::to_string(bound) + ", residual up to bound";
    if (p.num_generators() == 0) {
      levels.push_back(std::move(level));
      continue;
    }
    LowIndexOptions opts;
    opts.max_index = bound;
    std::vector<std::vector<std::vector<int>>> seen_cores;
    std::vector<std::vector<Perm>> lists;
    level.degree = 0;
    for (const CosetTable& t : low_index_subgroups(p, opts)) {
      CosetTable core = normal_core_table(t, max_order);
      if (core.num_cosets() == 1) continue;
      bool duplicate = false;
      for (const auto& s : seen_cores) duplicate = duplicate || s == core.table;
      if (duplicate) continue;
      seen_cores.push_back(core.table);
      level.degree += core.num_cosets();
      lists.push_back(perm_rep(core).generator_images);
    }
    if (lists.empty()) {
      level.degree = 1;
      level.images.assign(p.num_generators(), Perm::identity(1));
    } else {
      level.images = diagonal_images(lists);
    }
    level.index = level.quotient().order();
    levels.push_back(std::move(level));
  }
  drop_flat_levels(c, std::move(levels));
  return c;
}

AbelianInvariants abelian_invariants(const Presentation& p) {
  const std::size_t n = p.num_generators();
  std::vector<std::vector<long long>> a;
  for (const Word& r : p.relators) a.push_back(exponent_sums(r, n));
  const std::size_t rows = a.size();
  std::vector<std::vector<long long>> v(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1;

  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (auto& row : a) std::swap(row[x], row[y]);
    for (auto& row : v) std::swap(row[x], row[y]);
  };
  // col_y -= q * col_x
  auto col_sub = [&](std::size_t y, std::size_t x, long long q) {
    for (auto& row : a) row[y] = checked(row[y], checked(q, row[x], '*'), '-');
    for (auto& row : v) row[y] = checked(row[y], checked(q, row[x], '*'), '-');
  };

  AbelianInvariants out;
  std::size_t t = 0;
  while (t < rows && t < n) {
    long long best = 0;
    std::size_t br = t, bc = t;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < n; ++j) {
        if (a[i][j] != 0 && (best == 0 || std::llabs(a[i][j]) < std::llabs(best))) {
          best = a[i][j];
          br = i;
          bc = j;
        }
      }
    }
    if (best == 0) break;
    std::swap(a[t], a[br]);
    if (bc != t) col_swap(t, bc);
    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      const long long q = a[i][t] / a[t][t];
      if (q != 0) {
        for (std::size_t j = t; j < n; ++j) a[i][j] = checked(a[i][j], checked(q, a[t][j], '*'), '-');
      }
      clean = clean && a[i][t] == 0;
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      const long long q = a[t][j] / a[t][t];
      if (q != 0) col_sub(j, t, q);
      clean = clean && a[t][j] == 0;
    }
    if (!clean) continue;
    bool divides = true;
    for (std::size_t i = t + 1; i < rows && divides; ++i) {
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[i][j] % a[t][t] != 0) {
          for (std::size_t k = t; k < n; ++k) a[t][k] = checked(a[t][k], -a[i][k], '-');
          divides = false;
          break;
        }
      }
    }
    if (!divides) continue;
    out.divisors.push_back(std::llabs(a[t][t]));
    ++t;
  }
  out.divisors.resize(n, 0);
  out.coords = std::move(v);
  return out;
}

Chain homology_cover_chain(const Presentation& p, const std::vector<long long>& moduli) {
  if (moduli.empty()) throw std::invalid_argument("homology chain needs at least one modulus");
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (moduli[i] < 2) throw std::invalid_argument("moduli must be >= 2");
    if (i > 0 && moduli[i] % moduli[i - 1] != 0) throw std::invalid_argument("each modulus must divide the next");
  }
  const AbelianInvariants inv = abelian_invariants(p);
  const std::size_t n = p.num_generators();
  Chain c;
  c.group = p;
  std::vector<ChainLevel> levels;
  for (long long m : moduli) {
    ChainLevel level;
    level.provenance = "H1 mod " + std::to_string(m) + ", residual up to bound";
    std::vector<long long> lengths;
    std::vector<std::size_t> factor;
    for (std::size_t i = 0; i < inv.divisors.size(); ++i) {
      const long long len = std::gcd(inv.divisors[i], m);
      if (len > 1) {
        lengths.push_back(len);
        factor.push_back(i);
      }
    }
    std::size_t degree = 0;
    for (long long len : lengths) degree += static_cast<std::size_t>(len);
    level.degree = std::max<std::size_t>(degree, 1);
    for (std::size_t g = 0; g < n; ++g) {
      std::vector<int> img(level.degree);
      std::iota(img.begin(), img.end(), 0);
      std::size_t base = 0;
      for (std::size_t k = 0; k < lengths.size(); ++k) {
        const long long len = lengths[k];
        const long long shift = ((inv.coords[g][factor[k]] % len) + len) % len;
        for (long long x = 0; x < len; ++x) img[base + static_cast<std::size_t>(x)] = static_cast<int>(base + static_cast<std::size_t>((x + shift) % len));
        base += static_cast<std::size_t>(len);
      }
      level.images.push_back(Perm::unchecked(std::move(img)));
    }
    level.index = 1;
    for (long long len : lengths) level.index = checked_mul(level.index, static_cast<std::uint64_t>(len));
    levels.push_back(std::move(level));
  }
  if (levels.front().index == 1) c.notes.push_back("H1 has rank 0 and no torsion at these moduli: chain is constant");
  drop_flat_levels(c, std::move(levels));
  return c;
}

Chain product_chain(const std::vector<Chain>& factors) {
  if (factors.empty()) throw std::invalid_argument("product chain needs at least one factor");
  for (const Chain& f : factors) {
    if (f.levels.size() != factors.front().levels.size()) {
      throw std::invalid_argument("factor chains must have equal length");
    }
  }
  if (factors.size() == 1) return factors.front();

  std::vector<Presentation> groups;
  bool aspherical = true;
  std::size_t dimension = 0;
  for (const Chain& f : factors) {
    groups.push_back(f.group);
    aspherical = aspherical && f.group.aspherical;
    dimension += f.group.relators.empty() ? 1 : 2;
  }
  Chain c;
  c.group = direct_product(groups, aspherical && dimension <= 2);
  for (std::size_t n = 0; n < factors.front().levels.size(); ++n) {
    ChainLevel level;
    level.degree = 0;
    for (const Chain& f : factors) level.degree += f.levels[n].degree;
    std::size_t offset = 0;
    for (const Chain& f : factors) {
      const ChainLevel& fl = f.levels[n];
      for (const Perm& x : fl.images) level.images.push_back(embed(x, offset, level.degree));
      offset += fl.degree;
      level.index = checked_mul(level.index, fl.index);
      level.provenance += (level.provenance.empty() ? "product[" : "; ") + fl.provenance;
    }
    level.provenance += "]";
    c.levels.push_back(std::move(level));
  }
  return c;
}

Chain fiber_restrict(const Chain& ambient, const std::vector<Word>& subgroup_words) {
  if (subgroup_words.empty()) throw std::invalid_argument("subgroup needs at least one generator word");
  for (const Word& w : subgroup_words) {
    for (const Letter& l : w) {
      if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= ambient.group.num_generators()) {
        throw std::invalid_argument("subgroup word uses a generator outside the ambient group");
      }
    }
  }
  Chain c;
  for (std::size_t i = 0; i < subgroup_words.size(); ++i) c.group.generator_names.push_back("h" + std::to_string(i + 1));
  c.notes.push_back("subgroup presentation not computed; generators h_i are the given words");
  std::vector<ChainLevel> levels;
  for (const ChainLevel& a : ambient.levels) {
    ChainLevel level;
    level.degree = a.degree;
    for (const Word& w : subgroup_words) level.images.push_back(evaluate(w, a.images, a.degree));
    level.index = level.quotient().order();
    level.provenance = "restricted " + a.provenance;
    levels.push_back(std::move(level));
  }
  drop_flat_levels(c, std::move(levels));
  return c;
}

void check_nesting(const Chain& c) {
  for (std::size_t n = 0; n + 1 < c.levels.size(); ++n) {
    const ChainLevel& lo = c.levels[n];
    const ChainLevel& hi = c.levels[n + 1];
    if (hi.index <= lo.index) throw InvariantViolation("chain indices do not strictly increase");
    if (hi.images.size() != lo.images.size()) throw InvariantViolation("chain levels disagree on generator count");
    if (hi.images.empty()) continue;
    // The diagonal image is G/(B_n ∩ B_{n+1}); it equals G/B_{n+1} exactly
    // when B_{n+1} <= B_n.
    const auto diag = diagonal_images({hi.images, lo.images});
    if (PermGroup(hi.degree + lo.degree, diag).order() != hi.index) {
      throw InvariantViolation("chain level " + std::to_string(n + 1) + " does not refine level " + std::to_string(n));
    }
  }
}

void check_product_property(const Chain& c, const std::vector<std::size_t>& factor_sizes) {
  const std::size_t total = std::accumulate(factor_sizes.begin(), factor_sizes.end(), std::size_t{0});
  for (std::size_t n = 0; n < c.levels.size(); ++n) {
    const ChainLevel& level = c.levels[n];
    if (level.images.size() != total) throw std::invalid_argument("factor sizes do not match the chain's generators");
    std::size_t offset = 0;
    for (std::size_t size : factor_sizes) {
      std::vector<Perm> inside, outside;
      for (std::size_t g = 0; g < total; ++g) (g >= offset && g < offset + size ? inside : outside).push_back(level.images[g]);
      for (const Perm& x : inside) {
        for (const Perm& y : outside) {
          if (compose(x, y) != compose(y, x)) throw InvariantViolation("factor images do not commute");
        }
      }
      const std::uint64_t a = PermGroup(level.degree, inside).order();
      const std::uint64_t b = PermGroup(level.degree, outside).order();
      if (checked_mul(a, b) != level.quotient().order()) {
        throw InvariantViolation("level " + std::to_string(n) + " quotient is not the product of its factor images");
      }
      offset += size;
    }
  }
}

PermGroup power_shadow(const ChainLevel& level, long long s) { return power_subgroup(level.quotient(), s); }

}  // namespace gradlab
