#include "gradlab/permgrp.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "gradlab/error.hpp"

namespace gradlab {

Perm::Perm(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int x : images_) {
    if (x < 0 || static_cast<std::size_t>(x) >= images_.size() || seen[static_cast<std::size_t>(x)]) {
      throw std::invalid_argument("image array is not a bijection");
    }
    seen[static_cast<std::size_t>(x)] = 1;
  }
}

Perm Perm::unchecked(std::vector<int> images) {
  Perm p;
  p.images_ = std::move(images);
  return p;
}

Perm Perm::identity(std::size_t degree) {
  Perm p;
  p.images_.resize(degree);
  for (std::size_t i = 0; i < degree; ++i) p.images_[i] = static_cast<int>(i);
  return p;
}

Perm Perm::from_cycles(std::size_t degree, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> img(degree);
  for (std::size_t i = 0; i < degree; ++i) img[i] = static_cast<int>(i);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] < 0 || static_cast<std::size_t>(c[i]) >= degree) throw std::out_of_range("cycle point out of range");
      img[static_cast<std::size_t>(c[i])] = c[(i + 1) % c.size()];
    }
  }
  return Perm(std::move(img));
}

int Perm::act(int point) const {
  if (point < 0 || static_cast<std::size_t>(point) >= images_.size()) {
    throw std::out_of_range("point " + std::to_string(point) + " out of range for degree " +
                            std::to_string(images_.size()));
  }
  return images_[static_cast<std::size_t>(point)];
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

Perm Perm::inverse() const {
  Perm r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  return r;
}

Perm Perm::pow(long long e) const {
  Perm base = e < 0 ? inverse() : *this;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  Perm acc = identity(images_.size());
  while (n) {
    if (n & 1) acc = compose(acc, base);
    base = compose(base, base);
    n >>= 1;
  }
  return acc;
}

int Perm::first_moved_point() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i)) return static_cast<int>(i);
  }
  return -1;
}

Perm compose(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree()) throw std::invalid_argument("degree mismatch in compose");
  std::vector<int> img(p.degree());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = q[static_cast<std::size_t>(p[i])];
  return Perm::unchecked(std::move(img));
}

Perm evaluate(std::span<const Letter> w, std::span<const Perm> generator_images, std::size_t degree) {
  Perm acc = Perm::identity(degree);
  for (const Letter& l : w) {
    if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= generator_images.size()) {
      throw std::invalid_argument("word letter has no generator image");
    }
    acc = compose(acc, generator_images[static_cast<std::size_t>(l.gen)].pow(l.exp));
  }
  return acc;
}

Perm embed(const Perm& p, std::size_t offset, std::size_t degree) {
  if (offset + p.degree() > degree) throw std::out_of_range("embedding does not fit");
  std::vector<int> img(degree);
  for (std::size_t i = 0; i < degree; ++i) img[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < p.degree(); ++i) img[offset + i] = static_cast<int>(offset) + p[i];
  return Perm::unchecked(std::move(img));
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int x : p.images()) {
    h ^= static_cast<std::size_t>(x);
    h *= 1099511628211ull;
  }
  return h;
}

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> generators)
    : degree_(degree), generators_(std::move(generators)) {
  for (const Perm& g : generators_) {
    if (g.degree() != degree_) throw std::invalid_argument("generator degree mismatch");
  }
  build();
}

void PermGroup::rebuild_orbit(Level& level) const {
  level.parent_gen.assign(degree_, -2);
  level.parent_point.assign(degree_, -1);
  level.orbit.clear();
  level.parent_gen[static_cast<std::size_t>(level.base_point)] = -1;
  level.orbit.push_back(level.base_point);
  for (std::size_t head = 0; head < level.orbit.size(); ++head) {
    int pt = level.orbit[head];
    for (int gid : level.gen_ids) {
      int img = strong_[static_cast<std::size_t>(gid)][static_cast<std::size_t>(pt)];
      if (level.parent_gen[static_cast<std::size_t>(img)] == -2) {
        level.parent_gen[static_cast<std::size_t>(img)] = gid;
        level.parent_point[static_cast<std::size_t>(img)] = pt;
        level.orbit.push_back(img);
      }
    }
  }
}

Perm PermGroup::transversal(const Level& level, int point) const {
  std::vector<int> path;
  for (int pt = point; level.parent_gen[static_cast<std::size_t>(pt)] >= 0;
       pt = level.parent_point[static_cast<std::size_t>(pt)]) {
    path.push_back(level.parent_gen[static_cast<std::size_t>(pt)]);
  }
  Perm u = Perm::identity(degree_);
  for (auto it = path.rbegin(); it != path.rend(); ++it) u = compose(u, strong_[static_cast<std::size_t>(*it)]);
  return u;
}

std::pair<Perm, std::size_t> PermGroup::strip(Perm g, std::size_t from) const {
  for (std::size_t l = from; l < levels_.size(); ++l) {
    const Level& level = levels_[l];
    int beta = g[static_cast<std::size_t>(level.base_point)];
    if (level.parent_gen[static_cast<std::size_t>(beta)] == -2) return {std::move(g), l};
    g = compose(g, transversal(level, beta).inverse());
  }
  return {std::move(g), levels_.size()};
}

void PermGroup::build() {
  for (const Perm& g : generators_) {
    if (!g.is_identity() && std::find(strong_.begin(), strong_.end(), g) == strong_.end()) strong_.push_back(g);
  }
  for (const Perm& s : strong_) {
    bool fixes_base = std::all_of(base_.begin(), base_.end(),
                                  [&](int b) { return s[static_cast<std::size_t>(b)] == b; });
    if (fixes_base) base_.push_back(s.first_moved_point());
  }
  levels_.resize(base_.size());
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    levels_[l].base_point = base_[l];
    for (std::size_t s = 0; s < strong_.size(); ++s) {
      bool fixes = true;
      for (std::size_t m = 0; m < l && fixes; ++m) fixes = strong_[s][static_cast<std::size_t>(base_[m])] == base_[m];
      if (fixes) levels_[l].gen_ids.push_back(static_cast<int>(s));
    }
    rebuild_orbit(levels_[l]);
  }

  long long i = static_cast<long long>(levels_.size()) - 1;
  while (i >= 0) {
    bool restarted = false;
    const std::vector<int> orbit = levels_[static_cast<std::size_t>(i)].orbit;
    for (int pt : orbit) {
      const Level& level = levels_[static_cast<std::size_t>(i)];
      const Perm u = transversal(level, pt);
      for (int gid : std::vector<int>(level.gen_ids)) {
        const Perm& s = strong_[static_cast<std::size_t>(gid)];
        const int img = s[static_cast<std::size_t>(pt)];
        Perm h = compose(compose(u, s), transversal(levels_[static_cast<std::size_t>(i)], img).inverse());
        if (h.is_identity()) continue;
        auto [y, j] = strip(std::move(h), static_cast<std::size_t>(i) + 1);
        if (y.is_identity()) continue;
        if (j == levels_.size()) {
          Level fresh;
          fresh.base_point = y.first_moved_point();
          base_.push_back(fresh.base_point);
          levels_.push_back(std::move(fresh));
        }
        strong_.push_back(std::move(y));
        const int id = static_cast<int>(strong_.size()) - 1;
        for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= j; ++l) {
          levels_[l].gen_ids.push_back(id);
          rebuild_orbit(levels_[l]);
        }
        i = static_cast<long long>(j);
        restarted = true;
        break;
      }
      if (restarted) break;
    }
    if (!restarted) --i;
  }
}

std::uint64_t PermGroup::order() const {
  std::uint64_t n = 1;
  for (const Level& level : levels_) {
    if (__builtin_mul_overflow(n, static_cast<std::uint64_t>(level.orbit.size()), &n)) {
      throw ResourceExhausted("group order exceeds 64 bits");
    }
  }
  return n;
}

bool PermGroup::contains(const Perm& g) const {
  if (g.degree() != degree_) return false;
  auto [residue, level] = strip(g, 0);
  return level == levels_.size() && residue.is_identity();
}

std::vector<int> PermGroup::orbit(int point) const {
  std::vector<char> seen(degree_, 0);
  std::vector<int> out{point};
  seen[static_cast<std::size_t>(point)] = 1;
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const Perm& g : generators_) {
      int img = g[static_cast<std::size_t>(out[head])];
      if (!seen[static_cast<std::size_t>(img)]) {
        seen[static_cast<std::size_t>(img)] = 1;
        out.push_back(img);
      }
    }
  }
  return out;
}

std::vector<Perm> PermGroup::elements(std::size_t cap) const {
  std::vector<Perm> out{Perm::identity(degree_)};
  std::unordered_set<Perm, PermHash> seen{out.front()};
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const Perm& g : generators_) {
      Perm next = compose(out[head], g);
      if (seen.insert(next).second) {
        if (out.size() >= cap) throw ResourceExhausted("element enumeration exceeded cap");
        out.push_back(std::move(next));
      }
    }
  }
  return out;
}

std::uint64_t subgroup_index(const PermGroup& g, std::span<const Perm> h_generators) {
  for (const Perm& h : h_generators) {
    if (!g.contains(h)) throw std::invalid_argument("subgroup generator is not a member of the group");
  }
  PermGroup h(g.degree(), std::vector<Perm>(h_generators.begin(), h_generators.end()));
  return g.order() / h.order();
}

std::vector<Perm> diagonal_images(const std::vector<std::vector<Perm>>& image_lists) {
  if (image_lists.empty()) return {};
  const std::size_t n = image_lists.front().size();
  std::size_t degree = 0;
  for (const auto& list : image_lists) {
    if (list.size() != n) throw std::invalid_argument("image lists differ in length");
    if (n > 0) degree += list.front().degree();
  }
  std::vector<Perm> out;
  for (std::size_t g = 0; g < n; ++g) {
    std::vector<int> img;
    img.reserve(degree);
    int offset = 0;
    for (const auto& list : image_lists) {
      for (int x : list[g].images()) img.push_back(offset + x);
      offset += static_cast<int>(list[g].degree());
    }
    out.push_back(Perm::unchecked(std::move(img)));
  }
  return out;
}

PermGroup power_subgroup(const PermGroup& g, long long s, std::size_t cap) {
  std::unordered_set<Perm, PermHash> powers;
  for (const Perm& x : g.elements(cap)) {
    Perm y = x.pow(s);
    if (!y.is_identity()) powers.insert(std::move(y));
  }
  std::vector<Perm> gens(powers.begin(), powers.end());
  std::sort(gens.begin(), gens.end());
  return PermGroup(g.degree(), std::move(gens));
}

}  // namespace gradlab
