#include "gradlab/words.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <charconv>
#include <cstdlib>
#include <stdexcept>

namespace gradlab {

Word free_reduce(std::span<const Letter> w) {
  Word out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (l.exp == 0) continue;
    if (!out.empty() && out.back().gen == l.gen) {
      out.back().exp += l.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word inverse(std::span<const Letter> w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->exp});
  return out;
}

Word concat(std::span<const Letter> a, std::span<const Letter> b) {
  Word out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return free_reduce(out);
}

Word commutator(std::span<const Letter> a, std::span<const Letter> b) {
  Word ab = concat(a, b);
  Word ai = inverse(a);
  Word bi = inverse(b);
  return concat(ab, concat(ai, bi));
}

Word cyclic_reduce(std::span<const Letter> w) {
  Word out = free_reduce(w);
  while (out.size() >= 2 && out.front().gen == out.back().gen) {
    Letter merged{out.front().gen, out.front().exp + out.back().exp};
    out.pop_back();
    out.erase(out.begin());
    if (merged.exp != 0) {
      out.insert(out.begin(), merged);
      break;
    }
  }
  return out;
}

std::size_t word_length(std::span<const Letter> w) {
  std::size_t n = 0;
  for (const Letter& l : w) n += static_cast<std::size_t>(std::abs(l.exp));
  return n;
}

Word parse_word(std::string_view text, std::span<const std::string> generator_names) {
  Word w;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    std::string_view token = text.substr(pos, end - pos);
    pos = end;

    std::string_view name = token;
    int exp = 1;
    if (auto caret = token.find('^'); caret != std::string_view::npos) {
      name = token.substr(0, caret);
      std::string_view e = token.substr(caret + 1);
      const char* first = e.data();
      const char* last = e.data() + e.size();
      if (!e.empty() && *first == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, last, exp);
      if (e.empty() || ec != std::errc{} || ptr != last) {
        throw std::invalid_argument("malformed exponent in token '" + std::string(token) + "'");
      }
      if (exp == 0) throw std::invalid_argument("zero exponent in token '" + std::string(token) + "'");
    }
    auto it = std::find(generator_names.begin(), generator_names.end(), name);
    if (name.empty() || it == generator_names.end()) {
      throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
    }
    w.push_back({static_cast<int>(it - generator_names.begin()), exp});
  }
  return free_reduce(w);
}

std::string render_word(std::span<const Letter> w, std::span<const std::string> generator_names) {
  std::string out;
  for (const Letter& l : w) {
    if (!out.empty()) out += ' ';
    out += generator_names[static_cast<std::size_t>(l.gen)];
    if (l.exp != 1) {
      out += '^';
      out += std::to_string(l.exp);
    }
  }
  return out;
}

int Presentation::generator_index(std::string_view name) const {
  auto it = std::find(generator_names.begin(), generator_names.end(), name);
  return it == generator_names.end() ? -1 : static_cast<int>(it - generator_names.begin());
}

Presentation make_presentation(std::vector<std::string> generator_names,
                               const std::vector<std::string>& relator_texts, bool aspherical) {
  Presentation p;
  p.generator_names = std::move(generator_names);
  p.aspherical = aspherical;
  for (const auto& r : relator_texts) p.relators.push_back(parse_word(r, p.generator_names));
  validate(p);
  return p;
}

void validate(const Presentation& p) {
  for (std::size_t i = 0; i < p.generator_names.size(); ++i) {
    for (std::size_t j = i + 1; j < p.generator_names.size(); ++j) {
      if (p.generator_names[i] == p.generator_names[j]) {
        throw std::invalid_argument("duplicate generator name '" + p.generator_names[i] + "'");
      }
    }
  }
  const int n = static_cast<int>(p.generator_names.size());
  for (const Word& r : p.relators) {
    for (const Letter& l : r) {
      if (l.gen < 0 || l.gen >= n) throw std::invalid_argument("relator references a missing generator");
    }
    if (free_reduce(r) != r) throw std::invalid_argument("relator is not freely reduced");
  }
}

DeficiencyData presentation_deficiency_data(const Presentation& p) {
  return {p.num_generators(), p.num_relators(),
          static_cast<long long>(p.num_relators()) - static_cast<long long>(p.num_generators())};
}

std::vector<long long> exponent_sums(std::span<const Letter> w, std::size_t num_generators) {
  std::vector<long long> v(num_generators, 0);
  for (const Letter& l : w) v[static_cast<std::size_t>(l.gen)] += l.exp;
  return v;
}

Presentation direct_product(const std::vector<Presentation>& factors, bool aspherical) {
  Presentation p;
  std::set<std::string> seen;
  bool distinct = true;
  for (const Presentation& f : factors) {
    for (const auto& n : f.generator_names) distinct = seen.insert(n).second && distinct;
  }
  std::vector<std::size_t> offset;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    offset.push_back(p.generator_names.size());
    for (const auto& n : factors[j].generator_names) {
      p.generator_names.push_back(distinct ? n : n + "_" + std::to_string(j));
    }
  }
  for (std::size_t j = 0; j < factors.size(); ++j) {
    for (Word r : factors[j].relators) {
      for (Letter& l : r) l.gen += static_cast<int>(offset[j]);
      p.relators.push_back(r);
    }
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (std::size_t j = i + 1; j < factors.size(); ++j) {
      for (std::size_t x = 0; x < factors[i].num_generators(); ++x) {
        for (std::size_t y = 0; y < factors[j].num_generators(); ++y) {
          p.relators.push_back(commutator(Word{{static_cast<int>(offset[i] + x), 1}},
                                          Word{{static_cast<int>(offset[j] + y), 1}}));
        }
      }
    }
  }
  p.aspherical = aspherical;
  return p;
}

}  // namespace gradlab
