#include "gradlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gradlab/cosets.hpp"

namespace gradlab {

namespace {

template <class T>
std::string cell(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string();
}

std::string ratio_cell(const std::optional<double>& v) {
  if (!v) return {};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", *v);
  return buf;
}

template <class T>
nlohmann::json opt(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <class T>
std::optional<T> parse_cell(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t used = 0;
  T v{};
  if constexpr (std::is_signed_v<T>) {
    v = static_cast<T>(std::stoll(s, &used));
  } else {
    v = static_cast<T>(std::stoull(s, &used));
  }
  if (used != s.size()) throw std::invalid_argument("malformed CSV cell '" + s + "'");
  return v;
}

template <class T>
std::optional<T> from_json_opt(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void emit_csv(const GradientTable& t, std::ostream& os) {
  os << kCsvHeader << '\n';
  for (const GradientRow& r : t.rows) {
    os << r.level << ',' << r.index << ',' << r.field << ',' << cell(r.b0) << ',' << cell(r.b1) << ',' << cell(r.b2)
       << ',' << cell(r.d_lower) << ',' << cell(r.d_upper) << ',' << cell(r.def_lower) << ',' << cell(r.def_upper)
       << ',' << ratio_cell(r.vol2_ratio()) << ',' << cell(r.target_rg) << ',' << cell(r.target_dg) << '\n';
  }
}

nlohmann::json report_json(const GradientTable& t) {
  nlohmann::json j;
  j["tool"] = "gradlab";
  j["version"] = kToolVersion;
  j["strategy_version"] = kCosetStrategyVersion;
  j["mode"] = t.mode;
  j["config"] = t.config;
  j["provenance"] = t.provenance;
  j["b2_kind"] = t.b2_kind;
  j["volume_degree"] = t.volume_degree;
  j["rows"] = nlohmann::json::array();
  for (const GradientRow& r : t.rows) {
    nlohmann::json row{{"level", r.level},
                       {"index", r.index},
                       {"field", r.field},
                       {"b0", opt(r.b0)},
                       {"b1", opt(r.b1)},
                       {"b2", opt(r.b2)},
                       {"d_lower", opt(r.d_lower)},
                       {"d_upper", opt(r.d_upper)},
                       {"def_lower", opt(r.def_lower)},
                       {"def_upper", opt(r.def_upper)},
                       {"r2", opt(r.r2)},
                       {"vol2_ratio", opt(r.vol2_ratio())},
                       {"target_rg", opt(r.target_rg)},
                       {"target_dg", opt(r.target_dg)}};
    if (!r.volume_vector.empty()) row["volume_vector"] = r.volume_vector;
    if (!r.kunneth_betti.empty()) row["kunneth_betti"] = r.kunneth_betti;
    j["rows"].push_back(std::move(row));
  }
  return j;
}

void emit_report(const GradientTable& t, const std::string& format, std::ostream& os) {
  if (format == "csv") {
    emit_csv(t, os);
  } else if (format == "json") {
    os << report_json(t).dump(2) << '\n';
  } else {
    throw std::invalid_argument("format must be csv or json");
  }
}

void emit_report(const GradientTable& t, const std::string& format, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  emit_report(t, format, out);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

GradientTable parse_csv_report(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("CSV report is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw std::invalid_argument("unexpected CSV header");
  GradientTable t;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != 13) throw std::invalid_argument("CSV row has " + std::to_string(c.size()) + " cells");
    GradientRow r;
    r.level = *parse_cell<std::size_t>(c[0]);
    r.index = *parse_cell<std::uint64_t>(c[1]);
    r.field = c[2];
    r.b0 = parse_cell<std::uint64_t>(c[3]);
    r.b1 = parse_cell<std::uint64_t>(c[4]);
    r.b2 = parse_cell<std::uint64_t>(c[5]);
    r.d_lower = parse_cell<std::int64_t>(c[6]);
    r.d_upper = parse_cell<std::int64_t>(c[7]);
    r.def_lower = parse_cell<std::int64_t>(c[8]);
    r.def_upper = parse_cell<std::int64_t>(c[9]);
    if (!c[10].empty()) r.r2 = static_cast<std::uint64_t>(std::llround(std::stod(c[10]) * static_cast<double>(r.index)));
    r.target_rg = parse_cell<std::int64_t>(c[11]);
    r.target_dg = parse_cell<std::int64_t>(c[12]);
    t.rows.push_back(std::move(r));
  }
  return t;
}

GradientTable parse_json_report(const nlohmann::json& j) {
  GradientTable t;
  t.mode = j.value("mode", "");
  t.config = j.value("config", nlohmann::json());
  t.provenance = j.value("provenance", std::vector<std::string>{});
  t.b2_kind = j.value("b2_kind", "exact");
  t.volume_degree = j.value("volume_degree", std::size_t{2});
  for (const auto& rj : j.at("rows")) {
    GradientRow r;
    r.level = rj.at("level").get<std::size_t>();
    r.index = rj.at("index").get<std::uint64_t>();
    r.field = rj.at("field").get<std::string>();
    r.b0 = from_json_opt<std::uint64_t>(rj, "b0");
    r.b1 = from_json_opt<std::uint64_t>(rj, "b1");
    r.b2 = from_json_opt<std::uint64_t>(rj, "b2");
    r.d_lower = from_json_opt<std::int64_t>(rj, "d_lower");
    r.d_upper = from_json_opt<std::int64_t>(rj, "d_upper");
    r.def_lower = from_json_opt<std::int64_t>(rj, "def_lower");
    r.def_upper = from_json_opt<std::int64_t>(rj, "def_upper");
    r.r2 = from_json_opt<std::uint64_t>(rj, "r2");
    r.target_rg = from_json_opt<std::int64_t>(rj, "target_rg");
    r.target_dg = from_json_opt<std::int64_t>(rj, "target_dg");
    r.volume_vector = rj.value("volume_vector", VolumeVector{});
    r.kunneth_betti = rj.value("kunneth_betti", std::vector<std::uint64_t>{});
    t.rows.push_back(std::move(r));
  }
  return t;
}

void emit_mv_report(const MvReport& r, const std::string& format, std::ostream& os) {
  if (format == "csv") {
    os << "level,index,field,degree,lhs,rhs,holds\n";
    for (const MvRow& row : r.rows) {
      os << row.level << ',' << row.index << ',' << row.field << ',' << row.degree << ',' << row.lhs << ','
         << row.rhs << ',' << (row.holds() ? "true" : "false") << '\n';
    }
  } else if (format == "json") {
    nlohmann::json j;
    j["tool"] = "gradlab";
    j["version"] = kToolVersion;
    j["mode"] = "mvcheck";
    j["provenance"] = r.provenance;
    j["rows"] = nlohmann::json::array();
    for (const MvRow& row : r.rows) {
      j["rows"].push_back({{"level", row.level},
                           {"index", row.index},
                           {"field", row.field},
                           {"degree", row.degree},
                           {"lhs", row.lhs},
                           {"rhs", row.rhs},
                           {"holds", row.holds()}});
    }
    os << j.dump(2) << '\n';
  } else {
    throw std::invalid_argument("format must be csv or json");
  }
}

}  // namespace gradlab
