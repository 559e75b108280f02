#include "relmetric/report_io.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "relmetric/error.hpp"
#include "relmetric/parsing.hpp"

namespace relmetric {

using nlohmann::json;

namespace {

// Points go into JSON as their text form so infinity survives.
json point_json(const Point& p) { return p.to_string(); }

Point point_from(const json& j) { return parse_point(j.get<std::string>()); }

// JSON has no infinities; non-finite doubles are written as strings.
json number_json(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double number_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  return parse_extended_real(s).value();
}

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

// Separates "# key=value" lines from data lines; blank lines are dropped.
struct CsvDoc {
  std::map<std::string, std::string> meta;
  std::vector<std::vector<std::string>> rows;  // header first
};

CsvDoc read_csv(std::string_view text) {
  CsvDoc doc;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(' '));
      doc.meta[key] = line.substr(eq + 1);
      continue;
    }
    doc.rows.push_back(split(line, ','));
  }
  return doc;
}

const std::string& meta_at(const CsvDoc& d, const std::string& key) {
  auto it = d.meta.find(key);
  if (it == d.meta.end()) throw ParseError("csv: missing '# " + key + "=' line");
  return it->second;
}

void expect_header(const CsvDoc& d, const std::vector<std::string>& header) {
  if (d.rows.empty() || d.rows.front() != header) throw ParseError("csv: unexpected or missing header row");
  for (std::size_t i = 1; i < d.rows.size(); ++i) {
    if (d.rows[i].size() != header.size()) throw ParseError("csv: row " + std::to_string(i) + " has wrong width");
  }
}

std::string csv_point(const Point& p) {
  std::string s = p.to_string();
  for (char& c : s) {
    if (c == ',') c = ' ';
  }
  return s;
}

bool bool_from(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw ParseError("csv: expected true/false, got '" + s + "'");
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

const std::vector<std::string> kViolationHeader{"x", "z", "y", "lhs", "rhs", "margin"};
const std::vector<std::string> kRegionHeader{"p", "q", "label", "analytic", "in_band", "x", "z", "y", "lhs", "rhs", "margin"};
const std::vector<std::string> kOrderHeader{"x", "ratio"};

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

OutputFormat output_format_from_string(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  throw ParseError("unknown output format '" + s + "' (json or csv)");
}

json to_json(const SearchConfig& c) {
  return {{"lo", c.lo},
          {"hi", c.hi},
          {"coarse_grid_points", c.coarse_grid_points},
          {"refine_iterations", c.refine_iterations},
          {"violation_tolerance", c.violation_tolerance},
          {"seed", c.seed},
          {"random_triples", c.random_triples},
          {"top_k", c.top_k},
          {"order_samples", c.order_samples},
          {"order_hi", c.order_hi},
          {"order_tolerance", c.order_tolerance}};
}

SearchConfig search_config_from_json(const json& j) {
  return guarded("search config", [&] {
    SearchConfig c;
    c.lo = j.at("lo").get<double>();
    c.hi = j.at("hi").get<double>();
    c.coarse_grid_points = j.at("coarse_grid_points").get<int>();
    c.refine_iterations = j.at("refine_iterations").get<int>();
    c.violation_tolerance = j.at("violation_tolerance").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.random_triples = j.at("random_triples").get<long>();
    c.top_k = j.at("top_k").get<int>();
    c.order_samples = j.at("order_samples").get<int>();
    c.order_hi = j.at("order_hi").get<double>();
    c.order_tolerance = j.at("order_tolerance").get<double>();
    return c;
  });
}

json to_json(const ViolationReport& r) {
  return {{"x", point_json(r.x)},         {"z", point_json(r.z)},         {"y", point_json(r.y)},
          {"lhs", number_json(r.lhs)},   {"rhs", number_json(r.rhs)},   {"margin", number_json(r.margin)},
          {"relative_margin", number_json(r.relative_margin())}};
}

ViolationReport violation_report_from_json(const json& j) {
  return guarded("violation report", [&] {
    ViolationReport r{point_from(j.at("x")), point_from(j.at("z")), point_from(j.at("y"))};
    r.lhs = number_from(j.at("lhs"));
    r.rhs = number_from(j.at("rhs"));
    r.margin = number_from(j.at("margin"));
    return r;
  });
}

json to_json(const OrderReport& r) {
  json samples = json::array();
  for (const auto& [x, g] : r.ratio_samples) samples.push_back({number_json(x), number_json(g)});
  json witness = nullptr;
  if (r.witness) witness = {number_json(r.witness->first), number_json(r.witness->second)};
  return {{"verdict", to_string(r.verdict)},
          {"witness", witness},
          {"dips_below_one", r.dips_below_one},
          {"ratio_samples", samples}};
}

OrderReport order_report_from_json(const json& j) {
  return guarded("order report", [&] {
    OrderReport r;
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    const json& w = j.at("witness");
    if (!w.is_null()) r.witness = std::make_pair(number_from(w.at(0)), number_from(w.at(1)));
    r.dips_below_one = j.at("dips_below_one").get<bool>();
    for (const auto& s : j.at("ratio_samples")) r.ratio_samples.emplace_back(number_from(s.at(0)), number_from(s.at(1)));
    if (r.witness.has_value() != (r.verdict == OrderReport::Verdict::DecreasingSomewhere)) {
      throw ParseError("order report: witness must be present exactly when the ratio decreases");
    }
    return r;
  });
}

json to_json(const RegionTable& t) {
  json cells = json::array();
  for (const auto& c : t.cells) {
    cells.push_back({{"p", c.p},
                     {"q", c.q},
                     {"label", to_string(c.label)},
                     {"analytic_metric", c.analytic_metric},
                     {"in_band", c.in_band},
                     {"witness", c.witness ? to_json(*c.witness) : json(nullptr)}});
  }
  return {{"step", t.step}, {"disagreements", t.disagreements()}, {"cells", cells}};
}

RegionTable region_table_from_json(const json& j) {
  return guarded("region table", [&] {
    RegionTable t;
    t.step = j.at("step").get<double>();
    for (const auto& cj : j.at("cells")) {
      RegionCell c;
      c.p = cj.at("p").get<double>();
      c.q = cj.at("q").get<double>();
      c.label = label_from_string(cj.at("label").get<std::string>());
      c.analytic_metric = cj.at("analytic_metric").get<bool>();
      c.in_band = cj.at("in_band").get<bool>();
      if (!cj.at("witness").is_null()) c.witness = violation_report_from_json(cj.at("witness"));
      if (c.label == RegionCell::Label::NonMetric && !c.witness) {
        throw ParseError("region table: non-metric cell without witness");
      }
      t.cells.push_back(std::move(c));
    }
    return t;
  });
}

json to_json(const PredicateResult& r) {
  if (r.pass()) return {{"pass", true}, {"witness", nullptr}};
  const PredicateWitness& w = *r.witness;
  json at = json::array();
  for (double v : w.at) at.push_back(number_json(v));
  return {{"pass", false},
          {"witness",
           {{"condition", w.condition}, {"at", at}, {"lhs", number_json(w.lhs)}, {"rhs", number_json(w.rhs)}}}};
}

PredicateResult predicate_result_from_json(const json& j) {
  return guarded("predicate result", [&] {
    PredicateResult r;
    const json& w = j.at("witness");
    if (!w.is_null()) {
      PredicateWitness pw;
      pw.condition = w.at("condition").get<std::string>();
      for (const auto& v : w.at("at")) pw.at.push_back(number_from(v));
      pw.lhs = number_from(w.at("lhs"));
      pw.rhs = number_from(w.at("rhs"));
      r.witness = pw;
    }
    if (j.at("pass").get<bool>() != r.pass()) throw ParseError("predicate result: pass flag contradicts witness");
    return r;
  });
}

json to_json(const PlemReport& r) {
  return {{"sufficient", r.sufficient}, {"necessary1", r.necessary1}, {"necessary2", r.necessary2}};
}

PlemReport plem_report_from_json(const json& j) {
  return guarded("plem report", [&] {
    return PlemReport{j.at("sufficient").get<bool>(), j.at("necessary1").get<bool>(),
                      j.at("necessary2").get<bool>()};
  });
}

std::string csv_config_header(const SearchConfig& c) {
  std::ostringstream os;
  const json j = to_json(c);
  for (const auto& [key, value] : j.items()) {
    os << "# config." << key << "=" << (value.is_number_float() ? format_double(value.get<double>()) : value.dump())
       << "\n";
  }
  return os.str();
}

std::string to_csv(const SearchConfig& c) {
  std::ostringstream os;
  os << "key,value\n";
  const json j = to_json(c);
  for (const auto& [key, value] : j.items()) {
    os << key << "," << (value.is_number_float() ? format_double(value.get<double>()) : value.dump()) << "\n";
  }
  return os.str();
}

SearchConfig search_config_from_csv(std::string_view text) {
  const CsvDoc d = read_csv(text);
  expect_header(d, {"key", "value"});
  json j = json::object();
  for (std::size_t i = 1; i < d.rows.size(); ++i) {
    j[d.rows[i][0]] = guarded("search config", [&] { return json::parse(d.rows[i][1]); });
  }
  return search_config_from_json(j);
}

std::string to_csv(const ViolationReport& r) {
  std::ostringstream os;
  os << "x,z,y,lhs,rhs,margin\n"
     << csv_point(r.x) << "," << csv_point(r.z) << "," << csv_point(r.y) << "," << format_double(r.lhs) << ","
     << format_double(r.rhs) << "," << format_double(r.margin) << "\n";
  return os.str();
}

ViolationReport violation_report_from_csv(std::string_view text) {
  const CsvDoc d = read_csv(text);
  expect_header(d, kViolationHeader);
  if (d.rows.size() != 2) throw ParseError("violation csv: expected exactly one data row");
  const auto& row = d.rows[1];
  ViolationReport r{parse_point(row[0]), parse_point(row[1]), parse_point(row[2])};
  r.lhs = parse_extended_real(row[3]).value();
  r.rhs = parse_extended_real(row[4]).value();
  r.margin = parse_extended_real(row[5]).value();
  return r;
}

std::string to_csv(const OrderReport& r) {
  std::ostringstream os;
  os << "# verdict=" << to_string(r.verdict) << "\n";
  if (r.witness) os << "# witness=" << format_double(r.witness->first) << " " << format_double(r.witness->second) << "\n";
  os << "# dips_below_one=" << bool_text(r.dips_below_one) << "\n";
  os << "x,ratio\n";
  for (const auto& [x, g] : r.ratio_samples) os << format_double(x) << "," << format_double(g) << "\n";
  return os.str();
}

OrderReport order_report_from_csv(std::string_view text) {
  const CsvDoc d = read_csv(text);
  expect_header(d, kOrderHeader);
  OrderReport r;
  r.verdict = verdict_from_string(meta_at(d, "verdict"));
  r.dips_below_one = bool_from(meta_at(d, "dips_below_one"));
  if (auto it = d.meta.find("witness"); it != d.meta.end()) {
    const auto parts = split(it->second, ' ');
    if (parts.size() != 2) throw ParseError("order csv: witness must hold two numbers");
    r.witness = std::make_pair(parse_real(parts[0]), parse_real(parts[1]));
  }
  if (r.witness.has_value() != (r.verdict == OrderReport::Verdict::DecreasingSomewhere)) {
    throw ParseError("order csv: witness must be present exactly when the ratio decreases");
  }
  for (std::size_t i = 1; i < d.rows.size(); ++i) {
    r.ratio_samples.emplace_back(parse_extended_real(d.rows[i][0]).value(), parse_extended_real(d.rows[i][1]).value());
  }
  return r;
}

std::string to_csv(const RegionTable& t) {
  std::ostringstream os;
  os << "# step=" << format_double(t.step) << "\n";
  os << "p,q,label,analytic,in_band,x,z,y,lhs,rhs,margin\n";
  for (const auto& c : t.cells) {
    os << format_double(c.p) << "," << format_double(c.q) << "," << to_string(c.label) << ","
       << (c.analytic_metric ? "metric" : "non-metric") << "," << bool_text(c.in_band);
    if (c.witness) {
      const auto& w = *c.witness;
      os << "," << csv_point(w.x) << "," << csv_point(w.z) << "," << csv_point(w.y) << "," << format_double(w.lhs)
         << "," << format_double(w.rhs) << "," << format_double(w.margin);
    } else {
      os << ",,,,,,";
    }
    os << "\n";
  }
  return os.str();
}

RegionTable region_table_from_csv(std::string_view text) {
  const CsvDoc d = read_csv(text);
  expect_header(d, kRegionHeader);
  RegionTable t;
  t.step = parse_real(meta_at(d, "step"));
  for (std::size_t i = 1; i < d.rows.size(); ++i) {
    const auto& row = d.rows[i];
    RegionCell c;
    c.p = parse_real(row[0]);
    c.q = parse_real(row[1]);
    c.label = label_from_string(row[2]);
    c.analytic_metric = label_from_string(row[3]) == RegionCell::Label::Metric;
    c.in_band = bool_from(row[4]);
    if (!row[5].empty()) {
      ViolationReport w{parse_point(row[5]), parse_point(row[6]), parse_point(row[7])};
      w.lhs = parse_extended_real(row[8]).value();
      w.rhs = parse_extended_real(row[9]).value();
      w.margin = parse_extended_real(row[10]).value();
      c.witness = w;
    }
    if (c.label == RegionCell::Label::NonMetric && !c.witness) {
      throw ParseError("region csv: non-metric cell without witness");
    }
    t.cells.push_back(std::move(c));
  }
  return t;
}

}  // namespace relmetric
