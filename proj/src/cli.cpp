#include "relmetric/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "relmetric/domain_metrics.hpp"
#include "relmetric/error.hpp"
#include "relmetric/parsing.hpp"
#include "relmetric/relative_metrics.hpp"
#include "relmetric/report_io.hpp"
#include "relmetric/verification.hpp"

namespace relmetric::cli {

namespace {

using nlohmann::json;

constexpr const char* kGrammar = R"(Weight functions (--weight, --m, --n):
  power:p=P[,q=Q]     A_p^q, p may be inf or -inf, q defaults to 1
  scaled:p=P,c=C      C * A_p
  min | max           min{x,y} | max{x,y}
  const:c=C           constant C
  stolarsky:alpha=A   alpha-quasimean S_A (A = 1: logarithmic mean)
  product:f=NAME,...  f(x) f(y) with NAME one of the scalar functions below

Scalar functions (--f, product:f=...):
  powone:p=P  exp  quad:a=,b=,c=  sqrt1p  affine:a=,b=  const:c=  maxone
  maxaffine:a=,b=  recip1p

Points: comma-separated coordinates, or inf (chordal, cross-ratio only).
Ranges: lo:hi:step (inclusive) or a single value.

Exit codes: 0 ok / no violation / increasing / table agrees,
1 violation / decreasing / table disagrees, 2 bad input, 3 domain or degenerate weight.)";

struct Options {
  std::string format = "json";
  std::string out_path;
  SearchConfig cfg;

  std::string weight = "power:p=1,q=1";
  std::string m, n, f;
  std::string p = "1", q = "1", c = "1", s = "2";
  std::string x, y, a, b, cc, d;
  std::string domain;
  std::string kind = "raw";
  std::string metric = "j";
  std::string alpha = "1";
  std::string p_range, q_range;
  std::optional<double> step;
};

class Report {
 public:
  Report(std::string command, const Options& o) : command_(std::move(command)), opts_(o) {}

  void input(const std::string& key, const std::string& value) { inputs_[key] = value; }

  std::string render(const json& result, const std::string& csv_body) const {
    if (output_format_from_string(opts_.format) == OutputFormat::Json) {
      json doc{{"command", command_}, {"config", to_json(opts_.cfg)}, {"inputs", inputs_}, {"result", result}};
      return doc.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "# command=" << command_ << "\n" << csv_config_header(opts_.cfg);
    for (const auto& [k, v] : inputs_) os << "# input." << k << "=" << v << "\n";
    os << csv_body;
    return os.str();
  }

 private:
  std::string command_;
  const Options& opts_;
  std::map<std::string, std::string> inputs_;
};

Point finite_point(const std::string& text, const char* flag) {
  if (text.empty()) throw ParseError(std::string("missing ") + flag);
  Point p = parse_point(text);
  if (p.is_infinite()) throw DomainError(std::string(flag) + ": the point at infinity is not accepted here");
  return p;
}

Point any_point(const std::string& text, const char* flag) {
  if (text.empty()) throw ParseError(std::string("missing ") + flag);
  return parse_point(text);
}

DomainSpec domain_of(const Options& o) {
  if (o.domain.empty()) throw ParseError("missing --domain");
  return load_domain_spec(o.domain);
}

struct Outcome {
  int code = kOk;
  std::string text;
};

Outcome value_record(Report& r, const std::string& quantity, double v) {
  json res{{"quantity", quantity}, {"value", std::isfinite(v) ? json(v) : json(format_double(v))}};
  return {kOk, r.render(res, "quantity,value\n" + quantity + "," + format_double(v) + "\n")};
}

Outcome eval_command(const std::string& what, const Options& o) {
  Report r("eval " + what, o);
  auto two_points = [&](bool allow_inf) {
    r.input("x", o.x);
    r.input("y", o.y);
    if (allow_inf) return std::pair{any_point(o.x, "--x"), any_point(o.y, "--y")};
    return std::pair{finite_point(o.x, "--x"), finite_point(o.y, "--y")};
  };
  if (what == "rho") {
    r.input("weight", o.weight);
    const WeightFunction m = parse_weight(o.weight);
    auto [x, y] = two_points(false);
    return value_record(r, what, rho(m, x, y));
  }
  if (what == "rho-pq") {
    r.input("p", o.p);
    r.input("q", o.q);
    const ExtendedReal p = parse_extended_real(o.p);
    const double q = parse_real(o.q);
    auto [x, y] = two_points(false);
    return value_record(r, what, rho_pq(p, q, x, y));
  }
  if (what == "lambda") {
    r.input("p", o.p);
    r.input("c", o.c);
    const ExtendedReal p = parse_extended_real(o.p);
    const double c = parse_real(o.c);
    auto [x, y] = two_points(false);
    return value_record(r, what, lambda_apc(p, c, x, y));
  }
  if (what == "chordal") {
    auto [x, y] = two_points(true);
    return value_record(r, what, chordal(x, y));
  }
  if (what == "example-metric") {
    r.input("p", o.p);
    const double p = parse_real(o.p);
    auto [x, y] = two_points(true);
    return value_record(r, what, example_metric(p, x, y));
  }
  if (what == "cross-ratio") {
    r.input("a", o.a);
    r.input("b", o.b);
    r.input("c", o.cc);
    r.input("d", o.d);
    return value_record(r, what,
                        cross_ratio({any_point(o.a, "--a"), any_point(o.b, "--b"), any_point(o.cc, "--c"),
                                     any_point(o.d, "--d")}));
  }
  if (what == "iota") {
    r.input("s", o.s);
    const ExtendedReal s = parse_extended_real(o.s);
    auto [x, y] = two_points(false);
    return value_record(r, what, iota(s, x, y));
  }
  if (what == "rho-tilde") {
    r.input("s", o.s);
    const double s = parse_real(o.s);
    auto [x, y] = two_points(false);
    return value_record(r, what, rho_tilde_halfplane(s, x, y));
  }
  r.input("domain", o.domain);
  const DomainSpec g = domain_of(o);
  if (what == "j") {
    auto [x, y] = two_points(false);
    return value_record(r, what, j_metric(g, x, y));
  }
  if (what == "delta-p") {
    r.input("p", o.p);
    const ExtendedReal p = parse_extended_real(o.p);
    auto [x, y] = two_points(false);
    return value_record(r, what, delta_p(g, p, x, y));
  }
  r.input("weight", o.weight);
  const WeightFunction m = parse_weight(o.weight);
  auto [x, y] = two_points(false);
  if (what == "rho-sup") return value_record(r, what, rho_sup(m, g, x, y));
  if (what == "rho-prime") return value_record(r, what, rho_prime(m, g, x, y));
  return value_record(r, what, rho_double_prime(m, g, x, y));
}

Outcome violation_outcome(Report& r, const std::optional<ViolationReport>& v) {
  const json res{{"violation_found", v.has_value()}, {"violation", v ? to_json(*v) : json(nullptr)}};
  const std::string csv = v ? to_csv(*v) : std::string("x,z,y,lhs,rhs,margin\n");
  return {v ? kNegative : kOk, r.render(res, csv)};
}

Outcome predicate_outcome(Report& r, const PredicateResult& p) {
  std::ostringstream csv;
  csv << "pass,condition,at,lhs,rhs\n";
  if (p.pass()) {
    csv << "true,,,,\n";
  } else {
    csv << "false," << p.witness->condition << ",";
    for (std::size_t i = 0; i < p.witness->at.size(); ++i) csv << (i ? " " : "") << format_double(p.witness->at[i]);
    csv << "," << format_double(p.witness->lhs) << "," << format_double(p.witness->rhs) << "\n";
  }
  return {p.pass() ? kOk : kNegative, r.render(to_json(p), csv.str())};
}

DistanceFunction domain_distance(const Options& o, const DomainSpec& g, Report& r) {
  r.input("metric", o.metric);
  if (o.metric == "j") return [g](const Point& x, const Point& y) { return j_metric(g, x, y); };
  if (o.metric == "delta-p") {
    r.input("p", o.p);
    const ExtendedReal p = parse_extended_real(o.p);
    return [g, p](const Point& x, const Point& y) { return delta_p(g, p, x, y); };
  }
  if (o.metric == "iota") {
    r.input("s", o.s);
    const ExtendedReal s = parse_extended_real(o.s);
    return [s](const Point& x, const Point& y) { return iota(s, x, y); };
  }
  r.input("weight", o.weight);
  const WeightFunction m = parse_weight(o.weight);
  if (o.metric == "rho-sup") return [g, m](const Point& x, const Point& y) { return rho_sup(m, g, x, y); };
  if (o.metric == "rho-prime") return [g, m](const Point& x, const Point& y) { return rho_prime(m, g, x, y); };
  if (o.metric == "rho-double-prime") {
    return [g, m](const Point& x, const Point& y) { return rho_double_prime(m, g, x, y); };
  }
  throw ParseError("unknown --metric '" + o.metric + "'");
}

Outcome check_command(const std::string& what, const Options& o) {
  Report r("check " + what, o);
  if (what == "triangle") {
    r.input("weight", o.weight);
    r.input("kind", o.kind);
    const WeightFunction m = parse_weight(o.weight);
    return violation_outcome(r, triangle_search_1d(m, o.cfg, metric_kind_from_string(o.kind)));
  }
  if (what == "lambda-sharp") {
    r.input("p", o.p);
    r.input("c", o.c);
    return violation_outcome(r, lambda_sharpness(parse_real(o.p), parse_real(o.c), o.cfg));
  }
  if (what == "mi") {
    if (!o.f.empty()) {
      r.input("f", o.f);
      return predicate_outcome(r, mi_check(parse_scalar_function(o.f).f, o.cfg));
    }
    r.input("weight", o.weight);
    return predicate_outcome(r, mi_check(parse_weight(o.weight), o.cfg));
  }
  if (what == "convexity") {
    r.input("f", o.f);
    if (o.f.empty()) throw ParseError("missing --f");
    return predicate_outcome(r, convexity_check(parse_scalar_function(o.f).f, o.cfg));
  }
  if (what == "plem") {
    r.input("weight", o.weight);
    r.input("alpha", o.alpha);
    const PlemReport p = plem_conditions(parse_weight(o.weight), parse_real(o.alpha), o.cfg);
    std::ostringstream csv;
    csv << "sufficient,necessary1,necessary2\n"
        << std::boolalpha << p.sufficient << "," << p.necessary1 << "," << p.necessary2 << "\n";
    return {p.sufficient ? kOk : kNegative, r.render(to_json(p), csv.str())};
  }
  r.input("domain", o.domain);
  const DomainSpec g = domain_of(o);
  const DistanceFunction dist = domain_distance(o, g, r);
  const SearchSpace space = o.metric == "iota" ? domain_space(DomainSpec::half_plane()) : domain_space(g);
  return violation_outcome(r, triangle_search_nd(dist, space, o.cfg));
}

Outcome classify_command(const Options& o) {
  Report r("classify", o);
  r.input("p", o.p_range);
  r.input("q", o.q_range);
  if (o.p_range.empty() || o.q_range.empty()) throw ParseError("classify needs --p and --q ranges");
  const std::vector<double> ps = parse_range(o.p_range), qs = parse_range(o.q_range);
  double step = 0.1;
  if (o.step) {
    step = *o.step;
  } else if (auto parts = o.p_range.find(':'); parts != std::string::npos) {
    step = parse_real(o.p_range.substr(o.p_range.rfind(':') + 1));
  }
  r.input("step", format_double(step));
  const RegionTable t = classify_pq_region(ps, qs, step, o.cfg);
  return {t.disagreements() == 0 ? kOk : kNegative, r.render(to_json(t), to_csv(t))};
}

Outcome order_command(const Options& o) {
  Report r("order", o);
  r.input("m", o.m);
  r.input("n", o.n);
  if (o.m.empty() || o.n.empty()) throw ParseError("order needs --m and --n");
  const OrderReport rep = strong_order_check(parse_weight(o.m), parse_weight(o.n), o.cfg);
  return {rep.verdict == OrderReport::Verdict::Increasing ? kOk : kNegative, r.render(to_json(rep), to_csv(rep))};
}

Outcome domain_eval_command(const Options& o) {
  Report r("domain-eval", o);
  r.input("domain", o.domain);
  r.input("x", o.x);
  r.input("y", o.y);
  r.input("weight", o.weight);
  r.input("p", o.p);
  const DomainSpec g = domain_of(o);
  const Point x = finite_point(o.x, "--x"), y = finite_point(o.y, "--y");
  const WeightFunction m = parse_weight(o.weight);
  const ExtendedReal p = parse_extended_real(o.p);
  const std::vector<std::pair<std::string, double>> values{
      {"d_x", boundary_distance(g, x)},         {"d_y", boundary_distance(g, y)},
      {"j", j_metric(g, x, y)},                 {"delta_p", delta_p(g, p, x, y)},
      {"rho_sup", rho_sup(m, g, x, y)},         {"rho_prime", rho_prime(m, g, x, y)},
      {"rho_double_prime", rho_double_prime(m, g, x, y)}};
  json res = json::object();
  std::ostringstream csv;
  csv << "quantity,value\n";
  for (const auto& [k, v] : values) {
    res[k] = std::isfinite(v) ? json(v) : json(format_double(v));
    csv << k << "," << format_double(v) << "\n";
  }
  return {kOk, r.render(res, csv.str())};
}

void add_search_options(CLI::App& app, Options& o) {
  app.add_option("--seed", o.cfg.seed, "random seed")->capture_default_str();
  app.add_option("--lo", o.cfg.lo, "lower end of the log-scaled search range")->capture_default_str();
  app.add_option("--hi", o.cfg.hi, "upper end of the log-scaled search range")->capture_default_str();
  app.add_option("--grid-points", o.cfg.coarse_grid_points, "coarse grid points per axis")->capture_default_str();
  app.add_option("--refine-iterations", o.cfg.refine_iterations, "step halvings in local refinement")
      ->capture_default_str();
  app.add_option("--tolerance", o.cfg.violation_tolerance, "relative violation tolerance")->capture_default_str();
  app.add_option("--random-triples", o.cfg.random_triples, "random triples of the n-dimensional search")
      ->capture_default_str();
  app.add_option("--top-k", o.cfg.top_k, "candidates refined locally")->capture_default_str();
  app.add_option("--order-samples", o.cfg.order_samples, "trace-ratio samples")->capture_default_str();
  app.add_option("--order-hi", o.cfg.order_hi, "upper end of the trace-ratio grid")->capture_default_str();
  app.add_option("--order-tolerance", o.cfg.order_tolerance, "relative decrease counted by order checks")
      ->capture_default_str();
}

int code_for(const Error& e) {
  if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const DegenerateWeight*>(&e) ||
      dynamic_cast<const EvaluationError*>(&e) || dynamic_cast<const QuadratureFailure*>(&e)) {
    return kDomainError;
  }
  return kUsageError;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Relative metrics: evaluation and numerical verification", "relmetric"};
  app.footer(kGrammar);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--out", o.out_path, "write the report to this file instead of standard output");
  add_search_options(app, o);

  std::string leaf;
  auto leaf_cb = [&leaf](const std::string& name) { return [&leaf, name] { leaf = name; }; };

  CLI::App* eval = app.add_subcommand("eval", "evaluate one distance");
  eval->require_subcommand(1);
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"rho", "|x-y| / M(|x|,|y|)"},
           {"rho-pq", "rho with M = A_p^q"},
           {"lambda", "log(1 + c |x-y| / A_p(|x|,|y|))"},
           {"chordal", "chordal distance"},
           {"example-metric", "|x-y| / ((1+|x|^p)^(1/p) (1+|y|^p)^(1/p))"},
           {"cross-ratio", "|a,b,c,d|"},
           {"iota", "half-plane iota_s"},
           {"rho-tilde", "half-plane boundary-integral distance"},
           {"j", "j_G"},
           {"delta-p", "cross-ratio metric delta_G^p"},
           {"rho-sup", "sup over boundary points of rho_M(x-a, y-a)"},
           {"rho-prime", "cross-ratio weight distance"},
           {"rho-double-prime", "|x-y| / M(d(x), d(y))"}}) {
    CLI::App* sub = eval->add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("--x", o.x, "first point");
    sub->add_option("--y", o.y, "second point");
    sub->add_option("--weight", o.weight, "weight function")->capture_default_str();
    sub->add_option("--p", o.p, "order p")->capture_default_str();
    sub->add_option("--q", o.q, "exponent q")->capture_default_str();
    sub->add_option("--s", o.s, "exponent s")->capture_default_str();
    sub->add_option("--domain", o.domain, "domain file");
    if (name == "cross-ratio") {
      sub->add_option("--a", o.a, "point a");
      sub->add_option("--b", o.b, "point b");
      sub->add_option("--c", o.cc, "point c");
      sub->add_option("--d", o.d, "point d");
    } else {
      sub->add_option("--c", o.c, "scale c")->capture_default_str();
    }
    sub->callback(leaf_cb(name));
  }

  CLI::App* check = app.add_subcommand("check", "run a verification");
  check->require_subcommand(1);
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"triangle", "triangle-inequality search for rho_M on the line"},
           {"lambda-sharp", "triangle search for log(1 + rho_{A_p/c})"},
           {"mi", "moderately-increasing check of --weight or --f"},
           {"convexity", "three-point convexity check of --f"},
           {"plem", "sufficient and necessary conditions against S_alpha"},
           {"domain-triangle", "random triangle search for a domain metric"}}) {
    CLI::App* sub = check->add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("--weight", o.weight, "weight function")->capture_default_str();
    sub->add_option("--kind", o.kind, "raw | log1p | arcsinh | arccosh1p")->capture_default_str();
    sub->add_option("--f", o.f, "scalar function");
    sub->add_option("--p", o.p, "order p")->capture_default_str();
    sub->add_option("--c", o.c, "scale c")->capture_default_str();
    sub->add_option("--s", o.s, "exponent s")->capture_default_str();
    sub->add_option("--alpha", o.alpha, "quasimean exponent")->capture_default_str();
    sub->add_option("--domain", o.domain, "domain file");
    sub->add_option("--metric", o.metric, "j | delta-p | iota | rho-sup | rho-prime | rho-double-prime")
        ->capture_default_str();
    sub->callback(leaf_cb(name));
  }

  CLI::App* classify = app.add_subcommand("classify", "classify a (p,q) grid for rho_{p,q}");
  classify->fallthrough();
  classify->add_option("--p", o.p_range, "p range lo:hi:step")->required();
  classify->add_option("--q", o.q_range, "q range lo:hi:step")->required();
  classify->add_option("--step", o.step, "boundary band width (defaults to the step of --p)");
  classify->callback(leaf_cb("classify"));

  CLI::App* order = app.add_subcommand("order", "strong order of two weights through their traces");
  order->fallthrough();
  order->add_option("--m", o.m, "upper weight")->required();
  order->add_option("--n", o.n, "lower weight")->required();
  order->callback(leaf_cb("order"));

  CLI::App* deval = app.add_subcommand("domain-eval", "all domain distances of a pair");
  deval->fallthrough();
  deval->add_option("--domain", o.domain, "domain file")->required();
  deval->add_option("--x", o.x, "first point")->required();
  deval->add_option("--y", o.y, "second point")->required();
  deval->add_option("--weight", o.weight, "weight function")->capture_default_str();
  deval->add_option("--p", o.p, "order of delta_p")->capture_default_str();
  deval->callback(leaf_cb("domain-eval"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kUsageError;
  }

  Outcome result;
  try {
    o.cfg.validate();
    if (eval->parsed()) {
      result = eval_command(leaf, o);
    } else if (check->parsed()) {
      result = check_command(leaf, o);
    } else if (classify->parsed()) {
      result = classify_command(o);
    } else if (order->parsed()) {
      result = order_command(o);
    } else {
      result = domain_eval_command(o);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return code_for(e);
  }

  if (o.out_path.empty()) {
    out << result.text;
  } else {
    std::ofstream file(o.out_path);
    if (!file) {
      err << "error: cannot write " << o.out_path << "\n";
      return kUsageError;
    }
    file << result.text;
  }
  return result.code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("relmetric");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace relmetric::cli
