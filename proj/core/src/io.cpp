#include "smba/io.hpp"

#include <charconv>
#include <fstream>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "smba/errors.hpp"

namespace smba {
namespace {

using nlohmann::json;

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw ParseError(std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError("field '" + where + "': expected a number");
  return j.get<double>();
}

Index as_count(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ParseError("field '" + where + "': expected a nonnegative integer");
  }
  return static_cast<Index>(j.get<long long>());
}

Vector as_vector(const json& j, Index len, const std::string& where) {
  if (!j.is_array()) throw ParseError("field '" + where + "': expected an array");
  if (static_cast<Index>(j.size()) != len) {
    throw ParseError("field '" + where + "': expected " + std::to_string(len) + " entries, got " +
                     std::to_string(j.size()));
  }
  Vector v(len);
  for (Index i = 0; i < len; ++i) {
    v(i) = as_number(j[static_cast<std::size_t>(i)], where + "[" + std::to_string(i) + "]");
  }
  return v;
}

// Row-major flat array -> Eigen matrix.
Matrix as_matrix(const json& j, Index rows, Index cols, const std::string& where) {
  const Vector flat = as_vector(j, rows * cols, where);
  Matrix out(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) out(r, c) = flat(r * cols + c);
  }
  return out;
}

json vector_json(const Vector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

json matrix_json(const Matrix& m) {
  json arr = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) arr.push_back(m(r, c));
  }
  return arr;
}

Index y_length(const std::string& family, Index m) {
  if (family == "nsdp") return m * m;
  if (family == "orthant") return m;
  if (family == "pcone") return m + 1;
  throw ParseError("field 'family': unknown family '" + family + "'");
}

template <typename T>
T parse_field(std::string_view token, const char* column, std::size_t line) {
  T value{};
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ParseError("trace line " + std::to_string(line) + ", column '" + column +
                     "': cannot parse '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

ProblemDocument nsdp_document(const NsdpInstance& inst, double l1_weight) {
  ProblemDocument doc;
  doc.family = "nsdp";
  doc.n = inst.n;
  doc.m = inst.m;
  doc.q = inst.q;
  doc.b = inst.b;
  doc.c = inst.c;
  doc.d = inst.d;
  doc.seed = inst.seed;
  for (const Matrix& ai : inst.a) doc.a.emplace_back(Eigen::Map<const YVector>(ai.data(), ai.size()));
  doc.l1_weight = Vector::Constant(inst.n, l1_weight);
  return doc;
}

DCProblem build_problem(const ProblemDocument& doc, double alpha4) {
  auto f = std::make_shared<PolynomialObjective>(doc.q, doc.b, doc.c, doc.d);
  auto g = std::make_shared<AffineConstraint>(AffineConstraint::from_terms(doc.a));
  ConeBaseOracle cone = doc.family == "nsdp"      ? ConeBaseOracle::neg_semidef(doc.m, alpha4)
                        : doc.family == "orthant" ? ConeBaseOracle::nonpos_orthant(doc.m, alpha4)
                        : doc.family == "pcone"   ? ConeBaseOracle::p_cone(doc.m, doc.p, alpha4)
                                                  : throw ArgumentError("unknown family " + doc.family);
  return DCProblem(std::move(f), ProxRegularizer::l1(doc.l1_weight),
                   std::make_shared<ZeroConcaveTerm>(doc.n), std::move(g), std::move(cone));
}

std::string problem_to_json(const ProblemDocument& doc) {
  json j;
  j["family"] = doc.family;
  j["n"] = doc.n;
  j["m"] = doc.m;
  if (doc.family == "pcone") j["p"] = doc.p;
  j["seed"] = doc.seed;
  j["Q"] = matrix_json(doc.q);
  j["b"] = vector_json(doc.b);
  j["c"] = vector_json(doc.c);
  j["d"] = vector_json(doc.d);
  json a = json::array();
  for (const YVector& ai : doc.a) {
    if (doc.family == "nsdp") {
      a.push_back(matrix_json(Eigen::Map<const Matrix>(ai.data(), doc.m, doc.m)));
    } else {
      a.push_back(vector_json(ai));
    }
  }
  j["A"] = std::move(a);
  j["l1_weight"] = vector_json(doc.l1_weight);
  return j.dump(1);
}

ProblemDocument problem_from_json(const std::string& text) {
  const json j = parse_json(text, "problem document");
  if (!j.is_object()) throw ParseError("problem document: expected a JSON object");
  ProblemDocument doc;
  const json& family = field(j, "family");
  if (!family.is_string()) throw ParseError("field 'family': expected a string");
  doc.family = family.get<std::string>();
  doc.n = as_count(field(j, "n"), "n");
  doc.m = as_count(field(j, "m"), "m");
  if (doc.n < 1 || doc.m < 1) throw ParseError("fields 'n' and 'm' must be >= 1");
  const Index ylen = y_length(doc.family, doc.m);
  if (j.contains("p")) doc.p = as_number(j.at("p"), "p");
  if (j.contains("seed") && j.at("seed").is_number_unsigned()) doc.seed = j.at("seed").get<std::uint64_t>();
  const Index n = doc.n;
  doc.q = as_matrix(field(j, "Q"), n, n, "Q");
  doc.b = as_vector(field(j, "b"), n, "b");
  doc.c = j.contains("c") ? as_vector(j.at("c"), n, "c") : Vector::Zero(n);
  doc.d = j.contains("d") ? as_vector(j.at("d"), n, "d") : Vector::Zero(n);
  const json& a = field(j, "A");
  if (!a.is_array() || static_cast<Index>(a.size()) != n + 1) {
    throw ParseError("field 'A': expected n+1 = " + std::to_string(n + 1) + " entries");
  }
  for (Index i = 0; i <= n; ++i) {
    const std::string where = "A[" + std::to_string(i) + "]";
    const json& ai = a[static_cast<std::size_t>(i)];
    if (doc.family == "nsdp") {
      const Matrix mat = as_matrix(ai, doc.m, doc.m, where);
      doc.a.emplace_back(Eigen::Map<const YVector>(mat.data(), mat.size()));
    } else {
      doc.a.push_back(as_vector(ai, ylen, where));
    }
  }
  const json& w = field(j, "l1_weight");
  doc.l1_weight = w.is_number() ? Vector::Constant(n, w.get<double>()) : as_vector(w, n, "l1_weight");
  if ((doc.l1_weight.array() < 0.0).any()) throw ParseError("field 'l1_weight': must be nonnegative");
  if ((doc.c.array() < 0.0).any() || (doc.d.array() < 0.0).any()) {
    throw ParseError("fields 'c' and 'd' must be nonnegative");
  }
  return doc;
}

std::string config_to_json(const SolverConfig& cfg) {
  json j;
  j["tau1"] = cfg.tau1;
  j["tau2"] = cfg.tau2;
  j["L_min"] = cfg.l_min;
  j["L_max"] = cfg.l_max;
  j["eps"] = cfg.eps;
  j["max_outer"] = cfg.max_outer;
  j["max_inner_j"] = cfg.max_inner_j;
  j["divergence_bound"] = cfg.divergence_bound;
  j["exact_l1_path"] = cfg.exact_l1_path;
  j["warm_start"] = cfg.warm_start == WarmStart::Constant ? "constant" : "bb";
  j["constant_lf"] = cfg.constant_lf;
  j["constant_lg"] = cfg.constant_lg;
  j["record_iterates"] = cfg.record_iterates;
  if (cfg.initial_mu) j["initial_mu"] = *cfg.initial_mu;
  const ScheduleSpec& s = cfg.schedule;
  json sj;
  sj["variant"] = to_string(s.variant);
  sj["r"] = s.r;
  sj["n0"] = s.n0;
  sj["nu0"] = s.nu0;
  sj["rbar"] = s.rbar;
  sj["sbar"] = s.sbar;
  sj["K"] = s.ramp_k;
  sj["rule"] = s.rule == ExponentRule::Ramp ? "ramp" : "constant";
  j["schedule"] = std::move(sj);
  return j.dump(1);
}

SolverConfig config_from_json(const std::string& text) {
  const json j = parse_json(text, "config document");
  if (!j.is_object()) throw ParseError("config document: expected a JSON object");
  SolverConfig cfg;
  auto num = [&](const char* name, double& out) {
    if (j.contains(name)) out = as_number(j.at(name), name);
  };
  auto count = [&](const char* name, int& out) {
    if (j.contains(name)) out = static_cast<int>(as_count(j.at(name), name));
  };
  auto flag = [&](const char* name, bool& out) {
    if (!j.contains(name)) return;
    if (!j.at(name).is_boolean()) throw ParseError(std::string("field '") + name + "': expected a boolean");
    out = j.at(name).get<bool>();
  };
  num("tau1", cfg.tau1);
  num("tau2", cfg.tau2);
  num("L_min", cfg.l_min);
  num("L_max", cfg.l_max);
  num("eps", cfg.eps);
  count("max_outer", cfg.max_outer);
  count("max_inner_j", cfg.max_inner_j);
  num("divergence_bound", cfg.divergence_bound);
  flag("exact_l1_path", cfg.exact_l1_path);
  flag("record_iterates", cfg.record_iterates);
  num("constant_lf", cfg.constant_lf);
  num("constant_lg", cfg.constant_lg);
  if (j.contains("initial_mu")) cfg.initial_mu = as_number(j.at("initial_mu"), "initial_mu");
  if (j.contains("warm_start")) {
    const json& w = j.at("warm_start");
    if (!w.is_string()) throw ParseError("field 'warm_start': expected a string");
    const std::string ws = w.get<std::string>();
    if (ws == "bb") cfg.warm_start = WarmStart::BarzilaiBorwein;
    else if (ws == "constant") cfg.warm_start = WarmStart::Constant;
    else throw ParseError("field 'warm_start': expected \"bb\" or \"constant\"");
  }
  if (j.contains("schedule")) {
    const json& sj = j.at("schedule");
    if (!sj.is_object()) throw ParseError("field 'schedule': expected an object");
    ScheduleSpec& s = cfg.schedule;
    if (sj.contains("variant")) {
      if (!sj.at("variant").is_string()) throw ParseError("field 'schedule.variant': expected a string");
      try {
        s.variant = schedule_variant_from_string(sj.at("variant").get<std::string>());
      } catch (const ArgumentError& e) {
        throw ParseError(std::string("field 'schedule.variant': ") + e.what());
      }
    }
    if (sj.contains("r")) s.r = as_number(sj.at("r"), "schedule.r");
    if (sj.contains("n0")) s.n0 = as_count(sj.at("n0"), "schedule.n0");
    if (sj.contains("nu0")) s.nu0 = as_number(sj.at("nu0"), "schedule.nu0");
    if (sj.contains("rbar")) s.rbar = as_number(sj.at("rbar"), "schedule.rbar");
    if (sj.contains("sbar")) s.sbar = as_number(sj.at("sbar"), "schedule.sbar");
    if (sj.contains("K")) s.ramp_k = as_count(sj.at("K"), "schedule.K");
    if (sj.contains("rule")) {
      const std::string rule = sj.at("rule").is_string() ? sj.at("rule").get<std::string>() : "";
      if (rule == "constant") s.rule = ExponentRule::Constant;
      else if (rule == "ramp") s.rule = ExponentRule::Ramp;
      else throw ParseError("field 'schedule.rule': expected \"constant\" or \"ramp\"");
    }
  }
  try {
    cfg.validate();
  } catch (const ArgumentError& e) {
    throw ParseError(std::string("config document: ") + e.what());
  }
  return cfg;
}

std::string report_to_json(const SolveReport& report) {
  json j;
  j["status"] = to_string(report.status);
  j["iterations"] = report.iterations;
  j["objective"] = report.psi;
  j["mu0"] = report.mu0;
  j["wall_time"] = report.wall_time;
  j["inner_trials"] = report.inner_trials;
  j["mu_clamps"] = report.mu_clamps;
  j["message"] = report.message;
  j["x"] = vector_json(report.x);
  json kkt;
  kkt["rho"] = report.final_kkt.rho;
  kkt["complementarity"] = report.final_kkt.complementarity;
  kkt["step"] = report.final_kkt.step;
  kkt["eps_triple"] = {report.final_kkt.eps1(), report.final_kkt.eps2(), report.final_kkt.eps3()};
  kkt["v"] = vector_json(report.final_kkt.v);
  j["final_kkt"] = std::move(kkt);
  j["termination"] = {{"term_step", report.final_metrics.step},
                      {"term_slack", report.final_metrics.slack}};
  return j.dump(1);
}

std::string trace_to_csv(const std::vector<TraceRow>& trace) {
  std::string out = kTraceHeader;
  out += '\n';
  for (const TraceRow& r : trace) {
    out += std::to_string(r.k);
    for (double v : {r.psi, r.g_mu, r.sigma_b, r.mu, r.lambda, r.lf, r.lg}) {
      out += ',';
      out += format_double(v);
    }
    out += ',' + std::to_string(r.i_k) + ',' + std::to_string(r.j_k);
    for (double v : {r.term_step, r.term_slack, r.rho, r.elapsed_s}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::vector<TraceRow> trace_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader) {
    throw ParseError("trace: missing or unexpected header");
  }
  static constexpr const char* kColumns[] = {"k",       "psi",       "g_mu",       "sigma_B", "mu",
                                             "lambda",  "Lf",        "Lg",         "i_k",     "j_k",
                                             "term_step", "term_slack", "rho",      "elapsed_s"};
  std::vector<TraceRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> tok;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      tok.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (tok.size() != 14) {
      throw ParseError("trace line " + std::to_string(line_no) + ": expected 14 columns, got " +
                       std::to_string(tok.size()));
    }
    TraceRow r;
    r.k = parse_field<int>(tok[0], kColumns[0], line_no);
    double* dbl[] = {&r.psi, &r.g_mu, &r.sigma_b, &r.mu, &r.lambda, &r.lf, &r.lg};
    for (int c = 0; c < 7; ++c) *dbl[c] = parse_field<double>(tok[1 + c], kColumns[1 + c], line_no);
    r.i_k = parse_field<int>(tok[8], kColumns[8], line_no);
    r.j_k = parse_field<int>(tok[9], kColumns[9], line_no);
    double* tail[] = {&r.term_step, &r.term_slack, &r.rho, &r.elapsed_s};
    for (int c = 0; c < 4; ++c) *tail[c] = parse_field<double>(tok[10 + c], kColumns[10 + c], line_no);
    rows.push_back(r);
  }
  return rows;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace smba
