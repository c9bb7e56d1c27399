/*
 * Copyright 2026 The elmatch Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "elmatch/edgeworth.hpp"
#include "elmatch/error.hpp"
#include "elmatch/likelihood.hpp"
#include "elmatch/matching.hpp"
#include "elmatch/moments.hpp"
#include "elmatch/normal.hpp"
#include "elmatch/posterior.hpp"
#include "elmatch/prior.hpp"
#include "elmatch/rng.hpp"
#include "elmatch/simulate.hpp"
#include "report.hpp"

namespace elmatch::cli {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// --config handling. The file is merged into argv before CLI11 sees it, and
// only for keys the user did not pass as flags.

struct ConfigEntry {
  std::string key;
  std::string value;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<ConfigEntry> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  std::vector<ConfigEntry> out;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    // A JSON report (or a bare object): use its "config" section.
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::ParseError, "config file '" + path + "': " + e.what());
    }
    const json& cfg = j.contains("config") ? j.at("config") : j;
    if (!cfg.is_object()) {
      throw Error(ErrorKind::ParseError, "config file '" + path + "': expected an object");
    }
    for (const auto& [k, v] : cfg.items()) {
      if (v.is_null()) continue;
      out.push_back({k, v.is_string() ? v.get<std::string>() : v.dump()});
    }
    return out;
  }

  std::istringstream lines(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::ParseError, "config file '" + path + "' line " +
                                             std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    if (key.empty()) {
      throw Error(ErrorKind::ParseError,
                  "config file '" + path + "' line " + std::to_string(lineno) + ": empty key");
    }
    out.push_back({key, trim(std::string_view(t).substr(eq + 1))});
  }
  return out;
}

bool flag_given(const std::vector<std::string>& args, const std::string& name) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == name || a.rfind(name + "=", 0) == 0;
  });
}

bool truthy(const std::string& v) { return v == "true" || v == "1" || v == "yes" || v == "on"; }

/// Removes --config from args and merges the file; flags win over the file.
void apply_config(CLI::App& app, std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw Error(ErrorKind::InvalidArgument, "--config needs a path");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return;

  CLI::App* leaf = &app;
  for (const auto& a : args) {
    if (a.empty() || a[0] == '-') break;
    CLI::App* next = nullptr;
    for (auto* sub : leaf->get_subcommands({})) {
      if (sub->get_name() == a) next = sub;
    }
    if (next == nullptr) break;
    leaf = next;
  }
  if (leaf == &app) throw Error(ErrorKind::InvalidArgument, "--config needs a subcommand");

  std::vector<std::string> extra;
  for (const auto& e : load_config(path)) {
    const std::string flag = "--" + e.key;
    const CLI::Option* opt = leaf->get_option_no_throw(flag);
    if (opt == nullptr) opt = leaf->get_option_no_throw(e.key); // positional
    if (opt == nullptr) {
      throw Error(ErrorKind::InvalidArgument,
                  "config key '" + e.key + "' is not an option of '" + leaf->get_name() + "'");
    }
    if (!opt->nonpositional()) {
      if (opt->count() == 0) extra.push_back(e.value);
      continue;
    }
    if (flag_given(args, flag)) continue;
    if (opt->get_expected_min() == 0) {
      if (truthy(e.value)) extra.push_back(flag);
    } else {
      extra.push_back(flag);
      extra.push_back(e.value);
    }
  }
  args.insert(args.end(), extra.begin(), extra.end());
}

// ---------------------------------------------------------------------------
// Shared option sets.

struct Common {
  OutputOptions out;
  std::string config_path; // consumed by apply_config; registered for --help
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--csv", c.out.csv_path, "Write CSV here ('-' for stdout)");
  sub->add_option("--json", c.out.json_path, "Write JSON here ('-' for stdout)");
  sub->add_flag("--full-precision", c.out.full_precision, "Print 17 significant digits");
  sub->add_option("--config", c.config_path,
                  "key = value file or a saved JSON report; flags take precedence");
}

const std::map<std::string, QuantileOrder> kQuantileOrders{{"1", QuantileOrder::First},
                                                           {"2", QuantileOrder::Second}};
const std::map<std::string, MatchOrder> kMatchOrders{{"half", MatchOrder::Half},
                                                     {"one", MatchOrder::One}};
const std::map<std::string, PriorClass> kPriorClasses{{"simple", PriorClass::Simple},
                                                      {"elaborate", PriorClass::Elaborate}};

std::string dist_name(Distribution d) { return std::string(distribution(d).name); }

PopulationMoments parse_moments(const std::string& text) {
  std::vector<double> v;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string tok =
        trim(std::string_view(text).substr(start, comma == std::string::npos ? std::string::npos
                                                                            : comma - start));
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError("--moments expects theta,sigma2,beta3,beta4; bad value '" + tok + "'",
                       start);
    }
    v.push_back(x);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (v.size() != 4) {
    throw Error(ErrorKind::InvalidArgument, "--moments expects exactly four numbers");
  }
  PopulationMoments m{v[0], v[1], v[2], v[3]};
  if (!(m.sigma2 > 0.0)) throw Error(ErrorKind::OutOfRange, "--moments: sigma2 must be > 0");
  if (m.beta4 < 1.0 + m.beta3 * m.beta3) {
    throw Error(ErrorKind::OutOfRange, "--moments: beta4 must be at least 1 + beta3^2");
  }
  return m;
}

// ---------------------------------------------------------------------------
// families

void families_list(std::ostream& out, const Common& c) {
  Report r("families list", c.out.full_precision);
  std::vector<std::vector<std::string>> rows;
  json jrows = json::array();
  for (const auto& [name, desc] : family_presets()) {
    rows.push_back({name, desc});
    jrows.push_back({{"spec", name}, {"description", desc}});
  }
  r.table({"spec", "description"}, std::move(rows), std::move(jrows));
  r.emit(c.out, out);
}

void families_show(const std::string& spec, std::ostream& out, const Common& c) {
  const auto f = parse_family_spec(spec);
  Report r("families show", c.out.full_precision);
  r.config("spec", spec);
  r.row("name", f.name);
  const std::pair<const char*, const Poly2*> polys[] = {{"a1", &f.a1}, {"a3", &f.a3},
                                                        {"b0", &f.b0}, {"b2", &f.b2},
                                                        {"b4", &f.b4}, {"b6", &f.b6}};
  for (const auto& [key, p] : polys) r.row(key, p->to_string());
  r.result()["family"] = f.to_json();
  r.emit(c.out, out);
}

// ---------------------------------------------------------------------------
// match

const char* class_label(const std::string& cond, PriorClass cls, MatchOrder order) {
  if (cond == "a3") return "a3 condition";
  if (order == MatchOrder::One && cls == PriorClass::Elaborate) {
    return cond == "b4" ? "b4 condition (elaborate class)" : "b6 condition (elaborate class)";
  }
  if (cond == "b2") return "b2 condition (simple class)";
  if (cond == "b4") return "b4 condition (simple class)";
  return "b6 condition (simple class)";
}

std::string prior_spec_text(const Poly2& chi, const Poly2* lambda) {
  if (lambda == nullptr) return "simple:chi=" + chi.to_string();
  return "elaborate:chi=" + chi.to_string() + ",lambda=" + lambda->to_string();
}

int match_check(const std::string& family_spec, const std::string& order_s,
                const std::string& cls_s, std::ostream& out, const Common& c) {
  const auto f = parse_family_spec(family_spec);
  const auto order = kMatchOrders.at(order_s);
  const auto cls = kPriorClasses.at(cls_s);
  const auto rep = check_matching(f, order, cls);

  Report r("match check", c.out.full_precision);
  r.config("family", family_spec);
  r.config("order", order_s);
  r.config("prior-class", cls_s);
  r.row("family_name", f.name);
  r.row("feasible", rep.feasible, rep.feasible ? "yes" : "no");

  std::vector<std::vector<std::string>> rows;
  json jrows = json::array();
  for (const auto& cond : rep.conditions) {
    rows.push_back({cond.name, cond.pass ? "pass" : "FAIL", cond.description,
                    cond.residual.to_string()});
    jrows.push_back({{"name", cond.name},
                     {"pass", cond.pass},
                     {"required", cond.description},
                     {"residual", cond.residual.to_json()},
                     {"residual_text", cond.residual.to_string()}});
  }
  if (rep.derived_chi) {
    r.row("derived_chi", rep.derived_chi->to_json(), rep.derived_chi->to_string());
  }
  if (rep.derived_lambda) {
    r.row("derived_lambda", rep.derived_lambda->to_json(), rep.derived_lambda->to_string());
  }
  if (rep.feasible && rep.derived_chi) {
    const Poly2* lam = rep.derived_lambda ? &*rep.derived_lambda : nullptr;
    if (order == MatchOrder::One && cls == PriorClass::Simple) lam = nullptr;
    r.row("prior", prior_spec_text(*rep.derived_chi, lam));
  }
  r.table({"condition", "status", "required", "residual"}, std::move(rows), std::move(jrows));
  if (const auto* bad = rep.first_failure()) {
    r.note("fails " + std::string(class_label(bad->name, cls, order)) +
           "; residual: " + bad->residual.to_string());
  }
  r.emit(c.out, out);
  return rep.feasible ? kOk : kInfeasible;
}

int match_derive(const std::string& family_spec, const std::string& cls_s, std::ostream& out,
                 const Common& c) {
  const auto f = parse_family_spec(family_spec);
  const auto cls = kPriorClasses.at(cls_s);
  Report r("match derive", c.out.full_precision);
  r.config("family", family_spec);
  r.config("prior-class", cls_s);
  r.row("family_name", f.name);

  const auto half = check_order_half(f, cls);
  if (!half.feasible) {
    r.row("margin", "none");
    r.note("no matching prior: fails a3 condition; residual: " +
           half.conditions.front().residual.to_string());
    r.emit(c.out, out);
    return kInfeasible;
  }
  std::string margin = "o(n^-1/2)";
  std::string spec;
  std::optional<Poly2> lambda;
  const MatchingReport one = cls == PriorClass::Simple ? check_order_one_simple(f)
                                                       : check_order_one_elaborate(f);
  if (one.feasible) {
    margin = "o(n^-1)";
    if (cls == PriorClass::Elaborate) lambda = one.derived_lambda;
  }
  const Poly2 chi = *half.derived_chi;
  spec = prior_spec_text(chi, lambda ? &*lambda : nullptr);
  r.row("margin", margin);
  r.row("chi", chi.to_json(), chi.to_string());
  if (lambda) r.row("lambda", lambda->to_json(), lambda->to_string());
  r.row("prior", spec);
  PriorSpec prior = lambda ? elaborate_prior(chi, *lambda, "derived")
                           : simple_prior(chi, "derived");
  r.result()["prior"] = prior.to_json();
  if (chi.is_zero() && (!lambda || lambda->is_zero())) r.note("the derived prior is flat");
  if (!one.feasible) {
    if (const auto* bad = one.first_failure()) {
      r.note("o(n^-1) matching fails " +
             std::string(class_label(bad->name, cls, MatchOrder::One)) +
             "; residual: " + bad->residual.to_string());
    }
  }
  r.emit(c.out, out);
  return kOk;
}

// ---------------------------------------------------------------------------
// quantile

struct QuantileArgs {
  std::string family = "el";
  std::string prior = "eq29";
  double alpha = 0.05;
  std::string order = "1";
  std::string data;
};

int cmd_quantile(const QuantileArgs& a, std::ostream& out, std::ostream& err,
                 const Common& c) {
  const auto family = parse_family_spec(a.family);
  const auto prior = parse_prior_spec(a.prior, &family);
  const auto data = read_data_file(a.data);
  const auto sum = summarize(data);
  const auto q = quantile(family, prior, sum, a.alpha, kQuantileOrders.at(a.order));

  Report r("quantile", c.out.full_precision);
  r.config("family", a.family);
  r.config("prior", a.prior);
  r.config("alpha", a.alpha);
  r.config("order", std::stoi(a.order));
  r.config("data", a.data);
  r.row("n", static_cast<double>(sum.n));
  r.row("mean", sum.mean);
  r.row("m2", sum.m2);
  r.row("g3", sum.g3);
  r.row("g4", sum.g4);
  r.row("alpha", q.alpha);
  r.row("z", q.z);
  r.row("u1", q.u1);
  r.row("u2", q.u2);
  r.row("theta1", q.theta1);
  r.row("theta2", q.theta2);
  r.row("quantile", q.primary());
  r.result()["prior"] = prior.to_json();
  if (const auto* e = std::get_if<ElaboratePrior>(&prior.form)) {
    const double lam = e->lambda.eval(sum.g3, sum.g4);
    if (lam > 0.0) {
      const std::string msg = "notice: lambda(g3, g4) = " + r.num(lam) +
                              " > 0, so the prior grows like exp(c theta^2); "
                              "posterior propriety is assumed, not checked";
      r.note(msg);
      err << msg << "\n";
    }
  }
  r.emit(c.out, out);
  return kOk;
}

// ---------------------------------------------------------------------------
// coverage predict / simulate

struct PredictArgs {
  std::string family = "el";
  std::string prior = "eq29";
  std::string dist;
  std::string moments;
  std::size_t n = 50;
  double alpha = 0.05;
  std::string order = "one";
};

int coverage_predict(const PredictArgs& a, std::ostream& out, const Common& c) {
  const auto family = parse_family_spec(a.family);
  const auto prior = parse_prior_spec(a.prior, &family);
  PopulationMoments pop;
  std::string pop_label;
  if (!a.dist.empty()) {
    const auto& d = distribution_by_name(a.dist);
    pop = d.moments;
    pop_label = std::string(d.name);
  } else {
    pop = parse_moments(a.moments);
  }
  const auto rep = predict_coverage(family, prior, pop, a.n, a.alpha, kMatchOrders.at(a.order));

  Report r("coverage predict", c.out.full_precision);
  r.config("family", a.family);
  r.config("prior", a.prior);
  if (!pop_label.empty()) {
    r.config("dist", pop_label);
  } else {
    r.config("moments", a.moments);
  }
  r.config("n", a.n);
  r.config("alpha", a.alpha);
  r.config("order", a.order);
  r.row("theta", pop.theta);
  r.row("sigma2", pop.sigma2);
  r.row("beta3", pop.beta3);
  r.row("beta4", pop.beta4);
  r.row("z", rep.z);
  r.row("r10", rep.terms.r10);
  r.row("r20", rep.terms.r20);
  r.row("r30", rep.terms.r30);
  r.row("r40", rep.terms.r40);
  r.row("r60", rep.terms.r60);
  r.row("u10", rep.terms.u10);
  r.row("u20", rep.terms.u20);
  r.row("k1", rep.k.k1);
  r.row("k2", rep.k.k2);
  r.row("k3", rep.k.k3);
  r.row("k4", rep.k.k4);
  r.row("delta1", rep.delta1);
  r.row("delta2", rep.delta2);
  r.row("raw_coverage", rep.raw_coverage);
  r.row("predicted_coverage", rep.predicted_coverage);
  r.row("clamped", rep.clamped, rep.clamped ? "yes" : "no");
  if (rep.clamped) r.note("notice: the expansion left [0, 1] and was clamped");
  r.emit(c.out, out);
  return kOk;
}

struct SimulateArgs {
  std::string dist = "normal";
  std::size_t n = 8;
  double alpha = 0.05;
  std::size_t reps = 10000;
  std::uint64_t seed = 42;
  std::string family = "schennach";
  std::string prior = "eq29";
  std::string order = "1";
  unsigned workers = 1;
};

int coverage_simulate(const SimulateArgs& a, std::ostream& out, const Common& c) {
  SimConfig cfg;
  const auto& d = distribution_by_name(a.dist);
  cfg.dist = d.kind;
  cfg.n = a.n;
  cfg.alpha = a.alpha;
  cfg.reps = a.reps;
  cfg.master_seed = a.seed;
  cfg.family = parse_family_spec(a.family);
  cfg.prior = parse_prior_spec(a.prior, &cfg.family);
  cfg.order = kQuantileOrders.at(a.order);
  cfg.workers = a.workers;
  const auto rep = run_coverage(cfg);

  Report r("coverage simulate", c.out.full_precision);
  r.config("dist", std::string(d.name));
  r.config("n", a.n);
  r.config("alpha", a.alpha);
  r.config("reps", a.reps);
  r.config("seed", a.seed);
  r.config("family", a.family);
  r.config("prior", a.prior);
  r.config("order", std::stoi(a.order));
  r.config("workers", a.workers);
  r.row("generator", rep.generator);
  r.row("hits", static_cast<double>(rep.hits));
  r.row("reps_used", static_cast<double>(rep.reps_used));
  r.row("degenerate_skipped", static_cast<double>(rep.degenerate_skipped));
  r.row("coverage", rep.coverage);
  r.row("mc_stderr", rep.mc_stderr);
  r.emit(c.out, out);
  return kOk;
}

// ---------------------------------------------------------------------------
// table2

struct TableArgs {
  std::uint64_t seed = 42;
  std::size_t reps = 10000;
  unsigned workers = 1;
  std::string family = "schennach";
};

int cmd_table2(const TableArgs& a, std::ostream& out, const Common& c) {
  const auto family = parse_family_spec(a.family);
  const auto cells = reproduce_coverage_table(a.seed, a.reps, a.workers, family);

  Report r("table2", c.out.full_precision);
  r.config("seed", a.seed);
  r.config("reps", a.reps);
  r.config("workers", a.workers);
  r.config("family", a.family);
  r.row("generator", generator_id());

  // Layout of the reference table: one row per (distribution, level), one
  // column per sample size, for ours, the reference and the difference.
  std::vector<std::string> header{"dist", "level"};
  for (const char* block : {"coverage", "reference", "abs_diff"}) {
    for (auto n : kReferenceSizes) header.push_back(std::string(block) + "_n" + std::to_string(n));
  }
  std::vector<std::vector<std::string>> rows;
  json jrows = json::array();
  double worst = 0.0;
  std::size_t within = 0;
  const std::size_t k = kReferenceSizes.size();
  for (std::size_t i = 0; i + k <= cells.size(); i += k) {
    std::vector<std::string> row{dist_name(cells[i].reference.dist),
                                 format_number(cells[i].reference.level, false)};
    for (std::size_t j = 0; j < k; ++j) row.push_back(r.num(cells[i + j].report.coverage));
    for (std::size_t j = 0; j < k; ++j) row.push_back(r.num(cells[i + j].reference.coverage));
    for (std::size_t j = 0; j < k; ++j) row.push_back(r.num(cells[i + j].abs_diff));
    rows.push_back(std::move(row));
  }
  for (const auto& cell : cells) {
    worst = std::max(worst, cell.abs_diff);
    within += cell.abs_diff <= 0.015 ? 1 : 0;
    jrows.push_back({{"dist", dist_name(cell.reference.dist)},
                     {"level", cell.reference.level},
                     {"n", cell.reference.n},
                     {"reference", cell.reference.coverage},
                     {"coverage", cell.report.coverage},
                     {"mc_stderr", cell.report.mc_stderr},
                     {"hits", cell.report.hits},
                     {"reps_used", cell.report.reps_used},
                     {"degenerate_skipped", cell.report.degenerate_skipped},
                     {"abs_diff", cell.abs_diff}});
  }
  r.row("cells", static_cast<double>(cells.size()));
  r.row("max_abs_diff", worst);
  r.row("within_0.015", static_cast<double>(within));
  r.table(std::move(header), std::move(rows), std::move(jrows));
  r.emit(c.out, out);
  return kOk;
}

// ---------------------------------------------------------------------------
// cumulants validate

struct CumulantArgs {
  std::string dist = "normal";
  std::size_t n = 400;
  std::size_t reps = 1000000;
  std::uint64_t seed = 42;
  unsigned workers = 1;
  std::string family = "el";
  std::string prior = "eq29";
  double alpha = 0.05;
};

int cumulants_validate(const CumulantArgs& a, std::ostream& out, const Common& c) {
  CumulantConfig cfg;
  const auto& d = distribution_by_name(a.dist);
  cfg.dist = d.kind;
  cfg.n = a.n;
  cfg.reps = a.reps;
  cfg.master_seed = a.seed;
  cfg.workers = a.workers;
  cfg.family = parse_family_spec(a.family);
  cfg.prior = parse_prior_spec(a.prior, &cfg.family);
  cfg.alpha = a.alpha;
  const auto rep = validate_cumulants(cfg);

  Report r("cumulants validate", c.out.full_precision);
  r.config("dist", std::string(d.name));
  r.config("n", a.n);
  r.config("reps", a.reps);
  r.config("seed", a.seed);
  r.config("workers", a.workers);
  r.config("family", a.family);
  r.config("prior", a.prior);
  r.config("alpha", a.alpha);
  r.row("generator", rep.generator);
  r.row("z", rep.z);
  r.row("degenerate_skipped", static_cast<double>(rep.degenerate_skipped));
  std::vector<std::vector<std::string>> rows;
  json jrows = json::array();
  for (const auto& k : rep.k) {
    rows.push_back({k.name, r.num(k.estimate), r.num(k.std_error), r.num(k.predicted),
                    format_number(k.z_score(), false)});
    jrows.push_back({{"name", k.name},
                     {"estimate", k.estimate},
                     {"std_error", k.std_error},
                     {"predicted", k.predicted},
                     {"z_score", k.z_score()}});
  }
  r.table({"cumulant", "estimate", "std_error", "predicted", "z_score"}, std::move(rows),
          std::move(jrows));
  r.emit(c.out, out);
  return kOk;
}

} // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probability-matching priors for empirical-type likelihoods", "elmatch"};
  app.require_subcommand(1);
  Common common;

  std::function<int()> action;

  // families
  auto* fam = app.add_subcommand("families", "Inspect likelihood families");
  fam->require_subcommand(1);
  auto* fam_list = fam->add_subcommand("list", "List the family presets");
  add_common(fam_list, common);
  fam_list->callback([&] { action = [&] { families_list(out, common); return int{kOk}; }; });
  std::string show_spec;
  auto* fam_show = fam->add_subcommand("show", "Print the coefficient polynomials of a family");
  fam_show->add_option("spec", show_spec, "Family spec")->required();
  add_common(fam_show, common);
  fam_show->callback(
      [&] { action = [&] { families_show(show_spec, out, common); return int{kOk}; }; });

  // match
  auto* match = app.add_subcommand("match", "Check matching conditions and derive priors");
  match->require_subcommand(1);
  std::string m_family;
  std::string m_order = "one";
  std::string m_class = "simple";
  auto* check = match->add_subcommand("check", "Check the matching conditions for a family");
  check->add_option("--family", m_family, "Family spec")->required();
  check->add_option("--order", m_order, "half or one")
      ->check(CLI::IsMember({"half", "one"}))
      ->capture_default_str();
  check->add_option("--prior-class", m_class, "simple or elaborate")
      ->check(CLI::IsMember({"simple", "elaborate"}))
      ->capture_default_str();
  add_common(check, common);
  check->callback(
      [&] { action = [&] { return match_check(m_family, m_order, m_class, out, common); }; });
  auto* derive = match->add_subcommand("derive", "Derive a matching prior for a family");
  derive->add_option("--family", m_family, "Family spec")->required();
  derive->add_option("--prior-class", m_class, "simple or elaborate")
      ->check(CLI::IsMember({"simple", "elaborate"}))
      ->capture_default_str();
  add_common(derive, common);
  derive->callback([&] { action = [&] { return match_derive(m_family, m_class, out, common); }; });

  // quantile
  QuantileArgs qa;
  auto* quant = app.add_subcommand("quantile", "Approximate posterior quantile from data");
  quant->add_option("--family", qa.family, "Family spec")->capture_default_str();
  quant->add_option("--prior", qa.prior, "Prior spec")->capture_default_str();
  quant->add_option("--alpha", qa.alpha, "Upper tail probability")->capture_default_str();
  quant->add_option("--order", qa.order, "1 or 2")
      ->check(CLI::IsMember({"1", "2"}))
      ->capture_default_str();
  quant->add_option("--data", qa.data, "Data file, one value per line")->required();
  add_common(quant, common);
  quant->callback([&] { action = [&] { return cmd_quantile(qa, out, err, common); }; });

  // coverage
  auto* cov = app.add_subcommand("coverage", "Coverage prediction and simulation");
  cov->require_subcommand(1);
  PredictArgs pa;
  auto* pred = cov->add_subcommand("predict", "Edgeworth prediction of frequentist coverage");
  pred->add_option("--family", pa.family, "Family spec")->capture_default_str();
  pred->add_option("--prior", pa.prior, "Prior spec (flat or simple class)")
      ->capture_default_str();
  auto* dist_opt = pred->add_option("--dist", pa.dist, "Built-in distribution");
  auto* mom_opt =
      pred->add_option("--moments", pa.moments, "theta,sigma2,beta3,beta4 of the population");
  dist_opt->excludes(mom_opt);
  mom_opt->excludes(dist_opt);
  pred->add_option("--n", pa.n, "Sample size")->capture_default_str();
  pred->add_option("--alpha", pa.alpha, "Upper tail probability")->capture_default_str();
  pred->add_option("--order", pa.order, "half or one")
      ->check(CLI::IsMember({"half", "one"}))
      ->capture_default_str();
  add_common(pred, common);
  pred->callback([&] {
    if (pa.dist.empty() && pa.moments.empty()) {
      throw CLI::RequiredError("--dist or --moments");
    }
    action = [&] { return coverage_predict(pa, out, common); };
  });

  SimulateArgs sa;
  auto* sim = cov->add_subcommand("simulate", "Monte Carlo frequentist coverage");
  sim->add_option("--dist", sa.dist, "Built-in distribution")->capture_default_str();
  sim->add_option("--n", sa.n, "Sample size")->capture_default_str();
  sim->add_option("--alpha", sa.alpha, "Upper tail probability")->capture_default_str();
  sim->add_option("--reps", sa.reps, "Replications")->capture_default_str();
  sim->add_option("--seed", sa.seed, "Master seed")->capture_default_str();
  sim->add_option("--family", sa.family, "Family spec")->capture_default_str();
  sim->add_option("--prior", sa.prior, "Prior spec")->capture_default_str();
  sim->add_option("--order", sa.order, "1 or 2")
      ->check(CLI::IsMember({"1", "2"}))
      ->capture_default_str();
  sim->add_option("--workers", sa.workers, "Worker threads (0 = all cores)")
      ->capture_default_str();
  add_common(sim, common);
  sim->callback([&] { action = [&] { return coverage_simulate(sa, out, common); }; });

  // table2
  TableArgs ta;
  auto* tab = app.add_subcommand("table2", "Recompute the reference coverage table");
  tab->add_option("--seed", ta.seed, "Master seed")->capture_default_str();
  tab->add_option("--reps", ta.reps, "Replications per cell")->capture_default_str();
  tab->add_option("--workers", ta.workers, "Worker threads (0 = all cores)")
      ->capture_default_str();
  tab->add_option("--family", ta.family, "A geef-subclass family spec")->capture_default_str();
  add_common(tab, common);
  tab->callback([&] { action = [&] { return cmd_table2(ta, out, common); }; });

  // cumulants
  auto* cum = app.add_subcommand("cumulants", "Monte Carlo check of the approximate cumulants");
  cum->require_subcommand(1);
  CumulantArgs ca;
  auto* val = cum->add_subcommand("validate", "Estimate pivot cumulants by simulation");
  val->add_option("--dist", ca.dist, "Built-in distribution")->capture_default_str();
  val->add_option("--n", ca.n, "Sample size (>= 20)")->capture_default_str();
  val->add_option("--reps", ca.reps, "Replications")->capture_default_str();
  val->add_option("--seed", ca.seed, "Master seed")->capture_default_str();
  val->add_option("--workers", ca.workers, "Worker threads (0 = all cores)")
      ->capture_default_str();
  val->add_option("--family", ca.family, "Family spec")->capture_default_str();
  val->add_option("--prior", ca.prior, "Prior spec (flat or simple class)")
      ->capture_default_str();
  val->add_option("--alpha", ca.alpha, "Sets z in the W-correction")->capture_default_str();
  add_common(val, common);
  val->callback([&] { action = [&] { return cumulants_validate(ca, out, common); }; });

  try {
    std::vector<std::string> args = argv;
    apply_config(app, args);
    // CLI11 consumes a reversed vector.
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }

  try {
    return action ? action() : kValidation;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

} // namespace elmatch::cli
