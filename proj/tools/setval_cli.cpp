// setval: command-line front end for the map checkers, fixed-point and
// equilibrium searches, and the golden suite.
//
// Exit status: 0 pass / found, 1 property fails, 2 input error, 3 nothing
// found (or nothing verifiable) at this resolution.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "setval/builtin.hpp"
#include "setval/checks.hpp"
#include "setval/economy.hpp"
#include "setval/fixedpoint.hpp"
#include "setval/radner.hpp"
#include "setval/reproduce.hpp"
#include "setval/serialize.hpp"

using namespace setval;
using io::json;

namespace {

enum Exit { kPass = 0, kFail = 1, kInput = 2, kNone = 3 };

struct RunConfig {
  std::string input;
  std::string property = "w-usc";
  std::string theorem = "4.1";
  std::optional<double> step;
  std::optional<double> delta;
  double tol = 1e-9;
  std::vector<double> eps_chain;
  std::string out;
  std::string format = "text";
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Output goes to a string first and is written once at the end.
class Sink {
 public:
  explicit Sink(const RunConfig& c) : records_(c.format == "records"), path_(c.out) {}
  bool records() const { return records_; }
  std::ostream& text() { return buf_; }
  void record(const json& j) { buf_ << j.dump() << '\n'; }
  void flush() {
    if (path_.empty()) {
      std::cout << buf_.str();
      return;
    }
    std::ofstream f(path_);
    if (!f) throw InputError("cannot write " + path_);
    f << buf_.str();
  }

 private:
  bool records_;
  std::string path_;
  std::ostringstream buf_;
};

double step_or(const RunConfig& c, double fallback) { return c.step.value_or(fallback); }
double delta_or(const RunConfig& c, double step) { return c.delta.value_or(step); }

std::vector<double> chain_or(const RunConfig& c, std::vector<double> fallback) {
  auto chain = c.eps_chain.empty() ? std::move(fallback) : c.eps_chain;
  try {
    validate_eps_chain(chain);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("--eps-chain: ") + e.what());
  }
  return chain;
}

const std::vector<double> kDefaultChain{0.5, 0.25, 0.125, 0.0625};
constexpr double kMapStep = 1.0 / 64;
constexpr double kEconomyStep = 1.0 / 8;

void print_parameters(std::ostream& os,
                      const std::vector<std::pair<std::string, std::string>>& params) {
  for (const auto& [k, v] : params) os << "  " << k << ": " << v << '\n';
}

void print_report(std::ostream& os, const CheckReport& r) {
  os << r.property << ": " << to_string(r.status) << '\n';
  print_parameters(os, r.parameters);
  std::size_t width = 8;
  for (const auto& v : r.verdicts) width = std::max(width, v.name.size());
  for (const auto& v : r.verdicts) {
    os << "  " << std::left << std::setw(static_cast<int>(width) + 2) << v.name << std::setw(12)
       << (to_string(v.status) + (v.informational ? "*" : "")) << v.detail << '\n';
    if (v.status != Status::fail) continue;
    for (const auto& w : v.witnesses) {
      os << "      witness " << format_point(w.point);
      if (!w.neighbor.empty()) os << " -> " << format_point(w.neighbor);
      os << "  excess " << format_number(w.excess);
      if (!w.category.empty()) os << "  (" << w.category << ")";
      os << '\n';
    }
  }
  for (const auto& n : r.notes) os << "  note: " << n << '\n';
  if (std::any_of(r.verdicts.begin(), r.verdicts.end(),
                  [](const Verdict& v) { return v.informational; })) {
    os << "  * informational, not part of the verdict\n";
  }
}

void emit(Sink& sink, const CheckReport& r) {
  if (sink.records()) {
    sink.record(io::to_json(r));
  } else {
    print_report(sink.text(), r);
  }
}

int exit_for(Status s) {
  switch (s) {
    case Status::pass:
      return kPass;
    case Status::fail:
      return kFail;
    case Status::unverified:
      return kNone;
  }
  return kFail;
}

io::json load(const RunConfig& c) { return io::read_document(c.input); }

int cmd_check_map(const RunConfig& c, Sink& sink) {
  json doc = load(c);
  const double step = step_or(c, kMapStep);
  const double delta = delta_or(c, step);
  if (c.property == "dual") {
    io::PairDocument pr = io::pair_from_json(doc);
    Grid grid = Grid::covering(pr.t1.domain(), step);
    CheckReport r = check_dual_w_usc(pr.t1, pr.t2, pr.target, chain_or(c, kDefaultChain), grid,
                                     delta, c.tol);
    emit(sink, r);
    return exit_for(r.status);
  }
  io::MapDocument m = io::map_document_from_json(doc);
  Grid grid = Grid::covering(m.map.domain(), step);
  if (c.property == "usc") {
    CheckReport r = check_usc(m.map, grid, delta, c.tol);
    emit(sink, r);
    return exit_for(r.status);
  }
  if (c.property == "w-usc" || c.property == "almost-w-usc") {
    if (!m.target) throw InputError("property " + c.property + " needs a \"target\" set D");
    CheckReport r = check_w_usc(m.map, *m.target, chain_or(c, kDefaultChain), grid, delta, c.tol);
    emit(sink, r);
    Status s = r.status_of(c.property);
    if (s == Status::pass) s = r.status_of("nonempty");
    return exit_for(s);
  }
  if (c.property == "e-uscs") {
    BoxSet k = m.region.value_or(m.map.domain());
    double eps = chain_or(c, kDefaultChain).front();
    std::optional<PiecewiseMap> cand = m.candidate;
    if (!cand) {
      if (auto box = constant_selection(m.map, k, eps, m.self_offset, grid)) {
        cand = constant_map(m.map.domain(), BoxSet::of(*box));
      }
    }
    if (!cand) {
      CheckReport r;
      r.property = "e-uscs";
      Verdict v;
      v.name = "selection";
      v.status = Status::unverified;
      v.detail = "no candidate in the document and the constant-selection heuristic found none";
      r.add(v);
      r.finish();
      emit(sink, r);
      return kNone;
    }
    CheckReport r = check_e_uscs(m.map, k, *cand, eps, m.self_offset, grid, delta, c.tol);
    emit(sink, r);
    return exit_for(r.status);
  }
  throw InputError("unknown property \"" + c.property + "\"");
}

void print_chain(std::ostream& os, const ChainResult& r) {
  for (const auto& q : r.sets) {
    os << "  Q_V at eps " << format_number(q.eps) << ": " << q.points.size() << " point(s)\n";
  }
  os << "  nested: " << (r.nested ? "yes" : "no") << '\n';
  for (const auto& d : r.diagnostics) os << "  " << d << '\n';
  for (const auto& p : r.points) {
    os << "  " << format_point(p.x) << (p.certified ? "  certified" : "  not certified") << '\n';
  }
}

int cmd_find_fixed_points(const RunConfig& c, Sink& sink) {
  json doc = load(c);
  std::string type = io::document_type(doc);
  std::optional<ProductMap> s;
  double step = 0;
  if (type == "map") {
    io::MapDocument m = io::map_document_from_json(doc);
    if (!m.target) throw InputError("a fixed-point search needs a \"target\" set D");
    s.emplace(std::vector<PiecewiseMap>{m.map}, std::vector<BoxSet>{*m.target});
    step = step_or(c, kMapStep);
  } else if (type == "economy") {
    AbstractEconomy e = io::economy_from_json(doc);
    try {
      s.emplace(selection_product(e));
    } catch (const std::exception& ex) {
      throw InputError(std::string("cannot build the selection product: ") + ex.what());
    }
    step = step_or(c, kEconomyStep);
  } else {
    throw InputError("find-fixed-points expects a map or economy document");
  }
  auto chain = chain_or(c, kDefaultChain);
  if (chain.size() < 2) throw InputError("--eps-chain needs at least two values");
  Grid grid = Grid::covering(s->target_product(), step);
  ChainResult r = intersect_qv_chain(*s, chain, grid);
  if (sink.records()) {
    json j = io::to_json(r);
    j["grid"] = grid.describe();
    j["eps"] = chain;
    sink.record(j);
  } else {
    sink.text() << "fixed points: " << r.points.size() << " on " << grid.describe() << ", eps "
                << format_list(chain) << '\n';
    print_chain(sink.text(), r);
  }
  return r.points.empty() ? kNone : kPass;
}

int find_abstract(const AbstractEconomy& e, const RunConfig& c, Sink& sink) {
  Grid grid = Grid::covering(e.target_product(), step_or(c, kEconomyStep));
  auto eqs = search_equilibria(e, grid);
  if (sink.records()) {
    for (const auto& q : eqs) {
      json j = io::to_json(q);
      j["grid"] = grid.describe();
      sink.record(j);
    }
  } else {
    sink.text() << "equilibria: " << eqs.size() << " on " << grid.describe() << '\n';
    for (const auto& q : eqs) sink.text() << "  " << format_point(q.x) << '\n';
  }
  return eqs.empty() ? kNone : kPass;
}

int find_radner(const io::InfoEconomyDocument& d, const RunConfig& c, Sink& sink) {
  const double step = step_or(c, kEconomyStep);
  const double pstep = d.price_step.value_or(step);
  AssociatedEconomy a = to_abstract_economy(d.economy, PriceSimplex(d.economy.bundle_dim(), pstep));
  RadnerSearch r = search_radner_equilibria(a, step);
  if (sink.records()) {
    for (const auto& q : r.equilibria) {
      json j = io::to_json(q);
      j["market_clearing"] = io::to_json(verify_market_clearing(a, q, c.tol))["clauses"];
      sink.record(j);
    }
  } else {
    sink.text() << "equilibria: " << r.equilibria.size() << " (allocation step "
                << format_number(step) << ", price step " << format_number(pstep) << ")\n";
    for (const auto& d : r.diagnostics) sink.text() << "  " << d << '\n';
    for (const auto& q : r.equilibria) {
      MarketClearing m = verify_market_clearing(a, q, c.tol);
      sink.text() << "  x = " << format_point(q.x) << "  p = " << format_point(q.p)
                  << "  clearing " << (m.holds("(1)") ? "yes" : "NO") << '\n';
    }
  }
  return r.equilibria.empty() ? kNone : kPass;
}

int cmd_find_equilibria(const RunConfig& c, Sink& sink) {
  json doc = load(c);
  std::string type = io::document_type(doc);
  if (type == "economy") return find_abstract(io::economy_from_json(doc), c, sink);
  if (type == "info-economy") return find_radner(io::info_economy_from_json(doc), c, sink);
  throw InputError("find-equilibria expects an economy or info-economy document");
}

int cmd_check_hypotheses(const RunConfig& c, Sink& sink) {
  AbstractEconomy e = io::economy_from_json(load(c));
  const double step = step_or(c, kEconomyStep);
  Grid grid = Grid::covering(e.space(), step);
  auto chain = chain_or(c, kDefaultChain);
  const double delta = delta_or(c, step);
  CheckReport r;
  if (c.theorem == "4.1") {
    r = check_theorem_4_1_hypotheses(e, chain, grid, delta, c.tol);
  } else if (c.theorem == "4.2") {
    r = check_theorem_4_2_hypotheses(e, chain, grid, delta, c.tol);
  } else if (c.theorem == "4.3") {
    r = check_theorem_4_3_hypotheses(e, chain, {}, grid, delta, c.tol);
  } else {
    throw InputError("unknown theorem \"" + c.theorem + "\" (expected 4.1, 4.2 or 4.3)");
  }
  emit(sink, r);
  return exit_for(r.status);
}

int cmd_build_radner(const RunConfig& c, Sink& sink) {
  io::InfoEconomyDocument d = io::info_economy_from_json(load(c));
  const InfoEconomy& e = d.economy;
  const double step = step_or(c, kEconomyStep);
  const double pstep = d.price_step.value_or(step);
  AssociatedEconomy a = to_abstract_economy(e, PriceSimplex(e.bundle_dim(), pstep));
  InclusionSweep sw = sweep_inclusion(a, step);
  if (sink.records()) {
    json j{{"record", "associated-economy"},
           {"agents", a.agents()},
           {"price_player", a.price_player() + 1},
           {"bundle_dim", e.bundle_dim()},
           {"truncation", e.truncation()},
           {"prices", a.simplex().points().size()},
           {"allocation_step", step},
           {"price_step", pstep},
           {"inclusion_samples", sw.samples},
           {"inclusion_violations", sw.violations}};
    sink.record(j);
  } else {
    auto& os = sink.text();
    os << "associated economy: " << a.agents() << " agents (agent " << a.price_player() + 1
       << " sets prices)\n"
       << "  bundle dimension " << e.bundle_dim() << " (present good, then " << e.goods()
       << " good(s) in each of " << e.states() << " state(s))\n"
       << "  truncation M = " << format_number(e.truncation()) << '\n'
       << "  price grid: " << a.simplex().points().size() << " point(s), step "
       << format_number(pstep) << '\n';
    for (std::size_t i = 0; i < e.agents(); ++i) {
      os << "  agent " << i + 1 << ": endowment " << format_point(e.endowment(i))
         << ", information classes at the default signal:";
      for (const auto& cls : e.classes(i, a.simplex().points().front())) {
        os << " {";
        for (std::size_t k = 0; k < cls.size(); ++k) os << (k ? "," : "") << cls[k];
        os << '}';
      }
      os << '\n';
    }
    os << "  A∩P ⊆ B: " << sw.samples << " samples at allocation step " << format_number(step)
       << ", " << sw.violations << " violation(s)\n";
    if (sw.agent) {
      os << "  first violation: agent " << *sw.agent + 1 << " at x = " << format_point(sw.x)
         << ", p = " << format_point(sw.p) << '\n';
    }
  }
  return sw.violations == 0 ? kPass : kFail;
}

int cmd_reproduce(const RunConfig& c, Sink& sink) {
  ReproduceOptions o;
  if (c.step) {
    try {
      o = ReproduceOptions::uniform(*c.step);
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("--step: ") + e.what());
    }
  }
  auto start = std::chrono::steady_clock::now();
  auto sections = reproduce_all(o);
  double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool all = true;
  for (const auto& s : sections) {
    all = all && s.passed();
    if (sink.records()) {
      json params = json::object();
      for (const auto& [k, v] : s.parameters) params[k] = v;
      for (const auto& ch : s.checks) {
        sink.record({{"record", "golden"},
                     {"section", s.name},
                     {"check", ch.name},
                     {"passed", ch.passed},
                     {"detail", ch.detail}});
      }
      sink.record({{"record", "section"},
                   {"section", s.name},
                   {"passed", s.passed()},
                   {"seconds", s.seconds},
                   {"parameters", params}});
    } else {
      auto& os = sink.text();
      os << s.name << ": " << (s.passed() ? "pass" : "FAIL") << "  (" << std::fixed
         << std::setprecision(2) << s.seconds << " s)\n";
      os.unsetf(std::ios::fixed);
      os << std::setprecision(6);
      print_parameters(os, s.parameters);
      for (const auto& ch : s.checks) {
        os << "  [" << (ch.passed ? "pass" : "FAIL") << "] " << ch.name;
        if (!ch.detail.empty()) os << "  -- " << ch.detail;
        os << '\n';
      }
    }
  }
  if (sink.records()) {
    sink.record({{"record", "summary"}, {"passed", all}, {"seconds", total}});
  } else {
    sink.text() << (all ? "all golden checks pass" : "some golden checks FAIL") << " ("
                << std::fixed << std::setprecision(2) << total << " s)\n";
  }
  return all ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"setval: set-valued maps, fixed points and equilibria"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--step", cfg.step, "grid step")->check(CLI::PositiveNumber);
    sub->add_option("--delta", cfg.delta, "neighbour radius for continuity checks (default: step)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tol", cfg.tol, "tolerance")->check(CLI::NonNegativeNumber);
    sub->add_option("--eps-chain", cfg.eps_chain, "decreasing eps values, comma separated")
        ->delimiter(',');
    sub->add_option("--out", cfg.out, "output file (\"text\" or \"records\" select a format)");
    sub->add_option("--format", cfg.format, "text or records")
        ->check(CLI::IsMember({"text", "records"}));
  };
  auto input = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input, "input document")->required();
  };

  auto* check_map = app.add_subcommand("check-map", "run a continuity check on a map or pair");
  input(check_map);
  check_map->add_option("--property", cfg.property, "usc, w-usc, almost-w-usc, dual or e-uscs")
      ->check(CLI::IsMember({"usc", "w-usc", "almost-w-usc", "dual", "e-uscs"}));
  common(check_map);

  auto* fixed = app.add_subcommand("find-fixed-points", "grid fixed points over an eps chain");
  input(fixed);
  common(fixed);

  auto* equilibria = app.add_subcommand("find-equilibria", "grid search for equilibria");
  input(equilibria);
  common(equilibria);

  auto* hypotheses = app.add_subcommand("check-hypotheses", "existence-theorem hypotheses");
  input(hypotheses);
  hypotheses->add_option("--theorem", cfg.theorem, "4.1, 4.2 or 4.3");
  common(hypotheses);

  auto* radner = app.add_subcommand("build-radner", "associated economy of an info-economy");
  input(radner);
  common(radner);

  auto* reproduce = app.add_subcommand("reproduce-paper", "run the golden suite");
  common(reproduce);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kInput;
  }
  if (cfg.out == "records" || cfg.out == "text") {
    cfg.format = cfg.out;
    cfg.out.clear();
  }

  Sink sink(cfg);
  int code = kInput;
  try {
    if (*check_map) code = cmd_check_map(cfg, sink);
    if (*fixed) code = cmd_find_fixed_points(cfg, sink);
    if (*equilibria) code = cmd_find_equilibria(cfg, sink);
    if (*hypotheses) code = cmd_check_hypotheses(cfg, sink);
    if (*radner) code = cmd_build_radner(cfg, sink);
    if (*reproduce) code = cmd_reproduce(cfg, sink);
    sink.flush();
  } catch (const io::ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  }
  return code;
}
