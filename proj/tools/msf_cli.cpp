// msf: factoring and m-scheme tools. Run `msf --help` for the commands.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "msf/engine/engine.hpp"
#include "msf/error.hpp"
#include "msf/io/report.hpp"
#include "msf/scheme/analysis.hpp"
#include "msf/scheme/group.hpp"
#include "msf/scheme/properties.hpp"

using namespace msf;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kLimit = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
  if (!out) throw InvalidInput("write failed for " + path);
}

std::vector<std::int64_t> parse_coeffs(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw InvalidInput("bad coefficient '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InvalidInput("empty coefficient list");
  return out;
}

struct FactorArgs {
  std::uint64_t p = 0;
  std::string f;
  std::string strategy = "auto";
  unsigned levels = 0;
  std::string budget = "standard";
  bool complete = false;
  bool oracle = false;
  bool verbose = false;
  std::size_t max_dim = 0;
  std::string events;
  std::string certificate;
};

int cmd_factor(const FactorArgs& a) {
  if (a.p == 2 || !ff::is_prime(a.p) || a.p >= (1ull << 31)) throw InvalidInput("p must be an odd prime below 2^31");
  const auto fp = ff::FieldCtx::prime(a.p);
  const ff::Poly f = ff::poly_from_ints(fp, parse_coeffs(a.f));
  engine::FactorOptions opt;
  opt.strategy = engine::parse_strategy(a.strategy);
  opt.levels = a.levels;
  if (opt.strategy == engine::Strategy::Fixed && a.levels == 0) throw InvalidInput("--levels is required with --strategy fixed");
  if (a.budget == "aggressive") {
    opt.budget = engine::LevelBudget::Aggressive;
  } else if (a.budget != "standard") {
    throw InvalidInput("--levels-budget must be standard or aggressive");
  }
  opt.complete = a.complete;
  if (a.max_dim) opt.engine.cap = a.max_dim;
  if (a.verbose) {
    opt.engine.observer = [](const engine::SchemeState& st, const engine::Event& ev) {
      std::cerr << io::event_json(st.field(), ev).dump() << "\n";
    };
  }
  const auto r = engine::factor(a.p, f, opt);

  if (!a.events.empty()) {
    const auto field = r.state ? r.state->field() : fp;
    write_file(a.events, io::event_lines(field, r.events));
  }
  std::string cert_file;
  if (!a.certificate.empty() && r.status == engine::Status::Scheme && r.state) {
    std::vector<std::uint64_t> roots;
    if (a.oracle) {
      for (auto x : ff::prime_field_roots(fp, r.factors.front())) roots.push_back(fp.to_int(x));
    }
    write_file(a.certificate, io::dump(io::certificate_json(*r.state, roots)));
    cert_file = a.certificate;
  }
  std::cout << io::dump(io::factor_json(r, cert_file));
  return r.status == engine::Status::Limit ? kLimit : kOk;
}

int cmd_scheme(const std::string& action, const std::string& file, const std::string& out) {
  const auto pi = scheme::parse_scheme(read_file(file));
  if (action == "check") {
    auto j = io::property_json(scheme::check_properties(pi));
    j["n"] = pi.n();
    j["m"] = pi.m();
    std::cout << io::dump(j);
  } else if (action == "refine") {
    const auto closed = scheme::refine_closure(pi);
    const auto text = scheme::format_scheme(closed);
    if (out.empty()) {
      std::cout << text;
      return kOk;
    }
    write_file(out, text);
    io::Json j;
    j["schema"] = io::kSchema;
    j["kind"] = "refine";
    j["changed"] = !(closed == pi);
    io::Json colors = io::Json::array();
    for (unsigned s = 1; s <= closed.m(); ++s) colors.push_back(closed.color_count(s));
    j["colors"] = std::move(colors);
    j["output"] = out;
    std::cout << io::dump(j);
  } else if (action == "matchings") {
    std::cout << io::dump(io::matchings_json(scheme::find_matchings(pi)));
  } else {
    throw InvalidInput("unknown scheme action '" + action + "'");
  }
  return kOk;
}

scheme::PermGroup load_group(const std::string& spec) {
  std::ifstream probe(spec);
  if (probe) return scheme::parse_group(read_file(spec));
  for (auto& g : scheme::group_catalog()) {
    if (g.name() == spec) return g;
  }
  throw InvalidInput("no group file or catalog group named '" + spec + "'");
}

int cmd_orbit_scheme(const std::string& group, unsigned m, const std::string& out) {
  const auto g = load_group(group);
  if (m < 1) throw InvalidInput("-m must be at least 1");
  const auto text = scheme::format_scheme(scheme::orbit_scheme(g, m));
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, text);
  }
  return kOk;
}

int cmd_groups() {
  io::Json list = io::Json::array();
  for (const auto& g : scheme::group_catalog()) {
    list.push_back({{"name", g.name()}, {"degree", g.degree()}, {"order", g.order()}});
  }
  io::Json j;
  j["schema"] = io::kSchema;
  j["kind"] = "groups";
  j["groups"] = std::move(list);
  std::cout << io::dump(j);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"m-scheme polynomial factoring and scheme tools"};
  app.require_subcommand(1);

  FactorArgs fa;
  auto* factor = app.add_subcommand("factor", "factor a polynomial over F_p (coefficients low to high)");
  factor->add_option("-p", fa.p, "odd prime")->required();
  factor->add_option("-f", fa.f, "coefficients, comma separated, lowest degree first")->required();
  factor->add_option("--strategy", fa.strategy, "auto|evdokimov|smooth-prime|fixed");
  factor->add_option("--levels", fa.levels, "level bound m for the fixed strategy");
  factor->add_option("--levels-budget", fa.budget, "standard|aggressive");
  factor->add_flag("--complete", fa.complete, "recurse until every factor is linear");
  factor->add_option("--events", fa.events, "write the event log (JSON lines)");
  factor->add_option("--certificate", fa.certificate, "write the scheme certificate");
  factor->add_flag("--oracle", fa.oracle, "attach the support scheme to the certificate");
  factor->add_option("--max-dim", fa.max_dim, "dimension cap (default MSF_MAX_DIM or 20000)");
  factor->add_flag("-v,--verbose", fa.verbose, "stream events to stderr");

  std::string action, scheme_file, scheme_out;
  auto* sch = app.add_subcommand("scheme", "check, refine or list matchings of a scheme file");
  sch->add_option("action", action, "check|refine|matchings")->required()->check(CLI::IsMember({"check", "refine", "matchings"}));
  sch->add_option("file", scheme_file, "scheme file")->required();
  sch->add_option("-o", scheme_out, "output file (refine)");

  std::string group, orbit_out;
  unsigned orbit_m = 2;
  auto* orbit = app.add_subcommand("orbit-scheme", "orbit scheme of a permutation group");
  orbit->add_option("-g", group, "group file, or a catalog name such as Z/7")->required();
  orbit->add_option("-m", orbit_m, "number of levels");
  orbit->add_option("-o", orbit_out, "output file (default stdout)");

  auto* groups = app.add_subcommand("groups", "list the built-in group catalog");

  std::string prim_file;
  auto* prim = app.add_subcommand("primitivity", "component counts of the primitivity graphs");
  prim->add_option("file", prim_file, "scheme file")->required();

  unsigned cn = 0, cm = 4;
  std::size_t cbudget = 200;
  std::uint64_t cseed = 1;
  auto* conj = app.add_subcommand("conjecture-search", "search for antisymmetric schemes without matchings");
  conj->add_option("-n", cn, "number of points")->required();
  conj->add_option("-m", cm, "number of levels");
  conj->add_option("--budget", cbudget, "random seeds to close");
  conj->add_option("--seed", cseed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (factor->parsed()) return cmd_factor(fa);
    if (sch->parsed()) return cmd_scheme(action, scheme_file, scheme_out);
    if (orbit->parsed()) return cmd_orbit_scheme(group, orbit_m, orbit_out);
    if (groups->parsed()) return cmd_groups();
    if (prim->parsed()) {
      std::cout << io::dump(io::primitivity_json(scheme::primitivity_report(scheme::parse_scheme(read_file(prim_file)))));
      return kOk;
    }
    if (conj->parsed()) {
      std::cout << io::dump(io::conjecture_json(scheme::conjecture_search(cn, cbudget, cseed, cm)));
      return kOk;
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const InvalidState& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const LimitExceeded& e) {
    std::cerr << "limit: " << e.what() << "\n";
    return kLimit;
  }
  return kInvalid;
}
