#include "coulomb3/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "coulomb3/geometry.hpp"
#include "coulomb3/kappa0.hpp"
#include "coulomb3/kappa1.hpp"

namespace coulomb3::cli {

namespace {

using nlohmann::json;

template <typename... Args>
std::string strf(const char* f, Args... args) {
  char buf[320];
  std::snprintf(buf, sizeof(buf), f, args...);
  return std::string(buf);
}

// full-precision, locale-independent representation for CSV cells
std::string g17(double v) { return strf("%.17g", v); }

std::string k_label(geom::KOrder k) {
  return k.is_infinite() ? "inf" : std::to_string(k.value());
}

json k_json(geom::KOrder k) {
  if (k.is_infinite()) return json("inf");
  return json(k.value());
}

const char* unit_label(Units u) { return u == Units::hartree ? "Hartree" : "Ry"; }

double scaled(Units u, double hartree) { return u == Units::rydberg ? 2.0 * hartree : hartree; }

json system_json(const ThreeBodySystem& s) {
  return json{{"label", s.label()},
              {"charges", s.charges()},
              {"masses", s.masses()}};
}

std::string describe(const ThreeBodySystem& s) {
  const auto& z = s.charges();
  const auto& m = s.masses();
  return strf("(%+d,%+d,%+d; m=%g,%g,%g)", z[0], z[1], z[2], m[0], m[1], m[2]);
}

struct CommonOpts {
  std::string system_key;
  std::vector<int> charges;
  std::vector<double> masses;
  std::string config_path;
  std::string label;
  std::string format = "table";
  std::string output;
  std::string units = "hartree";

  Units unit() const { return units == "rydberg" ? Units::rydberg : Units::hartree; }
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--system", c.system_key, "catalog key (helium, ps-minus, e+hydrogen)");
  cmd->add_option("--charges", c.charges, "three integer charges, comma separated")->delimiter(',');
  cmd->add_option("--masses", c.masses, "three masses in atomic units, comma separated")->delimiter(',');
  cmd->add_option("--config", c.config_path, "JSON system description");
  cmd->add_option("--label", c.label, "label for a system given via --charges/--masses");
  cmd->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--output", c.output, "write the report to this path instead of stdout");
  cmd->add_option("--units", c.units, "energy units for output")
      ->check(CLI::IsMember({"hartree", "rydberg"}))
      ->capture_default_str();
}

ThreeBodySystem resolve_system(const CommonOpts& c) {
  const int sources = (!c.system_key.empty()) + (!c.config_path.empty()) +
                      (!c.charges.empty() || !c.masses.empty());
  if (sources != 1) {
    throw std::invalid_argument(
        "select a system exactly one way: --system KEY, --config PATH, or --charges with --masses");
  }
  if (!c.system_key.empty()) return find_catalog(c.system_key).system;
  if (!c.config_path.empty()) {
    std::ifstream in(c.config_path);
    if (!in) throw std::invalid_argument("cannot open config file: " + c.config_path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str()).to_system();
  }
  if (c.charges.size() != 3 || c.masses.size() != 3) {
    throw std::invalid_argument("--charges and --masses both require exactly three values");
  }
  return ThreeBodySystem({c.charges[0], c.charges[1], c.charges[2]},
                         {c.masses[0], c.masses[1], c.masses[2]},
                         c.label.empty() ? "custom" : c.label);
}

void emit(const CommonOpts& c, const std::string& table, const json& j, const std::string& csv,
          std::ostream& out) {
  std::string payload;
  if (c.format == "json") {
    payload = j.dump(2);
    payload += '\n';
  } else if (c.format == "csv") {
    payload = csv;
  } else {
    payload = table;
  }
  if (!c.output.empty()) {
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write output file: " + c.output);
    f << payload;
  } else {
    out << payload;
  }
}

int cmd_stability(const CommonOpts& c, std::ostream& out) {
  const ThreeBodySystem system = resolve_system(c);
  const auto report = geom::check_stability(system);

  json j{{"command", "stability"}, {"system", system_json(system)}, {"stable", report.stable}};
  std::string table = strf("system %s %s: %s\n", system.label().c_str(),
                           describe(system).c_str(), report.stable ? "stable" : "unstable");
  std::string csv = "stable,arrangement,wp,k,ck,omega,sigma,tau\n";
  if (report.stable) {
    const auto& w = *report.witness;
    j["arrangement"] = {{"index", report.arrangement_index},
                        {"charges", report.arrangement->charges()},
                        {"masses", report.arrangement->masses()}};
    j["witness"] = {{"wp", w.wp},     {"k", k_json(w.k)},   {"ck", w.ck},
                    {"omega", w.omega}, {"sigma", w.sigma}, {"tau", w.tau}};
    table += strf("witness: arrangement %zu %s, wp=%.6f k=%s ck=%.6f omega=%.6f sigma=%.6f tau=%.6f\n",
                  report.arrangement_index, describe(*report.arrangement).c_str(), w.wp,
                  k_label(w.k).c_str(), w.ck, w.omega, w.sigma, w.tau);
    csv += strf("1,%zu,%s,%s,%s,%s,%s,%s\n", report.arrangement_index, g17(w.wp).c_str(),
                k_label(w.k).c_str(), g17(w.ck).c_str(), g17(w.omega).c_str(),
                g17(w.sigma).c_str(), g17(w.tau).c_str());
  } else {
    csv += "0,,,,,,,\n";
  }
  emit(c, table, j, csv, out);
  return report.stable ? 0 : 2;
}

int cmd_spectrum_kappa0(const CommonOpts& c, int n_max, int k_max, bool scan_arrangements,
                        std::ostream& out, std::ostream& err) {
  const ThreeBodySystem system = resolve_system(c);
  kappa0::SpectrumOptions opts;
  opts.n_max = n_max > 0 ? n_max : 5;
  opts.k_max = k_max;
  opts.scan_arrangements = scan_arrangements;
  const auto spec = kappa0::spectrum(system, opts);
  if (spec.entries.empty()) {
    err << "no bound states on the requested grid\n";
    return 3;
  }
  const Units u = c.unit();

  json entries = json::array();
  for (const auto& e : spec.entries) {
    entries.push_back({{"arrangement", e.arrangement},
                       {"n1", e.n1},
                       {"n2", e.n2},
                       {"l1", e.l1},
                       {"l2", e.l2},
                       {"k", k_json(e.k)},
                       {"energy", scaled(u, e.energy)}});
  }
  json arrs = json::array();
  for (std::size_t i = 0; i < spec.systems.size(); ++i) {
    arrs.push_back({{"index", i},
                    {"charges", spec.systems[i].charges()},
                    {"masses", spec.systems[i].masses()}});
  }
  json j{{"command", "spectrum"},
         {"kappa", 0},
         {"system", system_json(system)},
         {"units", u == Units::hartree ? "hartree" : "rydberg"},
         {"n_max", opts.n_max},
         {"k_max", opts.k_max},
         {"scan_arrangements", opts.scan_arrangements},
         {"arrangements", arrs},
         {"entries", entries},
         {"infimum", entries.at(spec.infimum_index)}};

  std::ostringstream table;
  table << strf("# spectrum kappa=0  system %s %s  units %s\n", system.label().c_str(),
                describe(system).c_str(), unit_label(u));
  table << "arr   n1  n2  l1  l2      k        energy\n";
  for (const auto& e : spec.entries) {
    table << strf("%3zu  %3d %3d %3d %3d  %5s  %12.6f\n", e.arrangement, e.n1, e.n2, e.l1,
                  e.l2, k_label(e.k).c_str(), scaled(u, e.energy));
  }
  const auto& inf = spec.infimum();
  table << strf("infimum: arr=%zu n1=%d n2=%d k=%s energy=%.6f %s\n", inf.arrangement, inf.n1,
                inf.n2, k_label(inf.k).c_str(), scaled(u, inf.energy), unit_label(u));

  std::string csv = "arrangement,n1,n2,l1,l2,k,energy\n";
  for (const auto& e : spec.entries) {
    csv += strf("%zu,%d,%d,%d,%d,%s,%s\n", e.arrangement, e.n1, e.n2, e.l1, e.l2,
                k_label(e.k).c_str(), g17(scaled(u, e.energy)).c_str());
  }
  emit(c, table.str(), j, csv, out);
  return 0;
}

int cmd_spectrum_kappa1(const CommonOpts& c, int n_max, int k_max, std::optional<double> r0,
                        double wp_min, double wp_max, std::ostream& out, std::ostream& err) {
  const ThreeBodySystem system = resolve_system(c);
  if (!geom::check_stability(system).stable) {
    throw kappa0::unstable_error("no arrangement of the system admits a feasible geometry");
  }
  kappa1::MatchOptions opts;
  opts.n_max = n_max > 0 ? n_max : 1;
  opts.k_max = k_max;
  opts.wp_min = wp_min;
  opts.wp_max = wp_max;
  opts.r0 = r0;
  const auto matches = kappa1::find_matches(system, opts);
  const Units u = c.unit();

  json jmatches = json::array();
  for (const auto& m : matches) {
    json jm{{"k", m.k},
            {"wp", m.wp_star},
            {"nu1", m.nu1},
            {"nu2", m.nu2},
            {"coefficient", scaled(u, m.energy_coefficient)},
            {"n1", m.n1},
            {"n2", m.n2},
            {"l1", m.l1},
            {"l2", m.l2},
            {"cutoff_bessel", m.cutoff_bessel}};
    if (m.r0) {
      jm["r0"] = *m.r0;
      jm["energy"] = scaled(u, m.energy_coefficient / (*m.r0 * *m.r0));
    }
    jmatches.push_back(jm);
  }
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < matches.size(); ++i) {
    if (matches[i].energy_coefficient < matches[deepest].energy_coefficient) deepest = i;
  }
  json j{{"command", "spectrum"},
         {"kappa", 1},
         {"system", system_json(system)},
         {"units", u == Units::hartree ? "hartree" : "rydberg"},
         {"n_max", opts.n_max},
         {"k_max", opts.k_max},
         {"matches", jmatches},
         {"infimum", matches.empty() ? json(nullptr) : jmatches.at(deepest)}};

  std::ostringstream table;
  table << strf("# spectrum kappa=1  system %s %s  units %s (coefficient: %s*bohr^2)\n",
                system.label().c_str(), describe(system).c_str(), unit_label(u), unit_label(u));
  if (matches.empty()) {
    table << "no matches: the r^-2 level does not contribute\n";
  } else {
    table << "  k       wp*       nu1       nu2   coefficient";
    if (r0) table << "        r0        energy";
    table << "\n";
    for (const auto& m : matches) {
      table << strf("%3d  %9.6f  %8.6f  %8.6f  %12.6f", m.k, m.wp_star, m.nu1, m.nu2,
                    scaled(u, m.energy_coefficient));
      if (m.r0) {
        table << strf("  %8.4f  %12.6f", *m.r0, scaled(u, m.energy_coefficient / (*m.r0 * *m.r0)));
      }
      table << "\n";
    }
    const auto& d = matches[deepest];
    table << strf("infimum: k=%d coefficient=%.6f %s*bohr^2\n", d.k,
                  scaled(u, d.energy_coefficient), unit_label(u));
  }

  std::string csv = "k,wp,nu1,nu2,coefficient,r0,energy\n";
  for (const auto& m : matches) {
    csv += strf("%d,%s,%s,%s,%s", m.k, g17(m.wp_star).c_str(), g17(m.nu1).c_str(),
                g17(m.nu2).c_str(), g17(scaled(u, m.energy_coefficient)).c_str());
    if (m.r0) {
      csv += strf(",%s,%s\n", g17(*m.r0).c_str(),
                  g17(scaled(u, m.energy_coefficient / (*m.r0 * *m.r0))).c_str());
    } else {
      csv += ",,\n";
    }
  }
  emit(c, table.str(), j, csv, out);
  if (matches.empty()) {
    err << "no kappa=1 contribution\n";
  }
  return 0;
}

int cmd_scan(const CommonOpts& c, int k, double wp_min, double wp_max, int steps,
             const kappa0::QuantumNumbers& qn, std::ostream& out) {
  const ThreeBodySystem system = resolve_system(c);
  const auto curve = kappa1::scan_matching(system, qn, k, wp_min, wp_max, steps);
  const Units u = c.unit();

  json samples = json::array();
  for (const auto& s : curve.samples) {
    samples.push_back({{"wp", s.wp},
                       {"lhs", scaled(u, s.lhs)},
                       {"rhs", scaled(u, s.rhs)},
                       {"feasible", s.feasible}});
  }
  json j{{"command", "scan"},
         {"kappa", 1},
         {"system", system_json(system)},
         {"units", u == Units::hartree ? "hartree" : "rydberg"},
         {"k", curve.k},
         {"n1", qn.n1},
         {"n2", qn.n2},
         {"l1", qn.l1},
         {"l2", qn.l2},
         {"samples", samples}};

  std::ostringstream table;
  table << strf("# scan kappa=1 k=%d  system %s %s  sides scaled by r0^2, units %s*bohr^2\n",
                curve.k, system.label().c_str(), describe(system).c_str(), unit_label(u));
  table << "        wp           lhs           rhs  feasible\n";
  for (const auto& s : curve.samples) {
    table << strf("%10.6f  %12.6f  %12.6f  %d\n", s.wp, scaled(u, s.lhs), scaled(u, s.rhs),
                  s.feasible ? 1 : 0);
  }

  std::string csv = "k,wp,lhs,rhs,feasible\n";
  for (const auto& s : curve.samples) {
    csv += strf("%d,%s,%s,%s,%d\n", curve.k, g17(s.wp).c_str(), g17(scaled(u, s.lhs)).c_str(),
                g17(scaled(u, s.rhs)).c_str(), s.feasible ? 1 : 0);
  }
  emit(c, table.str(), j, csv, out);
  return 0;
}

int cmd_calibrate(const CommonOpts& c, double reference, std::ostream& out) {
  const ThreeBodySystem system = resolve_system(c);
  const double r0 = kappa1::calibrate_cutoff(system, reference);

  const auto spec = kappa0::spectrum(system);
  const double e0 = spec.infimum().energy;
  const auto matches = kappa1::find_matches(system);
  const auto deepest = std::min_element(
      matches.begin(), matches.end(),
      [](const auto& a, const auto& b) { return a.energy_coefficient < b.energy_coefficient; });
  const Units u = c.unit();

  json j{{"command", "calibrate-r0"},
         {"system", system_json(system)},
         {"units", u == Units::hartree ? "hartree" : "rydberg"},
         {"r0", r0},
         {"reference", scaled(u, reference)},
         {"kappa0_infimum", scaled(u, e0)},
         {"coefficient", scaled(u, deepest->energy_coefficient)},
         {"k", deepest->k},
         {"wp", deepest->wp_star}};

  std::string table =
      strf("r0 = %.6f bohr  (reference=%.6f %s, kappa0 infimum=%.6f %s, coefficient=%.6f "
           "%s*bohr^2 at k=%d)\n",
           r0, scaled(u, reference), unit_label(u), scaled(u, e0), unit_label(u),
           scaled(u, deepest->energy_coefficient), unit_label(u), deepest->k);
  std::string csv = "r0,reference,kappa0_infimum,coefficient,k,wp\n" +
                    strf("%s,%s,%s,%s,%d,%s\n", g17(r0).c_str(), g17(scaled(u, reference)).c_str(),
                         g17(scaled(u, e0)).c_str(),
                         g17(scaled(u, deepest->energy_coefficient)).c_str(), deepest->k,
                         g17(deepest->wp_star).c_str());
  emit(c, table, j, csv, out);
  return 0;
}

}  // namespace

ThreeBodySystem SystemConfig::to_system() const {
  return ThreeBodySystem(charges, masses, label);
}

SystemConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "label" && key != "charges" && key != "masses") {
      throw std::invalid_argument("config: unknown key '" + key +
                                  "' (allowed: label, charges, masses)");
    }
  }
  if (!j.contains("charges") || !j.contains("masses")) {
    throw std::invalid_argument("config: 'charges' and 'masses' are required");
  }
  SystemConfig cfg;
  try {
    const auto zs = j.at("charges");
    const auto ms = j.at("masses");
    if (!zs.is_array() || zs.size() != 3 || !ms.is_array() || ms.size() != 3) {
      throw std::invalid_argument("config: 'charges' and 'masses' must be arrays of three values");
    }
    for (int i = 0; i < 3; ++i) {
      if (!zs[i].is_number_integer()) {
        throw std::invalid_argument("config: charges must be integers");
      }
      cfg.charges[i] = zs[i].get<int>();
      cfg.masses[i] = ms[i].get<double>();
    }
    cfg.label = j.value("label", std::string{});
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return cfg;
}

std::string config_to_json(const SystemConfig& config) {
  json j{{"label", config.label}, {"charges", config.charges}, {"masses", config.masses}};
  return j.dump(2) + "\n";
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"helium",
       ThreeBodySystem({-1, -1, +2}, {1.0, 1.0, 7294.299536}, "helium"),
       "two electrons and a helium nucleus"},
      {"ps-minus",
       ThreeBodySystem({-1, +1, -1}, {1.0, 1.0, 1.0}, "ps-minus"),
       "positronium negative ion: electron, positron, electron"},
      {"e+hydrogen",
       ThreeBodySystem({+1, -1, +1}, {1.0, 1.0, 1836.1527}, "e+hydrogen"),
       "positron, electron and a proton"},
  };
  return entries;
}

const CatalogEntry& find_catalog(const std::string& key) {
  for (const auto& e : catalog()) {
    if (e.key == key) return e;
  }
  std::string keys;
  for (const auto& e : catalog()) {
    if (!keys.empty()) keys += ", ";
    keys += e.key;
  }
  throw std::invalid_argument("unknown system '" + key + "'; available: " + keys);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"bound states of three-body Coulomb systems via radial reductions"};
  app.name("coulomb3");
  app.require_subcommand(1);

  CommonOpts common;

  auto* stab = app.add_subcommand("stability", "decide stability and show a witness geometry");
  add_common(stab, common);

  auto* spec = app.add_subcommand("spectrum", "discrete spectrum for kappa = 0 or 1");
  add_common(spec, common);
  int kappa = 0;
  spec->add_option("--kappa", kappa, "derivative order of the reduced potential")
      ->check(CLI::IsMember({0, 1}))
      ->required();
  int n_max = -1;
  spec->add_option("--nmax", n_max, "principal quantum number bound (default 5 for kappa=0, 1 for kappa=1)");
  int k_max = 64;
  spec->add_option("--kmax", k_max, "largest finite order k")->capture_default_str();
  bool scan_arr = false;
  spec->add_flag("--scan-arrangements", scan_arr, "include all particle arrangements (kappa=0)");
  double r0_value = 0.0;
  auto* r0_opt = spec->add_option("--r0", r0_value, "cutoff radius in bohr (kappa=1 energies)");
  double m_wp_min = 1e-3, m_wp_max = 8.0;
  spec->add_option("--wp-min", m_wp_min, "multiplier search window lower edge (kappa=1)")
      ->capture_default_str();
  spec->add_option("--wp-max", m_wp_max, "multiplier search window upper edge (kappa=1)")
      ->capture_default_str();

  auto* scan = app.add_subcommand("scan", "sample the kappa=1 matching condition over the multiplier");
  add_common(scan, common);
  int scan_kappa = 1;
  scan->add_option("--kappa", scan_kappa, "must be 1")->check(CLI::IsMember({1}))->required();
  int scan_k = 0;
  scan->add_option("--k", scan_k, "order k of the scan")->required();
  double wp_min = 0.0, wp_max = 0.0;
  scan->add_option("--wp-min", wp_min, "lower edge of the multiplier range")->required();
  scan->add_option("--wp-max", wp_max, "upper edge of the multiplier range")->required();
  int steps = 500;
  scan->add_option("--steps", steps, "number of samples")->capture_default_str();
  kappa0::QuantumNumbers qn;
  scan->add_option("--n1", qn.n1)->capture_default_str();
  scan->add_option("--n2", qn.n2)->capture_default_str();
  scan->add_option("--l1", qn.l1)->capture_default_str();
  scan->add_option("--l2", qn.l2)->capture_default_str();

  auto* cal = app.add_subcommand("calibrate-r0", "cutoff radius from a reference total energy");
  add_common(cal, common);
  double reference = 0.0;
  cal->add_option("--reference", reference, "reference total energy in Hartree")->required();

  std::vector<const char*> argv;
  argv.push_back("coulomb3");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (stab->parsed()) return cmd_stability(common, out);
    if (spec->parsed()) {
      if (kappa == 0) {
        return cmd_spectrum_kappa0(common, n_max, k_max, scan_arr, out, err);
      }
      std::optional<double> r0;
      if (r0_opt->count() > 0) {
        if (!(r0_value > 0.0)) throw std::invalid_argument("--r0 must be positive");
        r0 = r0_value;
      }
      return cmd_spectrum_kappa1(common, n_max, k_max, r0, m_wp_min, m_wp_max, out, err);
    }
    if (scan->parsed()) return cmd_scan(common, scan_k, wp_min, wp_max, steps, qn, out);
    if (cal->parsed()) return cmd_calibrate(common, reference, out);
    err << "no subcommand selected\n";
    return 1;
  } catch (const kappa0::unstable_error& e) {
    err << "unstable system: " << e.what() << "\n";
    return 2;
  } catch (const kappa1::no_match_error& e) {
    err << "no kappa=1 contribution: " << e.what() << "\n";
    return 3;
  } catch (const kappa1::calibration_error& e) {
    err << "calibration failed: " << e.what() << "\n";
    return 3;
  } catch (const kappa1::infeasible_window_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace coulomb3::cli
