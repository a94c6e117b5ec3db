#pragma once

#include <mzeta/mzeta.hpp>

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace mzeta::cli {

enum ExitCode : int { ok = 0, check_failed = 1, usage_error = 2, precision_unreachable = 3, polar = 4 };

struct CliConfig {
  unsigned digits = 12;
  unsigned depth_cap = 4;
  std::uint64_t seed = 42;
  std::string output = "text";
  unsigned long max_n = 1ul << 20;
};

inline std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(item, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad integer '" + item + "'");
    }
    if (pos != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
    out.push_back(v);
  }
  return out;
}

inline MVector parse_complex_list(const std::string& text) {
  MVector out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_complex(item));
  return out;
}

inline OrderIndex to_order(const std::vector<int>& v) {
  OrderIndex k;
  for (int x : v) {
    if (x < 0) throw std::invalid_argument("orders must be non-negative");
    k.push_back(static_cast<unsigned>(x));
  }
  return k;
}

inline void print(std::ostream& out, const CliConfig& cfg, const nlohmann::json& j, const std::string& text) {
  if (cfg.output == "json")
    out << j.dump(2) << "\n";
  else
    out << text;
}

inline int cmd_stieltjes(const CliConfig& cfg, const std::string& point, const std::string& order, bool star,
                         const std::string& method, std::ostream& out) {
  IntPoint a(parse_int_list(point));
  OrderIndex k = to_order(parse_int_list(order));
  if (a.depth() != k.size()) throw std::invalid_argument("--point and --order must have equal lengths");
  auto m = method == "closed-form" ? StieltjesMethod::closed_form_assembly : StieltjesMethod::extrapolation;
  auto v = stieltjes_constant(a, k, cfg.digits, star, m);
  nlohmann::json j{{"point", a.coords},
                   {"order", k},
                   {"star", star},
                   {"digits", cfg.digits},
                   {"value", format_fixed(v.value, cfg.digits)},
                   {"est_error", format_sci(v.est_error)},
                   {"method", method_name(v.method)}};
  std::string text = format_fixed(v.value, cfg.digits) + "\nest_error " + format_sci(v.est_error) + "\nmethod " +
                     method_name(v.method) + "\n";
  print(out, cfg, j, text);
  return ok;
}

inline int cmd_zeta(const CliConfig& cfg, const std::string& args, bool star, std::ostream& out) {
  MVector s = parse_complex_list(args);
  if (s.size() > cfg.depth_cap) throw std::invalid_argument("depth exceeds the configured cap");
  PrecisionScope scope(cfg.digits + 10);
  auto z = zeta_value(s, cfg.digits, star ? Variant::star : Variant::strict);
  nlohmann::json list = nlohmann::json::array();
  for (const auto& x : s) list.push_back(format_complex(x, cfg.digits));
  nlohmann::json j{{"args", list},
                   {"star", star},
                   {"digits", cfg.digits},
                   {"value", format_complex(z.value, cfg.digits)},
                   {"error", format_sci(z.error)}};
  print(out, cfg, j, format_complex(z.value, cfg.digits) + "\nerror " + format_sci(z.error) + "\n");
  return ok;
}

inline int cmd_verify(const CliConfig& cfg, const std::string& name, std::size_t depth, std::ostream& out) {
  if (name != "all" && std::find(identity_names().begin(), identity_names().end(), name) == identity_names().end())
    throw std::invalid_argument("unknown identity '" + name + "'");
  SuiteOptions o;
  o.digits = cfg.digits;
  o.seed = cfg.seed;
  o.depth = depth;
  auto checks = run_identity_suite(name, o);
  auto report = identity_report(checks, cfg.digits);
  if (cfg.output == "text") {
    for (const auto& c : report["checks"])
      out << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << " gap "
          << c["abs_gap"].get<std::string>() << " tol " << c["tolerance"].get<std::string>() << "\n";
    out << "total " << report["summary"]["total"] << " passed " << report["summary"]["passed"] << " failed "
        << report["summary"]["failed"] << "\n";
  } else {
    out << report.dump(2) << "\n";
  }
  return report["summary"]["failed"].get<std::size_t>() == 0 ? ok : check_failed;
}

inline int cmd_expand(const CliConfig& cfg, const std::string& point, unsigned degree, bool star, std::ostream& out) {
  IntPoint a(parse_int_list(point));
  if (degree > 8) throw std::invalid_argument("--degree must be at most 8");
  if (a.depth() > cfg.depth_cap) throw std::invalid_argument("depth exceeds the configured cap");
  auto series = reg_series(a, degree, cfg.digits, star);
  nlohmann::json coeffs = nlohmann::json::array();
  std::string text = "regularized series at (" + detail::join(a.coords) + "), coefficients of prod (s_j - a_j)^k_j:\n";
  for (const auto& [k, c] : series.coefficients) {
    coeffs.push_back({{"order", k}, {"value", format_fixed(c, cfg.digits)}});
    text += "  k=(" + detail::join(k) + ") " + format_fixed(c, cfg.digits) + "\n";
  }
  nlohmann::json j{{"point", a.coords}, {"degree", degree}, {"star", star}, {"digits", cfg.digits},
                   {"coefficients", coeffs}};
  if (!star && a.in_closure()) {
    auto I = a.index_set();
    IndexSet set(I.begin(), I.end());
    nlohmann::json blocks = nlohmann::json::array();
    text += "singular part, X_j = s_j - 1:\n";
    bool any = false;
    for (std::size_t pos = 1; pos < I.size(); ++pos) {
      std::size_t i = I[pos];
      int sign = (i - pos) % 2 ? -1 : 1;
      RatFunc f = f_rational(set, static_cast<unsigned>(i), static_cast<unsigned>(a.depth()));
      IntPoint tail = a.tail(i);
      blocks.push_back({{"index", i}, {"sign", sign}, {"coefficient", f.to_json()}, {"regularized_at", tail.coords}});
      text += std::string("  ") + (sign < 0 ? "-" : "+") + " " + f.str();
      if (tail.depth() > 0)
        text += " * zetaReg_(" + detail::join(tail.coords) + ")(s_" + std::to_string(i + 1) + "..)";
      text += "\n";
      any = true;
    }
    if (!any) text += "  none\n";
    j["singular_part"] = blocks;
  }
  print(out, cfg, j, text);
  return ok;
}

/// Runs the command line; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  load_env_limits();
  CLI::App app{"Multiple zeta values, multiple Stieltjes constants and regularized expansions"};
  app.require_subcommand(1);
  CliConfig cfg;
  cfg.max_n = limits().max_n.load();
  auto common = [&](CLI::App* sub) {
    sub->add_option("--digits", cfg.digits, "decimal digits")->check(CLI::Range(1u, 50u));
    sub->add_option("--depth-cap", cfg.depth_cap, "largest accepted depth")->check(CLI::Range(0u, 8u));
    sub->add_option("--output", cfg.output, "output format")->check(CLI::IsMember({"text", "json"}));
  };

  std::string point, order, args, identity, method = "extrapolation";
  bool star = false;
  unsigned degree = 2;
  std::size_t depth = 0;
  unsigned jobs = 0;

  auto* st = app.add_subcommand("stieltjes", "multiple Stieltjes constant");
  st->add_option("--point", point, "integer point a, comma separated")->required()->allow_extra_args(false);
  st->add_option("--order", order, "log orders k, comma separated")->required();
  st->add_flag("--star", star, "star variant");
  st->add_option("--method", method, "computation path")->check(CLI::IsMember({"extrapolation", "closed-form"}));
  common(st);

  auto* ze = app.add_subcommand("zeta", "multiple zeta value");
  ze->add_option("--args", args, "arguments re[+imi], comma separated")->required();
  ze->add_flag("--star", star, "star variant");
  common(ze);

  auto* ve = app.add_subcommand("verify", "identity checks");
  ve->add_option("identity", identity, "identity name or all")->required();
  ve->add_option("--depth", depth, "restrict to one depth");
  ve->add_option("--seed", cfg.seed, "random seed");
  ve->add_option("--jobs", jobs, "worker count; checks currently run sequentially");
  common(ve);

  auto* ex = app.add_subcommand("expand", "regularized expansion at an integer point");
  ex->add_option("--point", point, "integer point a, comma separated")->required();
  ex->add_option("--degree", degree, "series degree")->check(CLI::Range(0u, 8u));
  ex->add_flag("--star", star, "star variant");
  common(ex);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }

  if (cfg.output.empty()) cfg.output = "text";
  limits().depth_cap = cfg.depth_cap;
  try {
    if (st->parsed()) return cmd_stieltjes(cfg, point, order, star, method, out);
    if (ze->parsed()) return cmd_zeta(cfg, args, star, out);
    if (ve->parsed()) {
      // the working precision is process-wide, so checks run one after another
      (void)jobs;
      return cmd_verify(cfg, identity, depth, out);
    }
    if (ex->parsed()) return cmd_expand(cfg, point, degree, star, out);
  } catch (const PolarPoint& e) {
    err << "error: " << e.what() << "\n";
    return polar;
  } catch (const PoleProximity& e) {
    err << "error: " << e.what() << "\n";
    return polar;
  } catch (const PrecisionUnreachable& e) {
    err << "error: " << e.what() << "\n";
    return precision_unreachable;
  } catch (const InsufficientPrecision& e) {
    err << "error: " << e.what() << "\n";
    return precision_unreachable;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return polar;
  }
  return usage_error;
}

}  // namespace mzeta::cli
