#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "sl3k/action.hpp"
#include "sl3k/clebsch.hpp"
#include "sl3k/oracle.hpp"
#include "sl3k/series.hpp"
#include "sl3k/sl2.hpp"
#include "sl3k/structure.hpp"
#include "sl3k/wigner.hpp"

namespace sl3k {

namespace {

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

Delta parse_delta(const std::string& text) {
  const auto parts = split_commas(text);
  if (parts.size() != 3) throw std::invalid_argument("--delta needs three entries d1,d2,d3");
  Delta d{};
  for (int i = 0; i < 3; ++i) {
    if (parts[i] != "0" && parts[i] != "1") throw std::invalid_argument("delta entries must be 0 or 1");
    d[i] = parts[i] == "1" ? 1 : 0;
  }
  return d;
}

ExactLambda parse_lambda(const std::string& text) {
  const auto parts = split_commas(text);
  if (parts.size() == 2) return make_lambda(parse_exact_complex(parts[0]), parse_exact_complex(parts[1]));
  if (parts.size() == 3) {
    ExactLambda l{parse_exact_complex(parts[0]), parse_exact_complex(parts[1]), parse_exact_complex(parts[2])};
    require_zero_sum(l);
    return l;
  }
  throw std::invalid_argument("--lambda needs two components (the third is inferred)");
}

EulerAngles parse_angles(const std::string& text) {
  const auto parts = split_commas(text);
  if (parts.size() != 3) throw std::invalid_argument("--angles needs alpha,beta,gamma");
  return {std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2])};
}

std::string format_double(double x, int digits = 12) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

std::string format_complex(std::complex<double> z) {
  std::ostringstream os;
  os << std::setprecision(12) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

struct GlobalOptions {
  std::string format = "table";
  std::string out;
  std::uint64_t seed = 1;
  int threads = 0;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and numeric K-type computations for principal series of SL(3,R)", "sl3k"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  CLI::Option* format_opt = app.add_option("--format", g.format, "Output format")
                                ->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--out", g.out, "Write output to this file instead of stdout");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--threads", g.threads, "Worker threads (0 = hardware concurrency)")
      ->check(CLI::NonNegativeNumber);

  std::function<int()> action;
  int exit_status = kExitOk;
  std::string result;
  auto format_is = [&](const std::string& f) { return g.format == f; };

  // wigner
  auto* wig = app.add_subcommand("wigner", "Evaluate D^l_{m1,m2}(alpha, beta, gamma)");
  int wl = 0, wm1 = 0, wm2 = 0;
  std::string angles_text = "0,0,0";
  wig->add_option("--l", wl)->required();
  wig->add_option("--m1", wm1)->required();
  wig->add_option("--m2", wm2)->required();
  wig->add_option("--angles", angles_text, "alpha,beta,gamma in radians");
  wig->callback([&] {
    action = [&] {
      const WignerIndex idx{wl, wm1, wm2};
      if (!idx.valid()) throw std::invalid_argument("need |m1|, |m2| <= l");
      const EulerAngles a = parse_angles(angles_text);
      const auto value = wigner_D(idx, a);
      if (format_is("json")) {
        result = nlohmann::json{{"l", wl}, {"m1", wm1}, {"m2", wm2},
                                {"angles", {a.alpha, a.beta, a.gamma}},
                                {"value", {value.real(), value.imag()}}}.dump(2) + "\n";
      } else if (format_is("csv")) {
        result = "l,m1,m2,alpha,beta,gamma,re,im\n" + std::to_string(wl) + "," + std::to_string(wm1) + "," +
                 std::to_string(wm2) + "," + format_double(a.alpha) + "," + format_double(a.beta) + "," +
                 format_double(a.gamma) + "," + format_double(value.real()) + "," +
                 format_double(value.imag()) + "\n";
      } else {
        result = "D^" + std::to_string(wl) + "_{" + std::to_string(wm1) + "," + std::to_string(wm2) + "}(" +
                 format_double(a.alpha) + "," + format_double(a.beta) + "," + format_double(a.gamma) +
                 ") = " + format_complex(value) + "\n";
      }
      return kExitOk;
    };
  });

  // cg
  auto* cg = app.add_subcommand("cg", "Clebsch-Gordan coefficient q(k,j,l,m) = <2 k l m | l+j k+m>");
  int ck = 0, cj = 0, cl = 0, cm = 0;
  cg->add_option("--k", ck)->required();
  cg->add_option("--j", cj)->required();
  cg->add_option("--l", cl)->required();
  cg->add_option("--m", cm)->required();
  cg->callback([&] {
    action = [&] {
      if (cl < 0) throw std::invalid_argument("l must be non-negative");
      const RadicalScalar& value = q(ck, cj, cl, cm);
      std::ostringstream approx;
      approx << value.to_double();
      if (format_is("json")) {
        result = nlohmann::json{{"k", ck}, {"j", cj}, {"l", cl}, {"m", cm}, {"exact", value.to_string()},
                                {"value", value.to_double()}, {"terms", value.to_json()}}.dump(2) + "\n";
      } else if (format_is("csv")) {
        result = "k,j,l,m,exact,value\n" + std::to_string(ck) + "," + std::to_string(cj) + "," +
                 std::to_string(cl) + "," + std::to_string(cm) + "," + value.to_string() + "," +
                 approx.str() + "\n";
      } else {
        result = value.to_string() + " ≈ " + approx.str() + "\n";
      }
      return kExitOk;
    };
  });

  // sl2
  auto* sl2 = app.add_subcommand("sl2", "Principal series of SL(2,R)");
  sl2->require_subcommand(1);
  std::string nu_text = "0";
  int eps = 0;
  int sl2_lmax = 6;
  auto* ladder = sl2->add_subcommand("ladder", "Raising and lowering coefficients 2nu+1+-l");
  auto* compose2 = sl2->add_subcommand("compose", "Composition structure from vanishing ladder steps");
  for (auto* sub : {ladder, compose2}) {
    sub->add_option("--nu", nu_text, "Exact rational nu")->required();
    sub->add_option("--eps", eps, "Parity 0 or 1")->check(CLI::IsMember({0, 1}));
  }
  ladder->add_option("--lmax", sl2_lmax, "Largest |l|")->check(CLI::NonNegativeNumber);
  ladder->callback([&] {
    action = [&] {
      const auto p = SL2Params::exact(parse_rational(nu_text), eps);
      nlohmann::json rows = nlohmann::json::array();
      std::ostringstream text;
      text << "l  raise  lower\n";
      std::ostringstream csv;
      csv << "l,raise,lower\n";
      for (int l = -sl2_lmax; l <= sl2_lmax; ++l) {
        if (((l - eps) % 2 + 2) % 2 != 0) continue;
        const auto up = to_string(sl2_raise_coefficient(p, l));
        const auto down = to_string(sl2_lower_coefficient(p, l));
        rows.push_back({{"l", l}, {"raise", up}, {"lower", down}});
        text << l << "  " << up << "  " << down << "\n";
        csv << l << "," << up << "," << down << "\n";
      }
      if (format_is("json")) {
        result = nlohmann::json{{"nu", to_string(*p.exact_nu)}, {"eps", eps}, {"rows", rows}}.dump(2) + "\n";
      } else {
        result = format_is("csv") ? csv.str() : text.str();
      }
      return kExitOk;
    };
  });
  compose2->callback([&] {
    action = [&] {
      const auto p = SL2Params::exact(parse_rational(nu_text), eps);
      const auto report = sl2_composition_report(p);
      if (format_is("json")) {
        result = report.to_json().dump(2) + "\n";
      } else {
        std::ostringstream os;
        os << report.summary << "\n";
        for (std::size_t i = 0; i < report.segments.size(); ++i) {
          os << "segment " << report.segments[i].to_string() << ": "
             << (report.in_submodule(report.segments[i].lo ? *report.segments[i].lo
                                                           : *report.segments[i].hi)
                     ? "submodule"
                     : "quotient")
             << "\n";
        }
        result = os.str();
      }
      return kExitOk;
    };
  });

  // series
  auto* series = app.add_subcommand("series", "Principal series V_{lambda,delta}");
  series->require_subcommand(1);
  auto* basis_cmd = series->add_subcommand("basis", "Basis labels and K-type multiplicities");
  std::string delta_text = "0,0,0";
  int series_lmax = 4;
  basis_cmd->add_option("--delta", delta_text, "d1,d2,d3")->required();
  basis_cmd->add_option("--lmax", series_lmax)->required()->check(CLI::NonNegativeNumber);
  basis_cmd->callback([&] {
    action = [&] {
      const Delta d = parse_delta(delta_text);
      if (format_is("json")) {
        nlohmann::json mult = nlohmann::json::object();
        nlohmann::json labels = nlohmann::json::array();
        for (int l = 0; l <= series_lmax; ++l) {
          mult[std::to_string(l)] = multiplicity(d, l);
          for (const auto& b : basis(d, l)) labels.push_back({b.l, b.m1, b.m2});
        }
        result = nlohmann::json{{"delta", d}, {"lmax", series_lmax}, {"multiplicities", mult},
                                {"labels", labels}}.dump(2) + "\n";
      } else if (format_is("csv") || format_opt->count() == 0) {
        std::ostringstream os;
        os << "l,m1,m2,multiplicity\n";
        for (int l = 0; l <= series_lmax; ++l) {
          for (const auto& b : basis(d, l)) os << b.l << "," << b.m1 << "," << b.m2 << "," << multiplicity(d, l) << "\n";
        }
        result = os.str();
      } else {
        std::ostringstream os;
        os << "l  multiplicity  m1 values\n";
        for (int l = 0; l <= series_lmax; ++l) {
          os << l << "  " << multiplicity(d, l) << " ";
          int last = -1;
          for (const auto& b : basis(d, l)) {
            if (b.m1 != last) os << " " << b.m1;
            last = b.m1;
          }
          os << "\n";
        }
        result = os.str();
      }
      return kExitOk;
    };
  });

  // action
  auto* act_cmd = app.add_subcommand("action", "Matrix of pi(X) on the v basis up to l_max");
  std::string lambda_text;
  std::string act_delta = "0,0,0";
  std::string gen_text = "Z0";
  int act_lmax = 8;
  act_cmd->add_option("--lambda", lambda_text, "l1,l2 as re+imi pairs; l3 = -l1-l2")->required();
  act_cmd->add_option("--delta", act_delta, "d1,d2,d3");
  act_cmd->add_option("--gen", gen_text, "Generator name, e.g. Z0, Z-2, Y1, X1, H2");
  act_cmd->add_option("--lmax", act_lmax)->check(CLI::NonNegativeNumber);
  act_cmd->callback([&] {
    action = [&] {
      const ExactLambda lambda = parse_lambda(lambda_text);
      const Delta d = parse_delta(act_delta);
      const Generator gen = parse_generator(gen_text);
      const auto m = assemble_matrix(to_numeric(lambda), d, gen, act_lmax);
      std::string fmt = g.format;
      if (format_opt->count() == 0 && g.out.size() >= 5 && g.out.substr(g.out.size() - 5) == ".json") fmt = "json";
      if (format_opt->count() == 0 && g.out.size() >= 4 && g.out.substr(g.out.size() - 4) == ".csv") fmt = "csv";
      if (fmt == "json") {
        result = m.to_json().dump(2) + "\n";
      } else if (fmt == "csv") {
        result = m.to_csv();
      } else {
        std::ostringstream os;
        int truncated = 0;
        for (const auto& b : m.blocks) truncated += b.truncated;
        os << "pi(" << generator_name(gen) << ") on V_{" << format_lambda(lambda) << ",(" << d[0] << ","
           << d[1] << "," << d[2] << ")}, l_max = " << act_lmax << ": " << m.labels.size() << " labels, "
           << m.blocks.size() << " blocks (" << truncated << " truncated)\n";
        os << "l  j  rows  cols  nonzeros  truncated\n";
        for (const auto& b : m.blocks) {
          int nz = 0;
          for (Eigen::Index r = 0; r < b.entries.rows(); ++r) {
            for (Eigen::Index c = 0; c < b.entries.cols(); ++c) nz += std::abs(b.entries(r, c)) > 0;
          }
          os << b.l << "  " << b.j << "  " << b.rows.size() << "  " << b.cols.size() << "  " << nz << "  "
             << (b.truncated ? "yes" : "no") << "\n";
        }
        result = os.str();
      }
      return kExitOk;
    };
  });

  // compose
  auto* compose = app.add_subcommand("compose", "Composition-series reports");
  std::string preset;
  int compose_k = 2;
  std::string s_text = "0";
  int compose_lmax = -1;
  compose->add_option("--preset", preset)->required()->check(CLI::IsMember({"even-k", "degenerate", "k3", "k23"}));
  compose->add_option("--k", compose_k, "Even k for the even-k preset");
  compose->add_option("--s", s_text, "Parameter s of the degenerate preset");
  compose->add_option("--lmax", compose_lmax, "Window (defaults: 12, or 31 for k23)");
  compose->callback([&] {
    action = [&] {
      StructureReport r;
      if (preset == "even-k") {
        r = even_k_report(compose_k, compose_lmax < 0 ? std::max(12, compose_k + 4) : compose_lmax, g.threads);
      } else if (preset == "degenerate") {
        r = degenerate_series_report(parse_exact_complex(s_text), compose_lmax < 0 ? 12 : compose_lmax, g.threads);
      } else if (preset == "k3") {
        r = k3_chain_report(compose_lmax < 0 ? 12 : compose_lmax, g.threads);
      } else {
        r = k23_subspace_report(compose_lmax < 0 ? 31 : compose_lmax, g.threads);
      }
      result = format_is("json") ? r.to_json().dump(2) + "\n" : r.to_text();
      return r.ok ? kExitOk : kExitVerificationFailed;
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Numerical oracle suites");
  std::string suite = "all";
  int verify_lmax = 4;
  std::vector<std::string> choices = suite_names();
  choices.push_back("all");
  verify->add_option("--suite", suite)->check(CLI::IsMember(choices));
  verify->add_option("--lmax", verify_lmax)->check(CLI::NonNegativeNumber);
  verify->callback([&] {
    action = [&] {
      std::vector<std::string> run = suite == "all" ? suite_names() : std::vector<std::string>{suite};
      bool all_passed = true;
      nlohmann::json reports = nlohmann::json::array();
      std::ostringstream os;
      for (const auto& name : run) {
        auto r = run_suite(name, verify_lmax, g.seed);
        all_passed = all_passed && r.passed;
        auto j = r.to_json();
        j.erase("seconds");
        reports.push_back(j);
        os << name << ": " << (r.passed ? "PASS" : "FAIL") << " max deviation "
           << format_double(r.max_deviation, 3) << " (tolerance " << format_double(r.tolerance, 3) << ")\n";
      }
      result = format_is("json")
                   ? nlohmann::json{{"seed", g.seed}, {"lmax", verify_lmax}, {"passed", all_passed},
                                    {"suites", reports}}.dump(2) + "\n"
                   : os.str();
      return all_passed ? kExitOk : kExitVerificationFailed;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (!action) {
    err << app.help();
    return kExitUsage;
  }
  try {
    exit_status = action();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerificationFailed;
  }
  if (g.out.empty()) {
    out << result;
  } else {
    std::ofstream file(g.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << g.out << "\n";
      return kExitUsage;
    }
    file << result;
  }
  return exit_status;
}

}  // namespace sl3k
