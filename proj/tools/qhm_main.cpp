#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qhm/classify.hpp"
#include "qhm/dsl.hpp"
#include "qhm/repr_norm.hpp"
#include "qhm/traces.hpp"
#include "qhm/verify.hpp"

namespace {

using nlohmann::ordered_json;

// exit codes: 0 success / checks pass, 1 verification failure, 2 usage
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

qhm::Params make_params(int c, const std::string& mu, const std::string& nu, long d_declared) {
  qhm::Params pr(c, qhm::parse_scalar(mu), qhm::parse_scalar(nu));
  if (d_declared != 0 && pr.d() != 0 && d_declared != pr.d()) {
    throw std::invalid_argument("--d disagrees with the field of mu/nu");
  }
  return pr;
}

ordered_json group_json(const qhm::TraceRangeGroup& g) {
  ordered_json h = ordered_json::array();
  for (const auto& row : g.rows) {
    ordered_json r = ordered_json::array();
    for (const auto& e : row) r.push_back(e.convert_to<long long>());
    h.push_back(r);
  }
  return ordered_json{{"d", g.d}, {"D", g.D.convert_to<long long>()}, {"H", h},
                      {"group", qhm::to_string(g)}};
}

int emit_report(const qhm::SuiteReport& rep) {
  std::cout << qhm::report_json(rep) << "\n";
  for (const auto& c : rep.checks) {
    std::cerr << (c.pass() ? "  pass  " : "  FAIL  ") << c.name << "  max=" << c.max_deviation
              << " tol=" << c.tolerance << " samples=" << c.samples << "\n";
  }
  std::cerr << (rep.pass() ? "all checks passed" : "CHECKS FAILED") << " [" << rep.suite << " "
            << rep.params << "]\n";
  return rep.pass() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum Heisenberg manifold toolkit: exact parameters, trace ranges, "
               "isomorphism decisions, and identity verification suites"};
  app.require_subcommand(1);
  int exit_code = kExitPass;

  // shared option storage
  int c = 1, c2 = 0;
  long d_flag = 0;
  std::string mu = "0", nu = "0", mu2 = "0", nu2 = "0";
  std::string element_path, measure_path;
  uint64_t seed = 7;
  int samples = 1000, pairs = 20, grid_n = 512;
  std::vector<int> grids{2, 3, 4};
  std::vector<int> cutoffs;
  long long oq = 1, oa = 0, ob = 0, oa2 = 0, ob2 = 0;

  auto* cls = app.add_subcommand("classify", "decide isomorphism of two parameter pairs");
  cls->add_option("--c", c, "integer parameter of the first pair")->capture_default_str();
  cls->add_option("--c2", c2, "integer parameter of the second pair (default: same as --c)");
  cls->add_option("--mu", mu, "first mu, e.g. \"1/4\" or \"-1/2+1/2*sqrt(5)\"")->required();
  cls->add_option("--nu", nu, "first nu")->required();
  cls->add_option("--mu2", mu2, "second mu")->required();
  cls->add_option("--nu2", nu2, "second nu")->required();
  cls->add_option("--d", d_flag, "expected squarefree field tag (validation only)");
  cls->callback([&] {
    qhm::Params p1 = make_params(c, mu, nu, d_flag);
    qhm::Params p2 = make_params(c2 == 0 ? c : c2, mu2, nu2, d_flag);
    qhm::IsoVerdict v = qhm::decide_isomorphism(p1, p2);
    ordered_json out;
    switch (v.kind) {
      case qhm::IsoKind::Isomorphic: out["verdict"] = "Isomorphic"; break;
      case qhm::IsoKind::NotIsomorphic: out["verdict"] = "NotIsomorphic"; break;
      case qhm::IsoKind::RationalCaseOrbitOnly:
        out["verdict"] = "RationalCaseOrbitOnly";
        out["orbit_equal"] = v.orbit_equal;
        break;
    }
    out["justification"] = v.justification;
    bool irrational = !(p1.mu().is_rational() && p1.nu().is_rational() && p2.mu().is_rational() &&
                        p2.nu().is_rational());
    if (irrational && p1.c() == p2.c()) {
      out["trace_range"] = group_json(qhm::trace_range(p1));
      out["trace_range2"] = group_json(qhm::trace_range(p2));
    }
    std::cout << out.dump(2) << "\n";
    std::cerr << v.justification << "\n";
  });

  auto* tr = app.add_subcommand("trace", "trace of an element file against a measure file");
  tr->add_option("--element", element_path, "element JSON path")->required();
  tr->add_option("--measure", measure_path, "measure JSON path (default: haar N=512)");
  tr->callback([&] {
    qhm::QhmElement a = qhm::load_element(element_path);
    qhm::Measure m =
        measure_path.empty() ? qhm::Measure(qhm::HaarMeasure{512}) : qhm::load_measure(measure_path);
    double defect = qhm::invariance_defect(m, a.params());
    try {
      qhm::Complex t = qhm::trace_value(a, m);
      ordered_json out{{"trace", {{"re", t.real()}, {"im", t.imag()}}},
                       {"invariance_defect", defect}};
      std::cout << out.dump(2) << "\n";
      std::cerr << "trace = " << t.real() << (t.imag() < 0 ? " - " : " + ")
                << std::abs(t.imag()) << "i\n";
    } catch (const qhm::NonInvariantMeasure& e) {
      ordered_json out{{"error", "measure fails the invariance check"},
                       {"invariance_defect", e.defect()}};
      std::cout << out.dump(2) << "\n";
      std::cerr << e.what() << "\n";
      exit_code = kExitFail;
    }
  });

  auto* trg = app.add_subcommand("trace-range", "canonical form of Z + 2*mu*Z + 2*nu*Z");
  trg->add_option("--mu", mu, "mu, exact scalar syntax")->required();
  trg->add_option("--nu", nu, "nu")->required();
  trg->add_option("--c", c, "integer parameter (not used by the group)")->capture_default_str();
  trg->add_option("--d", d_flag, "expected squarefree field tag (validation only)");
  trg->callback([&] {
    qhm::TraceRangeGroup g = qhm::trace_range(make_params(c, mu, nu, d_flag));
    ordered_json out = group_json(g);
    std::cout << out.dump(2) << "\n";
    std::cerr << qhm::to_string(g) << "\n";
  });

  auto* ver = app.add_subcommand("verify", "run an identity suite");
  std::string kind;
  ver->add_option("kind", kind, "cocycle | embedding | partition | covariance | tracial")
      ->required()
      ->check(CLI::IsMember({"cocycle", "embedding", "partition", "covariance", "tracial"}));
  ver->add_option("--c", c, "integer parameter")->capture_default_str();
  ver->add_option("--mu", mu, "mu")->required();
  ver->add_option("--nu", nu, "nu")->required();
  ver->add_option("--seed", seed, "sampling seed")->capture_default_str();
  ver->add_option("--samples", samples, "sample count")->capture_default_str();
  ver->add_option("--pairs", pairs, "element pairs (embedding/tracial)")->capture_default_str();
  ver->add_option("--grid", grid_n, "quadrature grid resolution (tracial)")->capture_default_str();
  ver->add_option("--d", d_flag, "expected squarefree field tag (validation only)");
  ver->callback([&] {
    qhm::Params pr = make_params(c, mu, nu, d_flag);
    qhm::SuiteReport rep;
    if (kind == "cocycle") {
      rep = qhm::verify_cocycle(pr, seed, samples);
    } else if (kind == "embedding") {
      rep = qhm::verify_embedding(pr, seed, pairs, std::min(samples, 256));
    } else if (kind == "partition") {
      rep = qhm::verify_partition(pr, seed, samples);
    } else if (kind == "covariance") {
      rep = qhm::verify_covariance(pr, seed, samples);
    } else {
      rep = qhm::verify_tracial(pr, seed, pairs, grid_n);
    }
    exit_code = emit_report(rep);
  });

  auto* nrm = app.add_subcommand("norm", "operator-norm lower bounds from finite sections");
  nrm->add_option("--element", element_path, "element JSON path")->required();
  nrm->add_option("--grids", grids, "lattice sizes, each dividing the next")
      ->delimiter(',')
      ->capture_default_str();
  nrm->add_option("--cutoffs", cutoffs, "p-cutoffs, parallel to --grids (default: support bound)")
      ->delimiter(',');
  nrm->callback([&] {
    qhm::QhmElement a = qhm::load_element(element_path);
    std::vector<qhm::TruncationSpec> specs;
    for (size_t i = 0; i < grids.size(); ++i) {
      int n = grids[i];
      if (n < 1) throw std::invalid_argument("grid sizes must be positive");
      if (i > 0 && grids[i] % grids[i - 1] != 0) {
        throw std::invalid_argument("each grid size must divide the next (nested lattices)");
      }
      qhm::TruncationSpec spec;
      spec.cutoff = i < cutoffs.size() ? cutoffs[i] : a.max_abs_support();
      for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy) {
          spec.grid.push_back(qhm::Point{qhm::ExactScalar(qhm::Rational(ix, n)),
                                         qhm::ExactScalar(qhm::Rational(iy, n))});
        }
      }
      specs.push_back(std::move(spec));
    }
    std::vector<double> bounds = qhm::norm_lower_bound(a, specs);
    ordered_json out = ordered_json::array();
    for (size_t i = 0; i < bounds.size(); ++i) {
      out.push_back({{"grid", grids[i]}, {"cutoff", specs[i].cutoff}, {"bound", bounds[i]}});
    }
    std::cout << out.dump(2) << "\n";
    std::cerr << "largest lower bound: " << (bounds.empty() ? 0.0 : bounds.back()) << "\n";
  });

  auto* orb = app.add_subcommand("orbit-oracle", "BFS orbit test on (Z/q)^2");
  orb->add_option("--q", oq, "modulus")->required();
  orb->add_option("--a", oa, "first point numerator of x (times 1/q)")->required();
  orb->add_option("--b", ob, "first point numerator of y")->required();
  orb->add_option("--a2", oa2, "second point numerator of x")->required();
  orb->add_option("--b2", ob2, "second point numerator of y")->required();
  orb->callback([&] {
    bool eq = qhm::brute_force_orbit_rational(oq, {oa, ob}, {oa2, ob2});
    ordered_json out{{"q", oq}, {"pt", {oa, ob}}, {"pt2", {oa2, ob2}}, {"orbit_equal", eq}};
    std::cout << out.dump(2) << "\n";
    std::cerr << (eq ? "same orbit" : "different orbits") << "\n";
  });

  auto* rpt = app.add_subcommand("report", "full deterministic verification report");
  rpt->add_option("--seed", seed, "sampling seed")->capture_default_str();
  rpt->callback([&] { std::cout << qhm::full_report(seed) << "\n"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  } catch (const qhm::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return exit_code;
}
