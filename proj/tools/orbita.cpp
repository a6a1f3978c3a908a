// orbita: command-line front end.
//
//   orbita hohmann --r0 1 --r2 2 [--dir0 1 --dir2 -1] [--all-branches]
//   orbita lambert input.json
//   orbita rotated --e 0.7 --alpha 85 [--case all|1|2a|2b]
//   orbita sweep-rotated --e 0.1:0.9:0.1 --alpha 5:175:5 [--include-180] [--out sweep.csv]
//   orbita eval-plan plan.json
//   orbita oracle-check hohmann|lambert|rotated ...
//
// Exit codes: 0 ok, 1 internal error, 2 invalid input or failed validation,
// 3 infeasible, 64 usage error.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "orbita/errors.hpp"
#include "orbita/hohmann.hpp"
#include "orbita/json_io.hpp"
#include "orbita/lambert.hpp"
#include "orbita/oracle.hpp"
#include "orbita/parallel.hpp"
#include "orbita/rotated.hpp"
#include "orbita/sweep.hpp"

using namespace orbita;

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitUsage = 64;

// Raised when a computed answer fails re-validation.
struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path) {
  std::ifstream f;
  std::istream* in = &std::cin;
  if (path != "-") {
    f.open(path);
    if (!f) throw InvalidPlan("cannot open " + path);
    in = &f;
  }
  return Json::parse(*in);
}

void print(const Json& j) { std::cout << dump(j) << '\n'; }

PlanValidation revalidate(const TransferPlan& plan, double tol) {
  PlanValidation v = validate_plan(plan, tol);
  if (!v.valid) throw ValidationFailure("computed plan fails validation: " + v.first_violation);
  return v;
}

Json plan_report(const TransferPlan& plan, double tol) {
  const PlanValidation v = revalidate(plan, tol);
  return Json{{"plan", to_json(plan)}, {"cost", to_json(impulses(plan, tol))},
              {"max_equality_residual", v.max_equality_residual}};
}

Json hohmann_entry(const HohmannBranchSolution& s, double tol, bool check) {
  Json j{{"branch", to_string(s.branch)}, {"f1", s.f1}, {"feasible", s.feasible}, {"optimal", s.optimal},
         {"tie", s.tie}};
  if (check) {
    j.update(plan_report(s.plan, tol));
  } else {
    j["plan"] = to_json(s.plan);
  }
  return j;
}

// Lambert answers are re-validated directly: orbit1 must be elliptic, pass
// through both points and give w0star at r0.
void check_lambert(const LambertSolution& s, const LambertInput& in, double tol) {
  make_orbit(s.orbit1.l, s.orbit1.s);
  for (const Vec3& r : {in.r0, in.r1}) {
    const double k = 1.0 / r.norm();
    if (std::abs(radius_inverse(s.orbit1, r.normalized()) - k) > tol * std::max(1.0, k))
      throw ValidationFailure("transfer orbit misses a fixed point");
  }
  if ((velocity_at(s.orbit1, in.r0.normalized()) - s.w0star).norm() > tol * std::max(1.0, s.w0star.norm()))
    throw ValidationFailure("w0star is not the transfer velocity at r0");
}

Json rotated_candidate(const RotatedCandidate& c) {
  Json j{{"case", to_string(c.case_tag)},
         {"f1", c.f1},
         {"separation_deg", c.separation_angle_deg},
         {"dominated", c.dominated},
         {"max_residual", c.max_residual}};
  if (!c.note.empty()) j["note"] = c.note;
  j["plan"] = to_json(c.plan);
  return j;
}

Json rotated_input_json(const RotatedInput& in) {
  return Json{{"e", in.e.get_d()},       {"alpha_deg", in.alpha_deg},   {"a", in.a},
              {"b", in.b},               {"s0x", in.s0x.get_d()},      {"s0y", in.s0y.get_d()},
              {"s0x_exact", in.s0x.get_str()}, {"s0y_exact", in.s0y.get_str()}};
}

OracleConfig oracle_config(int grid, double tol) {
  OracleConfig cfg;
  cfg.grid_points_per_dim = grid;
  cfg.refine_tolerance = tol;
  cfg.threads = default_threads();
  return cfg;
}

Json discrepancy(double solver, double oracle) {
  return Json{{"solver", solver},
              {"oracle", oracle},
              {"difference", oracle - solver},
              {"relative", (oracle - solver) / std::max(std::abs(solver), 1e-300)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-impulse transfers between Keplerian orbits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "orbita 1.0");
  double refine_tol = 1e-13;
  double plan_tol = kPlanTolerance;
  app.add_option("--tol", refine_tol, "Refinement tolerance of the oracle searches")->check(CLI::PositiveNumber);
  app.add_option("--plan-tol", plan_tol, "Tolerance of plan validation")->check(CLI::PositiveNumber);

  // hohmann
  auto* hoh = app.add_subcommand("hohmann", "Transfer between circular coplanar orbits");
  double r0 = 1.0, r2 = 2.0;
  int dir0 = 1, dir2 = 1;
  bool all_branches = false;
  hoh->add_option("--r0", r0, "Initial radius")->required()->check(CLI::PositiveNumber);
  hoh->add_option("--r2", r2, "Final radius")->required()->check(CLI::PositiveNumber);
  hoh->add_option("--dir0", dir0, "Sense of the initial orbit (+1 or -1)")->check(CLI::IsMember({-1, 1}));
  hoh->add_option("--dir2", dir2, "Sense of the final orbit (+1 or -1)")->check(CLI::IsMember({-1, 1}));
  hoh->add_flag("--all-branches", all_branches, "List every candidate");

  // lambert
  auto* lam = app.add_subcommand("lambert", "Minimum sum-of-squares transfer between fixed points");
  std::string lambert_path;
  lam->add_option("input", lambert_path, "JSON {r0, r1, w0, w1star}, - for stdin")->required();

  // rotated
  auto* rot = app.add_subcommand("rotated", "Transfer between two rotated copies of an ellipse");
  double e = 0.5, alpha = 90.0;
  std::string which = "all";
  int seeds = Case1Config{}.seeds;
  rot->add_option("--e", e, "Eccentricity")->required()->check(CLI::Range(0.0, 1.0));
  rot->add_option("--alpha", alpha, "Rotation angle in degrees, (0, 180]")->required();
  rot->add_option("--case", which, "Cases to solve")->check(CLI::IsMember({"all", "1", "2a", "2b"}));
  rot->add_option("--seeds", seeds, "Case 1 start points")->check(CLI::PositiveNumber);

  // sweep-rotated
  auto* sw = app.add_subcommand("sweep-rotated", "Rotated-ellipse sweep over (e, alpha) as CSV");
  std::string e_list = "0.1:0.9:0.1", alpha_list = "5:175:5", out_path;
  bool include_180 = false;
  sw->add_option("--e,--e-list", e_list, "start:stop:step or comma list");
  sw->add_option("--alpha,--alpha-list", alpha_list, "start:stop:step or comma list, degrees");
  sw->add_flag("--include-180", include_180, "Append alpha = 180 (axis solutions)");
  sw->add_option("--out", out_path, "CSV file (default stdout)");
  sw->add_option("--seeds", seeds, "Case 1 start points")->check(CLI::PositiveNumber);

  // eval-plan
  auto* ev = app.add_subcommand("eval-plan", "Validate a plan and report its cost");
  std::string plan_path;
  ev->add_option("plan", plan_path, "Plan JSON, - for stdin")->required();

  // oracle-check
  auto* orc = app.add_subcommand("oracle-check", "Compare a solver answer with the brute-force oracle");
  orc->require_subcommand(1);
  int grid = 64;
  orc->add_option("--grid", grid, "Grid points per dimension")->check(CLI::Range(8, 4096));
  auto* orc_h = orc->add_subcommand("hohmann", "Hohmann problem");
  orc_h->add_option("--r0", r0)->required()->check(CLI::PositiveNumber);
  orc_h->add_option("--r2", r2)->required()->check(CLI::PositiveNumber);
  orc_h->add_option("--dir0", dir0)->check(CLI::IsMember({-1, 1}));
  orc_h->add_option("--dir2", dir2)->check(CLI::IsMember({-1, 1}));
  auto* orc_l = orc->add_subcommand("lambert", "Fixed-endpoint problem");
  orc_l->add_option("input", lambert_path)->required();
  auto* orc_r = orc->add_subcommand("rotated", "Rotated ellipses");
  orc_r->add_option("--e", e)->required()->check(CLI::Range(0.0, 1.0));
  orc_r->add_option("--alpha", alpha)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForVersion& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return kExitUsage;
  }

  try {
    if (*hoh) {
      if (all_branches) {
        Json list = Json::array();
        for (const auto& s : all_transfers(r0, r2, dir0, dir2)) list.push_back(hohmann_entry(s, plan_tol, s.feasible));
        print(Json{{"r0", r0}, {"r2", r2}, {"dir0", dir0}, {"dir2", dir2}, {"candidates", list}});
      } else {
        const auto best = best_transfer(r0, r2, dir0, dir2);
        Json j{{"r0", r0}, {"r2", r2}, {"dir0", dir0}, {"dir2", dir2}};
        j.update(hohmann_entry(best, plan_tol, true));
        print(j);
      }
    } else if (*lam) {
      const LambertInput in = lambert_input_from_json(read_json_file(lambert_path));
      const auto sols = solve_lambert(in);
      Json list = Json::array();
      for (const auto& s : sols) {
        if (s.is_minimum) check_lambert(s, in, plan_tol);
        list.push_back(to_json(s));
      }
      print(Json{{"candidates", list}});
    } else if (*rot) {
      const RotatedInput in = params_from_angle(e, alpha);
      RotatedCases cases{which == "all" || which == "1", which == "all" || which == "2a",
                         which == "all" || which == "2b"};
      Case1Config c1;
      c1.seeds = seeds;
      const RotatedResult res = best_rotated_transfer(in, cases, c1);
      revalidate(res.winner.plan, plan_tol);
      Json list = Json::array();
      for (const auto& c : res.all) list.push_back(rotated_candidate(c));
      Json j{{"input", rotated_input_json(in)}, {"winner", rotated_candidate(res.winner)}};
      if (!in.circular && in.s0x != 0) {
        const double apo = apogee_to_apogee_cost(in);
        j["apogee_f1"] = apo;
        j["ratio_pct"] = 100.0 * res.winner.f1 / apo;
      }
      j["candidates"] = list;
      j["log"] = res.log;
      print(j);
    } else if (*sw) {
      std::vector<double> es, alphas;
      try {
        es = parse_value_list(e_list);
        alphas = parse_value_list(alpha_list);
      } catch (const std::invalid_argument& ex) {
        std::cerr << "sweep-rotated: " << ex.what() << '\n';
        return kExitUsage;
      }
      if (include_180) alphas.push_back(180.0);
      Case1Config c1;
      c1.seeds = seeds;
      const auto rows = sweep_rotated(es, alphas, default_threads(), c1);
      std::ostringstream csv;
      write_sweep_csv(csv, rows);
      if (out_path.empty()) {
        std::cout << csv.str();
      } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw InvalidPlan("cannot write " + out_path);
        f << csv.str();
      }
      int failed = 0;
      for (const auto& r : rows) {
        if (r.error.empty()) continue;
        ++failed;
        std::cerr << "e=" << r.e << " alpha=" << r.alpha_deg << ": " << r.error << '\n';
      }
      if (failed > 0) return kExitInvalid;
    } else if (*ev) {
      const TransferPlan plan = plan_from_json(read_json_file(plan_path));
      const PlanValidation v = validate_plan(plan, plan_tol);
      Json j{{"validation", to_json(v)}};
      if (v.valid) j["cost"] = to_json(impulses(plan, plan_tol));
      print(j);
      if (!v.valid) {
        std::cerr << "eval-plan: violated constraint " << v.first_violation << '\n';
        return kExitInvalid;
      }
    } else if (*orc) {
      const OracleConfig cfg = oracle_config(grid, refine_tol);
      if (*orc_h) {
        const auto best = best_transfer(r0, r2, dir0, dir2);
        revalidate(best.plan, plan_tol);
        const auto o = planar_two_impulse_min(best.plan.orbits.front(), best.plan.orbits.back(), CostKind::f1, cfg);
        print(Json{{"solver", hohmann_entry(best, plan_tol, true)},
                   {"oracle", Json{{"f1", o.cost}, {"grid_f1", o.grid_cost}, {"plan", to_json(o.plan)}}},
                   {"discrepancy", discrepancy(best.f1, o.cost)}});
      } else if (*orc_l) {
        const LambertInput in = lambert_input_from_json(read_json_file(lambert_path));
        const auto sols = solve_lambert(in);
        const LambertSolution* best = nullptr;
        for (const auto& s : sols)
          if (s.is_minimum) best = &s;
        if (!best) throw NoFeasible("no feasible minimum");
        check_lambert(*best, in, plan_tol);
        const auto o = fixed_endpoint_min(in, CostKind::f2, cfg);
        print(Json{{"solver", to_json(*best)},
                   {"oracle", Json{{"f2", o.cost}, {"grid_f2", o.grid_cost}, {"orbit1", to_json(o.orbit1)}}},
                   {"discrepancy", discrepancy(best->f2, o.cost)}});
      } else if (*orc_r) {
        const RotatedInput in = params_from_angle(e, alpha);
        const RotatedResult res = best_rotated_transfer(in);
        revalidate(res.winner.plan, plan_tol);
        const auto [o0, o2] = rotated_orbits(in);
        const auto o = planar_two_impulse_min(o0, o2, CostKind::f1, cfg);
        print(Json{{"input", rotated_input_json(in)},
                   {"solver", rotated_candidate(res.winner)},
                   {"oracle", Json{{"f1", o.cost}, {"grid_f1", o.grid_cost}, {"plan", to_json(o.plan)}}},
                   {"discrepancy", discrepancy(res.winner.f1, o.cost)}});
      }
    }
  } catch (const NoFeasible& ex) {
    std::cerr << "infeasible: " << ex.what() << '\n';
    return kExitInfeasible;
  } catch (const NoEllipticCandidate& ex) {
    std::cerr << "infeasible: " << ex.what() << '\n';
    return kExitInfeasible;
  } catch (const ValidationFailure& ex) {
    std::cerr << "validation: " << ex.what() << '\n';
    return kExitInvalid;
  } catch (const Json::exception& ex) {
    std::cerr << "invalid JSON: " << ex.what() << '\n';
    return kExitInvalid;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "invalid input: " << ex.what() << '\n';
    return kExitInvalid;
  } catch (const PipelineDegreeMismatch& ex) {
    std::cerr << "internal: " << ex.what() << '\n';
    return kExitInternal;
  } catch (const ChainCollapse& ex) {
    std::cerr << "internal: " << ex.what() << '\n';
    return kExitInternal;
  } catch (const Error& ex) {
    std::cerr << "invalid input: " << ex.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& ex) {
    std::cerr << "internal: " << ex.what() << '\n';
    return kExitInternal;
  }
  return 0;
}
