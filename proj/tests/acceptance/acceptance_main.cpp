// Acceptance suite. Runs every criterion (or one, with --criterion N) and
// prints one PASS/FAIL line per criterion. Exit status is non-zero when any
// selected criterion fails.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "aidrely/analytic.hpp"
#include "aidrely/cli/commands.hpp"
#include "aidrely/scenario_json.hpp"
#include "aidrely/simulate.hpp"
#include "aidrely/sweep.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace {

using namespace aidrely;
using testing::load_scenario_file;
using testing::ScenarioGen;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED{" << what << "}";
    }
  }
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

double accuracy(const Scenario& s) { return evaluate(s).p_correct_aided.value(); }

double round2(double v) { return std::round(v * 100.0) / 100.0; }

Scenario scenario(double pa, double pu, double r, ReliancePolicy pol, DependencyModel dep = dependency::Independent{},
                  std::optional<DegradationMode> mode = std::nullopt) {
  return make_scenario(AidProfile{Probability(pa)}, UserProfile{Probability(pu), Probability(r)}, std::move(pol),
                       std::move(dep), mode);
}

policy::Discriminating disc(double ac, double aw) { return {Probability(ac), Probability(aw)}; }

void criterion_1(Outcome& o) {
  const double v = accuracy(load_scenario_file("eq1_base.json"));
  o.detail << "eq1(pA=.7,p=.5,r=.4)=" << num(v);
  o.check(std::abs(v - 0.55) <= 1e-12, "|eq1 - 0.55| <= 1e-12");
}

void criterion_2(Outcome& o) {
  struct Case {
    const char* file;
    double exact;
    double printed;
  };
  for (const auto& c : {Case{"eq2_equal.json", 0.55, 0.55}, Case{"eq2_moderate.json", 0.658, 0.66},
                        Case{"eq2_high_discrimination.json", 0.679, 0.68}}) {
    const double v = accuracy(load_scenario_file(c.file));
    o.detail << ' ' << c.file << '=' << num(v);
    o.check(std::abs(v - c.exact) <= 1e-12, std::string(c.file) + " exact");
    o.check(std::abs(round2(v) - c.printed) <= 1e-15, std::string(c.file) + " rounds to printed value");
  }
}

void criterion_3(Outcome& o) {
  const double v = accuracy(load_scenario_file("eq3_self_gated.json"));
  o.detail << "eq3(pA=.7,pU=.6,g=.7)=" << num(v);
  o.check(std::abs(v - 0.742) <= 1e-12, "|eq3 - 0.742| <= 1e-12");
}

void criterion_4(Outcome& o) {
  const auto s = load_scenario_file("eq2_dominant.json");
  const double v = accuracy(s);
  o.detail << "eq2 dominant conditional_from_joint=" << num(v) << " (direction checked in criterion 8)";
  o.check(s.degradation_mode() == DegradationMode::kConditionalFromJoint, "mode conditional_from_joint");
  o.check(std::abs(v - 0.67) <= 1e-12, "|eq2 - 0.67| <= 1e-12");
}

void criterion_5(Outcome& o) {
  const double v =
      potential_combined(AidProfile{Probability(0.7)}, UserProfile{Probability(0.6), Probability(0.4)},
                         dependency::Independent{})
          .value();
  o.detail << "potential_combined=" << num(v);
  o.check(std::abs(v - 0.88) <= 1e-12, "|potential - 0.88| <= 1e-12");
}

void criterion_6(Outcome& o) {
  const auto base = load_scenario_file("eq1_base.json");
  const double pa = 0.7, pu = 0.6, r = 0.4;
  const auto series = run_sweep({base, "policy.p_accept", 0.0, 1.0, 101});
  const double a = series.accuracies.front().value(), b = series.accuracies.back().value();
  double max_dev = 0.0;
  for (std::size_t k = 0; k < series.accuracies.size(); ++k) {
    const double chord = a + (b - a) * (series.parameter_values[k] - 0.0) / 1.0;
    max_dev = std::max(max_dev, std::abs(series.accuracies[k].value() - chord));
  }
  o.check(series.accuracies.size() == 101, "101 points");
  o.check(max_dev < 1e-12, "max chord deviation < 1e-12");
  o.check(std::abs(a - r) <= 1e-12 && std::abs(b - pa) <= 1e-12, "endpoints equal r and pA");

  std::vector<double> roots;
  for (std::size_t k = 0; k + 1 < series.accuracies.size(); ++k) {
    const double g0 = series.accuracies[k].value() - pu, g1 = series.accuracies[k + 1].value() - pu;
    if ((g0 < 0.0) != (g1 < 0.0)) {
      roots.push_back(testing::bisect(
          [&](double p) { return accuracy(base.with_policy(policy::Indiscriminate{Probability(p)})) - pu; },
          series.parameter_values[k], series.parameter_values[k + 1]));
    }
  }
  const double expected = (pu - r) / (pa - r);
  o.detail << "max_dev=" << num(max_dev) << " crossings=" << roots.size();
  if (!roots.empty()) o.detail << " at " << num(roots[0]) << " expected " << num(expected);
  o.check(roots.size() == 1 && std::abs(roots[0] - expected) <= 1e-9, "single crossing at (pU-r)/(pA-r) +- 1e-9");
}

void criterion_7(Outcome& o) {
  std::size_t cases = 0, violations = 0;
  for (int i = 1; i <= 20; ++i) {
    for (int j = 1; j <= 20; ++j) {
      for (int k = 0; k < 20; ++k) {
        const double pa = i / 20.0, pu = j / 20.0, r = k / 20.0;
        if (!(r < std::min(pa, pu))) continue;
        for (int m = 1; m <= 9; ++m) {
          const double p = m / 10.0;
          const double v = accuracy(scenario(pa, pu, r, policy::Indiscriminate{Probability(p)}));
          ++cases;
          if (!(v < std::max(pa, pu))) ++violations;
        }
      }
    }
  }
  o.detail << cases << " cases, " << violations << " violations";
  o.check(violations == 0 && cases > 0, "eq1 < max(pA, pU) everywhere");
}

void criterion_8(Outcome& o) {
  ScenarioGen gen(8008);
  std::size_t violations = 0;
  double largest_increase = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double pa = gen.uniform(0.01, 0.99), pu = gen.uniform(0.01, 0.99);
    const double aw = gen.uniform(0.0, 0.98);
    const double ac = gen.uniform(aw + 0.01, 1.0);
    const double lo = std::max(0.0, pa + pu - 1.0), hi = std::min(pa, pu);
    double prev = 0.0;
    for (int k = 0; k <= 10; ++k) {
      const double both = lo + (hi - lo) * k / 10.0;
      const double v = accuracy(scenario(pa, pu, gen.uniform(0, 1), disc(ac, aw), dependency::Joint{Probability(both)},
                                         DegradationMode::kConditionalFromJoint));
      if (k > 0 && v > prev + 1e-12) {
        ++violations;
        largest_increase = std::max(largest_increase, v - prev);
      }
      prev = v;
    }
  }
  o.detail << "100 scenarios x 11 points, " << violations << " increases";
  o.check(violations == 0, "eq2 non-increasing in p_both_correct (largest increase " + num(largest_increase) + ")");
}

void criterion_9(Outcome& o) {
  constexpr std::uint64_t kTrials = 1'000'000;
  const char* files[] = {"eq1_base.json",     "eq2_equal.json",      "eq2_moderate.json",     "eq2_high_discrimination.json",
                         "eq3_self_gated.json", "eq2_dominant.json", "potential_combined.json"};
  double worst = 0.0;
  for (const char* f : files) {
    const auto s = load_scenario_file(f);
    const double expected = accuracy(s);
    const auto est = estimate_accuracy(s, kTrials, 9009);
    const double z = std::abs(est.p_hat.value() - expected) / est.std_err;
    worst = std::max(worst, z);
    o.check(z < 4.0, std::string(f) + " within 4 std_err (z=" + num(z) + ")");
  }
  o.detail << files[0] << ".." << " worst |z|=" << num(worst);

  const auto run_twice = [&](const std::string& shards) {
    const std::vector<std::string> args = {"simulate", testing::data_path("eq1_base.json"), "--trials", "1000000",
                                           "--seed", "42", "--shards", shards};
    std::ostringstream a, b, err;
    const int ca = cli::run(args, a, err), cb = cli::run(args, b, err);
    return ca == 0 && cb == 0 && a.str() == b.str() && !a.str().empty();
  };
  o.check(run_twice("1"), "byte-identical output, shards=1");
  o.check(run_twice("4"), "byte-identical output, shards=4");
}

void criterion_10(Outcome& o) {
  ScenarioGen gen(1010);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double pa = gen.uniform(0, 1), pu = gen.uniform(0, 1);
    const auto perfect = scenario(pa, pu, 0.4, policy::SelfGated{Probability(1.0), Probability(1.0)});
    const double potential = potential_combined(perfect.aid(), perfect.user(), perfect.dependency()).value();
    worst = std::max(worst, std::abs(accuracy(perfect) - potential));
    const auto coin = scenario(pa, pu, 0.4, policy::SelfGated{Probability(0.5), Probability(0.5)});
    worst = std::max(worst, std::abs(accuracy(coin) - (pa + pu) / 2.0));
  }
  for (int i = 0; i < 100; ++i) {
    const auto s = gen.scenario();
    const auto p = gen.prob();
    const double a = eq2_aided_accuracy(s.with_policy(policy::Discriminating{p, p})).p_correct_aided.value();
    const double b = eq1_aided_accuracy(s.with_policy(policy::Indiscriminate{p})).p_correct_aided.value();
    worst = std::max(worst, std::abs(a - b));
  }
  o.detail << "worst deviation " << num(worst);
  o.check(worst <= 1e-12, "collapses within 1e-12");
}

void criterion_11(Outcome& o) {
  ScenarioGen gen(1111);
  int scenarios = 0, partials = 0;
  double worst = 0.0;
  while (scenarios < 100) {
    const auto s = gen.scenario(0.02);
    if (std::holds_alternative<dependency::Dominant>(s.dependency()) &&
        s.aid().p_advice_correct.value() - s.user().p_unaided_correct.value() < 1e-5) {
      continue;
    }
    ++scenarios;
    const auto doc = to_json(s);
    for (const auto& [path, d] : sensitivity(s)) {
      const auto dot = path.find('.');
      const auto section = path.substr(0, dot), leaf = path.substr(dot + 1);
      const double x = doc.at(section).at(leaf).get<double>();
      if (x < 1e-5 || x > 1.0 - 1e-5) continue;
      const auto at = [&](double v) {
        auto moved = doc;
        moved[section][leaf] = v;
        return accuracy(scenario_from_json(moved));
      };
      const double fd = testing::central_difference(at, x, 1e-6);
      worst = std::max(worst, std::abs(fd - d.analytic));
      ++partials;
    }
  }
  o.detail << partials << " partials over " << scenarios << " scenarios, worst |analytic - fd|=" << num(worst);
  o.check(worst <= 1e-6, "partials within 1e-6 of central differences");
}

void criterion_12(Outcome& o) {
  ScenarioGen gen(1212);
  double worst = 0.0;
  bool agree = true;
  for (int i = 0; i < 100; ++i) {
    const auto s = gen.scenario();
    const auto closed = breakeven_discrimination(s);
    const auto grid = testing::grid_search_breakeven(s, 1e-3);
    if (closed.d_star.has_value() != grid.has_value()) {
      agree = false;
      continue;
    }
    if (grid) worst = std::max(worst, std::abs(*grid - *closed.d_star));
  }
  o.check(agree && worst <= 1e-3 + 1e-12, "closed form within one grid step of grid search");

  const auto base = load_scenario_file("eq1_base.json");
  const auto b = breakeven_discrimination(base);
  const double d = b.d_star.value_or(std::nan(""));
  const double at_d = b.eq2_at_d_star.value_or(std::nan(""));
  o.detail << "grid worst=" << num(worst) << "; base d*=" << num(d) << " eq2(d*)=" << num(at_d)
           << "; stated 10/13=" << num(10.0 / 13.0) << " where eq2(10/13)="
           << num(eq2_aided_accuracy(base.with_policy(disc(10.0 / 13.0, 3.0 / 13.0))).p_correct_aided.value());
  o.check(std::abs(d - 10.0 / 13.0) <= 1e-9, "base d* = 10/13 +- 1e-9");
  o.check(std::abs(at_d - 0.7) <= 1e-9, "eq2(d*) = max(pA, pU) +- 1e-9");
}

struct Criterion {
  int id;
  const char* title;
  void (*run)(Outcome&);
};

const Criterion kCriteria[] = {
    {1, "indiscriminate golden 0.55", criterion_1},
    {2, "discriminating goldens 0.55 / 0.658 / 0.679", criterion_2},
    {3, "self-gated golden 0.742", criterion_3},
    {4, "dominant-dependency golden 0.67", criterion_4},
    {5, "potential combined golden 0.88", criterion_5},
    {6, "acceptance sweep affine, endpoints, unaided crossing", criterion_6},
    {7, "counterproductivity on 20x20x20 grid", criterion_7},
    {8, "dependency direction over Frechet range", criterion_8},
    {9, "Monte Carlo oracle agreement and determinism", criterion_9},
    {10, "special-case collapses", criterion_10},
    {11, "sensitivity vs central finite differences", criterion_11},
    {12, "break-even closed form vs grid search; base d*", criterion_12},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--criterion" && i + 1 < argc) only = std::atoi(argv[++i]);
  }

  int failures = 0, ran = 0;
  for (const auto& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    Outcome o;
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    failures += o.pass ? 0 : 1;
    std::printf("[%s] criterion %2d: %s | %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.str().c_str());
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  std::printf("%d/%d criteria passed\n", ran - failures, ran);
  return failures == 0 ? 0 : 1;
}
