#include "kvb/report/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "kvb/coulomb/radial_coulomb.hpp"
#include "kvb/error.hpp"
#include "kvb/extension/extension.hpp"
#include "kvb/fem/fd_oracle.hpp"
#include "kvb/interval/laplacian.hpp"
#include "kvb/numerics/digamma.hpp"
#include "kvb/point/point_interaction.hpp"

namespace kvb::report {
namespace {

using interval::kPiSq;
constexpr double kPi = std::numbers::pi;

// Tolerances of the verification matrix.
constexpr double kTqTol = 1e-6;
constexpr double kQTol = 1e-8;
constexpr double kIntegralTol = 1e-8;
constexpr double kSecularValueTol = 1e-14;
constexpr double kSecularRootTol = 1e-10;
constexpr double kOracleRelTol = 5e-3;
constexpr double kOracleZeroTol = 1e-8;
constexpr double kUpperBoundSlack = 1e-9;
constexpr double kOrderLo = 1.8;
constexpr double kOrderHi = 2.2;
constexpr double kCoulombLimitTol = 1e-4;
constexpr double kCoulombResidualTol = 1e-10;
constexpr double kDigammaTol = 1e-12;
constexpr double kVariationalTol = 1e-12;

// Collects failed checks of one case.
class Checks {
 public:
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (!failures_.empty()) failures_ += "; ";
    failures_ += what;
  }
  bool ok() const { return failures_.empty(); }
  const std::string& failures() const { return failures_; }

 private:
  std::string failures_;
};

std::string num(double x) { return format_number(x); }

bool oracle_matches(double analytic, double err) {
  return analytic == 0.0 || std::abs(analytic) < kOracleZeroTol ? err <= kOracleZeroTol
                                                                 : err <= kOracleRelTol * std::abs(analytic);
}

struct Case {
  std::string id;
  Example example;
  std::function<void(Report&, Checks&)> run;
};

Report base(Example e, const std::string& id) {
  Report r;
  r.example = e;
  r.parameters["case"] = id;
  return r;
}

void attach_oracle(Report& r, const fem::OracleReport& o) {
  r.bottom_analytic = o.analytic_bottom;
  r.bottom_oracle = o.discrete_bottom;
  r.abs_error = o.abs_error;
}

// interval ------------------------------------------------------------------

void interval_tq(Report& r, Checks& c) {
  const TqResult tq = build_q(interval::deficiency_model(interval::kDefaultSeriesTerms));
  const double q = interval::q_closed_form();
  r.parameters["terms"] = std::to_string(interval::kDefaultSeriesTerms);
  r.m_S = interval::kBottom;
  r.t_q = tq.t_q_scalar.value();
  r.bottom_analytic = interval::classify(0.0).bottom;
  c.require(std::abs(*r.t_q - interval::kTq) <= kTqTol, "t_q = " + num(*r.t_q));
  c.require(std::abs(q - 4.0) <= kQTol, "q[1-2x] = " + num(q));
}

void interval_secular(Report& r, Checks& c) {
  const double f = interval::secular_F(kPiSq);
  const double root = interval::secular_root(interval::kTq, 0);
  r.parameters["t"] = "12";
  r.m_S = interval::kBottom;
  r.t_q = interval::kTq;
  r.bottom_analytic = root;
  c.require(std::abs(f - 12.0) <= kSecularValueTol, "F(pi^2) = " + num(f));
  c.require(std::abs(root - kPiSq) <= kSecularRootTol, "root = " + num(root));
}

Case interval_classify(double b, std::size_t grid) {
  const std::string id = "interval.classify.b:" + num(b);
  return {id, Example::Interval, [b, grid](Report& r, Checks& c) {
            const interval::IntervalClassification cl = interval::classify(b);
            const fem::OracleReport o = fem::verify_interval(b, grid, 1);
            r.parameters["b"] = num(b);
            r.parameters["t"] = num(cl.t);
            r.parameters["grid"] = std::to_string(grid);
            r.m_S = interval::kBottom;
            r.t_q = interval::kTq;
            r.classification = cl.classification;
            attach_oracle(r, o);
            c.require((cl.classification == Classification::Top) == (b >= 0.0), "classification");
            c.require(oracle_matches(o.analytic_bottom, o.abs_error), "oracle error " + num(o.abs_error));
            c.require(o.discrete_bottom >= o.analytic_bottom - kUpperBoundSlack, "oracle below analytic");
            if (b < 0.0) c.require(o.discrete_bottom < kPiSq, "oracle bottom not below pi^2");
          }};
}

Case interval_named(interval::NamedExtension name, const std::string& label, std::size_t grid) {
  return {"interval.named." + label, Example::Interval, [name, label, grid](Report& r, Checks& c) {
            const fem::OracleReport o = fem::verify_named(name, grid, 1);
            r.parameters["bc"] = label;
            r.parameters["grid"] = std::to_string(grid);
            r.m_S = interval::kBottom;
            r.classification = o.analytic_bottom >= interval::kBottom ? Classification::Top
                                                                     : Classification::NotTop;
            if (name == interval::NamedExtension::Dirichlet) r.classification = Classification::Friedrichs;
            attach_oracle(r, o);
            c.require(oracle_matches(o.analytic_bottom, o.abs_error), "oracle error " + num(o.abs_error));
          }};
}

Case interval_convergence(interval::NamedExtension name, const std::string& label, std::size_t grid) {
  return {"interval.convergence." + label, Example::Interval, [name, label, grid](Report& r, Checks& c) {
            const std::size_t n = grid / 4;
            const fem::OracleReport o = fem::verify_named(name, n, 1);
            r.parameters["bc"] = label;
            r.parameters["grid"] = std::to_string(n);
            r.parameters["order"] = num(o.convergence_order);
            r.m_S = interval::kBottom;
            r.classification = name == interval::NamedExtension::Dirichlet ? Classification::Friedrichs
                                                                           : Classification::Top;
            attach_oracle(r, o);
            c.require(o.convergence_order >= kOrderLo && o.convergence_order <= kOrderHi,
                      "order " + num(o.convergence_order) + " between n=" + std::to_string(n) +
                          " and n=" + std::to_string(2 * n));
          }};
}

void interval_ordering(Report& r, Checks& c) {
  constexpr int kPoints = 50;
  double prev = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kPoints; ++i) {
    const double t = -50.0 + 350.0 * i / (kPoints - 1);
    const double bottom = interval::spectrum(t, interval::kBottom).bottom;
    c.require(bottom >= prev, "bottom decreases at t=" + num(t));
    c.require((bottom >= kPiSq) == (t >= interval::kTq), "top threshold at t=" + num(t));
    if (t > 0.0) {
      c.require(krein_bound(kPiSq, t) <= bottom, "Krein lower bound at t=" + num(t));
      c.require(bottom <= t, "upper bound m(T) at t=" + num(t));
    }
    prev = bottom;
  }
  r.parameters["points"] = std::to_string(kPoints);
  r.m_S = interval::kBottom;
  r.t_q = interval::kTq;
  r.bottom_analytic = interval::spectrum(interval::kTq, interval::kBottom).bottom;
}

void monotone_weighted_gram(const DeficiencyModel& model, Checks& c) {
  constexpr int kSamples = 20;
  const double m = model.m_s();
  double prev = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kSamples; ++i) {
    const double mu = m * (1.0 - std::pow(0.5, i));
    const double w = model.weighted_gram(mu)(0, 0);
    c.require(w >= prev, "weighted Gram decreases at mu=" + num(mu));
    prev = w;
  }
  c.require(model.weighted_gram(m)(0, 0) >= prev, "weighted Gram limit below samples");
}

// point ---------------------------------------------------------------------

void point_tq(Report& r, Checks& c) {
  const double g = point::gram_integral();
  const double w = point::weighted_gram_integral(point::kShift);
  const TqResult tq = build_q(point::deficiency_model());
  r.m_S = 0.0;
  r.t_q = tq.t_q_scalar.value();
  r.bottom_analytic = 0.0;
  c.require(std::abs(g - kPiSq) <= kIntegralTol, "||G1||^2 = " + num(g));
  c.require(std::abs(w - kPiSq) <= kIntegralTol, "weighted norm = " + num(w));
  c.require(std::abs(*r.t_q - point::kTq) <= kTqTol, "t_q = " + num(*r.t_q));
}

Case point_spectrum_case(double alpha) {
  return {"point.spectrum.alpha:" + num(alpha), Example::Point, [alpha](Report& r, Checks& c) {
            const point::PointSpectrum s = point::point_spectrum(Coupling::finite(alpha));
            const point::PointClassification cl = point::classify_point(Coupling::finite(alpha));
            r.parameters["alpha"] = num(alpha);
            r.m_S = 0.0;
            r.t_q = point::kTq;
            r.classification = cl.classification;
            r.bottom_analytic = cl.bottom;
            c.require(s.eigenvalue.has_value() == (alpha < 0.0), "eigenvalue presence");
            if (s.eigenvalue) {
              const double expected = -(4.0 * kPi * alpha) * (4.0 * kPi * alpha);
              c.require(std::abs(*s.eigenvalue - expected) <= 4e-16 * std::abs(expected),
                        "eigenvalue " + num(*s.eigenvalue));
            }
          }};
}

void point_classify_grid(Report& r, Checks& c) {
  const DeficiencyModel model = point::deficiency_model();
  const TqResult tq = build_q(model);
  constexpr int kPoints = 21;
  for (int i = 0; i < kPoints; ++i) {
    const double alpha = -1.0 + 2.0 * i / (kPoints - 1);
    const bool top = point::classify_point(Coupling::finite(alpha)).classification == Classification::Top;
    const bool kvb = is_top_extension(point::extension_parameter(Coupling::finite(alpha), model), tq);
    c.require(top == kvb, "disagreement at alpha=" + num(alpha));
  }
  r.parameters["points"] = std::to_string(kPoints);
  r.m_S = 0.0;
  r.t_q = tq.t_q_scalar;
}

// coulomb -------------------------------------------------------------------

Case coulomb_limit(double nu) {
  return {"coulomb.limit.nu:" + num(nu), Example::Coulomb, [nu](Report& r, Checks& c) {
            const double a = coulomb::alpha_threshold(nu);
            const double f = coulomb::script_F(nu, -1e-10);
            r.parameters["nu"] = num(nu);
            r.parameters["alpha"] = num(a);
            r.bottom_analytic = 0.0;
            c.require(std::abs(f - a) <= kCoulombLimitTol, "F(-1e-10) - alpha_nu = " + num(f - a));
          }};
}

Case coulomb_root(double nu, double offset) {
  return {"coulomb.root.nu:" + num(nu) + ".offset:" + num(offset), Example::Coulomb,
          [nu, offset](Report& r, Checks& c) {
            const double alpha = coulomb::alpha_threshold(nu) - offset;
            const coulomb::CoulombClassification cl = coulomb::classify_coulomb(nu, Coupling::finite(alpha));
            r.parameters["nu"] = num(nu);
            r.parameters["alpha"] = num(alpha);
            r.classification = cl.classification;
            r.bottom_analytic = cl.bottom;
            c.require(cl.eigenvalue.has_value(), "no eigenvalue below threshold");
            if (cl.eigenvalue) {
              const double res = std::abs(coulomb::script_F(nu, *cl.eigenvalue) - alpha);
              c.require(res <= kCoulombResidualTol, "residual " + num(res));
            }
            const std::size_t changes = coulomb::count_sign_changes(nu, alpha);
            c.require(changes == 1, std::to_string(changes) + " sign changes");
          }};
}

Case coulomb_none(double nu, double offset) {
  return {"coulomb.none.nu:" + num(nu) + ".offset:" + num(offset), Example::Coulomb,
          [nu, offset](Report& r, Checks& c) {
            const double alpha = coulomb::alpha_threshold(nu) + offset;
            const coulomb::CoulombClassification cl = coulomb::classify_coulomb(nu, Coupling::finite(alpha));
            r.parameters["nu"] = num(nu);
            r.parameters["alpha"] = num(alpha);
            r.classification = cl.classification;
            r.bottom_analytic = cl.bottom;
            c.require(!cl.eigenvalue.has_value(), "eigenvalue at or above threshold");
            c.require(cl.classification == Classification::Top, "classification");
          }};
}

void coulomb_digamma(Report& r, Checks& c) {
  const double err = std::abs(num::digamma(1.0) + num::kEulerGamma);
  r.parameters["z"] = "1";
  c.require(err <= kDigammaTol, "|psi(1) + gamma| = " + num(err));
}

// core ----------------------------------------------------------------------

void core_variational(Report& r, Checks& c) {
  constexpr int kMatrices = 200;
  constexpr std::size_t kSamples = 100000;
  constexpr std::size_t kDim = 5;
  std::mt19937_64 rng(20240601);
  std::normal_distribution<double> normal;
  for (int m = 0; m < kMatrices; ++m) {
    num::Matrix g(kDim, kDim);
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t j = 0; j < kDim; ++j) g(i, j) = normal(rng);
    num::SymmetricMatrix a = num::SymmetricMatrix::symmetrized(g.transpose() * g);
    for (std::size_t i = 0; i < kDim; ++i) a.add(i, i, 0.1);
    num::Vector h(kDim);
    for (double& x : h) x = normal(rng);
    const VariationalCheck v = variational_sup_check(a, h, kSamples, rng());
    const double cf = v.closed_form;
    c.require(std::abs(v.maximizer_value - cf) <= kVariationalTol * cf, "maximiser misses sup");
    c.require(v.best_random <= cf * (1.0 + kVariationalTol), "random trial exceeds sup");
  }
  r.parameters["matrices"] = std::to_string(kMatrices);
  r.parameters["samples"] = std::to_string(kSamples);
}

std::vector<Case> all_cases(std::size_t grid) {
  std::vector<Case> cases;
  cases.push_back({"interval.tq", Example::Interval, interval_tq});
  cases.push_back({"interval.secular", Example::Interval, interval_secular});
  for (double b : {-4.0, -1.0, -0.25, 0.0, 0.5, 5.0, 50.0}) cases.push_back(interval_classify(b, grid));
  using interval::NamedExtension;
  cases.push_back(interval_named(NamedExtension::Dirichlet, "dirichlet", grid));
  cases.push_back(interval_named(NamedExtension::Periodic, "periodic", grid));
  cases.push_back(interval_named(NamedExtension::AntiPeriodic, "antiperiodic", grid));
  cases.push_back(interval_convergence(NamedExtension::Dirichlet, "dirichlet", grid));
  cases.push_back(interval_convergence(NamedExtension::AntiPeriodic, "antiperiodic", grid));
  cases.push_back({"interval.ordering", Example::Interval, interval_ordering});
  cases.push_back({"interval.weighted_gram", Example::Interval, [](Report& r, Checks& c) {
                     r.m_S = interval::kBottom;
                     monotone_weighted_gram(interval::deficiency_model(), c);
                   }});

  cases.push_back({"point.tq", Example::Point, point_tq});
  for (double a : {-1.0, -1.0 / (4.0 * kPi), -1e-3, 0.0, 1.0}) cases.push_back(point_spectrum_case(a));
  cases.push_back({"point.classify", Example::Point, point_classify_grid});
  cases.push_back({"point.weighted_gram", Example::Point, [](Report&, Checks& c) {
                     monotone_weighted_gram(point::deficiency_model(), c);
                   }});

  for (double nu : {0.5, 1.0, 2.0, 5.0}) cases.push_back(coulomb_limit(nu));
  for (double nu : {0.5, 1.0, 2.0, 5.0, 10.0}) {
    cases.push_back(coulomb_root(nu, 0.1));
    cases.push_back(coulomb_root(nu, 10.0));
    cases.push_back(coulomb_none(nu, 0.0));
    cases.push_back(coulomb_none(nu, 1e6));
  }
  cases.push_back({"coulomb.digamma", Example::Coulomb, coulomb_digamma});

  cases.push_back({"core.variational", Example::Core, core_variational});
  return cases;
}

}  // namespace

std::vector<CaseResult> run_verification(const VerifyOptions& options) {
  std::vector<CaseResult> out;
  for (Case& k : all_cases(options.grid)) {
    if (!options.only.empty() && !options.only.contains(k.example)) continue;
    Report r = base(k.example, k.id);
    Checks checks;
    try {
      k.run(r, checks);
    } catch (const std::exception& e) {
      checks.require(false, e.what());
    }
    out.push_back({k.id, std::move(r), checks.ok(), checks.failures()});
  }
  std::sort(out.begin(), out.end(), [](const CaseResult& a, const CaseResult& b) { return a.id < b.id; });
  return out;
}

}  // namespace kvb::report
