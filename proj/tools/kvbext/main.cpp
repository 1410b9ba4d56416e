// kvbext: classification, spectra and verification of top extensions for the
// interval, point-interaction and radial Coulomb examples.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kvb/coulomb/radial_coulomb.hpp"
#include "kvb/error.hpp"
#include "kvb/extension/extension.hpp"
#include "kvb/interval/laplacian.hpp"
#include "kvb/point/point_interaction.hpp"
#include "kvb/report/report.hpp"
#include "kvb/report/verify.hpp"

namespace {

using kvb::Classification;
using kvb::Coupling;
using kvb::report::Example;
using kvb::report::format_number;
using kvb::report::Report;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

enum class Format { Table, Records };

struct Global {
  Format format = Format::Table;
  std::string out;
};

// Rejects NaN and ±inf in numeric flags.
const CLI::Validator kFinite(
    [](std::string& s) -> std::string {
      double v = 0.0;
      if (!CLI::detail::lexical_cast(s, v) || !std::isfinite(v)) return "value must be a finite number";
      return {};
    },
    "FINITE");

// Coupling constants take a finite number or "inf" for the Friedrichs extension.
const CLI::Validator kCoupling(
    [](std::string& s) -> std::string {
      if (s == "inf" || s == "+inf" || s == "infinity") return {};
      double v = 0.0;
      if (!CLI::detail::lexical_cast(s, v) || !std::isfinite(v)) return "value must be a finite number or inf";
      return {};
    },
    "REAL|inf");

Coupling parse_coupling(const std::string& s) {
  if (s == "inf" || s == "+inf" || s == "infinity") return Coupling::friedrichs();
  return Coupling::finite(std::stod(s));
}

// Key/value output shared by scalar commands.
void write_pairs(std::ostream& out, Format format, const std::vector<std::vector<std::string>>& rows) {
  if (format == Format::Records) {
    out << "quantity,value\n";
    for (const auto& r : rows) out << r[0] << ',' << r[1] << '\n';
  } else {
    kvb::report::write_columns(out, rows);
  }
}

void write_reports(std::ostream& out, Format format, const std::vector<Report>& reports) {
  if (format == Format::Records) {
    kvb::report::write_records(out, reports);
  } else {
    kvb::report::write_table(out, reports);
  }
}

std::string coupling_text(const Coupling& c) { return c.is_friedrichs() ? "inf" : format_number(c.value()); }

// ---- interval ----------------------------------------------------------------

struct IntervalFlags {
  double b = 0.0;
  double t = 0.0;
  double cutoff = 0.0;
  std::size_t terms = kvb::interval::kDefaultSeriesTerms;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t samples = 0;
};

int interval_classify(std::ostream& out, const Global& g, const IntervalFlags& f) {
  const auto cl = kvb::interval::classify(f.b);
  Report r;
  r.example = Example::Interval;
  r.parameters = {{"b", format_number(f.b)}, {"t", format_number(cl.t)}};
  r.m_S = kvb::interval::kBottom;
  r.t_q = kvb::interval::kTq;
  r.classification = cl.classification;
  r.bottom_analytic = cl.bottom;
  write_reports(out, g.format, {r});
  return kExitOk;
}

int interval_spectrum(std::ostream& out, const Global& g, const IntervalFlags& f) {
  const auto sp = kvb::interval::spectrum(f.t, f.cutoff);
  std::vector<std::pair<double, std::string>> all;
  for (double v : sp.sin_family) all.emplace_back(v, "sine");
  for (double v : sp.secular_roots) all.emplace_back(v, "secular");
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<std::vector<std::string>> rows{{"index", "lambda", "family"}};
  for (std::size_t i = 0; i < all.size(); ++i)
    rows.push_back({std::to_string(i), format_number(all[i].first), all[i].second});
  if (g.format == Format::Records) {
    for (const auto& row : rows) out << row[0] << ',' << row[1] << ',' << row[2] << '\n';
  } else {
    out << "t = " << format_number(f.t) << ", bottom = " << format_number(sp.bottom) << ", "
        << (f.t >= kvb::interval::kTq ? "Top" : "NotTop") << '\n';
    kvb::report::write_columns(out, rows);
  }
  return kExitOk;
}

int interval_tq(std::ostream& out, const Global& g, const IntervalFlags& f) {
  const auto model = kvb::interval::deficiency_model(f.terms);
  const kvb::TqResult tq = kvb::build_q(model);
  write_pairs(out, g.format,
              {{"t_q", format_number(*tq.t_q_scalar)},
               {"q[1-2x]", format_number(tq.q_matrix(0, 0))},
               {"terms", std::to_string(f.terms)},
               {"tail_bound", format_number(kvb::interval::resolvent_series(kvb::interval::kBottom, f.terms).tail_bound)}});
  return kExitOk;
}

int interval_secular(std::ostream& out, const IntervalFlags& f) {
  if (!(f.lo < f.hi)) throw CLI::ValidationError("--min/--max", "--min must be below --max");
  if (f.samples < 2) throw CLI::ValidationError("--samples", "at least two samples are needed");
  out << "lambda,F,interval\n";
  for (const auto& s : kvb::interval::secular_curve(f.lo, f.hi, f.samples))
    out << format_number(s.lambda) << ',' << format_number(s.f_value) << ',' << s.interval_index << '\n';
  return kExitOk;
}

// ---- point -------------------------------------------------------------------

struct PointFlags {
  std::string alpha = "0";
  double quad_tol = kvb::point::kDefaultQuadTol;
};

int point_classify(std::ostream& out, const Global& g, const PointFlags& f) {
  const Coupling alpha = parse_coupling(f.alpha);
  const auto cl = kvb::point::classify_point(alpha);
  Report r;
  r.example = Example::Point;
  r.parameters = {{"alpha", coupling_text(alpha)}};
  if (cl.t) r.parameters["t"] = format_number(*cl.t);
  r.m_S = 0.0;
  r.t_q = kvb::point::kTq;
  r.classification = alpha.is_friedrichs() ? Classification::Friedrichs : cl.classification;
  r.bottom_analytic = cl.bottom;
  write_reports(out, g.format, {r});
  return kExitOk;
}

int point_spectrum(std::ostream& out, const Global& g, const PointFlags& f) {
  const Coupling alpha = parse_coupling(f.alpha);
  const auto sp = kvb::point::point_spectrum(alpha);
  write_pairs(out, g.format,
              {{"alpha", coupling_text(alpha)},
               {"eigenvalue", sp.eigenvalue ? format_number(*sp.eigenvalue) : "none"},
               {"essential_min", format_number(sp.essential_min)},
               {"bottom", format_number(sp.bottom)}});
  return kExitOk;
}

int point_tq(std::ostream& out, const Global& g, const PointFlags& f) {
  const kvb::TqResult tq = kvb::build_q(kvb::point::deficiency_model(f.quad_tol));
  write_pairs(out, g.format,
              {{"t_q", format_number(*tq.t_q_scalar)},
               {"gram", format_number(kvb::point::gram_integral(f.quad_tol))},
               {"weighted_gram", format_number(kvb::point::weighted_gram_integral(kvb::point::kShift, f.quad_tol))},
               {"quad_tol", format_number(f.quad_tol)}});
  return kExitOk;
}

// ---- coulomb -----------------------------------------------------------------

struct CoulombFlags {
  double nu = 1.0;
  std::string alpha = "0";
};

int coulomb_threshold(std::ostream& out, const Global& g, const CoulombFlags& f) {
  write_pairs(out, g.format, {{"nu", format_number(f.nu)}, {"alpha_threshold", format_number(kvb::coulomb::alpha_threshold(f.nu))}});
  return kExitOk;
}

int coulomb_eigenvalue(std::ostream& out, const Global& g, const CoulombFlags& f) {
  const Coupling alpha = parse_coupling(f.alpha);
  std::optional<double> e;
  if (!alpha.is_friedrichs()) e = kvb::coulomb::coulomb_eigenvalue(f.nu, alpha.value());
  std::vector<std::vector<std::string>> rows{{"nu", format_number(f.nu)},
                                             {"alpha", coupling_text(alpha)},
                                             {"alpha_threshold", format_number(kvb::coulomb::alpha_threshold(f.nu))},
                                             {"eigenvalue", e ? format_number(*e) : "none"}};
  if (e) rows.push_back({"residual", format_number(std::abs(kvb::coulomb::script_F(f.nu, *e) - alpha.value()))});
  write_pairs(out, g.format, rows);
  return kExitOk;
}

int coulomb_classify(std::ostream& out, const Global& g, const CoulombFlags& f) {
  const Coupling alpha = parse_coupling(f.alpha);
  const auto cl = kvb::coulomb::classify_coulomb(f.nu, alpha);
  Report r;
  r.example = Example::Coulomb;
  r.parameters = {{"nu", format_number(f.nu)}, {"alpha", coupling_text(alpha)}};
  r.m_S = 0.0;
  r.classification = alpha.is_friedrichs() ? Classification::Friedrichs : cl.classification;
  r.bottom_analytic = cl.bottom;
  write_reports(out, g.format, {r});
  return kExitOk;
}

// ---- verify ------------------------------------------------------------------

struct VerifyFlags {
  std::size_t grid = 2000;
  std::vector<std::string> only;
};

int verify(std::ostream& out, const Global& g, const VerifyFlags& f) {
  kvb::report::VerifyOptions opt;
  opt.grid = f.grid;
  for (const auto& name : f.only) opt.only.insert(kvb::report::parse_example(name));
  const auto results = kvb::report::run_verification(opt);

  std::vector<Report> reports;
  // std::vector<bool> has no contiguous storage for a span.
  const auto status = std::make_unique<bool[]>(results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    reports.push_back(results[i].report);
    status[i] = results[i].passed;
  }
  if (g.format == Format::Records) {
    kvb::report::write_records(out, reports);
  } else {
    kvb::report::write_table(out, reports, std::span<const bool>(status.get(), results.size()));
  }

  std::size_t failed = 0;
  for (const auto& c : results) {
    if (c.passed) continue;
    ++failed;
    std::cerr << "FAIL " << c.id << ": " << c.diagnostic << '\n';
  }
  std::cerr << results.size() - failed << '/' << results.size() << " cases passed\n";
  return failed == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Top extensions of lower semi-bounded symmetric operators"};
  app.require_subcommand(1);
  app.fallthrough();

  Global global;
  app.add_option("--format", global.format, "table (default) or records")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"table", Format::Table}, {"records", Format::Records}}));
  app.add_option("--out", global.out, "write output to this file instead of stdout");

  IntervalFlags iflags;
  PointFlags pflags;
  CoulombFlags cflags;
  VerifyFlags vflags;
  std::function<int(std::ostream&)> action;

  auto* interval = app.add_subcommand("interval", "second derivative on [0, 1] with coupled boundary conditions");
  interval->require_subcommand(1);
  auto* i_classify = interval->add_subcommand("classify", "classify the extension with boundary parameter b");
  i_classify->add_option("--b", iflags.b, "boundary parameter")->required()->check(kFinite);
  i_classify->callback([&] { action = [&](std::ostream& o) { return interval_classify(o, global, iflags); }; });
  auto* i_spectrum = interval->add_subcommand("spectrum", "eigenvalues up to a cutoff");
  i_spectrum->add_option("--t", iflags.t, "extension parameter t")->required()->check(kFinite);
  i_spectrum->add_option("--cutoff", iflags.cutoff, "largest eigenvalue to list")->required()->check(kFinite);
  i_spectrum->callback([&] { action = [&](std::ostream& o) { return interval_spectrum(o, global, iflags); }; });
  auto* i_tq = interval->add_subcommand("tq", "least top parameter t_q");
  i_tq->add_option("--terms", iflags.terms, "eigenfunction series terms")->capture_default_str()->check(CLI::PositiveNumber);
  i_tq->callback([&] { action = [&](std::ostream& o) { return interval_tq(o, global, iflags); }; });
  auto* i_secular = interval->add_subcommand("secular", "samples of F(lambda) as CSV");
  i_secular->add_option("--min", iflags.lo, "lower end of the lambda range")->required()->check(kFinite);
  i_secular->add_option("--max", iflags.hi, "upper end of the lambda range")->required()->check(kFinite);
  i_secular->add_option("--samples", iflags.samples, "number of grid points")->required();
  i_secular->callback([&] { action = [&](std::ostream& o) { return interval_secular(o, iflags); }; });

  auto* point = app.add_subcommand("point", "point interaction in three dimensions");
  point->require_subcommand(1);
  auto* p_classify = point->add_subcommand("classify", "classify the extension with coupling alpha");
  p_classify->add_option("--alpha", pflags.alpha, "coupling constant, or inf")->required()->check(kCoupling);
  p_classify->callback([&] { action = [&](std::ostream& o) { return point_classify(o, global, pflags); }; });
  auto* p_spectrum = point->add_subcommand("spectrum", "negative eigenvalue and bottom");
  p_spectrum->add_option("--alpha", pflags.alpha, "coupling constant, or inf")->required()->check(kCoupling);
  p_spectrum->callback([&] { action = [&](std::ostream& o) { return point_spectrum(o, global, pflags); }; });
  auto* p_tq = point->add_subcommand("tq", "least top parameter t_q");
  p_tq->add_option("--quad-tol", pflags.quad_tol, "quadrature tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  p_tq->callback([&] { action = [&](std::ostream& o) { return point_tq(o, global, pflags); }; });

  auto* coulomb = app.add_subcommand("coulomb", "radial Coulomb operator in the s-wave");
  coulomb->require_subcommand(1);
  auto* c_threshold = coulomb->add_subcommand("threshold", "coupling threshold alpha_nu");
  c_threshold->add_option("--nu", cflags.nu, "Coulomb strength, > 0")->required()->check(kFinite & CLI::PositiveNumber);
  c_threshold->callback([&] { action = [&](std::ostream& o) { return coulomb_threshold(o, global, cflags); }; });
  auto* c_eigen = coulomb->add_subcommand("eigenvalue", "negative eigenvalue for coupling alpha");
  c_eigen->add_option("--nu", cflags.nu, "Coulomb strength, > 0")->required()->check(kFinite & CLI::PositiveNumber);
  c_eigen->add_option("--alpha", cflags.alpha, "coupling constant, or inf")->required()->check(kCoupling);
  c_eigen->callback([&] { action = [&](std::ostream& o) { return coulomb_eigenvalue(o, global, cflags); }; });
  auto* c_classify = coulomb->add_subcommand("classify", "classify the extension with coupling alpha");
  c_classify->add_option("--nu", cflags.nu, "Coulomb strength, > 0")->required()->check(kFinite & CLI::PositiveNumber);
  c_classify->add_option("--alpha", cflags.alpha, "coupling constant, or inf")->required()->check(kCoupling);
  c_classify->callback([&] { action = [&](std::ostream& o) { return coulomb_classify(o, global, cflags); }; });

  auto* v = app.add_subcommand("verify", "run the verification matrix");
  v->add_option("--grid", vflags.grid, "finite-element cells")->capture_default_str()->check(CLI::Range(std::size_t{8}, std::size_t{1} << 24));
  v->add_option("--only", vflags.only, "restrict to examples: interval, point, coulomb, core")
      ->delimiter(',')
      ->check(CLI::IsMember({"interval", "point", "coulomb", "core"}));
  v->callback([&] { action = [&](std::ostream& o) { return verify(o, global, vflags); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::ofstream file;
    if (!global.out.empty()) {
      file.open(global.out);
      if (!file) {
        std::cerr << "cannot open " << global.out << " for writing\n";
        return kExitFailure;
      }
    }
    std::ostream& out = global.out.empty() ? std::cout : file;
    return action(out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const kvb::Error& e) {
    std::cerr << e.what() << '\n';
    return kExitFailure;
  }
}
