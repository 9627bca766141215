#include "graphflow/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "graphflow/errors.hpp"
#include "text_format.hpp"

namespace graphflow {

ErrorObserver::ErrorObserver(ExactSolution exact, double tau) : exact_(std::move(exact)), tau_(tau) {
  if (!(tau > 0.0)) throw ArgumentError("error observer needs a positive time step");
}

void ErrorObserver::observe(const State& state) {
  const double t = state.t;
  const auto eu = squared_errors(
      state.u, [&](const Vec2& x) { return exact_.u.value(x, t); },
      [&](const Vec2& x) { return exact_.u.gradient(x, t); });
  const auto ew = squared_errors(
      state.w, [&](const Vec2& x) { return exact_.w.value(x, t); },
      [&](const Vec2& x) { return exact_.w.gradient(x, t); });

  errors_[0] = std::max(errors_[0], ew.l2);
  if (state.m >= 1) errors_[1] += tau_ * ew.h1;
  errors_[2] = std::max(errors_[2], eu.l2);
  errors_[3] = std::max(errors_[3], eu.h1);

  if (previous_) {
    const FeSpace& space = state.u.space();
    const double t0 = previous_->t;
    double diff = 0.0;
    for (int e = 0; e < space.num_elements(); ++e) {
      for (int q = 0; q < space.points_per_element(); ++q) {
        const QuadraturePoint qp = space.quadrature_point(e, q);
        const double d = (exact_.u.value(qp.x, t) - exact_.u.value(qp.x, t0)) -
                         (state.u.value(qp) - previous_->u.value(qp));
        diff += qp.jxw * d * d;
      }
    }
    errors_[4] += tau_ * diff / (tau_ * tau_);
  }
  previous_ = state;
  ++levels_seen_;
}

std::optional<double> eoc(double h_coarse, double e_coarse, double h_fine, double e_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0) || !(h_coarse > h_fine) || !(h_fine > 0.0)) return std::nullopt;
  return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

void fill_eoc(std::vector<ErrorReport>& reports) {
  for (std::size_t k = 0; k < reports.size(); ++k) {
    reports[k].eoc.fill(std::nullopt);
    if (k == 0 || !reports[k].ok() || !reports[k - 1].ok()) continue;
    for (int i = 0; i < 5; ++i) {
      reports[k].eoc[i] = eoc(reports[k - 1].h, reports[k - 1].errors[i], reports[k].h, reports[k].errors[i]);
    }
  }
}

std::vector<ErrorReport> convergence_study(std::string_view problem_key, const std::vector<int>& levels,
                                           const StudyOptions& options,
                                           const std::function<void(const ErrorReport&)>& on_level) {
  const ProblemSpec problem = make_problem(problem_key, options.ic2);
  if (!problem.exact) throw ArgumentError("problem '" + problem.key + "' has no exact solution to compare against");

  std::vector<ErrorReport> reports;
  for (int level : levels) {
    ErrorReport report;
    report.level = level;
    try {
      auto mesh = std::make_shared<const Mesh>(make_mesh(problem, level));
      auto space = std::make_shared<const FeSpace>(mesh);
      report.h = mesh_size(*mesh);
      report.tau = options.fixed_tau.value_or(report.h * report.h);

      SchemeConfig config;
      config.tau = report.tau;
      config.final_time = options.final_time.value_or(problem.final_time);
      config.solver_tolerance = options.solver_tolerance;

      ErrorObserver observer(*problem.exact, config.tau);
      run(problem, space, config, {observer.observer()});
      report.errors = observer.errors();
    } catch (const std::exception& err) {
      report.failure = err.what();
    }
    reports.push_back(report);
    fill_eoc(reports);
    if (on_level) on_level(reports.back());
  }
  return reports;
}

std::string format_csv(const std::vector<ErrorReport>& reports) {
  std::ostringstream out;
  out << "level,h,tau,E1,E2,E3,E4,E5,eoc1,eoc2,eoc3,eoc4,eoc5\n";
  for (const auto& r : reports) {
    out << r.level << ',' << format_double(r.h, 6) << ',' << format_double(r.tau, 6);
    for (double e : r.errors) {
      out << ',';
      if (r.ok()) out << format_double(e, 6);
    }
    for (const auto& v : r.eoc) {
      out << ',';
      if (v) out << format_double(*v, 6);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace graphflow
