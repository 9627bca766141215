#include "graphflow/problems.hpp"

#include <cmath>
#include <numbers>

#include "graphflow/errors.hpp"
#include "graphflow/geometry.hpp"

namespace graphflow {

namespace {

// Radial profile phi(r) described through r^2 so that nothing is singular at
// the origin: dphi_over_r = phi'(r)/r and kappa = (phi'' - phi'/r)/r^2.
struct RadialProfile {
  double (*phi)(double r2);
  double (*dphi_over_r)(double r2);
  double (*kappa)(double r2);

  double ddphi(double r2) const { return dphi_over_r(r2) + kappa(r2) * r2; }
};

struct Amplitude {
  double (*value)(double t);
  double (*derivative)(double t);
};

SmoothField radial_field(RadialProfile p, Amplitude a) {
  SmoothField f;
  f.value = [=](const Vec2& x, double t) { return a.value(t) * p.phi(x.squaredNorm()); };
  f.time_derivative = [=](const Vec2& x, double t) { return a.derivative(t) * p.phi(x.squaredNorm()); };
  f.gradient = [=](const Vec2& x, double t) -> Vec2 { return a.value(t) * p.dphi_over_r(x.squaredNorm()) * x; };
  f.hessian = [=](const Vec2& x, double t) -> Mat2 {
    const double r2 = x.squaredNorm();
    return a.value(t) * (p.dphi_over_r(r2) * Mat2::Identity() + p.kappa(r2) * (x * x.transpose()));
  };
  return f;
}

// u = 5 sin t (1 - r^2)
constexpr RadialProfile kExample1Height{
    [](double r2) { return 1.0 - r2; },
    [](double) { return -2.0; },
    [](double) { return 0.0; },
};

// u = 5 sin t (1 + (1 - r^2)^2)
constexpr RadialProfile kExample2Height{
    [](double r2) { return 1.0 + (1.0 - r2) * (1.0 - r2); },
    [](double r2) { return -4.0 * (1.0 - r2); },
    [](double) { return 8.0; },
};

// w = e^{-t} (1 + r^2)
constexpr RadialProfile kConcentration{
    [](double r2) { return 1.0 + r2; },
    [](double) { return 2.0; },
    [](double) { return 0.0; },
};

constexpr Amplitude kHeightAmplitude{[](double t) { return 5.0 * std::sin(t); },
                                     [](double t) { return 5.0 * std::cos(t); }};
constexpr Amplitude kDecay{[](double t) { return std::exp(-t); }, [](double t) { return -std::exp(-t); }};

double square(double s) { return s * s; }

GDecomposition g_velocity_times_w() {
  // g(V, w) = V w
  return {1.0, -1.0, [](double s) { return s; }, [](double) { return 0.0; }};
}

GDecomposition g_abs_velocity_times_w() {
  // g(V, w) = |V| w
  return {1.0, 1.0, [](double s) { return s; }, [](double) { return 0.0; }};
}

// Hand-derived radial forcings for u = A(t) phi(r), w = B(t) psi(r) with
// f(w) = w^2 and g(V, w) = V w. With s = A phi'/r (grad u = s x) and
// Q = sqrt(1 + s^2 r^2):
//   div(grad u / Q) = A phi''/Q^3 + A (phi'/r)/Q
//   div(E grad w)   = -(grad w . grad u) div(grad u/Q) + E : Hess w
ExactSolution radial_manufactured(RadialProfile height, RadialProfile conc) {
  ExactSolution ex;
  ex.u = radial_field(height, kHeightAmplitude);
  ex.w = radial_field(conc, kDecay);

  struct Terms {
    double q, u_t, w, w_t, d, grad_dot, e_hess_w;
  };
  auto terms = [=](const Vec2& x, double t) {
    const double r2 = x.squaredNorm();
    const double a = kHeightAmplitude.value(t);
    const double b = kDecay.value(t);
    const double s = a * height.dphi_over_r(r2);
    const double q = std::sqrt(1.0 + s * s * r2);
    Terms tm;
    tm.q = q;
    tm.u_t = kHeightAmplitude.derivative(t) * height.phi(r2);
    tm.w = b * conc.phi(r2);
    tm.w_t = kDecay.derivative(t) * conc.phi(r2);
    tm.d = a * height.ddphi(r2) / (q * q * q) + a * height.dphi_over_r(r2) / q;
    tm.grad_dot = b * conc.dphi_over_r(r2) * s * r2;
    tm.e_hess_w = b * (q * (2.0 * conc.dphi_over_r(r2) + conc.kappa(r2) * r2) -
                       s * s * r2 * conc.ddphi(r2) / q);
    return tm;
  };

  ex.forcing_u = [=](const Vec2& x, double t) {
    const Terms tm = terms(x, t);
    return tm.u_t / tm.q - tm.d - square(tm.w);
  };
  ex.forcing_w = [=](const Vec2& x, double t) {
    const Terms tm = terms(x, t);
    const double velocity = tm.u_t / tm.q;
    const double diffusion = (-tm.grad_dot * tm.d + tm.e_hess_w) / tm.q;
    const double transport = velocity * (tm.grad_dot / tm.q + tm.w * tm.d);
    return tm.w_t - diffusion - transport - velocity * tm.w;
  };
  return ex;
}

ProblemSpec manufactured_example(std::string key, RadialProfile height) {
  ProblemSpec p;
  p.key = std::move(key);
  p.domain = DomainKind::Disk;
  p.final_time = 0.1;
  p.f = [](double w) { return w * w; };
  p.g = g_velocity_times_w();
  p.exact = radial_manufactured(height, kConcentration);
  const ExactSolution ex = *p.exact;
  p.u0 = {[ex](const Vec2& x) { return ex.u.value(x, 0.0); }, [ex](const Vec2& x) { return ex.u.gradient(x, 0.0); }};
  p.w0 = {[ex](const Vec2& x) { return ex.w.value(x, 0.0); }, [ex](const Vec2& x) { return ex.w.gradient(x, 0.0); }};
  p.w_bc = {BoundaryTag::Outer, [](const Vec2&, double t) { return 2.0 * std::exp(-t); }};
  return p;
}

InitialProfile constant_profile(double c) {
  return {[c](const Vec2&) { return c; }, [](const Vec2&) -> Vec2 { return Vec2::Zero(); }};
}

ProblemSpec digm_common(std::string key, double final_time) {
  ProblemSpec p;
  p.key = std::move(key);
  p.domain = DomainKind::Rectangle;
  p.final_time = final_time;
  p.f = [](double w) { return w * w; };
  p.g = g_abs_velocity_times_w();
  p.w0 = constant_profile(0.0);
  p.graph_bc = {GraphBoundaryKind::NeumannZero, {}, {}};
  p.w_bc = {BoundaryTag::LeftRight, [](const Vec2&, double) { return 1.0; }};
  return p;
}

}  // namespace

Ic2Variant parse_ic2_variant(std::string_view name) {
  if (name == "literal") return Ic2Variant::Literal;
  if (name == "continuous") return Ic2Variant::Continuous;
  throw ArgumentError("unknown ic2 variant '" + std::string(name) + "' (expected literal|continuous)");
}

ProblemSpec example1() {
  ProblemSpec p = manufactured_example("example1", kExample1Height);
  const SpaceTimeFn u = p.exact->u.value;
  p.graph_bc = {GraphBoundaryKind::Dirichlet, {}, u};
  return p;
}

ProblemSpec example2() {
  ProblemSpec p = manufactured_example("example2", kExample2Height);
  p.graph_bc = {GraphBoundaryKind::NeumannZero, {}, {}};
  return p;
}

ProblemSpec contact_angle_problem() {
  ProblemSpec p;
  p.key = "contact-angle";
  p.domain = DomainKind::Disk;
  p.final_time = 0.75;
  p.f = [](double w) { return w; };
  p.g = g_abs_velocity_times_w();
  p.u0 = constant_profile(0.0);
  p.w0 = {[](const Vec2& x) { return 0.5 * (1.0 + x.squaredNorm()); }, [](const Vec2& x) -> Vec2 { return x; }};
  p.graph_bc = {GraphBoundaryKind::ContactAngle,
                [](double t) { return std::cos(2.0 * std::numbers::pi * t - std::numbers::pi / 2.0); },
                {}};
  p.w_bc = {BoundaryTag::Outer, [](const Vec2&, double) { return 1.0; }};
  return p;
}

ProblemSpec digm_planar() {
  ProblemSpec p = digm_common("digm-planar", 0.3);
  p.u0 = constant_profile(1.0);
  return p;
}

ProblemSpec digm_wave(Ic2Variant variant) {
  ProblemSpec p = digm_common("digm-wave", 0.6);
  constexpr double eps = kIc2Epsilon;
  const double offset = variant == Ic2Variant::Continuous ? 1.0 : 0.0;
  const double edge = std::numbers::pi * eps / 2.0;
  p.u0.value = [=](const Vec2& x) {
    if (x.x() > edge) return 1.0 + eps;
    if (x.x() < -edge) return 1.0 - eps;
    return offset + eps * std::sin(x.x() / eps);
  };
  p.u0.gradient = [=](const Vec2& x) -> Vec2 {
    if (std::abs(x.x()) > edge) return Vec2::Zero();
    return Vec2(std::cos(x.x() / eps), 0.0);
  };
  return p;
}

const std::vector<std::string>& problem_keys() {
  static const std::vector<std::string> keys{"example1", "example2", "contact-angle", "digm-planar", "digm-wave"};
  return keys;
}

ProblemSpec make_problem(std::string_view key, Ic2Variant variant) {
  if (key == "example1") return example1();
  if (key == "example2") return example2();
  if (key == "contact-angle") return contact_angle_problem();
  if (key == "digm-planar") return digm_planar();
  if (key == "digm-wave") return digm_wave(variant);
  throw ArgumentError("unknown problem '" + std::string(key) + "'");
}

Mesh make_mesh(const ProblemSpec& problem, int level) {
  if (problem.domain == DomainKind::Disk) return generate_disk_mesh(level);
  if (level < 0) throw ArgumentError("mesh level must be nonnegative");
  if (level > kMaxDiskLevel) throw ResourceError("mesh level " + std::to_string(level) + " exceeds guard");
  const double cells = 8.0 * std::pow(2.0, level);
  return generate_rect_mesh({-2.0, 2.0}, {-2.0, 2.0}, 4.0 / cells);
}

StrongResiduals forcing_residual(const ProblemSpec& problem, const Vec2& x, double t) {
  if (!problem.exact) throw ArgumentError("problem '" + problem.key + "' has no exact solution");
  const ExactSolution& ex = *problem.exact;

  const Vec2 p = ex.u.gradient(x, t);
  const Mat2 hu = ex.u.hessian(x, t);
  const double q = q_of(p);
  const double u_t = ex.u.time_derivative(x, t);
  const double w = ex.w.value(x, t);
  const Vec2 gw = ex.w.gradient(x, t);
  const Mat2 hw = ex.w.hessian(x, t);

  // div(grad u / Q) = tr(H)/Q - p.Hp/Q^3
  const double mean_curv = hu.trace() / q - p.dot(hu * p) / (q * q * q);
  // div(E(grad u) grad w), differentiating E = Q I - p p^T / Q entrywise
  const Mat2 e = e_matrix(p);
  const double div_e_grad_w = gw.dot(p) * (-mean_curv) + (e.cwiseProduct(hw)).sum();
  const double div_w_flux = gw.dot(p) / q + w * mean_curv;
  const double velocity = u_t / q;

  StrongResiduals r;
  r.graph = velocity - mean_curv - problem.f(w) - ex.forcing_u(x, t);
  r.surface = ex.w.time_derivative(x, t) - div_e_grad_w / q - velocity * div_w_flux - problem.g(velocity, w) -
              ex.forcing_w(x, t);
  return r;
}

}  // namespace graphflow
