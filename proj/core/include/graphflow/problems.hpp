#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphflow/mesh.hpp"

namespace graphflow {

using SpaceTimeFn = std::function<double(const Vec2&, double)>;
using SpaceTimeGrad = std::function<Vec2(const Vec2&, double)>;
using SpaceTimeHess = std::function<Mat2(const Vec2&, double)>;

/// A smooth function of (x, t) with its closed-form derivatives.
struct SmoothField {
  SpaceTimeFn value;
  SpaceTimeFn time_derivative;
  SpaceTimeGrad gradient;
  SpaceTimeHess hessian;
};

/// Manufactured solution: (u, w) solve the strong equations with the extra
/// right-hand sides forcing_u and forcing_w,
///
///   u_t/Q - div(grad u / Q) - f(w) = forcing_u,
///   w_t - (1/Q) div(E(grad u) grad w) - (u_t/Q) div(w grad u / Q) - g(V, w) = forcing_w.
struct ExactSolution {
  SmoothField u;
  SmoothField w;
  SpaceTimeFn forcing_u;
  SpaceTimeFn forcing_w;
};

/// g(r, s) = alpha(r) beta(s) + beta_tilde(s) with the positively homogeneous
/// alpha(r) = alpha_pos |r| for r >= 0 and alpha_neg |r| for r < 0.
struct GDecomposition {
  double alpha_pos = 0.0;
  double alpha_neg = 0.0;
  std::function<double(double)> beta;
  std::function<double(double)> beta_tilde;

  double alpha(double r) const { return r >= 0.0 ? alpha_pos * r : -alpha_neg * r; }
  double operator()(double velocity, double w) const {
    return alpha(velocity) * beta(w) + beta_tilde(w);
  }
};

enum class GraphBoundaryKind { NeumannZero, ContactAngle, Dirichlet };

struct GraphBoundary {
  GraphBoundaryKind kind = GraphBoundaryKind::NeumannZero;
  std::function<double(double)> cos_angle;  // ContactAngle: cos(alpha(t))
  SpaceTimeFn dirichlet_value;              // Dirichlet: u on the whole boundary
};

/// Dirichlet data for w on edges tagged `dirichlet_tag`; natural elsewhere.
struct SurfaceBoundary {
  BoundaryTag dirichlet_tag = BoundaryTag::Outer;
  SpaceTimeFn value;
};

struct InitialProfile {
  std::function<double(const Vec2&)> value;
  std::function<Vec2(const Vec2&)> gradient;  // almost-everywhere gradient
};

struct ProblemSpec {
  std::string key;
  DomainKind domain = DomainKind::Disk;
  double final_time = 0.0;
  std::function<double(double)> f;
  GDecomposition g;
  InitialProfile u0;
  InitialProfile w0;
  GraphBoundary graph_bc;
  SurfaceBoundary w_bc;
  std::optional<ExactSolution> exact;
};

/// Which middle branch the wavy grain-boundary profile uses.
enum class Ic2Variant {
  Literal,     // eps sin(x1/eps), discontinuous at |x1| = pi eps / 2
  Continuous,  // 1 + eps sin(x1/eps)
};

Ic2Variant parse_ic2_variant(std::string_view name);

ProblemSpec example1();
ProblemSpec example2();
ProblemSpec contact_angle_problem();
ProblemSpec digm_planar();
ProblemSpec digm_wave(Ic2Variant variant = Ic2Variant::Literal);

/// Known keys: example1, example2, contact-angle, digm-planar, digm-wave.
ProblemSpec make_problem(std::string_view key, Ic2Variant variant = Ic2Variant::Literal);
const std::vector<std::string>& problem_keys();

/// Disk meshes use generate_disk_mesh(level); the DIGM square uses
/// 8 * 2^level criss-cross cells per side.
Mesh make_mesh(const ProblemSpec& problem, int level);

/// Width parameter of the wavy DIGM profile.
inline constexpr double kIc2Epsilon = 0.4;

struct StrongResiduals {
  double graph = 0.0;
  double surface = 0.0;
};

/// Strong-form residuals of the exact solution with its forcings, from the
/// general (Cartesian) derivative formulas. Both vanish for a consistent
/// manufactured solution. Throws ArgumentError without exact data.
StrongResiduals forcing_residual(const ProblemSpec& problem, const Vec2& x, double t);

}  // namespace graphflow
