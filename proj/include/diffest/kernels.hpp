#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <ostream>
#include <span>
#include <variant>
#include <vector>

#include "diffest/common.hpp"
#include "diffest/errors.hpp"
#include "diffest/quadrature.hpp"

namespace diffest::kernels {

enum class Sign { attractive, repulsive };

inline double sign_factor(Sign s) { return s == Sign::repulsive ? 1.0 : -1.0; }

/// Singular Newtonian interaction force
///     F(x) = s * c_star * x / |x|^d,   c_star = Gamma(d/2) / (2 pi^{d/2}),
/// with s = +1 repulsive, s = -1 attractive. Undefined at the origin.
class NewtonianKernel {
 public:
  NewtonianKernel(int dim, Sign sign) : dim_(dim), sign_(sign) {
    if (dim < 2) throw ConfigError("Newtonian kernel requires dimension >= 2");
    c_star_ = std::tgamma(0.5 * dim) / (2.0 * std::pow(kPi, 0.5 * dim));
  }

  int dim() const { return dim_; }
  Sign sign() const { return sign_; }
  double c_star() const { return c_star_; }

  /// |F(x)| at radius r > 0.
  double magnitude(double r) const { return c_star_ / std::pow(r, dim_ - 1); }

  void force(std::span<const double> x, std::span<double> out) const {
    const double r = norm2(x);
    if (r == 0.0) {
      throw DomainError("Newtonian force undefined at origin");
    }
    const double factor = sign_factor(sign_) * c_star_ / std::pow(r, dim_);
    for (int c = 0; c < dim_; ++c) out[c] = factor * x[c];
  }

 private:
  int dim_;
  Sign sign_;
  double c_star_;
};

/// Radial C0-infinity bump, unit mass in R^d:
///     psi(x) = c * exp(-1 / (1 - (|x|/a)^2))  for |x| < a, 0 otherwise,
/// with the normalization c computed by quadrature. The enclosed-mass map
/// M(r) = integral of psi over the ball of radius r is tabulated once
/// (2048 nodes, cubic Hermite with exact nodal derivatives) because the
/// regularized force needs it in the innermost simulation loop.
class Mollifier {
 public:
  explicit Mollifier(int dim, double support_radius = 1.0)
      : dim_(dim), support_(support_radius) {
    if (dim < 1) throw ConfigError("mollifier dimension must be >= 1");
    if (!(support_radius > 0.0 && support_radius <= 1.0)) {
      throw ConfigError("mollifier support radius must lie in (0, 1]");
    }
    const double area = unit_sphere_area(dim_);
    AdaptiveIntegrator quad(16);
    const double raw = quad.integrate([this](double r) { return raw_radial(r); }, 0.0,
                                      support_, 1e-14);
    norm_const_ = 1.0 / (area * raw);
    build_mass_table(area);
  }

  int dim() const { return dim_; }
  double support_radius() const { return support_; }

  /// psi as a function of radius; zero for r >= support.
  double profile(double r) const { return norm_const_ * bump(r / support_); }

  double profile_at(std::span<const double> x) const { return profile(norm2(x)); }

  /// M(r): total psi-mass inside radius r. Exactly 1 for r >= support.
  double enclosed_mass(double r) const {
    if (r <= 0.0) return 0.0;
    if (r >= support_) return 1.0;
    const double pos = r / support_ * static_cast<double>(table_m_.size() - 1);
    const auto i = std::min(static_cast<std::size_t>(pos), table_m_.size() - 2);
    const double h = support_ / static_cast<double>(table_m_.size() - 1);
    const double t = pos - static_cast<double>(i);
    const double t2 = t * t, t3 = t2 * t;
    const double v = (2 * t3 - 3 * t2 + 1) * table_m_[i] + (t3 - 2 * t2 + t) * h * table_dm_[i] +
                     (-2 * t3 + 3 * t2) * table_m_[i + 1] + (t3 - t2) * h * table_dm_[i + 1];
    return std::clamp(v, 0.0, 1.0);
  }

  void dump_mass_table_csv(std::ostream& os) const {
    os << "r,M(r)\n";
    const double h = support_ / static_cast<double>(table_m_.size() - 1);
    char line[64];
    for (std::size_t i = 0; i < table_m_.size(); ++i) {
      std::snprintf(line, sizeof(line), "%.17g,%.17g\n", static_cast<double>(i) * h,
                    table_m_[i]);
      os << line;
    }
  }

 private:
  static double bump(double u) {
    if (u >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - u * u));
  }

  double raw_radial(double r) const { return bump(r / support_) * std::pow(r, dim_ - 1); }

  void build_mass_table(double area) {
    constexpr std::size_t kSamples = 2048;
    table_m_.resize(kSamples);
    table_dm_.resize(kSamples);
    const double h = support_ / static_cast<double>(kSamples - 1);
    const GaussLegendre panel(16);
    table_m_[0] = 0.0;
    for (std::size_t i = 1; i < kSamples; ++i) {
      const double a = static_cast<double>(i - 1) * h;
      const double b = static_cast<double>(i) * h;
      table_m_[i] = table_m_[i - 1] +
                    area * norm_const_ *
                        panel.integrate([this](double r) { return raw_radial(r); }, a, b);
    }
    // Rescale so the table ends at exactly 1; the residual is quadrature dust.
    const double total = table_m_.back();
    for (auto& v : table_m_) v /= total;
    for (std::size_t i = 0; i < kSamples; ++i) {
      const double r = static_cast<double>(i) * h;
      table_dm_[i] = area * norm_const_ * raw_radial(r) / total;
    }
  }

  int dim_;
  double support_;
  double norm_const_ = 1.0;
  std::vector<double> table_m_;
  std::vector<double> table_dm_;
};

/// Mollified Newtonian force F^N = F * psi_N with psi_N(x) = N^{d delta} psi(N^delta x).
/// Because F is the Newtonian field and psi_N is radial, the convolution
/// collapses to the enclosed-mass identity (shell theorem)
///     F^N(x) = s * c_star * x / |x|^d * M(N^delta |x|),
/// so one table lookup replaces a d-dimensional quadrature per evaluation.
class RegularizedKernel {
 public:
  RegularizedKernel(NewtonianKernel base, std::shared_ptr<const Mollifier> mollifier,
                    std::int64_t n_particles, double cutoff_index)
      : base_(base),
        mollifier_(std::move(mollifier)),
        n_particles_(n_particles),
        delta_(cutoff_index) {
    if (!mollifier_ || mollifier_->dim() != base_.dim()) {
      throw ConfigError("mollifier dimension must match kernel dimension");
    }
    if (n_particles_ < 2) throw ConfigError("regularized kernel requires N >= 2");
    const double d = base_.dim();
    if (!(delta_ > 0.0 && delta_ <= 1.0 / d)) {
      throw ConfigError("cutoff index must lie in (0, 1/d]");
    }
    scale_ = std::pow(static_cast<double>(n_particles_), delta_);
    cutoff_ = 1.0 / scale_;
  }

  int dim() const { return base_.dim(); }
  const NewtonianKernel& base() const { return base_; }
  const Mollifier& mollifier() const { return *mollifier_; }
  std::int64_t n_particles() const { return n_particles_; }
  double cutoff_index() const { return delta_; }

  /// N^{-delta}: beyond this radius F^N coincides with F.
  double cutoff_radius() const { return cutoff_; }

  /// psi_N-mass enclosed in the ball of radius r.
  double enclosed_mass(double r) const { return mollifier_->enclosed_mass(r * scale_); }

  /// |F^N(x)| at radius r >= 0.
  double magnitude(double r) const {
    if (r <= 0.0) return 0.0;
    if (r >= cutoff_) return base_.magnitude(r);
    return base_.c_star() * enclosed_mass(r) / std::pow(r, dim() - 1);
  }

  void force(std::span<const double> x, std::span<double> out) const {
    const double r = norm2(x);
    if (r >= cutoff_) {
      base_.force(x, out);
      return;
    }
    // M(N^delta r) ~ r^d as r -> 0, so the amplitude vanishes linearly; below
    // the guard the ratio is numerically 0/0 and the limit value 0 is used.
    if (r < 1e-8 * cutoff_) {
      for (int c = 0; c < dim(); ++c) out[c] = 0.0;
      return;
    }
    const double amplitude = base_.c_star() * enclosed_mass(r) / std::pow(r, dim());
    const double factor = sign_factor(base_.sign()) * amplitude;
    for (int c = 0; c < dim(); ++c) out[c] = factor * x[c];
  }

 private:
  NewtonianKernel base_;
  std::shared_ptr<const Mollifier> mollifier_;
  std::int64_t n_particles_;
  double delta_;
  double scale_;   // N^delta
  double cutoff_;  // N^{-delta}
};

/// Piecewise envelope dominating the local variation of F^N:
///     L^N(x) = 6^d / |x|^d   if |x| >= 6 N^{-delta},
///              N^{d delta}   otherwise.
/// Continuous at the break since 6^d / (6 N^{-delta})^d = N^{d delta}.
class LipschitzEnvelope {
 public:
  LipschitzEnvelope(int dim, std::int64_t n_particles, double cutoff_index)
      : dim_(dim), n_particles_(n_particles), delta_(cutoff_index) {
    if (dim < 1) throw ConfigError("envelope dimension must be >= 1");
    if (n_particles < 2) throw ConfigError("envelope requires N >= 2");
    plateau_ = std::pow(static_cast<double>(n_particles_), dim_ * delta_);
    break_radius_ = 6.0 * std::pow(static_cast<double>(n_particles_), -delta_);
  }

  int dim() const { return dim_; }
  std::int64_t n_particles() const { return n_particles_; }
  double cutoff_index() const { return delta_; }
  double break_radius() const { return break_radius_; }
  double plateau() const { return plateau_; }

  double value(double r) const {
    if (r >= break_radius_) return std::pow(6.0, dim_) / std::pow(r, dim_);
    return plateau_;
  }

  double value_at(std::span<const double> x) const { return value(norm2(x)); }

 private:
  int dim_;
  std::int64_t n_particles_;
  double delta_;
  double plateau_;
  double break_radius_;
};

/// Bounded Lipschitz force F(x) = -amplitude * x * exp(-|x|^2), the smooth
/// interaction used by the W^{1,infinity} extension. sup|F| and the Lipschitz
/// constant are known in closed form.
class GaussianForceKernel {
 public:
  explicit GaussianForceKernel(int dim, double amplitude = 1.0)
      : dim_(dim), amplitude_(amplitude) {
    if (dim < 1) throw ConfigError("kernel dimension must be >= 1");
    sup_norm_bound_ = amplitude_ * std::exp(-0.5) / std::sqrt(2.0);
    lipschitz_constant_ = amplitude_;
  }

  int dim() const { return dim_; }
  double amplitude() const { return amplitude_; }
  double sup_norm_bound() const { return sup_norm_bound_; }
  double lipschitz_constant() const { return lipschitz_constant_; }

  void force(std::span<const double> x, std::span<double> out) const {
    const double factor = -amplitude_ * std::exp(-norm2_sq(x));
    for (int c = 0; c < dim_; ++c) out[c] = factor * x[c];
  }

 private:
  int dim_;
  double amplitude_;
  double sup_norm_bound_;
  double lipschitz_constant_;
};

struct ZeroKernel {
  void force(std::span<const double> x, std::span<double> out) const {
    for (std::size_t c = 0; c < x.size(); ++c) out[c] = 0.0;
  }
};

using KernelSpec = std::variant<ZeroKernel, NewtonianKernel, RegularizedKernel,
                                GaussianForceKernel>;

inline void kernel_force(const KernelSpec& spec, std::span<const double> x,
                         std::span<double> out) {
  std::visit([&](const auto& k) { k.force(x, out); }, spec);
}

/// Smallest spatial feature of the kernel; grids must resolve it.
inline double kernel_resolution_scale(const KernelSpec& spec) {
  struct Visitor {
    double operator()(const ZeroKernel&) const { return std::numeric_limits<double>::infinity(); }
    double operator()(const NewtonianKernel&) const { return 0.0; }
    double operator()(const RegularizedKernel& k) const { return k.cutoff_radius(); }
    double operator()(const GaussianForceKernel&) const { return 1.0; }
  };
  return std::visit(Visitor{}, spec);
}

/// L2 norm of F^N over the ball of radius `radius` (default: unit ball, which
/// captures the near-singularity growth the N-scaling statement is about; the
/// full-space integral diverges for d = 2).
inline double kernel_l2_norm(const RegularizedKernel& kernel, double radius = 1.0) {
  const int d = kernel.dim();
  const double area = unit_sphere_area(d);
  AdaptiveIntegrator quad(16);
  const double integral = quad.integrate(
      [&](double r) {
        if (r <= 0.0) return 0.0;
        return sqr(kernel.magnitude(r)) * std::pow(r, d - 1);
      },
      0.0, radius, 1e-11);
  return std::sqrt(area * integral);
}

}  // namespace diffest::kernels
