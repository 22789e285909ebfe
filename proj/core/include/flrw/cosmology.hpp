#pragma once

// Scale function, Hubble rate, curved mass and light cone of the flat FLRW
// family a(t) = a0 {1 + n(1+sigma)Ht/2}^{2/n(1+sigma)} (exponential when
// sigma = -1).

#include <optional>
#include <string_view>

namespace flrw {

/// Spacetime model. Masses are stored squared: m_sq < 0 encodes a purely
/// imaginary mass.
struct CosmologyParams {
  int n = 1;
  double c = 1.0;
  double m_sq = 0.0;
  double H = 0.0;
  double sigma = 0.0;
  double a0 = 1.0;

  /// Throws ValidationError unless n >= 1, c > 0, a0 > 0 and all fields are finite.
  void validate() const;

  /// n(1+sigma)/2, the exponent controlling the power-law family.
  double expansion_index() const noexcept { return 0.5 * n * (1.0 + sigma); }
  /// (nH/2c)^2
  double hubble_mass_sq() const noexcept {
    const double k = n * H / (2.0 * c);
    return k * k;
  }

  friend bool operator==(const CosmologyParams&, const CosmologyParams&) = default;
};

enum class Regime {
  Minkowski,
  DeSitterExpanding,
  DeSitterContracting,
  ExpandingPolynomial,
  BigRip,
  Contracting,
  BigCrunch,
};

std::string_view to_string(Regime regime) noexcept;

Regime classify_regime(const CosmologyParams& params) noexcept;

/// End of the spacetime: infinity unless (1+sigma)H < 0.
double horizon_time(const CosmologyParams& params) noexcept;

/// Validates t against [0, T0) and clamps it to (1 - 1e-12) T0 when the
/// horizon is finite. Throws DomainError outside the domain.
double checked_time(const CosmologyParams& params, double t);

double scale_factor(const CosmologyParams& params, double t);
/// log a(t); stays finite where a(t) itself under- or overflows.
double log_scale_factor(const CosmologyParams& params, double t);
double hubble_rate(const CosmologyParams& params, double t);
double curved_mass_sq(const CosmologyParams& params, double t);

/// Time at which M^2 changes sign (only for (1+sigma)H < 0, sigma < 0 and a
/// real mass above sqrt|sigma| n|H|/2c).
std::optional<double> mass_sign_change_time(const CosmologyParams& params);

/// True on the logarithmic cone branch sigma = -1 + 2/n.
bool is_log_cone_branch(const CosmologyParams& params) noexcept;

struct ConeData {
  double r0 = 1.0;
  CosmologyParams params;
};

/// r(t) = r0 + int_0^t c/a(s) ds in closed form.
double cone_radius(const ConeData& cone, double t);

/// Same quantity by adaptive Gauss-Kronrod quadrature. Cross-check only.
double cone_radius_by_quadrature(const ConeData& cone, double t);

/// The t with r(t) = R/2, if the cone reaches that radius before T0.
std::optional<double> cone_entry_time(const ConeData& cone, double R);

/// Case labels (i)-(vi) for the behaviour of M^2(t).
enum class MassCase { Constant, DeSitterConstant, IncreasingBounded, Decreasing, DivergingUp, DivergingDown };

std::string_view roman_label(MassCase c) noexcept;

struct MassBounds {
  MassCase label;
  double lower;            ///< may be -inf
  double upper;            ///< may be +inf
  bool lower_attained;
  bool upper_attained;
  double infimum;          ///< inf_t M^2(t) on [0, T0)
  double supremum;         ///< sup_t M^2(t) on [0, T0)

  /// True when `value` lies within the stated bounds, up to `tol`.
  bool contains(double value, double tol = 0.0) const noexcept;
};

MassBounds curved_mass_bounds(const CosmologyParams& params) noexcept;

}  // namespace flrw
