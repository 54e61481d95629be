#pragma once

#include <array>
#include <vector>

#include "paraairy/field.hpp"
#include "paraairy/norms.hpp"

namespace paraairy {

/// c * u^a0 * ux^a1 * uxx^a2.
struct Monomial {
  Complex coeff;
  std::array<int, 3> alpha{0, 0, 0};

  int total() const { return alpha[0] + alpha[1] + alpha[2]; }
};

struct PolynomialNonlinearity {
  std::vector<Monomial> monomials;
  int degree = 0;
  double lambda = 0.0;
  long lambda_num = 0;  // exact rational value of lambda
  long lambda_den = 1;
  double s0 = 0.0;
  Complex c1{0.0, 0.0};  // coefficient of ux uxx
  Complex c2{0.0, 0.0};  // coefficient of uxx^2
};

/// Rejects empty lists, constant/linear monomials, and the u uxx quadratic;
/// computes degree, lambda, s0 and the bad-term coefficients.
PolynomialNonlinearity validate_nonlinearity(const std::vector<Monomial>& monomials);

/// max over c_alpha != 0, beta <= alpha, |beta| >= 2 of
/// (beta1 + 2 beta2 - 3) / (|beta| - 1), compared in exact rational
/// arithmetic. Writes the maximizer into num/den when given.
double lambda_exponent(const std::vector<Monomial>& monomials, long* num = nullptr,
                       long* den = nullptr);

/// Regularity threshold from the monomial classification table; the max over
/// all rows matched by any monomial.
double s0_threshold(const std::vector<Monomial>& monomials);

/// gamma = min(1, s - lambda - 1/2); must be positive.
double gamma_exponent(double s, double lambda);

/// sigma = s when c2 = 0, s - 1 otherwise; the solver requires sigma > 7/2.
double sigma_exponent(double s, const PolynomialNonlinearity& f);

/// One good term c (d^0 u0)^p0 (d^1 u0)^p1 (d^2 u0)^p2 v^b0 vx^b1 vxx^b2
/// with the rescaling factor folded into the coefficient.
struct GoodTerm {
  Complex coeff;
  std::array<int, 3> u0_powers{0, 0, 0};
  std::array<int, 3> v_powers{0, 0, 0};
  std::array<int, 3> alpha{0, 0, 0};
  std::array<int, 3> beta{0, 0, 0};
};

/// Symbolic bad/good decomposition at rescaling level k. The bad part keeps
/// the four quadratic contributions with two derivatives on one factor;
/// everything else (including the leftover uxx-cross term needed to keep
/// B + G = F_tilde exact) goes to the good list, and the evaluators add the
/// inhomogeneous -dx^3 u0 term.
struct BadGoodSplit {
  int k = 0;
  double lambda = 0.0;
  Complex c1{0.0, 0.0};
  Complex c2{0.0, 0.0};
  double c1_scale = 1.0;  // 2^(-lambda k)
  double c2_scale = 1.0;  // 2^((1-lambda) k)
  std::vector<GoodTerm> good;
};

BadGoodSplit split_bad_good(const PolynomialNonlinearity& f, int k);

/// Decay exponent mu_{alpha beta} of one good term at regularity s.
double mu_exponent(const GoodTerm& term, double lambda, double s);

/// Pointwise F(u, ux, uxx) on each slice; derivatives spectral, products in
/// physical space. No band truncation is applied.
SpaceTimeField evaluate_F(const PolynomialNonlinearity& f, const SpaceTimeField& u);
SpectralField evaluate_F(const PolynomialNonlinearity& f, const SpectralField& u);

/// The good terms plus the -dx^3 u0 inhomogeneity, evaluated raw.
SpaceTimeField evaluate_G(const BadGoodSplit& split, const SpaceTimeField& v,
                          const SpectralField& u0_low);

/// The bad quadratic terms, evaluated raw.
SpaceTimeField evaluate_B(const BadGoodSplit& split, const SpaceTimeField& v,
                          const SpectralField& u0_low);

/// Rescaled right-hand side of the v-equation, evaluated directly from the
/// unexpanded monomials: sum_alpha c_alpha 2^(mu_alpha k) prod (v + u0)
/// derivatives, minus dx^3 u0. Equals evaluate_B + evaluate_G up to roundoff.
SpaceTimeField evaluate_F_tilde(const BadGoodSplit& split, const PolynomialNonlinearity& f,
                                const SpaceTimeField& v, const SpectralField& u0_low);

/// Frozen low-frequency coefficient for band j:
///   a_{<j-4} = c1 2^(-lk) (u0 + S_{<j-4} v) + c2 2^((1-l)k) dx(u0 + 2 S_{<j-4} v).
/// With frozen = false the projections are dropped (the unfrozen a(v)).
SpaceTimeField coefficient_a(const Context& ctx, const BadGoodSplit& split,
                             const SpaceTimeField& v, const SpectralField& u0_low, int j,
                             bool frozen = true);

/// Image of coefficient_a under (dt + dx^3), given rhs_v = (dt + dx^3) v.
/// The Airy operator acts mode-wise on the v part and reduces to dx^3 on the
/// time-frozen u0 part, so no time differencing is involved.
SpaceTimeField coefficient_a_evolution(const Context& ctx, const BadGoodSplit& split,
                                       const SpaceTimeField& rhs_v, const SpectralField& u0_low,
                                       int j, bool frozen = true);

/// b_j = c1 2^(-lk) S_j(S_{>=j-4}(vx) vxx) + c2 2^((1-l)k) S_j((S_{>=j-4} vxx)^2).
SpaceTimeField bj_terms(const Context& ctx, const BadGoodSplit& split, const SpaceTimeField& v,
                        int j);

/// H = sum_j { [S_j, dx a_{<j-4}] vxx + b_j } + sum_j S_j G.
SpaceTimeField assemble_H(const Context& ctx, const BadGoodSplit& split, const SpaceTimeField& v,
                          const SpectralField& u0_low);

/// The frozen-coefficient principal operator sum_j dx a_{<j-4}(v) S_j dxx(w).
SpaceTimeField frozen_paraproduct_dxx(const Context& ctx, const BadGoodSplit& split,
                                      const SpaceTimeField& v, const SpectralField& u0_low,
                                      const SpaceTimeField& w);

}  // namespace paraairy
