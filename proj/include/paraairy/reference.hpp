#pragma once

#include "paraairy/nonlinearity.hpp"
#include "paraairy/norms.hpp"

namespace paraairy {

/// Independent pseudospectral reference integrator for
/// (dt + dx^3) u = F(u, ux, uxx): integrating-factor RK4 in the interaction
/// picture with the nonlinearity evaluated pointwise and band-truncated to
/// the resolved range each stage. Direct time stepping on the original grid;
/// shares nothing with the paradifferential pipeline beyond the transforms.
/// Returns samples at output_steps+1 nodes of [0, t_end]; each output step is
/// subdivided into substeps internal RK4 steps.
SpaceTimeField reference_integrate(const Context& ctx, const PolynomialNonlinearity& f,
                                   const SpectralField& u0, double t_end, int output_steps,
                                   int substeps);

}  // namespace paraairy
