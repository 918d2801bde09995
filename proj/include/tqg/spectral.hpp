#pragma once

#include "tqg/field.hpp"

namespace tqg {

/// Forward FFT with 1/n^2 normalization, so coeff(0,0) is the field mean.
/// Throws std::invalid_argument on non-finite input.
SpectralField forward_transform(const ScalarField& f);

/// Inverse of forward_transform; imaginary residue of the complex transform
/// is discarded (coefficients are expected conjugate-symmetric).
ScalarField inverse_transform(const SpectralField& f);

/// Multiply coefficients by (i*k_axis)^order. Axis 0 is x, 1 is y.
/// The Nyquist mode on the differentiated axis is zeroed for odd orders.
SpectralField spectral_derivative(const SpectralField& f, int axis, int order);

/// (d/dx f, d/dy f) via spectral differentiation.
VectorField gradient(const ScalarField& f);

/// Perpendicular gradient (-d/dy f, d/dx f).
VectorField perp_gradient(const ScalarField& f);

/// Two-thirds rule: zero coefficients with |m_axis| > n/3 on either axis.
SpectralField dealias(const SpectralField& f);
ScalarField dealias(const ScalarField& f);

/// Frequency-space Sobolev norm ( L^2 sum_k (1+|k|^2)^s |v_hat(k)|^2 )^{1/2}.
/// s = 0 reproduces the continuum L2 norm ( integral of f^2 )^{1/2}.
/// Supported range s in [-4, 4].
double sobolev_norm(const ScalarField& f, double s);
double sobolev_norm(const SpectralField& f, double s);

/// Sobolev norm of a vector field: sqrt of the sum over components.
double sobolev_norm(const VectorField& u, double s);

/// Max over grid samples of |f|.
double sup_norm(const ScalarField& f);

/// Max over grid samples of the Euclidean magnitude sqrt(ux^2 + uy^2).
double sup_norm(const VectorField& u);

/// Max over grid of the Euclidean norm of the spectral gradient of f.
double grad_sup_norm(const ScalarField& f);

/// Grid mean (= coeff(0,0) of the forward transform).
double mean(const ScalarField& f);

/// Max over modes of |k . u_hat(k)| -- the spectral divergence in modulus,
/// used for incompressibility checks.
double spectral_divergence_max(const VectorField& u);

/// Divergence d/dx ux + d/dy uy as a real-space field.
ScalarField divergence(const VectorField& u);

/// Fraction of (mode-0 excluded) spectral energy carried by the top third
/// of the active band: |m|_inf > (2/3)*K with K = n/3 under dealiasing and
/// K = n/2 otherwise. Returns 0 for a field with no fluctuation energy.
double spectral_tail_fraction(const ScalarField& f, bool dealias_on);

}  // namespace tqg
