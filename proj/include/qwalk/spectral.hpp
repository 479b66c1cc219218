#pragma once

#include <array>
#include <vector>

#include "qwalk/core.hpp"
#include "qwalk/evolve.hpp"

namespace qwalk {

// Eigen data of the momentum-space step operator Uhat(k) = R(k) U at one k,
// plus the H-overlaps A[i][j] = <v_i | Hhat(k) | v_j> and group velocities.
struct EigenSystem {
  double k = 0.0;
  double c = 0.0;
  double s = 0.0;
  std::array<Complex, 2> lambda{};  // unit-modulus eigenvalues
  std::array<Spinor, 2> v{};        // orthonormal eigenvectors
  std::array<double, 2> h{};        // group velocities, h_j = (-1)^j c cos k / w
  Complex A11{}, A12{}, A21{}, A22{};
  // True when the closed-form eigenvector expression was used, pinning the
  // convention A12 = A21 real, A22 = -conj(A11). The direct-solve fallback
  // (radicand < 1e-12) fixes phases differently; only phase-invariant
  // combinations are meaningful there.
  bool closed_form = true;
};

EigenSystem eigensystem(double k, double theta);

// The fallback route: eigenvectors from a direct 2x2 solve with the
// first-nonzero-component-positive-real phase fix, overlaps computed from the
// vectors. eigensystem() switches to this when the closed-form radicand drops
// below 1e-12; exposed on its own as a cross-check oracle.
EigenSystem eigensystem_direct(double k, double theta);

// Momentum-space step matrices. Uhat(k) = R(k) U, Hhat(k) = R(k) H with
// R(k) = diag(e^{ik}, e^{-ik}).
Mat2 u_hat(double k, double theta);
Mat2 h_hat(double k);

// Eigenbasis coefficients of the state right after the m-th kick, at one k:
// a_{j,0} projects the initial spinor, a_{j,m} results from m applications of
// the kick-transfer matrix [[l1^tau A11, l2^tau A12], [l1^tau A21, l2^tau A22]]
// whose eigenvalues are z_j = nu - (-1)^j sqrt(nu^2 + (-1)^tau).
struct KickCoefficients {
  Complex nu{};
  std::array<Complex, 2> z{};
  std::array<Complex, 2> a0{};
  std::array<Complex, 2> am{};
};

// Closed-form route. Throws DegenerateZ when |z2 - z1| < 1e-12 (the closed
// forms divide by z2 - z1); callers fall back to kick_coefficients_powered.
KickCoefficients kick_coefficients(const EigenSystem& es,
                                   const WalkParams& params);
KickCoefficients kick_coefficients(double k, const WalkParams& params);

// Brute-force route: m-fold multiplication by the kick-transfer matrix.
// Valid for any m and any eigenvector convention; also the test oracle.
KickCoefficients kick_coefficients_powered(const EigenSystem& es,
                                           const WalkParams& params);

// Momentum-space amplitude at the analysis time (m+n)*tau + m:
// Psihat(k) = sum_j a_{j,m}(k) lambda_j(k)^{n tau} v_j(k).
Spinor k_amplitude(double k, const WalkParams& params);

// Inverse transform of N uniform k-samples (k_l = -pi + 2 pi l / N) into a
// position field with time stamp t. Exact for support within [-t, t] when
// N >= 2t+1; throws InsufficientSamples otherwise.
AmplitudeField inverse_transform(const std::vector<Spinor>& k_samples, long t);

// Spectral-route reconstruction of the position amplitudes at the analysis
// time, from N >= 2t+1 samples of k_amplitude.
AmplitudeField reconstruct_field(const WalkParams& params, int n_samples,
                                 int workers = 1);

struct MomentOptions {
  int initial_points = 4096;  // trapezoid points on [-pi, pi)
  double tol = 1e-9;          // doubling stops when successive values agree
  int max_doublings = 8;
  int workers = 1;
};

// tau -> infinity limit of E[(X_t / scale)^r] for the given family, by
// trapezoid quadrature of the per-branch weight functions against powers of
// the scaled group velocities. Supports the plain walk and m in {1, 2};
// throws UnsupportedCase for m >= 3.
double limit_moment(const LawCase& law_case, double theta, const Complex& alpha,
                    const Complex& beta, int r, const MomentOptions& opts = {});

}  // namespace qwalk
