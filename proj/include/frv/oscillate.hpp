#pragma once

// Divergent-Ω scale factor a(t) = t^α cos²u + t^β sin²u and its analysis.

#include "frv/series.hpp"

#include <functional>
#include <string_view>
#include <vector>

namespace frv {

/// Phase u(t) with optional analytic derivatives.
struct Phase {
    std::function<double(double)> u;
    std::function<double(double)> u_dot;  // may be empty
    std::function<double(double)> u_ddot; // may be empty
};

Phase log_phase();                    // u = ln t
Phase linear_phase(double omega);     // u = ω t
Phase constant_phase(double value);   // u ≡ value
/// Natural cubic spline through a sampled u-track; derivatives from the spline.
Phase spline_phase(const Series& u_track);

struct OscillationModel {
    double alpha = 0.4;
    double beta = 0.8;
    Phase phase;
    double t0 = 1.0;

    void validate() const; // alpha < beta, t0 > 0, u present
};

struct FitU {
    Series u;                  // principal branch, [0, π/2]
    double max_residual = 0.0; // max |g cos²u + h sin²u - f| / h
};

/// u = ½ arccos((h + g - 2f)/(h - g)).
FitU fit_u(const SampledFunction& g, const SampledFunction& h, const SampledFunction& f);

SampledFunction synth_a(const OscillationModel& model, const std::vector<double>& grid);

struct OscDerivatives {
    Series a_dot;
    Series a_ddot;
};

OscDerivatives synth_derivatives(const OscillationModel& model, const std::vector<double>& grid);

/// Sign changes of ä between consecutive points; zeros take the sign of
/// the next nonzero value.
int inflection_count(const Series& a_ddot);

/// t·ȧ/a in the divergent regime, with the asymptotic branches once
/// t^{α-β} < 1e-6.
double f_omega_divergent(const OscillationModel& model, double t, double sin_threshold = 1e-4);

} // namespace frv
