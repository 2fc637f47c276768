#pragma once

// Regular-variation analysis of sampled positive functions.

#include "frv/series.hpp"

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace frv {

struct RvOptions {
    double tail_fraction = 0.5;   // trailing window for all limit estimators
    double check_fraction = 0.25; // second window, convergence check
    std::vector<double> probes{2.0, 4.0, 8.0};
    double rv_tolerance = 1e-3;    // max index spread (ln f*/f_*)/ln λ for RV
    double slope_tolerance = 0.05; // window agreement for rv_index
    double drift_limit = 1.0;      // median local-index drift that marks UNBOUNDED
};

struct RatioBounds {
    double lambda = 0.0;
    double upper = 0.0;
    double lower = 0.0;
    std::size_t points = 0; // ratios in the tail window
};

/// max/min of f(λt)/f(t) over the trailing tail window of valid points.
RatioBounds ratio_bounds(const SampledFunction& f, double lambda, double tail_fraction = 0.5);

struct IndexFit {
    double index = 0.0;
    double check_index = 0.0; // estimate on the shorter window
    double residual = 0.0;    // rms of the fit on the main window
};

/// Tail index r of t^r L(t). Throws NotPowerLike when the two window
/// estimates disagree by more than opts.slope_tolerance.
IndexFit rv_index_fit(const SampledFunction& f, const RvOptions& opts = {});
double rv_index(const SampledFunction& f, const RvOptions& opts = {});

/// (lower, upper) Matuszewska index estimates over the probe set.
std::pair<double, double> matuszewska_indices(const SampledFunction& f, const RvOptions& opts = {});

enum class RvKind { RV, ER, OR, Unbounded };
std::string_view to_string(RvKind kind) noexcept;

struct RvClassification {
    RvKind kind = RvKind::Unbounded;
    std::optional<double> index;
    std::optional<std::pair<double, double>> index_interval;
    double max_spread = 0.0; // largest index spread over the probes
};

RvClassification classify(const SampledFunction& f, const RvOptions& opts = {});

struct SlowVaryRep {
    double h0 = 0.0;
    Series epsilon;
};

/// ε(t) = t L'(t)/L(t) by central log-derivatives; h0 from the trailing
/// mean of L·exp(-∫ε/t dt).
SlowVaryRep sv_epsilon_fit(const SampledFunction& L, const RvOptions& opts = {});

/// L(t_i) = h0·exp(∫_{t_0}^{t_i} ε(u)/u du), trapezoid in ln t.
SampledFunction sv_reconstruct(const SlowVaryRep& rep);

struct StripCounts {
    int low = 0;
    int high = 0;
};

/// Maximal runs of grid points (t > 1) with f ≤ t^inner_low, resp.
/// f ≥ t^inner_high.
StripCounts strip_visits(const SampledFunction& f, double inner_low, double inner_high);

} // namespace frv
