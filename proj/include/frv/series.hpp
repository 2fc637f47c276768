#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace frv {

/// Real-valued samples on a strictly increasing, positive time grid.
/// Values may have any sign; used for derivatives, phases and μ tracks.
class Series {
public:
    Series() = default;
    Series(std::vector<double> grid, std::vector<double> values);

    std::span<const double> grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return grid_.size(); }
    bool empty() const noexcept { return grid_.empty(); }

    double t(std::size_t i) const { return grid_[i]; }
    double value(std::size_t i) const { return values_[i]; }
    double front_t() const { return grid_.front(); }
    double back_t() const { return grid_.back(); }

    /// Linear interpolation of the value in log t. Throws DomainError
    /// outside [front_t, back_t].
    double interp_linear_log_t(double t) const;

private:
    std::vector<double> grid_;
    std::vector<double> values_;
};

/// Positive function sampled on at least 16 grid points: the carrier of
/// a(t), μ(t), Ω(t) and slowly varying parts L(t).
class SampledFunction : public Series {
public:
    static constexpr std::size_t min_points = 16;

    SampledFunction() = default;
    SampledFunction(std::vector<double> grid, std::vector<double> values);

    /// Geometric interpolation: log f linear in log t.
    double interp(double t) const;
};

/// n points, log-uniformly spaced on [t_min, t_max], endpoints exact.
std::vector<double> log_grid(double t_min, double t_max, std::size_t n);

/// n points, uniformly spaced on [lo, hi], endpoints exact.
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

SampledFunction sample(const std::function<double(double)>& f, std::vector<double> grid);
Series sample_series(const std::function<double(double)>& f, std::vector<double> grid);

/// 17 significant digits, shortest exponent form; identical across runs.
std::string format_double(double x);

/// CSV with header `t,value`.
void write_csv(std::ostream& out, const Series& s);
Series read_series_csv(std::istream& in);
SampledFunction read_sampled_csv(std::istream& in);

} // namespace frv
