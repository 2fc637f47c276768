#include "frv/series.hpp"

#include "frv/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace frv {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::GridTooShort: return "GridTooShort";
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::NotPowerLike: return "NotPowerLike";
    case ErrorCode::DifferentiationUnstable: return "DifferentiationUnstable";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::TurningPoint: return "TurningPoint";
    case ErrorCode::StepFailure: return "StepFailure";
    case ErrorCode::IntegrationError: return "IntegrationError";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::Complex: return "Complex";
    case ErrorCode::CriticalGamma: return "CriticalGamma";
    case ErrorCode::BoundViolation: return "BoundViolation";
    case ErrorCode::DegenerateBounds: return "DegenerateBounds";
    case ErrorCode::MissingDerivatives: return "MissingDerivatives";
    case ErrorCode::Pole: return "Pole";
    }
    return "Unknown";
}

Series::Series(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (grid_.size() != values_.size())
        fail(ErrorCode::InvalidArgument, "series: grid and values differ in length");
    if (grid_.size() < 2)
        fail(ErrorCode::GridTooShort, "series: need at least 2 points");
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        if (!std::isfinite(grid_[i]) || grid_[i] <= 0.0)
            fail(ErrorCode::InvalidArgument, "series: grid must be finite and positive");
        if (i > 0 && !(grid_[i] > grid_[i - 1]))
            fail(ErrorCode::InvalidArgument, "series: grid must be strictly increasing");
        if (std::isnan(values_[i]))
            fail(ErrorCode::InvalidArgument, "series: NaN value");
    }
}

namespace {

// Index i with grid[i] <= t <= grid[i+1].
std::size_t bracket(std::span<const double> grid, double t) {
    if (!(t >= grid.front() && t <= grid.back()))
        fail(ErrorCode::DomainError, "interpolation point outside grid");
    auto it = std::upper_bound(grid.begin(), grid.end(), t);
    std::size_t i = static_cast<std::size_t>(it - grid.begin());
    if (i == 0) return 0;
    if (i >= grid.size()) return grid.size() - 2;
    return i - 1;
}

} // namespace

double Series::interp_linear_log_t(double t) const {
    const std::size_t i = bracket(grid_, t);
    const double x0 = std::log(grid_[i]), x1 = std::log(grid_[i + 1]);
    const double w = (std::log(t) - x0) / (x1 - x0);
    return values_[i] + w * (values_[i + 1] - values_[i]);
}

SampledFunction::SampledFunction(std::vector<double> grid, std::vector<double> values)
    : Series(std::move(grid), std::move(values)) {
    if (size() < min_points)
        fail(ErrorCode::GridTooShort, "sampled function: need at least 16 points");
    for (double v : this->values())
        if (!(v > 0.0) || !std::isfinite(v))
            fail(ErrorCode::NonPositive, "sampled function: values must be finite and positive");
}

double SampledFunction::interp(double t) const {
    auto g = grid();
    auto v = values();
    const std::size_t i = bracket(g, t);
    if (t == g[i]) return v[i];
    if (t == g[i + 1]) return v[i + 1];
    const double x0 = std::log(g[i]), x1 = std::log(g[i + 1]);
    const double w = (std::log(t) - x0) / (x1 - x0);
    return std::exp(std::log(v[i]) + w * (std::log(v[i + 1]) - std::log(v[i])));
}

std::vector<double> log_grid(double t_min, double t_max, std::size_t n) {
    if (!(t_min > 0.0) || !(t_max > t_min) || n < 2)
        fail(ErrorCode::InvalidArgument, "log_grid: need 0 < t_min < t_max and n >= 2");
    std::vector<double> g(n);
    const double l0 = std::log(t_min), l1 = std::log(t_max);
    const double step = (l1 - l0) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = std::exp(l0 + step * static_cast<double>(i));
    g.front() = t_min;
    g.back() = t_max;
    return g;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    if (!(hi > lo) || n < 2)
        fail(ErrorCode::InvalidArgument, "linear_grid: need lo < hi and n >= 2");
    std::vector<double> g(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo + step * static_cast<double>(i);
    g.back() = hi;
    return g;
}

SampledFunction sample(const std::function<double(double)>& f, std::vector<double> grid) {
    std::vector<double> v(grid.size());
    std::transform(grid.begin(), grid.end(), v.begin(), f);
    return SampledFunction(std::move(grid), std::move(v));
}

Series sample_series(const std::function<double(double)>& f, std::vector<double> grid) {
    std::vector<double> v(grid.size());
    std::transform(grid.begin(), grid.end(), v.begin(), f);
    return Series(std::move(grid), std::move(v));
}

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const Series& s) {
    out << "t,value\n";
    for (std::size_t i = 0; i < s.size(); ++i)
        out << format_double(s.t(i)) << ',' << format_double(s.value(i)) << '\n';
}

namespace {

double parse_field(const std::string& field, std::size_t line) {
    double x = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    while (first < last && *first == ' ') ++first;
    while (last > first && (last[-1] == ' ' || last[-1] == '\r')) --last;
    auto res = std::from_chars(first, last, x);
    if (res.ec != std::errc() || res.ptr != last)
        fail(ErrorCode::InvalidArgument,
             "csv line " + std::to_string(line) + ": cannot parse '" + field + "'");
    return x;
}

std::pair<std::vector<double>, std::vector<double>> read_columns(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        fail(ErrorCode::InvalidArgument, "csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,value")
        fail(ErrorCode::InvalidArgument, "csv: expected header 't,value', got '" + line + "'");
    std::vector<double> t, v;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            fail(ErrorCode::InvalidArgument, "csv line " + std::to_string(lineno) + ": expected 2 fields");
        t.push_back(parse_field(line.substr(0, comma), lineno));
        v.push_back(parse_field(line.substr(comma + 1), lineno));
    }
    return {std::move(t), std::move(v)};
}

} // namespace

Series read_series_csv(std::istream& in) {
    auto [t, v] = read_columns(in);
    return Series(std::move(t), std::move(v));
}

SampledFunction read_sampled_csv(std::istream& in) {
    auto [t, v] = read_columns(in);
    return SampledFunction(std::move(t), std::move(v));
}

} // namespace frv
