#include "semilab/grid.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace semilab {

WeightedGrid::WeightedGrid(double span, double dx, std::vector<double> kappa,
                           std::vector<double> radii, bool unit)
    : span_(span), dx_(dx), kappa_(std::move(kappa)), radii_(std::move(radii)),
      unit_weight_(unit) {
    const double half = span_ / dx_;
    center_ = static_cast<std::size_t>(std::llround(half));
    n_ = 2 * center_ + 1;
}

namespace {

void validate_layout(double span, double dx, const std::vector<double>& radii) {
    if (!(dx > 0.0) || !(span > 0.0)) {
        throw std::domain_error("grid: span and dx must be positive");
    }
    const double half = span / dx;
    if (std::abs(half - std::round(half)) > 1e-9 * std::max(1.0, half)) {
        throw std::domain_error("grid: span must be an integer multiple of dx");
    }
    if (std::round(half) < 2.0) throw std::domain_error("grid: needs at least 5 points");
    for (std::size_t k = 0; k < radii.size(); ++k) {
        if (!(radii[k] > 0.0) || radii[k] > span) {
            throw std::domain_error("grid: compact radius outside the span");
        }
        if (k > 0 && !(radii[k] > radii[k - 1])) {
            throw std::domain_error("grid: compact radii must be strictly increasing");
        }
    }
}

}  // namespace

std::shared_ptr<const WeightedGrid>
WeightedGrid::uniform(double span, double dx, Weight weight, std::vector<double> compact_radii) {
    validate_layout(span, dx, compact_radii);
    const auto half = static_cast<std::size_t>(std::llround(span / dx));
    std::vector<double> kappa(2 * half + 1, 1.0);
    if (weight == Weight::decaying) {
        for (std::size_t i = 0; i < kappa.size(); ++i) {
            const double x = (static_cast<double>(i) - static_cast<double>(half)) * dx;
            kappa[i] = 1.0 / (1.0 + x * x);
        }
    }
    return std::shared_ptr<const WeightedGrid>(new WeightedGrid(
        span, dx, std::move(kappa), std::move(compact_radii), weight == Weight::unit));
}

std::shared_ptr<const WeightedGrid>
WeightedGrid::with_kappa(double span, double dx, std::vector<double> kappa,
                         std::vector<double> compact_radii) {
    validate_layout(span, dx, compact_radii);
    const auto half = static_cast<std::size_t>(std::llround(span / dx));
    if (kappa.size() != 2 * half + 1) throw std::domain_error("grid: kappa size mismatch");
    bool unit = true;
    for (double k : kappa) {
        if (!(k > 0.0) || !std::isfinite(k)) {
            throw std::domain_error("grid: kappa must be positive and bounded");
        }
        unit = unit && k == 1.0;
    }
    return std::shared_ptr<const WeightedGrid>(
        new WeightedGrid(span, dx, std::move(kappa), std::move(compact_radii), unit));
}

std::pair<std::size_t, std::size_t> WeightedGrid::window(double radius) const {
    const auto r = static_cast<std::size_t>(std::floor(radius / dx_ + 1e-9));
    const std::size_t half = std::min(r, center_);
    return {center_ - half, center_ + half};
}

bool WeightedGrid::same_lattice(const WeightedGrid& other) const {
    return this == &other || (n_ == other.n_ && dx_ == other.dx_ && span_ == other.span_);
}

GridFunction::GridFunction(GridPtr grid, std::vector<double> values, Klass klass)
    : grid_(std::move(grid)), values_(std::move(values)), neg_inf_(values_.size(), 0),
      klass_(klass) {
    if (!grid_) throw std::invalid_argument("grid function: null grid");
    if (values_.size() != grid_->size()) {
        throw std::domain_error("grid function: value count does not match grid");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double v = values_[i];
        if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
            throw std::domain_error("grid function: NaN or +inf at index " + std::to_string(i));
        }
        if (v == kNegInf) {
            if (klass_ == Klass::continuous) {
                throw std::domain_error("grid function: -inf in a continuous function");
            }
            neg_inf_[i] = 1;
            values_[i] = 0.0;
        }
    }
}

GridFunction GridFunction::constant(GridPtr grid, double c) {
    const std::size_t n = grid->size();
    return GridFunction(std::move(grid), std::vector<double>(n, c));
}

bool GridFunction::has_neg_inf() const {
    return std::any_of(neg_inf_.begin(), neg_inf_.end(), [](std::uint8_t b) { return b != 0; });
}

std::vector<double> GridFunction::values() const {
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*this)[i];
    return out;
}

double GridFunction::sample_index(double idx) const {
    if (klass_ == Klass::continuous) return sample_clamped(values_, idx);
    const double last = static_cast<double>(values_.size() - 1);
    if (idx <= 0.0) return (*this)[0];
    if (idx >= last) return (*this)[values_.size() - 1];
    const double r = std::nearbyint(idx);
    if (std::abs(idx - r) < 1e-9) return (*this)[static_cast<std::size_t>(r)];
    const auto i = static_cast<std::size_t>(std::floor(idx));
    if (neg_inf_[i] || neg_inf_[i + 1]) return kNegInf;
    const double s = idx - std::floor(idx);
    return (1.0 - s) * values_[i] + s * values_[i + 1];
}

bool GridFunction::identical(const GridFunction& other) const {
    return grid_->same_lattice(*other.grid_) && values_ == other.values_ &&
           neg_inf_ == other.neg_inf_;
}

GridFunction GridFunction::with_klass(Klass k) const {
    return GridFunction(grid_, values(), k);
}

namespace {

Klass join(const GridFunction& a, const GridFunction& b) {
    if (!a.grid().same_lattice(b.grid())) {
        throw std::domain_error("grid functions live on different grids");
    }
    return (a.klass() == Klass::usc || b.klass() == Klass::usc) ? Klass::usc : Klass::continuous;
}

template <class Op>
GridFunction zip(const GridFunction& a, const GridFunction& b, Op op) {
    const Klass k = join(a, b);
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = op(a[i], b[i]);
        if (std::isnan(out[i])) throw std::domain_error("grid arithmetic produced NaN");
    }
    return GridFunction(a.grid_ptr(), std::move(out), k);
}

}  // namespace

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    return zip(a, b, [](double x, double y) { return x + y; });
}
GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    if (b.has_neg_inf()) throw std::domain_error("cannot subtract a function containing -inf");
    return zip(a, b, [](double x, double y) { return x - y; });
}
GridFunction pointwise_max(const GridFunction& a, const GridFunction& b) {
    return zip(a, b, [](double x, double y) { return std::max(x, y); });
}
GridFunction pointwise_min(const GridFunction& a, const GridFunction& b) {
    return zip(a, b, [](double x, double y) { return std::min(x, y); });
}

GridFunction operator*(double s, const GridFunction& a) {
    if (s < 0.0 && a.has_neg_inf()) throw std::domain_error("negative scaling of -inf");
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (s == 0.0) ? 0.0 : s * a[i];
    return GridFunction(a.grid_ptr(), std::move(out), a.klass());
}

GridFunction operator+(const GridFunction& a, double c) {
    std::vector<double> out = a.values();
    for (double& v : out) v += c;
    return GridFunction(a.grid_ptr(), std::move(out), a.klass());
}

GridFunction map(const GridFunction& a, const std::function<double(double)>& fn) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = fn(a[i]);
    return GridFunction(a.grid_ptr(), std::move(out), a.klass());
}

GridFunction translate(const GridFunction& f, long steps) {
    const long n = static_cast<long>(f.size());
    std::vector<double> out(f.size());
    for (long i = 0; i < n; ++i) {
        const long j = std::clamp(i + steps, 0L, n - 1);
        out[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(j)];
    }
    return GridFunction(f.grid_ptr(), std::move(out), f.klass());
}

}  // namespace semilab
