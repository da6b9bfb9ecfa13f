#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace semilab {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Carrier class of a grid function: continuous (C_kappa) or upper
/// semicontinuous (U_kappa, may carry -inf sentinels).
enum class Klass { continuous, usc };

/**
 * Uniform 1-D lattice on [-span, span] with a strictly positive bounded
 * weight kappa and nested compact windows [-R_K, R_K].
 *
 * The centre point is exactly x = 0 and points are symmetric, so lattice
 * translations by whole spacings are exact.
 */
class WeightedGrid {
public:
    enum class Weight { unit, decaying };

    static std::shared_ptr<const WeightedGrid>
    uniform(double span, double dx, Weight weight = Weight::unit,
            std::vector<double> compact_radii = {1.0, 2.0, 4.0});

    static std::shared_ptr<const WeightedGrid>
    with_kappa(double span, double dx, std::vector<double> kappa,
               std::vector<double> compact_radii = {1.0, 2.0, 4.0});

    std::size_t size() const { return n_; }
    double dx() const { return dx_; }
    double span() const { return span_; }
    std::size_t center() const { return center_; }

    double x(std::size_t i) const {
        return (static_cast<double>(i) - static_cast<double>(center_)) * dx_;
    }
    /// Fractional lattice index of a coordinate (not clamped).
    double index_of(double x) const { return x / dx_ + static_cast<double>(center_); }

    std::span<const double> kappa() const { return kappa_; }
    double kappa(std::size_t i) const { return kappa_[i]; }
    bool unit_weight() const { return unit_weight_; }
    std::span<const double> compact_radii() const { return radii_; }
    double largest_window() const { return radii_.empty() ? span_ : radii_.back(); }

    /// Inclusive index range of the closed window [-radius, radius].
    std::pair<std::size_t, std::size_t> window(double radius) const;

    /// Whether two grids describe the same lattice.
    bool same_lattice(const WeightedGrid& other) const;

private:
    WeightedGrid(double span, double dx, std::vector<double> kappa,
                 std::vector<double> radii, bool unit);

    double span_;
    double dx_;
    std::size_t n_;
    std::size_t center_;
    std::vector<double> kappa_;
    std::vector<double> radii_;
    bool unit_weight_;
};

using GridPtr = std::shared_ptr<const WeightedGrid>;

/**
 * Values on a WeightedGrid. A -inf value is stored as an explicit per-point
 * flag (the numeric slot holds 0); accessors report it as IEEE -inf so that
 * max/+ arithmetic stays total.
 */
class GridFunction {
public:
    GridFunction(GridPtr grid, std::vector<double> values, Klass klass = Klass::continuous);

    template <class F>
    static GridFunction from(GridPtr grid, F&& fn, Klass klass = Klass::continuous) {
        std::vector<double> v(grid->size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid->x(i));
        return GridFunction(std::move(grid), std::move(v), klass);
    }
    static GridFunction constant(GridPtr grid, double c);

    const WeightedGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    Klass klass() const { return klass_; }

    double operator[](std::size_t i) const { return neg_inf_[i] ? kNegInf : values_[i]; }
    bool is_neg_inf(std::size_t i) const { return neg_inf_[i] != 0; }
    bool has_neg_inf() const;
    /// Raw numeric slots; sentinel points hold 0.
    std::span<const double> raw() const { return values_; }
    std::span<const std::uint8_t> neg_inf_flags() const { return neg_inf_; }
    /// All values with sentinels as -inf.
    std::vector<double> values() const;

    /// Linear interpolation at a fractional lattice index, clamped outside the span.
    double sample_index(double idx) const;
    double sample(double x) const { return sample_index(grid_->index_of(x)); }

    /// Same lattice, same values, same flags.
    bool identical(const GridFunction& other) const;

    GridFunction with_klass(Klass k) const;

private:
    GridPtr grid_;
    std::vector<double> values_;
    std::vector<std::uint8_t> neg_inf_;
    Klass klass_;
};

/// Clamped linear interpolation of a plain value array at a fractional index.
/// Indices within 1e-9 of an integer read the node value exactly.
inline double sample_clamped(std::span<const double> v, double idx) {
    const double last = static_cast<double>(v.size() - 1);
    if (idx <= 0.0) return v.front();
    if (idx >= last) return v.back();
    const double r = std::nearbyint(idx);
    if (std::abs(idx - r) < 1e-9) return v[static_cast<std::size_t>(r)];
    const double fl = std::floor(idx);
    const auto i = static_cast<std::size_t>(fl);
    const double s = idx - fl;
    return (1.0 - s) * v[i] + s * v[i + 1];
}

// Pointwise arithmetic. Sentinels follow IEEE rules for -inf; results that
// would be NaN (-inf - -inf) are rejected.
GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double s, const GridFunction& a);
GridFunction operator+(const GridFunction& a, double c);
GridFunction pointwise_max(const GridFunction& a, const GridFunction& b);
GridFunction pointwise_min(const GridFunction& a, const GridFunction& b);
GridFunction map(const GridFunction& a, const std::function<double(double)>& fn);
/// Lattice translation (tau_m f)(x_i) = f(x_{i+m}) with clamped extension.
GridFunction translate(const GridFunction& f, long steps);

}  // namespace semilab
