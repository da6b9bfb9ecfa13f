#include "semilab/measures.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace semilab {

QuadratureRule QuadratureRule::gauss_hermite(std::size_t n) {
    if (n == 0 || n % 2 == 0) throw std::domain_error("gauss_hermite: node count must be odd");
    const auto m = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index k = 1; k < m; ++k) {
        const double off = std::sqrt(static_cast<double>(k));
        jacobi(k - 1, k) = off;
        jacobi(k, k - 1) = off;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    const auto& vals = solver.eigenvalues();
    const auto& vecs = solver.eigenvectors();
    std::vector<double> z(n), w(n);
    for (Eigen::Index k = 0; k < m; ++k) {
        z[static_cast<std::size_t>(k)] = vals(k);
        w[static_cast<std::size_t>(k)] = vecs(0, k) * vecs(0, k);
    }
    QuadratureRule q;
    q.nodes.resize(n);
    q.weights.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t r = n - 1 - j;
        q.nodes[j] = 0.5 * (z[j] - z[r]);
        q.weights[j] = 0.5 * (w[j] + w[r]);
    }
    q.nodes[n / 2] = 0.0;
    const double total = std::accumulate(q.weights.begin(), q.weights.end(), 0.0);
    for (double& v : q.weights) v /= total;
    return q;
}

double AtomicMeasure::mass() const {
    return std::accumulate(weights.begin(), weights.end(), 0.0);
}

double AtomicMeasure::moment(double p) const {
    double m = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) m += weights[i] * std::pow(std::abs(atoms[i]), p);
    return m;
}

AtomicMeasure discretize(const GaussianMeasure& g, const QuadratureRule& q) {
    if (g.variance < 0.0) throw std::domain_error("discretize: negative variance");
    AtomicMeasure a;
    const double s = std::sqrt(g.variance);
    for (std::size_t j = 0; j < q.size(); ++j) {
        a.atoms.push_back(g.mean + s * q.nodes[j]);
        a.weights.push_back(q.weights[j]);
    }
    return a;
}

LatticeRates lattice_rates(double a, double b, double dx) {
    if (a < 0.0) throw std::domain_error("lattice_rates: negative diffusion");
    const double base = a / (2.0 * dx * dx);
    const double half = b / (2.0 * dx);
    if (base - std::abs(half) >= 0.0) return {base + half, base - half};
    return {base + std::max(b, 0.0) / dx, base + std::max(-b, 0.0) / dx};
}

namespace {

constexpr double kTail = 1e-20;

struct Pmf {
    long first = 0;
    std::vector<double> p;
};

// Poisson(mu) pmf by ratio recurrence outward from the mode, normalised.
Pmf poisson(double mu) {
    if (mu <= 0.0) return {0, {1.0}};
    const auto mode = static_cast<long>(std::floor(mu));
    std::vector<double> up{1.0};
    for (long k = mode; ; ++k) {
        const double next = up.back() * mu / static_cast<double>(k + 1);
        if (next < kTail * 1e-2) break;
        up.push_back(next);
    }
    std::vector<double> down;
    double cur = 1.0;
    for (long k = mode; k > 0; --k) {
        cur *= static_cast<double>(k) / mu;
        if (cur < kTail * 1e-2) break;
        down.push_back(cur);
    }
    Pmf out;
    out.first = mode - static_cast<long>(down.size());
    out.p.assign(down.rbegin(), down.rend());
    out.p.insert(out.p.end(), up.begin(), up.end());
    const double total = std::accumulate(out.p.begin(), out.p.end(), 0.0);
    for (double& v : out.p) v /= total;
    return out;
}

}  // namespace

LatticeKernel lattice_kernel(double up_rate, double down_rate, double t) {
    if (t < 0.0 || up_rate < 0.0 || down_rate < 0.0) {
        throw std::domain_error("lattice_kernel: negative time or rate");
    }
    const Pmf plus = poisson(up_rate * t);
    const Pmf minus = poisson(down_rate * t);
    const long lo = plus.first - (minus.first + static_cast<long>(minus.p.size()) - 1);
    const std::size_t len = plus.p.size() + minus.p.size() - 1;
    std::vector<double> w(len, 0.0);
    for (std::size_t i = 0; i < plus.p.size(); ++i) {
        for (std::size_t l = 0; l < minus.p.size(); ++l) {
            const long k = (plus.first + static_cast<long>(i)) - (minus.first + static_cast<long>(l));
            w[static_cast<std::size_t>(k - lo)] += plus.p[i] * minus.p[l];
        }
    }
    std::size_t a = 0, b = len;
    while (a + 1 < b && w[a] < kTail) ++a;
    while (b - 1 > a && w[b - 1] < kTail) --b;
    LatticeKernel out;
    out.first_offset = lo + static_cast<long>(a);
    out.weights.assign(w.begin() + static_cast<long>(a), w.begin() + static_cast<long>(b));
    const double total = std::accumulate(out.weights.begin(), out.weights.end(), 0.0);
    for (double& v : out.weights) v /= total;
    return out;
}

double wasserstein_p(const AtomicMeasure& nu, const AtomicMeasure& mu, double p) {
    if (!(p >= 1.0)) throw std::domain_error("wasserstein_p: order must be >= 1");
    const double m1 = nu.mass();
    const double m2 = mu.mass();
    if (std::abs(m1 - m2) > 1e-12 * std::max(1.0, m1)) {
        throw std::domain_error("wasserstein_p: total masses differ");
    }
    auto sorted = [](const AtomicMeasure& m) {
        std::vector<std::pair<double, double>> v;
        for (std::size_t i = 0; i < m.atoms.size(); ++i) {
            if (m.weights[i] < 0.0) throw std::domain_error("wasserstein_p: negative weight");
            if (m.weights[i] > 0.0) v.emplace_back(m.atoms[i], m.weights[i]);
        }
        std::sort(v.begin(), v.end());
        return v;
    };
    const auto a = sorted(nu);
    const auto b = sorted(mu);
    double cost = 0.0;
    std::size_t i = 0, j = 0;
    double ra = a.empty() ? 0.0 : a[0].second;
    double rb = b.empty() ? 0.0 : b[0].second;
    while (i < a.size() && j < b.size()) {
        const double m = std::min(ra, rb);
        cost += m * std::pow(std::abs(a[i].first - b[j].first), p);
        ra -= m;
        rb -= m;
        if (ra <= 1e-15 * m1) {
            if (++i < a.size()) ra = a[i].second;
        }
        if (rb <= 1e-15 * m1) {
            if (++j < b.size()) rb = b[j].second;
        }
    }
    return std::pow(cost / m1, 1.0 / p);
}

double w2_1d(const Measure& nu, const Measure& mu) {
    if (const auto* gn = std::get_if<GaussianMeasure>(&nu)) {
        const auto* gm = std::get_if<GaussianMeasure>(&mu);
        if (!gm) throw std::invalid_argument("w2_1d: mixed Gaussian/atomic pair");
        const double dm = gn->mean - gm->mean;
        const double ds = std::sqrt(gn->variance) - std::sqrt(gm->variance);
        return std::sqrt(dm * dm + ds * ds);
    }
    const auto* am = std::get_if<AtomicMeasure>(&mu);
    if (!am) throw std::invalid_argument("w2_1d: mixed Gaussian/atomic pair");
    return wasserstein_p(std::get<AtomicMeasure>(nu), *am, 2.0);
}

double relative_entropy(const Measure& nu, const Measure& mu) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (const auto* gn = std::get_if<GaussianMeasure>(&nu)) {
        const auto* gm = std::get_if<GaussianMeasure>(&mu);
        if (!gm) throw std::invalid_argument("relative_entropy: mixed Gaussian/atomic pair");
        if (!(gm->variance > 0.0)) {
            return (gn->variance == 0.0 && gn->mean == gm->mean) ? 0.0 : inf;
        }
        if (!(gn->variance > 0.0)) return inf;
        const double ratio = gn->variance / gm->variance;
        const double dm = gn->mean - gm->mean;
        return 0.5 * (ratio + dm * dm / gm->variance - 1.0 - std::log(ratio));
    }
    const auto* am = std::get_if<AtomicMeasure>(&mu);
    if (!am) throw std::invalid_argument("relative_entropy: mixed Gaussian/atomic pair");
    const auto& an = std::get<AtomicMeasure>(nu);
    double kl = 0.0;
    for (std::size_t i = 0; i < an.atoms.size(); ++i) {
        const double q = an.weights[i];
        if (q == 0.0) continue;
        double p = 0.0;
        for (std::size_t j = 0; j < am->atoms.size(); ++j) {
            if (std::abs(am->atoms[j] - an.atoms[i]) <= 1e-12) p += am->weights[j];
        }
        if (p == 0.0) return inf;
        kl += q * std::log(q / p);
    }
    return std::max(kl, 0.0);
}

}  // namespace semilab
