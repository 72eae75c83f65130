#include "geoflow/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fft.hpp"

namespace geoflow {

// ---------------------------------------------------------------- Grid

Grid::Grid(int n) : n_(n) {
    if (n < 8 || n % 2 != 0) {
        throw ConfigError("grid size must be even and >= 8, got " + std::to_string(n));
    }
}

std::size_t Grid::index_of(int mode) const {
    if (mode < -n_ / 2 || mode >= n_ / 2) {
        throw Error("mode " + std::to_string(mode) + " outside [-n/2, n/2) for n = " +
                    std::to_string(n_));
    }
    return static_cast<std::size_t>(mode >= 0 ? mode : mode + n_);
}

void require_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b)) {
        throw Error("grid mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
}

// ---------------------------------------------------------------- PeriodicField

PeriodicField::PeriodicField(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != static_cast<std::size_t>(grid_.size())) {
        throw Error("field has " + std::to_string(values_.size()) + " samples for a grid of " +
                    std::to_string(grid_.size()));
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw NumericalOverflow("non-finite field value");
    }
}

PeriodicField PeriodicField::constant(Grid grid, double value) {
    return PeriodicField(grid, std::vector<double>(static_cast<std::size_t>(grid.size()), value));
}

double PeriodicField::max() const { return *std::max_element(values_.begin(), values_.end()); }
double PeriodicField::min() const { return *std::min_element(values_.begin(), values_.end()); }

double PeriodicField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

PeriodicField& PeriodicField::operator+=(const PeriodicField& other) {
    require_same_grid(grid_, other.grid_);
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
    return *this;
}

PeriodicField& PeriodicField::operator-=(const PeriodicField& other) {
    require_same_grid(grid_, other.grid_);
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
    return *this;
}

PeriodicField& PeriodicField::operator*=(const PeriodicField& other) {
    require_same_grid(grid_, other.grid_);
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] *= other.values_[j];
    return *this;
}

PeriodicField& PeriodicField::operator*=(double scale) {
    for (double& v : values_) v *= scale;
    return *this;
}

PeriodicField operator+(PeriodicField lhs, const PeriodicField& rhs) { return lhs += rhs; }
PeriodicField operator-(PeriodicField lhs, const PeriodicField& rhs) { return lhs -= rhs; }
PeriodicField operator*(PeriodicField lhs, const PeriodicField& rhs) { return lhs *= rhs; }
PeriodicField operator*(double scale, PeriodicField field) { return field *= scale; }
PeriodicField operator-(PeriodicField field) { return field *= -1.0; }

// ---------------------------------------------------------------- Spectrum

Spectrum::Spectrum(Grid grid, std::vector<Complex> coeffs) : grid_(grid), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != static_cast<std::size_t>(grid_.size())) {
        throw Error("spectrum size does not match grid");
    }
}

Spectrum Spectrum::zeros(Grid grid) {
    return Spectrum(grid, std::vector<Complex>(static_cast<std::size_t>(grid.size())));
}

bool Spectrum::is_hermitian(double rel_tol) const {
    double scale = 0.0;
    for (const auto& c : coeffs_) scale = std::max(scale, std::abs(c));
    const double tol = rel_tol * scale + std::numeric_limits<double>::min();
    const int n = grid_.size();
    if (std::abs(coeffs_[0].imag()) > tol) return false;
    if (std::abs(coeffs_[static_cast<std::size_t>(n / 2)].imag()) > tol) return false;
    for (int k = 1; k < n / 2; ++k) {
        if (std::abs(coeffs_[static_cast<std::size_t>(k)] -
                     std::conj(coeffs_[static_cast<std::size_t>(n - k)])) > tol) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- SymbolSpec

SymbolSpec SymbolSpec::bessel(double s) {
    if (!(s >= 0.5) || !std::isfinite(s)) {
        throw ConfigError("bessel symbol requires s >= 1/2");
    }
    return SymbolSpec(SymbolKind::bessel, s, 2.0 * s, Invertibility::all_modes);
}

SymbolSpec SymbolSpec::helmholtz_power(int kappa) {
    if (kappa < 1) throw ConfigError("helmholtz_power symbol requires an integer power >= 1");
    return SymbolSpec(SymbolKind::helmholtz_power, kappa, 2.0 * kappa, Invertibility::all_modes);
}

SymbolSpec SymbolSpec::clm() {
    return SymbolSpec(SymbolKind::clm, 0.0, 1.0, Invertibility::mean_zero_only);
}

SymbolSpec SymbolSpec::derivative() {
    return SymbolSpec(SymbolKind::derivative, 0.0, 1.0, Invertibility::mean_zero_only);
}

SymbolSpec SymbolSpec::hilbert() {
    return SymbolSpec(SymbolKind::hilbert, 0.0, 0.0, Invertibility::mean_zero_only);
}

SymbolSpec SymbolSpec::identity() {
    return SymbolSpec(SymbolKind::identity, 0.0, 0.0, Invertibility::all_modes);
}

SymbolSpec SymbolSpec::custom(std::vector<double> table, double order, Invertibility invertible_on) {
    if (table.empty()) throw ConfigError("custom symbol table is empty");
    if (!std::isfinite(order)) throw ConfigError("custom symbol order must be finite");
    SymbolSpec s(SymbolKind::custom, 0.0, order, invertible_on);
    s.custom_ = std::move(table);
    return s;
}

bool SymbolSpec::is_symmetric() const noexcept {
    return kind_ != SymbolKind::derivative && kind_ != SymbolKind::hilbert;
}

Complex SymbolSpec::operator()(int k) const {
    const double kk = static_cast<double>(k);
    switch (kind_) {
        case SymbolKind::bessel:
        case SymbolKind::helmholtz_power:
            return std::pow(1.0 + kk * kk, parameter_);
        case SymbolKind::clm:
            return std::abs(kk);
        case SymbolKind::derivative:
            return {0.0, kk};
        case SymbolKind::hilbert:
            return {0.0, k > 0 ? -1.0 : (k < 0 ? 1.0 : 0.0)};
        case SymbolKind::identity:
            return 1.0;
        case SymbolKind::custom: {
            const auto idx = static_cast<std::size_t>(std::abs(k));
            if (idx >= custom_.size()) {
                throw Error("custom symbol table does not cover mode " + std::to_string(k));
            }
            return custom_[idx];
        }
    }
    return 0.0;
}

std::string SymbolSpec::name() const {
    std::ostringstream os;
    switch (kind_) {
        case SymbolKind::bessel: os << "bessel(" << parameter_ << ")"; break;
        case SymbolKind::helmholtz_power: os << "helmholtz_power(" << parameter_ << ")"; break;
        case SymbolKind::clm: os << "clm"; break;
        case SymbolKind::derivative: os << "derivative"; break;
        case SymbolKind::hilbert: os << "hilbert"; break;
        case SymbolKind::identity: os << "identity"; break;
        case SymbolKind::custom: os << "custom[" << custom_.size() << "]"; break;
    }
    return os.str();
}

std::vector<Complex> SymbolSpec::table(const Grid& grid) const {
    const int n = grid.size();
    std::vector<Complex> t(static_cast<std::size_t>(n));
    for (int k = 0; k <= grid.max_resolved_mode(); ++k) {
        t[static_cast<std::size_t>(k)] = (*this)(k);
        if (k > 0) t[static_cast<std::size_t>(n - k)] = (*this)(-k);
    }
    return t;  // Nyquist entry stays zero
}

// ---------------------------------------------------------------- analysis / synthesis

Spectrum analyze(const PeriodicField& u) {
    auto c = detail::forward_dft(u.values());
    // real input: enforce exact conjugate symmetry so real symbols keep the output real
    const std::size_t n = c.size();
    c[0] = c[0].real();
    c[n / 2] = c[n / 2].real();
    for (std::size_t k = 1; k < n / 2; ++k) {
        const Complex avg = 0.5 * (c[k] + std::conj(c[n - k]));
        c[k] = avg;
        c[n - k] = std::conj(avg);
    }
    return Spectrum(u.grid(), std::move(c));
}

PeriodicField synthesize(const Spectrum& c) {
    if (!c.is_hermitian()) throw Error("complex output: spectrum is not Hermitian");
    return PeriodicField(c.grid(), detail::inverse_dft_real(c.data()));
}

namespace {

PeriodicField real_synthesis(const Spectrum& c) {
    return PeriodicField(c.grid(), detail::inverse_dft_real(c.data()));
}

void multiply_modes(std::span<Complex> c, std::span<const Complex> factor) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= factor[i];
}

void divide_modes(const SymbolSpec& a, const Grid& grid, std::span<Complex> c,
                  std::span<const Complex> values) {
    double scale = 0.0;
    for (const auto& v : c) scale = std::max(scale, std::abs(v));
    const double populated = 1e-14 * scale;

    if (a.invertible_on() == Invertibility::mean_zero_only) {
        double l2 = 0.0;
        for (int k = -grid.max_resolved_mode(); k <= grid.max_resolved_mode(); ++k) {
            l2 += std::norm(c[grid.index_of(k)]);
        }
        if (std::abs(c[0]) > 1e-12 * std::sqrt(l2)) {
            throw Error("zero mode not invertible for symbol " + a.name());
        }
    }
    const std::size_t n = c.size();
    c[n / 2] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == n / 2) continue;
        if (i == 0 && a.invertible_on() == Invertibility::mean_zero_only) {
            c[0] = 0.0;
            continue;
        }
        if (values[i] == Complex(0.0)) {
            if (std::abs(c[i]) > populated) {
                throw Error("symbol " + a.name() + " vanishes on populated mode " +
                            std::to_string(grid.mode_of(i)));
            }
            c[i] = 0.0;
            continue;
        }
        c[i] /= values[i];
    }
}

}  // namespace

// ---------------------------------------------------------------- Multiplier

Multiplier::Multiplier(const SymbolSpec& a, const Grid& grid)
    : symbol_(a), grid_(grid), values_(a.table(grid)) {}

void Multiplier::apply_in_place(Spectrum& c) const {
    require_same_grid(grid_, c.grid());
    multiply_modes(c.data(), values_);
}

void Multiplier::solve_in_place(Spectrum& c) const {
    require_same_grid(grid_, c.grid());
    divide_modes(symbol_, grid_, c.data(), values_);
}

PeriodicField Multiplier::apply(const PeriodicField& u) const {
    Spectrum c = analyze(u);
    apply_in_place(c);
    return real_synthesis(c);
}

PeriodicField Multiplier::solve(const PeriodicField& w) const {
    Spectrum c = analyze(w);
    solve_in_place(c);
    return real_synthesis(c);
}

PeriodicField apply_symbol(const SymbolSpec& a, const PeriodicField& u) {
    return Multiplier(a, u.grid()).apply(u);
}

Spectrum apply_symbol(const SymbolSpec& a, const Spectrum& c) {
    const auto table = a.table(c.grid());
    std::vector<Complex> out(c.data().begin(), c.data().end());
    multiply_modes(out, table);
    return Spectrum(c.grid(), std::move(out));
}

PeriodicField solve_symbol(const SymbolSpec& a, const PeriodicField& w) {
    return Multiplier(a, w.grid()).solve(w);
}

PeriodicField derivative(const PeriodicField& u) {
    Spectrum c = analyze(u);
    const Grid& g = u.grid();
    auto data = c.data();
    for (std::size_t i = 0; i < data.size(); ++i) {
        const int k = g.mode_of(i);
        data[i] = (std::abs(k) <= g.max_resolved_mode()) ? Complex(0.0, k) * data[i] : Complex(0.0);
    }
    return real_synthesis(c);
}

// ---------------------------------------------------------------- norms

double sobolev_norm(const Spectrum& c, double q) {
    if (!(q >= 0.0)) throw Error("sobolev_norm requires q >= 0");
    const Grid& g = c.grid();
    double sum = 0.0;
    for (int k = -g.max_resolved_mode(); k <= g.max_resolved_mode(); ++k) {
        const double w = q == 0.0 ? 1.0 : std::pow(1.0 + static_cast<double>(k) * k, q);
        sum += w * std::norm(c[k]);
    }
    return std::sqrt(sum);
}

double sobolev_norm(const PeriodicField& u, double q) {
    if (!(q >= 0.0)) throw Error("sobolev_norm requires q >= 0");
    return sobolev_norm(analyze(u), q);
}

double energy_norm(const PeriodicField& u, const SymbolSpec& a) {
    if (!a.is_symmetric()) throw Error("energy norm needs a symmetric inertia operator, got " + a.name());
    const Spectrum c = analyze(u);
    const Grid& g = u.grid();
    double scale = 0.0;
    for (const auto& v : c.data()) scale = std::max(scale, std::abs(v));
    double sum = 0.0;
    for (int k = -g.max_resolved_mode(); k <= g.max_resolved_mode(); ++k) {
        const double ak = a(k).real();
        const double w = std::norm(c[k]);
        if (ak < 0.0 && std::sqrt(w) > 1e-14 * scale) {
            throw Error("indefinite inertia operator: a(" + std::to_string(k) + ") < 0");
        }
        sum += ak * w;
    }
    return std::sqrt(kTwoPi * std::max(sum, 0.0));
}

double mean(const PeriodicField& u) {
    double s = 0.0;
    for (double v : u.values()) s += v;
    return s / static_cast<double>(u.size());
}

double order_constant(const SymbolSpec& a, const Grid& grid) {
    double c = 0.0;
    for (int k = 0; k <= grid.max_resolved_mode(); ++k) {
        const double kk = static_cast<double>(k);
        const double bound = std::pow(1.0 + kk * kk, a.order() / 2.0);
        const double ratio = std::abs(a(k)) / bound;
        if (!std::isfinite(ratio)) return std::numeric_limits<double>::infinity();
        c = std::max(c, ratio);
    }
    return c;
}

double inverse_order_constant(const SymbolSpec& a, const Grid& grid) {
    double c = 0.0;
    const int first = a.invertible_on() == Invertibility::mean_zero_only ? 1 : 0;
    for (int k = first; k <= grid.max_resolved_mode(); ++k) {
        const double kk = static_cast<double>(k);
        const Complex ak = a(k);
        if (ak == Complex(0.0) || !std::isfinite(std::abs(ak))) {
            return std::numeric_limits<double>::infinity();
        }
        c = std::max(c, std::pow(1.0 + kk * kk, a.order() / 2.0) / std::abs(ak));
    }
    return c;
}

}  // namespace geoflow
