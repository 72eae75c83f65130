#pragma once

// Uniform grid on the circle of circumference 2*pi, sampled fields, their
// Fourier coefficients, and Fourier-multiplier operators.
//
// Coefficient convention: c_n = (1/2pi) * integral of u(x) exp(-i n x) dx,
// realized on the grid as c_n = (1/N) sum_j u_j exp(-i n x_j). With this
// convention sum |c_n|^2 is the mean square of u and the H^q norm is a plain
// weighted mode sum. Integrals over the circle therefore carry a 2*pi factor.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "geoflow/error.hpp"

namespace geoflow {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

class Grid {
public:
    /// n must be even and at least 8.
    explicit Grid(int n);

    int size() const noexcept { return n_; }
    double spacing() const noexcept { return kTwoPi / n_; }
    double node(int j) const noexcept { return kTwoPi * j / n_; }

    /// Largest |mode| a multiplier acts on. The Nyquist mode n/2 is dropped.
    int max_resolved_mode() const noexcept { return n_ / 2 - 1; }
    /// Largest |mode| kept by the 2/3 dealiasing rule.
    int dealias_cutoff() const noexcept { return n_ / 3; }

    /// Storage index (FFT order) of a mode in [-n/2, n/2).
    std::size_t index_of(int mode) const;
    /// Signed mode of an FFT-order storage index.
    int mode_of(std::size_t index) const noexcept {
        const int i = static_cast<int>(index);
        return i < n_ / 2 ? i : i - n_;
    }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    int n_;
};

/// Real samples u(x_j) of a 2*pi-periodic function. Values are always finite.
class PeriodicField {
public:
    PeriodicField(Grid grid, std::vector<double> values);

    static PeriodicField zeros(Grid grid) { return constant(grid, 0.0); }
    static PeriodicField constant(Grid grid, double value);

    template <class Fn>
    static PeriodicField sample(Grid grid, Fn&& fn) {
        std::vector<double> v(static_cast<std::size_t>(grid.size()));
        for (int j = 0; j < grid.size(); ++j) v[static_cast<std::size_t>(j)] = fn(grid.node(j));
        return PeriodicField(grid, std::move(v));
    }

    const Grid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t j) const noexcept { return values_[j]; }
    std::size_t size() const noexcept { return values_.size(); }

    double max() const;
    double min() const;
    double max_abs() const;

    PeriodicField& operator+=(const PeriodicField& other);
    PeriodicField& operator-=(const PeriodicField& other);
    PeriodicField& operator*=(const PeriodicField& other);
    PeriodicField& operator*=(double scale);

private:
    Grid grid_;
    std::vector<double> values_;
};

PeriodicField operator+(PeriodicField lhs, const PeriodicField& rhs);
PeriodicField operator-(PeriodicField lhs, const PeriodicField& rhs);
/// Pointwise product.
PeriodicField operator*(PeriodicField lhs, const PeriodicField& rhs);
PeriodicField operator*(double scale, PeriodicField field);
PeriodicField operator-(PeriodicField field);

/// Throws Error("grid mismatch") unless both grids agree.
void require_same_grid(const Grid& a, const Grid& b);

/// Fourier coefficients for modes -n/2 .. n/2-1, stored in FFT order.
class Spectrum {
public:
    Spectrum(Grid grid, std::vector<Complex> coeffs);
    static Spectrum zeros(Grid grid);

    const Grid& grid() const noexcept { return grid_; }
    /// Coefficient of a signed mode in [-n/2, n/2).
    Complex operator[](int mode) const { return coeffs_[grid_.index_of(mode)]; }
    void set(int mode, Complex value) { coeffs_[grid_.index_of(mode)] = value; }

    std::span<const Complex> data() const noexcept { return coeffs_; }
    std::span<Complex> data() noexcept { return coeffs_; }

    /// c_{-n} == conj(c_n) (and real c_0, c_{n/2}) up to rel_tol * max|c|.
    bool is_hermitian(double rel_tol = 1e-12) const;

private:
    Grid grid_;
    std::vector<Complex> coeffs_;
};

enum class SymbolKind { bessel, helmholtz_power, clm, derivative, hilbert, identity, custom };
enum class Invertibility { all_modes, mean_zero_only };

/// A Fourier multiplier a(k) with declared order r.
///
/// Builtins: bessel(s) = (1+k^2)^s, helmholtz_power(kappa) = (1+k^2)^kappa,
/// clm = |k|, derivative = ik, hilbert = -i sign(k), identity = 1.
/// A custom symbol is an even table a(0..K); modes beyond K are not covered.
class SymbolSpec {
public:
    static SymbolSpec bessel(double s);
    static SymbolSpec helmholtz_power(int kappa);
    static SymbolSpec clm();
    static SymbolSpec derivative();
    static SymbolSpec hilbert();
    static SymbolSpec identity();
    static SymbolSpec custom(std::vector<double> table, double order, Invertibility invertible_on);

    SymbolKind kind() const noexcept { return kind_; }
    double order() const noexcept { return order_; }
    Invertibility invertible_on() const noexcept { return invertible_on_; }
    /// s for bessel, kappa for helmholtz_power, 0 otherwise.
    double parameter() const noexcept { return parameter_; }
    /// Real-valued symbol, i.e. a symmetric operator. False for derivative and hilbert.
    bool is_symmetric() const noexcept;

    Complex operator()(int k) const;
    std::string name() const;

    /// Symbol sampled on all modes of a grid in FFT order, Nyquist set to zero.
    std::vector<Complex> table(const Grid& grid) const;

private:
    SymbolSpec(SymbolKind kind, double parameter, double order, Invertibility inv)
        : kind_(kind), parameter_(parameter), order_(order), invertible_on_(inv) {}

    SymbolKind kind_;
    double parameter_;
    double order_;
    Invertibility invertible_on_;
    std::vector<double> custom_;
};

/// Fourier coefficients of a field.
Spectrum analyze(const PeriodicField& u);
/// Inverse of analyze. Throws Error("complex output") for non-Hermitian input.
PeriodicField synthesize(const Spectrum& c);

PeriodicField apply_symbol(const SymbolSpec& a, const PeriodicField& u);
/// Mode-wise product a(n) c_n; the Nyquist mode is zeroed.
Spectrum apply_symbol(const SymbolSpec& a, const Spectrum& c);
/// Solves apply_symbol(a, x) = w on the resolved modes.
PeriodicField solve_symbol(const SymbolSpec& a, const PeriodicField& w);

/// Spectral derivative; same as apply_symbol(SymbolSpec::derivative(), u).
PeriodicField derivative(const PeriodicField& u);

/// (sum over resolved n of (1+n^2)^q |c_n|^2)^{1/2}. Throws for q < 0.
double sobolev_norm(const PeriodicField& u, double q);
double sobolev_norm(const Spectrum& c, double q);

/// (integral of (Au) u dx)^{1/2} = (2pi sum a(n) |c_n|^2)^{1/2}.
double energy_norm(const PeriodicField& u, const SymbolSpec& a);

/// Mean value of a field, (1/2pi) * integral = trapezoid rule on the grid.
double mean(const PeriodicField& u);

/// max over resolved k >= 0 of |a(k)| / (1+k^2)^{r/2}.
double order_constant(const SymbolSpec& a, const Grid& grid);
/// max over resolved invertible k of |1/a(k)| * (1+k^2)^{r/2}; +inf if a(k) = 0 there.
double inverse_order_constant(const SymbolSpec& a, const Grid& grid);

/// A symbol tabulated once on a fixed grid. Used on hot paths where
/// re-evaluating the symbol per call would dominate.
class Multiplier {
public:
    Multiplier(const SymbolSpec& a, const Grid& grid);

    const SymbolSpec& symbol() const noexcept { return symbol_; }
    const Grid& grid() const noexcept { return grid_; }
    std::span<const Complex> values() const noexcept { return values_; }

    PeriodicField apply(const PeriodicField& u) const;
    PeriodicField solve(const PeriodicField& w) const;
    void apply_in_place(Spectrum& c) const;
    void solve_in_place(Spectrum& c) const;

private:
    SymbolSpec symbol_;
    Grid grid_;
    std::vector<Complex> values_;
};

}  // namespace geoflow
