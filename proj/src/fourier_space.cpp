#include "cnoidal/fourier_space.hpp"

#include "fft.hpp"

#include <cmath>
#include <stdexcept>

namespace cnoidal {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int signed_mode(int k, int n) { return k < n / 2 ? k : k - n; }

} // namespace

PeriodicGrid::PeriodicGrid(double half_period, int size) : L(half_period), n(size) {
    if (!(L > 0.0))
        throw std::domain_error("PeriodicGrid: half period must be positive");
    if (n < 64 || !power_of_two(n))
        throw std::invalid_argument("PeriodicGrid: grid size must be a power of two >= 64");
}

std::vector<double> PeriodicGrid::nodes() const {
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j)
        x[j] = node(j);
    return x;
}

double PeriodicGrid::wavenumber(int k) const {
    return signed_mode(k, n) * M_PI / L;
}

std::vector<cdouble> analyze(const std::vector<double>& values) {
    if (!power_of_two(static_cast<int>(values.size())))
        throw std::invalid_argument("analyze: length must be a power of two");
    return detail::coeffs_of(values);
}

std::vector<double> synthesize(const std::vector<cdouble>& coeffs) {
    if (!power_of_two(static_cast<int>(coeffs.size())))
        throw std::invalid_argument("synthesize: length must be a power of two");
    return detail::values_of(coeffs);
}

PeriodicProfile::PeriodicProfile(PeriodicGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != grid_.n)
        throw std::invalid_argument("PeriodicProfile: values/grid size mismatch");
    coeffs_ = analyze(values_);
}

PeriodicProfile PeriodicProfile::from_coeffs(PeriodicGrid grid, std::vector<cdouble> coeffs) {
    if (static_cast<int>(coeffs.size()) != grid.n)
        throw std::invalid_argument("PeriodicProfile: coeffs/grid size mismatch");
    auto vals = synthesize(coeffs);
    return PeriodicProfile(grid, std::move(vals), std::move(coeffs));
}

double PeriodicProfile::h1_norm() const {
    double s2 = 0.0;
    for (int k = 0; k < grid_.n; ++k) {
        const double s = grid_.wavenumber(k);
        s2 += (1.0 + s * s) * std::norm(coeffs_[k]);
    }
    return std::sqrt(2.0 * grid_.L * s2);
}

double PeriodicProfile::odd_fraction() const {
    // Even real profiles have purely real coefficients; the sine (odd)
    // content lives in the imaginary parts.
    double odd = 0.0, tot = 0.0;
    for (int k = 0; k < grid_.n; ++k) {
        const double s = grid_.wavenumber(k);
        const double w = 1.0 + s * s;
        odd += w * coeffs_[k].imag() * coeffs_[k].imag();
        tot += w * std::norm(coeffs_[k]);
    }
    return tot > 0.0 ? std::sqrt(odd / tot) : 0.0;
}

PeriodicProfile PeriodicProfile::derivative(int order) const {
    std::vector<cdouble> c(coeffs_);
    const int n = grid_.n;
    for (int k = 0; k < n; ++k) {
        const double s = grid_.wavenumber(k);
        cdouble factor = std::pow(cdouble(0.0, s), order);
        c[k] *= factor;
    }
    if (order % 2 == 1)
        c[n / 2] = 0.0; // odd-order derivative is sign-ambiguous at Nyquist
    return from_coeffs(grid_, std::move(c));
}

double PeriodicProfile::eval(double x) const {
    const int n = grid_.n;
    double acc = coeffs_[0].real();
    for (int k = 1; k < n / 2; ++k) {
        const double s = k * M_PI / grid_.L;
        const cdouble z = coeffs_[k] * std::polar(1.0, s * x) +
                          coeffs_[n - k] * std::polar(1.0, -s * x);
        acc += z.real();
    }
    acc += (coeffs_[n / 2] * std::polar(1.0, -(n / 2) * M_PI / grid_.L * x)).real();
    return acc;
}

double h1_distance(const PeriodicProfile& a, const PeriodicProfile& b) {
    if (a.grid().n != b.grid().n ||
        std::abs(a.grid().L - b.grid().L) > 1e-12 * std::abs(a.grid().L))
        throw std::invalid_argument("h1_distance: profiles live on different grids");
    double s2 = 0.0;
    for (int k = 0; k < a.grid().n; ++k) {
        const double s = a.grid().wavenumber(k);
        s2 += (1.0 + s * s) * std::norm(a.coeffs()[k] - b.coeffs()[k]);
    }
    return std::sqrt(2.0 * a.grid().L * s2);
}

double speed_squared(double eps, double V2, double c_kdv, SpeedForm form) {
    if (form == SpeedForm::quadratic12)
        return V2 * (1.0 + eps * eps * c_kdv / 12.0);
    const double c = std::sqrt(V2) * (1.0 + eps * eps * c_kdv / 24.0);
    return c * c;
}

MultiplierSymbol MultiplierSymbol::lattice(double eps, double V2, double c_kdv, SpeedForm form) {
    if (!(eps > 0.0))
        throw std::domain_error("MultiplierSymbol::lattice: eps must be positive "
                                "(the eps -> 0 limit is the continuum symbol)");
    MultiplierSymbol sym{Kind::eps, eps, speed_squared(eps, V2, c_kdv, form), V2, c_kdv};
    if (!(sym.c2 > V2))
        throw std::domain_error("MultiplierSymbol::lattice: need supersonic speed c^2 > V''(0)");
    return sym;
}

MultiplierSymbol MultiplierSymbol::continuum(double V2, double c_kdv) {
    return MultiplierSymbol{Kind::zero, 0.0, V2, V2, c_kdv};
}

double MultiplierSymbol::operator()(double s) const {
    return kind == Kind::eps ? symbol_p_eps(s, *this) : symbol_p0(s, *this);
}

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

double symbol_p_eps(double s, const MultiplierSymbol& sym) {
    if (sym.kind != MultiplierSymbol::Kind::eps)
        throw std::invalid_argument("symbol_p_eps: symbol is not of lattice kind");
    const double g = sinc(sym.eps * s / 2.0);
    const double g2 = g * g;
    return sym.eps * sym.eps * g2 / (sym.c2 - sym.V2 * g2);
}

double symbol_p0(double s, const MultiplierSymbol& sym) {
    if (sym.kind != MultiplierSymbol::Kind::zero)
        throw std::invalid_argument("symbol_p0: symbol is not of continuum kind");
    return 12.0 / (sym.V2 * (sym.c_kdv + s * s));
}

PeriodicProfile apply_multiplier(const MultiplierSymbol& sym, const PeriodicProfile& f) {
    std::vector<cdouble> c(f.coeffs());
    for (int k = 0; k < f.grid().n; ++k)
        c[k] *= sym(f.grid().wavenumber(k));
    return PeriodicProfile::from_coeffs(f.grid(), std::move(c));
}

double multiplier_gap(double eps, const PeriodicGrid& grid, double V2, double c_kdv) {
    if (eps == 0.0)
        return 0.0;
    const auto peps = MultiplierSymbol::lattice(eps, V2, c_kdv);
    const auto p0 = MultiplierSymbol::continuum(V2, c_kdv);
    double gap = 0.0;
    for (int k = 0; k < grid.n; ++k) {
        const double s = grid.wavenumber(k);
        gap = std::max(gap, std::abs(peps(s) - p0(s)));
    }
    return gap;
}

std::vector<double> pad_synthesize(const std::vector<cdouble>& coeffs, int factor) {
    const int n = static_cast<int>(coeffs.size());
    const int N = factor * n;
    std::vector<cdouble> c(N, 0.0);
    for (int k = 0; k < n / 2; ++k)
        c[k] = coeffs[k];
    for (int k = 1; k < n / 2; ++k)
        c[N - k] = coeffs[n - k];
    c[n / 2] = 0.5 * coeffs[n / 2];
    c[N - n / 2] = 0.5 * coeffs[n / 2];
    return detail::values_of(c);
}

std::vector<cdouble> truncate_analyze(const std::vector<double>& padded, int n) {
    const int N = static_cast<int>(padded.size());
    if (N < 2 * n)
        throw std::invalid_argument("truncate_analyze: input is not padded");
    const auto c = detail::coeffs_of(padded);
    std::vector<cdouble> out(n);
    for (int k = 0; k < n / 2; ++k)
        out[k] = c[k];
    for (int k = 1; k < n / 2; ++k)
        out[n - k] = c[N - k];
    out[n / 2] = c[n / 2] + c[N - n / 2];
    return out;
}

std::vector<double> even_coeffs(const PeriodicProfile& f) {
    const int n = f.grid().n;
    std::vector<double> a(n / 2 + 1);
    a[0] = f.coeffs()[0].real();
    for (int k = 1; k < n / 2; ++k)
        a[k] = 0.5 * (f.coeffs()[k].real() + f.coeffs()[n - k].real());
    a[n / 2] = f.coeffs()[n / 2].real();
    return a;
}

PeriodicProfile profile_from_even(const PeriodicGrid& grid, const std::vector<double>& a) {
    const int n = grid.n;
    if (static_cast<int>(a.size()) != n / 2 + 1)
        throw std::invalid_argument("profile_from_even: expected n/2 + 1 cosine coefficients");
    std::vector<cdouble> c(n, 0.0);
    c[0] = a[0];
    for (int k = 1; k < n / 2; ++k) {
        c[k] = a[k];
        c[n - k] = a[k];
    }
    c[n / 2] = a[n / 2];
    return PeriodicProfile::from_coeffs(grid, std::move(c));
}

double h1_norm_even(double L, const std::vector<double>& a) {
    const int half = static_cast<int>(a.size()) - 1;
    double s2 = 0.0;
    for (int k = 0; k <= half; ++k) {
        const double s = k * M_PI / L;
        const double w = 1.0 + s * s;
        const double mult = (k == 0 || k == half) ? 1.0 : 2.0;
        s2 += mult * w * a[k] * a[k];
    }
    return std::sqrt(2.0 * L * s2);
}

std::vector<double> pad_synthesize_even(const std::vector<double>& a, int n, int factor) {
    const int N = factor * n;
    std::vector<cdouble> c(N, 0.0);
    c[0] = a[0];
    for (int k = 1; k < n / 2; ++k) {
        c[k] = a[k];
        c[N - k] = a[k];
    }
    c[n / 2] = 0.5 * a[n / 2];
    c[N - n / 2] = 0.5 * a[n / 2];
    return detail::values_of(c);
}

std::vector<double> truncate_analyze_even(const std::vector<double>& padded, int n) {
    const int N = static_cast<int>(padded.size());
    if (N < 2 * n)
        throw std::invalid_argument("truncate_analyze_even: input is not padded");
    const auto c = detail::coeffs_of(padded);
    std::vector<double> a(n / 2 + 1);
    a[0] = c[0].real();
    for (int k = 1; k < n / 2; ++k)
        a[k] = 0.5 * (c[k].real() + c[N - k].real());
    a[n / 2] = c[n / 2].real() + c[N - n / 2].real();
    return a;
}

double eval_even(const std::vector<double>& a, double L, double x) {
    const int half = static_cast<int>(a.size()) - 1;
    double acc = a[0];
    for (int k = 1; k < half; ++k)
        acc += 2.0 * a[k] * std::cos(k * M_PI * x / L);
    acc += a[half] * std::cos(half * M_PI * x / L);
    return acc;
}

} // namespace cnoidal
