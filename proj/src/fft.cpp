#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace cnoidal::detail {

namespace {

std::mutex planner_mutex;

// FFTW plans are not thread-safe to create; executions via the new-array
// interface are.  Plans are cached per (size, sign) with FFTW_ESTIMATE so
// results are deterministic run to run.
fftw_plan plan_for(int n, int sign) {
    static std::map<std::pair<int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(planner_mutex);
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    fftw_complex* buf = fftw_alloc_complex(static_cast<size_t>(n));
    fftw_plan p = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    cache.emplace(key, p);
    return p;
}

} // namespace

void dft(std::vector<std::complex<double>>& data, int sign) {
    if (data.empty())
        throw std::invalid_argument("dft: empty input");
    fftw_plan p = plan_for(static_cast<int>(data.size()), sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
    auto* raw = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, raw, raw);
}

std::vector<std::complex<double>> coeffs_of(const std::vector<double>& values) {
    const size_t n = values.size();
    std::vector<std::complex<double>> c(n);
    for (size_t j = 0; j < n; ++j)
        c[j] = values[j];
    dft(c, -1);
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& z : c)
        z *= inv;
    return c;
}

std::vector<double> values_of(const std::vector<std::complex<double>>& coeffs) {
    std::vector<std::complex<double>> c(coeffs);
    dft(c, +1);
    std::vector<double> v(c.size());
    for (size_t j = 0; j < c.size(); ++j)
        v[j] = c[j].real();
    return v;
}

} // namespace cnoidal::detail
