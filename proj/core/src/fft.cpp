#include "idregret/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <memory>
#include <mutex>
#include <numbers>
#include <unordered_map>

#include "idregret/errors.hpp"

namespace idregret::fft {

namespace {

// The FFTW planner is not thread-safe; plan creation/destruction is
// serialized. Execution runs lock-free on thread-local buffers.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct Slot {
    std::size_t n = 0;
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    explicit Slot(std::size_t size) : n(size) {
        in = fftw_alloc_complex(n);
        out = fftw_alloc_complex(n);
        std::lock_guard<std::mutex> lock(planner_mutex());
        forward = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_FORWARD, FFTW_ESTIMATE);
        backward = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~Slot() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
        fftw_free(in);
        fftw_free(out);
    }
    Slot(const Slot&) = delete;
    Slot& operator=(const Slot&) = delete;
};

Slot& slot_for(std::size_t n) {
    thread_local std::unordered_map<std::size_t, std::unique_ptr<Slot>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<Slot>(n)).first;
    return *it->second;
}

std::vector<std::complex<double>> run(const std::vector<std::complex<double>>& x, bool fwd) {
    const std::size_t n = x.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw ConfigError("fft: transform size must be a power of two");
    Slot& s = slot_for(n);
    static_assert(sizeof(fftw_complex) == sizeof(std::complex<double>));
    std::memcpy(static_cast<void*>(s.in), static_cast<const void*>(x.data()),
                n * sizeof(fftw_complex));
    fftw_execute(fwd ? s.forward : s.backward);
    std::vector<std::complex<double>> y(n);
    std::memcpy(static_cast<void*>(y.data()), static_cast<const void*>(s.out),
                n * sizeof(fftw_complex));
    return y;
}

}  // namespace

std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& in) {
    return run(in, true);
}

std::vector<std::complex<double>> idft(const std::vector<std::complex<double>>& in) {
    return run(in, false);
}

double frequency(std::size_t k, std::size_t n, double spacing) {
    return 2.0 * std::numbers::pi * static_cast<double>(signed_index(k, n)) /
           (static_cast<double>(n) * spacing);
}

std::vector<std::complex<double>> spectrum_from_grid(const GriddedFunction& f) {
    const Grid1D& g = f.grid;
    if (!g.symmetric_about_zero())
        throw ConfigError("spectrum_from_grid: grid must be symmetric about zero");
    const std::size_t n = g.n;
    std::vector<std::complex<double>> buf(n);
    for (std::size_t j = 0; j < n; ++j) buf[j] = f.values[j];
    std::vector<std::complex<double>> F = idft(buf);
    const double h = g.spacing();
    for (std::size_t k = 0; k < n; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        F[k] *= sign * h;
    }
    return F;
}

std::vector<double> grid_from_spectrum(const std::vector<std::complex<double>>& fhat,
                                       const Grid1D& grid) {
    if (!grid.symmetric_about_zero())
        throw ConfigError("grid_from_spectrum: grid must be symmetric about zero");
    const std::size_t n = grid.n;
    if (fhat.size() != n) throw ConfigError("grid_from_spectrum: size mismatch");
    std::vector<std::complex<double>> buf(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        buf[k] = sign * fhat[k];
    }
    std::vector<std::complex<double>> v = dft(buf);
    const double scale = 1.0 / (static_cast<double>(n) * grid.spacing());
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = v[j].real() * scale;
    return out;
}

}  // namespace idregret::fft
