#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace geoflow::detail {
namespace {

struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

// FFTW planning is not thread-safe; execution through the new-array
// interface is. Plans are created once per size and never destroyed.
class PlanCache {
public:
    const PlanPair& get(int n) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = plans_.find(n);
        if (it != plans_.end()) return it->second;
        auto* in = fftw_alloc_complex(static_cast<std::size_t>(n));
        auto* out = fftw_alloc_complex(static_cast<std::size_t>(n));
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        PlanPair p;
        p.forward = fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, flags);
        p.backward = fftw_plan_dft_1d(n, in, out, FFTW_BACKWARD, flags);
        fftw_free(in);
        fftw_free(out);
        return plans_.emplace(n, p).first->second;
    }

private:
    std::mutex mutex_;
    std::map<int, PlanPair> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

void forward_dft(std::span<const double> in, std::span<Complex> out) {
    const int n = static_cast<int>(in.size());
    std::vector<Complex> buf(in.begin(), in.end());
    fftw_execute_dft(cache().get(n).forward, as_fftw(buf.data()), as_fftw(out.data()));
    const double scale = 1.0 / n;
    for (auto& c : out) c *= scale;
}

void inverse_dft(std::span<const Complex> in, std::span<Complex> out) {
    const int n = static_cast<int>(in.size());
    std::vector<Complex> buf(in.begin(), in.end());
    fftw_execute_dft(cache().get(n).backward, as_fftw(buf.data()), as_fftw(out.data()));
}

std::vector<Complex> forward_dft(std::span<const double> in) {
    std::vector<Complex> out(in.size());
    forward_dft(in, out);
    return out;
}

std::vector<double> inverse_dft_real(std::span<const Complex> in) {
    std::vector<Complex> tmp(in.size());
    inverse_dft(in, tmp);
    std::vector<double> out(in.size());
    for (std::size_t j = 0; j < in.size(); ++j) out[j] = tmp[j].real();
    return out;
}

}  // namespace geoflow::detail
