#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace coldplasma::fft {

namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

std::mutex plan_mutex;

// FFTW plan creation is not reentrant; executing a plan on new arrays is.
PlanPair& plans_for(int n) {
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<double> real(static_cast<size_t>(n));
    std::vector<std::complex<double>> cplx(static_cast<size_t>(n) / 2 + 1);
    PlanPair p;
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT;
    p.fwd = fftw_plan_dft_r2c_1d(n, real.data(),
                                 reinterpret_cast<fftw_complex*>(cplx.data()), flags);
    // c2r destroys its input in general; we always pass a scratch copy.
    p.bwd = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(cplx.data()),
                                 real.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p.fwd || !p.bwd) throw std::runtime_error("fftw plan creation failed");
    return cache.emplace(n, p).first->second;
}

}  // namespace

void forward(const std::vector<double>& in, std::vector<std::complex<double>>& out) {
    const int n = static_cast<int>(in.size());
    out.resize(static_cast<size_t>(n) / 2 + 1);
    PlanPair& p = plans_for(n);
    fftw_execute_dft_r2c(p.fwd, const_cast<double*>(in.data()),
                         reinterpret_cast<fftw_complex*>(out.data()));
}

void inverse(const std::vector<std::complex<double>>& in, std::vector<double>& out, int n) {
    if (static_cast<int>(in.size()) != n / 2 + 1)
        throw std::invalid_argument("fft::inverse: spectrum length mismatch");
    std::vector<std::complex<double>> scratch(in);  // c2r clobbers its input
    out.resize(static_cast<size_t>(n));
    PlanPair& p = plans_for(n);
    fftw_execute_dft_c2r(p.bwd, reinterpret_cast<fftw_complex*>(scratch.data()),
                         out.data());
    const double scale = 1.0 / n;
    for (double& x : out) x *= scale;
}

}  // namespace coldplasma::fft
