#pragma once

#include <complex>
#include <vector>

namespace coldplasma::fft {

// Real-to-complex forward transform (length n -> n/2+1 bins) and its
// normalized inverse.  Plans are cached per size and guarded by a mutex;
// execution uses the FFTW new-array interface and is safe to call
// concurrently.  Plans are created with FFTW_ESTIMATE so results are
// deterministic across runs.
void forward(const std::vector<double>& in, std::vector<std::complex<double>>& out);
void inverse(const std::vector<std::complex<double>>& in, std::vector<double>& out, int n);

}  // namespace coldplasma::fft
