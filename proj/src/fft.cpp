#include "fft.hpp"

#include <fftw3.h>

#include "intertwine/errors.hpp"

namespace intertwine::detail {

namespace {

struct Plan {
    fftw_plan plan = nullptr;
    ~Plan() {
        if (plan) fftw_destroy_plan(plan);
    }
};

fftw_complex* as_fftw(std::vector<Complex>& v) { return reinterpret_cast<fftw_complex*>(v.data()); }

}  // namespace

void fft_cube(std::vector<Complex>& data, int m, int M, int sign) {
    std::vector<int> dims(m, M);
    Plan p;
    p.plan = fftw_plan_dft(m, dims.data(), as_fftw(data), as_fftw(data),
                           sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!p.plan) throw ShapeError("fft: plan creation failed");
    fftw_execute(p.plan);
}

void fft_batch(std::vector<Complex>& data, int M, int count, int sign) {
    Plan p;
    int n = M;
    p.plan = fftw_plan_many_dft(1, &n, count, as_fftw(data), nullptr, 1, M, as_fftw(data), nullptr,
                                1, M, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!p.plan) throw ShapeError("fft: plan creation failed");
    fftw_execute(p.plan);
}

}  // namespace intertwine::detail
