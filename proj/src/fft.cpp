#include "eclab/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace eclab {

namespace {

// FFTW planning is not thread-safe; execution with new-array plans is.
// Plans are created once per size with FFTW_ESTIMATE so the chosen
// algorithm (and hence every rounding) is the same in every process.
class PlanCache {
public:
    struct Plans {
        fftw_plan forward;
        fftw_plan backward;
    };

    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    Plans get(int n) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = plans_.find(n);
        if (it != plans_.end()) return it->second;
        std::vector<Complex> in(static_cast<std::size_t>(n) * n), out(in.size());
        auto* pin = reinterpret_cast<fftw_complex*>(in.data());
        auto* pout = reinterpret_cast<fftw_complex*>(out.data());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        Plans p{fftw_plan_dft_2d(n, n, pin, pout, FFTW_FORWARD, flags),
                fftw_plan_dft_2d(n, n, pin, pout, FFTW_BACKWARD, flags)};
        plans_.emplace(n, p);
        return p;
    }

    ~PlanCache() {
        for (auto& [n, p] : plans_) {
            fftw_destroy_plan(p.forward);
            fftw_destroy_plan(p.backward);
        }
    }

private:
    std::mutex mutex_;
    std::map<int, Plans> plans_;
};

void execute(fftw_plan plan, std::vector<Complex>& in, std::vector<Complex>& out) {
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

SpectralField forward_transform(const PhysicalField& f) {
    const Grid& g = f.grid();
    std::vector<Complex> in(g.size()), out(g.size());
    std::copy(f.values().begin(), f.values().end(), in.begin());
    execute(PlanCache::instance().get(g.n()).forward, in, out);
    const double scale = 1.0 / static_cast<double>(g.size());
    for (auto& c : out) c *= scale;
    return SpectralField(g, std::move(out));
}

std::vector<Complex> inverse_transform_complex(const SpectralField& f) {
    const Grid& g = f.grid();
    std::vector<Complex> in(f.coeffs().begin(), f.coeffs().end()), out(g.size());
    execute(PlanCache::instance().get(g.n()).backward, in, out);
    return out;
}

PhysicalField inverse_transform(const SpectralField& f) {
    const auto values = inverse_transform_complex(f);
    PhysicalField out(f.grid());
    std::transform(values.begin(), values.end(), out.values().begin(), [](const Complex& c) { return c.real(); });
    return out;
}

double imaginary_residue(const SpectralField& f) {
    const auto values = inverse_transform_complex(f);
    double im = 0.0, mag = 0.0;
    for (const auto& v : values) {
        im = std::max(im, std::abs(v.imag()));
        mag = std::max(mag, std::abs(v));
    }
    return im / std::max(mag, 1e-300);
}

}  // namespace eclab
