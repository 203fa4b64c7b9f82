#include "helmlab/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>

#include "helmlab/errors.hpp"

namespace helmlab {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// Aligned scratch buffer plus a plan; planning is serialized because FFTW's
// planner is not reentrant. Execution itself is thread safe.
class Plan {
public:
    Plan(const std::vector<int>& dims, int howmany, int stride, int dist, int sign) {
        std::size_t total = 1;
        for (int d : dims) total *= std::size_t(d);
        total *= std::size_t(howmany);
        buf_ = fftw_alloc_complex(total);
        std::lock_guard<std::mutex> lk(planner_mutex());
        plan_ = fftw_plan_many_dft(int(dims.size()), dims.data(), howmany, buf_, nullptr, stride, dist, buf_,
                                   nullptr, stride, dist, sign, FFTW_ESTIMATE);
        if (!plan_) throw InvalidInput("fft: planner failed");
    }
    ~Plan() {
        {
            std::lock_guard<std::mutex> lk(planner_mutex());
            fftw_destroy_plan(plan_);
        }
        fftw_free(buf_);
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;

    cplx* data() { return reinterpret_cast<cplx*>(buf_); }
    void run() { fftw_execute(plan_); }

private:
    fftw_complex* buf_ = nullptr;
    fftw_plan plan_ = nullptr;
};

double axis_scale(double half_width, std::size_t n, Direction dir) {
    const double step = dir == Direction::forward ? 2.0 * half_width / double(n) : std::numbers::pi / half_width;
    return step / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

// With x_k = -L + k h and xi_j = (j - N/2) pi / L the trapezoid sum becomes
// (-1)^j FFT[(-1)^k g](j) because N/2 is even; no index shuffling is needed.
void dft_axis_range(const GridSpec& g, int first, int last, CVec& data, Direction dir) {
    if (first < 0 || last > g.ndim() || first >= last) throw InvalidInput("dft: bad axis range");
    if (data.size() != g.size()) throw InvalidInput("dft: data length does not match grid");
    std::size_t inner = 1, span = 1;
    for (int a = last; a < g.ndim(); ++a) inner *= g.points[a];
    std::vector<int> dims;
    double scale = 1.0;
    for (int a = first; a < last; ++a) {
        dims.push_back(int(g.points[a]));
        span *= g.points[a];
        scale *= axis_scale(g.half_width[a], g.points[a], dir);
    }
    const std::size_t block = span * inner;
    const std::size_t outer = g.size() / block;
    Plan plan(dims, int(inner), int(inner), 1, dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD);
    cplx* buf = plan.data();
    std::vector<double> sign(span);
    for (std::size_t s = 0; s < span; ++s) {
        std::size_t r = s, par = 0;
        for (int a = last - 1; a >= first; --a) {
            par += r % g.points[a];
            r /= g.points[a];
        }
        sign[s] = (par & 1u) ? -1.0 : 1.0;
    }
    for (std::size_t o = 0; o < outer; ++o) {
        cplx* d = data.data() + o * block;
        for (std::size_t s = 0; s < span; ++s)
            for (std::size_t i = 0; i < inner; ++i) buf[s * inner + i] = sign[s] * d[s * inner + i];
        plan.run();
        for (std::size_t s = 0; s < span; ++s)
            for (std::size_t i = 0; i < inner; ++i) d[s * inner + i] = (sign[s] * scale) * buf[s * inner + i];
    }
}

void dft_leading_axes(const GridSpec& g, int naxes, CVec& data, Direction dir) {
    dft_axis_range(g, 0, naxes, data, dir);
}

void dft_block(const std::vector<std::size_t>& shape, const std::vector<double>& half_width, cplx* data,
               Direction dir) {
    GridSpec g;
    g.points = shape;
    g.half_width = half_width;
    CVec tmp(data, data + g.size());
    dft_leading_axes(g, g.ndim(), tmp, dir);
    std::memcpy(static_cast<void*>(data), tmp.data(), tmp.size() * sizeof(cplx));
}

SampledField dft(const SampledField& field, Direction dir) {
    field.grid.validate();
    if (field.values.size() != field.grid.size()) throw InvalidInput("dft: length mismatch");
    const Domain want = dir == Direction::forward ? Domain::physical : Domain::frequency;
    if (field.domain != want) throw InvalidInput("dft: domain tag does not match direction");
    SampledField out(field.grid, field.values, dir == Direction::forward ? Domain::frequency : Domain::physical);
    dft_leading_axes(out.grid, out.grid.ndim(), out.values, dir);
    return out;
}

}  // namespace helmlab
