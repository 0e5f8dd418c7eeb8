#include "dipolechain/field.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace dipole {

namespace {

double inv_pow(double r, double alpha) { return 1.0 / std::pow(r, alpha); }

}  // namespace

struct FieldKernel::Impl {
    std::size_t n = 0;
    double alpha = 3.0;
    std::size_t len = 0;  // padded transform size, power of two >= 2n
    std::vector<std::complex<double>> kernel_hat;  // r2c spectrum, len/2+1 bins
    double* real_buf = nullptr;
    fftw_complex* cplx_buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;

    Impl(std::size_t n_sites, double a) : n(n_sites), alpha(a) {
        len = 1;
        while (len < 2 * n) len *= 2;
        real_buf = fftw_alloc_real(len);
        cplx_buf = fftw_alloc_complex(len / 2 + 1);
        fwd = fftw_plan_dft_r2c_1d(static_cast<int>(len), real_buf, cplx_buf, FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_1d(static_cast<int>(len), cplx_buf, real_buf, FFTW_ESTIMATE);

        // Even kernel on the circle: k[d] = k[len-d] = 1/d^alpha, k[0] = 0.
        for (std::size_t i = 0; i < len; ++i) real_buf[i] = 0.0;
        for (std::size_t d = 1; d < n; ++d) {
            const double v = inv_pow(static_cast<double>(d), alpha);
            real_buf[d] = v;
            real_buf[len - d] = v;
        }
        fftw_execute(fwd);
        kernel_hat.resize(len / 2 + 1);
        for (std::size_t i = 0; i < kernel_hat.size(); ++i)
            kernel_hat[i] = {cplx_buf[i][0], cplx_buf[i][1]};
    }

    ~Impl() {
        if (fwd) fftw_destroy_plan(fwd);
        if (inv) fftw_destroy_plan(inv);
        if (real_buf) fftw_free(real_buf);
        if (cplx_buf) fftw_free(cplx_buf);
    }
};

FieldKernel::FieldKernel(std::size_t n_sites, double alpha)
    : impl_(std::make_unique<Impl>(n_sites, alpha)) {}
FieldKernel::~FieldKernel() = default;
FieldKernel::FieldKernel(FieldKernel&&) noexcept = default;
FieldKernel& FieldKernel::operator=(FieldKernel&&) noexcept = default;

std::size_t FieldKernel::n_sites() const { return impl_->n; }
double FieldKernel::alpha() const { return impl_->alpha; }
std::size_t FieldKernel::padded_length() const { return impl_->len; }

void FieldKernel::convolve(const std::vector<double>& in, std::vector<double>& out) {
    Impl& im = *impl_;
    if (in.size() != im.n)
        throw std::invalid_argument("FieldKernel::convolve: input length " +
                                    std::to_string(in.size()) + " does not match kernel N " +
                                    std::to_string(im.n));
    for (std::size_t i = 0; i < im.n; ++i) im.real_buf[i] = in[i];
    for (std::size_t i = im.n; i < im.len; ++i) im.real_buf[i] = 0.0;
    fftw_execute(im.fwd);
    const double scale = 1.0 / static_cast<double>(im.len);
    for (std::size_t i = 0; i < im.kernel_hat.size(); ++i) {
        const std::complex<double> v =
            std::complex<double>{im.cplx_buf[i][0], im.cplx_buf[i][1]} * im.kernel_hat[i] * scale;
        im.cplx_buf[i][0] = v.real();
        im.cplx_buf[i][1] = v.imag();
    }
    fftw_execute(im.inv);
    out.resize(im.n);
    for (std::size_t i = 0; i < im.n; ++i) out[i] = im.real_buf[i];
}

FieldArray field_direct(const SpinChain& chain, double alpha, double c_m, int sign) {
    const std::size_t n = chain.size();
    const double pref = sign * c_m;
    FieldArray field(n);
    std::vector<double> w(n);  // w[d] = 1/(d*a)^alpha
    for (std::size_t d = 1; d < n; ++d)
        w[d] = inv_pow(static_cast<double>(d) * chain.spacing, alpha);

    for (std::size_t l = 0; l < n; ++l) {
        Vec3 h{};
        // Ascending-distance order keeps the sum bit-stable.
        for (std::size_t d = 1; d < n; ++d) {
            Vec3 s{};
            bool any = false;
            if (l >= d) {
                s += chain.spins[l - d];
                any = true;
            }
            if (l + d < n) {
                s += chain.spins[l + d];
                any = true;
            }
            if (!any) break;
            h += Vec3{2.0 * s.x, -s.y, -s.z} * w[d];
        }
        field[l] = h * pref;
    }
    return field;
}

FieldArray field_fft(const SpinChain& chain, FieldKernel& kernel, double c_m, int sign) {
    const std::size_t n = chain.size();
    if (kernel.n_sites() != n)
        throw std::invalid_argument("field_fft: kernel built for N = " +
                                    std::to_string(kernel.n_sites()) + ", chain has N = " +
                                    std::to_string(n));
    const double pref =
        sign * c_m * inv_pow(chain.spacing, kernel.alpha());  // kernel uses unit spacing

    std::vector<double> comp(n), conv(n);
    FieldArray field(n);
    const double fac[3] = {2.0, -1.0, -1.0};
    for (int c = 0; c < 3; ++c) {
        for (std::size_t l = 0; l < n; ++l) {
            const Vec3& s = chain.spins[l];
            comp[l] = c == 0 ? s.x : (c == 1 ? s.y : s.z);
        }
        kernel.convolve(comp, conv);
        for (std::size_t l = 0; l < n; ++l) {
            double* out = c == 0 ? &field[l].x : (c == 1 ? &field[l].y : &field[l].z);
            *out = pref * fac[c] * conv[l];
        }
    }
    return field;
}

double total_energy(const SpinChain& chain, double alpha, double c_m) {
    const std::size_t n = chain.size();
    double e = 0.0;
    for (std::size_t l = 0; l + 1 < n; ++l) {
        for (std::size_t m = l + 1; m < n; ++m) {
            const Vec3& a = chain.spins[l];
            const Vec3& b = chain.spins[m];
            const double r = static_cast<double>(m - l) * chain.spacing;
            e += (a.dot(b) - 3.0 * a.x * b.x) * inv_pow(r, alpha);
        }
    }
    return c_m * e;
}

}  // namespace dipole
