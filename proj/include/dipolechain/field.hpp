#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "dipolechain/core.hpp"

namespace dipole {

// Per-site field vectors H_l, in units of c_m / spacing^alpha.
using FieldArray = std::vector<Vec3>;

// Spectral representation of the even scalar kernel k(r) = 1/|r|^alpha with
// k(0) = 0, zero-padded to a power of two >= 2N so the circular convolution
// equals the open-boundary linear one. Owns FFTW plans and work buffers, so
// one instance must not be shared across threads.
class FieldKernel {
  public:
    FieldKernel(std::size_t n_sites, double alpha);
    ~FieldKernel();
    FieldKernel(FieldKernel&&) noexcept;
    FieldKernel& operator=(FieldKernel&&) noexcept;
    FieldKernel(const FieldKernel&) = delete;
    FieldKernel& operator=(const FieldKernel&) = delete;

    std::size_t n_sites() const;
    double alpha() const;
    std::size_t padded_length() const;

    // Convolves one scalar per-site sequence with the kernel:
    // out[l] = sum_{l' != l} in[l'] / |l - l'|^alpha.
    void convolve(const std::vector<double>& in, std::vector<double>& out);

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Exact pairwise sum, O(N^2), deterministic ascending-distance order.
// H_l = sign * c_m * sum_{l' != l} (3 s_x' e_x - s') / |r|^alpha.
FieldArray field_direct(const SpinChain& chain, double alpha, double c_m, int sign = +1);

// FFT evaluation, O(N log N); matches field_direct to ~1e-12 relative.
// Throws std::invalid_argument on a kernel built for a different N.
FieldArray field_fft(const SpinChain& chain, FieldKernel& kernel, double c_m, int sign = +1);

// E = (c_m/2) sum_{l != l'} [s_l . s_l' - 3 s_x s_x'] / |r|^alpha; the field
// above is -dE/ds, so undamped precession conserves E.
double total_energy(const SpinChain& chain, double alpha, double c_m);

}  // namespace dipole
