#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>
#include <vector>

#include "dipolechain/field.hpp"

using namespace dipole;

namespace {

SpinChain random_chain(std::size_t n, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    SpinChain chain;
    chain.spins.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec3 v{gauss(rng), gauss(rng), gauss(rng)};
        while (v.norm() < 1e-6) v = {gauss(rng), gauss(rng), gauss(rng)};
        chain.spins.push_back(v.normalized());
    }
    return chain;
}

// Oracle: naive double loop straight from the vector form
// H_l = c_m sum_{l'!=l} (3 (s.r^)r^ - s) / |r|^alpha with r^ = +-e_x.
FieldArray oracle_field(const SpinChain& chain, double alpha, double c_m) {
    const std::size_t n = chain.size();
    FieldArray field(n, Vec3{});
    for (std::size_t l = 0; l < n; ++l) {
        Vec3 h{};
        for (std::size_t m = 0; m < n; ++m) {
            if (m == l) continue;
            const double rx = (static_cast<double>(m) - static_cast<double>(l)) * chain.spacing;
            const Vec3 rhat{rx > 0 ? 1.0 : -1.0, 0.0, 0.0};
            const Vec3& s = chain.spins[m];
            h += (rhat * (3.0 * s.dot(rhat)) - s) * (1.0 / std::pow(std::abs(rx), alpha));
        }
        field[l] = h * c_m;
    }
    return field;
}

double oracle_energy(const SpinChain& chain, double alpha, double c_m) {
    const std::size_t n = chain.size();
    double e = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t m = 0; m < n; ++m) {
            if (m == l) continue;
            const double r = std::abs(static_cast<double>(m) - static_cast<double>(l)) *
                             chain.spacing;
            const Vec3& a = chain.spins[l];
            const Vec3& b = chain.spins[m];
            e += 0.5 * (a.dot(b) - 3.0 * a.x * b.x) / std::pow(r, alpha);
        }
    }
    return c_m * e;
}

double max_abs(const FieldArray& f) {
    double m = 0.0;
    for (const Vec3& v : f)
        m = std::max({m, std::abs(v.x), std::abs(v.y), std::abs(v.z)});
    return m;
}

double max_deviation(const FieldArray& a, const FieldArray& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i].x - b[i].x));
        m = std::max(m, std::abs(a[i].y - b[i].y));
        m = std::max(m, std::abs(a[i].z - b[i].z));
    }
    return m;
}

}  // namespace

TEST_CASE("field_direct trivial cases") {
    SpinChain one;
    one.spins = {{0, 1, 0}};
    CHECK(field_direct(one, 3, 1)[0] == Vec3{0, 0, 0});

    SpinChain pair;
    pair.spins = {{1, 0, 0}, {1, 0, 0}};
    auto f = field_direct(pair, 3, 1);
    CHECK(f[0].x == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(f[0].y == 0.0);
    CHECK(f[1].x == doctest::Approx(2.0).epsilon(1e-14));

    pair.spins = {{0, 1, 0}, {0, 1, 0}};
    f = field_direct(pair, 3, 1);
    CHECK(f[0].y == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(f[0].x == 0.0);
    CHECK(f[1].y == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("field_direct matches the naive oracle") {
    std::mt19937 rng(7);
    const SpinChain chain = random_chain(5, rng);
    const auto got = field_direct(chain, 3, 1.3);
    const auto want = oracle_field(chain, 3, 1.3);
    CHECK(max_deviation(got, want) / max_abs(want) < 1e-12);
}

TEST_CASE("field_sign flips the field") {
    std::mt19937 rng(8);
    const SpinChain chain = random_chain(9, rng);
    const auto plus = field_direct(chain, 3, 1, +1);
    const auto minus = field_direct(chain, 3, 1, -1);
    for (std::size_t l = 0; l < chain.size(); ++l) CHECK(plus[l] == -minus[l]);
}

TEST_CASE("field_fft equals field_direct across sizes and exponents") {
    std::mt19937 rng(11);
    for (std::size_t n : {2, 3, 17, 64, 257}) {
        for (double alpha : {3.0, 4.0}) {
            FieldKernel kernel(n, alpha);
            CHECK(kernel.padded_length() >= 2 * n);
            for (int rep = 0; rep < 5; ++rep) {
                const SpinChain chain = random_chain(n, rng);
                const auto direct = field_direct(chain, alpha, 1.0);
                const auto fft = field_fft(chain, kernel, 1.0);
                CHECK(max_deviation(direct, fft) / max_abs(direct) < 1e-10);
            }
        }
    }
}

TEST_CASE("field_fft single site and size mismatch") {
    FieldKernel kernel(1, 3.0);
    SpinChain one;
    one.spins = {{0, 0, 1}};
    const auto f = field_fft(one, kernel, 1.0);
    CHECK(std::abs(f[0].x) < 1e-14);
    CHECK(std::abs(f[0].y) < 1e-14);
    CHECK(std::abs(f[0].z) < 1e-14);

    SpinChain two;
    two.spins = {{0, 0, 1}, {0, 0, 1}};
    CHECK_THROWS_AS(field_fft(two, kernel, 1.0), std::invalid_argument);
}

TEST_CASE("fields are linear in the spins") {
    std::mt19937 rng(13);
    const SpinChain a = random_chain(33, rng);
    const SpinChain b = random_chain(33, rng);
    SpinChain sum = a;
    for (std::size_t l = 0; l < a.size(); ++l) sum.spins[l] = a.spins[l] + b.spins[l];
    const auto fa = field_direct(a, 3, 1);
    const auto fb = field_direct(b, 3, 1);
    const auto fsum = field_direct(sum, 3, 1);
    FieldArray added(a.size());
    for (std::size_t l = 0; l < a.size(); ++l) added[l] = fa[l] + fb[l];
    CHECK(max_deviation(fsum, added) / max_abs(fsum) < 1e-12);
}

TEST_CASE("reflection covariance: reversed chain gives reversed field") {
    std::mt19937 rng(17);
    const SpinChain chain = random_chain(21, rng);
    SpinChain reversed = chain;
    std::reverse(reversed.spins.begin(), reversed.spins.end());
    const auto f = field_direct(chain, 3, 1);
    auto fr = field_direct(reversed, 3, 1);
    std::reverse(fr.begin(), fr.end());
    CHECK(max_deviation(f, fr) / max_abs(f) < 1e-12);
}

TEST_CASE("total_energy examples and oracle") {
    SpinChain pair;
    pair.spins = {{0, 1, 0}, {0, 1, 0}};
    CHECK(total_energy(pair, 3, 1) == doctest::Approx(1.0).epsilon(1e-14));
    pair.spins = {{1, 0, 0}, {1, 0, 0}};
    CHECK(total_energy(pair, 3, 1) == doctest::Approx(-2.0).epsilon(1e-14));

    std::mt19937 rng(19);
    const SpinChain chain = random_chain(10, rng);
    const double got = total_energy(chain, 3, 1.7);
    const double want = oracle_energy(chain, 3, 1.7);
    CHECK(std::abs(got - want) / std::abs(want) < 1e-12);
}

TEST_CASE("scaling: direct cost grows ~4x, fft stays soft when N doubles") {
    // Soft bounds only; asserts the direct path is not secretly O(N log N)
    // and the fft path not secretly O(N^2).
    std::mt19937 rng(23);
    const std::size_t n = 2048;
    const SpinChain small = random_chain(n, rng);
    const SpinChain big = random_chain(2 * n, rng);
    FieldKernel k_small(n, 3.0), k_big(2 * n, 3.0);

    auto time_of = [](auto&& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        for (int i = 0; i < 5; ++i) fn();
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    const double td1 = time_of([&] { field_direct(small, 3, 1); });
    const double td2 = time_of([&] { field_direct(big, 3, 1); });
    const double tf1 = time_of([&] { field_fft(small, k_small, 1); });
    const double tf2 = time_of([&] { field_fft(big, k_big, 1); });
    CHECK(td2 / td1 > 2.0);   // quadratic growth, generous floor
    CHECK(tf2 / tf1 < 8.0);   // near-linear growth, generous ceiling
    CHECK(tf2 < td2);         // fft wins at this size
}
