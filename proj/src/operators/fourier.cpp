#include "latticeq/operators/fourier.hpp"

#include <cmath>

#include "latticeq/core/errors.hpp"
#include "latticeq/core/phase.hpp"

namespace latticeq::ops {

namespace detail {

namespace {

using C = std::complex<double>;

std::vector<std::size_t> factorize(std::size_t n) {
    std::vector<std::size_t> f;
    for (std::size_t p : {4u, 2u, 3u, 5u}) {
        while (n % p == 0) {
            f.push_back(p);
            n /= p;
        }
    }
    for (std::size_t p = 7; p * p <= n; p += 2) {
        while (n % p == 0) {
            f.push_back(p);
            n /= p;
        }
    }
    if (n > 1) f.push_back(n);
    return f;
}

std::vector<C> twiddles(std::size_t n) {
    std::vector<C> w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = turn_phase(static_cast<std::uint64_t>(j), static_cast<std::uint64_t>(n));
    return w;
}

struct Plan {
    std::size_t n;
    std::vector<std::size_t> factors;
    std::vector<C> w;  // e^{-2 pi i j / n}
};

// out[0..len) = DFT of in[0], in[stride], ..., using factors[level..].
void rec(const Plan& plan, const C* in, std::size_t stride, C* out, std::size_t len, std::size_t level) {
    if (len == 1) {
        out[0] = in[0];
        return;
    }
    const std::size_t p = plan.factors[level];
    const std::size_t m = len / p;
    for (std::size_t q = 0; q < p; ++q) rec(plan, in + q * stride, stride * p, out + q * m, m, level + 1);
    const std::size_t step = plan.n / len;  // twiddle index scale for this length
    C tmp[64];
    std::vector<C> big;
    C* t = tmp;
    if (p > 64) {
        big.resize(p);
        t = big.data();
    }
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t q = 0; q < p; ++q) t[q] = out[q * m + k] * plan.w[(q * k % len) * step];
        if (p == 2) {
            out[k] = t[0] + t[1];
            out[k + m] = t[0] - t[1];
        } else if (p == 4) {
            C a = t[0] + t[2], b = t[0] - t[2], c = t[1] + t[3], d = (t[1] - t[3]) * C(0, -1);
            out[k] = a + c;
            out[k + m] = b + d;
            out[k + 2 * m] = a - c;
            out[k + 3 * m] = b - d;
        } else {
            const std::size_t pstep = plan.n / p;
            for (std::size_t s = 0; s < p; ++s) {
                C acc = 0;
                for (std::size_t q = 0; q < p; ++q) acc += t[q] * plan.w[(q * s % p) * pstep];
                out[k + s * m] = acc;
            }
        }
    }
}

void mixed_radix(std::vector<C>& x, const std::vector<std::size_t>& factors) {
    Plan plan{x.size(), factors, twiddles(x.size())};
    std::vector<C> out(x.size());
    rec(plan, x.data(), 1, out.data(), x.size(), 0);
    x.swap(out);
}

void bluestein(std::vector<C>& x) {
    const std::size_t n = x.size();
    std::size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;
    // chirp c_j = e^{-pi i j^2 / n}, with j^2 reduced mod 2n exactly
    std::vector<C> chirp(n);
    const auto two_n = static_cast<unsigned __int128>(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
        auto r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(j) * j) % two_n);
        chirp[j] = turn_phase(r, 2 * n);
    }
    std::vector<C> a(m, 0.0), b(m, 0.0);
    for (std::size_t j = 0; j < n; ++j) a[j] = x[j] * chirp[j];
    b[0] = std::conj(chirp[0]);
    for (std::size_t j = 1; j < n; ++j) b[j] = b[m - j] = std::conj(chirp[j]);
    std::vector<std::size_t> f2 = factorize(m);
    mixed_radix(a, f2);
    mixed_radix(b, f2);
    for (std::size_t j = 0; j < m; ++j) a[j] = std::conj(a[j] * b[j]);
    mixed_radix(a, f2);  // inverse by conjugation
    for (std::size_t k = 0; k < n; ++k) x[k] = std::conj(a[k]) / static_cast<double>(m) * chirp[k];
}

}  // namespace

void fft(std::vector<C>& x) {
    if (x.size() <= 1) return;
    std::vector<std::size_t> f = factorize(x.size());
    if (f.back() > 64) {
        bluestein(x);
        return;
    }
    mixed_radix(x, f);
}

void dft_direct(std::vector<C>& x) {
    const std::size_t n = x.size();
    std::vector<C> w = twiddles(n);
    std::vector<double> wr(n), wi(n), xr(n), xi(n);
    for (std::size_t j = 0; j < n; ++j) {
        wr[j] = w[j].real();
        wi[j] = w[j].imag();
        xr[j] = x[j].real();
        xi[j] = x[j].imag();
    }
    std::vector<C> out(n);
    // plain real arithmetic: std::complex products carry NaN recovery branches.
    // Four output rows share each pass over the input.
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        double re[4] = {0, 0, 0, 0}, im[4] = {0, 0, 0, 0};
        std::size_t idx[4] = {0, 0, 0, 0};
        for (std::size_t j = 0; j < n; ++j) {
            for (int r = 0; r < 4; ++r) {
                re[r] += xr[j] * wr[idx[r]] - xi[j] * wi[idx[r]];
                im[r] += xr[j] * wi[idx[r]] + xi[j] * wr[idx[r]];
                idx[r] += k + static_cast<std::size_t>(r);
                if (idx[r] >= n) idx[r] -= n;
            }
        }
        for (int r = 0; r < 4; ++r) out[k + static_cast<std::size_t>(r)] = C(re[r], im[r]);
    }
    for (; k < n; ++k) {
        double re = 0, im = 0;
        std::size_t idx = 0;
        for (std::size_t j = 0; j < n; ++j) {
            re += xr[j] * wr[idx] - xi[j] * wi[idx];
            im += xr[j] * wi[idx] + xi[j] * wr[idx];
            idx += k;
            if (idx >= n) idx -= n;
        }
        out[k] = C(re, im);
    }
    x.swap(out);
}

}  // namespace detail

namespace {

bool use_dense(FourierPath path, std::int64_t n) {
    if (path == FourierPath::dense) return true;
    if (path == FourierPath::fast) return false;
    return n <= dense_fourier_limit;
}

void transform(std::vector<Complex>& x, bool dense) {
    if (dense) detail::dft_direct(x);
    else detail::fft(x);
}

std::size_t residue(std::int64_t v, std::int64_t n) {
    std::int64_t r = v % n;
    return static_cast<std::size_t>(r < 0 ? r + n : r);
}

}  // namespace

// With x_j = c_r for j = r mod n and X its DFT, d_p = X[h p mod n] / sqrt n.
StateVector fourier_forward(const StateVector& s, FourierPath path) {
    const FiniteUniverse& u = s.universe();
    const std::int64_t n = u.n();
    std::vector<Complex> x(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < x.size(); ++i) x[residue(u.point_at(i), n)] = s.amplitudes()[i];
    transform(x, use_dense(path, n));
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const std::int64_t h = u.h_n() % n;
    StateVector out(u);
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::int64_t p = u.point_at(i);
        auto j = static_cast<std::size_t>((static_cast<__int128>(h) * residue(p, n)) % n);
        out.amplitudes()[i] = x[j] * scale;
    }
    return out;
}

StateVector fourier_inverse(const StateVector& s, FourierPath path) {
    const FiniteUniverse& u = s.universe();
    const std::int64_t n = u.n();
    const std::int64_t h = u.h_n() % n;
    std::vector<Complex> y(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < y.size(); ++i) {
        std::int64_t p = u.point_at(i);
        auto j = static_cast<std::size_t>((static_cast<__int128>(h) * residue(p, n)) % n);
        y[j] = std::conj(s.amplitudes()[i]);
    }
    transform(y, use_dense(path, n));
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    StateVector out(u);
    for (std::size_t i = 0; i < y.size(); ++i) {
        out.amplitudes()[i] = std::conj(y[residue(u.point_at(i), n)]) * scale;
    }
    return out;
}

StateVector momentum_basis(const FiniteUniverse& u, std::int64_t p) {
    if (!u.contains(p)) throw PreconditionError("momentum index outside U(n)");
    const std::int64_t n = u.n();
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    StateVector v(u);
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::int64_t r = u.point_at(i);
        __int128 e = static_cast<__int128>(u.h_n() % n) * residue(r, n) % n * residue(p, n) % n;
        // e^{+2 pi i e / n} = e^{-2 pi i (n - e) / n}
        auto ee = static_cast<std::uint64_t>((n - static_cast<std::int64_t>(e)) % n);
        v.amplitudes()[i] = turn_phase(ee, static_cast<std::uint64_t>(n)) * scale;
    }
    return v;
}

}  // namespace latticeq::ops
