#include "psido/greens.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace psido {

double greens_kernel_constant(int n) {
    if (n < 3) throw std::invalid_argument("greens_kernel_constant: need n >= 3");
    return -std::tgamma(n / 2.0 - 1.0) / (4.0 * std::pow(std::numbers::pi, n / 2.0));
}

namespace {

// Antiderivative F with d^3 F / dx dy dz = 1/r; standard box-potential form.
double box_antiderivative(double x, double y, double z) {
    const double r = std::sqrt(x * x + y * y + z * z);
    if (r == 0.0) return 0.0;
    double s = 0.0;
    if (y != 0.0 && z != 0.0) s += y * z * std::log(x + r);
    if (z != 0.0 && x != 0.0) s += z * x * std::log(y + r);
    if (x != 0.0 && y != 0.0) s += x * y * std::log(z + r);
    if (x != 0.0) s -= 0.5 * x * x * std::atan2(y * z, x * r);
    if (y != 0.0) s -= 0.5 * y * y * std::atan2(z * x, y * r);
    if (z != 0.0) s -= 0.5 * z * z * std::atan2(x * y, z * r);
    return s;
}

// integral of 1/r over the corner box [0,a]x[0,b]x[0,c]
double corner_integral(double a, double b, double c) {
    return box_antiderivative(a, b, c) - box_antiderivative(0, b, c) -
           box_antiderivative(a, 0, c) - box_antiderivative(a, b, 0) +
           box_antiderivative(a, 0, 0) + box_antiderivative(0, b, 0) +
           box_antiderivative(0, 0, c) - box_antiderivative(0, 0, 0);
}

// Gauss-Legendre 4-point nodes/weights on [-1,1].
constexpr double kGlNodes[4] = {-0.8611363115940526, -0.3399810435848563,
                                0.3399810435848563, 0.8611363115940526};
constexpr double kGlWeights[4] = {0.3478548451374538, 0.6521451548625461,
                                  0.6521451548625461, 0.3478548451374538};

// integral of |y|^{2-n} over an n-cube of side h centered at c (away from 0)
double gl_cell_integral(int n, const std::vector<double>& center, double h, int levels) {
    // Refine once more near the singular corner for accuracy.
    if (levels > 0) {
        double dist = 0.0;
        for (double v : center) dist += v * v;
        if (std::sqrt(dist) < 1.5 * h * std::sqrt(static_cast<double>(n))) {
            double total = 0.0;
            std::vector<int> idx(static_cast<std::size_t>(n), 0);
            while (true) {
                std::vector<double> sub(center);
                for (int a = 0; a < n; ++a)
                    sub[static_cast<std::size_t>(a)] +=
                        (idx[static_cast<std::size_t>(a)] - 1) * h / 3.0;
                total += gl_cell_integral(n, sub, h / 3.0, levels - 1);
                int a = 0;
                for (; a < n; ++a) {
                    if (++idx[static_cast<std::size_t>(a)] < 3) break;
                    idx[static_cast<std::size_t>(a)] = 0;
                }
                if (a == n) break;
            }
            return total;
        }
    }
    double total = 0.0;
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    while (true) {
        double w = 1.0;
        double r2 = 0.0;
        for (int a = 0; a < n; ++a) {
            const int i = idx[static_cast<std::size_t>(a)];
            const double y = center[static_cast<std::size_t>(a)] + 0.5 * h * kGlNodes[i];
            w *= 0.5 * h * kGlWeights[i];
            r2 += y * y;
        }
        total += w * std::pow(r2, 0.5 * (2.0 - n));
        int a = 0;
        for (; a < n; ++a) {
            if (++idx[static_cast<std::size_t>(a)] < 4) break;
            idx[static_cast<std::size_t>(a)] = 0;
        }
        if (a == n) break;
    }
    return total;
}

}  // namespace

double unit_cell_kernel_average(int n) {
    if (n < 3) throw std::invalid_argument("unit_cell_kernel_average: need n >= 3");
    if (n == 3) return 8.0 * corner_integral(0.5, 0.5, 0.5);

    // 3-adic subdivision: integral over the unit cube equals the off-center
    // part plus 1/9 of itself (the kernel integral scales as side^2).
    double off = 0.0;
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    while (true) {
        bool is_center = true;
        std::vector<double> center(static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a) {
            center[static_cast<std::size_t>(a)] =
                (idx[static_cast<std::size_t>(a)] - 1) / 3.0;
            if (idx[static_cast<std::size_t>(a)] != 1) is_center = false;
        }
        if (!is_center) off += gl_cell_integral(n, center, 1.0 / 3.0, 2);
        int a = 0;
        for (; a < n; ++a) {
            if (++idx[static_cast<std::size_t>(a)] < 3) break;
            idx[static_cast<std::size_t>(a)] = 0;
        }
        if (a == n) break;
    }
    return off * 9.0 / 8.0;
}

GridFunction greens_laplacian(const GridFunction& f) {
    const int n = f.dim();
    if (n < 3) throw std::invalid_argument("greens_laplacian: need dimension n >= 3");
    const double h = f.extents()[0] / f.shape()[0];
    for (int a = 1; a < n; ++a) {
        const double ha = f.extents()[static_cast<std::size_t>(a)] /
                          f.shape()[static_cast<std::size_t>(a)];
        if (std::abs(ha - h) > 1e-12 * h)
            throw std::invalid_argument("greens_laplacian: grid spacing must be uniform");
    }

    const double cn = greens_kernel_constant(n);
    const double self_avg = unit_cell_kernel_average(n) * std::pow(h, 2.0 - n);

    // Zero-padded circular convolution == linear convolution over the box.
    std::vector<int> pshape(static_cast<std::size_t>(n));
    std::size_t psize = 1;
    for (int a = 0; a < n; ++a) {
        pshape[static_cast<std::size_t>(a)] = 2 * f.shape()[static_cast<std::size_t>(a)];
        psize *= static_cast<std::size_t>(pshape[static_cast<std::size_t>(a)]);
    }

    std::vector<cplx> src(psize, cplx(0.0, 0.0));
    std::vector<cplx> ker(psize, cplx(0.0, 0.0));

    // scatter f into the padded array
    {
        std::vector<int> idx(static_cast<std::size_t>(n), 0);
        for (std::size_t flat = 0; flat < f.size(); ++flat) {
            auto fi = f.unflatten(flat);
            std::size_t p = 0;
            for (int a = 0; a < n; ++a)
                p = p * static_cast<std::size_t>(pshape[static_cast<std::size_t>(a)]) +
                    static_cast<std::size_t>(fi[a]);
            src[p] = f[flat];
        }
    }

    // kernel over offsets in [-N+1, N-1] per axis, wrapped into the padded box
    {
        std::vector<int> off(static_cast<std::size_t>(n), 0);
        std::function<void(int)> fill = [&](int axis) {
            if (axis == n) {
                double r2 = 0.0;
                for (int a = 0; a < n; ++a) {
                    const double d = off[static_cast<std::size_t>(a)] * h;
                    r2 += d * d;
                }
                double v;
                if (r2 == 0.0)
                    v = self_avg;
                else
                    v = std::pow(r2, 0.5 * (2.0 - n));
                std::size_t p = 0;
                for (int a = 0; a < n; ++a) {
                    const int P = pshape[static_cast<std::size_t>(a)];
                    const int w = (off[static_cast<std::size_t>(a)] % P + P) % P;
                    p = p * static_cast<std::size_t>(P) + static_cast<std::size_t>(w);
                }
                ker[p] = v;
                return;
            }
            const int N = f.shape()[static_cast<std::size_t>(axis)];
            for (int d = -N + 1; d <= N - 1; ++d) {
                off[static_cast<std::size_t>(axis)] = d;
                fill(axis + 1);
            }
        };
        fill(0);
    }

    fft_inplace(src, pshape, -1);
    fft_inplace(ker, pshape, -1);
    for (std::size_t i = 0; i < psize; ++i) src[i] *= ker[i];
    fft_inplace(src, pshape, +1);

    const double scale = cn * std::pow(h, n) / static_cast<double>(psize);
    GridFunction u(f.shape(), f.extents(), f.periodic());
    for (std::size_t flat = 0; flat < u.size(); ++flat) {
        auto fi = u.unflatten(flat);
        std::size_t p = 0;
        for (int a = 0; a < n; ++a)
            p = p * static_cast<std::size_t>(pshape[static_cast<std::size_t>(a)]) +
                static_cast<std::size_t>(fi[a]);
        u[flat] = src[p] * scale;
    }
    return u;
}

GridFunction discrete_laplacian(const GridFunction& u) {
    const int n = u.dim();
    GridFunction out(u.shape(), u.extents(), u.periodic());
    std::vector<int> idx;
    for (std::size_t flat = 0; flat < u.size(); ++flat) {
        idx = u.unflatten(flat);
        bool interior = true;
        for (int a = 0; a < n; ++a)
            if (idx[a] == 0 || idx[a] == u.shape()[static_cast<std::size_t>(a)] - 1)
                interior = false;
        if (!interior) continue;
        cplx acc = 0.0;
        for (int a = 0; a < n; ++a) {
            const double h = u.extents()[static_cast<std::size_t>(a)] /
                             u.shape()[static_cast<std::size_t>(a)];
            auto ip = idx, im = idx;
            ip[a] += 1;
            im[a] -= 1;
            acc += (u[u.flatten(ip)] - 2.0 * u[flat] + u[u.flatten(im)]) / (h * h);
        }
        out[flat] = acc;
    }
    return out;
}

}  // namespace psido
