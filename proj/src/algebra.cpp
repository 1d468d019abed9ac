#include "knotgate/algebra.hpp"

#include "knotgate/errors.hpp"
#include "knotgate/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace knotgate {

// ---------------------------------------------------------------------------
// quaternions
// ---------------------------------------------------------------------------

Quaternion quat_mul(const Quaternion& p, const Quaternion& q) {
    return Quaternion{
        p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
        p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
        p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
        p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a,
    };
}

Quaternion quat_conj(const Quaternion& q) { return Quaternion{q.a, -q.b, -q.c, -q.d}; }

double quat_dot(const Quaternion& p, const Quaternion& q) {
    return p.a * q.a + p.b * q.b + p.c * q.c + p.d * q.d;
}

double quat_norm(const Quaternion& q) { return std::sqrt(quat_dot(q, q)); }

Quaternion quat_normalized(const Quaternion& q) {
    const double n = quat_norm(q);
    if (n == 0.0) throw NumericError("cannot normalize zero quaternion");
    return Quaternion{q.a / n, q.b / n, q.c / n, q.d / n};
}

// ---------------------------------------------------------------------------
// 2x2 complex matrices
// ---------------------------------------------------------------------------

Mat2 operator*(const Mat2& x, const Mat2& y) {
    Mat2 r = Mat2::zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.at(i, j) = x.at(i, 0) * y.at(0, j) + x.at(i, 1) * y.at(1, j);
    return r;
}

Mat2 operator+(const Mat2& x, const Mat2& y) {
    Mat2 r = Mat2::zero();
    for (int i = 0; i < 4; ++i) r.e[i] = x.e[i] + y.e[i];
    return r;
}

Mat2 operator-(const Mat2& x, const Mat2& y) {
    Mat2 r = Mat2::zero();
    for (int i = 0; i < 4; ++i) r.e[i] = x.e[i] - y.e[i];
    return r;
}

Mat2 operator*(cplx s, const Mat2& x) {
    Mat2 r = Mat2::zero();
    for (int i = 0; i < 4; ++i) r.e[i] = s * x.e[i];
    return r;
}

Mat2 adjoint(const Mat2& x) {
    Mat2 r = Mat2::zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.at(i, j) = std::conj(x.at(j, i));
    return r;
}

cplx trace(const Mat2& x) { return x.at(0, 0) + x.at(1, 1); }

cplx det(const Mat2& x) { return x.at(0, 0) * x.at(1, 1) - x.at(0, 1) * x.at(1, 0); }

double op_norm(const Mat2& x) {
    // sigma_max^2 is the larger eigenvalue of X^dagger X:
    // lambda = (T + sqrt(T^2 - 4 D)) / 2 with T = sum |x_ij|^2, D = |det X|^2
    double t = 0.0;
    for (const auto& v : x.e) t += std::norm(v);
    const double dd = std::norm(det(x));
    const double disc = std::sqrt(std::max(0.0, t * t - 4.0 * dd));
    return std::sqrt(std::max(0.0, 0.5 * (t + disc)));
}

double herm_defect(const Mat2& x) {
    double m = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m = std::max(m, std::abs(x.at(i, j) - std::conj(x.at(j, i))));
    return m;
}

double unitary_defect(const Mat2& x) { return op_norm(adjoint(x) * x - Mat2::identity()); }

bool is_special_unitary(const Mat2& x, double tolerance) {
    return unitary_defect(x) <= tolerance && std::abs(det(x) - cplx(1, 0)) <= tolerance;
}

Mat2 pauli_x() { return Mat2{{cplx(0), cplx(1), cplx(1), cplx(0)}}; }
Mat2 pauli_y() { return Mat2{{cplx(0), cplx(0, -1), cplx(0, 1), cplx(0)}}; }
Mat2 pauli_z() { return Mat2{{cplx(1), cplx(0), cplx(0), cplx(-1)}}; }

Mat2 qmat_one() { return Mat2::identity(); }
Mat2 qmat_i() { return Mat2{{cplx(0, 1), cplx(0), cplx(0), cplx(0, -1)}}; }
Mat2 qmat_j() { return Mat2{{cplx(0), cplx(1), cplx(-1), cplx(0)}}; }
Mat2 qmat_k() { return Mat2{{cplx(0), cplx(0, 1), cplx(0, 1), cplx(0)}}; }

Mat2 quat_to_su2(const Quaternion& q) {
    if (std::abs(quat_norm(q) - 1.0) > tol::norm)
        throw ValidationError("NotUnit: quaternion norm deviates from 1 beyond tolerance");
    // (z, w; -conj w, conj z) with z = a + b i, w = c + d i
    return Mat2{{cplx(q.a, q.b), cplx(q.c, q.d), cplx(-q.c, q.d), cplx(q.a, -q.b)}};
}

Quaternion su2_to_quat(const Mat2& m) {
    const cplx z = 0.5 * (m.at(0, 0) + std::conj(m.at(1, 1)));
    const cplx w = 0.5 * (m.at(0, 1) - std::conj(m.at(1, 0)));
    return Quaternion{z.real(), z.imag(), w.real(), w.imag()};
}

double distance(const Quaternion& p, const Quaternion& q) {
    const double da = p.a - q.a, db = p.b - q.b, dc = p.c - q.c, dd = p.d - q.d;
    const double sa = p.a + q.a, sb = p.b + q.b, sc = p.c + q.c, sd = p.d + q.d;
    const double dm = da * da + db * db + dc * dc + dd * dd;
    const double dp = sa * sa + sb * sb + sc * sc + sd * sd;
    return std::sqrt(std::min(dm, dp));
}

double distance(const Mat2& u, const Mat2& v) { return distance(su2_to_quat(u), su2_to_quat(v)); }

// ---------------------------------------------------------------------------
// 2x2 Hermitian spectral tools
// ---------------------------------------------------------------------------

Eig2 eig2_hermitian(const Mat2& h) {
    const double alpha = h.at(0, 0).real();
    const double gamma = h.at(1, 1).real();
    const cplx beta = h.at(0, 1);
    const double half = 0.5 * (alpha - gamma);
    const double r = std::hypot(half, std::abs(beta));
    const double mid = 0.5 * (alpha + gamma);

    Eig2 out;
    out.e0 = mid - r;
    out.e1 = mid + r;

    if (std::abs(beta) == 0.0) {
        // already diagonal; order basis vectors by eigenvalue
        if (alpha <= gamma) {
            out.v0 = {cplx(1), cplx(0)};
            out.v1 = {cplx(0), cplx(1)};
        } else {
            out.v0 = {cplx(0), cplx(1)};
            out.v1 = {cplx(1), cplx(0)};
        }
        return out;
    }

    // eigenvector for e1, taking the residual without cancellation:
    // half >= 0 means alpha is nearer e1, so e1 - gamma = half + r stays large
    cplx x, y;
    if (half >= 0.0) {
        x = cplx(out.e1 - gamma, 0);
        y = std::conj(beta);
    } else {
        x = beta;
        y = cplx(out.e1 - alpha, 0);
    }
    const double n = std::sqrt(std::norm(x) + std::norm(y));
    out.v1 = {x / n, y / n};
    // exact orthogonal complement
    out.v0 = {-std::conj(out.v1[1]), std::conj(out.v1[0])};
    return out;
}

Mat2 herm_exp2(const Mat2& h, double t) {
    if (herm_defect(h) > tol::herm)
        throw ValidationError("NotHermitian: 2x2 input fails Hermiticity check");
    // H = m 1 + B with B traceless Hermitian; exp(itH) = e^{itm}(cos(rt) 1 + i sin(rt) B / r)
    const double m = 0.5 * (h.at(0, 0).real() + h.at(1, 1).real());
    Mat2 b = h;
    b.at(0, 0) -= m;
    b.at(1, 1) -= m;
    const double r = std::sqrt(std::norm(b.at(0, 0)) + std::norm(b.at(0, 1)));
    const cplx phase = std::polar(1.0, m * t);
    if (r * std::abs(t) < 1e-150) {
        Mat2 u = Mat2::identity();
        return phase * u;
    }
    const double cs = std::cos(r * t);
    const double sn = std::sin(r * t) / r;
    Mat2 u = Mat2::identity();
    for (int i = 0; i < 4; ++i) u.e[i] = cs * u.e[i] + cplx(0, sn) * b.e[i];
    return phase * u;
}

Mat2 polar_unitary(const Mat2& m) {
    const Mat2 g = adjoint(m) * m;
    const Eig2 eg = eig2_hermitian(g);
    if (eg.e0 <= 1e-300) throw NumericError("polar decomposition of a singular matrix");
    const double i0 = 1.0 / std::sqrt(eg.e0);
    const double i1 = 1.0 / std::sqrt(eg.e1);
    // G^{-1/2} = i0 v0 v0^dagger + i1 v1 v1^dagger
    Mat2 gi = Mat2::zero();
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            gi.at(r, c) = i0 * eg.v0[r] * std::conj(eg.v0[c]) + i1 * eg.v1[r] * std::conj(eg.v1[c]);
    return m * gi;
}

// ---------------------------------------------------------------------------
// integer matrices
// ---------------------------------------------------------------------------

namespace {

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_mul_overflow(x, y, &r)) throw NumericError("integer overflow in SL(2,Z) product");
    return r;
}

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r)) throw NumericError("integer overflow in SL(2,Z) product");
    return r;
}

} // namespace

IMat2 imul(const IMat2& x, const IMat2& y) {
    IMat2 r;
    r.e[0] = checked_add(checked_mul(x.e[0], y.e[0]), checked_mul(x.e[1], y.e[2]));
    r.e[1] = checked_add(checked_mul(x.e[0], y.e[1]), checked_mul(x.e[1], y.e[3]));
    r.e[2] = checked_add(checked_mul(x.e[2], y.e[0]), checked_mul(x.e[3], y.e[2]));
    r.e[3] = checked_add(checked_mul(x.e[2], y.e[1]), checked_mul(x.e[3], y.e[3]));
    return r;
}

std::int64_t idet(const IMat2& x) {
    return checked_add(checked_mul(x.e[0], x.e[3]), -checked_mul(x.e[1], x.e[2]));
}

// ---------------------------------------------------------------------------
// 4x4 complex matrices
// ---------------------------------------------------------------------------

Mat4 Mat4::identity() {
    Mat4 r;
    for (int i = 0; i < 4; ++i) r.at(i, i) = cplx(1, 0);
    return r;
}

Mat4 operator*(const Mat4& x, const Mat4& y) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const cplx xv = x.at(i, k);
            if (xv == cplx(0)) continue;
            for (int j = 0; j < 4; ++j) r.at(i, j) += xv * y.at(k, j);
        }
    return r;
}

Mat4 operator+(const Mat4& x, const Mat4& y) {
    Mat4 r;
    for (int i = 0; i < 16; ++i) r.e[i] = x.e[i] + y.e[i];
    return r;
}

Mat4 operator-(const Mat4& x, const Mat4& y) {
    Mat4 r;
    for (int i = 0; i < 16; ++i) r.e[i] = x.e[i] - y.e[i];
    return r;
}

Mat4 operator*(cplx s, const Mat4& x) {
    Mat4 r;
    for (int i = 0; i < 16; ++i) r.e[i] = s * x.e[i];
    return r;
}

Mat4 adjoint(const Mat4& x) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.at(i, j) = std::conj(x.at(j, i));
    return r;
}

double herm_defect(const Mat4& x) {
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m = std::max(m, std::abs(x.at(i, j) - std::conj(x.at(j, i))));
    return m;
}

Mat4 tensor(const Mat2& u, const Mat2& v) {
    Mat4 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) r.at(2 * i + k, 2 * j + l) = u.at(i, j) * v.at(k, l);
    return r;
}

Eig4 jacobi_hermitian4(const Mat4& h) {
    Mat4 a = h;
    Mat4 v = Mat4::identity();

    const auto off2 = [](const Mat4& m) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (i != j) s += std::norm(m.at(i, j));
        return s;
    };

    double scale = 0.0;
    for (const auto& x : a.e) scale = std::max(scale, std::abs(x));
    const double stop = std::max(scale, 1.0) * 1e-15;

    for (int sweep = 0; sweep < 60 && off2(a) > stop * stop; ++sweep) {
        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                const cplx g = a.at(p, q);
                const double ag = std::abs(g);
                if (ag <= stop * 1e-2) continue;
                // phase-align the pivot, then a real Jacobi rotation
                const cplx u = g / ag;
                const double tau = (a.at(q, q).real() - a.at(p, p).real()) / (2.0 * ag);
                const double tt = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + tt * tt);
                const double s = tt * c;

                Mat4 j = Mat4::identity();
                j.at(p, p) = cplx(c, 0);
                j.at(p, q) = cplx(s, 0);
                j.at(q, p) = -std::conj(u) * s;
                j.at(q, q) = std::conj(u) * c;

                a = adjoint(j) * a * j;
                v = v * j;
            }
        }
    }

    std::array<int, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a.at(i, i).real() < a.at(j, j).real(); });

    Eig4 out;
    Mat4 vec;
    for (int col = 0; col < 4; ++col) {
        out.values[col] = a.at(order[col], order[col]).real();
        for (int row = 0; row < 4; ++row) vec.at(row, col) = v.at(row, order[col]);
    }
    out.vectors = vec;
    return out;
}

Mat4 herm_exp(const Mat4& h, double t) {
    if (herm_defect(h) > tol::herm)
        throw ValidationError("NotHermitian: 4x4 input fails Hermiticity check");
    const Eig4 eg = jacobi_hermitian4(h);
    // U = V diag(e^{i t lambda}) V^dagger
    Mat4 u;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            cplx sum(0, 0);
            for (int k = 0; k < 4; ++k)
                sum += eg.vectors.at(r, k) * std::polar(1.0, t * eg.values[k]) *
                       std::conj(eg.vectors.at(c, k));
            u.at(r, c) = sum;
        }
    return u;
}

double op_norm(const Mat4& x) {
    const Eig4 eg = jacobi_hermitian4(adjoint(x) * x);
    return std::sqrt(std::max(0.0, eg.values[3]));
}

double unitary_defect(const Mat4& x) { return op_norm(adjoint(x) * x - Mat4::identity()); }

} // namespace knotgate
