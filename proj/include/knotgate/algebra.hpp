#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace knotgate {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// quaternions
// ---------------------------------------------------------------------------

/// Components along 1, i, j, k. Unit quaternions double-cover SU(2); the
/// basis matrices are i = diag(i,-i), j = ((0,1),(-1,0)), k = ((0,i),(i,0)).
struct Quaternion {
    double a = 1.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
};

Quaternion quat_mul(const Quaternion& p, const Quaternion& q);
Quaternion quat_conj(const Quaternion& q);
double quat_dot(const Quaternion& p, const Quaternion& q);
double quat_norm(const Quaternion& q);
Quaternion quat_normalized(const Quaternion& q);

// ---------------------------------------------------------------------------
// 2x2 complex matrices
// ---------------------------------------------------------------------------

/// Row-major 2x2 complex matrix. Carries no unitarity invariant of its own;
/// SU(2) membership is checked where contracts require it.
struct Mat2 {
    std::array<cplx, 4> e{cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(1, 0)};

    cplx& at(int r, int c) { return e[2 * r + c]; }
    const cplx& at(int r, int c) const { return e[2 * r + c]; }

    static Mat2 identity() { return Mat2{}; }
    static Mat2 zero() { return Mat2{{cplx(0), cplx(0), cplx(0), cplx(0)}}; }
};

Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 operator+(const Mat2& x, const Mat2& y);
Mat2 operator-(const Mat2& x, const Mat2& y);
Mat2 operator*(cplx s, const Mat2& x);
Mat2 adjoint(const Mat2& x);
cplx trace(const Mat2& x);
cplx det(const Mat2& x);

/// largest singular value (closed form from the 2x2 Gram matrix)
double op_norm(const Mat2& x);

/// max-entry modulus of X - X^dagger
double herm_defect(const Mat2& x);

double unitary_defect(const Mat2& x); // op_norm(X^dagger X - 1)
bool is_special_unitary(const Mat2& x, double tolerance);

// Pauli matrices and the quaternion basis images
Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();
Mat2 qmat_one();
Mat2 qmat_i();
Mat2 qmat_j();
Mat2 qmat_k();

/// a*1 + b*i + c*j + d*k in the basis above. Rejects non-unit input.
Mat2 quat_to_su2(const Quaternion& q);

/// Inverse of quat_to_su2 for (near-)SU(2) matrices: reads the quaternion
/// coordinates off the averaged (z,w;-conj w,conj z) form. Exact on matrices
/// built by quat_to_su2; no validation (callers validate where needed).
Quaternion su2_to_quat(const Mat2& m);

/// Projective operator-norm distance min(||u - v||, ||u + v||). For SU(2)
/// this equals the 4-D Euclidean distance between quaternion forms, computed
/// componentwise so that identical arguments give exactly 0.
double distance(const Quaternion& p, const Quaternion& q);
double distance(const Mat2& u, const Mat2& v);

// ---------------------------------------------------------------------------
// 2x2 Hermitian spectral tools
// ---------------------------------------------------------------------------

/// Eigensystem of a 2x2 Hermitian matrix, ascending eigenvalues, normalized
/// eigenvectors (phase convention of the caller's choosing applied after).
struct Eig2 {
    double e0, e1;
    std::array<cplx, 2> v0, v1;
};

Eig2 eig2_hermitian(const Mat2& h);

/// exp(i t H) for Hermitian H, closed form. Exactly unitary up to rounding.
Mat2 herm_exp2(const Mat2& h, double t);

/// Unitary polar factor U = M (M^dagger M)^{-1/2}. Throws NumericError when
/// M is (numerically) singular.
Mat2 polar_unitary(const Mat2& m);

// ---------------------------------------------------------------------------
// 2x2 integer matrices (SL(2,Z) carrier)
// ---------------------------------------------------------------------------

struct IMat2 {
    std::array<std::int64_t, 4> e{1, 0, 0, 1};

    static IMat2 identity() { return IMat2{}; }
    bool operator==(const IMat2&) const = default;
};

/// Exact product; throws NumericError on int64 overflow.
IMat2 imul(const IMat2& x, const IMat2& y);
std::int64_t idet(const IMat2& x);

// ---------------------------------------------------------------------------
// 4x4 complex matrices
// ---------------------------------------------------------------------------

struct Mat4 {
    std::array<cplx, 16> e{};

    cplx& at(int r, int c) { return e[4 * r + c]; }
    const cplx& at(int r, int c) const { return e[4 * r + c]; }

    static Mat4 identity();
    static Mat4 zero() { return Mat4{}; }
};

Mat4 operator*(const Mat4& x, const Mat4& y);
Mat4 operator+(const Mat4& x, const Mat4& y);
Mat4 operator-(const Mat4& x, const Mat4& y);
Mat4 operator*(cplx s, const Mat4& x);
Mat4 adjoint(const Mat4& x);
double herm_defect(const Mat4& x);
double op_norm(const Mat4& x);
double unitary_defect(const Mat4& x);

/// Kronecker product, row-major blocks: (u (x) v)[2r+k][2c+l] = u[r][c] v[k][l].
Mat4 tensor(const Mat2& u, const Mat2& v);

/// Eigensystem of a 4x4 Hermitian matrix via cyclic Jacobi sweeps.
/// values ascending; vectors holds the eigenvectors as columns.
struct Eig4 {
    std::array<double, 4> values;
    Mat4 vectors;
};

Eig4 jacobi_hermitian4(const Mat4& h);

/// exp(i t H) by spectral decomposition. Rejects non-Hermitian input
/// (max-entry defect above tol::herm).
Mat4 herm_exp(const Mat4& h, double t);

} // namespace knotgate
