#include "knotgate/holonomy.hpp"

#include "knotgate/errors.hpp"
#include "knotgate/word.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace knotgate {

namespace {

std::string point_text(const std::vector<double>& x) {
    std::ostringstream out;
    out << "(";
    for (size_t i = 0; i < x.size(); ++i) out << (i ? ", " : "") << x[i];
    out << ")";
    return out.str();
}

Mat2 eval_checked(const HamiltonianFamily& fam, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != fam.dim_params)
        throw ValidationError("point dimension " + std::to_string(x.size()) +
                              " does not match family '" + fam.name + "' with " +
                              std::to_string(fam.dim_params) + " parameters");
    if (!fam.evaluate) throw ValidationError("family '" + fam.name + "' has no evaluator");
    const Mat2 h = fam.evaluate(x);
    if (herm_defect(h) > tol::herm)
        throw ValidationError("family '" + fam.name + "' is not Hermitian at " + point_text(x));
    return h;
}

// orthonormal eigenbasis with the deterministic gauge: the largest-modulus
// component of each eigenvector is made real positive
struct Basis {
    double e0, e1;
    std::array<cplx, 2> k0, k1;
};

void gauge_fix(std::array<cplx, 2>& v) {
    const int idx = std::abs(v[0]) >= std::abs(v[1]) ? 0 : 1;
    const double mag = std::abs(v[idx]);
    const cplx unit = v[idx] / mag;
    v[0] *= std::conj(unit);
    v[1] *= std::conj(unit);
}

Basis basis_at(const HamiltonianFamily& fam, const std::vector<double>& x) {
    const Mat2 h = eval_checked(fam, x);
    const Eig2 eig = eig2_hermitian(h);
    if (eig.e1 - eig.e0 < tol::gap_min)
        throw DegenerateSpectrum("spectral gap " + std::to_string(eig.e1 - eig.e0) +
                                 " below gap_min at " + point_text(x));
    Basis b{eig.e0, eig.e1, eig.v0, eig.v1};
    gauge_fix(b.k0);
    gauge_fix(b.k1);
    return b;
}

cplx inner(const std::array<cplx, 2>& u, const std::array<cplx, 2>& v) {
    return std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1];
}

std::array<cplx, 2> apply(const Mat2& m, const std::array<cplx, 2>& v) {
    return {m.at(0, 0) * v[0] + m.at(0, 1) * v[1], m.at(1, 0) * v[0] + m.at(1, 1) * v[1]};
}

// forward overlap matrix M_nm = <k_n(from)|k_m(to)>
Mat2 overlap(const Basis& from, const Basis& to) {
    Mat2 m;
    m.at(0, 0) = inner(from.k0, to.k0);
    m.at(0, 1) = inner(from.k0, to.k1);
    m.at(1, 0) = inner(from.k1, to.k0);
    m.at(1, 1) = inner(from.k1, to.k1);
    return m;
}

// exp(s * A) for anti-Hermitian A = i(alpha 1 + v.sigma), closed form
Mat2 expm_antihermitian(const Mat2& a, double s) {
    const double p = a.at(0, 0).imag();
    const double q = a.at(1, 1).imag();
    const double alpha = 0.5 * (p + q);
    const double v3 = 0.5 * (p - q);
    const double v1 = a.at(0, 1).imag();
    const double v2 = a.at(0, 1).real();
    const double vn = std::sqrt(v1 * v1 + v2 * v2 + v3 * v3);
    const double arg = s * vn;
    const double co = std::cos(arg);
    // s * sin(arg)/arg, stable near zero
    const double sinc_s = std::abs(arg) < 1e-8 ? s : std::sin(arg) / vn;
    const cplx phase = std::exp(cplx(0.0, s * alpha));
    Mat2 r;
    r.at(0, 0) = phase * cplx(co, sinc_s * v3);
    r.at(0, 1) = phase * cplx(sinc_s * v2, sinc_s * v1);
    r.at(1, 0) = phase * cplx(-sinc_s * v2, sinc_s * v1);
    r.at(1, 1) = phase * cplx(co, -sinc_s * v3);
    return r;
}

// connection components at x, one matrix per parameter direction
std::vector<Mat2> sample_omegas(const HamiltonianFamily& fam, const std::vector<double>& x,
                                double delta) {
    if (!(delta > 0.0)) throw ValidationError("delta must be positive");
    const Basis b = basis_at(fam, x);
    const cplx half_step(1.0 / (2.0 * delta), 0.0);
    std::vector<Mat2> omegas;
    omegas.reserve(x.size());
    for (size_t mu = 0; mu < x.size(); ++mu) {
        std::vector<double> xp = x, xm = x;
        xp[mu] += delta;
        xm[mu] -= delta;
        const Basis bp = basis_at(fam, xp);
        const Basis bm = basis_at(fam, xm);
        const Mat2 dh = half_step * (eval_checked(fam, xp) - eval_checked(fam, xm));
        Mat2 w = Mat2::zero();
        // diagonals from gauge-fixed eigenvector differences
        const std::array<cplx, 2> d0{half_step * (bp.k0[0] - bm.k0[0]),
                                     half_step * (bp.k0[1] - bm.k0[1])};
        const std::array<cplx, 2> d1{half_step * (bp.k1[0] - bm.k1[0]),
                                     half_step * (bp.k1[1] - bm.k1[1])};
        w.at(0, 0) = inner(b.k0, d0);
        w.at(1, 1) = inner(b.k1, d1);
        // off-diagonals from the first-order formula <k_n|dh|k_m>/(E_m - E_n)
        w.at(0, 1) = inner(b.k0, apply(dh, b.k1)) / cplx(b.e1 - b.e0, 0.0);
        w.at(1, 0) = inner(b.k1, apply(dh, b.k0)) / cplx(b.e0 - b.e1, 0.0);
        omegas.push_back(w);
    }
    return omegas;
}

void check_loop(const HamiltonianFamily& fam, const Loop& loop) {
    if (loop.points.empty()) throw ValidationError("loop has no points");
    if (loop.points.front() != loop.points.back()) throw ValidationError("loop is not closed");
    for (const std::vector<double>& pt : loop.points)
        if (static_cast<int>(pt.size()) != fam.dim_params)
            throw ValidationError("loop point dimension does not match family '" + fam.name + "'");
}

} // namespace

// ---------------------------------------------------------------------------
// presentation-complex connections
// ---------------------------------------------------------------------------

double connection_defect(const FlatConnection& conn) {
    if (conn.edge_images.size() != conn.presentation.generators.size())
        throw ValidationError("connection has " + std::to_string(conn.edge_images.size()) +
                              " edge images for " +
                              std::to_string(conn.presentation.generators.size()) +
                              " generators");
    double worst = 0.0;
    for (const Word& rel : conn.presentation.relators) {
        Mat2 prod;
        for (const Letter& l : rel) {
            const Mat2& g = conn.edge_images[static_cast<size_t>(l.gen)];
            prod = prod * (l.exp > 0 ? g : adjoint(g));
        }
        worst = std::max(worst, op_norm(prod - Mat2::identity()));
    }
    return worst;
}

void validate_connection(const FlatConnection& conn) {
    if (conn.edge_images.size() != conn.presentation.generators.size())
        throw ValidationError("connection has " + std::to_string(conn.edge_images.size()) +
                              " edge images for " +
                              std::to_string(conn.presentation.generators.size()) +
                              " generators");
    double worst = 0.0;
    size_t worst_index = 0;
    for (size_t i = 0; i < conn.presentation.relators.size(); ++i) {
        Mat2 prod;
        for (const Letter& l : conn.presentation.relators[i]) {
            const Mat2& g = conn.edge_images[static_cast<size_t>(l.gen)];
            prod = prod * (l.exp > 0 ? g : adjoint(g));
        }
        const double defect = op_norm(prod - Mat2::identity());
        if (defect > worst) {
            worst = defect;
            worst_index = i;
        }
    }
    if (worst > tol::rep) {
        std::ostringstream out;
        out << "InvalidConnection: face constraint fails on relator '"
            << format_word(conn.presentation.relators[worst_index]) << "' with defect " << worst;
        throw ValidationError(out.str());
    }
}

Mat2 word_holonomy(const FlatConnection& conn, const Word& w) {
    validate_connection(conn);
    const Word reduced = free_reduce(w);
    const int top = max_generator(reduced);
    if (top >= static_cast<int>(conn.edge_images.size()))
        throw ValidationError("word uses generator index " + std::to_string(top) +
                              " with only " + std::to_string(conn.edge_images.size()) +
                              " edge images");
    Mat2 prod;
    for (const Letter& l : reduced) {
        const Mat2& g = conn.edge_images[static_cast<size_t>(l.gen)];
        prod = prod * (l.exp > 0 ? g : adjoint(g));
    }
    return prod;
}

FlatConnection connection_from_rep(const Representation& rep) {
    const double residual = verify(rep);
    if (residual > tol::rep) {
        std::ostringstream out;
        out << "InvalidRepresentation: residual " << residual << " exceeds " << tol::rep;
        throw ValidationError(out.str());
    }
    FlatConnection conn;
    conn.presentation = rep.presentation;
    conn.edge_images.reserve(rep.images.size());
    for (const Quaternion& q : rep.images) conn.edge_images.push_back(quat_to_su2(q));
    return conn;
}

// ---------------------------------------------------------------------------
// Hamiltonian families and loops
// ---------------------------------------------------------------------------

HamiltonianFamily spin_family() {
    HamiltonianFamily fam;
    fam.name = "spin";
    fam.dim_params = 2;
    fam.evaluate = [](const std::vector<double>& x) {
        const double theta = x[0], phi = x[1];
        const double st = std::sin(theta), ct = std::cos(theta);
        Mat2 h;
        h.at(0, 0) = cplx(ct, 0.0);
        h.at(0, 1) = st * std::exp(cplx(0.0, -phi));
        h.at(1, 0) = st * std::exp(cplx(0.0, phi));
        h.at(1, 1) = cplx(-ct, 0.0);
        return h;
    };
    return fam;
}

HamiltonianFamily constant_family(const Mat2& h) {
    if (herm_defect(h) > tol::herm)
        throw ValidationError("constant family requires a Hermitian matrix");
    HamiltonianFamily fam;
    fam.name = "constant";
    fam.dim_params = 2;
    fam.evaluate = [h](const std::vector<double>&) { return h; };
    return fam;
}

Loop make_loop(std::vector<std::vector<double>> points, double max_step) {
    if (points.empty()) throw ValidationError("loop has no points");
    const size_t dim = points.front().size();
    for (const std::vector<double>& pt : points)
        if (pt.size() != dim) throw ValidationError("loop points have mixed dimensions");
    if (points.front() != points.back()) throw ValidationError("loop is not closed");
    for (size_t i = 0; i + 1 < points.size(); ++i) {
        double step2 = 0.0;
        for (size_t d = 0; d < dim; ++d) {
            const double diff = points[i + 1][d] - points[i][d];
            step2 += diff * diff;
        }
        if (step2 > max_step * max_step)
            throw ValidationError("loop step " + std::to_string(i) + " of size " +
                                  std::to_string(std::sqrt(step2)) + " exceeds max_step " +
                                  std::to_string(max_step));
    }
    Loop loop;
    loop.refinement = static_cast<int>(points.size()) - 1;
    loop.points = std::move(points);
    return loop;
}

Loop latitude_loop(double theta, int refinement) {
    if (refinement < 8) throw ValidationError("latitude loop needs refinement >= 8");
    const double pi = std::acos(-1.0);
    std::vector<std::vector<double>> pts;
    pts.reserve(static_cast<size_t>(refinement) + 1);
    for (int i = 0; i < refinement; ++i)
        pts.push_back({theta, 2.0 * pi * static_cast<double>(i) / refinement});
    pts.push_back(pts.front()); // exact closure: the chart point must repeat bitwise
    return make_loop(std::move(pts));
}

Loop equator_loop(int refinement) { return latitude_loop(std::acos(-1.0) / 2.0, refinement); }

// ---------------------------------------------------------------------------
// Berry connection and transport
// ---------------------------------------------------------------------------

ConnectionSample berry_connection(const HamiltonianFamily& fam, const std::vector<double>& x,
                                  double delta) {
    ConnectionSample sample;
    sample.point = x;
    sample.omega = sample_omegas(fam, x, delta);
    sample.curvature_residual = fam.dim_params >= 2 ? flatness_residual(fam, x, delta) : 0.0;
    return sample;
}

Mat2 loop_transport_full(const HamiltonianFamily& fam, const Loop& loop) {
    check_loop(fam, loop);
    Mat2 prod;
    Basis prev = basis_at(fam, loop.points.front());
    for (size_t i = 1; i < loop.points.size(); ++i) {
        const Basis next = basis_at(fam, loop.points[i]);
        prod = prod * polar_unitary(overlap(prev, next));
        prev = next;
    }
    return prod;
}

cplx loop_transport_abelian(const HamiltonianFamily& fam, const Loop& loop, int band) {
    check_loop(fam, loop);
    if (band != 0 && band != 1)
        throw ValidationError("band must be 0 or 1, got " + std::to_string(band));
    cplx phase(1.0, 0.0);
    Basis prev = basis_at(fam, loop.points.front());
    for (size_t i = 1; i < loop.points.size(); ++i) {
        const Basis next = basis_at(fam, loop.points[i]);
        const cplx z = band == 0 ? inner(prev.k0, next.k0) : inner(prev.k1, next.k1);
        const double mag = std::abs(z);
        if (mag < 1e-12)
            throw NumericError("band overlap collapsed at loop step " + std::to_string(i - 1));
        phase *= z / mag;
        prev = next;
    }
    return phase;
}

double plaquette_defect(const HamiltonianFamily& fam, const std::vector<double>& x, double delta) {
    if (fam.dim_params < 2)
        throw ValidationError("plaquette needs at least two parameter directions");
    if (!(delta > 0.0)) throw ValidationError("delta must be positive");
    // square corners in the first two directions, traversed +e0, +e1, -e0, -e1
    const double h = 0.5 * delta;
    struct Edge {
        double m0, m1; // midpoint offset from x
        int dir;       // direction of travel
        double sign;
    };
    const Edge edges[4] = {
        {h, 0.0, 0, 1.0},          // x -> x + d e0
        {delta, h, 1, 1.0},        // -> x + d e0 + d e1
        {h, delta, 0, -1.0},       // -> x + d e1
        {0.0, h, 1, -1.0},         // -> x
    };
    Mat2 prod;
    for (const Edge& e : edges) {
        std::vector<double> mid = x;
        mid[0] += e.m0;
        mid[1] += e.m1;
        const Mat2 w = sample_omegas(fam, mid, delta)[static_cast<size_t>(e.dir)];
        // project onto the Lie algebra before exponentiating: the sampled
        // matrix is anti-Hermitian only up to finite-difference error
        const Mat2 a = cplx(0.5, 0.0) * (w - adjoint(w));
        prod = prod * expm_antihermitian(a, e.sign * delta);
    }
    return op_norm(prod - Mat2::identity());
}

double flatness_residual(const HamiltonianFamily& fam, const std::vector<double>& x,
                         double delta) {
    return plaquette_defect(fam, x, delta) / (delta * delta);
}

double abelian_plaquette_phase(const HamiltonianFamily& fam, const std::vector<double>& x,
                               double delta, int band) {
    if (fam.dim_params < 2)
        throw ValidationError("plaquette needs at least two parameter directions");
    if (!(delta > 0.0)) throw ValidationError("delta must be positive");
    if (band != 0 && band != 1)
        throw ValidationError("band must be 0 or 1, got " + std::to_string(band));
    std::vector<std::vector<double>> pts(5, x);
    pts[1][0] += delta;
    pts[2][0] += delta;
    pts[2][1] += delta;
    pts[3][1] += delta;
    cplx phase(1.0, 0.0);
    Basis prev = basis_at(fam, pts[0]);
    for (int i = 1; i < 5; ++i) {
        const Basis next = basis_at(fam, pts[static_cast<size_t>(i)]);
        const cplx z = band == 0 ? inner(prev.k0, next.k0) : inner(prev.k1, next.k1);
        const double mag = std::abs(z);
        if (mag < 1e-12) throw NumericError("band overlap collapsed on plaquette edge");
        phase *= z / mag;
        prev = next;
    }
    return std::arg(phase);
}

} // namespace knotgate
