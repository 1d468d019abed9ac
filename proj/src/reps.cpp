#include "knotgate/reps.hpp"

#include "knotgate/rng.hpp"
#include "knotgate/tolerances.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace knotgate {

namespace {

const Quaternion kOne{1.0, 0.0, 0.0, 0.0};

Quaternion letter_image(const std::vector<Quaternion>& images, const Letter& l) {
    return l.exp > 0 ? images[l.gen] : quat_conj(images[l.gen]);
}

} // namespace

Quaternion word_image(const Representation& rep, const Word& w) {
    if (max_generator(w) >= static_cast<int>(rep.images.size()))
        throw ValidationError("MissingGeneratorImage: word uses a generator with no image");
    Quaternion q = kOne;
    for (const Letter& l : w) q = quat_mul(q, letter_image(rep.images, l));
    return q;
}

double verify(const Representation& rep) {
    if (rep.images.size() != rep.presentation.generators.size())
        throw ValidationError("MissingGeneratorImage: image count does not match generator count");
    const Mat2 one = Mat2::identity();
    double worst = 0.0;
    for (const Word& r : rep.presentation.relators)
        worst = std::max(worst, op_norm(quat_to_su2(word_image(rep, r)) - one));
    return worst;
}

Mat2 image_matrix(const Representation& rep, int gen) {
    if (gen < 0 || gen >= static_cast<int>(rep.images.size()))
        throw ValidationError("MissingGeneratorImage: no such generator");
    return quat_to_su2(rep.images[gen]);
}

bool is_valid(const Representation& rep) { return rep.residual <= tol::rep; }

KLParams kl_params(double theta, bool negate_c, bool negate_s) {
    const double a = std::cos(theta);
    const double b = std::sin(theta);
    const double denom = 2.0 * b * b;
    if (denom <= tol::rep)
        throw ValidationError("InfeasibleParams: sin(theta) vanishes, constraint divides by 0");
    const double rhs = (a * a - b * b) / denom;
    if (std::abs(rhs) > 1.0 + 1e-12)
        throw ValidationError("InfeasibleParams: |cos 2theta| exceeds 1 - cos 2theta");
    KLParams p;
    p.theta = theta;
    p.c = (negate_c ? -1.0 : 1.0) * std::sqrt(std::clamp((1.0 + rhs) / 2.0, 0.0, 1.0));
    p.s = (negate_s ? -1.0 : 1.0) * std::sqrt(std::clamp((1.0 - rhs) / 2.0, 0.0, 1.0));
    return p;
}

Representation kl_family(const KLParams& p) {
    const double a = std::cos(p.theta);
    const double b = std::sin(p.theta);
    if (2.0 * b * b <= tol::rep)
        throw ValidationError("InfeasibleParams: sin(theta) vanishes, constraint divides by 0");
    if (std::abs(p.c * p.c + p.s * p.s - 1.0) > tol::rep)
        throw ValidationError("InfeasibleParams: c^2 + s^2 != 1");
    const double rhs = (a * a - b * b) / (2.0 * b * b);
    if (std::abs(p.c * p.c - p.s * p.s - rhs) > tol::rep)
        throw ValidationError("InfeasibleParams: c^2 - s^2 != (a^2 - b^2) / (2 b^2)");

    const Quaternion g{a, b, 0.0, 0.0};         // diag(e^{i theta}, e^{-i theta})
    const Quaternion f{0.0, p.c, 0.0, p.s};     // ((ic, is), (is, -ic)), unit
    const Quaternion h = quat_mul(quat_mul(f, g), quat_conj(f));

    Representation rep;
    rep.presentation = braid_presentation(3);
    rep.images = {g, h};
    rep.residual = verify(rep);
    return rep;
}

Representation fibonacci_rep() {
    const double tau = (std::sqrt(5.0) - 1.0) / 2.0; // positive root of tau^2 + tau = 1
    const double angle = 7.0 * std::acos(-1.0) / 10.0;
    const Quaternion g{std::cos(angle), std::sin(angle), 0.0, 0.0};
    const Quaternion f{0.0, tau, 0.0, std::sqrt(tau)}; // |f|^2 = tau^2 + tau = 1
    const Quaternion h = quat_mul(quat_mul(f, g), quat_conj(f));

    Representation rep;
    rep.presentation = braid_presentation(3);
    rep.images = {g, h};
    rep.residual = verify(rep);
    rep.label = "Fibonacci";
    return rep;
}

IMat2 modular_images(const Word& w) {
    // left-to-right homomorphism: s1 s2 -> U = ((1,1),(-1,0)) and
    // s1 s2 s1 -> S = ((0,1),(-1,0))
    const IMat2 s1{{1, 0, -1, 1}};
    const IMat2 s2{{1, 1, 0, 1}};
    const IMat2 s1i{{1, 0, 1, 1}};
    const IMat2 s2i{{1, -1, 0, 1}};
    IMat2 m = IMat2::identity();
    for (const Letter& l : w) {
        if (l.gen < 0 || l.gen > 1)
            throw ValidationError("modular_images is defined on B3 words (generators s1, s2)");
        const IMat2& factor = l.gen == 0 ? (l.exp > 0 ? s1 : s1i) : (l.exp > 0 ? s2 : s2i);
        m = imul(m, factor);
    }
    return m;
}

// ---------------------------------------------------------------------------
// least-squares solver
// ---------------------------------------------------------------------------

namespace {

// solves (a + ridge on the diagonal) x = rhs via Cholesky; returns false
// when the factorization hits a non-positive pivot
bool cholesky_solve(std::vector<double> a, int n, std::vector<double> rhs,
                    std::vector<double>& out) {
    for (int k = 0; k < n; ++k) {
        double d = a[k * n + k];
        for (int j = 0; j < k; ++j) d -= a[k * n + j] * a[k * n + j];
        if (d <= 0.0) return false;
        const double l = std::sqrt(d);
        a[k * n + k] = l;
        for (int i = k + 1; i < n; ++i) {
            double v = a[i * n + k];
            for (int j = 0; j < k; ++j) v -= a[i * n + j] * a[k * n + j];
            a[i * n + k] = v / l;
        }
    }
    for (int i = 0; i < n; ++i) { // L y = rhs
        double v = rhs[i];
        for (int j = 0; j < i; ++j) v -= a[i * n + j] * rhs[j];
        rhs[i] = v / a[i * n + i];
    }
    out.assign(n, 0.0);
    for (int i = n - 1; i >= 0; --i) { // L^T x = y
        double v = rhs[i];
        for (int j = i + 1; j < n; ++j) v -= a[j * n + i] * out[j];
        out[i] = v / a[i * n + i];
    }
    return true;
}

std::vector<Quaternion> unpack(const std::vector<double>& x) {
    std::vector<Quaternion> u(x.size() / 4);
    for (size_t g = 0; g < u.size(); ++g)
        u[g] = Quaternion{x[4 * g], x[4 * g + 1], x[4 * g + 2], x[4 * g + 3]};
    return u;
}

void renormalize(std::vector<double>& x) {
    for (size_t g = 0; g * 4 < x.size(); ++g) {
        double n = 0.0;
        for (int j = 0; j < 4; ++j) n += x[4 * g + j] * x[4 * g + j];
        n = std::sqrt(n);
        if (n < 1e-12) throw NumericError("solver state collapsed to a zero quaternion");
        for (int j = 0; j < 4; ++j) x[4 * g + j] /= n;
    }
}

// residual vector: per relator, the 4 components of phi(relator) - 1
double eval_objective(const Presentation& p, const std::vector<Quaternion>& u,
                      std::vector<double>* r_out) {
    double f = 0.0;
    if (r_out) r_out->assign(4 * p.relators.size(), 0.0);
    for (size_t k = 0; k < p.relators.size(); ++k) {
        Quaternion q = kOne;
        for (const Letter& l : p.relators[k]) q = quat_mul(q, letter_image(u, l));
        const double r[4] = {q.a - 1.0, q.b, q.c, q.d};
        for (int j = 0; j < 4; ++j) {
            f += r[j] * r[j];
            if (r_out) (*r_out)[4 * k + j] = r[j];
        }
    }
    return f;
}

std::array<double, 4> quat_arr(const Quaternion& q) { return {q.a, q.b, q.c, q.d}; }
Quaternion arr_quat(const std::array<double, 4>& v) { return Quaternion{v[0], v[1], v[2], v[3]}; }

// dense jacobian of the residual vector with respect to the 4m raw
// parameters, evaluated at unit quaternions (so the normalization jacobian
// is the tangent projection I - u u^T)
void eval_jacobian(const Presentation& p, const std::vector<Quaternion>& u,
                   std::vector<double>& jac, int m4) {
    const int rows = static_cast<int>(4 * p.relators.size());
    jac.assign(static_cast<size_t>(rows) * m4, 0.0);
    for (size_t k = 0; k < p.relators.size(); ++k) {
        const Word& w = p.relators[k];
        const int n = static_cast<int>(w.size());
        std::vector<Quaternion> prefix(n + 1, kOne), suffix(n + 1, kOne);
        for (int t = 0; t < n; ++t) prefix[t + 1] = quat_mul(prefix[t], letter_image(u, w[t]));
        for (int t = n - 1; t >= 0; --t) suffix[t] = quat_mul(letter_image(u, w[t]), suffix[t + 1]);
        for (int t = 0; t < n; ++t) {
            const int g = w[t].gen;
            const std::array<double, 4> ug = quat_arr(u[g]);
            for (int j = 0; j < 4; ++j) {
                // tangent projection of the j-th basis direction
                std::array<double, 4> v{};
                v[j] = 1.0;
                for (int i = 0; i < 4; ++i) v[i] -= ug[i] * ug[j];
                Quaternion vq = arr_quat(v);
                if (w[t].exp < 0) vq = quat_conj(vq);
                const std::array<double, 4> col =
                    quat_arr(quat_mul(quat_mul(prefix[t], vq), suffix[t + 1]));
                for (int i = 0; i < 4; ++i)
                    jac[(4 * k + i) * static_cast<size_t>(m4) + 4 * g + j] += col[i];
            }
        }
    }
}

Representation finish(const Presentation& p, const std::vector<Quaternion>& u) {
    Representation rep;
    rep.presentation = p;
    rep.images = u;
    rep.residual = verify(rep);
    return rep;
}

Representation solve_from(const Presentation& p, std::vector<double> x) {
    const int m = static_cast<int>(p.generators.size());
    const int m4 = 4 * m;
    renormalize(x);

    std::vector<double> r, jac, grad(m4), a, delta, xn;
    for (int iter = 0; iter < 500; ++iter) {
        std::vector<Quaternion> u = unpack(x);
        const double f = eval_objective(p, u, &r);
        eval_jacobian(p, u, jac, m4);
        const int rows = static_cast<int>(r.size());

        // gradient of f = |r|^2 is 2 J^T r
        double gnorm2 = 0.0;
        for (int j = 0; j < m4; ++j) {
            double s = 0.0;
            for (int i = 0; i < rows; ++i) s += jac[i * static_cast<size_t>(m4) + j] * r[i];
            grad[j] = 2.0 * s;
            gnorm2 += grad[j] * grad[j];
        }
        if (std::sqrt(gnorm2) <= 1e-12) break;

        // gauss-newton normal equations with a small ridge for the gauge
        // directions (global conjugation, per-quaternion scale)
        a.assign(static_cast<size_t>(m4) * m4, 0.0);
        double dmax = 0.0;
        for (int i = 0; i < m4; ++i)
            for (int j = i; j < m4; ++j) {
                double s = 0.0;
                for (int row = 0; row < rows; ++row)
                    s += jac[row * static_cast<size_t>(m4) + i] *
                         jac[row * static_cast<size_t>(m4) + j];
                a[i * static_cast<size_t>(m4) + j] = s;
                a[j * static_cast<size_t>(m4) + i] = s;
                if (i == j) dmax = std::max(dmax, s);
            }
        std::vector<double> rhs(m4);
        for (int j = 0; j < m4; ++j) rhs[j] = -0.5 * grad[j]; // -J^T r

        double ridge = 1e-10 * (1.0 + dmax);
        bool solved = false;
        for (int attempt = 0; attempt < 8 && !solved; ++attempt, ridge *= 100.0) {
            std::vector<double> ar = a;
            for (int i = 0; i < m4; ++i) ar[i * static_cast<size_t>(m4) + i] += ridge;
            solved = cholesky_solve(std::move(ar), m4, rhs, delta);
        }
        if (!solved) break;

        double dd = 0.0; // directional derivative along delta
        for (int j = 0; j < m4; ++j) dd += grad[j] * delta[j];
        if (dd >= 0.0) break;

        double step = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 40; ++bt, step *= 0.5) {
            xn = x;
            for (int j = 0; j < m4; ++j) xn[j] += step * delta[j];
            renormalize(xn);
            if (eval_objective(p, unpack(xn), nullptr) <= f + 1e-4 * step * dd) {
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
        x = xn;
    }

    Representation rep = finish(p, unpack(x));
    if (rep.residual > tol::rep)
        throw NoConvergence("solver stalled at residual " + std::to_string(rep.residual), rep);
    return rep;
}

void check_solvable_size(const Presentation& p) {
    if (p.generators.size() > 4)
        throw ValidationError("rep_solve handles at most 4 generators");
}

} // namespace

Representation rep_solve(const Presentation& p, std::uint64_t seed) {
    check_solvable_size(p);
    if (p.generators.empty()) return finish(p, {});
    Rng rng(seed);
    std::vector<double> x;
    for (size_t g = 0; g < p.generators.size(); ++g) {
        const Quaternion q = rng.haar_quaternion();
        x.insert(x.end(), {q.a, q.b, q.c, q.d});
    }
    return solve_from(p, std::move(x));
}

Representation rep_solve_start(const Presentation& p, const std::vector<Quaternion>& start) {
    check_solvable_size(p);
    if (start.size() != p.generators.size())
        throw ValidationError("MissingGeneratorImage: start image count does not match generators");
    if (p.generators.empty()) return finish(p, {});
    std::vector<double> x;
    for (const Quaternion& q : start) x.insert(x.end(), {q.a, q.b, q.c, q.d});
    return solve_from(p, std::move(x));
}

Representation rep_solve_best(const Presentation& p, int num_seeds) {
    if (num_seeds < 1) throw ValidationError("rep_solve_best needs at least one seed");
    check_solvable_size(p);

    std::vector<Representation> results(num_seeds);
    std::vector<double> residuals(num_seeds, std::numeric_limits<double>::infinity());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int s = 0; s < num_seeds; ++s) {
        try {
            results[s] = rep_solve(p, static_cast<std::uint64_t>(s));
            residuals[s] = results[s].residual;
        } catch (const NoConvergence& e) {
            results[s] = e.attempt;
            residuals[s] = e.attempt.residual;
        } catch (const std::exception&) {
            // leave the slot as a hard failure
        }
    }

    int best = -1;
    for (int s = 0; s < num_seeds; ++s)
        if (best < 0 || residuals[s] < residuals[best]) best = s;
    if (best < 0 || !std::isfinite(residuals[best]))
        throw NumericError("rep_solve failed for every seed");
    if (residuals[best] > tol::rep)
        throw NoConvergence("no seed reached a valid representation; best residual " +
                                std::to_string(residuals[best]),
                            results[best]);
    return results[best];
}

CharacterPoint character_point(const Representation& rep) {
    if (rep.images.size() != 2)
        throw ValidationError("character coordinates are defined for 2-generator representations");
    CharacterPoint pt;
    pt.x = 2.0 * rep.images[0].a; // tr quat_to_su2(q) = 2 Re q
    pt.y = 2.0 * rep.images[1].a;
    pt.z = 2.0 * quat_mul(rep.images[0], rep.images[1]).a;
    pt.residual = rep.residual;
    return pt;
}

std::vector<CharacterPoint> character_scan(const Presentation& p, const ScanGrid& grid) {
    if (p.generators.size() != 2)
        throw ValidationError("character_scan requires a 2-generator presentation");
    if (grid.seeds < 0) throw ValidationError("negative seed count");

    const Quaternion e = kOne;
    const Quaternion qi{0, 1, 0, 0}, qj{0, 0, 1, 0}, qk{0, 0, 0, 1};
    const std::vector<std::vector<Quaternion>> structured = {
        {e, e}, {qi, qi}, {qi, qj}, {qi, qk}, {qj, qj}, {qj, qk}, {qk, qk}, {qi, e}, {e, qi},
    };

    std::vector<CharacterPoint> found;
    auto attempt = [&](const Representation& rep) {
        if (is_valid(rep)) found.push_back(character_point(rep));
    };
    for (const auto& start : structured) {
        try {
            attempt(rep_solve_start(p, start));
        } catch (const std::exception&) {
        }
    }
    for (int s = 0; s < grid.seeds; ++s) {
        try {
            attempt(rep_solve(p, static_cast<std::uint64_t>(s)));
        } catch (const std::exception&) {
        }
    }

    // keep the lowest-residual representative of each 1e-6 cluster
    std::sort(found.begin(), found.end(), [](const CharacterPoint& a, const CharacterPoint& b) {
        if (a.residual != b.residual) return a.residual < b.residual;
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        return a.z < b.z;
    });
    std::vector<CharacterPoint> kept;
    for (const CharacterPoint& c : found) {
        bool dup = false;
        for (const CharacterPoint& k : kept)
            dup = dup || (std::abs(c.x - k.x) < 1e-6 && std::abs(c.y - k.y) < 1e-6 &&
                          std::abs(c.z - k.z) < 1e-6);
        if (!dup) kept.push_back(c);
    }
    std::sort(kept.begin(), kept.end(), [](const CharacterPoint& a, const CharacterPoint& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        return a.z < b.z;
    });
    return kept;
}

} // namespace knotgate
