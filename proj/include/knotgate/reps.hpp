#pragma once

#include "knotgate/algebra.hpp"
#include "knotgate/errors.hpp"
#include "knotgate/presentation.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace knotgate {

/// SU(2) representation of a finitely presented group. Images are stored as
/// unit quaternions (one per generator, in generator order); the matrix form
/// is quat_to_su2(images[g]). residual is the stored verification value,
/// max over relators of op_norm(phi(relator) - 1).
struct Representation {
    Presentation presentation;
    std::vector<Quaternion> images;
    double residual = 0.0;
    std::string label; // "Fibonacci" for the named rep, empty otherwise
};

/// Recomputes the max relator residual. Throws ValidationError
/// (MissingGeneratorImage) when images and generators disagree in count.
double verify(const Representation& rep);

/// Image of an arbitrary word under the representation (unit quaternion).
Quaternion word_image(const Representation& rep, const Word& w);

Mat2 image_matrix(const Representation& rep, int gen);

/// A representation is valid when its residual is at most tol::rep.
bool is_valid(const Representation& rep);

/// Parameters of the two-parameter B3 family: phi(s1) = G = diag(e^{i
/// theta}, e^{-i theta}), phi(s2) = H = F G F^dagger with F built from
/// (c,s). Feasibility: c^2+s^2 = 1 and c^2-s^2 = (a^2-b^2)/(2b^2) for
/// a = cos theta, b = sin theta, which requires cos 2theta <= 1/2.
struct KLParams {
    double theta = 0.0;
    double c = 0.0;
    double s = 0.0;
};

/// Principal-branch parameters (c, s >= 0) for a feasible angle; the flags
/// select the other sign branches (all give conjugate representations).
/// Throws ValidationError (InfeasibleParams) outside the feasible band.
KLParams kl_params(double theta, bool negate_c = false, bool negate_s = false);

/// Representation of B3 from validated parameters. Throws ValidationError
/// (InfeasibleParams) when the KLParams invariants fail beyond tol::rep.
Representation kl_family(const KLParams& p);

/// The B3 representation with g = e^{7 pi i/10} and h = f g f^-1 where
/// f = i*tau + k*sqrt(tau), tau the positive root of tau^2 + tau = 1.
Representation fibonacci_rep();

/// Exact image of a B3 word (generators s1, s2 only) in SL(2,Z);
/// integer arithmetic throughout, overflow raises NumericError.
IMat2 modular_images(const Word& w);

/// Thrown by rep_solve when the optimizer stalls above tol::rep; the best
/// attempt is carried along for inspection.
struct NoConvergence : NumericError {
    Representation attempt;
    NoConvergence(const std::string& msg, Representation att)
        : NumericError(msg), attempt(std::move(att)) {}
};

/// Seeded Gauss-Newton least-squares solve for generator images (unit
/// quaternions) minimizing summed squared relator defects. Deterministic
/// given the seed. Presentations are limited to 4 generators. Throws
/// NoConvergence when the final residual exceeds tol::rep.
Representation rep_solve(const Presentation& p, std::uint64_t seed);

/// Same solver from an explicit list of starting images (one per generator).
Representation rep_solve_start(const Presentation& p, const std::vector<Quaternion>& start);

/// Multi-start driver: seeds 0..num_seeds-1, parallel when OpenMP is
/// enabled, deterministic merge (lowest residual, ties to the lowest seed).
/// Throws NoConvergence (carrying the best attempt) when no start succeeds.
Representation rep_solve_best(const Presentation& p, int num_seeds);

/// One point of the trace coordinates (x, y, z) = (tr phi(a), tr phi(b),
/// tr phi(ab)) of a 2-generator representation.
struct CharacterPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double residual = 0.0;
};

CharacterPoint character_point(const Representation& rep);

struct ScanGrid {
    int seeds = 64; // random starts beyond the built-in structured ones
};

/// Samples the character variety of a 2-generator presentation: solves from
/// the identity start, a small set of axis starts, and `seeds` random
/// starts; keeps valid representations only, deduplicates points within
/// 1e-6, and returns them sorted by (x, y, z).
std::vector<CharacterPoint> character_scan(const Presentation& p, const ScanGrid& grid);

} // namespace knotgate
