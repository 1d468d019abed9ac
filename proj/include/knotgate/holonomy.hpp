#pragma once

#include "knotgate/algebra.hpp"
#include "knotgate/presentation.hpp"
#include "knotgate/reps.hpp"
#include "knotgate/tolerances.hpp"

#include <functional>
#include <string>
#include <vector>

namespace knotgate {

// ---------------------------------------------------------------------------
// flat connections on the presentation 2-complex
// ---------------------------------------------------------------------------

/// One unitary per generator edge. Flatness is the face constraint: every
/// relator image lies within tol::rep of the identity, which makes the
/// connection exactly a representation of the presented group.
struct FlatConnection {
    Presentation presentation;
    std::vector<Mat2> edge_images;
};

/// worst face defect: max over relators of op_norm(image - 1)
double connection_defect(const FlatConnection& conn);

/// throws ValidationError naming the worst relator when a face constraint
/// fails or the edge count does not match the generator count
void validate_connection(const FlatConnection& conn);

/// Path-ordered product of edge images along w; inverse letters contribute
/// adjoints. The word is freely reduced first, so inserting g g^-1 anywhere
/// leaves the result bit-identical.
Mat2 word_holonomy(const FlatConnection& conn, const Word& w);

/// edge images of a valid representation; throws ValidationError when the
/// recomputed residual exceeds tol::rep
FlatConnection connection_from_rep(const Representation& rep);

// ---------------------------------------------------------------------------
// Hamiltonian families and loops in parameter space
// ---------------------------------------------------------------------------

/// Family of 2x2 Hermitian matrices over a real parameter space. evaluate
/// must be a pure function of the point; hermiticity and the spectral gap
/// are checked at every sampled point.
struct HamiltonianFamily {
    std::string name;
    int dim_params = 0;
    std::function<Mat2(const std::vector<double>&)> evaluate;
};

/// (theta, phi) -> n.sigma for the unit vector n at those spherical angles;
/// gap is exactly 2 everywhere
HamiltonianFamily spin_family();

/// two-parameter family that ignores the point
HamiltonianFamily constant_family(const Mat2& h);

/// closed polygonal path: points.front() == points.back() exactly
struct Loop {
    std::vector<std::vector<double>> points;
    int refinement = 0; // number of steps = points.size() - 1
};

/// Validates closure, uniform dimension, and per-step size. The default
/// step bound is one full turn, which admits the single wrap-around step a
/// closed sweep of an angle coordinate must take in chart coordinates while
/// still rejecting wildly spaced input; physically collapsed steps are
/// caught at transport time through the overlap matrices.
Loop make_loop(std::vector<std::vector<double>> points,
               double max_step = 6.283185307179586);

/// equator of the spin-family chart: theta = pi/2, phi sweeping a full turn
Loop equator_loop(int refinement);

/// latitude circle of the spin-family chart at fixed theta
Loop latitude_loop(double theta, int refinement);

// ---------------------------------------------------------------------------
// Berry connection samples and transport
// ---------------------------------------------------------------------------

/// connection components at one point: omega[mu]_nm = <k_n | d_mu k_m>,
/// anti-Hermitian up to finite-difference error, plus the local curvature
/// density estimate from the plaquette in the first two directions
struct ConnectionSample {
    std::vector<double> point;
    std::vector<Mat2> omega;
    double curvature_residual = 0.0;
};

/// Diagonal components from gauge-fixed central-difference eigenvectors;
/// off-diagonal components from <k_n|dh|k_m> / (E_m - E_n) with dh by
/// central differences. Throws DegenerateSpectrum below tol::gap_min.
ConnectionSample berry_connection(const HamiltonianFamily& fam, const std::vector<double>& x,
                                  double delta = tol::delta);

/// Discrete Wilson line: ordered product over steps of the unitarized
/// overlap matrix M_nm = <k_n(x_i)|k_m(x_{i+1})>. Telescoping of the
/// complete two-level basis makes the result refinement-independent up to
/// rounding; closed loops give the identity.
Mat2 loop_transport_full(const HamiltonianFamily& fam, const Loop& loop);

/// product of unit phases of the band's diagonal overlaps (discrete Berry
/// phase factor)
cplx loop_transport_abelian(const HamiltonianFamily& fam, const Loop& loop, int band);

/// Raw holonomy defect op_norm(P - 1) of the square plaquette of side delta
/// at x in the first two parameter directions, with edge transport
/// exp(delta * omega) sampled at edge midpoints (midpoint rule).
double plaquette_defect(const HamiltonianFamily& fam, const std::vector<double>& x, double delta);

/// curvature density estimate: plaquette_defect / delta^2
double flatness_residual(const HamiltonianFamily& fam, const std::vector<double>& x, double delta);

/// Abelian contrast case: accumulated phase of one band's diagonal overlaps
/// around the same plaquette; for the spin family this approximates minus
/// half the enclosed solid angle (the abelian curvature is not zero).
double abelian_plaquette_phase(const HamiltonianFamily& fam, const std::vector<double>& x,
                               double delta, int band);

} // namespace knotgate
