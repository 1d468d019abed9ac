#pragma once

#include "knotgate/algebra.hpp"

#include <string>
#include <utility>
#include <vector>

namespace knotgate {

/// Crossing-count data for a 2-component link gate. The counts are catalog
/// data tied to the gate Hamiltonian coefficients, not derived from diagram
/// geometry (see catalog()).
struct LinkGateSpec {
    std::string name;
    int over_count = 0;
    int under_count = 0;
};

/// spec for a built-in 2-component link: hopf (1,1), whitehead (2,2),
/// unlink2 (0,0); throws ValidationError for unknown names and for catalog
/// entries that are not 2-component links
LinkGateSpec link_spec(const std::string& name);

/// H = over * sigma_x (x) sigma_z - under * sigma_z (x) sigma_x. Entries are
/// exact signed integers; Hermitian exactly. The first tensor factor is the
/// first link component.
Mat4 link_hamiltonian(const LinkGateSpec& spec);

/// the evolved gate U = exp(i t H) together with its ingredients
struct TwoQubitGate {
    Mat4 hamiltonian;
    double time = 0.0;
    Mat4 unitary;
};

TwoQubitGate evolve(const LinkGateSpec& spec, double t);

/// Smaller squared Schmidt coefficient of U|00>, in [0, 1/2]; zero exactly
/// when the output is a product state. Validates only unitarity of the
/// unitary field (within tol::unitary), so gates composed with local
/// unitaries on the output side can be analyzed too.
double entangling_power(const TwoQubitGate& gate);

/// (t, entangling_power(evolve(spec, t))) over an even grid of `samples`
/// points spanning [0, t_max]
std::vector<std::pair<double, double>> entangling_scan(const LinkGateSpec& spec, double t_max,
                                                       int samples);

} // namespace knotgate
