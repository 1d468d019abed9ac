#include "knotgate/linkgate.hpp"

#include "knotgate/diagram.hpp"
#include "knotgate/errors.hpp"
#include "knotgate/tolerances.hpp"

#include <algorithm>
#include <cmath>

namespace knotgate {

LinkGateSpec link_spec(const std::string& name) {
    const CatalogEntry entry = catalog(name);
    if (!entry.crossing_counts)
        throw ValidationError("catalog entry '" + name +
                              "' is not a 2-component link; no gate Hamiltonian is defined");
    return LinkGateSpec{entry.name, entry.crossing_counts->over, entry.crossing_counts->under};
}

Mat4 link_hamiltonian(const LinkGateSpec& spec) {
    if (spec.over_count < 0 || spec.under_count < 0)
        throw ValidationError("crossing counts must be non-negative");
    const Mat4 xz = tensor(pauli_x(), pauli_z());
    const Mat4 zx = tensor(pauli_z(), pauli_x());
    return cplx(spec.over_count, 0.0) * xz - cplx(spec.under_count, 0.0) * zx;
}

TwoQubitGate evolve(const LinkGateSpec& spec, double t) {
    TwoQubitGate gate;
    gate.hamiltonian = link_hamiltonian(spec);
    gate.time = t;
    gate.unitary = herm_exp(gate.hamiltonian, t);
    return gate;
}

double entangling_power(const TwoQubitGate& gate) {
    if (unitary_defect(gate.unitary) > tol::unitary)
        throw ValidationError("gate unitary fails the unitarity check");
    // Schmidt split of U|00>: reshape the first column to 2x2, the squared
    // Schmidt coefficients are the eigenvalues of m m^dagger. They sum to 1,
    // so the smaller one comes from det(m) alone, in a form stable near 0:
    // lambda_min = (1 - sqrt(1 - 4 D)) / 2 with D = |det m|^2.
    const cplx det_m = gate.unitary.at(0, 0) * gate.unitary.at(3, 0) -
                       gate.unitary.at(1, 0) * gate.unitary.at(2, 0);
    const double d = std::norm(det_m);
    const double lambda = 2.0 * d / (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * d)));
    return std::min(lambda, 0.5);
}

std::vector<std::pair<double, double>> entangling_scan(const LinkGateSpec& spec, double t_max,
                                                       int samples) {
    if (samples < 2) throw ValidationError("scan needs at least 2 samples");
    if (!(t_max > 0.0)) throw ValidationError("scan needs a positive time span");
    std::vector<std::pair<double, double>> table;
    table.reserve(static_cast<size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double t = t_max * static_cast<double>(i) / (samples - 1);
        table.emplace_back(t, entangling_power(evolve(spec, t)));
    }
    return table;
}

} // namespace knotgate
