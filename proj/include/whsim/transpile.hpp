#pragma once
#include <cstdint>
#include <vector>

#include "whsim/circuit.hpp"

namespace whsim {

// Basis change turning the d-copy collective measurement into a
// computational-basis readout: per site cluster, a descending chain of d-1
// inverse controlled shifts between adjacent copies, then the Fourier gate
// on the first copy. Wires are laid out copy-major (wire = copy * n + site).
Circuit bell_measurement_circuit(int d, int n);

// Two qubits per qutrit wire, |0> -> |00>, |1> -> |01>, |2> -> |10|, first
// qubit most significant. Supported gates: h, hdg, x, xdg, cx, cxdg.
Circuit transpile_qutrit_to_qubit(const Circuit& c);

// Map from a qutrit register index to the matching qubit register index
// under the per-wire pair embedding.
std::vector<std::int64_t> embedded_indices(int n);

struct EmbeddingReport {
  bool subspace_preserved = false;  // no mixing with the complement
  bool matches = false;             // embedded block equals the qutrit unitary
  double residual = 0.0;            // after global-phase alignment
  cd global_phase = 1.0;
};
EmbeddingReport verify_embedding(const Circuit& qutrit, const Circuit& qubit,
                                 double tol = 1e-10);

}  // namespace whsim
