#pragma once
#include <string>
#include <vector>

#include "whsim/linalg.hpp"

namespace whsim {

// Circuits are homogeneous: either qudit wires of one dimension d (gate set
// x, xdg, z, zdg, s, sdg, h, hdg; 'c' control prefix applies the k-th power
// for control digit k) or qubit wires (gate set x, y, z, h, s, sdg, hz, zh,
// ms, msdg, ry; control prefixes 'c' = closed on |1>, 'o' = open on |0>).
// hz and zh name the products Z*H and H*Z; ms and msdg are -S and -S^dag.
enum class WireKind { Qudit, Qubit };

struct Gate {
  std::string name;          // control prefixes + base, e.g. "cox"
  std::vector<int> targets;  // control wires first, base wire last
  std::vector<double> params;
};

struct Circuit {
  WireKind kind = WireKind::Qudit;
  int dim = 2;
  int wires = 0;
  std::vector<Gate> gates;
};

struct GateSpec {
  int controls = 0;
  std::vector<bool> closed;  // polarity per control (qubit kind)
  std::string base;
};
// Splits leading 'c'/'o' prefixes from the base name; throws on unknown
// names or prefixes invalid for the wire kind.
GateSpec parse_gate_name(const std::string& name, WireKind kind);

Matrix base_gate_matrix(const std::string& base, int dim, WireKind kind,
                        const std::vector<double>& params);

Circuit make_circuit(WireKind kind, int dim, int wires);
void append_gate(Circuit& c, const std::string& name, std::vector<int> targets,
                 std::vector<double> params = {});
void validate_circuit(const Circuit& c);

// Ordered product of the gate list (first gate acts first on the state).
Matrix circuit_unitary(const Circuit& c);

// One gate per line, "name targets... params...", '#' comments, preceded by
// a "wires <n> dim <d>" header. dim 2 files parse with qubit-kind names.
std::string circuit_to_text(const Circuit& c);
Circuit circuit_from_text(const std::string& text);

inline constexpr long long kCircuitDimCap = 4096;

}  // namespace whsim
