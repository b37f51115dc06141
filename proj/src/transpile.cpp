#include "whsim/transpile.hpp"

#include <cmath>
#include <stdexcept>

namespace whsim {

Circuit bell_measurement_circuit(int d, int n) {
  if (d < 2 || n < 1) throw std::invalid_argument("d >= 2 and n >= 1 required");
  Circuit c = make_circuit(d == 2 ? WireKind::Qubit : WireKind::Qudit, d, d * n);
  const char* cx_name = d == 2 ? "cx" : "cxdg";  // CX is its own inverse at d=2
  for (int site = 0; site < n; ++site) {
    for (int copy = d - 2; copy >= 0; --copy)
      append_gate(c, cx_name, {copy * n + site, (copy + 1) * n + site});
    append_gate(c, "h", {site});
  }
  return c;
}

namespace {

void emit_h(Circuit& out, int a, int b, bool dagger) {
  // Seven-gate pair sequence for the ternary Fourier gate; its adjoint is
  // the same list with the middle phase gate conjugated.
  const double theta = std::acos(1.0 / std::sqrt(3.0));
  append_gate(out, "cx", {a, b});
  append_gate(out, "chz", {b, a});
  append_gate(out, "ory", {a, b}, {-theta});
  append_gate(out, dagger ? "cms" : "cmsdg", {b, a});
  append_gate(out, "ory", {a, b}, {theta});
  append_gate(out, "czh", {b, a});
  append_gate(out, "cx", {a, b});
}

void emit_x(Circuit& out, int a, int b, bool dagger) {
  if (dagger) {
    append_gate(out, "ox", {b, a});
    append_gate(out, "ox", {a, b});
  } else {
    append_gate(out, "ox", {a, b});
    append_gate(out, "ox", {b, a});
  }
}

void emit_cx(Circuit& out, int c0, int c1, int a, int b, bool dagger) {
  // Controlled shift: the control pair's low (resp. high) qubit drives a
  // ternary shift (resp. inverse shift) on the target pair.
  if (dagger) {
    append_gate(out, "cox", {c0, a, b});
    append_gate(out, "cox", {c0, b, a});
    append_gate(out, "cox", {c1, b, a});
    append_gate(out, "cox", {c1, a, b});
  } else {
    append_gate(out, "cox", {c1, a, b});
    append_gate(out, "cox", {c1, b, a});
    append_gate(out, "cox", {c0, b, a});
    append_gate(out, "cox", {c0, a, b});
  }
}

}  // namespace

Circuit transpile_qutrit_to_qubit(const Circuit& c) {
  if (c.kind != WireKind::Qudit || c.dim != 3)
    throw std::invalid_argument("input must be a qutrit circuit");
  validate_circuit(c);
  Circuit out = make_circuit(WireKind::Qubit, 2, 2 * c.wires);
  for (const Gate& g : c.gates) {
    const int a = 2 * g.targets.back();      // high qubit of the target wire
    const int b = a + 1;                     // low qubit
    if (g.name == "h" || g.name == "hdg") {
      emit_h(out, a, b, g.name == "hdg");
    } else if (g.name == "x" || g.name == "xdg") {
      emit_x(out, a, b, g.name == "xdg");
    } else if (g.name == "cx" || g.name == "cxdg") {
      const int c0 = 2 * g.targets[0];
      emit_cx(out, c0, c0 + 1, a, b, g.name == "cxdg");
    } else {
      throw std::invalid_argument("no qubit decomposition for " + g.name);
    }
  }
  return out;
}

std::vector<std::int64_t> embedded_indices(int n) {
  if (n < 1) throw std::invalid_argument("n >= 1 required");
  std::int64_t count = 1;
  for (int i = 0; i < n; ++i) count *= 3;
  std::vector<std::int64_t> out(static_cast<std::size_t>(count));
  for (std::int64_t v = 0; v < count; ++v) {
    std::int64_t idx = 0;
    std::int64_t t = v;
    std::vector<int> digits(n);
    for (int i = n - 1; i >= 0; --i) {
      digits[i] = static_cast<int>(t % 3);
      t /= 3;
    }
    for (int i = 0; i < n; ++i) idx = idx * 4 + digits[i];  // binary pair digits
    out[static_cast<std::size_t>(v)] = idx;
  }
  return out;
}

EmbeddingReport verify_embedding(const Circuit& qutrit, const Circuit& qubit,
                                 double tol) {
  if (qutrit.kind != WireKind::Qudit || qutrit.dim != 3 ||
      qubit.kind != WireKind::Qubit || qubit.wires != 2 * qutrit.wires)
    throw std::invalid_argument("expected a qutrit circuit and its 2x-wide image");
  const Matrix uq = circuit_unitary(qutrit);
  const Matrix ub = circuit_unitary(qubit);
  const auto emb = embedded_indices(qutrit.wires);
  std::vector<bool> is_embedded(static_cast<std::size_t>(ub.rows()), false);
  for (std::int64_t i : emb) is_embedded[static_cast<std::size_t>(i)] = true;

  EmbeddingReport rep;
  rep.subspace_preserved = true;
  for (Eigen::Index col = 0; col < ub.cols(); ++col)
    for (Eigen::Index row = 0; row < ub.rows(); ++row)
      if (is_embedded[static_cast<std::size_t>(row)] !=
              is_embedded[static_cast<std::size_t>(col)] &&
          std::abs(ub(row, col)) > tol)
        rep.subspace_preserved = false;

  Matrix block(uq.rows(), uq.cols());
  for (Eigen::Index r = 0; r < uq.rows(); ++r)
    for (Eigen::Index cidx = 0; cidx < uq.cols(); ++cidx)
      block(r, cidx) = ub(emb[static_cast<std::size_t>(r)],
                          emb[static_cast<std::size_t>(cidx)]);

  // Align the single free global phase at the largest reference entry.
  Eigen::Index mr = 0, mc = 0;
  uq.cwiseAbs().maxCoeff(&mr, &mc);
  rep.global_phase = block(mr, mc) / uq(mr, mc);
  if (std::abs(rep.global_phase) > tol)
    rep.global_phase /= std::abs(rep.global_phase);
  rep.residual = (block - rep.global_phase * uq).cwiseAbs().maxCoeff();
  rep.matches = rep.subspace_preserved && rep.residual <= tol;
  return rep;
}

}  // namespace whsim
