#include "whsim/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "whsim/clifford.hpp"

namespace whsim {

namespace {

const std::set<std::string>& qudit_bases() {
  static const std::set<std::string> s = {"x",  "xdg", "z", "zdg",
                                          "s",  "sdg", "h", "hdg"};
  return s;
}

const std::set<std::string>& qubit_bases() {
  static const std::set<std::string> s = {"x",  "y",  "z",  "h",  "s", "sdg",
                                          "hz", "zh", "ms", "msdg", "ry"};
  return s;
}

int param_count(const std::string& base) { return base == "ry" ? 1 : 0; }

std::int64_t pow_ll(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

GateSpec parse_gate_name(const std::string& name, WireKind kind) {
  const auto& bases = kind == WireKind::Qudit ? qudit_bases() : qubit_bases();
  GateSpec spec;
  std::size_t i = 0;
  while (i < name.size() && (name[i] == 'c' || name[i] == 'o') &&
         bases.count(name.substr(i)) == 0) {
    if (name[i] == 'o' && kind == WireKind::Qudit)
      throw std::invalid_argument("open controls exist on qubit wires only: " + name);
    spec.closed.push_back(name[i] == 'c');
    ++spec.controls;
    ++i;
  }
  spec.base = name.substr(i);
  if (bases.count(spec.base) == 0)
    throw std::invalid_argument("unknown gate: " + name);
  if (kind == WireKind::Qudit && spec.controls > 1)
    throw std::invalid_argument("qudit gates take at most one control: " + name);
  return spec;
}

Matrix base_gate_matrix(const std::string& base, int dim, WireKind kind,
                        const std::vector<double>& params) {
  if (static_cast<int>(params.size()) != param_count(base))
    throw std::invalid_argument("wrong parameter count for " + base);
  if (kind == WireKind::Qudit) {
    Matrix m;
    if (base == "x" || base == "xdg") {
      m = Matrix::Zero(dim, dim);
      for (int k = 0; k < dim; ++k) m((k + 1) % dim, k) = 1.0;
    } else if (base == "z" || base == "zdg") {
      m = Matrix::Zero(dim, dim);
      for (int k = 0; k < dim; ++k) m(k, k) = Phase(k, dim).value();
    } else if (base == "s" || base == "sdg") {
      m = phase_gate_matrix(dim);
    } else {
      m = fourier_matrix(dim);
    }
    if (base.size() > 1 && base.substr(base.size() - 2) == "dg")
      m = m.adjoint().eval();
    return m;
  }
  const double isq = 1.0 / std::sqrt(2.0);
  Matrix m(2, 2);
  if (base == "x") m << 0, 1, 1, 0;
  else if (base == "y") m << 0, cd(0, -1), cd(0, 1), 0;
  else if (base == "z") m << 1, 0, 0, -1;
  else if (base == "h") m << isq, isq, isq, -isq;
  else if (base == "s") m << 1, 0, 0, cd(0, 1);
  else if (base == "sdg") m << 1, 0, 0, cd(0, -1);
  else if (base == "hz") m << isq, isq, -isq, isq;        // Z * H
  else if (base == "zh") m << isq, -isq, isq, isq;        // H * Z
  else if (base == "ms") m << -1, 0, 0, cd(0, -1);        // -S
  else if (base == "msdg") m << -1, 0, 0, cd(0, 1);       // -S^dag
  else {  // ry
    const double t = params[0] / 2.0;
    m << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  }
  return m;
}

Circuit make_circuit(WireKind kind, int dim, int wires) {
  if (dim < 2 || wires < 1) throw std::invalid_argument("dim >= 2 and wires >= 1");
  if (kind == WireKind::Qubit && dim != 2)
    throw std::invalid_argument("qubit circuits have dim 2");
  Circuit c;
  c.kind = kind;
  c.dim = dim;
  c.wires = wires;
  return c;
}

void append_gate(Circuit& c, const std::string& name, std::vector<int> targets,
                 std::vector<double> params) {
  Gate g{name, std::move(targets), std::move(params)};
  const GateSpec spec = parse_gate_name(g.name, c.kind);
  if (static_cast<int>(g.targets.size()) != spec.controls + 1)
    throw std::invalid_argument("wrong wire count for " + g.name);
  if (static_cast<int>(g.params.size()) != param_count(spec.base))
    throw std::invalid_argument("wrong parameter count for " + g.name);
  std::set<int> seen;
  for (int t : g.targets) {
    if (t < 0 || t >= c.wires) throw std::out_of_range("wire out of range");
    if (!seen.insert(t).second) throw std::invalid_argument("repeated wire");
  }
  c.gates.push_back(std::move(g));
}

void validate_circuit(const Circuit& c) {
  Circuit probe = make_circuit(c.kind, c.dim, c.wires);
  for (const Gate& g : c.gates) append_gate(probe, g.name, g.targets, g.params);
}

Matrix circuit_unitary(const Circuit& c) {
  validate_circuit(c);
  const std::int64_t dim = pow_ll(c.dim, c.wires);
  if (dim > kCircuitDimCap) throw std::length_error("circuit register too large");
  Matrix u = Matrix::Identity(dim, dim);
  const int d = c.dim;
  for (const Gate& g : c.gates) {
    const GateSpec spec = parse_gate_name(g.name, c.kind);
    const Matrix base = base_gate_matrix(spec.base, d, c.kind, g.params);
    std::vector<Matrix> powers(d);  // applied matrix per control digit
    if (c.kind == WireKind::Qudit && spec.controls == 1) {
      powers[0] = Matrix::Identity(d, d);
      for (int k = 1; k < d; ++k) powers[k] = powers[k - 1] * base;
    }
    const int tw = g.targets.back();
    const std::int64_t tstride = pow_ll(d, c.wires - 1 - tw);
    // Sweep fibers of the target digit and mix the corresponding rows.
    for (std::int64_t v = 0; v < dim; ++v) {
      if ((v / tstride) % d != 0) continue;
      bool active = true;
      int cdigit = 0;
      for (int ci = 0; ci < spec.controls; ++ci) {
        const int cw = g.targets[ci];
        const int digit =
            static_cast<int>((v / pow_ll(d, c.wires - 1 - cw)) % d);
        cdigit = digit;
        if (c.kind == WireKind::Qubit && digit != (spec.closed[ci] ? 1 : 0))
          active = false;
      }
      const Matrix* m = &base;
      if (c.kind == WireKind::Qudit && spec.controls == 1) m = &powers[cdigit];
      if (!active || (c.kind == WireKind::Qudit && spec.controls == 1 &&
                      cdigit == 0))
        continue;
      // rows v + k * tstride, k = 0..d-1
      Matrix rows(d, dim);
      for (int k = 0; k < d; ++k) rows.row(k) = u.row(v + k * tstride);
      rows = (*m) * rows;
      for (int k = 0; k < d; ++k) u.row(v + k * tstride) = rows.row(k);
    }
  }
  return u;
}

std::string circuit_to_text(const Circuit& c) {
  validate_circuit(c);
  std::ostringstream out;
  out << "# whsim circuit\n";
  out << "wires " << c.wires << " dim " << c.dim << "\n";
  char buf[64];
  for (const Gate& g : c.gates) {
    out << g.name;
    for (int t : g.targets) out << ' ' << t;
    for (double p : g.params) {
      std::snprintf(buf, sizeof buf, "%.17g", p);
      out << ' ' << buf;
    }
    out << "\n";
  }
  return out.str();
}

Circuit circuit_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  Circuit c;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (!have_header) {
      std::string dimword;
      int wires = 0, dim = 0;
      if (word != "wires" || !(ls >> wires >> dimword >> dim) ||
          dimword != "dim")
        throw std::invalid_argument("expected 'wires <n> dim <d>' header");
      c = make_circuit(dim == 2 ? WireKind::Qubit : WireKind::Qudit, dim, wires);
      have_header = true;
      continue;
    }
    const GateSpec spec = parse_gate_name(word, c.kind);
    std::vector<int> targets(spec.controls + 1);
    for (int& t : targets)
      if (!(ls >> t)) throw std::invalid_argument("missing wire for " + word);
    std::vector<double> params(param_count(spec.base));
    for (double& p : params)
      if (!(ls >> p)) throw std::invalid_argument("missing parameter for " + word);
    std::string extra;
    if (ls >> extra) throw std::invalid_argument("trailing tokens after " + word);
    append_gate(c, word, std::move(targets), std::move(params));
  }
  if (!have_header) throw std::invalid_argument("missing circuit header");
  return c;
}

}  // namespace whsim
