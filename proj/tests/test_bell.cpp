#include <doctest.h>

#include <vector>

#include "whsim/bell.hpp"
#include "whsim/rng.hpp"
#include "whsim/weyl.hpp"

using namespace whsim;

namespace {

std::int64_t mod_pos(std::int64_t v, std::int64_t m) { return ((v % m) + m) % m; }

std::vector<int> index_from_code(std::int64_t code, int p, int len) {
  std::vector<int> I(static_cast<std::size_t>(len));
  for (int j = len - 1; j >= 0; --j) {
    I[static_cast<std::size_t>(j)] = static_cast<int>(code % p);
    code /= p;
  }
  return I;
}

}  // namespace

TEST_CASE("bell family is an orthonormal basis") {
  for (int p : {2, 3}) {
    const Matrix b = bell_basis_matrix(p, p);
    const Matrix gram = b.adjoint() * b;
    CHECK((gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("square-case eigen relation, d=3 exhaustive") {
  const int d = 3;
  const std::vector<int> dims(static_cast<std::size_t>(d), d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      WeylString w = weyl_identity(dims);
      for (int j = 0; j < d; ++j) {
        w.xexp[static_cast<std::size_t>(j)] = a;
        w.zexp[static_cast<std::size_t>(j)] = b;
      }
      for (std::int64_t icode = 0; icode < 9; ++icode)
        for (int q = 0; q < d; ++q) {
          const Vector v = bell_state(d, index_from_code(icode, d, d - 1), q);
          int s = 0;
          for (int x : index_from_code(icode, d, d - 1)) s = (s + x) % d;
          const cd lam = Phase(mod_pos(static_cast<std::int64_t>(b) * s -
                                           static_cast<std::int64_t>(a) * q,
                                       d),
                               d)
                             .value();
          CHECK((weyl_apply(w, v) - lam * v).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("rectangular case p | c") {
  // p = 2, c = 4: same eigen structure with the copy count a proper multiple
  const int p = 2, c = 4;
  const std::vector<int> dims(static_cast<std::size_t>(c), p);
  const Matrix basis = bell_basis_matrix(p, c);
  CHECK(basis.cols() == 16);
  const Matrix gram = basis.adjoint() * basis;
  CHECK((gram - Matrix::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-12);
  WeylString w = weyl_identity(dims);
  for (int j = 0; j < c; ++j) {
    w.xexp[static_cast<std::size_t>(j)] = 1;
    w.zexp[static_cast<std::size_t>(j)] = 1;
  }
  for (std::int64_t icode = 0; icode < 8; ++icode)
    for (int q = 0; q < p; ++q) {
      const auto I = index_from_code(icode, p, c - 1);
      const Vector v = bell_vector(p, c, I, q);
      int s = 0;
      for (int x : I) s = (s + x) % p;
      const cd lam = Phase(mod_pos(s - q, p), p).value();
      CHECK((weyl_apply(w, v) - lam * v).cwiseAbs().maxCoeff() < 1e-12);
    }
  CHECK_THROWS_AS(bell_vector(3, 4, {0, 0, 0}, 0), std::invalid_argument);
}

TEST_CASE("coarse projectors partition the space") {
  const int d = 3;
  Matrix sum = Matrix::Zero(27, 27);
  for (int s = 0; s < d; ++s)
    for (int q = 0; q < d; ++q) {
      const Matrix pi = coarse_projector(d, d, s, q);
      CHECK((pi - pi.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((pi * pi - pi).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(std::abs(pi.trace().real() - 3.0) < 1e-12);  // rank d^{d-2}
      sum += pi;
    }
  CHECK((sum - Matrix::Identity(27, 27)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(coarse_rank(3, 3) == 3);
  CHECK(coarse_rank(5, 5) == 125);
}

TEST_CASE("bracket shortcut equals the dense sandwich") {
  const int p = 3, c = 3;
  std::vector<Matrix> ops;
  for (int j = 0; j < c; ++j) {
    Matrix g = Matrix::Random(p, p);
    ops.push_back(g);
  }
  Matrix big = kron(kron(ops[0], ops[1]), ops[2]);
  for (std::int64_t icode = 0; icode < 9; ++icode)
    for (int q = 0; q < p; ++q) {
      const auto I = index_from_code(icode, p, c - 1);
      const Vector v = bell_vector(p, c, I, q);
      const cd direct = v.dot(big * v);
      CHECK(std::abs(bell_bracket(p, ops, I, q) - direct) < 1e-12);
    }
  for (int s = 0; s < p; ++s)
    for (int q = 0; q < p; ++q) {
      const cd direct = (coarse_projector(p, c, s, q) * big).trace();
      CHECK(std::abs(coarse_bracket(p, c, ops, s, q) - direct) < 1e-12);
    }
}
