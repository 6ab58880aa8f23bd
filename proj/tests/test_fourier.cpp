#include <cmath>

#include "test_helpers.hpp"

using namespace schurcomm;
using namespace testutil;
using Catch::Approx;

TEST_CASE("circle model structure", "[fourier]") {
  CircleModel model = make_circle_model(16);
  REQUIRE(model.dim() == 33);
  REQUIRE(model.D.eigenvalues(0) == -16.0);
  REQUIRE(model.D.eigenvalues(32) == 16.0);
  // Every mode is its own spectral bin, and the binned approximant is exact.
  REQUIRE(model.binning->occupied.size() == 33);
  REQUIRE(model.binning->bin_size(0) == 1);
  REQUIRE(operator_norm(model.binning->b.matrix) == 0.0);
  REQUIRE(operator_norm(model.binning->Dbar.matrix - model.D.matrix) == 0.0);
  REQUIRE_THROWS_AS(make_circle_model(0), Error);
}

TEST_CASE("multiplication operators have the expected commutator", "[fourier]") {
  // The shift y_{i,j} = [j = i+1] (multiplication by the first harmonic):
  // [D, y]_{i,i+1} = (mode_i - mode_{i+1}) = -1 times the entry, so
  // [D, y] = -y entrywise.
  CircleModel model = make_circle_model(8);
  const int n = model.dim();
  Matrix shift = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) shift(i, i + 1) = 1.0;
  BoundedOperator y{shift};
  BoundedOperator c = commutator(model.D, y);
  REQUIRE(operator_norm(c.matrix + shift) <= 1e-13);
  REQUIRE(derivation_as_schur(model, y) <= 1e-13);
}

TEST_CASE("derivation as a Schur product is exact", "[fourier]") {
  CircleModel model = make_circle_model(12);
  for (int t = 0; t < 10; ++t) {
    auto rng = trial_rng(501, static_cast<std::uint64_t>(t));
    BoundedOperator y = random_dense_y(model.dim(), rng);
    const double scale = (1.0 + operator_norm(model.D.matrix)) * operator_norm(y);
    REQUIRE(derivation_as_schur(model, y) <= 1e-12 * scale);
  }
}

TEST_CASE("exact schur identity for functional commutators", "[fourier]") {
  CircleModel model = make_circle_model(16);
  std::vector<FunctionSpec> gs;
  gs.push_back(abs_value_spec());
  gs.push_back(holder_sample_spec("square", [](double t) { return Complex(t * t, 0.0); }));
  gs.push_back(holder_sample_spec("expi", [](double t) { return std::exp(Complex(0.0, t)); }));
  gs.push_back(holder_sample_spec("id", [](double t) { return Complex(t, 0.0); }));

  for (const FunctionSpec& g : gs) {
    const double gnorm = operator_norm(apply_function(model.D, g.evaluate).matrix);
    for (int t = 0; t < 10; ++t) {
      auto rng = trial_rng(502, static_cast<std::uint64_t>(t));
      BoundedOperator y = random_dense_y(model.dim(), rng);
      REQUIRE(exact_schur_identity(model, g, y) <= 1e-12 * (1.0 + gnorm) * operator_norm(y));
    }
  }

  // A constant g: both [g(D), y] and the multiplier vanish identically.
  FunctionSpec constant = holder_sample_spec("const", [](double) { return Complex(3.0, 0.0); });
  auto rng = trial_rng(503, 0);
  BoundedOperator y = random_dense_y(model.dim(), rng);
  REQUIRE(exact_schur_identity(model, constant, y) <= 1e-14);

  // Dimension mismatch is rejected.
  BoundedOperator bad{Matrix::Zero(4, 4)};
  REQUIRE_THROWS_AS(exact_schur_identity(model, constant, bad), DimMismatch);
  REQUIRE_THROWS_AS(derivation_as_schur(model, bad), DimMismatch);
}

TEST_CASE("binned functional difference vanishes on the circle", "[fourier]") {
  // Integer spectrum: D = Dbar, so the g(D) - g(Dbar) side check is
  // trivially zero no matter what g does between the integers.
  CircleModel model = make_circle_model(6);
  auto rng = trial_rng(504, 0);
  BoundedOperator y = random_dense_y(model.dim(), rng);
  SideCheck sc = side_check_gd_difference(model.D, y, abs_value_spec());
  REQUIRE(sc.pass);
  REQUIRE(sc.lhs <= 1e-14);
}
