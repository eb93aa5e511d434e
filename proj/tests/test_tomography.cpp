#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "spectator/errors.hpp"
#include "spectator/tomography.hpp"

using namespace spectator;

namespace {
constexpr double kPi = 3.14159265358979323846;
using cd = std::complex<double>;
}  // namespace

TEST_CASE("cz error unitary") {
  SUBCASE("ideal gate") {
    const GateUnitary u = cz_error_unitary(0.0, 0.0, 0.0);
    CHECK(u(0, 0) == cd(1.0, 0.0));
    CHECK(u(1, 1) == cd(1.0, 0.0));
    CHECK(u(2, 2) == cd(1.0, 0.0));
    CHECK(std::abs(u(3, 3) - cd(-1.0, 0.0)) < 1e-15);
    CHECK(u(0, 1) == cd(0.0, 0.0));
  }

  SUBCASE("conditional phase of 180 degrees wraps back to the identity") {
    const GateUnitary u = cz_error_unitary(0.0, 0.0, 180.0);
    CHECK((u - GateUnitary::Identity()).norm() < 1e-12);
  }

  SUBCASE("explicit matrix for the all-spectators-excited configuration") {
    // Phases from zeta1_tot = -0.204 MHz: d1 = 10.5 deg, dc = -2.94 deg.
    const GateUnitary u = cz_error_unitary(10.5, 0.0, -2.94);
    const double d1 = 10.5 * kPi / 180.0;
    CHECK(u(1, 1).real() == doctest::Approx(std::cos(d1)));
    CHECK(u(1, 1).imag() == doctest::Approx(std::sin(d1)));
    CHECK(u(2, 2) == cd(1.0, 0.0));
    const double corner = kPi + (-2.94 + 10.5) * kPi / 180.0;
    CHECK(u(3, 3).real() == doctest::Approx(std::cos(corner)));
    CHECK(u(3, 3).imag() == doctest::Approx(std::sin(corner)));
  }

  SUBCASE("always unitary") {
    const GateUnitary u = cz_error_unitary(37.0, -12.0, 101.0);
    CHECK((u.adjoint() * u - GateUnitary::Identity()).norm() < 1e-14);
  }
}

TEST_CASE("process matrix structure") {
  SUBCASE("identity process") {
    GateUnitary id = GateUnitary::Identity();
    const ProcessMatrix chi = chi_from_unitary(id);
    CHECK(chi(0, 0).real() == doctest::Approx(1.0));
    CHECK(chi.cwiseAbs().sum() == doctest::Approx(1.0));
  }

  SUBCASE("ideal CZ lives on II, IZ, ZI, ZZ") {
    const ProcessMatrix chi = chi_from_unitary(ideal_cz());
    // Pauli index m = 4a + b over {I,X,Y,Z}: II=0, IZ=3, ZI=12, ZZ=15.
    const int support[] = {0, 3, 12, 15};
    const double expected_sign[4][4] = {{1, 1, 1, -1},
                                        {1, 1, 1, -1},
                                        {1, 1, 1, -1},
                                        {-1, -1, -1, 1}};
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const cd v = chi(support[i], support[j]);
        CHECK(v.real() ==
              doctest::Approx(0.25 * expected_sign[i][j]).epsilon(1e-12));
        CHECK(std::abs(v.imag()) < 1e-14);
      }
    }
    double off_support = 0.0;
    for (int m = 0; m < 16; ++m) {
      for (int n = 0; n < 16; ++n) {
        const bool in_support =
            (m == 0 || m == 3 || m == 12 || m == 15) &&
            (n == 0 || n == 3 || n == 12 || n == 15);
        if (!in_support) off_support += std::abs(chi(m, n));
      }
    }
    CHECK(off_support < 1e-12);
    CHECK(std::abs(chi.trace() - cd(1.0, 0.0)) < 1e-12);
  }

  SUBCASE("unitary processes are rank one, Hermitian, trace one") {
    const GateUnitary u = cz_error_unitary(8.0, -3.0, 5.0);
    const ProcessMatrix chi = chi_from_unitary(u);
    CHECK((chi - chi.adjoint()).norm() < 1e-13);
    CHECK(std::abs(chi.trace() - cd(1.0, 0.0)) < 1e-12);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(chi);
    CHECK(svd.singularValues()(0) == doctest::Approx(1.0));
    CHECK(svd.singularValues()(1) < 1e-12);
  }

  SUBCASE("non-unitary input rejected") {
    GateUnitary bad = GateUnitary::Identity();
    bad(0, 0) = cd(0.5, 0.0);
    CHECK_THROWS_AS(chi_from_unitary(bad), ValidationError);
    CHECK_THROWS_AS(process_error(bad), ValidationError);
  }
}

TEST_CASE("process error") {
  CHECK(process_error(0.0, 0.0, 0.0) <= 1e-15);

  SUBCASE("invariant under global phase") {
    const GateUnitary u = cz_error_unitary(6.0, 2.0, -4.0);
    const GateUnitary v = std::polar(1.0, 0.7) * u;
    CHECK(process_error(u) == doctest::Approx(process_error(v)).epsilon(1e-12));
  }

  SUBCASE("symmetric under gate-qubit exchange") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
      const double d1 = -20.0 + 40.0 * double(rng() >> 11) * 0x1.0p-53;
      const double d2 = -20.0 + 40.0 * double(rng() >> 11) * 0x1.0p-53;
      const double dc = -20.0 + 40.0 * double(rng() >> 11) * 0x1.0p-53;
      CHECK(process_error(d1, d2, dc) ==
            doctest::Approx(process_error(d2, d1, dc)).epsilon(1e-12));
    }
  }

  SUBCASE("quadratic expansion matches the trace formula") {
    for (double d1 = -10.0; d1 <= 10.0; d1 += 5.0) {
      for (double d2 = -10.0; d2 <= 10.0; d2 += 5.0) {
        for (double dc = -10.0; dc <= 10.0; dc += 5.0) {
          CAPTURE(d1);
          CAPTURE(d2);
          CAPTURE(dc);
          CHECK(std::abs(process_error(d1, d2, dc) -
                         process_error_quadratic(d1, d2, dc)) < 1e-4);
        }
      }
    }
    // Looser agreement up to 20 degrees.
    for (double d : {15.0, 20.0}) {
      CHECK(std::abs(process_error(d, -d, d) -
                     process_error_quadratic(d, -d, d)) < 1e-3);
    }
  }

  SUBCASE("all-spectators-excited point lands in the sub-percent range") {
    const double eps = process_error(10.5, 0.0, -2.94);
    CHECK(eps > 0.006);
    CHECK(eps < 0.007);
    CHECK(std::abs(eps - process_error_quadratic(10.5, 0.0, -2.94)) < 5e-4);
  }
}

TEST_CASE("repeated gate error scaling") {
  SUBCASE("single gate is the identity ratio") {
    const RepeatedGateScaling r = repeated_gate_error_scaling(1, 2.0, 0.0, -1.0);
    CHECK(r.ratio == doctest::Approx(1.0));
    CHECK(r.eps_n == doctest::Approx(r.eps_one));
  }

  SUBCASE("three gates scale the error by nine in the quadratic regime") {
    const RepeatedGateScaling r = repeated_gate_error_scaling(3, 2.0, 0.0, -1.0);
    CHECK(r.ratio == doctest::Approx(9.0).epsilon(0.02));
  }

  SUBCASE("scaling saturates outside the quadratic regime") {
    const RepeatedGateScaling r = repeated_gate_error_scaling(3, 30.0, 0.0, 0.0);
    CHECK(r.ratio < 9.0);
  }

  SUBCASE("zero phases keep the ratio finite") {
    const RepeatedGateScaling r = repeated_gate_error_scaling(3, 0.0, 0.0, 0.0);
    CHECK(r.ratio == doctest::Approx(1.0));
  }

  CHECK_THROWS_AS(repeated_gate_error_scaling(0, 1.0, 1.0, 1.0),
                  ValidationError);
}
