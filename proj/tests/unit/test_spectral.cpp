// Copyright 2026 The QFE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include <gtest/gtest.h>

#include "qfe/spectral.hpp"

namespace qfe {
namespace {

Vec sample(const CollocationGrid& g, double (*f)(double)) {
  return g.x.unaryExpr([f](double x) { return f(x); });
}

// Oracle: derivative of the Lagrange basis through the grid, evaluated at
// the nodes by the product rule, independent of the closed-form entries.
Mat lagrange_D1(const Vec& x) {
  const Eigen::Index n = x.size();
  Mat d = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      // l_j'(x_i) = sum_{m != j} 1/(x_j - x_m) prod_{p != j, m} (x_i - x_p)/(x_j - x_p)
      double total = 0.0;
      for (Eigen::Index m = 0; m < n; ++m) {
        if (m == j) continue;
        double prod = 1.0 / (x[j] - x[m]);
        for (Eigen::Index p = 0; p < n; ++p) {
          if (p == j || p == m) continue;
          prod *= (x[i] - x[p]) / (x[j] - x[p]);
        }
        total += prod;
      }
      d(i, j) = total;
    }
  }
  return d;
}

TEST(GridTest, Points) {
  const CollocationGrid g2 = build_grid(2);
  EXPECT_EQ(g2.x[0], 1.0);
  EXPECT_EQ(g2.x[1], 0.0);
  EXPECT_EQ(g2.x[2], -1.0);
  const CollocationGrid g4 = build_grid(4);
  EXPECT_NEAR(g4.x[1], std::sqrt(2.0) / 2, 1e-16);
  EXPECT_EQ(g4.x[2], 0.0);
  EXPECT_NEAR(g4.x[3], -std::sqrt(2.0) / 2, 1e-16);
  const CollocationGrid g9 = build_grid(9);
  EXPECT_EQ(g9.size(), 10);
  EXPECT_EQ(g9.cbar[0], 2.0);
  EXPECT_EQ(g9.cbar[9], 2.0);
  EXPECT_EQ(g9.cbar[4], 1.0);
  for (Eigen::Index j = 0; j < 10; ++j) EXPECT_EQ(g9.x[j], -g9.x[9 - j]);
  EXPECT_THROW(build_grid(0), std::invalid_argument);
}

TEST(D1Test, LinearCase) {
  const Mat d = build_D1(build_grid(1));
  Mat expected(2, 2);
  expected << 0.5, -0.5, 0.5, -0.5;
  EXPECT_LT((d - expected).norm(), 1e-15);
}

TEST(D1Test, PolynomialExactness) {
  for (int N = 2; N <= 16; ++N) {
    const CollocationGrid g = build_grid(N);
    const Mat d = build_D1(g);
    EXPECT_LT((d * Vec::Ones(N + 1)).cwiseAbs().maxCoeff(), 1e-12) << N;
    EXPECT_LT((d * sample(g, [](double x) { return x * x; }) - 2 * g.x).cwiseAbs().maxCoeff(),
              1e-12)
        << N;
  }
}

TEST(D1Test, MatchesLagrangeOracle) {
  for (int N = 2; N <= 12; ++N) {
    const CollocationGrid g = build_grid(N);
    EXPECT_LT((build_D1(g) - lagrange_D1(g.x)).cwiseAbs().maxCoeff(), 1e-10 * N * N) << N;
  }
}

TEST(D2Test, CornerEntry) {
  EXPECT_NEAR(build_D2(build_grid(2))(0, 0), 1.0, 1e-14);
  // (N^4 - 1) / 15 in general
  EXPECT_NEAR(build_D2(build_grid(5))(0, 0), (625.0 - 1) / 15, 1e-11);
  EXPECT_NEAR(build_D2(build_grid(5))(5, 5), (625.0 - 1) / 15, 1e-11);
}

TEST(D2Test, CubicExactness) {
  for (int N = 3; N <= 16; ++N) {
    const CollocationGrid g = build_grid(N);
    const Vec cube = sample(g, [](double x) { return x * x * x; });
    EXPECT_LT((build_D2(g) * cube - 6 * g.x).cwiseAbs().maxCoeff(), 1e-10) << N;
  }
}

TEST(D2Test, EqualsD1Squared) {
  for (int N = 2; N <= 16; ++N) {
    const CollocationGrid g = build_grid(N);
    const Mat d1 = build_D1(g);
    const Mat d2 = build_D2(g);
    EXPECT_LT((d2 - d1 * d1).norm() / (d1 * d1).norm(), 1e-8) << N;
  }
}

TEST(RestrictTest, ShapesAndIdentity) {
  const Mat d2 = build_D2(build_grid(9));
  EXPECT_EQ(interior_restrict(d2).rows(), 8);
  EXPECT_EQ(interior_restrict(d2).cols(), 8);
  EXPECT_EQ((interior_restrict(Mat::Identity(10, 10)) - Mat::Identity(8, 8)).norm(), 0.0);
  EXPECT_THROW(interior_restrict(Mat::Identity(3, 3)), std::invalid_argument);
  EXPECT_THROW(interior_restrict(d2, false), std::invalid_argument);
}

TEST(RestrictTest, DecayRates) {
  // Dirichlet modes on [-1, 1] are sin(k pi (x + 1) / 2) with rate alpha (k pi / 2)^2.
  // The k = 1 mode is even and the slowest overall; sin(pi x) is the k = 2 mode,
  // the slowest odd one.
  const double alpha = 0.3;
  const Mat h = alpha * interior_restrict(build_D2(build_grid(9)));
  Eigen::EigenSolver<Mat> es(h);
  double slowest = -1e300;
  double slowest_odd = -1e300;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()[i].real();
    slowest = std::max(slowest, lam);
    const Eigen::VectorXcd v = es.eigenvectors().col(i);
    if ((v + v.reverse()).norm() < 1e-8 * v.norm()) slowest_odd = std::max(slowest_odd, lam);
  }
  const double half_wave = -alpha * kPi * kPi / 4;
  const double full_wave = -alpha * kPi * kPi;
  EXPECT_NEAR(slowest, half_wave, 0.02 * std::abs(half_wave));
  EXPECT_NEAR(slowest_odd, full_wave, 0.02 * std::abs(full_wave));
  EXPECT_NEAR(slowest_odd, -2.961, 0.02 * 2.961);
}

TEST(InterpolateTest, CardinalIsKronecker) {
  const CollocationGrid g = build_grid(7);
  for (int j = 0; j <= 7; ++j) {
    for (int i = 0; i <= 7; ++i) {
      EXPECT_NEAR(cardinal(g, j, g.x[i]), i == j ? 1.0 : 0.0, 1e-13);
    }
  }
}

TEST(InterpolateTest, ReproducesPolynomialsAndConstants) {
  const CollocationGrid g = build_grid(6);
  const Vec p = sample(g, [](double x) { return 3 * std::pow(x, 5) - x * x + 0.5; });
  for (double x = -1.0; x <= 1.0; x += 0.037) {
    EXPECT_NEAR(interpolate(g, p, x), 3 * std::pow(x, 5) - x * x + 0.5, 1e-12);
    EXPECT_NEAR(interpolate(g, Vec::Constant(7, 0.75), x), 0.75, 1e-13);
  }
}

TEST(InterpolateTest, SineErrorDecreases) {
  // error drops by more than two decades between 7 and 13 points
  auto err = [](int points) {
    const CollocationGrid g = build_grid(points - 1);
    const Vec v = g.x.unaryExpr([](double x) { return std::sin(kPi * x); });
    double e = 0.0;
    for (int s = 0; s <= 2000; ++s) {
      const double x = -1.0 + s / 1000.0;
      e = std::max(e, std::abs(interpolate(g, v, x) - std::sin(kPi * x)));
    }
    return e;
  };
  EXPECT_LT(err(13), 1e-2 * err(7));
}

}  // namespace
}  // namespace qfe
