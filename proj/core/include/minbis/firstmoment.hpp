#pragma once

#include <array>
#include <vector>

namespace minbis {

// x log x with the continuous value 0 at 0.
double xlogx(double x);

// ---------------------------------------------------------------------------
// Type one: (beta', T) with beta' <= T <= 2 beta'.

struct Type1Point {
  double beta_prime = 0;
  double T = 0;
};

double type1_lagrange_t(int i, const Type1Point& p);
// Defined on the closed range of T through its continuous extension.
double type1_exponent(const Type1Point& p);
// Partial derivatives (d/dbeta', d/dT) in the open interior.
std::array<double, 2> type1_gradient(const Type1Point& p);
// The exponent is strictly concave in T; this is its unique maximizer.
double type1_best_T(double beta_prime);

struct Type1Optimum {
  double max_value = 0;
  Type1Point argmax;
  double certified_upper = 0;  // upper bound on the max over the range
  bool certified_negative = false;
  int grid_points = 0;
  double step = 0;
};

Type1Optimum type1_optimize(double beta_lo, double beta_hi, double step = 1e-4);

struct CurvePoint {
  double beta_prime = 0;
  double T = 0;
  double value = 0;
};
// Points where the exponent vanishes, at most two per beta' on the grid.
std::vector<CurvePoint> type1_zero_curve(double beta_lo, double beta_hi, double step);

// ---------------------------------------------------------------------------
// Type two: per-side series over the path families x_i, x_{j,i}, y_{i,j,l}.

struct Type2Profile {
  double s_count = 0;    // sum of all family values with e^{lambda2} = 1
  double s_weight = 0;   // the same, weighted by path length
  double s_k = 0;        // the x_{j,i} family alone
  double s_entropy = 0;  // sum of z (ln z + automorphism/leaf log factor)
  double x_count = 0;
  double xji_count = 0;
  double y_count = 0;
  int cutoff = 0;        // largest total weight included
};

// cutoff <= 0 chooses one from the ratio e^{lam3} with tail below 1e-14.
Type2Profile type2_profile(double lam1, double lam3, int cutoff = 0);

struct Lambda2Solution {
  double lam2 = 0;
  double t = 0;
  double k = 0;
};
Lambda2Solution type2_solve_lambda2(double lam1, double lam3, double beta_prime);

// Residuals of the three side constraints (k, t, beta') evaluated by
// summing each family member separately.
std::array<double, 3> type2_constraint_residuals(double lam1, double lam3, double beta_prime);

struct Type2Point {
  double beta1 = 0, beta2 = 0;
  double lam1_a = 0, lam3_a = 0, lam1_b = 0, lam3_b = 0;
  // derived
  double t1 = 0, t2 = 0, k1 = 0, k2 = 0, lam2_a = 0, lam2_b = 0;
};

Type2Point make_type2_point(double beta1, double beta2, double lam1_a, double lam3_a, double lam1_b, double lam3_b);
double type2_exponent(const Type2Point& p);

struct Type2Search {
  bool diagonal = false;            // only beta1 == beta2
  bool shared_multipliers = false;  // lam_a == lam_b
  int grid = 7;                     // points per axis over the beta range
};

struct Type2GridValue {
  double beta1 = 0, beta2 = 0;
  double exponent = 0;  // maximized over multipliers
};

struct Type2Optimum {
  double sup_base = 0;  // exp of the largest maximized exponent
  Type2Point worst;
  bool monotone = false;   // maximized exponent increases along both axes
  bool certified = false;  // sup < 1 established
  std::vector<Type2GridValue> grid;
};

// Maximizes over the multipliers for fixed (beta1, beta2), starting from a
// small deterministic multi-start grid.
Type2Point type2_maximize_multipliers(double beta1, double beta2, bool shared = false);
Type2Optimum type2_optimize(double beta_lo, double beta_hi, const Type2Search& search = {});

}  // namespace minbis
