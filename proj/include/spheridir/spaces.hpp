// Model spaces with exact monomial Gram tables: the H_p family (Hardy and
// Drury-Arveson included), the Dirichlet-type spaces of the lambda_c and
// b_lambda weights, one-variable D(nu), and user-supplied tables.
#pragma once

#include <variant>
#include <vector>

#include <json.hpp>

#include "spheridir/gram_table.hpp"
#include "spheridir/measures.hpp"

namespace spheridir {

/// Kernel 1/(1 - <z,w>)^p; p = 1 is Drury-Arveson, p = d the Hardy space.
struct HpSpace {
  Rational p;
  int d = 1;
};
struct LambdaCSpace {
  Rational lambda;
  std::vector<Rational> c;
};
struct BLambdaSpace {
  Rational lambda;
  std::vector<ComplexRational> b;
};
struct CustomSpace {
  GramTable table;
};

using SpaceSpec = std::variant<HpSpace, LambdaCSpace, BLambdaSpace, CustomSpace>;

int space_dim(const SpaceSpec& s);
/// Validates preconditions; throws std::invalid_argument.
void validate(const SpaceSpec& s);
/// The boundary measure of a Dirichlet family.
Measure space_measure(const SpaceSpec& s);

/// ||z^alpha||^2 in H_p: alpha! / (p)_{|alpha|}, exact for every rational p > 0.
Rational hp_norm2(const Rational& p, const MultiIndex& alpha);
/// ||z^alpha||^2 in D(mu_{lambda,c}), closed form.
Rational lambda_c_norm2(const LambdaCSpace& s, const MultiIndex& alpha);

/// Exact monomial Gram table up to degree N.
GramTable gram(const SpaceSpec& s, int N);

/// Monomial Gram of D(mu) for a harmonic polynomial density, exactly.
GramTable dirichlet_gram(const Measure& mu, int N);

/// Squared multishift weight ||z^{alpha+e_j}||^2 / ||z^alpha||^2, j 0-based.
Rational multishift_weights(const LambdaCSpace& s, const MultiIndex& alpha, int j);

/// Monomial Gram of D(nu) on the disc. Exact for harmonic densities and
/// atomic nu; other densities are rejected.
GramTable one_d_dirichlet(const Measure& nu, int N);

/// {"type": "hp"|"lambda_c"|"b_lambda"|"custom", ...}
SpaceSpec space_from_json(const nlohmann::json& j);
nlohmann::json space_to_json(const SpaceSpec& s);

}  // namespace spheridir
