#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "repfield/orders.hpp"
#include "repfield/report.hpp"
#include "repfield/residual.hpp"

namespace repfield {

// Named orders.

/// Residual preimage of (K, K; 0, M_{n-1}(K)) in M_n.
LocalOrder eichler_preimage(std::int64_t p, std::size_t n = 3, int precision = 4);
/// Block upper triangular lift (M_a(O), M_{a x b}(O); 0, M_b(O)), no off-diagonal scaling.
LocalOrder block_lift(std::int64_t p, std::size_t a, std::size_t b, int precision = 4);
/// Residual preimage of the upper triangular algebra in M_2.
LocalOrder iwahori_order(std::int64_t p, int precision = 4);
/// O_E = O_k[w] inside M_2(O_k) for the unramified quadratic E.
LocalOrder unramified_integers(std::int64_t p, int precision = 4);

/// Every unital subalgebra of M_n(F_q), sorted by dimension then basis.
std::vector<ResidualAlgebra> unital_subalgebras(const FieldPtr& field, std::size_t n);

// Random samples. Integer generators are conjugated by a random unimodular matrix.

struct OrderSample {
    LocalOrder order;
    /// Q-dimension of the generated algebra (= O_k-rank of the order).
    int rational_dim = 0;
    std::string shape;
};

/// Closed order generated by 1..max_gens uniform random matrices mod p^precision.
LocalOrder random_closed_order(std::mt19937_64& rng, std::int64_t p, std::size_t n, int precision, int max_gens = 2);
/// Random order of O_k-rank <= max_dim from sparse block upper triangular integer generators.
OrderSample random_low_rank_order(std::mt19937_64& rng, std::int64_t p, std::size_t n, int max_dim = 7, int precision = 4);
/// Random order whose residual algebra has a commutative semisimple quotient: commuting
/// block diagonal generators (scalars or companions of quadratics) plus block nilpotent terms.
OrderSample random_commutative_residual_order(std::mt19937_64& rng, std::int64_t p, std::size_t n, int precision = 4);

// Reproduction cases.

struct CaseResult {
    std::string name;
    bool pass = false;
    std::string summary;
    Json details;
};

const std::vector<std::string>& case_names();
/// Throws ConfigError for an unknown name.
CaseResult run_case(const std::string& name, std::uint64_t seed = 0);

}  // namespace repfield
